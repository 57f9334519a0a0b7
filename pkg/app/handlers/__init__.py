"""
Handlers package
"""
from . import profile, field, sweep, validate, bench


def get_commands():
    """
    Get all command modules in the order they are listed in --help.
    Each module exposes register(subparsers).
    """
    return [
        profile,
        field,
        sweep,
        validate,
        bench,
    ]
