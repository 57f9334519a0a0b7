"""
Parser for --set overrides applied to a run file before validation.

Format: dotted.key=value
The value is read as a JSON literal (number, true/false/null, array, object,
quoted string) and falls back to the raw text when it is not valid JSON.

Examples:
    epsilon_margin_m=0.1
    sampling.rings=32
    ue_position=[1.5,3.0]
    scheme=focusing
"""

import copy
import json
import logging
from typing import Any, Dict, Iterable, List, Tuple

from app.exceptions import ConfigError


logger = logging.getLogger(__name__)


def parse_override(item: str) -> Tuple[List[str], Any]:
    """
    Split one override into its key path and decoded value.

    Args:
        item: Override text (e.g., "sampling.rings=32")

    Returns:
        (key path, value)

    Examples:
        >>> parse_override("sampling.rings=32")
        (['sampling', 'rings'], 32)

        >>> parse_override("scheme=focusing")
        (['scheme'], 'focusing')
    """
    if "=" not in item:
        raise ConfigError(f"Override '{item}' is not of the form key=value")

    key, text = item.split("=", 1)
    path = [part.strip() for part in key.split(".")]
    if not all(path):
        raise ConfigError(f"Override '{item}' has an empty key segment")

    return path, _decode_value(text.strip())


def _decode_value(text: str) -> Any:
    """Decode a JSON literal, keeping bare words as strings"""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(raw: Dict[str, Any], overrides: Iterable[str]) -> Dict[str, Any]:
    """
    Apply overrides to a copy of the raw run-file mapping.

    Later overrides win. Intermediate objects are created when missing.

    Args:
        raw: Decoded run file
        overrides: Override strings in command-line order

    Returns:
        New mapping with the overrides applied
    """
    result = copy.deepcopy(raw)

    for item in overrides:
        path, value = parse_override(item)
        node = result
        for part in path[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"Override '{item}': '{part}' is not an object")
            node = child
        node[path[-1]] = value
        logger.debug(f"Override {'.'.join(path)} = {value!r}")

    return result
