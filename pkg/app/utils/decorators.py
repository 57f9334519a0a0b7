import logging
import time
from functools import wraps
from typing import Any, Callable

from pydantic import ValidationError

from app.exceptions import ConfigError, GeometryError, NumericError


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_GEOMETRY = 3
EXIT_NUMERIC = 4


def command_errors(func: Callable[..., Any]) -> Callable[..., int]:
    """
    Decorator mapping library errors to process exit codes

    0 success, 2 config, 3 geometry, 4 numeric; anything else is logged
    with its traceback and gives 1.

    Usage:
        @command_errors
        def handle_field(args) -> int:
            ...
    """
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            result = func(*args, **kwargs)
            return EXIT_OK if result is None else int(result)
        except (ConfigError, ValidationError) as e:
            logger.error(f"Configuration error: {e}")
            return EXIT_CONFIG
        except GeometryError as e:
            logger.error(f"Unsupported geometry ({type(e).__name__}): {e}")
            return EXIT_GEOMETRY
        except (NumericError, ArithmeticError) as e:
            logger.error(f"Numeric error ({type(e).__name__}): {e}")
            return EXIT_NUMERIC
        except ValueError as e:
            logger.error(f"Invalid value: {e}")
            return EXIT_CONFIG
        except Exception as e:
            logger.error(f"Unexpected error in {func.__name__}: {e}", exc_info=True)
            return EXIT_FAILURE

    return wrapper


def log_action(action_name: str):
    """
    Decorator to log command start and wall-clock duration

    Usage:
        @log_action("field")
        def handle_field(args) -> int:
            ...
    """
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            logger.info(f"[{action_name}] started")
            started = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                logger.info(f"[{action_name}] finished in {time.perf_counter() - started:.3f}s")
        return wrapper
    return decorator
