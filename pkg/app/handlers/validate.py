import argparse
import logging

from app.handlers.common import add_common_arguments, prepare_run
from app.services.exporter import validate_csv, write_artifact
from app.services.validation import validate_profile
from app.utils.decorators import command_errors, log_action


logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("validate", help="check departing rays against each scheme's geometry (validate.csv)")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_validate)


@command_errors
@log_action("validate")
def handle_validate(args: argparse.Namespace) -> int:
    config, out_dir = prepare_run(args)
    result = validate_profile(config.scheme, config.to_scenario())
    write_artifact(out_dir, "validate.csv", validate_csv(result))
    if not result.passed:
        logger.warning(f"Ray checks failed for {config.scheme.value}; see validate.csv")
    return 0
