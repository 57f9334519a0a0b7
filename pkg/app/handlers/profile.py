import argparse
import logging

from app.handlers.common import add_common_arguments, prepare_run
from app.services.exporter import profile_csv, write_artifact
from app.services.schemes import profile_for
from app.utils.decorators import command_errors, log_action


logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("profile", help="write the per-element phase profile (profile.csv)")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_profile)


@command_errors
@log_action("profile")
def handle_profile(args: argparse.Namespace) -> int:
    config, out_dir = prepare_run(args)
    scenario = config.to_scenario()
    profile = profile_for(config.scheme, scenario)
    write_artifact(out_dir, "profile.csv", profile_csv(profile, scenario.array))
    return 0
