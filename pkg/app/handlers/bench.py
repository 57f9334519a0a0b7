import argparse
import logging

from app.config import settings
from app.handlers.common import add_common_arguments, prepare_run
from app.models import Scheme
from app.services.exporter import timing_csv, write_artifact
from app.services.timing import run_bench
from app.utils.decorators import command_errors, log_action
from app.utils.validators import validate_repeats


logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("bench", help="time synthesis per scheme and array size (timing.csv)")
    add_common_arguments(parser)
    parser.add_argument("--repeats", type=int, default=None, help=f"timed runs per size (default: {settings.DEFAULT_REPEATS})")
    parser.set_defaults(handler=handle_bench)


@command_errors
@log_action("bench")
def handle_bench(args: argparse.Namespace) -> int:
    repeats = validate_repeats(args.repeats, settings.DEFAULT_REPEATS)
    config, out_dir = prepare_run(args)
    schemes = [config.scheme] if args.scheme else list(Scheme)
    rows = run_bench(config, schemes, settings.bench_sizes_list, repeats)
    write_artifact(out_dir, "timing.csv", timing_csv(rows))
    return 0
