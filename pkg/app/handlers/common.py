import argparse
import logging
from pathlib import Path
from typing import Tuple

from app.config import ScenarioConfig, load_scenario_config, settings
from app.services.exporter import write_artifact
from app.utils.validators import validate_scheme


logger = logging.getLogger(__name__)

RESOLVED_CONFIG = "config.resolved.json"


def add_common_arguments(parser: argparse.ArgumentParser):
    """Flags shared by every command"""
    parser.add_argument("--config", type=Path, default=None, help="JSON run file (defaults built in)")
    parser.add_argument("--out", type=Path, default=None, help=f"output directory (default: {settings.OUTPUT_DIR})")
    parser.add_argument("--scheme", default=None, help="synthesis scheme, overrides the run file")
    parser.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override a run-file key, e.g. sampling.rings=32 (repeatable)",
    )
    parser.add_argument("--seed", type=int, default=None, help="reserved; all computations are deterministic")


def prepare_run(args: argparse.Namespace) -> Tuple[ScenarioConfig, Path]:
    """
    Load and validate the run file, then echo the resolved config.

    Returns:
        (config, output directory)
    """
    config = load_scenario_config(args.config, args.overrides)
    if args.scheme:
        config = config.model_copy(update={"scheme": validate_scheme(args.scheme)})
    if args.seed is not None:
        logger.debug(f"--seed {args.seed} ignored: no stochastic step in this command")

    out_dir = Path(args.out) if args.out else Path(settings.OUTPUT_DIR)
    write_artifact(out_dir, RESOLVED_CONFIG, config.dump_resolved())
    return config, out_dir
