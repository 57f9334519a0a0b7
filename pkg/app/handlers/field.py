import argparse
import logging

from app.exceptions import EmptyRegion
from app.handlers.common import add_common_arguments, prepare_run
from app.services.evaluation import field_map, region_leakage
from app.services.exporter import field_csv, write_artifact
from app.services.image_renderer import render_pgm
from app.services.schemes import synthesize
from app.utils.decorators import command_errors, log_action


logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("field", help="write the normalized field map (field.csv, field.pgm)")
    add_common_arguments(parser)
    parser.set_defaults(handler=handle_field)


@command_errors
@log_action("field")
def handle_field(args: argparse.Namespace) -> int:
    config, out_dir = prepare_run(args)
    scenario = config.to_scenario()
    beamformer = synthesize(config.scheme, scenario)
    fmap = field_map(beamformer, scenario, config.grid.to_grid())

    write_artifact(out_dir, "field.csv", field_csv(fmap))
    write_artifact(out_dir, "field.pgm", render_pgm(fmap))

    try:
        max_db, mean_db = region_leakage(fmap, scenario.eavesdropper)
        logger.info(f"Leakage over the uncertainty disk: max {max_db:.2f} dB, mean {mean_db:.2f} dB")
    except EmptyRegion:
        logger.info("Uncertainty disk lies outside the grid; no leakage figure")
    return 0
