import argparse
import logging
from typing import List

from app.handlers.common import add_common_arguments, prepare_run
from app.models import Scheme
from app.services.evaluation import robust_report
from app.services.exporter import SweepRow, report_csv, write_artifact
from app.services.schemes import synthesize
from app.utils.decorators import command_errors, log_action
from app.utils.validators import validate_sweep


logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("sweep", help="robust rates versus transmit power (report.csv)")
    add_common_arguments(parser)
    parser.add_argument("--p-min", dest="p_min", type=float, default=10.0, help="first transmit power, dBm")
    parser.add_argument("--p-max", dest="p_max", type=float, default=30.0, help="last transmit power, dBm")
    parser.add_argument("--steps", type=int, default=5, help="number of power levels")
    parser.set_defaults(handler=handle_sweep)


@command_errors
@log_action("sweep")
def handle_sweep(args: argparse.Namespace) -> int:
    levels = validate_sweep(args.p_min, args.p_max, args.steps)
    config, out_dir = prepare_run(args)
    scenario = config.to_scenario()
    sampling = config.sampling.to_sampling()
    schemes = [config.scheme] if args.scheme else list(config.sweep_schemes)

    # phase-only beamformers do not depend on the power level
    fixed = {
        scheme: synthesize(scheme, scenario) for scheme in schemes if scheme is not Scheme.EIGEN
    }

    rows: List[SweepRow] = []
    for p_dbm in levels:
        level = scenario.with_budget(scenario.budget.with_transmit_power_dbm(p_dbm))
        for scheme in schemes:
            beamformer = fixed[scheme] if scheme in fixed else synthesize(scheme, level)
            report = robust_report(beamformer, level, sampling)
            rows.append(SweepRow(p_dbm, scheme, report))
            logger.info(
                f"{p_dbm:g} dBm {scheme.value}: R_UE={report.r_ue:.4f} "
                f"R_E worst={report.r_e_worst:.4f} R_S worst={report.r_s_worst:.4f}"
            )

    write_artifact(out_dir, "report.csv", report_csv(rows))
    return 0
