import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Sequence

from app.config import ScenarioConfig
from app.models import Scheme
from app.services.schemes import synthesize


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Timing:
    scheme: Scheme
    num_elements: int
    repeats: int
    mean_s: float
    min_s: float


def time_synthesis(scheme: Scheme, config: ScenarioConfig, num_elements: int, repeats: int) -> Timing:
    """
    Wall-clock synthesis time of one scheme at one array size.

    Args:
        scheme: Scheme to synthesize
        config: Run file; num_elements is replaced
        num_elements: Array size to time
        repeats: Number of timed runs

    Returns:
        Timing with mean and minimum seconds
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    scenario = config.model_copy(update={"num_elements": num_elements}).to_scenario()

    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        synthesize(scheme, scenario)
        samples.append(time.perf_counter() - started)

    return Timing(scheme, num_elements, repeats, sum(samples) / len(samples), min(samples))


def run_bench(
    config: ScenarioConfig,
    schemes: Sequence[Scheme],
    sizes: Sequence[int],
    repeats: int,
) -> List[Dict]:
    """
    Time every scheme at every size and add a growth-ratio row per scheme.

    The growth ratio is min time at the largest size over min time at the
    smallest size.

    Returns:
        Rows for timing.csv
    """
    rows: List[Dict] = []
    ordered = sorted(set(sizes))

    for scheme in schemes:
        # warm-up
        synthesize(scheme, config.model_copy(update={"num_elements": ordered[0]}).to_scenario())

        timings = [time_synthesis(scheme, config, size, repeats) for size in ordered]
        for timing in timings:
            rows.append({
                "scheme": scheme.value,
                "num_elements": timing.num_elements,
                "repeats": timing.repeats,
                "mean_s": timing.mean_s,
                "min_s": timing.min_s,
            })
            logger.info(
                f"{scheme.value} M={timing.num_elements}: mean {timing.mean_s * 1e3:.3f} ms, "
                f"min {timing.min_s * 1e3:.3f} ms"
            )

        if len(timings) > 1:
            ratio = timings[-1].min_s / timings[0].min_s
            rows.append({
                "scheme": scheme.value,
                "num_elements": f"{ordered[-1]}/{ordered[0]}",
                "growth_ratio": ratio,
            })

    return rows
