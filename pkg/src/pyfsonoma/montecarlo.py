"""Monte Carlo outage estimation and power sweeps.

Samples are split into fixed-size chunks. Chunk ``k`` draws from its own
Philox stream keyed by ``SeedSequence(seed, spawn_key=(k,))``, so the
estimate depends only on (seed, n_samples, chunk_size) and not on how
many worker threads evaluate the chunks. Workers return integer event
counts that are summed in chunk order.

All schemes requested together are evaluated on the same fades (common
random numbers), which keeps the ordering between schemes visible even
at small sample sizes.

Public Functions:
    resolve_workers: Number of worker threads to use.
    estimate_outage: Outage of one scheme for both BSs.
    estimate_outage_many: Outage of several schemes on shared fades.
    sweep_power: Outage table over a grid of transmit powers.
"""

from __future__ import annotations

import concurrent.futures
import logging
import math
import os
from collections.abc import Sequence
from typing import TYPE_CHECKING, Any

import numpy as np
import pandas as pd
from tqdm import tqdm

from pyfsonoma._types import (
    LinkBudget,
    McConfig,
    OutageEstimate,
    QosThresholds,
    QuadratureControl,
    Scheme,
    SchemeSpec,
    SicAssumption,
    TurbulenceParams,
)
from pyfsonoma.analysis import outage_asymptotic, outage_exact
from pyfsonoma.channel import gg_sample
from pyfsonoma.constants import (
    CSV_COLUMNS,
    FLAG_OK,
    FLAG_TAIL,
    MAX_WORKERS,
    MC_MIN_EVENTS,
    WORKERS_ENV_VAR,
)
from pyfsonoma.exceptions import ConfigError, ValidationError
from pyfsonoma.noma import outage_masks

if TYPE_CHECKING:
    from pyfsonoma.scenario import Scenario

logger = logging.getLogger(__name__)


def resolve_workers(workers: int | None = None) -> int:
    """Return the number of worker threads for chunk evaluation.

    An explicit value wins; otherwise the PYFSONOMA_WORKERS environment
    variable; otherwise the CPU count capped at MAX_WORKERS.

    Raises:
        ValidationError: If an explicit value is below one.
        ConfigError: If the environment variable is not a positive integer.
    """
    if workers is not None:
        if workers < 1:
            raise ValidationError("workers must be at least 1", parameter="workers", value=workers)
        return workers

    env_value = os.environ.get(WORKERS_ENV_VAR)
    if env_value:
        try:
            parsed = int(env_value)
        except ValueError:
            parsed = 0
        if parsed < 1:
            raise ConfigError(f"{WORKERS_ENV_VAR} must be a positive integer, got {env_value!r}")
        return parsed

    return max(1, min(MAX_WORKERS, os.cpu_count() or 1))


def _chunk_generator(seed: int, index: int) -> np.random.Generator:
    """Private counter-based stream of chunk ``index``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def _count_chunk(
    index: int,
    size: int,
    link1: LinkBudget,
    link2: LinkBudget,
    thr: QosThresholds,
    t: TurbulenceParams,
    specs: Sequence[SchemeSpec],
    seed: int,
) -> np.ndarray:
    """Outage event counts of one chunk, shape (len(specs), 2)."""
    rng = _chunk_generator(seed, index)
    h1 = gg_sample(t, rng, size)
    h2 = gg_sample(t, rng, size)
    gamma1 = link1.e * h1 * h1
    gamma2 = link2.e * h2 * h2

    counts = np.zeros((len(specs), 2), dtype=np.int64)
    for row, spec in enumerate(specs):
        oe1, oe2 = outage_masks(gamma1, gamma2, thr, spec.scheme, spec.sic)
        counts[row, 0] = np.count_nonzero(oe1)
        counts[row, 1] = np.count_nonzero(oe2)
    return counts


def estimate_outage_many(
    link1: LinkBudget,
    link2: LinkBudget,
    thr: QosThresholds,
    t: TurbulenceParams,
    specs: Sequence[SchemeSpec],
    mc: McConfig | None = None,
    *,
    workers: int | None = None,
    progress: bool = False,
) -> dict[SchemeSpec, tuple[OutageEstimate, OutageEstimate]]:
    """Estimate the outage of several schemes on the same fades.

    Args:
        link1: Link budget of BS1.
        link2: Link budget of BS2.
        thr: Target rates and thresholds.
        t: Turbulence parameters.
        specs: Schemes and SIC assumptions to evaluate (duplicates ignored).
        mc: Sampling configuration. Defaults to McConfig().
        workers: Worker threads; see ``resolve_workers``.
        progress: Show a progress bar over chunks.

    Returns:
        Mapping from each SchemeSpec to its (BS1, BS2) estimates.

    Raises:
        ValidationError: If no scheme is given.
    """
    unique_specs = list(dict.fromkeys(specs))
    if not unique_specs:
        raise ValidationError("At least one scheme is required", parameter="schemes")
    mc = mc or McConfig()

    sizes = mc.chunk_sizes()
    n_workers = min(resolve_workers(workers), mc.n_chunks)
    chunk_counts: dict[int, np.ndarray] = {}

    def run(index: int) -> np.ndarray:
        return _count_chunk(index, sizes[index], link1, link2, thr, t, unique_specs, mc.seed)

    with tqdm(
        total=len(sizes), desc="Sampling fades", unit="chunk", leave=False, disable=not progress
    ) as pbar:
        if n_workers == 1:
            for index in range(len(sizes)):
                chunk_counts[index] = run(index)
                pbar.update(1)
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=n_workers) as executor:
                future_to_index = {
                    executor.submit(run, index): index for index in range(len(sizes))
                }
                for future in concurrent.futures.as_completed(future_to_index):
                    chunk_counts[future_to_index[future]] = future.result()
                    pbar.update(1)

    totals = np.zeros((len(unique_specs), 2), dtype=np.int64)
    for index in range(len(sizes)):
        totals += chunk_counts[index]

    logger.debug(
        "Sampled %d fade pairs in %d chunks on %d workers", mc.n_samples, mc.n_chunks, n_workers
    )
    return {
        spec: (
            OutageEstimate.from_count(int(totals[row, 0]), mc.n_samples),
            OutageEstimate.from_count(int(totals[row, 1]), mc.n_samples),
        )
        for row, spec in enumerate(unique_specs)
    }


def estimate_outage(
    link1: LinkBudget,
    link2: LinkBudget,
    thr: QosThresholds,
    t: TurbulenceParams,
    scheme: Scheme,
    sic: SicAssumption,
    mc: McConfig | None = None,
    *,
    workers: int | None = None,
) -> tuple[OutageEstimate, OutageEstimate]:
    """Estimate the outage of one scheme for both BSs.

    Draws ``mc.n_samples`` independent fade pairs, forms
    ``gamma_i = e_i * h_i**2`` and counts the outage events of the scheme.

    Args:
        link1: Link budget of BS1.
        link2: Link budget of BS2.
        thr: Target rates and thresholds.
        t: Turbulence parameters.
        scheme: Multiple-access scheme.
        sic: SIC assumption.
        mc: Sampling configuration. Defaults to McConfig().
        workers: Worker threads; see ``resolve_workers``.

    Returns:
        Tuple of OutageEstimate for BS1 and BS2.

    Examples:
        >>> est1, est2 = estimate_outage(link1, link2, qos_thresholds(0.0, 0.0),
        ...                              TurbulenceParams.default(),
        ...                              Scheme.FIXED_NOMA, SicAssumption.IMPERFECT,
        ...                              McConfig(n_samples=1000))
        >>> est1.p_hat, est2.p_hat
        (0.0, 0.0)
    """
    spec = SchemeSpec(scheme, sic)
    return estimate_outage_many(link1, link2, thr, t, [spec], mc, workers=workers)[spec]


def _mc_columns(estimate: OutageEstimate) -> tuple[float, float, str]:
    if estimate.below_floor:
        return math.nan, math.nan, FLAG_TAIL
    result = estimate.as_result()
    return result.probability, float(result.uncertainty or 0.0), FLAG_OK


def sweep_power(
    scenario: Scenario,
    powers: Sequence[float],
    schemes: Sequence[Scheme],
    sic: SicAssumption,
    mc: McConfig | None = None,
    *,
    q: QuadratureControl | None = None,
    workers: int | None = None,
    progress: bool = True,
) -> pd.DataFrame:
    """Tabulate outage against optical transmit power.

    Every power point reuses the same sampling configuration, so a sweep of
    one point reproduces ``estimate_outage`` exactly. Monte Carlo values
    backed by fewer than MC_MIN_EVENTS events are blanked and flagged as
    ``tail``. The quadrature and high-SNR columns are filled for the
    optimal scheme only; the high-SNR value is clipped to [0, 1].

    Args:
        scenario: Geometry, weather, rates, optics and turbulence.
        powers: Optical transmit powers (dBm).
        schemes: Schemes to evaluate.
        sic: SIC assumption applied to the NOMA schemes.
        mc: Sampling configuration. Defaults to McConfig().
        q: Quadrature control for the semi-analytical column.
        workers: Worker threads; see ``resolve_workers``.
        progress: Show a progress bar over power points.

    Returns:
        DataFrame with columns CSV_COLUMNS, one row per (power, scheme, BS).

    Raises:
        ValidationError: If the power list or the scheme list is empty.
        ConvergenceError: If a quadrature does not converge.
    """
    if len(powers) == 0:
        raise ValidationError("At least one power point is required", parameter="powers")
    if len(schemes) == 0:
        raise ValidationError("At least one scheme is required", parameter="schemes")

    specs = [SchemeSpec(scheme, sic) for scheme in dict.fromkeys(schemes)]
    thr = scenario.thresholds()
    t = scenario.turbulence
    rows: list[dict[str, Any]] = []

    for power in tqdm(powers, desc="Sweeping power", unit="point", disable=not progress):
        link1, link2 = scenario.link_budgets(float(power))
        estimates = estimate_outage_many(link1, link2, thr, t, specs, mc, workers=workers)

        quad_values: tuple[float, float] = (math.nan, math.nan)
        asym_values: tuple[float, float] = (math.nan, math.nan)
        if Scheme.OPTIMAL_DYNAMIC_NOMA in schemes:
            quad1, quad2 = outage_exact(link1, link2, thr, t, q)
            asym1, asym2 = (a.as_result() for a in outage_asymptotic(link1, link2, thr, t, q))
            quad_values = (quad1.probability, quad2.probability)
            asym_values = (asym1.probability, asym2.probability)

        for spec in specs:
            is_optimal = spec.scheme is Scheme.OPTIMAL_DYNAMIC_NOMA
            for bs, estimate in enumerate(estimates[spec], start=1):
                p_out_mc, stderr, flag = _mc_columns(estimate)
                rows.append(
                    {
                        "power_dbm": float(power),
                        "scheme": spec.scheme.value,
                        "sic": spec.sic.value,
                        "bs": bs,
                        "p_out_mc": p_out_mc,
                        "stderr": stderr,
                        "p_out_quad": quad_values[bs - 1] if is_optimal else math.nan,
                        "p_out_asym": asym_values[bs - 1] if is_optimal else math.nan,
                        "flag": flag,
                        "attenuation": scenario.attenuation,
                        "rate_1": thr.rate1,
                        "rate_2": thr.rate2,
                    }
                )

        logger.debug("Swept %.1f dBm (%d schemes)", power, len(specs))

    table = pd.DataFrame(rows, columns=list(CSV_COLUMNS))
    n_tail = int((table["flag"] == FLAG_TAIL).sum())
    if n_tail:
        logger.warning(
            "%d of %d Monte Carlo points had fewer than %d outage events and were blanked",
            n_tail,
            len(table),
            MC_MIN_EVENTS,
        )
    return table
