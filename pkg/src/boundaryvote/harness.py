"""Experiment orchestration: trials, parameter sweeps, metrics, bound tables.

Seeding: each trial draws its randomness from sub-streams keyed only by
(master seed, lam, trial index). The region, the error probability p, and the
radius r are deliberately excluded, so every cell of a sweep that shares
(lam, trial) also shares sensor positions and noise draws (common random
numbers across cells); this makes cross-cell comparisons and the best-radius
extraction far more stable. Aggregation always reduces trials in index order,
so results are byte-identical no matter how many workers ran them.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial import cKDTree

from . import bounds as bounds_mod
from .geometry import dubious_zone_area
from .neighborhood import NeighborIndex, build_index
from .sampling import _STREAM_FLIPS, _stream, assign_measurements, sample_field
from .vote import SINGLE_ROUND, VoteMode, run_vote


@dataclass(frozen=True)
class SimConfig:
    lam: float
    p: float
    r: float
    region: object
    mode: VoteMode = SINGLE_ROUND
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if not 0.0 <= self.p <= 0.5:
            raise ValueError("p must lie in [0, 1/2]")
        if self.r <= 0:
            raise ValueError("r must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


@dataclass(frozen=True)
class TrialMetrics:
    n_sensors: int
    initial_errors: int
    final_errors: int
    corrected: int
    new_errors: int
    errors_in_zr: int
    errors_in_zr_and_x: int
    errors_outside_zr: int
    correction_rate: float        # net: (initial - final) / initial
    gross_correction_rate: float  # corrected / initial
    degenerate: bool = False      # initial_errors == 0; rates defined as 1


METRIC_FIELDS = (
    "n_sensors", "initial_errors", "final_errors", "corrected", "new_errors",
    "errors_in_zr", "errors_in_zr_and_x", "errors_outside_zr",
    "correction_rate", "gross_correction_rate",
)

CSV_COLUMNS = (
    "region", "lambda", "p", "r", "mode", "trials",
    "n_sensors_mean", "initial_errors_mean", "final_errors_mean", "final_errors_se",
    "corrected_mean", "new_errors_mean", "errors_in_zr_mean", "errors_in_zr_and_x_mean",
    "correction_rate_mean",
    "thm1_upper", "thm1_lower", "thm2_upper", "thm3_upper", "combined_upper",
)


def trial_seed(master_seed: int, lam: float, trial_index: int) -> int:
    """Per-trial sub-seed; excludes region, p, and r by design."""
    bits = int(np.float64(lam).view(np.uint64))
    key = (bits >> 32, bits & 0xFFFFFFFF, trial_index)
    return int(np.random.SeedSequence(master_seed, spawn_key=key).generate_state(1, np.uint64)[0])


def compute_metrics(truth, measured, decided, signed_dist, r: float) -> TrialMetrics:
    """Bucket final decisions against ground truth, split by the band Z_r."""
    wrong0 = measured != truth
    wrong1 = decided != truth
    in_zr = np.abs(signed_dist) <= r
    in_x = signed_dist >= 0.0
    initial = int(np.count_nonzero(wrong0))
    final = int(np.count_nonzero(wrong1))
    corrected = int(np.count_nonzero(wrong0 & ~wrong1))
    new_errors = int(np.count_nonzero(~wrong0 & wrong1))
    errors_in_zr = int(np.count_nonzero(wrong1 & in_zr))
    errors_in_zr_and_x = int(np.count_nonzero(wrong1 & in_zr & in_x))
    degenerate = initial == 0
    net = 1.0 if degenerate else (initial - final) / initial
    gross = 1.0 if degenerate else corrected / initial
    return TrialMetrics(
        n_sensors=truth.shape[0],
        initial_errors=initial,
        final_errors=final,
        corrected=corrected,
        new_errors=new_errors,
        errors_in_zr=errors_in_zr,
        errors_in_zr_and_x=errors_in_zr_and_x,
        errors_outside_zr=final - errors_in_zr,
        correction_rate=net,
        gross_correction_rate=gross,
        degenerate=degenerate,
    )


def run_trial(config: SimConfig, trial_index: int = 0) -> TrialMetrics:
    """Sample, measure, index, vote, and score one trial (fully deterministic)."""
    seed = trial_seed(config.seed, config.lam, trial_index)
    field = sample_field(config.lam, seed)
    field = assign_measurements(field, config.region, config.p, seed)
    index = build_index(field, config.r)
    outcome = run_vote(field, index, config.mode)
    return compute_metrics(field.truth, field.measured, outcome.decided,
                           field.boundary_dist, config.r)


def run_trial_field(config: SimConfig, trial_index: int = 0):
    """Like run_trial but also returns the field and vote outcome (for rendering)."""
    seed = trial_seed(config.seed, config.lam, trial_index)
    field = sample_field(config.lam, seed)
    field = assign_measurements(field, config.region, config.p, seed)
    index = build_index(field, config.r)
    outcome = run_vote(field, index, config.mode)
    metrics = compute_metrics(field.truth, field.measured, outcome.decided,
                              field.boundary_dist, config.r)
    return field, outcome, metrics


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepRow:
    region: str
    lam: float
    p: float
    r: float
    mode: str
    trials: int
    n_sensors_mean: float
    initial_errors_mean: float
    final_errors_mean: float
    final_errors_se: float
    corrected_mean: float
    new_errors_mean: float
    errors_in_zr_mean: float
    errors_in_zr_and_x_mean: float
    errors_outside_zr_mean: float
    correction_rate_mean: float
    gross_correction_rate_mean: float
    thm1_upper: float
    thm1_lower: float
    thm2_upper: float
    thm3_upper: float
    combined_upper: float


@dataclass(frozen=True)
class SweepResult:
    rows: list
    regions: tuple
    lam_values: tuple
    p_values: tuple
    r_values: tuple
    mode: VoteMode
    seed: int
    trials: int
    per_trial: np.ndarray  # shape (regions, lams, ps, rs, trials, metrics)

    def row(self, region_name: str, lam: float, p: float, r: float) -> SweepRow:
        for row in self.rows:
            if (row.region == region_name and row.lam == lam
                    and math.isclose(row.p, p, abs_tol=1e-12)
                    and math.isclose(row.r, r, abs_tol=1e-12)):
                return row
        raise KeyError(f"no sweep cell ({region_name}, {lam}, {p}, {r})")


def _field_unit(master_seed, lam, trial, regions, p_values, r_values, mode):
    """All metrics for one sampled field across every (region, p, r) cell."""
    seed = trial_seed(master_seed, lam, trial)
    field = sample_field(lam, seed)
    n = field.n
    u = _stream(seed, _STREAM_FLIPS).random(n)

    r_max = max(r_values)
    if n:
        tree = cKDTree(np.column_stack((field.x, field.y)))
        raw = tree.query_pairs(r_max, output_type="ndarray")
        order = np.lexsort((raw[:, 1], raw[:, 0]))
        raw = raw[order]
        pi = raw[:, 0].astype(np.int32)
        pj = raw[:, 1].astype(np.int32)
        dist = np.hypot(field.x[pi] - field.x[pj], field.y[pi] - field.y[pj])
    else:
        pi = pj = np.empty(0, dtype=np.int32)
        dist = np.empty(0)

    indexes = []
    for r in r_values:
        mask = dist <= r
        indexes.append(NeighborIndex.from_pairs(field, r, pi[mask], pj[mask]))

    out = np.empty((len(regions), len(p_values), len(r_values), len(METRIC_FIELDS)))
    for gi, region in enumerate(regions):
        sd = np.asarray(region.signed_distance(field.x, field.y), dtype=float)
        truth = sd >= 0.0
        for pi_idx, p in enumerate(p_values):
            measured = truth ^ (u < p)
            fld = replace(field, p=float(p), truth=truth, measured=measured,
                          boundary_dist=sd, region_name=region.name)
            for ri, r in enumerate(r_values):
                outcome = run_vote(fld, indexes[ri], mode)
                m = compute_metrics(truth, measured, outcome.decided, sd, r)
                out[gi, pi_idx, ri] = [getattr(m, f) for f in METRIC_FIELDS]
    return out


def sweep(base: SimConfig, r_values, p_values, lam_values, regions,
          workers: int = 1) -> SweepResult:
    """Cartesian sweep with per-cell trial aggregation and bound reports.

    Work units are (lam, trial) fields; each unit evaluates every region, p,
    and r on the same sampled positions. Reduction runs in fixed grid/trial
    order, so the output is identical for any worker count.
    """
    r_values = tuple(float(v) for v in r_values)
    p_values = tuple(float(v) for v in p_values)
    lam_values = tuple(float(v) for v in lam_values)
    regions = tuple(regions)
    if not (r_values and p_values and lam_values and regions):
        raise ValueError("sweep grids must be nonempty")
    trials = base.trials
    shape = (len(regions), len(lam_values), len(p_values), len(r_values),
             trials, len(METRIC_FIELDS))
    per_trial = np.empty(shape)

    units = [(li, lam, t) for li, lam in enumerate(lam_values) for t in range(trials)]
    if workers <= 1:
        for li, lam, t in units:
            per_trial[:, li, :, :, t, :] = _field_unit(
                base.seed, lam, t, regions, p_values, r_values, base.mode)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                (li, t): pool.submit(_field_unit, base.seed, lam, t,
                                     regions, p_values, r_values, base.mode)
                for li, lam, t in units
            }
            for (li, t), fut in futures.items():
                per_trial[:, li, :, :, t, :] = fut.result()

    zone_cache: dict[tuple[int, float], float] = {}
    rows = []
    idx = {name: k for k, name in enumerate(METRIC_FIELDS)}
    for gi, region in enumerate(regions):
        for li, lam in enumerate(lam_values):
            for pi_idx, p in enumerate(p_values):
                for ri, r in enumerate(r_values):
                    cell = per_trial[gi, li, pi_idx, ri]  # (trials, metrics)
                    means = cell.mean(axis=0)
                    fe = cell[:, idx["final_errors"]]
                    se = float(fe.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
                    key = (gi, r)
                    if key not in zone_cache:
                        zone_cache[key] = dubious_zone_area(region, r).value
                    zr_area = zone_cache[key]
                    convex_ok = getattr(region, "convex", False) and \
                        region.min_curvature_radius >= r
                    lower, upper = bounds_mod.thm1_bounds(lam, p, r, 1.0 - zr_area)
                    t2 = bounds_mod.thm2_upper(lam, r, region.perimeter, region.components)
                    if convex_ok and p < 0.5 and region.perimeter > r:
                        t3 = bounds_mod.thm3_upper(lam, p, r, region.perimeter)
                        comb = upper + t3
                    else:
                        t3 = math.nan
                        comb = math.nan
                    rows.append(SweepRow(
                        region=region.name, lam=lam, p=p, r=r,
                        mode=base.mode.kind, trials=trials,
                        n_sensors_mean=float(means[idx["n_sensors"]]),
                        initial_errors_mean=float(means[idx["initial_errors"]]),
                        final_errors_mean=float(means[idx["final_errors"]]),
                        final_errors_se=se,
                        corrected_mean=float(means[idx["corrected"]]),
                        new_errors_mean=float(means[idx["new_errors"]]),
                        errors_in_zr_mean=float(means[idx["errors_in_zr"]]),
                        errors_in_zr_and_x_mean=float(means[idx["errors_in_zr_and_x"]]),
                        errors_outside_zr_mean=float(means[idx["errors_outside_zr"]]),
                        correction_rate_mean=float(means[idx["correction_rate"]]),
                        gross_correction_rate_mean=float(means[idx["gross_correction_rate"]]),
                        thm1_upper=upper, thm1_lower=lower,
                        thm2_upper=t2, thm3_upper=t3, combined_upper=comb,
                    ))
    return SweepResult(rows=rows, regions=regions, lam_values=lam_values,
                       p_values=p_values, r_values=r_values, mode=base.mode,
                       seed=base.seed, trials=trials, per_trial=per_trial)


def best_radius(result: SweepResult, p: float, tie_se: float = 3.0) -> tuple[float, float]:
    """Radius grid cell(s) minimizing mean final errors for a p slice.

    Final-error means are averaged over lambda values and regions with equal
    weight. Cells whose paired difference from the minimizing cell is within
    tie_se standard errors count as tied (trials share fields across r, so
    the paired comparison is tight); tie_se=0 returns exact argmin cells only.
    The return value is the (lowest, highest) tied radius.
    """
    try:
        pi = next(k for k, v in enumerate(result.p_values)
                  if math.isclose(v, p, abs_tol=1e-12))
    except StopIteration:
        raise ValueError(f"p={p} not present in the sweep") from None
    fi = METRIC_FIELDS.index("final_errors")
    # (r, trial) matrix of final errors averaged over regions and lambdas
    agg = result.per_trial[:, :, pi, :, :, fi].mean(axis=(0, 1))
    means = agg.mean(axis=1)
    k0 = int(np.argmin(means))
    winners = []
    for k in range(agg.shape[0]):
        diff = agg[k] - agg[k0]
        mean_diff = float(diff.mean())
        if k == k0 or mean_diff == 0.0:
            winners.append(result.r_values[k])
            continue
        se = float(diff.std(ddof=1) / math.sqrt(diff.shape[0])) if diff.shape[0] > 1 else 0.0
        if mean_diff <= tie_se * se:
            winners.append(result.r_values[k])
    return min(winners), max(winners)


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    f = float(value)
    if math.isnan(f):
        return "nan"
    if f.is_integer() and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def write_sweep_csv(result: SweepResult, fh) -> None:
    """Emit the sweep table with the fixed column set, one row per grid cell."""
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for row in result.rows:
        values = [
            row.region, row.lam, row.p, row.r, row.mode, row.trials,
            row.n_sensors_mean, row.initial_errors_mean, row.final_errors_mean,
            row.final_errors_se, row.corrected_mean, row.new_errors_mean,
            row.errors_in_zr_mean, row.errors_in_zr_and_x_mean,
            row.correction_rate_mean,
            row.thm1_upper, row.thm1_lower, row.thm2_upper, row.thm3_upper,
            row.combined_upper,
        ]
        fh.write(",".join(_fmt(v) for v in values) + "\n")


def sweep_csv_string(result: SweepResult) -> str:
    import io

    buf = io.StringIO()
    write_sweep_csv(result, buf)
    return buf.getvalue()
