"""Threshold location, repetition-length scans, and the asymptotic rate guide."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .channels import Basis, ChannelFamily, evaluate_family, hashing_rate
from .catcode import CatCodeSpec, cat_rate
from .concat import DEFAULT_MAX_COMPOSITIONS, ConcatSpec, concat_rate

CodeSpec = Union[CatCodeSpec, ConcatSpec, None]


class NoBracketError(RuntimeError):
    """No sign change of the rate was found over the admissible noise range."""


@dataclass(frozen=True)
class ThresholdResult:
    """Zero-rate crossing of a code along a channel family."""

    p_star: float
    bracket: tuple[float, float]
    evaluations: int
    code: CodeSpec
    family: ChannelFamily
    warning: Optional[str] = None


@dataclass(frozen=True)
class ScanRow:
    """One row of a length scan: rate at fixed noise, or threshold, per scan type."""

    m: int
    rate: Optional[float] = None
    threshold: Optional[float] = None


def code_rate(
    family: ChannelFamily,
    code: CodeSpec,
    p: float,
    max_compositions: int = DEFAULT_MAX_COMPOSITIONS,
) -> float:
    """Rate of `code` on the family's channel at noise p; code=None means hashing."""
    ch = evaluate_family(family, p)
    if code is None:
        return hashing_rate(ch)
    if isinstance(code, ConcatSpec):
        return concat_rate(ch, code, max_compositions=max_compositions)
    return cat_rate(ch, code)


def threshold(
    family: ChannelFamily,
    code: CodeSpec,
    tol: float = 1e-6,
    initial_step: float = 0.01,
    pre_scan_points: int = 64,
    max_compositions: int = DEFAULT_MAX_COMPOSITIONS,
) -> ThresholdResult:
    """Locate the noise level where the code's rate crosses zero.

    A bracket is found by doubling from `initial_step`, then refined by
    bisection to width <= tol.  A coarse pre-scan (pre_scan_points over the
    admissible range; 0 disables it) guards the single-crossing assumption:
    if several sign changes appear, the largest crossing is refined and the
    result carries a warning.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    evals = 0

    def rate(p: float) -> float:
        nonlocal evals
        evals += 1
        return code_rate(family, code, p, max_compositions=max_compositions)

    p_max = family.p_max
    if rate(0.0) <= 0.0:
        raise NoBracketError("rate is not positive at p = 0")

    warning = None
    bracket = None
    if pre_scan_points > 0:
        grid = [p_max * (i + 1) / pre_scan_points for i in range(pre_scan_points)]
        values = [rate(p) for p in grid]
        crossings = []
        prev_p, prev_v = 0.0, 1.0
        for p, v in zip(grid, values):
            if prev_v > 0.0 >= v:
                crossings.append((prev_p, p))
            prev_p, prev_v = p, v
        if not crossings:
            raise NoBracketError("rate is positive across the admissible range")
        if len(crossings) > 1:
            warning = f"{len(crossings)} sign changes on the coarse grid; using the largest"
        bracket = crossings[-1]
    else:
        lo, hi = 0.0, min(initial_step, p_max)
        while rate(hi) > 0.0:
            if hi >= p_max:
                raise NoBracketError("rate is positive across the admissible range")
            lo, hi = hi, min(2.0 * hi, p_max)
        bracket = (lo, hi)

    lo, hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(0.5 * (lo + hi), (lo, hi), evals, code, family, warning)


def best_length_scan(
    family: ChannelFamily,
    p: float,
    basis: Basis,
    m_range,
) -> tuple[list[ScanRow], int]:
    """Rate of each cat length at fixed noise; returns rows and the argmax m.

    Ties go to the smallest m (cheaper code at equal rate).
    """
    ms = sorted(set(int(m) for m in m_range))
    if not ms:
        raise ValueError("m_range is empty")
    ch = evaluate_family(family, p)
    rows = [ScanRow(m, rate=cat_rate(ch, CatCodeSpec(m, basis))) for m in ms]
    best = max(rows, key=lambda row: (row.rate, -row.m))
    return rows, best.m


def best_threshold_scan(
    family: ChannelFamily,
    basis: Basis,
    m_range,
    tol: float = 1e-6,
    pre_scan_points: int = 64,
) -> tuple[list[ScanRow], int]:
    """Zero-rate threshold of each cat length; returns rows and the argmax m."""
    ms = sorted(set(int(m) for m in m_range))
    if not ms:
        raise ValueError("m_range is empty")
    rows = []
    for m in ms:
        res = threshold(family, CatCodeSpec(m, basis), tol=tol, pre_scan_points=pre_scan_points)
        rows.append(ScanRow(m, threshold=res.p_star))
    best = max(rows, key=lambda row: (row.threshold, -row.m))
    return rows, best.m


def rule_of_thumb_lengths(q_z: float, p_z: float) -> tuple[float, float]:
    """Heuristic best repetition lengths (1/q_z, 1/p_z).

    The two estimates disagree for channels with sizable p_y; both are
    reported and neither is preferred.
    """
    return (
        1.0 / q_z if q_z > 0.0 else math.inf,
        1.0 / p_z if p_z > 0.0 else math.inf,
    )


def asymptotic_rate_estimate(q_z: float) -> float:
    """Large-m rate guide 2 q_z ln(1/q_z) / ln ln(1/q_z) for almost-bitflip noise.

    An asymptotic statement, not an exact rate: near the hashing point it
    agrees with the best cat rate only up to a modest constant factor.
    """
    if not 0.0 < q_z < 1.0 / math.e:
        raise ValueError(f"q_z = {q_z} outside (0, 1/e)")
    ell = math.log(1.0 / q_z)
    return 2.0 * q_z * ell / math.log(ell)
