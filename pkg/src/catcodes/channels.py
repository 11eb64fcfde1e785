"""Pauli channels, entropy/hashing rates, and named channel families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

# Components in [-CLAMP_TOL, 0) are treated as roundoff and clamped to 0;
# anything more negative is a real error.
CLAMP_TOL = 1e-12
SUM_TOL = 1e-12


class InvalidDistributionError(ValueError):
    """A probability vector has a negative entry or does not sum to 1."""


class NoSolutionError(ValueError):
    """A channel family has no valid channel at the requested noise level."""


class Basis(Enum):
    """Repetition basis of a cat code (which single-qubit flips it detects)."""

    Z = "Z"
    X = "X"
    Y = "Y"


def _clamped(x: float, what: str) -> float:
    if x < 0.0:
        if x < -CLAMP_TOL:
            raise InvalidDistributionError(f"{what} = {x} is negative beyond tolerance")
        return 0.0
    return x


@dataclass(frozen=True)
class PauliChannel:
    """Qubit Pauli channel: apply I, X, Y, Z with probabilities (p_i, p_x, p_y, p_z)."""

    p_i: float
    p_x: float
    p_y: float
    p_z: float

    def __post_init__(self) -> None:
        for name in ("p_i", "p_x", "p_y", "p_z"):
            object.__setattr__(self, name, _clamped(getattr(self, name), name))
        total = self.p_i + self.p_x + self.p_y + self.p_z
        if abs(total - 1.0) > SUM_TOL:
            raise InvalidDistributionError(f"Pauli probabilities sum to {total}, not 1")

    @property
    def probs(self) -> tuple[float, float, float, float]:
        return (self.p_i, self.p_x, self.p_y, self.p_z)

    @property
    def q_x(self) -> float:
        """Amplitude-flip probability p_x + p_y."""
        return self.p_x + self.p_y

    @property
    def q_z(self) -> float:
        """Phase-flip probability p_z + p_y."""
        return self.p_z + self.p_y


NOISELESS = PauliChannel(1.0, 0.0, 0.0, 0.0)


def entropy4(dist) -> float:
    """Shannon entropy in bits of a 4-outcome distribution, with 0 log 0 = 0."""
    vals = [_clamped(float(d), "probability") for d in dist]
    total = sum(vals)
    if abs(total - 1.0) > 1e-9:
        raise InvalidDistributionError(f"distribution sums to {total}, not 1")
    h = 0.0
    for v in vals:
        if v > 0.0:
            h -= v * math.log2(v)
    # A component may exceed 1 by up to the sum tolerance, leaving a tiny
    # negative total; entropy is nonnegative, so treat that as roundoff.
    if -1e-9 < h < 0.0:
        h = 0.0
    return h


def hashing_rate(ch: PauliChannel) -> float:
    """Single-letter (nondegenerate-code) rate 1 - H(p_i, p_x, p_y, p_z).

    May be negative; callers decide whether to clamp.
    """
    return 1.0 - entropy4(ch.probs)


def permute_basis(ch: PauliChannel, basis: Basis) -> PauliChannel:
    """Relabel error operators so a cat code in `basis` reduces to the Z-basis formulas.

    The error whose flips the code detects is mapped into the X slot.  Each
    permutation is an involution: Z is the identity, X swaps p_x and p_z,
    and Y swaps p_y and p_z while fixing p_x.
    """
    if basis is Basis.Z:
        return ch
    if basis is Basis.X:
        return PauliChannel(ch.p_i, ch.p_z, ch.p_y, ch.p_x)
    return PauliChannel(ch.p_i, ch.p_x, ch.p_z, ch.p_y)


@dataclass(frozen=True)
class ChannelFamily:
    """A one-parameter family of Pauli channels indexed by total noise p.

    kind is one of "depolarizing", "two_pauli", "independent_xz_ratio",
    "custom_ray"; params hold the family-specific constants.
    """

    kind: str
    params: tuple[tuple[str, float], ...] = ()

    @property
    def param_dict(self) -> dict[str, float]:
        return dict(self.params)

    @property
    def p_max(self) -> float:
        """Largest admissible total error probability for this family."""
        return 1.0

    def describe(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.kind}({inner})"


_FAMILY_KINDS = ("depolarizing", "two_pauli", "independent_xz_ratio", "custom_ray")


def make_family(kind: str, params: Mapping[str, float] | None = None) -> ChannelFamily:
    """Construct a validated channel family."""
    params = dict(params or {})
    if kind not in _FAMILY_KINDS:
        raise ValueError(f"unknown family kind {kind!r}")
    if kind == "independent_xz_ratio":
        ratio = params.get("ratio")
        if ratio is None or ratio <= 0.0:
            raise ValueError("independent_xz_ratio needs a positive 'ratio' = q_x/q_z")
    elif kind == "custom_ray":
        for key in ("ex", "ey", "ez"):
            if params.get(key, 0.0) < 0.0:
                raise ValueError(f"custom_ray direction component {key} must be >= 0")
        total = params.get("ex", 0.0) + params.get("ey", 0.0) + params.get("ez", 0.0)
        if total <= 0.0:
            raise ValueError("custom_ray needs a nonzero error direction (ex, ey, ez)")
        params = {k: params.get(k, 0.0) / total for k in ("ex", "ey", "ez")}
    elif params:
        raise ValueError(f"family {kind!r} takes no parameters")
    return ChannelFamily(kind, tuple(sorted(params.items())))


def evaluate_family(family: ChannelFamily, p: float) -> PauliChannel:
    """Evaluate the family at total error probability p."""
    if p < -CLAMP_TOL or p > family.p_max + CLAMP_TOL:
        raise NoSolutionError(f"p = {p} outside [0, {family.p_max}] for {family.kind}")
    p = min(max(p, 0.0), family.p_max)
    if family.kind == "depolarizing":
        return PauliChannel(1.0 - p, p / 3.0, p / 3.0, p / 3.0)
    if family.kind == "two_pauli":
        return PauliChannel(1.0 - p, p / 2.0, 0.0, p / 2.0)
    if family.kind == "independent_xz_ratio":
        ratio = family.param_dict["ratio"]
        q_z = _solve_independent_qz(ratio, p)
        q_x = ratio * q_z
        return PauliChannel(
            (1.0 - q_x) * (1.0 - q_z),
            q_x * (1.0 - q_z),
            q_x * q_z,
            q_z * (1.0 - q_x),
        )
    d = family.param_dict
    return PauliChannel(1.0 - p, p * d["ex"], p * d["ey"], p * d["ez"])


def _solve_independent_qz(ratio: float, p: float) -> float:
    """Root in [0, 1] of ratio*q^2 - (1+ratio)*q + p = 0.

    Independence of amplitude and phase errors with q_x = ratio * q_z gives
    total error p = q_z + q_x - q_z*q_x; this is the smaller quadratic root.
    """
    b = 1.0 + ratio
    disc = b * b - 4.0 * ratio * p
    if disc < 0.0:
        raise NoSolutionError(f"no independent-XZ channel with ratio {ratio} at p = {p}")
    # Smaller root, written to avoid cancellation when p is tiny.
    q = 2.0 * p / (b + math.sqrt(disc))
    if q < 0.0 or q > 1.0:
        raise NoSolutionError(f"independent-XZ solution q_z = {q} outside [0, 1]")
    return q
