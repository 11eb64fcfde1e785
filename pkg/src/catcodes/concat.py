"""Rates of two-level concatenated cat codes ("n in m").

The inner n-cat code induces, per syndrome weight class, a logical Pauli
channel; the outer m-cat code then acts across the inner blocks.  Because the
inner syndromes are kept as side information, the rate is a weighted average
over assignments of inner classes to blocks.  Assignments are grouped by
composition (how many blocks carry each class) and, within a composition, by
per-class flipped-block counts, so the cost is polynomial in the outer length
for a fixed inner length instead of exponential in the block count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .channels import (
    NOISELESS,
    Basis,
    InvalidDistributionError,
    PauliChannel,
    permute_basis,
)
from .catcode import CatCodeSpec, cat_rate, induced_channel, syndrome_classes

DEFAULT_MAX_COMPOSITIONS = 10_000_000


class CompositionLimitError(RuntimeError):
    """The grouped enumeration would exceed the configured composition cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} compositions exceed the cap of {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class ConcatSpec:
    """Inner code applied per block, outer code across inner logical qubits."""

    inner: CatCodeSpec
    outer: CatCodeSpec

    @property
    def block_length(self) -> int:
        return self.inner.m * self.outer.m


@dataclass(frozen=True)
class InducedEnsemble:
    """Weighted logical channels produced by an inner cat code.

    Entry t corresponds to inner syndrome weight t; its channel is the
    conditional logical Pauli channel with labels identified with the code's
    logical operator algebra (logical X maps to the X slot), so an outer code
    may be built over these channels in any basis.  Zero-probability classes
    are kept with weight 0 and a placeholder channel, flagged in `degenerate`.
    """

    entries: tuple[tuple[float, PauliChannel], ...]
    inner_m: int
    inner_basis: Basis
    degenerate: tuple[bool, ...]

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.entries)

    @property
    def channels(self) -> tuple[PauliChannel, ...]:
        return tuple(c for _, c in self.entries)


def induced_ensemble(ch: PauliChannel, spec: CatCodeSpec) -> InducedEnsemble:
    """Ensemble of induced logical channels of the cat code, one per weight class."""
    # A length-1 code has no stabilizers; its logical frame is the physical one,
    # so the basis label is ignored and the degenerate reduction returns the
    # input channel unchanged.
    chp = permute_basis(ch, spec.basis) if spec.m > 1 else ch
    entries = []
    degenerate = []
    for sc in syndrome_classes(chp, spec.m):
        lw = sc.log_class_weight()
        if lw == -math.inf:
            entries.append((0.0, NOISELESS))
            degenerate.append(True)
        else:
            entries.append((math.exp(lw), induced_channel(sc)))
            degenerate.append(False)
    return InducedEnsemble(tuple(entries), spec.m, spec.basis, tuple(degenerate))


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _grid(vectors: list[np.ndarray]) -> np.ndarray:
    n = len(vectors)
    shaped = [v.reshape((1,) * i + (-1,) + (1,) * (n - 1 - i)) for i, v in enumerate(vectors)]
    return reduce(np.multiply, shaped)


def _grid_sum(vectors: list[np.ndarray]) -> np.ndarray:
    n = len(vectors)
    shaped = [v.reshape((1,) * i + (-1,) + (1,) * (n - 1 - i)) for i, v in enumerate(vectors)]
    return reduce(np.add, shaped)


def concat_rate(
    ch: PauliChannel,
    spec: ConcatSpec,
    max_compositions: int = DEFAULT_MAX_COMPOSITIONS,
) -> float:
    """Rate (qubits per physical channel use) of the concatenated code, exact.

    Enumerates compositions of the outer length over inner syndrome classes in
    lexicographic order with multinomial weights, then per-class flipped-block
    counts; no sampling is involved and the summation order is fixed, so the
    result is deterministic.
    """
    n, big_m = spec.inner.m, spec.outer.m
    n_comps = math.comb(big_m + n - 1, n - 1)
    if n_comps > max_compositions:
        raise CompositionLimitError(n_comps, max_compositions)

    ens = induced_ensemble(ch, spec.inner)
    chans = [permute_basis(c, spec.outer.basis) for c in ens.channels]
    log_w = [math.log(w) if w > 0.0 else -math.inf for w in ens.weights]

    # Per class t and flipped count j in 0..k: factors of the two signed
    # products in the heterogeneous joint formula, plus binomial counts.
    alpha = np.array([c.q_x for c in chans])
    abar = 1.0 - alpha
    beta = np.array([c.p_x - c.p_y for c in chans])
    bbar = np.array([1.0 - c.q_x - 2.0 * c.p_z for c in chans])

    log_m = math.log(big_m)
    total_p = 0.0
    total_h = 0.0
    for comp in _compositions(big_m, n):
        active = [t for t in range(n) if comp[t] > 0]
        lw = sum(comp[t] * log_w[t] for t in active)
        if lw == -math.inf:
            continue
        log_mult = math.lgamma(big_m + 1) - sum(math.lgamma(comp[t] + 1) for t in active)
        factor = math.exp(lw + log_mult - log_m)

        va0, va1, vb0, vb1, vc, vj = [], [], [], [], [], []
        for t in active:
            k = comp[t]
            j = np.arange(k + 1)
            va0.append(alpha[t] ** j * abar[t] ** (k - j))
            va1.append(alpha[t] ** (k - j) * abar[t] ** j)
            vb0.append(beta[t] ** j * bbar[t] ** (k - j))
            vb1.append(beta[t] ** (k - j) * bbar[t] ** j)
            vc.append(np.array([float(math.comb(k, int(x))) for x in j]))
            vj.append(j.astype(float))

        a0, a1 = _grid(va0), _grid(va1)
        b0, b1 = _grid(vb0), _grid(vb1)
        # Number of (assignment, syndrome) pairs per flip-count cell: the
        # first block is never flipped in the u=0 representative, which
        # contributes the (M - |flips|) / M factor.
        count = _grid(vc) * (big_m - _grid_sum(vj))
        ptot = a0 + a1
        joints = (0.5 * (a0 + b0), 0.5 * (a1 + b1), 0.5 * (a1 - b1), 0.5 * (a0 - b0))

        good = ptot > 0.0
        safe = np.where(good, ptot, 1.0)
        h = np.zeros_like(ptot)
        for joint in joints:
            c = np.where(good, joint / safe, 0.0)
            if np.any(c < -1e-12):
                raise InvalidDistributionError(
                    f"conditional probability {c.min()} negative beyond tolerance"
                )
            c = np.clip(c, 0.0, 1.0)
            h -= np.where(c > 0.0, c * np.log2(np.where(c > 0.0, c, 1.0)), 0.0)

        total_p += factor * float(np.sum(count * ptot))
        total_h += factor * float(np.sum(count * ptot * h))

    return (total_p - total_h) / (n * big_m)
