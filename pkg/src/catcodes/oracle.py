"""Brute-force ground truth by exhaustive enumeration of Pauli error patterns.

Everything here works directly from the stabilizer and logical-operator
algebra in plain linear double-precision arithmetic (no log-domain, no weight
class shortcuts), deliberately sharing no code with the analytic path so the
two cannot fail together.  Sizes are capped at 4^9 patterns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .channels import Basis, PauliChannel, entropy4
from .catcode import CatCodeSpec

MAX_QUBITS = 9

# Pauli code order 0=I, 1=X, 2=Y, 3=Z as symplectic (x, z) bit pairs.
SYMPLECTIC_BITS = ((0, 0), (1, 0), (1, 1), (0, 1))

# Per repetition basis b: P = U Z U^dag (stabilizer factor) and Q = U X U^dag
# (the operator spanning the logical-X of the conjugated code).
BASIS_OPS = {
    Basis.Z: ((0, 1), (1, 0)),
    Basis.X: ((1, 0), (0, 1)),
    Basis.Y: ((1, 1), (1, 0)),
}


def _sympl(a: tuple[int, int], b: tuple[int, int]) -> int:
    return (a[0] * b[1] + a[1] * b[0]) % 2


@dataclass(frozen=True)
class JointTable:
    """Exact map (syndrome vector, logical u, logical v) -> probability."""

    m: int
    probs: dict

    def syndrome_marginals(self) -> dict:
        out: dict = {}
        for (s, _u, _v), p in self.probs.items():
            out[s] = out.get(s, 0.0) + p
        return out

    def conditional_channel(self, s) -> PauliChannel:
        total = self.syndrome_marginals()[s]
        # (u, v) -> channel slot: (0,0) I, (1,0) X, (1,1) Y, (0,1) Z
        vals = [self.probs.get((s, u, v), 0.0) / total for u, v in ((0, 0), (1, 0), (1, 1), (0, 1))]
        return PauliChannel(*vals)


def enumerate_joint(chs, basis: Basis = Basis.Z) -> JointTable:
    """Joint syndrome/logical distribution of a cat code over all 4^m patterns.

    chs are the per-qubit Pauli channels; the code repeats in `basis` (ignored
    for m = 1, where the trivial code keeps the physical frame).
    """
    chs = list(chs)
    m = len(chs)
    if m > MAX_QUBITS:
        raise ValueError(f"{m} qubits exceed the 4^{MAX_QUBITS} enumeration cap")
    p_op, q_op = BASIS_OPS[basis if m > 1 else Basis.Z]
    c_bit = [_sympl(e, p_op) for e in SYMPLECTIC_BITS]
    d_bit = [_sympl(e, q_op) for e in SYMPLECTIC_BITS]
    table: dict = {}
    for idx in range(4**m):
        codes = []
        rem = idx
        for _ in range(m):
            codes.append(rem % 4)
            rem //= 4
        prob = 1.0
        for ch, code in zip(chs, codes):
            prob *= ch.probs[code]
        if prob == 0.0:
            continue
        u = c_bit[codes[0]]
        s = tuple(u ^ c_bit[c] for c in codes[1:])
        v = 0
        for c in codes:
            v ^= d_bit[c]
        key = (s, u, v)
        table[key] = table.get(key, 0.0) + prob
    return JointTable(m, table)


def _rate_from_table(table: JointTable) -> float:
    acc = 0.0
    for s, p_s in table.syndrome_marginals().items():
        acc += p_s * (1.0 - entropy4(table.conditional_channel(s).probs))
    return acc / table.m


def oracle_cat_rate(chs, basis: Basis = Basis.Z) -> float:
    """Single-level cat rate by conditional-entropy accounting over the table."""
    return _rate_from_table(enumerate_joint(chs, basis))


def oracle_concat_rate(ch: PauliChannel, inner: CatCodeSpec, outer: CatCodeSpec) -> float:
    """Two-level rate: exact inner tables per block, exact outer enumeration."""
    n, m_out = inner.m, outer.m
    if n * m_out > MAX_QUBITS:
        raise ValueError(f"{n * m_out} qubits exceed the 4^{MAX_QUBITS} enumeration cap")
    inner_table = enumerate_joint([ch] * n, inner.basis)
    marginals = sorted(inner_table.syndrome_marginals().items())
    induced = [(p_s, inner_table.conditional_channel(s)) for s, p_s in marginals]
    acc = 0.0
    for combo in product(induced, repeat=m_out):
        weight = 1.0
        for p_s, _ in combo:
            weight *= p_s
        if weight == 0.0:
            continue
        outer_table = enumerate_joint([c for _, c in combo], outer.basis)
        acc += weight * _rate_from_table(outer_table) * m_out
    return acc / (n * m_out)


def oracle_concat_rate_physical(ch: PauliChannel, inner: CatCodeSpec, outer: CatCodeSpec) -> float:
    """Two-level rate from first principles on the physical qubits.

    Builds the concatenated code's stabilizers and logical operators as
    explicit symplectic vectors and enumerates all 4^(n*m) physical patterns,
    with no induced-channel composition at all.  This is the strongest check
    of the basis-frame conventions used everywhere else.
    """
    n, m_out = inner.m, outer.m
    n_qubits = n * m_out
    if n_qubits > MAX_QUBITS:
        raise ValueError(f"{n_qubits} qubits exceed the 4^{MAX_QUBITS} enumeration cap")
    p_in, q_in = BASIS_OPS[inner.basis if n > 1 else Basis.Z]
    out_basis = outer.basis if m_out > 1 else Basis.Z

    def block(ops_by_qubit: dict) -> list:
        vec = [(0, 0)] * n_qubits
        for q, op in ops_by_qubit.items():
            vec[q] = op
        return vec

    def logical(block_idx: int, kind: str) -> list:
        """Symplectic vector of the block's logical operator of type kind."""
        base = block_idx * n
        if kind == "X":
            return block({base + i: q_in for i in range(n)})
        if kind == "Z":
            return block({base: p_in})
        x_vec, z_vec = logical(block_idx, "X"), logical(block_idx, "Z")
        return [((a[0] + b[0]) % 2, (a[1] + b[1]) % 2) for a, b in zip(x_vec, z_vec)]

    def merge(vecs) -> list:
        out = [(0, 0)] * n_qubits
        for vec in vecs:
            out = [((a[0] + b[0]) % 2, (a[1] + b[1]) % 2) for a, b in zip(out, vec)]
        return out

    kind_of = {(0, 1): "Z", (1, 0): "X", (1, 1): "Y"}
    p_out_kind, q_out_kind = (kind_of[op] for op in BASIS_OPS[out_basis])

    operators = []
    for b in range(m_out):  # inner stabilizers P_in on (first, l) within each block
        for l in range(1, n):
            operators.append(block({b * n: p_in, b * n + l: p_in}))
    for b in range(1, m_out):  # outer stabilizers: type-P_out logicals on blocks (0, b)
        operators.append(merge([logical(0, p_out_kind), logical(b, p_out_kind)]))
    top_z = logical(0, p_out_kind)
    top_x = merge([logical(b, q_out_kind) for b in range(m_out)])

    # anticommutation bit of each single-qubit Pauli code with each operator's factor
    def bit_table(vec) -> np.ndarray:
        return np.array([[_sympl(e, vec[q]) for e in SYMPLECTIC_BITS] for q in range(n_qubits)])

    patterns = np.arange(4**n_qubits)
    codes = (patterns[:, None] // (4 ** np.arange(n_qubits))) % 4
    probs = np.ones(len(patterns))
    chp = np.array(ch.probs)
    for q in range(n_qubits):
        probs *= chp[codes[:, q]]

    def op_bits(vec) -> np.ndarray:
        t = bit_table(vec)
        acc = np.zeros(len(patterns), dtype=np.int64)
        for q in range(n_qubits):
            acc ^= t[q][codes[:, q]]
        return acc

    syndrome_key = np.zeros(len(patterns), dtype=np.int64)
    for op_vec in operators:
        syndrome_key = syndrome_key * 2 + op_bits(op_vec)
    u = op_bits(top_z)
    v = op_bits(top_x)

    full_key = syndrome_key * 4 + u * 2 + v
    sums = np.bincount(full_key, weights=probs, minlength=4 * (syndrome_key.max() + 1))
    joint = sums.reshape(-1, 4)  # rows: syndromes, cols: (u, v) = 00, 01, 10, 11
    totals = joint.sum(axis=1)
    acc = 0.0
    for row, total in zip(joint, totals):
        if total == 0.0:
            continue
        cond = row / total
        h = -sum(c * math.log2(c) for c in cond if c > 0.0)
        acc += total * (1.0 - h)
    return acc / n_qubits
