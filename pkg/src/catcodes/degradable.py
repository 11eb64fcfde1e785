"""Degradability testing for small channels.

A channel N with complementary channel N^C is degradable when some completely
positive trace-preserving map D satisfies D(N(rho)) = N^C(rho).  In the
matrix-unit basis this is the linear system N D = N^C; the solver finds the
least-squares D and the verdict checks the residual together with positivity
of D's Choi matrix.  A strictly negative Choi eigenvalue with a tiny residual
certifies non-degradability when N is invertible (the solution is unique).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .channels import PauliChannel

RESIDUAL_TOL = 1e-8
PSD_TOL = -1e-8
CONDITION_LIMIT = 1e10
TRACE_TOL = 1e-10

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class MalformedMapError(ValueError):
    """A map expected to be Hermiticity-preserving is not."""


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators of a channel; each is dim_out x dim_in."""

    ops: tuple
    dim_in: int
    dim_out: int

    @staticmethod
    def from_matrices(ops) -> "KrausSet":
        mats = tuple(np.asarray(op, dtype=complex) for op in ops)
        if not mats:
            raise ValueError("a Kraus set needs at least one operator")
        dim_out, dim_in = mats[0].shape
        for op in mats:
            if op.shape != (dim_out, dim_in):
                raise ValueError("Kraus operators must share one shape")
        k = KrausSet(mats, dim_in, dim_out)
        res = k.trace_preservation_residual()
        if res > TRACE_TOL:
            raise ValueError(f"Kraus set is not trace preserving (residual {res})")
        return k

    def trace_preservation_residual(self) -> float:
        acc = sum(op.conj().T @ op for op in self.ops)
        return float(np.linalg.norm(acc - np.eye(self.dim_in)))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(op @ rho @ op.conj().T for op in self.ops)


@dataclass(frozen=True)
class ChannelMatrixRep:
    """Matrix of a map on operator spaces in the matrix-unit basis.

    Row index (i, j) is the input unit |i><j|, column index (k, l) the output
    coefficient on |k><l|; both flattened row-major, so composition D after N
    is the matrix product N @ D.
    """

    matrix: np.ndarray
    dim_in: int
    dim_out: int

    def apply(self, rho: np.ndarray) -> np.ndarray:
        vec = np.asarray(rho, dtype=complex).reshape(-1)
        return (vec @ self.matrix).reshape(self.dim_out, self.dim_out)


def kraus_from_pauli(ch: PauliChannel) -> KrausSet:
    """Kraus operators sqrt(p_k) sigma_k, zero-probability operators omitted."""
    ops = []
    for prob, name in zip(ch.probs, "IXYZ"):
        if prob > 0.0:
            ops.append(math.sqrt(prob) * PAULI_MATRICES[name])
    return KrausSet.from_matrices(ops)


def natural_rep(k: KrausSet) -> ChannelMatrixRep:
    """Matrix-unit-basis matrix of the channel: M[ij, kl] = sum_K K[k,i] conj(K[l,j])."""
    m = np.zeros((k.dim_in**2, k.dim_out**2), dtype=complex)
    for op in k.ops:
        # N(|i><j|) = K |i><j| K^dag has (k, l) coefficient K[k,i] conj(K[l,j]).
        m += np.einsum("ki,lj->ijkl", op, op.conj()).reshape(k.dim_in**2, k.dim_out**2)
    return ChannelMatrixRep(m, k.dim_in, k.dim_out)


def complementary(k: KrausSet) -> KrausSet:
    """Complementary channel to the environment, via the Stinespring isometry.

    With U = sum_k E_k (x) |k>_E, tracing out the original output leaves Kraus
    operators F_j with F_j[k, i] = E_k[j, i]; the environment dimension equals
    the number of Kraus operators and its basis is ordered by Kraus index.
    """
    n = len(k.ops)
    stacked = np.stack(k.ops)  # (n, dim_out, dim_in)
    return KrausSet.from_matrices([stacked[:, j, :].reshape(n, k.dim_in) for j in range(k.dim_out)])


def solve_degrading(n_rep: ChannelMatrixRep, nc_rep: ChannelMatrixRep):
    """Least-squares degrading map D and the residual ||N D - N^C||_F.

    When N is invertible the solution is unique and the residual is at
    roundoff; a singular N yields one member of the affine solution family.
    """
    if n_rep.dim_in != nc_rep.dim_in:
        raise ValueError("N and N^C must share the input dimension")
    d_mat, *_ = np.linalg.lstsq(n_rep.matrix, nc_rep.matrix, rcond=None)
    residual = float(np.linalg.norm(n_rep.matrix @ d_mat - nc_rep.matrix))
    return ChannelMatrixRep(d_mat, n_rep.dim_out, nc_rep.dim_out), residual


def choi_of_map(rep: ChannelMatrixRep) -> np.ndarray:
    """Choi matrix C[(i,k),(j,l)] = D[(i,j),(k,l)], Hermitian for valid maps."""
    din, dout = rep.dim_in, rep.dim_out
    choi = (
        rep.matrix.reshape(din, din, dout, dout)
        .transpose(0, 2, 1, 3)
        .reshape(din * dout, din * dout)
    )
    herm_gap = float(np.linalg.norm(choi - choi.conj().T))
    if herm_gap > 1e-10:
        raise MalformedMapError(f"map is not Hermiticity preserving (gap {herm_gap})")
    return choi


@dataclass(frozen=True)
class DegradabilityVerdict:
    status: str  # "degradable", "not_degradable", or "inconclusive"
    residual: float
    min_choi_eigenvalue: float
    solved_map: Optional[ChannelMatrixRep]
    note: Optional[str] = None

    def to_record(self) -> dict:
        rec = {
            "status": self.status,
            "residual": self.residual,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
        }
        if self.note:
            rec["note"] = self.note
        if self.solved_map is not None:
            rec["solved_map"] = {
                "dim_in": self.solved_map.dim_in,
                "dim_out": self.solved_map.dim_out,
                "real": self.solved_map.matrix.real.tolist(),
                "imag": self.solved_map.matrix.imag.tolist(),
            }
        return rec


def degradability_verdict(k: KrausSet) -> DegradabilityVerdict:
    """Solve for the degrading map and classify the channel.

    A tiny residual with a PSD Choi matrix certifies degradability (the
    solved map is a witness even when N is singular).  A large residual is
    also conclusive: least squares attains the global minimum of
    ||N D - N^C||, so a nonzero minimum means no map at all satisfies the
    degrading equation.  Only a singular N with a solvable equation and a
    non-PSD solved member is inconclusive, since other members of the
    affine solution family were not examined.
    """
    n_rep = natural_rep(k)
    nc_rep = natural_rep(complementary(k))
    d_rep, residual = solve_degrading(n_rep, nc_rep)
    choi = choi_of_map(d_rep)
    min_eig = float(np.linalg.eigvalsh(choi)[0])
    invertible = np.linalg.cond(n_rep.matrix) < CONDITION_LIMIT
    solvable = residual <= RESIDUAL_TOL * max(
        1.0, float(np.linalg.norm(nc_rep.matrix))
    )
    if solvable and min_eig >= PSD_TOL:
        status, note = "degradable", None
    elif not solvable:
        status = "not_degradable"
        note = "the degrading equation N D = N^C has no solution"
    elif invertible:
        status, note = "not_degradable", None
    else:
        status = "inconclusive"
        note = "N is singular; the least-squares map is one member of an affine family"
    return DegradabilityVerdict(status, residual, min_eig, d_rep, note)
