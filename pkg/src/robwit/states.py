"""Explicit states used by the certification suite.

Two families: the PPT entangled state detected by the PhiU4N witness, and
the isotropic line between the maximally entangled and maximally mixed
states whose entanglement threshold the witness saturates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps, witnesses
from .linalg import CONSTRUCTION_TOL, POSITIVITY_TOL, hermiticity_defect, matrix_unit, min_eigenvalue


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace positive operator on C^d (x) C^d."""

    rho: np.ndarray
    d: int
    label: str


def _validate_density(rho: np.ndarray, label: str) -> None:
    defect = hermiticity_defect(rho)
    if defect > CONSTRUCTION_TOL:
        raise ValueError(f"{label}: not Hermitian, defect {defect:.3e}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > CONSTRUCTION_TOL:
        raise ValueError(f"{label}: trace {tr} is not 1")
    low = min_eigenvalue(rho)
    if low < -POSITIVITY_TOL:
        raise ValueError(f"{label}: negative eigenvalue {low:.3e}")


def normalization_factor(n: int) -> float:
    """Overall scale 1/(8N^2(1+4N)) making the PPT entangled state unit trace."""
    return 1.0 / (8 * n * n * (1 + 4 * n))


def ppt_entangled_state(n: int, w: witnesses.Witness) -> DensityOperator:
    """PPT entangled state detected by the witness built from PhiU4N.

    Blocks on C^{4N} (x) C^{4N}, with scale NN = 1/(8N^2(1+4N)):

    * diagonal blocks diag(4N I, I) for the first 2N sites and diag(I, 4N I)
      for the rest;
    * rho_{i, i+2N} = -N(4N+1) W_{i, i+2N} in terms of the blocks of the
      trace-normalized witness.  This is the unique scale for which
      Tr(W rho) = -NN / (8 N^2); it keeps both rho and its partial
      transpose positive semidefinite;
    * rho_{ij} = |i><j| for i <= 2N < j, j != i + 2N;
    * everything else zero, lower blocks by Hermitian completion.
    """
    if w.source.family != "PhiU4N" or w.source.size != n:
        raise ValueError(f"witness source {w.source.family} (size {w.source.size}) does not match N={n}")
    if not maps.is_antisymmetric_unitary(w.source.u):
        raise ValueError("the PPT entangled state requires a strictly unitary U")
    d = 4 * n
    half = 2 * n
    scale = normalization_factor(n)
    w_coeff = n * (4 * n + 1)

    upper = np.diag([4.0 * n] * half + [1.0] * half).astype(complex)
    lower = np.diag([1.0] * half + [4.0 * n] * half).astype(complex)

    rho = np.zeros((d * d, d * d), dtype=complex)

    def put(i: int, j: int, block: np.ndarray) -> None:
        rho[i * d : (i + 1) * d, j * d : (j + 1) * d] = block

    for i in range(d):
        put(i, i, upper if i < half else lower)
    for i in range(half):
        block = -w_coeff * witnesses.witness_block(w, i, i + half)
        put(i, i + half, block)
        put(i + half, i, block.conj().T)
    for i in range(half):
        for j in range(half, d):
            if j == i + half:
                continue
            put(i, j, matrix_unit(d, i, j))
            put(j, i, matrix_unit(d, j, i))
    rho *= scale

    _validate_density(rho, f"ppt_entangled_state(N={n})")
    return DensityOperator(rho, d, f"ppt-entangled-{d}x{d}")


def isotropic_state(d: int, lam: float, allow_unphysical: bool = False) -> DensityOperator:
    """Isotropic state (lam/d^2) I (x) I + (1 - lam) P+_d.

    lam must lie in [0, 1] unless ``allow_unphysical`` is set (used only for
    plotting the detection curve past the state region).
    """
    if not allow_unphysical and not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    rho = (lam / d ** 2) * np.eye(d * d, dtype=complex) + (1.0 - lam) * witnesses.max_entangled(d)
    if not allow_unphysical:
        _validate_density(rho, f"isotropic_state(d={d}, lambda={lam})")
    return DensityOperator(rho, d, f"isotropic-{lam}")


def isotropic_entanglement_threshold(n: int) -> float:
    """The isotropic state on C^{4N} (x) C^{4N} is entangled iff lam < 4N/(4N+1)."""
    if n < 1:
        raise ValueError("N must be a positive integer")
    return 4.0 * n / (4.0 * n + 1.0)
