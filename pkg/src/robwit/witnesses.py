"""Choi matrices of positive maps and their witness-level identities.

The Choi matrix of a map F on d x d matrices is taken with the 1/d factor
of the maximally entangled state, W = (1/d) sum_kl |k><l| (x) F(|k><l|), so
that Tr W = 1 for the trace-preserving families.  For the PhiU4N family
with unitary U the spectrum of W is known in closed form and carries a
single negative eigenvalue -1/(4N).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps
from .linalg import CONSTRUCTION_TOL, as_complex, hermitian_eig, kron, matrix_unit, partial_transpose
from .report import CertReport, rule_report


@dataclass(frozen=True)
class Witness:
    """Choi matrix of a map plus its provenance."""

    matrix: np.ndarray
    d: int
    source: maps.MapDescriptor


def max_entangled(d: int) -> np.ndarray:
    """Maximally entangled state (1/d) sum_kl |k><l| (x) |k><l| on C^d (x) C^d."""
    if d < 2:
        raise ValueError("d must be at least 2")
    v = np.zeros(d * d, dtype=complex)
    for k in range(d):
        v[k * d + k] = 1.0
    return np.outer(v, v.conj()) / d


def choi(m: maps.MapDescriptor) -> Witness:
    """Choi matrix of a map descriptor, W = (1 (x) F) P+_d."""
    d = maps.input_dim(m)
    w = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            w[k * d : (k + 1) * d, l * d : (l + 1) * d] = maps.apply_map(m, matrix_unit(d, k, l))
    return Witness(w / d, d, m)


def witness_block(w: Witness, i: int, j: int) -> np.ndarray:
    """(i, j) block of W in the first tensor factor, 0-based: <i| (x) 1 W |j> (x) 1."""
    d = w.d
    return w.matrix[i * d : (i + 1) * d, j * d : (j + 1) * d]


def expected_spectrum(n: int) -> list[tuple[float, int]]:
    """Closed-form Choi spectrum of the PhiU4N family with unitary U.

    Multiset {-1/(4N) x1, 0 x(12N^2-2), 1/(4N^2) x4N^2, 1/(4N) x1};
    multiplicities total (4N)^2 and the weighted sum is 1.
    """
    if n < 1:
        raise ValueError("N must be a positive integer")
    return [
        (-1.0 / (4 * n), 1),
        (0.0, 12 * n * n - 2),
        (1.0 / (4 * n * n), 4 * n * n),
        (1.0 / (4 * n), 1),
    ]


def expected_spectrum_sorted(n: int) -> np.ndarray:
    values: list[float] = []
    for value, mult in expected_spectrum(n):
        values.extend([value] * mult)
    return np.sort(np.array(values))


def verify_spectrum(w: Witness, n: int, tol: float = 1e-9) -> CertReport:
    """Match the computed Choi eigenvalues against the closed form.

    Sorted computed values are compared pairwise against the sorted expected
    multiset; the report carries the largest deviation.
    """
    expected = expected_spectrum_sorted(n)
    if w.matrix.shape[0] != expected.size:
        raise ValueError(f"witness dimension {w.matrix.shape[0]} does not match N={n}")
    computed, _ = hermitian_eig(w.matrix, tol=CONSTRUCTION_TOL)
    deviation = float(np.max(np.abs(computed - expected)))
    return rule_report(
        "spectrum",
        deviation,
        tol,
        deviation <= tol,
        f"max per-eigenvalue deviation from the closed-form multiset at N={n}; pass iff <= tol",
    )


def gamma_unitary(u: np.ndarray) -> np.ndarray:
    """Block-diagonal unitary V with (W)^Gamma = (V (x) 1) W (V (x) 1)^dagger.

    Gamma is the partial transpose on the first factor and V = U (+) U.
    For purely imaginary U (the real-orthogonal-generated case, where U is
    Hermitian) V coincides with U^dagger (+) U.
    """
    if not maps.is_antisymmetric_unitary(u):
        raise ValueError("U must be an antisymmetric unitary matrix")
    z = np.zeros_like(as_complex(u))
    return np.block([[as_complex(u), z], [z, as_complex(u)]])


def gamma_conjugation_defect(w: Witness) -> float:
    """max |(W)^Gamma - (G (x) 1) W (G (x) 1)^dagger| for the witness's own G.

    G is gamma_unitary(U) for the plain family and V2^dagger (U (+) U) Vbar2
    for a conjugated witness.
    """
    g = gamma_conjugation_unitary(w.source)
    d = w.d
    lhs = partial_transpose(w.matrix, d, d, "A")
    big = kron(g, np.eye(d))
    return float(np.max(np.abs(lhs - big @ w.matrix @ big.conj().T)))


def gamma_conjugation_unitary(m: maps.MapDescriptor) -> np.ndarray:
    """Single-factor unitary implementing the partial transpose of the witness."""
    v = gamma_unitary(m.u)
    if m.family == "PhiU4N":
        return v
    if m.family == "ConjugatedPhiU":
        return m.v2.conj().T @ v @ m.v2.conj()
    raise ValueError(f"no partial-transpose conjugation for family {m.family!r}")


def transform_witness(w: Witness, v1: np.ndarray, v2: np.ndarray) -> Witness:
    """Witness of the conjugated map: (Vbar2^dagger (x) V1^dagger) W (Vbar2 (x) V1)."""
    if w.source.family != "PhiU4N":
        raise ValueError("transform_witness expects a plain PhiU4N witness")
    desc = maps.conjugated_phi(w.source.size, w.source.u, v1, v2)
    s = kron(v2.conj(), v1)
    return Witness(s.conj().T @ w.matrix @ s, w.d, desc)
