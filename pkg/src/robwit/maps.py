"""Positive-map families on matrix algebras.

Every map here acts on square complex matrices and is described by an
immutable :class:`MapDescriptor`; :func:`apply_map` is the single
interpreter.  The families, with X split into half-size blocks
``[[X11, X12], [X21, X22]]``:

* ``Reduction`` (dim K):      X -> I Tr X - X
* ``MapI`` (dim 2K):          X -> (1/K) [[X22, -X12], [-X21, X11]]
* ``MapII`` (dim 2K):         X -> (1/K) [[I Tr X22, -X12], [-X21, I Tr X11]]
* ``Robertson4`` (dim 4):     MapII plus the reduction of the opposite
                              off-diagonal block inside each off-diagonal term
* ``Psi2K`` (dim 2K):         the same scheme in dimension 2K
* ``PhiU4N`` (dim 4N):        off-diagonal terms X12 + U X21^T U^dagger with an
                              antisymmetric 2N x 2N contraction U
* ``BreuerHall`` (dim 2K):    (I Tr X - X - U X^T U^dagger) / (2K - 2)
* ``ConjugatedPhiU`` (dim 4N): V1^dagger PhiU(V2 X V2^dagger) V1

``MapII``, ``Robertson4``, ``Psi2K``, ``PhiU4N`` and the conjugated family
are unital; ``PhiU4N`` is additionally trace preserving and self-dual.
Pauli convention: sigma_y = [[0, -i], [i, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import CONSTRUCTION_TOL, as_complex, blocks

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)

FAMILIES = (
    "Reduction",
    "MapI",
    "MapII",
    "Robertson4",
    "Psi2K",
    "PhiU4N",
    "BreuerHall",
    "ConjugatedPhiU",
)


@dataclass(frozen=True)
class MapDescriptor:
    """Tagged description of one positive-map family plus its parameters.

    ``size`` is K for Reduction/MapI/MapII/Psi2K/BreuerHall and N for
    PhiU4N/ConjugatedPhiU.  Parameter matrices are validated by the
    constructor functions below and must not be mutated afterwards.
    """

    family: str
    size: int
    u: np.ndarray | None = None
    v1: np.ndarray | None = None
    v2: np.ndarray | None = None


def antisymmetry_defect(u: np.ndarray) -> float:
    u = as_complex(u)
    return float(np.max(np.abs(u + u.T))) if u.size else 0.0


def is_antisymmetric_contraction(u: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    """U^T = -U and largest eigenvalue of U U^dagger at most 1 (within tol)."""
    u = as_complex(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    if antisymmetry_defect(u) > tol:
        return False
    gram = u @ u.conj().T
    top = float(np.linalg.eigvalsh((gram + gram.conj().T) / 2)[-1]) if u.size else 0.0
    return top <= 1.0 + tol


def is_antisymmetric_unitary(u: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    u = as_complex(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] % 2 != 0:
        return False
    if antisymmetry_defect(u) > tol:
        return False
    return float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])))) <= tol


def _require_unitary(v: np.ndarray, name: str, tol: float = CONSTRUCTION_TOL) -> np.ndarray:
    v = as_complex(v)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {v.shape}")
    defect = float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[0]))))
    if defect > tol:
        raise ValueError(f"{name} is not unitary: max|V^dagger V - I| = {defect:.3e}")
    return v


# --- constructors -----------------------------------------------------------


def reduction_map(k: int) -> MapDescriptor:
    """Reduction map X -> I_K Tr X - X on K x K matrices."""
    if k < 1:
        raise ValueError("K must be a positive integer")
    return MapDescriptor("Reduction", k)


def map_i(k: int) -> MapDescriptor:
    """First block generalization of the qubit reduction map (decomposable)."""
    if k < 1:
        raise ValueError("K must be a positive integer")
    return MapDescriptor("MapI", k)


def map_ii(k: int) -> MapDescriptor:
    """Second block generalization (decomposable, unital)."""
    if k < 1:
        raise ValueError("K must be a positive integer")
    return MapDescriptor("MapII", k)


def robertson4() -> MapDescriptor:
    """The original nondecomposable positive map on 4 x 4 matrices."""
    return MapDescriptor("Robertson4", 2)


def psi_2k(k: int) -> MapDescriptor:
    """Robertson-style map on 2K x 2K matrices built from the reduction map R_K."""
    if k < 1:
        raise ValueError("K must be a positive integer")
    return MapDescriptor("Psi2K", k)


def phi_u(n: int, u: np.ndarray) -> MapDescriptor:
    """Generalized Robertson map on 4N x 4N matrices.

    ``u`` must be a 2N x 2N antisymmetric contraction (U U^dagger <= I);
    the closed-form certificates elsewhere in the package additionally
    require U to be strictly unitary.
    """
    if n < 1:
        raise ValueError("N must be a positive integer")
    u = as_complex(u)
    if u.shape != (2 * n, 2 * n):
        raise ValueError(f"U must be {2 * n}x{2 * n} for N={n}, got {u.shape}")
    if not is_antisymmetric_contraction(u):
        raise ValueError("U must be antisymmetric with U U^dagger <= I")
    return MapDescriptor("PhiU4N", n, u=u)


def breuer_hall(u: np.ndarray) -> MapDescriptor:
    """Breuer-Hall map X -> (I Tr X - X - U X^T U^dagger) / (2K - 2).

    The 1/(2K-2) factor makes the map unital, which is the normalization
    under which it coincides with the 4 x 4 Robertson map at U = sigma_y
    (+) sigma_y.  Requires an antisymmetric unitary U of dimension 2K >= 4.
    """
    u = as_complex(u)
    if not is_antisymmetric_unitary(u):
        raise ValueError("U must be an antisymmetric unitary matrix of even dimension")
    if u.shape[0] < 4:
        raise ValueError("Breuer-Hall maps need dimension 2K >= 4")
    return MapDescriptor("BreuerHall", u.shape[0] // 2, u=u)


def conjugated_phi(n: int, u: np.ndarray, v1: np.ndarray, v2: np.ndarray) -> MapDescriptor:
    """Unitary conjugation X -> V1^dagger PhiU(V2 X V2^dagger) V1 of the core family."""
    base = phi_u(n, u)
    v1 = _require_unitary(v1, "V1")
    v2 = _require_unitary(v2, "V2")
    d = 4 * n
    if v1.shape != (d, d) or v2.shape != (d, d):
        raise ValueError(f"V1 and V2 must be {d}x{d} for N={n}")
    return MapDescriptor("ConjugatedPhiU", n, u=base.u, v1=v1, v2=v2)


def base_descriptor(m: MapDescriptor) -> MapDescriptor:
    """Underlying PhiU4N descriptor of a (possibly conjugated) core-family map."""
    if m.family == "PhiU4N":
        return m
    if m.family == "ConjugatedPhiU":
        return MapDescriptor("PhiU4N", m.size, u=m.u)
    raise ValueError(f"{m.family} has no PhiU4N base")


# --- parameter generators ---------------------------------------------------


def canonical_u0(n: int) -> np.ndarray:
    """Direct sum of N copies of sigma_y: the canonical antisymmetric unitary."""
    if n < 1:
        raise ValueError("N must be a positive integer")
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for j in range(n):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = SIGMA_Y
    return out


def conjugate_u0(v: np.ndarray) -> np.ndarray:
    """V U0 V^T, antisymmetric and unitary for any unitary V (V^T Vbar = I)."""
    v = _require_unitary(v, "V")
    if v.shape[0] % 2 != 0:
        raise ValueError("V must have even dimension")
    return v @ canonical_u0(v.shape[0] // 2) @ v.T


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-style random unitary from a QR-orthogonalized complex Gaussian."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_antisymmetric_unitary(n: int, seed: int, mode: str = "real-orthogonal") -> np.ndarray:
    """Seeded random antisymmetric unitary 2N x 2N, as V U0 V^T.

    ``mode`` picks V: "real-orthogonal" (purely imaginary output, the
    Hermitian case) or "complex-unitary" (fully complex output).
    """
    if n < 1:
        raise ValueError("N must be a positive integer")
    if mode == "real-orthogonal":
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((2 * n, 2 * n))
        q, r = np.linalg.qr(g)
        v = as_complex(q * np.sign(np.diagonal(r)))
    elif mode == "complex-unitary":
        v = random_unitary(2 * n, seed)
    else:
        raise ValueError(f"mode must be 'real-orthogonal' or 'complex-unitary', got {mode!r}")
    return conjugate_u0(v)


# --- the interpreter --------------------------------------------------------


def input_dim(m: MapDescriptor) -> int:
    """Dimension of the matrices the descriptor acts on."""
    if m.family == "Reduction":
        return m.size
    if m.family in ("MapI", "MapII", "Psi2K", "BreuerHall"):
        return 2 * m.size
    if m.family == "Robertson4":
        return 4
    if m.family in ("PhiU4N", "ConjugatedPhiU"):
        return 4 * m.size
    raise ValueError(f"unknown family {m.family!r}")


def _reduction(x: np.ndarray) -> np.ndarray:
    return np.eye(x.shape[0], dtype=complex) * np.trace(x) - x


def _robertson_scheme(x: np.ndarray, off12, off21) -> np.ndarray:
    """Shared block scheme: traces on the diagonal, negated terms off it."""
    v = blocks(x)
    eye = np.eye(v.k, dtype=complex)
    return np.block(
        [
            [eye * np.trace(v.x22), -off12(v)],
            [-off21(v), eye * np.trace(v.x11)],
        ]
    ) / v.k


def apply_map(m: MapDescriptor, x: np.ndarray) -> np.ndarray:
    """Apply the described map to a square matrix of the matching dimension.

    Linear in X and Hermiticity preserving for every family.
    """
    x = as_complex(x)
    d = input_dim(m)
    if x.shape != (d, d):
        raise ValueError(f"{m.family} with size {m.size} acts on {d}x{d} matrices, got {x.shape}")

    if m.family == "Reduction":
        return _reduction(x)

    if m.family == "MapI":
        v = blocks(x)
        return np.block([[v.x22, -v.x12], [-v.x21, v.x11]]) / v.k

    if m.family == "MapII":
        return _robertson_scheme(x, lambda v: v.x12, lambda v: v.x21)

    if m.family in ("Robertson4", "Psi2K"):
        return _robertson_scheme(
            x,
            lambda v: v.x12 + _reduction(v.x21),
            lambda v: v.x21 + _reduction(v.x12),
        )

    if m.family == "PhiU4N":
        u = m.u
        return _robertson_scheme(
            x,
            lambda v: v.x12 + u @ v.x21.T @ u.conj().T,
            lambda v: v.x21 + u @ v.x12.T @ u.conj().T,
        )

    if m.family == "BreuerHall":
        dim = 2 * m.size
        return (_reduction(x) - m.u @ x.T @ m.u.conj().T) / (dim - 2)

    if m.family == "ConjugatedPhiU":
        inner = apply_map(base_descriptor(m), m.v2 @ x @ m.v2.conj().T)
        return m.v1.conj().T @ inner @ m.v1

    raise ValueError(f"unknown family {m.family!r}")
