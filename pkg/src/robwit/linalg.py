"""Dense complex linear algebra backbone.

All operators are plain ``numpy`` arrays of ``complex128`` in row-major
layout.  The largest object anywhere in the package is 144 x 144, so
everything is dense and every eigenproblem goes through LAPACK's Hermitian
solver.  Composite-space indices follow the convention that ``|k> (x) |a>``
sits at row ``k * d + a`` (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Tolerance ladder used throughout: exact construction identities at 1e-12,
# eigenvalue assertions at 1e-9, positivity of min eigenvalues at -1e-10.
CONSTRUCTION_TOL = 1e-12
EIGENVALUE_TOL = 1e-9
POSITIVITY_TOL = 1e-10


def as_complex(m) -> np.ndarray:
    return np.asarray(m, dtype=complex)


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    """d x d matrix with a single 1 at (i, j), 0-based."""
    e = np.zeros((d, d), dtype=complex)
    e[i, j] = 1.0
    return e


def basis_vector(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1.0
    return e


def hermiticity_defect(m: np.ndarray) -> float:
    """max |M - M^dagger| entrywise."""
    m = as_complex(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_complex(a), as_complex(b))


def partial_transpose(m: np.ndarray, d_a: int, d_b: int, subsystem: str = "A") -> np.ndarray:
    """Transpose one tensor factor of an operator on C^dA (x) C^dB.

    The operation is involutive, trace preserving and maps Hermitian
    operators to Hermitian operators.  ``subsystem`` selects which factor
    is transposed ("A" = first, "B" = second).
    """
    m = as_complex(m)
    n = d_a * d_b
    if m.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix for dims ({d_a},{d_b}), got {m.shape}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if subsystem == "A":
        t = t.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return t.reshape(n, n)


def hermitian_eig(m: np.ndarray, tol: float = EIGENVALUE_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted
    ascending and orthonormal eigenvector columns, so that
    ``M @ V = V @ diag(w)`` up to ``tol * ||M||_max``.  Raises if the input
    fails the Hermiticity check ``max|M - M^dagger| <= tol``.
    """
    m = as_complex(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: max|M - M^dagger| = {defect:.3e} > {tol:.1e}")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return w, v


def min_eigenvalue(m: np.ndarray, tol: float = EIGENVALUE_TOL) -> float:
    return float(hermitian_eig(m, tol)[0][0])


@dataclass(frozen=True)
class BlockView:
    """2 x 2 block decomposition of a 2K x 2K matrix.

    Reassembling the four K x K blocks reproduces the parent exactly.
    """

    k: int
    x11: np.ndarray
    x12: np.ndarray
    x21: np.ndarray
    x22: np.ndarray


def blocks(x: np.ndarray, k: int | None = None) -> BlockView:
    """Split a 2K x 2K matrix into its four K x K blocks."""
    x = as_complex(x)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    if x.shape[0] % 2 != 0:
        raise ValueError(f"block view needs an even dimension, got {x.shape[0]}")
    half = x.shape[0] // 2
    if k is None:
        k = half
    elif k != half:
        raise ValueError(f"K={k} inconsistent with a {x.shape[0]}x{x.shape[0]} matrix")
    return BlockView(k, x[:k, :k].copy(), x[:k, k:].copy(), x[k:, :k].copy(), x[k:, k:].copy())


def assemble(view: BlockView) -> np.ndarray:
    """Inverse of :func:`blocks`."""
    return np.block([[view.x11, view.x12], [view.x21, view.x22]])


def numerical_rank(vectors, tol: float = EIGENVALUE_TOL) -> int:
    """Rank of the span of a family of vectors.

    Computed from the eigenvalues of the Gram matrix: singular values below
    ``tol`` times the largest singular value count as zero.
    """
    vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    if not vecs:
        raise ValueError("numerical_rank needs at least one vector")
    dim = vecs[0].size
    for v in vecs:
        if v.size != dim:
            raise ValueError("all vectors must have the same dimension")
    a = np.array(vecs).T  # columns are the vectors
    gram = a.conj().T @ a
    eig = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    largest = float(eig[-1])
    if largest <= 0.0:
        return 0
    # Squared cutoff (tol * sigma_max)^2, floored at the eigensolver's own
    # resolution: Gram eigenvalues that should vanish come back at the scale
    # of machine epsilon times the largest one.
    cutoff = largest * max(tol * tol, 8 * len(vecs) * np.finfo(float).eps)
    return int(np.sum(eig > cutoff))
