"""Dense linear-algebra helpers shared across the package.

Two conventions are fixed here and relied on everywhere else:

* ``unfold`` stacks matrix columns, ``unfold(A)[d*j + k] == A[k, j]``.  With
  this convention the projector onto ``unfold(A)`` equals
  ``sum_jk |j><k| (x) A |j><k| A^dag``, which is what ties operator matrices
  to blocks of the Choi matrix.
* Eigenvectors are phase-fixed so their largest-magnitude component is real
  and nonnegative, which makes operators extracted from eigensystems
  reproducible run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigenSystem",
    "JacobiConvergenceError",
    "dagger",
    "eig_hermitian",
    "eig_rank2_pair",
    "fold",
    "is_hermitian",
    "kron",
    "max_abs",
    "partial_trace",
    "partial_transpose",
    "unfold",
]


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def max_abs(a) -> float:
    """Largest entry magnitude (max-entry norm)."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a, tol: float = 1e-12) -> bool:
    """True if ``a`` is square and equals its conjugate transpose within ``tol``."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return max_abs(a - dagger(a)) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product, composite row index (i, j) -> i*rows(b) + j."""
    return np.kron(np.asarray(a), np.asarray(b))


def unfold(a) -> np.ndarray:
    """Column-stack a square matrix into a vector: unfold(a)[d*j + k] == a[k, j]."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("unfold expects a square matrix")
    return a.T.reshape(-1)


def fold(v) -> np.ndarray:
    """Inverse of unfold: a length-d^2 vector back into a d x d matrix."""
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError("fold expects a vector")
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise ValueError("fold expects a vector of perfect-square length")
    return v.reshape(d, d).T.copy()


@dataclass(frozen=True)
class EigenSystem:
    """Real eigenvalues in descending order with matching unit eigenvectors.

    ``vectors[:, i]`` belongs to ``values[i]``.  May hold fewer pairs than the
    ambient dimension when the remaining eigenvalues are known to vanish.
    """

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Sum of values[i] * v_i v_i^dag over the stored pairs."""
        return (self.vectors * self.values) @ dagger(self.vectors)


class JacobiConvergenceError(RuntimeError):
    """Cyclic Jacobi iteration failed to reach the target off-diagonal norm."""


def _offdiag_norm(a: np.ndarray) -> float:
    # summed directly over off-diagonal entries; total minus diagonal would
    # cancel catastrophically once the off-diagonal part is tiny
    off = np.abs(a) ** 2
    np.fill_diagonal(off, 0.0)
    return math.sqrt(float(np.sum(off)))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-magnitude component is real nonnegative."""
    i = int(np.argmax(np.abs(v)))
    a = v[i]
    if abs(a) > 0.0:
        v = v * (np.conj(a) / abs(a))
        v[i] = abs(a)
    return v


def eig_hermitian(h, tol: float = 1e-13, max_sweeps: int = 100) -> EigenSystem:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation zeroes one off-diagonal entry via a phased 2x2 rotation;
    sweeps repeat until the off-diagonal Frobenius norm drops below ``tol``.
    Input must be Hermitian within ``tol``.  Raises JacobiConvergenceError if
    ``max_sweeps`` full sweeps do not reach the target.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eig_hermitian expects a square matrix")
    if max_abs(a - dagger(a)) > tol:
        raise ValueError("matrix is not Hermitian within tol")
    n = a.shape[0]
    a = (a + dagger(a)) / 2.0
    vecs = np.eye(n, dtype=complex)

    for sweep in range(max_sweeps + 1):
        if _offdiag_norm(a) < tol:
            break
        if sweep == max_sweeps:
            raise JacobiConvergenceError(
                f"off-diagonal norm {_offdiag_norm(a):.3e} after {max_sweeps} sweeps (target {tol:.1e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                if abs(b) == 0.0:
                    continue
                # Phase the pivot real, then rotate as in the real symmetric case.
                phase = b / abs(b)
                theta = 0.5 * math.atan2(2.0 * abs(b), (a[p, p] - a[q, q]).real)
                cs = math.cos(theta)
                sn = math.sin(theta)
                u00, u01 = cs, -sn
                u10, u11 = sn * np.conj(phase), cs * np.conj(phase)
                # columns p, q of a
                cp = a[:, p] * u00 + a[:, q] * u10
                cq = a[:, p] * u01 + a[:, q] * u11
                a[:, p] = cp
                a[:, q] = cq
                # rows p, q of a
                rp = np.conj(u00) * a[p, :] + np.conj(u10) * a[q, :]
                rq = np.conj(u01) * a[p, :] + np.conj(u11) * a[q, :]
                a[p, :] = rp
                a[q, :] = rq
                a[p, q] = np.conj(a[q, p])  # keep the zeroed pair exactly Hermitian
                # accumulate the rotation
                vp = vecs[:, p] * u00 + vecs[:, q] * u10
                vq = vecs[:, p] * u01 + vecs[:, q] * u11
                vecs[:, p] = vp
                vecs[:, q] = vq

    values = np.diagonal(a).real.copy()
    order = np.argsort(-values)
    values = values[order]
    vecs = vecs[:, order]
    for i in range(n):
        vecs[:, i] = _fix_phase(vecs[:, i])
    sys = EigenSystem(values, vecs)
    residual = max_abs(sys.reconstruct() - np.asarray(h, dtype=complex))
    if residual > 10 * max(tol, 1e-15) * max(1.0, max_abs(h)):
        raise JacobiConvergenceError(f"reconstruction residual {residual:.3e} exceeds budget")
    return sys


def eig_rank2_pair(z: complex, r: int, c: int, dim: int) -> EigenSystem:
    """Closed-form eigensystem of z |r><c| + conj(z) |c><r|.

    The two nonzero eigenvalues are +|z| and -|z| with eigenvectors
    (|r> ± e^{-i phi} |c>)/sqrt(2) where z = |z| e^{i phi}.  Only those two
    pairs are returned.
    """
    if not (0 <= r < dim and 0 <= c < dim):
        raise ValueError("indices out of range")
    if r == c:
        raise ValueError("indices must be distinct")
    z = complex(z)
    if z == 0:
        raise ValueError("coefficient must be nonzero")
    phase = np.conj(z) / abs(z)
    root2 = math.sqrt(2.0)
    vp = np.zeros(dim, dtype=complex)
    vm = np.zeros(dim, dtype=complex)
    vp[r] = vm[r] = 1.0 / root2
    vp[c] = phase / root2
    vm[c] = -phase / root2
    values = np.array([abs(z), -abs(z)])
    return EigenSystem(values, np.column_stack([vp, vm]))


def partial_transpose(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on A (x) B."""
    m = np.asarray(m, dtype=complex)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ValueError(f"expected a {n} x {n} matrix")
    return m.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1).reshape(n, n)


def partial_trace(m, dim_a: int, dim_b: int, keep: str = "first") -> np.ndarray:
    """Trace out one tensor factor of an operator on A (x) B."""
    m = np.asarray(m, dtype=complex)
    n = dim_a * dim_b
    if m.shape != (n, n):
        raise ValueError(f"expected a {n} x {n} matrix")
    m = m.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "first":
        return np.einsum("ibjb->ij", m)
    if keep == "second":
        return np.einsum("aiaj->ij", m)
    raise ValueError("keep must be 'first' or 'second'")
