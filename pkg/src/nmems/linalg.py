"""Dense complex linear algebra for small matrices (everything here is <= 8x8).

Matrices are plain numpy arrays of complex128; functions never mutate their
inputs and always return fresh arrays.  The eigensolver is a cyclic Jacobi
iteration working directly on the complex Hermitian matrix — at these
dimensions it is simple, unconditionally stable, and keeps the whole numeric
core free of LAPACK behaviour differences.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericalError

HERMITICITY_TOL = 1e-10
# Jacobi iteration: rotate until every off-diagonal magnitude is below the
# threshold; the sweep cap turns a (never observed) stall into a hard error.
JACOBI_OFFDIAG_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
# Eigenvalues in [-1e-10, 0) count as roundoff zeros; anything lower is a
# genuinely indefinite matrix.
EIGENVALUE_FLOOR = -1e-10


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InputError(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError("matrix entries must be finite")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    return m


def multiply(a, b) -> np.ndarray:
    """Matrix product a @ b with an explicit dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise InputError(
            f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}"
        )
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is a[i, j] * b."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T.copy()


def trace(a) -> complex:
    """Sum of diagonal entries of a square matrix."""
    return complex(np.trace(as_square(a)))


def is_hermitian(a, tol: float = HERMITICITY_TOL) -> bool:
    m = as_square(a)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


@dataclass(frozen=True)
class Spectrum:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and sorted descending; column k of
    ``eigenvectors`` is the (unit-norm) eigenvector paired with
    ``eigenvalues[k]``, so V diag(w) V^dagger reconstructs the input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _rotate(w: list, v: list, p: int, q: int, n: int) -> None:
    """Zero w[p][q] (and w[q][p]) with a unitary plane rotation, in place.

    ``w`` and ``v`` are nested lists of Python complex; scalar arithmetic
    beats numpy by a wide margin at these dimensions.
    """
    apq = w[p][q]
    r = abs(apq)
    if r <= JACOBI_OFFDIAG_TOL:
        return
    phase = apq / r
    cphase = phase.conjugate()
    theta = 0.5 * math.atan2(2.0 * r, w[p][p].real - w[q][q].real)
    c = math.cos(theta)
    s = math.sin(theta)
    s_ph = s * phase
    s_cph = s * cphase

    for k in range(n):
        row = w[k]
        wp = row[p]
        wq = row[q]
        row[p] = c * wp + s_cph * wq
        row[q] = -s_ph * wp + c * wq
    rp = w[p]
    rq = w[q]
    for k in range(n):
        wp = rp[k]
        wq = rq[k]
        rp[k] = c * wp + s_ph * wq
        rq[k] = -s_cph * wp + c * wq
    # the rotation annihilates (p, q) exactly; drop the residual dust
    rp[q] = 0.0
    rq[p] = 0.0
    rp[p] = complex(rp[p].real)
    rq[q] = complex(rq[q].real)

    for k in range(n):
        row = v[k]
        vp = row[p]
        vq = row[q]
        row[p] = c * vp + s_cph * vq
        row[q] = -s_ph * vp + c * vq


def hermitian_eigen(a) -> Spectrum:
    """Full spectral decomposition of a Hermitian matrix via cyclic Jacobi.

    Rotations run in row-cyclic order until all off-diagonal magnitudes fall
    below 1e-12.  Raises InputError for non-Hermitian input (tolerance 1e-10)
    and NumericalError if 100 sweeps do not converge.
    """
    m = as_square(a)
    if not is_hermitian(m):
        raise InputError("matrix is not Hermitian within 1e-10")
    n = m.shape[0]
    sym = (m + m.conj().T) / 2.0
    w = [[complex(sym[i, j]) for j in range(n)] for i in range(n)]
    v = [[1.0 + 0.0j if i == j else 0.0j for j in range(n)] for i in range(n)]
    if n > 1:
        for _ in range(JACOBI_MAX_SWEEPS):
            off = max(
                abs(w[p][q]) for p in range(n - 1) for q in range(p + 1, n)
            )
            if off < JACOBI_OFFDIAG_TOL:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    _rotate(w, v, p, q, n)
        else:
            raise NumericalError(
                f"Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )
    eigvals = np.array([w[k][k].real for k in range(n)])
    vectors = np.array(v, dtype=complex)
    order = np.argsort(-eigvals, kind="stable")
    return Spectrum(eigenvalues=eigvals[order], eigenvectors=vectors[:, order].copy())


def psd_sqrt(a) -> np.ndarray:
    """Hermitian square root S of a PSD matrix, S @ S == a.

    Eigenvalues in [-1e-10, 0) are clamped to zero; anything below the floor
    rejects the input as not positive semidefinite.
    """
    spec = hermitian_eigen(a)
    if float(spec.eigenvalues.min()) < EIGENVALUE_FLOOR:
        raise InputError(
            f"matrix has eigenvalue {spec.eigenvalues.min():.3e} below the PSD floor"
        )
    vals = np.sqrt(np.clip(spec.eigenvalues, 0.0, None))
    root = (spec.eigenvectors * vals) @ spec.eigenvectors.conj().T
    return (root + root.conj().T) / 2.0


def partial_trace(a, dims, keep) -> np.ndarray:
    """Trace out subsystems of a square matrix on a tensor-product space.

    ``dims`` lists the subsystem dimensions (their product must equal the
    matrix dimension) and ``keep`` selects which subsystems survive, by
    index.  Kept subsystems stay in their original order.
    """
    m = as_square(a)
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise InputError(f"invalid subsystem dimensions {dims}")
    if math.prod(dims) != m.shape[0]:
        raise InputError(
            f"product of dims {dims} does not match matrix dimension {m.shape[0]}"
        )
    if isinstance(keep, int):
        keep = (keep,)
    keep = tuple(sorted({int(k) for k in keep}))
    if not keep:
        raise InputError("keep must name at least one subsystem")
    if any(k < 0 or k >= len(dims) for k in keep):
        raise InputError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    tensor = m.reshape(dims + dims)
    letters = iter(string.ascii_lowercase)
    row, col, out_row, out_col = [], [], [], []
    for k in range(len(dims)):
        if k in keep:
            r, c = next(letters), next(letters)
            row.append(r)
            col.append(c)
            out_row.append(r)
            out_col.append(c)
        else:
            s = next(letters)
            row.append(s)
            col.append(s)
    subscript = "".join(row + col) + "->" + "".join(out_row + out_col)
    reduced = np.einsum(subscript, tensor)
    d_keep = math.prod(dims[k] for k in keep)
    return reduced.reshape(d_keep, d_keep)
