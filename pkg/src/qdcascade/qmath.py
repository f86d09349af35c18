"""Dense complex linear algebra for small tensor-product Hilbert spaces.

States are 1-D complex numpy arrays, operators and density matrices 2-D
complex arrays. Subsystem structure is passed explicitly as a sequence of
per-factor dimensions; index 0 is the leftmost (most significant) tensor
factor, so the basis index of a product state is the big-endian mixed-radix
encoding of the per-factor indices. All entropies are in bits.

The Hermitian eigensolver is a self-contained cyclic Jacobi iteration; at
the dimensions handled here (<= 64) it is fast and keeps the numerical path
independent of any external eigenpackage.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_ATOL = 1e-10
DENSITY_ATOL = 1e-12
EIG_CLAMP_FLOOR = -1e-8
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def _as_square(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(a) -> float:
    """Largest absolute deviation of a matrix from its conjugate transpose."""
    m = _as_square(a)
    return float(np.max(np.abs(m - m.conj().T)))


def require_density_matrix(rho, atol: float = DENSITY_ATOL) -> np.ndarray:
    """Validate Hermiticity and unit trace; positivity is enforced where the
    spectrum is actually computed."""
    m = _as_square(rho)
    defect = hermiticity_defect(m)
    if defect > atol:
        raise ValueError(f"density matrix is not Hermitian (defect {defect:.3e})")
    tr = complex(np.trace(m))
    if abs(tr - 1.0) > atol:
        raise ValueError(f"density matrix trace is {tr:.15g}, expected 1")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def density_from_state(psi) -> np.ndarray:
    """Rank-1 projector |psi><psi| of a (normalized) state vector."""
    v = np.asarray(psi, dtype=np.complex128).reshape(-1)
    return np.outer(v, v.conj())


def _check_shape(dims: Sequence[int], ambient: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    if math.prod(dims) != ambient:
        raise ValueError(f"subsystem dimensions {dims} do not multiply to the ambient dimension {ambient}")
    return dims


def _check_subset(indices: Iterable[int], nsub: int, what: str) -> tuple[int, ...]:
    idx = tuple(int(i) for i in indices)
    for i in idx:
        if i < 0 or i >= nsub:
            raise ValueError(f"{what} index {i} out of range for {nsub} subsystems")
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate {what} index in {idx}")
    return tuple(sorted(idx))


def partial_trace(rho, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep``.

    Kept factors stay in their original order. Tracing out everything yields
    the 1x1 matrix [[tr(rho)]].
    """
    m = _as_square(rho)
    dims = _check_shape(dims, m.shape[0])
    keep = _check_subset(keep, len(dims), "keep")
    tensor = m.reshape(dims + dims)
    remaining = list(dims)
    for ax in sorted(set(range(len(dims))) - set(keep), reverse=True):
        tensor = np.trace(tensor, axis1=ax, axis2=ax + len(remaining))
        del remaining[ax]
    d = math.prod(remaining) if remaining else 1
    return tensor.reshape(d, d)


def partial_transpose(rho, dims: Sequence[int], subset: Iterable[int]) -> np.ndarray:
    """Transpose the listed tensor factors, leaving the rest untouched."""
    m = _as_square(rho)
    dims = _check_shape(dims, m.shape[0])
    subset = _check_subset(subset, len(dims), "transpose")
    n = len(dims)
    axes = list(range(2 * n))
    for i in subset:
        axes[i], axes[i + n] = axes[i + n], axes[i]
    return m.reshape(dims + dims).transpose(axes).reshape(m.shape)


def _off_diagonal_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def eig_hermitian(h) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi.

    Sweeps complex Givens rotations over all off-diagonal pivots until the
    off-diagonal Frobenius norm drops below ``JACOBI_OFF_TOL``.
    """
    a = _as_square(h)
    defect = hermiticity_defect(a)
    if defect > HERMITIAN_ATOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real])
    a = (a + a.conj().T) / 2.0
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(a) < JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                # rotation angle zeroing the (p, q) pivot of the 2x2 block
                theta = (a[p, p].real - a[q, q].real) / (2.0 * mag)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p + s * phase * row_q
                a[q, :] = -s * np.conj(phase) * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p + s * np.conj(phase) * col_q
                a[:, q] = -s * phase * col_p + c * col_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise ArithmeticError(
            f"Jacobi sweep did not converge in {JACOBI_MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_diagonal_norm(a):.3e})"
        )
    return np.sort(np.diag(a).real)


def _clamped_spectrum(rho) -> np.ndarray:
    evals = eig_hermitian(rho)
    low = float(evals[0])
    if low < EIG_CLAMP_FLOOR:
        raise ValueError(f"eigenvalue {low:.3e} below {EIG_CLAMP_FLOOR:.0e}; not a density matrix")
    return np.clip(evals, 0.0, None)


def vn_entropy(rho) -> float:
    """Von Neumann entropy in bits, -sum(lambda log2 lambda), 0 log 0 := 0.

    Small negative eigenvalues (round-off from partial traces) are clamped
    to zero; anything below -1e-8 is rejected.
    """
    m = require_density_matrix(rho)
    evals = _clamped_spectrum(m)
    pos = evals[evals > 0.0]
    return max(0.0, float(-np.sum(pos * np.log2(pos))))


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eig_hermitian(a))))


def binary_entropy(p: float) -> float:
    """Shannon entropy of a (p, 1-p) distribution, in bits."""
    return shannon_entropy((p, 1.0 - p))


def shannon_entropy(probs: Iterable[float]) -> float:
    """Shannon entropy of a probability vector, in bits, 0 log 0 := 0."""
    out = 0.0
    for p in probs:
        if p < -1e-12 or p > 1.0 + 1e-12:
            raise ValueError(f"probability {p} outside [0, 1]")
        if p > 0.0:
            out -= p * math.log2(p)
    return max(0.0, out)
