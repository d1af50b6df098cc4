"""Scalar correlation measures for two-qubit states.

Concurrence comes in two independent routes: the closed X-state formula
2 max(|c| - sqrt(a e), 0) and the spin-flip spectrum construction, which
serves as its oracle.  Teleportation quality and the CHSH criterion both
derive from the 3x3 correlation matrix of Pauli-pair expectations.  Quantum
discord is the X-state two-branch minimum; a long single-variable closed
form of it for the GHZ/W family ships alongside and is cross-checked
against the matrix route, with per-branch residuals reported instead of
asserted (the two genuinely disagree; see discord_closed_form_residuals).

All entropic quantities use log base 2, with 0 log 0 == 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import InputError, NumericalError
from .states import DensityMatrix, XStateParams, nmems, nmems_ad
from .witnesses import SIGMA_X, SIGMA_Y, SIGMA_Z

logger = logging.getLogger(__name__)

USEFULNESS_MARGIN = 1e-12
CLASSICAL_FIDELITY = 2.0 / 3.0
X_STRUCTURE_TOL = 1e-10

_PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
_PAULI_PAIRS = tuple(
    tuple(linalg.kron(si, sj) for sj in _PAULIS) for si in _PAULIS
)


def _xlog2x(v: float) -> float:
    return v * math.log2(v) if v > 0.0 else 0.0


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), clamping roundoff dust at 0/1."""
    if x < -1e-9 or x > 1.0 + 1e-9:
        raise InputError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return -_xlog2x(x) - _xlog2x(1.0 - x)


def concurrence_x(xp: XStateParams) -> float:
    """Concurrence of a corner-free X state: 2 max(|c| - sqrt(a e), 0)."""
    return 2.0 * max(abs(xp.c) - math.sqrt(xp.a * xp.e), 0.0)


def concurrence_wootters(rho: DensityMatrix) -> float:
    """Concurrence from the spin-flip spectrum.

    With rho_tilde = (sy x sy) rho* (sy x sy), the descending square roots
    l_1 >= ... >= l_4 of the eigenvalues of the Hermitian matrix
    sqrt(rho) rho_tilde sqrt(rho) give max(0, l_1 - l_2 - l_3 - l_4).

    Those square roots equal the singular values of
    K = sqrt(rho) (sy x sy) sqrt(rho)*, and are computed that way, as
    eigenvalues of the Hermitian dilation [[0, K], [K^dagger, 0]]: squaring
    and re-rooting would turn ~1e-17 eigenvalue dust into ~1e-9 errors at
    rank-deficient states.  Defined for unit trace only; sub-normalized
    input is rejected.
    """
    if rho.dim != 4:
        raise InputError("concurrence is defined for two-qubit states")
    if not rho.is_unit():
        raise InputError("spin-flip concurrence requires a unit-trace state")
    yy = linalg.kron(SIGMA_Y, SIGMA_Y)
    # Hermitian square root assembled from the validated spectrum
    spec = rho.spectrum
    root_vals = np.sqrt(np.clip(spec.eigenvalues, 0.0, None))
    root = (spec.eigenvectors * root_vals) @ spec.eigenvectors.conj().T
    k = root @ yy @ root.conj()
    dilation = np.zeros((8, 8), dtype=complex)
    dilation[:4, 4:] = k
    dilation[4:, :4] = k.conj().T
    # spectrum of the dilation is {+s_i, -s_i}; the top half is s descending
    roots = np.clip(linalg.hermitian_eigen(dilation).eigenvalues[:4], 0.0, None)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


@dataclass(frozen=True)
class CorrelationMatrix:
    """3x3 matrix t[i][j] = Re Tr(rho sigma_i x sigma_j), i,j in {x,y,z}."""

    t: np.ndarray


def correlation_matrix(rho: DensityMatrix) -> CorrelationMatrix:
    if rho.dim != 4:
        raise InputError("correlation matrix is defined for two-qubit states")
    t = np.empty((3, 3), dtype=float)
    for i in range(3):
        for j in range(3):
            t[i, j] = linalg.trace(rho.matrix @ _PAULI_PAIRS[i][j]).real
    if float(np.max(np.abs(t))) > 1.0 + 1e-9:
        raise InputError("correlation entries exceed the physical bound of 1")
    t.setflags(write=False)
    return CorrelationMatrix(t=t)


def correlation_singular_values(cm: CorrelationMatrix) -> np.ndarray:
    """Singular values of the correlation matrix, descending."""
    gram = cm.t.T @ cm.t
    vals = np.clip(linalg.hermitian_eigen(gram).eigenvalues, 0.0, None)
    return np.sqrt(vals)


class FidelityResult(NamedTuple):
    fidelity: float
    useful: bool
    n_value: float


def fidelity_from_correlation(cm: CorrelationMatrix) -> FidelityResult:
    """Optimal teleportation fidelity from the correlation matrix.

    N = sum of singular values; the state beats classical teleportation iff
    N > 1, in which case the fidelity is (1 + N/3) / 2; otherwise the
    classical benchmark 2/3 is reported.
    """
    n = float(correlation_singular_values(cm).sum())
    useful = n > 1.0 + USEFULNESS_MARGIN
    fidelity = 0.5 * (1.0 + n / 3.0) if useful else CLASSICAL_FIDELITY
    return FidelityResult(fidelity=fidelity, useful=useful, n_value=n)


def teleportation_fidelity(rho: DensityMatrix) -> FidelityResult:
    """Optimal teleportation fidelity of a unit-trace two-qubit state."""
    if rho.dim != 4:
        raise InputError("teleportation fidelity is defined for two-qubit states")
    if not rho.is_unit():
        raise InputError("teleportation fidelity requires a unit-trace state")
    return fidelity_from_correlation(correlation_matrix(rho))


def fidelity_ad_closed_form(p: float, theta: float) -> float:
    """Closed-form optimal fidelity of the damped family (long radical form).

    Both radicands factor exactly, so the long expression must equal
    1/2 + (1-p)(1-g)/9 + (1-g) sqrt(3 p (p+2)) / 18 with g = sin^2(theta);
    the equality is asserted to 1e-12 on every call.  Note this expression
    does NOT reduce to the undamped correlation-criterion fidelity at
    theta = 0 (it gives 11/18 instead of 7/9 at p = 0); see the headline
    report for the quantified discrepancy.
    """
    p = float(p)
    theta = float(theta)
    if not (0.0 <= p <= 1.0):
        raise InputError(f"p must lie in [0, 1], got {p!r}")
    if not (0.0 <= theta <= math.pi / 2.0):
        raise InputError(f"theta must lie in [0, pi/2], got {theta!r}")
    s2 = math.sin(theta) ** 2
    s4 = s2 * s2
    # fsum keeps the near-total cancellation at gamma -> 1 exact; a naive
    # left-to-right sum leaves ~1e-16 dust that the square root amplifies
    rad1 = math.fsum((
        s4 * p * p, -2.0 * s4 * p, s4,
        -2.0 * s2 * p * p, 4.0 * s2 * p, -2.0 * s2,
        p * p, -2.0 * p, 1.0,
    ))
    rad2 = math.fsum((
        3.0 * s4 * p * p, 6.0 * s4 * p,
        -6.0 * s2 * p * p, -12.0 * s2 * p,
        3.0 * p * p, 6.0 * p,
    ))
    value = 0.5 + math.sqrt(max(rad1, 0.0)) / 9.0 + math.sqrt(max(rad2, 0.0)) / 18.0
    gamma = s2
    compact = (
        0.5
        + (1.0 - p) * (1.0 - gamma) / 9.0
        + (1.0 - gamma) * math.sqrt(3.0 * p * (p + 2.0)) / 18.0
    )
    if abs(value - compact) > 1e-12:
        raise NumericalError(
            f"closed-form fidelity failed its factored cross-check at "
            f"(p={p:g}, theta={theta:g}): {value!r} vs {compact!r}"
        )
    return value


def von_neumann_entropy(rho: DensityMatrix, *, normalize: bool = False) -> float:
    """-sum_i k_i log2 k_i over the eigenvalues, with 0 log 0 == 0.

    Sub-normalized states are accepted and use their raw eigenvalues;
    pass normalize=True to rescale the spectrum to unit sum first
    (sensitivity analysis only).
    """
    vals = np.clip(rho.spectrum.eigenvalues, 0.0, None)
    if normalize:
        total = float(vals.sum())
        if total <= 0.0:
            raise InputError("cannot normalize a zero-trace spectrum")
        vals = vals / total
    return float(-sum(_xlog2x(float(v)) for v in vals))


def mid_adc(p: float, theta: float, *, normalize: bool = False) -> float:
    """Entropy gained by the family under amplitude damping:
    S(damped image) - S(original), on raw spectra by default."""
    return von_neumann_entropy(nmems_ad(p, theta), normalize=normalize) - von_neumann_entropy(nmems(p))


def _marginal_basis(marginal: np.ndarray) -> np.ndarray:
    """Eigenbasis of a 2x2 marginal; computational basis when degenerate."""
    spec = linalg.hermitian_eigen(marginal)
    if abs(spec.eigenvalues[0] - spec.eigenvalues[1]) < 1e-10:
        return np.eye(2, dtype=complex)
    return spec.eigenvectors


def mid_dephasing(rho: DensityMatrix) -> float:
    """Measurement-induced disturbance under local marginal-eigenbasis
    dephasing: S(rho') - S(rho), where rho' keeps only the diagonal of rho
    in the product of the marginal eigenbases."""
    if rho.dim != 4:
        raise InputError("dephasing disturbance is defined for two-qubit states")
    if not rho.is_unit():
        raise InputError("dephasing disturbance requires a unit-trace state")
    basis_a = _marginal_basis(linalg.partial_trace(rho.matrix, (2, 2), (0,)))
    basis_b = _marginal_basis(linalg.partial_trace(rho.matrix, (2, 2), (1,)))
    u = linalg.kron(basis_a, basis_b)
    rotated = linalg.dagger(u) @ rho.matrix @ u
    probs = np.clip(np.diag(rotated).real, 0.0, None)
    dephased_entropy = float(-sum(_xlog2x(float(v)) for v in probs))
    return dephased_entropy - von_neumann_entropy(rho)


@dataclass(frozen=True)
class DiscordBreakdown:
    """Both discord branches plus the pieces they are built from."""

    q1: float
    q2: float
    d1: float
    d2: float
    discord: float
    eigenvalues: np.ndarray


def _require_x_structure(m: np.ndarray) -> None:
    for i in range(4):
        for j in range(4):
            if i == j or (i, j) in ((0, 3), (3, 0), (1, 2), (2, 1)):
                continue
            if abs(m[i, j]) >= X_STRUCTURE_TOL:
                raise InputError(
                    f"entry ({i}, {j}) = {m[i, j]:.3e} breaks the X structure"
                )


def discord_x(rho: DensityMatrix) -> DiscordBreakdown:
    """Quantum discord of an X-structured unit-trace state, min(Q1, Q2).

    Q_j = H(r11 + r33) + sum_i e_i log2 e_i + D_j with e_i the state
    eigenvalues,
    D_1 = H((1 + sqrt([1 - 2(r33 + r44)]^2 + 4(|r14| + |r23|)^2)) / 2),
    D_2 = -sum_i r_ii log2 r_ii - H(r11 + r33).
    """
    if rho.dim != 4:
        raise InputError("discord is defined for two-qubit states")
    if not rho.is_unit():
        raise InputError("discord requires a unit-trace state")
    m = rho.matrix
    _require_x_structure(m)
    diag = [max(m[k, k].real, 0.0) for k in range(4)]
    r14 = abs(m[0, 3])
    r23 = abs(m[1, 2])
    eigenvalues = np.clip(rho.spectrum.eigenvalues, 0.0, 1.0)
    spectral_term = float(sum(_xlog2x(float(v)) for v in eigenvalues))
    h_marginal = binary_entropy(diag[0] + diag[2])
    radicand = (1.0 - 2.0 * (diag[2] + diag[3])) ** 2 + 4.0 * (r14 + r23) ** 2
    d1 = binary_entropy((1.0 + math.sqrt(radicand)) / 2.0)
    d2 = -sum(_xlog2x(v) for v in diag) - h_marginal
    q1 = h_marginal + spectral_term + d1
    q2 = h_marginal + spectral_term + d2
    eigenvalues.setflags(write=False)
    return DiscordBreakdown(
        q1=q1, q2=q2, d1=d1, d2=d2, discord=min(q1, q2), eigenvalues=eigenvalues
    )


_SQRT5 = math.sqrt(5.0)
_LN2 = math.log(2.0)


def _xlnx(v: float) -> float:
    return v * math.log(v) if v > 0.0 else 0.0


def discord_closed_form_branches(p: float) -> tuple[float, float]:
    """The two single-variable discord branches for the family.

    Substitutions: x = (p+2)/6, y = (2-2p)/3, z = (1-p)/3, t = (4-p)/6,
    r = p/2, t1/t2 = 1/2 +- (1-p) sqrt(5)/6.  Returned as (spectral branch,
    plain branch), where the spectral branch is the one carrying t1/t2.
    These expressions do not agree with the matrix-route branches of
    discord_x; use discord_closed_form_residuals for the quantified gap.
    """
    p = float(p)
    if not (0.0 <= p <= 1.0):
        raise InputError(f"p must lie in [0, 1], got {p!r}")
    x = (p + 2.0) / 6.0
    y = (2.0 - 2.0 * p) / 3.0
    z = (1.0 - p) / 3.0
    t = (4.0 - p) / 6.0
    r = p / 2.0
    t1 = 0.5 + (1.0 - p) * _SQRT5 / 6.0
    t2 = 0.5 - (1.0 - p) * _SQRT5 / 6.0
    plain = (
        -(p + 2.0) * x / (6.0 * _LN2)
        + _xlnx(x) / _LN2
        + _xlnx(y) / _LN2
        - 2.0 * _xlnx(z) / _LN2
    )
    spectral = (
        (p - 4.0) * t / (6.0 * _LN2)
        - (p + 2.0) * math.log(x) / (6.0 * _LN2)
        + p * r / _LN2
        + _xlnx(x) / _LN2
        + _xlnx(y) / _LN2
        - _xlnx(t1) / _LN2
        - _xlnx(t2) / _LN2
    )
    return spectral, plain


def discord_closed_form(p: float) -> float:
    """Minimum of the two single-variable discord branches at parameter p."""
    spectral, plain = discord_closed_form_branches(p)
    value = min(spectral, plain)
    if logger.isEnabledFor(logging.DEBUG):
        res_spectral, res_plain = discord_closed_form_residuals(p)
        logger.debug(
            "closed-form discord at p=%g: value=%g, branch residuals vs matrix "
            "route: spectral=%g, plain=%g",
            p, value, res_spectral, res_plain,
        )
    return value


def discord_closed_form_residuals(p: float) -> tuple[float, float]:
    """Per-branch gap between the closed form and the matrix route at p.

    Returns (spectral branch - Q1, plain branch - Q2).  The spectral branch
    pairs with Q1 because both carry the t1/t2 spectral pair.
    """
    spectral, plain = discord_closed_form_branches(p)
    breakdown = discord_x(nmems(p))
    return spectral - breakdown.q1, plain - breakdown.q2


class ChshResult(NamedTuple):
    m_value: float
    violates: bool


def chsh_criterion(rho: DensityMatrix) -> ChshResult:
    """Horodecki criterion: M = sum of the two largest eigenvalues of T^T T;
    the CHSH inequality is violated iff M > 1."""
    if rho.dim != 4:
        raise InputError("CHSH criterion is defined for two-qubit states")
    if not rho.is_unit():
        raise InputError("CHSH criterion requires a unit-trace state")
    cm = correlation_matrix(rho)
    vals = linalg.hermitian_eigen(cm.t.T @ cm.t).eigenvalues
    m_value = float(vals[0] + vals[1])
    return ChshResult(m_value=m_value, violates=m_value > 1.0 + USEFULNESS_MARGIN)
