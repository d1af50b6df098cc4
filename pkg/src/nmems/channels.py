"""Kraus-operator channels: amplitude damping, its finite-temperature
generalization, and three ways of acting on states.

``apply_single`` is the ordinary one-qubit channel action.  For two qubits
there are two distinct maps: ``apply_product_pair`` applies the channel
independently to each qubit (the standard completely positive
trace-preserving construction), while ``apply_correlated_pair`` keeps only
the identical-index terms K_i x K_i.  The correlated map is NOT
trace-preserving; its output is tagged sub_normalized by the state
validator, never rescaled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InputError
from .states import DensityMatrix

TRACE_PRESERVING_TOL = 1e-10


@dataclass(frozen=True)
class KrausChannel:
    operators: tuple
    label: str
    trace_preserving: bool


def kraus_channel(operators, label: str) -> KrausChannel:
    """Bundle operators into a channel, computing the trace-preserving flag."""
    ops = tuple(linalg.as_matrix(k) for k in operators)
    if not ops:
        raise InputError("a channel needs at least one Kraus operator")
    shape = ops[0].shape
    if any(k.shape != shape for k in ops):
        raise InputError("all Kraus operators must share the same dimensions")
    if shape[0] != shape[1]:
        raise InputError("Kraus operators must be square")
    total = sum(linalg.dagger(k) @ k for k in ops)
    gap = float(np.max(np.abs(total - np.eye(shape[0]))))
    frozen = []
    for k in ops:
        k = k.copy()
        k.setflags(write=False)
        frozen.append(k)
    return KrausChannel(
        operators=tuple(frozen),
        label=label,
        trace_preserving=gap <= TRACE_PRESERVING_TOL,
    )


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise InputError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def adc(gamma: float) -> KrausChannel:
    """Amplitude damping channel with decay probability gamma.

    K0 = [[1, 0], [0, sqrt(1-gamma)]], K1 = [[0, sqrt(gamma)], [0, 0]].
    """
    gamma = _check_unit_interval("gamma", gamma)
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=complex)
    e1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return kraus_channel((e0, e1), label=f"adc(gamma={gamma:g})")


def gadc(gamma: float, lam: float) -> KrausChannel:
    """Generalized amplitude damping: decay gamma, temperature mixing lam.

    lam = 1 recovers adc(gamma); lam = 0 pumps population towards |1>.
    """
    gamma = _check_unit_interval("gamma", gamma)
    lam = _check_unit_interval("lambda", lam)
    sl = math.sqrt(lam)
    cl = math.sqrt(1.0 - lam)
    sg = math.sqrt(gamma)
    cg = math.sqrt(1.0 - gamma)
    e0 = sl * np.array([[1.0, 0.0], [0.0, cg]], dtype=complex)
    e1 = sl * np.array([[0.0, sg], [0.0, 0.0]], dtype=complex)
    e2 = cl * np.array([[cg, 0.0], [0.0, 1.0]], dtype=complex)
    e3 = cl * np.array([[0.0, 0.0], [sg, 0.0]], dtype=complex)
    return kraus_channel(
        (e0, e1, e2, e3), label=f"gadc(gamma={gamma:g}, lambda={lam:g})"
    )


def apply_single(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_i K_i rho K_i^dagger on a state of matching dimension."""
    dim = ch.operators[0].shape[0]
    if rho.dim != dim:
        raise InputError(f"channel acts on dimension {dim}, state is {rho.dim}")
    out = np.zeros_like(rho.matrix)
    for k in ch.operators:
        out = out + k @ rho.matrix @ linalg.dagger(k)
    return DensityMatrix.from_matrix(out)


def _require_qubit_pair(ch: KrausChannel, rho: DensityMatrix) -> None:
    if ch.operators[0].shape != (2, 2):
        raise InputError("pair application needs 2x2 Kraus operators")
    if rho.dim != 4:
        raise InputError("pair application needs a 4x4 two-qubit state")


def apply_correlated_pair(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_i (K_i x K_i) rho (K_i x K_i)^dagger for a two-operator channel.

    Keeping only the identical-index terms makes this map non-trace-
    preserving in general; the output carries whatever trace survives.
    """
    _require_qubit_pair(ch, rho)
    if len(ch.operators) != 2:
        raise InputError("correlated pair application needs exactly 2 operators")
    out = np.zeros((4, 4), dtype=complex)
    for k in ch.operators:
        kk = linalg.kron(k, k)
        out = out + kk @ rho.matrix @ linalg.dagger(kk)
    return DensityMatrix.from_matrix(out)


def apply_product_pair(ch: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_{i,j} (K_i x K_j) rho (K_i x K_j)^dagger: independent noise on
    each qubit.  Trace-preserving whenever the channel is."""
    _require_qubit_pair(ch, rho)
    out = np.zeros((4, 4), dtype=complex)
    for ki in ch.operators:
        for kj in ch.operators:
            kk = linalg.kron(ki, kj)
            out = out + kk @ rho.matrix @ linalg.dagger(kk)
    return DensityMatrix.from_matrix(out)
