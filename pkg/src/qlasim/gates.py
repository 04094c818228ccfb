"""Unitary operations on register states, plus a decomposition-cost reporter.

The simulator applies the all-zero-controlled flip directly as a basis-indexed
permutation; the Toffoli-ladder decomposition behind
:func:`mcx_decomposition_count` is never executed, it only prices that flip in
elementary gates (serial depth model: every gate costs one layer).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import PureState, QubitSpec

_SQRT2_INV = 1.0 / np.sqrt(2.0)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT2_INV
PAULI = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _apply_1q(amps: np.ndarray, n: int, position: int, matrix: np.ndarray) -> np.ndarray:
    a = amps.reshape([2] * n)
    a = np.moveaxis(a, position, -1)
    a = a @ matrix.T
    return np.moveaxis(a, -1, position).reshape(-1)


def hadamard_register(state: PureState, register_name: str) -> PureState:
    """Hadamard on every qubit of a register."""
    amps = state.amplitudes
    n = state.n_qubits
    for position in state.layout.axes(register_name):
        amps = _apply_1q(amps, n, position, _H)
    return PureState(state.layout, amps)


def apply_single(state: PureState, qubit: QubitSpec, gate: str) -> PureState:
    """Pauli ``gate`` in {"X", "Z"} on one qubit."""
    if gate not in PAULI:
        raise ValueError(f"unsupported gate {gate!r}; expected one of {sorted(PAULI)}")
    position = state.layout.qubit_position(qubit)
    return PureState(state.layout, _apply_1q(state.amplitudes, state.n_qubits, position, PAULI[gate]))


def swap_registers(state: PureState, name_a: str, name_b: str) -> PureState:
    """Exchange the contents of two equal-width registers."""
    layout = state.layout
    if name_a == name_b:
        raise ValueError("cannot swap a register with itself")
    wa, wb = layout.width(name_a), layout.width(name_b)
    if wa != wb:
        raise ValueError(f"width mismatch: {name_a!r} has {wa} qubits, {name_b!r} has {wb}")
    n = state.n_qubits
    axes = list(range(n))
    for pa, pb in zip(layout.axes(name_a), layout.axes(name_b)):
        axes[pa], axes[pb] = axes[pb], axes[pa]
    a = state.tensor_view()
    return PureState(layout, np.transpose(a, axes).reshape(-1))


def controlled_on_zero_flip(state: PureState, control_register: str,
                            target_ancilla: QubitSpec) -> PureState:
    """Flip the target qubit exactly where the control register is all zeros.

    The target must be a single qubit outside the control register.
    """
    layout = state.layout
    control_axes = list(layout.axes(control_register))
    if isinstance(target_ancilla, str):
        target_name = target_ancilla
    else:
        target_name = target_ancilla[0]
    if target_name == control_register:
        raise ValueError("control register and target ancilla overlap")
    if isinstance(target_ancilla, str) and layout.width(target_name) != 1:
        raise ValueError(f"target register {target_name!r} is wider than one qubit")
    target = layout.qubit_position(target_ancilla)

    n = state.n_qubits
    a = state.tensor_view()
    new = a.copy()
    sel: list = [slice(None)] * n
    for ax in control_axes:
        sel[ax] = 0
    s0, s1 = sel.copy(), sel.copy()
    s0[target], s1[target] = 0, 1
    new[tuple(s0)] = a[tuple(s1)]
    new[tuple(s1)] = a[tuple(s0)]
    return PureState(layout, new.reshape(-1))


def cnot(state: PureState, control_qubit: QubitSpec, target_qubit: QubitSpec) -> PureState:
    """Flip the target qubit where the control qubit is |1>."""
    layout = state.layout
    c = layout.qubit_position(control_qubit)
    t = layout.qubit_position(target_qubit)
    if c == t:
        raise ValueError("control and target must be distinct qubits")
    n = state.n_qubits
    a = state.tensor_view()
    new = a.copy()
    sel: list = [slice(None)] * n
    sel[c] = 1
    s0, s1 = sel.copy(), sel.copy()
    s0[t], s1[t] = 0, 1
    new[tuple(s0)] = a[tuple(s1)]
    new[tuple(s1)] = a[tuple(s0)]
    return PureState(layout, new.reshape(-1))


@dataclass(frozen=True)
class GateCount:
    """Elementary-gate cost of one multi-controlled flip."""

    n_controls: int
    single_qubit_gates: int
    toffoli_gates: int
    depth: int

    def __post_init__(self):
        if min(self.n_controls, self.single_qubit_gates, self.toffoli_gates, self.depth) < 0:
            raise ValueError("gate counts must be non-negative")
        if self.depth > self.single_qubit_gates + self.toffoli_gates:
            raise ValueError("serial depth cannot exceed the total gate count")


def mcx_decomposition_count(n_controls: int) -> GateCount:
    """Cost of an X flip controlled on ``n_controls`` qubits being all zero.

    Controls on zero are conjugated by X on every control (2*n gates).  The
    multi-controlled X itself uses a Toffoli ladder with n-1 clean work
    ancillas: 2(n-1)-1 Toffolis for n >= 2; for a single control it is one
    CNOT, counted with the single-qubit gates.  Depth is serial, one layer
    per gate, and therefore linear in the number of controls.
    """
    if n_controls < 1:
        raise ValueError("need at least one control qubit")
    conjugation = 2 * n_controls
    if n_controls == 1:
        single, toffoli = conjugation + 1, 0
    else:
        single, toffoli = conjugation, max(1, 2 * (n_controls - 1) - 1)
    return GateCount(
        n_controls=n_controls,
        single_qubit_gates=single,
        toffoli_gates=toffoli,
        depth=single + toffoli,
    )
