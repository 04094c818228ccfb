"""Amplitude encoding of complex matrices into register states, and back.

Two schemes:

* RC: registers ``R`` (row index) and ``C`` (column index); the amplitude at
  |i>_R |j>_C is proportional to entry (i, j).
* RCM: an extra one-qubit register ``M`` marks |0> real part, |1> imaginary
  part, so all amplitudes are real.  This is the encoding on which Hermitian
  conjugation acts as a plain unitary.

Matrices are zero-padded up to power-of-two dimensions (each register needs
at least one qubit); decoding crops back.  Amplitude encoding destroys the
overall magnitude, so the Frobenius norm of the source is carried separately
as ``scale``.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .states import PureState, RegisterLayout

# Mass allowed outside the dominant basis assignment of non-payload registers.
SECTOR_TOL = 1e-8


class NonProductSectorError(ValueError):
    """Decoding failed: the non-payload registers are not in one basis state."""


@dataclass(frozen=True)
class EncodedMatrix:
    """A matrix stored in register amplitudes, with its lost magnitude."""

    state: PureState
    scheme: str  # "RC" or "RCM"
    rows: int
    cols: int
    scale: float

    def __post_init__(self):
        if self.scheme not in ("RC", "RCM"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be at least 1x1")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class DecodedResult:
    """Matrix (or vector) recovered from a state.

    ``matrix`` holds actual entries when ``known_scale`` is present, otherwise
    the unit-Frobenius direction.  ``residual`` is the amplitude mass found
    outside the decoded window (decoding noise floor).
    """

    matrix: np.ndarray
    known_scale: float | None
    residual: float


def _reg_width(extent: int) -> int:
    """Qubits needed to index ``extent`` values (minimum one qubit)."""
    return max(1, (int(extent) - 1).bit_length())


def _checked(matrix) -> np.ndarray:
    a = np.atleast_2d(np.asarray(matrix, dtype=np.complex128))
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of rank {a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    if not np.any(a):
        raise ValueError("cannot encode an all-zero matrix")
    return a


def encode_rc(matrix) -> EncodedMatrix:
    """Encode entries as amplitudes over row/column index registers."""
    a = _checked(matrix)
    rows, cols = a.shape
    wr, wc = _reg_width(rows), _reg_width(cols)
    scale = float(np.linalg.norm(a))
    padded = np.zeros((1 << wr, 1 << wc), dtype=np.complex128)
    padded[:rows, :cols] = a / scale
    layout = RegisterLayout([("R", wr), ("C", wc)])
    return EncodedMatrix(PureState(layout, padded.reshape(-1)), "RC", rows, cols, scale)


def encode_rcm(matrix) -> EncodedMatrix:
    """Encode real parts at M=|0> and imaginary parts at M=|1>."""
    a = _checked(matrix)
    rows, cols = a.shape
    wr, wc = _reg_width(rows), _reg_width(cols)
    scale = float(np.linalg.norm(a))
    padded = np.zeros((1 << wr, 1 << wc, 2), dtype=np.complex128)
    padded[:rows, :cols, 0] = a.real / scale
    padded[:rows, :cols, 1] = a.imag / scale
    layout = RegisterLayout([("R", wr), ("C", wc), ("M", 1)])
    return EncodedMatrix(PureState(layout, padded.reshape(-1)), "RCM", rows, cols, scale)


def extract_payload(
    state: PureState, payload: Sequence[str]
) -> tuple[np.ndarray, dict[str, int], float]:
    """Amplitudes over ``payload`` registers at the dominant basis assignment
    of every other register.

    Returns ``(block, assignment, off_sector_weight)``.  ``block`` has one
    axis per payload register, in the order given; ``off_sector_weight`` is
    the amplitude mass outside the dominant assignment.
    """
    layout = state.layout
    payload = list(payload)
    payload_axes = [ax for name in payload for ax in layout.axes(name)]
    other_names = [nm for nm in layout.names if nm not in payload]

    a = np.moveaxis(state.tensor_view(), payload_axes, range(len(payload_axes)))
    front = 1 << len(payload_axes)
    flat = a.reshape(front, -1)
    mass = np.sum(np.abs(flat) ** 2, axis=0)
    k = int(np.argmax(mass))
    off = float(max(0.0, 1.0 - mass[k]))

    # Remaining axes keep declaration order, so k's bits split register by
    # register from the least significant end.
    assignment: dict[str, int] = {}
    value = k
    for name in reversed(other_names):
        w = layout.width(name)
        assignment[name] = value & ((1 << w) - 1)
        value >>= w
    assignment = {name: assignment[name] for name in other_names}

    block = flat[:, k].copy()
    return block.reshape([1 << layout.width(nm) for nm in payload]), assignment, off


def _resolve_source(source, rows, cols, scale, scheme: str):
    if isinstance(source, EncodedMatrix):
        if source.scheme != scheme:
            raise ValueError(f"expected scheme {scheme!r}, got {source.scheme!r}")
        state = source.state
        rows = source.rows if rows is None else rows
        cols = source.cols if cols is None else cols
        scale = source.scale if scale is None else scale
    else:
        state = source
        if rows is None or cols is None:
            raise ValueError("rows and cols are required when decoding a bare state")
    return state, int(rows), int(cols), scale


def _finish(block_entries: np.ndarray, rows: int, cols: int, scale, off: float) -> DecodedResult:
    if off > SECTOR_TOL:
        raise NonProductSectorError(
            f"non-payload registers are not in a product basis state "
            f"(off-sector mass {off:.3e})"
        )
    cropped = block_entries[:rows, :cols]
    keep = float(np.sum(np.abs(cropped) ** 2))
    residual = float(max(0.0, 1.0 - keep))
    if keep <= 0.0:
        raise NonProductSectorError("no amplitude mass inside the decoded window")
    unit = cropped / np.sqrt(keep)
    matrix = unit * scale if scale is not None else unit
    return DecodedResult(matrix=matrix, known_scale=scale, residual=residual)


def decode_rc(source, rows: int | None = None, cols: int | None = None,
              scale: float | None = None) -> DecodedResult:
    """Recover a matrix from an RC encoding (or any state holding R and C).

    Any register other than R and C must sit in a single basis state; the
    decoded matrix is unit-Frobenius unless a scale is known.
    """
    state, rows, cols, scale = _resolve_source(source, rows, cols, scale, "RC")
    block, _, off = extract_payload(state, ("R", "C"))
    return _finish(block, rows, cols, scale, off)


def decode_rcm(source, rows: int | None = None, cols: int | None = None,
               scale: float | None = None) -> DecodedResult:
    """Recover a complex matrix from an RCM encoding."""
    state, rows, cols, scale = _resolve_source(source, rows, cols, scale, "RCM")
    block, _, off = extract_payload(state, ("R", "C", "M"))
    entries = block[:, :, 0] + 1j * block[:, :, 1]
    return _finish(entries, rows, cols, scale, off)
