"""JSON state files.

Grammar (one JSON object per file)::

    mixed:  {"dim": d, "matrix": [[e, ...], ...]}      d rows of d entries
    pure:   {"dim": d, "amplitudes": [e, ...]}          d entries

where each entry ``e`` is either ``[re, im]`` or a bare real number.
Exactly one of ``matrix`` / ``amplitudes`` must be present.
"""
import json
import math

import numpy as np

from .errors import StateFileError
from .states import DensityMatrix, PureState


def _entry(value, where):
    if isinstance(value, bool):
        raise StateFileError(f"{where}: expected a number or [re, im], got {value!r}")
    if isinstance(value, (int, float)):
        re, im = float(value), 0.0
    elif isinstance(value, list) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        re, im = float(value[0]), float(value[1])
    else:
        raise StateFileError(f"{where}: expected a number or [re, im], got {value!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise StateFileError(f"{where}: non-finite entry")
    return complex(re, im)


def parse_state(obj):
    """Build a DensityMatrix or PureState from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise StateFileError("state file must contain a JSON object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise StateFileError(f"'dim' must be a positive integer, got {dim!r}")
    has_matrix, has_amps = "matrix" in obj, "amplitudes" in obj
    if has_matrix == has_amps:
        raise StateFileError("exactly one of 'matrix' or 'amplitudes' is required")
    if has_amps:
        amps = obj["amplitudes"]
        if not isinstance(amps, list) or len(amps) != dim:
            raise StateFileError(f"'amplitudes' must list {dim} entries")
        return PureState(np.array([_entry(a, f"amplitudes[{i}]") for i, a in enumerate(amps)]))
    rows = obj["matrix"]
    if not isinstance(rows, list) or len(rows) != dim:
        raise StateFileError(f"'matrix' must have {dim} rows")
    m = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise StateFileError(f"matrix row {i} must have {dim} entries")
        for j, e in enumerate(row):
            m[i, j] = _entry(e, f"matrix[{i}][{j}]")
    return DensityMatrix(m)


def read_state(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return parse_state(obj)


def state_to_obj(state):
    if isinstance(state, PureState):
        return {"dim": state.dim,
                "amplitudes": [[a.real, a.imag] for a in state.amplitudes.tolist()]}
    m = state.matrix
    return {"dim": state.dim,
            "matrix": [[[e.real, e.imag] for e in row] for row in m.tolist()]}


def write_state(path, state):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_obj(state), fh, indent=1)
        fh.write("\n")
