# -*- coding: utf8 -*-

"""
File formats of the results: JSON state dumps that round-trip bit-exactly,
CSV tables with 17 significant digits and atomic writes.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import io
import os
import csv
import json
import logging
import tempfile

from contextlib import suppress

import numpy as np

from .errors import InvalidParameter
from .fock import DensityMatrix, ModeLayout, StateVector
from .phase_space import NoiseModel, QuadratureDataset


logger = logging.getLogger("kerrlab")


def format_number(value):
    """Decimal notation with 17 significant digits."""
    return np.format_float_positional(
        float(value), precision=17, unique=False, fractional=False)


def _pair(value):
    value = complex(value)
    return [value.real, value.imag]


def _complex(pair):
    if len(pair) != 2:
        raise InvalidParameter("complex entries are [re, im] pairs, got %r" % (pair,))
    return complex(float(pair[0]), float(pair[1]))


def state_to_dict(state):
    return {
        "layout": state.layout.to_dict(),
        "amplitudes": [_pair(a) for a in state.amplitudes],
    }


def state_from_dict(data):
    layout = ModeLayout.from_dict(data["layout"])
    return StateVector(layout, [_complex(pair) for pair in data["amplitudes"]])


def density_matrix_to_dict(rho):
    return {
        "layout": rho.layout.to_dict(),
        "matrix": [[_pair(entry) for entry in row] for row in rho.matrix],
    }


def density_matrix_from_dict(data):
    layout = ModeLayout.from_dict(data["layout"])
    matrix = [[_complex(pair) for pair in row] for row in data["matrix"]]
    return DensityMatrix(layout, matrix)


def to_jsonable(value):
    """Converts numpy scalars, arrays and complex numbers for json.dumps."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return _pair(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def dumps(data):
    return json.dumps(
        to_jsonable(data), sort_keys=True, indent=2, allow_nan=False,
        ensure_ascii=False) + "\n"


def atomic_write(path, text):
    """Writes ``text`` to a temporary file next to ``path`` and renames it."""
    directory = os.path.dirname(os.path.abspath(path))
    handle, temporary = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with io.open(handle, "w", encoding="utf8", newline="") as file:
            file.write(text)
        os.replace(temporary, path)
    except Exception:
        with suppress(OSError):
            os.remove(temporary)
        raise

    logger.debug("Wrote %s.", path)


def read_json(path):
    with io.open(path, "r", encoding="utf8") as file:
        return json.load(file)


def csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if header is not None:
        writer.writerow(header)
    for row in rows:
        writer.writerow([
            value if isinstance(value, str) else format_number(value) for value in row])
    return buffer.getvalue()


def fringe_csv(scan):
    return csv_text(["theta", "n4"], scan.rows())


def wigner_csv(grid):
    """First row the x values, second the p values, then one row per p."""
    rows = [["x"] + list(grid.x_values), ["p"] + list(grid.p_values)]
    rows.extend(list(row) for row in grid.values)
    return csv_text(None, rows)


def dataset_csv(data):
    return csv_text(["lo_phase", "value"], data.records)


def dataset_sidecar(data):
    return {
        "noise": data.noise.to_dict(),
        "seed": data.seed,
        "source_description": data.source_description,
        "records": len(data),
        "phases": data.distinct_phases().tolist(),
        "support": data.support,
    }


def read_dataset(csv_path, sidecar_path=None):
    """Loads a dataset written by :func:`dataset_csv` and its JSON sidecar."""
    with io.open(csv_path, "r", encoding="utf8", newline="") as file:
        reader = csv.reader(file)
        header = next(reader, None)
        if header != ["lo_phase", "value"]:
            raise InvalidParameter("%s is not a quadrature dataset" % csv_path)
        rows = [(float(phase), float(value)) for phase, value in reader]

    noise, seed, description, support = None, None, "", None
    if sidecar_path is not None:
        sidecar = read_json(sidecar_path)
        noise = NoiseModel.from_dict(sidecar["noise"])
        seed = sidecar.get("seed")
        description = sidecar.get("source_description", "")
        support = sidecar.get("support")

    phases, values = zip(*rows) if rows else ((), ())
    return QuadratureDataset(phases, values, noise, seed, description, support)
