#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

"""
JSON codecs. Complex numbers are [re, im] pairs (plain numbers are accepted
as real), matrices are {"rows", "cols", "data"} with row-major nested data.
Decoding errors raise SchemaError.
"""

import numpy as np
import simplejson
from fvcore.common.file_io import PathManager

from jordannorm.algebra import AlgElement, FdAlgebra, State
from jordannorm.forms import (
    BilinearForm,
    HilbertMap,
    column_map,
    corner_form,
    product_form,
    row_extraction,
    trace_form,
)
from jordannorm.grothendieck import (
    WitnessStates,
    transpose_factorization_example,
)
from jordannorm.jsrep import JordanRep, JSRep, StarRepTable
from jordannorm.positive import trace_form_rep
from jordannorm.utils.errors import SchemaError, ShapeError


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError("{} needs the key '{}'".format(what, key))
    return obj[key]


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(value):
    if isinstance(value, bool):
        raise SchemaError("Expected a number, got {!r}".format(value))
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in value
        )
    ):
        return complex(value[0], value[1])
    raise SchemaError(
        "Expected a number or [re, im] pair, got {!r}".format(value)
    )


def encode_matrix(matrix):
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.ndim == 1:
        matrix = matrix[:, np.newaxis]
    return {
        "rows": int(matrix.shape[0]),
        "cols": int(matrix.shape[1]),
        "data": [[encode_complex(z) for z in row] for row in matrix],
    }


def decode_matrix(obj, rows=None, cols=None):
    n_rows = _require(obj, "rows", "Matrix")
    n_cols = _require(obj, "cols", "Matrix")
    data = _require(obj, "data", "Matrix")
    if not all(
        isinstance(n, int) and not isinstance(n, bool) and n >= 0
        for n in (n_rows, n_cols)
    ):
        raise SchemaError("Matrix rows and cols must be non-negative integers")
    if not isinstance(data, list) or len(data) != n_rows:
        raise SchemaError(
            "Matrix data must be a list of {} rows".format(n_rows)
        )
    out = np.zeros((n_rows, n_cols), dtype=np.complex128)
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n_cols:
            raise SchemaError(
                "Matrix row {} must have {} entries".format(i, n_cols)
            )
        out[i] = [decode_complex(v) for v in row]
    if (rows is not None and n_rows != rows) or (
        cols is not None and n_cols != cols
    ):
        raise SchemaError(
            "Expected a {} x {} matrix, got {} x {}".format(
                rows, cols, n_rows, n_cols
            )
        )
    if not np.all(np.isfinite(out)):
        raise SchemaError("Matrix entries must be finite")
    return out


def encode_vector(vec):
    return [encode_complex(z) for z in np.asarray(vec).ravel()]


def encode_algebra(alg):
    return {"blocks": list(alg.block_dims)}


def decode_algebra(obj):
    blocks = _require(obj, "blocks", "Algebra")
    if (
        not isinstance(blocks, list)
        or not blocks
        or not all(isinstance(d, int) and d >= 1 for d in blocks)
    ):
        raise SchemaError(
            "Algebra blocks must be a non-empty list of positive integers"
        )
    return FdAlgebra(blocks)


def encode_element(x):
    return {
        "algebra": encode_algebra(x.algebra),
        "blocks": [encode_matrix(b) for b in x.blocks],
    }


def decode_element(obj, algebra=None):
    alg = decode_algebra(_require(obj, "algebra", "Element"))
    if algebra is not None and alg != algebra:
        raise SchemaError(
            "Element lives in {}, expected {}".format(alg, algebra)
        )
    blocks = _require(obj, "blocks", "Element")
    if not isinstance(blocks, list) or len(blocks) != alg.num_blocks:
        raise SchemaError("Element needs {} blocks".format(alg.num_blocks))
    return AlgElement(
        alg,
        [decode_matrix(b, d, d) for b, d in zip(blocks, alg.block_dims)],
    )


def encode_state(phi):
    return {
        "algebra": encode_algebra(phi.algebra),
        "densities": [encode_matrix(r) for r in phi.densities],
    }


def decode_state(obj, algebra=None):
    alg = decode_algebra(_require(obj, "algebra", "State"))
    if algebra is not None and alg != algebra:
        raise SchemaError(
            "State lives in {}, expected {}".format(alg, algebra)
        )
    densities = _require(obj, "densities", "State")
    if not isinstance(densities, list) or len(densities) != alg.num_blocks:
        raise SchemaError("State needs {} densities".format(alg.num_blocks))
    try:
        return State(
            alg,
            [
                decode_matrix(r, d, d)
                for r, d in zip(densities, alg.block_dims)
            ],
        )
    except ValueError as e:
        raise SchemaError("Invalid state: {}".format(e))


def encode_form(form):
    return {
        "alg_a": encode_algebra(form.alg_a),
        "alg_b": encode_algebra(form.alg_b),
        "coeffs": encode_matrix(form.coeffs),
    }


def decode_form(obj):
    """
    Explicit coefficients, or a named family: {"kind": "corner", "d"},
    {"kind": "trace", "blocks", "scale"} or {"kind": "product", "phi", "psi"}.
    """
    kind = obj.get("kind", "explicit") if isinstance(obj, dict) else None
    if kind == "corner":
        return corner_form(_positive_int(obj, "d"))
    if kind == "trace":
        alg = decode_algebra(obj)
        scale = obj.get("scale")
        return trace_form(alg, None if scale is None else float(scale))
    if kind == "product":
        return product_form(
            decode_state(_require(obj, "phi", "Product form")),
            decode_state(_require(obj, "psi", "Product form")),
        )
    if kind != "explicit":
        raise SchemaError("Unknown form kind {!r}".format(kind))
    alg_a = decode_algebra(_require(obj, "alg_a", "Form"))
    alg_b = decode_algebra(_require(obj, "alg_b", "Form"))
    coeffs = decode_matrix(
        _require(obj, "coeffs", "Form"), alg_a.dim, alg_b.dim
    )
    return BilinearForm(alg_a, alg_b, coeffs)


def encode_map(fmap):
    return {
        "alg": encode_algebra(fmap.alg),
        "target_dim": fmap.target_dim,
        "matrix": encode_matrix(fmap.matrix),
    }


def decode_map(obj):
    """
    Explicit matrix, or {"kind": "row_extraction", "d", "row"} or
    {"kind": "column_map", "d", "column"}.
    """
    kind = obj.get("kind", "explicit") if isinstance(obj, dict) else None
    if kind == "row_extraction":
        return row_extraction(_positive_int(obj, "d"), obj.get("row", 0))
    if kind == "column_map":
        return column_map(_positive_int(obj, "d"), obj.get("column", 0))
    if kind != "explicit":
        raise SchemaError("Unknown map kind {!r}".format(kind))
    alg = decode_algebra(_require(obj, "alg", "Map"))
    target_dim = _require(obj, "target_dim", "Map")
    matrix = decode_matrix(
        _require(obj, "matrix", "Map"), target_dim, alg.dim
    )
    return HilbertMap(alg, target_dim, matrix)


def encode_source(target):
    """A form or a map, tagged with its type."""
    if isinstance(target, BilinearForm):
        out = encode_form(target)
        out["type"] = "form"
    else:
        out = encode_map(target)
        out["type"] = "map"
    return out


def decode_source(obj):
    kind = _require(obj, "type", "Input")
    if kind == "form":
        return decode_form(obj)
    if kind == "map":
        return decode_map(obj)
    raise SchemaError(
        "Input type must be 'form' or 'map', got {!r}".format(kind)
    )


def encode_estimate(estimate):
    out = {
        "value": estimate.value,
        "converged": estimate.converged,
        "restarts_used": estimate.restarts_used,
        "sweeps": estimate.sweeps,
        "maximizer_x": encode_element(estimate.maximizer_x),
    }
    if estimate.maximizer_y is not None:
        out["maximizer_y"] = encode_element(estimate.maximizer_y)
    return out


def _encode_table(table):
    if table is None:
        return None
    return {
        "space_dim": table.space_dim,
        "images": [encode_matrix(m) for m in table.images],
    }


def _decode_table(obj, alg):
    if obj is None:
        return None
    k = _require(obj, "space_dim", "Representation table")
    images = _require(obj, "images", "Representation table")
    if not isinstance(images, list) or len(images) != alg.dim:
        raise SchemaError("Table needs {} images".format(alg.dim))
    return StarRepTable(alg, k, [decode_matrix(m, k, k) for m in images])


def encode_jordan_rep(rep):
    return {
        "rep_part": _encode_table(rep.rep_part),
        "anti_part": _encode_table(rep.anti_part),
    }


def decode_jordan_rep(obj, alg):
    """The algebra is carried by the enclosing representation."""
    if not isinstance(obj, dict):
        raise SchemaError("A Jordan representation must be an object")
    rep_part = _decode_table(obj.get("rep_part"), alg)
    anti_part = _decode_table(obj.get("anti_part"), alg)
    if rep_part is None and anti_part is None:
        raise SchemaError("A Jordan representation needs at least one part")
    return JordanRep(rep_part, anti_part)


def encode_jsrep(rep):
    return {
        "arity": rep.arity,
        "algebras": [encode_algebra(alg) for alg in rep.algebras],
        "dims": list(rep.dims),
        "reps": [encode_jordan_rep(s) for s in rep.reps],
        "operators": [encode_matrix(t) for t in rep.operators],
        "splitting": rep.splitting,
    }


def decode_jsrep(obj):
    """
    Explicit representation
    {"arity", "algebras", "dims", "reps", "operators", "splitting"},
    or {"kind": "transpose_example", "d"} or {"kind": "trace_form",
    "blocks"}. The declared arity, algebras and dims must agree with the
    decoded reps and operators.
    """
    kind = obj.get("kind", "explicit") if isinstance(obj, dict) else None
    if kind == "transpose_example":
        return transpose_factorization_example(_positive_int(obj, "d"))
    if kind == "trace_form":
        return trace_form_rep(decode_algebra(obj))
    if kind != "explicit":
        raise SchemaError("Unknown representation kind {!r}".format(kind))
    arity = _positive_int(obj, "arity")
    algebras = _require(obj, "algebras", "Representation")
    dims = _require(obj, "dims", "Representation")
    reps = _require(obj, "reps", "Representation")
    ops = _require(obj, "operators", "Representation")
    for name, value in [("algebras", algebras), ("dims", dims),
                        ("reps", reps), ("operators", ops)]:
        if not isinstance(value, list):
            raise SchemaError("'{}' must be a list".format(name))
    if not len(algebras) == len(dims) == len(reps) == arity:
        raise SchemaError(
            "arity {} does not match {} algebras, {} dims and {} reps".format(
                arity, len(algebras), len(dims), len(reps)
            )
        )
    algebras = [decode_algebra(a) for a in algebras]
    try:
        rep = JSRep(
            [decode_jordan_rep(r, alg) for r, alg in zip(reps, algebras)],
            [decode_matrix(t) for t in ops],
            obj.get("splitting"),
        )
    except ShapeError as e:
        raise SchemaError("Invalid representation: {}".format(e))
    if list(rep.dims) != dims:
        raise SchemaError(
            "Declared dims {} do not match the reps {}".format(
                dims, list(rep.dims)
            )
        )
    return rep


def encode_gns(data):
    return {
        "algebra": encode_algebra(data.alg),
        "space_dim": data.space_dim,
        "kernel_dim": data.kernel_dim,
        "cyclic_vector": encode_vector(data.cyclic_vector),
        "embed": encode_matrix(data.embed),
    }


_WITNESS_KEYS = {
    "bilinear": ("kappa", "lambda", "mu", "nu"),
    "little": ("psi", "phi"),
}


def encode_witness(w):
    out = {"kind": w.kind}
    for name, state in w.states():
        out[name] = encode_state(state)
    return out


def decode_witness(obj):
    kind = _require(obj, "kind", "Witness states")
    if kind not in _WITNESS_KEYS:
        raise SchemaError(
            "Witness kind must be 'bilinear' or 'little', got {!r}".format(kind)
        )
    states = [
        decode_state(_require(obj, key, "Witness states"))
        for key in _WITNESS_KEYS[kind]
    ]
    try:
        if kind == "bilinear":
            kappa, lam, mu, nu = states
            return WitnessStates(kappa=kappa, lam=lam, mu=mu, nu=nu)
        return WitnessStates(psi=states[0], phi=states[1])
    except ShapeError as e:
        raise SchemaError("Invalid witness states: {}".format(e))


def _positive_int(obj, key):
    value = _require(obj, key, "Input")
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SchemaError("'{}' must be a positive integer".format(key))
    return value


def load_json(path):
    """Read a JSON document; unreadable or malformed files are SchemaErrors."""
    try:
        with PathManager.open(path, "r") as f:
            return simplejson.load(f)
    except (IOError, OSError) as e:
        raise SchemaError("Can not read {}: {}".format(path, e))
    except simplejson.JSONDecodeError as e:
        raise SchemaError("Malformed JSON in {}: {}".format(path, e))


def dumps(obj):
    return simplejson.dumps(obj, sort_keys=True, indent=2, ignore_nan=True)


def save_json(obj, path):
    with PathManager.open(path, "w") as f:
        f.write(dumps(obj))
        f.write("\n")
