"""The ``analyze`` report: every predicate, residual and inverse for a pair (A, B).

The report is a plain dict with a fixed key order (documented in the README)
so it can be diffed in CI. :func:`dumps` renders it as JSON with every float
written to 17 significant digits and non-finite floats written as ``null``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import addorder, coreinv, ortho, psum
from .errors import BothZero, GinvError
from .geninv import pinv
from .numkit import DEFAULT_TOL, Tolerance, ct, fro, rank

SCHEMA = "ginv-analysis/1"


def encode_matrix(M) -> dict | None:
    if M is None:
        return None
    M = np.asarray(M, dtype=np.complex128)
    return {
        "rows": int(M.shape[0]),
        "cols": int(M.shape[1]),
        "re": [[float(x) for x in row] for row in M.real],
        "im": [[float(x) for x in row] for row in M.imag],
    }


def decode_matrix(d: dict) -> np.ndarray:
    re_part = np.asarray(d["re"], dtype=float).reshape(d["rows"], d["cols"])
    im_part = np.asarray(d["im"], dtype=float).reshape(d["rows"], d["cols"])
    return re_part + 1j * im_part


class _Report:
    """Collects results, turning library exceptions into null + reason."""

    def __init__(self):
        self.values = {}
        self.reasons = {}

    def put(self, name, fn, *, needs=None):
        if needs is not None and not needs[0]:
            self.values[name] = None
            self.reasons[name] = needs[1]
            return None
        try:
            value = fn()
        except GinvError as exc:
            self.values[name] = None
            self.reasons[name] = str(exc)
            return None
        self.values[name] = value
        return value


def analyze(A, B, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Evaluate every orthogonality, order, additivity and summability relation of (A, B)."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise ValueError(f"shapes differ: {A.shape} vs {B.shape}")
    m, n = A.shape
    square = m == n
    C = A + B
    not_square = (square, "requires square matrices")

    index, group, cores = {}, {}, {}
    for name, M in (("A", A), ("B", B), ("A+B", C)):
        index[name] = coreinv.index(M, tol) if square else None
        group[name] = (index[name] <= 1) if square else None
        cores[name] = coreinv.core_inverse(M, tol) if group[name] else None

    pred = _Report()
    p = pred.put
    p("left_star_orth", lambda: ortho.left_star_orth(A, B, tol))
    p("right_star_orth", lambda: ortho.right_star_orth(A, B, tol))
    p("star_orth", lambda: ortho.star_orth(A, B, tol))
    p("range_perpendicular", lambda: ortho.range_perpendicular(A, B, tol))
    p("left_core_orth", lambda: ortho.left_core_orth(A, B, tol), needs=not_square)
    p("right_core_orth", lambda: ortho.right_core_orth(A, B, tol), needs=not_square)
    p("core_orth", lambda: ortho.core_orth(A, B, tol), needs=not_square)
    p("core_orth_alternative", lambda: ortho.core_orth_alternative(A, B, tol), needs=not_square)
    p("strongly_core_orth", lambda: ortho.strongly_core_orth(A, B, tol), needs=not_square)
    p("star_leq", lambda: addorder.star_leq(A, B, tol))
    p("neg_star_conditions", lambda: addorder.neg_star_conditions(A, B, tol))
    p("core_leq", lambda: addorder.core_leq(A, B, tol), needs=not_square)
    p("n1_conditions", lambda: addorder.n1_conditions(A, B, tol), needs=not_square)
    p("n1_alternative", lambda: addorder.n1_alternative(A, B, tol), needs=not_square)
    right = pred.values["right_star_orth"]
    left = pred.values["left_star_orth"]
    need_right = (right, "requires right_star_orth(A, B)")
    need_left = (left, "requires left_star_orth(A, B)")
    p("right_additivity_criterion", lambda: addorder.right_additivity_criterion(A, B, tol), needs=need_right)
    p("left_additivity_criterion", lambda: addorder.left_additivity_criterion(A, B, tol), needs=need_left)
    p("right_orth_psum_criterion", lambda: psum.right_orth_psum_criterion(A, B, tol), needs=need_right)
    p("left_orth_psum_criterion", lambda: psum.left_orth_psum_criterion(A, B, tol), needs=need_left)

    add = addorder.dagger_additivity(A, B, tol)
    additivity = {
        "dagger_additive": add.dagger_additive,
        "rank_additive": add.rank_additive,
        "core_additive": add.core_additive,
    }
    if add.core_additive is None:
        pred.reasons["core_additive"] = "requires square group matrices A and B"

    try:
        verdict = psum.is_parallel_summable(A, B, tol)
        parallel = {"summable": verdict.summable, "witness": verdict.witness, "sum": encode_matrix(verdict.sum)}
    except BothZero as exc:
        parallel = {"summable": None, "witness": None, "sum": None}
        pred.reasons["parallel_summable"] = str(exc)

    Ap, Bp, Cp = pinv(A, tol), pinv(B, tol), pinv(C, tol)
    sab = 1.0 + fro(A) * fro(B)
    residuals = {
        "A*B": fro(ct(A) @ B) / sab,
        "BA*": fro(B @ ct(A)) / sab,
        "BA": fro(B @ A) / sab if square else None,
        "dagger_additivity": add.criterion_residuals["dagger"] / (1.0 + fro(Ap) + fro(Bp)),
        "right_criterion": add.criterion_residuals["right_criterion"] / sab,
        "left_criterion": add.criterion_residuals["left_criterion"] / sab,
    }
    Ac, Bc, Cc = cores["A"], cores["B"], cores["A+B"]
    residuals["A^core B"] = fro(Ac @ B) / (1.0 + fro(Ac) * fro(B)) if Ac is not None else None
    residuals["B A^core"] = fro(B @ Ac) / (1.0 + fro(Ac) * fro(B)) if Ac is not None else None
    residuals["A B^core"] = fro(A @ Bc) / (1.0 + fro(A) * fro(Bc)) if Bc is not None else None
    if Ac is not None and Bc is not None and Cc is not None:
        residuals["core_additivity"] = fro(Cc - Ac - Bc) / (1.0 + fro(Ac) + fro(Bc))
    else:
        residuals["core_additivity"] = None

    return {
        "schema": SCHEMA,
        "shape": [m, n],
        "tolerance": {"rank_rel": tol.rank_rel, "zero_rel": tol.zero_rel, "eq_rel": tol.eq_rel},
        "inputs": {"A": encode_matrix(A), "B": encode_matrix(B)},
        "ranks": {"A": rank(A, tol), "B": rank(B, tol), "A+B": rank(C, tol)},
        "index": index,
        "group_matrix": group,
        "predicates": pred.values,
        "inapplicable": dict(sorted(pred.reasons.items())),
        "additivity": additivity,
        "parallel_sum": parallel,
        "residuals": residuals,
        "inverses": {
            "A_pinv": encode_matrix(Ap),
            "B_pinv": encode_matrix(Bp),
            "sum_pinv": encode_matrix(Cp),
            "A_core": encode_matrix(Ac),
            "B_core": encode_matrix(Bc),
            "sum_core": encode_matrix(Cc),
        },
    }


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = "%.17g" % x
    if text.lstrip("-").isdigit():
        text += ".0"  # keep floats visibly floats
    return text


def _emit(obj, indent: int, level: int, out: list):
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _emit(v, indent, level + 1, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    out: list[str] = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"
