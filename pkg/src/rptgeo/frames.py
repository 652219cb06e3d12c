"""Frame algebras: a Lie algebra with left-invariant metric and product structure.

The FrameAlgebra is the single source of geometric truth; everything else is
derived from its structure constants, metric matrix and product matrix.
File format and all reported indices are 1-based; the Python API is 0-based.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .parser import ParseError, parse_expression
from .scalars import Scalar
from .tensors import mat_det, mat_eq, mat_identity, mat_inv, mat_mul, mat_transpose


class SchemaError(ValueError):
    """A spec file violates the JSON contract; message names the field."""


@dataclass
class Witness:
    index: tuple
    expected: Scalar
    actual: Scalar
    label: str = ""

    def as_dict(self) -> dict:
        return {
            "index": list(self.index),
            "expected": str(self.expected),
            "actual": str(self.actual),
            "label": self.label,
        }


@dataclass
class CheckReport:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)


class FrameAlgebra:
    """Structure constants c^k_ij, metric g and product structure P."""

    def __init__(self, dim: int, params: tuple, c, g, p):
        if not isinstance(dim, int) or dim <= 0 or dim % 2:
            raise ValueError("dimension must be a positive even integer")
        if len(c) != dim or any(len(row) != dim for row in c) or \
                any(len(cell) != dim for row in c for cell in row):
            raise ValueError("structure constants must be dim x dim x dim")
        for name, m in (("metric", g), ("product", p)):
            if len(m) != dim or any(len(row) != dim for row in m):
                raise ValueError("%s must be a dim x dim matrix" % name)
        self.dim = dim
        self.params = tuple(params)
        self.c = c
        self.g = g
        self.p = p

    @cached_property
    def metric_det(self) -> Scalar:
        return mat_det(self.g)

    @cached_property
    def metric_inv(self) -> list:
        if self.metric_det.is_zero:
            raise ValueError("metric is singular (zero determinant)")
        return mat_inv(self.g)

    def bracket(self, i: int, j: int) -> list:
        return self.c[i][j]

    def __eq__(self, other):
        if not isinstance(other, FrameAlgebra):
            return NotImplemented
        return (self.dim == other.dim and self.params == other.params
                and self.c == other.c and mat_eq(self.g, other.g)
                and mat_eq(self.p, other.p))

    def substitute(self, values) -> "FrameAlgebra":
        """Evaluate every entry at the given parameter values (empty context)."""

        def sub(s: Scalar) -> Scalar:
            return Scalar.constant((), s.substitute(values))

        c = [[[sub(s) for s in cell] for cell in row] for row in self.c]
        g = [[sub(s) for s in row] for row in self.g]
        p = [[sub(s) for s in row] for row in self.p]
        return FrameAlgebra(self.dim, (), c, g, p)


# ---------------------------------------------------------------------------
# validation


def validate(fa: FrameAlgebra) -> CheckReport:
    """Check every structural axiom; failures are witnessed, not raised."""
    n = fa.dim
    zero = Scalar.zero(fa.params)
    witnesses = []
    notes = []

    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                s = fa.c[i][j][k] + fa.c[j][i][k]
                if not s.is_zero:
                    witnesses.append(Witness((i + 1, j + 1, k + 1), zero, s,
                                             "bracket-antisymmetry"))

    for i in range(n):
        for j in range(i + 1, n):
            for m in range(j + 1, n):
                for r in range(n):
                    acc = zero
                    for s in range(n):
                        acc = acc + fa.c[i][j][s] * fa.c[s][m][r] \
                            + fa.c[j][m][s] * fa.c[s][i][r] \
                            + fa.c[m][i][s] * fa.c[s][j][r]
                    if not acc.is_zero:
                        witnesses.append(Witness((i + 1, j + 1, m + 1, r + 1),
                                                 zero, acc, "jacobi"))

    for i in range(n):
        for j in range(i + 1, n):
            if fa.g[i][j] != fa.g[j][i]:
                witnesses.append(Witness((i + 1, j + 1), fa.g[j][i], fa.g[i][j],
                                         "metric-symmetry"))

    det = fa.metric_det
    if det.is_zero:
        witnesses.append(Witness((), Scalar.one(fa.params), det,
                                 "metric-nondegenerate"))
    if fa.params:
        notes.append("positivity unverified (parametric)")
    else:
        # Sylvester: every leading principal minor positive
        for k in range(1, n + 1):
            sub = [[fa.g[i][j] for j in range(k)] for i in range(k)]
            d = mat_det(sub)
            if d.constant_value() <= 0:
                witnesses.append(Witness((k,), Scalar.one(()), d,
                                         "metric-positive-definite"))

    psq = mat_mul(fa.p, fa.p)
    ident = mat_identity(n, fa.params)
    for i in range(n):
        for j in range(n):
            if psq[i][j] != ident[i][j]:
                witnesses.append(Witness((i + 1, j + 1), ident[i][j], psq[i][j],
                                         "product-square-identity"))

    ptgp = mat_mul(mat_transpose(fa.p), mat_mul(fa.g, fa.p))
    for i in range(n):
        for j in range(n):
            if ptgp[i][j] != fa.g[i][j]:
                witnesses.append(Witness((i + 1, j + 1), fa.g[i][j], ptgp[i][j],
                                         "metric-product-compatibility"))

    trace = zero
    for i in range(n):
        trace = trace + fa.p[i][i]
    if not trace.is_zero:
        witnesses.append(Witness((), zero, trace, "product-traceless"))

    return CheckReport("frame-structure", not witnesses, witnesses, notes)


def associated_metric(fa: FrameAlgebra) -> list:
    """The indefinite companion metric pairing x with Py."""
    return mat_mul(fa.g, fa.p)


def killing_check(fa: FrameAlgebra) -> CheckReport:
    """Whether the associated metric is a Killing metric on the algebra."""
    n = fa.dim
    gp = associated_metric(fa)
    zero = Scalar.zero(fa.params)
    witnesses = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = zero
                for s in range(n):
                    acc = acc + fa.c[i][j][s] * gp[s][k] + fa.c[i][k][s] * gp[s][j]
                if not acc.is_zero:
                    witnesses.append(Witness((i + 1, j + 1, k + 1), zero, acc,
                                             "killing-metric"))
    return CheckReport("killing-metric", not witnesses, witnesses)


# ---------------------------------------------------------------------------
# JSON spec files


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise SchemaError("%s: %s" % (path, message))


def _parse_entry(text, params: tuple, path: str) -> Scalar:
    _expect(isinstance(text, str), path, "expected an expression string")
    try:
        return parse_expression(text, params)
    except ParseError as exc:
        raise SchemaError("%s: %s" % (path, exc)) from exc


def _load_matrix(data, dim: int, params: tuple, path: str) -> list:
    _expect(isinstance(data, list) and len(data) == dim, path,
            "expected %d rows" % dim)
    out = []
    for i, row in enumerate(data):
        _expect(isinstance(row, list) and len(row) == dim, "%s[%d]" % (path, i),
                "expected %d entries, found %s" % (dim, len(row) if isinstance(row, list) else "non-list"))
        out.append([_parse_entry(cell, params, "%s[%d][%d]" % (path, i, j))
                    for j, cell in enumerate(row)])
    return out


def frame_from_dict(data: dict) -> FrameAlgebra:
    _expect(isinstance(data, dict), "$", "expected a JSON object")
    dim = data.get("dimension")
    _expect(isinstance(dim, int) and dim > 0 and dim % 2 == 0, "dimension",
            "expected a positive even integer")
    raw_params = data.get("parameters", [])
    _expect(isinstance(raw_params, list), "parameters", "expected a list")
    for k, name in enumerate(raw_params):
        _expect(isinstance(name, str) and name and
                (name[0].isalpha() or name[0] == "_") and
                all(ch.isalnum() or ch == "_" for ch in name),
                "parameters[%d]" % k, "invalid parameter name")
    params = tuple(raw_params)
    _expect(len(set(params)) == len(params), "parameters", "duplicate names")

    zero = Scalar.zero(params)
    c = [[[zero for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
    brackets = data.get("brackets", [])
    _expect(isinstance(brackets, list), "brackets", "expected a list")
    seen = set()
    for b, entry in enumerate(brackets):
        path = "brackets[%d]" % b
        _expect(isinstance(entry, dict), path, "expected an object")
        left, right = entry.get("left"), entry.get("right")
        _expect(isinstance(left, int) and 1 <= left <= dim, path + ".left",
                "expected an index in 1..%d" % dim)
        _expect(isinstance(right, int) and 1 <= right <= dim, path + ".right",
                "expected an index in 1..%d" % dim)
        _expect(left < right, path, "brackets are listed only for left < right")
        _expect((left, right) not in seen, path, "duplicate bracket")
        seen.add((left, right))
        result = entry.get("result", {})
        _expect(isinstance(result, dict), path + ".result", "expected an object")
        for key, text in result.items():
            _expect(key.isdigit() and 1 <= int(key) <= dim,
                    "%s.result[%s]" % (path, key), "component key out of range")
            k = int(key) - 1
            value = _parse_entry(text, params, "%s.result[%s]" % (path, key))
            c[left - 1][right - 1][k] = value
            c[right - 1][left - 1][k] = -value

    _expect("metric" in data, "metric", "missing field")
    _expect("product" in data, "product", "missing field")
    g = _load_matrix(data["metric"], dim, params, "metric")
    p = _load_matrix(data["product"], dim, params, "product")
    return FrameAlgebra(dim, params, c, g, p)


def frame_to_dict(fa: FrameAlgebra) -> dict:
    brackets = []
    for i in range(fa.dim):
        for j in range(i + 1, fa.dim):
            result = {str(k + 1): str(s) for k, s in enumerate(fa.c[i][j])
                      if not s.is_zero}
            if result:
                brackets.append({"left": i + 1, "right": j + 1, "result": result})
    return {
        "dimension": fa.dim,
        "parameters": list(fa.params),
        "brackets": brackets,
        "metric": [[str(s) for s in row] for row in fa.g],
        "product": [[str(s) for s in row] for row in fa.p],
    }


def load_spec(path) -> FrameAlgebra:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaError("$: invalid JSON (%s)" % exc) from exc
    return frame_from_dict(data)


def save_spec(fa: FrameAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(frame_to_dict(fa), handle, indent=2, sort_keys=True)
        handle.write("\n")


def spec_digest(fa: FrameAlgebra) -> str:
    """sha256 of the canonicalized spec serialization."""
    canon = json.dumps(frame_to_dict(fa), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()
