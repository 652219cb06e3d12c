"""The bundled 4-dimensional family of frame algebras with a Killing metric.

The family is parametrized by four reals; with the block-swap product
structure and the identity metric it is the canonical instance of the
skew-cyclic class.  Golden component tables ship as data files and are
expanded here by their stated symmetries (never hand-entered).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .frames import CheckReport, FrameAlgebra, Witness
from .parser import parse_expression
from .scalars import Scalar
from .tensors import Tensor, mat_identity

PARAM_NAMES = ("l1", "l2", "l3", "l4")
EPSILON_CANDIDATES = (1, -1)

_WITNESS_CAP = 16


@dataclass
class ExampleSpec:
    """Parameters of the bundled family: four rationals, or None for symbolic."""
    lambdas: Optional[tuple] = None


def swap_product_matrix(dim: int, params: tuple) -> list:
    """Block antidiagonal product structure exchanging the two halves."""
    half = dim // 2
    one, zero = Scalar.one(params), Scalar.zero(params)
    return [[one if abs(i - j) == half else zero for j in range(dim)]
            for i in range(dim)]


def family_structure_constants(lam, params: tuple) -> list:
    """Structure constants of the family for the given four Scalars."""
    l1, l2, l3, l4 = lam
    zero = Scalar.zero(params)
    c = [[[zero for _ in range(4)] for _ in range(4)] for _ in range(4)]

    def put(i, j, comps):
        for k, v in comps.items():
            c[i - 1][j - 1][k - 1] = v
            c[j - 1][i - 1][k - 1] = -v

    put(1, 2, {1: l1, 2: l2})
    put(1, 3, {2: l3, 4: -l1})
    put(1, 4, {1: -l3, 4: -l2})
    put(2, 3, {2: l4, 3: l1})
    put(2, 4, {1: -l4, 3: l2})
    put(3, 4, {3: l3, 4: l4})
    return c


def build_example(spec=None) -> FrameAlgebra:
    """Frame algebra of the family; symbolic parameters when none are given.

    Accepts an ExampleSpec or a plain sequence of four rationals.
    """
    if isinstance(spec, ExampleSpec):
        lambdas = spec.lambdas
    elif spec is not None:
        lambdas = tuple(spec)
    else:
        lambdas = None
    if lambdas is None:
        params = PARAM_NAMES
        lam = [Scalar.parameter(params, name) for name in params]
    else:
        if len(lambdas) != 4:
            raise ValueError("the family takes exactly four parameters")
        params = ()
        lam = [Scalar.constant((), Fraction(v)) for v in lambdas]
    c = family_structure_constants(lam, params)
    g = mat_identity(4, params)
    p = swap_product_matrix(4, params)
    return FrameAlgebra(4, params, c, g, p)


def family_parameters(fa: FrameAlgebra):
    """The four family Scalars if fa is an instance of the family, else None."""
    if fa.dim != 4:
        return None
    if fa.g != mat_identity(4, fa.params) or fa.p != swap_product_matrix(4, fa.params):
        return None
    lam = (fa.c[0][1][0], fa.c[0][1][1], fa.c[0][2][1], fa.c[1][2][1])
    if fa.c != family_structure_constants(lam, fa.params):
        return None
    return lam


def bundled_spec_path() -> Path:
    return Path(str(resources.files("rptgeo").joinpath("data/example_w3.json")))


# ---------------------------------------------------------------------------
# golden component tables


@dataclass
class GoldenTable:
    name: str
    rank: int
    symmetry: str
    params: tuple
    entries: dict  # 1-based index tuple -> Scalar, independent components

    def dense(self, dim: int = 4) -> dict:
        """All index tuples, expanded by the stated symmetry; unlisted zero."""
        canon = {}
        for idx, value in self.entries.items():
            key, sign = self._canonical(idx)
            value = value if sign > 0 else -value
            if key in canon and canon[key] != value:
                raise ValueError("golden table %s: conflicting entries at %s"
                                 % (self.name, (idx,)))
            canon[key] = value
        zero = Scalar.zero(self.params)
        out = {}
        for idx in itertools.product(range(1, dim + 1), repeat=self.rank):
            key, sign = self._canonical(idx)
            if key is None or key not in canon:
                out[idx] = zero
            else:
                out[idx] = canon[key] if sign > 0 else -canon[key]
        return out

    def _canonical(self, idx):
        if self.symmetry == "none":
            return idx, 1
        if self.symmetry == "skew":
            return _sort_signed(idx)
        if self.symmetry == "skew-last-three":
            key, sign = _sort_signed(idx[1:])
            if key is None:
                return None, 1
            return (idx[0],) + key, sign
        if self.symmetry == "pair-skew":
            i, j, k, l = idx
            if i == j or k == l:
                return None, 1
            sign = 1
            if i > j:
                i, j, sign = j, i, -sign
            if k > l:
                k, l, sign = l, k, -sign
            return (i, j, k, l), sign
        raise ValueError("unknown symmetry '%s'" % self.symmetry)


def _sort_signed(idx):
    if len(set(idx)) != len(idx):
        return None, 1
    order = sorted(range(len(idx)), key=lambda p: idx[p])
    sign = 1
    seen = [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(sorted(idx)), sign


def _load_table(path: Path) -> GoldenTable:
    data = json.loads(path.read_text(encoding="utf-8"))
    params = tuple(data["parameters"])
    entries = {}
    for key, text in data["entries"].items():
        idx = tuple(int(part) for part in key.split(","))
        entries[idx] = parse_expression(text, params)
    return GoldenTable(data["name"], data.get("rank", 0), data.get("symmetry", "none"),
                       params, entries)


def golden_tables(directory=None) -> dict:
    """Load the component tables (and expected scalars) for the family."""
    if directory is None:
        base = resources.files("rptgeo").joinpath("data/golden")
    else:
        base = Path(directory)
    tables = {}
    for name in ("torsion", "connection", "curvature", "torsion_derivative"):
        tables[name] = _load_table(Path(str(base / ("%s.json" % name))))
    scalars_data = json.loads((base / "scalars.json").read_text(encoding="utf-8"))
    params = tuple(scalars_data["parameters"])
    tables["scalars"] = {key: parse_expression(text, params)
                         for key, text in scalars_data["entries"].items()}
    return tables


# ---------------------------------------------------------------------------
# comparison of computed values against the tables


def _sub_map(fa: FrameAlgebra, golden_params: tuple, lam):
    """Scalars of a golden table rewritten into fa's parameter context."""
    if fa.params == golden_params:
        return lambda s: s
    values = dict(zip(golden_params, [v.constant_value() for v in lam]))

    def convert(s: Scalar) -> Scalar:
        return Scalar.constant(fa.params, s.substitute(values))

    return convert


def compare_tensor(name: str, computed: Tensor, table: GoldenTable,
                   convert) -> CheckReport:
    dense = table.dense(computed.dim)
    witnesses = []
    suppressed = 0
    for idx, expected in dense.items():
        expected = convert(expected)
        actual = computed[tuple(k - 1 for k in idx)]
        if actual != expected:
            if len(witnesses) < _WITNESS_CAP:
                witnesses.append(Witness(idx, expected, actual, name))
            else:
                suppressed += 1
    notes = ["%d further mismatches suppressed" % suppressed] if suppressed else []
    return CheckReport("golden-%s" % name, not witnesses, witnesses, notes)


def compare_connection(name: str, coeffs: list, table: GoldenTable,
                       convert, dim: int = 4) -> CheckReport:
    dense = table.dense(dim)
    witnesses = []
    for idx, expected in dense.items():
        expected = convert(expected)
        i, j, k = (v - 1 for v in idx)
        actual = coeffs[i][j][k]
        if actual != expected:
            witnesses.append(Witness(idx, expected, actual, name))
    return CheckReport("golden-%s" % name, not witnesses, witnesses)


def compare_scalars(computed: dict, golden: dict, convert) -> CheckReport:
    witnesses = []
    for key in sorted(golden):
        expected = convert(golden[key])
        actual = computed[key]
        if actual != expected:
            witnesses.append(Witness((), expected, actual, key))
    return CheckReport("golden-scalars", not witnesses, witnesses)
