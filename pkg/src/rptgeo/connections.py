"""Natural connections with totally skew-symmetric torsion.

Builds the unique skew-torsion natural connection on a frame in the
skew-cyclic class, together with the canonical connection and the
P-connection, the torsion 3-form, the quadratic torsion 4-form, covariant
derivatives and the exterior derivative of the torsion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frames import CheckReport, FrameAlgebra, Witness
from .geometry import (CLASS_OUTSIDE, ClassLabel, Connection,
                       classify_from_structure_tensor, fundamental_F,
                       levi_civita, nabla_p_components)
from .scalars import Scalar
from .tensors import Tensor, alternate, arranged, cyclic_sum


class NotW3Error(RuntimeError):
    """No natural connection with 3-form torsion exists on this frame."""


@dataclass
class ConnectionPack:
    frame: FrameAlgebra
    nabla: Connection
    rpt: Connection
    canonical: Connection
    p_conn: Connection
    T: Tensor
    Q: Tensor
    Q_C: Tensor
    Q_P: Tensor
    fundamental: Tensor
    label: ClassLabel

    def torsion_derivative(self) -> Tensor:
        """Covariant derivative of the torsion under the skew-torsion
        connection, derivative direction first (cached)."""
        cached = getattr(self, "_t_deriv", None)
        if cached is None:
            cached = covariant_derivative(self.frame, self.rpt, self.T)
            self._t_deriv = cached
        return cached

    def torsion_products(self) -> Tensor:
        cached = getattr(self, "_t_prod", None)
        if cached is None:
            cached = torsion_inner_products(self.T, self.frame)
            self._t_prod = cached
        return cached

    def torsion_form_square(self) -> Tensor:
        cached = getattr(self, "_t_sigma", None)
        if cached is None:
            cached = sigma_T(self.T, self.frame)
            self._t_sigma = cached
        return cached


def rpt_torsion(f: Tensor, fa: FrameAlgebra) -> Tensor:
    """Torsion 3-form of the skew-torsion natural connection, from the
    structure tensor.  Defined on any frame; naturality needs the class gate."""
    g = arranged(f, "x,y,Pz", fa.p)
    return cyclic_sum(g, (0, 1, 2)).scale(Fraction(1, 2))


def _shifted_connection(fa: FrameAlgebra, base: Connection, q: Tensor) -> Connection:
    q_up = q.raise_slot(2, fa.metric_inv)
    n = fa.dim
    coeffs = [[[base.coeffs[i][j][k] + q_up[i, j, k] for k in range(n)]
               for j in range(n)] for i in range(n)]
    return Connection(fa, coeffs)


def rpt_connection(fa: FrameAlgebra) -> ConnectionPack:
    """Build the skew-torsion natural connection plus its companions.

    Raises NotW3Error when the cyclic sum of the structure tensor is nonzero:
    outside that class no such connection exists.
    """
    cached = getattr(fa, "_rpt_pack", None)
    if cached is not None:
        return cached
    lc = levi_civita(fa)
    f = fundamental_F(fa, lc)
    label = classify_from_structure_tensor(f)
    if label.label == CLASS_OUTSIDE:
        raise NotW3Error(
            "no natural connection with totally skew-symmetric torsion exists: "
            "the cyclic sum of the structure tensor is nonzero")
    t = rpt_torsion(f, fa)
    q = t.scale(Fraction(1, 2))
    rpt = _shifted_connection(fa, lc, q)

    quarter = Fraction(-1, 4)
    q_c = (arranged(f, "y,Px,z", fa.p) - arranged(f, "Py,x,z", fa.p)
           + arranged(f, "x,Py,z", fa.p).scale(2)).scale(quarter)
    canonical = _shifted_connection(fa, lc, q_c)
    q_p = arranged(f, "x,Py,z", fa.p).scale(Fraction(-1, 2))
    p_conn = _shifted_connection(fa, lc, q_p)

    pack = ConnectionPack(fa, lc, rpt, canonical, p_conn, t, q, q_c, q_p, f, label)
    fa._rpt_pack = pack
    return pack


def natural_check(fa: FrameAlgebra, conn: Connection) -> CheckReport:
    """Whether the connection leaves both the metric and the product parallel."""
    n = fa.dim
    a = conn.coeffs
    zero = Scalar.zero(fa.params)
    witnesses = []
    np_ = nabla_p_components(fa, conn)
    for i in range(n):
        for j in range(n):
            for s in range(n):
                if not np_[i][j][s].is_zero:
                    witnesses.append(Witness((i + 1, j + 1, s + 1), zero,
                                             np_[i][j][s], "product-parallel"))
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                acc = zero
                for s in range(n):
                    acc = acc + a[i][j][s] * fa.g[s][k] + a[i][k][s] * fa.g[j][s]
                if not acc.is_zero:
                    witnesses.append(Witness((i + 1, j + 1, k + 1), zero, -acc,
                                             "metric-parallel"))
    return CheckReport("natural-connection", not witnesses, witnesses)


def torsion_inner_products(t: Tensor, fa: FrameAlgebra) -> Tensor:
    """(0,4) tensor pairing the torsion of (x,y) with the torsion of (z,w)."""
    n = fa.dim
    t_up = t.raise_slot(2, fa.metric_inv)

    def comp(idx):
        i, j, k, l = idx
        acc = Scalar.zero(fa.params)
        for a in range(n):
            x, y = t_up[i, j, a], t[k, l, a]
            if not x.is_zero and not y.is_zero:
                acc = acc + x * y
        return acc

    return Tensor.build(n, "dddd", fa.params, comp)


def sigma_T(t: Tensor, fa: FrameAlgebra) -> Tensor:
    """Quadratic torsion 4-form: cyclic sum of torsion inner products."""
    if t != alternate(t, (0, 1, 2)):
        raise ValueError("torsion must be totally skew-symmetric")
    return cyclic_sum(torsion_inner_products(t, fa), (0, 1, 2))


def covariant_derivative(fa: FrameAlgebra, conn: Connection, t: Tensor) -> Tensor:
    """Covariant derivative of a fully covariant tensor; the derivative
    direction is slot 0 of the result.  Frame components are constant, so
    only the connection terms contribute."""
    if any(v != "d" for v in t.variance):
        raise ValueError("expected a fully covariant tensor")
    n = fa.dim
    a = conn.coeffs
    rank = t.rank

    def comp(idx):
        i = idx[0]
        rest = list(idx[1:])
        acc = Scalar.zero(fa.params)
        for m in range(rank):
            jm = rest[m]
            for s in range(n):
                coef = a[i][jm][s]
                if coef.is_zero:
                    continue
                rest[m] = s
                val = t[tuple(rest)]
                rest[m] = jm
                if not val.is_zero:
                    acc = acc - coef * val
        return acc

    return Tensor.build(n, "d" * (rank + 1), fa.params, comp)


def exterior_derivative_torsion(fa: FrameAlgebra, conn: Connection,
                                t: Tensor) -> Tensor:
    """Exterior derivative of the torsion 3-form of a metric connection."""
    if t != alternate(t, (0, 1, 2)):
        raise ValueError("torsion must be totally skew-symmetric")
    if conn.torsion_tensor() != t:
        raise ValueError("connection torsion does not match the given 3-form")
    n = fa.dim
    a = conn.coeffs
    zero = Scalar.zero(fa.params)
    for i in range(n):
        for j in range(n):
            for k in range(j, n):
                acc = zero
                for s in range(n):
                    acc = acc + a[i][j][s] * fa.g[s][k] + a[i][k][s] * fa.g[j][s]
                if not acc.is_zero:
                    raise ValueError("connection is not metric")
    d = covariant_derivative(fa, conn, t)
    sigma = sigma_T(t, fa)
    return cyclic_sum(d, (0, 1, 2)) - arranged(d, "w,x,y,z") + sigma.scale(2)
