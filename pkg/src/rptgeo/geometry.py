"""Levi-Civita geometry of a frame algebra.

Connection coefficients A^k_ij mean: the derivative of e_j along e_i has
component A^k_ij on e_k.  Component functions of tensors are constant on the
frame (left invariance), so all directional-derivative terms vanish and the
Koszul formula reduces to bracket/metric pairings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frames import FrameAlgebra
from .scalars import Scalar
from .tensors import Tensor, arranged, cyclic_sum, mat_mul, tensor_contract

CLASS_PARALLEL = "W0"
CLASS_SKEW = "W3-strict"
CLASS_OUTSIDE = "outside-implemented-classes"


@dataclass
class Connection:
    frame: FrameAlgebra
    coeffs: list  # coeffs[i][j][k] = A^k_ij

    def torsion_tensor(self) -> Tensor:
        """Lowered torsion of the connection (antisymmetric in the first pair)."""
        fa = self.frame
        n = fa.dim
        a = self.coeffs

        def comp(idx):
            i, j, k = idx
            acc = Scalar.zero(fa.params)
            for s in range(n):
                t = a[i][j][s] - a[j][i][s] - fa.c[i][j][s]
                if not t.is_zero:
                    acc = acc + t * fa.g[s][k]
            return acc

        return Tensor.build(n, "ddd", fa.params, comp)


@dataclass
class ClassLabel:
    label: str
    f_vanishes: bool
    cyclic_f_vanishes: bool


def levi_civita(fa: FrameAlgebra) -> Connection:
    """Koszul construction; exact, torsion-free and metric by construction."""
    cached = getattr(fa, "_levi_civita", None)
    if cached is not None:
        return cached
    n = fa.dim
    ginv = fa.metric_inv
    half = Fraction(1, 2)

    def pair(i, j, k):
        # metric pairing of [e_i, e_j] with e_k
        acc = Scalar.zero(fa.params)
        for s in range(n):
            if not fa.c[i][j][s].is_zero:
                acc = acc + fa.c[i][j][s] * fa.g[s][k]
        return acc

    coeffs = []
    for i in range(n):
        row = []
        for j in range(n):
            kos = [pair(i, j, k) + pair(k, i, j) + pair(k, j, i) for k in range(n)]
            entry = []
            for m in range(n):
                acc = Scalar.zero(fa.params)
                for k in range(n):
                    if not kos[k].is_zero and not ginv[k][m].is_zero:
                        acc = acc + ginv[k][m] * kos[k]
                entry.append(acc * half)
            row.append(entry)
        coeffs.append(row)
    conn = Connection(fa, coeffs)
    fa._levi_civita = conn
    return conn


def nabla_p_components(fa: FrameAlgebra, conn: Connection) -> list:
    """Mixed components of the covariant derivative of the product structure."""
    n = fa.dim
    a = conn.coeffs
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = []
            for s in range(n):
                acc = Scalar.zero(fa.params)
                for m in range(n):
                    acc = acc + fa.p[m][j] * a[i][m][s] - a[i][j][m] * fa.p[s][m]
                entry.append(acc)
            row.append(entry)
        out.append(row)
    return out


def fundamental_F(fa: FrameAlgebra, lc: Connection) -> Tensor:
    """Lowered covariant derivative of the product structure, with its
    defining identities verified on the result."""
    cached = getattr(fa, "_fundamental", None)
    if cached is not None and lc is getattr(fa, "_levi_civita", None):
        return cached
    n = fa.dim
    np_ = nabla_p_components(fa, lc)

    def comp(idx):
        i, j, k = idx
        acc = Scalar.zero(fa.params)
        for s in range(n):
            if not np_[i][j][s].is_zero:
                acc = acc + np_[i][j][s] * fa.g[s][k]
        return acc

    f = Tensor.build(n, "ddd", fa.params, comp)
    _check_structure_identities(f, fa)
    if lc is getattr(fa, "_levi_civita", None):
        fa._fundamental = f
    return f


def _check_structure_identities(f: Tensor, fa: FrameAlgebra):
    if f != arranged(f, "x,z,y", fa.p):
        raise RuntimeError("structure tensor is not symmetric in its last slots")
    if not (f + arranged(f, "x,Py,Pz", fa.p)).is_zero:
        raise RuntimeError("structure tensor fails product antisymmetry")
    if not (arranged(f, "x,y,Pz", fa.p) + arranged(f, "x,Py,z", fa.p)).is_zero:
        raise RuntimeError("structure tensor fails mixed product identity")


def nijenhuis(fa: FrameAlgebra, lc: Connection) -> Tensor:
    """Integrability obstruction of the product structure, slots (x, y, out)."""
    n = fa.dim
    np_ = nabla_p_components(fa, lc)

    def comp(idx):
        i, j, s = idx
        acc = Scalar.zero(fa.params)
        for m in range(n):
            acc = acc + fa.p[m][j] * np_[i][m][s] - fa.p[m][i] * np_[j][m][s] \
                + fa.p[m][i] * np_[m][j][s] - fa.p[m][j] * np_[m][i][s]
        return acc

    return Tensor.build(n, "ddu", fa.params, comp)


def square_norm_nabla_P(fa: FrameAlgebra, lc: Connection) -> Scalar:
    n = fa.dim
    ginv = fa.metric_inv
    np_ = nabla_p_components(fa, lc)
    zero = Scalar.zero(fa.params)

    def contract3(source, matrix, slot):
        # contract the given slot of a cubic array against a symmetric matrix
        out = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for a in range(n):
                    v = source[i][j][a]
                    if v.is_zero:
                        continue
                    old = (i, j, a)[slot]
                    row = matrix[old]
                    for b in range(n):
                        if row[b].is_zero:
                            continue
                        pos = [i, j, a]
                        pos[slot] = b
                        out[pos[0]][pos[1]][pos[2]] = \
                            out[pos[0]][pos[1]][pos[2]] + v * row[b]
        return out

    t = contract3(np_, ginv, 0)
    t = contract3(t, ginv, 1)
    t = contract3(t, fa.g, 2)
    acc = zero
    for i in range(n):
        for j in range(n):
            for a in range(n):
                u, v = t[i][j][a], np_[i][j][a]
                if not u.is_zero and not v.is_zero:
                    acc = acc + u * v
    return acc


def curvature(fa: FrameAlgebra, conn: Connection):
    """Curvature (0,4) tensor, Ricci tensor and scalar curvature of conn."""
    cached = getattr(conn, "_curvature", None)
    if cached is not None:
        return cached
    n = fa.dim
    a = conn.coeffs
    zero = Scalar.zero(fa.params)
    # K[i] is the matrix (A^s_ij)_{j,s}
    k_mats = [[[a[i][j][s] for s in range(n)] for j in range(n)] for i in range(n)]

    comps = [zero] * n ** 4

    def store(i, j, mat):
        # lower the output slot and write both (i,j) and (j,i) blocks
        for k in range(n):
            for l in range(n):
                acc = zero
                for s in range(n):
                    if not mat[k][s].is_zero:
                        acc = acc + mat[k][s] * fa.g[s][l]
                off = ((i * n + j) * n + k) * n + l
                off_swap = ((j * n + i) * n + k) * n + l
                comps[off] = acc
                comps[off_swap] = -acc

    for i in range(n):
        for j in range(i + 1, n):
            term = mat_mul(k_mats[j], k_mats[i])
            term2 = mat_mul(k_mats[i], k_mats[j])
            mat = [[term[r][c] - term2[r][c] for c in range(n)] for r in range(n)]
            for m in range(n):
                cm = fa.c[i][j][m]
                if cm.is_zero:
                    continue
                for r in range(n):
                    for col in range(n):
                        if not k_mats[m][r][col].is_zero:
                            mat[r][col] = mat[r][col] - cm * k_mats[m][r][col]
            store(i, j, mat)

    riemann = Tensor(n, "dddd", fa.params, comps)
    ricci = tensor_contract(riemann, 0, 3, fa.metric_inv)
    tau = tensor_contract(ricci, 0, 1, fa.metric_inv)[()]
    conn._curvature = (riemann, ricci, tau)
    return conn._curvature


def classify(fa: FrameAlgebra) -> ClassLabel:
    """Class membership from the structure tensor (parallel, skew-cyclic, other)."""
    lc = levi_civita(fa)
    f = fundamental_F(fa, lc)
    return classify_from_structure_tensor(f)


def classify_from_structure_tensor(f: Tensor) -> ClassLabel:
    f_zero = f.is_zero
    cyclic_zero = cyclic_sum(f, (0, 1, 2)).is_zero
    if f_zero:
        return ClassLabel(CLASS_PARALLEL, True, True)
    if cyclic_zero:
        return ClassLabel(CLASS_SKEW, False, True)
    return ClassLabel(CLASS_OUTSIDE, False, False)


def torsion_projections(t: Tensor, fa: FrameAlgebra):
    """Split a torsion-type tensor into its four invariant components."""
    if t.variance != "ddd":
        raise ValueError("expected a (0,3) tensor")
    if not (t + arranged(t, "y,x,z")).is_zero:
        raise ValueError("tensor is not antisymmetric in its first two slots")
    p = fa.p
    e8 = Fraction(1, 8)
    e4 = Fraction(1, 4)

    def A(pattern):
        return arranged(t, pattern, p)

    p1 = (t.scale(2) - A("y,z,x") - A("z,x,y") - A("Pz,x,Py") + A("Py,z,Px")
          + A("z,Px,Py") - A("Px,Py,z").scale(2) + A("Py,Pz,x") + A("Pz,Px,y")
          - A("y,Pz,Px")).scale(e8)
    p2 = (t.scale(2) + A("y,z,x") + A("z,x,y") + A("Pz,x,Py") - A("Py,z,Px")
          - A("z,Px,Py") - A("Px,Py,z").scale(2) - A("Py,Pz,x") - A("Pz,Px,y")
          + A("y,Pz,Px")).scale(e8)
    p3 = (t + A("Px,Py,z") - A("Px,y,Pz") - A("x,Py,Pz")).scale(e4)
    p4 = (t + A("Px,Py,z") + A("Px,y,Pz") + A("x,Py,Pz")).scale(e4)
    return p1, p2, p3, p4
