"""Shared test utilities: independent oracles and random valid frames.

Oracles here work straight from structure constants with plain loops, so
they stay independent of the geometry code paths they are used to check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from rptgeo import (FrameAlgebra, Scalar, Tensor, build_example, mat_identity,
                    mat_inv, mat_mul, mat_transpose)

# ---------------------------------------------------------------------------
# vector/bracket arithmetic on component lists


def vec_zero(fa):
    return [Scalar.zero(fa.params) for _ in range(fa.dim)]


def basis_vec(fa, i):
    v = vec_zero(fa)
    v[i] = Scalar.one(fa.params)
    return v


def bracket_vec(fa, u, v):
    out = vec_zero(fa)
    for i in range(fa.dim):
        if u[i].is_zero:
            continue
        for j in range(fa.dim):
            if v[j].is_zero:
                continue
            for k in range(fa.dim):
                out[k] = out[k] + u[i] * v[j] * fa.c[i][j][k]
    return out


def apply_p(fa, v):
    return [sum((fa.p[i][j] * v[j] for j in range(fa.dim)),
                Scalar.zero(fa.params)) for i in range(fa.dim)]


def inner(fa, u, v):
    acc = Scalar.zero(fa.params)
    for i in range(fa.dim):
        for j in range(fa.dim):
            acc = acc + u[i] * fa.g[i][j] * v[j]
    return acc


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(u, c):
    return [c * a for a in u]


# ---------------------------------------------------------------------------
# oracles


def jacobi_oracle(fa):
    """Triple-loop Jacobi residuals; list of (i, j, m) with nonzero residual."""
    bad = []
    for i in range(fa.dim):
        for j in range(fa.dim):
            for m in range(fa.dim):
                lhs = bracket_vec(fa, fa.c[i][j], basis_vec(fa, m))
                lhs = vec_add(lhs, bracket_vec(fa, fa.c[j][m], basis_vec(fa, i)))
                lhs = vec_add(lhs, bracket_vec(fa, fa.c[m][i], basis_vec(fa, j)))
                if any(not x.is_zero for x in lhs):
                    bad.append((i, j, m))
    return bad


def killing_oracle(fa):
    """Direct evaluation of the Killing pairing at every index triple."""
    bad = []
    for i in range(fa.dim):
        for j in range(fa.dim):
            for k in range(fa.dim):
                val = inner(fa, fa.c[i][j], apply_p(fa, basis_vec(fa, k))) \
                    + inner(fa, fa.c[i][k], apply_p(fa, basis_vec(fa, j)))
                if not val.is_zero:
                    bad.append((i, j, k))
    return bad


def koszul_killing_oracle(fa, i, j):
    """Connection value from the bracket shortcut valid under the Killing
    condition: twice the derivative is [x,y] + P[x,Py] - P[Px,y]."""
    ei, ej = basis_vec(fa, i), basis_vec(fa, j)
    total = bracket_vec(fa, ei, ej)
    total = vec_add(total, apply_p(fa, bracket_vec(fa, ei, apply_p(fa, ej))))
    total = vec_sub(total, apply_p(fa, bracket_vec(fa, apply_p(fa, ei), ej)))
    return vec_scale(total, Scalar.constant(fa.params, Fraction(1, 2)))


def nabla_p_killing_oracle(fa, i, j):
    """(nabla_i P) applied to e_j from the bracket shortcut: twice the value
    is [Px,y] - P[Px,Py]."""
    pei = apply_p(fa, basis_vec(fa, i))
    ej = basis_vec(fa, j)
    total = vec_sub(bracket_vec(fa, pei, ej),
                    apply_p(fa, bracket_vec(fa, pei, apply_p(fa, ej))))
    return vec_scale(total, Scalar.constant(fa.params, Fraction(1, 2)))


def cyclic_sum_oracle(t: Tensor, slots):
    """Brute-force cyclic sum by explicit index rewriting."""
    s1, s2, s3 = slots
    out = []
    for idx in t.indices():
        idx2 = list(idx)
        idx2[s1], idx2[s2], idx2[s3] = idx[s2], idx[s3], idx[s1]
        idx3 = list(idx)
        idx3[s1], idx3[s2], idx3[s3] = idx[s3], idx[s1], idx[s2]
        out.append(t[idx] + t[tuple(idx2)] + t[tuple(idx3)])
    return Tensor(t.dim, t.variance, t.params, out)


_PERMS3 = [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
           ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]


def projection_oracle(t: Tensor, fa):
    """Independent transcription of the four torsion projections, computed
    entry by entry with explicit argument substitution."""
    n = fa.dim
    params = fa.params

    def tv(u, v, w):
        acc = Scalar.zero(params)
        for a in range(n):
            if u[a].is_zero:
                continue
            for b in range(n):
                if v[b].is_zero:
                    continue
                for c in range(n):
                    if not w[c].is_zero:
                        acc = acc + u[a] * v[b] * w[c] * t[a, b, c]
        return acc

    eighth = Scalar.constant(params, Fraction(1, 8))
    quarter = Scalar.constant(params, Fraction(1, 4))
    comps = [[], [], [], []]
    for idx in Tensor.zeros(n, "ddd", params).indices():
        x, y, z = (basis_vec(fa, k) for k in idx)
        px, py, pz = apply_p(fa, x), apply_p(fa, y), apply_p(fa, z)
        two = Scalar.constant(params, 2)
        p1 = eighth * (two * tv(x, y, z) - tv(y, z, x) - tv(z, x, y)
                       - tv(pz, x, py) + tv(py, z, px) + tv(z, px, py)
                       - two * tv(px, py, z) + tv(py, pz, x) + tv(pz, px, y)
                       - tv(y, pz, px))
        p2 = eighth * (two * tv(x, y, z) + tv(y, z, x) + tv(z, x, y)
                       + tv(pz, x, py) - tv(py, z, px) - tv(z, px, py)
                       - two * tv(px, py, z) - tv(py, pz, x) - tv(pz, px, y)
                       + tv(y, pz, px))
        p3 = quarter * (tv(x, y, z) + tv(px, py, z) - tv(px, y, pz)
                        - tv(x, py, pz))
        p4 = quarter * (tv(x, y, z) + tv(px, py, z) + tv(px, y, pz)
                        + tv(x, py, pz))
        for pos, val in enumerate((p1, p2, p3, p4)):
            comps[pos].append(val)
    return tuple(Tensor(n, "ddd", params, comps[pos]) for pos in range(4))


# ---------------------------------------------------------------------------
# random valid frames (Jacobi-satisfying by construction)


def conjugate(fa: FrameAlgebra, s: list) -> FrameAlgebra:
    """Change of basis by an invertible matrix whose columns are the new
    basis vectors; preserves Jacobi, compatibility and class membership."""
    n = fa.dim
    s_inv = mat_inv(s)
    g2 = mat_mul(mat_transpose(s), mat_mul(fa.g, s))
    p2 = mat_mul(s_inv, mat_mul(fa.p, s))
    zero = Scalar.zero(fa.params)
    c2 = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            new_i = [s[a][i] for a in range(n)]
            new_j = [s[a][j] for a in range(n)]
            br = bracket_vec(fa, new_i, new_j)
            comps = [sum((s_inv[k][m] * br[m] for m in range(n)), zero)
                     for k in range(n)]
            for k in range(n):
                c2[i][j][k] = comps[k]
                c2[j][i][k] = -comps[k]
    return FrameAlgebra(n, fa.params, c2, g2, p2)


def direct_sum(fa1: FrameAlgebra, fa2: FrameAlgebra) -> FrameAlgebra:
    if fa1.params != fa2.params:
        raise ValueError("direct sum needs a common parameter context")
    n1, n2 = fa1.dim, fa2.dim
    n = n1 + n2
    params = fa1.params
    zero = Scalar.zero(params)
    c = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
    g = [[zero for _ in range(n)] for _ in range(n)]
    p = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            g[i][j] = fa1.g[i][j]
            p[i][j] = fa1.p[i][j]
            for k in range(n1):
                c[i][j][k] = fa1.c[i][j][k]
    for i in range(n2):
        for j in range(n2):
            g[n1 + i][n1 + j] = fa2.g[i][j]
            p[n1 + i][n1 + j] = fa2.p[i][j]
            for k in range(n2):
                c[n1 + i][n1 + j][n1 + k] = fa2.c[i][j][k]
    return FrameAlgebra(n, params, c, g, p)


def random_unimodular(rng: random.Random, dim: int, params: tuple) -> list:
    """Product of unit triangular matrices: always invertible, small entries."""
    lower = mat_identity(dim, params)
    upper = mat_identity(dim, params)
    for i in range(dim):
        for j in range(dim):
            if i > j and rng.random() < 0.4:
                lower[i][j] = Scalar.constant(params, rng.choice((-1, 1)))
            if i < j and rng.random() < 0.4:
                upper[i][j] = Scalar.constant(params, rng.choice((-1, 1)))
    return mat_mul(lower, upper)


def random_lambdas(rng: random.Random):
    return tuple(Fraction(rng.randint(-3, 3), rng.choice((1, 2, 3)))
                 for _ in range(4))


def symbolic_metric_frame() -> FrameAlgebra:
    """Family instance conjugated by a parametric matrix: the metric inverse
    has genuine polynomial denominators, exercising the rational core."""
    from rptgeo.example import family_structure_constants, swap_product_matrix
    params5 = ("l1", "l2", "l3", "l4", "a")
    lam = [Scalar.parameter(params5, n) for n in ("l1", "l2", "l3", "l4")]
    fa_sym = FrameAlgebra(4, params5,
                          family_structure_constants(lam, params5),
                          mat_identity(4, params5),
                          swap_product_matrix(4, params5))
    shear = mat_identity(4, params5)
    a = Scalar.parameter(params5, "a")
    shear[0][0] = Scalar.one(params5) + a
    shear[0][1] = a
    return conjugate(fa_sym, shear)


def random_frames(count: int = 20, seed: int = 1404):
    """Deterministic battery of valid frames: conjugated family instances,
    direct sums, one parametric-metric conjugate and one parallel (W0) frame."""
    rng = random.Random(seed)
    frames = [symbolic_metric_frame(), build_example((0, 0, 0, 0))]
    # fixed kind mix keeps the runtime predictable: mostly 4-dim conjugates,
    # a few 8-dim block sums, two dense 8-dim conjugates
    kinds = ["plain", "plain"] + ["conj4"] * 10 + ["sum8"] * 4 + ["conj8"] * 2
    for kind in kinds[:max(0, count - len(frames))]:
        base = build_example(random_lambdas(rng))
        if kind == "plain":
            fa = base
        elif kind == "conj4":
            fa = conjugate(base, random_unimodular(rng, 4, ()))
        elif kind == "sum8":
            fa = direct_sum(base, build_example(random_lambdas(rng)))
        else:
            fa = conjugate(direct_sum(base, build_example(random_lambdas(rng))),
                           random_unimodular(rng, 8, ()))
        frames.append(fa)
    return frames


def single_bracket_frame() -> FrameAlgebra:
    """Valid frame outside the skew-cyclic class: one bracket, identity
    metric, block-swap product."""
    from rptgeo.example import swap_product_matrix
    zero, one = Scalar.zero(()), Scalar.one(())
    c = [[[zero for _ in range(4)] for _ in range(4)] for _ in range(4)]
    c[0][1][2] = one
    c[1][0][2] = -one
    return FrameAlgebra(4, (), c, mat_identity(4, ()), swap_product_matrix(4, ()))
