"""Levi-Civita layer: connection, structure tensor, curvature, classification."""

from fractions import Fraction

import pytest

from rptgeo import (CLASS_OUTSIDE, CLASS_PARALLEL, CLASS_SKEW, FrameAlgebra,
                    Scalar, Tensor, build_example, classify, curvature,
                    cyclic_sum, fundamental_F, levi_civita, mat_identity,
                    nijenhuis, parse_expression, rpt_connection,
                    square_norm_nabla_P, torsion_projections, validate)

from helpers import (basis_vec, inner, koszul_killing_oracle,
                     nabla_p_killing_oracle, projection_oracle, random_frames,
                     single_bracket_frame)

SYM = build_example()
LC = levi_civita(SYM)


def S(text):
    return parse_expression(text, SYM.params)


def test_abelian_connection_vanishes():
    fa = build_example((0, 0, 0, 0))
    lc = levi_civita(fa)
    assert all(s.is_zero for row in lc.coeffs for cell in row for s in cell)


def test_connection_value_from_shortcut_oracle():
    # the bracket shortcut is valid under the Killing condition
    assert [str(s) for s in LC.coeffs[0][0]] == ["0", "-l1", "0", "l3"]
    for i in range(4):
        for j in range(4):
            assert LC.coeffs[i][j] == koszul_killing_oracle(SYM, i, j)


def test_koszul_invariants_on_random_frames():
    for fa in random_frames(8):
        lc = levi_civita(fa)
        assert lc.torsion_tensor().is_zero
        n = fa.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = inner(fa, lc.coeffs[i][j], basis_vec(fa, k)) \
                        + inner(fa, basis_vec(fa, j), lc.coeffs[i][k])
                    assert lhs.is_zero


def test_singular_metric_raises():
    fa = build_example((1, 2, 3, 4))
    g = [[s for s in row] for row in fa.g]
    g[0][0] = Scalar.zero(())
    g[1][1] = Scalar.zero(())
    bad = FrameAlgebra(4, (), fa.c, g, fa.p)
    bad.g[0][1] = Scalar.zero(())
    with pytest.raises(ValueError):
        levi_civita(bad)


def test_structure_tensor_value_and_oracle():
    f = fundamental_F(SYM, LC)
    assert f[0, 0, 1] == S("-1/2*l3")
    for i in range(4):
        for j in range(4):
            vec = nabla_p_killing_oracle(SYM, i, j)
            for k in range(4):
                assert f[i, j, k] == inner(SYM, vec, basis_vec(SYM, k))


def test_structure_tensor_identities_on_random_frames():
    for fa in random_frames(6):
        lc = levi_civita(fa)
        f = fundamental_F(fa, lc)  # raises internally if identities fail
        n = fa.dim
        p = fa.p
        for idx in f.indices():
            i, j, k = idx
            assert f[i, j, k] == f[i, k, j]


def test_structure_tensor_product_antisymmetry_componentwise():
    f = fundamental_F(SYM, LC)
    # F(x, y, z) + F(x, Py, Pz) = 0, using that the product swaps pairs
    swap = lambda a: (a + 2) % 4
    for idx in f.indices():
        i, j, k = idx
        assert (f[i, j, k] + f[i, swap(j), swap(k)]).is_zero


def test_abelian_structure_tensor_vanishes():
    fa = build_example((0, 0, 0, 0))
    assert fundamental_F(fa, levi_civita(fa)).is_zero


def test_nijenhuis_nonzero_generic_zero_abelian():
    n_sym = nijenhuis(SYM, LC)
    assert not n_sym.is_zero
    fa0 = build_example((0, 0, 0, 0))
    assert nijenhuis(fa0, levi_civita(fa0)).is_zero
    # antisymmetry in the first two slots
    assert (n_sym + n_sym.transpose((1, 0, 2))).is_zero
    for i in range(4):
        for s in range(4):
            assert n_sym[i, i, s].is_zero


def test_square_norm_values():
    assert square_norm_nabla_P(SYM, LC) == S("4*(l1^2 + l2^2 + l3^2 + l4^2)")
    fa = build_example((1, 2, 3, 4))
    assert square_norm_nabla_P(fa, levi_civita(fa)).constant_value() == 120
    fa0 = build_example((0, 0, 0, 0))
    assert square_norm_nabla_P(fa0, levi_civita(fa0)).is_zero


def test_curvature_scalar_and_bianchi():
    riem, ricci, tau = curvature(SYM, LC)
    assert tau == S("-5/2*(l1^2 + l2^2 + l3^2 + l4^2)")
    assert cyclic_sum(riem, (0, 1, 2)).is_zero
    fa0 = build_example((0, 0, 0, 0))
    r0, _, tau0 = curvature(fa0, levi_civita(fa0))
    assert r0.is_zero and tau0.is_zero


def test_curvature_antisymmetries_metric_connection():
    riem, _, _ = curvature(SYM, LC)
    assert (riem + riem.transpose((1, 0, 2, 3))).is_zero
    assert (riem + riem.transpose((0, 1, 3, 2))).is_zero


def test_first_bianchi_on_random_frames():
    for fa in random_frames(6):
        riem, _, _ = curvature(fa, levi_civita(fa))
        assert cyclic_sum(riem, (0, 1, 2)).is_zero


def test_classify_example_and_degenerations():
    assert classify(SYM).label == CLASS_SKEW
    assert classify(build_example((0, 0, 0, 0))).label == CLASS_PARALLEL
    assert classify(build_example((1, 0, 0, 0))).label == CLASS_SKEW


def test_classify_single_bracket_against_oracle():
    fa = single_bracket_frame()
    assert validate(fa).passed
    label = classify(fa)
    # oracle: direct cyclic-sum evaluation of the structure tensor
    f = fundamental_F(fa, levi_civita(fa))
    cyc_zero = all(
        (f[i, j, k] + f[j, k, i] + f[k, i, j]).is_zero
        for i in range(4) for j in range(4) for k in range(4))
    f_zero = f.is_zero
    expect = CLASS_PARALLEL if f_zero else (CLASS_SKEW if cyc_zero else CLASS_OUTSIDE)
    assert label.label == expect == CLASS_OUTSIDE


def test_projections_sum_and_orthogonality():
    pack = rpt_connection(SYM)
    p1, p2, p3, p4 = torsion_projections(pack.T, SYM)
    assert p1.is_zero and p4.is_zero
    assert (p1 + p2 + p3 + p4) == pack.T
    # re-projecting: each projector is idempotent, mixed projections vanish
    projections = (p1, p2, p3, p4)
    for a, pa in enumerate(projections):
        again = torsion_projections(pa, SYM)
        for b, pb in enumerate(again):
            if a == b:
                assert pb == pa
            else:
                assert pb.is_zero


def test_projection_oracle_agreement():
    pack = rpt_connection(SYM)
    got = torsion_projections(pack.T, SYM)
    want = projection_oracle(pack.T, SYM)
    for a, b in zip(got, want):
        assert a == b


def test_projection_completeness_on_general_antisymmetric_input():
    import random
    rng = random.Random(3)
    comps = []
    params = SYM.params
    for i in range(4):
        for j in range(4):
            for k in range(4):
                comps.append(Scalar.constant(params, rng.randint(-3, 3)))
    raw = Tensor(4, "ddd", params, comps)
    t = raw - raw.transpose((1, 0, 2))  # antisymmetric in first two slots only
    p1, p2, p3, p4 = torsion_projections(t, SYM)
    assert (p1 + p2 + p3 + p4) == t


def test_projections_zero_torsion():
    z = Tensor.zeros(4, "ddd", SYM.params)
    assert all(p.is_zero for p in torsion_projections(z, SYM))


def test_projections_reject_nonantisymmetric():
    t = Tensor.build(4, "ddd", SYM.params,
                     lambda idx: Scalar.constant(SYM.params, 1))
    with pytest.raises(ValueError, match="antisymmetric"):
        torsion_projections(t, SYM)
