import random

import pytest

from modinvar.gfq import build_field
from modinvar.analysis import (HilbertClaim, VerificationReport,
                               degree_product_check, hilbert_check,
                               identity_suite, invariant_dimension,
                               is_invariant, principal_transfer_check,
                               transfer, transfer_factorization_check,
                               transfer_image_basis, transfer_image_degree)
from modinvar.gluing import full_hom_module, glue, zero_module
from modinvar.groups import (gl_group, p_k_subgroup, trivial_group,
                             unipotent_upper)
from modinvar.invariants import dickson_in, family, xi
from modinvar.mvpoly import gluing_space, symplectic_space, monomials_of_degree

F2 = build_field(2)
F3 = build_field(3)


def _u2_gluing(field):
    return glue(unipotent_upper(2, field), unipotent_upper(2, field),
                full_hom_module(2, 2, field))


def test_transfer_trivial_group():
    sp = gluing_space(F2, 1, 1)
    f = sp.variable("y1") ** 2 + sp.variable("x1")
    assert transfer(f, trivial_group(F2, 2)) == f


def test_transfer_of_constant_vanishes_for_p_group():
    gl = _u2_gluing(F2)
    msub = gl.m_subgroup()
    sp = gluing_space(F2, 2, 2)
    assert transfer(sp.one(), msub).is_zero()


def test_transfer_1x1_example():
    gl = glue(trivial_group(F2, 1), trivial_group(F2, 1),
              full_hom_module(1, 1, F2))
    sp = gluing_space(F2, 1, 1)
    y1, x1 = sp.variables()
    tr = transfer(y1, gl.m_subgroup())
    assert tr == x1  # (y1) + (y1 + x1)
    assert x1.divides(tr)


def test_transfer_equivariance_and_linearity():
    gl = _u2_gluing(F2)
    msub = gl.m_subgroup()
    sp = gluing_space(F2, 2, 2)
    rng = random.Random(5)
    for _ in range(6):
        e = tuple(rng.randrange(3) for _ in range(4))
        f = sp.monomial(e)
        tf = transfer(f, msub)
        assert is_invariant(tf, msub)
        g = rng.choice(msub.elements)
        assert transfer(f.act(g), msub) == tf


def test_transfer_factorization_trivial_and_random():
    gl = _u2_gluing(F2)
    sp = gluing_space(F2, 2, 2)
    rep = transfer_factorization_check(sp.one(), gl)
    assert rep.passed
    rng = random.Random(11)
    for _ in range(5):
        e = tuple(rng.randrange(3) for _ in range(4))
        assert transfer_factorization_check(sp.monomial(e), gl).passed


def test_transfer_product_splits_over_factors():
    """Tr over the block product group sends f(y) h(x) to the product of the
    factor transfers."""
    gl = _u2_gluing(F2)
    factors = gl.factor_subgroup().enumerate()
    sp = gluing_space(F2, 2, 2)
    y1, y2, x1, x2 = (sp.variable(v) for v in ("y1", "y2", "x1", "x2"))
    g1_block = glue(unipotent_upper(2, F2), trivial_group(F2, 2),
                    zero_module(2, 2, F2)).realized.enumerate()
    g2_block = glue(trivial_group(F2, 2), unipotent_upper(2, F2),
                    zero_module(2, 2, F2)).realized.enumerate()
    for f, h in [(y1 * y2, x1), (y1 ** 2, x1 * x2), (y2 ** 3, x2 ** 2)]:
        lhs = transfer(f * h, factors)
        rhs = transfer(f, g1_block) * transfer(h, g2_block)
        assert lhs == rhs


def test_transfer_factorization_zero_module():
    gl = glue(unipotent_upper(2, F2), unipotent_upper(2, F2),
              zero_module(2, 2, F2))
    sp = gluing_space(F2, 2, 2)
    assert transfer_factorization_check(sp.variable("y1") * sp.variable("x1"),
                                        gl).passed


def test_transfer_image_fast_path_matches_general():
    for field in (F2, F3):
        gl = _u2_gluing(field)
        msub = gl.m_subgroup()
        sp = gluing_space(field, 2, 2)
        for d in range(0, 6):
            fast, _ = transfer_image_degree(msub, sp, d, m_split=2)
            slow, _ = transfer_image_degree(msub, sp, d, m_split=None)
            assert [f._terms for f in fast] == [s._terms for s in slow]


def test_transfer_image_divisibility_and_attainment():
    gl = _u2_gluing(F2)
    msub = gl.m_subgroup()
    sp = gluing_space(F2, 2, 2)
    tau = dickson_in(sp, ["x1", "x2"], 2) ** 2
    image = transfer_image_basis(msub, sp, 8, m_split=2)
    rep = principal_transfer_check(image, tau, group=msub, space=sp, m_split=2)
    assert rep.passed
    # image is zero strictly below the tau degree
    assert all(not image.bases[d] for d in range(tau.degree()))


def test_principal_check_wrong_tau_fails():
    gl = _u2_gluing(F2)
    msub = gl.m_subgroup()
    sp = gluing_space(F2, 2, 2)
    wrong = dickson_in(sp, ["x1", "x2"], 2)  # no square
    image = transfer_image_basis(msub, sp, 8, m_split=2)
    rep = principal_transfer_check(image, wrong, group=msub, space=sp, m_split=2)
    assert rep.status == "fail"
    assert rep.witness


def test_invariant_dimension_degree_zero_and_trivial():
    T = trivial_group(F2, 4)
    sp = gluing_space(F2, 2, 2)
    assert invariant_dimension(T, 0, sp) == 1
    assert invariant_dimension(T, 3, sp) == len(monomials_of_degree(sp, 3))


def test_invariant_dimension_p2_degree1():
    P2 = p_k_subgroup(2, 2, F2)
    sp = symplectic_space(F2, 2)
    assert invariant_dimension(P2, 1, sp) == 2  # span of x1, x2


def test_invariant_dimension_gl2():
    # degree of first Dickson invariant is q^2 - q; below it only constants
    G = gl_group(2, F3)
    assert invariant_dimension(G, 1) == 0
    assert invariant_dimension(G, 6) == 1  # d_{1,2} in degree q^2 - q = 6


def test_hilbert_series_values():
    claim = HilbertClaim([1, 1])
    assert claim.series(4) == [1, 2, 3, 4, 5]
    ci = HilbertClaim([1, 1, 3, 4, 4], [6])
    assert ci.series(6)[:4] == [1, 2, 3, 5]
    assert HilbertClaim([2], [3]).consistent(5) == 3
    assert HilbertClaim([1, 2], [2]).consistent(8) is None


def test_hilbert_check_trivial_free_claim():
    T = trivial_group(F2, 2)
    rep = hilbert_check(HilbertClaim([1, 1]), T, 6)
    assert rep.passed


def test_hilbert_check_p2_true_and_perturbed():
    P2 = p_k_subgroup(2, 2, F2)
    sp = symplectic_space(F2, 2)
    good = hilbert_check(HilbertClaim([1, 1, 3, 4, 4], [6]), P2, 10, sp)
    assert good.passed
    bad = hilbert_check(HilbertClaim([1, 1, 3, 4], [6]), P2, 10, sp)
    assert bad.status == "fail" and "degree" in bad.witness


def test_degree_product_check():
    fam = family("fqexam", m=1, n=2, q=2)
    assert degree_product_check(fam).passed
    with pytest.raises(ValueError):
        degree_product_check(family("eapg", m=1, q=2))


def test_identity_suite_errors():
    with pytest.raises(ValueError):
        identity_suite("nope", {})
    with pytest.raises(ValueError):
        identity_suite("u_lem", {"m": 1})


def test_report_requires_witness_on_fail():
    with pytest.raises(ValueError):
        VerificationReport("x", {}, "fail")


def test_identity_spot_checks():
    assert identity_suite("u_lem", dict(m=1, k=1, i=0, j=0, q=2)).passed
    assert identity_suite("ck_sp4", dict(q=2)).passed
    assert identity_suite("wilkerson_d33", dict(p=2)).passed
    assert identity_suite("wilkerson_d33", dict(p=3)).passed
    assert identity_suite("xi31_gl1", dict(m=1, q=3)).passed
    assert identity_suite("utilde_rewrite", dict(m=1, q=2, j=1)).passed
    assert identity_suite("dickson_routes", dict(n=1, q=5)).passed


def test_identity_nk_expansion_notes_for_extension_field():
    rep = identity_suite("nk_expansion", dict(k=1, m=1, q=4))
    assert rep.passed
    assert rep.notes and "q-power" in rep.notes


def test_xi_stabilizer_cross_check():
    """is_invariant agrees with the enumerated stabilizer computation."""
    G = gl_group(2, F3).enumerate()
    f = xi(1, 3, 1)
    fixed = [g for g in G.elements if f.act(g) == f]
    assert len(fixed) == 24
    assert is_invariant(f, trivial_group(F3, 2))
