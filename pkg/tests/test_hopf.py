import pytest

from parcomod.field import CyclotomicField
from parcomod.catalog import (
    build_dual_group_algebra,
    build_group_algebra,
    build_kac,
    build_sweedler,
    kac_integral,
)
from parcomod.groups import build_group
from parcomod.hopf import (
    FiniteDimHopf,
    ParentMismatchError,
    dual_hopf,
    is_grouplike,
    t_apply_comult,
    t_eq,
    verify_hopf,
)

F = CyclotomicField.get(24)


@pytest.fixture(scope="module")
def kc2():
    return build_group_algebra(build_group("c2"), F)


@pytest.fixture(scope="module")
def h4():
    return build_sweedler(F)


@pytest.fixture(scope="module")
def kac():
    return build_kac(F)


def test_verify_kc2(kc2):
    assert verify_hopf(kc2).ok


def test_verify_sweedler_and_antipode(h4):
    rep = verify_hopf(h4)
    assert rep.ok, rep.failures()
    x, g, gx = h4.by_label("x"), h4.by_label("g"), h4.by_label("gx")
    assert x.antipode() == gx
    assert gx.antipode() == -x
    # defining relations
    assert x * x == h4.zero()
    assert x * g == -(g * x)
    # antipode axiom checked directly on x: mu(S (x) id)Delta(x) = eps(x) 1
    t = x.comult()
    from parcomod.hopf import t_apply_linear, t_apply_mult

    lhs = t_apply_mult(t_apply_linear(t, 0, h4.antipode), 0, h4.mult)
    assert not lhs  # eps(x) = 0


def test_verify_kac_and_relations(kac):
    rep = verify_hopf(kac)
    assert rep.ok, rep.failures()
    z = kac.by_label("z")
    x, y, xy = kac.by_label("x"), kac.by_label("y"), kac.by_label("xy")
    half = kac.field.rational(1, 2)
    assert z * z == (kac.one() + x + y - xy).scale(half)
    assert x * z == z * y
    assert y * z == z * x


def test_kac_comult_z(kac):
    z = kac.by_label("z")
    i = {lab: kac._label_index[lab] for lab in kac.labels}
    half = kac.field.rational(1, 2)
    expected = {
        (i["z"], i["z"]): half,
        (i["z"], i["xz"]): half,
        (i["yz"], i["z"]): half,
        (i["yz"], i["xz"]): -half,
    }
    assert t_eq(z.comult(), expected)


def test_kac_integral_absorbs(kac):
    t = kac_integral(kac)
    for i, b in enumerate(kac.basis()):
        assert b * t == t.scale(b.counit())
        assert t * b == t.scale(b.counit())


def test_grouplikes(kac, kc2):
    assert is_grouplike(kac.one())
    for lab in ("x", "y", "xy"):
        assert is_grouplike(kac.by_label(lab))
    assert not is_grouplike(kac.by_label("z"))
    g = kc2.by_label("g")
    assert is_grouplike(g)
    assert t_eq(g.comult(), {(1, 1): F.one()})


def test_counit_comult_compatibility_all_catalog(kc2, h4, kac):
    for H in (kc2, h4, kac):
        for b in H.basis():
            t = b.comult()
            from parcomod.hopf import t_apply_functional

            assert t_eq(t_apply_functional(t, 0, H.counit), b.tensor())
            assert t_eq(t_apply_functional(t, 1, H.counit), b.tensor())


def test_iterated_comult_bracketing(kac):
    for b in kac.basis():
        t = b.comult()
        left = t_apply_comult(t, 0, kac.comult)
        right = t_apply_comult(t, 1, kac.comult)
        assert t_eq(left, right)
        assert t_eq(left, b.iterated_comult(2))


def test_antipode_inverse_round_trip(h4, kac):
    for H in (h4, kac):
        for b in H.basis():
            assert b.antipode().antipode_inv() == b
            assert b.antipode_inv().antipode() == b


def test_dual_group_algebra_duality():
    G = build_group("s3")
    kg = build_group_algebra(G, F)
    kgd = build_dual_group_algebra(G, F)
    dd = dual_hopf(kg)
    # entrywise comparison of structure constants
    assert dd.mult == kgd.mult
    assert dd.comult == kgd.comult
    assert dd.counit == kgd.counit
    assert dd.antipode == kgd.antipode
    assert dd.unit == kgd.unit
    # p_g p_h = delta_{g,h} p_g
    pg = kgd.basis_element(1)
    ph = kgd.basis_element(2)
    assert pg * pg == pg
    assert (pg * ph).is_zero()


def test_double_dual_is_identity():
    G = build_group("s3")
    kg = build_group_algebra(G, F)
    dd = dual_hopf(dual_hopf(kg))
    assert dd.mult == kg.mult and dd.comult == kg.comult
    assert dd.antipode == kg.antipode and dd.counit == kg.counit


def test_duals_verify(kc2, h4, kac):
    for H in (kc2, h4, kac):
        assert verify_hopf(dual_hopf(H)).ok


def test_parent_mismatch(h4, kac):
    with pytest.raises(ParentMismatchError):
        h4.one() * kac.one()


def test_json_round_trip(kac, h4):
    for H in (kac, h4):
        data = H.to_json()
        H2 = FiniteDimHopf.from_json(data)
        assert H2.mult == H.mult
        assert H2.comult == H.comult
        assert H2.counit == H.counit
        assert H2.antipode == H.antipode
        assert H2.unit == H.unit
        assert H2.labels == H.labels
        assert verify_hopf(H2).ok


def test_verify_reports_witness_on_failure(kc2):
    # break associativity deliberately
    bad_mult = [[dict(kc2.mult[i][j]) for j in range(2)] for i in range(2)]
    bad_mult[1][1] = {1: F.one()}  # g*g = g
    bad = FiniteDimHopf(
        field=F,
        name="broken",
        labels=list(kc2.labels),
        unit=dict(kc2.unit),
        mult=bad_mult,
        comult=[dict(c) for c in kc2.comult],
        counit=list(kc2.counit),
        antipode=[dict(a) for a in kc2.antipode],
    )
    rep = verify_hopf(bad)
    assert not rep.ok
    assert rep.failures()[0].witness is not None
