import pytest

from cedga.dga import linear_part, verify_augmentation, verify_dga
from cedga.fields import QQ, field
from cedga.freealg import NCPoly
from cedga.lambda_family import (
    A_PART,
    KnotParams,
    ParityError,
    a0_transformation,
    build_ce_dga,
    canonical_augmentation,
    classical_invariants,
    compare_differentials,
    dual_algebra,
    generator_count,
    generators,
    normalized_dga,
    printed_twisted_differential,
    standard_contraction,
    twisted_dga,
)

FAMILY = [(2, 2, 3, 3), (3, 3, 4, 4), (4, 4, 5, 5), (2, 2, 5, 3)]


@pytest.mark.parametrize("bad", [(2, 3, 3, 3), (2, 2, 2, 3), (1, 1, 2, 2), (3, 3, 3, 4)])
def test_parity_and_range(bad):
    with pytest.raises(ParityError):
        KnotParams(*bad)


def test_generator_count():
    kp = KnotParams(2, 2, 3, 3)
    assert generator_count(kp) == 35
    assert len(generators(kp)) == 35
    for pqrs in FAMILY:
        kp = KnotParams(*pqrs)
        assert len(generators(kp)) == generator_count(kp)


def test_classical_invariants():
    ci = classical_invariants(KnotParams(2, 2, 3, 3))
    assert (ci.rotation, ci.thurston_bennequin, ci.slice_genus) == (0, 5, 3)


@pytest.mark.parametrize("pqrs", FAMILY)
@pytest.mark.parametrize("fld", ["Q", 2, 3])
def test_dga_and_augmentation(pqrs, fld):
    kp = KnotParams(*pqrs)
    d = build_ce_dga(kp, fld)
    assert verify_dga(d).passed
    assert verify_augmentation(d, canonical_augmentation(kp, fld)).passed
    assert verify_dga(twisted_dga(kp, fld)).passed
    assert verify_dga(normalized_dga(kp, fld)).passed


def test_dz0_differential():
    kp = KnotParams(2, 2, 3, 3)
    d = build_ce_dga(kp)
    W = lambda *n: NCPoly.word(QQ, *n)
    want = NCPoly.const(QQ) + W("z0") + W("b4", "b1") + W("b5", "b2") + W("z0", "b6", "b3") + W("b4", "b1", "b5", "b2")
    assert d["az0"] == want
    assert d["a0"] == NCPoly.const(QQ) - W("w3", "z3", "y2", "x2")
    assert d["ax2"] == NCPoly.const(QQ) - W("x1", "x2")


@pytest.mark.parametrize("pqrs", FAMILY)
@pytest.mark.parametrize("fld", ["Q", 2, 3])
def test_twist_matches_printed_table(pqrs, fld):
    kp = KnotParams(*pqrs)
    dev = compare_differentials(twisted_dga(kp, fld).differential, printed_twisted_differential(kp, fld))
    assert dev == []


def test_twist_would_differ_with_zs_reading():
    # the printed a0 line has z_s x_p in one term; read literally (r ≠ s) it is not the twist
    kp = KnotParams(2, 2, 5, 3)
    tw = twisted_dga(kp)
    assert tw["a0"].coeff(("z5", "x2")) == -1
    assert tw["a0"].coeff(("z3", "x2")) == 0


def test_a0_transformation_inverse():
    for pqrs in FAMILY:
        kp = KnotParams(*pqrs)
        for fld in ("Q", 3):
            fwd, inv = a0_transformation(kp, fld)
            K = field(fld)
            a0 = NCPoly.gen(K, "a0")
            assert fwd(inv(a0)) == a0 and inv(fwd(a0)) == a0


def test_a0_transformation_is_not_an_involution_over_q():
    kp = KnotParams(2, 2, 3, 3)
    fwd, _ = a0_transformation(kp, "Q")
    a0 = NCPoly.gen(QQ, "a0")
    assert fwd(fwd(a0)) != a0
    fwd2, _ = a0_transformation(kp, 2)
    a0_2 = NCPoly.gen(field(2), "a0")
    assert fwd2(fwd2(a0_2)) == a0_2


@pytest.mark.parametrize("pqrs", FAMILY)
@pytest.mark.parametrize("fld", ["Q", 2])
def test_normalized_linear_part(pqrs, fld):
    kp = KnotParams(*pqrs)
    d = normalized_dga(kp, fld)
    K = d.field
    lin = {g: d[g].part(1) for g in d.names}
    for g in A_PART:
        assert not lin[g], g
    for c in "xyzw":
        assert lin[f"a{c}0"] == NCPoly.gen(K, f"{c}0")
        for i in range(1, kp.length(c) + 1):
            assert lin[f"a{c}{i}"] == NCPoly.gen(K, f"{c}{i-1}") + NCPoly.gen(K, f"{c}{i}")
    assert linear_part(d).composes_to_zero()


@pytest.mark.parametrize("pqrs", FAMILY)
def test_dual_gradings(pqrs):
    kp = KnotParams(*pqrs)
    p, q, r, s = pqrs
    B = dual_algebra(kp)
    deg = B.basis
    assert deg["a0"] == 2 and deg["ax1"] == 2 and deg["z0"] == 1
    assert deg["b1"] == -deg["b4"] + 2 == p - r + 2
    assert deg["b2"] == -deg["b5"] + 2 == q - r + 2
    assert deg["b3"] == -deg["b6"] + 2 == r - s + 1


@pytest.mark.parametrize("fld", ["Q", 3])
def test_dual_mu1(fld):
    kp = KnotParams(3, 3, 4, 4)
    B = dual_algebra(kp, fld)
    K = B.field
    for c in "xyzw":
        n = kp.length(c)
        for i in range(n):
            assert B.mu(f"{c}{i}") == {f"a{c}{i}": K.one, f"a{c}{i+1}": K.one}
        assert B.mu(f"{c}{n}") == {f"a{c}{n}": K.one}
    for g in A_PART:
        assert B.mu(g) == {}


def test_standard_homotopy_values():
    kp = KnotParams(3, 3, 4, 4)
    B = dual_algebra(kp)
    c = standard_contraction(kp, B)
    assert c.T({"ax2": 1}) == {"x2": -1, "x3": 1}
    assert c.T({"az0": 1}) == {"z0": -1, "z1": 1, "z2": -1, "z3": 1, "z4": -1}
    assert c.T({"x1": 1}) == {}
