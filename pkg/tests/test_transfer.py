import itertools
import random

import pytest

from cedga.ainfty import AInfinityAlgebra, check_ainfty_relations, dualize, morphism_defect
from cedga.fields import QQ, field
from cedga.lambda_family import KnotParams, dual_algebra, standard_contraction
from cedga.transfer import (
    Contraction,
    ContractionError,
    hodge_contraction,
    transfer_products,
    verify_contraction,
    with_side_conditions,
)

from helpers import random_dga


def _all_tuples(A, n):
    return itertools.product(list(A.basis), repeat=n)


def _check_transfer(B, max_arity=4):
    c = hodge_contraction(B)
    rep = verify_contraction(c)
    if not rep.side_conditions_ok:
        c = with_side_conditions(c)
    assert verify_contraction(c).passed
    A, Fm = transfer_products(c, max_arity)
    assert check_ainfty_relations(A, range(1, max_arity + 1)).passed
    for n in range(1, max_arity + 1):
        for t in _all_tuples(A, n):
            assert not morphism_defect(Fm, A, B, t), t
    return A, Fm


@pytest.mark.parametrize("char", [0, 2, 3])
def test_hodge_transfer_on_random_duals(char):
    K = field(char)
    done = 0
    for s in range(12):
        B = dualize(random_dga(K, random.Random(s), npairs=2, ncyc=2, nwords=3))
        if len(B.basis) > 7:
            continue
        _check_transfer(B, 3)
        done += 1
    assert done >= 3


def test_minimal_model_has_no_differential():
    B = dualize(random_dga(QQ, random.Random(4)))
    A, _ = _check_transfer(B, 3)
    assert not A.products.get(1)


def _toy():
    # B: u ↦ v acyclic pair plus a cocycle h; T1(v) = -u
    K = QQ
    B = AInfinityAlgebra(K, {"u": 0, "v": 1, "h": 0})
    B.add_product(("u",), {"v": 1})
    return B


def test_contraction_report_and_errors():
    B = _toy()
    K = B.field
    good = Contraction.basis_split(B, ["h"], {"v": {"u": -1}})
    assert verify_contraction(good).passed
    bad = Contraction.basis_split(B, ["h"], {"v": {"u": 1}})
    rep = verify_contraction(bad)
    assert not rep.homotopy_ok
    with pytest.raises(ContractionError, match="homotopy"):
        transfer_products(bad)
    with pytest.raises(ContractionError):
        Contraction.basis_split(B, ["nope"], {})
    with pytest.raises(ContractionError):
        transfer_products(good, 1)


def test_side_conditions_enforced_and_repaired():
    K = QQ
    B = AInfinityAlgebra(K, {"u": 0, "v": 1, "h": 0, "w": -1})
    B.add_product(("u",), {"v": 1})
    # T1(h) = w with w closed and in A: the homotopy identity survives, T1 F1 and G1 T1 do not vanish
    c = Contraction.basis_split(B, ["h", "w"], {"v": {"u": -1}, "h": {"w": 1}})
    rep = verify_contraction(c)
    assert rep.homotopy_ok and not rep.side_conditions_ok
    assert rep.side_conditions["GT"] and rep.side_conditions["TF"]
    with pytest.raises(ContractionError, match="side conditions"):
        transfer_products(c)
    fixed = with_side_conditions(c)
    assert verify_contraction(fixed).passed
    transfer_products(fixed)


@pytest.mark.parametrize("pqrs", [(2, 2, 3, 3), (3, 3, 4, 4)])
@pytest.mark.parametrize("fld", ["Q", 2, 3])
def test_standard_contraction_is_valid(pqrs, fld):
    kp = KnotParams(*pqrs)
    B = dual_algebra(kp, fld)
    rep = verify_contraction(standard_contraction(kp, B))
    assert rep.passed, (rep.homotopy_residuals, rep.side_conditions)


def test_standard_contraction_rejects_wrong_basis():
    B = dual_algebra(KnotParams(2, 2, 3, 3))
    with pytest.raises(ContractionError):
        standard_contraction(KnotParams(3, 3, 4, 4), B)
