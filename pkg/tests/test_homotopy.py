import pytest

from crossnorm import elements as el
from crossnorm.groupoid import identity
from crossnorm.homotopy import HomotopyError, build_homotopy, cylinder_morphism, derived_morphism
from crossnorm.morphism import identity_morphism

from conftest import simplicial_set, upsilon


def trivial_values(C, top):
    values = {p: identity(p) for p in C.objects}
    for n in range(1, top + 1):
        for x in C.basis(n):
            values[x] = el.zero(n + 1, C.target(x))
    return values


def test_trivial_homotopy_derives_f(small_case):
    C = upsilon(*small_case)
    top = C.trunc_level - 1
    H = build_homotopy(C, C, identity_morphism(C), trivial_values(C, top))
    assert H.max_dim == top
    f0 = derived_morphism(H)
    for n in range(1, top + 1):
        for x in C.basis(n):
            assert C.equal(f0(C.gen(x)), C.gen(x))


def test_psi_on_interval():
    K = simplicial_set("delta", 1, 3)
    C = upsilon("delta", 1, 3)
    values = {p: C.graph.gen(K.degen(0, p)) for p in C.objects}
    for n in (1, 2):
        for x in C.basis(n):
            v = C.gen(K.degen(0, x))
            values[x] = el.neg(v) if n % 2 else v
    H = build_homotopy(C, C, identity_morphism(C), values, 2)
    f0 = derived_morphism(H)
    # psi(01) = 01 - eps_0 d_0 (01)
    assert f0(C.gen("01")) == C.graph.gen("01") - C.graph.gen("11")
    assert H.initial_object("1") == "1"
    assert C.is_trivial(f0(C.gen("001")))
    cyl = cylinder_morphism(H)
    assert cyl.objects["0*1"] == "1"
    assert cyl.values["i*01"] == values["01"]


def test_missing_values_rejected():
    C = upsilon("delta", 1, 3)
    values = trivial_values(C, 2)
    del values["001"]
    with pytest.raises(HomotopyError, match="001"):
        build_homotopy(C, C, identity_morphism(C), values)
    values = trivial_values(C, 2)
    del values["0"]
    with pytest.raises(HomotopyError, match="object"):
        build_homotopy(C, C, identity_morphism(C), values)


def test_wrong_dimension_rejected():
    C = upsilon("delta", 1, 3)
    values = trivial_values(C, 2)
    values["01"] = C.graph.gen("01")
    with pytest.raises(HomotopyError, match="dimension 2"):
        build_homotopy(C, C, identity_morphism(C), values)


def test_max_dim_bounded_by_target():
    C = upsilon("delta", 1, 3)
    with pytest.raises(HomotopyError):
        build_homotopy(C, C, identity_morphism(C), trivial_values(C, 2), 3)


def test_initial_value_above_max_dim():
    C = upsilon("delta", 1, 3)
    H = build_homotopy(C, C, identity_morphism(C), trivial_values(C, 1), 1)
    with pytest.raises(HomotopyError):
        H.initial_value("001")
