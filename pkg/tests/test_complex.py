import pytest

from crossnorm import elements as el
from crossnorm.complex import ComplexError, FreeCrossedComplex
from crossnorm.counterexample import build as counterexample
from crossnorm.groupoid import Word, identity
from crossnorm.morphism import (
    KillError,
    MorphismError,
    build_morphism,
    compose_morphisms,
    identity_morphism,
    kill_basis,
)
from crossnorm.pi import fundamental_crossed_complex

from conftest import simplicial_set, upsilon


def test_dd_audit_on_small_cases(small_case):
    assert upsilon(*small_case).audit_dd() == []


def test_dd_audit_detects_bad_boundary():
    C = upsilon("delta", 3, 3)
    cells = C.cells()
    n, t, b = cells["0123"]
    # drop the twisted top term of the dimension-3 boundary
    cells["0123"] = (n, t, el.dim2(t, b.terms[1:]))
    broken = FreeCrossedComplex(C.objects, C.graph.edges, cells, 3)
    assert any(line.startswith("0123") for line in broken.audit_dd())


def test_crossed_module_rules():
    C = upsilon("delta", 2, 3)
    x, y = C.gen("012"), C.gen("001")
    # -y + x + y = x^{dy} after moving both to object 2
    y = C.act(y, C.graph.gen("12"))
    lhs = C.add(C.add(C.neg(y), x), y)
    assert C.equal(lhs, C.act(x, C.boundary(y)))
    # d(x^a) = -a + dx + a
    a = -C.graph.gen("12")
    assert C.boundary(C.act(x, a)) == (-a) + C.boundary(x) + a


def test_action_laws():
    C = upsilon("nerve", 2, 4)
    e = C.gen("(1,1,1)")
    a = C.graph.gen("(1)")
    assert C.equal(C.act(C.act(e, a), -a), e)
    assert C.equal(C.act(C.act(e, a), a), C.act(e, a + a))
    assert C.equal(C.act(e, identity(e.endpoint)), e)


def test_boundaries_act_trivially_in_high_dimensions():
    D = upsilon("delta", 2, 3)
    f = D.gen("0122")
    d2 = D.boundary(D.gen("012"))
    assert D.equal(D.act(f, d2), f)


def test_equal_rejects_mismatched_dimensions():
    C = upsilon("delta", 2, 3)
    with pytest.raises(ValueError):
        C.equal(C.gen("012"), C.gen("0122"))


def test_counterexample():
    ex = counterexample()
    assert ex.equal_in_R
    assert not ex.equal_in_S
    assert ex.image_collapses
    assert ex.S.strategy == "free"


def test_constructor_errors():
    with pytest.raises(ComplexError, match="twice"):
        FreeCrossedComplex(["p"], {"p": ("p", "p")}, {}, 1)
    with pytest.raises(ComplexError, match="loop"):
        FreeCrossedComplex(["p", "q"], {"e": ("p", "q")}, {"a": (2, "q", Word("p", "q", (("e", 1),)))}, 2)
    with pytest.raises(ComplexError, match="truncation"):
        FreeCrossedComplex(["p"], {}, {"a": (3, "p", el.zero(2, "p"))}, 2)


def test_kill_degenerate_generators_of_delta2():
    K = simplicial_set("delta", 2, 3)
    C = upsilon("delta", 2, 3)
    Q, p = kill_basis(C, [y for y in K.all_simplices() if K.is_degenerate(y)])
    assert [len(Q.basis(n)) for n in range(4)] == [3, 3, 1, 0]
    assert Q.audit_dd() == []
    assert Q.is_trivial(p(C.gen("0012")))
    assert Q.equal(p(C.gen("012")), Q.gen("012"))


def test_kill_rejects_bad_sets():
    C = upsilon("delta", 2, 3)
    with pytest.raises(KillError, match="loop"):
        kill_basis(C, ["01"])
    with pytest.raises(KillError, match="012"):
        kill_basis(C, ["012"])


def test_morphism_violations_listed():
    C = upsilon("delta", 1, 3)
    D = upsilon("delta", 2, 3)
    values = {g: D.gen(g) for g in C.generators()}
    f = build_morphism(C, D, values)
    assert f(C.gen("001")) == D.gen("001")
    values["01"] = D.graph.gen("02")
    with pytest.raises(MorphismError) as info:
        build_morphism(C, D, values)
    rules = {v.rule for v in info.value.violations}
    assert "tfx = ftx" in rules


def test_identity_and_composition():
    C = upsilon("delta", 2, 3)
    one = identity_morphism(C)
    for g in C.generators():
        assert C.equal(one(C.gen(g)), C.gen(g))
    two = compose_morphisms(one, one)
    assert C.equal(two(C.gen("0122")), C.gen("0122"))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_boundary_inclusion_is_a_morphism(n):
    S = fundamental_crossed_complex(simplicial_set("boundary", n, 4))
    T = upsilon("delta", n, 4)
    f = build_morphism(S, T, {g: T.gen(g) for g in S.generators()})
    assert f.max_dim == 4


def test_truncate_drops_cells():
    C = upsilon("delta", 2, 3)
    T = C.truncate(1)
    assert T.trunc_level == 1 and T.strategy == "free"
    assert C.truncate(2).basis(2) == C.basis(2)
