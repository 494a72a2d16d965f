import pytest

from crossnorm.normalization import (
    NormalizationError,
    degeneracy_generators,
    e0_generators,
    epsilon_extension,
    full_normalize,
    normalized_complex,
    phi_closed_form,
    verify_normalization,
    zero_normalize,
)
from crossnorm.simplicial import standard_simplex

from conftest import simplicial_set, upsilon


def test_zero_normalization_checks(small_case):
    Z = zero_normalize(simplicial_set(*small_case), upsilon(*small_case))
    assert all(c.ok for c in Z.checks), [str(c) for c in Z.checks if not c.ok]
    names = [c.name for c in Z.checks]
    assert "psi closed form" in names and "p0 psi_bar = 1" in names


def test_e0_generators_of_interval():
    K = simplicial_set("delta", 1, 3)
    gens = e0_generators(K)
    assert gens[:2] == ["00", "11"]
    assert "001" in gens and "011" not in gens


def test_full_normalization_of_triangle():
    K = simplicial_set("delta", 2, 3)
    F = full_normalize(K, upsilon("delta", 2, 3))
    assert F.ok
    assert [len(F.complex.basis(n)) for n in range(4)] == [3, 3, 1, 0]
    assert F.complex.audit_dd() == []
    assert F.complex.equal(F.p(F.q(F.complex.gen("012"))), F.complex.gen("012"))


def test_full_normalization_small(small_case):
    F = full_normalize(simplicial_set(*small_case), upsilon(*small_case), audit_cylinder=True)
    assert F.ok, [str(c) for c in F.log if not c.ok]


def test_phi_one_on_an_edge_is_identity():
    K = simplicial_set("delta", 2, 3)
    Z = zero_normalize(K)
    Q = Z.complex
    assert Q.equal(phi_closed_form(K, Q, 1, "01"), Q.gen("01") + Q.boundary(Q.gen("011")))
    assert Q.equal(phi_closed_form(K, Q, 2, "01"), Q.gen("01"))


def test_phi_one_closed_form_in_dimension_two():
    K = simplicial_set("delta", 2, 3)
    F = full_normalize(K)
    Q = F.zero.complex
    x = "012"
    stage = F.stages[1]
    # x + eps_1 delta x - delta eps_1 x
    bar = epsilon_extension(K, Q, 1)
    expected = Q.sub(Q.add(Q.gen(x), bar(Q.delta(x))), Q.boundary(Q.gen("0112")))
    assert Q.equal(stage.phi(Q.gen(x)), phi_closed_form(K, Q, 1, x))
    assert Q.equal(stage.phi(Q.gen(x)), expected)


def test_filtration_is_nested():
    K = simplicial_set("delta", 2, 4)
    Q = zero_normalize(K).complex
    D0 = set(degeneracy_generators(K, Q, 0).all())
    D1 = set(degeneracy_generators(K, Q, 1).all())
    D = set(degeneracy_generators(K, Q).all())
    assert D0 <= D1 <= D
    assert not D0  # the eps_0 generators are already gone
    assert D1 and all(Q.has(z) for z in D)


def test_phi_zero_equals_psi(small_case):
    F = full_normalize(simplicial_set(*small_case), upsilon(*small_case), monotonicity=False)
    check = next(c for c in F.checks if c.name.startswith("phi^0 = psi"))
    assert check.ok and check.checked > 0


def test_normalized_complex_basis():
    K = simplicial_set("nerve", 2, 4)
    P = normalized_complex(K)
    assert [len(P.basis(n)) for n in range(5)] == [1, 1, 1, 1, 1]


def test_needs_truncation_one():
    with pytest.raises(NormalizationError):
        full_normalize(standard_simplex(0, 0))


def test_strict_mode_raises_on_a_broken_stage(monkeypatch):
    import crossnorm.normalization as nm

    K = simplicial_set("delta", 1, 3)
    real = nm.phi_closed_form
    monkeypatch.setattr(nm, "phi_closed_form", lambda K, Q, k, x: Q.gen(x) if Q.gen_dim(x) == 2 and k == 1 else real(K, Q, k, x))
    with pytest.raises(NormalizationError, match="phi\\^1"):
        nm.full_normalize(K)
    F = nm.full_normalize(K, strict=False)
    assert not F.ok


def test_report_compares_homology():
    report = verify_normalization(simplicial_set("boundary", 2, 3))
    assert report.ok
    assert report.homology["normalised"] == report.homology["unnormalised"]
    assert "psi closed form" in str(report)
