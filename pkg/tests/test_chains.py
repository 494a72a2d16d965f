import random
from collections import Counter

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from crossnorm.chains import (
    HomologyGroup,
    IntMatrix,
    IntegerChainComplex,
    augment,
    fox_derivative,
    format_chain,
    homology,
    nabla,
    smith_normal_form,
)
from crossnorm.counterexample import build as counterexample
from crossnorm.groupoid import Graph, identity
from crossnorm.normalization import normalized_complex

from conftest import simplicial_set, upsilon
from oracle import classical_homology


CASES = [
    ("delta", 2, 3),
    ("delta", 3, 4),
    ("boundary", 2, 3),
    ("boundary", 3, 4),
    ("nerve", 2, 5),
    ("nerve", 3, 4),
]


@pytest.mark.parametrize("case", CASES, ids=lambda c: f"{c[0]}{c[1]}-N{c[2]}")
def test_unnormalised_matches_classical(case):
    K = simplicial_set(*case)
    top = K.trunc_level - 1
    assert homology(upsilon(*case), top) == classical_homology(K, False, top)


@pytest.mark.parametrize("case", CASES, ids=lambda c: f"{c[0]}{c[1]}-N{c[2]}")
def test_normalised_matches_classical(case):
    K = simplicial_set(*case)
    top = K.trunc_level - 1
    assert homology(normalized_complex(K, upsilon(*case)), top) == classical_homology(K, True, top)


def test_known_groups():
    got = [str(g) for g in homology(upsilon("nerve", 2, 5))]
    assert got == ["Z", "Z/2", "0", "Z/2", "0"]
    assert [str(g) for g in homology(upsilon("boundary", 3, 4))] == ["Z", "0", "Z", "0"]
    assert [str(g) for g in homology(upsilon("boundary", 2, 3))] == ["Z", "Z", "0"]


def test_homology_degree_bound():
    with pytest.raises(ValueError):
        homology(upsilon("delta", 2, 3), 3)


def test_group_formatting():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(2, (3, 6))) == "Z^2 + Z/3 + Z/6"


# --------------------------------------------------------------------------
# Fox derivatives


def loops():
    g = Graph(["p"], {"x": ("p", "p"), "y": ("p", "p")})
    return g, (lambda w: w)


def test_fox_of_letter_and_inverse():
    g, canon = loops()
    x = g.gen("x")
    assert fox_derivative(x, g, canon) == Counter({("x", identity("p")): 1})
    assert fox_derivative(-x, g, canon) == Counter({("x", -x): -1})


def test_fox_of_commutator():
    g, canon = loops()
    x, y = g.gen("x"), g.gen("y")
    w = -x - y + x + y
    d = fox_derivative(w, g, canon)
    assert d == Counter({
        ("x", -x - y + x + y): -1,
        ("y", -y + x + y): -1,
        ("x", y): 1,
        ("y", identity("p")): 1,
    })
    # augmentation kills a commutator
    assert sum(d.values()) == 0


def test_fox_product_rule():
    g, canon = loops()
    x, y = g.gen("x"), g.gen("y")
    u, v = x + y, -x + y + y
    lhs = fox_derivative(u + v, g, canon)
    rhs = Counter()
    for (b, w), k in fox_derivative(u, g, canon).items():
        rhs[(b, w + v)] += k
    rhs.update(fox_derivative(v, g, canon))
    assert lhs == Counter({k: c for k, c in rhs.items() if c})


def test_counterexample_chains():
    R = counterexample().R
    X = nabla(R)
    p = identity("p")
    assert X.boundaries[2]["a"] == Counter({("x", p): 1})
    assert X.boundaries[2]["b"] == Counter()
    assert X.boundaries[1]["x"] == Counter()
    assert X.audit() == []
    assert format_chain(X.boundaries[2]["a"]) == "x"


def test_augment_interval():
    M = augment(nabla(upsilon("delta", 1, 1))).matrix(1)
    assert M.rows == ("0", "1") and M.cols == ("00", "01", "11")
    assert M.entries == [[0, 1, 0], [0, -1, 0]]


def test_nabla_audit(small_case):
    assert nabla(upsilon(*small_case)).audit() == []


# --------------------------------------------------------------------------
# Smith normal form


def test_snf_small():
    S = smith_normal_form([[2, 4], [6, 8]])
    assert S.factors == (2, 4)
    assert smith_normal_form([[1, 0], [0, 1]]).factors == (1, 1)
    assert smith_normal_form([[0, 0], [0, 0]]).factors == ()
    assert smith_normal_form(IntMatrix(("a",), (), [[]])).rank == 0


def mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@pytest.mark.parametrize("seed", range(25))
def test_snf_random(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
    S = smith_normal_form(M)
    assert mul(mul(S.U, M), S.V) == S.D
    assert abs(Matrix(S.U).det()) == 1 and abs(Matrix(S.V).det()) == 1
    for i, row in enumerate(S.D):
        for j, v in enumerate(row):
            assert v == 0 or i == j
    assert all(b % a == 0 for a, b in zip(S.factors, S.factors[1:]))
    expected = [abs(int(d)) for d in invariant_factors(Matrix(M), domain=ZZ) if d != 0]
    assert list(S.factors) == expected


def test_integer_complex_default_matrix():
    X = IntegerChainComplex({0: ("a",), 1: ()}, {})
    assert X.matrix(1).shape == (1, 0)
