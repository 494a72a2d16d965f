import json
from math import comb

import pytest

from crossnorm import simplicial as ss
from crossnorm.simplicial import (
    ParseError,
    boundary_simplex,
    check_group,
    cyclic_table,
    nerve_of_group,
    standard_simplex,
    validate,
)


@pytest.mark.parametrize("n,N", [(0, 3), (1, 3), (2, 4), (3, 4), (4, 4)])
def test_standard_simplex_counts(n, N):
    K = standard_simplex(n, N)
    # k-simplices of Delta[n] are weakly increasing sequences of length k+1
    assert [len(layer) for layer in K.simplices] == [comb(n + k + 1, k + 1) for k in range(N + 1)]
    assert validate(K) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_boundary_simplex_drops_top_cells(n):
    K = boundary_simplex(n, 4)
    full = standard_simplex(n, 4)
    assert validate(K) == []
    nondeg = [sum(1 for y in layer if not K.is_degenerate(y)) for layer in K.simplices]
    assert nondeg == [comb(n + 1, k + 1) if k < n else 0 for k in range(5)]
    assert set(K.all_simplices()) < set(full.all_simplices())


def test_nerve_of_cyclic_group():
    K = nerve_of_group(cyclic_table(3), 4)
    assert [len(layer) for layer in K.simplices] == [1, 3, 9, 27, 81]
    assert validate(K) == []
    assert list(K.simplices[0]) == ["()"]
    # an n-simplex is degenerate iff one of its entries is the identity
    for y in K.simplices[2]:
        assert K.is_degenerate(y) == ("0" in y)


def test_nerve_faces_multiply():
    K = nerve_of_group(cyclic_table(3), 3)
    x = "(1,2)"
    # d0 drops the first entry, d1 multiplies, d2 drops the last
    assert [K.face(i, x) for i in range(3)] == ["(2)", "(0)", "(1)"]


def test_check_group_rejects_non_group():
    assert check_group(cyclic_table(4)) == 0
    with pytest.raises(ValueError):
        check_group([[0, 1], [1, 1]])


def test_validate_reports_broken_identity():
    K = standard_simplex(2, 2)
    faces = dict(K.faces)
    faces["012"] = (faces["012"][1], faces["012"][0], faces["012"][2])
    bad = ss.from_tables(K.trunc_level, K.simplices, faces, K.degeneracies)
    found = validate(bad)
    assert found
    assert any("012" in str(v) for v in found)


def test_round_trip():
    for K in [standard_simplex(2, 3), boundary_simplex(3, 3), nerve_of_group(cyclic_table(2), 3)]:
        text = ss.dumps(K)
        assert ss.loads(text) == K
        assert ss.dumps(ss.loads(text)) == text


def test_parse_missing_face_entry():
    doc = json.loads(ss.dumps(standard_simplex(1, 1)))
    doc["faces"]["01"] = ["1"]
    with pytest.raises(ParseError, match="01"):
        ss.loads(json.dumps(doc))


def test_parse_face_of_wrong_dimension():
    doc = json.loads(ss.dumps(standard_simplex(2, 2)))
    doc["faces"]["012"][0] = "0"
    with pytest.raises(ParseError, match=r"012.*\[0\]"):
        ss.loads(json.dumps(doc))


def test_parse_missing_field():
    doc = json.loads(ss.dumps(standard_simplex(1, 1)))
    del doc["degeneracies"]
    with pytest.raises(ParseError, match="degeneracies"):
        ss.loads(json.dumps(doc))


def test_truncate_keeps_lower_levels():
    K = standard_simplex(2, 4)
    T = K.truncate(2)
    assert T.trunc_level == 2
    assert T.simplices == K.simplices[:3]
    assert validate(T) == []
    assert not T.has_degen("012")


def test_iterated_faces_and_last_vertex():
    K = standard_simplex(3, 3)
    assert K.iter_faces("0123", 2) == "23"
    assert K.last_vertex("0123") == "3"
    assert K.degen(1, "012") == "0112"
