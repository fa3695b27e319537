import pytest

from crossed_double.errors import NotAGroup
from crossed_double.finite_group import builtin_group, cyclic_group, group_from_json, make_group, symmetric_group_3


def test_s3_is_nonabelian_with_identity_first():
    g = symmetric_group_3()
    assert g.order == 6 and g.identity == 0 and not g.is_abelian()
    for a in g.elements():
        assert g.mul(a, g.inv(a)) == g.identity


def test_identity_is_found_not_assumed():
    # Z/2 with the identity stored at index 1
    g = make_group([[1, 0], [0, 1]])
    assert g.identity == 1


def test_conjugation_matches_definition():
    g = symmetric_group_3()
    for a in g.elements():
        for b in g.elements():
            assert g.conj(b, a) == g.prod(b, a, g.inv(b))


@pytest.mark.parametrize("table", [
    [[0, 1], [1, 1]],           # no inverse for 1
    [[0, 1, 2], [1, 0, 0], [2, 0, 1]],  # not a Latin square
    [[0, 2], [1, 0]],           # index out of range
    [],
])
def test_bad_tables_are_rejected(table):
    with pytest.raises(NotAGroup):
        make_group(table)


def test_json_round_trip():
    g = cyclic_group(4)
    assert group_from_json(g.to_json()) == g
    assert builtin_group("Z4") == g
