import pytest

from crossed_double.analysis import (
    check_packed_double_embedding, classical_double, double_factorizability, factorizability, is_semisimple,
    trace_form,
)
from crossed_double.errors import UnsupportedCharacteristic
from crossed_double.exact_linalg import GF
from crossed_double.library import builtin, trivial_rmatrix
from crossed_double.tcoalg import validate

from conftest import double_of, example


@pytest.mark.parametrize("name,group,expected", [
    ("function-tcoalg", "S3", True), ("group-hopf", None, True), ("group-algebra", None, True),
    ("sweedler-z2", None, False), ("sweedler-classical-qt", None, False),
])
def test_semisimplicity_of_inputs_and_doubles(name, group, expected):
    H, _ = example(name, group)
    v = is_semisimple(H)
    assert v.semisimple is expected
    assert v.consistent
    assert is_semisimple(double_of(name, group).D).semisimple is expected


def test_sweedler_radical_is_seen_by_trace_form(h4_r0):
    H, _ = h4_r0
    comp = H.comps[0]
    # x (basis index 2) squares to zero, so it lies in the radical
    x = {2: 1}
    assert H.mul(0, x, x) == {}
    T = trace_form(comp, H.field)
    assert T.rank() < comp.dim
    assert all(T.entries[2][j] == 0 for j in range(comp.dim))


def test_semisimplicity_needs_characteristic_zero():
    H, _ = builtin("function-tcoalg", field=GF(2), group="S3")
    with pytest.raises(UnsupportedCharacteristic):
        is_semisimple(H)


def test_trivial_r_is_not_factorizable():
    H, _ = example("group-algebra")
    R = trivial_rmatrix(H)
    assert H.dim(0) == 2
    f = factorizability(H.comps[0], R.R[(0, 0)], H.field)
    assert f.rank == 1 and not f.bijective


@pytest.mark.parametrize("name", ["group-algebra", "sweedler-classical-qt"])
def test_classical_doubles_are_factorizable(name):
    H, _ = example(name)
    oracle = classical_double(H)
    D = oracle.as_tcoalgebra(H.field)
    assert validate(D).ok
    f = factorizability(D.comps[0], oracle.R, H.field)
    assert f.bijective and f.rank == D.dim(0)


@pytest.mark.parametrize("name,group,rank", [("function-tcoalg", "S3", 1), ("sweedler-z2", None, 16)])
def test_identity_component_of_crossed_double(name, group, rank):
    """D_1(H) with R_{1,1} is not factorizable, while D(H_pk) is."""
    H, _ = example(name, group)
    res = double_factorizability(H, double_of(name, group))
    assert res["D(H_pk)"].bijective
    assert res["D1"].rank == rank
    assert res["D1"].matrix.rows == H.dim(0) * sum(H.dims)


def test_r11_of_s3_double_is_trivial(d_s3):
    assert d_s3.R.R[(0, 0)] == d_s3.D.tone((0, 0))


@pytest.mark.parametrize("name,group", [("function-tcoalg", "S3"), ("sweedler-z2", None), ("group-hopf", None)])
def test_packed_double_embedding(name, group):
    rep = check_packed_double_embedding(example(name, group)[0], double_of(name, group))
    assert rep.ok, rep.summary()
    assert rep.counts["embedding.x_times_R"] and rep.counts["embedding.R_times_x"]


def test_nonabelian_example_has_product_witness(s3_functions, d_s3):
    rep = check_packed_double_embedding(s3_functions, d_s3)
    w = rep.notes["product_witness"]
    assert isinstance(w, dict)
    assert w["packed_double"] != w["double_of_packed"]
