from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crossed_double.analysis import classical_double, compare_with_classical
from crossed_double.double import (
    build_double, check_canonical_r, check_pa_bijective, check_product_uniqueness, double_embeddings, p_matrix,
)
from crossed_double.exact_linalg import invert_cols, tensor_apply
from crossed_double.quasitriangular import RMatrixFamily, check_qt
from crossed_double.tcoalg import check_morphism, transport, validate

from conftest import double_of, example

MAIN = [("function-tcoalg", "S3"), ("sweedler-z2", None)]


@pytest.mark.parametrize("name,group", MAIN + [("group-hopf", None), ("sweedler-classical-qt", None)])
def test_double_dimensions(name, group):
    H, _ = example(name, group)
    qd = double_of(name, group)
    g = H.group
    assert qd.N == sum(H.dims)
    for a in g.elements():
        assert qd.D.dim(a) == H.dim(g.inv(a)) * qd.N


@pytest.mark.parametrize("name,group", MAIN)
def test_embeddings_are_morphisms(name, group):
    _, _, rep = double_embeddings(double_of(name, group))
    assert rep.ok, rep.summary()
    assert rep.counts


@pytest.mark.parametrize("name,group", MAIN)
def test_p_is_bijective(name, group):
    qd = double_of(name, group)
    assert check_pa_bijective(qd).ok
    m = p_matrix(qd, 0)
    assert m.rows == m.cols == qd.D.dim(0)


@pytest.mark.parametrize("name,group", MAIN)
def test_r_is_image_of_canonical_element(name, group):
    assert check_canonical_r(double_of(name, group)).ok


def test_canonical_check_rejects_a_perturbed_r(d_sweedler):
    qd = d_sweedler
    R = {k: dict(v) for k, v in qd.R.R.items()}
    key = next(iter(R[(1, 0)]))
    R[(1, 0)][key] += 1
    rep = check_canonical_r(qd, RMatrixFamily(R, None))
    assert [f.instance for f in rep.failures] == [(1, 0)]


@pytest.mark.parametrize("name,group", MAIN + [("sweedler-classical-qt", None)])
def test_product_is_forced_by_embeddings(name, group):
    rep = check_product_uniqueness(double_of(name, group))
    assert rep.ok, rep.summary()
    assert rep.counts["product.rebuilt"] > 0


@pytest.mark.parametrize("name", ["sweedler-classical-qt", "group-algebra", "trivial-k"])
def test_trivial_group_double_matches_classical_oracle(name):
    H, _ = example(name)
    qd = double_of(name)
    rep = compare_with_classical(qd.D, qd.R, classical_double(H))
    assert rep.ok, rep.summary()


def test_oracle_comparison_detects_a_changed_constant():
    H, _ = example("sweedler-classical-qt")
    qd = double_of("sweedler-classical-qt")
    oracle = classical_double(H)
    row = list(oracle.table[1])
    row[2] = {k: v * 2 for k, v in row[2].items()} or {0: 1}
    oracle.table[1] = row
    rep = compare_with_classical(qd.D, qd.R, oracle)
    assert any(f.axiom == "product" and f.instance == (1, 2) for f in rep.failures)


def test_classical_oracle_is_quasitriangular():
    H, _ = example("sweedler-classical-qt")
    oracle = classical_double(H)
    D = oracle.as_tcoalgebra(H.field)
    assert validate(D).ok
    assert check_qt(D, RMatrixFamily({(0, 0): oracle.R}, {(0, 0): oracle.Rt})).ok


# Base change: a T-coalgebra isomorphism P: H -> H' induces an isomorphism of
# doubles that is h (x) f -> P(h) (x) f o P^-1 on each block, and it carries R to R'.

def induced_double_map(qd, P):
    H, g, N = qd.source, qd.source.group, qd.N
    contragredient = {}
    for b in g.elements():
        Pi = invert_cols(P[b], H.dim(b), H.field)
        contragredient[b] = [{k: Pi[k][j] for k in range(H.dim(b)) if Pi[k].get(j, 0)} for j in range(H.dim(b))]
    blocks = [(b, j) for b in g.elements() for j in range(H.dim(b))]
    maps = []
    for a in g.elements():
        ai = g.inv(a)
        cols = []
        for i in range(H.dim(ai)):
            for b, j in blocks:
                cols.append({m * N + qd.offsets[b] + k: c * d
                             for m, c in P[ai][i].items() for k, d in contragredient[b][j].items()})
        maps.append(tuple(cols))
    return maps


two_by_two = st.sampled_from([((1, 0), (0, 1)), ((1, 1), (0, 1)), ((2, 1), (1, 1)), ((0, 1), (1, 0)), ((1, 0), (3, -1))])


@settings(max_examples=6)
@given(st.data())
def test_double_is_natural_under_base_change(data):
    H, _ = example("sweedler-z2")
    P = []
    for a in H.group.elements():
        (p, q), (r, s) = data.draw(two_by_two)
        shift = Fraction(data.draw(st.integers(-2, 2)), data.draw(st.integers(1, 3)))
        P.append(({0: 1}, {1: 1, 0: shift} if a == 0 else {1: 1}, {2: p, 3: r}, {2: q, 3: s}))
    H2 = transport(H, P)
    qd, qd2 = double_of("sweedler-z2"), build_double(H2)
    Q = induced_double_map(qd, P)
    assert check_morphism(qd.D, qd2.D, Q).ok
    g = H.group
    for a in g.elements():
        for b in g.elements():
            assert tensor_apply([Q[a], Q[b]], qd.R.R[(a, b)]) == qd2.R.R[(a, b)]
