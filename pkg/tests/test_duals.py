import pytest

from crossed_double.duals import check_dual_pair, coop_inner_dual, inner_dual, outer_dual, validate_talgebra
from crossed_double.finite_group import cyclic_group
from crossed_double.graded_core import pack_talgebra, pack_tcoalgebra
from crossed_double.library import function_tcoalgebra, group_hopf_algebra
from crossed_double.tcoalg import validate

from conftest import example


@pytest.mark.parametrize("name", ["sweedler-z2", "function-tcoalg", "group-hopf", "sweedler-classical-qt"])
def test_duals_validate(name):
    H, _ = example(name)
    assert validate_talgebra(outer_dual(H)).ok
    assert validate(inner_dual(H)).ok
    assert validate(coop_inner_dual(H)).ok


def test_outer_dual_unit_is_counit(sweedler_z2):
    assert outer_dual(sweedler_z2).unit == sweedler_z2.counit


def test_outer_multiplication_is_transposed_comultiplication(sweedler_z2):
    H = sweedler_z2
    T = outer_dual(H)
    g = H.group
    for (a, b), blk in T.mu.items():
        ab = g.mul(a, b)
        for i in range(H.dim(a)):
            for j in range(H.dim(b)):
                for k in range(H.dim(ab)):
                    assert blk[i][j].get(k, 0) == H.delta[(a, b)][k].get((i, j), 0)


def test_inner_dual_dimensions(sweedler_z2):
    assert inner_dual(sweedler_z2).dims == (8, 8)


def test_group_algebra_dual_is_function_algebra():
    G = cyclic_group(3)
    dual = pack_talgebra(outer_dual(group_hopf_algebra(G))).hopf
    functions = pack_tcoalgebra(function_tcoalgebra(G)).hopf
    assert check_dual_pair(group_hopf_algebra(G), dual).ok
    assert dual.comps[0] == functions.comps[0]


def test_coopposite_inner_dual_on_commutative_input(s3_functions):
    H = s3_functions
    assert coop_inner_dual(H).delta == inner_dual(H).delta


def test_coopposite_inner_dual_differs_on_sweedler(sweedler_z2):
    assert coop_inner_dual(sweedler_z2).delta != inner_dual(sweedler_z2).delta


def test_packed_outer_dual_is_dual_of_packed(sweedler_z2):
    P = pack_tcoalgebra(sweedler_z2).hopf
    Q = pack_talgebra(outer_dual(sweedler_z2)).hopf
    assert check_dual_pair(P, Q).ok
