import random

import pytest
from hypothesis import given, strategies as st

from crossed_double.duals import outer_dual, validate_talgebra
from crossed_double.errors import GradingViolation, NotConvolutionInvertible
from crossed_double.exact_linalg import identity_cols
from crossed_double.graded_core import (
    GradedHopfAlgebra, convolution_inverse, convolution_product, iterated_delta, pack_talgebra, pack_tcoalgebra,
    unit_map, unpack_hopf,
)
from crossed_double.library import NAMES
from crossed_double.tcoalg import validate

from conftest import example


@pytest.mark.parametrize("name", NAMES)
def test_pack_unpack_round_trip(name):
    H, _ = example(name)
    P = pack_tcoalgebra(H)
    assert validate(P.hopf).ok
    assert unpack_hopf(P, "coalgebra").same_constants(H)


@pytest.mark.parametrize("name", ["sweedler-z2", "function-tcoalg", "group-hopf"])
def test_talgebra_pack_unpack_round_trip(name):
    T = outer_dual(example(name)[0])
    P = pack_talgebra(T)
    assert validate(P.hopf).ok
    assert unpack_hopf(P, "algebra").same_constants(T)


def test_counit_off_identity_is_a_grading_violation(sweedler_z2):
    P = pack_tcoalgebra(sweedler_z2)
    hop = P.hopf
    bad_hopf = type(hop)(hop.field, hop.group, hop.comps, hop.delta, {**hop.counit, 4: 1}, hop.antipode, hop.phi)
    bad = GradedHopfAlgebra(P.group, bad_hopf, P.dims, P.automorphisms, P.variant)
    with pytest.raises(GradingViolation) as err:
        unpack_hopf(bad)
    assert "counit" in str(err.value)


def test_iterated_delta_nesting_agrees(s3_functions):
    H = s3_functions
    g = H.group
    for word in [(1, 2, 3), (5, 5, 4), (0, 1, 0)]:
        t = iterated_delta(H, word, {0: 1})
        assert t == {(0, 0, 0): 1}


def test_iterated_delta_then_counit_is_identity(sweedler_z2):
    H = sweedler_z2
    for k in range(4):
        t = iterated_delta(H, (0, 1), {k: 1})
        back = {}
        for (i, j), c in t.items():
            back[j] = back.get(j, 0) + c * H.eps({i: 1})
        assert {j: c for j, c in back.items() if c} == {k: 1}


def _random_map(rng, n, d):
    return tuple({m: rng.randint(-2, 2) for m in range(d) if rng.random() < 0.6} for _ in range(n))


@given(st.integers(0, 10 ** 6))
def test_convolution_is_associative(seed):
    H, _ = example("sweedler-z2")
    rng = random.Random(seed)
    A = H.comps[0]
    f, g_, h = (_random_map(rng, 4, 4) for _ in range(3))
    left = convolution_product(H, A, convolution_product(H, A, f, 0, g_, 1), 1, h, 1)
    right = convolution_product(H, A, f, 0, convolution_product(H, A, g_, 1, h, 1), 0)
    assert left == right


def test_unit_map_is_neutral(sweedler_z2):
    H = sweedler_z2
    A = H.comps[0]
    f = identity_cols(4)
    assert convolution_product(H, A, unit_map(H, A), 0, f, 0) == f


def test_zero_map_has_no_convolution_inverse(sweedler_z2):
    with pytest.raises(NotConvolutionInvertible):
        convolution_inverse(sweedler_z2, sweedler_z2.comps[0], tuple({} for _ in range(4)), 0)
