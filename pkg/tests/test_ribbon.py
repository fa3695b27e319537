import pytest

from crossed_double.errors import PreconditionFailed
from crossed_double.exact_linalg import GF
from crossed_double.library import builtin
from crossed_double.quasitriangular import check_qt, drinfeld_elements
from crossed_double.ribbon import (
    RT_ASSOCIATIVITY_LIMIT, TwistFamily, check_twist_theta, check_twist_v, compute_q, ribbon_extension,
    ribbon_from_semisimple, twist_conversion, validate_ribbon_extension,
)
from crossed_double.tcoalg import validate

from conftest import double_of, example


@pytest.fixture(scope="module")
def rt_d_s3(d_s3):
    return ribbon_extension(d_s3.D, d_s3.R)


@pytest.fixture(scope="module")
def rt_h4(h4_r0):
    return ribbon_extension(*h4_r0)


@pytest.mark.parametrize("name,group", [("function-tcoalg", "S3"), ("sweedler-z2", None)])
def test_q_matrices_are_mutually_inverse(name, group):
    qd = double_of(name, group)
    q = compute_q(qd.D, qd.R, verify_solve=True)
    assert q.report.ok, q.report.summary()
    for (a, b), x in q.Q.items():
        assert qd.D.tmul((a, b), x, q.Qt[(a, b)]) == qd.D.tone((a, b))


def test_rt_of_s3_double_has_twelve_dimensional_components(rt_d_s3):
    assert rt_d_s3.RT.dims == (12,) * 6


def test_rt_of_s3_double_is_ribbon(rt_d_s3):
    rep = validate_ribbon_extension(rt_d_s3)
    assert rep.ok, rep.summary()
    assert 12 <= RT_ASSOCIATIVITY_LIMIT and not rep.skipped
    assert any(k.startswith("qt.R.") for k in rep.counts)
    assert any(k.startswith("twist.v.") for k in rep.counts)


def test_rt_of_sweedler_r0_is_ribbon(rt_h4):
    rep = validate_ribbon_extension(rt_h4, force=True)
    assert rep.ok, rep.summary()


def test_rt_contains_h_as_subalgebra(rt_h4, h4_r0):
    H, _ = h4_r0
    n = H.dim(0)
    for i in range(n):
        for j in range(n):
            assert rt_h4.RT.mul(0, {i: 1}, {j: 1}) == H.mul(0, {i: 1}, {j: 1})


def test_v_squared_is_u_times_antipode_of_u(rt_h4, h4_r0):
    H, R = h4_r0
    u = drinfeld_elements(H, R, check=False).u[0]
    v = rt_h4.v.values[0]
    expected = H.mul(0, u, H.s(0, u))
    assert rt_h4.RT.mul(0, v, v) == rt_h4.embed(0, expected)


@pytest.mark.parametrize("which", ["rt_d_s3", "rt_h4"])
def test_twist_conversion_round_trips(which, request):
    ext = request.getfixturevalue(which)
    theta = twist_conversion(ext.RT, ext.R, ext.v)
    assert theta.kind == "theta"
    assert check_twist_theta(ext.RT, ext.R, theta).ok
    back = twist_conversion(ext.RT, ext.R, theta)
    assert back.kind == "v" and back.values == ext.v.values


def test_scaled_theta_fails(rt_h4):
    theta = twist_conversion(rt_h4.RT, rt_h4.R, rt_h4.v)
    bad = TwistFamily({a: {k: 2 * c for k, c in t.items()} for a, t in theta.values.items()}, "theta")
    failed = {f.axiom for f in check_twist_theta(rt_h4.RT, rt_h4.R, bad).failures}
    assert failed & {"theta.antipode", "theta.coproduct"}


def test_zero_v_fails_at_invertibility_or_square(rt_h4):
    zero = TwistFamily({a: {} for a in rt_h4.v.values}, "v")
    rep = check_twist_v(rt_h4.RT, rt_h4.R, zero)
    assert not rep.ok


@pytest.mark.parametrize("name,group", [("function-tcoalg", "S3"), ("group-algebra", None)])
def test_semisimple_twist_on_input(name, group):
    H, R = example(name, group)
    theta, rep = ribbon_from_semisimple(H, R)
    assert rep.ok, rep.summary()
    u_inv = drinfeld_elements(H, R, check=False).u_inv
    assert theta.values == u_inv


@pytest.mark.parametrize("name,group", [("function-tcoalg", "S3"), ("group-hopf", None)])
def test_semisimple_twist_on_double(name, group):
    qd = double_of(name, group)
    _, rep = ribbon_from_semisimple(qd.D, qd.R)
    assert rep.ok, rep.summary()


def test_semisimple_twist_refuses_nonsemisimple(h4_r0, d_sweedler):
    with pytest.raises(PreconditionFailed, match="semisimple"):
        ribbon_from_semisimple(*h4_r0)
    with pytest.raises(PreconditionFailed, match="semisimple"):
        ribbon_from_semisimple(d_sweedler.D, d_sweedler.R)


def test_semisimple_twist_refuses_positive_characteristic():
    H, R = builtin("function-tcoalg", field=GF(3), group="S3")
    with pytest.raises(PreconditionFailed, match="characteristic"):
        ribbon_from_semisimple(H, R)


def test_rt_over_finite_field():
    H, R = builtin("function-tcoalg", field=GF(5), group="S3")
    ext = ribbon_extension(H, R)
    assert validate(ext.RT).ok
    assert check_qt(ext.RT, ext.R).ok
    assert check_twist_v(ext.RT, ext.R, ext.v).ok
