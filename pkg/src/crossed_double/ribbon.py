"""Twists, Q-matrices and the ribbon extension RT(H)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import NotInvertible, PreconditionFailed
from .exact_linalg import clean, compose, flip, identity_cols, tensor_apply
from .graded_core import ComponentAlgebra
from .quasitriangular import RMatrixFamily, check_qt, drinfeld_elements, element_inverse, tensor_inverse
from .report import ValidationReport
from .tcoalg import TCoalgebra, validate

#: Exhaustive associativity checks on RT components are skipped above this size.
RT_ASSOCIATIVITY_LIMIT = 48


@dataclass
class TwistFamily:
    """``values[a]`` in H_a; ``kind`` is ``"theta"`` or ``"v"`` (v = theta^-1)."""

    values: Dict[int, dict]
    kind: str = "theta"


@dataclass
class QFamily:
    Q: Dict[tuple, dict]
    Qt: Dict[tuple, dict]
    report: ValidationReport


def _w(lhs, rhs):
    return {"lhs": lhs, "rhs": rhs}


def _pair_mul(H: TCoalgebra, a: int, b: int, x: dict, y: dict) -> dict:
    return H.tmul((a, b), x, y)


def q_matrix(H: TCoalgebra, R: RMatrixFamily, a: int, b: int) -> dict:
    """Q_{a,b} = sigma((phi_{a^-1} (x) id) R_{aba^-1,a}) R_{a,b}."""
    g = H.group
    c = g.conj(a, b)
    left = flip(tensor_apply([H.phi[(c, g.inv(a))], None], R.R[(c, a)]))
    return H.tmul((a, b), left, R.R[(a, b)])


def q_tilde_closed(H: TCoalgebra, R: RMatrixFamily, a: int, b: int) -> dict:
    """Q~ = xi~_i zeta~_j (x) zeta~_i phi_{a^-1}(xi~_j), with xi~_i (x) zeta~_i
    = R~_{a,b} and xi~_j (x) zeta~_j = R~_{aba^-1,a}."""
    g = H.group
    c = g.conj(a, b)
    Rt = R.inverse(H)
    right = flip(tensor_apply([H.phi[(c, g.inv(a))], None], Rt[(c, a)]))
    return H.tmul((a, b), Rt[(a, b)], right)


def compute_q(H: TCoalgebra, R: RMatrixFamily, verify_solve: bool = False) -> QFamily:
    g = H.group
    G = list(g.elements())
    rep = ValidationReport(subject=f"Q-matrices {H.name}")
    Q, Qt = {}, {}
    for a in G:
        for b in G:
            Q[(a, b)] = q_matrix(H, R, a, b)
            Qt[(a, b)] = q_tilde_closed(H, R, a, b)
            one = H.tone((a, b))
            ok = H.tmul((a, b), Q[(a, b)], Qt[(a, b)]) == one and H.tmul((a, b), Qt[(a, b)], Q[(a, b)]) == one
            rep.check("Q.inverse", (a, b), ok, None)
            if verify_solve:
                solved = tensor_inverse(H, (a, b), Q[(a, b)])
                rep.check("Q.closed_form_vs_solve", (a, b), solved == Qt[(a, b)], _w(Qt[(a, b)], solved))
    for a in G:
        for b in G:
            for c in G:
                lhs = tensor_apply([H.phi[(b, a)], H.phi[(c, a)]], Q[(b, c)])
                rhs = Q[(g.conj(a, b), g.conj(a, c))]
                rep.check("Q.conjugation", (a, b, c), lhs == rhs, _w(lhs, rhs))
    return QFamily(Q, Qt, rep)


def _outer(x: dict, y: dict) -> dict:
    return clean({(i, j): c * d for i, c in x.items() for j, d in y.items()})


def _inverses(H: TCoalgebra, values: Dict[int, dict]) -> Dict[int, dict]:
    return {a: element_inverse(H, a, x) for a, x in values.items()}


def check_twist_theta(H: TCoalgebra, R: RMatrixFamily, theta: TwistFamily, q: Optional[QFamily] = None,
                      drinfeld=None) -> ValidationReport:
    g = H.group
    G = list(g.elements())
    e = g.identity
    t = theta.values
    rep = ValidationReport(subject=f"twist theta {H.name}")
    try:
        ti = _inverses(H, t)
    except NotInvertible as exc:
        rep.fail("theta.invertible", (), str(exc))
        return rep
    q = q or compute_q(H, R)
    drinfeld = drinfeld or drinfeld_elements(H, R, check=False)
    u = drinfeld.u
    for a in G:
        ai = g.inv(a)
        for k in range(H.dim(a)):
            h = {k: 1}
            lhs = H.ph(a, a, h)
            rhs = H.mul(a, H.mul(a, ti[a], h), t[a])
            rep.check("theta.phi_inner", (a, k), lhs == rhs, _w(lhs, rhs))
            lhs = H.ph(ai, a, h)
            rhs = H.mul(a, H.mul(a, t[a], h), ti[a])
            rep.check("theta.derived.inverse_phi_inner", (a, k), lhs == rhs, _w(lhs, rhs), kind="derived")
            lhs = H.mul(a, t[a], H.ph(a, a, h))
            rhs = H.mul(a, h, t[a])
            rep.check("theta.derived.twisted_commutation", (a, k), lhs == rhs, _w(lhs, rhs), kind="derived")
        lhs = H.s(a, t[a])
        rep.check("theta.antipode", (a,), lhs == t[ai], _w(lhs, t[ai]))
        for b in G:
            ab = g.mul(a, b)
            lhs = H.delta_vec(a, b, t[ab])
            rhs = H.tmul((a, b), _outer(t[a], t[b]), q.Q[(a, b)])
            rep.check("theta.coproduct", (a, b), lhs == rhs, _w(lhs, rhs))
            lhs = H.ph(b, a, t[a])
            rhs = t[g.conj(b, a)]
            rep.check("theta.phi_equivariant", (a, b), lhs == rhs, _w(lhs, rhs))
        lhs, rhs = H.mul(a, t[a], u[a]), H.mul(a, u[a], t[a])
        rep.check("theta.derived.commutes_with_u", (a,), lhs == rhs, _w(lhs, rhs), kind="derived")
        su = H.s(ai, u[ai])
        tm2 = H.mul(a, ti[a], ti[a])
        rep.check("theta.derived.inverse_square", (a,), tm2 == H.mul(a, su, u[a]) == H.mul(a, u[a], su),
                  _w(tm2, H.mul(a, su, u[a])), kind="derived")
    rep.check("theta.derived.counit", (), H.eps(t[e]) == 1, {"value": H.eps(t[e])}, kind="derived")
    for k in range(H.dim(e)):
        h = {k: 1}
        rep.check("theta.derived.central", (k,), H.mul(e, t[e], h) == H.mul(e, h, t[e]), None, kind="derived")
    return rep


def check_twist_v(H: TCoalgebra, R: RMatrixFamily, v: TwistFamily, q: Optional[QFamily] = None,
                  drinfeld=None) -> ValidationReport:
    g = H.group
    G = list(g.elements())
    vv = v.values
    rep = ValidationReport(subject=f"twist v {H.name}")
    q = q or compute_q(H, R)
    drinfeld = drinfeld or drinfeld_elements(H, R, check=False)
    u = drinfeld.u
    for a in G:
        ai = g.inv(a)
        for k in range(H.dim(a)):
            h = {k: 1}
            lhs = H.mul(a, h, vv[a])
            rhs = H.mul(a, vv[a], H.ph(ai, a, h))
            rep.check("v.twisted_commutation", (a, k), lhs == rhs, _w(lhs, rhs))
        lhs = H.mul(a, vv[a], vv[a])
        rhs = H.mul(a, u[a], H.s(ai, u[ai]))
        rep.check("v.square", (a,), lhs == rhs, _w(lhs, rhs))
        for b in G:
            ab = g.mul(a, b)
            lhs = H.delta_vec(a, b, vv[ab])
            rhs = H.tmul((a, b), q.Qt[(a, b)], _outer(vv[a], vv[b]))
            rep.check("v.coproduct", (a, b), lhs == rhs, _w(lhs, rhs))
            lhs = H.ph(b, a, vv[a])
            rep.check("v.phi_equivariant", (a, b), lhs == vv[g.conj(b, a)], _w(lhs, vv[g.conj(b, a)]))
        lhs = H.s(a, vv[a])
        rep.check("v.antipode", (a,), lhs == vv[ai], _w(lhs, vv[ai]))
    return rep


def twist_conversion(H: TCoalgebra, R: RMatrixFamily, twist: TwistFamily) -> TwistFamily:
    """theta <-> v = theta^-1 (each family is the elementwise inverse of the other)."""
    other = "v" if twist.kind == "theta" else "theta"
    return TwistFamily(_inverses(H, twist.values), other)


# ---------------------------------------------------------------- RT(H)


@dataclass
class RibbonExtension:
    RT: TCoalgebra
    R: RMatrixFamily
    v: TwistFamily
    dims: Tuple[int, ...]

    def embed(self, a: int, h: dict) -> dict:
        return dict(h)

    def times_v(self, a: int, k: dict) -> dict:
        n = self.dims[a]
        return {n + i: c for i, c in k.items()}


def ribbon_extension(H: TCoalgebra, R: RMatrixFamily, drinfeld=None, q: Optional[QFamily] = None) -> RibbonExtension:
    """RT_a = H_a + H_a v_a with v_a x = phi_a(x) v_a and v_a^2 = u_a s(u_{a^-1})."""
    g = H.group
    G = list(g.elements())
    e = g.identity
    drinfeld = drinfeld or drinfeld_elements(H, R, check=False)
    q = q or compute_q(H, R)
    u = drinfeld.u
    dims = H.dims
    comps = []
    for a in G:
        ai = g.inv(a)
        n = dims[a]
        comp = H.comps[a]
        w = comp.mul(u[a], H.s(ai, u[ai]))
        phi_a = H.phi[(a, a)]
        table = [[None] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                hh = comp.table[i][j]
                table[i][j] = hh
                table[i][n + j] = {n + m: c for m, c in hh.items()}
                kp = comp.mul({i: 1}, phi_a[j])
                table[n + i][j] = {n + m: c for m, c in kp.items()}
                table[n + i][n + j] = comp.mul(kp, w)
        comps.append(ComponentAlgebra(2 * n, tuple(tuple(r) for r in table), dict(comp.unit)))

    delta = {}
    for a in G:
        for b in G:
            ab = g.mul(a, b)
            na, nb = dims[a], dims[b]
            cols = list(H.delta[(a, b)])
            qt = q.Qt[(a, b)]
            for k in range(dims[ab]):
                t = H.tmul((a, b), H.delta[(a, b)][k], qt)
                cols.append({(na + i, nb + j): c for (i, j), c in t.items()})
            delta[(a, b)] = tuple(cols)
    counit = dict(H.counit)
    for i, c in H.counit.items():
        counit[dims[e] + i] = c
    antipode = []
    for a in G:
        ai = g.inv(a)
        cols = list(H.antipode[a])
        sphi = compose(H.antipode[a], H.phi[(a, ai)])
        cols.extend({dims[ai] + m: c for m, c in col.items()} for col in sphi)
        antipode.append(tuple(cols))
    phi = {}
    for a in G:
        for b in G:
            t = g.conj(b, a)
            cols = list(H.phi[(a, b)])
            cols.extend({dims[t] + m: c for m, c in col.items()} for col in H.phi[(a, b)])
            phi[(a, b)] = tuple(cols)
    RT = TCoalgebra(H.field, g, comps, delta, counit, antipode, phi, name=f"RT({H.name})")
    Rt = R.inverse(H)
    R2 = RMatrixFamily({k: dict(v) for k, v in R.R.items()}, {k: dict(v) for k, v in Rt.items()})
    v = TwistFamily({a: {dims[a] + i: c for i, c in H.one(a).items()} for a in G}, "v")
    return RibbonExtension(RT, R2, v, dims)


def ribbon_from_semisimple(H: TCoalgebra, R: RMatrixFamily) -> Tuple[TwistFamily, ValidationReport]:
    """theta_a = u_a^-1 on a semisimple T-coalgebra in characteristic 0."""
    from .analysis import is_semisimple

    if H.field.characteristic != 0:
        raise PreconditionFailed("characteristic", f"field has characteristic {H.field.characteristic}")
    verdict = is_semisimple(H)
    if not verdict.semisimple:
        raise PreconditionFailed("semisimple", "the trace form of some component is degenerate")
    g = H.group
    for a in g.elements():
        if compose(H.antipode[g.inv(a)], H.antipode[a]) != identity_cols(H.dim(a)):
            raise PreconditionFailed("involutive antipode", f"s_(a^-1) s_a is not the identity on component {a}")
    drinfeld = drinfeld_elements(H, R, check=False)
    rep = ValidationReport(subject=f"semisimple twist {H.name}")
    for a in g.elements():
        ai = g.inv(a)
        rep.check("antipode_fixes_u", (a,), H.s(a, drinfeld.u[a]) == drinfeld.u[ai],
                  _w(H.s(a, drinfeld.u[a]), drinfeld.u[ai]))
    theta = TwistFamily(dict(drinfeld.u_inv), "theta")
    rep.merge(check_twist_theta(H, R, theta, drinfeld=drinfeld))
    return theta, rep


def validate_ribbon_extension(ext: RibbonExtension, force: bool = False) -> ValidationReport:
    """validate + check_qt + check_twist_v on RT(H).

    Component associativity is skipped above ``RT_ASSOCIATIVITY_LIMIT`` unless
    ``force`` is set.
    """
    limit = None if force else RT_ASSOCIATIVITY_LIMIT
    rep = ValidationReport(subject=f"ribbon extension {ext.RT.name}")
    rep.merge(validate(ext.RT, associativity_limit=limit))
    rep.merge(check_qt(ext.RT, ext.R), "qt.")
    rep.merge(check_twist_v(ext.RT, ext.R, ext.v), "twist.")
    return rep
