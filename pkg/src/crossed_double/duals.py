"""T-algebras and the outer, inner and coopposite inner duals."""

from __future__ import annotations

from typing import Dict, Tuple

from .errors import ShapeMismatch
from .exact_linalg import Field, add_into, clean, compose, covector_apply, identity_cols, lin_apply, rank_of_columns, tensor_apply, tensor_of
from .finite_group import FiniteGroup
from .graded_core import ComponentCoalgebra, pack_talgebra
from .report import ValidationReport
from .tcoalg import TCoalgebra, coopposite, run_checks, thcoalgebra


class TAlgebra:
    """A family of coalgebras with a graded multiplication.

    ``mu[(a, b)][i][j]`` is the sparse vector e_i e_j in H_{ab}; ``unit`` lives
    in H_1; ``antipode[a]`` maps H_a -> H_{a^-1}; ``psi[(a, b)]`` maps
    H_a -> H_{b a b^-1}.
    """

    def __init__(self, field: Field, group: FiniteGroup, comps, mu, unit, antipode, psi, name: str = ""):
        self.field = field
        self.group = group
        self.comps: Tuple[ComponentCoalgebra, ...] = tuple(comps)
        self.mu: Dict[tuple, tuple] = {k: tuple(tuple(clean({m: field(v) for m, v in x.items()}) for x in row) for row in blk)
                                       for k, blk in mu.items()}
        self.unit = clean({k: field(v) for k, v in unit.items()})
        self.antipode = tuple(tuple(clean({i: field(v) for i, v in c.items()}) for c in cols) for cols in antipode)
        self.psi = {k: tuple(clean({i: field(v) for i, v in c.items()}) for c in cols) for k, cols in psi.items()}
        self.name = name
        n = group.order
        if len(self.comps) != n or len(self.antipode) != n:
            raise ShapeMismatch("one coalgebra and one antipode block per group element are required")
        for a in group.elements():
            for b in group.elements():
                blk = self.mu.get((a, b))
                if blk is None or len(blk) != self.dims[a] or any(len(r) != self.dims[b] for r in blk):
                    raise ShapeMismatch(f"multiplication block {(a, b)} has the wrong shape")
                if (a, b) not in self.psi or len(self.psi[(a, b)]) != self.dims[a]:
                    raise ShapeMismatch(f"conjugation block {(a, b)} has the wrong shape")

    @property
    def dims(self):
        return tuple(c.dim for c in self.comps)

    def dim(self, a: int) -> int:
        return self.comps[a].dim

    def mult(self, a: int, b: int, x: dict, y: dict) -> dict:
        acc: dict = {}
        blk = self.mu[(a, b)]
        for i, c in x.items():
            row = blk[i]
            for j, d in y.items():
                add_into(acc, row[j], c * d)
        return clean(acc)

    def same_constants(self, other: "TAlgebra") -> bool:
        return (self.field == other.field and self.group.table == other.group.table
                and self.comps == other.comps and self.mu == other.mu and self.unit == other.unit
                and self.antipode == other.antipode and self.psi == other.psi)

    def __repr__(self):
        return f"TAlgebra({self.name or '?'}, dims {list(self.dims)})"


def _w(lhs, rhs):
    return {"lhs": lhs, "rhs": rhs}


def validate_talgebra(T: TAlgebra) -> ValidationReport:
    g = T.group
    G = list(g.elements())
    e = g.identity

    def coalgebras(rep):
        for a in G:
            c = T.comps[a]
            for k in range(c.dim):
                t1 = _split(c.delta[k], 1, c.delta)
                t2 = _split(c.delta[k], 0, c.delta)
                rep.check("coalgebra.coassociative", (a, k), t1 == t2, _w(t1, t2))
                left = _sum_keys(c.delta[k], c.counit, 0)
                right = _sum_keys(c.delta[k], c.counit, 1)
                rep.check("coalgebra.counit", (a, k), left == {k: 1} and right == {k: 1}, _w(left, right))

    def multiplication(rep):
        for a in G:
            for b in G:
                ab = g.mul(a, b)
                ca, cb, cab = T.comps[a], T.comps[b], T.comps[ab]
                for i in range(ca.dim):
                    for j in range(cb.dim):
                        prod = T.mu[(a, b)][i][j]
                        lhs = cab.comul(prod)
                        rhs: dict = {}
                        for (p, q), x in ca.delta[i].items():
                            for (r, s), y in cb.delta[j].items():
                                left = T.mu[(a, b)][p][r]
                                right = T.mu[(a, b)][q][s]
                                for m, u in left.items():
                                    for n, v in right.items():
                                        rhs[(m, n)] = rhs.get((m, n), 0) + x * y * u * v
                        rhs = clean(rhs)
                        rep.check("mu.comultiplicative", (a, b, i, j), lhs == rhs, _w(lhs, rhs))
                        lhs_e = cab.eps(prod)
                        rhs_e = ca.eps({i: 1}) * cb.eps({j: 1})
                        rep.check("mu.counital", (a, b, i, j), lhs_e == rhs_e, _w(lhs_e, rhs_e))
        for a in G:
            for b in G:
                for c in G:
                    ab, bc = g.mul(a, b), g.mul(b, c)
                    for i in range(T.dim(a)):
                        for j in range(T.dim(b)):
                            for k in range(T.dim(c)):
                                lhs = T.mult(ab, c, T.mu[(a, b)][i][j], {k: 1})
                                rhs = T.mult(a, bc, {i: 1}, T.mu[(b, c)][j][k])
                                rep.check("mu.associative", (a, b, c, i, j, k), lhs == rhs, _w(lhs, rhs))

    def unit(rep):
        c1 = T.comps[e]
        rep.check("unit.coalgebra", (), c1.comul(T.unit) == tensor_of(T.unit, T.unit) and c1.eps(T.unit) == 1,
                  _w(c1.comul(T.unit), tensor_of(T.unit, T.unit)))
        for a in G:
            for i in range(T.dim(a)):
                left = T.mult(e, a, T.unit, {i: 1})
                right = T.mult(a, e, {i: 1}, T.unit)
                rep.check("unit.left", (a, i), left == {i: 1}, _w(left, {i: 1}))
                rep.check("unit.right", (a, i), right == {i: 1}, _w(right, {i: 1}))

    def conjugation(rep):
        for a in G:
            rep.check("psi.identity", (a,), T.psi[(a, e)] == identity_cols(T.dim(a)), None)
            for b in G:
                t = g.conj(b, a)
                cols = T.psi[(a, b)]
                ca, ct = T.comps[a], T.comps[t]
                rep.check("psi.bijective", (a, b), ca.dim == ct.dim and rank_of_columns(cols, ct.dim, T.field) == ca.dim, None)
                for k in range(ca.dim):
                    lhs = ct.comul(cols[k])
                    rhs = tensor_apply([cols, cols], ca.delta[k])
                    rep.check("psi.coalgebra", (a, b, k), lhs == rhs and ct.eps(cols[k]) == ca.eps({k: 1}), _w(lhs, rhs))
                for c in G:
                    lhs = compose(T.psi[(t, c)], cols)
                    rhs = T.psi[(a, g.mul(c, b))]
                    rep.check("psi.group_action", (a, b, c), lhs == rhs, None)
        for b in G:
            rep.check("psi.unital", (b,), lin_apply(T.psi[(e, b)], T.unit) == T.unit, None)
            for a in G:
                for c in G:
                    ac = g.mul(a, c)
                    for i in range(T.dim(a)):
                        for j in range(T.dim(c)):
                            lhs = lin_apply(T.psi[(ac, b)], T.mu[(a, c)][i][j])
                            rhs = T.mult(g.conj(b, a), g.conj(b, c), T.psi[(a, b)][i], T.psi[(c, b)][j])
                            rep.check("psi.multiplicative", (a, c, b, i, j), lhs == rhs, _w(lhs, rhs))

    def antipode(rep):
        for a in G:
            ai = g.inv(a)
            c = T.comps[a]
            S = T.antipode[a]
            for k in range(c.dim):
                expect = clean({m: c.eps({k: 1}) * v for m, v in T.unit.items()})
                left: dict = {}
                right: dict = {}
                for (i, j), v in c.delta[k].items():
                    add_into(left, T.mult(ai, a, S[i], {j: 1}), v)
                    add_into(right, T.mult(a, ai, {i: 1}, S[j]), v)
                left, right = clean(left), clean(right)
                rep.check("antipode.left", (a, k), left == expect, _w(left, expect))
                rep.check("antipode.right", (a, k), right == expect, _w(right, expect))

    return run_checks(f"T-algebra {T.name}".strip(), [coalgebras, multiplication, unit, conjugation, antipode])


def _split(t, leg, blocks):
    acc: dict = {}
    for key, c in t.items():
        for sub, x in blocks[key[leg]].items():
            nk = key[:leg] + sub + key[leg + 1:]
            acc[nk] = acc.get(nk, 0) + c * x
    return clean(acc)


def _sum_keys(t, cov, leg):
    acc: dict = {}
    for key, c in t.items():
        x = cov.get(key[leg])
        if x is not None:
            k = key[1 - leg]
            acc[k] = acc.get(k, 0) + c * x
    return clean(acc)


def transpose_cols(cols, target_dim: int) -> tuple:
    """Columns of the transpose of a map given by ``cols`` (dual bases)."""
    out = [dict() for _ in range(target_dim)]
    for m, col in enumerate(cols):
        for k, v in col.items():
            out[k][m] = v
    return tuple(clean(c) for c in out)


def outer_dual(H: TCoalgebra) -> TAlgebra:
    g = H.group
    comps = []
    for a in g.elements():
        comp = H.comps[a]
        d = comp.dim
        delta = [dict() for _ in range(d)]
        for i in range(d):
            for j in range(d):
                for k, v in comp.table[i][j].items():
                    delta[k][(i, j)] = v
        comps.append(ComponentCoalgebra(d, tuple(clean(t) for t in delta), dict(comp.unit)))
    mu = {}
    for a in g.elements():
        for b in g.elements():
            blk = [[dict() for _ in range(H.dim(b))] for _ in range(H.dim(a))]
            for k, t in enumerate(H.delta[(a, b)]):
                for (i, j), v in t.items():
                    blk[i][j][k] = v
            mu[(a, b)] = blk
    antipode = [transpose_cols(H.antipode[g.inv(a)], H.dim(a)) for a in g.elements()]
    psi = {}
    for a in g.elements():
        for b in g.elements():
            t = g.conj(b, a)
            psi[(a, b)] = transpose_cols(H.phi[(t, g.inv(b))], H.dim(a))
    return TAlgebra(H.field, g, comps, mu, dict(H.counit), antipode, psi, name=f"outer({H.name})")


def inner_dual(H: TCoalgebra) -> TCoalgebra:
    """The T-coalgebra with every component equal to the packed outer dual."""
    pk = pack_talgebra(outer_dual(H))
    return thcoalgebra(pk.hopf, H.group, pk.automorphisms, name=f"inner({H.name})")


def coop_inner_dual(H: TCoalgebra) -> TCoalgebra:
    """As the inner dual, but with Delta_*(f)(h (x) k) = f(kh) and antipode s_*."""
    pk = pack_talgebra(outer_dual(H))
    return thcoalgebra(coopposite(pk.hopf), H.group, pk.automorphisms, name=f"coop_inner({H.name})")


def check_dual_pair(A: TCoalgebra, B: TCoalgebra, subject: str = "dual pair") -> ValidationReport:
    """Check that two Hopf algebras (trivial group) are dual under the coordinate pairing."""
    rep = ValidationReport(subject=subject)
    n = A.dim(0)
    if B.dim(0) != n:
        rep.fail("dimension", (), {"dims": [n, B.dim(0)]})
        return rep
    ca, cb = A.comps[0], B.comps[0]
    da, db = A.delta[(0, 0)], B.delta[(0, 0)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rep.check("product_vs_coproduct", (i, j, k), ca.table[i][j].get(k, 0) == db[k].get((i, j), 0), None)
                rep.check("coproduct_vs_product", (i, j, k), da[k].get((i, j), 0) == cb.table[i][j].get(k, 0), None)
    for k in range(n):
        rep.check("unit_vs_counit", (k,), ca.unit.get(k, 0) == B.counit.get(k, 0), None)
        rep.check("counit_vs_unit", (k,), A.counit.get(k, 0) == cb.unit.get(k, 0), None)
        for m in range(n):
            rep.check("antipode", (k, m), A.antipode[0][k].get(m, 0) == B.antipode[0][m].get(k, 0), None)
    return rep
