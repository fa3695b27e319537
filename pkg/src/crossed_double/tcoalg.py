"""T-coalgebras (crossed Hopf group coalgebras) by structure constants.

Conventions used throughout the package:

* ``H.comps[a]`` is the component algebra attached to the group element ``a``.
* ``H.delta[(a, b)][k]`` is the two-leg tensor Delta_{a,b}(e_k), e_k a basis
  vector of the component ``a*b``; keys are ``(i, j)`` with ``i`` indexing
  ``H_a`` and ``j`` indexing ``H_b``.
* ``H.counit`` is a sparse covector on ``H_1``.
* ``H.antipode[a]`` are the columns of s_a: H_a -> H_{a^-1}.
* ``H.phi[(a, b)]`` are the columns of the conjugation H_a -> H_{b a b^-1}
  by ``b``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import AntipodeNotInvertible, NotHomomorphism, NotHopfAutomorphism, ShapeMismatch, SingularMatrix
from .exact_linalg import (
    Field,
    add_into,
    clean,
    compose,
    covector_apply,
    flip,
    identity_cols,
    invert_cols,
    lin_apply,
    rank_of_columns,
    tensor_apply,
    tensor_mul,
    tensor_of,
)
from .finite_group import FiniteGroup, trivial_group
from .graded_core import ComponentAlgebra
from .report import ValidationReport


class TCoalgebra:
    """A T-coalgebra over a finite group; treat instances as immutable."""

    def __init__(self, field: Field, group: FiniteGroup, comps, delta, counit, antipode, phi, name: str = ""):
        self.field = field
        self.group = group
        self.comps: Tuple[ComponentAlgebra, ...] = tuple(comps)
        self.name = name
        conv = field
        self.delta: Dict[tuple, tuple] = {
            key: tuple(clean({k: conv(v) for k, v in t.items()}) for t in blocks) for key, blocks in delta.items()
        }
        self.counit = clean({i: conv(v) for i, v in counit.items()})
        self.antipode = tuple(tuple(clean({i: conv(v) for i, v in col.items()}) for col in cols) for cols in antipode)
        self.phi: Dict[tuple, tuple] = {
            key: tuple(clean({i: conv(v) for i, v in col.items()}) for col in cols) for key, cols in phi.items()
        }
        self._check_shapes()

    # ------------------------------------------------------------ shapes

    def _check_shapes(self):
        g = self.group
        n = g.order
        if len(self.comps) != n:
            raise ShapeMismatch(f"{len(self.comps)} components for a group of order {n}")
        dims = [c.dim for c in self.comps]

        def cols_ok(cols, src, dst, what):
            if len(cols) != dims[src]:
                raise ShapeMismatch(f"{what}: {len(cols)} columns, expected {dims[src]}")
            for col in cols:
                for i in col:
                    if not 0 <= i < dims[dst]:
                        raise ShapeMismatch(f"{what}: row index {i} outside component of dimension {dims[dst]}")

        if len(self.antipode) != n:
            raise ShapeMismatch(f"{len(self.antipode)} antipode blocks for a group of order {n}")
        for a in g.elements():
            cols_ok(self.antipode[a], a, g.inv(a), f"antipode {a}")
            for b in g.elements():
                blocks = self.delta.get((a, b))
                if blocks is None:
                    raise ShapeMismatch(f"missing comultiplication block {(a, b)}")
                if len(blocks) != dims[g.mul(a, b)]:
                    raise ShapeMismatch(f"delta block {(a, b)} has {len(blocks)} columns, expected {dims[g.mul(a, b)]}")
                for t in blocks:
                    for key in t:
                        if len(key) != 2 or not (0 <= key[0] < dims[a] and 0 <= key[1] < dims[b]):
                            raise ShapeMismatch(f"delta block {(a, b)} has bad key {key}")
                phi = self.phi.get((a, b))
                if phi is None:
                    raise ShapeMismatch(f"missing conjugation block {(a, b)}")
                cols_ok(phi, a, g.conj(b, a), f"phi {(a, b)}")
        for i in self.counit:
            if not 0 <= i < dims[g.identity]:
                raise ShapeMismatch(f"counit index {i} outside H_1")

    # ------------------------------------------------------------ evaluation helpers

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(c.dim for c in self.comps)

    def dim(self, a: int) -> int:
        return self.comps[a].dim

    def one(self, a: int):
        return dict(self.comps[a].unit)

    def mul(self, a: int, x, y):
        return self.comps[a].mul(x, y)

    def delta_vec(self, a: int, b: int, x) -> dict:
        acc: dict = {}
        blocks = self.delta[(a, b)]
        for k, c in x.items():
            add_into(acc, blocks[k], c)
        return clean(acc)

    def eps(self, x):
        return covector_apply(self.counit, x)

    def s(self, a: int, x):
        return lin_apply(self.antipode[a], x)

    def ph(self, beta: int, alpha: int, x):
        """Conjugation by ``beta`` of an element of H_alpha."""
        return lin_apply(self.phi[(alpha, beta)], x)

    def tables(self, grades: Sequence[int]):
        return [self.comps[a].table for a in grades]

    def tmul(self, grades: Sequence[int], x, y):
        return tensor_mul(self.tables(grades), x, y)

    def tone(self, grades: Sequence[int]):
        return tensor_of(*(self.comps[a].unit for a in grades))

    @cached_property
    def antipode_inverse(self) -> Tuple[tuple, ...]:
        """Columns of s_a^-1 : H_{a^-1} -> H_a, indexed by ``a``."""
        return antipode_inverse(self)

    def s_inv(self, a: int, x):
        """s_a^-1 applied to x in H_{a^-1}."""
        return lin_apply(self.antipode_inverse[a], x)

    def same_constants(self, other: "TCoalgebra") -> bool:
        return (
            self.field == other.field
            and self.group.table == other.group.table
            and all(a == b for a, b in zip(self.comps, other.comps))
            and self.delta == other.delta
            and self.counit == other.counit
            and self.antipode == other.antipode
            and self.phi == other.phi
        )

    def __repr__(self):
        return f"TCoalgebra({self.name or '?'}, group order {self.group.order}, dims {list(self.dims)})"


# ---------------------------------------------------------------- validation


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CROSSED_DOUBLE_THREADS", "1")))
    except ValueError:
        return 1


def run_checks(subject: str, checks: Sequence[Callable[[ValidationReport], None]]) -> ValidationReport:
    """Run independent check groups, possibly concurrently, merging in order."""
    parts = [ValidationReport() for _ in checks]
    n = _threads()
    if n > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            list(pool.map(lambda pc: pc[1](pc[0]), zip(parts, checks)))
    else:
        for part, check in zip(parts, checks):
            check(part)
    out = ValidationReport(subject=subject)
    for part in parts:
        out.merge(part)
    return out


def _w(lhs, rhs):
    return {"lhs": lhs, "rhs": rhs}


def check_component_algebras(H, rep: ValidationReport, label: str = "algebra",
                             associativity_limit: Optional[int] = None):
    """Unit and associativity on basis triples.

    Components larger than ``associativity_limit`` skip the cubic
    associativity sweep and are listed in ``rep.skipped``.
    """
    for a, comp in enumerate(H.comps):
        d = comp.dim
        unit = comp.unit
        for i in range(d):
            ei = {i: 1}
            rep.check(f"{label}.unit", (a, i), comp.mul(unit, ei) == ei and comp.mul(ei, unit) == ei,
                      _w(comp.mul(unit, ei), comp.mul(ei, unit)))
        if associativity_limit is not None and d > associativity_limit:
            rep.skipped.append(f"{label}.associativity[{a}]")
            continue
        for i in range(d):
            for j in range(d):
                ij = comp.table[i][j]
                for k in range(d):
                    lhs = comp.mul(ij, {k: 1})
                    rhs = comp.mul({i: 1}, comp.table[j][k])
                    rep.check(f"{label}.associativity", (a, i, j, k), lhs == rhs, _w(lhs, rhs))


def validate(H: TCoalgebra, subject: Optional[str] = None,
             associativity_limit: Optional[int] = None) -> ValidationReport:
    """Exhaustively check every axiom on basis elements.

    Failures of antipode anti(co)multiplicativity are reported with kind ``derived`` and the
    antipode/conjugation compatibility with kind ``inferred``.
    """
    g = H.group
    G = list(g.elements())
    e = g.identity

    def algebras(rep):
        check_component_algebras(H, rep, associativity_limit=associativity_limit)

    def delta_mult(rep):
        for a in G:
            for b in G:
                ab = g.mul(a, b)
                comp = H.comps[ab]
                grades = (a, b)
                rep.check("delta.unital", (a, b), H.delta_vec(a, b, comp.unit) == H.tone(grades),
                          _w(H.delta_vec(a, b, comp.unit), H.tone(grades)))
                blocks = H.delta[(a, b)]
                for i in range(comp.dim):
                    for j in range(comp.dim):
                        lhs = H.delta_vec(a, b, comp.table[i][j])
                        rhs = H.tmul(grades, blocks[i], blocks[j])
                        rep.check("delta.multiplicative", (a, b, i, j), lhs == rhs, _w(lhs, rhs))

    def coassoc(rep):
        for a in G:
            for b in G:
                for c in G:
                    abc = g.prod(a, b, c)
                    left_maps = [None, H.delta[(b, c)]]
                    right_maps = [H.delta[(a, b)], None]
                    for k in range(H.dim(abc)):
                        t1 = _split_leg(H.delta[(a, g.mul(b, c))][k], 1, H.delta[(b, c)])
                        t2 = _split_leg(H.delta[(g.mul(a, b), c)][k], 0, H.delta[(a, b)])
                        rep.check("delta.coassociative", (a, b, c, k), t1 == t2, _w(t1, t2))

    def counit(rep):
        c1 = H.comps[e]
        rep.check("counit.unital", (), H.eps(c1.unit) == 1, {"value": H.eps(c1.unit)})
        for i in range(c1.dim):
            for j in range(c1.dim):
                lhs = H.eps(c1.table[i][j])
                rhs = H.eps({i: 1}) * H.eps({j: 1})
                rep.check("counit.multiplicative", (i, j), lhs == rhs, _w(lhs, rhs))
        for a in G:
            for k in range(H.dim(a)):
                left = _contract(H.delta[(e, a)][k], 0, H.counit)
                right = _contract(H.delta[(a, e)][k], 1, H.counit)
                rep.check("counit.left", (a, k), left == {k: 1}, _w(left, {k: 1}))
                rep.check("counit.right", (a, k), right == {k: 1}, _w(right, {k: 1}))

    def conjugation(rep):
        for a in G:
            rep.check("phi.identity", (a,), H.phi[(a, e)] == identity_cols(H.dim(a)),
                      {"block": list(H.phi[(a, e)])})
            for b in G:
                target = g.conj(b, a)
                cols = H.phi[(a, b)]
                comp, tcomp = H.comps[a], H.comps[target]
                rep.check("phi.unital", (a, b), lin_apply(cols, comp.unit) == tcomp.unit,
                          _w(lin_apply(cols, comp.unit), tcomp.unit))
                rep.check("phi.bijective", (a, b),
                          comp.dim == tcomp.dim and rank_of_columns(cols, tcomp.dim, H.field) == comp.dim,
                          {"dims": [comp.dim, tcomp.dim]})
                for i in range(comp.dim):
                    for j in range(comp.dim):
                        lhs = lin_apply(cols, comp.table[i][j])
                        rhs = tcomp.mul(cols[i], cols[j])
                        rep.check("phi.multiplicative", (a, b, i, j), lhs == rhs, _w(lhs, rhs))
                for c in G:
                    lhs = compose(H.phi[(g.conj(c, a), b)], H.phi[(a, c)])
                    rhs = H.phi[(a, g.mul(b, c))]
                    rep.check("phi.group_action", (a, b, c), lhs == rhs, _w(list(lhs), list(rhs)))

    def conj_coalgebra(rep):
        for c in G:
            for k in range(H.dim(e)):
                lhs = H.eps(H.phi[(e, c)][k])
                rep.check("phi.counit", (c, k), lhs == H.eps({k: 1}), _w(lhs, H.eps({k: 1})))
            for a in G:
                for b in G:
                    ab = g.mul(a, b)
                    ca, cb = g.conj(c, a), g.conj(c, b)
                    for k in range(H.dim(ab)):
                        lhs = H.delta_vec(ca, cb, H.phi[(ab, c)][k])
                        rhs = tensor_apply([H.phi[(a, c)], H.phi[(b, c)]], H.delta[(a, b)][k])
                        rep.check("phi.delta", (a, b, c, k), lhs == rhs, _w(lhs, rhs))

    def antipode(rep):
        for a in G:
            ai = g.inv(a)
            comp = H.comps[a]
            for k in range(H.dim(e)):
                expect = {i: H.eps({k: 1}) * v for i, v in comp.unit.items()}
                expect = clean(expect)
                left = _mu_after(comp, H.delta[(ai, a)][k], H.antipode[ai], None)
                right = _mu_after(comp, H.delta[(a, ai)][k], None, H.antipode[ai])
                rep.check("antipode.left", (a, k), left == expect, _w(left, expect))
                rep.check("antipode.right", (a, k), right == expect, _w(right, expect))

    def antipode_derived(rep):
        for a in G:
            comp = H.comps[a]
            target = H.comps[g.inv(a)]
            s = H.antipode[a]
            rep.check("antipode.unital", (a,), lin_apply(s, comp.unit) == target.unit,
                      _w(lin_apply(s, comp.unit), target.unit), kind="derived")
            for i in range(comp.dim):
                for j in range(comp.dim):
                    lhs = lin_apply(s, comp.table[i][j])
                    rhs = target.mul(s[j], s[i])
                    rep.check("antipode.antimultiplicative", (a, i, j), lhs == rhs, _w(lhs, rhs), kind="derived")
        for a in G:
            for b in G:
                ab = g.mul(a, b)
                for k in range(H.dim(ab)):
                    lhs = tensor_apply([H.antipode[a], H.antipode[b]], H.delta[(a, b)][k])
                    rhs = flip(H.delta_vec(g.inv(b), g.inv(a), H.antipode[ab][k]))
                    rep.check("antipode.anticomultiplicative", (a, b, k), lhs == rhs, _w(lhs, rhs), kind="derived")
        for b in G:
            for a in G:
                for k in range(H.dim(a)):
                    lhs = H.ph(b, g.inv(a), H.antipode[a][k])
                    rhs = H.s(g.conj(b, a), H.phi[(a, b)][k])
                    rep.check("antipode.phi_compat", (a, b, k), lhs == rhs, _w(lhs, rhs), kind="inferred")

    return run_checks(
        subject or f"T-coalgebra {H.name}".strip(),
        [algebras, delta_mult, coassoc, counit, conjugation, conj_coalgebra, antipode, antipode_derived],
    )


def _split_leg(t: dict, leg: int, blocks) -> dict:
    """Replace leg ``leg`` of a two-leg tensor by its comultiplication."""
    acc: dict = {}
    for key, c in t.items():
        for sub, x in blocks[key[leg]].items():
            nk = key[:leg] + sub + key[leg + 1:]
            acc[nk] = acc.get(nk, 0) + c * x
    return clean(acc)


def _contract(t: dict, leg: int, cov: dict) -> dict:
    acc: dict = {}
    for key, c in t.items():
        x = cov.get(key[leg])
        if x is not None:
            k = key[1 - leg]
            acc[k] = acc.get(k, 0) + c * x
    return clean(acc)


def _mu_after(comp: ComponentAlgebra, t: dict, left_map, right_map) -> dict:
    """mu o (left_map (x) right_map) applied to a two-leg tensor."""
    acc: dict = {}
    for (i, j), c in t.items():
        x = left_map[i] if left_map is not None else {i: 1}
        y = right_map[j] if right_map is not None else {j: 1}
        add_into(acc, comp.mul(x, y), c)
    return clean(acc)


# ---------------------------------------------------------------- constructions


def antipode_inverse(H: TCoalgebra) -> Tuple[tuple, ...]:
    """Columns of s_a^-1: H_{a^-1} -> H_a for every a."""
    g = H.group
    out = []
    for a in g.elements():
        n, m = H.dim(a), H.dim(g.inv(a))
        if n != m:
            raise AntipodeNotInvertible(f"s_{a} maps dimension {n} to {m}")
        try:
            out.append(invert_cols(H.antipode[a], n, H.field))
        except SingularMatrix:
            raise AntipodeNotInvertible(f"antipode block s_{g.names[a]} is singular") from None
    return tuple(out)


def coopposite(H: TCoalgebra) -> TCoalgebra:
    g = H.group
    inv = g.inv
    sinv = H.antipode_inverse
    comps = [H.comps[inv(a)] for a in g.elements()]
    delta = {}
    for a in g.elements():
        for b in g.elements():
            delta[(a, b)] = tuple(flip(t) for t in H.delta[(inv(b), inv(a))])
    antipode = [sinv[a] for a in g.elements()]
    phi = {(a, b): H.phi[(inv(a), b)] for a in g.elements() for b in g.elements()}
    return TCoalgebra(H.field, g, comps, delta, H.counit, antipode, phi, name=f"cop({H.name})")


def mirror(H: TCoalgebra) -> TCoalgebra:
    g = H.group
    inv = g.inv
    comps = [H.comps[inv(a)] for a in g.elements()]
    delta = {}
    for a in g.elements():
        for b in g.elements():
            bi = inv(b)
            first = g.prod(bi, inv(a), b)
            maps = [H.phi[(first, b)], None]
            delta[(a, b)] = tuple(tensor_apply(maps, t) for t in H.delta[(first, bi)])
    antipode = [compose(H.phi[(a, a)], H.antipode[inv(a)]) for a in g.elements()]
    phi = {(a, b): H.phi[(inv(a), b)] for a in g.elements() for b in g.elements()}
    return TCoalgebra(H.field, g, comps, delta, H.counit, antipode, phi, name=f"mirror({H.name})")


def hopf_as_tcoalgebra(field: Field, comp: ComponentAlgebra, delta, counit, antipode, name: str = "") -> TCoalgebra:
    """A classical Hopf algebra viewed as a T-coalgebra over the trivial group."""
    g = trivial_group()
    return TCoalgebra(field, g, [comp], {(0, 0): tuple(delta)}, counit, [tuple(antipode)],
                      {(0, 0): identity_cols(comp.dim)}, name=name)


def check_hopf_automorphism(H1: TCoalgebra, cols) -> Optional[tuple]:
    """Return (condition, witness) for the first failed condition, or None."""
    comp = H1.comps[0]
    d = comp.dim
    if len(cols) != d or rank_of_columns(cols, d, H1.field) != d:
        return ("bijective", None)
    if lin_apply(cols, comp.unit) != clean(dict(comp.unit)):
        return ("unit", None)
    for i in range(d):
        for j in range(d):
            if lin_apply(cols, comp.table[i][j]) != comp.mul(cols[i], cols[j]):
                return ("multiplication", (i, j))
    for k in range(d):
        if H1.delta_vec(0, 0, cols[k]) != tensor_apply([cols, cols], H1.delta[(0, 0)][k]):
            return ("comultiplication", (k,))
        if H1.eps(cols[k]) != H1.eps({k: 1}):
            return ("counit", (k,))
        if lin_apply(cols, H1.antipode[0][k]) != H1.s(0, cols[k]):
            return ("antipode", (k,))
    return None


def thcoalgebra(H1: TCoalgebra, group: FiniteGroup, action: Sequence, name: str = "") -> TCoalgebra:
    """The T-coalgebra with every component equal to the Hopf algebra ``H1``.

    ``action[b]`` gives the columns of the Hopf automorphism by which ``b``
    acts; it must be a group homomorphism.
    """
    if H1.group.order != 1:
        raise ShapeMismatch("the base must be a Hopf algebra (trivial group)")
    n = group.order
    if len(action) != n:
        raise ShapeMismatch(f"{len(action)} automorphisms for a group of order {n}")
    action = [tuple(clean({i: H1.field(v) for i, v in col.items()}) for col in cols) for cols in action]
    for b in group.elements():
        bad = check_hopf_automorphism(H1, action[b])
        if bad is not None:
            raise NotHopfAutomorphism(f"action of {group.names[b]} does not preserve the {bad[0]}",
                                      witness=(b, bad[0], bad[1]))
    for b in group.elements():
        for c in group.elements():
            if compose(action[b], action[c]) != action[group.mul(b, c)]:
                raise NotHomomorphism(f"action is not a homomorphism at {(group.names[b], group.names[c])}",
                                      witness=(b, c))
    comp = H1.comps[0]
    delta = {(a, b): H1.delta[(0, 0)] for a in group.elements() for b in group.elements()}
    antipode = [H1.antipode[0]] * n
    phi = {(a, b): action[b] for a in group.elements() for b in group.elements()}
    return TCoalgebra(H1.field, group, [comp] * n, delta, H1.counit, antipode, phi, name=name or f"TH({H1.name})")


def check_morphism(A: TCoalgebra, B: TCoalgebra, maps: Sequence, subject: str = "morphism",
                   injective: bool = True) -> ValidationReport:
    """Check that ``maps[a]``: A_a -> B_a is a morphism of T-coalgebras.

    Checks multiplicativity, units, comultiplication, counit, antipode and
    conjugation blockwise on basis elements, and optionally injectivity.
    """
    g = A.group
    G = list(g.elements())
    rep = ValidationReport(subject=subject)
    for a in G:
        f = maps[a]
        ca, cb = A.comps[a], B.comps[a]
        rep.check("morphism.unit", (a,), lin_apply(f, ca.unit) == cb.unit, _w(lin_apply(f, ca.unit), cb.unit))
        for i in range(ca.dim):
            for j in range(ca.dim):
                lhs = lin_apply(f, ca.table[i][j])
                rhs = cb.mul(f[i], f[j])
                rep.check("morphism.multiplicative", (a, i, j), lhs == rhs, _w(lhs, rhs))
        if injective:
            rep.check("morphism.injective", (a,), rank_of_columns(f, cb.dim, A.field) == ca.dim, None)
        for k in range(ca.dim):
            lhs = lin_apply(maps[g.inv(a)], A.antipode[a][k])
            rhs = B.s(a, f[k])
            rep.check("morphism.antipode", (a, k), lhs == rhs, _w(lhs, rhs))
            for b in G:
                lhs = lin_apply(maps[g.conj(b, a)], A.phi[(a, b)][k])
                rhs = B.ph(b, a, f[k])
                rep.check("morphism.phi", (a, b, k), lhs == rhs, _w(lhs, rhs))
    e = g.identity
    for k in range(A.dim(e)):
        lhs = B.eps(maps[e][k])
        rep.check("morphism.counit", (k,), lhs == A.eps({k: 1}), _w(lhs, A.eps({k: 1})))
    for a in G:
        for b in G:
            ab = g.mul(a, b)
            for k in range(A.dim(ab)):
                lhs = tensor_apply([maps[a], maps[b]], A.delta[(a, b)][k])
                rhs = B.delta_vec(a, b, maps[ab][k])
                rep.check("morphism.delta", (a, b, k), lhs == rhs, _w(lhs, rhs))
    return rep


def transport(H: TCoalgebra, maps: Sequence, name: str = "") -> TCoalgebra:
    """The structure carried by H along invertible linear maps ``maps[a]`` on H_a.

    ``maps`` is then an isomorphism H -> transport(H, maps) of T-coalgebras.
    """
    g = H.group
    F = H.field
    inv = [invert_cols(m, H.dim(a), F) for a, m in enumerate(maps)]
    comps = []
    for a, comp in enumerate(H.comps):
        P, Pi = maps[a], inv[a]
        table = [[lin_apply(P, comp.mul(Pi[i], Pi[j])) for j in range(comp.dim)] for i in range(comp.dim)]
        comps.append(ComponentAlgebra(comp.dim, tuple(tuple(r) for r in table), lin_apply(P, comp.unit)))
    delta = {}
    for (a, b), blocks in H.delta.items():
        ab = g.mul(a, b)
        delta[(a, b)] = tuple(tensor_apply([maps[a], maps[b]], H.delta_vec(a, b, Pi_k)) for Pi_k in inv[ab])
    e = g.identity
    counit = {k: H.eps(inv[e][k]) for k in range(H.dim(e))}
    antipode = [tuple(lin_apply(maps[g.inv(a)], H.s(a, v)) for v in inv[a]) for a in g.elements()]
    phi = {(a, b): tuple(lin_apply(maps[g.conj(b, a)], H.ph(b, a, v)) for v in inv[a])
           for a in g.elements() for b in g.elements()}
    return TCoalgebra(F, g, comps, delta, counit, antipode, phi, name=name or H.name)
