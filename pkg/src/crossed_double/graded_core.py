"""Component (co)algebras, Sweedler-style iterated comultiplication,
convolution algebras and packed graded Hopf algebras."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import GradingViolation, NotConvolutionInvertible, ShapeMismatch
from .exact_linalg import Field, Matrix, add_into, clean, covector_apply, lin_apply, solve


@dataclass(frozen=True, eq=False)
class ComponentAlgebra:
    """Finite-dimensional algebra: ``table[i][j]`` is the sparse vector e_i e_j."""

    dim: int
    table: tuple
    unit: dict

    @classmethod
    def from_dense(cls, c, unit, field: Field) -> "ComponentAlgebra":
        d = len(unit)
        table = tuple(
            tuple(clean({k: field(c[i][j][k]) for k in range(d)}) for j in range(d)) for i in range(d)
        )
        return cls(d, table, clean({k: field(x) for k, x in enumerate(unit)}))

    @classmethod
    def from_rule(cls, d: int, rule, unit: dict, field: Field) -> "ComponentAlgebra":
        """Build from ``rule(i, j) -> sparse vector``."""
        table = tuple(tuple(clean({k: field(v) for k, v in rule(i, j).items()}) for j in range(d)) for i in range(d))
        return cls(d, table, clean({k: field(v) for k, v in unit.items()}))

    def mul(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        table = self.table
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                prod = row[j]
                if prod:
                    add_into(acc, prod, a * b)
        return clean(acc)

    def one(self) -> dict:
        return dict(self.unit)

    def left_mult(self, x: dict) -> tuple:
        """Columns of the left multiplication map L_x."""
        return tuple(self.mul(x, {j: 1}) for j in range(self.dim))

    def dense(self, field: Field):
        z = field(0)
        return [[[self.table[i][j].get(k, z) for k in range(self.dim)] for j in range(self.dim)] for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, ComponentAlgebra) and self.dim == other.dim and self.table == other.table and self.unit == other.unit

    def __hash__(self):
        return hash(self.dim)


@dataclass(frozen=True, eq=False)
class ComponentCoalgebra:
    """Finite-dimensional coalgebra: ``delta[k]`` is a two-leg tensor."""

    dim: int
    delta: tuple
    counit: dict

    def comul(self, x: dict) -> dict:
        acc: dict = {}
        for k, c in x.items():
            add_into(acc, self.delta[k], c)
        return clean(acc)

    def eps(self, x: dict):
        return covector_apply(self.counit, x)

    def __eq__(self, other):
        return isinstance(other, ComponentCoalgebra) and self.dim == other.dim and self.delta == other.delta and self.counit == other.counit

    def __hash__(self):
        return hash(self.dim)


@dataclass(frozen=True, eq=False)
class GradedHopfAlgebra:
    """A Hopf algebra on a direct sum of blocks indexed by the group.

    ``hopf`` is a T-coalgebra over the trivial group holding the total Hopf
    data; ``dims[a]`` is the size of block ``a`` (blocks are contiguous in
    group order); ``automorphisms[b]`` are the columns of the automorphism by
    which ``b`` acts.  ``variant`` is ``"coalgebra"`` for packed T-coalgebras
    and ``"algebra"`` for packed T-algebras.
    """

    group: object
    hopf: object
    dims: Tuple[int, ...]
    automorphisms: tuple
    variant: str

    @property
    def offsets(self) -> Tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def block_of(self, index: int) -> int:
        for a, (o, d) in enumerate(zip(self.offsets, self.dims)):
            if o <= index < o + d:
                return a
        raise IndexError(index)

    def same_constants(self, other: "GradedHopfAlgebra") -> bool:
        return (
            self.dims == other.dims
            and self.variant == other.variant
            and self.automorphisms == other.automorphisms
            and self.hopf.same_constants(other.hopf)
        )


def _offsets(dims: Sequence[int]) -> Tuple[int, ...]:
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return tuple(out)


# ---------------------------------------------------------------- Sweedler notation


def iterated_delta(H, word: Sequence[int], x: dict) -> dict:
    """Delta_{a1,...,an}(x) as an n-leg tensor, nested as (id (x) Delta) o Delta."""
    word = tuple(word)
    if not word:
        raise ValueError("empty word")
    if len(word) == 1:
        return {(i,): c for i, c in x.items() if c != 0}
    g = H.group
    rest = g.prod(*word[1:])
    first = H.delta_vec(word[0], rest, x)
    cache: dict = {}
    acc: dict = {}
    for (i, j), c in first.items():
        sub = cache.get(j)
        if sub is None:
            sub = cache[j] = iterated_delta(H, word[1:], {j: 1})
        for key, v in sub.items():
            nk = (i,) + key
            acc[nk] = acc.get(nk, 0) + c * v
    return clean(acc)


# ---------------------------------------------------------------- convolution


def convolution_product(H, A, f1, beta1: int, f2, beta2: int) -> tuple:
    """(f1 * f2)(h) = f1(h') f2(h'') with h' in H_beta1, h'' in H_beta2.

    ``f1``, ``f2`` are columns of linear maps into the algebra ``A``.
    """
    if len(f1) != H.dim(beta1) or len(f2) != H.dim(beta2):
        raise ShapeMismatch("convolution factors do not match the component dimensions")
    out = []
    for t in H.delta[(beta1, beta2)]:
        acc: dict = {}
        for (i, j), c in t.items():
            add_into(acc, A.mul(f1[i], f2[j]), c)
        out.append(clean(acc))
    return tuple(out)


def unit_map(H, A) -> tuple:
    """eta_A o epsilon on H_1."""
    return tuple(clean({k: H.eps({i: 1}) * v for k, v in A.unit.items()}) for i in range(H.dim(H.group.identity)))


def convolution_inverse(H, A, f, alpha: int) -> tuple:
    """The two-sided inverse g: H_{alpha^-1} -> A of f: H_alpha -> A.

    Solved as a linear system in the entries of g.
    """
    g = H.group
    ai = g.inv(alpha)
    e = g.identity
    n, d = H.dim(ai), A.dim
    if len(f) != H.dim(alpha):
        raise ShapeMismatch("f does not match the component dimension")
    field = H.field
    nvars = n * d
    rows, rhs = [], []
    target = unit_map(H, A)
    for side in ("left", "right"):
        blocks = H.delta[(ai, alpha)] if side == "left" else H.delta[(alpha, ai)]
        for k in range(H.dim(e)):
            eq = [dict() for _ in range(d)]
            for key, c in blocks[k].items():
                gi, fi = (key[0], key[1]) if side == "left" else (key[1], key[0])
                for m in range(d):
                    prod = A.mul({m: 1}, f[fi]) if side == "left" else A.mul(f[fi], {m: 1})
                    for out, v in prod.items():
                        var = gi * d + m
                        eq[out][var] = eq[out].get(var, 0) + c * v
            for out in range(d):
                rows.append([eq[out].get(v, 0) for v in range(nvars)])
                rhs.append(target[k].get(out, 0))
    if nvars == 0:
        if any(x != 0 for x in rhs):
            raise NotConvolutionInvertible("no inverse exists")
        return tuple()
    if not rows:
        return tuple({} for _ in range(n))
    sol = solve(Matrix.from_rows(rows, field, ncols=nvars), rhs)
    if sol is None:
        raise NotConvolutionInvertible(f"map on component {g.names[alpha]} has no convolution inverse")
    return tuple(clean({m: sol[i * d + m] for m in range(d)}) for i in range(n))


# ---------------------------------------------------------------- packing


def pack_tcoalgebra(H) -> GradedHopfAlgebra:
    """The Hopf algebra on the direct sum of all components (product algebra)."""
    from .tcoalg import TCoalgebra
    from .finite_group import trivial_group

    g = H.group
    dims = H.dims
    off = _offsets(dims)
    total = sum(dims)

    def shift(v, a):
        o = off[a]
        return {o + i: c for i, c in v.items()}

    table = [[{} for _ in range(total)] for _ in range(total)]
    unit: dict = {}
    for a in g.elements():
        comp = H.comps[a]
        o = off[a]
        for i in range(comp.dim):
            for j in range(comp.dim):
                table[o + i][o + j] = shift(comp.table[i][j], a)
        unit.update(shift(comp.unit, a))
    comp = ComponentAlgebra(total, tuple(tuple(r) for r in table), unit)
    delta = [None] * total
    antipode = [None] * total
    for a in g.elements():
        for k in range(H.dim(a)):
            acc: dict = {}
            for b in g.elements():
                c = g.mul(g.inv(b), a)
                for (i, j), v in H.delta[(b, c)][k].items():
                    key = (off[b] + i, off[c] + j)
                    acc[key] = acc.get(key, 0) + v
            delta[off[a] + k] = clean(acc)
            antipode[off[a] + k] = shift(H.antipode[a][k], g.inv(a))
    counit = shift(H.counit, g.identity)
    autos = []
    for b in g.elements():
        cols = [None] * total
        for a in g.elements():
            for k in range(H.dim(a)):
                cols[off[a] + k] = shift(H.phi[(a, b)][k], g.conj(b, a))
        autos.append(tuple(cols))
    t = trivial_group()
    hopf = TCoalgebra(H.field, t, [comp], {(0, 0): tuple(delta)}, counit, [tuple(antipode)],
                      {(0, 0): tuple({i: 1} for i in range(total))}, name=f"pk({H.name})")
    return GradedHopfAlgebra(g, hopf, tuple(dims), tuple(autos), "coalgebra")


def pack_talgebra(T) -> GradedHopfAlgebra:
    """The Hopf algebra on the direct sum of the components of a T-algebra."""
    from .tcoalg import TCoalgebra
    from .finite_group import trivial_group

    g = T.group
    dims = T.dims
    off = _offsets(dims)
    total = sum(dims)
    table = [[{} for _ in range(total)] for _ in range(total)]
    for a in g.elements():
        for b in g.elements():
            ab = g.mul(a, b)
            block = T.mu[(a, b)]
            for i in range(dims[a]):
                for j in range(dims[b]):
                    table[off[a] + i][off[b] + j] = {off[ab] + k: v for k, v in block[i][j].items()}
    e = g.identity
    unit = {off[e] + k: v for k, v in T.unit.items()}
    comp = ComponentAlgebra(total, tuple(tuple(r) for r in table), unit)
    delta, antipode, counit = [], [], {}
    for a in g.elements():
        c = T.comps[a]
        for k in range(dims[a]):
            delta.append({(off[a] + i, off[a] + j): v for (i, j), v in c.delta[k].items()})
            antipode.append({off[g.inv(a)] + i: v for i, v in T.antipode[a][k].items()})
        for k, v in c.counit.items():
            counit[off[a] + k] = v
    autos = []
    for b in g.elements():
        cols = []
        for a in g.elements():
            t = g.conj(b, a)
            cols.extend({off[t] + i: v for i, v in col.items()} for col in T.psi[(a, b)])
        autos.append(tuple(cols))
    hopf = TCoalgebra(T.field, trivial_group(), [comp], {(0, 0): tuple(delta)}, counit, [tuple(antipode)],
                      {(0, 0): tuple({i: 1} for i in range(total))}, name=f"pk({T.name})")
    return GradedHopfAlgebra(g, hopf, tuple(dims), tuple(autos), "algebra")


def _block_support(v: dict, offsets, dims):
    blocks = set()
    for i in v:
        for a, (o, d) in enumerate(zip(offsets, dims)):
            if o <= i < o + d:
                blocks.add(a)
                break
    return blocks


def unpack_hopf(G: GradedHopfAlgebra, kind: str = "coalgebra"):
    """Recover the T-coalgebra (or T-algebra) whose packed form is ``G``.

    Every grading condition is checked first; a failure raises
    GradingViolation naming the condition and a witness.
    """
    if kind not in ("coalgebra", "algebra"):
        raise ValueError(f"unknown kind {kind!r}")
    g = G.group
    hop = G.hopf
    field = hop.field
    dims = tuple(G.dims)
    off = _offsets(dims)
    total = sum(dims)
    if hop.dim(0) != total or len(dims) != g.order:
        raise GradingViolation("blocks cover the algebra", witness=(total, hop.dim(0)))
    comp = hop.comps[0]
    delta = hop.delta[(0, 0)]
    anti = hop.antipode[0]
    e = g.identity

    def local(v, a):
        return {i - off[a]: c for i, c in v.items()}

    if kind == "coalgebra":
        # product of algebras
        units = []
        for a in g.elements():
            ua = {i - off[a]: c for i, c in comp.unit.items() if off[a] <= i < off[a] + dims[a]}
            units.append(ua)
        for i in range(total):
            a = G.block_of(i)
            for j in range(total):
                b = G.block_of(j)
                prod = comp.table[i][j]
                if a != b and prod:
                    raise GradingViolation("algebra product of the components", witness=(i, j))
                if a == b and not _block_support(prod, off, dims) <= {a}:
                    raise GradingViolation("algebra product of the components", witness=(i, j))
        for k in range(total):
            a = G.block_of(k)
            for (i, j) in delta[k]:
                bi, bj = G.block_of(i), G.block_of(j)
                if g.mul(bi, bj) != a:
                    raise GradingViolation("comultiplication respects the grading", witness=(k, (i, j)))
            if a != e and hop.counit.get(k, 0) != 0:
                raise GradingViolation("counit vanishes off the unit component", witness=(k,))
            if not _block_support(anti[k], off, dims) <= {g.inv(a)}:
                raise GradingViolation("antipode maps H_a onto H_a^-1", witness=(k,))
            for b in g.elements():
                if not _block_support(G.automorphisms[b][k], off, dims) <= {g.conj(b, a)}:
                    raise GradingViolation("automorphisms respect the grading", witness=(b, k))
        for a in g.elements():
            if dims[a] != dims[g.inv(a)]:
                raise GradingViolation("antipode maps H_a onto H_a^-1", witness=(a,))
        from .tcoalg import TCoalgebra

        comps = []
        for a in g.elements():
            o, d = off[a], dims[a]
            table = tuple(tuple(local(comp.table[o + i][o + j], a) for j in range(d)) for i in range(d))
            comps.append(ComponentAlgebra(d, table, units[a]))
        dblocks = {}
        for a in g.elements():
            for b in g.elements():
                ab = g.mul(a, b)
                cols = []
                for k in range(dims[ab]):
                    t = {}
                    for (i, j), v in delta[off[ab] + k].items():
                        if G.block_of(i) == a and G.block_of(j) == b:
                            t[(i - off[a], j - off[b])] = v
                    cols.append(t)
                dblocks[(a, b)] = tuple(cols)
        counit = {k - off[e]: v for k, v in hop.counit.items()}
        antipode = [tuple(local(anti[off[a] + k], g.inv(a)) for k in range(dims[a])) for a in g.elements()]
        phi = {}
        for a in g.elements():
            for b in g.elements():
                phi[(a, b)] = tuple(local(G.automorphisms[b][off[a] + k], g.conj(b, a)) for k in range(dims[a]))
        return TCoalgebra(field, g, comps, dblocks, counit, antipode, phi, name=hop.name.replace("pk(", "unpk(", 1))

    # T-algebra variant
    from .duals import TAlgebra

    for k in range(total):
        a = G.block_of(k)
        for (i, j) in delta[k]:
            if G.block_of(i) != a or G.block_of(j) != a:
                raise GradingViolation("components are subcoalgebras", witness=(k, (i, j)))
        if not _block_support(anti[k], off, dims) <= {g.inv(a)}:
            raise GradingViolation("antipode maps H_a onto H_a^-1", witness=(k,))
        for b in g.elements():
            if not _block_support(G.automorphisms[b][k], off, dims) <= {g.conj(b, a)}:
                raise GradingViolation("automorphisms respect the grading", witness=(b, k))
    for i in range(total):
        for j in range(total):
            a, b = G.block_of(i), G.block_of(j)
            if not _block_support(comp.table[i][j], off, dims) <= {g.mul(a, b)}:
                raise GradingViolation("H_a H_b lies in H_ab", witness=(i, j))
    if not _block_support(comp.unit, off, dims) <= {e}:
        raise GradingViolation("unit lies in H_1", witness=None)
    comps = []
    for a in g.elements():
        o, d = off[a], dims[a]
        cdelta = tuple({(i - o, j - o): v for (i, j), v in delta[o + k].items()} for k in range(d))
        ccounit = {k - o: v for k, v in hop.counit.items() if o <= k < o + d}
        comps.append(ComponentCoalgebra(d, cdelta, ccounit))
    mu = {}
    for a in g.elements():
        for b in g.elements():
            ab = g.mul(a, b)
            mu[(a, b)] = tuple(
                tuple(local(comp.table[off[a] + i][off[b] + j], ab) for j in range(dims[b])) for i in range(dims[a])
            )
    antipode = [tuple(local(anti[off[a] + k], g.inv(a)) for k in range(dims[a])) for a in g.elements()]
    psi = {(a, b): tuple(local(G.automorphisms[b][off[a] + k], g.conj(b, a)) for k in range(dims[a]))
           for a in g.elements() for b in g.elements()}
    return TAlgebra(field, g, comps, mu, local(comp.unit, e), antipode, psi, name=hop.name.replace("pk(", "unpk(", 1))
