"""Semisimplicity, factorizability, and the packed-double comparison.

The classical double here is written from the textbook presentation
D(A) = A*cop (x) A with the straightening rule
a f = f(S^-1(a_3) _ a_1) a_2 and is kept independent of :mod:`double`, so it
can serve as an oracle for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import UnsupportedCharacteristic
from .exact_linalg import Matrix, clean, invert_cols
from .graded_core import ComponentAlgebra, pack_tcoalgebra
from .quasitriangular import RMatrixFamily
from .report import ValidationReport
from .tcoalg import TCoalgebra


# ---------------------------------------------------------------- semisimplicity


@dataclass
class SemisimplicityVerdict:
    components: List[dict]
    semisimple: bool
    characteristic: int
    consistent: bool

    def to_dict(self) -> dict:
        return {"components": self.components, "semisimple": self.semisimple,
                "characteristic": self.characteristic, "identity_component_agrees": self.consistent}


def trace_form(comp: ComponentAlgebra, field) -> Matrix:
    """T(e_i, e_j) = trace of left multiplication by e_i e_j."""
    d = comp.dim
    traces = [sum((comp.table[m][k].get(k, 0) for k in range(d)), 0) for m in range(d)]
    rows = [[sum((c * traces[m] for m, c in comp.table[i][j].items()), 0) for j in range(d)] for i in range(d)]
    return Matrix.from_rows(rows, field, ncols=d)


def is_semisimple(H: TCoalgebra) -> SemisimplicityVerdict:
    if H.field.characteristic != 0:
        raise UnsupportedCharacteristic(
            f"the trace-form criterion needs characteristic 0, got {H.field.characteristic}")
    comps = []
    for a in H.group.elements():
        comp = H.comps[a]
        rank = trace_form(comp, H.field).rank() if comp.dim else 0
        comps.append({"grade": H.group.names[a], "dim": comp.dim, "trace_form_rank": rank,
                      "semisimple": rank == comp.dim})
    overall = all(c["semisimple"] for c in comps)
    identity_ok = comps[H.group.identity]["semisimple"]
    return SemisimplicityVerdict(comps, overall, 0, identity_ok == overall)


# ---------------------------------------------------------------- factorizability


@dataclass
class Factorizability:
    matrix: Matrix
    rank: int
    bijective: bool


def factorizability(comp: ComponentAlgebra, R: dict, field) -> Factorizability:
    """Matrix of lambda(f) = <f, zeta_i xi_j> xi_i zeta_j for R = xi_i (x) zeta_i."""
    d = comp.dim
    terms = list(R.items())
    cols = [dict() for _ in range(d)]
    for (x1, y1), c1 in terms:
        for (x2, y2), c2 in terms:
            pairing = comp.table[y1][x2]
            if not pairing:
                continue
            image = comp.table[x1][y2]
            for m, p in pairing.items():
                col = cols[m]
                for k, v in image.items():
                    col[k] = col.get(k, 0) + c1 * c2 * p * v
    m = Matrix.from_columns([clean(c) for c in cols], d, field)
    rank = m.rank()
    return Factorizability(m, rank, rank == d)


# ---------------------------------------------------------------- classical double oracle


@dataclass
class ClassicalDouble:
    """D(A) for a Hopf algebra A, in the (h, f) basis with index h * n + f."""

    n: int
    table: list
    unit: dict
    delta: list
    counit: dict
    antipode: list
    R: dict
    Rt: dict

    def mul(self, x: dict, y: dict) -> dict:
        acc: dict = {}
        for i, c in x.items():
            row = self.table[i]
            for j, d in y.items():
                for k, v in row[j].items():
                    acc[k] = acc.get(k, 0) + c * d * v
        return clean(acc)

    def as_tcoalgebra(self, field, name: str = "classical double") -> TCoalgebra:
        from .tcoalg import hopf_as_tcoalgebra

        dim = self.n * self.n
        comp = ComponentAlgebra(dim, tuple(tuple(r) for r in self.table), self.unit)
        return hopf_as_tcoalgebra(field, comp, self.delta, self.counit, self.antipode, name=name)


def classical_double(A: TCoalgebra) -> ClassicalDouble:
    if A.group.order != 1:
        raise ValueError("the classical double needs a Hopf algebra (trivial group)")
    n = A.dim(0)
    comp = A.comps[0]
    mult = comp.table
    cop = A.delta[(0, 0)]
    eps = [A.counit.get(i, 0) for i in range(n)]
    S = A.antipode[0]
    Sinv = invert_cols(S, n, A.field)
    one = comp.unit

    def m(x, y):
        acc: dict = {}
        for i, c in x.items():
            for j, d in y.items():
                for k, v in mult[i][j].items():
                    acc[k] = acc.get(k, 0) + c * d * v
        return clean(acc)

    def apply(cols, x):
        acc: dict = {}
        for i, c in x.items():
            for k, v in cols[i].items():
                acc[k] = acc.get(k, 0) + c * v
        return clean(acc)

    # a_1 (x) a_2 (x) a_3 via (Delta (x) id) Delta
    def triple(a):
        acc: dict = {}
        for (p, q), c in cop[a].items():
            for (r, s), d in cop[p].items():
                acc[(r, s, q)] = acc.get((r, s, q), 0) + c * d
        return clean(acc)

    def fmul(f, g):
        """Product of functionals: (fg)(x) = f(x_1) g(x_2)."""
        out: dict = {}
        for x in range(n):
            val = sum((c * f.get(p, 0) * g.get(q, 0) for (p, q), c in cop[x].items()), 0)
            if val != 0:
                out[x] = val
        return out

    # functional-first order: element f (x) a stored at f * n + a.
    def k_index(f, a):
        return f * n + a

    ktable = [[None] * (n * n) for _ in range(n * n)]
    straight: Dict[Tuple[int, int], dict] = {}
    for a in range(n):
        t3 = triple(a)
        for g in range(n):
            acc: dict = {}
            for (p, q, r), c in t3.items():
                left = apply(Sinv, {r: 1})
                func = {}
                for z in range(n):
                    v = m(m(left, {z: 1}), {p: 1}).get(g, 0)
                    if v != 0:
                        func[z] = v
                for z, v in func.items():
                    acc[(z, q)] = acc.get((z, q), 0) + c * v
            straight[(a, g)] = clean(acc)  # a e^g = sum (e^z (x) e_q)
    for f in range(n):
        for a in range(n):
            for g in range(n):
                for b in range(n):
                    acc: dict = {}
                    for (z, q), c in straight[(a, g)].items():
                        fz = fmul({f: 1}, {z: 1})
                        qb = mult[q][b]
                        for x, u in fz.items():
                            for y, v in qb.items():
                                key = k_index(x, y)
                                acc[key] = acc.get(key, 0) + c * u * v
                    ktable[k_index(f, a)][k_index(g, b)] = clean(acc)
    kunit = {k_index(x, y): c * d for x, c in enumerate(eps) if c for y, d in one.items()}

    def kmul(x, y):
        acc: dict = {}
        for i, c in x.items():
            for j, d in y.items():
                for k, v in ktable[i][j].items():
                    acc[k] = acc.get(k, 0) + c * d * v
        return clean(acc)

    # Delta(f (x) a) = (f_1 (x) a_1) (x) (f_2 (x) a_2), f_1(x) f_2(y) = f(yx)
    kdelta = [None] * (n * n)
    for f in range(n):
        fcop: dict = {}
        for x in range(n):
            for y in range(n):
                v = mult[y][x].get(f, 0)
                if v != 0:
                    fcop[(x, y)] = v
        for a in range(n):
            acc: dict = {}
            for (f1, f2), c in fcop.items():
                for (a1, a2), d in cop[a].items():
                    key = (k_index(f1, a1), k_index(f2, a2))
                    acc[key] = acc.get(key, 0) + c * d
            kdelta[k_index(f, a)] = clean(acc)
    kcounit = clean({k_index(f, a): one.get(f, 0) * eps[a] for f in range(n) for a in range(n)})
    kanti = [None] * (n * n)
    for f in range(n):
        sf = clean({x: Sinv[x].get(f, 0) for x in range(n)})  # f o S^-1
        for a in range(n):
            left = {k_index(x, y): c * d for x, c in enumerate(eps) if c for y, d in S[a].items()}
            right = {k_index(x, y): c * d for x, c in sf.items() for y, d in one.items()}
            kanti[k_index(f, a)] = kmul(left, right)
    kR: dict = {}
    for i in range(n):
        for x, c in enumerate(eps):
            if not c:
                continue
            for y, d in one.items():
                key = (k_index(x, i), k_index(i, y))
                kR[key] = kR.get(key, 0) + c * d
    kRt: dict = {}
    for i in range(n):
        for x, c in enumerate(eps):
            if not c:
                continue
            for s, e in S[i].items():
                for y, d in one.items():
                    key = (k_index(x, s), k_index(i, y))
                    kRt[key] = kRt.get(key, 0) + c * e * d

    # Reorder to the (h, f) basis: index h * n + f.
    def to_double_index(k):
        f, a = divmod(k, n)
        return a * n + f

    def vec(v):
        return {to_double_index(k): c for k, c in v.items()}

    def ten(t):
        return {(to_double_index(x), to_double_index(y)): c for (x, y), c in t.items()}

    N2 = n * n
    inv = [0] * N2
    for k in range(N2):
        inv[to_double_index(k)] = k
    table = [[vec(ktable[inv[i]][inv[j]]) for j in range(N2)] for i in range(N2)]
    return ClassicalDouble(n, table, vec(kunit), [ten(kdelta[inv[i]]) for i in range(N2)], vec(kcounit),
                           [vec(kanti[inv[i]]) for i in range(N2)], ten(kR), ten(kRt))


def compare_with_classical(D: TCoalgebra, R: RMatrixFamily, oracle: ClassicalDouble) -> ValidationReport:
    """Structure-constant equality of a one-component double with the oracle."""
    rep = ValidationReport(subject="classical double regression")
    comp = D.comps[0]
    n2 = comp.dim
    rep.check("dimension", (), n2 == oracle.n ** 2, {"dims": [n2, oracle.n ** 2]})
    if n2 != oracle.n ** 2:
        return rep
    for i in range(n2):
        for j in range(n2):
            rep.check("product", (i, j), comp.table[i][j] == oracle.table[i][j],
                      {"double": comp.table[i][j], "oracle": oracle.table[i][j]})
        rep.check("delta", (i,), D.delta[(0, 0)][i] == oracle.delta[i],
                  {"double": D.delta[(0, 0)][i], "oracle": oracle.delta[i]})
        rep.check("antipode", (i,), D.antipode[0][i] == oracle.antipode[i],
                  {"double": D.antipode[0][i], "oracle": oracle.antipode[i]})
    rep.check("unit", (), comp.unit == oracle.unit, {"double": comp.unit, "oracle": oracle.unit})
    rep.check("counit", (), D.counit == oracle.counit, {"double": D.counit, "oracle": oracle.counit})
    rep.check("R", (), R.R[(0, 0)] == oracle.R, {"double": R.R[(0, 0)], "oracle": oracle.R})
    if R.Rt is not None:
        rep.check("R_inverse", (), R.Rt[(0, 0)] == oracle.Rt, {"double": R.Rt[(0, 0)], "oracle": oracle.Rt})
    return rep


# ---------------------------------------------------------------- D_1(H) inside D(H_pk)


def _tmul2(mul, x: dict, y: dict) -> dict:
    acc: dict = {}
    for (a, b), c in x.items():
        for (p, q), d in y.items():
            left = mul({a: 1}, {p: 1})
            if not left:
                continue
            right = mul({b: 1}, {q: 1})
            for i, u in left.items():
                for j, v in right.items():
                    acc[(i, j)] = acc.get((i, j), 0) + c * d * u * v
    return clean(acc)


def check_packed_double_embedding(H: TCoalgebra, qd=None, oracle: Optional[ClassicalDouble] = None) -> ValidationReport:
    """Compare D_1(H) with its image in D(H_pk) and look for a product witness.

    Products, counits and antipodes must agree exactly.  The unit and the
    coproduct of D(H_pk) involve every block of H_pk, so they are compared
    after projecting onto the H_1 block of each leg.
    """
    from .double import build_double

    g = H.group
    e = g.identity
    qd = qd or build_double(H)
    pk = pack_tcoalgebra(H)
    oracle = oracle or classical_double(pk.hopf)
    N = qd.N
    off = pk.offsets
    n1 = H.dim(e)
    D1 = qd.D.comps[e]
    rep = ValidationReport(subject=f"D_1 inside D(H_pk) for {H.name}")

    def iota(k: int) -> int:
        i, p = divmod(k, N)
        return (off[e] + i) * N + p

    def ivec(v):
        return {iota(k): c for k, c in v.items()}

    image = {iota(k) for k in range(n1 * N)}

    def project(v):
        return {k: c for k, c in v.items() if k in image}

    def project2(t):
        return {k: c for k, c in t.items() if k[0] in image and k[1] in image}

    dim1 = n1 * N
    for x in range(dim1):
        for y in range(dim1):
            lhs = ivec(D1.table[x][y])
            rhs = oracle.table[iota(x)][iota(y)]
            rep.check("embedding.product", (x, y), lhs == rhs, {"D1": lhs, "D(H_pk)": rhs})
        lhs = {(iota(a), iota(b)): c for (a, b), c in qd.D.delta[(e, e)][x].items()}
        rhs = project2(oracle.delta[iota(x)])
        rep.check("embedding.coproduct_projected", (x,), lhs == rhs, {"D1": lhs, "D(H_pk)": rhs})
        lhs = qd.D.counit.get(x, 0)
        rhs = oracle.counit.get(iota(x), 0)
        rep.check("embedding.counit", (x,), lhs == rhs, {"D1": lhs, "D(H_pk)": rhs})
        lhs = ivec(qd.D.antipode[e][x])
        rhs = oracle.antipode[iota(x)]
        rep.check("embedding.antipode", (x,), lhs == rhs, {"D1": lhs, "D(H_pk)": rhs})
    rep.check("embedding.unit_projected", (), ivec(D1.unit) == project(oracle.unit),
              {"D1": ivec(D1.unit), "D(H_pk)": oracle.unit})

    # R_pk against R_{1,1}, multiplied by x on either side and in either leg
    R11 = {(iota(a), iota(b)): c for (a, b), c in qd.R.R[(e, e)].items()}
    Rpk = oracle.R
    one1 = ivec(D1.unit)
    rep.notes["R_pk_differs_from_R11"] = Rpk != R11
    for x in range(dim1):
        xv = {iota(x): 1}
        for leg in (0, 1):
            xt = {(k, j): d for k in xv for j, d in one1.items()} if leg == 0 else \
                 {(j, k): d for k in xv for j, d in one1.items()}
            left_pk = _tmul2(oracle.mul, xt, Rpk)
            left_11 = _tmul2(oracle.mul, xt, R11)
            rep.check("embedding.x_times_R", (x, leg), left_pk == left_11, {"pk": left_pk, "11": left_11})
            right_pk = _tmul2(oracle.mul, Rpk, xt)
            right_11 = _tmul2(oracle.mul, R11, xt)
            rep.check("embedding.R_times_x", (x, leg), right_pk == right_11, {"pk": right_pk, "11": right_11})

    # product difference between D(H_pk) and (D(H))_pk under the identification
    witness = None
    for a in g.elements():
        ai = g.inv(a)
        comp = qd.D.comps[a]

        def ident(k, ai=ai):
            i, p = divmod(k, N)
            return (off[ai] + i) * N + p

        for x in range(comp.dim):
            for y in range(comp.dim):
                lhs = {ident(k): c for k, c in comp.table[x][y].items()}
                rhs = oracle.table[ident(x)][ident(y)]
                if lhs != rhs:
                    witness = {"grade": a, "x": x, "y": y, "packed_double": lhs, "double_of_packed": rhs}
                    break
            if witness:
                break
        if witness:
            break
    rep.notes["product_witness"] = witness if witness is not None else "identical"
    return rep


def double_factorizability(H: TCoalgebra, qd=None) -> Dict[str, Factorizability]:
    """lambda for (D_1(H), R_{1,1}) and, for comparison, for the classical D(H_pk)."""
    from .double import build_double

    e = H.group.identity
    qd = qd or build_double(H)
    out = {"D1": factorizability(qd.D.comps[e], qd.R.R[(e, e)], H.field)}
    oracle = classical_double(pack_tcoalgebra(H).hopf)
    out["D(H_pk)"] = factorizability(oracle.as_tcoalgebra(H.field).comps[0], oracle.R, H.field)
    return out
