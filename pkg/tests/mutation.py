"""Single-entry mutations of T-coalgebra structure constants."""

import random
from fractions import Fraction

from crossed_double.graded_core import ComponentAlgebra
from crossed_double.tcoalg import TCoalgebra

STEPS = (1, -1, 2, Fraction(1, 2), -3)


def positions(H: TCoalgebra):
    """Every addressable structure constant, zero or not."""
    g = H.group
    out = []
    for a, comp in enumerate(H.comps):
        d = comp.dim
        out += [("mu", a, i, j, k) for i in range(d) for j in range(d) for k in range(d)]
        out += [("unit", a, k) for k in range(d)]
        n = H.dim(g.inv(a))
        out += [("antipode", a, c, r) for c in range(d) for r in range(n)]
    for (a, b) in H.delta:
        ab = g.mul(a, b)
        out += [("delta", (a, b), k, i, j) for k in range(H.dim(ab)) for i in range(H.dim(a)) for j in range(H.dim(b))]
    for (a, b) in H.phi:
        t = g.conj(b, a)
        out += [("phi", (a, b), c, r) for c in range(H.dim(a)) for r in range(H.dim(t))]
    out += [("counit", i) for i in range(H.dim(g.identity))]
    return out


def mutate(H: TCoalgebra, pos, step) -> TCoalgebra:
    tables = [[[dict(v) for v in row] for row in comp.table] for comp in H.comps]
    units = [dict(comp.unit) for comp in H.comps]
    delta = {k: [dict(t) for t in v] for k, v in H.delta.items()}
    antipode = [[dict(c) for c in cols] for cols in H.antipode]
    phi = {k: [dict(c) for c in v] for k, v in H.phi.items()}
    counit = dict(H.counit)

    def bump(d, key):
        d[key] = d.get(key, 0) + step

    kind = pos[0]
    if kind == "mu":
        _, a, i, j, k = pos
        bump(tables[a][i][j], k)
    elif kind == "unit":
        bump(units[pos[1]], pos[2])
    elif kind == "antipode":
        _, a, c, r = pos
        bump(antipode[a][c], r)
    elif kind == "delta":
        _, key, k, i, j = pos
        bump(delta[key][k], (i, j))
    elif kind == "phi":
        _, key, c, r = pos
        bump(phi[key][c], r)
    else:
        bump(counit, pos[1])
    F = H.field
    comps = [ComponentAlgebra(c.dim, tuple(tuple({k: F(v) for k, v in x.items() if v != 0} for x in row) for row in t),
                              {k: F(v) for k, v in u.items() if v != 0})
             for c, t, u in zip(H.comps, tables, units)]
    return TCoalgebra(F, H.group, comps, delta, counit, antipode, phi, name=f"{H.name}+{pos}")


def random_mutations(examples, count: int, seed: int = 0):
    rng = random.Random(seed)
    pools = [(H, positions(H)) for H in examples]
    for _ in range(count):
        H, pool = rng.choice(pools)
        pos = rng.choice(pool)
        yield H, pos, mutate(H, pos, rng.choice(STEPS))
