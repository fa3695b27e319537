"""Exact scalars, sparse vectors/tensors and dense matrices.

Scalars of the rational field are plain ``int`` or ``fractions.Fraction``
values; scalars of GF(p) are :class:`Fp` instances.  Vectors are sparse
``dict`` objects mapping basis indices to nonzero scalars.  Elements of a
tensor product ``V1 (x) ... (x) Vk`` are dicts keyed by index tuples.  A linear
map is stored as the tuple of images of the source basis vectors ("columns").

All helpers return fresh, zero-free dicts and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import SingularMatrix, ShapeMismatch

Vec = Dict[int, object]
Tensor = Dict[tuple, object]
Columns = Tuple[Vec, ...]


# ---------------------------------------------------------------- fields


class Field:
    characteristic: int = 0
    kind: str = "?"

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        return self(a) * self.inv(b)

    def dump(self, x):
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError


class Rationals(Field):
    """The field Q with values kept as ``int`` whenever they are integral."""

    characteristic = 0
    kind = "Q"

    def __call__(self, x):
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self(Fraction(x.strip()))
        if isinstance(x, Fp):
            raise TypeError("cannot lift a GF(p) element to Q")
        if isinstance(x, float):
            raise TypeError("floating point scalars are not accepted")
        return self(Fraction(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return self(Fraction(1) / Fraction(x))

    def dump(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s):
        if isinstance(s, bool) or isinstance(s, float):
            raise ValueError(f"bad rational scalar {s!r}")
        if isinstance(s, int):
            return s
        if not isinstance(s, str):
            raise ValueError(f"bad rational scalar {s!r}")
        return self(Fraction(s))

    def spec(self):
        return {"kind": "Q"}

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class Fp:
    """An element of the prime field GF(p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other) -> Optional[int]:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(o * pow(self.v, -1, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


class PrimeField(Field):
    kind = "GF"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("mixing different prime fields")
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return Fp(x, self.p)
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return Fp(x.numerator * pow(x.denominator, -1, self.p), self.p)
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def inv(self, x):
        x = self(x)
        if x.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(pow(x.v, -1, self.p), self.p)

    def dump(self, x) -> int:
        return self(x).v

    def parse(self, s):
        if isinstance(s, bool) or not isinstance(s, (int, str)):
            raise ValueError(f"bad GF({self.p}) scalar {s!r}")
        v = int(s)
        if not 0 <= v < self.p:
            raise ValueError(f"GF({self.p}) scalar out of range: {v}")
        return Fp(v, self.p)

    def spec(self):
        return {"kind": "GF", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "Q":
        return QQ
    if kind == "GF":
        return GF(int(spec["p"]))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field_flag(flag: str) -> Field:
    """``"Q"`` or ``"GF7"``/``"GFp"``-style command line spelling."""
    flag = flag.strip()
    if flag.upper() == "Q":
        return QQ
    if flag.upper().startswith("GF"):
        return GF(int(flag[2:]))
    raise ValueError(f"bad field flag {flag!r}")


# ---------------------------------------------------------------- sparse vectors


def clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v != 0}


def add_into(acc: dict, v: dict, c=1) -> dict:
    """acc += c * v, in place; zeros are not removed."""
    if c == 1:
        for k, x in v.items():
            acc[k] = acc.get(k, 0) + x
    else:
        for k, x in v.items():
            acc[k] = acc.get(k, 0) + c * x
    return acc


def vadd(*vs: dict) -> dict:
    acc: dict = {}
    for v in vs:
        add_into(acc, v)
    return clean(acc)


def vsub(a: dict, b: dict) -> dict:
    acc = dict(a)
    add_into(acc, b, -1)
    return clean(acc)


def vscale(v: dict, c) -> dict:
    return clean({k: c * x for k, x in v.items()})


def basis_vec(i: int, one=1) -> Vec:
    return {i: one}


def lin_apply(cols: Sequence[Vec], v: Vec) -> Vec:
    acc: dict = {}
    for i, c in v.items():
        add_into(acc, cols[i], c)
    return clean(acc)


def compose(f: Sequence[Vec], g: Sequence[Vec]) -> Columns:
    """Columns of f o g."""
    return tuple(lin_apply(f, col) for col in g)


def identity_cols(n: int, one=1) -> Columns:
    return tuple({i: one} for i in range(n))


def covector_apply(cov: Vec, v: Vec):
    return sum((c * cov[i] for i, c in v.items() if i in cov), 0)


# ---------------------------------------------------------------- tensors


def tensor_of(*vs: Vec) -> Tensor:
    """Elementary tensor v1 (x) ... (x) vk."""
    out: dict = {(): 1}
    for v in vs:
        out = {k + (i,): c * x for k, c in out.items() for i, x in v.items()}
    return clean(out)


def tensor_apply(maps: Sequence[Optional[Sequence[Vec]]], t: Tensor) -> Tensor:
    """Apply a linear map to each leg; ``None`` leaves the leg unchanged."""
    acc: dict = {}
    for key, c in t.items():
        terms = [((), c)]
        for leg, m in enumerate(maps):
            if m is None:
                terms = [(k + (key[leg],), x) for k, x in terms]
                continue
            img = m[key[leg]]
            if not img:
                terms = []
                break
            terms = [(k + (j,), x * y) for k, x in terms for j, y in img.items()]
        for k, x in terms:
            acc[k] = acc.get(k, 0) + x
    return clean(acc)


def tensor_mul(tables: Sequence, x: Tensor, y: Tensor) -> Tensor:
    """Product in a tensor product of algebras, each given by its table[i][j]."""
    acc: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            terms = [((), cx * cy)]
            for leg, table in enumerate(tables):
                prod = table[kx[leg]][ky[leg]]
                if not prod:
                    terms = []
                    break
                if len(prod) == 1:
                    ((m, v),) = prod.items()
                    terms = [(k + (m,), c * v) for k, c in terms]
                else:
                    terms = [(k + (m,), c * v) for k, c in terms for m, v in prod.items()]
            for k, c in terms:
                acc[k] = acc.get(k, 0) + c
    return clean(acc)


def insert_leg(t: Tensor, position: int, vec: Vec) -> Tensor:
    """Insert ``vec`` as a new leg at ``position`` (e.g. x -> x_{1 beta 3})."""
    acc: dict = {}
    for k, c in t.items():
        for i, x in vec.items():
            nk = k[:position] + (i,) + k[position:]
            acc[nk] = acc.get(nk, 0) + c * x
    return clean(acc)


def permute_legs(t: Tensor, perm: Sequence[int]) -> Tensor:
    """Reorder tensor legs so that new leg ``n`` is old leg ``perm[n]`` (0-based).

    ``perm = (1, 0)`` is the flip sigma; the three-leg notation
    sigma_{i,j,k}: V1 V2 V3 -> Vi Vj Vk corresponds to ``perm = (i-1, j-1, k-1)``.
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"{perm} is not a permutation")
    out = {}
    for k, c in t.items():
        if len(k) != len(perm):
            raise ShapeMismatch(f"tensor of rank {len(k)} cannot be permuted by {perm}")
        out[tuple(k[p] for p in perm)] = c
    return out


def flip(t: Tensor) -> Tensor:
    return permute_legs(t, (1, 0))


def contract_leg(t: Tensor, leg: int, cov: Vec) -> Tensor:
    """Pair one leg against a covector, dropping that leg."""
    acc: dict = {}
    for k, c in t.items():
        x = cov.get(k[leg])
        if x is None:
            continue
        nk = k[:leg] + k[leg + 1:]
        acc[nk] = acc.get(nk, 0) + c * x
    return clean(acc)


def tensor_to_vec(t: Tensor, dims: Sequence[int]) -> Vec:
    """Flatten to the product basis (lexicographic, last leg fastest)."""
    out = {}
    for k, c in t.items():
        idx = 0
        for i, d in zip(k, dims):
            idx = idx * d + i
        out[idx] = c
    return out


def vec_to_tensor(v: Vec, dims: Sequence[int]) -> Tensor:
    out = {}
    for idx, c in v.items():
        key = []
        for d in reversed(dims):
            idx, r = divmod(idx, d)
            key.append(r)
        out[tuple(reversed(key))] = c
    return out


# ---------------------------------------------------------------- dense matrices


@dataclass(frozen=True)
class Matrix:
    """Dense matrix over an exact field; ``entries`` is row-major."""

    rows: int
    cols: int
    entries: Tuple[tuple, ...]
    field: Field = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ShapeMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field: Field = QQ, ncols: Optional[int] = None) -> "Matrix":
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data, field)

    @classmethod
    def from_columns(cls, cols: Sequence[Vec], nrows: int, field: Field = QQ) -> "Matrix":
        zero = field(0)
        data = [[zero] * len(cols) for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, x in col.items():
                if i >= nrows:
                    raise ShapeMismatch(f"column {j} has entry {i} outside {nrows} rows")
                data[i][j] = field(x)
        return cls(nrows, len(cols), tuple(tuple(r) for r in data), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_columns(identity_cols(n), n, field)

    def to_columns(self) -> Columns:
        return tuple(clean({i: self.entries[i][j] for i in range(self.rows)}) for j in range(self.cols))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field(0)
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        data = []
        for r in self.entries:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for c in range(other.cols):
                col = ot[c]
                s = zero
                for k, a in nz:
                    b = col[k]
                    if b != 0:
                        s = s + a * b
                row.append(s)
            data.append(tuple(row))
        return Matrix(self.rows, other.cols, tuple(data), self.field)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)), self.field)

    def rank(self) -> int:
        return _row_reduce([list(r) for r in self.entries], self.field)[1]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return hash((self.rows, self.cols))


def _row_reduce(m: List[list], field: Field, ncols: Optional[int] = None):
    """In-place reduced row echelon form; returns (m, rank, pivot columns)."""
    rows = len(m)
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.inv(m[r][c])
        if inv != 1:
            m[r] = [x * inv for x in m[r]]
        pr = m[r]
        nzc = [k for k, x in enumerate(pr) if x != 0]
        for i in range(rows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    for k in nzc:
                        row[k] = row[k] - f * pr[k]
        pivots.append(c)
        r += 1
    return m, r, pivots


def invert_matrix(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrix."""
    if m.rows != m.cols:
        raise ShapeMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    f = m.field
    zero, one = f(0), f(1)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.entries)]
    aug, rank, _ = _row_reduce(aug, f, ncols=n)
    if rank < n:
        raise SingularMatrix(f"matrix has rank {rank} < {n}")
    return Matrix(n, n, tuple(tuple(r[n:]) for r in aug), f)


def rank_of_columns(cols: Sequence[Vec], nrows: int, field: Field = QQ) -> int:
    return Matrix.from_columns(cols, nrows, field).rank()


def solve(a: Matrix, b: Sequence) -> Optional[list]:
    """One solution x of a x = b, or None when the system is inconsistent."""
    f = a.field
    zero = f(0)
    aug = [list(r) + [f(bi)] for r, bi in zip(a.entries, b)]
    aug, rank, pivots = _row_reduce(aug, f, ncols=a.cols)
    for r in aug[rank:]:
        if r[a.cols] != 0:
            return None
    x = [zero] * a.cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][a.cols]
    return x


def invert_cols(cols: Sequence[Vec], n: int, field: Field) -> Columns:
    """Inverse of a square linear map given by columns."""
    return invert_matrix(Matrix.from_columns(cols, n, field)).to_columns()


# ---------------------------------------------------------------- canonical element


@dataclass(frozen=True)
class CanonicalPair:
    """The element sum_i e_i (x) e^i of V (x) V*, as a two-leg tensor."""

    dim: int
    element: Tensor

    def contract(self, j: int) -> Vec:
        """Pair the dual leg against e_j; yields e_j."""
        acc: dict = {}
        for (a, b), c in self.element.items():
            if b == j:
                acc[a] = acc.get(a, 0) + c
        return clean(acc)


def dual_basis_pair(n: int, one=1) -> CanonicalPair:
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    return CanonicalPair(n, {(i, i): one for i in range(n)})


def change_basis_canonical(pair: CanonicalPair, p: Matrix) -> Tensor:
    """Apply P (x) (P^T)^{-1} to the canonical element."""
    q = invert_matrix(p.transpose())
    return tensor_apply([p.to_columns(), q.to_columns()], pair.element)


def all_permutations(k: int):
    return list(permutations(range(k)))
