"""Built-in examples.

``builtin(name)`` returns ``(H, R)`` where ``R`` is an :class:`RMatrixFamily`
or ``None``.  Every example is validated before it is returned.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .errors import UnknownExample, ValidationFailed
from .exact_linalg import QQ, Field, identity_cols
from .finite_group import FiniteGroup, builtin_group, cyclic_group, symmetric_group_3, trivial_group
from .graded_core import ComponentAlgebra
from .tcoalg import TCoalgebra, hopf_as_tcoalgebra, thcoalgebra, validate

NAMES = ("trivial-k", "group-algebra", "function-tcoalg", "sweedler-z2", "sweedler-classical-qt", "group-hopf")


def trivial_k(field: Field = QQ) -> TCoalgebra:
    comp = ComponentAlgebra(1, (({0: field(1)},),), {0: field(1)})
    return hopf_as_tcoalgebra(field, comp, [{(0, 0): 1}], {0: 1}, [{0: 1}], name="trivial-k")


def group_hopf_algebra(G: FiniteGroup, field: Field = QQ, name: str = "") -> TCoalgebra:
    """The group algebra k[G] as a Hopf algebra (basis = group elements)."""
    n = G.order
    comp = ComponentAlgebra.from_rule(n, lambda i, j: {G.mul(i, j): 1}, {G.identity: 1}, field)
    delta = [{(i, i): 1} for i in range(n)]
    counit = {i: 1 for i in range(n)}
    antipode = [{G.inv(i): 1} for i in range(n)]
    return hopf_as_tcoalgebra(field, comp, delta, counit, antipode, name=name or f"k[{G.order}]")


def function_tcoalgebra(group: FiniteGroup, field: Field = QQ) -> TCoalgebra:
    """H_a = k delta_a with Delta_{a,b}(delta_ab) = delta_a (x) delta_b."""
    one = field(1)
    comp = ComponentAlgebra(1, (({0: one},),), {0: one})
    n = group.order
    delta = {(a, b): ({(0, 0): one},) for a in range(n) for b in range(n)}
    antipode = [({0: one},)] * n
    phi = {(a, b): ({0: one},) for a in range(n) for b in range(n)}
    return TCoalgebra(field, group, [comp] * n, delta, {0: one}, antipode, phi, name="function-tcoalg")


# Sweedler's four-dimensional Hopf algebra, basis 1, g, x, gx.
_SW_PRODUCTS = {
    (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
    (1, 0): {1: 1}, (1, 1): {0: 1}, (1, 2): {3: 1}, (1, 3): {2: 1},
    (2, 0): {2: 1}, (2, 1): {3: -1}, (2, 2): {}, (2, 3): {},
    (3, 0): {3: 1}, (3, 1): {2: -1}, (3, 2): {}, (3, 3): {},
}


def sweedler_hopf(field: Field = QQ) -> TCoalgebra:
    comp = ComponentAlgebra.from_rule(4, lambda i, j: _SW_PRODUCTS[(i, j)], {0: 1}, field)
    delta = [
        {(0, 0): 1},
        {(1, 1): 1},
        {(2, 0): 1, (1, 2): 1},
        {(3, 1): 1, (0, 3): 1},
    ]
    counit = {0: 1, 1: 1}
    antipode = [{0: 1}, {1: 1}, {3: -1}, {2: 1}]
    return hopf_as_tcoalgebra(field, comp, delta, counit, antipode, name="sweedler")


def sweedler_r0(field: Field = QQ):
    """R0 = (1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g) / 2."""
    from .quasitriangular import RMatrixFamily

    h = field(Fraction(1, 2)) if field.characteristic != 2 else None
    if h is None:
        raise ValueError("R0 needs 2 to be invertible")
    R = {(0, 0): {(0, 0): h, (0, 1): h, (1, 0): h, (1, 1): -h}}
    return RMatrixFamily(R)


def sweedler_z2(field: Field = QQ) -> TCoalgebra:
    """Sweedler's algebra with Z/2 acting by g -> g, x -> -x."""
    H1 = sweedler_hopf(field)
    action = [identity_cols(4), ({0: 1}, {1: 1}, {2: -1}, {3: -1})]
    return thcoalgebra(H1, cyclic_group(2), action, name="sweedler-z2")


def group_hopf(G: Optional[FiniteGroup] = None, pi: Optional[FiniteGroup] = None, action=None,
               field: Field = QQ) -> TCoalgebra:
    """The T-coalgebra based on k[G] with pi acting by group automorphisms.

    ``action[b][x]`` is the image of the element ``x`` of G under ``b``;
    the default is Z/3 with Z/2 acting by inversion.
    """
    G = G or cyclic_group(3)
    pi = pi or cyclic_group(2)
    if action is None:
        action = [[x for x in G.elements()] if b == pi.identity else [G.inv(x) for x in G.elements()]
                  for b in pi.elements()]
    H1 = group_hopf_algebra(G, field)
    cols = [tuple({action[b][x]: 1} for x in G.elements()) for b in pi.elements()]
    return thcoalgebra(H1, pi, cols, name="group-hopf")


def trivial_rmatrix(H: TCoalgebra):
    """The family 1_a (x) 1_b."""
    from .quasitriangular import RMatrixFamily

    n = H.group.order
    R = {(a, b): H.tone((a, b)) for a in range(n) for b in range(n)}
    return RMatrixFamily(R, dict(R))


def builtin(name: str, field: Field = QQ, group: Optional[str] = None, check: bool = True) -> Tuple[TCoalgebra, object]:
    key = name.strip().lower()
    R = None
    if key == "trivial-k":
        H = trivial_k(field)
        R = trivial_rmatrix(H)
    elif key == "group-algebra":
        G = builtin_group(group) if group else cyclic_group(2)
        H = group_hopf_algebra(G, field, name="group-algebra")
        R = trivial_rmatrix(H)
    elif key == "function-tcoalg":
        H = function_tcoalgebra(builtin_group(group) if group else symmetric_group_3(), field)
        R = trivial_rmatrix(H)
    elif key == "sweedler-z2":
        H = sweedler_z2(field)
    elif key == "sweedler-classical-qt":
        H = sweedler_hopf(field)
        H.name = "sweedler-classical-qt"
        R = sweedler_r0(field)
    elif key == "group-hopf":
        H = group_hopf(field=field)
    else:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(NAMES)}")
    if check:
        rep = validate(H)
        if not rep.ok:
            raise ValidationFailed(rep)
    return H, R
