"""Moment-map descent of nilpotent orbits and the combinatorics around it.

Descent takes an orbit O' on one side of an orthogonal-symplectic pair to
an orbit on the other side: every row of length t+1 >= 2 with form F
embeds F x S_t into V, the first column is erased, and the orthogonal
complement of the embedded part (the kernel, of dimension b) is added to
the rows of length 1.  Rows of length 1 of O' do not reach V at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dual_pairs import B, C, CS, CT, D, DS, normalize_star
from .formed_spaces import COMPLEX, QUAD, SYMP as SYMP_KIND, FormedSpace, real, symplectic
from .orbits import (
    DEFAULT_CAP,
    ORTH,
    SYMP,
    CapExceeded,
    ComplexOrbit,
    Orth,
    Symp,
    Tableau,
    column_data,
    complex_orbits,
    complexify,
    dominance_leq,
    dominance_maxima,
    make_tableau,
    tableaux_of,
    total_signature,
    validate_tableau,
)


class NotInImage(ValueError):
    """The orbit is not in the image of the moment map for the given space."""


class NoUniqueMaximum(ValueError):
    """A search produced no candidate, or several dominance-maximal ones."""


def _star_type(star: str) -> str:
    """Lie type of the complexified group of a star."""
    return ORTH if normalize_star(star) in (B, D, DS) else SYMP


# -- real tableaux ------------------------------------------------------------


def _canonical(Op: Tableau) -> Tableau:
    bad = validate_tableau(make_tableau(Op.eps, Op.rows))
    if bad:
        raise ValueError(f"invalid tableau: {'; '.join(bad)}")
    return make_tableau(Op.eps, Op.rows)


def _check_pair(Op: Tableau, V: FormedSpace):
    if V.field == COMPLEX:
        raise ValueError("tableau descent is over R; use complex_descend for complex orbits")
    if Op.eps == -1 and V.kind != QUAD:
        raise ValueError("an orbit of a symplectic algebra descends to a quadratic space")
    if Op.eps == 1 and V.kind != SYMP_KIND:
        raise ValueError("an orbit of an orthogonal algebra descends to a symplectic space")


def embedded_part(Op: Tableau) -> Tableau:
    """Rows (t, F) for each row (t+1, F) of O' with t >= 1: the image of T in V."""
    return Tableau(-Op.eps, tuple((t - 1, F) for t, F in Op.rows if t >= 2))


def embedded_dim(Op: Tableau) -> int:
    return embedded_part(Op).total_dim


def in_moment_image(Op: Tableau, V: FormedSpace) -> bool:
    Op = _canonical(Op)
    _check_pair(Op, V)
    E = embedded_part(Op)
    if V.kind == QUAD:
        P, Q = total_signature(E)
        return P <= V.p and Q <= V.q
    return E.total_dim <= V.dim


@dataclass(frozen=True)
class DescentResult:
    orbit: Tableau
    b: int
    kernel_form: FormedSpace
    embedded_dim: int
    M_factors: tuple[str, ...]
    L: str
    Lp: str

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit.to_json(),
            "b": self.b,
            "kernel_form": self.kernel_form.to_json(),
            "embedded_dim": self.embedded_dim,
            "M_XXp": list(self.M_factors),
            "L": self.L,
            "Lp": self.Lp,
        }


def _group_of_space(W: FormedSpace) -> str:
    if W.dim == 0:
        return "1"
    if W.kind == SYMP_KIND:
        return f"Sp_{W.dim}(R)"
    return f"O({W.p},{W.q})"


def descend(Op: Tableau, V: FormedSpace) -> DescentResult:
    Op = _canonical(Op)
    _check_pair(Op, V)
    if not in_moment_image(Op, V):
        raise NotInImage(f"{Op} is not in the moment image for {V.describe()}")
    E = embedded_part(Op)
    Dm = E.total_dim
    b = V.dim - Dm
    if V.kind == QUAD:
        P, Q = total_signature(E)
        kernel = real(V.p - P, V.q - Q)
        kernel_row = Orth(kernel.p, kernel.q)
    else:
        kernel = symplectic(b)
        kernel_row = Symp(b)
    eps = -Op.eps
    rows = [(t, F) for t, F in E.rows if t >= 2]
    F2 = Op.form_at(2)
    ones = kernel_row + F2 if F2 is not None else kernel_row
    rows.append((1, ones))
    result = make_tableau(eps, rows)

    M = [F.group_label() for t, F in E.rows if t >= 2]
    if F2 is not None:
        M.append(F2.group_label())
    M = [g for g in M if g != "1"] or ["1"]
    F1 = Op.form_at(1)
    Lp = F1.group_label() if F1 is not None else "1"
    return DescentResult(result, b, kernel, Dm, tuple(M), _group_of_space(kernel), Lp)


def descend_K_orbit(Op: Tableau, V: FormedSpace) -> Tableau:
    """Descent of a K'-orbit in p', read through the same signed tableau."""
    return descend(Op, V).orbit


def descent_stabilizers(Op: Tableau, V: FormedSpace) -> tuple[tuple[str, ...], str, str]:
    r = descend(Op, V)
    return r.M_factors, r.L, r.Lp


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class DescentClass:
    pure: bool
    regular: bool
    good: bool
    b: int
    embedded_dim: int

    def to_json(self) -> dict:
        return {"pure": self.pure, "regular": self.regular, "good": self.good, "b": self.b, "embedded_dim": self.embedded_dim}


def _classify(parts, Dm: int, target_dim: int, star_p: str) -> DescentClass:
    b = target_dim - Dm
    c1, c2, pure_nilpotent = column_data(parts)
    pure = b == 0
    regular = pure or pure_nilpotent
    star_p = normalize_star(star_p)
    if star_p in (B, D):
        cond = c1 > c2
    elif star_p in (C, CT):
        cond = target_dim - Dm in (0, 1)
    else:
        cond = target_dim == Dm
    return DescentClass(pure, regular, regular and cond, b, Dm)


def default_star(Op: Tableau) -> str:
    if Op.eps == -1:
        return C
    return B if Op.total_dim % 2 else D


def classify_descent(Op: Tableau, V: FormedSpace, star_p: str | None = None) -> DescentClass:
    """Pure / regular / good flags; ``star_p`` is the star of the space O' lives in."""
    Op = _canonical(Op)
    if not in_moment_image(Op, V):
        raise NotInImage(f"{Op} is not in the moment image for {V.describe()}")
    star_p = star_p or default_star(Op)
    return _classify(complexify(Op).parts, embedded_dim(Op), V.dim, star_p)


# -- complex level ------------------------------------------------------------


def complex_embedded_dim(O: ComplexOrbit) -> int:
    return O.size - len(O.parts)


def complex_descend(Op: ComplexOrbit, dim_V: int) -> ComplexOrbit:
    """Strip the first column and pad with b = dim V - (|O'| - c1) rows of length 1."""
    Dm = complex_embedded_dim(Op)
    b = dim_V - Dm
    if b < 0:
        raise NotInImage(f"{Op} needs dim V >= {Dm}, got {dim_V}")
    other = ORTH if Op.lie_type == SYMP else SYMP
    if other == SYMP and dim_V % 2:
        raise ValueError("a symplectic space has even dimension")
    stripped = [x - 1 for x in Op.parts if x >= 2]
    return ComplexOrbit(other, tuple(stripped) + (1,) * b)


def complex_in_image(Op: ComplexOrbit, dim_V: int) -> bool:
    return complex_embedded_dim(Op) <= dim_V


def classify_complex(Op: ComplexOrbit, dim_V: int, star_p: str | None = None) -> DescentClass:
    if not complex_in_image(Op, dim_V):
        raise NotInImage(f"{Op} is not in the moment image for dim V = {dim_V}")
    if star_p is None:
        star_p = C if Op.lie_type == SYMP else (B if Op.size % 2 else D)
    return _classify(Op.parts, complex_embedded_dim(Op), dim_V, star_p)


def _dim_of(W) -> int:
    return W.dim if isinstance(W, FormedSpace) else int(W)


def check_theta_lift(O: ComplexOrbit, Vp, cap: int = DEFAULT_CAP) -> ComplexOrbit:
    """The dominance-maximal O' of the other type with descent(O') <= O.

    ``Vp`` is the target space or its dimension.
    """
    n = _dim_of(Vp)
    other = ORTH if O.lie_type == SYMP else SYMP
    cands = []
    for Op in complex_orbits(other, n, cap):
        if not complex_in_image(Op, O.size):
            continue
        if dominance_leq(complex_descend(Op, O.size).parts, O.parts):
            cands.append(Op)
    if not cands:
        raise NoUniqueMaximum(f"no orbit of size {n} lifts {O}")
    top = dominance_maxima(cands, key=lambda x: x.parts)
    if len(top) > 1:
        raise NoUniqueMaximum(f"several maximal lifts of {O}: {', '.join(map(str, top))}")
    return top[0]


def lift_orbit_support(
    O: Tableau, Op: ComplexOrbit, target_signature: tuple[int, int] | None = None, cap: int = DEFAULT_CAP
) -> list[Tableau]:
    """Real tableaux of complex type O' that descend exactly to O.

    O lives on the space whose total form is that of O; when O' is
    orthogonal its real form is fixed by ``target_signature``.
    """
    O = make_tableau(O.eps, O.rows)
    if Op.size > cap:
        raise CapExceeded(f"size {Op.size} exceeds the enumeration cap {cap}")
    if O.eps == 1:
        V = real(*total_signature(O))
    else:
        V = symplectic(O.total_dim)
    if Op.lie_type == O.lie_type:
        raise ValueError("O and O' must live on opposite sides of the pair")
    out = []
    for T in tableaux_of(Op):
        if target_signature is not None and T.eps == 1 and total_signature(T) != tuple(target_signature):
            continue
        if not in_moment_image(T, V):
            continue
        if descend(T, V).orbit == O:
            out.append(T)
    return out


def induce_orbit(Op: ComplexOrbit, s2, cap: int = DEFAULT_CAP) -> ComplexOrbit:
    """Dominance-maximal O'' on the space of s'' that is good for descent and descends to O'."""
    star = normalize_star(s2.star)
    kind = _star_type(star)
    if kind == Op.lie_type:
        raise ValueError(f"{Op} and an orbit of {s2} must live on opposite sides")
    cands = []
    for O2 in complex_orbits(kind, s2.size, cap):
        if not complex_in_image(O2, Op.size):
            continue
        if not classify_complex(O2, Op.size, star).good:
            continue
        if complex_descend(O2, Op.size) == Op:
            cands.append(O2)
    if not cands:
        raise NoUniqueMaximum(f"no good preimage of {Op} in {s2}")
    top = dominance_maxima(cands, key=lambda x: x.parts)
    if len(top) > 1:
        raise NoUniqueMaximum(f"several maximal good preimages of {Op}: {', '.join(map(str, top))}")
    return top[0]
