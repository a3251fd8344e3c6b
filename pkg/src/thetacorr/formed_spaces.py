"""Quadratic and symplectic spaces over local fields, and their Witt towers.

Spaces are immutable values.  Over R a quadratic space is its signature
(p, q); over C only the dimension matters; a non-archimedean quadratic space
is carried abstractly as (parity, discriminant flag, tower sign, Witt rank)
with the anisotropic kernel read off a fixed table.  No p-adic Hilbert
symbols are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count
from typing import Iterator

REAL, COMPLEX, NONARCH = "R", "C", "NA"
QUAD, SYMP = "quad", "symp"
TRIV, NONTRIV = "triv", "nontriv"

# (eps, chi) -> anisotropic kernel dimension for the "+" and "-" towers.
_KERNEL_DIMS = {
    (0, TRIV): {"+": 0, "-": 4},
    (0, NONTRIV): {"+": 2, "-": 2},
    (1, TRIV): {"+": 1, "-": 3},
    (1, NONTRIV): {"+": 1, "-": 3},
}


class FamilyMismatch(ValueError):
    """Two towers were compared that do not live in one family."""


def anisotropic_kernel_dim(eps: int, chi: str, sign: str) -> int:
    try:
        return _KERNEL_DIMS[(eps, chi)][sign]
    except KeyError:
        raise ValueError(f"no non-archimedean tower for eps={eps}, chi={chi!r}, sign={sign!r}") from None


@dataclass(frozen=True)
class FormedSpace:
    field: str = REAL
    kind: str = QUAD
    p: int = 0
    q: int = 0
    n_dim: int = 0  # Complex quadratic or symplectic dimension
    eps: int = 0
    chi: str = TRIV
    sign: str = "+"
    r: int = 0

    def __post_init__(self):
        if self.field not in (REAL, COMPLEX, NONARCH):
            raise ValueError(f"unknown field {self.field!r}")
        if self.kind not in (QUAD, SYMP):
            raise ValueError(f"unknown kind {self.kind!r}")
        if min(self.p, self.q, self.n_dim, self.r) < 0:
            raise ValueError("dimensions must be non-negative")
        if self.kind == SYMP:
            if self.n_dim % 2:
                raise ValueError(f"symplectic dimension must be even, got {self.n_dim}")
        elif self.field == NONARCH:
            anisotropic_kernel_dim(self.eps, self.chi, self.sign)

    @property
    def dim(self) -> int:
        if self.kind == SYMP or self.field == COMPLEX:
            return self.n_dim
        if self.field == REAL:
            return self.p + self.q
        return anisotropic_kernel_dim(self.eps, self.chi, self.sign) + 2 * self.r

    @property
    def is_quadratic(self) -> bool:
        return self.kind == QUAD

    def negated(self) -> "FormedSpace":
        """The space with its form scaled by -1 (only changes real quadratic spaces)."""
        if self.field == REAL and self.kind == QUAD:
            return real(self.q, self.p)
        return self

    def describe(self) -> str:
        if self.kind == SYMP:
            return f"symplectic {self.field}^{self.dim}"
        if self.field == REAL:
            return f"R^{{{self.p},{self.q}}}"
        if self.field == COMPLEX:
            return f"C^{self.dim} (quadratic)"
        return f"NA quadratic eps={self.eps} chi={self.chi} tower {self.sign}, Witt rank {self.r}"

    def to_json(self) -> dict:
        d = {"field": self.field, "kind": self.kind}
        if self.kind == SYMP or self.field == COMPLEX:
            d["dim"] = self.n_dim
        elif self.field == REAL:
            d.update(p=self.p, q=self.q)
        else:
            d.update(eps=self.eps, chi=self.chi, sign=self.sign, r=self.r)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "FormedSpace":
        field = d.get("field", REAL)
        kind = d.get("kind", QUAD)
        if kind == SYMP:
            return cls(field=field, kind=SYMP, n_dim=int(d.get("dim", 0)))
        if field == REAL:
            return real(int(d.get("p", 0)), int(d.get("q", 0)))
        if field == COMPLEX:
            return complex_quadratic(int(d.get("dim", 0)))
        if field == NONARCH:
            return nonarch(int(d.get("eps", 0)), d.get("chi", TRIV), d.get("sign", "+"), int(d.get("r", 0)))
        raise ValueError(f"unknown field {field!r}")


def real(p: int, q: int) -> FormedSpace:
    return FormedSpace(REAL, QUAD, p=p, q=q)


def complex_quadratic(dim: int) -> FormedSpace:
    return FormedSpace(COMPLEX, QUAD, n_dim=dim)


def symplectic(dim: int, field: str = REAL) -> FormedSpace:
    return FormedSpace(field, SYMP, n_dim=dim)


def nonarch(eps: int, chi: str, sign: str, r: int) -> FormedSpace:
    return FormedSpace(NONARCH, QUAD, eps=eps, chi=chi, sign=sign, r=r)


def witt_index(V: FormedSpace) -> int:
    if V.kind == SYMP:
        return V.dim // 2
    if V.field == REAL:
        return min(V.p, V.q)
    if V.field == COMPLEX:
        return V.dim // 2
    return V.r


def hilbert_symbol_real(x, y) -> int:
    """The quadratic Hilbert symbol (x, y) over R."""
    if x == 0 or y == 0:
        raise ValueError("Hilbert symbol needs non-zero arguments")
    return -1 if (x < 0 and y < 0) else 1


@dataclass(frozen=True)
class Discriminant:
    alpha: int
    trivial: bool

    @property
    def character(self) -> str:
        return "trivial" if self.trivial else "sign"


def discriminant_alpha(V: FormedSpace) -> Discriminant:
    """alpha = p - q mod 4 and whether chi_alpha is the trivial character of R^x."""
    if V.field != REAL or V.kind != QUAD:
        raise ValueError("discriminant_alpha needs a real quadratic space")
    alpha = (V.p - V.q) % 4
    d = (-1) ** (alpha * (alpha - 1) // 2)
    # chi_alpha(x) = (x, d)_2; it is trivial iff it is 1 at x = -1.
    return Discriminant(alpha, hilbert_symbol_real(-1, d) == 1)


@dataclass(frozen=True)
class WittTower:
    field: str
    eps: int
    k: int = 0  # real towers: k = p - q
    chi: str = TRIV  # non-archimedean towers
    sign: str = "+"

    @property
    def kernel_dim(self) -> int:
        if self.field == REAL:
            return abs(self.k)
        if self.field == COMPLEX:
            return self.eps
        return anisotropic_kernel_dim(self.eps, self.chi, self.sign)

    @property
    def family(self) -> tuple:
        """Key of the family T_{eps,chi} (over R: T_{eps,alpha}) the tower lies in."""
        if self.field == REAL:
            return (REAL, self.eps, self.k % 4)
        if self.field == COMPLEX:
            return (COMPLEX, self.eps)
        return (NONARCH, self.eps, self.chi)

    def dims(self, limit: int) -> list[int]:
        """Dimensions of the tower's spaces up to ``limit``."""
        return list(range(self.kernel_dim, limit + 1, 2))

    def on_progression(self, dim: int) -> bool:
        return dim >= self.kernel_dim and (dim - self.kernel_dim) % 2 == 0

    def label(self) -> str:
        if self.field == REAL:
            return f"t({self.k})"
        if self.field == COMPLEX:
            return f"t_{self.eps}"
        return f"t{self.sign}"

    def to_json(self) -> dict:
        if self.field == REAL:
            return {"k": self.k}
        if self.field == COMPLEX:
            return {"eps": self.eps}
        return {"sign": self.sign}


def real_tower(k: int) -> WittTower:
    return WittTower(REAL, k % 2, k=k)


def tower_of(V: FormedSpace) -> WittTower:
    if V.kind != QUAD:
        raise ValueError("only quadratic spaces belong to Witt towers")
    if V.field == REAL:
        return real_tower(V.p - V.q)
    if V.field == COMPLEX:
        return WittTower(COMPLEX, V.dim % 2)
    return WittTower(NONARCH, V.eps, chi=V.chi, sign=V.sign)


def space_at(t: WittTower, r: int) -> FormedSpace:
    """The member of tower t with Witt rank r."""
    if r < 0:
        raise ValueError(f"Witt rank must be non-negative, got {r}")
    if t.field == REAL:
        return real(t.k + r, r) if t.k >= 0 else real(r, -t.k + r)
    if t.field == COMPLEX:
        return complex_quadratic(t.eps + 2 * r)
    return nonarch(t.eps, t.chi, t.sign, r)


@dataclass(frozen=True)
class TowerFamily:
    field: str
    eps: int
    key: object  # chi flag (NA) or alpha (R); None over C
    count: float  # 1, 2 or math.inf

    def towers(self, kmax: int | None = None) -> list[WittTower]:
        """The towers of the family; over R those with |k| <= kmax."""
        if self.field == COMPLEX:
            return [WittTower(COMPLEX, self.eps)]
        if self.field == NONARCH:
            return [WittTower(NONARCH, self.eps, chi=self.key, sign=s) for s in ("+", "-")]
        if kmax is None:
            raise ValueError("the real family is infinite; pass kmax")
        return [real_tower(k) for k in range(-kmax, kmax + 1) if k % 4 == self.key]

    def iter_towers(self) -> Iterator[WittTower]:
        """All towers, ordered by |k| then k (never terminates over R)."""
        if self.count != math.inf:
            yield from self.towers()
            return
        for m in count(0):
            for k in sorted({m, -m}):
                if k % 4 == self.key:
                    yield real_tower(k)


def enumerate_towers(field: str, eps: int, chi_or_alpha=None) -> TowerFamily:
    if eps not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {eps}")
    if field == COMPLEX:
        return TowerFamily(COMPLEX, eps, None, 1)
    if field == NONARCH:
        chi = chi_or_alpha if chi_or_alpha is not None else TRIV
        if chi not in (TRIV, NONTRIV):
            raise ValueError(f"unknown character flag {chi!r}")
        return TowerFamily(NONARCH, eps, chi, 2)
    if field == REAL:
        alpha = int(chi_or_alpha) % 4
        if alpha % 2 != eps:
            raise ValueError(f"alpha={alpha} is incompatible with parity {eps}")
        return TowerFamily(REAL, eps, alpha, math.inf)
    raise ValueError(f"unknown field {field!r}")


def adjacent(t1: WittTower, t2: WittTower) -> bool:
    if t1.family != t2.family:
        raise FamilyMismatch(f"{t1.label()} and {t2.label()} are in different families")
    if t1 == t2:
        return False
    if t1.field == REAL:
        return abs(t1.k - t2.k) == 4
    # The two non-archimedean towers of a family are always adjacent; over C
    # a family has one tower.
    return True


def quasi_split(V: FormedSpace) -> bool:
    if V.kind != QUAD:
        raise ValueError("quasi_split is defined for quadratic spaces")
    return 2 * witt_index(V) >= V.dim - 2


@dataclass(frozen=True)
class DifferenceIndex:
    index: int
    same_tower: bool
    same_family: bool
    bound: int  # (dim V1 + dim V2 - 4) / 2, rounded down
    attains_bound: bool


def difference_witt_index(V1: FormedSpace, V2: FormedSpace) -> DifferenceIndex:
    """Witt index of V1 + V2^- for real quadratic spaces."""
    for V in (V1, V2):
        if V.field != REAL or V.kind != QUAD:
            raise ValueError("difference_witt_index needs real quadratic spaces")
    index = witt_index(real(V1.p + V2.q, V1.q + V2.p))
    t1, t2 = tower_of(V1), tower_of(V2)
    total = V1.dim + V2.dim - 4
    return DifferenceIndex(
        index=index,
        same_tower=t1 == t2,
        same_family=t1.family == t2.family,
        bound=total // 2,
        attains_bound=2 * index == total,
    )
