"""Classical signatures (star, p, q) and signature-level data of dual pairs."""

from __future__ import annotations

from dataclasses import dataclass

from .formed_spaces import SYMP, FormedSpace, witt_index

B, C, D, CT, CS, DS = "B", "C", "D", "C~", "C*", "D*"
STARS = (B, C, D, CT, CS, DS)

_ALIASES = {"Ct": CT, "C̃": CT, "Mp": CT, "Cs": CS, "Ds": DS}

_DUAL = {B: CT, CT: B, C: D, D: C, CS: DS, DS: CS}


def normalize_star(star: str) -> str:
    star = _ALIASES.get(star, star)
    if star not in STARS:
        raise ValueError(f"unknown star label {star!r}")
    return star


def howe_dual(star: str) -> str:
    return _DUAL[normalize_star(star)]


def is_orthogonal_star(star: str) -> bool:
    """True for the stars whose real form preserves a symmetric form over R."""
    return normalize_star(star) in (B, D)


@dataclass(frozen=True)
class ClassicalSignature:
    star: str
    p: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "star", normalize_star(self.star))

    @property
    def size(self) -> int:
        return self.p + self.q

    def to_json(self) -> dict:
        return {"star": self.star, "p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, d: dict) -> "ClassicalSignature":
        return cls(d["star"], int(d.get("p", 0)), int(d.get("q", 0)))

    def __str__(self):
        return f"({self.star},{self.p},{self.q})"


def sig(star: str, p: int, q: int) -> ClassicalSignature:
    return ClassicalSignature(star, p, q)


def validate_signature(s: ClassicalSignature) -> list[str]:
    """Return the violated validity clauses; an empty list means s is valid."""
    bad = []
    if s.p < 0 or s.q < 0:
        bad.append("p, q must be non-negative")
    if s.star == B and s.size % 2 == 0:
        bad.append("p+q odd required")
    if s.star == D and s.size % 2 == 1:
        bad.append("p+q even required")
    if s.star in (C, CT, DS) and s.p != s.q:
        bad.append("p=q required")
    if s.star == CS and (s.p % 2 or s.q % 2):
        bad.append("p and q even required")
    return bad


def is_valid(s: ClassicalSignature) -> bool:
    return not validate_signature(s)


def _require_valid(s: ClassicalSignature):
    bad = validate_signature(s)
    if bad:
        raise ValueError(f"invalid signature {s}: {'; '.join(bad)}")


def real_group_label(s: ClassicalSignature) -> str:
    _require_valid(s)
    if s.star in (B, D):
        return f"O({s.p},{s.q})"
    if s.star == C:
        return f"Sp_{2 * s.p}(R)"
    if s.star == CT:
        return f"Mp_{2 * s.p}(R)"
    if s.star == DS:
        return f"O*({2 * s.p})"
    return f"Sp({s.p // 2},{s.q // 2})"


def group_of_signature(s: ClassicalSignature) -> str:
    """Descriptive form of real_group_label, spelling out the metaplectic cover."""
    label = real_group_label(s)
    if s.star == CT:
        return f"metaplectic cover of Sp_{2 * s.p}(R)"
    return label


# Real dual pairs: shape -> (description, dimension of W in terms of the two
# standard-module parameters).  Type I pairs use (p+q, n) or (p+q, r+s);
# type II pairs use (m, n).
_PAIR_TABLE = {
    "O-Sp": ("(O_{p,q}, Sp_2n(R))", lambda a, b: 2 * a * b),
    "O(C)-Sp(C)": ("(O_p(C), Sp_2n(C))", lambda a, b: 4 * a * b),
    "U-U": ("(U_{p,q}, U_{r,s})", lambda a, b: 2 * a * b),
    "Sp-O*": ("(Sp_{p,q}, O*_2n)", lambda a, b: 4 * a * b),
    "GL(R)": ("(GL_m(R), GL_n(R))", lambda a, b: 2 * a * b),
    "GL(C)": ("(GL_m(C), GL_n(C))", lambda a, b: 4 * a * b),
    "GL(H)": ("(GL_m(H), GL_n(H))", lambda a, b: 8 * a * b),
}

PAIR_SHAPES = tuple(_PAIR_TABLE)


def ambient_symplectic_dim(shape: str, first: int, second: int) -> int:
    """Dimension of the real symplectic space W containing the pair.

    ``first`` and ``second`` are the sizes in the table's notation, e.g. for
    "O-Sp" they are p+q and n, for "U-U" they are p+q and r+s.
    """
    try:
        _, f = _PAIR_TABLE[shape]
    except KeyError:
        raise ValueError(f"unknown pair shape {shape!r}; known: {', '.join(PAIR_SHAPES)}") from None
    if first < 0 or second < 0:
        raise ValueError("pair sizes must be non-negative")
    return f(first, second)


def pair_description(shape: str) -> str:
    return _PAIR_TABLE[shape][0]


ORTHOGONAL_SMALLER = "orthogonal"
SYMPLECTIC_SMALLER = "symplectic"


def stable_range(V: FormedSpace, Vp: FormedSpace) -> str | None:
    """Which side of the orthogonal-symplectic pair (V, V') is in the stable range.

    Returns "orthogonal" when dim V <= dim V'/2, "symplectic" when the Witt
    index of V is at least dim V', otherwise None.
    """
    if V.kind == SYMP or Vp.kind != SYMP:
        raise ValueError("stable_range expects a quadratic V and a symplectic V'")
    if 2 * V.dim <= Vp.dim:
        return ORTHOGONAL_SMALLER
    if witt_index(V) >= Vp.dim:
        return SYMPLECTIC_SMALLER
    return None
