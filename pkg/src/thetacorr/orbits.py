"""Partitions, complex nilpotent orbits and admissible signed tableaux.

A real nilpotent orbit of an orthogonal (eps=+1) or symplectic (eps=-1)
Lie algebra is recorded by its rows: for each distinct row length t a
multiplicity space carrying a form.  The form is symmetric, Orth(a, b),
when (-1)^(t-1) * eps = +1 and skew, Symp(2m), otherwise.  The whole space
is the sum of (multiplicity space) x S_t, where S_t is the t-dimensional
sl2 module with its invariant form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

ORTH, SYMP = "orth", "symp"
DEFAULT_CAP = 12


class CapExceeded(ValueError):
    """An enumeration was asked for a size beyond the configured cap."""


# -- partitions ---------------------------------------------------------------


def partition(parts: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if parts and parts[-1] <= 0:
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def transpose(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x > i) for i in range(parts[0]))


def dominance_leq(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """lam <= mu in the dominance order (both partitions of the same size)."""
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: {sum(lam)} vs {sum(mu)}")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def dominance_maxima(items: list, key=lambda x: x) -> list:
    """Elements of ``items`` whose partitions are not strictly dominated by another's."""
    out = []
    for x in items:
        kx = key(x)
        if not any(key(y) != kx and dominance_leq(kx, key(y)) for y in items):
            out.append(x)
    return out


# -- complex orbits -----------------------------------------------------------


def lie_type_of_eps(eps: int) -> str:
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    return ORTH if eps == 1 else SYMP


def eps_of_lie_type(lie_type: str) -> int:
    if lie_type not in (ORTH, SYMP):
        raise ValueError(f"unknown Lie type {lie_type!r}")
    return 1 if lie_type == ORTH else -1


@dataclass(frozen=True)
class ComplexOrbit:
    lie_type: str
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", partition(self.parts))
        eps_of_lie_type(self.lie_type)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def to_json(self) -> dict:
        return {"type": self.lie_type, "partition": list(self.parts)}

    @classmethod
    def from_json(cls, d: dict) -> "ComplexOrbit":
        return cls(_parse_type(d["type"]), tuple(d["partition"]))

    def __str__(self):
        return f"{self.lie_type}{list(self.parts)}"


def _parse_type(name: str) -> str:
    name = name.lower()
    if name in ("orth", "o", "so", "orthogonal"):
        return ORTH
    if name in ("symp", "sp", "symplectic"):
        return SYMP
    raise ValueError(f"unknown Lie type {name!r}")


def partition_is_valid(lie_type: str, parts) -> bool:
    """Even parts of an orthogonal orbit, odd parts of a symplectic one, come in pairs."""
    bad_parity = 0 if lie_type == ORTH else 1
    return all(m % 2 == 0 for t, m in Counter(parts).items() if t % 2 == bad_parity)


def validate_complex(O: ComplexOrbit) -> list[str]:
    bad_parity = 0 if O.lie_type == ORTH else 1
    return [
        f"part {t} has odd multiplicity {m}"
        for t, m in sorted(Counter(O.parts).items(), reverse=True)
        if t % 2 == bad_parity and m % 2
    ]


def column_data(O) -> tuple[int, int, bool]:
    """(c1, c2, pure): number of parts, number of parts >= 2, and c1 == c2."""
    parts = O.parts if isinstance(O, ComplexOrbit) else tuple(O)
    c1 = len(parts)
    c2 = sum(1 for x in parts if x >= 2)
    return c1, c2, c1 == c2


def is_pure(O) -> bool:
    return column_data(O)[2]


def complex_orbits(lie_type: str, n: int, cap: int = DEFAULT_CAP) -> Iterator[ComplexOrbit]:
    if n > cap:
        raise CapExceeded(f"size {n} exceeds the enumeration cap {cap}")
    if lie_type == SYMP and n % 2:
        return
    for lam in partitions(n):
        if partition_is_valid(lie_type, lam):
            yield ComplexOrbit(lie_type, lam)


# -- multiplicity forms and tableaux -----------------------------------------


@dataclass(frozen=True)
class MultForm:
    """Orth(a, b) for a symmetric form of signature (a, b); Symp(d) for a skew form of dimension d."""

    kind: str
    a: int = 0
    b: int = 0

    @property
    def dim(self) -> int:
        return self.a + self.b

    def __add__(self, other: "MultForm") -> "MultForm":
        if self.kind != other.kind:
            raise ValueError(f"cannot add a {self.kind} form to a {other.kind} form")
        return MultForm(self.kind, self.a + other.a, self.b + other.b)

    def group_label(self) -> str:
        if self.dim == 0:
            return "1"
        if self.kind == ORTH:
            return f"O({self.a},{self.b})"
        return f"Sp_{self.dim}(R)"

    def to_json(self) -> dict:
        return {"orth": [self.a, self.b]} if self.kind == ORTH else {"symp": self.dim}

    @classmethod
    def from_json(cls, d: dict) -> "MultForm":
        if "orth" in d:
            a, b = d["orth"]
            return Orth(int(a), int(b))
        if "symp" in d:
            return Symp(int(d["symp"]))
        raise ValueError(f"form must have an 'orth' or 'symp' entry: {d}")

    def __str__(self):
        return f"Orth({self.a},{self.b})" if self.kind == ORTH else f"Symp({self.dim})"


def Orth(a: int, b: int) -> MultForm:
    return MultForm(ORTH, a, b)


def Symp(dim: int) -> MultForm:
    return MultForm(SYMP, dim, 0)


def row_form_kind(eps: int, t: int) -> str:
    """Kind of the multiplicity form on rows of length t."""
    return ORTH if (-1) ** (t - 1) * eps == 1 else SYMP


@dataclass(frozen=True)
class Tableau:
    eps: int
    rows: tuple[tuple[int, MultForm], ...]

    @property
    def lie_type(self) -> str:
        return lie_type_of_eps(self.eps)

    @property
    def total_dim(self) -> int:
        return sum(t * F.dim for t, F in self.rows)

    def form_at(self, t: int) -> MultForm | None:
        for s, F in self.rows:
            if s == t:
                return F
        return None

    def to_json(self) -> dict:
        return {"eps": self.eps, "rows": [{"t": t, "form": F.to_json()} for t, F in self.rows]}

    @classmethod
    def from_json(cls, d: dict) -> "Tableau":
        rows = [(int(r["t"]), MultForm.from_json(r["form"])) for r in d["rows"]]
        return cls(int(d["eps"]), tuple(rows))

    def __str__(self):
        body = ", ".join(f"({t}, {F})" for t, F in self.rows)
        return f"eps={self.eps:+d} [{body}]"


def make_tableau(eps: int, rows) -> Tableau:
    """Canonical tableau: rows sorted by length, equal lengths merged, empty rows dropped."""
    lie_type_of_eps(eps)
    merged: dict[int, MultForm] = {}
    for t, F in rows:
        merged[t] = merged[t] + F if t in merged else F
    return Tableau(eps, tuple((t, merged[t]) for t in sorted(merged, reverse=True) if merged[t].dim))


def validate_tableau(T: Tableau) -> list[str]:
    bad = []
    if T.eps not in (1, -1):
        return [f"eps must be +1 or -1, got {T.eps}"]
    lengths = [t for t, _ in T.rows]
    if any(t <= 0 for t in lengths):
        bad.append("row lengths must be positive")
    if any(x <= y for x, y in zip(lengths, lengths[1:])):
        bad.append("row lengths must be strictly decreasing")
    for t, F in T.rows:
        if F.a < 0 or F.b < 0:
            bad.append(f"length-{t} row has a negative multiplicity")
        want = row_form_kind(T.eps, t)
        if F.kind != want:
            bad.append(f"length-{t} row needs a {'Symp' if want == SYMP else 'Orth'} form")
        elif F.kind == SYMP and F.dim % 2:
            bad.append(f"length-{t} row has an odd-dimensional Symp form")
    return bad


def _require_valid(T: Tableau):
    bad = validate_tableau(T)
    if bad:
        raise ValueError(f"invalid tableau {T}: {'; '.join(bad)}")


def row_signature(t: int, F: MultForm) -> tuple[int, int]:
    """Signature of F x S_t for a row of a symmetric (eps=+1) tableau."""
    if t % 2:
        k = t // 2
        return F.a * (k + 1) + F.b * k, F.a * k + F.b * (k + 1)
    if F.kind != SYMP:
        raise ValueError(f"even row {t} of a symmetric tableau needs a Symp form")
    m = F.dim // 2
    return m * t, m * t


def total_signature(T: Tableau) -> tuple[int, int]:
    if T.eps != 1:
        raise ValueError("total_signature is only defined for eps=+1; use total_dim")
    _require_valid(T)
    p = q = 0
    for t, F in T.rows:
        a, b = row_signature(t, F)
        p, q = p + a, q + b
    return p, q


def stabilizer_factors(T: Tableau) -> list[str]:
    _require_valid(T)
    return [F.group_label() for _, F in T.rows]


def complexify(T: Tableau) -> ComplexOrbit:
    parts = [t for t, F in T.rows for _ in range(F.dim)]
    return ComplexOrbit(T.lie_type, tuple(parts))


def _form_choices(kind: str, m: int) -> list[MultForm]:
    if kind == SYMP:
        return [Symp(m)] if m % 2 == 0 else []
    return [Orth(a, m - a) for a in range(m, -1, -1)]


def tableaux_of(O: ComplexOrbit) -> Iterator[Tableau]:
    """All admissible real tableaux whose complexification is O."""
    eps = eps_of_lie_type(O.lie_type)
    mult = sorted(Counter(O.parts).items(), reverse=True)
    choices = [[(t, F) for F in _form_choices(row_form_kind(eps, t), m)] for t, m in mult]

    def rec(i, acc):
        if i == len(choices):
            yield Tableau(eps, tuple(acc))
            return
        for row in choices[i]:
            yield from rec(i + 1, acc + [row])

    yield from rec(0, [])


def enumerate_tableaux(eps: int, target, cap: int = DEFAULT_CAP) -> Iterator[Tableau]:
    """Tableaux for o(p, q) (eps=+1, target=(p, q)) or sp_2n(R) (eps=-1, target=2n)."""
    if eps == 1:
        p, q = target
        n = p + q
    else:
        n = int(target)
    for O in complex_orbits(lie_type_of_eps(eps), n, cap):
        for T in tableaux_of(O):
            if eps == -1 or total_signature(T) == (p, q):
                yield T


def enumerate_orbits(kind, size, cap: int = DEFAULT_CAP):
    """Complex orbits of a given Lie type, or real tableaux for a signature.

    ``kind`` is "orth"/"symp" (complex orbits of that size) or an eps value
    (+1 or -1) in which case ``size`` is (p, q) or the symplectic dimension.
    """
    if kind in (1, -1):
        return enumerate_tableaux(kind, size, cap)
    return complex_orbits(_parse_type(kind), size, cap)


# -- Gram matrices (used as an independent oracle for the tensor rule) --------


def sl2_module_gram(m: int) -> list[list[Fraction]]:
    """Invariant form on S_m in a weight basis.

    (e_i, e_{m-1-i}) = (-1)^i / C(m-1, i), rescaled by (-1)^k when m = 2k+1
    so that the form has signature (k+1, k).
    """
    G = [[Fraction(0)] * m for _ in range(m)]
    scale = (-1) ** (m // 2) if m % 2 else 1
    for i in range(m):
        G[i][m - 1 - i] = Fraction((-1) ** i * scale, comb(m - 1, i))
    return G


def form_gram(F: MultForm) -> list[list[Fraction]]:
    n = F.dim
    G = [[Fraction(0)] * n for _ in range(n)]
    if F.kind == ORTH:
        for i in range(n):
            G[i][i] = Fraction(1 if i < F.a else -1)
    else:
        h = n // 2
        for i in range(h):
            G[i][h + i] = Fraction(1)
            G[h + i][i] = Fraction(-1)
    return G


def kron(A, B):
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def block_diag(blocks):
    n = sum(len(b) for b in blocks)
    M = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for blk in blocks:
        for i, row in enumerate(blk):
            for j, x in enumerate(row):
                M[off + i][off + j] = x
        off += len(blk)
    return M


def tableau_gram(T: Tableau):
    return block_diag([kron(form_gram(F), sl2_module_gram(t)) for t, F in T.rows])


def symmetric_signature(G) -> tuple[int, int, int]:
    """(positive, negative, null) inertia of a rational symmetric matrix by congruence."""
    A = [list(map(Fraction, r)) for r in G]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is None:
            # No diagonal pivot: find an off-diagonal entry and make one.
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j; then A[i][i] = 2 A[i][j] != 0
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in active if i != piv]
        for i in rest:
            f = A[i][piv] / d
            if f:
                for k in range(n):
                    A[i][k] -= f * A[piv][k]
                for k in range(n):
                    A[k][i] -= f * A[k][piv]
        active = rest
    return pos, neg, len(active)


def rank(G) -> int:
    A = [list(map(Fraction, r)) for r in G]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r
