"""First-occurrence ledgers and the rules that narrow them.

Orthogonal side: V is fixed and each representation label carries an
interval for n(pi), the least half-dimension of a symplectic space at
which pi occurs.  Symplectic side: V' (dimension 2n) is fixed and each
label carries, per Witt tower, an interval for the least dimension of a
space in that tower at which the representation occurs.

Rules: persistence (facts), stable range, the conservation relations and,
over R, the adjacency clause.  ``infer`` runs them to a fixed point.  All
rules only ever narrow intervals, so the fixed point does not depend on
rule order and adding a fact never widens anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .formed_spaces import (
    COMPLEX,
    NONARCH,
    NONTRIV,
    REAL,
    TRIV,
    WittTower,
    adjacent,
    enumerate_towers,
    real_tower,
)

ORTH_SIDE, SYMP_SIDE = "orth", "symp"
INF = math.inf


class Contradiction(ValueError):
    """The facts are inconsistent; ``facts`` is a minimal conflicting subset."""

    def __init__(self, message: str, facts=(), rule: str = ""):
        super().__init__(message)
        self.message = message
        self.facts = tuple(facts)
        self.rule = rule


@dataclass(frozen=True)
class Fact:
    index: str
    dim: int  # orthogonal side: half the dimension of V'
    occurred: bool
    tower: WittTower | None = None
    source: str = ""

    def describe(self) -> str:
        where = f" in {self.tower.label()}" if self.tower is not None else ""
        verb = "occurs" if self.occurred else "does not occur"
        src = f" [{self.source}]" if self.source else ""
        return f"{self.index} {verb} at {self.dim}{where}{src}"

    def to_json(self) -> dict:
        d = {"index": self.index, "dim": self.dim, "occurred": self.occurred}
        if self.tower is not None:
            d["tower"] = self.tower.to_json()
        if self.source:
            d["source"] = self.source
        return d


@dataclass(frozen=True)
class Bound:
    value: float
    facts: frozenset = frozenset()  # positions in the ledger's fact list
    reason: str = "initial"


@dataclass(frozen=True)
class Interval:
    lo: Bound
    hi: Bound

    @property
    def exact(self) -> int | None:
        return int(self.lo.value) if self.lo.value == self.hi.value else None


def default_twin(label: str) -> str:
    if label == "1":
        return "sgn"
    if label == "sgn":
        return "1"
    if label.endswith("*sgn"):
        return label[: -len("*sgn")]
    return label + "*sgn"


@dataclass(frozen=True)
class OccurrenceLedger:
    side: str
    field: str = REAL
    dim_v: int = 0  # orthogonal side
    dim_vp: int = 0  # symplectic side, 2n
    eps: int = 0
    chi: str = TRIV  # non-archimedean family
    alpha: int | None = None  # real family
    facts: tuple[Fact, ...] = ()
    twins: tuple[tuple[str, str], ...] = ()
    indices: tuple[str, ...] = ()  # labels tracked even without facts
    bounds: tuple = ()  # ((label, tower), Interval) pairs, sorted

    def __post_init__(self):
        if self.side not in (ORTH_SIDE, SYMP_SIDE):
            raise ValueError(f"unknown side {self.side!r}")
        if self.field not in (REAL, COMPLEX, NONARCH):
            raise ValueError(f"unknown field {self.field!r}")
        if self.side == SYMP_SIDE and self.dim_vp % 2:
            raise ValueError("dim V' must be even")
        if self.side == SYMP_SIDE and self.field == REAL:
            alpha = self.alpha if self.alpha is not None else self.eps
            if alpha % 2 != self.eps % 2:
                object.__setattr__(self, "eps", alpha % 2)
            object.__setattr__(self, "alpha", alpha % 4)
        if self.field == NONARCH and self.chi not in (TRIV, NONTRIV):
            raise ValueError(f"unknown character flag {self.chi!r}")

    @property
    def n(self) -> int:
        return self.dim_vp // 2

    @property
    def conservation_sum(self) -> int:
        return 4 * self.n + 4

    def bound_map(self) -> dict:
        return dict(self.bounds)

    def twin_of(self, label: str) -> str:
        for a, b in self.twins:
            if a == label:
                return b
            if b == label:
                return a
        return default_twin(label)

    def labels(self) -> list[str]:
        seen = set(self.indices) | {f.index for f in self.facts} | {k[0] for k, _ in self.bounds}
        if self.side == ORTH_SIDE:
            seen |= {self.twin_of(x) for x in seen}
        return sorted(seen)

    # -- towers --

    def window(self) -> int:
        """Real towers with |k| beyond this never attain the minimal pair sum."""
        return 4 * self.n + 4

    def towers(self) -> list[WittTower]:
        if self.side == ORTH_SIDE:
            return [None]
        if self.field == NONARCH:
            return enumerate_towers(NONARCH, self.eps, self.chi).towers()
        if self.field == COMPLEX:
            found = {f.tower for f in self.facts if f.tower is not None}
            base = [WittTower(COMPLEX, self.eps)]
            return sorted(set(base) | found, key=lambda t: t.eps)
        ts = set(enumerate_towers(REAL, self.eps, self.alpha).towers(self.window()))
        ts |= {f.tower for f in self.facts if f.tower is not None}
        return sorted(ts, key=lambda t: (abs(t.k), t.k))

    def kernel(self, t) -> int:
        return 0 if t is None else t.kernel_dim

    def cap(self, t) -> float:
        if t is None:
            return INF
        return t.kernel_dim + 4 * (2 * self.n + 4)

    def step(self) -> int:
        return 1 if self.side == ORTH_SIDE else 2

    def check_tower(self, t):
        if self.side == ORTH_SIDE:
            if t is not None:
                raise ValueError("orthogonal-side facts carry no tower")
            return
        if t is None:
            raise ValueError("symplectic-side facts need a tower")
        if self.field == REAL:
            if t.field != REAL or t.k % 4 != self.alpha:
                raise ValueError(f"tower {t.label()} is not in the family alpha={self.alpha}")
        elif self.field == NONARCH:
            if t not in self.towers():
                raise ValueError(f"tower {t.label()} is not in the family eps={self.eps}, chi={self.chi}")
        elif t.field != COMPLEX:
            raise ValueError("complex ledger needs complex towers")

    # -- json --

    def to_json(self) -> dict:
        d = {"side": self.side, "field": self.field}
        if self.side == ORTH_SIDE:
            d["dimV"] = self.dim_v
        else:
            d["dimVp"] = self.dim_vp
            if self.field == REAL:
                d["alpha"] = self.alpha
            elif self.field == NONARCH:
                d.update(eps=self.eps, chi=self.chi)
            else:
                d["eps"] = self.eps
        d["facts"] = [f.to_json() for f in self.facts]
        if self.twins:
            d["twins"] = [list(p) for p in self.twins]
        if self.indices:
            d["indices"] = list(self.indices)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "OccurrenceLedger":
        side = d["side"]
        fld = d.get("field", REAL)
        eps = int(d.get("eps", 0))
        chi = d.get("chi", TRIV)
        alpha = d.get("alpha")
        raw = d.get("facts", [])
        if side == SYMP_SIDE and fld == REAL and alpha is None:
            ks = {int(f["tower"]["k"]) % 4 for f in raw if "tower" in f}
            if len(ks) > 1:
                raise ValueError("facts mention towers from several families; give 'alpha'")
            alpha = ks.pop() if ks else eps
        led = cls(
            side=side,
            field=fld,
            dim_v=int(d.get("dimV", 0)),
            dim_vp=int(d.get("dimVp", 0)),
            eps=eps,
            chi=chi,
            alpha=None if alpha is None else int(alpha),
            twins=tuple(tuple(p) for p in d.get("twins", [])),
            indices=tuple(d.get("indices", [])),
        )
        facts = []
        for f in raw:
            t = parse_tower(led, f["tower"]) if "tower" in f else None
            facts.append(_checked_fact(led, f["index"], t, int(f["dim"]), bool(f["occurred"]), f.get("source", "")))
        return replace(led, facts=tuple(facts))


def parse_tower(ledger: OccurrenceLedger, d: dict) -> WittTower:
    if ledger.field == REAL:
        return real_tower(int(d["k"]))
    if ledger.field == NONARCH:
        return WittTower(NONARCH, ledger.eps, chi=ledger.chi, sign=d["sign"])
    return WittTower(COMPLEX, int(d.get("eps", ledger.eps)))


def orthogonal_ledger(dim_v: int, field: str = REAL) -> OccurrenceLedger:
    return OccurrenceLedger(ORTH_SIDE, field, dim_v=dim_v)


def symplectic_ledger(dim_vp: int, field: str = REAL, eps: int = 0, chi: str = TRIV, alpha: int | None = None) -> OccurrenceLedger:
    return OccurrenceLedger(SYMP_SIDE, field, dim_vp=dim_vp, eps=eps, chi=chi, alpha=alpha)


# -- interval state -----------------------------------------------------------


class _State:
    """Mutable working copy of a ledger's intervals during one rule pass."""

    def __init__(self, ledger: OccurrenceLedger):
        self.ledger = ledger
        self.iv = dict(ledger.bounds)
        self.changed = False
        self.pending: list[str] = []
        for label in ledger.labels():
            for t in ledger.towers():
                self.get(label, t)
        for i, f in enumerate(ledger.facts):
            _apply_fact(self, i, f)

    def get(self, label, t) -> Interval:
        key = (label, t)
        if key not in self.iv:
            L = self.ledger
            self.iv[key] = Interval(Bound(L.kernel(t)), Bound(L.cap(t)))
        return self.iv[key]

    def _align_up(self, t, v):
        if v == INF or v == -INF:
            return v
        k = self.ledger.kernel(t)
        v = max(v, k)
        if self.ledger.step() == 2 and (v - k) % 2:
            v += 1
        return v

    def _align_down(self, t, v):
        if v == INF:
            return v
        k = self.ledger.kernel(t)
        if self.ledger.step() == 2 and (v - k) % 2:
            v -= 1
        return v

    def raise_lo(self, label, t, value, facts, reason):
        cur = self.get(label, t)
        value = self._align_up(t, value)
        if value > cur.lo.value:
            self._set(label, t, Interval(Bound(value, frozenset(facts), reason), cur.hi))

    def lower_hi(self, label, t, value, facts, reason):
        cur = self.get(label, t)
        value = self._align_down(t, value)
        if value < cur.hi.value:
            self._set(label, t, Interval(cur.lo, Bound(value, frozenset(facts), reason)))

    def _set(self, label, t, iv: Interval):
        self.iv[(label, t)] = iv
        self.changed = True
        if iv.lo.value > iv.hi.value:
            where = f" in {t.label()}" if t is not None else ""
            raise Contradiction(
                f"{label}{where}: lower bound {iv.lo.value} ({iv.lo.reason}) exceeds upper bound {iv.hi.value} ({iv.hi.reason})",
                iv.lo.facts | iv.hi.facts,
                "interval",
            )

    def freeze(self) -> OccurrenceLedger:
        items = tuple(sorted(self.iv.items(), key=lambda kv: _key_order(kv[0])))
        return replace(self.ledger, bounds=items)


def _key_order(key):
    label, t = key
    if t is None:
        return (label, 0, 0, "")
    return (label, abs(t.k), t.k, t.sign + str(t.eps))


# -- rules --------------------------------------------------------------------


def _apply_fact(st: _State, i: int, f: Fact):
    if f.occurred:
        st.lower_hi(f.index, f.tower, f.dim, {i}, f"persistence from fact {i}")
    else:
        st.raise_lo(f.index, f.tower, f.dim + st.ledger.step(), {i}, f"persistence from fact {i}")


def _checked_fact(ledger: OccurrenceLedger, index: str, tower, dim: int, occurred: bool, source: str) -> Fact:
    ledger.check_tower(tower)
    if dim < 0:
        raise ValueError("dimension must be non-negative")
    if tower is not None and not tower.on_progression(dim):
        raise ValueError(f"dimension {dim} is not on the progression of {tower.label()}")
    return Fact(index, dim, occurred, tower, source)


def assert_fact(ledger: OccurrenceLedger, index: str, tower, dim: int, occurred: bool, source: str = "") -> OccurrenceLedger:
    """Record a persistence fact and narrow that one interval.

    Raises Contradiction naming the facts behind the two clashing bounds.
    """
    f = _checked_fact(ledger, index, tower, dim, occurred, source)
    return _run(replace(ledger, facts=ledger.facts + (f,)), None)


def _run(ledger: OccurrenceLedger, rule) -> OccurrenceLedger:
    try:
        st = _State(ledger)
        if rule is not None:
            rule(st)
    except Contradiction as e:
        raise Contradiction(e.message, [ledger.facts[i] for i in sorted(e.facts)], e.rule) from None
    return st.freeze()


def _stable_range(st: _State):
    L = st.ledger
    for (label, t) in list(st.iv):
        if L.side == ORTH_SIDE:
            st.lower_hi(label, t, L.dim_v, (), "stable range")
        elif L.field == COMPLEX:
            st.lower_hi(label, t, L.dim_vp + t.eps, (), "early occurrence over C")
        else:
            st.lower_hi(label, t, t.kernel_dim + 2 * L.dim_vp, (), "stable range")


def apply_stable_range(ledger: OccurrenceLedger) -> OccurrenceLedger:
    return _run(ledger, _stable_range)


def _pair_sum_at_least(st: _State, label, t1, t2, total, reason):
    for a, b in ((t1, t2), (t2, t1)):
        hb = st.get(label, b).hi
        if hb.value != INF:
            st.raise_lo(label, a, total - hb.value, hb.facts, reason)


def _pair_sum_at_most(st: _State, label, t1, t2, total, reason):
    for a, b in ((t1, t2), (t2, t1)):
        lb = st.get(label, b).lo
        st.lower_hi(label, a, total - lb.value, lb.facts, reason)


def adjacent_candidates(ledger: OccurrenceLedger, label: str, bounds=None) -> list[tuple[WittTower, WittTower]]:
    """Adjacent real tower pairs whose intervals still allow the sum 4n+4."""
    bm = dict(bounds if bounds is not None else ledger.bounds)
    total = ledger.conservation_sum
    out = []
    ts = ledger.towers()
    for i, t1 in enumerate(ts):
        for t2 in ts[i + 1 :]:
            if not adjacent(t1, t2):
                continue
            a, b = bm[(label, t1)], bm[(label, t2)]
            if a.lo.value + b.lo.value <= total <= a.hi.value + b.hi.value:
                out.append((t1, t2))
    return out


def _conservation(st: _State):
    L = st.ledger
    if L.side == ORTH_SIDE:
        for label in L.labels():
            tw = L.twin_of(label)
            for a, b in ((label, tw), (tw, label)):
                ib = st.get(b, None)
                if ib.hi.value != INF:
                    st.raise_lo(a, None, L.dim_v - ib.hi.value, ib.hi.facts, f"conservation with {b}")
                st.lower_hi(a, None, L.dim_v - ib.lo.value, ib.lo.facts, f"conservation with {b}")
        return
    if L.field == COMPLEX:
        return
    total = L.conservation_sum
    ts = L.towers()
    for label in L.labels():
        if L.field == NONARCH:
            t1, t2 = ts
            _pair_sum_at_least(st, label, t1, t2, total, "conservation of the two towers")
            _pair_sum_at_most(st, label, t1, t2, total, "conservation of the two towers")
            continue
        for i, t1 in enumerate(ts):
            for t2 in ts[i + 1 :]:
                if adjacent(t1, t2):
                    _pair_sum_at_least(st, label, t1, t2, total, f"pair sum with {t2.label()}/{t1.label()} at least {total}")
                else:
                    _pair_sum_at_least(
                        st, label, t1, t2, total + 2, f"non-adjacent pair {t1.label()},{t2.label()} sum at least {total + 2}"
                    )
        cands = adjacent_candidates(L, label, st.iv)
        if not cands:
            deps = frozenset().union(*(st.get(label, t).lo.facts | st.get(label, t).hi.facts for t in ts))
            raise Contradiction(f"{label}: no pair of adjacent towers can attain the minimal sum {total}", deps, "minimum")
        if len(cands) == 1:
            t1, t2 = cands[0]
            _pair_sum_at_most(st, label, t1, t2, total, f"only {t1.label()},{t2.label()} can attain the minimum {total}")
        else:
            names = ", ".join(f"({a.label()},{b.label()})" for a, b in cands)
            st.pending.append(f"{label}: minimum {total} attained by one of {names}")


def apply_conservation(ledger: OccurrenceLedger) -> OccurrenceLedger:
    return _run(ledger, _conservation)


def seed_known_anchors(ledger: OccurrenceLedger, which: str) -> OccurrenceLedger:
    """Add the known first occurrences of the sign character or of the trivial representation."""
    if which == "sign":
        if ledger.side != ORTH_SIDE:
            raise ValueError("the sign anchor lives on the orthogonal side")
        d = ledger.dim_v
        ledger = assert_fact(ledger, "sgn", None, d, True, "anchor: sign character")
        if d > 0:
            ledger = assert_fact(ledger, "sgn", None, d - 1, False, "anchor: sign character")
        return ledger
    if which == "trivial":
        if ledger.side != SYMP_SIDE or ledger.field != REAL or ledger.alpha != 2:
            raise ValueError("the trivial anchor needs a real symplectic ledger with alpha = 2")
        m = 2 * ledger.n + 2
        for k in (2, -2):
            t = real_tower(k)
            ledger = assert_fact(ledger, "1", t, m, True, "anchor: trivial representation")
            ledger = assert_fact(ledger, "1", t, m - 2, False, "anchor: trivial representation")
        return ledger
    raise ValueError(f"unknown anchor {which!r}")


# -- inference ----------------------------------------------------------------


@dataclass
class Report:
    ledger: OccurrenceLedger
    pending: list[str] = field(default_factory=list)
    rounds: int = 0

    def intervals(self) -> dict:
        return {k: (v.lo.value, v.hi.value) for k, v in self.ledger.bounds}

    def interval(self, label, tower=None) -> tuple:
        iv = self.ledger.bound_map()[(label, tower)]
        return iv.lo.value, iv.hi.value

    def exact(self, label, tower=None) -> int | None:
        return self.ledger.bound_map()[(label, tower)].exact

    def to_json(self) -> dict:
        L = self.ledger
        rows = []
        for (label, t), iv in L.bounds:
            row = {"index": label}
            if t is not None:
                row["tower"] = t.to_json()
            row["lo"] = _num(iv.lo.value)
            row["hi"] = _num(iv.hi.value)
            row["exact"] = iv.exact
            row["lo_reason"] = _trace(L, iv.lo)
            row["hi_reason"] = _trace(L, iv.hi)
            rows.append(row)
        return {"ledger": L.to_json(), "intervals": rows, "pending": list(self.pending), "rounds": self.rounds}


def _num(v):
    return None if v == INF else int(v)


def _trace(L: OccurrenceLedger, b: Bound) -> dict:
    return {"rule": b.reason, "facts": [L.facts[i].describe() for i in sorted(b.facts)]}


def _fixpoint(ledger: OccurrenceLedger) -> Report:
    st = _State(ledger)
    rounds = 0
    while True:
        rounds += 1
        st.changed = False
        st.pending = []
        _stable_range(st)
        _conservation(st)
        if not st.changed:
            break
    return Report(st.freeze(), st.pending, rounds)


def _consistent(ledger: OccurrenceLedger, keep) -> bool:
    sub = replace(ledger, facts=tuple(ledger.facts[i] for i in keep), bounds=())
    try:
        _fixpoint(sub)
    except Contradiction:
        return False
    return True


def minimal_conflict(ledger: OccurrenceLedger, start=None) -> list[int]:
    """Shrink a conflicting fact set until every fact is needed."""
    keep = sorted(start if start is not None else range(len(ledger.facts)))
    if _consistent(ledger, keep):
        keep = list(range(len(ledger.facts)))
    for i in list(keep):
        trial = [j for j in keep if j != i]
        if not _consistent(ledger, trial):
            keep = trial
    return keep


def infer(ledger: OccurrenceLedger) -> Report:
    """Run all rules to a fixed point; raise Contradiction with a minimal fact set."""
    try:
        return _fixpoint(ledger)
    except Contradiction as e:
        base = replace(ledger, bounds=())
        core = minimal_conflict(base, e.facts)
        facts = [base.facts[i] for i in core]
        lines = "; ".join(f.describe() for f in facts) or "no facts (rules alone)"
        raise Contradiction(f"{e.message}. Conflicting facts: {lines}", facts, e.rule) from None


# -- doubling parameters ------------------------------------------------------


def rallis_parameters(p: int, q: int, n: int) -> tuple[Fraction, int]:
    if min(p, q, n) < 0:
        raise ValueError("p, q, n must be non-negative")
    return Fraction(p + q, 2) - Fraction(n + 1, 2), (p - q) % 4


def enumerate_Q(m: int, alpha: int) -> list[tuple[int, int]]:
    """All signatures (p, q) with p + q = m and p - q = alpha mod 4."""
    return [(p, m - p) for p in range(m, -1, -1) if (2 * p - m - alpha) % 4 == 0]


def companion_quotient(p1: int, q1: int, n: int, m: int | None = None) -> tuple[int, int] | None:
    if m is not None and p1 + q1 != m:
        raise ValueError(f"(p1, q1) = ({p1}, {q1}) does not have dimension {m}")
    if p1 > n + 1 or q1 > n + 1:
        return None
    return n + 1 - q1, n + 1 - p1
