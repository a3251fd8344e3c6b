"""Growth exponents and the thresholds for theta lifting by integration.

A representation is tracked only through a number nu: its matrix
coefficients are bounded by Psi^nu times the Xi function.  Xi itself is
never evaluated; it only enters through the integer thresholds below.
nu values are exact (int or Fraction); NO_BOUND means nothing is known.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .dual_pairs import B, C, CS, CT, D, DS, ClassicalSignature, howe_dual, validate_signature

NO_BOUND = -math.inf


def _check(s: ClassicalSignature):
    bad = validate_signature(s)
    if bad:
        raise ValueError(f"invalid signature {s}: {'; '.join(bad)}")


def _check_dual(s: ClassicalSignature, sp: ClassicalSignature):
    if howe_dual(s.star) != sp.star:
        raise ValueError(f"{sp} is not Howe dual to {s}: expected star {howe_dual(s.star)}")


def nu_s(s: ClassicalSignature) -> int:
    _check(s)
    shift = {C: 0, CT: 0, CS: 1, B: 2, D: 2, DS: 3}[s.star]
    return s.size - shift


def nu_profile(s: ClassicalSignature) -> tuple[int, int]:
    """(nu_s, nu_s^+); nu_s^+ is the least even integer >= nu_s."""
    v = nu_s(s)
    return v, v if s.star in (C, D, CT) else v + 1


def kappa(s: ClassicalSignature, sp: ClassicalSignature) -> int:
    _check_dual(s, sp)
    if sp.star in (B, D):
        return sp.size - s.size - 1
    if sp.star in (C, CT):
        return sp.size - s.size + 1
    return sp.size - s.size


def kappa_and_nu_pair(s: ClassicalSignature, sp: ClassicalSignature) -> tuple[int, int]:
    k = kappa(s, sp)
    return k, -(k + 1)


def nu_pair_by_cases(s: ClassicalSignature, sp: ClassicalSignature) -> int:
    """The same threshold written through nu_s, with the separate row for star' = C*."""
    _check_dual(s, sp)
    v = nu_s(s)
    return v - sp.size + 2 if sp.star == CS else v - sp.size


@dataclass(frozen=True)
class ConvergenceFlags:
    convergent: bool
    overconvergent: bool
    weakly_tempered: bool
    unitarity_preserving: bool

    def to_json(self) -> dict:
        return {
            "convergent": self.convergent,
            "overconvergent": self.overconvergent,
            "weakly_tempered": self.weakly_tempered,
            "unitarity_preserving": self.unitarity_preserving,
        }


def convergence_report(nu, s: ClassicalSignature, sp: ClassicalSignature) -> ConvergenceFlags:
    _check_dual(s, sp)
    v, vplus = nu_profile(s)
    conv = nu > v - sp.size
    over = nu > vplus - sp.size
    return ConvergenceFlags(conv, over, sp.size >= v, sp.size >= vplus and over)


def lift_bound(s: ClassicalSignature, sp: ClassicalSignature) -> int:
    """Growth exponent of the integrated lift of a convergent representation."""
    _check_dual(s, sp)
    return s.size - nu_s(sp)


@dataclass(frozen=True)
class ChainStep:
    source: ClassicalSignature
    target: ClassicalSignature
    nu_in: object
    kappa: int
    nu_pair: int
    flags: ConvergenceFlags
    nu_out: object
    ac_relation: str

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "nu_in": nu_to_json(self.nu_in),
            "kappa": self.kappa,
            "nu_pair": self.nu_pair,
            **self.flags.to_json(),
            "nu_out": nu_to_json(self.nu_out),
            "ac_relation": self.ac_relation,
        }


@dataclass(frozen=True)
class ChainPlan:
    steps: tuple[ChainStep, ...]
    first_nonconvergent: int | None
    first_not_unitarity_preserving: int | None
    note: str = (
        "Only the sufficient growth conditions are propagated; no statement is made about "
        "the lifted representations beyond them."
    )

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "first_nonconvergent": self.first_nonconvergent,
            "first_not_unitarity_preserving": self.first_not_unitarity_preserving,
            "note": self.note,
        }


def nu_to_json(nu):
    if nu == NO_BOUND:
        return None
    if isinstance(nu, Fraction):
        return str(nu) if nu.denominator != 1 else nu.numerator
    return nu


def plan_chain(start: ClassicalSignature, nu0, targets: list[ClassicalSignature]) -> ChainPlan:
    """Fold the convergence tests and lift bounds along s0 -> s1 -> ...

    A step's output bound is the lift bound when the step is convergent and
    NO_BOUND otherwise.  The associated-cycle comparison is an equality once
    nu exceeds the pair threshold (for a good orbit) and an upper bound
    otherwise.
    """
    _check(start)
    steps = []
    cur, nu = start, nu0
    first_nc = first_nu = None
    for i, nxt in enumerate(targets):
        _check(nxt)
        _check_dual(cur, nxt)
        k, npair = kappa_and_nu_pair(cur, nxt)
        flags = convergence_report(nu, cur, nxt)
        out = lift_bound(cur, nxt) if flags.convergent else NO_BOUND
        rel = "equality" if nu > npair else "upper bound"
        steps.append(ChainStep(cur, nxt, nu, k, npair, flags, out, rel))
        if first_nc is None and not flags.convergent:
            first_nc = i
        if first_nu is None and not flags.unitarity_preserving:
            first_nu = i
        cur, nu = nxt, out
    return ChainPlan(tuple(steps), first_nc, first_nu)


# -- Psi -----------------------------------------------------------------------


def _as_fraction(a) -> Fraction:
    if isinstance(a, Fraction):
        return a
    if isinstance(a, float):
        return Fraction(a).limit_denominator(10**12)
    return Fraction(a)


def _exact_sqrt(num: int, den: int) -> Fraction | None:
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def psi_eval(eigenvalues) -> Fraction | float:
    """prod over a of ((1 + a) / 2)^(-1/2), for a multiset closed under a -> 1/a.

    The result is an exact Fraction when the product is a rational square,
    otherwise a float.
    """
    pairs = [(a.numerator, a.denominator) for a in map(_as_fraction, eigenvalues)]
    if any(n <= 0 for n, _ in pairs):
        raise ValueError("eigenvalues must be positive")
    if Counter(pairs) != Counter((d, n) for n, d in pairs):
        raise ValueError("eigenvalues must be closed under a -> 1/a (with multiplicity)")
    # (1 + n/d) / 2 = (d + n) / (2d), accumulated over the integers.
    num = den = 1
    for n, d in pairs:
        num *= d + n
        den *= 2 * d
    g = math.gcd(num, den)
    num, den = num // g, den // g
    root = _exact_sqrt(num, den)
    if root is not None:
        return 1 / root
    return math.sqrt(den / num)


# -- doubling ------------------------------------------------------------------


@dataclass(frozen=True)
class DoublingData:
    kappa: int
    s0: ClassicalSignature
    s2: ClassicalSignature
    sdot: ClassicalSignature
    split_rank: int
    expected: int
    consistent: bool

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "s0": self.s0.to_json(),
            "s2": self.s2.to_json(),
            "sdot": self.sdot.to_json(),
            "split_rank": self.split_rank,
            "expected_split_rank": self.expected,
            "consistent": self.consistent,
        }


def doubling_signatures(s: ClassicalSignature, sp: ClassicalSignature) -> DoublingData:
    """s0 = (star., k, k), s'' = (star, p+k, q+k), s. = (star., |s|+k, |s|+k), star. = D for B."""
    _check(s)
    _check(sp)
    k = kappa(s, sp)
    if k < 0:
        raise ValueError(f"kappa = {k} is negative for {s}, {sp}")
    dot = D if s.star == B else s.star
    s0 = ClassicalSignature(dot, k, k)
    s2 = ClassicalSignature(s.star, s.p + k, s.q + k)
    sdot = ClassicalSignature(dot, s.size + k, s.size + k)
    split = s.size + k
    if sp.star in (B, D):
        expected = sp.size - 1
    elif sp.star in (C, CT):
        expected = sp.size + 1
    else:
        expected = sp.size
    return DoublingData(k, s0, s2, sdot, split, expected, split == expected)
