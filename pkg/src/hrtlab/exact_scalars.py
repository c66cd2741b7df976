"""Exact scalars (rationals and real quadratic irrationals) and the
four-point configuration classifier.

The scalar class is Q together with numbers p + q*sqrt(d) (p, q rational,
q != 0, d squarefree >= 2).  Within this class, Q-linear independence of
{1, r, s} is decidable in closed form:

* if r or s is rational, {1, r, s} is dependent;
* otherwise r and s live in the real quadratic fields Q(sqrt(d_r)) and
  Q(sqrt(d_s)) with d_r, d_s their normalized squarefree parts, and
  {1, r, s} is independent iff d_r != d_s.  Equal parts put both scalars
  in one field of Q-dimension 2, which forces a relation; distinct
  squarefree parts make 1, sqrt(d_r), sqrt(d_s) independent generators.

`integer_relation_search` cross-checks the exact rule on floating-point
images.  Binary64 numbers are dyadic rationals, so "|p + q*r + u*s| < tol"
is decidable exactly in integer arithmetic; the sorted-fractional-part
sweep below visits every qualifying triple up to the height bound without
enumerating the full cube, making the search exhaustive-equivalent at any
height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional, Union

import numpy as np

from .phase_space import LatticeBasis, covolume

__all__ = [
    "Rational",
    "QuadIrr",
    "ExactScalar",
    "Configuration",
    "DenseLargeCovolume",
    "RationalCoordinate",
    "OutOfScope",
    "OutOfScopeReason",
    "Classification",
    "NotRationalError",
    "ScalarParseError",
    "make_scalar",
    "evaluate",
    "rationally_independent_1_r_s",
    "integer_relation_search",
    "refine_denominator",
    "classify",
    "parse_scalar",
]


class NotRationalError(TypeError):
    """An operation restricted to rational scalars received a quadratic irrational."""


class ScalarParseError(ValueError):
    """Malformed scalar text; `column` is the 1-based offending position."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


def _squarefree_split(n: int) -> tuple[int, int]:
    """Decompose n >= 0 as m^2 * d0 with d0 squarefree; returns (m, d0)."""
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    m, d0 = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            m *= k
        if n % k == 0:
            n //= k
            d0 *= k
        k += 1 if k == 2 else 2
    return m, d0 * n


# sqrt(d) to 80 fractional bits, for float conversion that survives
# cancellation between the rational and radical parts
_SQRT_BITS = 80


def _sqrt_approx(d: int) -> Fraction:
    scale = 1 << _SQRT_BITS
    return Fraction(math.isqrt(d * scale * scale), scale)


@dataclass(frozen=True)
class Rational:
    """Exact rational, stored in lowest terms with positive denominator."""

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        f = Fraction(self.num, self.den)  # raises ZeroDivisionError on den == 0
        object.__setattr__(self, "num", f.numerator)
        object.__setattr__(self, "den", f.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"


@dataclass(frozen=True)
class QuadIrr:
    """A genuinely irrational p + q*sqrt(d).

    The constructor normalizes the radicand (square factors of d migrate
    into q) and rejects values that collapse to rationals: after
    normalization q != 0 and d is squarefree with d >= 2.
    """

    p: Fraction
    q: Fraction
    d: int

    def __post_init__(self) -> None:
        p, q = Fraction(self.p), Fraction(self.q)
        if not isinstance(self.d, int):
            raise TypeError("radicand d must be an integer")
        m, d0 = _squarefree_split(self.d)
        q = q * m
        if q == 0 or d0 < 2:
            raise ValueError(
                "value is rational (q = 0 or the radicand is a perfect square); "
                "use Rational instead"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d0)

    def __float__(self) -> float:
        return float(self.p + self.q * _sqrt_approx(self.d))

    def __str__(self) -> str:
        radical = f"sqrt({self.d})"
        if self.q == 1:
            q_part = radical
        elif self.q == -1:
            q_part = f"-{radical}"
        else:
            q_part = f"{self.q}*{radical}"
        if self.p == 0:
            return q_part
        sign = "+" if self.q > 0 else ""
        return f"{self.p}{sign}{q_part}"


ExactScalar = Union[Rational, QuadIrr]


def make_scalar(p, q=0, d: int = 0) -> ExactScalar:
    """Normalizing factory for p + q*sqrt(d).

    Returns a Rational when the radical part vanishes (q = 0, d in {0, 1},
    or d a perfect square), otherwise a QuadIrr with squarefree d.
    """
    p, q = Fraction(p), Fraction(q)
    if d < 0:
        raise ValueError("negative radicand")
    m, d0 = _squarefree_split(int(d))
    if q == 0 or d0 == 0:
        return Rational(p.numerator, p.denominator)
    if d0 == 1:
        v = p + q * m
        return Rational(v.numerator, v.denominator)
    return QuadIrr(p, q, int(d))


def evaluate(x: ExactScalar) -> float:
    """Floating-point image of an exact scalar.

    Rationals round correctly; quadratic irrationals take sqrt(d) to 80
    fractional bits before the single final rounding, so the result stays
    within a few ulp even under cancellation between p and q*sqrt(d).
    """
    return float(x)


def rationally_independent_1_r_s(r: ExactScalar, s: ExactScalar) -> bool:
    """True iff no nonzero integer triple satisfies p + q*r + u*s = 0.

    Decided exactly: False when either scalar is rational; for two
    quadratic irrationals, True iff their squarefree parts differ.
    """
    if isinstance(r, Rational) or isinstance(s, Rational):
        return False
    return r.d != s.d


def refine_denominator(r: ExactScalar, s: ExactScalar) -> int:
    """Minimal N >= 1 with N*r and N*s integers: lcm of the reduced denominators."""
    if not isinstance(r, Rational) or not isinstance(s, Rational):
        raise NotRationalError("refinement denominator requires rational coordinates")
    return math.lcm(r.den, s.den)


# --------------------------------------------------------------------------
# Integer relation search


def _normalize_triple(p: int, q: int, u: int) -> tuple[int, int, int]:
    for v in (p, q, u):
        if v != 0:
            return (p, q, u) if v > 0 else (-p, -q, -u)
    return (p, q, u)


def _q_values(limit: int) -> Iterator[int]:
    yield 0
    for k in range(1, limit + 1):
        yield k
        yield -k


def integer_relation_search(
    r: float, s: float, height: int, tol: float
) -> Optional[tuple[int, int, int]]:
    """Smallest integer triple (p, q, u) != 0 with |p + q*r + u*s| < tol.

    "Smallest" means minimal max(|p|, |q|, |u|) <= height; ties resolve by
    sign-normalizing (first nonzero entry positive) and taking the
    lexicographically least triple.  Returns None when nothing qualifies.

    The search is exhaustive-equivalent at every height: r, s, tol are
    treated as the exact dyadic rationals their binary64 representations
    denote, the fractional circle {(u*s mod 1)} is sorted once, and each q
    is windowed against it, so every qualifying (q, u) pair is visited and
    verified in exact integer arithmetic.  Candidates are consumed in
    ascending height with early exit once no smaller height can win.
    """
    if height < 1:
        raise ValueError("height must be a positive integer")
    if not tol > 0:
        raise ValueError("tol must be positive")
    bound = int(height)
    fr, fs, ftol = Fraction(r), Fraction(s), Fraction(tol)
    den = math.lcm(fr.denominator, fs.denominator)
    rnum = fr.numerator * (den // fr.denominator)
    snum = fs.numerator * (den // fs.denominator)
    tn, td = ftol.numerator, ftol.denominator

    # Circle of (u*snum) mod den for u = -bound..bound, downshifted so values
    # fit int64 regardless of the dyadic denominator.
    shift = max(0, den.bit_length() - 60)
    svals = np.empty(2 * bound + 1, dtype=np.int64)
    svals[bound] = 0
    s_mod = snum % den
    acc = 0
    for i in range(1, bound + 1):
        acc += s_mod
        if acc >= den:
            acc -= den
        svals[bound + i] = acc >> shift
        svals[bound - i] = ((den - acc) >> shift) if acc else 0
    order = np.argsort(svals, kind="stable")
    svals_sorted = svals[order]
    u_sorted = order.astype(np.int64) - bound

    window = (tn * den) // td + 1  # exact half-width; candidates re-verified below
    window_s = (window >> shift) + 2  # conservative after the downshift
    top = (den - 1) >> shift

    def window_candidates(t_s: int) -> np.ndarray:
        lo, hi = t_s - window_s, t_s + window_s
        spans = []
        if lo < 0:
            spans.append((lo + top + 1, top))
            lo = 0
        if hi > top:
            spans.append((0, hi - top - 1))
            hi = top
        spans.append((lo, hi))
        pieces = []
        for a, b in spans:
            if a > b:
                continue
            i0 = int(np.searchsorted(svals_sorted, a, side="left"))
            i1 = int(np.searchsorted(svals_sorted, b, side="right"))
            if i1 > i0:
                pieces.append(u_sorted[i0:i1])
        if not pieces:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(pieces)

    # A qualifying p lies within int(tol)+1 of the nearest integer to
    # -(q*r + u*s), so scanning that reach is complete for any tol.
    reach = int(ftol) + 1

    best_key: Optional[tuple[int, tuple[int, int, int]]] = None
    best: Optional[tuple[int, int, int]] = None
    for q in _q_values(bound):
        if best_key is not None and abs(q) > best_key[0]:
            break
        t = (-q * rnum) % den
        cands = window_candidates(t >> shift)
        if best_key is not None and cands.size:
            cands = cands[np.abs(cands) <= best_key[0]]
        if cands.size == 0:
            continue
        cands = cands[np.argsort(np.abs(cands), kind="stable")]
        for u in cands.tolist():
            if best_key is not None and abs(u) > best_key[0]:
                break
            base = q * rnum + u * snum
            m = base % den
            if 2 * m > den:
                m -= den
            p0 = -((base - m) // den)
            for p in range(p0 - reach, p0 + reach + 1):
                if abs(p) > bound or (p == 0 and q == 0 and u == 0):
                    continue
                # |p + q*r + u*s| < tol  <=>  |p*den + base| * td < tn * den
                if abs(p * den + base) * td < tn * den:
                    trip = _normalize_triple(p, q, u)
                    key = (max(abs(p), abs(q), abs(u)), trip)
                    if best_key is None or key < best_key:
                        best_key, best = key, trip
    return best


# --------------------------------------------------------------------------
# Configurations and classification


def _is_integer_value(x: ExactScalar, k: int) -> bool:
    return isinstance(x, Rational) and x.den == 1 and x.num == k


@dataclass(frozen=True)
class Configuration:
    """The four-point family {0, a, b, nu} with nu = r*a + s*b, r and s exact.

    Degenerate placements (nu coinciding with 0, a, or b) are representable
    so that `classify` stays total; flows that require pairwise-distinct
    points check `is_degenerate` and reject at their own gates.
    """

    basis: LatticeBasis
    r: ExactScalar
    s: ExactScalar

    @property
    def is_degenerate(self) -> bool:
        """True iff (r, s) is one of (0,0), (1,0), (0,1).

        Since a and b are linearly independent, these are exactly the cases
        where nu collides with 0, a, or b; the test is exact on (r, s), never
        a float comparison of evaluated points.
        """
        r0 = _is_integer_value(self.r, 0)
        r1 = _is_integer_value(self.r, 1)
        s0 = _is_integer_value(self.s, 0)
        s1 = _is_integer_value(self.s, 1)
        return (r0 and s0) or (r1 and s0) or (r0 and s1)


class OutOfScopeReason(Enum):
    COVOLUME_NOT_LARGE = "CovolumeNotLarge"
    SCALARS_DEPENDENT_BUT_IRRATIONAL = "ScalarsDependentButIrrational"
    DEGENERATE_CONFIGURATION = "DegenerateConfiguration"


@dataclass(frozen=True)
class DenseLargeCovolume:
    """{1, r, s} Q-independent and covolume > 1: the dense-orbit regime."""


@dataclass(frozen=True)
class RationalCoordinate:
    """Both coordinates rational; N is the minimal denominator with N*r, N*s integers."""

    N: int


@dataclass(frozen=True)
class OutOfScope:
    """No certified statement applies; the classifier makes no claim here."""

    reason: OutOfScopeReason


Classification = Union[DenseLargeCovolume, RationalCoordinate, OutOfScope]


def classify(config: Configuration) -> Classification:
    """Total case split for a configuration.

    Rational coordinates win regardless of covolume (the finite-orbit case
    has no covolume hypothesis and is the stronger applicable statement);
    otherwise the dense regime needs exact Q-independence of {1, r, s} and
    covolume > 1.  Everything else is out of scope with a reason, including
    degenerate point placements.
    """
    if config.is_degenerate:
        return OutOfScope(OutOfScopeReason.DEGENERATE_CONFIGURATION)
    if isinstance(config.r, Rational) and isinstance(config.s, Rational):
        return RationalCoordinate(refine_denominator(config.r, config.s))
    if rationally_independent_1_r_s(config.r, config.s):
        if covolume(config.basis) > 1.0:
            return DenseLargeCovolume()
        return OutOfScope(OutOfScopeReason.COVOLUME_NOT_LARGE)
    return OutOfScope(OutOfScopeReason.SCALARS_DEPENDENT_BUT_IRRATIONAL)


# --------------------------------------------------------------------------
# Text syntax
#
# scalar := [sign] term [ sign term ]
# term   := RAT '*' SQRT | SQRT | RAT
# RAT    := INT [ '/' INT ]
# SQRT   := 'sqrt' '(' INT ')'
#
# Whitespace is insignificant everywhere.  At most one rational and one
# radical term; INT is an unsigned digit string (signs live outside terms).


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, message: str, column: Optional[int] = None):
        raise ScalarParseError(message, self.i + 1 if column is None else column)

    def _skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self._skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.i += 1

    def at_word(self, word: str) -> bool:
        self._skip_ws()
        return self.text[self.i : self.i + len(word)] == word

    def int_token(self) -> int:
        self._skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            self.error("expected digit")
        return int(self.text[start : self.i])

    def rational(self) -> Fraction:
        n = self.int_token()
        if self.peek() == "/":
            self.expect("/")
            self._skip_ws()
            den_col = self.i + 1
            d = self.int_token()
            if d == 0:
                self.error("zero denominator", den_col)
            return Fraction(n, d)
        return Fraction(n)

    def radical(self) -> int:
        self.i += len("sqrt")
        self.expect("(")
        d = self.int_token()
        self.expect(")")
        return d

    def sign_opt(self) -> int:
        c = self.peek()
        if c == "+" or c == "-":
            self.i += 1
            return -1 if c == "-" else 1
        return 1

    def term(self, sign: int) -> tuple[Fraction, Fraction, Optional[int]]:
        """Returns (rational part, radical coefficient, radicand or None)."""
        if self.at_word("sqrt"):
            return Fraction(0), Fraction(sign), self.radical()
        coeff = self.rational()
        if self.peek() == "*":
            self.expect("*")
            if not self.at_word("sqrt"):
                self.error("expected sqrt(...) after '*'")
            return Fraction(0), sign * coeff, self.radical()
        return sign * coeff, Fraction(0), None

    def parse(self) -> ExactScalar:
        p, q, d = self.term(self.sign_opt())
        nxt = self.peek()
        if nxt == "+" or nxt == "-":
            term_col = self.i + 1
            self.i += 1
            p2, q2, d2 = self.term(-1 if nxt == "-" else 1)
            if d is not None and d2 is not None:
                self.error("at most one radical term", term_col)
            if d is None and d2 is None:
                self.error("expected a radical term after the sign", term_col)
            p, q, d = p + p2, q + q2, d if d is not None else d2
        self._skip_ws()
        if self.i != len(self.text):
            self.error("unexpected trailing input")
        if d is None:
            return make_scalar(p)
        return make_scalar(p, q, d)


def parse_scalar(text: str) -> ExactScalar:
    """Parse `INT`, `INT/INT`, or `[RAT(+|-)][RAT*]sqrt(INT)` (either term order).

    Whitespace-insensitive; raises ScalarParseError carrying the 1-based
    column on malformed input.  Perfect-square radicands normalize away
    (e.g. sqrt(8) becomes 2*sqrt(2), sqrt(4) becomes the rational 2).
    """
    return _Scanner(text).parse()
