"""Exact and log-space certification of the union-bound chain.

Quantities that fit comfortably in big integers (all the direct binomials
for n <= 60) are computed exactly; quantities with enormous exponents, such
as (1 - 1/i)**p with p ~ 1e35, live in log space as high-precision mpmath
values carrying an explicit absolute error bound. Every comparison is
certified: it passes only when the margin exceeds the accumulated error,
and exact rational evaluation is the escalation path when it does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import InputError

_DPS = 200                    # working precision for log-space values
_EXACT_BIT_LIMIT = 1_000_000  # past this, values are kept in log space
_LN2 = None


def binomial(a: int, b: int) -> int:
    """Exact binomial coefficient; rejects arguments outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        raise InputError(f"binomial needs 0 <= b <= a, got ({a}, {b})")
    return math.comb(a, b)


def _ln2():
    global _LN2
    if _LN2 is None:
        with mpmath.workdps(_DPS):
            _LN2 = mpmath.log(2)
    return _LN2


@dataclass(frozen=True)
class LogReal:
    """A positive real number x stored as ln(x) with an absolute error bound.

    Arithmetic propagates the error; comparisons certify only when the gap
    between the two ln values exceeds the combined error.
    """
    ln: mpmath.mpf
    err: mpmath.mpf

    @staticmethod
    def from_int(x: int) -> "LogReal":
        if x <= 0:
            raise InputError("log-space values must be positive")
        with mpmath.workdps(_DPS):
            v = mpmath.log(x)
            return LogReal(v, abs(v) * mpmath.mpf(10) ** (8 - _DPS)
                           + mpmath.mpf(10) ** (8 - _DPS))

    @staticmethod
    def from_fraction(x: Fraction) -> "LogReal":
        return LogReal.from_int(x.numerator) / LogReal.from_int(x.denominator)

    def __mul__(self, other: "LogReal") -> "LogReal":
        with mpmath.workdps(_DPS):
            return LogReal(self.ln + other.ln, self.err + other.err)

    def __truediv__(self, other: "LogReal") -> "LogReal":
        with mpmath.workdps(_DPS):
            return LogReal(self.ln - other.ln, self.err + other.err)

    def pow(self, e) -> "LogReal":
        """Raise to a real power; `e` may be an int, float, or Fraction."""
        with mpmath.workdps(_DPS):
            if isinstance(e, Fraction):
                ee = mpmath.mpf(e.numerator) / e.denominator
            else:
                ee = mpmath.mpf(e)
            return LogReal(self.ln * ee, self.err * abs(ee)
                           + abs(self.ln * ee) * mpmath.mpf(10) ** (8 - _DPS))

    def add(self, other: "LogReal") -> "LogReal":
        """Sum of the two represented values (log-sum-exp)."""
        with mpmath.workdps(_DPS):
            hi, lo = (self, other) if self.ln >= other.ln else (other, self)
            ln = hi.ln + mpmath.log1p(mpmath.exp(lo.ln - hi.ln))
            return LogReal(ln, self.err + other.err
                           + abs(ln) * mpmath.mpf(10) ** (8 - _DPS))

    @property
    def log2(self) -> float:
        with mpmath.workdps(_DPS):
            return float(self.ln / _ln2())

    def certified_lt(self, other: "LogReal") -> Optional[bool]:
        """True/False when the comparison is certain, None when the error
        bounds overlap."""
        with mpmath.workdps(_DPS):
            if self.ln + self.err < other.ln - other.err:
                return True
            if self.ln - self.err > other.ln + other.err:
                return False
            return None


def _ln_estimate_bits(a: int, b: int) -> float:
    la = math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)
    return la / math.log(2)


def ln_binomial(a: int, b: int) -> LogReal:
    """log-space C(a, b); exact when cheap, else mpmath loggamma."""
    if b < 0 or b > a:
        raise InputError(f"binomial needs 0 <= b <= a, got ({a}, {b})")
    if b == 0 or b == a:
        return LogReal.from_int(1)
    if a <= 10**7 and min(b, a - b) <= 2000:
        return LogReal.from_int(math.comb(a, b))
    with mpmath.workdps(_DPS):
        la = (mpmath.loggamma(mpmath.mpf(a) + 1)
              - mpmath.loggamma(mpmath.mpf(b) + 1)
              - mpmath.loggamma(mpmath.mpf(a - b) + 1))
        # conversion of a, b to mpf is exact below ~660 bits; the dominant
        # error is the loggamma evaluations themselves
        scale = abs(mpmath.loggamma(mpmath.mpf(a) + 1))
        return LogReal(la, (scale + abs(la)) * mpmath.mpf(10) ** (10 - _DPS))


def one_minus_inv(i: int) -> LogReal:
    """(1 - 1/i) as a log-space value."""
    if i < 2:
        raise InputError("need i >= 2")
    return LogReal.from_fraction(Fraction(i - 1, i))


@dataclass(frozen=True)
class LinkCheck:
    name: str
    description: str
    passed: bool
    method: str                      # "exact" | "log"
    lhs_log2: Optional[float] = None
    rhs_log2: Optional[float] = None
    margin: Optional[float] = None   # rhs - lhs in the link's natural units


@dataclass
class BoundsReport:
    n: int
    i: int
    N: int
    p: int
    q: int
    p1_log2: float
    p2_log2: float
    chain: list[LinkCheck] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(link.passed for link in self.chain)

    def link(self, name: str) -> LinkCheck:
        for l in self.chain:
            if l.name == name:
                return l
        raise KeyError(name)


def _validate(n: int, i: int) -> None:
    if i < 2:
        raise InputError("the probabilistic bounds need i >= 2")
    if n % (i * (i + 1)):
        raise InputError(f"i(i+1) = {i * (i + 1)} must divide n = {n}")


def core_quantities(n: int, i: int) -> tuple[int, int, int]:
    """(N, p, q): the subset count, the 2n-set subset count, and the
    superset count for sets of size n/(i+1)."""
    _validate(n, i)
    N = binomial(n * n, n)
    p = binomial(2 * n, n)
    q = binomial(n * n - n // (i + 1), n - n // (i + 1))
    return N, p, q


@dataclass(frozen=True)
class P1Bound:
    n: int
    i: int
    closed: LogReal                       # i * C(n^2, 2n) * (1 - 1/i)^p
    ratio: Optional[LogReal] = None       # i * C(n^2,2n) * C(N-N/i,p)/C(N,p)
    ratio_exact: Optional[Fraction] = None
    ratio_le_closed: Optional[bool] = None

    @property
    def log2(self) -> float:
        return self.closed.log2


def evaluate_p1_bound(n: int, i: int, include_ratio: bool = False) -> P1Bound:
    """The failure-probability bound for the covering property.

    The closed form is always produced; the intermediate ratio form is
    attached on request, exactly when the binomials stay below the exact
    bit threshold and in log space otherwise.
    """
    N, p, _ = core_quantities(n, i)
    closed = (LogReal.from_int(i) * ln_binomial(n * n, 2 * n)
              * one_minus_inv(i).pow(p))
    if not include_ratio:
        return P1Bound(n, i, closed)
    ratio = (LogReal.from_int(i) * ln_binomial(n * n, 2 * n)
             * ln_binomial(N - N // i, p) / ln_binomial(N, p))
    exact = None
    if _ln_estimate_bits(N, p) <= 20_000 and p <= 5000:
        exact = (Fraction(i) * binomial(n * n, 2 * n)
                 * binomial(N - N // i, p) / binomial(N, p))
    verdict = ratio.certified_lt(closed)
    if verdict is None and exact is not None:
        # log-space margin smaller than the tracked error: escalate to
        # exact rationals
        closed_exact = (Fraction(i) * binomial(n * n, 2 * n)
                        * Fraction(i - 1, i) ** p)
        verdict = exact < closed_exact
    return P1Bound(n, i, closed, ratio, exact, verdict)


@dataclass
class P2Chain:
    n: int
    i: int
    lines: list[tuple[str, LogReal]]
    comparisons: list[LinkCheck]
    final: LogReal                 # (i * C(n^2,2n) * (1-1/i)^p)^n
    exact_first_line: Optional[Fraction] = None

    @property
    def monotone(self) -> bool:
        return all(c.passed for c in self.comparisons)


def _compare_line(name: str, desc: str, lo: LogReal, hi: LogReal) -> LinkCheck:
    verdict = lo.certified_lt(hi)
    if verdict is None:
        # indistinguishable within error: the two values agree to far more
        # digits than the working error, which the chain treats as <=
        passed = abs(float(lo.ln - hi.ln)) <= float(lo.err + hi.err)
    else:
        passed = verdict
    return LinkCheck(name, desc, passed, "log",
                     lo.log2, hi.log2, hi.log2 - lo.log2)


def evaluate_p2_bound(n: int, i: int, exact_first_line: Optional[bool] = None
                      ) -> P2Chain:
    """Evaluate every displayed line of the second union-bound chain and
    check it is monotone non-decreasing, ending with the bound after the
    q/n >= p substitution."""
    N, p, q = core_quantities(n, i)
    tau = n // (i + 1)
    om = one_minus_inv(i)

    # line 1: i * C(n^2, n/(i+1)) * sum_t C(N-N/i, q-t) C(N/i, t) / C(N, q)
    terms = [ln_binomial(N - N // i, q - t) * ln_binomial(N // i, t)
             / ln_binomial(N, q) for t in range(tau)]
    s = terms[0]
    for term in terms[1:]:
        s = s.add(term)
    l1 = LogReal.from_int(i) * ln_binomial(n * n, tau) * s

    exact1 = None
    if exact_first_line is None:
        exact_first_line = _ln_estimate_bits(N, q) <= _EXACT_BIT_LIMIT and q <= 60_000
    if exact_first_line:
        num = sum(binomial(N - N // i, q - t) * binomial(N // i, t)
                  for t in range(tau))
        exact1 = Fraction(i) * binomial(n * n, tau) * num / binomial(N, q)

    # line 2: i N sum_t [C(N,q-t) C(N,t) / C(N,q)] (1-1/i)^(q-t) (1/i)^t
    inv_i = LogReal.from_fraction(Fraction(1, i))
    terms2 = [ln_binomial(N, q - t) * ln_binomial(N, t) / ln_binomial(N, q)
              * om.pow(q - t) * inv_i.pow(t) for t in range(tau)]
    s2 = terms2[0]
    for term in terms2[1:]:
        s2 = s2.add(term)
    l2 = LogReal.from_int(i) * LogReal.from_int(N) * s2

    # line 3: i N (1-1/i)^q sum_t (qN)^t
    geo = sum((q * N) ** t for t in range(tau))
    l3 = LogReal.from_int(i) * LogReal.from_int(N) * om.pow(q) \
        * LogReal.from_int(geo)

    # line 4: i N (1-1/i)^q (n/(i+1)) N^(2(n/(i+1)-1))
    l4 = (LogReal.from_int(i) * LogReal.from_int(N) * om.pow(q)
          * LogReal.from_int(tau)
          * LogReal.from_int(N).pow(2 * (tau - 1)))

    # line 5: i N^n (1-1/i)^q
    l5 = LogReal.from_int(i) * LogReal.from_int(N).pow(n) * om.pow(q)

    # line 6: (i C(n^2,2n) (1-1/i)^(q/n))^n
    l6 = (LogReal.from_int(i) * ln_binomial(n * n, 2 * n)
          * om.pow(Fraction(q, n))).pow(n)

    # after q/n >= p: (i C(n^2,2n) (1-1/i)^p)^n
    final = (LogReal.from_int(i) * ln_binomial(n * n, 2 * n) * om.pow(p)).pow(n)

    lines = [("sum", l1), ("split", l2), ("geometric", l3),
             ("powers", l4), ("collapsed", l5), ("per-element", l6),
             ("substituted", final)]
    comparisons = [_compare_line(f"{a} <= {b}",
                                 f"chain line '{a}' is at most line '{b}'",
                                 va, vb)
                   for (a, va), (b, vb) in zip(lines, lines[1:])]
    return P2Chain(n, i, lines, comparisons, final, exact1)


def verify_inequality_chain(n: int, i: int) -> BoundsReport:
    """Certify every named inequality used to show p1 + p2 < 1."""
    N, p, q = core_quantities(n, i)
    links: list[LinkCheck] = []

    def exact(name, desc, ok):
        links.append(LinkCheck(name, desc, bool(ok), "exact"))

    # (a) i <= sqrt(n)
    exact("a", "i <= sqrt(n)", i * i <= n)

    # (b) central binomial: p >= 2^(2n-1)/sqrt(n)
    exact("b", "C(2n,n) >= 2^(2n-1)/sqrt(n)", p * p * n >= 1 << (4 * n - 2))

    # (c) (1 - 1/sqrt(n))^sqrt(n) < 1/2
    with mpmath.workdps(_DPS):
        rt = mpmath.sqrt(n)
        c_val = rt * mpmath.log1p(-1 / rt)
        c_err = abs(c_val) * mpmath.mpf(10) ** (10 - _DPS)
        c_pass = c_val + c_err < -_ln2()
        links.append(LinkCheck("c", "(1-1/sqrt(n))^sqrt(n) < 1/2",
                               bool(c_pass), "log",
                               float(c_val / _ln2()), -1.0))

    # (d) q/n >= p, via the factorial lower bound
    bf = n - n // (i + 1)
    exact("d-range", "2n/3 <= n - n/(i+1) <= n - 2",
          3 * bf >= 2 * n and n // (i + 1) >= 2)
    exact("d-floor", "q >= (n^2-n+1)^(n-n/(i+1)) / (n-n/(i+1))!",
          q * math.factorial(bf) >= (n * n - n + 1) ** bf)
    exact("d-shrink",
          "(n^2-n+1)^(n-n/(i+1))/(n-n/(i+1))! >= (n-1)^(4n/3)/(n-2)!",
          ((n * n - n + 1) ** (3 * bf) * math.factorial(n - 2) ** 3
           >= (n - 1) ** (4 * n) * math.factorial(bf) ** 3))
    exact("d-identity",
          "(n^2-2n+1)^(2n/3)/(n (n-2)!) == (n-1)^(4n/3+1)/n!",
          ((n * n - 2 * n + 1) ** (2 * n) * math.factorial(n) ** 3
           == (n - 1) ** (4 * n + 3) * (n * math.factorial(n - 2)) ** 3))
    exact("d-vs-p", "(n-1)^(4n/3+1)/n! >= p",
          (n - 1) ** (4 * n + 3) >= p ** 3 * math.factorial(n) ** 3)
    if n >= 12:
        exact("d-large-n", "(n-1)^(4/3) >= 2n and (2n)^n/n! >= p",
              ((n - 1) ** 4 >= 8 * n ** 3
               and (2 * n) ** n * math.factorial(n) >= math.factorial(2 * n)))
    exact("d", "q/n >= p", q >= n * p)

    # (e) closed p1 bound collapses to 2^(4n log2 n - 2^n) < 2^(-1)
    om = one_minus_inv(i)
    lnC = ln_binomial(n * n, 2 * n)
    p1 = LogReal.from_int(i) * lnC * om.pow(p)
    e_exp = 1 << (2 * n - 1)
    with mpmath.workdps(_DPS):
        rt = mpmath.sqrt(n)
        tiny = mpmath.mpf(10) ** (20 - _DPS)
        e1_rhs = LogReal(mpmath.log(rt) + lnC.ln
                         + (mpmath.mpf(e_exp) / rt) * mpmath.log1p(-1 / rt),
                         tiny * (1 + abs(lnC.ln) + mpmath.mpf(e_exp) / rt))
        e2_rhs = LogReal(mpmath.log(rt) + 4 * n * mpmath.log(n)
                         - mpmath.log(math.factorial(2 * n))
                         - (mpmath.mpf(e_exp) / n) * _ln2(),
                         tiny * mpmath.mpf(e_exp) / n)
        e3_rhs = LogReal(4 * n * mpmath.log(n) - mpmath.mpf(1 << n) * _ln2(),
                         tiny * mpmath.mpf(1 << n))
    exact("e-exp", "2^(2n-1)/n >= 2^n", e_exp >= n * (1 << n))
    links.append(_compare_line(
        "e1", "p1 bound <= sqrt(n) C(n^2,2n) (1-1/sqrt(n))^(2^(2n-1)/sqrt(n))",
        p1, e1_rhs))
    links.append(_compare_line(
        "e2", "<= sqrt(n) n^(4n)/(2n)! (1/2)^(2^(2n-1)/n)", e1_rhs, e2_rhs))
    links.append(_compare_line("e3", "<= n^(4n) (1/2)^(2^n)", e2_rhs, e3_rhs))
    margin = 4 * n * math.log2(n) - float(2 ** n)
    links.append(LinkCheck("e", "4n log2(n) - 2^n < -1", margin < -1.0,
                           "log", margin, -1.0, margin))

    # (f) p1 + p2 < 1
    p2 = p1.pow(n)
    total = p1.add(p2)
    one = LogReal.from_int(1)
    links.append(LinkCheck("f", "p1 + p2 < 1",
                           total.certified_lt(one) is True, "log",
                           total.log2, 0.0))

    return BoundsReport(n, i, N, p, q, p1.log2, p2.log2, links)


def valid_pairs(max_n: int) -> list[tuple[int, int]]:
    """All (n, i) with i >= 2, i(i+1) | n, n <= max_n."""
    out = []
    for n in range(6, max_n + 1):
        for i in range(2, int(math.isqrt(n)) + 1):
            if n % (i * (i + 1)) == 0:
                out.append((n, i))
    return sorted(out)


# ---------------------------------------------------------------------------
# exact desk-scale forms for generalized instances
# ---------------------------------------------------------------------------

def p1_union_bound_exact(m: int, k: int, i: int) -> Fraction:
    """Exact union bound on the probability that a random bijection fails
    the covering property, for a generalized (m, k, i) instance."""
    N = binomial(m, k)
    if N % i:
        raise InputError(f"{i} must divide C({m},{k})")
    if 2 * k > m:
        raise InputError("needs 2k <= m")
    p = binomial(2 * k, k)
    return (Fraction(i) * binomial(m, 2 * k)
            * binomial(N - N // i, p) / binomial(N, p))


def p2_union_bound_exact(m: int, k: int, i: int) -> Fraction:
    """Exact union bound (first displayed sum) for the superset property on
    a generalized (m, k, i) instance."""
    N = binomial(m, k)
    if N % i:
        raise InputError(f"{i} must divide C({m},{k})")
    if k % (i + 1):
        raise InputError("needs (i+1) | k")
    b = k // (i + 1)
    q = binomial(m - b, k - b)
    num = sum(binomial(N - N // i, q - t) * binomial(N // i, t)
              for t in range(b))
    return Fraction(i) * binomial(m, b) * num / binomial(N, q)
