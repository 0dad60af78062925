"""Moran pressure sums, their roots s(u) and s_M(u), and the dimension formula.

The pressure function is

    F_{u,M}(s) = sum_{t=2}^{M} (2^{-u} / (t(t-1)))^s,   M = 2, 3, ... or infinity.

It is strictly decreasing in s, so every root is found by bisection on values
that carry an explicit error bound.  A comparison F(s) > 1 is only trusted when
the whole error interval lies on one side of 1.

For M = infinity the sum converges only for s > 1/2.  The first few terms are
summed directly and the tail uses

    (t(t-1))^{-s} = (t - 1/2)^{-2s} * sum_j (s)_j / j! * (4 (t - 1/2)^2)^{-j},

which turns sum_{t>N} into a rapidly convergent series of Hurwitz zeta values
zeta(2s + 2j, N + 1/2).  The remainder after J terms is bounded by the J-th term
divided by 1 - rho*x, with x = 1/(4(N+1/2)^2) and rho the supremum of the
coefficient ratios.  `tail_bound` gives the cruder integral bound, which is
kept as an independent check on the expansion.

Because F_u(s) > 1 for every s <= 1/2 + 0 (the series diverges there), the root
s(u) lies in (1/2, 1] and tends to 1/2, not 0, as u grows.  Finite-M roots do
tend to 0.
"""

from __future__ import annotations

import math
import os
import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

import mpmath

from .errors import BudgetError, DivergenceError, DomainError
from .expansion import cylinder_length, to_rational

DEFAULT_PRECISION_BITS = int(os.environ.get("LUROTH_PRECISION_BITS", "96"))
DEFAULT_TOL = 1e-12
MAX_ITER = 400
# finite sums with more terms than this go through the Hurwitz tail
DIRECT_LIMIT = 2048
# terms summed directly before the Hurwitz tail starts
HEAD_TERMS = 16
ENUMERATION_BUDGET = 10**6

_local = threading.local()


def _ctx(prec: int) -> mpmath.ctx_mp.MPContext:
    """A per-thread mpmath context at `prec` bits; the global mp is not touched."""
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = mpmath.ctx_mp.MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def _mpf(ctx, x):
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        return _mpf(ctx, to_rational(x))
    return ctx.mpf(x)


@dataclass(frozen=True)
class CertifiedValue:
    """A number together with a bound on its distance from the true quantity."""

    value: mpmath.mpf
    error_bound: mpmath.mpf
    residual: Optional[mpmath.mpf] = None

    @property
    def lo(self):
        return self.value - self.error_bound

    @property
    def hi(self):
        return self.value + self.error_bound

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return format_certified(self)


def format_certified(cv: CertifiedValue, tol: Optional[float] = None) -> str:
    """Render as ``value ± error``, rounding the value to the tolerance's decimals."""
    err = float(cv.error_bound)
    scale = tol or err
    if scale > 0:
        places = min(max(math.ceil(-math.log10(scale)), 1), 30)
        text = mpmath.nstr(cv.value, places, min_fixed=-math.inf, max_fixed=math.inf)
    else:
        text = mpmath.nstr(cv.value, 20)
    if "." not in text:
        text += ".0"
    return f"{text} ± {err:.3g}"


@dataclass(frozen=True)
class SeriesSpec:
    """Which pressure function: weight 2^{-u}, digits 2..cutoff (None = infinity)."""

    u: object
    cutoff: Optional[int] = None

    def __post_init__(self):
        if _mpf(mpmath.mp, self.u) < 0:
            raise DomainError(f"u must be >= 0, got {self.u}")
        if self.cutoff is not None and self.cutoff < 2:
            raise DomainError(f"cutoff must be >= 2, got {self.cutoff}")


def tail_bound(u, s, N: int) -> float:
    """Integral bound on sum_{t>N} (2^{-u}/(t(t-1)))^s, via t(t-1) >= (t-1)^2.

    Valid for s > 1/2 and N >= 1.
    """
    u, s = float(u), float(s)
    if s <= 0.5:
        raise DivergenceError(f"tail diverges for s = {s} <= 1/2")
    return 2.0 ** (-u * s) * (N ** (-2 * s) + N ** (1 - 2 * s) / (2 * s - 1))


class _Pressure:
    """F_{u,M} at a fixed precision, with the logs of t(t-1) cached."""

    def __init__(self, u, cutoff: Optional[int], prec: int):
        self.ctx = ctx = _ctx(prec)
        self.prec = prec
        self.u = _mpf(ctx, u)
        self.cutoff = cutoff
        self.ln2u = self.u * ctx.ln2
        if cutoff is not None and cutoff - 1 <= DIRECT_LIMIT:
            self.head = cutoff
        else:
            self.head = HEAD_TERMS
        self.logs = [ctx.log(t * (t - 1)) for t in range(2, self.head + 1)]
        # every weight is <= 2^{-u}/2, so |F'(s)| >= (u+1) ln 2 * F(s)
        self.log_floor = (self.u + 1) * ctx.ln2

    def _direct(self, s):
        ctx = self.ctx
        return ctx.fsum(ctx.exp(-s * L) for L in self.logs)

    def _power_sum(self, sigma, a, b):
        """sum_{k=0}^{b-a-1} (a+k)^{-sigma} (b None: to infinity) and its magnitude for rounding.

        The finite case is a difference of Hurwitz zeta values, which holds for
        every sigma != 1 by analytic continuation; sigma = 1 uses digamma.
        """
        ctx = self.ctx
        if b is None:
            v = ctx.zeta(sigma, a)
            return v, abs(v)
        if sigma == 1:
            hi, lo = ctx.digamma(b), ctx.digamma(a)
        else:
            hi, lo = ctx.zeta(sigma, a), ctx.zeta(sigma, b)
        return hi - lo, abs(hi) + abs(lo)

    def _hurwitz_tail(self, s, tol):
        """sum_{t=head+1}^{cutoff} (t(t-1))^{-s}, a truncation bound, and a magnitude."""
        ctx = self.ctx
        half = ctx.mpf(1) / 2
        a = self.head + half
        b = None if self.cutoff is None else self.cutoff + half
        x = 1 / (4 * a * a)
        total = ctx.zero
        magnitude = ctx.zero
        coef = ctx.one  # (s)_j / j! / 4^j
        j = 0
        while True:
            sigma = 2 * s + 2 * j
            value, mag = self._power_sum(sigma, a, b)
            term = coef * value
            rho = max(ctx.one, (s + j) / (j + 1))
            if rho * x >= 1:
                raise BudgetError("Hurwitz tail expansion does not contract; s too large")
            remainder = term / (1 - rho * x)
            if remainder <= tol:
                return total, remainder, magnitude
            total += term
            magnitude += coef * mag
            coef *= (s + j) / ((j + 1) * 4)
            j += 1
            if j > 500:
                raise BudgetError("Hurwitz tail expansion did not converge")

    def __call__(self, s, tol):
        """(value, error) with error covering truncation and rounding."""
        ctx = self.ctx
        s = _mpf(ctx, s)
        scale = ctx.exp(-s * self.ln2u)
        head = self._direct(s)
        magnitude = head * len(self.logs)
        trunc = ctx.zero
        if self.cutoff is None or self.head < self.cutoff:
            tail, trunc, mag = self._hurwitz_tail(s, tol / 2)
            head += tail
            magnitude += 64 * mag
        value = scale * head
        rounding = scale * (magnitude + 16 * abs(head)) * ctx.ldexp(1, 8 - self.prec)
        return value, scale * trunc + rounding


def _check_s(spec: SeriesSpec, s):
    if s <= 0:
        raise DomainError(f"s must be > 0, got {s}")
    if spec.cutoff is None and s <= 0.5:
        raise DivergenceError(f"the infinite series diverges at s = {s} <= 1/2")


def pressure_sum(spec: SeriesSpec, s, tol: float = DEFAULT_TOL, prec: Optional[int] = None) -> CertifiedValue:
    """F_u(s) = sum_{t=2}^{cutoff} (2^{-u}/(t(t-1)))^s with error <= tol."""
    prec = prec or DEFAULT_PRECISION_BITS
    _check_s(spec, _mpf(mpmath.mp, s))
    F = _Pressure(spec.u, spec.cutoff, prec)
    value, err = F(s, F.ctx.mpf(tol) / 2)
    if err > tol:
        raise BudgetError(f"error {float(err):.3g} exceeds tol {tol} at {prec} bits")
    return CertifiedValue(value, err)


def _bisect(F: Callable, lo, hi, tol, log_floor, ctx, max_iter: int) -> CertifiedValue:
    """Root of the decreasing function F - 1 inside [lo, hi], with F(lo) > 1 > F(hi).

    F(s, eval_tol) returns (value, error).  Stops once the bracket half-width
    and the residual |F(mid) - 1| are both below tol.
    """
    tol = ctx.mpf(tol)
    eval_tol = max(tol * ctx.mpf("1e-6"), ctx.ldexp(1, 24 - ctx.prec))
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        value, err = F(mid, eval_tol)
        if value - err > 1:
            lo = mid
        elif value + err < 1:
            hi = mid
        else:
            # |F(mid) - 1| <= 2 err; the derivative floor converts that to a distance
            residual = abs(value - 1) + err
            dist = 2 * err / (log_floor * (1 - 2 * err))
            if residual <= tol and dist <= tol:
                return CertifiedValue(mid, max(dist, residual), residual)
            raise BudgetError("precision exhausted before the root was isolated")
        half = (hi - lo) / 2
        if half <= tol:
            mid = (lo + hi) / 2
            value, err = F(mid, eval_tol)
            residual = abs(value - 1) + err
            if residual <= tol:
                return CertifiedValue(mid, max(half, residual), residual)
    raise BudgetError(f"no certified root within {max_iter} iterations")


def _working_prec(u, prec: Optional[int]) -> int:
    prec = prec or DEFAULT_PRECISION_BITS
    # s(u) - 1/2 is about 2^{-u/2}; the bracket needs that many bits
    return max(prec, int(float(u) / 2) + 64)


def solve_s(u, tol: float = DEFAULT_TOL, prec: Optional[int] = None, max_iter: int = MAX_ITER) -> CertifiedValue:
    """s(u): the root in (1/2, 1] of sum_{t>=2} (2^{-u}/(t(t-1)))^s = 1."""
    spec = SeriesSpec(u)
    prec = _working_prec(u, prec)
    F = _Pressure(u, None, prec)
    ctx = F.ctx
    if F.u == 0:
        # sum 1/(t(t-1)) telescopes to 1
        zero = ctx.zero
        return CertifiedValue(ctx.one, zero, zero)
    half = ctx.mpf(1) / 2
    hi = ctx.one  # F(1) = 2^{-u} < 1 exactly
    delta = ctx.mpf(1) / 4
    while True:
        value, err = F(half + delta, ctx.ldexp(1, -40))
        if value - err > 1:
            lo = half + delta
            break
        hi = half + delta
        delta /= 2
        if delta < ctx.ldexp(1, 32 - prec):
            raise BudgetError(f"lower bracket for s({spec.u}) below precision")
    return _bisect(F, lo, hi, tol, F.log_floor, ctx, max_iter)


def solve_sM(u, M: int, tol: float = DEFAULT_TOL, prec: Optional[int] = None, max_iter: int = MAX_ITER) -> CertifiedValue:
    """s_M(u): the root in [0, 1) of sum_{t=2}^{M} (2^{-u}/(t(t-1)))^s = 1."""
    SeriesSpec(u, M)
    prec = prec or DEFAULT_PRECISION_BITS
    F = _Pressure(u, M, prec)
    ctx = F.ctx
    if M == 2:
        # single term (2^{-u}/2)^s with base < 1
        zero = ctx.zero
        return CertifiedValue(zero, zero, zero)
    # F(0) = M - 1 > 1 and F(1) = 2^{-u}(1 - 1/M) < 1
    return _bisect(F, ctx.zero, ctx.one, tol, F.log_floor, ctx, max_iter)


def finite_depth_pressure_root(M: int, n: int, tol: float = DEFAULT_TOL, prec: Optional[int] = None,
                               budget: int = ENUMERATION_BUDGET) -> CertifiedValue:
    """Root of sum over all depth-n words over {2..M} of |I_n(w)|^s = 1.

    Every word is enumerated and its cylinder length computed exactly, so the
    result does not lean on the product structure that makes it equal s_M(0).
    """
    if M < 2 or n < 1:
        raise DomainError(f"need M >= 2 and n >= 1, got M={M}, n={n}")
    count = (M - 1) ** n
    if count > budget:
        raise BudgetError(f"{count} words at depth {n} exceed the budget {budget}")
    ctx = _ctx(prec or DEFAULT_PRECISION_BITS)
    if M == 2:
        return CertifiedValue(ctx.zero, ctx.zero, ctx.zero)
    # words with equal cylinder length contribute equal terms
    multiplicity = Counter(cylinder_length(word) for word in product(range(2, M + 1), repeat=n))
    terms = [(count, ctx.log(length.denominator)) for length, count in multiplicity.items()]
    unit = ctx.ldexp(1, 8 - ctx.prec)

    def F(s, _tol):
        value = ctx.fsum(count * ctx.exp(-s * L) for count, L in terms)
        return value, value * (len(terms) + 16) * unit

    # each cylinder has length <= 2^{-n}
    return _bisect(F, ctx.zero, ctx.one, tol, n * ctx.ln2, ctx, MAX_ITER)


@dataclass(frozen=True)
class DimParams:
    """(alpha, beta) with 0 <= alpha <= beta <= 1, held as exact rationals."""

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha, beta):
        a, b = to_rational(alpha), to_rational(beta)
        if not 0 <= a <= b <= 1:
            raise DomainError(f"need 0 <= alpha <= beta <= 1, got alpha={a}, beta={b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def threshold(self) -> Fraction:
        """beta / (1 + beta), the largest liminf compatible with limsup beta."""
        return self.beta / (1 + self.beta)


def dim_case(params: DimParams) -> str:
    """'one' if beta = 0, 'middle' if 0 <= alpha < beta/(1+beta) < beta < 1, else 'zero'."""
    a, b = params.alpha, params.beta
    if b == 0:
        return "one"
    if 0 <= a < params.threshold < b < 1:
        return "middle"
    return "zero"


def zeta(params: DimParams) -> Fraction:
    """beta^2 (1-alpha) / ((1-beta)(beta - alpha(1+beta))), exactly."""
    a, b = params.alpha, params.beta
    if b == 0 or b == 1 or a >= params.threshold:
        raise DomainError(f"zeta undefined at alpha={a}, beta={b}: need alpha < beta/(1+beta), 0 < beta < 1")
    return b * b * (1 - a) / ((1 - b) * (b - a * (1 + b)))


def dim_E(params: DimParams, tol: float = DEFAULT_TOL, prec: Optional[int] = None) -> CertifiedValue:
    """Hausdorff dimension of the set with liminf ell_n/n = alpha, limsup = beta."""
    case = dim_case(params)
    ctx = _ctx(prec or DEFAULT_PRECISION_BITS)
    if case == "one":
        return CertifiedValue(ctx.one, ctx.zero)
    if case == "zero":
        return CertifiedValue(ctx.zero, ctx.zero)
    return solve_s(zeta(params), tol=tol, prec=prec)
