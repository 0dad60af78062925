"""The Cantor-type subset G(M) of E(alpha, beta) and the machinery around it.

A `Schedule` fixes where forced runs of 2's sit.  Points of G(M) carry

    2    on the run n'_k + 1 .. n'_k + m_k,
    2M   at the separators n'_k and n'_k + p*m_k + 1 for 1 <= p <= p_k,
    free digits in [2, M] everywhere else.

Deleting the separators (the set J) maps G(M) onto the set whose words D_n have
2's on n_k + 1 .. n_k + m_k and free digits elsewhere.  Fundamental intervals
J_n(w), the measure mu and the gaps between same-order intervals all live on
the D side.

Separator positions use n'_k = n_k + 1 + sum_{i<k} (p_i + 1).  With that offset
the k-th run lands exactly on n_k + 1 .. n_k + m_k after deletion, for every k.

Positions are 1-based throughout, matching the indexing of digits d_1, d_2, ...
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetError, DomainError
from .expansion import Interval, check_digits, cylinder, cylinder_length, evaluate, to_rational
from .moran import CertifiedValue, DimParams, _ctx, dim_case, solve_sM, zeta
from .runlength import run_trajectory

DIGIT_BUDGET = 10**6
ENUMERATION_BUDGET = 2**22

FREE, RUN, SEP = 0, 1, 2


@dataclass(frozen=True)
class Schedule:
    """Integer sequences n_k, m_k, p_k, n'_k and the exact ratios u_k.

    Lists are 0-based in Python: ``n[k-1]`` is n_k.  ``p`` has k_max - 1 entries.
    """

    alpha: Fraction
    beta: Fraction
    M: int
    k_max: int
    n: tuple[int, ...]
    m: tuple[int, ...]
    p: tuple[int, ...]
    n_prime: tuple[int, ...]
    u: tuple[Fraction, ...]

    @property
    def g_horizon(self) -> int:
        """Last G(M) position whose role is known: n'_{k_max} + m_{k_max}."""
        return self.n_prime[-1] + self.m[-1]

    @property
    def d_horizon(self) -> int:
        """Deepest D_n supported: n_{k_max} + m_{k_max}."""
        return self.n[-1] + self.m[-1]

    def block_end(self, k: int) -> int:
        """n_k + m_k, with n_0 = m_0 = 0."""
        return 0 if k == 0 else self.n[k - 1] + self.m[k - 1]

    def to_dict(self) -> dict:
        return {
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "beta": f"{self.beta.numerator}/{self.beta.denominator}",
            "M": self.M,
            "k_max": self.k_max,
            "n": list(self.n),
            "m": list(self.m),
            "p": list(self.p),
            "n_prime": list(self.n_prime),
            "u": [f"{x.numerator}/{x.denominator}" for x in self.u],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        sched = cls(
            alpha=Fraction(d["alpha"]),
            beta=Fraction(d["beta"]),
            M=int(d["M"]),
            k_max=int(d["k_max"]),
            n=tuple(d["n"]),
            m=tuple(d["m"]),
            p=tuple(d["p"]),
            n_prime=tuple(d["n_prime"]),
            u=tuple(Fraction(x) for x in d["u"]),
        )
        _validate(sched)
        return sched


def _validate(s: Schedule) -> None:
    K = s.k_max
    if not (len(s.n) == len(s.m) == len(s.n_prime) == len(s.u) == K and len(s.p) == K - 1):
        raise DomainError("schedule lists have inconsistent lengths")
    for k in range(K - 1):
        # 2 <= m_k < n_{k+1} - n_k
        if not 2 <= s.m[k] < s.n[k + 1] - s.n[k]:
            raise DomainError(f"schedule invariant 2 <= m_k < n_(k+1) - n_k fails at k={k + 1}")
        # the formulas can repeat m_k = 2 for small beta, so only monotone, not strict
        if not s.m[k] <= s.m[k + 1]:
            raise DomainError(f"m decreases at k={k + 1}")
        if s.p[k] != (s.n[k + 1] - s.n[k]) // s.m[k]:
            raise DomainError(f"p_{k + 1} disagrees with floor((n_(k+1) - n_k) / m_k)")
    offset = 1
    prev_end = 0
    for k in range(K):
        if s.n_prime[k] != s.n[k] + offset:
            raise DomainError(f"n'_{k + 1} disagrees with its definition")
        if s.u[k] != Fraction(s.m[k], s.n[k] - prev_end):
            raise DomainError(f"u_{k + 1} disagrees with its definition")
        if k < K - 1:
            offset += s.p[k] + 1
        prev_end = s.n[k] + s.m[k]


def build_schedule(alpha, beta, M: int, k_max: int, digit_budget: int = DIGIT_BUDGET) -> Schedule:
    """Power schedule (alpha > 0) or factorial schedule (alpha = 0).

    alpha > 0, r = beta(1-alpha) / (alpha(1-beta)):
        n_k = floor(r^k) + 4k,  m_k = floor(beta/(1-beta) r^k) + 2
    alpha = 0, b_k = 2^(k!) / (1-beta)^k:
        n_k = floor(b_k) + 4k,  m_k = floor(beta/(1-beta) b_k) + 2
    """
    params = DimParams(alpha, beta)
    if dim_case(params) != "middle":
        raise DomainError(
            f"schedule needs 0 <= alpha < beta/(1+beta) < beta < 1, got alpha={params.alpha}, beta={params.beta}"
        )
    if M < 3:
        raise DomainError(f"M must be >= 3, got {M}")
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    a, b = params.alpha, params.beta
    lift = b / (1 - b)
    n, m = [], []
    for k in range(1, k_max + 1):
        if a > 0:
            base = (b * (1 - a) / (a * (1 - b))) ** k
        else:
            if math.factorial(k) > digit_budget.bit_length() + 1:
                raise BudgetError(f"n_{k} exceeds the digit budget {digit_budget}")
            base = Fraction(2 ** math.factorial(k)) / (1 - b) ** k
        n_k = math.floor(base) + 4 * k
        if n_k > digit_budget:
            raise BudgetError(f"n_{k} = {n_k} exceeds the digit budget {digit_budget}")
        n.append(n_k)
        m.append(math.floor(lift * base) + 2)
    p = [(n[k + 1] - n[k]) // m[k] for k in range(k_max - 1)]
    n_prime = []
    offset = 1
    for k in range(k_max):
        n_prime.append(n[k] + offset)
        if k < k_max - 1:
            offset += p[k] + 1
    u = []
    prev_end = 0
    for k in range(k_max):
        u.append(Fraction(m[k], n[k] - prev_end))
        prev_end = n[k] + m[k]
    sched = Schedule(a, b, M, k_max, tuple(n), tuple(m), tuple(p), tuple(n_prime), tuple(u))
    _validate(sched)
    return sched


# ---------------------------------------------------------------- G(M) side


def _g_kinds(sched: Schedule, N: int) -> list[int]:
    """Role (FREE, RUN, SEP) of G(M) positions 1..N; index 0 is position 1."""
    if N > sched.g_horizon:
        raise DomainError(f"depth {N} is past the schedule horizon {sched.g_horizon}")
    kinds = [FREE] * (N + 1)
    for k in range(sched.k_max):
        start, mk = sched.n_prime[k], sched.m[k]
        seps = [start]
        if k < sched.k_max - 1:
            seps += [start + q * mk + 1 for q in range(1, sched.p[k] + 1)]
        for j in seps:
            if j <= N:
                kinds[j] = SEP
        for j in range(start + 1, min(start + mk, N) + 1):
            kinds[j] = RUN
    return kinds[1:]


def deletion_positions(sched: Schedule, N: int) -> list[int]:
    """The separator positions J intersected with [1, N], ascending."""
    return [i + 1 for i, kind in enumerate(_g_kinds(sched, N)) if kind == SEP]


def deleted_count(sched: Schedule, n: int) -> int:
    """t(n) = #(J ∩ [1, n])."""
    return len(deletion_positions(sched, n))


def generate_point(sched: Schedule, N: int, fill: Optional[int] = None, seed: Optional[int] = None) -> tuple[int, ...]:
    """First N digits of a point of G(M).

    Free digits are the constant `fill` if given, otherwise uniform on [2, M]
    from a generator seeded with `seed`.
    """
    kinds = _g_kinds(sched, N)
    M = sched.M
    if fill is not None:
        if not 2 <= fill <= M:
            raise DomainError(f"constant fill {fill} is outside [2, {M}]")
        free = [fill] * N
    elif seed is not None:
        free = np.random.default_rng(seed).integers(2, M + 1, size=N).tolist()
    else:
        raise DomainError("generate_point needs a constant fill or a seed")
    out = []
    for i, kind in enumerate(kinds):
        if kind == RUN:
            out.append(2)
        elif kind == SEP:
            out.append(2 * M)
        else:
            out.append(int(free[i]))
    return tuple(out)


def project_f(word: Sequence[int], sched: Schedule) -> tuple[int, ...]:
    """Delete the digits at separator positions; the input must follow the G(M) pattern."""
    word = check_digits(word)
    M = sched.M
    out = []
    for i, (d, kind) in enumerate(zip(word, _g_kinds(sched, len(word))), start=1):
        if kind == SEP:
            if d != 2 * M:
                raise DomainError(f"position {i} must be the separator {2 * M}, got {d}")
            continue
        if kind == RUN and d != 2:
            raise DomainError(f"position {i} lies in a forced run but has digit {d}")
        if kind == FREE and not 2 <= d <= M:
            raise DomainError(f"free position {i} has digit {d} outside [2, {M}]")
        out.append(d)
    return tuple(out)


@dataclass
class ProfileReport:
    ok: bool
    blocks_checked: int
    first_mismatch: Optional[tuple[int, int, int]]  # (n, expected, actual)
    # (k, m_k/(n_k+m_k), m_k/(n_{k+1}+m_k)), the limsup and liminf proxies
    ratios: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)


def expected_run_length(sched: Schedule, k: int, n: int) -> int:
    """ell_n on block k: m_k up to n'_{k+1} + m_k, then n - n'_{k+1}."""
    nxt = sched.n_prime[k]  # n'_{k+1}
    mk = sched.m[k - 1]
    return mk if n <= nxt + mk else n - nxt


def run_profile_check(word: Sequence[int], sched: Schedule) -> ProfileReport:
    """Compare ell_n of `word` with the piecewise block formula.

    Block k covers n'_k + m_k <= n < n'_{k+1} + m_{k+1}; every block lying
    entirely within the word is checked.
    """
    traj = run_trajectory(word)
    report = ProfileReport(ok=True, blocks_checked=0, first_mismatch=None)
    for k in range(1, sched.k_max):
        lo = sched.n_prime[k - 1] + sched.m[k - 1]
        hi = sched.n_prime[k] + sched.m[k] - 1
        if hi > len(traj):
            break
        report.blocks_checked = k
        for n in range(lo, hi + 1):
            want = expected_run_length(sched, k, n)
            if traj[n - 1] != want and report.ok:
                report.ok = False
                report.first_mismatch = (n, want, traj[n - 1])
    for k in range(1, sched.k_max):
        mk = sched.m[k - 1]
        report.ratios.append((k, Fraction(mk, sched.n[k - 1] + mk), Fraction(mk, sched.n[k] + mk)))
    return report


# ---------------------------------------------------------------- D side


def forced_positions(sched: Schedule, n: int) -> list[bool]:
    """forced[i] is True when D-position i+1 must be 2; covers 1..n."""
    if n > sched.d_horizon:
        raise DomainError(f"depth {n} is past the schedule horizon {sched.d_horizon}")
    forced = [False] * n
    for k in range(sched.k_max):
        for j in range(sched.n[k] + 1, min(sched.n[k] + sched.m[k], n) + 1):
            forced[j - 1] = True
    return forced


def _next_forced(sched: Schedule, n: int) -> bool:
    """Whether D-position n+1 is forced; free beyond the last run."""
    return any(sched.n[k] < n + 1 <= sched.n[k] + sched.m[k] for k in range(sched.k_max))


@dataclass(frozen=True)
class AdmissibleWord:
    digits: tuple[int, ...]
    schedule: Schedule

    def __post_init__(self):
        check_admissible(self.digits, self.schedule)

    @property
    def depth(self) -> int:
        return len(self.digits)


def check_admissible(word: Sequence[int], sched: Schedule) -> tuple[int, ...]:
    word = tuple(word)
    for i, (d, forced) in enumerate(zip(word, forced_positions(sched, len(word))), start=1):
        if forced and d != 2:
            raise DomainError(f"position {i} is forced to 2, got {d}")
        if not forced and not 2 <= d <= sched.M:
            raise DomainError(f"position {i} has digit {d} outside [2, {sched.M}]")
    return word


def is_admissible(word: Sequence[int], sched: Schedule) -> bool:
    try:
        check_admissible(word, sched)
    except DomainError:
        return False
    return True


def word_count(sched: Schedule, n: int) -> int:
    free = forced_positions(sched, n).count(False)
    return (sched.M - 1) ** free


def enumerate_D_n(sched: Schedule, n: int, budget: int = ENUMERATION_BUDGET) -> list[tuple[int, ...]]:
    """All words of D_n in lexicographic order."""
    count = word_count(sched, n)
    if count > budget:
        raise BudgetError(f"{count} words at depth {n} exceed the budget {budget}")
    choices = [(2,) if f else tuple(range(2, sched.M + 1)) for f in forced_positions(sched, n)]
    return list(product(*choices))


@dataclass(frozen=True)
class FundamentalInterval:
    word: AdmissibleWord
    interval: Interval

    @property
    def length(self) -> Fraction:
        return self.interval.length


def fundamental_interval(word: AdmissibleWord) -> FundamentalInterval:
    """J_n(w): the union of the cylinders of w's admissible one-digit extensions."""
    sched = word.schedule
    if word.depth < 1:
        raise DomainError("fundamental intervals start at depth 1")
    nxt = (2,) if _next_forced(sched, word.depth) else range(2, sched.M + 1)
    children = sorted((cylinder(word.digits + (d,)) for d in nxt), key=lambda iv: iv.left)
    for a, b in zip(children, children[1:]):
        if a.right != b.left:
            raise DomainError("child cylinders are not contiguous")
    return FundamentalInterval(word, Interval(children[0].left, children[-1].right))


def _walk(sched: Schedule, depth: int, budget: int = ENUMERATION_BUDGET):
    """Per-depth lists of (left endpoint, cylinder length), in lexicographic order.

    Children of the i-th word at depth n are a contiguous block at depth n+1.
    """
    if word_count(sched, depth) > budget:
        raise BudgetError(f"{word_count(sched, depth)} words at depth {depth} exceed the budget {budget}")
    forced = forced_positions(sched, depth)
    levels = [[(Fraction(0), Fraction(1))]]
    for i in range(depth):
        digits = (2,) if forced[i] else range(2, sched.M + 1)
        nxt = []
        for left, c in levels[-1]:
            for d in digits:
                nxt.append((left + c / d, c / (d * (d - 1))))
        levels.append(nxt)
    return levels


def fundamental_intervals_at(sched: Schedule, depth: int, budget: int = ENUMERATION_BUDGET) -> list[Interval]:
    """J_n(w) for every w in D_depth, in lexicographic order of w."""
    if depth < 1:
        raise DomainError("fundamental intervals start at depth 1")
    level = _walk(sched, depth, budget)[depth]
    k = 2 if _next_forced(sched, depth) else sched.M
    return [Interval(left + c / k, left + c) for left, c in level]


def gap_table(sched: Schedule, depth: int, budget: int = ENUMERATION_BUDGET) -> list[Optional[Fraction]]:
    """Exact distance from each J_n(w) to the nearest other interval of the same order.

    None when D_depth has a single word.
    """
    intervals = fundamental_intervals_at(sched, depth, budget)
    order = sorted(range(len(intervals)), key=lambda i: intervals[i].left)
    gaps: list[Optional[Fraction]] = [None] * len(intervals)
    for a, b in zip(order, order[1:]):
        g = intervals[b].left - intervals[a].right
        if g < 0:
            raise DomainError(f"fundamental intervals overlap at depth {depth}")
        for i in (a, b):
            if gaps[i] is None or g < gaps[i]:
                gaps[i] = g
    return gaps


def gap(word: AdmissibleWord, budget: int = ENUMERATION_BUDGET) -> Optional[Fraction]:
    """g_n(w), found by enumerating every interval of the same order."""
    words = enumerate_D_n(word.schedule, word.depth, budget)
    return gap_table(word.schedule, word.depth, budget)[words.index(word.digits)]


# ---------------------------------------------------------------- the measure mu


def mu_exponents(sched: Schedule, tol: float = 1e-13, prec: Optional[int] = None) -> list[CertifiedValue]:
    """s_M(u_k) for k = 1..k_max, at the exact rational u_k."""
    return [solve_sM(u, sched.M, tol=tol, prec=prec) for u in sched.u]


def _segment(sched: Schedule, position: int) -> int:
    """Block index k (1-based) with n_{k-1} + m_{k-1} < position <= n_k + m_k."""
    for k in range(1, sched.k_max + 1):
        if position <= sched.block_end(k):
            return k
    raise DomainError(f"position {position} is past the schedule horizon {sched.d_horizon}")


def measure_mu(word: AdmissibleWord, exponents: Sequence[CertifiedValue], prec: Optional[int] = None) -> CertifiedValue:
    """mu(J_n(w)) in closed form.

    Completed blocks contribute prod (d(d-1))^{-s_M(u_j)}.  Inside block k the
    digits seen so far contribute the same way with s = s_M(u_k), and each
    remaining position of the block contributes its marginal: the sum over t in
    [2, M] of (t(t-1))^{-s} if free, 2^{-s} if forced.  mu is decreasing in every
    exponent, so evaluating at the ends of each exponent's error interval
    brackets the true value.
    """
    sched = word.schedule
    ctx = _ctx(prec or 96)
    n = word.depth
    if n > sched.d_horizon:
        raise DomainError(f"depth {n} is past the schedule horizon {sched.d_horizon}")

    def evaluate_at(shift: int):
        s = [e.value + shift * e.error_bound for e in exponents]
        s = [ctx.mpf(x) for x in s]
        log_mu = ctx.zero
        for i, d in enumerate(word.digits, start=1):
            log_mu -= s[_segment(sched, i) - 1] * ctx.log(d * (d - 1))
        k = _segment(sched, n) if n >= 1 else 1
        end = sched.block_end(k)
        if n < end:
            sk = s[k - 1]
            free_mass = ctx.fsum(ctx.exp(-sk * ctx.log(t * (t - 1))) for t in range(2, sched.M + 1))
            forced = forced_positions(sched, end)
            for i in range(n + 1, end + 1):
                log_mu += -sk * ctx.ln2 if forced[i - 1] else ctx.log(free_mass)
        return ctx.exp(log_mu)

    mid, hi, lo = evaluate_at(0), evaluate_at(-1), evaluate_at(1)
    rounding = mid * (4 * (n + sched.d_horizon) + 16) * ctx.ldexp(1, 8 - ctx.prec)
    return CertifiedValue(mid, max(hi - mid, mid - lo) + rounding)


def _digit_logs(M: int) -> np.ndarray:
    return np.log(np.array([t * (t - 1) for t in range(2, M + 1)], dtype=float))


def mu_levels(sched: Schedule, depth: int, exponents: Sequence[CertifiedValue],
              budget: int = ENUMERATION_BUDGET) -> list[np.ndarray]:
    """mu(J_n(w)) for every depth 0..depth, each array in lexicographic word order.

    Float64 version of `measure_mu` for whole levels; depth 0 is the total mass.
    """
    if depth > sched.d_horizon:
        raise DomainError(f"depth {depth} is past the schedule horizon {sched.d_horizon}")
    if word_count(sched, depth) > budget:
        raise BudgetError(f"{word_count(sched, depth)} words at depth {depth} exceed the budget {budget}")
    s = np.array([float(e.value) for e in exponents])
    logs = _digit_logs(sched.M)
    forced = forced_positions(sched, sched.d_horizon)
    log_free = [math.log(np.exp(-sk * logs).sum()) for sk in s]

    def remainder(n: int) -> float:
        k = _segment(sched, n) if n >= 1 else 1
        sk = s[k - 1]
        return sum(-sk * math.log(2) if forced[i - 1] else log_free[k - 1]
                   for i in range(n + 1, sched.block_end(k) + 1))

    prefix = np.zeros(1)
    levels = [np.exp(prefix + remainder(0))]
    for i in range(1, depth + 1):
        sk = s[_segment(sched, i) - 1]
        step = np.array([-sk * math.log(2)]) if forced[i - 1] else -sk * logs
        prefix = (prefix[:, None] + step[None, :]).ravel()
        levels.append(np.exp(prefix + remainder(i)))
    return levels


def log_lengths(sched: Schedule, depth: int, budget: int = ENUMERATION_BUDGET) -> np.ndarray:
    """log |J_depth(w)| for every w in D_depth, lexicographic order, in float64."""
    if word_count(sched, depth) > budget:
        raise BudgetError(f"{word_count(sched, depth)} words at depth {depth} exceed the budget {budget}")
    logs = _digit_logs(sched.M)
    forced = forced_positions(sched, depth)
    acc = np.zeros(1)
    for i in range(depth):
        step = np.array([-math.log(2)]) if forced[i] else -logs
        acc = (acc[:, None] + step[None, :]).ravel()
    # J keeps a (M-1)/M share of the cylinder before a free position, 1/2 before a forced one
    share = 0.5 if _next_forced(sched, depth) else (sched.M - 1) / sched.M
    return acc + math.log(share)


def k0_threshold(sched: Schedule, eps: float, exponents: Sequence[CertifiedValue],
                 s_zeta: CertifiedValue) -> Optional[int]:
    """Smallest K0 with |s_M(u_k) - s_M(zeta)| < eps log 2 / log(M(M-1)) for K0 <= k <= k_max."""
    bound = eps * math.log(2) / math.log(sched.M * (sched.M - 1))
    k0 = None
    for k in range(sched.k_max, 0, -1):
        if abs(float(exponents[k - 1].value) - float(s_zeta.value)) < bound:
            k0 = k
        else:
            break
    return k0


@dataclass
class MassLengthReport:
    depth: int
    s_zeta: float
    min_exponent: float  # min over words of log mu(J) / log |J|
    log_constant: float  # max over words of log mu(J) - (s_zeta - eps) log |J|
    eps: float


def mass_length_report(sched: Schedule, depth: int, exponents: Sequence[CertifiedValue],
                       s_zeta: CertifiedValue, eps: float = 0.1,
                       budget: int = ENUMERATION_BUDGET) -> MassLengthReport:
    """Compare mu(J_n(w)) with |J_n(w)|^(s_M(zeta) - eps) over all of D_depth."""
    mu = mu_levels(sched, depth, exponents, budget)[depth]
    log_len = log_lengths(sched, depth, budget)
    log_mu = np.log(mu)
    sz = float(s_zeta.value)
    return MassLengthReport(
        depth=depth,
        s_zeta=sz,
        min_exponent=float(np.min(log_mu / log_len)),
        log_constant=float(np.max(log_mu - (sz - eps) * log_len)),
        eps=eps,
    )


def s_zeta(sched: Schedule, tol: float = 1e-13) -> CertifiedValue:
    """s_M(zeta(alpha, beta)), the exponent the measure bound targets."""
    return solve_sM(zeta(DimParams(sched.alpha, sched.beta)), sched.M, tol=tol)


# ---------------------------------------------------------------- Hölder behaviour of f


def _log_abs(x: Fraction) -> float:
    return math.log(abs(x.numerator)) - math.log(x.denominator)


@dataclass
class HolderFit:
    slope: float
    intercept: float
    slope_stderr: float
    pairs: int
    order_violations: int  # pairs where f reversed the order of x and y
    max_inflation_ratio: float  # max |f(x)-f(y)| / (|I_n| (2M(2M-1))^t(n)); must be <= 1
    log_dx_range: tuple[float, float]


HOLDER_SAMPLING = ("stratified", "independent")


def holder_estimate(sched: Schedule, depth: int, pair_count: int, seed: int,
                    sampling: str = "stratified") -> HolderFit:
    """Least-squares slope of log|f(x)-f(y)| against log|x-y| over sampled pairs.

    stratified: each pair shares a prefix up to a free position chosen
    uniformly among the free positions <= depth, differs there, and is filled
    independently afterwards, so every scale down to the depth is sampled.
    independent: x and y are independent points of G(M); they usually split
    within the first few free digits, so deep scales are rarely seen.
    """
    if sampling not in HOLDER_SAMPLING:
        raise DomainError(f"sampling must be one of {HOLDER_SAMPLING}, got {sampling!r}")
    if pair_count < 2:
        raise DomainError("need at least two pairs")
    kinds = _g_kinds(sched, depth)
    free_positions = [i for i, kind in enumerate(kinds) if kind == FREE]
    if not free_positions:
        raise DomainError("no free positions to branch at")
    M = sched.M
    inflate = 2 * M * (2 * M - 1)
    seeds = np.random.SeedSequence(seed).spawn(pair_count)
    dx, df = [], []
    violations = 0
    worst = 0.0
    for ss in seeds:
        rng = np.random.default_rng(ss)
        x = list(generate_point(sched, depth, seed=int(rng.integers(2**63))))
        y = list(generate_point(sched, depth, seed=int(rng.integers(2**63))))
        if sampling == "stratified":
            b = free_positions[int(rng.integers(len(free_positions)))]
            y[:b] = x[:b]
            y[b] = int(rng.choice([d for d in range(2, M + 1) if d != x[b]]))
        else:
            b = next((i for i in range(depth) if x[i] != y[i]), depth)
        vx, vy = evaluate(x), evaluate(y)
        fx, fy = evaluate(project_f(x, sched)), evaluate(project_f(y, sched))
        if vx == vy:
            continue
        if (vx < vy) != (fx < fy):
            violations += 1
        dx.append(_log_abs(vx - vy))
        df.append(_log_abs(fx - fy))
        if b > 0:
            bound = cylinder_length(x[:b]) * inflate ** deleted_count(sched, b)
        else:
            bound = Fraction(1)
        worst = max(worst, math.exp(df[-1] - _log_abs(bound)))
    if len(set(dx)) < 2:
        raise DomainError("degenerate sample: all pair distances coincide")
    X, Y = np.array(dx), np.array(df)
    A = np.vstack([X, np.ones_like(X)]).T
    (slope, intercept), res, *_ = np.linalg.lstsq(A, Y, rcond=None)
    resid = Y - (slope * X + intercept)
    dof = max(len(X) - 2, 1)
    stderr = math.sqrt(float(resid @ resid) / dof / float(((X - X.mean()) ** 2).sum()))
    return HolderFit(float(slope), float(intercept), stderr, len(X), violations, worst,
                     (float(X.min()), float(X.max())))
