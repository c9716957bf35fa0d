"""Trial-and-error (limit) computation semantics and worked procedures.

A limit predicate holds exactly when its binary kernel f(args, y) settles to 1
as y grows. A horizon-bounded evaluator can report the kernel's current
verdict, how often it changed its mind, and since when it has been stable --
but it can never certify stability, and the result object keeps that caveat
explicit.

The worked procedures: a revisable yes/no stream for the prime-pair property
of even numbers, bogosort with and without memory of tried arrangements, and
the three classic strategies for compounding N independent chance events into
one grand success.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ResourceError
from .turing import OutcomeKind, TuringMachine, run


class KernelDivergenceError(DomainError):
    """The kernel failed to produce an answer: it is not total at this point."""


# -- limit predicates ----------------------------------------------------------


@dataclass(frozen=True)
class LimitPredicate:
    """Binary kernel f(x1..xn, y) whose limit in y defines the predicate."""

    kernel: Callable[..., int]
    arity: int


def tm_kernel(machine: TuringMachine, fuel: int) -> Callable[..., int]:
    """Adapt a machine into a total-by-fuel kernel.

    Arguments are encoded in unary, separated by blanks. A run that exhausts
    its fuel raises :class:`KernelDivergenceError`; a halting run answers 1
    exactly when the cell under the head holds a mark.
    """

    def kernel(*args: int) -> int:
        text = "_".join("1" * a for a in args)
        outcome = run(machine, text, fuel=fuel)
        if outcome.kind is OutcomeKind.OUT_OF_FUEL:
            raise KernelDivergenceError(
                f"kernel machine exceeded {fuel} steps on arguments {args!r}")
        head = outcome.config.heads[0]
        return 1 if outcome.config.tapes[0].get(head, machine.blank) != machine.blank else 0

    return kernel


@dataclass(frozen=True)
class LimitEvaluation:
    verdict: bool
    mind_changes: int
    stable_since: int
    unsettled: bool  # the last flip happened at the horizon itself


def evaluate_limit_predicate(
    pred: LimitPredicate, args: Sequence[int], horizon: int
) -> LimitEvaluation:
    """Tabulate the kernel at y = 0..horizon and read off the limit candidate.

    The verdict is the kernel's value at the horizon; ``stable_since`` is the
    least y from which the kernel stayed constant. When that point *is* the
    horizon the answer never had a chance to settle and ``unsettled`` is
    raised. Even a settled answer is only "correct unless the kernel changes
    its mind later" -- that uncertainty is inherent, not a bug.
    """
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    if len(args) != pred.arity:
        raise DomainError(f"predicate expects {pred.arity} arguments, got {len(args)}")
    values = []
    for y in range(horizon + 1):
        v = pred.kernel(*args, y)
        if v not in (0, 1):
            raise DomainError(f"kernel must answer 0 or 1, got {v!r} at y={y}")
        values.append(v)
    mind_changes = sum(1 for a, b in zip(values, values[1:]) if a != b)
    stable_since = horizon
    while stable_since > 0 and values[stable_since - 1] == values[horizon]:
        stable_since -= 1
    return LimitEvaluation(
        verdict=bool(values[horizon]),
        mind_changes=mind_changes,
        stable_since=stable_since,
        unsettled=stable_since == horizon,
    )


# -- answer streams and the even/prime-pair procedure ----------------------------


@dataclass
class AnswerStream:
    """Timestamped yes/no sequence whose *last* answer is the working verdict."""

    answers: list[tuple[int, bool]] = field(default_factory=list)
    horizon: int = 0

    def emit(self, step: int, verdict: bool) -> None:
        if self.answers and step <= self.answers[-1][0]:
            raise DomainError("step indices must be strictly increasing")
        self.answers.append((step, verdict))

    @property
    def final_verdict(self) -> bool:
        if not self.answers:
            raise DomainError("empty answer stream has no verdict")
        return self.answers[-1][1]

    @property
    def mind_changes(self) -> int:
        return sum(1 for (_, a), (_, b) in zip(self.answers, self.answers[1:]) if a != b)


def is_prime(n: int) -> bool:
    """Deterministic trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def has_prime_pair(even: int) -> bool:
    """True when the even number is a sum of two primes."""
    if even % 2 != 0 or even < 4:
        raise DomainError("prime-pair check is defined for even numbers >= 4")
    for p in range(2, even // 2 + 1):
        if is_prime(p) and is_prime(even - p):
            return True
    return False


def goldbach_stream(horizon_even: int) -> AnswerStream:
    """Examine even numbers 4, 6, ... up to the horizon, one answer each.

    The first answer is yes (4 = 2 + 2); each further even number keeps the
    yes going if it splits into two primes, otherwise the stream says no once
    and stops. A stream that ends still saying yes has, of course, only
    checked up to its horizon.
    """
    if horizon_even < 4 or horizon_even % 2 != 0:
        raise DomainError("horizon must be an even number >= 4")
    stream = AnswerStream(horizon=horizon_even)
    stream.emit(4, True)
    for even in range(6, horizon_even + 1, 2):
        if has_prime_pair(even):
            stream.emit(even, True)
        else:
            stream.emit(even, False)
            break
    return stream


# -- bogosort ---------------------------------------------------------------------

MAX_BOGOSORT_LEN = 10


@dataclass(frozen=True)
class BogosortResult:
    sequence: tuple[int, ...]
    tries: int
    gave_up: bool = False


def _permutation_by_rank(items: Sequence[int], rank: int) -> list[int]:
    """Lehmer-code unranking: rank in [0, len!) to a unique arrangement."""
    pool = list(items)
    out = []
    for radix in range(len(pool), 0, -1):
        f = math.factorial(radix - 1)
        digit, rank = divmod(rank, f)
        out.append(pool.pop(digit))
    return out


def bogosort(
    seq: Sequence[int],
    memoized: bool = False,
    seed: int = 0,
    max_tries: int = 10**6,
) -> BogosortResult:
    """Shuffle until sorted; checking an arrangement costs one try.

    The plain variant may redraw arrangements it has already rejected and is
    capped by ``max_tries`` (a gave-up result carries the count). The memoized
    variant never revisits an arrangement -- ranks are drawn without
    replacement -- so it needs at most len! tries.
    """
    items = list(seq)
    if len(items) > MAX_BOGOSORT_LEN:
        raise ResourceError(
            f"sequence longer than {MAX_BOGOSORT_LEN}: the factorial search space "
            "is past desk scale")
    if max_tries < 1:
        raise DomainError("max_tries must be positive")
    rng = np.random.default_rng(seed)
    target = sorted(items)

    current = items
    tries = 1
    if current == target:
        return BogosortResult(tuple(current), tries)

    if memoized:
        total = math.factorial(len(items))
        # virtual Fisher-Yates over ranks [0, total): each draw is uniform over
        # the ranks not yet tried. Rank 0 (the input order) was spent by the
        # first check, so swap the last slot into its place up front.
        swap: dict[int, int] = {0: total - 1}
        remaining = total - 1
        while remaining > 0:
            j = int(rng.integers(remaining))
            rank = swap.get(j, j)
            swap[j] = swap.get(remaining - 1, remaining - 1)
            remaining -= 1
            tries += 1
            current = _permutation_by_rank(items, rank)
            if current == target:
                return BogosortResult(tuple(current), tries)
        raise AssertionError("a sorted arrangement always exists")  # pragma: no cover

    while tries < max_tries:
        current = [items[i] for i in rng.permutation(len(items))]
        tries += 1
        if current == target:
            return BogosortResult(tuple(current), tries)
    return BogosortResult(tuple(current), tries, gave_up=True)


# -- wheel strategies ----------------------------------------------------------------


class WheelStrategy(IntEnum):
    ALL_OR_NOTHING = 1  # respin every wheel until one round shows all successes
    ONE_AT_A_TIME = 2  # finish each wheel before starting the next
    FREEZE_SUCCESSES = 3  # respin only the wheels still failing


@dataclass(frozen=True)
class WheelExperiment:
    n_wheels: int
    p: float
    strategy: WheelStrategy
    seed: int = 0

    def __post_init__(self):
        if self.n_wheels < 1:
            raise DomainError("need at least one wheel")
        if not 0.0 < self.p < 1.0:
            raise DomainError("success probability must lie strictly between 0 and 1")


TAIL_RELATIVE_TOL = 1e-9


def ashby_expected(exp: WheelExperiment) -> float:
    """Expected seconds to grand success, at one spin round per second.

    All-or-nothing: a round succeeds with p**N, so the mean is p**-N.
    One-at-a-time: N wheels, each a mean 1/p spins, run back to back: N/p.
    Freeze-successes: the slowest of N independent wheels; its mean
    sum_{t>=0} (1 - (1 - (1-p)**t)**N) is summed until the tail is
    negligible relative to the accumulated value.
    """
    n, p = exp.n_wheels, exp.p
    if exp.strategy is WheelStrategy.ALL_OR_NOTHING:
        return p**-n
    if exp.strategy is WheelStrategy.ONE_AT_A_TIME:
        return n / p
    q = 1.0 - p
    total = 0.0
    qt = 1.0  # q**t
    while True:
        term = 1.0 - (1.0 - qt) ** n
        total += term
        qt *= q
        if term <= total * TAIL_RELATIVE_TOL:
            return total


def ashby_expected_log2(exp: WheelExperiment) -> float:
    """log2 of the expectation, exact where the value itself would overflow."""
    n, p = exp.n_wheels, exp.p
    if exp.strategy is WheelStrategy.ALL_OR_NOTHING:
        return -n * math.log2(p)
    return math.log2(ashby_expected(exp))


def ashby_case3_inclusion_exclusion(n: int, p: float) -> float:
    """Closed form for the freeze-successes mean, by inclusion-exclusion over
    subsets of wheels: sum_k (-1)**(k+1) C(n,k) / (1 - (1-p)**k)."""
    q = 1.0 - p
    return sum(
        (-1) ** (k + 1) * math.comb(n, k) / (1.0 - q**k) for k in range(1, n + 1)
    )


def ashby_simulate(exp: WheelExperiment, trials: int) -> tuple[float, float]:
    """Seeded Monte Carlo of the chosen strategy: (mean seconds, standard error).

    Each wheel's spin count until its first success is geometric with
    parameter p. The strategies compound those counts differently: a single
    geometric draw at p**N for all-or-nothing rounds, the per-wheel sum for
    one-at-a-time, the per-wheel maximum for freeze-successes.
    """
    if trials < 1:
        raise DomainError("need at least one trial")
    rng = np.random.default_rng(exp.seed)
    n, p = exp.n_wheels, exp.p
    if exp.strategy is WheelStrategy.ALL_OR_NOTHING:
        times = rng.geometric(p**n, size=trials).astype(np.float64)
    elif exp.strategy is WheelStrategy.ONE_AT_A_TIME:
        times = rng.geometric(p, size=(trials, n)).sum(axis=1).astype(np.float64)
    else:
        times = rng.geometric(p, size=(trials, n)).max(axis=1).astype(np.float64)
    mean = float(times.mean())
    stderr = float(times.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("inf")
    return mean, stderr


# companion figures commonly quoted for the N=1000, p=1/2 example; recorded
# for reference, never asserted (the analytic means are 2**1000, 2000 and
# about 11 seconds respectively)
QUOTED_CASE1_LOG2_SECONDS = 1000.0
QUOTED_CASE2_SECONDS = 500.0
QUOTED_CASE3_NOTE = "just over half a second"
