"""Accelerated-machine time accounting.

A geometric schedule assigns step ``i`` (counted from 0) the duration
``base * ratio**i``. With the default ratio 1/2 the whole infinite cascade
fits in ``base / (1 - ratio)`` seconds, which is what lets such a machine
finish unboundedly many steps in finite time. All sums are kept as exact
rationals; floats only appear at the reporting boundary (binary floats are
dyadic rationals, so accepting them loses nothing).

Two caveats frame everything here. Acceleration buys nothing on bounded
storage: a machine confined to a finite tape revisits a configuration and
loops, however fast it steps, so only the time accounting changes -- that
fact is documented rather than mechanised. And any finite prefix of the
cascade is an ordinary bounded run; functions below that stand in for the
completed limit (the halting flag, the lamp at its limit point) say so
explicitly instead of pretending the limit was reached.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

from .errors import DomainError
from .turing import OutcomeKind, RunOutcome, TuringMachine, run

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# step index commonly quoted for the head outrunning light at 1 m/s per step 1;
# the derived value under the convention below is 30 (see first_superluminal_step)
QUOTED_SUPERLUMINAL_STEP = 29

TimeLike = Union[int, float, Fraction]


def _exact(t: TimeLike, what: str = "time") -> Fraction:
    if isinstance(t, float):
        if t != t or t in (float("inf"), float("-inf")):
            raise DomainError(f"{what} must be finite")
        return Fraction(t)
    if isinstance(t, Rational):
        return Fraction(t)
    raise DomainError(f"{what} must be a real number, got {type(t).__name__}")


@dataclass(frozen=True)
class ZenoSchedule:
    """Geometric step-time schedule; ratio below 1 converges, above 1 diverges."""

    base_step_time: Fraction = Fraction(1)
    ratio: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "base_step_time", _exact(self.base_step_time, "base_step_time"))
        object.__setattr__(self, "ratio", _exact(self.ratio, "ratio"))
        if self.base_step_time <= 0:
            raise DomainError("base_step_time must be positive")
        if self.ratio <= 0:
            raise DomainError("ratio must be positive")

    @property
    def converges(self) -> bool:
        return self.ratio < 1

    @property
    def total_time(self) -> Optional[Fraction]:
        """Closed-form limit of the full cascade; None for diverging schedules."""
        if not self.converges:
            return None
        return self.base_step_time / (1 - self.ratio)


DEFAULT_SCHEDULE = ZenoSchedule()


def zeno_time(n: int, schedule: ZenoSchedule = DEFAULT_SCHEDULE) -> Fraction:
    """Exact elapsed time through step index n: sum of base * ratio**i, i = 0..n."""
    if n < 0:
        raise DomainError("step index must be a natural number")
    r = schedule.ratio
    if r == 1:
        return schedule.base_step_time * (n + 1)
    return schedule.base_step_time * (1 - r ** (n + 1)) / (1 - r)


class Unbounded(Enum):
    """Marker: the budget covers the schedule's entire infinite cascade."""

    UNBOUNDED = "unbounded"

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = Unbounded.UNBOUNDED


def steps_within_budget(
    t: TimeLike, schedule: ZenoSchedule = DEFAULT_SCHEDULE
) -> Union[int, Unbounded, None]:
    """Largest step index n with zeno_time(n) <= t, exactly.

    Returns UNBOUNDED when the budget reaches the convergent schedule's total
    time, and None when even step 0 does not fit.
    """
    budget = _exact(t, "budget")
    if budget <= 0:
        raise DomainError("budget must be positive")
    total = schedule.total_time
    if total is not None and budget >= total:
        return UNBOUNDED
    if zeno_time(0, schedule) > budget:
        return None
    hi = 1
    while zeno_time(hi, schedule) <= budget:
        hi *= 2
    lo = hi // 2  # zeno_time(lo) <= budget < zeno_time(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if zeno_time(mid, schedule) <= budget:
            lo = mid
        else:
            hi = mid
    return lo


def decelerated_steps_within_budget(t: TimeLike, base: TimeLike = 1) -> int:
    """Largest step index n of the mirrored (decelerating) cascade within budget t.

    Mirroring the accelerating schedule turns the time left to its limit after
    step n (base * 2**-n) into elapsed time base * 2**n: each further step
    waits twice as long as the one before. A budget therefore buys only
    log2(budget / base) step indices, which is why stretching the deadline
    from 1 to 64 time units gains just 6 steps, and stretching it from 1
    second to 2**1000 seconds gains just 1000. Exact integer arithmetic.
    """
    budget = _exact(t, "budget")
    base = _exact(base, "base")
    if budget <= 0 or base <= 0:
        raise DomainError("budget and base must be positive")
    q = budget / base
    if q < 1:
        raise DomainError("budget does not cover the first step")
    # floor(log2(q)) for exact rational q >= 1
    n = (q.numerator // q.denominator).bit_length() - 1
    while 2 ** (n + 1) <= q:
        n += 1
    while 2**n > q:
        n -= 1
    return n


def budget_step_gain(t_small: TimeLike, t_large: TimeLike, base: TimeLike = 1) -> int:
    """Extra decelerated step indices bought by raising the budget."""
    return decelerated_steps_within_budget(t_large, base) - decelerated_steps_within_budget(
        t_small, base
    )


# -- Thomson's lamp ---------------------------------------------------------------


class LampState(Enum):
    ON = "on"
    OFF = "off"
    UNDEFINED = "undefined"


def lamp_toggle_count(t: TimeLike, schedule: ZenoSchedule = DEFAULT_SCHEDULE) -> int:
    """Number of toggle instants zeno_time(n) <= t, computed exactly."""
    budget = _exact(t, "t")
    if budget < 0:
        raise DomainError("time must be non-negative")
    got = steps_within_budget(budget, schedule) if budget > 0 else None
    if got is UNBOUNDED:
        raise DomainError("toggle count is infinite at or beyond the supertask limit")
    return 0 if got is None else got + 1


def thomson_lamp(
    t: TimeLike,
    schedule: ZenoSchedule = DEFAULT_SCHEDULE,
    start_on: bool = True,
) -> LampState:
    """Lamp state at time t under the documented phase convention.

    The lamp switches on at t = 0 (configurable via ``start_on``) and toggles
    at every instant zeno_time(n), n >= 0. The state is only defined before
    the supertask limit; at and beyond it no finite parity constrains the
    lamp, so the function answers UNDEFINED there rather than pick a value.
    """
    instant = _exact(t, "t")
    if instant < 0:
        raise DomainError("time must be non-negative")
    total = schedule.total_time
    if total is not None and instant >= total:
        return LampState.UNDEFINED
    toggles = lamp_toggle_count(instant, schedule)
    lit = bool(start_on) ^ (toggles % 2 == 1)
    return LampState.ON if lit else LampState.OFF


# -- halting flag on an accelerated run --------------------------------------------


@dataclass(frozen=True)
class HaltingFlagReport:
    """Fuel-bounded surrogate for the accelerated halting-flag construction.

    The true construction completes a supertask: simulate the machine at
    accelerating pace and raise a designated flag square iff it halts, so the
    flag is readable after the finite limit time. At finite fuel the flag is
    only a halting *witness*, never a non-halting proof; ``fuel_bounded``
    stays True to keep that caveat attached to the data.
    """

    flag: int
    steps: int
    elapsed: Fraction
    outcome: RunOutcome
    fuel_bounded: bool = True


def atm_halting_flag(
    machine: TuringMachine,
    input_symbols: str = "",
    fuel: int = 10**6,
    schedule: ZenoSchedule = DEFAULT_SCHEDULE,
) -> HaltingFlagReport:
    """Run at most ``fuel`` steps; flag 1 iff the machine halted in that budget.

    Elapsed time is zeno_time(steps): the prefix sum through slot ``steps``,
    i.e. the simulated steps plus the one slot spent writing the flag square.
    For any finite run this stays below the schedule's limit.
    """
    outcome = run(machine, input_symbols, fuel=fuel)
    halted = outcome.kind is OutcomeKind.HALTED
    return HaltingFlagReport(
        flag=1 if halted else 0,
        steps=outcome.config.steps,
        elapsed=zeno_time(outcome.config.steps, schedule),
        outcome=outcome,
    )


# -- superluminal threshold ---------------------------------------------------------


def first_superluminal_step(head_speed_step1: float, cell_pitch: float = 1.0) -> int:
    """First step (1-based) whose head speed must exceed the speed of light.

    Step n lasts ``2**-(n-1)`` times the first step's duration while the head
    still crosses one cell pitch, so the required speed doubles every step:
    speed(n) = head_speed_step1 * 2**(n-1). The pitch fixes the first step's
    duration (pitch / speed1) but cancels out of the threshold itself; it is
    kept as a parameter because one could instead shrink the cells and keep
    the duration fixed, which would move the threshold.
    """
    if head_speed_step1 <= 0 or cell_pitch <= 0:
        raise DomainError("speed and pitch must be positive")
    n = 1
    speed = float(head_speed_step1)
    while speed <= SPEED_OF_LIGHT:
        n += 1
        speed *= 2.0
    return n
