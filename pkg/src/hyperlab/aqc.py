"""Ground-state search for Diophantine solvability on a truncated mode space.

The pipeline: an integer polynomial D in k unknowns becomes the diagonal
operator D(N1..Nk)**2 on a k-mode occupation basis truncated at a per-mode
cutoff (number operators act diagonally, so no operator algebra is needed --
the matrix entry at basis tuple n is just D(n)**2). The system starts in the
uniform superposition, the unique ground state of a rank-one projector
complement, and the Hamiltonian is interpolated linearly into the problem
operator over a total time T. If the schedule is slow enough the final state
concentrates on a tuple with minimal D**2; measuring it and substituting back
answers "is there a zero with all coordinates <= cutoff".

Every negative answer is cutoff-bounded by construction. Variables range over
the naturals; searches over negative integers need an explicit substitution
such as x -> x' - m before encoding.

An exhaustive integer scan of the truncated lattice serves as the exact
oracle for every quantum-path result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DomainError,
    ResourceError,
    ShapeError,
    StabilityError,
    ValidationError,
)
from . import linalg

LATTICE_BUDGET = 10**7
STABILITY_LIMIT = 0.5


# -- polynomials -----------------------------------------------------------------


@dataclass(frozen=True)
class DiophantinePolynomial:
    """Sparse integer polynomial: terms are (coefficient, exponent vector)."""

    num_vars: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.num_vars:
            raise ShapeError(
                f"polynomial in {self.num_vars} variables evaluated at "
                f"{len(point)}-tuple")
        total = 0
        for coeff, exps in self.terms:
            value = coeff
            for x, e in zip(point, exps):
                value *= x**e
            total += value
        return total


def parse_polynomial(doc: dict) -> DiophantinePolynomial:
    """Validate a polynomial document {"vars": k, "terms": [[c, [e1..ek]], ...]}.

    Exponent vectors must be distinct (duplicates are an error, not merged);
    zero-coefficient terms are dropped as canonicalisation.
    """
    try:
        num_vars = int(doc["vars"])
        raw_terms = doc["terms"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed polynomial document: {exc}") from None
    if num_vars < 1:
        raise ValidationError("polynomial needs at least one variable")
    seen: set[tuple[int, ...]] = set()
    terms: list[tuple[int, tuple[int, ...]]] = []
    for entry in raw_terms:
        if len(entry) != 2:
            raise ValidationError(f"term must be [coefficient, exponents], got {entry!r}")
        coeff = int(entry[0])
        exps = tuple(int(e) for e in entry[1])
        if len(exps) != num_vars:
            raise ValidationError(
                f"exponent vector {exps!r} does not match {num_vars} variables")
        if any(e < 0 for e in exps):
            raise ValidationError("exponents must be naturals")
        if exps in seen:
            raise ValidationError(f"duplicate exponent vector {exps!r}")
        seen.add(exps)
        if coeff != 0:
            terms.append((coeff, exps))
    return DiophantinePolynomial(num_vars=num_vars, terms=tuple(terms))


# -- truncated mode space -----------------------------------------------------------


@dataclass(frozen=True)
class TruncatedFockSpace:
    """k modes, occupation numbers 0..cutoff each, basis in lexicographic order."""

    num_modes: int
    cutoff: int

    def __post_init__(self):
        if self.num_modes < 1:
            raise DomainError("need at least one mode")
        if self.cutoff < 0:
            raise DomainError("cutoff must be a natural number")

    @property
    def dimension(self) -> int:
        return (self.cutoff + 1) ** self.num_modes

    def basis(self):
        return itertools.product(range(self.cutoff + 1), repeat=self.num_modes)

    def index_of(self, occupation: Sequence[int]) -> int:
        if len(occupation) != self.num_modes:
            raise ShapeError("occupation tuple arity mismatch")
        idx = 0
        for n in occupation:
            if not 0 <= n <= self.cutoff:
                raise DomainError(f"occupation number {n} outside 0..{self.cutoff}")
            idx = idx * (self.cutoff + 1) + n
        return idx

    def occupation_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.dimension:
            raise DomainError("basis index out of range")
        digits = []
        for _ in range(self.num_modes):
            index, n = divmod(index, self.cutoff + 1)
            digits.append(n)
        return tuple(reversed(digits))


# -- Hamiltonians ----------------------------------------------------------------


def build_problem_hamiltonian(
    poly: DiophantinePolynomial, space: TruncatedFockSpace
) -> np.ndarray:
    """Diagonal operator with entry D(n1..nk)**2 at each occupation tuple."""
    if poly.num_vars != space.num_modes:
        raise ShapeError(
            f"polynomial has {poly.num_vars} variables but the space has "
            f"{space.num_modes} modes")
    diag = np.fromiter(
        (float(poly.evaluate(n) ** 2) for n in space.basis()),
        dtype=np.float64,
        count=space.dimension,
    )
    return np.diag(diag).astype(np.complex128)


def build_initial_hamiltonian(space: TruncatedFockSpace) -> tuple[np.ndarray, np.ndarray]:
    """Projector complement I - |u><u| with u uniform; returns (matrix, ground ket).

    The uniform superposition is its unique zero-energy ground state and the
    rest of the spectrum sits at exactly 1, so the starting gap is 1. Any
    other start operator with a unique, preparable ground state works too:
    pass it (and its ground ket) to :class:`AdiabaticProblem` directly.
    """
    d = space.dimension
    u = np.full((d, 1), 1.0 / math.sqrt(d), dtype=np.complex128)
    h = linalg.identity(d) - u @ u.conj().T
    return h, u


@dataclass(frozen=True)
class AdiabaticProblem:
    space: TruncatedFockSpace
    h_problem: np.ndarray
    h_initial: np.ndarray
    total_time: float
    dt: float

    def __post_init__(self):
        if self.total_time < 0:
            raise DomainError("total time must be non-negative")
        if self.dt <= 0:
            raise DomainError("integrator step must be positive")
        d = self.space.dimension
        if self.h_problem.shape != (d, d) or self.h_initial.shape != (d, d):
            raise ShapeError("Hamiltonians must match the space dimension")


def interpolate_hamiltonian(problem: AdiabaticProblem, s: float) -> np.ndarray:
    """(1 - s) * H_initial + s * H_problem; Hermitian for any s in [0, 1]."""
    if not 0.0 <= s <= 1.0:
        raise DomainError("interpolation parameter must lie in [0, 1]")
    return (1.0 - s) * problem.h_initial + s * problem.h_problem


def spectral_norm_bound(problem: AdiabaticProblem) -> float:
    """Upper bound on ||H(s)|| over the whole schedule (convexity)."""
    return max(
        float(np.linalg.norm(problem.h_initial, 2)),
        float(np.linalg.norm(problem.h_problem, 2)),
    )


@dataclass(frozen=True)
class EvolveResult:
    state: np.ndarray
    norm_drift: float
    steps: int


def evolve(problem: AdiabaticProblem, psi0: np.ndarray) -> EvolveResult:
    """Integrate i dpsi/dt = H(t/T) psi from 0 to T with fixed-step RK4.

    The Hamiltonian is evaluated at the stage times (midpoint rule inside each
    step). Norm drift is measured against 1 and the returned state is
    renormalised; the drift itself is part of the result so the caller can see
    how much unitarity the integrator lost.
    """
    psi = linalg.ket(psi0).astype(np.complex128)
    nrm = linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-9:
        raise DomainError(f"initial state must be normalised, got norm {nrm}")
    t_total = problem.total_time
    if t_total == 0.0:
        return EvolveResult(state=psi.copy(), norm_drift=0.0, steps=0)

    bound = spectral_norm_bound(problem)
    if problem.dt * bound > STABILITY_LIMIT:
        raise StabilityError(
            f"dt * max||H|| = {problem.dt * bound:.3g} exceeds {STABILITY_LIMIT}; "
            "use a smaller step")

    steps = max(1, math.ceil(t_total / problem.dt))
    dt = t_total / steps
    hi = problem.h_initial
    diff = problem.h_problem - problem.h_initial

    def rhs(s: float, v: np.ndarray) -> np.ndarray:
        return -1j * (hi @ v + s * (diff @ v))

    for k in range(steps):
        t = k * dt
        s0 = t / t_total
        s_half = (t + 0.5 * dt) / t_total
        s1 = (t + dt) / t_total
        k1 = rhs(s0, psi)
        k2 = rhs(s_half, psi + 0.5 * dt * k1)
        k3 = rhs(s_half, psi + 0.5 * dt * k2)
        k4 = rhs(s1, psi + dt * k3)
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    final_norm = linalg.norm(psi)
    drift = abs(final_norm - 1.0)
    return EvolveResult(state=psi / final_norm, norm_drift=drift, steps=steps)


# -- measurement --------------------------------------------------------------------


def measure_sample(
    psi: np.ndarray, space: TruncatedFockSpace, shots: int, seed: int
) -> dict[tuple[int, ...], int]:
    """Sample occupation tuples from |amplitude|**2, deterministically per seed."""
    if shots < 1:
        raise DomainError("shots must be positive")
    state = linalg.ket(psi)
    if state.shape[0] != space.dimension:
        raise ShapeError("state dimension does not match the space")
    nrm = linalg.norm(state)
    if abs(nrm - 1.0) > 1e-6:
        raise DomainError(f"state must be normalised, got norm {nrm}")
    probs = np.abs(state.reshape(-1)) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        space.occupation_of(i): int(c) for i, c in enumerate(counts) if c > 0
    }


# -- exact oracle and the decision procedure ------------------------------------------


def exact_ground_oracle(
    poly: DiophantinePolynomial, cutoff: int
) -> tuple[int, list[tuple[int, ...]]]:
    """Exhaustive integer scan of D**2 over the truncated lattice.

    Returns the exact minimum and every tuple attaining it. Arithmetic is
    plain Python integers, so no value is ever rounded.
    """
    space = TruncatedFockSpace(poly.num_vars, cutoff)
    if space.dimension > LATTICE_BUDGET:
        raise ResourceError(
            f"lattice of {space.dimension} points exceeds the scan budget "
            f"{LATTICE_BUDGET}")
    best: Optional[int] = None
    winners: list[tuple[int, ...]] = []
    for n in space.basis():
        value = poly.evaluate(n) ** 2
        if best is None or value < best:
            best = value
            winners = [n]
        elif value == best:
            winners.append(n)
    assert best is not None
    return best, winners


class Verdict(Enum):
    SOLVABLE_WITH_WITNESS = "solvable-with-witness"
    NO_SOLUTION_UP_TO_CUTOFF = "no-solution-up-to-cutoff"


@dataclass(frozen=True)
class DecisionReport:
    verdict: Verdict
    witness: Optional[tuple[int, ...]]
    ground_energy: int
    success_probability_estimate: float
    samples: dict[tuple[int, ...], int]
    cutoff: int
    total_time: float
    dt: float
    shots: int
    seed: int
    norm_drift: float
    note: str

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "ground_energy": self.ground_energy,
            "success_probability_estimate": self.success_probability_estimate,
            "samples": {
                ",".join(map(str, tup)): count
                for tup, count in sorted(self.samples.items())
            },
            "cutoff": self.cutoff,
            "total_time": self.total_time,
            "dt": self.dt,
            "shots": self.shots,
            "seed": self.seed,
            "norm_drift": self.norm_drift,
            "note": self.note,
        }


def decide(
    poly: DiophantinePolynomial,
    cutoff: int,
    total_time: float,
    dt: float,
    shots: int,
    seed: int,
) -> DecisionReport:
    """Build, evolve, measure, and adjudicate by exact substitution.

    The most frequent measured tuple is the candidate; only D(candidate) = 0,
    an exact integer identity, produces a positive verdict. Anything else is a
    negative verdict scoped to the cutoff, with the exact scan's minimum
    attached. The success-probability estimate is the candidate's empirical
    frequency; there is deliberately no automatic rule for growing T or shots.
    """
    if cutoff < 0 or total_time <= 0 or dt <= 0 or shots < 1:
        raise DomainError("cutoff, time, dt and shots must be positive")
    space = TruncatedFockSpace(poly.num_vars, cutoff)
    h_p = build_problem_hamiltonian(poly, space)
    h_i, ground = build_initial_hamiltonian(space)
    problem = AdiabaticProblem(
        space=space, h_problem=h_p, h_initial=h_i, total_time=total_time, dt=dt)
    evolved = evolve(problem, ground)
    samples = measure_sample(evolved.state, space, shots, seed)

    candidate = max(samples.items(), key=lambda kv: (kv[1], tuple(-x for x in kv[0])))[0]
    frequency = samples[candidate] / shots
    e_ground, _winners = exact_ground_oracle(poly, cutoff)

    if poly.evaluate(candidate) == 0:
        return DecisionReport(
            verdict=Verdict.SOLVABLE_WITH_WITNESS,
            witness=candidate,
            ground_energy=e_ground,
            success_probability_estimate=frequency,
            samples=samples,
            cutoff=cutoff,
            total_time=total_time,
            dt=dt,
            shots=shots,
            seed=seed,
            norm_drift=evolved.norm_drift,
            note="witness verified by exact substitution",
        )
    return DecisionReport(
        verdict=Verdict.NO_SOLUTION_UP_TO_CUTOFF,
        witness=None,
        ground_energy=e_ground,
        success_probability_estimate=frequency,
        samples=samples,
        cutoff=cutoff,
        total_time=total_time,
        dt=dt,
        shots=shots,
        seed=seed,
        norm_drift=evolved.norm_drift,
        note=(
            f"negative verdict is bounded by the cutoff {cutoff}: it rules out "
            "zeros with every coordinate <= cutoff, nothing beyond"),
    )
