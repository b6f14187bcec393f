"""Heterogeneous agent populations and seeded Monte Carlo answer tables.

A population is a convex mixture of labeled preparations.  Each simulated
agent is assigned a preparation, then answers both ordered question
sequences (A then B, and B then A) on fresh copies of that preparation:
answers never carry over between the two tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ValidationError
from .kernels import simulate_answers
from .measurement import outcome_probability
from .observables import Question, conditional_probability
from .states import MixedState, PureState, density_from_pure

Preparation = Union[PureState, MixedState]

_FALLACY_GUARD = 1e-12


@dataclass(frozen=True)
class PopulationComponent:
    fraction: float
    preparation: Preparation
    label: str


@dataclass(frozen=True)
class PopulationSpec:
    """Labeled mixture of preparations with fractions summing to one."""

    components: tuple[PopulationComponent, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise ValidationError("population needs at least one component")
        total = 0.0
        for comp in self.components:
            if comp.fraction < 0.0:
                raise ValidationError(
                    f"negative fraction {comp.fraction!r} for {comp.label!r}"
                )
            total += comp.fraction
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"fractions sum to {total!r}, expected 1")


@dataclass(frozen=True)
class SimulationTable:
    """Empirical answer frequencies for the two ordered sequences."""

    n_agents: int
    seed: int
    count_a1: int
    count_b1: int
    count_a1_then_b1: int
    count_b1_then_a1: int

    @property
    def p_a1(self) -> float:
        return self.count_a1 / self.n_agents

    @property
    def p_b1(self) -> float:
        return self.count_b1 / self.n_agents

    @property
    def p_a1_then_b1(self) -> float:
        return self.count_a1_then_b1 / self.n_agents

    @property
    def p_b1_then_a1(self) -> float:
        return self.count_b1_then_a1 / self.n_agents


def _as_density(prep: Preparation) -> MixedState:
    return density_from_pure(prep) if isinstance(prep, PureState) else prep


def predicted_fallacy_rate(pop: PopulationSpec, a: Question, b: Question) -> float:
    """Fraction of the population whose preparation shows the b-side fallacy.

    The condition P(b1) < P(a1) P(b1|a1) is linear in the density matrix, so
    it applies uniformly to pure and mixed preparations; diagonal mixtures
    can never satisfy it.  The rate is affine in the component fractions.
    """
    cond = conditional_probability(a, 1, b, 1)
    rate = 0.0
    for comp in pop.components:
        rho = _as_density(comp.preparation)
        p_a1 = outcome_probability(rho, a, 1)
        p_b1 = outcome_probability(rho, b, 1)
        if p_b1 < p_a1 * cond - _FALLACY_GUARD:
            rate += comp.fraction
    return rate


def simulate_population(
    pop: PopulationSpec, a: Question, b: Question, n_agents: int, seed: int
) -> SimulationTable:
    """Seeded Monte Carlo answer table over ``n_agents`` agents.

    Uniform variates are drawn up front as an (n, 5) matrix and consumed per
    agent in a fixed order (component draw, A-first answers, B-first
    answers), so runs are bit-reproducible for a given seed regardless of
    the numeric backend.
    """
    if n_agents < 1:
        raise ValidationError(f"n_agents must be >= 1, got {n_agents}")
    rng = np.random.default_rng(seed)
    uniforms = rng.random((n_agents, 5))

    fractions = np.array([c.fraction for c in pop.components], dtype=np.float64)
    cum = np.cumsum(fractions)
    cum[-1] = max(cum[-1], 1.0)
    p_a1 = np.array(
        [outcome_probability(_as_density(c.preparation), a, 1) for c in pop.components]
    )
    p_b1 = np.array(
        [outcome_probability(_as_density(c.preparation), b, 1) for c in pop.components]
    )
    cond = np.array(
        [
            conditional_probability(a, 0, b, 1),
            conditional_probability(a, 1, b, 1),
            conditional_probability(b, 0, a, 1),
            conditional_probability(b, 1, a, 1),
        ]
    )
    answers = simulate_answers(uniforms, cum, p_a1, p_b1, cond)
    a_first_a = answers[:, 0].astype(bool)
    a_first_b = answers[:, 1].astype(bool)
    b_first_b = answers[:, 2].astype(bool)
    b_first_a = answers[:, 3].astype(bool)
    return SimulationTable(
        n_agents=n_agents,
        seed=seed,
        count_a1=int(np.count_nonzero(a_first_a)),
        count_b1=int(np.count_nonzero(b_first_b)),
        count_a1_then_b1=int(np.count_nonzero(a_first_a & a_first_b)),
        count_b1_then_a1=int(np.count_nonzero(b_first_b & b_first_a)),
    )
