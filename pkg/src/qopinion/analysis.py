"""Interference decompositions and conjunction-fallacy detection.

For a pure state with coordinates (alpha0, alpha1) in the basis of question
``a``, the total probability of answering ``j`` on question ``b`` splits as

    P(b_j) = sum_i P(a_i) P(b_j | a_i)  +  I

where the classical part is the two-path law of total probability and the
interference term is

    I = +- Re[alpha0 * conj(alpha1) * sin(2 theta) * e^{i phi}]

with (theta, phi) the relation from ``a``'s basis to ``b``'s and the sign
positive for j = 1.  A negative interference term can push P(b_1) below
P(a_1) P(b_1 | a_1), the conjunction-fallacy signature; a positive one can
push it above by more than classically possible (the reverse fallacy).

Convention note: the basis transformation used everywhere maps a real state
with amplitude angle t_a to angle t_a + theta in the rotated basis.  The
closed-form fallacy inequalities below are derived under that same
convention, so they agree with the direct probability computation on every
non-singular point.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import PreconditionError, SingularityError, ValidationError
from .measurement import outcome_probability
from .observables import (
    BasisRelation,
    Question,
    change_basis,
    conditional_probability,
    relative_relation,
)
from .states import MixedState, PureState, density_from_pure, pure_from_angles

FALLACY_GUARD = 1e-12
POLE_GUARD = 1e-9


@dataclass(frozen=True)
class DecompositionResult:
    """Total probability split into classical two-path part plus interference."""

    total: float
    classical_part: float
    interference: float
    target_question: Question
    target_outcome: int


@dataclass(frozen=True)
class FallacyReport:
    """Flags for the direct and reverse conjunction fallacy on both sides.

    ``margins`` holds, in order, (threshold_b - P(b1), threshold_a - P(a1),
    P(b1) - threshold_b, P(a1) - threshold_a): positive first-pair entries
    point toward the direct fallacy, positive second-pair entries toward the
    reverse side.
    """

    fallacy_on_b: bool
    fallacy_on_a: bool
    reverse_on_b: bool
    reverse_on_a: bool
    margins: tuple[float, float, float, float]


class RegimeClass(enum.Enum):
    CORRELATED = "correlated"
    UNCORRELATED = "uncorrelated"
    ANTICORRELATED = "anticorrelated"
    INTERMEDIATE = "intermediate"


@dataclass(frozen=True)
class GridRange:
    """Inclusive linear range with a fixed number of points (>= 2)."""

    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ValidationError(f"grid needs at least 2 steps, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("grid bounds must be finite")

    def values(self) -> list[float]:
        h = (self.stop - self.start) / (self.steps - 1)
        return [self.start + k * h for k in range(self.steps)]


@dataclass(frozen=True)
class SweepCell:
    theta: float
    theta_a: float
    phi: float
    decomposition_b: DecompositionResult
    decomposition_a: DecompositionResult
    report: FallacyReport
    regime: RegimeClass


@dataclass(frozen=True)
class UnderextensionEstimate:
    """Order-interval bounds on the conjunction and the derived or-range.

    The conjunction has no unique order-free value here, so ``and_low`` and
    ``and_high`` bracket the two ordered chain probabilities; the or-range
    follows by inclusion-exclusion.  ``underextension`` flags or_high falling
    below one of the single-event probabilities.
    """

    and_low: float
    and_high: float
    or_low: float
    or_high: float
    mu_a: float
    mu_b: float
    underextension: bool


def decompose_total_probability(
    s: PureState, a: Question, b: Question, j: int
) -> DecompositionResult:
    """Split P(b = j) for state ``s`` into classical part plus interference.

    ``s`` is given in the reference basis.  Commuting pairs are allowed: the
    interference factor sin(2 theta) is then zero and the total reduces to
    the classical sum.
    """
    if j not in (0, 1):
        raise ValidationError(f"outcome must be 0 or 1, got {j!r}")
    alpha = change_basis(s, a.relation_to_reference)
    rel = relative_relation(a, b)
    c2 = math.cos(rel.theta) ** 2
    s2 = 1.0 - c2
    p_a0 = abs(alpha.amp0) ** 2
    p_a1 = abs(alpha.amp1) ** 2
    if j == 1:
        classical = p_a0 * s2 + p_a1 * c2
    else:
        classical = p_a0 * c2 + p_a1 * s2
    cross = (
        alpha.amp0 * alpha.amp1.conjugate() * cmath.exp(1j * rel.phi)
    ).real * math.sin(2.0 * rel.theta)
    interference = cross if j == 1 else -cross
    return DecompositionResult(
        total=classical + interference,
        classical_part=classical,
        interference=interference,
        target_question=b,
        target_outcome=j,
    )


def mixed_state_total_probability(
    rho: MixedState, a: Question, b: Question, j: int
) -> float:
    """Law of total probability for a state diagonal in ``a``'s basis.

    Diagonal mixtures carry no interference term, so the result is exactly
    the classical two-path sum and can never fall below P(a1) P(b_j | a1).
    """
    if j not in (0, 1):
        raise ValidationError(f"outcome must be 0 or 1, got {j!r}")
    from .observables import eigenvectors_in_reference

    a0, a1 = eigenvectors_in_reference(a)
    off = (
        a0.amp0.conjugate() * (rho.m00 * a1.amp0 + rho.m01 * a1.amp1)
        + a0.amp1.conjugate() * (rho.m10 * a1.amp0 + rho.m11 * a1.amp1)
    )
    if abs(off) > 1e-12:
        raise PreconditionError(
            f"state is not diagonal in the {a.name} basis (off-diagonal {off!r})"
        )
    p_a0 = rho.expectation(a0)
    p_a1 = rho.expectation(a1)
    return p_a0 * conditional_probability(a, 0, b, j) + p_a1 * conditional_probability(
        a, 1, b, j
    )


def _fallacy_data(
    s: PureState, a: Question, b: Question
) -> tuple[DecompositionResult, DecompositionResult, FallacyReport]:
    dec_b = decompose_total_probability(s, a, b, 1)
    dec_a = decompose_total_probability(s, b, a, 1)
    rho = density_from_pure(s)
    p_a1 = outcome_probability(rho, a, 1)
    p_b1 = outcome_probability(rho, b, 1)
    cond = conditional_probability(a, 1, b, 1)
    thr_b = p_a1 * cond
    thr_a = p_b1 * cond
    fallacy_b = p_b1 < thr_b - FALLACY_GUARD
    fallacy_a = p_a1 < thr_a - FALLACY_GUARD
    reverse_b = (p_b1 > thr_b + FALLACY_GUARD) and dec_b.interference > 0.0
    reverse_a = (p_a1 > thr_a + FALLACY_GUARD) and dec_a.interference > 0.0
    report = FallacyReport(
        fallacy_on_b=fallacy_b,
        fallacy_on_a=fallacy_a,
        reverse_on_b=reverse_b,
        reverse_on_a=reverse_a,
        margins=(thr_b - p_b1, thr_a - p_a1, p_b1 - thr_b, p_a1 - thr_a),
    )
    return dec_b, dec_a, report


def fallacy_report(s: PureState, a: Question, b: Question) -> FallacyReport:
    """Direct fallacy check from probabilities: P(b1) against P(a1)P(b1|a1)
    and symmetrically for the a side, with a 1e-12 guard band so boundary
    cells are deterministic."""
    return _fallacy_data(s, a, b)[2]


def fallacy_inequalities(theta_a: float, theta: float) -> tuple[bool, bool]:
    """Closed-form fallacy conditions for real amplitudes (phi = 0).

    b side:  1 + 2 tan(theta_a) cotan(theta) < 0
    a side:  1 - 2 tan(theta_a + theta) cotan(theta) < 0

    The a side uses the rotated amplitude angle theta_a + theta produced by
    the basis transformation used everywhere in this package.  Raises
    :class:`SingularityError` within 1e-9 of any tan/cotan pole.
    """
    cos_a = math.cos(theta_a)
    sin_t = math.sin(theta)
    cos_ab = math.cos(theta_a + theta)
    if abs(cos_a) < POLE_GUARD or abs(sin_t) < POLE_GUARD or abs(cos_ab) < POLE_GUARD:
        raise SingularityError(
            f"tan/cotan pole near theta_a={theta_a!r}, theta={theta!r}"
        )
    cot_t = math.cos(theta) / sin_t
    b_side = 1.0 + 2.0 * math.tan(theta_a) * cot_t < 0.0
    a_side = 1.0 - 2.0 * math.tan(theta_a + theta) * cot_t < 0.0
    return b_side, a_side


def classify_regime(theta: float) -> RegimeClass:
    """Correlation regime bands with fixed pi/8 half-widths.

    Band edges are assigned to the lower class so rasters are reproducible.
    The intermediate class is unreachable under the default bands but kept
    for configurable variants.
    """
    t = theta % math.pi
    if t <= math.pi / 8.0:
        return RegimeClass.CORRELATED
    if t <= 3.0 * math.pi / 8.0:
        return RegimeClass.UNCORRELATED
    if t > 3.0 * math.pi / 8.0:
        return RegimeClass.ANTICORRELATED
    return RegimeClass.INTERMEDIATE


def sweep_fallacy_map(
    theta_grid: GridRange, theta_a_grid: GridRange, phi: float
) -> list[SweepCell]:
    """Rasterize fallacy structure over (theta, theta_a), row-major in theta.

    Each cell prepares the real state with angle theta_a, relates question b
    to the reference by (theta, phi), and records both decompositions, the
    flag report and the correlation regime.  Cells are independent and the
    output order is deterministic.
    """
    reference = Question("a")
    cells: list[SweepCell] = []
    for theta in theta_grid.values():
        b = Question("b", BasisRelation(theta, phi))
        regime = classify_regime(theta)
        for theta_a in theta_a_grid.values():
            s = pure_from_angles(theta_a, 0.0)
            dec_b, dec_a, report = _fallacy_data(s, reference, b)
            cells.append(
                SweepCell(
                    theta=theta,
                    theta_a=theta_a,
                    phi=phi,
                    decomposition_b=dec_b,
                    decomposition_a=dec_a,
                    report=report,
                    regime=regime,
                )
            )
    return cells


def underextension_estimate(
    s: PureState, a: Question, b: Question
) -> UnderextensionEstimate:
    """Bracket mu(A and B) by the two ordered chain probabilities and derive
    the inclusion-exclusion range for mu(A or B)."""
    from .measurement import OutcomeStep, consecutive_probability

    rho = density_from_pure(s)
    mu_a = outcome_probability(rho, a, 1)
    mu_b = outcome_probability(rho, b, 1)
    p_ab = consecutive_probability(rho, [OutcomeStep(a, 1), OutcomeStep(b, 1)])
    p_ba = consecutive_probability(rho, [OutcomeStep(b, 1), OutcomeStep(a, 1)])
    and_low, and_high = min(p_ab, p_ba), max(p_ab, p_ba)
    or_low = mu_a + mu_b - and_high
    or_high = mu_a + mu_b - and_low
    return UnderextensionEstimate(
        and_low=and_low,
        and_high=and_high,
        or_low=or_low,
        or_high=or_high,
        mu_a=mu_a,
        mu_b=mu_b,
        underextension=(or_high < mu_a or or_high < mu_b),
    )


def uncertainty_sum_minimum(
    a: Question, b: Question, grid_steps: int
) -> tuple[float, tuple[float, float]]:
    """Grid-search minimum of variance(a) + variance(b) over pure states.

    Scans state angles theta_s in [0, pi) and phi_s in [0, 2*pi) on a
    grid_steps x grid_steps lattice.  The value is an upper bound on the
    true variance-sum floor and converges to it as the grid refines.
    """
    if grid_steps < 8:
        raise ValidationError(f"grid_steps must be >= 8, got {grid_steps}")
    import numpy as np

    from .observables import eigenvectors_in_reference

    va = eigenvectors_in_reference(a)[1]
    vb = eigenvectors_in_reference(b)[1]
    theta_s = np.linspace(0.0, math.pi, grid_steps, endpoint=False)
    phi_s = np.linspace(0.0, 2.0 * math.pi, grid_steps, endpoint=False)
    amp0 = np.cos(theta_s)[:, None] * np.ones_like(phi_s)[None, :]
    amp1 = np.sin(theta_s)[:, None] * np.exp(1j * phi_s)[None, :]

    def p1(v):
        ov = np.conj(v.amp0) * amp0 + np.conj(v.amp1) * amp1
        return np.abs(ov) ** 2

    pa, pb = p1(va), p1(vb)
    var_sum = pa * (1.0 - pa) + pb * (1.0 - pb)
    idx = np.unravel_index(np.argmin(var_sum), var_sum.shape)
    return float(var_sum[idx]), (float(theta_s[idx[0]]), float(phi_s[idx[1]]))
