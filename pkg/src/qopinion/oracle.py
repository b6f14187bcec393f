"""Independent reference computations used only for cross-validation.

Nothing here shares arithmetic with the main modules: the expansions are
written out literally, term by term, so a bug in the production path cannot
hide behind shared code.  Performance is a non-goal.
"""

from __future__ import annotations

import cmath
import math

from .errors import ValidationError
from .observables import BasisRelation
from .states import PureState


def brute_force_outcome_probability(
    s: PureState, rel: BasisRelation, j: int
) -> float:
    """|coefficient|^2 of component ``j`` of ``s`` rewritten in the rotated basis.

    Literal term-by-term expansion of

        s = [a0 cos(t) - a1 sin(t) e^{-i p}] |b0>
          + [a0 sin(t) e^{i p} + a1 cos(t)] |b1>
    """
    if j not in (0, 1):
        raise ValidationError(f"outcome must be 0 or 1, got {j!r}")
    a0, a1 = s.amp0, s.amp1
    t, p = rel.theta, rel.phi
    if j == 0:
        coeff = a0 * math.cos(t) - a1 * math.sin(t) * cmath.exp(-1j * p)
    else:
        coeff = a0 * math.sin(t) * cmath.exp(1j * p) + a1 * math.cos(t)
    return coeff.real * coeff.real + coeff.imag * coeff.imag


def classical_total_probability(
    p_a1: float, cond_b1_given_a0: float, cond_b1_given_a1: float
) -> float:
    """Two-path law of total probability for genuinely classical inputs.

    The result can never fall below p_a1 * cond_b1_given_a1: classically the
    conjunction is never more probable than either single event.
    """
    for name, v in (
        ("p_a1", p_a1),
        ("cond_b1_given_a0", cond_b1_given_a0),
        ("cond_b1_given_a1", cond_b1_given_a1),
    ):
        if not (0.0 <= v <= 1.0):
            raise ValidationError(f"{name} must lie in [0, 1], got {v!r}")
    return (1.0 - p_a1) * cond_b1_given_a0 + p_a1 * cond_b1_given_a1
