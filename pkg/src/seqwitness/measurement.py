"""Unsharp two-outcome measurements and the direction-averaged channel.

An unsharp measurement along unit direction n with sharpness lam in (0, 1]
has effects E(+-) = (I +- lam n.sigma)/2. The post-measurement state follows
the generalized Lueders rule rho -> sqrt(E) rho sqrt(E) / p with
p = Tr(E rho); no extra unitary is applied (it would cancel in the averaged
channel anyway).

An observer who is ignorant of the previous observer's setting and outcome
sees the uniform average over the three witness directions {x, y, z} and
both outcomes. On the Pauli form this shrinks the measured side's Bloch
vector and the correlation matrix by f(lam) = (1 + 2 sqrt(1 - lam^2))/3.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .qmath import (
    IDENTITY2,
    PAULIS,
    PauliForm,
    assert_valid_state,
    tensor,
)

ZERO_PROBABILITY_TOL = 1e-14

AXES = (
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)


class BadSharpness(ValueError):
    """Sharpness parameter outside (0, 1]."""


class BadDirection(ValueError):
    """Measurement direction is not a unit 3-vector."""


class ZeroProbability(ValueError):
    """Requested outcome has probability below the numerical floor."""


def _check_sharpness(lam: float) -> None:
    if not 0.0 < lam <= 1.0:
        raise BadSharpness(f"sharpness must lie in (0, 1], got {lam}")


@dataclass(frozen=True)
class Effect:
    """One unsharp measurement effect: direction, outcome sign, sharpness."""

    direction: tuple[float, float, float]
    outcome: int  # +1 or -1
    sharpness: float

    def __post_init__(self):
        _check_sharpness(self.sharpness)
        n = np.asarray(self.direction, dtype=float)
        if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
            raise BadDirection(f"direction must be a unit 3-vector, got {self.direction}")
        if self.outcome not in (+1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {self.outcome}")
        object.__setattr__(self, "direction", tuple(float(x) for x in n))


class MeasuredOutcome(NamedTuple):
    state: np.ndarray
    probability: float


def _direction_operator(direction) -> np.ndarray:
    n = np.asarray(direction, dtype=float)
    return n[0] * PAULIS[0] + n[1] * PAULIS[1] + n[2] * PAULIS[2]


def effect_operator(e: Effect) -> np.ndarray:
    """(I +- lam n.sigma)/2: Hermitian, PSD, and E+ + E- = I by construction."""
    return (IDENTITY2 + e.outcome * e.sharpness * _direction_operator(e.direction)) / 2


def sqrt_effect(e: Effect) -> np.ndarray:
    """Operator square root of the effect.

    The effect has eigenvalues (1 +- lam)/2 on the projectors P(+-) along the
    measurement direction, so the root is
    sqrt((1+lam)/2) P(+) + sqrt((1-lam)/2) P(-) for outcome +1, swapped for -1.
    """
    n_sigma = _direction_operator(e.direction)
    p_out = (IDENTITY2 + e.outcome * n_sigma) / 2
    p_other = IDENTITY2 - p_out
    alpha = np.sqrt((1.0 + e.sharpness) / 2.0)
    beta = np.sqrt((1.0 - e.sharpness) / 2.0)
    return alpha * p_out + beta * p_other


def _embed(op2: np.ndarray, side: str) -> np.ndarray:
    if side == "bob":
        return tensor(IDENTITY2, op2)
    if side == "alice":
        return tensor(op2, IDENTITY2)
    raise ValueError(f"side must be 'alice' or 'bob', got {side!r}")


def luders_update(rho: np.ndarray, e: Effect, side: str = "bob") -> MeasuredOutcome:
    """Post-measurement state and probability of one outcome branch.

    Raises ZeroProbability when the branch probability falls below 1e-14,
    where the normalizing division is numerically meaningless.
    """
    assert_valid_state(rho, "input state")
    prob = float(np.trace(_embed(effect_operator(e), side) @ rho).real)
    if prob < ZERO_PROBABILITY_TOL:
        raise ZeroProbability(
            f"outcome {e.outcome:+d} along {e.direction} has probability {prob:.3e}"
        )
    k = _embed(sqrt_effect(e), side)
    post = (k @ rho @ k) / prob
    assert_valid_state(post, "post-measurement state")
    return MeasuredOutcome(state=post, probability=prob)


def averaged_channel(rho: np.ndarray, lam: float, side: str = "bob") -> np.ndarray:
    """Average of sqrt(E) rho sqrt(E) over directions {x, y, z} and both outcomes.

    Models the state handed to an observer who does not know what was
    measured. The direction set is fixed to the three witness settings and
    is deliberately not configurable.
    """
    _check_sharpness(lam)
    assert_valid_state(rho, "input state")
    out = np.zeros((4, 4), dtype=complex)
    for axis in AXES:
        for sign in (+1, -1):
            k = _embed(sqrt_effect(Effect(tuple(axis), sign, lam)), side)
            out += k @ rho @ k
    out /= 3.0
    assert_valid_state(out, "averaged state")
    return out


def shrink_factor(lam: float) -> float:
    """f(lam) = (1 + 2 sqrt(1 - lam^2))/3, the per-measurement attenuation."""
    _check_sharpness(lam)
    return (1.0 + 2.0 * np.sqrt(1.0 - lam * lam)) / 3.0


def averaged_channel_pauli(p: PauliForm, lam: float, side: str = "bob") -> PauliForm:
    """Fast path of ``averaged_channel`` on the Pauli form.

    The unmeasured side's Bloch vector is untouched; the measured side's
    Bloch vector and every correlation component shrink by f(lam).
    """
    f = shrink_factor(lam)
    if side == "bob":
        return PauliForm(r=p.r.copy(), s=f * p.s, T=f * p.T)
    if side == "alice":
        return PauliForm(r=f * p.r, s=p.s.copy(), T=f * p.T)
    raise ValueError(f"side must be 'alice' or 'bob', got {side!r}")
