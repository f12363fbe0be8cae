"""Entanglement witnesses and the per-stage analytic witness value.

The base witness is the partial transpose of a Bell projector,
W = 1/4 (I(x)I + ZZ - XX - YY), with spectrum {-1/2, 1/2, 1/2, 1/2}:
non-negative on every separable state, -1/2 on the target Bell state.
When the second observer measures unsharply with sharpness lam, each
correlator picks up a factor lam, which is absorbed into the witness as
W(lam) = 1/4 (I(x)I + lam(ZZ - XX - YY)).
"""

import numpy as np

from .measurement import BadSharpness, shrink_factor
from .qmath import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    assert_hermitian,
    ket_density,
    tensor,
)

IMAG_RESIDUE_TOL = 1e-12


class BadSchedule(ValueError):
    """Sharpness schedule or state amplitude product outside its domain."""


def bell_witness() -> np.ndarray:
    """The sharp witness 1/4 (I(x)I + ZZ - XX - YY)."""
    return bell_witness_unsharp(1.0)


def bell_witness_unsharp(lam: float) -> np.ndarray:
    """Effective witness when the Bob-side measurement has sharpness lam."""
    if not 0.0 < lam <= 1.0:
        raise BadSharpness(f"sharpness must lie in (0, 1], got {lam}")
    return (
        tensor(IDENTITY2, IDENTITY2)
        + lam * tensor(SIGMA_Z, SIGMA_Z)
        - lam * tensor(SIGMA_X, SIGMA_X)
        - lam * tensor(SIGMA_Y, SIGMA_Y)
    ) / 4


def witness_expectation(w: np.ndarray, rho: np.ndarray) -> float:
    """Re Tr(W rho); a negative value certifies entanglement."""
    assert_hermitian(w, name="witness")
    value = np.trace(np.asarray(w, dtype=complex) @ np.asarray(rho, dtype=complex))
    if abs(value.imag) > IMAG_RESIDUE_TOL:
        raise ValueError(f"witness expectation has imaginary residue {value.imag:.3e}")
    return float(value.real)


def stage_witness_value(ab: float, schedule) -> float:
    """Witness expectation at stage n = len(schedule) of the cascade.

    The initial state is a|01> + b|10> with amplitude product ab; stages
    1..n-1 apply the averaged channel at their scheduled sharpness, stage n
    measures with sharpness schedule[-1]. Closed form:

        E_n = 1/4 [1 - (1 + 4ab) lam_n  prod_{i<n} f(lam_i)]

    with f the shrink factor. Equal to the matrix-simulated expectation to
    1e-12 (enforced by the verification suite).
    """
    if not 0.0 <= ab <= 0.5:
        raise BadSchedule(f"amplitude product ab must lie in [0, 0.5], got {ab}")
    lams = [float(l) for l in schedule]
    if not lams:
        raise BadSchedule("schedule must contain at least one sharpness value")
    for l in lams:
        if not 0.0 < l <= 1.0:
            raise BadSchedule(f"every scheduled sharpness must lie in (0, 1], got {l}")
    attenuation = 1.0
    for l in lams[:-1]:
        attenuation *= shrink_factor(l)
    return 0.25 * (1.0 - (1.0 + 4.0 * ab) * lams[-1] * attenuation)


def _random_product_state(rng: np.random.Generator) -> np.ndarray:
    kets = []
    for _ in range(2):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        kets.append(v / np.linalg.norm(v))
    return ket_density(np.kron(kets[0], kets[1]))


def sample_separable_states(count: int, seed: int) -> np.ndarray:
    """Seeded separable states, shape (count, 4, 4).

    Each sample mixes up to four Haar-random pure product states with
    uniform-Dirichlet weights, so separability holds by construction.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    out = np.empty((count, 4, 4), dtype=complex)
    for i in range(count):
        k = int(rng.integers(1, 5))
        weights = rng.dirichlet(np.ones(k))
        rho = np.zeros((4, 4), dtype=complex)
        for w in weights:
            rho += w * _random_product_state(rng)
        out[i] = rho
    return out
