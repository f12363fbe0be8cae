"""Entanglement and quantum-correlation quantifiers.

Logarithms are base 2 throughout; entropies and discord are in bits.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .qmath import (
    PAULIS,
    assert_valid_state,
    partial_trace,
    partial_transpose,
    pauli_decompose,
)

# Numeric discord search: coarse sphere grid (azimuth x polar), then local
# refinement of the conditional-entropy objective.
GRID_AZIMUTH = 181
GRID_POLAR = 91
REFINE_TOL = 1e-10
_PROB_FLOOR = 1e-14

DISCORD_CONVENTIONS = ("all-threshold", "last-sharp", "post-alice")


@dataclass(frozen=True)
class DiscordReport:
    """Quantum discord of a state, with the optimizing measurement direction."""

    discord: float
    classical_correlation: float
    mutual_information: float
    best_direction: tuple[float, float, float]
    method: str  # "closed_form" or "numeric"


def pure_state_entanglement(a2: float) -> float:
    """Binary entropy H(a^2) in ebits for the pure state a|01> + b|10>."""
    if not 0.0 <= a2 <= 1.0:
        raise ValueError(f"a2 must lie in [0, 1], got {a2}")
    return _binary_entropy(a2)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def _binary_entropy_arr(x: np.ndarray) -> np.ndarray:
    inside = (x > 0.0) & (x < 1.0)
    safe = np.where(inside, x, 0.5)
    h = -safe * np.log2(safe) - (1.0 - safe) * np.log2(1.0 - safe)
    return np.where(inside, h, 0.0)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-sum lam log2 lam over the spectrum, with 0 log 0 := 0."""
    eigs = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    eigs = eigs[eigs > 1e-15]
    return float(-np.sum(eigs * np.log2(eigs)))


def negativity(rho: np.ndarray) -> float:
    """Sum of |negative eigenvalues| of the partial transpose.

    Zero exactly when the state is separable (two-qubit case).
    """
    assert_valid_state(rho)
    eigs = np.linalg.eigvalsh(partial_transpose(rho, "alice"))
    neg = eigs[eigs < 0]
    return float(-neg.sum()) if neg.size else 0.0


def mutual_information(rho: np.ndarray) -> float:
    """S(A) + S(B) - S(AB) in bits."""
    return (
        von_neumann_entropy(partial_trace(rho, "bob"))
        + von_neumann_entropy(partial_trace(rho, "alice"))
        - von_neumann_entropy(rho)
    )


def _direction(theta: float, phi: float) -> np.ndarray:
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _conditional_entropy_batch(rho: np.ndarray, dirs: np.ndarray, measured_side: str) -> np.ndarray:
    """Average post-measurement entropy of the unmeasured side, one value per direction."""
    r4 = rho.reshape(2, 2, 2, 2)
    sig = np.stack(PAULIS)
    n_sigma = np.einsum("nk,kij->nij", dirs, sig)
    eye = np.broadcast_to(np.eye(2, dtype=complex), n_sigma.shape)
    projs = np.stack([(eye + n_sigma) / 2, (eye - n_sigma) / 2])  # (2, N, 2, 2)

    if measured_side == "bob":
        # conditioned states live on Alice: contract Bob indices with the projector
        cond = np.einsum("ikjl,onlk->onij", r4, projs)
    elif measured_side == "alice":
        cond = np.einsum("ikjl,onji->onkl", r4, projs)
    else:
        raise ValueError(f"measured_side must be 'alice' or 'bob', got {measured_side!r}")

    probs = np.einsum("onii->on", cond).real  # (2, N)
    # closed-form 2x2 spectrum of the normalized conditioned states
    a = cond[..., 0, 0].real
    d = cond[..., 1, 1].real
    b = cond[..., 0, 1]
    mean = (a + d) / 2
    disc = np.sqrt(((a - d) / 2) ** 2 + np.abs(b) ** 2)
    out = np.zeros(dirs.shape[0])
    for branch in range(2):
        p = probs[branch]
        safe = np.maximum(p, _PROB_FLOOR)
        lam_hi = np.clip((mean[branch] + disc[branch]) / safe, 0.0, 1.0)
        out += np.where(p > _PROB_FLOOR, p * _binary_entropy_arr(lam_hi), 0.0)
    return out


def _conditional_entropy(rho: np.ndarray, theta: float, phi: float, measured_side: str) -> float:
    dirs = _direction(theta, phi)[None, :]
    return float(_conditional_entropy_batch(rho, dirs, measured_side)[0])


def _is_bell_diagonal(form, tol: float = 1e-10) -> bool:
    off = form.T - np.diag(np.diag(form.T))
    return (
        np.max(np.abs(form.r)) <= tol
        and np.max(np.abs(form.s)) <= tol
        and np.max(np.abs(off)) <= tol
    )


def discord(rho: np.ndarray, measured_side: str = "bob", method: str = "auto") -> DiscordReport:
    """Quantum discord: mutual information minus maximal classical correlation.

    The classical correlation maximizes, over rank-1 projective measurements
    on ``measured_side``, the entropy reduction of the other side. For
    Bell-diagonal states the minimizing measurement axis is the correlation
    axis of largest magnitude, giving a closed form; otherwise a coarse
    sphere grid (``GRID_AZIMUTH`` x ``GRID_POLAR``) seeds a local refinement.
    Grid ties are broken by smallest polar angle, then smallest azimuth.

    ``method`` is "auto", "closed_form", or "numeric".
    """
    assert_valid_state(rho)
    rho = np.asarray(rho, dtype=complex)
    form = pauli_decompose(rho)

    if method not in ("auto", "closed_form", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    use_closed = method == "closed_form" or (method == "auto" and _is_bell_diagonal(form))
    if method == "closed_form" and not _is_bell_diagonal(form):
        raise ValueError("closed form requires a Bell-diagonal state (r = s = 0, diagonal T)")

    info = mutual_information(rho)
    if use_closed:
        c_abs = np.abs(np.diag(form.T))
        # tie order z, x, y mirrors the polar-then-azimuth grid tie-break
        axis = [2, 0, 1][int(np.argmax(np.round(c_abs[[2, 0, 1]], 12)))]
        c = float(c_abs[axis])
        classical = 1.0 - _binary_entropy((1.0 + c) / 2.0)
        direction = tuple(1.0 if k == axis else 0.0 for k in range(3))
        return DiscordReport(
            discord=info - classical,
            classical_correlation=classical,
            mutual_information=info,
            best_direction=direction,
            method="closed_form",
        )

    marginal = partial_trace(rho, measured_side)  # trace out the measured side
    s_unmeasured = von_neumann_entropy(marginal)

    thetas = np.linspace(0.0, np.pi, GRID_POLAR)
    phis = np.linspace(0.0, 2.0 * np.pi, GRID_AZIMUTH)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")  # polar-major for tie-breaking
    dirs = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    ).reshape(-1, 3)
    values = _conditional_entropy_batch(rho, dirs, measured_side)
    # first grid index within tolerance of the minimum: smallest polar angle,
    # then smallest azimuth, wins among ties (flat directions on isotropic states)
    best = int(np.argmax(values <= values.min() + 1e-12))
    theta0, phi0 = tt.reshape(-1)[best], pp.reshape(-1)[best]

    res = minimize(
        lambda x: _conditional_entropy(rho, x[0], x[1], measured_side),
        x0=np.array([theta0, phi0]),
        method="Nelder-Mead",
        options={"xatol": 1e-8, "fatol": REFINE_TOL, "maxiter": 400},
    )
    # only a strict improvement displaces the grid optimum, so that the
    # polar-then-azimuth tie-break survives flat (isotropic) objectives
    if res.fun < values[best] - 1e-12:
        cond_entropy = float(res.fun)
        direction = _direction(res.x[0], res.x[1])
    else:
        cond_entropy = float(values[best])
        direction = dirs[best]
    direction = direction / np.linalg.norm(direction)
    # n and -n define the same projective measurement; canonicalize the sign
    lead = int(np.argmax(np.abs(direction)))
    if direction[lead] < 0:
        direction = -direction

    classical = s_unmeasured - cond_entropy
    return DiscordReport(
        discord=info - classical,
        classical_correlation=classical,
        mutual_information=info,
        best_direction=tuple(float(x) for x in direction),
        method="numeric",
    )
