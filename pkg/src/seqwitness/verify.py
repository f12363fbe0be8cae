"""Cross-validation suite behind the CLI ``verify`` command.

Three independent checks, each pitting one computation route against
another: the analytic stage value against the full matrix simulation, the
witness against seeded separable states, and the cascade endpoint against
the PPT criterion.
"""

from dataclasses import dataclass

import numpy as np

from .cascade import threshold_cascade
from .measurement import averaged_channel
from .qmath import partial_transpose, pure_entangled_state
from .witness import (
    bell_witness_unsharp,
    sample_separable_states,
    stage_witness_value,
    witness_expectation,
)

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_analytic_matrix_equivalence(
    n_schedules: int = 500, max_stages: int = 14, tol: float = 1e-12, seed: int = DEFAULT_SEED
) -> CheckResult:
    """Analytic stage witness value vs. simulated channels + matrix trace."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_schedules):
        ab = float(rng.uniform(0.0, 0.5))
        n = int(rng.integers(1, max_stages + 1))
        schedule = rng.uniform(0.05, 1.0, size=n)
        analytic = stage_witness_value(ab, schedule)

        a2 = (1.0 + np.sqrt(1.0 - 4.0 * ab * ab)) / 2.0
        rho = pure_entangled_state(a2)
        for lam in schedule[:-1]:
            rho = averaged_channel(rho, float(lam))
        simulated = witness_expectation(bell_witness_unsharp(float(schedule[-1])), rho)
        worst = max(worst, abs(analytic - simulated))
    return CheckResult(
        name="analytic-vs-matrix",
        passed=bool(worst <= tol),
        detail=f"{n_schedules} schedules (<= {max_stages} stages), max |diff| = {worst:.3e}",
    )


def check_witness_nonnegativity(
    n_states: int = 10_000,
    n_lambdas: int = 50,
    floor: float = -1e-10,
    seed: int = DEFAULT_SEED,
) -> CheckResult:
    """Tr(W(lam) rho_s) >= 0 over seeded separable states and a sharpness grid."""
    states = sample_separable_states(n_states, seed)
    lams = np.linspace(1.0 / n_lambdas, 1.0, n_lambdas)
    witnesses = np.stack([bell_witness_unsharp(l) for l in lams])
    values = np.einsum("lij,nji->nl", witnesses, states).real
    worst = float(values.min())

    spot = np.random.default_rng(seed + 1)
    for _ in range(50):  # spot-check the vectorized trace against the scalar API
        i = int(spot.integers(0, n_states))
        j = int(spot.integers(0, n_lambdas))
        direct = witness_expectation(witnesses[j], states[i])
        if abs(direct - values[i, j]) > 1e-13:
            return CheckResult(
                name="witness-nonnegativity",
                passed=False,
                detail=f"vectorized/scalar mismatch {abs(direct - values[i, j]):.3e}",
            )
    return CheckResult(
        name="witness-nonnegativity",
        passed=bool(worst >= floor),
        detail=f"{n_states} states x {n_lambdas} sharpness values, min = {worst:.3e}",
    )


def check_ppt_endpoint(floor: float = -1e-10) -> CheckResult:
    """The maximally entangled cascade's final averaged state must be PPT."""
    report = threshold_cascade(0.5)
    rho = pure_entangled_state(0.5)
    for t in report.thresholds:
        rho = averaged_channel(rho, t)
    min_pt = float(np.linalg.eigvalsh(partial_transpose(rho, "alice")).min())
    return CheckResult(
        name="ppt-endpoint",
        passed=bool(min_pt >= floor),
        detail=f"{report.max_bobs} threshold channels, min PT eigenvalue = {min_pt:.3e}",
    )


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [
        check_analytic_matrix_equivalence(seed=seed),
        check_witness_nonnegativity(seed=seed),
        check_ppt_endpoint(),
    ]
