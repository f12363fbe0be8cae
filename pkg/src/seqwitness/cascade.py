"""Sequential-observer protocol: threshold recursion, observer counts, sweeps.

Stage n of the cascade detects entanglement iff

    (1 + 4ab) lam_n  prod_{i<n} f(lam_i)  >  1      (strict),

so the minimal sharpness usable at stage n+1 follows from the stage-n
threshold by t -> 3t / (1 + 2 sqrt(1 - t^2)). Thresholds increase strictly;
the maximal observer count is the number of thresholds strictly below 1.
Detection requires a strictly negative witness value: thresholds are infima
and equality detects nothing.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import correlations
from .measurement import averaged_channel, shrink_factor
from .qmath import PauliForm, pauli_decompose, pure_entangled_state

STRICT_TOL = 1e-12
ENTROPY_BISECT_TOL = 1e-12
BOUNDARY_TOL = 1e-6


class OutOfRange(ValueError):
    """Argument outside the admissible range of a cascade operation."""


class SweepPoint(NamedTuple):
    entanglement: float
    max_bobs: int


class EqualLambdaPoint(NamedTuple):
    sharpness: float
    entanglement: float
    max_bobs: int


@dataclass(frozen=True)
class CascadeReport:
    """Thresholds and final state of one unequal-sharpness cascade.

    ``stage_negativities[i]`` is the negativity of the state the (i+1)-th
    observer receives; ``final_negativity`` is that of the state left for
    the first observer whose threshold exceeds 1. This records whether the
    PPT criterion still certifies entanglement once the witness cannot.
    """

    ab: float
    contrast: float  # 1 + 4ab
    thresholds: tuple[float, ...]
    max_bobs: int
    next_threshold: float
    product_state: bool
    final_state: PauliForm
    stage_negativities: tuple[float, ...]
    final_negativity: float


def _check_ab(ab: float) -> None:
    if not 0.0 <= ab <= 0.5 + STRICT_TOL:
        raise OutOfRange(f"amplitude product ab must lie in [0, 0.5], got {ab}")


def ab_to_a2(ab: float) -> float:
    """Larger squared amplitude with a*b = ab and a^2 + b^2 = 1."""
    _check_ab(ab)
    return (1.0 + np.sqrt(max(0.0, 1.0 - 4.0 * ab * ab))) / 2.0


def next_threshold(t: float) -> float:
    """Sharpness threshold of the following stage: 3t / (1 + 2 sqrt(1 - t^2))."""
    if not 0.0 < t <= 1.0:
        raise OutOfRange(f"threshold must lie in (0, 1], got {t}")
    return 3.0 * t / (1.0 + 2.0 * np.sqrt(1.0 - t * t))


def threshold_cascade(ab: float) -> CascadeReport:
    """Run the unequal-sharpness cascade for the state a|01> + b|10>.

    The first threshold is 1/(1 + 4ab); each later one follows by
    ``next_threshold``. Observers are counted while the threshold stays
    strictly below 1 (tolerance 1e-12). The final state applies every
    counted threshold channel, at the limiting threshold values themselves,
    to the initial state.
    """
    _check_ab(ab)
    contrast = 1.0 + 4.0 * ab
    product_state = contrast <= 1.0 + STRICT_TOL

    thresholds: list[float] = []
    if not product_state:
        t = 1.0 / contrast
        while t < 1.0 - STRICT_TOL:
            thresholds.append(t)
            t = next_threshold(t)
        next_t = t
    else:
        next_t = 1.0

    rho = pure_entangled_state(ab_to_a2(ab))
    stage_negativities = []
    for t in thresholds:
        stage_negativities.append(correlations.negativity(rho))
        rho = averaged_channel(rho, t)

    return CascadeReport(
        ab=ab,
        contrast=contrast,
        thresholds=tuple(thresholds),
        max_bobs=len(thresholds),
        next_threshold=next_t,
        product_state=product_state,
        final_state=pauli_decompose(rho),
        stage_negativities=tuple(stage_negativities),
        final_negativity=correlations.negativity(rho),
    )


def max_bobs_equal(ab: float, lam: float) -> int:
    """Largest n with (1 + 4ab) lam f(lam)^(n-1) > 1 when all observers share lam."""
    _check_ab(ab)
    f = shrink_factor(lam)
    g = (1.0 + 4.0 * ab) * lam
    n = 0
    while g > 1.0:
        n += 1
        g *= f
    return n


def entanglement_to_ab(entanglement: float) -> float:
    """Invert the binary entropy: ab with H(a^2) = entanglement, a^2 in [1/2, 1]."""
    if not 0.0 <= entanglement <= 1.0:
        raise OutOfRange(f"entanglement must lie in [0, 1] ebits, got {entanglement}")
    if entanglement == 0.0:
        return 0.0
    if entanglement == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5  # bisect on the smaller squared amplitude
    while hi - lo > ENTROPY_BISECT_TOL:
        mid = (lo + hi) / 2.0
        if correlations.pure_state_entanglement(mid) < entanglement:
            lo = mid
        else:
            hi = mid
    b2 = (lo + hi) / 2.0
    return float(np.sqrt(b2 * (1.0 - b2)))


def sweep_entanglement(grid) -> list[SweepPoint]:
    """Maximal observer count per entanglement value (step-plot data)."""
    points = []
    for e in grid:
        report = threshold_cascade(entanglement_to_ab(e))
        points.append(SweepPoint(entanglement=float(e), max_bobs=report.max_bobs))
    return points


def sweep_lambda(ab: float, grid) -> list[EqualLambdaPoint]:
    """Equal-sharpness observer count per sharpness value (staircase data)."""
    _check_ab(ab)
    ent = correlations.pure_state_entanglement(ab_to_a2(ab))
    return [
        EqualLambdaPoint(
            sharpness=float(lam), entanglement=ent, max_bobs=max_bobs_equal(ab, lam)
        )
        for lam in grid
    ]


def boundary_bisect(n: int) -> float:
    """Minimal entanglement (to 1e-6 ebits) admitting n observers, unequal schedule."""
    top = threshold_cascade(0.5).max_bobs
    if not 1 <= n <= top:
        raise OutOfRange(f"observer count must lie in [1, {top}], got {n}")
    lo, hi = 0.0, 1.0
    while hi - lo > BOUNDARY_TOL:
        mid = (lo + hi) / 2.0
        if threshold_cascade(entanglement_to_ab(mid)).max_bobs >= n:
            hi = mid
        else:
            lo = mid
    return hi


def equal_lambda_boundary(n: int) -> float:
    """Minimal entanglement admitting n observers under a common sharpness.

    n observers succeed for some lambda iff (1 + 4ab) sup_lam lam f(lam)^(n-1)
    exceeds 1, so the boundary follows from the scalar maximum directly.
    """
    if n < 1:
        raise OutOfRange(f"observer count must be >= 1, got {n}")
    res = minimize_scalar(
        lambda lam: -lam * shrink_factor(lam) ** (n - 1),
        bounds=(1e-9, 1.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    best = -float(res.fun)
    contrast_needed = 1.0 / best
    if contrast_needed > 3.0:
        raise OutOfRange(
            f"{n} observers need witness contrast {contrast_needed:.4f} > 3, "
            "unreachable even at maximal entanglement"
        )
    ab = (contrast_needed - 1.0) / 4.0
    b2 = (1.0 - np.sqrt(max(0.0, 1.0 - 4.0 * ab * ab))) / 2.0
    return correlations.pure_state_entanglement(b2)


def final_cascade_state(ab: float = 0.5, convention: str = "all-threshold") -> np.ndarray:
    """Averaged state left after the full threshold cascade.

    Conventions for the last stage (undetermined in the source analysis,
    hence all exposed):
      * "all-threshold": every counted observer measures at the threshold;
      * "last-sharp": the last counted observer measures sharply (lam = 1);
      * "post-alice": "all-threshold", then the projectively measuring
        partner's own three-setting average is applied to her side.
    """
    report = threshold_cascade(ab)
    if report.max_bobs == 0:
        raise OutOfRange("cascade admits no observers; there is no final state")
    if convention not in ("all-threshold", "last-sharp", "post-alice"):
        raise ValueError(f"unknown convention {convention!r}")

    schedule = list(report.thresholds)
    if convention == "last-sharp":
        schedule[-1] = 1.0
    rho = pure_entangled_state(ab_to_a2(ab))
    for lam in schedule:
        rho = averaged_channel(rho, lam)
    if convention == "post-alice":
        rho = averaged_channel(rho, 1.0, side="alice")
    return rho
