"""Dense linear algebra for 2x2 and 4x4 Hermitian operators.

Conventions, fixed globally:
  * tensor ordering is Alice (x) Bob, basis |00>, |01>, |10>, |11>;
  * states are plain complex ndarrays (density matrices), validated by
    ``assert_valid_state`` at channel boundaries;
  * the Pauli form of a two-qubit operator is
        rho = 1/4 (I(x)I + r.sigma(x)I + I(x)s.sigma + sum_kl T_kl sigma_k(x)sigma_l).
"""

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.setflags(write=False)


class NotHermitian(ValueError):
    """Raised when an operation requires a Hermitian operator and gets none."""


class InvalidState(ValueError):
    """Raised when a matrix fails the density-operator invariants."""


class PauliForm(NamedTuple):
    """Bloch vectors and correlation matrix of a two-qubit Hermitian operator."""

    r: np.ndarray  # Alice Bloch vector, shape (3,)
    s: np.ndarray  # Bob Bloch vector, shape (3,)
    T: np.ndarray  # correlation matrix, shape (3, 3)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product in the fixed Alice(x)Bob convention."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def assert_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "operator") -> None:
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"{name} is not Hermitian: max |M - M^dag| = {defect:.3e} > {tol:.0e}")


def hermitian_eigs(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, real) and orthonormal eigenvector columns.

    Raises NotHermitian if the input asymmetry exceeds ``HERMITIAN_TOL``.
    """
    m = np.asarray(m, dtype=complex)
    assert_hermitian(m)
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def partial_trace(m: np.ndarray, side: str) -> np.ndarray:
    """Trace out one subsystem (``side`` in {"alice", "bob"}); returns 2x2."""
    r = np.asarray(m, dtype=complex).reshape(2, 2, 2, 2)
    if side == "alice":
        return np.einsum("ikil->kl", r)
    if side == "bob":
        return np.einsum("ikjk->ij", r)
    raise ValueError(f"side must be 'alice' or 'bob', got {side!r}")


def partial_transpose(m: np.ndarray, side: str = "alice") -> np.ndarray:
    """Transpose one tensor factor. Involution: applying twice returns the input."""
    r = np.asarray(m, dtype=complex).reshape(2, 2, 2, 2)
    if side == "alice":
        return r.transpose(2, 1, 0, 3).reshape(4, 4)
    if side == "bob":
        return r.transpose(0, 3, 2, 1).reshape(4, 4)
    raise ValueError(f"side must be 'alice' or 'bob', got {side!r}")


def pauli_decompose(m: np.ndarray) -> PauliForm:
    """Extract (r, s, T) via r_k = Tr[m (sigma_k(x)I)] etc. Requires Hermitian input."""
    m = np.asarray(m, dtype=complex)
    assert_hermitian(m)
    r = np.array([np.trace(m @ tensor(p, IDENTITY2)).real for p in PAULIS])
    s = np.array([np.trace(m @ tensor(IDENTITY2, p)).real for p in PAULIS])
    T = np.array(
        [[np.trace(m @ tensor(pk, pl)).real for pl in PAULIS] for pk in PAULIS]
    )
    return PauliForm(r=r, s=s, T=T)


def pauli_compose(p: PauliForm) -> np.ndarray:
    """Rebuild the 4x4 operator; the fixed 1/4 identity weight makes the trace 1."""
    r, s, T = p
    out = tensor(IDENTITY2, IDENTITY2).astype(complex)
    for k in range(3):
        out += r[k] * tensor(PAULIS[k], IDENTITY2)
        out += s[k] * tensor(IDENTITY2, PAULIS[k])
        for l in range(3):
            out += T[k, l] * tensor(PAULIS[k], PAULIS[l])
    return out / 4


def min_eigenvalue(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(np.asarray(m, dtype=complex)).min())


def assert_valid_state(rho: np.ndarray, name: str = "state") -> None:
    """Check the density-operator invariants: Hermitian, unit trace, PSD.

    The PSD slack of -1e-10 tolerates the ~1e-15 rounding that averaging
    channels introduce while still catching genuine negativity.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidState(f"{name} must be 4x4, got shape {rho.shape}")
    defect = hermiticity_defect(rho)
    if defect > HERMITIAN_TOL:
        raise InvalidState(f"{name} not Hermitian: defect {defect:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidState(f"{name} trace {tr:.15g} != 1")
    lo = min_eigenvalue(rho)
    if lo < -PSD_TOL:
        raise InvalidState(f"{name} not PSD: min eigenvalue {lo:.3e}")


# ---------------------------------------------------------------------------
# Reference states
# ---------------------------------------------------------------------------

def ket_density(ket: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a (normalized) state vector."""
    v = np.asarray(ket, dtype=complex)
    return np.outer(v, v.conj())


def bell_psi_plus() -> np.ndarray:
    """Density matrix of (|01> + |10>)/sqrt(2)."""
    return pure_entangled_state(0.5)


def pure_entangled_state(a2: float) -> np.ndarray:
    """Density matrix of a|01> + b|10> with a = sqrt(a2), b = sqrt(1 - a2)."""
    if not 0.0 <= a2 <= 1.0:
        raise ValueError(f"a2 must lie in [0, 1], got {a2}")
    ket = np.zeros(4, dtype=complex)
    ket[1] = np.sqrt(a2)
    ket[2] = np.sqrt(1.0 - a2)
    return ket_density(ket)


def maximally_mixed() -> np.ndarray:
    return np.eye(4, dtype=complex) / 4


def werner_state(p: float) -> np.ndarray:
    """p |psi+><psi+| + (1-p) I/4; entangled iff p > 1/3."""
    if not -1 / 3 <= p <= 1.0:
        raise ValueError(f"Werner parameter must lie in [-1/3, 1], got {p}")
    return p * bell_psi_plus() + (1.0 - p) * maximally_mixed()
