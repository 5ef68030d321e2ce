"""Concurrence and entanglement of formation for two-qubit states.

The two-atom states produced in this package are X-shaped (only the
|eg><ge| coherence survives the trace over the field), so their Wootters
spectrum has a closed form.  A generic Wootters computation on arbitrary
4x4 density matrices is provided alongside it and doubles as the
cross-check oracle.

Reference: W. K. Wootters, Phys. Rev. Lett. 80, 2245 (1998).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .twoatom import TwoAtomDensityMatrix

__all__ = [
    "EntanglementResult",
    "xstate_spectrum",
    "concurrence",
    "concurrence_generic",
    "wootters_spectrum",
    "rho_tilde",
    "binary_entropy",
    "eof",
    "xstate_entanglement",
]

# sigma_y (x) sigma_y in the (|ee>, |eg>, |ge>, |gg>) basis; real.
_SIGMA_YY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

# Eigenvalues of rho with magnitude below this are treated as exact zeros
# when forming the matrix square root; keeps structurally singular states
# (every Fock-field output has one) from injecting sqrt(eps) noise.
_RANK_TOL = 1e-14


@dataclass(frozen=True)
class EntanglementResult:
    """Concurrence, entanglement of formation and the Wootters spectrum.

    spectrum holds the four eigenvalues of rho * rho_tilde in descending
    order, clamped to be non-negative.
    """

    concurrence: float
    eof: float
    spectrum: tuple[float, float, float, float]


def xstate_spectrum(rho: TwoAtomDensityMatrix) -> np.ndarray:
    """Eigenvalues of rho*rho_tilde for an X state, descending.

    For populations (alpha, gamma, delta, eta) and coherence epsilon the
    spectrum is {alpha*eta, alpha*eta, (sqrt(gamma*delta) + |epsilon|)**2,
    (sqrt(gamma*delta) - |epsilon|)**2}.
    """
    pair = rho.alpha * rho.eta
    root = math.sqrt(rho.gamma * rho.delta)
    mag = abs(rho.epsilon)
    values = np.array([pair, pair, (root + mag) ** 2, (root - mag) ** 2])
    values[::-1].sort()
    return values


def concurrence(rho: TwoAtomDensityMatrix) -> float:
    """Wootters concurrence of an X state via its closed-form spectrum.

    C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) over the
    descending spectrum, which for the X structure equals
    2*max(0, |epsilon| - sqrt(alpha*eta)).
    """
    roots = np.sqrt(xstate_spectrum(rho))
    return max(0.0, roots[0] - roots[1] - roots[2] - roots[3])


def rho_tilde(rho4: np.ndarray) -> np.ndarray:
    """Spin-flipped state (sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)."""
    rho4 = np.asarray(rho4, dtype=complex)
    return _SIGMA_YY @ rho4.conj() @ _SIGMA_YY


def _wootters_roots(rho4: np.ndarray, allow_unnormalized: bool) -> np.ndarray:
    """Square roots of the eigenvalues of rho*rho_tilde, descending.

    Computed as the singular values of sqrt(rho) (YY) sqrt(rho)*, whose
    Gram matrix sqrt(rho) rho_tilde sqrt(rho) is similar to rho*rho_tilde.
    This keeps the roots accurate near zero, where squaring through a
    non-symmetric eigensolve would amplify roundoff to ~sqrt(eps).
    """
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho4.shape}")
    herm_defect = np.max(np.abs(rho4 - rho4.conj().T))
    if herm_defect > 1e-10:
        raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
    trace = float(rho4.trace().real)
    if not allow_unnormalized and abs(trace - 1.0) > 1e-8:
        raise ValueError(f"trace must be 1 within 1e-8, got {trace!r}")
    hermitian = 0.5 * (rho4 + rho4.conj().T)
    w, v = np.linalg.eigh(hermitian)
    if w[0] < -1e-10:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[0]:.3e})")
    w = np.where(w > _RANK_TOL, w, 0.0)
    sqrt_rho = (v * np.sqrt(w)) @ v.conj().T
    m = sqrt_rho @ _SIGMA_YY @ sqrt_rho.conj()
    return np.linalg.svd(m, compute_uv=False)


def wootters_spectrum(rho4: np.ndarray, *, allow_unnormalized: bool = False) -> np.ndarray:
    """Eigenvalues of rho*rho_tilde for an arbitrary state, descending."""
    roots = _wootters_roots(rho4, allow_unnormalized)
    return roots**2


def concurrence_generic(rho4: np.ndarray, *, allow_unnormalized: bool = False) -> float:
    """Wootters concurrence of an arbitrary two-qubit density matrix.

    The input must be Hermitian and PSD within 1e-10 and have unit trace
    within 1e-8 unless ``allow_unnormalized`` records that the caller opts
    into an unnormalized input (e.g. a truncated thermal average).
    """
    roots = _wootters_roots(rho4, allow_unnormalized)
    return max(0.0, roots[0] - roots[1] - roots[2] - roots[3])


def binary_entropy(x: float) -> float:
    """h(x) = -x*log2(x) - (1-x)*log2(1-x), with h(0) = h(1) = 0.

    The x*log2(x) -> 0 boundary limit is taken explicitly rather than
    relying on floating-point behaviour.
    """
    x = float(x)
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise ValueError(f"binary entropy argument must lie in [0, 1], got {x}")
    x = min(max(x, 0.0), 1.0)
    total = 0.0
    if 0.0 < x < 1.0:
        total -= x * math.log2(x)
        total -= (1.0 - x) * math.log2(1.0 - x)
    return total


def eof(c: float) -> float:
    """Entanglement of formation from the concurrence.

    E_F = h((1 + sqrt(1 - C**2)) / 2); strictly increasing on (0, 1].
    Rejects C outside [0, 1] beyond 1e-12 slack.
    """
    c = float(c)
    if c < -1e-12 or c > 1.0 + 1e-12:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def xstate_entanglement(rho: TwoAtomDensityMatrix) -> EntanglementResult:
    """Spectrum, concurrence and entanglement of formation of an X state."""
    spectrum = xstate_spectrum(rho)
    roots = np.sqrt(spectrum)
    c = max(0.0, roots[0] - roots[1] - roots[2] - roots[3])
    return EntanglementResult(
        concurrence=c,
        eof=eof(c),
        spectrum=tuple(float(v) for v in spectrum),
    )
