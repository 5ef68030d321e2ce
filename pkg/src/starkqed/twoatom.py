"""Joint state of two atoms passing sequentially through one cavity.

Both atoms enter in the upper level |e> and spend the same time t in the
cavity.  The first passage entangles atom 1 with the field; the second atom
then sees the modified field, and tracing the field leaves an X-shaped
4x4 two-atom density matrix.  Fock-state and thermal cavity fields are
supported; the thermal average is a Bose-Einstein weighted sum over Fock
inputs, truncated by tail mass.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

from .effective import ModelParams, PassageAmplitudes, _cached_eigensystem, passage_amplitudes

__all__ = [
    "TwoAtomDensityMatrix",
    "ThermalField",
    "joint_density_fock",
    "joint_density_thermal",
    "nbar_from_ratio",
    "thermal_weights",
]

_DEFAULT_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class TwoAtomDensityMatrix:
    """X-structured two-atom reduced state in the (|ee>,|eg>,|ge>,|gg>) basis.

    alpha, gamma, delta, eta are the populations of |e1 e2>, |e1 g2>,
    |g1 e2> and |g1 g2|; epsilon is the coherence between |e1 g2> and
    |g1 e2>.  The trace is 1 for a Fock-field input and 1 minus the
    truncation deficit for a thermal input (reported, not renormalized).
    """

    alpha: float
    gamma: float
    delta: float
    eta: float
    epsilon: complex

    def __post_init__(self):
        populations = (self.alpha, self.gamma, self.delta, self.eta)
        for name, value in zip(("alpha", "gamma", "delta", "eta"), populations):
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            if value < -1e-12 or value > 1.0 + 1e-12:
                raise ValueError(f"population {name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)
        eps = complex(self.epsilon)
        if not (math.isfinite(eps.real) and math.isfinite(eps.imag)):
            raise ValueError("epsilon must be finite")
        if abs(eps) ** 2 > self.gamma * self.delta + 1e-12:
            raise ValueError("|epsilon|^2 exceeds gamma*delta; matrix not positive")
        object.__setattr__(self, "epsilon", eps)

    @property
    def trace(self) -> float:
        return self.alpha + self.gamma + self.delta + self.eta

    @property
    def trace_deficit(self) -> float:
        """Missing weight, nonzero only for truncated thermal averages."""
        return 1.0 - self.trace

    def as_matrix(self) -> np.ndarray:
        """Dense 4x4 complex matrix in the (|ee>,|eg>,|ge>,|gg>) basis."""
        out = np.zeros((4, 4), dtype=complex)
        out[0, 0] = self.alpha
        out[1, 1] = self.gamma
        out[2, 2] = self.delta
        out[3, 3] = self.eta
        out[1, 2] = self.epsilon
        out[2, 1] = np.conj(self.epsilon)
        return out

    def renormalized(self) -> "TwoAtomDensityMatrix":
        """Same state scaled to unit trace (variant behind the thermal flag)."""
        t = self.trace
        if t <= 0.0:
            raise ValueError("cannot renormalize a traceless matrix")
        return TwoAtomDensityMatrix(
            alpha=self.alpha / t,
            gamma=self.gamma / t,
            delta=self.delta / t,
            eta=self.eta / t,
            epsilon=self.epsilon / t,
        )


@dataclass(frozen=True)
class ThermalField:
    """Truncated Bose-Einstein photon-number distribution.

    weights[n] = nbar**n / (1 + nbar)**(n+1) for n = 0..cutoff, kept exact
    (not renormalized); the tail deficit 1 - sum(weights) is reported.
    """

    nbar: float
    cutoff: int
    weights: np.ndarray

    def __post_init__(self):
        if self.nbar < 0.0 or not math.isfinite(self.nbar):
            raise ValueError(f"nbar must be finite and >= 0, got {self.nbar}")
        cutoff = operator.index(self.cutoff)
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (cutoff + 1,):
            raise ValueError("weights must have cutoff + 1 entries")
        if np.any(weights < 0.0) or np.any(np.diff(weights) > 0.0):
            raise ValueError("weights must be non-negative and non-increasing")
        weights.setflags(write=False)
        object.__setattr__(self, "cutoff", cutoff)
        object.__setattr__(self, "weights", weights)

    @property
    def tail_deficit(self) -> float:
        """Exact tail mass (nbar/(1+nbar))**(cutoff+1) beyond the cutoff."""
        if self.nbar == 0.0:
            return 0.0
        return (self.nbar / (1.0 + self.nbar)) ** (self.cutoff + 1)


def nbar_from_ratio(x: float) -> float:
    """Mean thermal photon number 1/(exp(x) - 1) for x = hbar*omega/kT."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"hbar*omega/kT must be > 0, got {x}")
    try:
        return 1.0 / math.expm1(x)
    except OverflowError:
        return 0.0


def thermal_weights(nbar: float, tail_tol: float = _DEFAULT_TAIL_TOL) -> ThermalField:
    """Bose-Einstein weights truncated at the smallest cutoff with tail <= tail_tol."""
    nbar = float(nbar)
    if nbar < 0.0 or not math.isfinite(nbar):
        raise ValueError(f"nbar must be finite and >= 0, got {nbar}")
    if not 0.0 < tail_tol < 1.0:
        raise ValueError(f"tail_tol must lie in (0, 1), got {tail_tol}")
    if nbar == 0.0:
        return ThermalField(nbar=0.0, cutoff=0, weights=np.array([1.0]))
    ratio = nbar / (1.0 + nbar)
    # Tail after cutoff N is ratio**(N+1); find the smallest compliant N.
    cutoff = max(0, math.ceil(math.log(tail_tol) / math.log(ratio)) - 1)
    while ratio ** (cutoff + 1) > tail_tol:
        cutoff += 1
    while cutoff > 0 and ratio**cutoff <= tail_tol:
        cutoff -= 1
    n = np.arange(cutoff + 1)
    weights = nbar**n / (1.0 + nbar) ** (n + 1)
    return ThermalField(nbar=nbar, cutoff=cutoff, weights=weights)


def _xstate_elements(
    first: PassageAmplitudes, second: PassageAmplitudes
) -> tuple[float, float, float, float, complex]:
    """Matrix elements from the amplitudes of sectors n and n+2.

    alpha = (r1^2+s1^2)^2, gamma = (r1^2+s1^2)(r2^2+s2^2),
    delta = (r2^2+s2^2)(r1'^2+s1'^2), eta = (r2^2+s2^2)(r2'^2+s2'^2),
    epsilon = (r2^2+s2^2)(r1 - i s1)(r1' + i s1'),
    where the primed quantities belong to sector n+2.
    """
    stay = first.stay_weight
    transfer = first.transfer_weight
    alpha = stay * stay
    gamma = stay * transfer
    delta = transfer * second.stay_weight
    eta = transfer * second.transfer_weight
    epsilon = transfer * first.amp_stay * np.conj(second.amp_stay)
    return alpha, gamma, delta, eta, complex(epsilon)


def joint_density_fock(params: ModelParams, t: float, n0: int) -> TwoAtomDensityMatrix:
    """Two-atom reduced state after both passages, cavity initially in |n0>.

    Both atoms start in |e>; the second atom sees sector n0 + 2 on the
    branch where the first atom emitted.
    """
    n0 = operator.index(n0)
    if n0 < 0:
        raise ValueError(f"initial Fock index must be >= 0, got {n0}")
    first = passage_amplitudes(_cached_eigensystem(params, n0), t)
    second = passage_amplitudes(_cached_eigensystem(params, n0 + 2), t)
    alpha, gamma, delta, eta, epsilon = _xstate_elements(first, second)
    return TwoAtomDensityMatrix(alpha=alpha, gamma=gamma, delta=delta, eta=eta, epsilon=epsilon)


def joint_density_thermal(
    params: ModelParams,
    t: float,
    field: ThermalField,
    renormalize: bool = False,
) -> TwoAtomDensityMatrix:
    """Thermally averaged two-atom reduced state.

    Each element is the P_n weighted sum of the corresponding Fock-input
    element over n = 0..cutoff, summed in ascending n.  The truncated trace
    deficit is kept unless ``renormalize`` is set.
    """
    amps = [
        passage_amplitudes(_cached_eigensystem(params, n), t)
        for n in range(field.cutoff + 3)
    ]
    alpha = gamma = delta = eta = 0.0
    epsilon = 0.0 + 0.0j
    for n in range(field.cutoff + 1):
        w = field.weights[n]
        a, g, d, e, eps = _xstate_elements(amps[n], amps[n + 2])
        alpha += w * a
        gamma += w * g
        delta += w * d
        eta += w * e
        epsilon += w * eps
    rho = TwoAtomDensityMatrix(alpha=alpha, gamma=gamma, delta=delta, eta=eta, epsilon=epsilon)
    return rho.renormalized() if renormalize else rho
