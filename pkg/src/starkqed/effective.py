"""Stark-shifted two-photon sector Hamiltonian and single-passage amplitudes.

A ladder-type three-level atom crossing a single-mode cavity undergoes an
effective two-photon transition between its outer levels, |e,n> <-> |g,n+2>,
once the far-detuned intermediate level is eliminated.  Each photon-number
sector n is then a closed 2x2 problem whose eigensystem and time evolution
have exact closed forms.  This module builds the sector matrix, solves it,
and evaluates the transition amplitudes of one atom after an interaction
time t.

Conventions
-----------
* Frequencies (g, delta, beta_e, beta_g, eigenvalues) share one unit; times
  are in the inverse unit.  The natural dimensionless choices are delta/g,
  beta/g and the Rabi angle g*t, with g = 1 internally unless overridden.
* The sector basis is (|e,n>, |g,n+2>).  The amplitude to remain in |e,n>
  is written r1 - i*s1 and the amplitude to reach |g,n+2> is r2 - i*s2, so
  s1, s2 are the negated imaginary quadratures.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "ModelParams",
    "SectorMatrix",
    "EigenSystem",
    "PassageAmplitudes",
    "sector_matrix",
    "eigensystem",
    "passage_amplitudes",
]


@dataclass(frozen=True)
class ModelParams:
    """Inputs of the effective two-photon model (frequency units).

    Parameters
    ----------
    g : float
        Two-photon coupling constant.  The photon-number dependence
        sqrt((n+1)(n+2)) is attached in the sector matrix, so g itself is
        n-independent.  Must be >= 0; a negative coupling is equivalent to
        a basis phase redefinition and is rejected to keep one convention.
    delta : float
        Two-photon detuning omega_e - omega_g - 2*omega.
    beta_e, beta_g : float
        Dynamic Stark shifts of levels e and g per cavity photon.  The
        common simplification beta_e = beta_g is available through
        :meth:`equal_shifts`.
    """

    g: float
    delta: float
    beta_e: float
    beta_g: float

    def __post_init__(self):
        for name in ("g", "delta", "beta_e", "beta_g"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.g < 0.0:
            raise ValueError(f"coupling g must be >= 0, got {self.g}")

    @classmethod
    def equal_shifts(cls, g: float, delta: float, beta: float) -> "ModelParams":
        """Model with a common Stark shift beta_e = beta_g = beta."""
        return cls(g=g, delta=delta, beta_e=beta, beta_g=beta)


@dataclass(frozen=True)
class SectorMatrix:
    """2x2 real symmetric Hamiltonian block of photon sector n.

    Basis (|e,n>, |g,n+2>); entries in frequency units.
    """

    n: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (2, 2):
            raise ValueError(f"sector matrix must be 2x2, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("sector matrix entries must be finite")
        if entries[0, 1] != entries[1, 0]:
            raise ValueError("sector matrix must be symmetric")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form eigensystem of one sector.

    lambda1 >= lambda2 are the eigenvalues; (c1, c2) are the amplitudes of
    |e,n> and |g,n+2> in the lambda1 eigenstate.  The lambda2 eigenstate is
    (c2, -c1), so c1**2 + c2**2 = 1.
    """

    lambda1: float
    lambda2: float
    c1: float
    c2: float


@dataclass(frozen=True)
class PassageAmplitudes:
    """Real quadratures of one atom's transition amplitudes after time t.

    The atom enters in |e,n>; the joint state afterwards is
    (r1 - i*s1)|e,n> + (r2 - i*s2)|g,n+2>.
    """

    r1: float
    s1: float
    r2: float
    s2: float

    @property
    def amp_stay(self) -> complex:
        """Complex amplitude r1 - i*s1 of remaining in |e,n>."""
        return complex(self.r1, -self.s1)

    @property
    def amp_transfer(self) -> complex:
        """Complex amplitude r2 - i*s2 of reaching |g,n+2>."""
        return complex(self.r2, -self.s2)

    @property
    def stay_weight(self) -> float:
        """Probability r1**2 + s1**2 of remaining in the upper level."""
        return self.r1 * self.r1 + self.s1 * self.s1

    @property
    def transfer_weight(self) -> float:
        """Probability r2**2 + s2**2 of the two-photon emission."""
        return self.r2 * self.r2 + self.s2 * self.s2


def sector_matrix(params: ModelParams, n: int) -> SectorMatrix:
    """Hamiltonian block of photon sector n in the (|e,n>, |g,n+2>) basis.

    The diagonal carries the detuning and the photon-number dependent Stark
    shifts, delta/2 + beta_e*n and -delta/2 - beta_g*(n+2); for equal shifts
    this is (delta/2 + beta*n, -(delta/2 + beta*n + 2*beta)).  The
    off-diagonal coupling is g*sqrt((n+1)(n+2)).

    Parameters
    ----------
    params : ModelParams
    n : int
        Photon index of the sector, n >= 0.
    """
    n = operator.index(n)
    if n < 0:
        raise ValueError(f"photon index must be >= 0, got {n}")
    upper = 0.5 * params.delta + params.beta_e * n
    lower = -0.5 * params.delta - params.beta_g * (n + 2)
    coupling = params.g * math.sqrt((n + 1) * (n + 2))
    return SectorMatrix(n=n, entries=np.array([[upper, coupling], [coupling, lower]]))


def eigensystem(m: SectorMatrix) -> EigenSystem:
    """Closed-form eigenvalues and eigenvector coefficients of a sector.

    For entries [[a, c], [c, b]] the branches are
    (a+b)/2 +/- sqrt(((a-b)/2)**2 + c**2); with equal Stark shifts this
    reduces to -beta +/- sqrt((delta/2 + beta*(n+1))**2 + g**2*(n+1)(n+2)).
    The lambda1 eigenvector is proportional to (lambda1 - b, c), which is
    normalized here with c1 >= 0.

    A diagonal sector (c = 0) returns the eigenstates of the basis itself,
    ordered so that lambda1 >= lambda2; the degenerate tie is broken as
    (c1, c2) = (1, 0).
    """
    a = float(m.entries[0, 0])
    b = float(m.entries[1, 1])
    c = float(m.entries[0, 1])
    mean = 0.5 * (a + b)
    half_gap = 0.5 * (a - b)
    radius = math.hypot(half_gap, c)
    lam1 = mean + radius
    lam2 = mean - radius
    # lam1 - b = half_gap + radius >= 0, so c1 >= 0 by construction.
    upper_weight = half_gap + radius
    norm = math.hypot(upper_weight, c)
    if norm == 0.0:
        # c == 0 and a <= b: the larger branch is |g,n+2> unless a == b.
        c1, c2 = (1.0, 0.0) if a == b else (0.0, 1.0)
    else:
        c1 = upper_weight / norm
        c2 = c / norm
    return EigenSystem(lambda1=lam1, lambda2=lam2, c1=c1, c2=c2)


def passage_amplitudes(es: EigenSystem, t: float) -> PassageAmplitudes:
    """Transition amplitudes of an atom entering in |e,n> after time t.

    r1 = c1**2*cos(l1*t) + c2**2*cos(l2*t)
    s1 = c1**2*sin(l1*t) + c2**2*sin(l2*t)
    r2 = c1*c2*(cos(l1*t) - cos(l2*t))
    s2 = c1*c2*(sin(l1*t) - sin(l2*t))

    Equivalently (r1 - i*s1, r2 - i*s2) is the first column of the sector
    propagator exp(-i*M*t).  Negative t is permitted (time reversal).
    """
    t = float(t)
    w1 = es.lambda1 * t
    w2 = es.lambda2 * t
    c1sq = es.c1 * es.c1
    c2sq = es.c2 * es.c2
    cross = es.c1 * es.c2
    cos1, cos2 = math.cos(w1), math.cos(w2)
    sin1, sin2 = math.sin(w1), math.sin(w2)
    return PassageAmplitudes(
        r1=c1sq * cos1 + c2sq * cos2,
        s1=c1sq * sin1 + c2sq * sin2,
        r2=cross * (cos1 - cos2),
        s2=cross * (sin1 - sin2),
    )


@lru_cache(maxsize=8192)
def _cached_eigensystem(params: ModelParams, n: int) -> EigenSystem:
    # Sector solves are pure in (params, n); sweeps over time reuse them.
    return eigensystem(sector_matrix(params, n))
