"""Inner functions: finite Blaschke products, atomic singular factors,
and products of both.

Evaluation works anywhere in the closed disk away from the boundary
spectrum.  The boundary phase is produced as an exact continuous
increasing lift (no unwrapping heuristics): each Blaschke factor
contributes  theta + 2 Arg(1 - a e^{-i theta}) + (pi - arg a), whose Arg
term stays in (-pi/2, pi/2), and each singular atom (xi_j, w_j)
contributes  w_j cot((theta_j - theta)/2), continuous between its poles.
The lift's derivative is the angular derivative |u'(e^{i theta})| > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import CirclePoint, TWO_PI, canonical_angle, chord_angles
from .errors import DegenerateSymbol, SpectrumPoint

#: Default chordal radius around the spectrum inside which boundary
#: operations refuse to evaluate.
EPS_SPECTRUM = 1e-8

#: Angular-derivative partial sums beyond this cap are reported as inf,
#: standing in for the divergent series on the spectrum.
DERIVATIVE_OVERFLOW_CAP = 1e15


@dataclass(frozen=True)
class FiniteBlaschke:
    """c * prod_k (conj(a_k)/|a_k|) (a_k - z)/(1 - conj(a_k) z); a zero at
    the origin contributes the factor z.  ``accumulation`` declares the
    boundary accumulation points of a truncated infinite family; they are
    treated as spectrum."""

    zeros: tuple[complex, ...]
    constant: complex = 1.0 + 0.0j
    accumulation: tuple[float, ...] = ()

    def __post_init__(self):
        z = tuple(complex(w) for w in self.zeros)
        if any(abs(w) >= 1.0 for w in z):
            raise ValueError("Blaschke zeros must lie strictly inside the disk")
        c = complex(self.constant)
        if abs(abs(c) - 1.0) > 1e-12:
            raise ValueError("front constant must be unimodular")
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "constant", c)
        object.__setattr__(self, "accumulation",
                           tuple(canonical_angle(t) for t in self.accumulation))

    @property
    def degree(self) -> int:
        return len(self.zeros)


@dataclass(frozen=True)
class SingularAtomic:
    """exp(-sum_j w_j (xi_j + z)/(xi_j - z)) with xi_j = e^{i theta_j},
    w_j > 0."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        canon = []
        for theta, w in self.atoms:
            if w <= 0:
                raise ValueError("singular weights must be positive")
            canon.append((canonical_angle(theta), float(w)))
        object.__setattr__(self, "atoms", tuple(canon))


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


InnerFunction = FiniteBlaschke | SingularAtomic | Product


def monomial(k: int) -> FiniteBlaschke:
    """u(z) = z^k."""
    if k < 1:
        raise ValueError("monomial degree must be >= 1")
    return FiniteBlaschke(zeros=(0.0 + 0.0j,) * k)


def spectrum(u: InnerFunction) -> tuple[CirclePoint, ...]:
    """Boundary spectrum: singular atoms plus declared Blaschke
    accumulation points (finite Blaschke parts alone contribute none)."""
    if isinstance(u, FiniteBlaschke):
        return tuple(CirclePoint(t) for t in u.accumulation)
    if isinstance(u, SingularAtomic):
        return tuple(CirclePoint(t) for t, _ in u.atoms)
    pts: list[CirclePoint] = []
    for f in u.factors:
        pts.extend(spectrum(f))
    return tuple(pts)


def evaluate(u: InnerFunction, z):
    """Evaluate u at z (scalar or ndarray), |z| <= 1.

    Raises SpectrumPoint when z hits a singular atom exactly (within
    1e-14 chordal), where no boundary value exists.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    zz = np.atleast_1d(z)
    out = _evaluate(u, zz)
    return complex(out[0]) if scalar else out


def _evaluate(u, z):
    if isinstance(u, FiniteBlaschke):
        out = np.full(z.shape, u.constant, dtype=complex)
        for a in u.zeros:
            if a == 0:
                out *= z
            else:
                out *= (np.conj(a) / abs(a)) * (a - z) / (1.0 - np.conj(a) * z)
        return out
    if isinstance(u, SingularAtomic):
        expo = np.zeros(z.shape, dtype=complex)
        for theta, w in u.atoms:
            xi = np.exp(1j * theta)
            d = xi - z
            if np.any(np.abs(d) < 1e-14):
                raise SpectrumPoint(f"evaluation at singular atom theta={theta}")
            expo -= w * (xi + z) / d
        return np.exp(expo)
    out = np.ones(z.shape, dtype=complex)
    for f in u.factors:
        out *= _evaluate(f, z)
    return out


def _phase_lift(u, theta):
    """Continuous increasing lift of arg u(e^{i theta}) as a function on
    the real line (minus singular-atom poles)."""
    theta = np.asarray(theta, dtype=float)
    total = np.zeros(theta.shape)
    if isinstance(u, FiniteBlaschke):
        total = total + np.angle(u.constant)
        for a in u.zeros:
            if a == 0:
                total = total + theta
            else:
                total = total + theta \
                    + 2.0 * np.angle(1.0 - a * np.exp(-1j * theta)) \
                    + (np.pi - np.angle(a))
        return total
    if isinstance(u, SingularAtomic):
        for tj, w in u.atoms:
            total = total + w / np.tan(0.5 * (tj - theta))
        return total
    for f in u.factors:
        total = total + _phase_lift(f, theta)
    return total


def _check_off_spectrum(u, theta, eps_spec):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    for p in spectrum(u):
        d = chord_angles(theta, p.theta)
        if np.any(d < eps_spec):
            raise SpectrumPoint(
                f"boundary point within {eps_spec:g} of spectrum at theta={p.theta}")


def boundary_phase(u: InnerFunction, theta, anchor: float | None = None,
                   eps_spec: float = EPS_SPECTRUM):
    """Continuous increasing branch of arg u(e^{i theta}).

    The returned lift satisfies exp(i phase) = u(e^{i theta}) and is
    continuous in theta on every arc free of spectrum; its derivative is
    |u'(e^{i theta})|.  ``anchor`` shifts the branch by a multiple of
    2*pi so that the value at the first evaluation point lands within pi
    of the anchor.
    """
    _check_off_spectrum(u, theta, eps_spec)
    ph = _phase_lift(u, theta)
    if anchor is not None:
        ref = ph if np.ndim(ph) == 0 else np.atleast_1d(ph)[0]
        ph = ph + TWO_PI * np.round((anchor - ref) / TWO_PI)
    return float(ph) if np.ndim(theta) == 0 else ph


def angular_derivative(u: InnerFunction, zeta: CirclePoint) -> float:
    """|u'(zeta)| via the boundary-derivative sums:
    sum_k (1-|a_k|^2)/|zeta-a_k|^2 for Blaschke zeros and
    sum_j 2 w_j / |xi_j - zeta|^2 for singular atoms.

    Values above DERIVATIVE_OVERFLOW_CAP are reported as inf; at a
    singular atom itself the derivative does not exist and SpectrumPoint
    is raised.
    """
    z = zeta.complex
    total = _deriv_sum(u, z, zeta.theta)
    return float("inf") if total > DERIVATIVE_OVERFLOW_CAP else float(total)


def _deriv_sum(u, z, theta):
    if isinstance(u, FiniteBlaschke):
        total = 0.0
        for a in u.zeros:
            total += (1.0 - abs(a) ** 2) / abs(z - a) ** 2
        return total
    if isinstance(u, SingularAtomic):
        total = 0.0
        for tj, w in u.atoms:
            d2 = float(chord_angles(theta, tj)) ** 2
            if d2 < 1e-24:
                raise SpectrumPoint(f"angular derivative at singular atom theta={tj}")
            total += 2.0 * w / d2
        return total
    return sum(_deriv_sum(f, z, theta) for f in u.factors)


@dataclass(frozen=True)
class PythagoreanPair:
    """b = (1+u)/2 and its outer mate a = gamma (1-u)/2, with gamma
    unimodular chosen so that (1 - u(0)) gamma > 0, i.e. a(0) > 0."""

    u: InnerFunction
    gamma: complex

    def b(self, z):
        return 0.5 * (1.0 + evaluate(self.u, z))

    def a(self, z):
        return 0.5 * self.gamma * (1.0 - evaluate(self.u, z))


def pythagorean_pair(u: InnerFunction) -> PythagoreanPair:
    u0 = evaluate(u, 0.0)
    w = 1.0 - u0
    if abs(w) < 1e-15:
        raise DegenerateSymbol("u(0) = 1; the mate is not defined")
    gamma = np.conj(w) / abs(w)
    return PythagoreanPair(u=u, gamma=complex(gamma))


def clark_identity_residual(u: InnerFunction, alpha: float, m, z: complex) -> float:
    """| (1-|u(z)|^2)/|e^{2 pi i alpha} - u(z)|^2  -  P_m(z) |.

    Near zero exactly when m is (a good truncation of) the Clark measure
    of u at parameter alpha.  z must lie in the open disk.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("z must lie in the open disk")
    uz = evaluate(u, z)
    lhs = (1.0 - abs(uz) ** 2) / abs(np.exp(2j * np.pi * alpha) - uz) ** 2
    d2 = np.abs(m.points_complex - z) ** 2
    rhs = float(np.sum(m.masses * (1.0 - abs(z) ** 2) / d2)) if m.n_atoms else 0.0
    return abs(lhs - rhs)
