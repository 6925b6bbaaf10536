"""Built-in families with closed-form ground truth.

* monomials u(z) = z^k:   k equally spaced atoms of mass 1/k per level;
* the singular inner function with a single unit point mass at 1,
  u(z) = exp((z+1)/(z-1)):   atoms zeta_n = (2 n pi i + 1)/(2 n pi i - 1)
  with masses 2/(4 n^2 pi^2 + 1) and |u'(zeta_n)| = 2/|zeta_n - 1|^2;
* Blaschke products over the Cayley images of the half-plane lattice
  lambda_n = n^a + i n^{a-1}, which are one-component but fail the
  potential condition (their sparse atoms near the accumulation point
  carry masses comparable to their distance from it).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import (Arc, AtomicMeasure, CirclePoint, TWO_PI, arc_between,
                     neighbor_constants)
from .clark import ClarkData, clark_data, find_atoms
from .errors import NotEnoughAtoms
from .inner import FiniteBlaschke, InnerFunction, SingularAtomic, monomial
from .potentials import atom_potential_sup
from .perturb import squared_measure


@dataclass(frozen=True)
class Monomial:
    k: int


@dataclass(frozen=True)
class ExpSingular:
    """u(z) = exp((z+1)/(z-1)), the singular inner function of the unit
    point mass at theta = 0."""


@dataclass(frozen=True)
class CounterexampleBlaschke:
    """Blaschke product over phi(lambda_n), lambda_n = n^alpha + i n^(alpha-1),
    phi(w) = (w - i)/(w + i); ``symmetrized`` mirrors the lattice to
    negative real parts as well."""

    alpha: float
    K: int
    symmetrized: bool = False

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must lie in (0, 1]")
        if self.K < 1:
            raise ValueError("K must be >= 1")


FamilySpec = Monomial | ExpSingular | CounterexampleBlaschke


def parse_family(text: str) -> FamilySpec:
    """Parse CLI family descriptors: 'exp', 'monomial:K',
    'counterexample:ALPHA:K[:sym]'."""
    parts = text.split(":")
    if parts[0] == "exp":
        return ExpSingular()
    if parts[0] == "monomial":
        return Monomial(k=int(parts[1]))
    if parts[0] == "counterexample":
        sym = len(parts) > 3 and parts[3] == "sym"
        return CounterexampleBlaschke(alpha=float(parts[1]), K=int(parts[2]),
                                      symmetrized=sym)
    raise ValueError(f"unknown family {text!r}")


def family_name(fam: FamilySpec) -> str:
    if isinstance(fam, Monomial):
        return f"monomial:{fam.k}"
    if isinstance(fam, ExpSingular):
        return "exp"
    sym = ":sym" if fam.symmetrized else ""
    return f"counterexample:{fam.alpha}:{fam.K}{sym}"


def cayley(w):
    """Upper half-plane to disk, w -> (w - i)/(w + i)."""
    w = np.asarray(w, dtype=complex)
    return (w - 1j) / (w + 1j)


def inner_function(fam: FamilySpec) -> InnerFunction:
    if isinstance(fam, Monomial):
        return monomial(fam.k)
    if isinstance(fam, ExpSingular):
        return SingularAtomic(atoms=((0.0, 1.0),))
    n = np.arange(1, fam.K + 1, dtype=float)
    lam = n**fam.alpha + 1j * n ** (fam.alpha - 1.0)
    if fam.symmetrized:
        lam = np.concatenate([lam, -np.conj(lam)])
    zeros = tuple(cayley(lam))
    # the lattice escapes to infinity, so the zeros accumulate at phi(inf) = 1
    return FiniteBlaschke(zeros=zeros, accumulation=(0.0,))


# ---------------------------------------------------------------------------
# Closed forms for the exponential example

def exp_lattice(indices) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(thetas, masses, derivatives) at the given integer labels."""
    n = np.asarray(indices, dtype=int)
    zeta = (2 * n * np.pi * 1j + 1) / (2 * n * np.pi * 1j - 1)
    theta = np.mod(np.angle(zeta), TWO_PI)
    deriv = (4.0 * n.astype(float) ** 2 * np.pi**2 + 1.0) / 2.0
    return theta, 1.0 / deriv, deriv


def exp_clark_data(n_max: int, n_min: int | None = None) -> ClarkData:
    """Closed-form Clark data of the exponential example over the integer
    window n in [n_min, n_max] (default symmetric, |n| <= n_max)."""
    if n_min is None:
        n_min = -n_max
    n = np.arange(n_min, n_max + 1)
    theta, masses, deriv = exp_lattice(n)
    order = np.argsort(theta, kind="stable")
    measure = AtomicMeasure(theta[order], masses[order])
    A, B, wa, wb = neighbor_constants(measure, excluded_points=(CirclePoint(0.0),))
    return ClarkData(alpha=0.0, measure=measure, derivatives=deriv[order],
                     A=A, B=B, witness_A=wa, witness_B=wb,
                     edge_uncertain=np.zeros(n.size, dtype=bool),
                     lattice_indices=n[order])


def exp_total_mass() -> float:
    """Full lattice mass sum: coth(1/2)."""
    return float(1.0 / np.tanh(0.5))


def exp_tail_mass_bound(N: int) -> float:
    """Two-sided integral bound for the mass outside |n| <= N:
    sum_{|n| > N} 2/(4 pi^2 n^2 + 1) <= 2 * (1/pi) arctan(1/(2 pi N))."""
    return float(2.0 / np.pi * np.arctan(1.0 / (2.0 * np.pi * N)))


def exp_tail_potential_bound(N: int) -> float:
    """Two-sided integral bound for sum_{|n| > N} 1/(4 pi^2 n^2 + 1)."""
    return float(1.0 / np.pi * np.arctan(1.0 / (2.0 * np.pi * N)))


# ---------------------------------------------------------------------------
# Divergence ladder near the accumulation point

@dataclass
class DivergenceRecord:
    K: int
    n_atoms: int
    value: float            # nan when fewer than 2 atoms are available
    witness: int
    scan_delta: float


SCAN_DELTA_FLOOR = 1e-6


def _adaptive_delta(u: InnerFunction, hi: float = np.pi / 2) -> tuple[float, list]:
    """Halve the scan's lower end from pi/4 until the arc (delta, hi]
    contains an atom, then keep halving down to the floor to collect
    every atom the truncation resolves."""
    delta = np.pi / 4
    used = delta
    atoms: list = []
    while delta >= SCAN_DELTA_FLOOR:
        used = delta
        atoms = find_atoms(u, 0.0, arc_between(delta, hi, False, True),
                           tol=1e-13)
        if atoms and delta / 2 < SCAN_DELTA_FLOOR:
            break
        delta /= 2.0
    return used, atoms


def divergence_ladder(fam: FamilySpec, K_list) -> list[DivergenceRecord]:
    """Per-truncation values of the atom-potential sup on squared masses,
    over the atoms found in (delta, pi/2] next to the accumulation point.

    For the Blaschke family the truncation is the zero count K; for the
    exponential example the same pipeline uses its closed-form atoms with
    labels -K..-1 (the ones in (0, pi/2)), the bounded contrast case.
    """
    out = []
    for K in K_list:
        if isinstance(fam, ExpSingular):
            theta, masses, _ = exp_lattice(-np.arange(1, K + 1))
            measure = AtomicMeasure(theta, masses)
            delta = float(theta.min())
        elif isinstance(fam, CounterexampleBlaschke):
            member = CounterexampleBlaschke(alpha=fam.alpha, K=K,
                                            symmetrized=fam.symmetrized)
            u = inner_function(member)
            delta, atoms = _adaptive_delta(u)
            if atoms:
                from .inner import angular_derivative
                th = np.array([p.theta for p in atoms])
                masses = np.array([1.0 / angular_derivative(u, p) for p in atoms])
                measure = AtomicMeasure(th, masses)
            else:
                measure = AtomicMeasure.empty()
        else:
            raise ValueError("divergence ladder applies to the exponential "
                             "and counterexample families")
        mu = squared_measure(measure)
        try:
            res = atom_potential_sup(mu)
            value, wit = res.value, res.witness
        except NotEnoughAtoms:
            value, wit = float("nan"), -1
        out.append(DivergenceRecord(K=int(K), n_atoms=measure.n_atoms,
                                    value=value, witness=wit,
                                    scan_delta=float(delta)))
    return out


def clark_scan_arc(fam: FamilySpec, margin: float = 1e-3) -> Arc:
    """A scan arc covering the atoms of a family member while honoring its
    spectrum: the full circle for monomials, (margin, 2 pi - margin) for
    families accumulating at theta = 0."""
    if isinstance(fam, Monomial):
        return Arc.full_circle()
    return arc_between(margin, TWO_PI - margin, True, True)


def clark_data_for(fam: FamilySpec, alpha: float = 0.0, truncation: int = 100,
                   tol: float = 1e-13) -> ClarkData:
    """Clark data for a family member.

    For the exponential example ``truncation`` selects |n| <= truncation
    via a scan arc just beyond those atoms (numeric atoms; closed forms
    are available separately for cross-checks).
    """
    u = inner_function(fam)
    if isinstance(fam, Monomial):
        return clark_data(u, alpha, Arc.full_circle(), tol)
    if isinstance(fam, ExpSingular):
        theta_out, _, _ = exp_lattice([-(truncation + 1), truncation + 1])
        lo = 0.5 * (theta_out[0] + exp_lattice([-truncation])[0][0])
        hi = 0.5 * (theta_out[1] + exp_lattice([truncation])[0][0])
        data = clark_data(u, alpha, arc_between(lo, hi, True, True), tol)
        if alpha == 0.0 and data.n_atoms == 2 * truncation + 1:
            order = np.argsort(exp_lattice(np.arange(-truncation, truncation + 1))[0])
            data.lattice_indices = np.arange(-truncation, truncation + 1)[order]
        return data
    return clark_data(u, alpha, clark_scan_arc(fam), tol)
