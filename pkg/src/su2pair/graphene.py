"""Bernal-stacked bilayer graphene as a two-qubit coefficient problem.

The tight-binding Hamiltonian in the {A1, B1, A2, B2} basis (layer (x)
sublattice) maps one-to-one onto a coefficient set that satisfies the
alpha-side contraction constraint at every wave vector, so the closed-form
band energies, eigenstate concurrence and thermal quantities all apply.
Grid sweeps over the Brillouin zone feed the CSV emitters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import eigenstate_concurrence_closed_form
from .errors import ConcurrenceDomainError, DegenerateBranchError
from .hamiltonian import CoefficientSet, derive
from .thermo import spin_flip_commutator_norm


@dataclass(frozen=True)
class GrapheneParams:
    """Hopping and gap parameters of the AB-stacked bilayer.

    ``t`` is the intralayer nearest-neighbor hopping, ``t3`` the
    non-dimer-to-non-dimer interlayer hopping, ``tperp`` the dimer coupling,
    ``m`` a sublattice mass, ``bias`` the interlayer bias voltage and
    ``lattice`` the lattice constant.  The dimer-to-non-dimer hopping t4 is
    fixed to zero, which also makes the matrix traceless.
    """

    t: float = 1.0
    t3: float = 1.0
    tperp: float = 1.0
    m: float = 0.0
    bias: float = 0.0
    lattice: float = 1.0

    def __post_init__(self):
        if not self.lattice > 0:
            raise ValueError("lattice constant must be positive")


def structure_factor(p: GrapheneParams, kx: float, ky: float) -> complex:
    """Sum of nearest-neighbor phase factors; zeros mark the Dirac points."""
    lam = p.lattice
    return 2.0 * np.exp(-1j * kx * lam / 2.0) * np.cos(
        np.sqrt(3.0) * ky * lam / 2.0
    ) + np.exp(-1j * kx * lam)


def map_to_su2su2(p: GrapheneParams, kx: float, ky: float) -> CoefficientSet:
    """The lattice-layer coefficient set at one wave vector.

    alpha = (0, 0, bias/2); beta = (-t Re G, t Im G, m); omega is the
    symmetric 2x2 block built from tperp and t3 G.  The third row of omega
    vanishes, so alpha . omega = 0 identically.
    """
    g = structure_factor(p, kx, ky)
    re, im = float(g.real), float(g.imag)
    alpha = (0.0, 0.0, p.bias / 2.0)
    beta = (-p.t * re, p.t * im, p.m)
    omega = (
        ((p.tperp - p.t3 * re) / 2.0, -p.t3 * im / 2.0, 0.0),
        (-p.t3 * im / 2.0, (p.tperp + p.t3 * re) / 2.0, 0.0),
        (0.0, 0.0, 0.0),
    )
    return CoefficientSet(0.0, alpha, beta, omega)


def build_ab_hamiltonian(p: GrapheneParams, kx: float, ky: float) -> np.ndarray:
    """The tight-binding matrix in the {A1, B1, A2, B2} basis with mass and bias."""
    g = structure_factor(p, kx, ky)
    t, t3, tp = p.t, p.t3, p.tperp
    h = np.array(
        [
            [0.0, -t * g, 0.0, -t3 * np.conj(g)],
            [-t * np.conj(g), 0.0, tp, 0.0],
            [0.0, tp, 0.0, -t * g],
            [-t3 * g, 0.0, -t * np.conj(g), 0.0],
        ],
        dtype=complex,
    )
    h += np.diag([p.m, -p.m, p.m, -p.m]).astype(complex)
    half = p.bias / 2.0
    h += np.diag([half, half, -half, -half]).astype(complex)
    return h


def positive_bands(p: GrapheneParams, kx: float, ky: float) -> tuple[float, float]:
    """(E1, E2) with E_n = sqrt(V + (-1)^n sqrt(Tp)); the spectrum is +-E1, +-E2."""
    d = derive(map_to_su2su2(p, kx, ky))
    sq = math.sqrt(max(d.theta_phi, 0.0))
    e1 = math.sqrt(max(d.v_quad - sq, 0.0))
    e2 = math.sqrt(d.v_quad + sq)
    return e1, e2


def find_dirac_point(
    p: GrapheneParams, seed: tuple[float, float] | None = None, steps: int = 60
) -> tuple[float, float]:
    """Newton iteration on (Re G, Im G) locating a zero of the structure factor."""
    lam = p.lattice
    if seed is None:
        seed = (0.0, 4.0 * np.pi / (3.0 * np.sqrt(3.0) * lam))
    kx, ky = float(seed[0]), float(seed[1])
    for _ in range(steps):
        g = structure_factor(p, kx, ky)
        if abs(g) < 1e-14:
            break
        dgx = -1j * lam * (
            np.exp(-1j * kx * lam / 2.0) * np.cos(np.sqrt(3.0) * ky * lam / 2.0)
            + np.exp(-1j * kx * lam)
        )
        dgy = -np.sqrt(3.0) * lam * np.exp(-1j * kx * lam / 2.0) * np.sin(
            np.sqrt(3.0) * ky * lam / 2.0
        )
        jac = np.array([[dgx.real, dgy.real], [dgx.imag, dgy.imag]])
        try:
            step = np.linalg.solve(jac, np.array([g.real, g.imag]))
        except np.linalg.LinAlgError:
            break
        kx, ky = kx - step[0], ky - step[1]
    return kx, ky


@dataclass(frozen=True)
class GridSpec:
    """Rectangular k-space sampling window, optionally masked to the first zone."""

    kx_min: float
    kx_max: float
    ky_min: float
    ky_max: float
    nx: int = 201
    ny: int = 201
    mask: str = "none"

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 samples per axis")
        if self.kx_max <= self.kx_min or self.ky_max <= self.ky_min:
            raise ValueError("grid ranges must be ordered")
        if self.mask not in ("none", "hex"):
            raise ValueError(f"unknown mask {self.mask!r}")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.kx_min, self.kx_max, self.nx),
            np.linspace(self.ky_min, self.ky_max, self.ny),
        )


def default_grid(p: GrapheneParams, samples: int = 201, mask: str = "none") -> GridSpec:
    """Window |kx|, |ky| <= 4 pi / (3 lattice), containing every zone corner."""
    lim = 4.0 * np.pi / (3.0 * p.lattice)
    return GridSpec(-lim, lim, -lim, lim, samples, samples, mask)


def _reciprocal_shells(lattice: float) -> np.ndarray:
    # Exact translation periods of the structure factor; the three shell
    # vectors share the length 4 pi / (sqrt(3) lattice).
    b1 = 2.0 * np.pi / lattice * np.array([1.0, 1.0 / np.sqrt(3.0)])
    b2 = 2.0 * np.pi / lattice * np.array([1.0, -1.0 / np.sqrt(3.0)])
    return np.array([b1, -b1, b2, -b2, b1 - b2, b2 - b1])


def in_first_zone(p: GrapheneParams, kx: float, ky: float) -> bool:
    """Wigner-Seitz test: k belongs iff it is no farther from 0 than from any G."""
    k = np.array([kx, ky])
    for g in _reciprocal_shells(p.lattice):
        if 2.0 * float(k @ g) > float(g @ g) * (1.0 + 1e-12):
            return False
    return True


def _iter_grid(p: GrapheneParams, g: GridSpec):
    xs, ys = g.axes()
    use_mask = g.mask == "hex"
    for kx in xs:
        for ky in ys:
            if use_mask and not in_first_zone(p, kx, ky):
                continue
            yield float(kx), float(ky)


def band_grid(p: GrapheneParams, g: GridSpec) -> dict[str, np.ndarray]:
    """Positive band energies on the grid, row-major in (kx, ky)."""
    kxs, kys, e1s, e2s = [], [], [], []
    for kx, ky in _iter_grid(p, g):
        e1, e2 = positive_bands(p, kx, ky)
        kxs.append(kx)
        kys.append(ky)
        e1s.append(e1)
        e2s.append(e2)
    return {
        "kx": np.array(kxs),
        "ky": np.array(kys),
        "e1": np.array(e1s),
        "e2": np.array(e2s),
    }


def concurrence_grid(
    p: GrapheneParams, g: GridSpec, m: int = 2, n: int = 1
) -> dict[str, np.ndarray]:
    """Eigenstate concurrence of branch (m, n) on the grid.

    Points where the closed form degenerates or leaves its real domain are
    reported as zero with flag = 1, matching the separable-state reading of
    those regions.
    """
    kxs, kys, cs, flags = [], [], [], []
    for kx, ky in _iter_grid(p, g):
        coeffs = map_to_su2su2(p, kx, ky)
        try:
            c_val, flag = eigenstate_concurrence_closed_form(coeffs, m, n), 0
        except (ConcurrenceDomainError, DegenerateBranchError):
            c_val, flag = 0.0, 1
        kxs.append(kx)
        kys.append(ky)
        cs.append(c_val)
        flags.append(flag)
    return {
        "kx": np.array(kxs),
        "ky": np.array(kys),
        "c": np.array(cs),
        "flag": np.array(flags, dtype=int),
    }


def _scaled_sinh_cosh_gap(x: float, y: float, t: float) -> float:
    """e^{-x/t} [sinh(x/t) - cosh(y/t)] for x > y >= 0; sign-exact, no overflow."""
    return (
        -math.expm1(-2.0 * x / t)
        - math.exp(-(x - y) / t) * (1.0 + math.exp(-2.0 * y / t))
    ) / 2.0


def thermal_concurrence_curve(
    p: GrapheneParams, kx: float, ky: float, temps
) -> dict[str, np.ndarray]:
    """Thermal concurrence at one wave vector over a temperature set.

    Uses the lattice-layer numerator max{sinh(tperp/T) - cosh(t3 |G|/T), 0},
    which vanishes identically whenever tperp <= t3 |G(k)|; for
    tperp > t3 |G| it coincides with :func:`su2pair.thermo.thermal_concurrence`
    on the mapped set.  Flag = 0 where the closed form is provably exact
    (the local and interaction parts commute), 1 otherwise.
    """
    coeffs = map_to_su2su2(p, kx, ky)
    d = derive(coeffs)
    s_arg = p.tperp
    c_arg = abs(p.t3 * structure_factor(p, kx, ky))
    sq = math.sqrt(max(d.theta_phi, 0.0))
    e1 = math.sqrt(max(d.v_quad - sq, 0.0))
    e2 = math.sqrt(d.v_quad + sq)
    reliable = spin_flip_commutator_norm(coeffs) <= 1e-12 * (1.0 + coeffs.scale() ** 2)

    ts, cs = [], []
    for t_raw in temps:
        t = float(t_raw)
        if t <= 0:
            raise ValueError("temperatures must be positive")
        if s_arg <= c_arg:
            val = 0.0
        else:
            num = _scaled_sinh_cosh_gap(s_arg, c_arg, t)
            den = (
                math.exp((e2 - s_arg) / t) * (1.0 + math.exp(-2.0 * e2 / t))
                + math.exp((e1 - s_arg) / t) * (1.0 + math.exp(-2.0 * e1 / t))
            ) / 2.0
            val = max(num, 0.0) / den
        ts.append(t)
        cs.append(val)
    flags = np.full(len(ts), 0 if reliable else 1, dtype=int)
    return {"t": np.array(ts), "c": np.array(cs), "flag": flags}


def thermal_death_temperature(
    p: GrapheneParams,
    kx: float,
    ky: float,
    t_low: float = 1e-6,
    t_high: float = 1e6,
    iters: int = 200,
) -> float | None:
    """Bisection for the temperature where the curve numerator changes sign.

    Returns None when the concurrence is identically zero (tperp <= t3 |G|).
    """
    x_plus = p.tperp
    x_minus = abs(p.t3 * structure_factor(p, kx, ky))
    if x_plus <= x_minus:
        return None
    lo, hi = t_low, t_high
    if _scaled_sinh_cosh_gap(x_plus, x_minus, lo) <= 0.0:
        return None
    if _scaled_sinh_cosh_gap(x_plus, x_minus, hi) >= 0.0:
        return None
    for _ in range(iters):
        mid = math.sqrt(lo * hi)
        if _scaled_sinh_cosh_gap(x_plus, x_minus, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)
