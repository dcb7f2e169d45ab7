import numpy as np
import pytest

from su2pair.graphene import (
    GrapheneParams,
    GridSpec,
    band_grid,
    build_ab_hamiltonian,
    concurrence_grid,
    default_grid,
    find_dirac_point,
    in_first_zone,
    map_to_su2su2,
    positive_bands,
    structure_factor,
    thermal_concurrence_curve,
    thermal_death_temperature,
)
from su2pair.hamiltonian import Branch, CaseKind, classify, derive, fano_compose
from su2pair.oracle import eig_hermitian

DEFAULT = GrapheneParams()


def small_grid(p, n=21):
    lim = 4 * np.pi / (3 * p.lattice)
    return GridSpec(-lim, lim, -lim, lim, n, n)


class TestStructureFactor:
    def test_gamma_point(self):
        assert structure_factor(DEFAULT, 0.0, 0.0) == pytest.approx(3.0 + 0j)

    def test_cosine_at_pi(self):
        g = structure_factor(DEFAULT, 0.0, 2 * np.pi / np.sqrt(3.0))
        assert g == pytest.approx(-1.0 + 0j, abs=1e-12)

    def test_conjugation_under_k_reflection(self, rng):
        for _ in range(50):
            kx, ky = rng.normal(size=2) * 4
            a = structure_factor(DEFAULT, kx, ky)
            b = structure_factor(DEFAULT, -kx, -ky)
            assert abs(a - np.conj(b)) <= 1e-12 * (1 + abs(a))

    def test_reciprocal_periodicity(self, rng):
        lam = DEFAULT.lattice
        b1 = 2 * np.pi / lam * np.array([1.0, 1.0 / np.sqrt(3.0)])
        b2 = 2 * np.pi / lam * np.array([1.0, -1.0 / np.sqrt(3.0)])
        for _ in range(50):
            k = rng.normal(size=2) * 3
            base = structure_factor(DEFAULT, *k)
            for g in (b1, b2, b1 - b2):
                shifted = structure_factor(DEFAULT, *(k + g))
                assert abs(shifted - base) <= 1e-12 * (1 + abs(base))

    def test_dirac_point_newton(self):
        for lam in (1.0, 0.246):
            p = GrapheneParams(lattice=lam)
            kx, ky = find_dirac_point(p)
            assert abs(structure_factor(p, kx, ky)) <= 1e-10


class TestMapping:
    def test_gamma_point_coefficients(self):
        p = GrapheneParams(bias=1.0)
        c = map_to_su2su2(p, 0.0, 0.0)
        assert np.allclose(c.alpha, [0, 0, 0.5])
        assert np.allclose(c.beta, [-3.0, 0.0, 0.0])
        assert np.isclose(c.omega[0, 0], -1.0)
        assert np.isclose(c.omega[1, 1], 2.0)

    def test_unbiased_massless_has_no_local_terms(self, rng):
        p = GrapheneParams(bias=0.0, m=0.0)
        kx, ky = rng.normal(size=2)
        c = map_to_su2su2(p, kx, ky)
        assert np.allclose(c.alpha, 0)
        assert c.beta[2] == 0.0

    def test_dirac_point_coefficients(self):
        p = GrapheneParams(m=0.3, bias=0.7)
        kx, ky = find_dirac_point(p)
        c = map_to_su2su2(p, kx, ky)
        assert np.allclose(c.beta, [0, 0, 0.3], atol=1e-10)
        assert np.allclose(c.omega, np.diag([0.5, 0.5, 0.0]), atol=1e-10)

    def test_matrix_route_equals_pauli_route(self, rng):
        """Tight-binding matrix and composed coefficients agree entry-wise."""
        for _ in range(1000):
            p = GrapheneParams(
                t=rng.normal(), t3=rng.normal(), tperp=rng.normal(),
                m=rng.normal(), bias=rng.normal(), lattice=float(rng.uniform(0.2, 2.0)),
            )
            kx, ky = rng.normal(size=2) * 3
            a = build_ab_hamiltonian(p, kx, ky)
            b = fano_compose(map_to_su2su2(p, kx, ky))
            assert np.max(np.abs(a - b)) <= 1e-12 * (1 + np.max(np.abs(a)))

    def test_classification_and_constraint(self, rng):
        for _ in range(50):
            p = GrapheneParams(bias=float(rng.uniform(-2, 2)), m=float(rng.normal()))
            kx, ky = rng.normal(size=2) * 2
            c = map_to_su2su2(p, kx, ky)
            label = classify(c)
            assert label.kind is CaseKind.ENTANGLED_CONSTRAINED
            d = derive(c)
            assert d.alpha_null
            assert abs(d.s_cubic) <= 1e-12

    def test_generic_k_is_alpha_branch(self):
        label = classify(map_to_su2su2(GrapheneParams(bias=1.0), 0.8, -0.3))
        assert label.branch is Branch.ALPHA_NULL

    def test_v_quad_identity(self, rng):
        for _ in range(100):
            p = GrapheneParams(
                t=rng.normal(), t3=rng.normal(), tperp=rng.normal(),
                m=rng.normal(), bias=rng.normal(),
            )
            kx, ky = rng.normal(size=2) * 3
            g = abs(structure_factor(p, kx, ky))
            want = p.m**2 + p.bias**2 / 4 + p.t**2 * g**2 + (p.tperp**2 + p.t3**2 * g**2) / 2
            got = derive(map_to_su2su2(p, kx, ky)).v_quad
            assert abs(got - want) <= 1e-10 * (1 + want)

    def test_block_determinant_identity(self, rng):
        for _ in range(100):
            p = GrapheneParams(t3=rng.normal(), tperp=rng.normal())
            kx, ky = rng.normal(size=2) * 3
            g = abs(structure_factor(p, kx, ky))
            want = (p.tperp**2 - p.t3**2 * g**2) / 4
            got = derive(map_to_su2su2(p, kx, ky)).det_omega_b
            assert abs(got - want) <= 1e-12 * (1 + abs(want))


class TestBands:
    def test_particle_hole_symmetry(self, rng):
        for _ in range(50):
            p = GrapheneParams(bias=float(rng.normal()), m=float(rng.normal()))
            kx, ky = rng.normal(size=2) * 3
            e1, e2 = positive_bands(p, kx, ky)
            w = eig_hermitian(build_ab_hamiltonian(p, kx, ky)).eigenvalues
            assert np.allclose(np.sort(w), [-e2, -e1, e1, e2], atol=1e-9 * (1 + e2))

    def test_dirac_touching_without_gap_terms(self):
        p = GrapheneParams(m=0.0, bias=0.0)
        kx, ky = find_dirac_point(p)
        e1, _ = positive_bands(p, kx, ky)
        assert e1 <= 1e-8

    def test_bias_gaps_the_dirac_point(self):
        """At G = 0: V = bias^2/4 + tperp^2/2 and sqrt(Tp) = tperp^2/2."""
        p = GrapheneParams(bias=1.0)
        kx, ky = find_dirac_point(p)
        e1, e2 = positive_bands(p, kx, ky)
        assert np.isclose(e1, 0.5, atol=1e-9)
        assert np.isclose(e2, np.sqrt(p.bias**2 / 4 + p.tperp**2), atol=1e-9)
        d = derive(map_to_su2su2(p, kx, ky))
        assert np.isclose(d.v_quad, p.bias**2 / 4 + p.tperp**2 / 2, atol=1e-10)

    def test_grid_ordering_and_oracle(self):
        p = GrapheneParams(bias=0.5)
        data = band_grid(p, small_grid(p))
        assert np.all(data["e2"] >= data["e1"])
        assert np.all(data["e1"] >= 0)
        for kx, ky, e1, e2 in zip(data["kx"], data["ky"], data["e1"], data["e2"]):
            w = np.sort(eig_hermitian(build_ab_hamiltonian(p, kx, ky)).eigenvalues)
            assert np.max(np.abs(w - [-e2, -e1, e1, e2])) <= 1e-9 * (1 + e2)

    def test_row_major_order(self):
        p = DEFAULT
        g = GridSpec(-1.0, 1.0, -2.0, 2.0, 3, 3)
        data = band_grid(p, g)
        assert np.allclose(data["kx"][:3], -1.0)
        assert np.allclose(data["ky"][:3], [-2.0, 0.0, 2.0])


class TestMask:
    def test_zone_membership(self):
        assert in_first_zone(DEFAULT, 0.0, 0.0)
        corner = 4 * np.pi / (3 * np.sqrt(3.0))
        assert not in_first_zone(DEFAULT, 0.0, 2.5 * corner)

    def test_masked_grid_is_smaller(self):
        p = DEFAULT
        full = band_grid(p, small_grid(p))
        masked = band_grid(p, default_grid(p, 21, "hex"))
        assert 0 < masked["kx"].size < full["kx"].size

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            GridSpec(0, 1, 0, 1, 1, 5)
        with pytest.raises(ValueError):
            GridSpec(1, 0, 0, 1, 5, 5)
        with pytest.raises(ValueError):
            GridSpec(0, 1, 0, 1, 5, 5, mask="circle")


class TestConcurrenceGrid:
    def test_product_limit_all_zero(self):
        p = GrapheneParams(tperp=0.0, t3=0.0, bias=1.0)
        data = concurrence_grid(p, small_grid(p, 11), 2, 1)
        assert np.max(data["c"]) <= 1e-7

    def test_values_in_range_with_flags(self):
        p = GrapheneParams(bias=1.0)
        for n in (1, 2):
            data = concurrence_grid(p, small_grid(p, 15), 2, n)
            assert np.all((data["c"] >= 0) & (data["c"] <= 1))
            assert np.all(data["c"][data["flag"] == 1] == 0.0)

    def test_branches_differ(self):
        p = GrapheneParams(bias=1.0)
        a = concurrence_grid(p, small_grid(p, 21), 2, 1)
        b = concurrence_grid(p, small_grid(p, 21), 2, 2)
        assert np.max(np.abs(a["c"] - b["c"])) >= 0.1

    def test_wootters_agreement_on_unflagged_points(self, rng):
        from su2pair.oracle import wootters_concurrence
        from su2pair.solver import solve_entangled

        p = GrapheneParams(bias=1.0)
        data = concurrence_grid(p, small_grid(p, 9), 2, 1)
        for kx, ky, cval, flag in zip(data["kx"], data["ky"], data["c"], data["flag"]):
            if flag:
                continue
            es = solve_entangled(map_to_su2su2(p, kx, ky))
            assert abs(cval - wootters_concurrence(es.state(2, 1))) <= 1e-7


class TestThermalCurve:
    def test_identically_zero_at_gamma_point(self):
        """|G| = 3 > tperp = 1: sinh(1/t) < cosh(3/t) for every t."""
        data = thermal_concurrence_curve(DEFAULT, 0.0, 0.0, np.linspace(0.01, 20, 100))
        assert np.all(data["c"] == 0.0)

    def test_zero_for_vanishing_dimer_coupling(self):
        p = GrapheneParams(tperp=0.0)
        data = thermal_concurrence_curve(p, 0.3, 0.2, np.linspace(0.1, 5, 20))
        assert np.all(data["c"] == 0.0)

    def test_positive_below_death_at_dirac_point(self):
        kx, ky = find_dirac_point(DEFAULT)
        t_star = 1.0 / np.arcsinh(1.0)
        data = thermal_concurrence_curve(
            DEFAULT, kx, ky, [t_star * 0.5, t_star * 0.99, t_star * 1.01, t_star * 10]
        )
        assert data["c"][0] > 0 and data["c"][1] > 0
        assert data["c"][2] == 0.0 and data["c"][3] == 0.0

    def test_death_temperature_bisection(self):
        kx, ky = find_dirac_point(DEFAULT)
        t_star = thermal_death_temperature(DEFAULT, kx, ky)
        assert t_star is not None
        assert abs(np.sinh(1.0 / t_star) - 1.0) <= 1e-6

    def test_death_none_when_identically_zero(self):
        assert thermal_death_temperature(DEFAULT, 0.0, 0.0) is None

    def test_matches_thermo_closed_form_when_dimer_dominates(self):
        """For tperp > t3 |G| the curve equals the general closed form."""
        from su2pair.thermo import thermal_concurrence

        p = GrapheneParams(tperp=2.0, bias=0.4)
        kx, ky = find_dirac_point(p)
        kx += 0.05  # small offset: 0 < t3 |G| < tperp
        c = map_to_su2su2(p, kx, ky)
        temps = np.linspace(0.2, 5, 10)
        data = thermal_concurrence_curve(p, kx, ky, temps)
        for t, val in zip(data["t"], data["c"]):
            assert abs(val - thermal_concurrence(c, t, compare=False).value) <= 1e-12

    def test_rejects_bad_temperature(self):
        with pytest.raises(ValueError):
            thermal_concurrence_curve(DEFAULT, 0.0, 0.0, [1.0, -2.0])


def test_lattice_validation():
    with pytest.raises(ValueError):
        GrapheneParams(lattice=0.0)
