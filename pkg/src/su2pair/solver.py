"""Eigensystem construction for every solvable case.

Separable product Hamiltonians factor into two single-qubit problems; sets
satisfying one of the contraction constraints admit an even quartic spectrum
and a polynomial eigenprojector ansatz; rank-one-reducible sets get their
eigenvalues from the secular quartic; everything else falls back to the
numerical oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import CaseReductionError, ConstraintError, FactorizationError
from .hamiltonian import (
    CaseKind,
    CoefficientSet,
    DerivedCoefficients,
    classify,
    derive,
    fano_compose,
    frame_reduce,
    kron_unitary_from_rotations,
)
from .oracle import eig_hermitian
from .pauli import kron, pauli
from .quartic import solve_quartic

# Relative threshold below which closed-form denominators are treated as
# degenerate and the oracle supplies the states instead.
DEGENERACY_RTOL = 1e-8

# Eigenvalues closer than this (relative) are merged into one eigenspace on
# the oracle path; each member state is the eigenspace projector divided by
# the multiplicity.
CLUSTER_RTOL = 1e-8


class SolveMethod(enum.Enum):
    SEPARABLE_CLOSED_FORM = "separable-closed-form"
    ENTANGLED_CLOSED_FORM = "entangled-closed-form"
    QUARTIC_PLUS_ORACLE_VECTORS = "quartic-plus-oracle-vectors"
    ORACLE_NUMERIC = "oracle-numeric"


@dataclass(frozen=True)
class Su2Factor:
    """A single-qubit Hamiltonian a0 * I + a . sigma."""

    a0: float
    vec: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=float).reshape(3)
        vec.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "vec", vec)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def matrix(self) -> np.ndarray:
        m = self.a0 * np.eye(2, dtype=complex)
        for i in range(3):
            m += self.vec[i] * pauli(i + 1)
        return m


_MN = ((1, 1), (1, 2), (2, 1), (2, 2))


@dataclass(frozen=True)
class Eigensystem:
    """Four eigenvalues and density-matrix eigenprojectors, indexed (m, n).

    ``values[m-1, n-1]`` is the eigenvalue and ``states[m-1, n-1]`` the 4x4
    projector.  On non-degenerate inputs the states are pure, mutually
    orthogonal, and resolve the identity; degenerate eigenspaces are flagged
    and represented by the eigenspace projector split evenly over its labels.
    """

    values: np.ndarray
    states: np.ndarray
    method: SolveMethod
    degenerate: bool = False

    def eigenvalue(self, m: int, n: int) -> float:
        return float(self.values[m - 1, n - 1])

    def state(self, m: int, n: int) -> np.ndarray:
        return self.states[m - 1, n - 1]

    def items(self):
        for m, n in _MN:
            yield (m, n), self.eigenvalue(m, n), self.state(m, n)

    def sorted_values(self) -> np.ndarray:
        return np.sort(self.values.ravel())

    def residuals(self, h: np.ndarray) -> dict[str, float]:
        """Max-norm defects of the eigensystem contracts against ``h``."""
        h = np.asarray(h, dtype=complex)
        scale = 1.0 + float(np.max(np.abs(h)))
        completeness = np.max(np.abs(sum(s for _, _, s in self.items()) - np.eye(4)))
        trace = max(abs(np.trace(s).real - 1.0) for _, _, s in self.items())
        eig = max(
            float(np.max(np.abs(h @ s - e * s))) / (1.0 + abs(e))
            for _, e, s in self.items()
        )
        commute = max(
            float(np.max(np.abs(h @ s - s @ h))) / scale for _, _, s in self.items()
        )
        return {
            "completeness": float(completeness),
            "trace": float(trace),
            "eigen": eig,
            "commutator": commute,
        }


def _build(values, states, method, degenerate=False) -> Eigensystem:
    v = np.asarray(values, dtype=float).reshape(2, 2)
    s = np.asarray(states, dtype=complex).reshape(2, 2, 4, 4)
    v.setflags(write=False)
    s.setflags(write=False)
    return Eigensystem(v, s, method, degenerate)


# --- separable case -----------------------------------------------------------


def factor_dyadic(
    c: CoefficientSet, tol: float = 1e-9
) -> tuple[Su2Factor, Su2Factor]:
    """Factor a product-form set into its single-qubit Hamiltonians.

    Requires omega of rank at most one with alpha, beta and upsilon
    consistent with H = H1 (x) H2.  The reciprocal-scaling gauge is fixed by
    |a| = |b| = sqrt(s1) and the sign by making the first non-negligible
    component of the left factor vector positive.
    """
    sc = c.scale() + 1e-300
    u_mat, svals, vt = np.linalg.svd(c.omega)
    s1 = float(svals[0])

    if s1 <= tol * sc:
        # omega = 0: one factor must be scalar.
        if np.linalg.norm(c.alpha) <= tol * sc:
            return Su2Factor(1.0, np.zeros(3)), Su2Factor(c.upsilon, c.beta)
        if np.linalg.norm(c.beta) <= tol * sc:
            return Su2Factor(c.upsilon, c.alpha), Su2Factor(1.0, np.zeros(3))
        raise FactorizationError(
            "omega vanishes but both local vectors are nonzero"
        )

    if float(svals[1]) > tol * s1:
        raise FactorizationError(
            f"omega has rank > 1 (second singular value {svals[1]:.3e})"
        )
    u, v = u_mat[:, 0].copy(), vt[0].copy()
    lead = np.argmax(np.abs(u))
    if u[lead] < 0:
        u, v = -u, -v

    al_par = float(c.alpha @ u)
    be_par = float(c.beta @ v)
    if float(np.linalg.norm(c.alpha - al_par * u)) > tol * sc:
        raise FactorizationError("alpha is not aligned with the omega left factor")
    if float(np.linalg.norm(c.beta - be_par * v)) > tol * sc:
        raise FactorizationError("beta is not aligned with the omega right factor")
    if abs(c.upsilon * s1 - al_par * be_par) > tol * sc * sc:
        raise FactorizationError("upsilon is inconsistent with the factor scalars")

    root = np.sqrt(s1)
    a0 = be_par / root
    b0 = al_par / root
    return Su2Factor(a0, root * u), Su2Factor(b0, root * v)


def solve_separable(f1: Su2Factor, f2: Su2Factor) -> Eigensystem:
    """Eigensystem of the product Hamiltonian H1 (x) H2.

    Eigenvalues are (a0 + (-1)^m a)(b0 + (-1)^n b); the states are products
    of the single-qubit Bloch projectors.  A zero-norm factor vector is a
    degenerate factor: its projectors are built from the +3 axis and the
    result is flagged.
    """
    degenerate = False
    locals_ = []
    for f in (f1, f2):
        a = f.norm
        if a <= 1e-14 * (1.0 + abs(f.a0)):
            degenerate = True
            axis = np.array([0.0, 0.0, 1.0])
            a = 0.0
        else:
            axis = f.vec / a
        axis_op = sum(axis[i] * pauli(i + 1) for i in range(3))
        projectors = {
            s: 0.5 * (np.eye(2, dtype=complex) + (-1) ** s * axis_op) for s in (1, 2)
        }
        values = {s: f.a0 + (-1) ** s * a for s in (1, 2)}
        locals_.append((values, projectors))

    values = np.empty((2, 2))
    states = np.empty((2, 2, 4, 4), dtype=complex)
    (va, pa), (vb, pb) = locals_
    for m in (1, 2):
        for n in (1, 2):
            values[m - 1, n - 1] = va[m] * vb[n]
            states[m - 1, n - 1] = kron(pa[m], pb[n])
    return _build(values, states, SolveMethod.SEPARABLE_CLOSED_FORM, degenerate)


# --- constrained entangled case -----------------------------------------------


def _entangled_scales(d: DerivedCoefficients) -> tuple[float, float, float, bool]:
    """(sqrt_theta_phi, e1, e2, degenerate_flag) for the even-spectrum case."""
    sq = float(np.sqrt(max(d.theta_phi, 0.0)))
    e1 = float(np.sqrt(max(d.v_quad - sq, 0.0)))
    e2 = float(np.sqrt(d.v_quad + sq))
    degenerate = (
        sq <= DEGENERACY_RTOL * (1.0 + d.v_quad)
        or e1 <= DEGENERACY_RTOL * (1.0 + np.sqrt(d.v_quad))
        or (e2 - e1) <= DEGENERACY_RTOL * (1.0 + np.sqrt(d.v_quad))
    )
    return sq, e1, e2, degenerate


def solve_entangled(c: CoefficientSet, tol: float = 1e-9) -> Eigensystem:
    """Closed-form eigensystem of a constraint-satisfying set.

    Eigenvalues are upsilon + (-1)^m E_n with E_n = sqrt(V + (-1)^n sqrt(Tp));
    the states come from the polynomial ansatz

        rho_mn = 1/4 [I + (-1)^m Ht / E_n] [I + (-1)^n (Ht^2 - V I) / sqrt(Tp)].

    When sqrt(Tp) or E_1 is numerically degenerate the ansatz collapses, so
    the states (and values) come from the oracle instead, labelled by the
    closed-form energy pattern, and the result is flagged.
    """
    d = derive(c, tol)
    if not (d.alpha_null or d.beta_null):
        raise ConstraintError(
            "neither alpha.omega = 0 nor omega.beta = 0 holds within tolerance"
        )
    sq, e1, e2, degenerate = _entangled_scales(d)
    if degenerate:
        return _oracle_eigensystem(
            fano_compose(c), ascending_labels=((1, 2), (1, 1), (2, 1), (2, 2))
        )

    h = fano_compose(c)
    ht = h - c.upsilon * np.eye(4)
    o_op = ht @ ht - d.v_quad * np.eye(4)
    eye = np.eye(4)

    values = np.empty((2, 2))
    states = np.empty((2, 2, 4, 4), dtype=complex)
    for n, en in ((1, e1), (2, e2)):
        right = eye + (-1) ** n * o_op / sq
        for m in (1, 2):
            values[m - 1, n - 1] = c.upsilon + (-1) ** m * en
            states[m - 1, n - 1] = 0.25 * (eye + (-1) ** m * ht / en) @ right
    return _build(values, states, SolveMethod.ENTANGLED_CLOSED_FORM)


# --- quartic / oracle routes ----------------------------------------------------


def secular_coefficients(
    d: DerivedCoefficients, tol: float = 1e-9
) -> tuple[float, float, float, float, float]:
    """Coefficients (1, 0, -2V, -8s, V^2 - Theta) of the secular quartic.

    Valid when the rank-one reduction holds, i.e. det(omega) vanishes; the
    cubic invariant of the shifted spectrum is -8(s - det omega), so a
    nonzero determinant falsifies the linear coefficient and is an error.
    """
    det_scale = (1.0 + d.v_quad) ** 1.5
    if abs(d.det_omega) > tol * det_scale:
        raise CaseReductionError(
            f"det(omega) = {d.det_omega:.3e} invalidates the rank-one reduction"
        )
    return (1.0, 0.0, -2.0 * d.v_quad, -8.0 * d.s_cubic, d.v_quad**2 - d.theta)


def _cluster(values: np.ndarray) -> list[list[int]]:
    scale = 1.0 + float(np.max(np.abs(values)))
    groups: list[list[int]] = [[0]]
    for i in range(1, len(values)):
        if abs(values[i] - values[groups[-1][-1]]) <= CLUSTER_RTOL * scale:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _oracle_eigensystem(h: np.ndarray, ascending_labels=None) -> Eigensystem:
    """Numerical eigensystem with degenerate eigenspaces split per label.

    ``ascending_labels`` maps the ascending spectrum to (m, n) labels; the
    default is descending energy with m as the slower index.
    """
    dec = eig_hermitian(h)
    desc = dec.eigenvalues
    if ascending_labels is None:
        labels_desc = list(_MN)
    else:
        labels_desc = list(reversed(ascending_labels))

    values = np.empty((2, 2))
    states = np.empty((2, 2, 4, 4), dtype=complex)
    degenerate = False
    for group in _cluster(desc):
        if len(group) > 1:
            degenerate = True
        proj = sum(dec.projector(k) for k in group) / len(group)
        val = float(np.mean(desc[list(group)]))
        for k in group:
            m, n = labels_desc[k]
            values[m - 1, n - 1] = val
            states[m - 1, n - 1] = proj
    return _build(values, states, SolveMethod.ORACLE_NUMERIC, degenerate)


def _diagonal_route(c: CoefficientSet, tol: float) -> Eigensystem:
    coeffs = secular_coefficients(derive(c, tol), tol)
    roots = solve_quartic(*coeffs)
    shifted = np.sort(roots.real) + c.upsilon

    # Oracle supplies the projectors; the quartic supplies the values.  Each
    # label keeps its oracle rank, so ascending roots land on the labels
    # holding the ascending oracle energies.
    oracle = _oracle_eigensystem(fano_compose(c))
    order = np.argsort(oracle.values.ravel())
    values_flat = np.empty(4)
    values_flat[order] = shifted
    return _build(
        values_flat.reshape(2, 2),
        oracle.states,
        SolveMethod.QUARTIC_PLUS_ORACLE_VECTORS,
        oracle.degenerate,
    )


def solve(c: CoefficientSet, tol: float = 1e-9) -> Eigensystem:
    """Dispatch a coefficient set to the appropriate eigensystem route.

    Product-form sets take the separable closed form; canonical constrained
    sets the entangled closed form; diagonal-omega sets the secular quartic
    with oracle eigenvectors; constrained sets in a rotated frame are
    reduced to canonical form, solved, and rotated back.  Everything else,
    and any route whose validity check fails, is solved numerically.
    """
    label = classify(c, tol)
    if label.kind is CaseKind.SEPARABLE_DYADIC:
        return solve_separable(*factor_dyadic(c, tol))
    if label.kind is CaseKind.ENTANGLED_CONSTRAINED:
        return solve_entangled(c, tol)
    if label.kind is CaseKind.DIAGONAL_OMEGA:
        try:
            return _diagonal_route(c, tol)
        except CaseReductionError:
            return _oracle_eigensystem(fano_compose(c))

    # General label: a constrained set in a non-canonical frame still admits
    # the closed form after a local-rotation reduction.
    if min(label.residuals["alpha_constraint"], label.residuals["beta_constraint"]) <= tol:
        try:
            canonical, r1, r2 = frame_reduce(c, tol)
        except ConstraintError:
            return _oracle_eigensystem(fano_compose(c))
        if classify(canonical, tol).kind is CaseKind.ENTANGLED_CONSTRAINED:
            es = solve_entangled(canonical, tol)
            u = kron_unitary_from_rotations(r1, r2)
            states = np.einsum("ab,mnbc,cd->mnad", u.conj().T, es.states, u)
            return _build(es.values, states, es.method, es.degenerate)
    return _oracle_eigensystem(fano_compose(c))
