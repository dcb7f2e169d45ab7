"""Coefficient sets of two-qubit Hamiltonians and their derived quantities.

A Hamiltonian on C^2 (x) C^2 is parameterized as

    H = upsilon * I4 + sum_i alpha_i sigma_i (x) I
                     + sum_j beta_j  I (x) sigma_j
                     + sum_ij omega_ij sigma_i (x) sigma_j

with real ``upsilon``, ``alpha``, ``beta`` and ``omega``.  This module houses
the parameterization itself (`CoefficientSet`), the Pauli-basis decomposition
and recomposition, the quadratic/quartic derived quantities used by the
closed-form solvers, the solvable-case classifier, and the local-rotation
reduction to the canonical frame.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintError, NonHermitianError
from .pauli import kron, pauli_word, require_hermitian

# Default relative tolerance for constraint residuals and case detection.
DEFAULT_TOL = 1e-9

_TINY = np.finfo(float).tiny


def _as_readonly(a, shape) -> np.ndarray:
    out = np.array(a, dtype=float).reshape(shape)
    if not np.all(np.isfinite(out)):
        raise ValueError("coefficients must be finite")
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CoefficientSet:
    """Real Pauli-basis coefficients (upsilon, alpha, beta, omega) of a 4x4 Hermitian.

    Instances are immutable; the array fields are read-only views.
    """

    upsilon: float
    alpha: np.ndarray
    beta: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        upsilon = float(self.upsilon)
        if not np.isfinite(upsilon):
            raise ValueError("upsilon must be finite")
        object.__setattr__(self, "upsilon", upsilon)
        object.__setattr__(self, "alpha", _as_readonly(self.alpha, (3,)))
        object.__setattr__(self, "beta", _as_readonly(self.beta, (3,)))
        object.__setattr__(self, "omega", _as_readonly(self.omega, (3, 3)))

    def scale(self) -> float:
        """Euclidean norm of all coefficients, the natural size of the set."""
        return float(
            np.sqrt(
                self.upsilon**2
                + self.alpha @ self.alpha
                + self.beta @ self.beta
                + np.sum(self.omega**2)
            )
        )


def fano_compose(c: CoefficientSet) -> np.ndarray:
    """Assemble the 4x4 Hermitian matrix from its Pauli-basis coefficients."""
    h = c.upsilon * np.eye(4, dtype=complex)
    for i in range(3):
        h += c.alpha[i] * pauli_word(i + 1, 0)
        h += c.beta[i] * pauli_word(0, i + 1)
        for j in range(3):
            if c.omega[i, j] != 0.0:
                h += c.omega[i, j] * pauli_word(i + 1, j + 1)
    return h


def fano_decompose(h: np.ndarray) -> CoefficientSet:
    """Project a Hermitian 4x4 matrix onto the Pauli basis.

    Raises NonHermitianError for non-Hermitian input; the coefficients of a
    Hermitian matrix are real, and any residual imaginary part beyond
    round-off is rejected rather than silently discarded.
    """
    h = require_hermitian(h, "fano_decompose input")
    scale = 1.0 + float(np.max(np.abs(h)))

    def proj(i, j):
        val = np.einsum("ab,ba->", h, pauli_word(i, j)) / 4.0
        if abs(val.imag) > 1e-12 * scale:
            raise NonHermitianError(
                f"Pauli coefficient ({i},{j}) has imaginary part {val.imag:.3e}"
            )
        return val.real

    upsilon = proj(0, 0)
    alpha = np.array([proj(i, 0) for i in (1, 2, 3)])
    beta = np.array([proj(0, j) for j in (1, 2, 3)])
    omega = np.array([[proj(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)])
    return CoefficientSet(upsilon, alpha, beta, omega)


def traceless(c: CoefficientSet) -> np.ndarray:
    """The traceless part of the composed Hamiltonian."""
    return fano_compose(c) - c.upsilon * np.eye(4, dtype=complex)


@dataclass(frozen=True)
class DerivedCoefficients:
    """Quadratic and quartic invariants of a coefficient set.

    ``v_quad`` is 1/4 Tr[Ht^2] for the traceless part Ht; ``a_vec``/``b_vec``
    are the single-qubit Pauli components of Ht^2 and ``w_mat`` its two-qubit
    component.  ``theta`` is 1/4 Tr[(Ht^2 - v_quad I)^2], evaluated exactly
    through the Pauli components as |a_vec|^2 + |b_vec|^2 + phi, and ``phi``
    is Tr[w_mat w_mat^T].  ``theta_phi`` is the constraint-gated variant used
    by the even-spectrum closed forms.  ``det_omega_b`` is the determinant of
    the 2x2 block of omega whenever the third row and column vanish,
    computed frame-independently as (Tr[omega]^2 - Tr[omega^2]) / 2.
    """

    v_quad: float
    a_vec: np.ndarray
    b_vec: np.ndarray
    w_mat: np.ndarray
    theta: float
    phi: float
    theta_phi: float
    s_cubic: float
    det_omega_b: float
    det_omega: float
    alpha_null: bool
    beta_null: bool
    alpha_residual: float
    beta_residual: float


def derive(c: CoefficientSet, tol: float = DEFAULT_TOL) -> DerivedCoefficients:
    """Compute every derived quantity needed by the closed-form machinery.

    The constraint gates ``alpha_null`` (alpha . omega = 0) and ``beta_null``
    (omega . beta = 0) are decided from relative residuals at tolerance
    ``tol``; they select which quadratic-form terms enter ``theta_phi``.
    """
    al, be, om = c.alpha, c.beta, c.omega
    tau = float(np.trace(om))
    om2 = om @ om
    p = tau * tau - float(np.trace(om2))

    a_vec = 2.0 * om @ be
    b_vec = 2.0 * om.T @ al
    w_mat = 2.0 * (np.outer(al, be) - om2.T + tau * om.T) - p * np.eye(3)

    v_quad = float(al @ al + be @ be + np.sum(om * om))
    phi = float(np.sum(w_mat * w_mat))
    theta = float(a_vec @ a_vec + b_vec @ b_vec) + phi
    s_cubic = float(al @ om @ be)

    om_norm = float(np.linalg.norm(om))
    alpha_residual = float(np.linalg.norm(om.T @ al))
    beta_residual = float(np.linalg.norm(om @ be))
    alpha_null = alpha_residual <= tol * (om_norm * np.linalg.norm(al) + _TINY)
    beta_null = beta_residual <= tol * (om_norm * np.linalg.norm(be) + _TINY)

    # |b_vec|^2 = 4 alpha.omega.omega^T.alpha enters when omega.beta = 0,
    # |a_vec|^2 = 4 beta.omega^T.omega.beta when alpha.omega = 0; on the
    # overlap both terms vanish identically.
    theta_phi = phi
    if beta_null:
        theta_phi += float(b_vec @ b_vec)
    if alpha_null:
        theta_phi += float(a_vec @ a_vec)

    return DerivedCoefficients(
        v_quad=v_quad,
        a_vec=a_vec,
        b_vec=b_vec,
        w_mat=w_mat,
        theta=theta,
        phi=phi,
        theta_phi=theta_phi,
        s_cubic=s_cubic,
        det_omega_b=p / 2.0,
        det_omega=float(np.linalg.det(om)),
        alpha_null=alpha_null,
        beta_null=beta_null,
        alpha_residual=alpha_residual,
        beta_residual=beta_residual,
    )


def case01_theta(c: CoefficientSet) -> float:
    """The rank-one-reduction form 4(a.w.w^T.a + b.w^T.w.b + a^2 b^2).

    Equals ``DerivedCoefficients.theta`` exactly when omega is dyadic; kept
    as a documented cross-check of that reduction.
    """
    al, be, om = c.alpha, c.beta, c.omega
    return 4.0 * float(
        al @ om @ om.T @ al + be @ om.T @ om @ be + (al @ al) * (be @ be)
    )


class CaseKind(enum.Enum):
    SEPARABLE_DYADIC = "separable-dyadic"
    DIAGONAL_OMEGA = "diagonal-omega"
    ENTANGLED_CONSTRAINED = "entangled-constrained"
    GENERAL = "general"


class Branch(enum.Enum):
    ALPHA_NULL = "alpha-null"
    BETA_NULL = "beta-null"
    BOTH = "both"


@dataclass(frozen=True)
class Classification:
    kind: CaseKind
    branch: Branch | None = None
    residuals: dict[str, float] = field(default_factory=dict)

    def __str__(self):
        if self.branch is None:
            return self.kind.value
        return f"{self.kind.value}({self.branch.value})"


def _dyadic_residuals(c: CoefficientSet) -> dict[str, float]:
    """Residuals of the product-form factorization H = H1 (x) H2.

    A set factorizes iff omega has rank <= 1 and (with omega = s1 u v^T)
    alpha is parallel to u, beta to v, and upsilon * s1 = (alpha.u)(beta.v).
    For omega = 0 one factor must be scalar, i.e. alpha = 0 or beta = 0.
    """
    al, be = c.alpha, c.beta
    sc = c.scale() + _TINY
    u_mat, svals, vt = np.linalg.svd(c.omega)
    s1 = float(svals[0])
    out = {"rank1": float(svals[1]) / (s1 + _TINY)}
    if s1 <= DEFAULT_TOL * sc:
        # omega = 0: consistent iff one local factor is proportional to I.
        out["factor_consistency"] = float(
            min(np.linalg.norm(al), np.linalg.norm(be)) / sc
        )
        return out
    u, v = u_mat[:, 0], vt[0]
    al_perp = np.linalg.norm(al - (al @ u) * u)
    be_perp = np.linalg.norm(be - (be @ v) * v)
    ups_resid = abs(c.upsilon * s1 - (al @ u) * (be @ v))
    out["factor_consistency"] = float(
        max(al_perp / sc, be_perp / sc, ups_resid / (sc * sc))
    )
    return out


def _axis3_defect(v: np.ndarray) -> float:
    """Relative deviation of a vector from the +/- axis-3 direction (0 for v=0)."""
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return 0.0
    return float(np.hypot(v[0], v[1]) / n)


def _ratio(num: float, den: float) -> float:
    """num/den with the convention 0/0 = 0 (a vanishing scale has no defect)."""
    return float(num / den) if den > 0.0 else 0.0


def classify(c: CoefficientSet, tol: float = DEFAULT_TOL) -> Classification:
    """Assign the coefficient set to one of the solvable cases.

    Precedence: separable-dyadic, then entangled-constrained (canonical
    frame: constrained vector on axis 3 and the matching row/column of omega
    zero), then diagonal-omega, then the general catch-all.  The
    entangled case is tested before the diagonal one because a canonical
    constrained set with diagonal omega admits the full eigenstate closed
    form, which the quartic route does not provide.

    All residuals are relative, so labels are invariant under a global
    rescaling of the set.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    al, be, om = c.alpha, c.beta, c.omega
    d = derive(c, tol)
    om_norm = float(np.linalg.norm(om))
    al_norm = float(np.linalg.norm(al))
    be_norm = float(np.linalg.norm(be))

    residuals = _dyadic_residuals(c)
    residuals.update(
        {
            "alpha_constraint": _ratio(d.alpha_residual, om_norm * al_norm),
            "beta_constraint": _ratio(d.beta_residual, om_norm * be_norm),
            "s_cubic": _ratio(abs(d.s_cubic), om_norm * al_norm * be_norm),
            "offdiagonal": _ratio(
                float(np.max(np.abs(om - np.diag(np.diag(om))))),
                float(np.max(np.abs(om))),
            ),
            "canonical_alpha": max(
                _axis3_defect(al), _ratio(float(np.linalg.norm(om[2, :])), om_norm)
            ),
            "canonical_beta": max(
                _axis3_defect(be), _ratio(float(np.linalg.norm(om[:, 2])), om_norm)
            ),
        }
    )

    if residuals["rank1"] <= tol and residuals["factor_consistency"] <= tol:
        return Classification(CaseKind.SEPARABLE_DYADIC, None, residuals)

    alpha_ok = d.alpha_null and residuals["canonical_alpha"] <= tol
    beta_ok = d.beta_null and residuals["canonical_beta"] <= tol
    if (alpha_ok or beta_ok) and residuals["s_cubic"] <= tol:
        if alpha_ok and beta_ok:
            branch = Branch.BOTH
        elif alpha_ok:
            branch = Branch.ALPHA_NULL
        else:
            branch = Branch.BETA_NULL
        return Classification(CaseKind.ENTANGLED_CONSTRAINED, branch, residuals)

    if residuals["offdiagonal"] <= tol:
        return Classification(CaseKind.DIAGONAL_OMEGA, None, residuals)

    return Classification(CaseKind.GENERAL, None, residuals)


# --- local-rotation machinery -------------------------------------------------


def rotation_to_axis3(v: np.ndarray) -> np.ndarray:
    """Proper rotation mapping v/|v| onto the +3 axis; identity for v = 0."""
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return np.eye(3)
    u = np.asarray(v, dtype=float) / n
    cos_t = u[2]
    if cos_t >= 1.0 - 1e-15:
        return np.eye(3)
    if cos_t <= -1.0 + 1e-15:
        return np.diag([1.0, -1.0, -1.0])
    k = np.array([u[1], -u[0], 0.0])  # u x e3
    kx = np.array([[0.0, 0.0, k[1]], [0.0, 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + kx + kx @ kx / (1.0 + cos_t)


def su2_from_rotation(r: np.ndarray) -> np.ndarray:
    """SU(2) element u with u (v.sigma) u^dag = (R v).sigma.

    Quaternion extraction uses the largest-pivot variant, stable for
    rotations by angles near pi.
    """
    r = np.asarray(r, dtype=float)
    t = np.trace(r)
    cand = np.array([1.0 + t, 1.0 + 2 * r[0, 0] - t, 1.0 + 2 * r[1, 1] - t, 1.0 + 2 * r[2, 2] - t])
    i = int(np.argmax(cand))
    q = np.empty(4)
    s = np.sqrt(max(cand[i], 0.0)) / 2.0
    if i == 0:
        q[0] = s
        q[1] = (r[2, 1] - r[1, 2]) / (4 * s)
        q[2] = (r[0, 2] - r[2, 0]) / (4 * s)
        q[3] = (r[1, 0] - r[0, 1]) / (4 * s)
    elif i == 1:
        q[1] = s
        q[0] = (r[2, 1] - r[1, 2]) / (4 * s)
        q[2] = (r[0, 1] + r[1, 0]) / (4 * s)
        q[3] = (r[0, 2] + r[2, 0]) / (4 * s)
    elif i == 2:
        q[2] = s
        q[0] = (r[0, 2] - r[2, 0]) / (4 * s)
        q[1] = (r[0, 1] + r[1, 0]) / (4 * s)
        q[3] = (r[1, 2] + r[2, 1]) / (4 * s)
    else:
        q[3] = s
        q[0] = (r[1, 0] - r[0, 1]) / (4 * s)
        q[1] = (r[0, 2] + r[2, 0]) / (4 * s)
        q[2] = (r[1, 2] + r[2, 1]) / (4 * s)
    q /= np.linalg.norm(q)
    w, x, y, z = q
    # u = cos(t/2) I - i sin(t/2) n.sigma  ==  w I - i (x sx + y sy + z sz)
    return np.array([[w - 1j * z, -1j * x - y], [-1j * x + y, w + 1j * z]], dtype=complex)


def rotate_set(c: CoefficientSet, r1: np.ndarray, r2: np.ndarray) -> CoefficientSet:
    """Apply local frame rotations: alpha -> R1 a, beta -> R2 b, omega -> R1 w R2^T."""
    return CoefficientSet(
        c.upsilon, r1 @ c.alpha, r2 @ c.beta, r1 @ c.omega @ r2.T
    )


def kron_unitary_from_rotations(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    """The local unitary u1 (x) u2 realizing a pair of frame rotations.

    Satisfies U fano_compose(c) U^dag = fano_compose(rotate_set(c, r1, r2)).
    """
    return kron(su2_from_rotation(r1), su2_from_rotation(r2))


def _symmetrize_angle(b: np.ndarray) -> float:
    """Rotation angle t with G(t)^T B symmetric for the 2x2 block B."""
    return float(np.arctan2(b[1, 0] - b[0, 1], b[0, 0] + b[1, 1]))


def _plane_rotation(theta: float) -> np.ndarray:
    ct, st = np.cos(theta), np.sin(theta)
    return np.array([[ct, -st, 0.0], [st, ct, 0.0], [0.0, 0.0, 1.0]])


def frame_reduce(
    c: CoefficientSet, tol: float = DEFAULT_TOL
) -> tuple[CoefficientSet, np.ndarray, np.ndarray]:
    """Rotate a constrained set into the canonical frame.

    Requires alpha . omega = 0 or omega . beta = 0 within ``tol`` (relative).
    The returned set has the constrained vector along the +3 axis, the
    matching third row (alpha branch) or column (beta branch) of omega zero
    together with the opposite one, and a symmetric upper-left 2x2 block.
    Returns ``(canonical_set, r1, r2)`` with proper rotations acting as in
    :func:`rotate_set`; the spectrum is invariant.
    """
    al, be, om = c.alpha, c.beta, c.omega
    om_norm = float(np.linalg.norm(om))
    res_a = _ratio(float(np.linalg.norm(om.T @ al)), om_norm * float(np.linalg.norm(al)))
    res_b = _ratio(float(np.linalg.norm(om @ be)), om_norm * float(np.linalg.norm(be)))
    if res_a > tol and res_b > tol:
        raise ConstraintError(
            f"neither constraint holds: alpha.omega residual {res_a:.3e}, "
            f"omega.beta residual {res_b:.3e}"
        )

    if res_a <= res_b:
        r1, r2 = _reduce_alpha_side(al, om, om_norm, tol)
    else:
        # Mirror problem: the beta side of omega is the alpha side of omega^T.
        r2, r1 = _reduce_alpha_side(be, om.T, om_norm, tol)
    return rotate_set(c, r1, r2), r1, r2


def _reduce_alpha_side(
    al: np.ndarray, om: np.ndarray, om_norm: float, tol: float
) -> tuple[np.ndarray, np.ndarray]:
    """Build (R1, R2) for the alpha-side reduction of omega."""
    if np.linalg.norm(al) > 0.0:
        r1 = rotation_to_axis3(al)
    else:
        # Degenerate constraint: any left rotation is admissible.  Keep the
        # identity when the third row already vanishes, otherwise rotate the
        # left null direction of omega onto axis 3.
        if np.linalg.norm(om[2, :]) <= tol * om_norm:
            r1 = np.eye(3)
        else:
            u_mat, svals, _ = np.linalg.svd(om)
            if svals[2] > tol * (svals[0] + _TINY):
                raise ConstraintError(
                    "alpha = 0 with full-rank omega cannot be reduced to the "
                    "canonical block form"
                )
            r1 = rotation_to_axis3(u_mat[:, 2])
    om1 = r1 @ om
    # Right rotation clearing the third column: right singular frame of the
    # 2x3 upper block (its rank is at most 2).
    _, _, vt = np.linalg.svd(om1[:2, :])
    r2 = vt
    if np.linalg.det(r2) < 0:
        r2 = np.diag([1.0, 1.0, -1.0]) @ r2
    om2 = om1 @ r2.T
    # Left in-plane rotation symmetrizing the block; leaves axis 3 fixed.
    g = _plane_rotation(_symmetrize_angle(om2[:2, :2]))
    return g.T @ r1, r2
