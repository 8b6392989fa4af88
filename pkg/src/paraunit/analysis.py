"""Certification tests for unit-circle (co)isometry.

Three independent characterizations are implemented:

* direct sampling of ``F*F - I`` (or ``F F* - I``) on the unit circle,
* the realization-matrix (co)isometry condition for Schur-stable
  state-space forms, together with the gramian certificates,
* block-Hankel conditions on matrix-fraction and Laurent coefficients.

Sampling is a necessary-condition screen; the Hankel and realization tests
are exact certificates.  Every test returns a :class:`Certificate` carrying
the raw residual so callers can re-threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotSchurStable, SideMismatch
from .forms import (
    COISO,
    ISO,
    LEFT,
    RIGHT,
    BlaschkePotapovForm,
    LaurentPolyForm,
    MFDForm,
    StateSpaceRealization,
    evaluate,
)
from .linalg import hermitian_eig, solve_stein, spectral_radius

#: Default number of unit-circle sample points.
CIRCLE_SAMPLES = 64
#: Default tolerance of the circle-sampling certificate.
CIRCLE_TOL = 1e-8
#: Default tolerance of the realization-matrix certificate.
REALIZATION_TOL = 1e-10
#: Default tolerance of the gramian certificates.
GRAMIAN_TOL = 1e-8
#: Base tolerance of the Hankel certificates (scaled by coefficient mass
#: for the matrix-fraction test).
HANKEL_TOL = 1e-9
#: Eigenvalues of the gramian product above this count toward the degree.
DEGREE_RANK_TOL = 1e-9


@dataclass(frozen=True)
class Certificate:
    """Outcome of a single certification test.

    ``verdict`` is ``"Pass"`` exactly when ``residual <= tolerance``; the
    raw residual is always kept so callers can apply their own threshold.
    ``witness`` optionally carries the residual matrix or an eigenvalue list.
    """

    name: str
    residual: float
    tolerance: float
    witness: object = field(default=None, compare=False, repr=False)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    @property
    def verdict(self) -> str:
        return "Pass" if self.passed else "Fail"


def circle_residual(form, samples: int = CIRCLE_SAMPLES, tol: float = CIRCLE_TOL) -> Certificate:
    """Worst deviation from (co)isometry over equispaced circle points.

    Evaluates the form at ``z_k = exp(2 pi i k / N)`` and reports the largest
    Frobenius norm of ``F*F - I_m`` (tall case) or ``F F* - I_p`` (wide
    case).
    """
    if samples < 8:
        raise ValueError(f"need at least 8 samples, got {samples}")
    p, m = form.p, form.m
    eye = np.eye(min(p, m))
    worst = 0.0
    worst_witness = None
    for k in range(samples):
        z = np.exp(2j * np.pi * k / samples)
        value = evaluate(form, z)
        if p >= m:
            gram = value.conj().T @ value - eye
        else:
            gram = value @ value.conj().T - eye
        deviation = float(np.linalg.norm(gram))
        if deviation >= worst:
            worst = deviation
            worst_witness = gram
    return Certificate("circle_residual", worst, tol, witness=worst_witness)


def realization_check(ss: StateSpaceRealization, tol: float = REALIZATION_TOL) -> Certificate:
    """(Co)isometry of the realization matrix ``R = [[A, B], [C, D]]``.

    Tall systems must satisfy ``R* R = I``, wide systems ``R R* = I``;
    square systems are held to both (the reported residual is the larger
    one).  For a Schur-stable system this is the exact losslessness
    certificate.
    """
    r = ss.realization_matrix
    n, p, m = ss.n, ss.p, ss.m
    iso_gram = r.conj().T @ r - np.eye(n + m)
    coiso_gram = r @ r.conj().T - np.eye(n + p)
    iso_res = float(np.linalg.norm(iso_gram))
    coiso_res = float(np.linalg.norm(coiso_gram))
    if p > m:
        return Certificate("realization_isometry", iso_res, tol, witness=iso_gram)
    if m > p:
        return Certificate("realization_coisometry", coiso_res, tol, witness=coiso_gram)
    return Certificate(
        "realization_unitary",
        max(iso_res, coiso_res),
        tol,
        witness=np.array([iso_res, coiso_res]),
    )


def gramian_certificate(ss: StateSpaceRealization, tol: float = GRAMIAN_TOL):
    """Gramians of a Schur-stable realization plus the losslessness tests.

    Solves ``W_cont - A W_cont A* = B B*`` and ``W_obs - A* W_obs A = C* C``.
    A lossless tall system in this realization class has ``W_obs = I`` and
    ``I - W_cont`` positive semidefinite; wide systems mirror the roles, and
    square systems have both gramians equal to the identity.

    Returns ``(w_cont, w_obs, certificates)``.
    """
    n, p, m = ss.n, ss.p, ss.m
    if n > 0 and spectral_radius(ss.a) >= 1.0:
        raise NotSchurStable("gramians require a Schur-stable state matrix")
    w_cont = solve_stein(ss.a, ss.b @ ss.b.conj().T, side="cont")
    w_obs = solve_stein(ss.a, ss.c.conj().T @ ss.c, side="obs")
    eye = np.eye(n)

    def identity_cert(name, w):
        return Certificate(name, float(np.linalg.norm(w - eye)), tol, witness=w - eye)

    def contraction_cert(name, w):
        if n == 0:
            return Certificate(name, 0.0, tol, witness=np.zeros(0))
        values, _ = hermitian_eig(eye - w)
        return Certificate(name, max(0.0, -float(values[0])), tol, witness=values)

    if p > m:
        certs = [
            identity_cert("gramian_obs_identity", w_obs),
            contraction_cert("gramian_cont_contraction", w_cont),
        ]
    elif m > p:
        certs = [
            identity_cert("gramian_cont_identity", w_cont),
            contraction_cert("gramian_obs_contraction", w_obs),
        ]
    else:
        certs = [
            identity_cert("gramian_cont_identity", w_cont),
            identity_cert("gramian_obs_identity", w_obs),
        ]
    return w_cont, w_obs, certs


def block_hankel(coeffs) -> np.ndarray:
    """Anti-diagonal block Hankel matrix of a coefficient list.

    Block ``(i, j)`` is ``coeffs[i + j]`` when ``i + j <= L`` (zero
    otherwise), where ``L + 1`` is the number of coefficients.
    """
    coeffs = [np.asarray(c, dtype=complex) for c in coeffs]
    if not coeffs:
        raise DimensionMismatch("coefficient list must be non-empty")
    k1, k2 = coeffs[0].shape
    for c in coeffs:
        if c.shape != (k1, k2):
            raise DimensionMismatch("all coefficient blocks must share dimensions")
    count = len(coeffs)
    out = np.zeros((k1 * count, k2 * count), dtype=complex)
    for i in range(count):
        for j in range(count - i):
            out[i * k1 : (i + 1) * k1, j * k2 : (j + 1) * k2] = coeffs[i + j]
    return out


def mfd_check(mfd: MFDForm, tol: float | None = None) -> Certificate:
    """Hankel certificate for a matrix-fraction description.

    Right fractions (``p >= m``) must satisfy
    ``(H_den* H_den - H_num* H_num) @ [I_m; 0] = 0`` and left fractions
    (``m >= p``) the mirrored ``[I_p 0]``-column condition.  Coprimeness of
    the fraction is not required.  The default tolerance scales with the
    squared Frobenius mass of the denominator coefficients.
    """
    p, m = mfd.p, mfd.m
    if mfd.side == RIGHT and p < m:
        raise SideMismatch(f"right-side test requires p >= m, got p={p}, m={m}")
    if mfd.side == LEFT and m < p:
        raise SideMismatch(f"left-side test requires m >= p, got p={p}, m={m}")
    h_num = block_hankel(mfd.num)
    h_den = block_hankel(mfd.den)
    den_mass = float(sum(np.linalg.norm(c) ** 2 for c in mfd.den))
    if tol is None:
        tol = HANKEL_TOL * (1.0 + den_mass)
    if mfd.side == RIGHT:
        gap = h_den.conj().T @ h_den - h_num.conj().T @ h_num
        witness = gap[:, :m]
        name = "mfd_hankel_right"
    else:
        gap = h_den @ h_den.conj().T - h_num @ h_num.conj().T
        witness = gap[:, :p]
        name = "mfd_hankel_left"
    return Certificate(name, float(np.linalg.norm(witness)), tol, witness=witness)


def laurent_check(lp: LaurentPolyForm, tol: float = HANKEL_TOL) -> Certificate:
    """Hankel certificate for a Laurent polynomial.

    Tests ``(I - H0* H0) @ [I_m; 0] = 0`` for ``p >= m`` and the mirrored
    row condition for ``m > p``.  The verdict does not depend on the
    exponent offset ``q``.
    """
    h0 = block_hankel(lp.coeffs)
    p, m = lp.p, lp.m
    count = len(lp.coeffs)
    if p >= m:
        gap = np.eye(m * count) - h0.conj().T @ h0
        witness = gap[:, :m]
        name = "laurent_hankel_tall"
    else:
        gap = np.eye(p * count) - h0 @ h0.conj().T
        witness = gap[:p, :]
        name = "laurent_hankel_wide"
    return Certificate(name, float(np.linalg.norm(witness)), tol, witness=witness)


def mcmillan_degree(ss: StateSpaceRealization, rank_tol: float = DEGREE_RANK_TOL) -> int:
    """Hankel rank of a Schur-stable realization.

    Counts the eigenvalues of the symmetrized gramian product
    ``W_cont^{1/2} W_obs W_cont^{1/2}`` (the squared Hankel singular
    values) exceeding ``rank_tol``.
    """
    if ss.n == 0:
        return 0
    if spectral_radius(ss.a) >= 1.0:
        raise NotSchurStable("degree estimate requires a Schur-stable state matrix")
    w_cont = solve_stein(ss.a, ss.b @ ss.b.conj().T, side="cont")
    w_obs = solve_stein(ss.a, ss.c.conj().T @ ss.c, side="obs")
    values, vectors = hermitian_eig(w_cont)
    root = vectors @ np.diag(np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T
    product_values, _ = hermitian_eig(root @ w_obs @ root)
    return int(np.count_nonzero(product_values > rank_tol))
