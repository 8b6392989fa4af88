"""Concrete representations of rational matrix functions.

Four interchangeable forms are provided, each evaluable at any finite point
of the complex plane away from its poles:

* :class:`BlaschkePotapovForm` -- an ordered product of degree-one
  circle-unitary factors ``I + (phi(z) - 1) v v*`` times a constant
  (co)isometry,
* :class:`StateSpaceRealization` -- ``F(z) = C (zI - A)^{-1} B + D``,
* :class:`MFDForm` -- a right or left matrix fraction
  ``N(z) Delta(z)^{-1}`` / ``Delta(z)^{-1} N(z)`` with polynomial blocks,
* :class:`LaurentPolyForm` -- ``z^q (B_0 + z B_1 + ... + z^g B_g)``.

Forms are immutable: constructors validate and copy their inputs and the
stored arrays are marked read-only.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EvalAtPole, SingularDenominator
from .linalg import as_complex_matrix

ISO = "iso"
COISO = "coiso"
RIGHT = "right"
LEFT = "left"

#: Finite poles must keep at least this margin from the unit circle.
POLE_CIRCLE_MARGIN = 1e-8
#: Evaluation refuses points closer than this to a pole.
EVAL_POLE_MARGIN = 1e-9
#: Direction vectors within this distance of unit norm are renormalized.
DIRECTION_NORM_SLACK = 1e-6
#: Norms this close to one are left untouched, keeping round trips bit-exact.
DIRECTION_RENORM_SKIP = 1e-14
#: Constant blocks must be (co)isometric within this tolerance.
CONSTANT_ISOMETRY_TOL = 1e-10
#: Probe points at which MFD denominators must have nonzero determinant.
MFD_RANK_PROBES = (0.3 + 0.4j, 1.7 + 0.0j, -0.9j)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


class Pole:
    """Pole of a Blaschke factor: a finite point off the unit circle, or infinity."""

    __slots__ = ("_value",)

    def __init__(self, value: complex | None):
        if value is not None:
            value = complex(value)
            if abs(abs(value) - 1.0) <= POLE_CIRCLE_MARGIN:
                raise ValueError(
                    f"pole {value} is within {POLE_CIRCLE_MARGIN:.0e} of the unit circle"
                )
        self._value = value

    @classmethod
    def finite(cls, alpha: complex) -> "Pole":
        return cls(complex(alpha))

    @classmethod
    def infinity(cls) -> "Pole":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self._value is None

    @property
    def value(self) -> complex:
        if self._value is None:
            raise ValueError("pole at infinity has no finite value")
        return self._value

    def flipped(self) -> "Pole":
        """Reflect through the unit circle: alpha -> 1/conj(alpha), 0 <-> infinity."""
        if self.is_infinity:
            return Pole(0.0)
        if self._value == 0:
            return Pole.infinity()
        return Pole(1.0 / self._value.conjugate())

    def __eq__(self, other):
        return isinstance(other, Pole) and self._value == other._value

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return "Pole(infinity)" if self.is_infinity else f"Pole({self._value!r})"


def blaschke_scalar(pole: Pole, z: complex) -> complex:
    """Scalar Blaschke factor ``phi(z) = (1 - conj(alpha) z) / (z - alpha)``.

    The pole-at-infinity limit is ``phi(z) = z``.  On the unit circle
    ``|phi(z)| = 1`` for every admissible pole.
    """
    z = complex(z)
    if pole.is_infinity:
        return z
    alpha = pole.value
    if abs(z - alpha) <= 1e-12:
        raise EvalAtPole(f"evaluation point {z} coincides with pole {alpha}")
    return (1.0 - alpha.conjugate() * z) / (z - alpha)


def _blaschke_many(pole: Pole, zs: np.ndarray) -> np.ndarray:
    if pole.is_infinity:
        return zs
    alpha = pole.value
    dist = np.abs(zs - alpha)
    if np.any(dist <= 1e-12):
        raise EvalAtPole(f"an evaluation point coincides with pole {alpha}")
    return (1.0 - alpha.conjugate() * zs) / (zs - alpha)


def _as_direction(v, k: int) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape != (k,):
        raise DimensionMismatch(f"direction must have length {k}, got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("direction contains non-finite entries")
    return v


class BlaschkePotapovForm:
    """Ordered product of rank-one Blaschke factors times a constant (co)isometry.

    ``side="iso"`` (p >= m) represents ``F(z) = B_1(z) ... B_d(z) @ constant``
    with ``p``-dimensional factors; ``side="coiso"`` (m >= p) represents
    ``F(z) = constant @ B_1(z) ... B_d(z)`` with ``m``-dimensional factors.
    ``factors[0]`` is always the leftmost factor of the product, and each
    factor is ``B(z) = I + (phi(z) - 1) v v*`` for a unit vector ``v``.

    Pass ``validate=False`` to store out-of-contract data verbatim (used by
    tests that need deliberately broken inputs).
    """

    def __init__(self, side, p, m, factors, constant, validate: bool = True):
        if side not in (ISO, COISO):
            raise ValueError(f"side must be {ISO!r} or {COISO!r}, got {side!r}")
        p, m = int(p), int(m)
        if p < 1 or m < 1:
            raise DimensionMismatch("dimensions must be at least 1")
        if validate and side == ISO and p < m:
            raise DimensionMismatch(f"iso side requires p >= m, got p={p}, m={m}")
        if validate and side == COISO and m < p:
            raise DimensionMismatch(f"coiso side requires m >= p, got p={p}, m={m}")
        self.side = side
        self.p = p
        self.m = m
        k = self.factor_dimension
        packed = []
        for pole, v in factors:
            if not isinstance(pole, Pole):
                pole = Pole(pole)
            v = _as_direction(v, k)
            if validate:
                norm = float(np.linalg.norm(v))
                if abs(norm - 1.0) > DIRECTION_NORM_SLACK:
                    raise ValueError(
                        f"direction norm {norm} is further than "
                        f"{DIRECTION_NORM_SLACK:.0e} from one"
                    )
                if abs(norm - 1.0) > DIRECTION_RENORM_SKIP:
                    v = v / norm
            packed.append((pole, _readonly(v)))
        self.factors = tuple(packed)
        constant = as_complex_matrix(constant, "constant")
        if constant.shape != (p, m):
            raise DimensionMismatch(
                f"constant must be {p}x{m}, got {constant.shape}"
            )
        if validate:
            if side == ISO:
                gram = constant.conj().T @ constant - np.eye(m)
            else:
                gram = constant @ constant.conj().T - np.eye(p)
            residual = float(np.linalg.norm(gram))
            if residual > CONSTANT_ISOMETRY_TOL:
                raise ValueError(
                    f"constant is not a (co)isometry: residual {residual:.3e}"
                )
        self.constant = _readonly(constant)

    @property
    def d(self) -> int:
        """Number of degree-one factors."""
        return len(self.factors)

    @property
    def factor_dimension(self) -> int:
        return self.p if self.side == ISO else self.m

    @property
    def poles(self) -> tuple:
        return tuple(pole for pole, _ in self.factors)

    def _check_eval_point(self, z: complex) -> None:
        for pole in self.poles:
            if not pole.is_infinity and abs(z - pole.value) <= EVAL_POLE_MARGIN:
                raise EvalAtPole(f"{z} is within {EVAL_POLE_MARGIN:.0e} of pole {pole.value}")

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        self._check_eval_point(z)
        out = np.array(self.constant, dtype=complex)
        if self.side == ISO:
            # Apply factors from the right end of the product outwards.
            for pole, v in reversed(self.factors):
                out += np.outer((blaschke_scalar(pole, z) - 1.0) * v, v.conj() @ out)
        else:
            for pole, v in self.factors:
                out += np.outer(out @ v, (blaschke_scalar(pole, z) - 1.0) * v.conj())
        return out

    def eval_many(self, zs) -> np.ndarray:
        """Evaluate at a batch of points; returns an ``(n, p, m)`` array."""
        zs = np.asarray(zs, dtype=complex).reshape(-1)
        for pole in self.poles:
            if not pole.is_infinity and np.any(np.abs(zs - pole.value) <= EVAL_POLE_MARGIN):
                raise EvalAtPole(f"a point is within {EVAL_POLE_MARGIN:.0e} of pole {pole.value}")
        out = np.broadcast_to(self.constant, (zs.size, self.p, self.m)).copy()
        if self.side == ISO:
            for pole, v in reversed(self.factors):
                gain = _blaschke_many(pole, zs) - 1.0
                projected = np.einsum("k,nkm->nm", v.conj(), out)
                out += gain[:, None, None] * v[None, :, None] * projected[:, None, :]
        else:
            for pole, v in self.factors:
                gain = _blaschke_many(pole, zs) - 1.0
                projected = out @ v
                out += gain[:, None, None] * projected[:, :, None] * v.conj()[None, None, :]
        return out


class StateSpaceRealization:
    """State-space form ``F(z) = C (zI - A)^{-1} B + D``.

    The blocks assemble into the ``(n+p) x (n+m)`` realization matrix
    ``R = [[A, B], [C, D]]``.  ``n = 0`` (constant functions) is allowed; the
    state blocks are then empty.
    """

    def __init__(self, a, b, c, d):
        a = as_complex_matrix(a, "a")
        b = as_complex_matrix(b, "b")
        c = as_complex_matrix(c, "c")
        d = as_complex_matrix(d, "d")
        n = a.shape[0]
        if a.shape != (n, n):
            raise DimensionMismatch(f"a must be square, got {a.shape}")
        if b.shape[0] != n:
            raise DimensionMismatch(f"b must have {n} rows, got {b.shape}")
        if c.shape[1] != n:
            raise DimensionMismatch(f"c must have {n} columns, got {c.shape}")
        if d.shape != (c.shape[0], b.shape[1]):
            raise DimensionMismatch(
                f"d must be {c.shape[0]}x{b.shape[1]}, got {d.shape}"
            )
        self.a = _readonly(a)
        self.b = _readonly(b)
        self.c = _readonly(c)
        self.d = _readonly(d)
        self._eigenvalues = None

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def m(self) -> int:
        return self.b.shape[1]

    @property
    def p(self) -> int:
        return self.c.shape[0]

    @property
    def realization_matrix(self) -> np.ndarray:
        return np.block([[self.a, self.b], [self.c, self.d]])

    def pole_candidates(self) -> np.ndarray:
        """Eigenvalues of A (a superset of the poles when non-minimal)."""
        if self._eigenvalues is None:
            if self.n == 0:
                self._eigenvalues = np.zeros(0, dtype=complex)
            else:
                self._eigenvalues = np.linalg.eigvals(self.a)
        return self._eigenvalues

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        if self.n == 0:
            return np.array(self.d)
        if np.any(np.abs(self.pole_candidates() - z) <= EVAL_POLE_MARGIN):
            raise EvalAtPole(f"{z} is within {EVAL_POLE_MARGIN:.0e} of a pole of A")
        resolvent = np.linalg.solve(z * np.eye(self.n) - self.a, self.b)
        return self.d + self.c @ resolvent


class MFDForm:
    """Right or left matrix fraction with numerator/denominator of equal degree.

    ``side="right"``: ``F(z) = N(z) Delta(z)^{-1}`` with ``Delta`` of size
    ``m x m``.  ``side="left"``: ``F(z) = Delta(z)^{-1} N(z)`` with ``Delta``
    of size ``p x p``.  Coefficient lists run from the constant term upward
    and must have equal length (pad with zero matrices as needed).  The
    denominator must have full normal rank, checked at three fixed probe
    points.
    """

    def __init__(self, side, num: Sequence, den: Sequence, validate: bool = True):
        if side not in (RIGHT, LEFT):
            raise ValueError(f"side must be {RIGHT!r} or {LEFT!r}, got {side!r}")
        num = [as_complex_matrix(x, "num coefficient") for x in num]
        den = [as_complex_matrix(x, "den coefficient") for x in den]
        if not num or not den:
            raise DimensionMismatch("coefficient lists must be non-empty")
        if len(num) != len(den):
            raise DimensionMismatch(
                f"num and den must have equal length, got {len(num)} and {len(den)}"
            )
        p, m = num[0].shape
        for x in num:
            if x.shape != (p, m):
                raise DimensionMismatch("numerator coefficients must share dimensions")
        dk = m if side == RIGHT else p
        for x in den:
            if x.shape != (dk, dk):
                raise DimensionMismatch(
                    f"denominator coefficients must be {dk}x{dk}, got {x.shape}"
                )
        self.side = side
        self.p = p
        self.m = m
        self.num = tuple(_readonly(x) for x in num)
        self.den = tuple(_readonly(x) for x in den)
        if validate:
            for z0 in MFD_RANK_PROBES:
                det = np.linalg.det(self.den_at(z0))
                if abs(det) <= 1e-12:
                    raise SingularDenominator(
                        f"denominator is singular at probe point {z0}"
                    )

    @property
    def degree(self) -> int:
        return len(self.num) - 1

    def num_at(self, z: complex) -> np.ndarray:
        return _poly_at(self.num, z)

    def den_at(self, z: complex) -> np.ndarray:
        return _poly_at(self.den, z)

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        den = self.den_at(z)
        if np.linalg.cond(den) > 1e12:
            raise SingularDenominator(f"denominator is not invertible at {z}")
        if self.side == RIGHT:
            return np.linalg.solve(den.conj().T, self.num_at(z).conj().T).conj().T
        return np.linalg.solve(den, self.num_at(z))


def _poly_at(coeffs, z: complex) -> np.ndarray:
    out = np.zeros_like(coeffs[0])
    for coeff in reversed(coeffs):
        out = z * out + coeff
    return out


class LaurentPolyForm:
    """Laurent polynomial ``F(z) = z^q (B_0 + z B_1 + ... + z^g B_g)``.

    Leading or trailing coefficients may be zero; no normalization is
    applied.  ``q < 0`` puts a pole at the origin.
    """

    def __init__(self, q: int, coeffs: Sequence):
        coeffs = [as_complex_matrix(x, "coefficient") for x in coeffs]
        if not coeffs:
            raise DimensionMismatch("coefficient list must be non-empty")
        p, m = coeffs[0].shape
        for x in coeffs:
            if x.shape != (p, m):
                raise DimensionMismatch("coefficients must share dimensions")
        self.q = int(q)
        self.p = p
        self.m = m
        self.coeffs = tuple(_readonly(x) for x in coeffs)

    @property
    def gamma(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        if self.q < 0 and abs(z) <= EVAL_POLE_MARGIN:
            raise EvalAtPole("Laurent form with q < 0 has a pole at the origin")
        return (z ** self.q) * _poly_at(self.coeffs, z)


def evaluate(form, z: complex) -> np.ndarray:
    """Evaluate any of the four forms at a finite point ``z``."""
    if not isinstance(
        form, (BlaschkePotapovForm, StateSpaceRealization, MFDForm, LaurentPolyForm)
    ):
        raise TypeError(f"cannot evaluate object of type {type(form).__name__}")
    return form(z)


def _phase_correction(pole: Pole) -> complex:
    """Unimodular constant c with 1/phi_alpha = c * phi_{1/conj(alpha)}."""
    if pole.is_infinity or pole.value == 0:
        return 1.0 + 0.0j
    return pole.value / pole.value.conjugate()


def _fold_right(items, k: int):
    """Normalize a mixed factor/constant chain, pushing constants rightward.

    ``items`` is a sequence of ``(Pole, direction)`` factors and ``k x k``
    unitary constants, read left to right as a matrix product.  Returns
    ``(factors, g)`` with the product equal to ``factors`` applied in order
    followed by the constant ``g``.
    """
    g = np.eye(k, dtype=complex)
    factors = []
    for item in items:
        if isinstance(item, tuple):
            pole, v = item
            factors.append((pole, g @ v))
        else:
            g = g @ item
    return factors, g


def _fold_left(items, k: int):
    """Mirror of :func:`_fold_right`: product equals constant ``g`` then factors."""
    g = np.eye(k, dtype=complex)
    factors = []
    for item in reversed(items):
        if isinstance(item, tuple):
            pole, v = item
            factors.insert(0, (pole, g.conj().T @ v))
        else:
            g = item @ g
    return factors, g


def conjugate(f: BlaschkePotapovForm) -> BlaschkePotapovForm:
    """Reflected adjoint ``F#(z) = (F(1/conj(z)))*`` as a product form.

    The result swaps iso and coiso sides, reverses the factor order and
    reflects every pole through the unit circle (``0 <-> infinity``).
    Inverting a factor with a non-real pole leaves behind a unimodular
    constant; those constants are folded into the directions and the final
    constant block, so the returned form matches ``F#`` exactly pointwise.
    On the unit circle ``F#`` coincides with the entrywise adjoint of ``F``.
    """
    k = f.factor_dimension
    items = []
    for pole, v in reversed(f.factors):
        items.append((pole.flipped(), v))
        c = _phase_correction(pole)
        if c != 1.0:
            items.append(np.eye(k, dtype=complex) + (c - 1.0) * np.outer(v, v.conj()))
    if f.side == ISO:
        factors, g = _fold_left(items, k)
        constant = f.constant.conj().T @ g
        return BlaschkePotapovForm(COISO, f.m, f.p, factors, constant)
    factors, g = _fold_right(items, k)
    constant = g @ f.constant.conj().T
    return BlaschkePotapovForm(ISO, f.m, f.p, factors, constant)
