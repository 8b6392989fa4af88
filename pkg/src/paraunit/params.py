"""Real-angle parametrization of unit-circle (co)isometric product forms.

A degree-``d`` ``p x m`` form is described by ``d`` pole slots (origin,
infinity, or a polar radius/angle pair off the unit circle), ``2(k - 1)``
angles per factor direction (``k = p`` tall, ``k = m`` wide; the global
phase of a direction is redundant because only ``v v*`` enters the factor),
and ``m(2p - m)`` (tall) or ``p(2m - p)`` (wide) angles for the constant
block.  Every point of the parameter set maps to a function that is
(co)isometric on the circle by construction, so optimization over the set
never needs a feasibility penalty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AngleCountMismatch, DimensionMismatch
from .forms import COISO, ISO, BlaschkePotapovForm, Pole
from .linalg import unitary_completion

#: Random polar radii keep this margin from the unit circle.
RADIUS_MARGIN = 1e-3
#: Upper bound on random outside-the-disk radii (infinity covers the far limit).
RADIUS_MAX = 10.0

ZERO = "zero"
INFINITY = "infinity"
POLAR = "polar"


@dataclass(frozen=True)
class PoleParam:
    """One pole slot: the origin, infinity, or a polar pair ``r e^{i theta}``."""

    kind: str
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if self.kind not in (ZERO, INFINITY, POLAR):
            raise ValueError(f"unknown pole kind {self.kind!r}")
        if self.kind == POLAR:
            if self.r <= 0.0:
                raise ValueError("polar radius must be positive")
            if abs(self.r - 1.0) <= 1e-8:
                raise ValueError("polar radius must stay off the unit circle")

    @classmethod
    def zero(cls) -> "PoleParam":
        return cls(ZERO)

    @classmethod
    def infinity(cls) -> "PoleParam":
        return cls(INFINITY)

    @classmethod
    def polar(cls, r: float, theta: float) -> "PoleParam":
        return cls(POLAR, float(r), float(theta))

    @property
    def is_schur(self) -> bool:
        return self.kind == ZERO or (self.kind == POLAR and self.r < 1.0)

    def to_pole(self) -> Pole:
        if self.kind == ZERO:
            return Pole(0.0)
        if self.kind == INFINITY:
            return Pole.infinity()
        return Pole(self.r * np.exp(1j * self.theta))


def param_count(side: str, p: int, m: int, d: int):
    """Pole-slot and angle counts of the parametrization.

    Tall (iso) forms need ``2 d (p - 1) + m (2 p - m)`` angles, wide (coiso)
    forms ``2 d (m - 1) + p (2 m - p)``; both need ``d`` pole slots.
    """
    if p < 1 or m < 1 or d < 0:
        raise DimensionMismatch("require p, m >= 1 and d >= 0")
    if side == ISO:
        if p < m:
            raise DimensionMismatch("iso side requires p >= m")
        return d, 2 * d * (p - 1) + m * (2 * p - m)
    if side == COISO:
        if m < p:
            raise DimensionMismatch("coiso side requires m >= p")
        return d, 2 * d * (m - 1) + p * (2 * m - p)
    raise ValueError(f"side must be {ISO!r} or {COISO!r}, got {side!r}")


@dataclass(frozen=True)
class ParaunitaryParam:
    """Full real parameter vector for one product form.

    ``directions[j]`` holds the ``2(k - 1)`` angles of factor ``j`` (first
    the ``k - 1`` polar angles, then the ``k - 1`` free phases; the leading
    phase is fixed to zero).  ``frame`` holds the constant-block angles.
    """

    side: str
    p: int
    m: int
    d: int
    poles: tuple
    directions: tuple
    frame: tuple

    def __post_init__(self):
        pole_slots, angle_count = param_count(self.side, self.p, self.m, self.d)
        if len(self.poles) != pole_slots:
            raise AngleCountMismatch(
                f"expected {pole_slots} pole slots, got {len(self.poles)}"
            )
        for pole in self.poles:
            if not isinstance(pole, PoleParam):
                raise TypeError("pole slots must be PoleParam instances")
        k = self.p if self.side == ISO else self.m
        per_factor = 2 * (k - 1)
        object.__setattr__(
            self,
            "directions",
            tuple(tuple(float(a) for a in row) for row in self.directions),
        )
        object.__setattr__(self, "frame", tuple(float(a) for a in self.frame))
        if len(self.directions) != self.d:
            raise AngleCountMismatch(
                f"expected {self.d} direction rows, got {len(self.directions)}"
            )
        for row in self.directions:
            if len(row) != per_factor:
                raise AngleCountMismatch(
                    f"each direction row needs {per_factor} angles, got {len(row)}"
                )
        if len(self.frame) + per_factor * self.d != angle_count:
            raise AngleCountMismatch(
                f"frame needs {angle_count - per_factor * self.d} angles, "
                f"got {len(self.frame)}"
            )

    def angle_vector(self) -> np.ndarray:
        """All angles flattened: direction rows in order, then the frame."""
        flat = [a for row in self.directions for a in row]
        flat.extend(self.frame)
        return np.asarray(flat, dtype=float)


def unit_vector_from_angles(k, polar, phases, fix_global_phase: bool = False) -> np.ndarray:
    """Hyperspherical unit vector in ``C^k``.

    Component ``j`` has magnitude ``cos(t_j) * prod_{i<j} sin(t_i)`` (the
    last one is the pure sine product) and phase ``phases[j]``; with
    ``fix_global_phase`` the first phase is forced to zero, leaving the
    ``2(k - 1)`` angles that matter for the rank-one projector ``v v*``.
    """
    k = int(k)
    polar = np.asarray(polar, dtype=float).reshape(-1)
    phases = np.asarray(phases, dtype=float).reshape(-1).copy()
    if polar.shape != (k - 1,):
        raise AngleCountMismatch(f"need {k - 1} polar angles, got {polar.size}")
    if phases.shape != (k,):
        raise AngleCountMismatch(f"need {k} phases, got {phases.size}")
    if fix_global_phase and k > 0:
        phases[0] = 0.0
    magnitudes = np.ones(k)
    sines = 1.0
    for j in range(k - 1):
        magnitudes[j] = np.cos(polar[j]) * sines
        sines *= np.sin(polar[j])
    magnitudes[k - 1] = sines
    return magnitudes * np.exp(1j * phases)


def _angles_for_unit_vector(v: np.ndarray):
    """Invert the hyperspherical chart for one unit vector."""
    k = v.size
    two_pi = 2.0 * np.pi
    phases = np.mod(np.angle(v), two_pi)
    polar = np.zeros(max(k - 1, 0))
    tail = 1.0
    for j in range(k - 1):
        cos_part = abs(v[j]) / tail if tail > 1e-300 else 0.0
        polar[j] = np.arccos(np.clip(cos_part, -1.0, 1.0))
        tail *= np.sin(polar[j])
    return polar, phases


def angles_for_isometry(u) -> np.ndarray:
    """Chart angles reproducing a given isometry (inverse of
    :func:`isometry_from_angles`).

    Useful for warm-starting searches at a known constant block:
    ``isometry_from_angles(p, m, angles_for_isometry(u))`` rebuilds ``u`` to
    machine precision.
    """
    u = np.asarray(u, dtype=complex)
    p, m = u.shape
    if p < m:
        raise DimensionMismatch(f"need p >= m, got p={p}, m={m}")
    angles = []
    columns = []
    for j in range(m):
        if j == 0:
            coords = u[:, 0]
        else:
            basis = unitary_completion(np.column_stack(columns))
            coords = basis.conj().T @ u[:, j]
        polar, phases = _angles_for_unit_vector(coords)
        angles.extend(polar)
        angles.extend(phases)
        columns.append(u[:, j])
    return np.asarray(angles, dtype=float)


def isometry_from_angles(p: int, m: int, angles) -> np.ndarray:
    """Isometry ``U`` (``U* U = I_m``) from ``m (2p - m)`` angles.

    Column ``j`` is a hyperspherical unit vector in ``C^{p-j}`` mapped
    through an orthonormal basis of the complement of the earlier columns,
    so the angle budget telescopes: ``sum_j (2(p - j) - 1) = m(2p - m)``.
    Every isometry is reachable this way.
    """
    p, m = int(p), int(m)
    if p < m or m < 1:
        raise DimensionMismatch(f"need p >= m >= 1, got p={p}, m={m}")
    angles = np.asarray(angles, dtype=float).reshape(-1)
    needed = m * (2 * p - m)
    if angles.size != needed:
        raise AngleCountMismatch(f"need {needed} angles, got {angles.size}")
    columns = []
    position = 0
    for j in range(m):
        dim = p - j
        polar = angles[position : position + dim - 1]
        phases = angles[position + dim - 1 : position + 2 * dim - 1]
        position += 2 * dim - 1
        u = unit_vector_from_angles(dim, polar, phases)
        if j == 0:
            columns.append(u)
        else:
            basis = unitary_completion(np.column_stack(columns))
            columns.append(basis @ u)
    return np.column_stack(columns)


def build_paraunitary(params: ParaunitaryParam) -> BlaschkePotapovForm:
    """Realize a parameter vector as a concrete product form.

    The result is (co)isometric on the unit circle by construction for any
    admissible parameter values.
    """
    k = params.p if params.side == ISO else params.m
    factors = []
    for pole_param, row in zip(params.poles, params.directions):
        polar = row[: k - 1]
        phases = (0.0,) + row[k - 1 :]
        direction = unit_vector_from_angles(k, polar, phases, fix_global_phase=True)
        factors.append((pole_param.to_pole(), direction))
    if params.side == ISO:
        constant = isometry_from_angles(params.p, params.m, params.frame)
    else:
        constant = isometry_from_angles(params.m, params.p, params.frame).conj().T
    return BlaschkePotapovForm(params.side, params.p, params.m, factors, constant)


def random_params(
    seed: int,
    side: str,
    p: int,
    m: int,
    d: int,
    schur_only: bool = False,
) -> ParaunitaryParam:
    """Deterministic random parameter draw.

    Pole slots come from the full admissible set (origin, infinity, or a
    polar radius in ``(0, 1 - 1e-3) u (1 + 1e-3, 10]``) or, with
    ``schur_only``, from the stable subset (origin or radius below one).
    All angles are uniform on ``[0, 2 pi)``.
    """
    pole_slots, angle_count = param_count(side, p, m, d)
    rng = np.random.default_rng(seed)
    two_pi = 2.0 * np.pi
    poles = []
    for _ in range(pole_slots):
        if schur_only:
            kind = rng.choice([ZERO, POLAR], p=[0.25, 0.75])
            inside = True
        else:
            kind = rng.choice([ZERO, INFINITY, POLAR], p=[0.2, 0.2, 0.6])
            inside = bool(rng.uniform() < 0.5)
        if kind == ZERO:
            poles.append(PoleParam.zero())
        elif kind == INFINITY:
            poles.append(PoleParam.infinity())
        else:
            if inside:
                r = rng.uniform(0.0, 1.0 - RADIUS_MARGIN)
                while r <= 0.0:  # zero-measure guard
                    r = rng.uniform(0.0, 1.0 - RADIUS_MARGIN)
            else:
                r = rng.uniform(1.0 + RADIUS_MARGIN, RADIUS_MAX)
            poles.append(PoleParam.polar(r, rng.uniform(0.0, two_pi)))
    k = p if side == ISO else m
    per_factor = 2 * (k - 1)
    directions = tuple(
        tuple(rng.uniform(0.0, two_pi, size=per_factor)) for _ in range(d)
    )
    frame = tuple(rng.uniform(0.0, two_pi, size=angle_count - per_factor * d))
    return ParaunitaryParam(side, p, m, d, tuple(poles), directions, frame)
