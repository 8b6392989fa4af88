"""Lossless approximation by derivative-free search over the angle chart.

Fits a Schur-stable unit-circle (co)isometry of prescribed degree and
dimensions to target samples.  Candidates always live inside the feasible
set (the chart maps onto it), so the search never needs a penalty term: the
discrete pole tags (origin vs. polar) are frozen per restart from the
seeded draw, polar radii run through a smooth bijection from the real line
onto ``(0, 1 - 1e-3)``, and all angles are unconstrained reals wrapped
modulo ``2 pi`` when decoded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch
from .forms import COISO, ISO, BlaschkePotapovForm
from .params import (
    POLAR,
    RADIUS_MARGIN,
    ParaunitaryParam,
    PoleParam,
    angles_for_isometry,
    build_paraunitary,
    random_params,
)

#: Objective below this counts as converged outright.
CONVERGED_OBJECTIVE = 1e-12
#: Simplex size tolerance passed to the optimizer.
SIMPLEX_XATOL = 1e-10
#: Cap on simplex rounds per restart; a restart also stops as soon as a
#: round fails to halve the objective.
MAX_ROUNDS = 6


class SampleSet:
    """Target samples ``(z_k, G_k)`` with all values sharing one shape."""

    def __init__(self, pairs):
        zs = []
        values = []
        for z, g in pairs:
            zs.append(complex(z))
            values.append(np.asarray(g, dtype=complex))
        if not zs:
            raise DimensionMismatch("sample set must be non-empty")
        shape = values[0].shape
        if len(shape) != 2:
            raise DimensionMismatch("sample values must be matrices")
        for g in values:
            if g.shape != shape:
                raise DimensionMismatch("all sample values must share dimensions")
        self.zs = np.asarray(zs, dtype=complex)
        self.targets = np.stack(values)

    @property
    def p(self) -> int:
        return self.targets.shape[1]

    @property
    def m(self) -> int:
        return self.targets.shape[2]

    def __len__(self) -> int:
        return self.zs.size

    def pairs(self):
        return [(complex(z), np.array(g)) for z, g in zip(self.zs, self.targets)]


@dataclass(frozen=True)
class FitResult:
    """Best parameter vector found, with the achieved objective value."""

    params: ParaunitaryParam
    objective: float
    iterations: int
    converged: bool


def objective(params: ParaunitaryParam, samples: SampleSet) -> float:
    """Sum of squared Frobenius deviations from the targets."""
    if params.p != samples.p or params.m != samples.m:
        raise DimensionMismatch(
            f"params are {params.p}x{params.m} but samples are "
            f"{samples.p}x{samples.m}"
        )
    values = build_paraunitary(params).eval_many(samples.zs)
    return float(np.sum(np.abs(values - samples.targets) ** 2))


def _radius_to_real(r: float) -> float:
    top = 1.0 - RADIUS_MARGIN
    r = min(max(r, 1e-12), top - 1e-12)
    return float(np.log(r / (top - r)))


def _real_to_radius(x: float) -> float:
    # logistic map onto (0, 1 - margin), saturation-safe: extreme simplex
    # steps must not underflow the radius to an invalid 0
    top = 1.0 - RADIUS_MARGIN
    if x >= 0.0:
        r = top / (1.0 + np.exp(-x))
    else:
        scale = np.exp(x)
        r = top * scale / (1.0 + scale)
    return float(min(max(r, 1e-12), top))


def _encode(params: ParaunitaryParam) -> np.ndarray:
    coords = []
    for pole in params.poles:
        if pole.kind == POLAR:
            coords.append(_radius_to_real(pole.r))
            coords.append(pole.theta)
    coords.extend(params.angle_vector())
    return np.asarray(coords, dtype=float)


def _decode(x: np.ndarray, template: ParaunitaryParam) -> ParaunitaryParam:
    two_pi = 2.0 * np.pi
    position = 0
    poles = []
    for pole in template.poles:
        if pole.kind == POLAR:
            radius = _real_to_radius(x[position])
            theta = float(np.mod(x[position + 1], two_pi))
            poles.append(PoleParam.polar(radius, theta))
            position += 2
        else:
            poles.append(pole)
    k = template.p if template.side == ISO else template.m
    per_factor = 2 * (k - 1)
    directions = []
    for _ in range(template.d):
        row = np.mod(x[position : position + per_factor], two_pi)
        directions.append(tuple(row))
        position += per_factor
    frame = tuple(np.mod(x[position:], two_pi))
    return ParaunitaryParam(
        template.side, template.p, template.m, template.d,
        tuple(poles), tuple(directions), frame,
    )


def _optimal_frame_angles(x: np.ndarray, template: ParaunitaryParam, samples: SampleSet) -> np.ndarray:
    """Closed-form best constant block for the current factor chain.

    On (or near) the unit circle the factor chain is pointwise unitary, so
    minimizing over the constant alone is an orthogonal Procrustes problem;
    its polar-factor solution is converted back to chart angles.
    """
    params = _decode(x, template)
    k = params.p if params.side == ISO else params.m
    chain = BlaschkePotapovForm(
        params.side, k, k, build_paraunitary(params).factors, np.eye(k, dtype=complex)
    )
    values = chain.eval_many(samples.zs)
    if params.side == ISO:
        accumulated = np.einsum("nij,nil->jl", values.conj(), samples.targets)
        w, _, vh = np.linalg.svd(accumulated)
        best = w[:, : params.m] @ vh
        return angles_for_isometry(best)
    accumulated = np.einsum("nij,nlj->il", samples.targets, values.conj())
    w, _, vh = np.linalg.svd(accumulated)
    best = w @ vh[: params.p, :]
    return angles_for_isometry(best.conj().T)


def _splice_optimal_frame(x: np.ndarray, template: ParaunitaryParam, samples: SampleSet) -> np.ndarray:
    frame_len = len(template.frame)
    if frame_len == 0:
        return x
    out = np.array(x, dtype=float)
    out[-frame_len:] = _optimal_frame_angles(x, template, samples)
    return out


def fit_lossless(
    samples: SampleSet,
    d: int,
    p: int,
    m: int,
    side: str | None = None,
    seed: int = 0,
    restarts: int = 8,
) -> FitResult:
    """Best-of-restarts Nelder-Mead fit over the Schur-stable chart.

    Each restart draws a fresh seeded starting point (freezing its pole tag
    pattern) and runs up to :data:`MAX_ROUNDS` simplex rounds, each round
    restarting the simplex at the running optimum and stopping once a round
    fails to halve the objective.  Before every round the constant block is
    snapped to its closed-form (Procrustes) optimum when that lowers the
    objective; the search over poles and directions stays derivative-free.
    The overall best candidate wins, and any returned candidate is
    (co)isometric on the circle by construction, whatever the fit quality.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    if side is None:
        side = ISO if p >= m else COISO
    if samples.p != p or samples.m != m:
        raise DimensionMismatch(
            f"samples are {samples.p}x{samples.m}, requested {p}x{m}"
        )
    if len(samples) < 2 * d + 1:
        raise DimensionMismatch(
            f"need at least {2 * d + 1} samples for degree {d}, got {len(samples)}"
        )
    best_x = None
    best_template = None
    best_value = np.inf
    total_iterations = 0
    simplex_converged = False
    for restart in range(restarts):
        template = random_params(seed + restart, side, p, m, d, schur_only=True)

        def fun(x, template=template):
            return objective(_decode(x, template), samples)

        x = _encode(template)
        value = fun(x)
        for _ in range(MAX_ROUNDS):
            if x.size == 0:
                break
            trial = _splice_optimal_frame(x, template, samples)
            trial_value = fun(trial)
            if trial_value < value:
                x, value = trial, trial_value
            if value < CONVERGED_OBJECTIVE:
                break
            result = minimize(
                fun,
                x,
                method="Nelder-Mead",
                options={
                    "xatol": SIMPLEX_XATOL,
                    "fatol": 1e-14,
                    "maxiter": 600 * max(1, x.size),
                    "maxfev": 600 * max(1, x.size),
                },
            )
            total_iterations += int(result.nit)
            previous = value
            if result.fun < value:
                x, value = result.x, float(result.fun)
            if result.success:
                simplex_converged = True
            if value < CONVERGED_OBJECTIVE or value > 0.5 * previous:
                break
        if value < best_value:
            best_value = value
            best_x = x
            best_template = template
        if best_value < CONVERGED_OBJECTIVE:
            break
    best_params = _decode(np.asarray(best_x, dtype=float), best_template)
    best_value = objective(best_params, samples)
    return FitResult(
        params=best_params,
        objective=best_value,
        iterations=total_iterations,
        converged=bool(best_value < CONVERGED_OBJECTIVE or simplex_converged),
    )
