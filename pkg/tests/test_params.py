import numpy as np
import pytest

from paraunit import (
    AngleCountMismatch,
    COISO,
    DimensionMismatch,
    ISO,
    BlaschkePotapovForm,
    ParaunitaryParam,
    Pole,
    PoleParam,
    bp_to_realization,
    build_paraunitary,
    circle_residual,
    flip_poles,
    isometry_from_angles,
    mcmillan_degree,
    param_count,
    random_params,
    unit_vector_from_angles,
    unitary_completion,
)
from conftest import off_circle_probes

TWO_PI = 2.0 * np.pi


def angles_for_unit_vector(v):
    """Invert the hyperspherical chart (oracle for reachability tests)."""
    k = v.size
    phases = np.mod(np.angle(v), TWO_PI)
    polar = np.zeros(k - 1)
    tail = 1.0
    for j in range(k - 1):
        cos_part = np.clip(abs(v[j]) / tail if tail > 0 else 0.0, -1.0, 1.0)
        polar[j] = np.arccos(cos_part)
        tail *= np.sin(polar[j])
    return polar, phases


def angles_for_isometry(u):
    """Column-by-column inversion of the sequential isometry chart."""
    p, m = u.shape
    angles = []
    columns = []
    for j in range(m):
        if j == 0:
            coords = u[:, 0]
        else:
            basis = unitary_completion(np.column_stack(columns))
            coords = basis.conj().T @ u[:, j]
        polar, phases = angles_for_unit_vector(coords)
        angles.extend(polar)
        angles.extend(phases)
        columns.append(u[:, j])
    return np.array(angles)


def two_by_two_unitary(a, b, g, dlt):
    return np.array(
        [
            [np.exp(1j * (g - b)) * np.cos(a), np.exp(1j * dlt) * np.sin(a)],
            [-np.exp(-1j * b) * np.sin(a), np.exp(1j * (dlt - g)) * np.cos(a)],
        ]
    )


class TestUnitVectorFromAngles:
    def test_scalar(self):
        v = unit_vector_from_angles(1, [], [0.7])
        assert abs(v[0] - np.exp(0.7j)) < 1e-15
        v = unit_vector_from_angles(1, [], [0.7], fix_global_phase=True)
        assert abs(v[0] - 1.0) < 1e-15

    def test_first_basis_vector(self):
        v = unit_vector_from_angles(3, [0.0, 0.0], [0.0, 0.0, 0.0])
        assert np.allclose(v, [1.0, 0.0, 0.0], atol=1e-15)

    def test_unit_norm(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            k = int(rng.integers(1, 6))
            v = unit_vector_from_angles(
                k, rng.uniform(0, TWO_PI, k - 1), rng.uniform(0, TWO_PI, k)
            )
            assert abs(np.linalg.norm(v) - 1.0) <= 1e-14

    def test_magnitude_pattern(self):
        polar = np.array([0.3, 1.1, 2.0])
        v = unit_vector_from_angles(4, polar, np.zeros(4))
        sines = np.concatenate([[1.0], np.cumprod(np.sin(polar))])
        expected = np.concatenate([np.cos(polar), [1.0]]) * sines
        assert np.allclose(v.real, expected, atol=1e-14)

    def test_count_mismatch(self):
        with pytest.raises(AngleCountMismatch):
            unit_vector_from_angles(3, [0.1], [0.0, 0.0, 0.0])


class TestIsometryFromAngles:
    def test_scalar_phase(self):
        u = isometry_from_angles(1, 1, [0.4])
        assert abs(u[0, 0] - np.exp(0.4j)) < 1e-15

    def test_column_at_zero_angles(self):
        u = isometry_from_angles(2, 1, [0.0, 0.0, 0.0])
        assert np.allclose(u, [[1.0], [0.0]], atol=1e-15)

    def test_random_outputs_are_isometric(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            p = int(rng.integers(1, 6))
            m = int(rng.integers(1, p + 1))
            u = isometry_from_angles(p, m, rng.uniform(0, TWO_PI, m * (2 * p - m)))
            assert np.linalg.norm(u.conj().T @ u - np.eye(m)) <= 1e-12

    def test_reaches_full_two_by_two_family(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            target = two_by_two_unitary(*rng.uniform(0, TWO_PI, 4))
            angles = angles_for_isometry(target)
            rebuilt = isometry_from_angles(2, 2, angles)
            assert np.linalg.norm(rebuilt - target) <= 1e-8

    def test_count_mismatch(self):
        with pytest.raises(AngleCountMismatch):
            isometry_from_angles(2, 2, [0.0, 0.0, 0.0])
        with pytest.raises(DimensionMismatch):
            isometry_from_angles(1, 2, [0.0, 0.0, 0.0])


class TestParamCount:
    def test_tall_example(self):
        assert param_count(ISO, 3, 2, 4) == (4, 24)

    def test_degree_zero_scalar(self):
        assert param_count(ISO, 1, 1, 0) == (0, 1)

    def test_wide_example(self):
        assert param_count(COISO, 1, 2, 1) == (1, 5)

    def test_matches_flattened_length(self):
        for p in range(1, 6):
            for m in range(1, 6):
                for d in range(0, 7):
                    if p >= m:
                        params = random_params(11, ISO, p, m, d)
                        slots, angles = param_count(ISO, p, m, d)
                        assert len(params.poles) == slots
                        assert params.angle_vector().size == angles
                    if m >= p:
                        params = random_params(12, COISO, p, m, d)
                        slots, angles = param_count(COISO, p, m, d)
                        assert len(params.poles) == slots
                        assert params.angle_vector().size == angles


class TestBuildParaunitary:
    def test_degree_zero_constant(self):
        params = random_params(5, ISO, 3, 2, 0)
        form = build_paraunitary(params)
        assert form.d == 0
        assert circle_residual(form).residual <= 1e-12

    def test_scalar_delay_inverse(self):
        params = ParaunitaryParam(
            ISO, 1, 1, 1, (PoleParam.zero(),), ((),), (0.0,)
        )
        form = build_paraunitary(params)
        assert abs(form(2.0)[0, 0] - 0.5) < 1e-14

    def test_seeded_pipeline(self):
        # stable draw: the flip is a no-op and the cascade degree equals d;
        # a flip of an offending pole can raise the degree when k > 2
        params = random_params(40, ISO, 3, 2, 4, schur_only=True)
        form = build_paraunitary(params)
        assert circle_residual(form).residual <= 1e-10
        degree = mcmillan_degree(bp_to_realization(flip_poles(form)))
        assert degree <= 4

    def test_wrong_invariant_raises(self):
        with pytest.raises(AngleCountMismatch):
            ParaunitaryParam(ISO, 2, 2, 1, (PoleParam.zero(),), ((0.0,),), (0.0,) * 4)


class TestRandomParams:
    def test_deterministic(self):
        a = random_params(123, COISO, 2, 3, 4)
        b = random_params(123, COISO, 2, 3, 4)
        assert a == b

    def test_schur_only_realizes_directly(self):
        for seed in range(5):
            params = random_params(seed, ISO, 3, 2, 3, schur_only=True)
            assert all(pole.is_schur for pole in params.poles)
            form = build_paraunitary(params)
            assert all(abs(pole.value) < 1.0 for pole in form.poles)
            bp_to_realization(form)

    def test_circle_margin(self):
        count = 0
        for seed in range(5):
            params = random_params(seed, ISO, 2, 1, 200)
            for pole in params.poles:
                count += 1
                if pole.kind == "polar":
                    assert abs(pole.r - 1.0) > 1e-3
        assert count == 1000

    def test_chart_lands_in_feasible_set(self):
        for seed in range(8):
            form = build_paraunitary(random_params(seed, COISO, 2, 4, 3))
            assert circle_residual(form).residual <= 1e-10


class TestPhaseGauge:
    def test_direction_phase_is_invisible(self):
        rng = np.random.default_rng(9)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        v /= np.linalg.norm(v)
        base = BlaschkePotapovForm(ISO, 3, 3, [(Pole(0.4 + 0.2j), v)], np.eye(3))
        rotated = BlaschkePotapovForm(
            ISO, 3, 3, [(Pole(0.4 + 0.2j), np.exp(1.3j) * v)], np.eye(3)
        )
        for z in off_circle_probes(10, 8):
            assert np.linalg.norm(base(z) - rotated(z)) <= 1e-14
