"""
oracle単体テスト

独立検証手段の検証:
- see-saw最適化がΦ+上で各ファミリーの量子限界に到達(±1e-6, 20リスタート)
- 反復ごとの値は単調非減少
- 同じシードで同じ結果(決定論性)
- 固有ベクトル射影による推測確率の総当たり計算
"""

import math

import numpy as np
import pytest

from src.core.bell_families import family_by_id, family_chsh, violation
from src.core.oracle import brute_force_pmax, seesaw_max_violation
from src.core.quantum_core import maximally_entangled, singlet, werner
from src.models.bell_types import MeasurementSet
from src.models.errors import DimensionError
from src.models.quantum_types import PAULI_X, PAULI_Z, DichotomicObservable


class TestSeesaw:
    """see-saw最適化のテストスイート"""

    @pytest.mark.parametrize("family_id, params, expected", [
        ("chsh", {}, 2 * math.sqrt(2)),
        ("tilted", {'alpha': 1.0}, 2 * math.sqrt(2)),
        ("tilted", {'alpha': 1.5}, 2 * math.sqrt(3.25)),
        ("tilted", {'alpha': 2.0}, 2 * math.sqrt(5)),
        ("tilted", {'alpha': 5.0}, 2 * math.sqrt(26)),
        ("ebi", {}, 4 * math.sqrt(3)),
        ("gisin", {'n': 3}, 6.0),
        ("chained", {'n': 2}, 4 * math.cos(math.pi / 4)),
        ("chained", {'n': 3}, 6 * math.cos(math.pi / 6)),
        ("chained", {'n': 4}, 8 * math.cos(math.pi / 8)),
        ("chained", {'n': 5}, 10 * math.cos(math.pi / 10)),
        ("chained", {'n': 6}, 12 * math.cos(math.pi / 12)),
    ])
    def test_reaches_quantum_bound(self, family_id, params, expected):
        """Φ+ 上で量子限界に ±1e-6 で到達"""
        family = family_by_id(family_id, **params)
        result = seesaw_max_violation(family.coefficients, maximally_entangled(), restarts=20, seed=20240101)
        assert result.best_violation == pytest.approx(expected, abs=1e-6)
        assert result.restarts_used == 20

    @pytest.mark.parametrize("family_id, params", [
        ("chsh", {}), ("tilted", {'alpha': 3.0}), ("ebi", {}), ("gisin", {'n': 3}), ("chained", {'n': 7}),
    ])
    def test_never_exceeds_quantum_bound(self, family_id, params, rng):
        """どのシードでも最大化の結果は量子限界 + 1e-7 を超えない"""
        family = family_by_id(family_id, **params)
        for seed in rng.integers(0, 2 ** 31, size=3):
            result = seesaw_max_violation(family.coefficients, maximally_entangled(), restarts=4, seed=int(seed))
            assert result.best_violation <= family.quantum_bound + 1e-7

    def test_measurements_attain_value(self):
        """返された測定で再計算した値が best_violation と一致"""
        family = family_by_id("ebi")
        state = maximally_entangled()
        result = seesaw_max_violation(family.coefficients, state, restarts=5, seed=3)
        recomputed = violation(family.coefficients, result.measurements, state)
        assert recomputed == pytest.approx(result.best_violation, abs=1e-9)

    def test_trace_is_monotone(self):
        """各反復の値は減少しない"""
        result = seesaw_max_violation(family_by_id("chained", n=5).coefficients, maximally_entangled(),
                                      restarts=3, seed=11)
        trace = np.array(result.trace)
        assert len(trace) == result.iterations
        assert np.all(np.diff(trace) >= -1e-12)

    def test_deterministic(self):
        """同じシードなら同じ結果"""
        coeffs = family_by_id("gisin", n=3).coefficients
        first = seesaw_max_violation(coeffs, maximally_entangled(), restarts=4, seed=99)
        second = seesaw_max_violation(coeffs, maximally_entangled(), restarts=4, seed=99)
        assert first.best_violation == second.best_violation
        assert first.measurements.to_dict() == second.measurements.to_dict()

    def test_mixed_state(self):
        """Werner状態では最大値が p·2√2 に縮小"""
        result = seesaw_max_violation(family_chsh().coefficients, werner(0.8), restarts=10, seed=1)
        assert result.best_violation == pytest.approx(0.8 * 2 * math.sqrt(2), abs=1e-6)

    def test_invalid_restarts(self):
        """リスタート数0は拒否"""
        with pytest.raises(ValueError):
            seesaw_max_violation(family_chsh().coefficients, maximally_entangled(), restarts=0)


class TestBruteForcePmax:
    """固有ベクトル射影による推測確率のテストスイート"""

    def test_zz_on_singlet(self):
        """シングレットと Z, Z: 最大成分1/2"""
        z = DichotomicObservable.from_matrix(PAULI_Z)
        measurements = MeasurementSet(alice=(z,), bob=(z,))
        assert brute_force_pmax(None, singlet(), measurements) == pytest.approx(0.5)

    def test_uniform_on_maximally_mixed(self):
        """最大混合状態では1/4"""
        x = DichotomicObservable.from_matrix(PAULI_X)
        z = DichotomicObservable.from_matrix(PAULI_Z)
        measurements = MeasurementSet(alice=(x, z), bob=(z, x))
        assert brute_force_pmax(family_chsh().coefficients, werner(0.0), measurements) == pytest.approx(0.25)

    def test_dimension_mismatch(self):
        """係数表と測定数が合わない場合はDimensionError"""
        z = DichotomicObservable.from_matrix(PAULI_Z)
        measurements = MeasurementSet(alice=(z,), bob=(z,))
        with pytest.raises(DimensionError):
            brute_force_pmax(family_chsh().coefficients, singlet(), measurements)
