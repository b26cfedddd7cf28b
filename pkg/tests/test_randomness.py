"""
randomness単体テスト

デバイス独立乱数の検証:
- 同時確率表(正規化・no-signaling・射影演算子による計算)
- 推測確率と最小エントロピー、argmaxの辞書式タイブレーク
- 閉形式 P_max = (1+cos u)/4, (1+p·cos u)/4 と総当たり計算の一致
- Werner状態 50×50 グリッド(α∈[1,10], p∈[0,1])での一致
- αスイープとpスイープ(単調性・検証フラグ・範囲エラー)
"""

import math

import numpy as np
import pytest

from src.core.oracle import brute_force_pmax
from src.core.quantum_core import maximally_entangled, singlet, werner
from src.core.randomness import (
    cos_u,
    guessing_probability,
    joint_probabilities,
    min_entropy,
    randomness_report,
    sweep_alpha,
    sweep_p,
    tilted_optimal_measurements,
    tilted_pmax_closed_form,
    tilted_probability_classes,
    werner_pmax_closed_form,
    werner_violation_threshold,
)
from src.models.bell_types import MeasurementSet
from src.models.errors import ParameterRangeError, ProbabilityTableError
from src.models.quantum_types import PAULI_Z, DichotomicObservable
from src.models.results import JointProbabilityTable

CHSH_PMAX = (1 + 1 / math.sqrt(2)) / 4


def _zz_measurements() -> MeasurementSet:
    z = DichotomicObservable.from_matrix(PAULI_Z)
    return MeasurementSet(alice=(z,), bob=(z,))


class TestJointProbabilities:
    """同時確率表のテストスイート"""

    def test_phi_plus_perfect_correlation(self):
        """Φ+ と A=B=Z: p(+,+) = p(-,-) = 1/2"""
        table = joint_probabilities(maximally_entangled(), _zz_measurements())
        assert table.probability(1, 1, 0, 0) == pytest.approx(0.5)
        assert table.probability(-1, -1, 0, 0) == pytest.approx(0.5)
        assert table.probability(1, -1, 0, 0) == pytest.approx(0.0, abs=1e-15)
        assert table.correlator(0, 0) == pytest.approx(1.0)

    def test_singlet_anticorrelation(self):
        """シングレットと A=B=Z: p(+,-) = p(-,+) = 1/2"""
        table = joint_probabilities(singlet(), _zz_measurements())
        assert table.probability(1, -1, 0, 0) == pytest.approx(0.5)
        assert table.probability(-1, 1, 0, 0) == pytest.approx(0.5)

    def test_chsh_optimal_maximum(self):
        """CHSH最適測定で最大成分 (1+1/√2)/4"""
        table = joint_probabilities(maximally_entangled(), tilted_optimal_measurements(1.0))
        p_max, _ = guessing_probability(table)
        assert p_max == pytest.approx(CHSH_PMAX, abs=1e-12)

    def test_table_rejects_unnormalized(self):
        """和が1にならない表は拒否"""
        entries = np.full((2, 2, 1, 1), 0.3)
        with pytest.raises(ProbabilityTableError):
            JointProbabilityTable(entries)

    def test_table_rejects_signaling(self):
        """Aliceの周辺分布がBobの設定に依存する表は拒否"""
        entries = np.zeros((2, 2, 1, 2))
        entries[0, 0, 0, 0] = entries[1, 1, 0, 0] = 0.5
        entries[0, 0, 0, 1] = 1.0
        with pytest.raises(ProbabilityTableError):
            JointProbabilityTable(entries)

    def test_table_rejects_negative(self):
        """負の確率は拒否"""
        entries = np.zeros((2, 2, 1, 1))
        entries[0, 0, 0, 0] = 1.1
        entries[1, 1, 0, 0] = -0.1
        with pytest.raises(ProbabilityTableError):
            JointProbabilityTable(entries)


class TestGuessingProbability:
    """推測確率と最小エントロピーのテストスイート"""

    def test_uniform_table_tie_break(self):
        """一様な表ではargmaxは (a,b,x,y) = (+1,+1,0,0)"""
        table = JointProbabilityTable(np.full((2, 2, 2, 2), 0.25))
        p_max, argmax = guessing_probability(table)
        assert p_max == 0.25
        assert argmax == (1, 1, 0, 0)

    def test_tie_break_prefers_lower_setting(self):
        """同値の場合は (x, y) の小さい方、次に +1 を優先"""
        table = joint_probabilities(maximally_entangled(), tilted_optimal_measurements(1.0))
        _, argmax = guessing_probability(table)
        assert argmax == (1, 1, 0, 0)

    def test_min_entropy_values(self):
        """-log2: 1/4 → 2, 1/2 → 1, 1 → 0"""
        assert min_entropy(0.25) == pytest.approx(2.0)
        assert min_entropy(0.5) == pytest.approx(1.0)
        assert min_entropy(1.0) == 0.0

    @pytest.mark.parametrize("p_max", [0.0, -0.1, 1.5])
    def test_min_entropy_out_of_range(self, p_max):
        """(0,1] 以外はParameterRangeError"""
        with pytest.raises(ParameterRangeError):
            min_entropy(p_max)


class TestClosedForms:
    """閉形式のテストスイート"""

    def test_alpha_one(self):
        """α=1: P_max = (1+1/√2)/4, R_min ≈ 1.2284 bits"""
        assert tilted_pmax_closed_form(1.0) == pytest.approx(0.4267766953, abs=1e-9)
        assert min_entropy(tilted_pmax_closed_form(1.0)) == pytest.approx(1.2284, abs=5e-4)

    def test_large_alpha_limit(self):
        """α → ∞ で P_max → 1/2, R_min → 1"""
        r_min = min_entropy(tilted_pmax_closed_form(1e6))
        assert 1.0 <= r_min <= 1.00001

    def test_werner_p1_matches_pure(self):
        """p=1 でWerner閉形式は純粋状態と一致"""
        assert werner_pmax_closed_form(2.0, 1.0) == pytest.approx(tilted_pmax_closed_form(2.0))

    def test_werner_p0_uniform(self):
        """p=0 で P_max = 1/4"""
        assert werner_pmax_closed_form(3.0, 0.0) == 0.25

    def test_violation_threshold(self):
        """α=1 の違反閾値は 1/√2"""
        assert werner_violation_threshold(1.0) == pytest.approx(1 / math.sqrt(2))

    def test_probability_classes(self):
        """4種類の確率値の最大が閉形式と一致"""
        classes = tilted_probability_classes(1.5, 0.8)
        assert max(classes.values()) == pytest.approx(werner_pmax_closed_form(1.5, 0.8))
        assert classes['cos_plus'] + classes['cos_minus'] == pytest.approx(0.5)

    def test_probability_classes_cover_table(self):
        """表の16成分はすべていずれかのクラスに属する"""
        alpha, p = 2.5, 0.6
        classes = list(tilted_probability_classes(alpha, p).values())
        table = joint_probabilities(werner(p), tilted_optimal_measurements(alpha))
        for value in table.entries.ravel():
            assert min(abs(value - c) for c in classes) <= 1e-12

    @pytest.mark.parametrize("alpha", [0.5, float('nan')])
    def test_alpha_out_of_range(self, alpha):
        """α < 1 はParameterRangeError"""
        with pytest.raises(ParameterRangeError):
            tilted_pmax_closed_form(alpha)


class TestWernerGrid:
    """閉形式と総当たり計算の一致を検証するグリッドテスト"""

    def test_grid_50x50(self):
        """α∈[1,10] × p∈[0,1] の2500点すべてで最大成分 = (1+p·cos u)/4 ± 1e-10"""
        mismatches = []
        for alpha in np.linspace(1.0, 10.0, 50):
            measurements = tilted_optimal_measurements(float(alpha))
            for p in np.linspace(0.0, 1.0, 50):
                state = werner(float(p))
                table_max, _ = guessing_probability(joint_probabilities(state, measurements))
                expected = (1 + p * cos_u(float(alpha))) / 4
                if abs(table_max - expected) > 1e-10:
                    mismatches.append((alpha, p, table_max, expected))
        assert mismatches == []

    def test_brute_force_matches_table(self):
        """固有ベクトル射影による計算と (I±O)/2 による表が一致"""
        measurements = tilted_optimal_measurements(3.0)
        state = werner(0.75)
        table_max, _ = guessing_probability(joint_probabilities(state, measurements))
        assert brute_force_pmax(None, state, measurements) == pytest.approx(table_max, abs=1e-12)


    def test_argmax_uses_first_alice_setting(self):
        """α > 1 では最大成分は常にAliceの設定 A0 (x=0) にあり、x=1 の成分は厳密に小さい"""
        for alpha in np.linspace(1.01, 10.0, 40):
            measurements = tilted_optimal_measurements(float(alpha))
            table = joint_probabilities(maximally_entangled(), measurements)
            best, (_, _, x, _) = guessing_probability(table)
            assert x == 0
            for a in (1, -1):
                for b in (1, -1):
                    for y in range(2):
                        assert table.probability(a, b, 1, y) < best - 1e-12

    def test_noise_never_decreases_r_min(self, rng):
        """可視度pを下げても(ノイズを増やしても) R_min は減らない"""
        for _ in range(100):
            alpha = float(rng.uniform(1.0, 10.0))
            p_low, p_high = sorted(rng.uniform(0.0, 1.0, size=2))
            measurements = tilted_optimal_measurements(alpha)
            noisy, _ = guessing_probability(joint_probabilities(werner(float(p_low)), measurements))
            clean, _ = guessing_probability(joint_probabilities(werner(float(p_high)), measurements))
            assert min_entropy(noisy) >= min_entropy(clean) - 1e-12
        pure = randomness_report(alpha).r_min_bits
        assert randomness_report(alpha, 0.5).r_min_bits >= pure

class TestRandomnessReport:
    """RandomnessReportのテストスイート"""

    def test_maximally_entangled(self):
        """Φ+, α=1: 検証済み、R_min ≈ 1.2284"""
        report = randomness_report(1.0)
        assert report.verified
        assert report.p_max == pytest.approx(CHSH_PMAX, abs=1e-12)
        assert report.r_min_bits == pytest.approx(-math.log2(report.p_max), abs=1e-12)
        assert report.argmax == (1, 1, 0, 0)
        assert report.violation == pytest.approx(2 * math.sqrt(2))
        assert report.violates_lhv
        assert report.p is None

    def test_werner_p1_overlaps(self):
        """p=1 のWerner状態は純粋状態と同じ R_min"""
        assert randomness_report(1.0, 1.0).r_min_bits == pytest.approx(randomness_report(1.0).r_min_bits)

    def test_werner_p0(self):
        """p=0: 一様分布で R_min = 2"""
        report = randomness_report(1.0, 0.0)
        assert report.r_min_bits == pytest.approx(2.0)
        assert report.argmax == (1, 1, 0, 0)
        assert not report.violates_lhv

    def test_werner_violation_sign(self):
        """シングレット基準のWerner族では違反値の符号は負"""
        report = randomness_report(1.0, 0.9)
        assert report.violation_sign == -1
        assert report.violation == pytest.approx(0.9 * 2 * math.sqrt(2))
        assert report.violates_lhv
        assert report.argmax == (1, -1, 0, 0)

    def test_below_threshold_warns(self, caplog):
        """閾値以下のpでは警告ログ"""
        report = randomness_report(1.0, 0.5)
        assert not report.violates_lhv
        assert "no violation" in caplog.text

    def test_to_dict_fields(self):
        """JSON出力のフィールド名"""
        data = randomness_report(2.0, 0.8).to_dict()
        assert {'p_max', 'p_max_brute', 'argmax', 'r_min_bits', 'verified', 'closed_form_params'} <= set(data)
        assert data['closed_form_params']['p'] == 0.8


class TestSweeps:
    """スイープのテストスイート"""

    def test_alpha_sweep(self):
        """α∈[1,10] 100点: R_min は単調減少、全行検証済み"""
        result = sweep_alpha(1.0, 10.0, 100)
        assert len(result.rows) == 100
        assert result.monotone
        assert result.all_verified
        assert result.rows[0].p_max == pytest.approx(CHSH_PMAX, abs=1e-12)

    def test_p_sweep_endpoint(self):
        """p∈[0.7072,1] 50点: P_max は単調増加、p=1 で (1+1/√2)/4"""
        result = sweep_p(1.0, 0.7072, 1.0, 50)
        p_max = [row.p_max for row in result.rows]
        assert all(b > a for a, b in zip(p_max, p_max[1:]))
        assert result.rows[-1].p == 1.0
        assert result.rows[-1].p_max == pytest.approx(0.4267767, abs=1e-7)
        assert result.rows[-1].p_max == pytest.approx(CHSH_PMAX, abs=1e-9)
        assert all(row.violates_lhv for row in result.rows)

    def test_p_sweep_below_threshold_flagged(self):
        """閾値以下の行は violates_lhv = False で残る"""
        result = sweep_p(1.0, 0.0, 1.0, 11)
        assert len(result.rows) == 11
        assert not result.rows[0].violates_lhv
        assert result.rows[-1].violates_lhv

    def test_csv_row_format(self):
        """CSV行は12桁の有効数字と検証フラグ"""
        row = sweep_alpha(1.0, 2.0, 2).rows[0]
        fields = row.to_csv_row()
        assert fields[:3] == ['1', '1', '0.426776695297']
        assert fields[3] == f"{row.r_min_bits:.12g}"
        assert fields[4] == '1'

    @pytest.mark.parametrize("alpha, low, high, steps", [
        (1.0, 2.0, 1.0, 10),
        (0.5, 0.1, 1.0, 10),
        (1.0, 0.0, 1.5, 10),
        (1.0, 0.2, 0.8, 1),
    ])
    def test_p_sweep_invalid(self, alpha, low, high, steps):
        """範囲外・逆順・点数不足はParameterRangeError"""
        with pytest.raises(ParameterRangeError):
            sweep_p(alpha, low, high, steps)

    def test_alpha_sweep_invalid(self):
        """α < 1 から始まるスイープは拒否"""
        with pytest.raises(ParameterRangeError):
            sweep_alpha(0.5, 2.0, 10)
