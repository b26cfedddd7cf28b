"""
ReportWriter単体テスト

- 浮動小数点は12桁の有効数字に丸めて出力
- numpy型・タプルの変換、キー順の保持
- 同一入力でバイト単位に同一の出力
- ファイル書き込みとパス検証
"""

import json

import numpy as np

from src.utils.report_writer import ReportWriter


class TestReportWriter:
    """ReportWriterクラスのテストスイート"""

    def test_render_rounds_floats(self):
        """12桁の有効数字"""
        text = ReportWriter.render({'beta': 2 * np.sqrt(2)})
        assert '"beta": 2.82842712475' in text
        assert text.endswith("}\n")

    def test_render_keeps_key_order(self):
        """キーは挿入順"""
        text = ReportWriter.render({'z': 1, 'a': 2, 'm': 3})
        assert list(json.loads(text)) == ['z', 'a', 'm']

    def test_render_numpy_types(self):
        """numpyスカラー・配列・タプル・boolを通常のJSON型に変換"""
        payload = {
            'flag': np.bool_(True),
            'count': np.int64(64),
            'values': np.array([0.1, 0.2]),
            'pair': (1, -1),
        }
        data = json.loads(ReportWriter.render(payload))
        assert data == {'flag': True, 'count': 64, 'values': [0.1, 0.2], 'pair': [1, -1]}

    def test_render_negative_zero(self):
        """-0.0 は 0.0 として出力"""
        assert '"gap": 0.0' in ReportWriter.render({'gap': -0.0})

    def test_render_is_deterministic(self):
        """同一入力で同一出力"""
        payload = {'omegas': [np.sqrt(3)] * 4, 'nested': {'p': None, 'ok': False}}
        assert ReportWriter.render(payload) == ReportWriter.render(payload)

    def test_write_success(self, tmp_path):
        """JSONファイルの書き込み"""
        output_file = tmp_path / "out" / "report.json"
        success, _ = ReportWriter.write(str(output_file), {'beta': 6.0})
        assert success is True
        assert json.loads(output_file.read_text(encoding='utf-8')) == {'beta': 6.0}

    def test_write_rejects_traversal(self):
        """パストラバーサル攻撃の検出"""
        success, message = ReportWriter.write("../report.json", {'beta': 6.0})
        assert success is False
        assert "traversal" in message.lower()
