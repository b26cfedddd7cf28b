"""
ComputePool単体テスト

- 入力順の保持(完了順に依存しない)
- psutilによるワーカー数の決定とフォールバック
- 少数アイテムのインライン実行
"""

import threading
import time

from src.workers import pool as pool_module
from src.workers.pool import ComputePool


class TestComputePool:
    """ComputePoolのテストスイート"""

    def test_preserves_order(self):
        """後の要素が先に終わっても結果は入力順"""
        def slow_for_small(value):
            time.sleep(0.001 * (10 - value))
            return value * value

        assert ComputePool.map_ordered(slow_for_small, range(10), max_workers=4) == [v * v for v in range(10)]

    def test_small_input_runs_inline(self):
        """MIN_PARALLEL_ITEMS未満は呼び出しスレッドで実行"""
        caller = threading.get_ident()
        threads = ComputePool.map_ordered(lambda _: threading.get_ident(), [1, 2])
        assert threads == [caller, caller]

    def test_empty_input(self):
        """空入力は空リスト"""
        assert ComputePool.map_ordered(lambda v: v, []) == []

    def test_worker_count_capped_by_items(self, monkeypatch):
        """ワーカー数はアイテム数を超えない"""
        monkeypatch.setattr(pool_module.psutil, "cpu_count", lambda logical=True: 16)
        assert ComputePool.worker_count(5) == 5
        assert ComputePool.worker_count(100) == 16

    def test_worker_count_fallback(self, monkeypatch):
        """物理コア数が取れない場合は論理コア数、それも無ければ1"""
        monkeypatch.setattr(pool_module.psutil, "cpu_count", lambda logical=True: 6 if logical else None)
        assert ComputePool.worker_count(100) == 6
        monkeypatch.setattr(pool_module.psutil, "cpu_count", lambda logical=True: None)
        assert ComputePool.worker_count(100) == 1
