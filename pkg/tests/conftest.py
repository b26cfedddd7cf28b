"""
共通フィクスチャ

- ロギング設定をテストごとにリセット(capsysの差し替えに追従させるため)
- 固定シードの乱数生成器
"""

import numpy as np
import pytest

from src.utils.logger import AppLogger


@pytest.fixture(autouse=True)
def reset_logging():
    """テスト前後でルートロガーのハンドラを破棄"""
    AppLogger.reset()
    yield
    AppLogger.reset()


@pytest.fixture
def rng():
    """プロパティテスト用の固定シード乱数"""
    return np.random.default_rng(12345)
