"""
AppLogger単体テスト

- setup_logging()の冪等性
- コンソールハンドラは標準エラー出力
- ログディレクトリ指定時のみファイルハンドラ(bellsos.log, crash.log)を作成
"""

import logging
import sys

from src.utils.logger import AppLogger, get_logger


class TestAppLogger:
    """AppLoggerクラスのテストスイート"""

    def test_console_only_by_default(self):
        """ログディレクトリ未指定ではコンソールハンドラのみ"""
        AppLogger.setup_logging(level=logging.WARNING)
        handlers = logging.getLogger().handlers
        assert len(handlers) == 1
        assert handlers[0].stream is sys.stderr

    def test_setup_is_idempotent(self):
        """2回目の呼び出しはハンドラを追加しない"""
        AppLogger.setup_logging()
        AppLogger.setup_logging()
        assert len(logging.getLogger().handlers) == 1

    def test_file_handlers(self, tmp_path):
        """ログディレクトリ指定でファイルに出力"""
        AppLogger.setup_logging(level=logging.WARNING, log_dir=tmp_path)
        logger = get_logger("tests.logger")
        logger.info("sweep finished")
        logger.error("verification failed")
        for handler in logging.getLogger().handlers:
            handler.flush()

        assert "sweep finished" in (tmp_path / "bellsos.log").read_text(encoding='utf-8')
        crash = (tmp_path / "crash.log").read_text(encoding='utf-8')
        assert "verification failed" in crash
        assert "sweep finished" not in crash

    def test_get_logger_name(self):
        """モジュール名のロガー"""
        assert get_logger("src.core.oracle").name == "src.core.oracle"
