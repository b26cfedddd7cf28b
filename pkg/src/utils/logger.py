"""
Logging configuration for the Bell SOS toolkit
Console output on stderr, optional rotating file logs
"""

import logging
import logging.handlers
from pathlib import Path
from typing import Optional


class AppLogger:
    """
    Application logger with console output and optional rotating file handlers

    Console messages go to stderr so that JSON/CSV on stdout stays parseable.
    """

    _initialized = False
    _log_dir: Optional[Path] = None

    @classmethod
    def setup_logging(cls, level: int = logging.WARNING, log_dir: Optional[Path] = None) -> None:
        """
        Set up application-wide logging configuration

        Args:
            level: Console logging level (default: WARNING)
            log_dir: Directory for log files; no file logging when None
        """
        if cls._initialized:
            return

        root_logger = logging.getLogger()
        root_logger.setLevel(logging.DEBUG if log_dir else level)

        # Remove existing handlers to avoid duplicates
        root_logger.handlers.clear()

        detailed_formatter = logging.Formatter(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        console_formatter = logging.Formatter(
            fmt='%(levelname)s: %(message)s'
        )

        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(console_formatter)
        root_logger.addHandler(console_handler)

        if log_dir:
            cls._log_dir = Path(log_dir)
            cls._log_dir.mkdir(parents=True, exist_ok=True)

            # Sweeps and oracle runs at DEBUG are verbose; 10 MB x 5 backups
            file_handler = logging.handlers.RotatingFileHandler(
                filename=cls._log_dir / "bellsos.log",
                maxBytes=10 * 1024 * 1024,
                backupCount=5,
                encoding='utf-8'
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(file_handler)

            # Verification failures and crashes only
            crash_handler = logging.handlers.RotatingFileHandler(
                filename=cls._log_dir / "crash.log",
                maxBytes=5 * 1024 * 1024,
                backupCount=3,
                encoding='utf-8'
            )
            crash_handler.setLevel(logging.ERROR)
            crash_handler.setFormatter(detailed_formatter)
            root_logger.addHandler(crash_handler)

        cls._initialized = True

        logging.debug("Logging system initialized")
        if cls._log_dir:
            logging.info(f"Log directory: {cls._log_dir.absolute()}")

    @classmethod
    def reset(cls) -> None:
        """Drop all handlers so setup_logging can run again"""
        root_logger = logging.getLogger()
        for handler in list(root_logger.handlers):
            handler.close()
        root_logger.handlers.clear()
        cls._initialized = False
        cls._log_dir = None

    @staticmethod
    def get_logger(name: str) -> logging.Logger:
        """
        Get a logger instance for a specific module

        Args:
            name: Logger name (typically __name__ of the module)

        Returns:
            Logger instance
        """
        return logging.getLogger(name)


# Convenience function
def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module

    Args:
        name: Logger name (typically __name__ of the module)

    Returns:
        Logger instance
    """
    return AppLogger.get_logger(name)
