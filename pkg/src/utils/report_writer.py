"""
JSON report output
Floats are rounded to 12 significant digits before encoding so identical
runs print byte-identical documents
"""

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from src.utils.validators import Validators
from src.utils.logger import get_logger

logger = get_logger(__name__)

SIGNIFICANT_DIGITS = 12


class ReportWriter:
    """
    Utility class for rendering and writing JSON reports
    """

    @staticmethod
    def _normalize(value: Any) -> Any:
        """Convert numpy scalars/arrays and tuples to plain JSON types"""
        if isinstance(value, dict):
            return {str(k): ReportWriter._normalize(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [ReportWriter._normalize(v) for v in value]
        if isinstance(value, np.ndarray):
            return [ReportWriter._normalize(v) for v in value.tolist()]
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        if isinstance(value, (int, np.integer)):
            return int(value)
        if isinstance(value, (float, np.floating)):
            rounded = float(f"{float(value):.{SIGNIFICANT_DIGITS}g}")
            # -0.0 prints as "-0.0"
            return 0.0 if rounded == 0.0 else rounded
        return value

    @staticmethod
    def render(payload: dict) -> str:
        """
        Render a report as indented JSON with a trailing newline

        Keys keep insertion order.

        Example:
            >>> ReportWriter.render({'beta': 2.8284271247461903})
            '{\\n  "beta": 2.82842712475\\n}\\n'
        """
        return json.dumps(ReportWriter._normalize(payload), indent=2, ensure_ascii=False) + "\n"

    @staticmethod
    def write(filepath: Union[str, Path], payload: dict) -> tuple[bool, str]:
        """
        Write a report to a .json file

        Returns:
            Tuple of (success, message)
        """
        is_valid, error_msg = Validators.validate_output_path(filepath, 'json')
        if not is_valid:
            logger.error(f"Invalid filepath: {error_msg}")
            return False, error_msg

        try:
            path = Path(filepath)
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(ReportWriter.render(payload))
            logger.info(f"Wrote report to {filepath}")
            return True, f"Report written to {filepath}"

        except OSError as e:
            error_msg = f"File write error: {str(e)}"
            if "Permission denied" in str(e) or "[Errno 13]" in str(e):
                error_msg = "Permission denied - cannot write to file"
            logger.error(error_msg)
            return False, error_msg
