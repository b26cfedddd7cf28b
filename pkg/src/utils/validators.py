"""
Input validation utilities for command-line parameters
Validates family ids, tilt parameters, setting counts, visibilities, sweep
ranges, seeds and output paths before any computation starts
"""

import math
from pathlib import Path
from typing import Optional, Union

Number = Union[int, float, str]

FAMILY_IDS = ('chsh', 'tilted', 'ebi', 'gisin', 'chained')

# Largest setting count accepted for gisin/chained (keeps enumeration within 2^26)
MAX_SETTING_COUNT = 13


class Validators:
    """
    Collection of validation methods for run parameters
    """

    OUTPUT_SUFFIXES = {'json': '.json', 'csv': '.csv'}

    @staticmethod
    def _as_float(value: Number) -> Optional[float]:
        try:
            result = float(value)
        except (ValueError, TypeError):
            return None
        return result if math.isfinite(result) else None

    @staticmethod
    def validate_family(family: str) -> bool:
        """
        Example:
            >>> Validators.validate_family("chsh")
            True
            >>> Validators.validate_family("cglmp")
            False
        """
        return isinstance(family, str) and family in FAMILY_IDS

    @staticmethod
    def validate_alpha(alpha: Number) -> bool:
        """
        Validate tilt parameter (alpha >= 1)

        Example:
            >>> Validators.validate_alpha(1.5)
            True
            >>> Validators.validate_alpha(0.5)
            False
        """
        value = Validators._as_float(alpha)
        return value is not None and value >= 1.0

    @staticmethod
    def validate_setting_count(n: Union[int, str]) -> bool:
        """
        Validate number of settings for gisin/chained families (2..13)

        Example:
            >>> Validators.validate_setting_count(3)
            True
            >>> Validators.validate_setting_count(1)
            False
        """
        if isinstance(n, bool):
            return False
        try:
            value = int(n)
        except (ValueError, TypeError):
            return False
        return 2 <= value <= MAX_SETTING_COUNT and str(value) == str(n).strip()

    @staticmethod
    def validate_visibility(p: Number) -> bool:
        """
        Validate Werner visibility (0 <= p <= 1)

        Example:
            >>> Validators.validate_visibility(0.9)
            True
            >>> Validators.validate_visibility(1.2)
            False
        """
        value = Validators._as_float(p)
        return value is not None and 0.0 <= value <= 1.0

    @staticmethod
    def validate_seed(seed: Union[int, str]) -> bool:
        """Seed must be a non-negative integer"""
        if isinstance(seed, bool):
            return False
        try:
            return int(seed) >= 0
        except (ValueError, TypeError):
            return False

    @staticmethod
    def validate_restarts(restarts: Union[int, str]) -> bool:
        """Restart count must be a positive integer"""
        if isinstance(restarts, bool):
            return False
        try:
            return int(restarts) >= 1
        except (ValueError, TypeError):
            return False

    @staticmethod
    def validate_sweep_range(var: str, start: Number, stop: Number, steps: Union[int, str],
                             alpha: Number = 1.0) -> tuple[bool, str]:
        """
        Validate a sweep grid

        Checks:
        - var is 'alpha' or 'p'
        - start < stop, steps >= 2
        - alpha sweeps start at alpha >= 1
        - visibility sweeps stay inside [0, 1] and use alpha >= 1

        Returns:
            Tuple of (is_valid, error_message)

        Example:
            >>> Validators.validate_sweep_range("p", 2, 1, 10)
            (False, 'Range start 2 must be below range end 1')
        """
        if var not in ('alpha', 'p'):
            return False, f"Unknown sweep variable '{var}' (use alpha or p)"
        low, high = Validators._as_float(start), Validators._as_float(stop)
        if low is None or high is None:
            return False, "Range bounds must be finite numbers"
        try:
            count = int(steps)
        except (ValueError, TypeError):
            return False, "steps must be an integer"
        if count < 2:
            return False, "steps must be at least 2"
        if not low < high:
            return False, f"Range start {start} must be below range end {stop}"
        if var == 'alpha':
            if low < 1.0:
                return False, "alpha sweeps must start at alpha >= 1"
        else:
            if low < 0.0 or high > 1.0:
                return False, "Visibility sweeps must stay within [0, 1]"
            if not Validators.validate_alpha(alpha):
                return False, "alpha must be >= 1"
        return True, ""

    @staticmethod
    def validate_output_path(filepath: Union[str, Path], fmt: str = 'json') -> tuple[bool, str]:
        """
        Validate output file path for security and format

        Checks:
        - No path traversal attempts (..)
        - Suffix matches the output format (.json or .csv)

        Returns:
            Tuple of (is_valid, error_message)

        Example:
            >>> Validators.validate_output_path("sweep.csv", "csv")
            (True, '')
            >>> Validators.validate_output_path("../../../etc/passwd.csv", "csv")
            (False, 'Path contains invalid traversal (..)')
        """
        if not filepath:
            return False, "File path is empty"

        expected = Validators.OUTPUT_SUFFIXES.get(fmt)
        if expected is None:
            return False, f"Unknown output format '{fmt}'"

        try:
            path = Path(filepath)

            if ".." in path.parts:
                return False, "Path contains invalid traversal (..)"

            if path.suffix.lower() != expected:
                return False, f"File must have {expected} extension"

            if path.exists() and path.is_dir():
                return False, "Path is a directory"

            return True, ""

        except (ValueError, OSError) as e:
            return False, f"Invalid path: {str(e)}"
