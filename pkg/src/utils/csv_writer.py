"""
CSV export for alpha and visibility sweeps
"""

import csv
import io
from pathlib import Path
from typing import Iterable, List

from src.models.results import SweepRow
from src.utils.validators import Validators
from src.utils.logger import get_logger

logger = get_logger(__name__)


class CSVWriter:
    """
    Utility class for writing sweep rows to CSV
    """

    # Header is part of the output contract; do not reorder
    SWEEP_HEADER = ['alpha', 'p', 'p_max', 'r_min_bits', 'verified']

    @staticmethod
    def _validate_filepath(filepath: str) -> tuple[bool, str]:
        """
        Validate filepath for security (prevent path traversal attacks)

        Returns:
            Tuple of (is_valid, error_message)
        """
        return Validators.validate_output_path(filepath, 'csv')

    @staticmethod
    def render_sweep(rows: Iterable[SweepRow]) -> str:
        """
        Render sweep rows as CSV text (header + one line per row, '\\n' endings)

        Example:
            >>> CSVWriter.render_sweep([]).splitlines()[0]
            'alpha,p,p_max,r_min_bits,verified'
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(CSVWriter.SWEEP_HEADER)
        for row in rows:
            writer.writerow(row.to_csv_row())
        return buffer.getvalue()

    @staticmethod
    def write_sweep(filepath: str, rows: List[SweepRow]) -> tuple[bool, str]:
        """
        Write sweep rows to a CSV file (plain UTF-8, no BOM: the header is byte-exact)

        Args:
            filepath: Output CSV file path
            rows: Sweep rows in grid order

        Returns:
            Tuple of (success, message)
        """
        is_valid, error_msg = CSVWriter._validate_filepath(filepath)
        if not is_valid:
            logger.error(f"Invalid filepath: {error_msg}")
            return False, error_msg

        if not rows:
            logger.warning("No data to write")
            return False, "No data to write"

        try:
            Path(filepath).parent.mkdir(parents=True, exist_ok=True)

            with open(filepath, 'w', encoding='utf-8', newline='') as f:
                f.write(CSVWriter.render_sweep(rows))

            logger.info(f"Wrote {len(rows)} rows to {filepath}")
            return True, f"Successfully wrote {len(rows)} rows"

        except OSError as e:
            error_msg = f"File write error: {str(e)}"
            if "No space left on device" in str(e) or "[Errno 28]" in str(e):
                error_msg = "Disk full - insufficient space to write file"
            elif "Permission denied" in str(e) or "[Errno 13]" in str(e):
                error_msg = "Permission denied - cannot write to file"

            logger.error(error_msg)
            return False, error_msg
