"""
CommandController - runs one command per invocation

Coordinates family construction, certificate solving, randomness reports,
sweeps and the see-saw oracle, then renders the result as JSON or CSV.
Library errors are translated to exit codes here; nothing below this layer
knows about exit codes.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from src.core.bell_families import family_by_id, lhv_strategy_count, violation
from src.core.oracle import seesaw_max_violation
from src.core.quantum_core import maximally_entangled
from src.core.randomness import randomness_report, sweep_alpha, sweep_p
from src.core.sos_engine import solve_family_measurements
from src.core.tolerances import VERIFY_TOL
from src.models.bell_types import BellFamily, FamilyId
from src.models.errors import (
    BellSosError,
    DegenerateWeightError,
    NotInvolutiveError,
    ProbabilityTableError,
    UnsupportedFamilyError,
    VerificationError,
)
from src.models.results import SweepResult
from src.models.run_config import RunConfig
from src.utils.csv_writer import CSVWriter
from src.utils.logger import get_logger
from src.utils.report_writer import ReportWriter

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFICATION = 3
EXIT_UNSUPPORTED = 4

# Failures of a computation that should have succeeded
_VERIFICATION_ERRORS = (VerificationError, NotInvolutiveError, DegenerateWeightError, ProbabilityTableError)


@dataclass(frozen=True)
class CommandOutcome:
    """
    Attributes:
        exit_code: process exit code
        output: text for stdout (empty when written to --out)
        message: human-readable status for stderr
    """
    exit_code: int
    output: str = ""
    message: str = ""


class CommandController:
    """
    Command dispatcher

    Each cmd_* method returns (exit_code, payload) with payload the JSON
    document; sweeps also keep their SweepResult for CSV rendering. run()
    adds validation, error translation and output routing.

    Example:
        >>> controller = CommandController(RunConfig(command='solve', family='chsh'))
        >>> outcome = controller.run()
        >>> outcome.exit_code
        0
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self._sweep_result: Optional[SweepResult] = None
        self._commands: Dict[str, Callable[[], Tuple[int, dict]]] = {
            'solve': self.cmd_solve,
            'randomness': self.cmd_randomness,
            'sweep': self.cmd_sweep,
            'oracle': self.cmd_oracle,
            'lhv': self.cmd_lhv,
            'families': self.cmd_families,
        }

    def _family(self) -> BellFamily:
        return family_by_id(self.config.family, alpha=self.config.alpha, n=self.config.n)

    @staticmethod
    def _family_header(family: BellFamily) -> dict:
        return {
            'family': family.family_id.value,
            'parameters': dict(family.parameters),
        }

    def cmd_solve(self) -> Tuple[int, dict]:
        """
        Optimal measurements and saturated certificate for the configured family

        Returns:
            (EXIT_OK or EXIT_VERIFICATION, certificate document)

        Raises:
            UnsupportedFamilyError: for gisin with n != 3
        """
        family = self._family()
        measurements, state, certificate = solve_family_measurements(family)
        payload = self._family_header(family)
        payload.update(certificate.to_dict())
        payload.update({
            'violation': violation(family.coefficients, measurements, state),
            'lhv_bound': family.lhv_bound,
            'quantum_bound': family.quantum_bound,
            'measurements': measurements.to_dict(),
        })
        ok = certificate.saturated and certificate.identity_gap <= VERIFY_TOL and certificate.beta_matches
        if not ok:
            logger.error(
                f"{family.label}: certificate rejected (saturated {certificate.saturated}, "
                f"gap {certificate.identity_gap:.3g}, beta mismatch {certificate.beta_mismatch:.3g})"
            )
        return (EXIT_OK if ok else EXIT_VERIFICATION), payload

    def cmd_randomness(self) -> Tuple[int, dict]:
        """
        Guessing probability and min-entropy for the tilted family

        A verification mismatch still prints the report, with exit code 3.
        """
        alpha = 1.0 if self.config.family == FamilyId.CHSH.value else float(self.config.alpha)
        report = randomness_report(alpha, self.config.werner_p)
        payload = {'family': self.config.family}
        payload.update(report.to_dict())
        return (EXIT_OK if report.verified else EXIT_VERIFICATION), payload

    def cmd_sweep(self) -> Tuple[int, dict]:
        """Alpha sweep on Phi+ or visibility sweep on the Werner family"""
        config = self.config
        if config.var == 'alpha':
            result = sweep_alpha(float(config.range_from), float(config.range_to), int(config.steps))
        else:
            result = sweep_p(float(config.alpha), float(config.range_from), float(config.range_to),
                             int(config.steps))
        self._sweep_result = result
        return (EXIT_OK if result.all_verified else EXIT_VERIFICATION), self._sweep_payload(result)

    @staticmethod
    def _sweep_payload(result: SweepResult) -> dict:
        return {
            'variable': result.variable,
            'monotone': result.monotone,
            'all_verified': result.all_verified,
            'rows': [
                {
                    'alpha': row.alpha,
                    'p': row.p,
                    'p_max': row.p_max,
                    'p_max_brute': row.p_max_brute,
                    'r_min_bits': row.r_min_bits,
                    'verified': row.verified,
                    'violates_lhv': row.violates_lhv,
                }
                for row in result.rows
            ],
        }

    def cmd_oracle(self) -> Tuple[int, dict]:
        """See-saw maximum on Phi+ next to the family's quantum bound"""
        family = self._family()
        result = seesaw_max_violation(
            family.coefficients,
            maximally_entangled(),
            restarts=int(self.config.restarts),
            seed=int(self.config.seed),
        )
        payload = self._family_header(family)
        payload.update(result.to_dict())
        payload.update({
            'quantum_bound': family.quantum_bound,
            'gap_to_bound': family.quantum_bound - result.best_violation,
        })
        return EXIT_OK, payload

    def cmd_lhv(self) -> Tuple[int, dict]:
        """Classical bound by enumeration"""
        family = self._family()
        payload = self._family_header(family)
        payload.update({
            'lhv_bound': family.lhv_bound,
            'strategies': lhv_strategy_count(family.coefficients),
            'quantum_bound': family.quantum_bound,
        })
        return EXIT_OK, payload

    def cmd_families(self) -> Tuple[int, dict]:
        """Every family at its default parameters"""
        entries = []
        for fid in FamilyId:
            family = family_by_id(fid.value)
            entries.append({
                'family': fid.value,
                'parameters': dict(family.parameters),
                'settings': [family.coefficients.n, family.coefficients.m],
                'lhv_bound': family.lhv_bound,
                'quantum_bound': family.quantum_bound,
                'solve': 'n = 3 only' if fid is FamilyId.GISIN else 'all parameters',
            })
        return EXIT_OK, {'families': entries}

    def _render(self, payload: dict) -> Tuple[bool, str, str]:
        """
        Render or write the payload

        Returns:
            (success, stdout text, message)
        """
        config = self.config
        if config.output_format == 'csv':
            if config.out:
                success, message = CSVWriter.write_sweep(config.out, list(self._sweep_result.rows))
                return success, "", message
            return True, CSVWriter.render_sweep(self._sweep_result.rows), ""
        if config.out:
            success, message = ReportWriter.write(config.out, payload)
            return success, "", message
        return True, ReportWriter.render(payload), ""

    def run(self) -> CommandOutcome:
        """
        Validate, execute and render the configured command

        Returns:
            CommandOutcome with exit code 0, 2 (invalid arguments or unwritable
            output), 3 (verification failure) or 4 (unsupported family)
        """
        is_valid, message = self.config.validate()
        if not is_valid:
            logger.error(f"Invalid arguments: {message}")
            return CommandOutcome(EXIT_INVALID, message=message)

        logger.debug(f"Running {self.config.command} with {self.config.to_dict()}")
        try:
            exit_code, payload = self._commands[self.config.command]()
        except UnsupportedFamilyError as e:
            logger.error(str(e))
            return CommandOutcome(EXIT_UNSUPPORTED, message=f"unsupported: {e}")
        except _VERIFICATION_ERRORS as e:
            logger.error(f"Verification failed: {e}")
            return CommandOutcome(EXIT_VERIFICATION, message=f"verification failed: {e}")
        except BellSosError as e:
            logger.error(f"Invalid arguments: {e}")
            return CommandOutcome(EXIT_INVALID, message=str(e))

        success, output, message = self._render(payload)
        if not success:
            return CommandOutcome(EXIT_INVALID, message=message)
        if exit_code == EXIT_VERIFICATION:
            message = f"verification failed in {self.config.command}"
        return CommandOutcome(exit_code, output=output, message=message)
