"""
Run configuration for a single command invocation
Everything comes from command-line flags; nothing is read from files or the environment
"""

from argparse import Namespace
from dataclasses import asdict, dataclass
from typing import Optional

from src.utils.validators import FAMILY_IDS, Validators
from src.utils.logger import get_logger

logger = get_logger(__name__)

COMMANDS = ('solve', 'randomness', 'sweep', 'oracle', 'lhv', 'families')

# Commands that take a family argument
FAMILY_COMMANDS = ('solve', 'randomness', 'oracle', 'lhv')


@dataclass
class RunConfig:
    """
    Parameters of one command invocation

    Attributes:
        command: one of COMMANDS
        family: family id for solve/randomness/oracle/lhv
        alpha: tilt parameter (tilted family, randomness, p sweeps)
        n: setting count for gisin/chained
        werner_p: Werner visibility for randomness
        var: sweep variable ('alpha' or 'p')
        range_from: sweep start
        range_to: sweep end
        steps: number of sweep grid points
        out: output file path; stdout when None
        fmt: 'json' or 'csv'
        seed: root seed for the see-saw oracle
        restarts: see-saw restarts
        log_dir: directory for log files
        verbose: DEBUG logging on the console
    """
    command: str = 'families'
    family: Optional[str] = None
    alpha: float = 1.0
    n: int = 3
    werner_p: Optional[float] = None
    var: Optional[str] = None
    range_from: Optional[float] = None
    range_to: Optional[float] = None
    steps: int = 50
    out: Optional[str] = None
    fmt: Optional[str] = None
    seed: int = 20240101
    restarts: int = 20
    log_dir: Optional[str] = None
    verbose: bool = False

    @property
    def output_format(self) -> str:
        """Explicit --format, otherwise csv for sweeps and json for the rest"""
        if self.fmt:
            return self.fmt
        return 'csv' if self.command == 'sweep' else 'json'

    @classmethod
    def from_namespace(cls, args: Namespace) -> 'RunConfig':
        """
        Build a config from parsed arguments, keeping defaults for absent flags

        Example:
            >>> RunConfig.from_namespace(Namespace(command='solve', family='chsh')).family
            'chsh'
        """
        defaults = cls()
        values = {}
        for name, source in (
            ('command', 'command'), ('family', 'family'), ('alpha', 'alpha'), ('n', 'n'),
            ('werner_p', 'werner_p'), ('var', 'var'), ('range_from', 'range_from'),
            ('range_to', 'range_to'), ('steps', 'steps'), ('out', 'out'), ('fmt', 'format'),
            ('seed', 'seed'), ('restarts', 'restarts'), ('log_dir', 'log_dir'), ('verbose', 'verbose'),
        ):
            value = getattr(args, source, None)
            values[name] = getattr(defaults, name) if value is None else value
        return cls(**values)

    def validate(self) -> tuple[bool, str]:
        """
        Check every parameter the command uses before any computation

        Returns:
            Tuple of (is_valid, error_message)
        """
        if self.command not in COMMANDS:
            return False, f"Unknown command '{self.command}'"

        if self.command in FAMILY_COMMANDS:
            if not Validators.validate_family(self.family):
                return False, f"Unknown family '{self.family}' (choose from {', '.join(FAMILY_IDS)})"
            if self.family in ('gisin', 'chained') and not Validators.validate_setting_count(self.n):
                return False, f"n must be an integer between 2 and 13, got {self.n}"

        if self.command in ('randomness', 'sweep') or self.family == 'tilted':
            if not Validators.validate_alpha(self.alpha):
                return False, f"alpha must be >= 1, got {self.alpha}"

        if self.command == 'randomness':
            if self.family not in ('chsh', 'tilted'):
                return False, "randomness is available for the chsh and tilted families only"
            if self.family == 'chsh' and self.alpha != 1.0:
                return False, "chsh is the tilted family at alpha = 1; use 'tilted' for other alpha"
            if self.werner_p is not None and not Validators.validate_visibility(self.werner_p):
                return False, f"Werner visibility must lie in [0, 1], got {self.werner_p}"

        if self.command == 'sweep':
            if self.var is None or self.range_from is None or self.range_to is None:
                return False, "sweep requires --var, --from and --to"
            is_valid, message = Validators.validate_sweep_range(
                self.var, self.range_from, self.range_to, self.steps, self.alpha
            )
            if not is_valid:
                return False, message

        if self.command == 'oracle':
            if not Validators.validate_seed(self.seed):
                return False, f"seed must be a non-negative integer, got {self.seed}"
            if not Validators.validate_restarts(self.restarts):
                return False, f"restarts must be a positive integer, got {self.restarts}"

        fmt = self.output_format
        if fmt not in ('json', 'csv'):
            return False, f"Unknown format '{fmt}'"
        if fmt == 'csv' and self.command != 'sweep':
            return False, "CSV output is available for sweep only"

        if self.out is not None:
            is_valid, message = Validators.validate_output_path(self.out, fmt)
            if not is_valid:
                return False, message

        return True, ""

    def to_dict(self) -> dict:
        return asdict(self)
