"""Configuration classes and constants for ire."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ire.gluing import EXPLICIT, LEFT, MIDPOINT, RIGHT, BranchRule
from ire.logging_config import log_message

DEFAULT_WORKERS = 2
DEFAULT_SAMPLES = 100
DEFAULT_MAX_CLASS_SIZE = 10000
DEFAULT_MAX_DEGREE = 3

BRANCH_RULES = (MIDPOINT, EXPLICIT, LEFT, RIGHT)


@dataclass
class RunConfig:
    """Configuration for one CLI run.

    Attributes:
        quiet: Show errors only
        summary: Show only the banner, warnings, errors and summary blocks
        log_path: Path to log file (optional)
        json_output: Print machine-readable JSON instead of text
        workers: Number of processes for verify batches
        seed: Seed for the random generators (None draws fresh entropy)
        samples: Points per flow in first-return checks
        max_size: Cap on the number of schemes in a class enumeration
        random_cases: Cases per random verify population (None uses the
            per-population defaults of ``ire.verify.RANDOM_CASES``)
        max_degree: Largest alphabet size in the exhaustive verify population
        branch_rule: midpoint, explicit, left or right
        branch_coordinates: Explicit branch coordinates for the primal tree
        dual_branch_coordinates: Explicit branch coordinates for the dual tree
        results_on_stdout: The command prints its result on stdout, so INFO and
            DEBUG messages go to the log file only
    """

    quiet: bool = False
    summary: bool = False
    log_path: Optional[str] = None
    json_output: bool = False
    workers: int = DEFAULT_WORKERS
    seed: Optional[int] = None
    samples: int = DEFAULT_SAMPLES
    max_size: int = DEFAULT_MAX_CLASS_SIZE
    random_cases: Optional[int] = None
    max_degree: int = DEFAULT_MAX_DEGREE
    branch_rule: str = MIDPOINT
    branch_coordinates: List[Fraction] = field(default_factory=list)
    dual_branch_coordinates: List[Fraction] = field(default_factory=list)
    results_on_stdout: bool = False

    @property
    def info_quiet(self) -> bool:
        """Whether INFO and DEBUG messages stay off the console."""
        return self.quiet or self.summary or self.results_on_stdout

    def get_branch_rule(self, dual: bool = False) -> BranchRule:
        """Branch rule for the primal tree, or the dual tree with ``dual=True``."""
        if self.branch_rule == EXPLICIT:
            coordinates = self.dual_branch_coordinates if dual else self.branch_coordinates
            return BranchRule.explicit(*coordinates)
        return BranchRule(self.branch_rule)

    def validate(self, logger=None) -> None:
        """Validate the configuration settings.

        Args:
            logger: Optional logger instance for writing messages to log file

        Raises:
            ValueError: If a count is out of range or the branch rule is unknown
        """
        if self.workers < 1:
            raise ValueError(f"Number of workers must be at least 1, got {self.workers}")
        if self.samples < 1:
            raise ValueError(f"Number of samples must be at least 1, got {self.samples}")
        if self.max_size < 1:
            raise ValueError(f"Maximum class size must be at least 1, got {self.max_size}")
        if self.random_cases is not None and self.random_cases < 0:
            raise ValueError(f"Random cases cannot be negative, got {self.random_cases}")
        if not 1 <= self.max_degree <= 4:
            raise ValueError(f"Maximum degree must be between 1 and 4, got {self.max_degree}")
        if self.branch_rule not in BRANCH_RULES:
            raise ValueError(
                f"Unknown branch rule '{self.branch_rule}', choose one of {', '.join(BRANCH_RULES)}"
            )

        if self.json_output and self.summary:
            log_message(
                logger,
                "WARNING",
                "JSON output prints the full result. Summary mode will be disabled.",
                quiet=self.quiet,
                summary=self.summary,
            )
            self.summary = False

        has_coordinates = self.branch_coordinates or self.dual_branch_coordinates
        if has_coordinates and self.branch_rule != EXPLICIT:
            log_message(
                logger,
                "INFO",
                "Branch coordinates given. Using the explicit branch rule.",
                quiet=self.info_quiet,
                summary=self.summary,
            )
            self.branch_rule = EXPLICIT
