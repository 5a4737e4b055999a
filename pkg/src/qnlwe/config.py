from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_SEED = 0
DEFAULT_TOLERANCE = 1e-9
DEFAULT_TRIALS = 1000
DEFAULT_JOBS = 1


@dataclass(frozen=True)
class CommandConfig:
    """Effective settings of one CLI run, echoed at the top of every report."""

    command: str
    inputs: tuple[Path, ...] = ()
    output: Path | None = None
    seed: int = DEFAULT_SEED
    samples: int = 0
    trials: int = DEFAULT_TRIALS
    tolerance: float = DEFAULT_TOLERANCE
    jobs: int = DEFAULT_JOBS
    flags: dict[str, bool] = field(default_factory=dict)
    extra: dict[str, str] = field(default_factory=dict)

    def header(self) -> list[str]:
        """Config as "key: value" lines in a fixed order.

        jobs is left out: it changes speed, never results.
        """
        lines = [
            f"command: {self.command}",
            f"inputs: {' '.join(p.name for p in self.inputs) or '-'}",
            f"output: {self.output if self.output is not None else 'stdout'}",
            f"seed: {self.seed}",
            f"samples: {self.samples}",
            f"trials: {self.trials}",
            f"tolerance: {self.tolerance:g}",
        ]
        lines.extend(f"{key}: {str(value).lower()}" for key, value in sorted(self.flags.items()))
        lines.extend(f"{key}: {value}" for key, value in sorted(self.extra.items()))
        return lines
