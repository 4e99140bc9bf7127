"""Job configuration for one command-line invocation."""

from dataclasses import dataclass
from pathlib import Path

COMMANDS = ('check', 'equations', 'superpotential', 'family', 'critical', 'lemma')
METHODS = ('auto', 'laufer', 'general')
FORMATS = ('text', 'json')


@dataclass
class JobConfig:
    """Settings for a single run of the pipeline."""

    input: Path
    command: str = 'equations'
    degree: int = 6
    method: str = 'auto'
    format: str = 'text'
    starts: int = 20
    seed: int = 0
    tol: float = 1e-10
    box: float = 0.2
    max_iter: int = 200
    exact: bool = False
    verbosity: int = 0

    def __post_init__(self):
        """Validate and normalize settings after initialization."""
        if isinstance(self.input, str):
            self.input = Path(self.input)

        if self.command not in COMMANDS:
            raise ValueError(f'unknown command {self.command!r}')
        if self.method not in METHODS:
            raise ValueError(f'unknown method {self.method!r}')
        if self.format not in FORMATS:
            raise ValueError(f'unknown format {self.format!r}')
        if self.degree < 1:
            raise ValueError(f'degree must be >= 1, got {self.degree}')
        if self.starts < 1:
            raise ValueError(f'starts must be >= 1, got {self.starts}')
        if self.tol <= 0 or self.box <= 0:
            raise ValueError('tol and box must be positive')

    def resolve_method(self, laufer: bool) -> str:
        """Pick the pipeline: auto selects laufer when the flag is set."""
        if self.method == 'auto':
            return 'laufer' if laufer else 'general'
        return self.method

    def to_dict(self) -> dict:
        return {
            'input': str(self.input),
            'command': self.command,
            'degree': self.degree,
            'method': self.method,
            'format': self.format,
            'starts': self.starts,
            'seed': self.seed,
            'tol': self.tol,
            'box': self.box,
            'max_iter': self.max_iter,
            'exact': self.exact,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'JobConfig':
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})
