"""
Configuration
Numeric defaults loaded from the environment and the run configuration used by the CLI
"""

import os
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, List

from dotenv import load_dotenv

from .errors import ParameterDomainError

# Load environment variables from ncgkit/.env file
load_dotenv(os.path.join(os.path.dirname(__file__), '.env'))

logger = logging.getLogger(__name__)

DEFAULT_BITS = 128
DEFAULT_EPS = 1e-12
DEFAULT_TOL = 1e-8
DEFAULT_REWRITE_BUDGET = 10 ** 6
DEFAULT_SEED = 0

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _env_number(name: str, default, cast):
    """Read a positive number from the environment, falling back to the default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = cast(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not a valid {cast.__name__}, using default {default}")
        return default
    if value <= 0:
        logger.warning(f"Ignoring {name}={raw!r}: must be positive, using default {default}")
        return default
    return value


@dataclass(frozen=True)
class NumericDefaults:
    """Precision and tolerance defaults shared by all modules."""
    bits: int = DEFAULT_BITS
    eps: float = DEFAULT_EPS
    tol: float = DEFAULT_TOL
    rewrite_budget: int = DEFAULT_REWRITE_BUDGET
    seed: int = DEFAULT_SEED
    log_level: str = 'INFO'

    @classmethod
    def from_env(cls) -> 'NumericDefaults':
        """Build defaults from NCGKIT_* environment variables."""
        seed_raw = os.getenv('NCGKIT_SEED')
        seed = DEFAULT_SEED
        if seed_raw:
            try:
                seed = int(seed_raw)
            except ValueError:
                logger.warning(f"Ignoring NCGKIT_SEED={seed_raw!r}, using {DEFAULT_SEED}")
        return cls(
            bits=_env_number('NCGKIT_BITS', DEFAULT_BITS, int),
            eps=_env_number('NCGKIT_EPS', DEFAULT_EPS, float),
            tol=_env_number('NCGKIT_TOL', DEFAULT_TOL, float),
            rewrite_budget=_env_number('NCGKIT_REWRITE_BUDGET', DEFAULT_REWRITE_BUDGET, int),
            seed=seed,
            log_level=os.getenv('NCGKIT_LOG_LEVEL', 'INFO').upper(),
        )


def get_defaults() -> NumericDefaults:
    """Current defaults; re-reads the environment on every call."""
    return NumericDefaults.from_env()


@dataclass
class RunConfig:
    """Parsed command-line configuration.

    String fields are kept as given; parsed counterparts are filled in
    by ``__post_init__`` so that every command sees validated values.
    """
    command: str
    theta: Optional[str] = None
    tau: Optional[str] = None
    g: Optional[str] = None
    phi: Optional[str] = None
    eps: float = DEFAULT_EPS
    tol: float = DEFAULT_TOL
    bits: int = DEFAULT_BITS
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    fmt: str = 'json'
    only: Optional[str] = None
    char: str = '0'
    scale: str = '1'
    tau_eff: Optional[str] = None
    samples: int = 100
    verify_samples: Optional[int] = None
    mode: str = 'random'
    inject: List[str] = field(default_factory=list)
    parsed_theta: object = field(default=None, init=False, repr=False)
    parsed_tau: Optional[Tuple[Fraction, Fraction]] = field(default=None, init=False, repr=False)
    parsed_g: object = field(default=None, init=False, repr=False)
    parsed_phi: Optional[Tuple[Fraction, Fraction, Fraction]] = field(default=None, init=False, repr=False)
    parsed_char: Fraction = field(default=Fraction(0), init=False, repr=False)
    parsed_scale: Fraction = field(default=Fraction(1), init=False, repr=False)
    parsed_tau_eff: Optional[Tuple[Fraction, Fraction]] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        from .utils.param_parser import parse_theta, parse_tau, parse_sl2, parse_phi, parse_rational

        if not self.eps > 0:
            raise ParameterDomainError(f"eps must be positive, got {self.eps}")
        if not self.tol > 0:
            raise ParameterDomainError(f"tol must be positive, got {self.tol}")
        if self.bits < 16:
            raise ParameterDomainError(f"bits must be at least 16, got {self.bits}")
        if self.fmt not in ('json', 'csv', 'md'):
            raise ParameterDomainError(f"unknown format {self.fmt!r}")
        if self.verify_samples is not None and self.verify_samples < 1:
            raise ParameterDomainError(f"samples must be positive, got {self.verify_samples}")
        if self.samples < 1:
            raise ParameterDomainError(f"samples must be positive, got {self.samples}")
        if self.mode not in ('random', 'line', 'coordinate'):
            raise ParameterDomainError(f"unknown sampling mode {self.mode!r}")

        if self.theta is not None:
            self.parsed_theta = parse_theta(self.theta)
        if self.tau is not None:
            re_part, im_part = parse_tau(self.tau)
            if not im_part < 0:
                raise ParameterDomainError(f"Im(tau) must be negative, got {self.tau!r}")
            self.parsed_tau = (re_part, im_part)
        if self.g is not None:
            self.parsed_g = parse_sl2(self.g)
        if self.phi is not None:
            self.parsed_phi = parse_phi(self.phi)
        self.parsed_char = parse_rational(self.char)
        self.parsed_scale = parse_rational(self.scale)
        if not self.parsed_scale > 0:
            raise ParameterDomainError(f"theta scale must be positive, got {self.scale!r}")
        if self.tau_eff is not None:
            self.parsed_tau_eff = parse_tau(self.tau_eff)

    def only_modules(self) -> Optional[List[str]]:
        if not self.only:
            return None
        return [part.strip() for part in self.only.split(',') if part.strip()]
