"""Budget and run configuration shared by the factoring, scan and suite layers."""

import hashlib
import json
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class Effort:
    """Factoring budget: trial division bound, Brent-rho iterations, ECM curves (0 disables ECM)."""

    trial_bound: int = 10**6
    rho_iters: int = 200_000
    ecm_curves: int = 100
    ecm_b1: int = 11_000
    ecm_b2: int = 1_100_000

    @classmethod
    def parse(cls, text: str) -> "Effort":
        """Parse ``trial_bound,rho_iters[,ecm_curves]``."""
        parts = [int(float(s)) for s in text.split(",") if s.strip()]
        if not 2 <= len(parts) <= 3:
            raise ValueError(f"effort must be 'trial_bound,rho_iters[,ecm_curves]', got {text!r}")
        return cls(*parts)


@dataclass(frozen=True)
class RunConfig:
    effort: Effort = field(default_factory=Effort)
    seed: int = 0
    sieve_limit: int = 10**8
    direct_exponent_limit: int = 5000
    generator_search_cap: int = 10**6
    strict: bool = False

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


DEFAULT = RunConfig()
