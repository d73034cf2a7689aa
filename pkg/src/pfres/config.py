"""Run configurations shared by the command line and the scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .suites import DEFAULT_PRIME, VerificationReport, run_suite


@dataclass(frozen=True)
class VerifyConfig:
    suite: str = "all"
    ns: tuple = (5, 6, 7, 8)
    seed: int = 0
    prime: int = DEFAULT_PRIME
    specialize_mod: bool = False

    def run(self) -> VerificationReport:
        return run_suite(self.suite, self.ns, seed=self.seed, prime=self.prime, specialize_mod=self.specialize_mod)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RankConfig:
    ns: tuple = (5, 6, 7, 8, 9, 10)
    prime: int = DEFAULT_PRIME
    seed: int = 0
    votes: int = 5
    variant: str = "generic"


@dataclass(frozen=True)
class SweepConfig:
    """Timing sweep over suites and sizes; each cell is run ``repeats`` times and the best kept."""

    suites: tuple = ("complex", "brill", "appendix-a", "minor-product", "equivariant", "schubert")
    ns: tuple = (5, 6, 7, 8)
    repeats: int = 1
    seed: int = 0
    prime: int = DEFAULT_PRIME
