"""Pydantic models used throughout derhall.

Models define the run configuration shared by the CLI and the HTTP routes,
and the rows of every report. Coefficients are carried as exact strings.
"""
from typing import Optional

from pydantic import BaseModel, ValidationError, field_validator

import config
from errors import ConfigError

ALGEBRAS = ("hall", "hall-dr", "dhall", "dhall-dr", "et", "et-minus", "et-dr", "motivic", "motivic-T")
SUITES = (
    "associativity",
    "rp",
    "derived-rp",
    "prop25",
    "symmetry1",
    "symmetry2",
    "pairing",
    "phi",
    "et",
    "motivic-rp",
    "lemma-space",
    "mot-phi",
    "oracle",
    "all",
)
FORMATS = ("json", "csv", "text")


def is_prime(n: int) -> bool:
    """True when n is prime, by trial division."""
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


class RunConfig(BaseModel):
    """Everything one catalog/table/check run needs."""

    quiver: str = config.QUIVER
    prime: int = config.PRIME
    primes: list[int] = list(config.PRIMES)
    window: int = config.WINDOW
    cap: int = config.CAP
    algebra: str = "dhall"
    suite: str = "all"
    format: str = config.FORMAT
    out: str = config.OUT
    shifts: list[int] = list(config.CORPUS_SHIFTS)
    max_summands: int = config.MAX_SUMMANDS
    max_dim: int = config.MAX_DIM
    workers: int = config.WORKERS
    inverted_convention: bool = False
    instances_file: str = config.INSTANCES_FILE

    @field_validator("prime")
    @classmethod
    def _prime(cls, value: int) -> int:
        if not is_prime(value):
            raise ValueError(f"{value} is not prime")
        return value

    @field_validator("primes")
    @classmethod
    def _primes(cls, value: list[int]) -> list[int]:
        if len(set(value)) != len(value):
            raise ValueError("primes must be distinct")
        bad = [p for p in value if not is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        return value

    @field_validator("window", "max_summands", "max_dim")
    @classmethod
    def _nonnegative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be >= 0")
        return value

    @field_validator("cap", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("algebra")
    @classmethod
    def _algebra(cls, value: str) -> str:
        if value not in ALGEBRAS:
            raise ValueError(f"unknown algebra {value!r}; choose from {', '.join(ALGEBRAS)}")
        return value

    @field_validator("suite")
    @classmethod
    def _suite(cls, value: str) -> str:
        if value not in SUITES:
            raise ValueError(f"unknown suite {value!r}; choose from {', '.join(SUITES)}")
        return value

    @field_validator("format")
    @classmethod
    def _format(cls, value: str) -> str:
        if value not in FORMATS:
            raise ValueError(f"unknown format {value!r}")
        return value

    @field_validator("shifts")
    @classmethod
    def _shifts(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("at least one shift is needed")
        return value

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        """Defaults from config.py with explicitly given values on top.

        Raises:
            ConfigError: when any field fails validation.
        """
        given = {k: v for k, v in overrides.items() if v is not None}
        try:
            return cls(**given)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc


class Term(BaseModel):
    """One basis term of a product row: an object label and its printed coefficient."""

    obj: str
    coeff: str


class ProductRow(BaseModel):
    """One product x * y; error is set instead of terms when a cap was hit."""

    x: str
    y: str
    terms: list[Term] = []
    error: Optional[str] = None


class CheckRecord(BaseModel):
    """One checked instance of an identity with both sides serialized."""

    suite: str
    instance: str
    lhs: str
    rhs: str
    passed: bool

    def as_row(self) -> dict:
        return {"suite": self.suite, "instance": self.instance, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


class CatalogRow(BaseModel):
    label: str
    dimvec: list[int]
    aut: int
    hom: dict[str, int]
    ext: dict[str, int]


class OctahedronInstance(BaseModel):
    """An octahedron instance as stored in the registry, objects in text form."""

    name: str = ""
    X: str
    Y: str
    Z: str
    M: str
    L: str
    Lp: str


class TripleInstance(BaseModel):
    name: str = ""
    objects: list[str]


class InstanceRegistry(BaseModel):
    """Named worked instances run by the suites on top of the generated corpus."""

    octahedra: list[OctahedronInstance] = []
    prop25: list[TripleInstance] = []
    motivic_rp: list[TripleInstance] = []


class Report(BaseModel):
    quiver: str
    p: int
    algebra: Optional[str] = None
    basis: list[str] = []
    catalog: list[CatalogRow] = []
    products: list[ProductRow] = []
    checks: list[CheckRecord] = []
