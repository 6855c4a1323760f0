"""
Exact integer and rational utilities
Factorization, ρ-number tests, rational lcm and multiplicative order
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import FrozenSet, Iterable, List, Optional

from sympy import factorint, isprime
from sympy.ntheory import n_order

from gbs.utils.errors import (
    DividesModulus,
    EmptyInput,
    InvalidPrimeSet,
    NonPositiveInput,
    ZeroInput,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes ρ; primes=None stands for all primes"""

    primes: Optional[FrozenSet[int]] = None

    @classmethod
    def all(cls) -> "PrimeSet":
        return cls(None)

    @classmethod
    def of(cls, *primes: int) -> "PrimeSet":
        """Explicit prime set; every member must be prime and the set non-empty"""
        if not primes:
            raise InvalidPrimeSet("explicit prime set is empty")
        bad = [p for p in primes if not isinstance(p, int) or not isprime(p)]
        if bad:
            raise InvalidPrimeSet({"not_prime": bad})
        return cls(frozenset(primes))

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        """Parse the CLI syntax: "all" or a comma separated list like "2,3,7" """
        text = text.strip()
        if text.lower() == "all":
            return cls.all()
        try:
            primes = [int(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise InvalidPrimeSet(f"cannot parse prime set '{text}'")
        return cls.of(*primes)

    @property
    def is_all(self) -> bool:
        return self.primes is None

    def __contains__(self, p: int) -> bool:
        return self.primes is None or p in self.primes

    def sorted(self) -> List[int]:
        return [] if self.primes is None else sorted(self.primes)

    def describe(self):
        return "all" if self.primes is None else self.sorted()


def factorize(n: int) -> List[int]:
    """Prime factorization of |n| as a sorted multiset"""
    if n == 0:
        raise ZeroInput("cannot factorize 0")
    factors = []
    for p, e in sorted(factorint(abs(n)).items()):
        factors.extend([p] * e)
    return factors


def prime_support(n: int) -> FrozenSet[int]:
    """Distinct primes dividing n"""
    return frozenset(factorize(n))


def is_rho_number(n: int, rho: PrimeSet) -> bool:
    """True iff every prime divisor of n lies in rho; units always qualify"""
    if n == 0:
        raise ZeroInput("0 is not a ρ-number candidate")
    return all(p in rho for p in prime_support(n))


def is_p_number(n: int, p: int) -> bool:
    return prime_support(n) <= {p}


def rational_lcm(values: Iterable[Fraction]) -> Fraction:
    """Least positive rational that is an integer multiple of every value

    For p_i/q_i in lowest terms this is lcm(p_i)/gcd(q_i).
    """
    values = [Fraction(v) for v in values]
    if not values:
        raise EmptyInput("rational_lcm of an empty list")
    if any(v <= 0 for v in values):
        raise NonPositiveInput({"values": [str(v) for v in values if v <= 0]})
    num = reduce(lcm, (v.numerator for v in values))
    den = reduce(gcd, (v.denominator for v in values))
    return Fraction(num, den)


def multiplicative_order(n: int, p: int) -> int:
    """Least k >= 1 with n^k ≡ 1 (mod p)"""
    if not isprime(p):
        raise InvalidPrimeSet({"not_prime": [p]})
    if n % p == 0:
        raise DividesModulus({"n": n, "p": p})
    return int(n_order(n % p, p))
