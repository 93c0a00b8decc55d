"""
Permutation Core
Permutations of [n] in one-line notation, their algebra, and the cover relation.

Positions and values are 1-based everywhere. Composition follows
(outer ∘ inner)(k) = outer(inner(k)), so the outer permutation relabels values:
p covers (a, b) iff compose(tau, p) covers (tau(a), tau(b)).
"""
import itertools
import operator
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

import config
from errors import DimensionError, DocumentError, DomainError, InvalidSizeError


def check_size(n: int, upper: Optional[int] = None) -> int:
    """Return n if MIN_N <= n <= upper, else raise InvalidSizeError."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidSizeError(f"n must be an integer, got {n!r}")
    if n < config.MIN_N:
        raise InvalidSizeError(f"n must be at least {config.MIN_N}, got {n}")
    if upper is not None and n > upper:
        raise InvalidSizeError(f"n = {n} exceeds the supported maximum {upper}")
    return n


def _as_value(v) -> int:
    # numpy integers pass; floats and bools do not
    if isinstance(v, bool):
        raise InvalidSizeError(f"permutation values must be integers, got {v!r}")
    try:
        return operator.index(v)
    except TypeError:
        raise InvalidSizeError(f"permutation values must be integers, got {v!r}") from None


@dataclass(frozen=True, order=True)
class OrderedPair:
    """An ordered pair (first, second) of distinct indices."""

    first: int
    second: int

    def __post_init__(self):
        if self.first < 1 or self.second < 1:
            raise DomainError(f"pair indices are 1-based, got ({self.first},{self.second})")
        if self.first == self.second:
            raise DomainError(f"pair ({self.first},{self.second}) repeats an index")

    def is_inversion(self) -> bool:
        return self.first > self.second

    def reversed(self) -> 'OrderedPair':
        return OrderedPair(self.second, self.first)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


@dataclass(frozen=True, order=True, repr=False)
class Permutation:
    """A bijection of [n]; ``image[k-1]`` is π(k)."""

    image: Tuple[int, ...] = field()

    def __post_init__(self):
        image = tuple(_as_value(v) for v in self.image)
        object.__setattr__(self, 'image', image)
        check_size(len(image))
        if sorted(image) != list(range(1, len(image) + 1)):
            raise InvalidSizeError(f"{list(image)} is not a permutation of 1..{len(image)}")

    @property
    def n(self) -> int:
        return len(self.image)

    @cached_property
    def _positions(self) -> Tuple[int, ...]:
        positions = [0] * self.n
        for k, value in enumerate(self.image, start=1):
            positions[value - 1] = k
        return tuple(positions)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise DomainError(f"index {k} outside [1, {self.n}]")
        return self.image[k - 1]

    def position(self, value: int) -> int:
        """π⁻¹(value): the 1-based position holding ``value``."""
        if not 1 <= value <= self.n:
            raise DomainError(f"value {value} outside [1, {self.n}]")
        return self._positions[value - 1]

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.image)

    def __str__(self) -> str:
        if self.n <= 9:
            return ''.join(str(v) for v in self.image)
        return ' '.join(str(v) for v in self.image)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> 'Permutation':
        """
        Parse one-line notation.

        Accepts the compact digit form ("2314", only meaningful for n <= 9)
        or integers separated by spaces and/or commas ("10 2 3 ...").
        """
        stripped = text.strip()
        if not stripped:
            raise DocumentError("empty permutation")
        if re.fullmatch(r'\d+', stripped) and len(stripped) <= 9:
            values = [int(ch) for ch in stripped]
        else:
            tokens = [t for t in re.split(r'[\s,]+', stripped) if t]
            for t in tokens:
                if not re.fullmatch(r'\d+', t):
                    raise DocumentError(f"not an integer: {t!r}",
                                        column=stripped.index(t) + 1)
            values = [int(t) for t in tokens]
        return cls(tuple(values))


# =============================================================================
# DISTINGUISHED PERMUTATIONS
# =============================================================================

def identity(n: int) -> Permutation:
    check_size(n)
    return Permutation(tuple(range(1, n + 1)))


def reverse(n: int) -> Permutation:
    check_size(n)
    return Permutation(tuple(range(n, 0, -1)))


def circular_shift(n: int) -> Permutation:
    """σ with σ(i) = (i mod n) + 1."""
    check_size(n)
    return Permutation(tuple((i % n) + 1 for i in range(1, n + 1)))


# =============================================================================
# ALGEBRA
# =============================================================================

def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """(outer ∘ inner)(k) = outer(inner(k))."""
    if outer.n != inner.n:
        raise DimensionError(f"cannot compose permutations of sizes {outer.n} and {inner.n}")
    return Permutation(tuple(outer.image[v - 1] for v in inner.image))


def inverse(p: Permutation) -> Permutation:
    return Permutation(p._positions)


def power(p: Permutation, k: int) -> Permutation:
    """p composed with itself k times (k >= 0)."""
    result = identity(p.n)
    for _ in range(k):
        result = compose(result, p)
    return result


# =============================================================================
# COVER RELATION
# =============================================================================

def covers(p: Permutation, pair: OrderedPair) -> bool:
    """True iff pair.first appears before pair.second in p."""
    if pair.first > p.n or pair.second > p.n:
        raise DomainError(f"pair {pair} outside [1, {p.n}]")
    return p._positions[pair.first - 1] < p._positions[pair.second - 1]


def covered_pairs(p: Permutation) -> List[OrderedPair]:
    """All ordered pairs covered by p, sorted."""
    image = p.image
    return sorted(OrderedPair(image[k], image[l])
                  for k in range(p.n) for l in range(k + 1, p.n))


def inversion_count(p: Permutation) -> int:
    image = p.image
    return sum(1 for k in range(p.n) for l in range(k + 1, p.n) if image[k] > image[l])


def all_pairs(n: int) -> List[OrderedPair]:
    """A_n in sorted order."""
    check_size(n)
    return [OrderedPair(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]


def inversions(n: int) -> List[OrderedPair]:
    """I_n in sorted order: the pairs (a, b) with a > b."""
    return [pair for pair in all_pairs(n) if pair.is_inversion()]


def all_permutations(n: int) -> Iterator[Permutation]:
    """S_n in lexicographic order."""
    check_size(n)
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


if __name__ == '__main__':
    sigma = circular_shift(5)
    print(f"σ_5 = {sigma}, σ⁻¹ = {inverse(sigma)}")
    print(f"rev_4 covers {inversion_count(reverse(4))} inversions")
    print(f"rev_3 ∘ 213 = {compose(reverse(3), Permutation.parse('213'))}")
