"""
Construction
Families F_{i,c,j}, transversal enumeration and sampling of Q*_n, circular-shift
orbits, the canonical relabeling tau_W, and the bijection phi between P*_n and
([n] choose ⌊n/2⌋) × Q*_n.

Sampling uses numpy's default generator (PCG64) seeded with the caller's
64-bit seed, so a given seed reproduces the same set on every platform.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from sympy import factorial
from sympy.combinatorics import Permutation as SymPermutation

import config
import counting
from completeness import Mode, PermSet, critical_elements, is_minimal_complete
from errors import (DimensionError, DomainError, InvalidSizeError,
                    PreconditionError, ResourceError)
from perm_core import (Permutation, all_permutations, check_size, circular_shift,
                       compose, identity, inverse)


# Maximum minimal inversion-complete sets below the range of the transversal
# characterisation. At n = 3, {213, 123} is not complete and {231, 321} is not
# minimal; the sets below are the ones a direct check derives.
SMALL_Q_STAR = {
    2: (('21',),),
    3: (('132', '231'), ('213', '312'), ('231', '312')),
}


def make_rng(seed: int) -> np.random.Generator:
    if not 0 <= seed < 2 ** 64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}", 'seed_in_range')
    return np.random.default_rng(seed)


def _draw(rng: np.random.Generator, bound: int) -> int:
    return int(rng.integers(0, bound))


# =============================================================================
# FAMILIES F_{i,c,j}
# =============================================================================

@dataclass(frozen=True, order=True)
class FamilyDescriptor:
    """
    F_{i,c,j}: permutations with the values of [c] except i in positions 1..c-1,
    j at position c, i at position c+1, and the values above c except j after it.
    """

    n: int
    i: int
    c: int
    j: int

    def __post_init__(self):
        check_size(self.n, config.MAX_CONSTRUCTIVE_N)
        if not 1 <= self.i <= self.c < self.j <= self.n:
            raise DomainError(f"need 1 <= i <= c < j <= n, got (i={self.i}, c={self.c}, "
                              f"j={self.j}, n={self.n})", 'valid_family')

    @property
    def head_values(self) -> Tuple[int, ...]:
        return tuple(v for v in range(1, self.c + 1) if v != self.i)

    @property
    def tail_values(self) -> Tuple[int, ...]:
        return tuple(v for v in range(self.c + 1, self.n + 1) if v != self.j)

    def member_count(self) -> int:
        return counting.family_size(self.n, self.c)

    def members(self) -> Iterator[Permutation]:
        """All members in lexicographic order."""
        middle = (self.j, self.i)
        for head in itertools.permutations(self.head_values):
            for tail in itertools.permutations(self.tail_values):
                yield Permutation(head + middle + tail)

    def member_at(self, rank: int) -> Permutation:
        """The rank-th member (0-based) in lexicographic order."""
        return _member_at(self, rank)

    def contains(self, p: Permutation) -> bool:
        if p.n != self.n:
            return False
        c = self.c
        return (p(c) == self.j and p(c + 1) == self.i
                and all(p(h) <= c for h in range(1, c))
                and all(p(k) >= c + 1 for k in range(c + 2, self.n + 1)))

    def __str__(self) -> str:
        return f"F({self.i},{self.c},{self.j})"


def _unrank(values: Tuple[int, ...], rank: int) -> Tuple[int, ...]:
    if len(values) <= 1:
        return values
    order = SymPermutation.unrank_lex(len(values), rank).array_form
    return tuple(values[k] for k in order)


@lru_cache(maxsize=1 << 14)
def _member_at(f: FamilyDescriptor, rank: int) -> Permutation:
    size = f.member_count()
    if not 0 <= rank < size:
        raise DomainError(f"rank {rank} outside [0, {size}) for {f}", 'rank_in_range')
    head_rank, tail_rank = divmod(rank, int(factorial(len(f.tail_values))))
    return Permutation(_unrank(f.head_values, head_rank) + (f.j, f.i)
                       + _unrank(f.tail_values, tail_rank))


def family_members(f: FamilyDescriptor) -> Iterator[Permutation]:
    return f.members()


def family_collection(n: int, c: int) -> List[FamilyDescriptor]:
    """The c(n-c) descriptors of 𝓕_c in lexicographic (i, j) order."""
    check_size(n, config.MAX_CONSTRUCTIVE_N)
    if not 1 <= c < n:
        raise DomainError(f"c must satisfy 1 <= c < n = {n}, got {c}", 'valid_c')
    return [FamilyDescriptor(n, i, c, j)
            for i in range(1, c + 1) for j in range(c + 1, n + 1)]


def family_of(p: Permutation, c: int) -> Optional[FamilyDescriptor]:
    """The family of 𝓕_c holding p, if any (families of one c are disjoint)."""
    n = p.n
    if not 1 <= c < n:
        return None
    i, j = p(c + 1), p(c)
    if not 1 <= i <= c < j <= n:
        return None
    f = FamilyDescriptor(n, i, c, j)
    return f if f.contains(p) else None


# =============================================================================
# TRANSVERSALS
# =============================================================================

def transversal_at(n: int, c: int, index: int) -> PermSet:
    """The index-th transversal of 𝓕_c in odometer order (last family fastest)."""
    families = family_collection(n, c)
    size = counting.family_size(n, c)
    total = size ** len(families)
    if not 0 <= index < total:
        raise DomainError(f"transversal index {index} outside [0, {total})", 'rank_in_range')
    ranks = []
    for _ in families:
        index, digit = divmod(index, size)
        ranks.append(digit)
    ranks.reverse()
    return PermSet(n, Mode.INVERSION, tuple(_member_at(f, r) for f, r in zip(families, ranks)))


def transversals(n: int, c: int, start: int = 0, limit: Optional[int] = None) -> Iterator[PermSet]:
    """
    Lazily yield the transversals of 𝓕_c.

    Odometer over the families in (i, j) order, each family's members in
    lexicographic order; ``start`` resumes at a given odometer position.
    """
    families = family_collection(n, c)
    size = counting.family_size(n, c)
    digits = []
    rest = start
    for _ in families:
        rest, digit = divmod(rest, size)
        digits.append(digit)
    if rest:
        return
    digits.reverse()
    emitted = 0
    while limit is None or emitted < limit:
        yield PermSet(n, Mode.INVERSION,
                      tuple(_member_at(f, r) for f, r in zip(families, digits)))
        emitted += 1
        position = len(digits) - 1
        while position >= 0:
            digits[position] += 1
            if digits[position] < size:
                break
            digits[position] = 0
            position -= 1
        if position < 0:
            return


def sample_transversal(n: int, c: int, rng: np.random.Generator) -> PermSet:
    """A uniformly random transversal of 𝓕_c."""
    families = family_collection(n, c)
    size = counting.family_size(n, c)
    return PermSet(n, Mode.INVERSION, tuple(_member_at(f, _draw(rng, size)) for f in families))


def transversal_family(q: PermSet, candidates: Optional[Iterable[int]] = None) -> Optional[int]:
    """The smallest c among ``candidates`` for which q is a transversal of 𝓕_c."""
    n = q.n
    if candidates is None:
        candidates = range(1, n)
    for c in candidates:
        if len(q) != c * (n - c):
            continue
        hit = set()
        for p in q:
            f = family_of(p, c)
            if f is None or f in hit:
                break
            hit.add(f)
        else:
            return c
    return None


def balanced_cs(n: int) -> Tuple[int, ...]:
    """The sizes c in {⌊n/2⌋, ⌈n/2⌉}, without repetition for even n."""
    return tuple(sorted({n // 2, n - n // 2}))


# =============================================================================
# Q*_n: ENUMERATION AND SAMPLING
# =============================================================================

def _small_q_star(n: int) -> List[PermSet]:
    return [PermSet.of(sets, Mode.INVERSION) for sets in SMALL_Q_STAR[n]]


def _check_enumerable(n: int, count: int, limit: Optional[int], what: str) -> None:
    if limit is None and count > config.ENUMERATION_LIMIT:
        raise ResourceError(f"{what} has {count} elements, above the enumeration limit "
                            f"{config.ENUMERATION_LIMIT}; pass a limit or use the counting functions")


def enumerate_Q_star(n: int, limit: Optional[int] = None) -> Iterator[PermSet]:
    """
    Every maximum-cardinality minimal inversion-complete subset of S_n.

    For n >= 4: the transversals of 𝓕_⌊n/2⌋, then (odd n) those of 𝓕_⌈n/2⌉.
    """
    check_size(n, config.MAX_CONSTRUCTIVE_N)
    _check_enumerable(n, counting.count_Q_star(n), limit, f"Q*_{n}")
    return itertools.islice(_q_star_stream(n), limit)


def _q_star_stream(n: int) -> Iterator[PermSet]:
    if n in SMALL_Q_STAR:
        return iter(_small_q_star(n))
    return itertools.chain.from_iterable(transversals(n, c) for c in balanced_cs(n))


def _sample_Q_star(n: int, rng: np.random.Generator) -> PermSet:
    if n in SMALL_Q_STAR:
        choices = _small_q_star(n)
        return choices[_draw(rng, len(choices))]
    cs = balanced_cs(n)
    # For odd n both families have the same number of transversals, so a fair coin is uniform
    c = cs[_draw(rng, len(cs))]
    return sample_transversal(n, c, rng)


def sample_Q_star(n: int, seed: int) -> PermSet:
    """A uniformly random element of Q*_n, determined by the seed."""
    check_size(n, config.MAX_CONSTRUCTIVE_N)
    return _sample_Q_star(n, make_rng(seed))


# =============================================================================
# CIRCULAR-SHIFT ORBITS AND RELABELING
# =============================================================================

def orbit(p: Permutation) -> PermSet:
    """{p, p∘σ, ..., p∘σ^(n-1)} as a pair-mode set."""
    sigma = circular_shift(p.n)
    members = [p]
    for _ in range(p.n - 1):
        members.append(compose(members[-1], sigma))
    return PermSet(p.n, Mode.PAIR, tuple(members))


def relabel_set(tau: Permutation, s: PermSet) -> PermSet:
    """τ∘S = {τ∘π : π ∈ S}, same mode."""
    if tau.n != s.n:
        raise DimensionError(f"relabeling of size {tau.n} applied to a set with n = {s.n}")
    return PermSet(s.n, s.mode, tuple(compose(tau, m) for m in s))


@dataclass(frozen=True)
class BalancedPartition:
    """An ordered partition (W, W̄) of [n] with |W| ∈ {⌊n/2⌋, ⌈n/2⌉}."""

    n: int
    W: FrozenSet[int]

    def __post_init__(self):
        check_size(self.n)
        w = frozenset(self.W)
        object.__setattr__(self, 'W', w)
        if not w <= set(range(1, self.n + 1)):
            raise DomainError(f"W = {sorted(w)} is not a subset of [{self.n}]")
        if len(w) not in (self.n // 2, self.n - self.n // 2):
            raise InvalidSizeError(f"|W| = {len(w)} is not balanced for n = {self.n}",
                                   'balanced_partition')

    @property
    def complement(self) -> FrozenSet[int]:
        return frozenset(range(1, self.n + 1)) - self.W

    @property
    def c(self) -> int:
        return len(self.complement)


def canonical_tau(part: BalancedPartition) -> Permutation:
    """τ_W: [c] monotonically onto W̄, then {c+1..n} monotonically onto W."""
    return Permutation(tuple(sorted(part.complement)) + tuple(sorted(part.W)))


# =============================================================================
# BIJECTION phi: P*_n <-> ([n] choose ⌊n/2⌋) × Q*_n
# =============================================================================

def critical_partition(s: PermSet) -> Optional[BalancedPartition]:
    """
    The (W, W̄) such that every critical pair of s runs from W to W̄ and every
    W-to-W̄ pair is critical; None when the critical pairs do not form a
    balanced complete bipartite orientation.
    """
    pairs = set()
    for member in s:
        pairs.update(critical_elements(s, member))
    sources = frozenset(p.first for p in pairs)
    targets = frozenset(p.second for p in pairs)
    if sources & targets or sources | targets != frozenset(range(1, s.n + 1)):
        return None
    if len(pairs) != len(sources) * len(targets):
        return None
    if len(sources) not in (s.n // 2, s.n - s.n // 2):
        return None
    return BalancedPartition(s.n, sources)


def balanced_partition_of(p: PermSet) -> BalancedPartition:
    """The balanced ordered partition of a maximum minimal pair-complete set (n >= 5)."""
    n = p.n
    if n < 5:
        raise PreconditionError(f"phi is defined for n >= 5, got n = {n}", 'n_at_least_5')
    pairs = p.with_mode(Mode.PAIR)
    if len(pairs) != counting.gamma_P(n) or not is_minimal_complete(pairs):
        raise PreconditionError(f"set of size {len(p)} is not a maximum minimal "
                                f"pair-complete subset of S_{n}", 'in_P_star')
    part = critical_partition(pairs)
    if part is None:
        raise PreconditionError("critical pairs do not induce a balanced complete "
                                "bipartite orientation", 'in_P_star')
    return part


def phi(p: PermSet) -> Tuple[FrozenSet[int], PermSet]:
    """
    Map P ∈ P*_n to (X, Q) with Q = τ_W⁻¹ ∘ P.

    X = W̄ when Q transverses 𝓕_⌊n/2⌋, X = W otherwise (odd n only).
    """
    part = balanced_partition_of(p)
    tau = canonical_tau(part)
    q = relabel_set(inverse(tau), p).with_mode(Mode.INVERSION)
    n = p.n
    if transversal_family(q, [part.c]) is None:
        raise PreconditionError("relabeled set is not a transversal of its family",
                                'in_P_star')
    x = part.complement if part.c == n // 2 else part.W
    return x, q


def _check_subset(n: int, x: Iterable[int]) -> FrozenSet[int]:
    x = frozenset(x)
    if not x <= set(range(1, n + 1)):
        raise DomainError(f"X = {sorted(x)} is not a subset of [{n}]")
    if len(x) != n // 2:
        raise InvalidSizeError(f"|X| must be {n // 2} for n = {n}, got {len(x)}", 'subset_size')
    return x


def phi_inverse(x: Iterable[int], q: PermSet) -> PermSet:
    """The unique P ∈ P*_n with phi(P) = (x, q)."""
    n = q.n
    if n < 5:
        raise PreconditionError(f"phi is defined for n >= 5, got n = {n}", 'n_at_least_5')
    x = _check_subset(n, x)
    c = transversal_family(q, balanced_cs(n))
    if c is None:
        raise PreconditionError("q is not a maximum minimal inversion-complete set",
                                'in_Q_star')
    complement = frozenset(range(1, n + 1)) - x
    w = complement if c == n // 2 else x
    tau = canonical_tau(BalancedPartition(n, w))
    return relabel_set(tau, q).with_mode(Mode.PAIR)


# =============================================================================
# P*_n: ENUMERATION AND SAMPLING
# =============================================================================

def _small_p_star(n: int) -> List[PermSet]:
    if n == 2:
        return [PermSet.of(['12', '21'], Mode.PAIR)]
    if n == 3:
        return [orbit(Permutation.parse('123')), orbit(Permutation.parse('132'))]
    # n = 4: one shift orbit per ρ4 (ρ ∈ S_3), then τ∘Q*_4 for each ordered partition
    orbits = [orbit(Permutation(rho.image + (4,))) for rho in all_permutations(3)]
    q4 = next(_q_star_stream(4))
    relabeled = [relabel_set(canonical_tau(BalancedPartition(4, frozenset(w))), q4)
                 .with_mode(Mode.PAIR)
                 for w in itertools.combinations(range(1, 5), 2)]
    return orbits + relabeled


def enumerate_P_star(n: int, limit: Optional[int] = None) -> Iterator[PermSet]:
    """
    Every maximum-cardinality minimal pair-complete subset of S_n.

    For n >= 5 this is phi_inverse over all (X, Q), X-major in lexicographic order.
    """
    check_size(n, config.MAX_CONSTRUCTIVE_N)
    _check_enumerable(n, counting.count_P_star(n), limit, f"P*_{n}")
    if n <= 4:
        stream = iter(_small_p_star(n))
    else:
        stream = (phi_inverse(x, q)
                  for x in itertools.combinations(range(1, n + 1), n // 2)
                  for q in _q_star_stream(n))
    return itertools.islice(stream, limit)


def sample_P_star(n: int, seed: int) -> PermSet:
    """A uniformly random element of P*_n, determined by the seed."""
    check_size(n, config.MAX_CONSTRUCTIVE_N)
    rng = make_rng(seed)
    if n <= 4:
        choices = _small_p_star(n)
        return choices[_draw(rng, len(choices))]
    x = random_subset(n, rng)
    return phi_inverse(x, _sample_Q_star(n, rng))


def classify_pair_set(s: PermSet) -> str:
    """'orbit' for a circular-shift orbit, 'relabeled' for some τ∘Q, else 'other'."""
    if len(s) == s.n and s.with_mode(Mode.PAIR) == orbit(s.members[0]):
        return 'orbit'
    pairs = s.with_mode(Mode.PAIR)
    if s.n >= 4 and is_minimal_complete(pairs):
        part = critical_partition(pairs)
        if part is not None:
            q = relabel_set(inverse(canonical_tau(part)), pairs)
            if transversal_family(q, [part.c]) is not None:
                return 'relabeled'
    return 'other'


def random_subset(n: int, rng: np.random.Generator) -> FrozenSet[int]:
    """A uniformly random ⌊n/2⌋-subset of [n]."""
    return frozenset(int(v) + 1 for v in rng.choice(n, size=n // 2, replace=False))


if __name__ == '__main__':
    print(f"F(1,2,3) for n=4: {[str(p) for p in family_members(FamilyDescriptor(4, 1, 2, 3))]}")
    print(f"Q*_4 = {next(enumerate_Q_star(4))}")
    print(f"|Q*_5| by enumeration: {sum(1 for _ in enumerate_Q_star(5))}")
    q = sample_Q_star(12, seed=7)
    print(f"sample at n=12: size {len(q)}, minimal: {is_minimal_complete(q)}")
    print(f"orbit(1234) = {orbit(identity(4))}")
