"""
Brute-Force Oracle
Exhaustive ground truth for the maximum minimal complete subsets of S_n at small n.

The exhaustive search uses only the cover relation from perm_core and its own
bitmask bookkeeping; it never calls the completeness predicates or the
constructive code, so agreement with them is an independent check.

A subset is *irredundant* when every member covers some required pair that no
other member covers. Irredundance passes to subsets, so every irredundant set is
reached by adding members in increasing index order while staying irredundant.
Complete irredundant sets are exactly the minimal complete sets, and none of them
can be extended, so exhausting the irredundant sets certifies the maximum size.
"""
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from cache_manager import cache
from completeness import Mode, PermSet
from console import status
from errors import ResourceError
from perm_core import OrderedPair, Permutation, all_pairs, all_permutations, check_size, covers


@dataclass
class OracleReport:
    n: int
    mode: Mode
    max_size_found: int
    witness_sets: List[PermSet]
    elapsed: float
    search_space_nodes: int
    minimal_size_histogram: Dict[int, int] = field(default_factory=dict)
    certified: bool = True
    restricted: bool = False
    samples: Optional[int] = None
    seed: Optional[int] = None
    sampled_minimal: Optional[int] = None
    sampled_outside: Optional[int] = None

    @property
    def witness_count(self) -> int:
        return len(self.witness_sets)

    def to_dict(self, include_timing: bool = False) -> Dict:
        data = {
            'n': self.n,
            'mode': str(self.mode),
            'max_size_found': self.max_size_found,
            'certified': self.certified,
            'restricted': self.restricted,
            'witness_count': self.witness_count,
            'witness_sets': [[list(p.image) for p in s] for s in self.witness_sets],
            'search_space_nodes': self.search_space_nodes,
            'minimal_size_histogram': {str(k): v for k, v in sorted(self.minimal_size_histogram.items())},
        }
        if self.restricted:
            data.update({
                'samples': self.samples,
                'seed': self.seed,
                'sampled_minimal': self.sampled_minimal,
                'sampled_outside': self.sampled_outside,
            })
        if include_timing:
            data['elapsed_seconds'] = round(self.elapsed, 6)
        return data

    @classmethod
    def from_dict(cls, data: Dict, elapsed: float = 0.0) -> 'OracleReport':
        mode = Mode(data['mode'])
        n = data['n']
        witnesses = [PermSet(n, mode, tuple(Permutation(tuple(p)) for p in s))
                     for s in data['witness_sets']]
        return cls(
            n=n,
            mode=mode,
            max_size_found=data['max_size_found'],
            witness_sets=witnesses,
            elapsed=data.get('elapsed_seconds', elapsed),
            search_space_nodes=data['search_space_nodes'],
            minimal_size_histogram={int(k): v for k, v in data['minimal_size_histogram'].items()},
            certified=data['certified'],
            restricted=data['restricted'],
            samples=data.get('samples'),
            seed=data.get('seed'),
            sampled_minimal=data.get('sampled_minimal'),
            sampled_outside=data.get('sampled_outside'),
        )


# =============================================================================
# BITMASK UNIVERSE
# =============================================================================

class Universe:
    """S_n with each permutation's covered required pairs as a bitmask."""

    def __init__(self, n: int, mode: Mode):
        self.n = n
        self.mode = Mode(mode)
        pairs = all_pairs(n)
        if self.mode is Mode.INVERSION:
            pairs = [p for p in pairs if p.first > p.second]
        self.pairs: List[OrderedPair] = pairs
        self.full = (1 << len(pairs)) - 1
        self.perms: List[Permutation] = list(all_permutations(n))
        self.masks: List[int] = [self._mask(p) for p in self.perms]
        self.index = {p: k for k, p in enumerate(self.perms)}

    def _mask(self, p: Permutation) -> int:
        mask = 0
        for bit, pair in enumerate(self.pairs):
            if covers(p, pair):
                mask |= 1 << bit
        return mask

    def is_minimal_complete(self, indices: Sequence[int]) -> bool:
        masks = [self.masks[k] for k in indices]
        union = 0
        for m in masks:
            union |= m
        if not masks or union != self.full:
            return False
        for k, m in enumerate(masks):
            others = 0
            for l, other in enumerate(masks):
                if l != k:
                    others |= other
            if others == self.full:
                return False
        return True

    def to_permset(self, indices: Sequence[int]) -> PermSet:
        return PermSet(self.n, self.mode, tuple(self.perms[k] for k in indices))


class ExhaustiveSearch:
    """Depth-first search over irredundant subsets in increasing index order."""

    def __init__(self, universe: Universe):
        self.universe = universe
        # Permutations covering no required pair never own a private pair
        self.candidates = [k for k, m in enumerate(universe.masks) if m]

    def branch(self, first: int) -> Tuple[int, List[Tuple[int, ...]]]:
        """Search every irredundant set whose smallest candidate is ``first``."""
        masks = self.universe.masks
        full = self.universe.full
        candidates = self.candidates
        found: List[Tuple[int, ...]] = []

        def extend(chosen: List[int], privates: List[int], union: int, start: int) -> int:
            nodes_seen = 1
            if union == full:
                found.append(tuple(chosen))
                return nodes_seen
            for position in range(start, len(candidates)):
                k = candidates[position]
                m = masks[k]
                private = m & ~union
                if not private:
                    continue
                updated = [p & ~m for p in privates]
                if not all(updated):
                    continue
                chosen.append(k)
                updated.append(private)
                nodes_seen += extend(chosen, updated, union | m, position + 1)
                chosen.pop()
            return nodes_seen

        k = candidates[first]
        nodes = extend([k], [masks[k]], masks[k], first + 1)
        return nodes, found

    def run(self, workers: int = 1) -> Tuple[int, List[Tuple[int, ...]]]:
        positions = range(len(self.candidates))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(self.branch, positions))
        else:
            results = [self.branch(p) for p in positions]
        # Root node plus every branch; merged in branch order, so independent of workers
        nodes = 1 + sum(r[0] for r in results)
        found = [s for r in results for s in r[1]]
        return nodes, found


# =============================================================================
# ENTRY POINTS
# =============================================================================

def _cache_key(n: int, mode: Mode, restricted: bool, samples: Optional[int],
               seed: Optional[int]) -> str:
    return f"oracle:{n}:{mode}:{int(restricted)}:{samples}:{seed}"


def oracle_enumerate(n: int, mode, restricted: bool = False, samples: Optional[int] = None,
                     seed: Optional[int] = None, workers: Optional[int] = None,
                     verbose: bool = False, use_cache: Optional[bool] = None) -> OracleReport:
    """
    Enumerate every maximum-cardinality minimal complete subset of S_n.

    Exhaustive for 2 <= n <= 4. With ``restricted`` (n = 5 only) the constructive
    sets are checked one by one and ``samples`` random subsets of the optimal size
    are tested; that part is statistical, not a proof.
    """
    mode = Mode(mode)
    check_size(n)
    if restricted:
        if n != config.RESTRICTED_N:
            raise ResourceError(f"restricted mode runs at n = {config.RESTRICTED_N}, got {n}")
        samples = config.RESTRICTED_SAMPLES if samples is None else samples
        seed = config.RESTRICTED_SEED if seed is None else seed
    elif n > config.ORACLE_MAX_N:
        raise ResourceError(f"exhaustive search is limited to n <= {config.ORACLE_MAX_N}; "
                            f"use restricted mode at n = {config.RESTRICTED_N}")
    use_cache = config.USE_CACHE if use_cache is None else use_cache
    workers = config.ORACLE_WORKERS if workers is None else workers

    started = time.perf_counter()
    key = _cache_key(n, mode, restricted, samples, seed)
    if use_cache:
        cached = cache.get(key)
        if cached:
            data, age = cached
            if verbose:
                status('ok', f"Using cached oracle report for n={n}, mode={mode} (age: {age} days)")
            return OracleReport.from_dict(data, elapsed=time.perf_counter() - started)

    if restricted:
        report = _restricted(n, mode, samples, seed, verbose)
    else:
        report = _exhaustive(n, mode, workers, verbose)
    report.elapsed = time.perf_counter() - started

    if use_cache:
        cache.set(key, report.to_dict())
    return report


def _exhaustive(n: int, mode: Mode, workers: int, verbose: bool) -> OracleReport:
    universe = _universe(n, mode)
    if verbose:
        status('search', f"Exhaustive search over S_{n} ({len(universe.perms)} permutations, "
                         f"{len(universe.pairs)} required pairs, mode={mode})")
    nodes, found = ExhaustiveSearch(universe).run(workers)
    histogram = Counter(len(s) for s in found)
    max_size = max(histogram) if histogram else 0
    witnesses = sorted(universe.to_permset(s) for s in found if len(s) == max_size)
    if verbose:
        status('ok', f"{nodes} irredundant subsets visited, {len(found)} minimal complete sets, "
                     f"maximum size {max_size} with {len(witnesses)} witnesses")
    return OracleReport(n=n, mode=mode, max_size_found=max_size, witness_sets=witnesses,
                        elapsed=0.0, search_space_nodes=nodes,
                        minimal_size_histogram=dict(histogram))


def _restricted(n: int, mode: Mode, samples: int, seed: int, verbose: bool) -> OracleReport:
    # Imported here: the exhaustive path must not depend on the constructive code
    import construction
    import counting

    universe = _universe(n, mode)
    size = counting.gamma_I(n) if mode is Mode.INVERSION else counting.gamma_P(n)
    source = construction.enumerate_Q_star(n) if mode is Mode.INVERSION else construction.enumerate_P_star(n)
    constructive = [s.with_mode(mode) for s in source]
    if verbose:
        status('search', f"Restricted check at n={n}, mode={mode}: "
                         f"{len(constructive)} constructive sets, {samples} random {size}-subsets")

    verified = []
    for s in constructive:
        indices = tuple(sorted(universe.index[p] for p in s))
        if len(indices) == size and universe.is_minimal_complete(indices):
            verified.append(s)
        elif verbose:
            status('error', f"constructive set {s} failed the oracle check")
    known = {tuple(sorted(universe.index[p] for p in s)) for s in verified}

    minimal, outside = _sample_subsets(universe, size, samples, seed, known)
    if verbose:
        marker = 'ok' if outside == 0 else 'error'
        status(marker, f"{minimal} sampled subsets were minimally complete, {outside} outside the constructive list")
    return OracleReport(n=n, mode=mode, max_size_found=size, witness_sets=sorted(verified),
                        elapsed=0.0, search_space_nodes=len(constructive) + samples,
                        minimal_size_histogram={size: len(verified)}, certified=False,
                        restricted=True, samples=samples, seed=seed,
                        sampled_minimal=minimal, sampled_outside=outside)


def _sample_subsets(universe: Universe, size: int, samples: int, seed: int,
                    known: set, batch: int = 20_000) -> Tuple[int, int]:
    """Draw uniform ``size``-subsets of S_n and test them in vectorised batches."""
    rng = np.random.default_rng(seed)
    masks = np.array(universe.masks, dtype=np.uint64)
    full = np.uint64(universe.full)
    total = len(universe.perms)
    minimal = outside = 0
    remaining = samples
    while remaining > 0:
        rows = min(batch, remaining)
        remaining -= rows
        picks = np.sort(np.argpartition(rng.random((rows, total)), size, axis=1)[:, :size], axis=1)
        chosen = masks[picks]
        ok = np.bitwise_or.reduce(chosen, axis=1) == full
        for column in range(size):
            others = np.bitwise_or.reduce(np.delete(chosen, column, axis=1), axis=1)
            ok &= others != full
        for row in picks[ok]:
            minimal += 1
            if tuple(int(k) for k in row) not in known:
                outside += 1
    return minimal, outside


@lru_cache(maxsize=None)
def _universe(n: int, mode: Mode) -> Universe:
    return Universe(n, mode)


@lru_cache(maxsize=None)
def _witness_index(n: int, mode: Mode) -> frozenset:
    return frozenset(oracle_enumerate(n, mode).witness_sets)


def oracle_check_membership(s: PermSet) -> bool:
    """True iff s is one of the oracle's witnesses for its n and mode."""
    if not config.MIN_N <= s.n <= config.ORACLE_MAX_N:
        raise ResourceError(f"membership checks run for n <= {config.ORACLE_MAX_N}, got {s.n}")
    return s in _witness_index(s.n, s.mode)


if __name__ == '__main__':
    for mode in (Mode.INVERSION, Mode.PAIR):
        for n in range(2, config.ORACLE_MAX_N + 1):
            report = oracle_enumerate(n, mode, use_cache=False)
            print(f"n={n} {mode:>9}: max {report.max_size_found}, "
                  f"{report.witness_count} witnesses, {report.search_space_nodes} nodes, "
                  f"{report.elapsed:.2f}s")
