"""
Completeness
Inversion/pair completeness, minimality, critical elements, and the critical
selection graphs whose triangle-freeness carries the Mantel bound.

Coverage is tracked as integer bitmasks: pair (a, b) of [n] owns bit (a-1)*n + (b-1),
so increasing bit order is lexicographic pair order.
"""
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

import networkx as nx

from errors import DimensionError, MembershipError, PreconditionError
from perm_core import OrderedPair, Permutation, all_pairs, check_size


class Mode(str, Enum):
    INVERSION = 'inversion'
    PAIR = 'pair'

    def __str__(self) -> str:
        return self.value


class SelectionStrategy(str, Enum):
    LEX_MIN = 'lex_min'
    ALL = 'all'

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class PermSet:
    """
    A duplicate-free set of permutations of a common n, kept in lexicographic order.

    Construction always canonicalises, so two PermSets are equal iff they hold
    the same permutations in the same mode.
    """

    n: int
    mode: Mode
    members: Tuple[Permutation, ...] = ()

    def __post_init__(self):
        check_size(self.n)
        object.__setattr__(self, 'mode', Mode(self.mode))
        members = tuple(sorted(set(self.members)))
        for p in members:
            if p.n != self.n:
                raise DimensionError(f"member {p} has size {p.n}, set has n = {self.n}")
        object.__setattr__(self, 'members', members)

    @classmethod
    def of(cls, members: Iterable[Union[Permutation, str]], mode: Union[Mode, str],
           n: Optional[int] = None) -> 'PermSet':
        perms = [m if isinstance(m, Permutation) else Permutation.parse(m) for m in members]
        if n is None:
            if not perms:
                raise PreconditionError("n is required for an empty set", 'nonempty')
            n = perms[0].n
        return cls(n, Mode(mode), tuple(perms))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.members)

    def __contains__(self, p: object) -> bool:
        return p in self.members

    def with_member(self, p: Permutation) -> 'PermSet':
        return PermSet(self.n, self.mode, self.members + (p,))

    def without_member(self, p: Permutation) -> 'PermSet':
        if p not in self.members:
            raise MembershipError(f"{p} is not a member of the set")
        return PermSet(self.n, self.mode, tuple(m for m in self.members if m != p))

    def with_mode(self, mode: Union[Mode, str]) -> 'PermSet':
        return PermSet(self.n, Mode(mode), self.members)

    def __str__(self) -> str:
        return '{' + ', '.join(str(p) for p in self.members) + '}'


# =============================================================================
# COVERAGE MASKS
# =============================================================================

def _bit(n: int, a: int, b: int) -> int:
    return 1 << ((a - 1) * n + (b - 1))


@lru_cache(maxsize=None)
def required_pairs(n: int, mode: Mode) -> Tuple[OrderedPair, ...]:
    """I_n (inversion mode) or A_n (pair mode), sorted."""
    pairs = all_pairs(n)
    if Mode(mode) is Mode.INVERSION:
        pairs = [pair for pair in pairs if pair.is_inversion()]
    return tuple(pairs)


@lru_cache(maxsize=None)
def required_mask(n: int, mode: Mode) -> int:
    mask = 0
    for pair in required_pairs(n, Mode(mode)):
        mask |= _bit(n, pair.first, pair.second)
    return mask


@lru_cache(maxsize=1 << 16)
def coverage_mask(p: Permutation, mode: Mode) -> int:
    """Bitmask of the required pairs covered by p."""
    n = p.n
    image = p.image
    mask = 0
    for k in range(n):
        a = image[k]
        for l in range(k + 1, n):
            mask |= _bit(n, a, image[l])
    return mask & required_mask(n, Mode(mode))


def _decode(n: int, mask: int) -> List[OrderedPair]:
    pairs = []
    while mask:
        low = mask & -mask
        index = low.bit_length() - 1
        pairs.append(OrderedPair(index // n + 1, index % n + 1))
        mask ^= low
    return pairs


def _masks(s: PermSet) -> List[int]:
    return [coverage_mask(p, s.mode) for p in s.members]


def _critical_masks(s: PermSet) -> List[int]:
    """Per member, the required pairs it covers and no other member covers."""
    masks = _masks(s)
    size = len(masks)
    prefix = [0] * (size + 1)
    suffix = [0] * (size + 1)
    for k in range(size):
        prefix[k + 1] = prefix[k] | masks[k]
        suffix[size - k - 1] = suffix[size - k] | masks[size - k - 1]
    return [masks[k] & ~(prefix[k] | suffix[k + 1]) for k in range(size)]


# =============================================================================
# PREDICATES
# =============================================================================

def is_complete(s: PermSet) -> bool:
    required = required_mask(s.n, s.mode)
    covered = 0
    for mask in _masks(s):
        covered |= mask
    return covered & required == required


def uncovered(s: PermSet) -> List[OrderedPair]:
    """Required pairs covered by no member, sorted; empty iff the set is complete."""
    covered = 0
    for mask in _masks(s):
        covered |= mask
    return _decode(s.n, required_mask(s.n, s.mode) & ~covered)


def critical_elements(s: PermSet, member: Permutation) -> List[OrderedPair]:
    """Required pairs covered by ``member`` and by no other member of ``s``."""
    if member not in s:
        raise MembershipError(f"{member} is not a member of {s}")
    index = s.members.index(member)
    return _decode(s.n, _critical_masks(s)[index])


def is_minimal_complete(s: PermSet) -> bool:
    """Complete, and every member owns at least one critical pair."""
    if not s.members or not is_complete(s):
        return False
    return all(_critical_masks(s))


def is_minimal_complete_by_removal(s: PermSet) -> bool:
    """The definitional check: no set obtained by dropping one member is complete."""
    if not s.members or not is_complete(s):
        return False
    return not any(is_complete(s.without_member(m)) for m in s.members)


def redundant_members(s: PermSet) -> List[Permutation]:
    """Members that own no critical pair."""
    return [m for m, crit in zip(s.members, _critical_masks(s)) if not crit]


def _require_minimal(s: PermSet) -> None:
    if not is_minimal_complete(s):
        raise PreconditionError(f"{s} is not minimally {s.mode}-complete",
                                'is_minimal_complete')


# =============================================================================
# CRITICAL SELECTION GRAPHS
# =============================================================================

@dataclass(frozen=True, order=True)
class SelectionEdge:
    u: int
    v: int
    selector: Permutation
    directed_pair: OrderedPair


@dataclass(frozen=True)
class CriticalSelectionGraph:
    """One selected critical pair per member, read as an undirected edge on [n]."""

    n: int
    mode: Mode
    edges: Tuple[SelectionEdge, ...]

    def to_networkx(self) -> nx.Graph:
        """Simple graph on [n]; parallel edge records collapse to one edge."""
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        for edge in self.edges:
            if graph.has_edge(edge.u, edge.v):
                graph[edge.u][edge.v]['selectors'].append(str(edge.selector))
            else:
                graph.add_edge(edge.u, edge.v, selectors=[str(edge.selector)])
        return graph

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset((e.u, e.v) for e in self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def _graph_from_choice(s: PermSet, choice: Iterable[OrderedPair]) -> CriticalSelectionGraph:
    edges = []
    for member, pair in zip(s.members, choice):
        u, v = sorted(pair.as_tuple())
        edges.append(SelectionEdge(u, v, member, pair))
    return CriticalSelectionGraph(s.n, s.mode, tuple(edges))


def iter_selection_graphs(s: PermSet) -> Iterator[CriticalSelectionGraph]:
    """Every possible selection, in lexicographic order of the per-member choices."""
    _require_minimal(s)
    options = [_decode(s.n, crit) for crit in _critical_masks(s)]
    for choice in itertools.product(*options):
        yield _graph_from_choice(s, choice)


def selection_graph_count(s: PermSet) -> int:
    _require_minimal(s)
    return math.prod(bin(crit).count('1') for crit in _critical_masks(s))


def build_selection_graph(s: PermSet, strategy: Union[SelectionStrategy, str] = SelectionStrategy.LEX_MIN
                          ) -> Union[CriticalSelectionGraph, List[CriticalSelectionGraph]]:
    """
    Build the critical selection graph of a minimally complete set.

    lex_min picks the lexicographically smallest critical pair of each member;
    all returns every selection (the Cartesian product of the critical lists).
    """
    strategy = SelectionStrategy(strategy)
    if strategy is SelectionStrategy.ALL:
        return list(iter_selection_graphs(s))
    _require_minimal(s)
    choice = [_decode(s.n, crit & -crit)[0] for crit in _critical_masks(s)]
    return _graph_from_choice(s, choice)


def _as_networkx(g: Union[CriticalSelectionGraph, nx.Graph]) -> nx.Graph:
    return g.to_networkx() if isinstance(g, CriticalSelectionGraph) else g


def is_triangle_free(g: Union[CriticalSelectionGraph, nx.Graph]) -> bool:
    graph = _as_networkx(g)
    return sum(nx.triangles(graph).values()) == 0


def is_balanced_complete_bipartite(g: Union[CriticalSelectionGraph, nx.Graph]
                                   ) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """
    Return the bipartition if g is complete bipartite with sides of sizes
    ⌊n/2⌋ and ⌈n/2⌉, else None.

    From n = 5 on, the side holding vertex 1 comes first. Below that the
    ⌊n/2⌋-side comes first, with vertex 1 breaking a tie.
    """
    graph = _as_networkx(g)
    n = graph.number_of_nodes()
    if graph.number_of_edges() == 0 or not nx.is_connected(graph):
        return None
    if not nx.is_bipartite(graph):
        return None
    left, right = (frozenset(side) for side in nx.bipartite.sets(graph))
    if sorted((len(left), len(right))) != [n // 2, n - n // 2]:
        return None
    if graph.number_of_edges() != len(left) * len(right):
        return None
    if n >= 5:
        if 1 in right:
            left, right = right, left
    elif len(left) > len(right) or (len(left) == len(right) and 1 in right):
        left, right = right, left
    return left, right


def build_selection_digraph(s: PermSet) -> nx.DiGraph:
    """
    The lex_min selection graph with each edge oriented along its critical pair.

    Requires a minimally pair-complete set of at least three members, which
    guarantees no edge is critical in both directions.
    """
    if s.mode is not Mode.PAIR:
        raise PreconditionError("selection digraphs are defined for pair mode", 'mode_is_pair')
    if len(s) < 3:
        raise PreconditionError(f"need at least 3 members, got {len(s)}", 'size_at_least_3')
    graph = build_selection_graph(s, SelectionStrategy.LEX_MIN)
    digraph = nx.DiGraph()
    digraph.add_nodes_from(range(1, s.n + 1))
    for edge in graph.edges:
        digraph.add_edge(edge.directed_pair.first, edge.directed_pair.second,
                         selector=str(edge.selector))
    return digraph


def is_acyclic(d: nx.DiGraph) -> bool:
    return nx.is_directed_acyclic_graph(d)


def has_double_orientation(d: nx.DiGraph) -> bool:
    return any(d.has_edge(v, u) for u, v in d.edges)


if __name__ == '__main__':
    q = PermSet.of(['213', '312'], Mode.INVERSION)
    print(f"{q}: complete={is_complete(q)} minimal={is_minimal_complete(q)}")
    graph = build_selection_graph(q)
    print(f"  edges: {sorted(graph.edge_set())}, triangle-free: {is_triangle_free(graph)}")
    slip = PermSet.of(['213', '123'], Mode.INVERSION)
    print(f"{slip}: uncovered {[str(p) for p in uncovered(slip)]}")
