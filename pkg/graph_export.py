"""
DOT export of critical selection graphs.
Renders through the jinja2 template next to this module.
"""
from pathlib import Path
from typing import Dict, List, Sequence

from jinja2 import Template

from completeness import CriticalSelectionGraph, Mode

TEMPLATE_PATH = Path(__file__).parent / 'selection_graph.dot.j2'


def _load_template() -> Template:
    with open(TEMPLATE_PATH, 'r') as f:
        return Template(f.read())


def _graph_vars(g: CriticalSelectionGraph, index: int, total: int) -> Dict:
    directed = g.mode is Mode.PAIR
    edges = []
    for edge in g.edges:
        # Pair mode: arc along the critical pair; inversion mode keeps u < v
        tail, head = edge.directed_pair.as_tuple() if directed else (edge.u, edge.v)
        edges.append({'tail': tail, 'head': head, 'label': f"{edge.selector} {edge.directed_pair}"})
    name = 'selection' if total == 1 else f"selection_{index + 1}"
    return {
        'kind': 'digraph' if directed else 'graph',
        'connector': '->' if directed else '--',
        'name': name,
        'label': f"n={g.n} mode={g.mode} members={len(g.edges)}",
        'nodes': list(range(1, g.n + 1)),
        'edges': edges,
    }


def to_dot(graphs: Sequence[CriticalSelectionGraph]) -> str:
    """One DOT block per graph, in the order given."""
    graphs: List[CriticalSelectionGraph] = list(graphs)
    template = _load_template()
    return template.render(graphs=[_graph_vars(g, k, len(graphs)) for k, g in enumerate(graphs)])
