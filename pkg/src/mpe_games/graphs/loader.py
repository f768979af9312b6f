"""
JSON formats for game graphs and Moore strategies.

Graph::

    {"k": 3, "initial": "v0",
     "vertices": [{"id": "v0", "owner": 1}, ...],
     "edges": [{"from": "v0", "to": "v1", "weight": ["1", "-2", "3"]}, ...]}

Edges are numbered by their position in the list.

Strategy::

    {"memory": ["0", "1"], "initial": "0",
     "next": [{"memory": "0", "vertex": "v2", "edge": 0}],
     "update": [{"memory": "0", "edge": 0, "to": "1"},
                {"memory": "1", "vertex": "v2", "to": "0"}]}

A move may name its edge by index or by target vertex ("to"). An update keyed
by a vertex applies to every outgoing edge of that vertex.
"""

import logging
from typing import Any, Dict, List

from ..exceptions import GameGraphError, InputError, StrategyError
from ..utils.files import parse_json_text, read_json_file
from ..utils.rationals import format_rational, parse_vector
from .game_graph import Edge, GameGraph, Player, Vertex
from .strategies import MooreStrategy

# Get logger for this module
logger = logging.getLogger(__name__)


def _field(document: Dict, name: str, location: str, error=InputError):
    if not isinstance(document, dict):
        raise error("expected an object", location)
    if name not in document:
        raise error(f"missing field '{name}'", location)
    return document[name]


def graph_from_document(document: Any, source: str = "<graph>") -> GameGraph:
    """
    Build a GameGraph from a decoded JSON document.

    Raises:
        GameGraphError: With the JSON path of the offending field
    """
    k = _field(document, "k", source, GameGraphError)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise GameGraphError("k must be a positive integer", f"{source}: k")
    initial = _field(document, "initial", source, GameGraphError)

    vertices = []
    for i, entry in enumerate(_field(document, "vertices", source, GameGraphError)):
        where = f"{source}: vertices[{i}]"
        vertex_id = _field(entry, "id", where, GameGraphError)
        owner = _field(entry, "owner", where, GameGraphError)
        if owner not in (1, 2):
            raise GameGraphError(f"owner must be 1 or 2, got {owner!r}", f"{where}.owner")
        vertices.append(Vertex(str(vertex_id), Player(owner)))

    edges = []
    for i, entry in enumerate(_field(document, "edges", source, GameGraphError)):
        where = f"{source}: edges[{i}]"
        weight = _field(entry, "weight", where, GameGraphError)
        if not isinstance(weight, list):
            raise GameGraphError("weight must be a list", f"{where}.weight")
        try:
            vector = parse_vector(weight, f"{where}.weight")
        except InputError as e:
            raise GameGraphError(str(e))
        if len(vector) != k:
            raise GameGraphError(f"weight has {len(vector)} entries, expected {k}", f"{where}.weight")
        edges.append(Edge(i, str(_field(entry, "from", where, GameGraphError)),
                          str(_field(entry, "to", where, GameGraphError)), vector))

    graph = GameGraph(vertices, edges, str(initial), k)
    logger.info(f"Loaded game graph from {source}: {graph}")
    return graph


def load_graph(path: str) -> GameGraph:
    return graph_from_document(read_json_file(path), path)


def parse_graph(text: str) -> GameGraph:
    return graph_from_document(parse_json_text(text, "<graph>"))


def graph_to_document(g: GameGraph) -> Dict[str, Any]:
    """Inverse of graph_from_document; edges must be numbered 0..|E|-1."""
    return {
        "k": g.k,
        "initial": g.initial,
        "vertices": [{"id": v.id, "owner": int(v.owner)} for v in g.vertices.values()],
        "edges": [
            {"from": e.source, "to": e.target, "weight": [format_rational(x) for x in e.weight]}
            for e in sorted(g.edges.values(), key=lambda e: e.id)
        ],
    }


def strategy_from_document(document: Any, g: GameGraph, source: str = "<strategy>") -> MooreStrategy:
    """
    Build a MooreStrategy for g from a decoded JSON document.

    Raises:
        StrategyError: With the JSON path of the offending entry
    """
    memory = [str(m) for m in _field(document, "memory", source, StrategyError)]
    initial = str(_field(document, "initial", source, StrategyError))
    next_moves: Dict = {}
    for i, entry in enumerate(document.get("next", [])):
        where = f"{source}: next[{i}]"
        state = str(_field(entry, "memory", where, StrategyError))
        vertex = str(_field(entry, "vertex", where, StrategyError))
        if vertex not in g.vertices:
            raise StrategyError(f"unknown vertex {vertex!r}", where)
        if "edge" in entry:
            edge_id = entry["edge"]
        else:
            target = str(_field(entry, "to", where, StrategyError))
            matching = [e.id for e in g.out_edges(vertex) if e.target == target]
            if len(matching) != 1:
                raise StrategyError(f"{len(matching)} edges lead from {vertex!r} to {target!r}; name the edge index", where)
            edge_id = matching[0]
        next_moves[(state, vertex)] = edge_id
    updates: Dict = {}
    for i, entry in enumerate(document.get("update", [])):
        where = f"{source}: update[{i}]"
        state = str(_field(entry, "memory", where, StrategyError))
        target = str(_field(entry, "to", where, StrategyError))
        if "edge" in entry:
            edge_ids: List[int] = [entry["edge"]]
        else:
            vertex = str(_field(entry, "vertex", where, StrategyError))
            if vertex not in g.vertices:
                raise StrategyError(f"unknown vertex {vertex!r}", where)
            edge_ids = g.out_edge_ids(vertex)
        for edge_id in edge_ids:
            updates[(state, edge_id)] = target
    strategy = MooreStrategy(tuple(memory), initial, next_moves, updates)
    strategy.validate(g)
    return strategy


def load_strategy(path: str, g: GameGraph) -> MooreStrategy:
    return strategy_from_document(read_json_file(path), g, path)


def strategy_to_document(sigma: MooreStrategy) -> Dict[str, Any]:
    """Serialise with memory states printed as strings, entries in sorted order."""
    name = {state: str(state) for state in sigma.memory}
    return {
        "memory": [name[m] for m in sigma.memory],
        "initial": name[sigma.initial],
        "next": [
            {"memory": name[m], "vertex": v, "edge": e}
            for (m, v), e in sorted(sigma.next_moves.items(), key=lambda item: (str(item[0][0]), item[0][1]))
        ],
        "update": [
            {"memory": name[m], "edge": e, "to": name[t]}
            for (m, e), t in sorted(sigma.updates.items(), key=lambda item: (str(item[0][0]), item[0][1]))
        ],
    }
