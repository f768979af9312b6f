"""
Certified infimum over realizable mixings.

The minimizer's finite-memory value is the infimum, over one cycle basis per
maximizer memoryless strategy and one mixing per basis, of the one-player
value of the resulting points. Each choice of bases is a domain: a product of
simplices, searched by branch and bound.

* objective: one-player value at the box barycenter, at LP argmins of the
  bound, and at the pure corners of the root box;
* bound: the larger of a Lipschitz bound and, for a few fixed mixings mu of
  the points, the exact minimum of ``max_t term_t(sum_i mu_i A_i lambda_i)``
  over the box, computed by one LP per row selection;
* branch: bisect the longest image edge of the component with the largest
  image radius.

Bisection at a midpoint halves the volume, so a leaf at depth d covers
``2**-d`` of its domain and the leaves of a finished search are a prefix-free
code with Kraft sum 1.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .. import config
from ..exceptions import BudgetExceededError
from ..expressions.normal_form import NormalFormExpression, lipschitz_constant, min_of_sums
from ..geometry.lp import LinearProgram, Sense
from ..graphs.cycle_bases import CycleMixtureBasis, eulerian_cycle_sets
from ..graphs.game_graph import GameGraph, Player
from ..graphs.strategies import MemorylessStrategy, memoryless_strategies
from ..oneplayer.solver import evaluate_point_set
from ..realizability.witness import RealizabilityWitness
from .intervals import IntervalWitness, LeafBound, LowerBoundCertificate, ValueInterval

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Simplex = Tuple[Vector, ...]


@dataclass(frozen=True)
class MixingDomain:
    """Distinct bases chosen across the maximizer's memoryless strategies."""
    bases: Tuple[CycleMixtureBasis, ...]
    assignment: Tuple[Tuple[MemorylessStrategy, int], ...]

    def key(self) -> Tuple:
        return tuple(b.key() for b in self.bases)


@dataclass
class _Box:
    domain: int
    path: str
    simplices: Tuple[Simplex, ...]
    images: Tuple[Tuple[Vector, ...], ...]
    bound: Fraction = Fraction(0)


def enumerate_domains(g: GameGraph) -> List[MixingDomain]:
    """
    Domains of the search, in enumeration order of the maximizer strategies.

    A domain whose basis set strictly contains another domain's set is
    dropped: its extra points can only raise the value.
    """
    per_tau = []
    for tau in memoryless_strategies(g, Player.P2):
        per_tau.append((tau, eulerian_cycle_sets(g.restrict(tau.choice_map))))

    candidates: Dict[frozenset, MixingDomain] = {}
    for combo in itertools.product(*(range(len(bases)) for _, bases in per_tau)):
        bases: List[CycleMixtureBasis] = []
        index: Dict[Tuple, int] = {}
        assignment = []
        for (tau, options), choice in zip(per_tau, combo):
            basis = options[choice]
            if basis.key() not in index:
                index[basis.key()] = len(bases)
                bases.append(basis)
            assignment.append((tau, index[basis.key()]))
        keys = frozenset(index)
        if keys not in candidates:
            candidates[keys] = MixingDomain(tuple(bases), tuple(assignment))

    domains = [d for keys, d in candidates.items() if not any(other < keys for other in candidates)]
    logger.debug(f"{len(domains)} mixing domains from {len(per_tau)} maximizer strategies")
    return domains


def _linf(a: Vector, b: Vector) -> Fraction:
    return max(abs(x - y) for x, y in zip(a, b))


def _average(vectors: Sequence[Vector]) -> Vector:
    n = len(vectors)
    return tuple(sum(column, Fraction(0)) / n for column in zip(*vectors))


def root_box(domain: MixingDomain, index: int) -> _Box:
    simplices = []
    images = []
    for basis in domain.bases:
        corners = tuple(tuple(Fraction(int(i == j)) for j in range(basis.size)) for i in range(basis.size))
        simplices.append(corners)
        images.append(basis.columns)
    return _Box(index, "", tuple(simplices), tuple(images))


def _radius(box: _Box, component: int) -> Fraction:
    images = box.images[component]
    centre = _average(images)
    return max(_linf(p, centre) for p in images)


def bisect(box: _Box, domain: MixingDomain) -> Tuple[_Box, _Box]:
    """Split the longest image edge of the widest component at its midpoint."""
    radii = [_radius(box, i) for i in range(len(box.simplices))]
    component = max(range(len(radii)), key=lambda i: (radii[i], -i))
    images = box.images[component]
    pairs = itertools.combinations(range(len(images)), 2)
    a, b = max(pairs, key=lambda ab: (_linf(images[ab[0]], images[ab[1]]), -ab[0], -ab[1]))
    vertices = box.simplices[component]
    midpoint = tuple((x + y) / 2 for x, y in zip(vertices[a], vertices[b]))
    midpoint_image = domain.bases[component].point(midpoint)

    children = []
    for replaced, bit in ((a, "0"), (b, "1")):
        simplex = tuple(midpoint if j == replaced else v for j, v in enumerate(vertices))
        image = tuple(midpoint_image if j == replaced else p for j, p in enumerate(images))
        children.append(_Box(
            box.domain, box.path + bit,
            box.simplices[:component] + (simplex,) + box.simplices[component + 1:],
            box.images[:component] + (image,) + box.images[component + 1:],
        ))
    return children[0], children[1]


def replay(domain: MixingDomain, index: int, path: str) -> _Box:
    box = root_box(domain, index)
    for bit in path:
        box = bisect(box, domain)[int(bit)]
    return box


class BoxBounder:
    """Lower bounds of the one-player value over a box."""

    def __init__(self, nf: NormalFormExpression, row_limit: int = config.ROW_SELECTION_LIMIT):
        self.nf = nf
        self.lipschitz = lipschitz_constant(nf)
        # Each term's min-of-sums rows as coefficient vectors on source dimensions
        self.rows: List[List[Vector]] = []
        for term in nf.terms:
            term_rows = []
            for form in min_of_sums(term):
                coefficients = [Fraction(0)] * nf.source_k
                for dim, count in form.items():
                    source, sign = nf.dimension_map[dim - 1]
                    coefficients[source - 1] += count * sign
                term_rows.append(tuple(coefficients))
            self.rows.append(term_rows)
        self.selected_terms = [0]
        total = len(self.rows[0])
        for t in range(1, len(self.rows)):
            if total * len(self.rows[t]) > row_limit:
                break
            total *= len(self.rows[t])
            self.selected_terms.append(t)

    def centre(self, box: _Box) -> Tuple[Tuple[Vector, ...], Tuple[Vector, ...]]:
        mixings = tuple(_average(s) for s in box.simplices)
        points = tuple(_average(images) for images in box.images)
        return mixings, points

    def mu_candidates(self, box: _Box, centre_points: Sequence[Vector], centre_mixing) -> List[Vector]:
        m = len(box.simplices)
        if m == 1:
            return [(Fraction(1),)]
        candidates = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
        candidates.append(tuple(Fraction(1, m) for _ in range(m)))
        unique = list(dict.fromkeys(centre_points))
        owner = [centre_points.index(p) for p in unique]
        for weights in centre_mixing.values():
            mu = [Fraction(0)] * m
            for j, w in enumerate(weights):
                mu[owner[j]] += w
            candidates.append(tuple(mu))
        return list(dict.fromkeys(candidates))

    def selection_bound(self, box: _Box, mu: Vector) -> Tuple[Fraction, Tuple[Vector, ...]]:
        """Exact minimum over the box of ``max_t term_t`` at the mu-mixed point, with an argmin."""
        best: Optional[Tuple[Fraction, Tuple[Vector, ...]]] = None
        options = [range(len(self.rows[t])) for t in self.selected_terms]
        for selection in itertools.product(*options):
            lp = LinearProgram("selection")
            z = lp.add_variable("z", nonnegative=False)
            beta = []
            for i, simplex in enumerate(box.simplices):
                names = [lp.add_variable(f"b{i}_{j}") for j in range(len(simplex))]
                lp.add_row({n: 1 for n in names}, Sense.EQ, 1, f"simplex{i}")
                beta.append(names)
            for t, s in zip(self.selected_terms, selection):
                row = self.rows[t][s]
                coefficients = {z: Fraction(1)}
                for i, images in enumerate(box.images):
                    if mu[i] == 0:
                        continue
                    for name, image in zip(beta[i], images):
                        coefficients[name] = coefficients.get(name, 0) - mu[i] * sum(
                            (c * x for c, x in zip(row, image)), Fraction(0))
                lp.add_row(coefficients, Sense.GE, 0, f"term{t}")
            result = lp.minimize({z: 1})
            if best is None or result.objective < best[0]:
                mixings = tuple(
                    tuple(sum((result.values[n] * v[c] for n, v in zip(beta[i], simplex)), Fraction(0))
                          for c in range(len(simplex[0])))
                    for i, simplex in enumerate(box.simplices)
                )
                best = (result.objective, mixings)
        return best

    def bound(self, box: _Box, centre_value: Fraction, centre_points, centre_mixing):
        """
        Returns:
            (lower bound, argmin mixings of the strongest selection bound)
        """
        radius = max(_radius(box, i) for i in range(len(box.simplices)))
        lower = centre_value - self.lipschitz * radius
        argmin = None
        for mu in self.mu_candidates(box, centre_points, centre_mixing):
            value, mixings = self.selection_bound(box, mu)
            if argmin is None or value > lower:
                lower = max(lower, value)
                argmin = mixings
        return lower, argmin


def _witness(domain: MixingDomain, mixings: Sequence[Vector], value: Fraction) -> IntervalWitness:
    witnesses = []
    for tau, b in domain.assignment:
        basis = domain.bases[b]
        support = basis.support(mixings[b])
        cycles = tuple(basis.cycles[c] for c in support)
        weights = tuple(mixings[b][c] for c in support)
        witnesses.append(RealizabilityWitness(tau, basis.component, cycles, weights, basis.point(mixings[b])))
    return IntervalWitness(tuple(witnesses), value)


class MixingSearch:
    """
    Branch and bound over every domain of a graph.

    Args:
        g: Game graph with its initial vertex set
        nf: Normalized expression
        eps: Target width of the interval
        node_budget: Maximum number of evaluated boxes
        nu: Optional threshold; the search stops as soon as it is decided
    """

    def __init__(self, g: GameGraph, nf: NormalFormExpression, eps: Fraction,
                 node_budget: int = config.BNB_NODE_BUDGET, nu: Optional[Fraction] = None,
                 corner_limit: int = config.CORNER_LIMIT, row_limit: int = config.ROW_SELECTION_LIMIT):
        self.g = g
        self.nf = nf
        self.eps = Fraction(eps)
        self.node_budget = node_budget
        self.nu = None if nu is None else Fraction(nu)
        self.corner_limit = corner_limit
        self.bounder = BoxBounder(nf, row_limit)
        self.domains = enumerate_domains(g)
        self.best_hi: Optional[Fraction] = None
        self.best_witness: Optional[IntervalWitness] = None
        self.heap: List[Tuple[Fraction, int, _Box]] = []
        self.closed: List[LeafBound] = []
        self.nodes = 0
        self._counter = itertools.count()

    def _offer(self, domain: MixingDomain, mixings: Sequence[Vector]):
        points = [b.point(x) for b, x in zip(domain.bases, mixings)]
        value = evaluate_point_set(points, self.nf).value
        if self.best_hi is None or value < self.best_hi:
            self.best_hi = value
            self.best_witness = _witness(domain, mixings, value)

    def _realizable(self, domain: MixingDomain, mixings: Sequence[Vector]) -> bool:
        return all(b.is_realizable_mixing(x) for b, x in zip(domain.bases, mixings))

    def _perturb(self, mixings, centre, radius: Fraction):
        delta = self.eps / (2 * (self.bounder.lipschitz * radius + 1)) if self.eps > 0 else Fraction(1, 1000)
        delta = min(delta, Fraction(1, 2))
        return tuple(tuple((1 - delta) * x + delta * c for x, c in zip(m, cm)) for m, cm in zip(mixings, centre))

    def _evaluate(self, box: _Box):
        self.nodes += 1
        domain = self.domains[box.domain]
        centre_mixings, centre_points = self.bounder.centre(box)
        centre = evaluate_point_set(centre_points, self.nf)
        if self._realizable(domain, centre_mixings):
            self._offer(domain, centre_mixings)
        lower, argmin = self.bounder.bound(box, centre.value, centre_points, centre.mixing)
        if argmin is not None:
            if not self._realizable(domain, argmin):
                radius = max(_radius(box, i) for i in range(len(box.simplices)))
                argmin = self._perturb(argmin, centre_mixings, radius)
            self._offer(domain, argmin)
        box.bound = lower
        heapq.heappush(self.heap, (lower, next(self._counter), box))

    def _corners(self, index: int, domain: MixingDomain):
        sizes = [b.size for b in domain.bases]
        for count, choice in enumerate(itertools.product(*(range(n) for n in sizes))):
            if count >= self.corner_limit:
                break
            mixings = tuple(tuple(Fraction(int(i == c)) for i in range(n)) for c, n in zip(choice, sizes))
            self._offer(domain, mixings)

    def lower(self) -> Fraction:
        if not self.heap:
            return self.best_hi
        return min(self.best_hi, self.heap[0][0])

    def interval(self) -> ValueInterval:
        lo = self.lower()
        leaves = self.closed + [LeafBound(box.domain, box.path, box.bound) for _, _, box in self.heap]
        leaves.sort(key=lambda leaf: (leaf.domain, leaf.path))
        certificate = LowerBoundCertificate(lo, tuple(d.key() for d in self.domains), tuple(leaves))
        trace = [f"domains={len(self.domains)}", f"nodes={self.nodes}", f"leaves={len(leaves)}"]
        return ValueInterval(lo, self.best_hi, self.best_witness, certificate, trace)

    def _done(self) -> bool:
        lo = self.lower()
        if self.best_hi - lo <= self.eps:
            return True
        return self.nu is not None and (self.best_hi <= self.nu or lo > self.nu)

    def run(self) -> ValueInterval:
        """
        Raises:
            BudgetExceededError: Carrying the interval reached so far
        """
        for index, domain in enumerate(self.domains):
            self._corners(index, domain)
            self._evaluate(root_box(domain, index))
        while self.heap and not self._done():
            if self.nodes >= self.node_budget:
                raise BudgetExceededError(
                    f"branch and bound stopped after {self.nodes} boxes at {self.interval()}",
                    self.interval(),
                )
            lower, _, box = heapq.heappop(self.heap)
            if lower >= self.best_hi:
                self.closed.append(LeafBound(box.domain, box.path, lower))
                continue
            for child in bisect(box, self.domains[box.domain]):
                self._evaluate(child)
        interval = self.interval()
        logger.info(f"Value interval {interval} after {self.nodes} boxes over {len(self.domains)} domains")
        return interval


def inf_value(g: GameGraph, nf: NormalFormExpression, eps: Fraction,
              node_budget: int = config.BNB_NODE_BUDGET, nu: Optional[Fraction] = None) -> ValueInterval:
    """
    Certified interval around the minimizer's finite-memory value.

    Args:
        g: Game graph, analysed from its initial vertex
        nf: Normalized expression
        eps: Maximum width of the returned interval
        node_budget: Maximum number of evaluated boxes
        nu: Optional threshold that stops the search once decided

    Returns:
        ValueInterval whose hi is attained by its witness and whose lo is
        backed by the branch-and-bound leaves

    Raises:
        BudgetExceededError: If the interval is still too wide when the budget runs out
    """
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return MixingSearch(g, nf, eps, node_budget, nu).run()


def verify_lower_bound(certificate: LowerBoundCertificate, g: GameGraph, nf: NormalFormExpression,
                       row_limit: int = config.ROW_SELECTION_LIMIT) -> bool:
    """
    Replay a lower-bound certificate independently.

    Checks that the certificate covers the graph's domains, that the leaves of
    each domain form a prefix-free code with Kraft sum 1, and that every leaf
    bound recomputed from scratch is at least ``lo``.
    """
    domains = enumerate_domains(g)
    if tuple(d.key() for d in domains) != certificate.domains:
        logger.warning("Certificate domains do not match the graph")
        return False
    bounder = BoxBounder(nf, row_limit)
    by_domain: Dict[int, List[str]] = {i: [] for i in range(len(domains))}
    for leaf in certificate.leaves:
        if leaf.domain not in by_domain or set(leaf.path) - {"0", "1"}:
            return False
        by_domain[leaf.domain].append(leaf.path)
    for paths in by_domain.values():
        ordered = sorted(paths)
        if any(b.startswith(a) for a, b in zip(ordered, ordered[1:])):
            return False
        if sum((Fraction(1, 2 ** len(p)) for p in paths), Fraction(0)) != 1:
            return False
    for leaf in certificate.leaves:
        box = replay(domains[leaf.domain], leaf.domain, leaf.path)
        _, points = bounder.centre(box)
        centre = evaluate_point_set(points, nf)
        lower, _ = bounder.bound(box, centre.value, points, centre.mixing)
        if lower < certificate.lo:
            logger.warning(f"Leaf {leaf.domain}:{leaf.path} bounds only {lower} < {certificate.lo}")
            return False
    return True


def verify_interval_witness(interval: ValueInterval, g: GameGraph, nf: NormalFormExpression) -> bool:
    """Re-evaluate hi at the witness and check every mixture is a realizable one of its tau."""
    witness = interval.witness
    if witness is None:
        return False
    taus = list(memoryless_strategies(g, Player.P2))
    if [w.tau for w in witness.witnesses] != taus:
        return False
    for w in witness.witnesses:
        bases = eulerian_cycle_sets(g.restrict(w.tau.choice_map))
        basis = next((b for b in bases if set(w.cycles) <= set(b.cycles)), None)
        if basis is None or any(x <= 0 for x in w.mixing) or sum(w.mixing, Fraction(0)) != 1:
            return False
        family = [basis.cycles.index(c) for c in w.cycles]
        if not basis.is_connected_family(family):
            return False
        if CycleMixtureBasis(basis.component, w.cycles).point(w.mixing) != w.point:
            return False
    return evaluate_point_set(list(witness.points), nf).value == interval.hi
