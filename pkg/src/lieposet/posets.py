"""Signed posets of types A, B, C, D and their relation graphs.

Ground sets follow the classical matrix conventions: family A lives on
{1..n}; families C and D on {-n..-1, 1..n}; family B additionally carries
the element 0.  Relations are stored reflexively and transitively closed,
with (x, y) meaning x <= y in the partial order, and are constrained to
respect the integer order.  For the signed families, every relation
(x, y) with x != -y comes with its mirror (-y, -x).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    AntisymmetryViolation,
    BadElement,
    Condition1Violation,
    Condition2Violation,
    Condition3Violation,
    PosetConstructionError,
    UnsupportedHeight,
)

FAMILIES = ("A", "B", "C", "D")
SIGNED_FAMILIES = ("B", "C", "D")


def ground_set(family, n):
    """Ordered ground set of a family-`family` poset of half-size n."""
    if family == "A":
        return tuple(range(1, n + 1))
    negatives = tuple(range(-n, 0))
    positives = tuple(range(1, n + 1))
    if family == "B":
        return negatives + (0,) + positives
    return negatives + positives


@dataclass(frozen=True)
class SignedPoset:
    """A validated poset on a signed ground set, closed under the axioms.

    Instances are immutable and hashable; construct them through
    :func:`build_poset` (or validate by hand with :func:`validate`).
    """

    family: str
    n: int
    relations: frozenset

    @property
    def elements(self):
        return ground_set(self.family, self.n)

    def leq(self, x, y):
        return (x, y) in self.relations

    @property
    def strict_relations(self):
        return tuple(sorted((x, y) for (x, y) in self.relations if x != y))

    @property
    def rel_pm(self):
        """Relations running from a negative element to a positive one."""
        return tuple(sorted((x, y) for (x, y) in self.relations if x < 0 < y))

    def __repr__(self):
        gens = ",".join(f"{x}<={y}" for x, y in covering_relations(self))
        return f"SignedPoset({self.family};{self.n};{gens})"


class HeightPair(NamedTuple):
    plus_height: int
    total_height: int


@dataclass(frozen=True)
class RelationGraph:
    """Graph on the positive representatives of a height-(0,1) poset.

    edges holds pairs (i, j) with i < j; loops holds the vertices v with
    -v <= v, which occurs only in family C.
    """

    n: int
    edges: frozenset
    loops: frozenset

    @property
    def vertices(self):
        return tuple(range(1, self.n + 1))

    @property
    def edge_count(self):
        """Number of edges, counting each self loop as one edge."""
        return len(self.edges) + len(self.loops)

    def sorted_edges(self):
        return tuple(sorted(self.edges))

    def sorted_loops(self):
        return tuple(sorted(self.loops))


@dataclass(frozen=True)
class GraphComponent:
    vertices: tuple
    edge_count: int
    has_odd_cycle: bool
    is_unicyclic: bool


def _check_family(family):
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")


def _reachable(succ, start):
    seen = set()
    stack = list(succ[start])
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        stack.extend(succ[u])
    return seen


def build_poset(family, n, generators, strict=False):
    """Close a generator list into a validated poset.

    Reflexive and transitive pairs are always added.  For families B, C
    and D the mirror (-y, -x) of each generator (x, y) with x != -y is
    added automatically; with strict=True a missing mirror raises
    Condition2Violation instead.
    """
    _check_family(family)
    if n < 1:
        raise ValueError("n must be >= 1")
    ground = set(ground_set(family, n))
    pairs = set()
    for x, y in generators:
        if x not in ground or y not in ground:
            raise BadElement(
                f"generator ({x},{y}) outside the {family} ground set for n={n}"
            )
        if x > y:
            raise Condition1Violation(f"generator ({x},{y}) has {x} > {y}")
        pairs.add((x, y))
    if family != "A":
        for x, y in sorted(pairs):
            if x == -y:
                continue
            mirror = (-y, -x)
            if mirror in pairs:
                continue
            if strict:
                raise Condition2Violation(f"({x},{y}) present without ({-y},{-x})")
            pairs.add(mirror)
    succ = {x: set() for x in ground}
    for x, y in pairs:
        if x != y:
            succ[x].add(y)
    closed = set()
    for x in ground:
        above = _reachable(succ, x)
        if x in above:
            raise AntisymmetryViolation(f"closure creates a cycle through {x}")
        closed.add((x, x))
        closed.update((x, y) for y in above)
    poset = SignedPoset(family, n, frozenset(closed))
    validate(poset)
    return poset


def validate(P):
    """Check every axiom of the poset's family; raise on the first failure."""
    _check_family(P.family)
    ground = set(ground_set(P.family, P.n))
    rel = P.relations
    for x, y in rel:
        if x not in ground or y not in ground:
            raise BadElement(f"relation ({x},{y}) outside the ground set")
    for x in ground:
        if (x, x) not in rel:
            raise PosetConstructionError(f"missing reflexive pair ({x},{x})")
    for x, y in rel:
        if x != y and (y, x) in rel:
            raise AntisymmetryViolation(f"both ({x},{y}) and ({y},{x}) present")
    for x, y in rel:
        if x > y:
            raise Condition1Violation(f"relation ({x},{y}) has {x} > {y}")
    succ = {}
    for x, y in rel:
        if x != y:
            succ.setdefault(x, []).append(y)
    for x, ys in succ.items():
        for y in ys:
            for z in succ.get(y, ()):
                if (x, z) not in rel:
                    raise PosetConstructionError(
                        f"not transitively closed at ({x},{y}),({y},{z})"
                    )
    if P.family != "A":
        for x, y in rel:
            if x != -y and (-y, -x) not in rel:
                raise Condition2Violation(f"({x},{y}) present without ({-y},{-x})")
    if P.family in ("B", "D"):
        for i in range(1, P.n + 1):
            if (-i, i) in rel and _is_cover(P, -i, i):
                raise Condition3Violation(f"{i} covers {-i}")


def _is_cover(P, x, y):
    return not any(
        z != x and z != y and P.leq(x, z) and P.leq(z, y) for z in P.elements
    )


def covering_relations(P):
    return tuple(
        sorted((x, y) for (x, y) in P.relations if x != y and _is_cover(P, x, y))
    )


def _longest_chain(elements, relations):
    """Cardinality of the longest chain inside the given element subset."""
    elems = set(elements)
    if not elems:
        return 0
    succ = {x: [] for x in elems}
    for x, y in relations:
        if x != y and x in elems and y in elems:
            succ[x].append(y)
    best = {}

    def depth(x):
        if x not in best:
            best[x] = 1 + max((depth(y) for y in succ[x]), default=0)
        return best[x]

    return max(depth(x) for x in elems)


def height(P):
    """Height pair (longest chain in P+ minus one, longest chain minus one)."""
    if P.family == "A":
        raise ValueError("height pairs apply to families B, C, D")
    positives = [x for x in P.elements if x > 0]
    plus = _longest_chain(positives, P.relations) - 1
    total = _longest_chain(P.elements, P.relations) - 1
    return HeightPair(plus, total)


def type_a_height(P):
    """Longest chain minus one, for family-A posets."""
    if P.family != "A":
        raise ValueError("type_a_height applies to family A")
    return _longest_chain(P.elements, P.relations) - 1


def is_separable(P):
    """True when no relation runs from a negative element to a positive one.

    Relations touching 0 (family B) count toward neither side, so they
    never make a poset non-separable.
    """
    if P.family == "A":
        raise ValueError("separability applies to families B, C, D")
    return not any(x < 0 < y for (x, y) in P.relations)


def relation_graph(P):
    if P.family == "A":
        raise ValueError("relation graphs apply to families B, C, D")
    hp = height(P)
    if hp.plus_height != 0 or hp.total_height > 1:
        raise UnsupportedHeight(f"height {tuple(hp)} is not (0,0) or (0,1)")
    edges = set()
    loops = set()
    for x, y in P.relations:
        if x < 0 < y:
            i, j = -x, y
            if i == j:
                loops.add(i)
            else:
                edges.add((min(i, j), max(i, j)))
    return RelationGraph(P.n, frozenset(edges), frozenset(loops))


def graph_components(G):
    adj = {v: [] for v in G.vertices}
    for i, j in sorted(G.edges):
        adj[i].append(j)
        adj[j].append(i)
    seen = set()
    components = []
    for root in G.vertices:
        if root in seen:
            continue
        color = {root: 0}
        queue = deque([root])
        odd = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in color:
                    color[v] = color[u] ^ 1
                    queue.append(v)
                elif color[v] == color[u]:
                    odd = True
        seen.update(color)
        verts = tuple(sorted(color))
        in_comp = set(verts)
        edge_count = sum(1 for (i, j) in G.edges if i in in_comp)
        edge_count += sum(1 for v in G.loops if v in in_comp)
        has_odd = odd or any(v in G.loops for v in verts)
        components.append(
            GraphComponent(verts, edge_count, has_odd, edge_count == len(verts))
        )
    return tuple(components)


def poset_from_graph(family, n, edges, loops=()):
    """Rebuild the height-(0,1) poset encoded by a relation graph."""
    loops = tuple(loops)
    if loops and family != "C":
        raise ValueError("self loops occur only in family C")
    generators = [(-min(i, j), max(i, j)) for (i, j) in edges]
    generators += [(-v, v) for v in loops]
    return build_poset(family, n, generators)


def h01_slots(family, n):
    """Edge and loop slots addressed by the enumeration bitmask, in order."""
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    loops = list(range(1, n + 1)) if family == "C" else []
    return edges, loops


def poset_from_mask(family, n, mask):
    edges_all, loops_all = h01_slots(family, n)
    edges = [e for b, e in enumerate(edges_all) if mask >> b & 1]
    base = len(edges_all)
    loops = [v for b, v in enumerate(loops_all) if mask >> (base + b) & 1]
    return poset_from_graph(family, n, edges, loops)


def mask_of_poset(P):
    G = relation_graph(P)
    edges_all, loops_all = h01_slots(P.family, P.n)
    mask = 0
    for b, e in enumerate(edges_all):
        if e in G.edges:
            mask |= 1 << b
    for b, v in enumerate(loops_all):
        if v in G.loops:
            mask |= 1 << (len(edges_all) + b)
    return mask


def canonical_graph_key(n, edges, loops):
    """Lexicographically least relabeling of an (edges, loops) graph."""
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabel = {v: perm[v - 1] for v in range(1, n + 1)}
        e = tuple(
            sorted(
                (min(relabel[i], relabel[j]), max(relabel[i], relabel[j]))
                for (i, j) in edges
            )
        )
        l = tuple(sorted(relabel[v] for v in loops))
        key = (e, l)
        if best is None or key < best:
            best = key
    return best


def enumerate_h01(family, n, up_to_iso=False):
    """Yield every height-(0,0)/(0,1) poset of the family, one per labeled graph.

    Family C ranges over all graphs on n vertices with optional self loops
    (2^(n(n+1)/2) posets); families B and D forbid loops (2^(n(n-1)/2)).
    The order is the ascending bitmask order of :func:`poset_from_mask`.
    With up_to_iso=True only the first representative of each graph
    isomorphism class is yielded.
    """
    if family not in SIGNED_FAMILIES:
        raise ValueError("enumeration applies to families B, C, D")
    if n < 1:
        raise ValueError("n must be >= 1")
    edges_all, loops_all = h01_slots(family, n)
    seen = set()
    for mask in range(1 << (len(edges_all) + len(loops_all))):
        P = poset_from_mask(family, n, mask)
        if up_to_iso:
            G = relation_graph(P)
            key = canonical_graph_key(n, G.edges, G.loops)
            if key in seen:
                continue
            seen.add(key)
        yield P


def induced_subposet(P, subset, family=None):
    """Induced subposet on `subset`, relabeled onto a standard ground set.

    The relabeling is order preserving.  When the subset is mirror
    symmetric the family is kept (B drops to D when 0 is removed);
    otherwise the result is a family-A poset on {1..k}.
    """
    S = frozenset(subset)
    if not S <= set(P.elements):
        raise BadElement("subset not contained in the ground set")
    if family is None:
        if P.family == "A":
            family = "A"
        elif all(-x in S for x in S):
            family = "D" if (P.family == "B" and 0 not in S) else P.family
        else:
            family = "A"
    if family == "A":
        ordered = sorted(S)
        relabel = {x: k for k, x in enumerate(ordered, start=1)}
        size = len(ordered)
    else:
        positives = sorted(x for x in S if x > 0)
        relabel = {}
        for k, x in enumerate(positives, start=1):
            relabel[x] = k
            relabel[-x] = -k
        if 0 in S:
            relabel[0] = 0
        size = len(positives)
        if size == 0:
            raise BadElement("signed subposet needs at least one mirror pair")
    rels = frozenset(
        (relabel[x], relabel[y]) for (x, y) in P.relations if x in S and y in S
    )
    Q = SignedPoset(family, size, rels)
    validate(Q)
    return Q


def positive_part(P):
    """The induced poset on the positive elements, as a family-A poset."""
    return induced_subposet(P, [x for x in P.elements if x > 0], family="A")


def negative_part(P):
    return induced_subposet(P, [x for x in P.elements if x < 0], family="A")


def dual(P):
    """Order dual, relabeled back onto the standard ground set.

    Family A uses x -> n + 1 - x; the signed families use negation, under
    which the mirror condition makes every poset self dual.
    """
    if P.family == "A":
        m = P.n + 1
        rels = frozenset((m - y, m - x) for (x, y) in P.relations)
    else:
        rels = frozenset((-y, -x) for (x, y) in P.relations)
    Q = SignedPoset(P.family, P.n, rels)
    validate(Q)
    return Q


def hasse_connected(P):
    """True when the Hasse diagram is connected (isolated points disconnect)."""
    elems = P.elements
    adj = {x: [] for x in elems}
    for x, y in covering_relations(P):
        adj[x].append(y)
        adj[y].append(x)
    seen = {elems[0]}
    stack = [elems[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(elems)


def rg_connected(P):
    return len(graph_components(relation_graph(P))) == 1
