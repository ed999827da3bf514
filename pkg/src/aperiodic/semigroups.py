"""Transition semigroup closure and aperiodicity certification.

The closure engine works on raw image arrays packed as ``bytes`` so that
right-multiplication is a single ``bytes.translate`` call; a 10^6-element
closure takes seconds.  That caps the state count at 255, far above the desk
scale everything here runs at.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .transforms import Transformation, has_cycle_images

DEFAULT_ELEMENT_BUDGET = 50_000_000  # total stored images, i.e. |S| * n

_PAD = bytes(range(256))


def _table(images: bytes) -> bytes:
    """Extend an image array to a 256-byte translation table."""
    return images + _PAD[len(images):]


class Semigroup:
    """A closed set of transformations with its generating set.

    ``elements`` are in deterministic BFS insertion order (generators sorted
    lexicographically first); ``truncated`` marks a closure cut short by the
    element budget, in which case the set is *not* closed.
    """

    def __init__(self, n, generators, element_bytes, truncated=False):
        self.n = n
        self.generators = tuple(generators)
        self._element_bytes = tuple(element_bytes)
        self._element_set = frozenset(element_bytes)
        self.truncated = truncated

    @property
    def elements(self) -> tuple[Transformation, ...]:
        return tuple(Transformation(tuple(b)) for b in self._element_bytes)

    def element_arrays(self) -> tuple[bytes, ...]:
        """Raw image arrays, BFS order; cheap, no wrapping."""
        return self._element_bytes

    def sorted_elements(self) -> tuple[Transformation, ...]:
        return tuple(Transformation(tuple(b)) for b in sorted(self._element_bytes))

    def __len__(self) -> int:
        return len(self._element_bytes)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, t) -> bool:
        if isinstance(t, Transformation):
            return bytes(t.images) in self._element_set
        if isinstance(t, bytes):
            return t in self._element_set
        if isinstance(t, tuple):
            return bytes(t) in self._element_set
        return False

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"Semigroup(n={self.n}, |S|={len(self)}{flag})"


def closure(generators, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> Semigroup:
    """Close a generator set under composition (BFS, right-multiplication).

    Right-multiplication alone suffices for a generated semigroup: every
    non-empty word arises by extending a shorter word on the right.  If the
    budget (counted as |S| * n stored images) would be exceeded the partial
    result is returned with ``truncated=True`` rather than silently dropped.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError(f"generators mix state counts {n} and {g.n}")
    if n > 255:
        raise ValueError("closure supports at most 255 states")
    gen_bytes = sorted({bytes(g.images) for g in gens})
    if element_budget < n * len(gen_bytes):
        raise ValueError("element budget too small to hold the generators")

    max_elements = element_budget // n
    tables = [_table(g) for g in gen_bytes]
    seen = set(gen_bytes)
    order = list(gen_bytes)
    frontier = list(gen_bytes)
    truncated = False
    while frontier and not truncated:
        next_frontier = []
        for e in frontier:
            for tb in tables:
                p = e.translate(tb)
                if p not in seen:
                    if len(seen) >= max_elements:
                        truncated = True
                        break
                    seen.add(p)
                    next_frontier.append(p)
            if truncated:
                break
        order.extend(next_frontier)
        frontier = next_frontier

    gen_ts = tuple(Transformation(tuple(b)) for b in gen_bytes)
    return Semigroup(n, gen_ts, order, truncated)


def is_aperiodic(s: Semigroup) -> bool:
    """True iff the (fully closed) semigroup has no nontrivial subgroup.

    Element-wise test: a finite transformation semigroup is aperiodic exactly
    when every element is cycle-free (equivalently t^k = t^(k+1) for some
    k <= n).
    """
    if s.truncated:
        raise ValueError("aperiodicity of a truncated closure is undecided")
    return not any(has_cycle_images(e) for e in s.element_arrays())


def extend_closure(base: set[bytes], gen_tables: list[bytes], t: bytes,
                   require_cycle_free: bool = True):
    """Close ``base`` (already closed under the gens) with one more generator.

    Returns the list of new elements, or None as soon as a new element has a
    cycle (when ``require_cycle_free``).  The caller owns committing or
    discarding: ``base`` itself is never mutated here.
    """
    t_table = _table(t)
    tables = gen_tables + [t_table]
    new: list[bytes] = []
    new_set: set[bytes] = set()
    stack: list[bytes] = []

    def consider(p: bytes):
        if p not in base and p not in new_set:
            new_set.add(p)
            stack.append(p)

    consider(t)
    for e in base:
        consider(e.translate(t_table))
    while stack:
        x = stack.pop()
        if require_cycle_free and has_cycle_images(x):
            return None
        new.append(x)
        for tb in tables:
            consider(x.translate(tb))
    return new


def is_transition_complete(s: Semigroup) -> bool:
    """True iff adding any transformation outside S breaks aperiodicity.

    Exhausts all n^n candidates; meant for desk scale (n <= 5 or so).
    """
    if s.truncated:
        raise ValueError("completeness of a truncated closure is undecided")
    if not is_aperiodic(s):
        raise ValueError("transition-completeness is defined for aperiodic semigroups")
    n = s.n
    base = set(s.element_arrays())
    gen_tables = [_table(bytes(g.images)) for g in s.generators]
    for images in iproduct(range(n), repeat=n):
        cand = bytes(images)
        if cand in base:
            continue
        if has_cycle_images(cand):
            continue
        if extend_closure(base, gen_tables, cand) is not None:
            return False
    return True


@dataclass(frozen=True)
class UnitaryVerdict:
    """Outcome of the forbidden-pattern scan over a unitary generator set.

    kind is one of "aperiodic", "k_cyclic", "t6", "not_unitary"; witness
    holds the offending generators (the cycle edges, the six T6 edges, or the
    single non-unitary generator).
    """

    kind: str
    witness: tuple[Transformation, ...] = ()

    def __bool__(self) -> bool:
        return self.kind == "aperiodic"


def _unitary_edge(t: Transformation):
    """Return (p, q) if t is the unitary (p -> q), else None."""
    moved = [(q, p) for q, p in enumerate(t.images) if p != q]
    if len(moved) != 1:
        return None
    return moved[0]


def _scc_partition(nodes, edges):
    """Strongly connected components by mutual reachability (tiny graphs)."""
    adj = {v: set() for v in nodes}
    for p, q in edges:
        adj[p].add(q)
    reach = {}
    for v in nodes:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[v] = seen
    comps = []
    assigned = set()
    for v in nodes:
        if v in assigned:
            continue
        comp = {u for u in reach[v] if v in reach[u]}
        assigned |= comp
        comps.append(comp)
    return comps


def _shortest_path(adj, src, dst, allowed):
    """BFS path src -> dst through ``allowed`` vertices; returns vertex list."""
    prev = {src: None}
    queue = [src]
    while queue:
        nxt = []
        for x in queue:
            for y in adj[x]:
                if y in allowed and y not in prev:
                    prev[y] = x
                    if y == dst:
                        path = [y]
                        while prev[path[-1]] is not None:
                            path.append(prev[path[-1]])
                        return path[::-1]
                    nxt.append(y)
        queue = nxt
    return None


def unitary_generator_check(generators) -> UnitaryVerdict:
    """Scan a unitary generator set for the two forbidden patterns.

    A k-cyclic subset (k >= 3, a directed simple cycle among the edges) or a
    T6 pattern (a state bidirectionally linked to three others) each force a
    non-trivial permutation; absence of both certifies aperiodicity.
    """
    gens = list(generators)
    edges = {}
    for g in gens:
        e = _unitary_edge(g)
        if e is None:
            return UnitaryVerdict("not_unitary", (g,))
        edges[e] = g
    n = gens[0].n if gens else 0
    nodes = range(n)
    adj = {v: set() for v in nodes}
    for p, q in edges:
        adj[p].add(q)

    for comp in _scc_partition(nodes, edges):
        if len(comp) < 2:
            continue
        internal = [(p, q) for (p, q) in edges if p in comp and q in comp]
        one_way = [(p, q) for (p, q) in internal if (q, p) not in edges]
        if one_way:
            p, q = one_way[0]
            # return path q -> p exists inside the SCC and has >= 2 edges,
            # so the edge (p, q) closes a simple cycle of length >= 3
            path = _shortest_path(adj, q, p, comp)
            cycle_edges = list(zip(path, path[1:])) + [(p, q)]
            return UnitaryVerdict("k_cyclic", tuple(edges[e] for e in cycle_edges))
        neighbours = {v: set() for v in comp}
        for p, q in internal:
            neighbours[p].add(q)
        for v in comp:
            if len(neighbours[v]) >= 3:
                a, b, c = sorted(neighbours[v])[:3]
                pattern = [(a, v), (v, a), (v, b), (v, c), (b, v), (c, v)]
                return UnitaryVerdict("t6", tuple(edges[e] for e in pattern))
        # all edges bidirectional, degrees <= 2: a path or a ring
        if len(internal) // 2 == len(comp):
            start = min(comp)
            ring = [start, min(neighbours[start])]
            while True:
                options = neighbours[ring[-1]] - {ring[-2]}
                nxt = options.pop()
                if nxt == start:
                    break
                ring.append(nxt)
            cycle_edges = list(zip(ring, ring[1:])) + [(ring[-1], start)]
            return UnitaryVerdict("k_cyclic", tuple(edges[e] for e in cycle_edges))
    return UnitaryVerdict("aperiodic")


def strongly_connected_bipath_check(generators) -> bool:
    """True iff every strongly connected component of the edge graph is a bipath."""
    gens = list(generators)
    for g in gens:
        if _unitary_edge(g) is None:
            raise ValueError(f"generator {g} is not unitary")
    return bool(unitary_generator_check(gens))


def count_k_partial(s: Semigroup, k: int) -> int:
    """Number of k-partial transformations consistent with some element of S.

    A k-partial map is consistent when some element agrees with it on every
    state it maps into Q; box assignments (k distinguishable boxes) are free.
    Grouping by the defined-part domain D gives
    sum over D of |{t|_D : t in S}| * k^(n - |D|).
    """
    if s.truncated:
        raise ValueError("k-partial count needs a fully closed semigroup")
    if k < 0:
        raise ValueError("k must be non-negative")
    n = s.n
    if n > 8 or k > 8:
        raise ValueError("count_k_partial is desk-scale only (n <= 8, k <= 8)")
    arrays = s.element_arrays()
    total = 0
    for mask in range(1 << n):
        positions = [q for q in range(n) if mask >> q & 1]
        boxed = n - len(positions)
        if k == 0 and boxed:
            continue
        restrictions = {tuple(e[q] for q in positions) for e in arrays}
        total += len(restrictions) * k**boxed
    return total
