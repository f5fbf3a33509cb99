"""Finite lattices described by Hasse diagrams.

A lattice is handed to :func:`validate_lattice` as a set of node ids plus a
set of cover pairs ``(child, parent)`` meaning the parent sits directly above
the child with nothing in between.  Validation rejects cyclic or transitively
implied covers, then checks that every pair of nodes has a unique least upper
bound and a unique greatest lower bound.  Join and meet tables are built once
up front so later queries are table lookups.

Conventions:

* nodes are plain strings compared by identity of the id;
* ``leq(a, b)`` is the reflexive order derived from the covers;
* collections returned to callers are frozensets; anything that must be
  printed in a stable order is sorted at the presentation layer.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import (
    CycleInCovers,
    EmptySet,
    NonUniqueJoin,
    NonUniqueMeet,
    RedundantCover,
    UnknownNode,
)


class FiniteLattice:
    """A validated finite lattice. Build instances via :func:`validate_lattice`."""

    def __init__(self, nodes, covers, ups, downs, joins, meets, top, bottom):
        self.nodes: frozenset[str] = nodes
        self.covers: frozenset[tuple[str, str]] = covers
        self._ups = ups        # node -> frozenset of nodes >= node
        self._downs = downs    # node -> frozenset of nodes <= node
        self._joins = joins    # (a, b) -> least upper bound
        self._meets = meets    # (a, b) -> greatest lower bound
        self.top: str = top
        self.bottom: str = bottom
        self._children = {n: frozenset(c for c, p in covers if p == n) for n in nodes}
        self._parents = {n: frozenset(p for c, p in covers if c == n) for n in nodes}

    def _check(self, node: str) -> None:
        if node not in self.nodes:
            raise UnknownNode(f"unknown lattice node {node!r}")

    def leq(self, a: str, b: str) -> bool:
        """True when a is below or equal to b."""
        self._check(a)
        self._check(b)
        return b in self._ups[a]

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def up_set(self, node: str) -> frozenset[str]:
        """All nodes above or equal to the given node."""
        self._check(node)
        return self._ups[node]

    def down_set(self, node: str) -> frozenset[str]:
        """All nodes below or equal to the given node."""
        self._check(node)
        return self._downs[node]

    def join(self, nodes: Iterable[str]) -> str:
        """Least upper bound of a node set; the bottom element for an empty set."""
        out = None
        for n in nodes:
            self._check(n)
            out = n if out is None else self._joins[(out, n)]
        return self.bottom if out is None else out

    def meet(self, nodes: Iterable[str]) -> str:
        """Greatest lower bound of a node set; the top element for an empty set."""
        out = None
        for n in nodes:
            self._check(n)
            out = n if out is None else self._meets[(out, n)]
        return self.top if out is None else out

    def lower_covers(self, node: str) -> frozenset[str]:
        """Nodes directly below the given one; the bottom element yields itself.

        This is the granularity at which a node can be unfolded into the
        strictly more specific levels beneath it.
        """
        self._check(node)
        if node == self.bottom:
            return frozenset({node})
        return self._children[node]

    def children(self, node: str) -> frozenset[str]:
        """Raw Hasse children, with no special case at the bottom."""
        self._check(node)
        return self._children[node]

    def atoms(self) -> frozenset[str]:
        """Nodes covering the bottom element."""
        return self._parents[self.bottom]

    def upward_closure(self, generators: Iterable[str]) -> frozenset[str]:
        """Smallest upper set containing the generators."""
        out: set[str] = set()
        for g in generators:
            self._check(g)
            out.update(self._ups[g])
        return frozenset(out)

    def is_upper_set(self, nodes: Iterable[str]) -> bool:
        """True when the set is closed upward under the lattice order."""
        given = set(nodes)
        for n in given:
            self._check(n)
        return all(self._ups[n] <= given for n in given)


def _closure_ups(nodes, covers):
    """Reflexive-transitive up-sets from the cover relation, or None on a cycle."""
    parents = {n: [] for n in nodes}
    for c, p in covers:
        parents[c].append(p)
    # Kahn's algorithm on child->parent edges; leftovers mean a cycle.
    indeg = {n: 0 for n in nodes}
    for c, p in covers:
        indeg[p] += 1
    queue = sorted(n for n in nodes if indeg[n] == 0)
    order = []
    while queue:
        n = queue.pop()
        order.append(n)
        for p in parents[n]:
            indeg[p] -= 1
            if indeg[p] == 0:
                queue.append(p)
    if len(order) != len(nodes):
        return None
    ups = {}
    for n in reversed(order):
        acc = {n}
        for p in parents[n]:
            acc.update(ups[p])
        ups[n] = frozenset(acc)
    return ups


def validate_lattice(nodes: Iterable[str], covers: Iterable[tuple[str, str]]) -> FiniteLattice:
    """Validate a Hasse diagram and return the lattice it describes.

    Raises EmptySet for an empty node set, UnknownNode for a cover endpoint
    that is not a node, CycleInCovers, RedundantCover for a cover already
    implied transitively, and NonUniqueJoin / NonUniqueMeet when some pair
    of nodes lacks a unique least upper or greatest lower bound.
    """
    node_set = frozenset(nodes)
    if not node_set:
        raise EmptySet("a lattice needs at least one node")
    cover_set = frozenset((c, p) for c, p in covers)
    for c, p in cover_set:
        for end in (c, p):
            if end not in node_set:
                raise UnknownNode(f"cover references unknown node {end!r}")
        if c == p:
            raise CycleInCovers(f"self cover on {c!r}")

    ups = _closure_ups(node_set, cover_set)
    if ups is None:
        raise CycleInCovers("cover relation contains a cycle")

    # A cover is redundant if its parent is reachable from its child some
    # longer way round; equivalently through any other parent of the child.
    for c, p in sorted(cover_set):
        for c2, p2 in cover_set:
            if c2 == c and p2 != p and p in ups[p2]:
                raise RedundantCover(f"cover {c!r} -> {p!r} is transitively implied")

    downs = {n: frozenset(m for m in node_set if n in ups[m]) for n in node_set}

    joins: dict[tuple[str, str], str] = {}
    meets: dict[tuple[str, str], str] = {}
    for a in node_set:
        joins[(a, a)] = a
        meets[(a, a)] = a
    for a, b in combinations(sorted(node_set), 2):
        uppers = ups[a] & ups[b]
        least = [u for u in uppers if downs[u] & uppers == {u}]
        if len(least) != 1:
            raise NonUniqueJoin(f"nodes {a!r} and {b!r} have no unique least upper bound")
        joins[(a, b)] = joins[(b, a)] = least[0]
        lowers = downs[a] & downs[b]
        greatest = [m for m in lowers if ups[m] & lowers == {m}]
        if len(greatest) != 1:
            raise NonUniqueMeet(f"nodes {a!r} and {b!r} have no unique greatest lower bound")
        meets[(a, b)] = meets[(b, a)] = greatest[0]

    top = next(iter(node_set))
    bottom = next(iter(node_set))
    for n in node_set:
        top = joins[(top, n)]
        bottom = meets[(bottom, n)]

    return FiniteLattice(node_set, cover_set, ups, downs, joins, meets, top, bottom)
