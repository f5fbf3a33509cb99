"""Argumentation frameworks over expression-bearing arguments.

The finest unit is the arglet: one argument identifier paired with one
expression it asserts.  Attacks are declared between arglets, which keeps
track of exactly which assertion clashes with which.  Grouping arglets by
identifier recovers the ordinary argument graph, where an argument attacks
another as soon as any of their arglets do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import UnknownArgument

# (argument id, expression)
Arglet = tuple[str, str]


@dataclass(frozen=True)
class Argument:
    arg_id: str
    expressions: frozenset[str]


@dataclass(frozen=True)
class Framework:
    """Arglets plus arglet-level attacks."""

    arglets: frozenset[Arglet]
    attacks: frozenset[tuple[Arglet, Arglet]]

    def __post_init__(self):
        for src, dst in self.attacks:
            if src not in self.arglets:
                raise UnknownArgument(f"attack source {src!r} is not an arglet of the framework")
            if dst not in self.arglets:
                raise UnknownArgument(f"attack target {dst!r} is not an arglet of the framework")

    @staticmethod
    def of(arglets: Iterable[Arglet], attacks: Iterable[tuple[Arglet, Arglet]]) -> "Framework":
        return Framework(frozenset(arglets), frozenset(attacks))

    def argument_ids(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.arglets)

    def argument_expressions(self, arg_id: str) -> frozenset[str]:
        exprs = frozenset(e for a, e in self.arglets if a == arg_id)
        if not exprs:
            raise UnknownArgument(f"no arglet carries id {arg_id!r}")
        return exprs

    def arguments(self) -> list[Argument]:
        by_id: dict[str, set[str]] = {}
        for a, e in self.arglets:
            by_id.setdefault(a, set()).add(e)
        return [Argument(a, frozenset(es)) for a, es in sorted(by_id.items())]

    def has_attack(self, src_id: str, dst_id: str) -> bool:
        return any(a == src_id and b == dst_id for (a, _), (b, _) in self.attacks)

    def dung_projection(self) -> tuple[frozenset[str], frozenset[tuple[str, str]]]:
        """Collapse arglets to argument ids: the plain attack graph."""
        ids = self.argument_ids()
        edges = frozenset((a, b) for (a, _), (b, _) in self.attacks)
        return ids, edges

    def restrict(self, ids: Iterable[str]) -> "Framework":
        """Sub-framework induced by a set of argument ids."""
        keep = set(ids)
        arglets = frozenset(al for al in self.arglets if al[0] in keep)
        attacks = frozenset(
            (s, d) for s, d in self.attacks if s[0] in keep and d[0] in keep
        )
        return Framework(arglets, attacks)


def attack_relation(framework: Framework) -> dict[str, set[str]]:
    ids, edges = framework.dung_projection()
    out: dict[str, set[str]] = {a: set() for a in sorted(ids)}
    for s, d in edges:
        out[s].add(d)
    return out


def has_path(framework: Framework, src_id: str, dst_id: str) -> bool:
    """Directed attack path of length at least one."""
    adj = attack_relation(framework)
    if src_id not in adj or dst_id not in adj:
        raise UnknownArgument(f"path endpoints {src_id!r}, {dst_id!r} must be argument ids")
    seen: set[str] = set()
    stack = list(adj[src_id])
    while stack:
        cur = stack.pop()
        if cur == dst_id:
            return True
        if cur in seen:
            continue
        seen.add(cur)
        stack.extend(adj[cur])
    return False


def strongly_connected_components(framework: Framework) -> list[frozenset[str]]:
    """SCCs of the argument graph in a topological order, attackers first.

    Iterative Tarjan; components come out in reverse topological order and
    are flipped at the end.  Ties in the ordering are broken by visiting
    argument ids lexicographically, so the result is deterministic.
    """
    adj = attack_relation(framework)
    order = sorted(adj)
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[frozenset[str]] = []
    counter = 0

    for root in order:
        if root in index:
            continue
        work: list[tuple[str, Iterable[str]]] = [(root, iter(sorted(adj[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(adj[nxt]))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp: set[str] = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.add(member)
                    if member == node:
                        break
                components.append(frozenset(comp))

    components.reverse()
    return components
