"""Extension semantics over the plain argument graph.

Everything here works on the Dung projection of a framework: arguments and
the attacks between them, expressions ignored.  Extension sets come back
sorted by size then lexicographically so equal inputs always print equally.
"""

from __future__ import annotations

from typing import Iterable

from .af import Framework, attack_relation, strongly_connected_components
from .errors import UnknownArgument

IN = "in"
OUT = "out"
UNDECIDED = "undecided"


def _check_subset(framework: Framework, members: Iterable[str]) -> frozenset[str]:
    ids = framework.argument_ids()
    sub = frozenset(members)
    for a in sub:
        if a not in ids:
            raise UnknownArgument(f"{a!r} is not an argument of the framework")
    return sub


def is_conflict_free(framework: Framework, members: Iterable[str]) -> bool:
    sub = _check_subset(framework, members)
    _, edges = framework.dung_projection()
    return not any(s in sub and d in sub for s, d in edges)


def _defends_all(adj: dict[str, set[str]], sub: frozenset[str]) -> bool:
    for attacker, hit in adj.items():
        if attacker in sub or not (hit & sub):
            continue
        if not any(attacker in adj[defender] for defender in sub):
            return False
    return True


def is_admissible(framework: Framework, members: Iterable[str]) -> bool:
    """Conflict-free and defending each member against every attacker."""
    sub = _check_subset(framework, members)
    if not is_conflict_free(framework, sub):
        return False
    return _defends_all(attack_relation(framework), sub)


def _sorted_extensions(extensions: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    return sorted(set(extensions), key=lambda e: (len(e), tuple(sorted(e))))


def _maximal(sets: list[frozenset[str]]) -> list[frozenset[str]]:
    return [s for s in sets if not any(s < t for t in sets)]


def preferred(framework: Framework) -> list[frozenset[str]]:
    """All maximal admissible sets.

    Depth-first subset enumeration; branches that already contain a conflict
    are cut immediately, admissibility is checked only on the leaves kept.
    """
    ids = sorted(framework.argument_ids())
    adj = attack_relation(framework)
    admissible: list[frozenset[str]] = []

    def extend(chosen: set[str], start: int) -> None:
        # every visited subset is conflict-free by construction
        frozen = frozenset(chosen)
        if _defends_all(adj, frozen):
            admissible.append(frozen)
        for i in range(start, len(ids)):
            cand = ids[i]
            if cand in adj[cand]:
                continue
            if any(cand in adj[c] or c in adj[cand] for c in chosen):
                continue
            chosen.add(cand)
            extend(chosen, i + 1)
            chosen.remove(cand)

    extend(set(), 0)
    return _sorted_extensions(_maximal(admissible))


def grounded_labelling(framework: Framework) -> dict[str, str]:
    """Least-fixpoint labelling.

    An argument goes in once all its attackers are out, out once some
    attacker is in; whatever never settles stays undecided.
    """
    adj = attack_relation(framework)
    attackers: dict[str, set[str]] = {a: set() for a in adj}
    for s, hit in adj.items():
        for d in hit:
            attackers[d].add(s)

    label: dict[str, str] = {}
    changed = True
    while changed:
        changed = False
        for a in sorted(adj):
            if a in label:
                continue
            if all(label.get(b) == OUT for b in attackers[a]):
                label[a] = IN
                changed = True
            elif any(label.get(b) == IN for b in attackers[a]):
                label[a] = OUT
                changed = True
    return {a: label.get(a, UNDECIDED) for a in adj}


def maximal_conflict_free_sets(framework: Framework) -> list[frozenset[str]]:
    ids = sorted(framework.argument_ids())
    adj = attack_relation(framework)
    found: list[frozenset[str]] = []

    def extend(chosen: set[str], start: int) -> None:
        grew = False
        for i in range(start, len(ids)):
            cand = ids[i]
            if cand in adj[cand]:
                continue
            if any(cand in adj[c] or c in adj[cand] for c in chosen):
                continue
            grew = True
            chosen.add(cand)
            extend(chosen, i + 1)
            chosen.remove(cand)
        if not grew:
            # no extension to the right; maximality still needs a global check
            found.append(frozenset(chosen))

    extend(set(), 0)
    return _sorted_extensions(_maximal(found))


def _cf2_candidates(framework: Framework) -> list[frozenset[str]]:
    if not framework.argument_ids():
        return [frozenset()]
    sccs = strongly_connected_components(framework)
    if len(sccs) == 1:
        return maximal_conflict_free_sets(framework)

    adj = attack_relation(framework)
    partials: list[frozenset[str]] = [frozenset()]
    for scc in sccs:
        grown: list[frozenset[str]] = []
        for part in partials:
            defeated = {a for a in scc if any(a in adj[b] for b in part - scc)}
            survivors = scc - defeated
            if not survivors:
                grown.append(part)
                continue
            for choice in _cf2_candidates(framework.restrict(survivors)):
                grown.append(part | choice)
        partials = grown
    return partials


def cf2(framework: Framework) -> list[frozenset[str]]:
    """SCC-recursive semantics.

    Inside a single strongly connected component the maximal conflict-free
    sets are taken; across components the choice made upstream removes the
    arguments it defeats before the downstream component chooses.  Candidates
    that end up included in another candidate are dropped.
    """
    return _sorted_extensions(_maximal(_cf2_candidates(framework)))


def preferred_bruteforce(framework: Framework) -> list[frozenset[str]]:
    """Maximal admissible sets by plain enumeration of every subset.

    Reference implementation kept for the CLI cross-check; exponential and
    proud of it.
    """
    from itertools import combinations

    ids = sorted(framework.argument_ids())
    admissible = [
        frozenset(combo)
        for size in range(len(ids) + 1)
        for combo in combinations(ids, size)
        if is_admissible(framework, combo)
    ]
    return _sorted_extensions(_maximal(admissible))


CREDULOUS = "credulous"
SKEPTICAL = "skeptical"


def acceptance(framework: Framework, arg_id: str, mode: str, semantics: str = "preferred") -> bool:
    """Membership quantified over the chosen semantics' extensions."""
    if arg_id not in framework.argument_ids():
        raise UnknownArgument(f"{arg_id!r} is not an argument of the framework")
    if semantics == "preferred":
        extensions = preferred(framework)
    elif semantics == "cf2":
        extensions = cf2(framework)
    else:
        raise ValueError(f"unknown semantics {semantics!r}")
    if mode == CREDULOUS:
        return any(arg_id in e for e in extensions)
    if mode == SKEPTICAL:
        return bool(extensions) and all(arg_id in e for e in extensions)
    raise ValueError(f"unknown acceptance mode {mode!r}")
