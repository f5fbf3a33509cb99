"""Merging groups of arguments into a single more general argument.

An argument a_x abstracts a group of arguments when four structural
conditions relate its expressions to theirs (covering, disjoint, sound,
complete).  A candidate merge is worth performing only when it is also
conservative with respect to the framework around it: valid (the group
cannot be grown inside its strongly connected component), non-trivial
(the merged node is not in the too-general region M), compatible (no
attack inside the group between comparable expressions), and attack
preserving (no external neighbor is comparable with the merged node).

Expression e' abstracts expression e when f(e) is below f(e') in the
lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .af import Argument, Framework, strongly_connected_components
from .errors import EmptySet, TargetsNotInFramework
from .galois import SemanticMap, alpha
from .lattice import FiniteLattice


@dataclass(frozen=True)
class AbstractionCandidate:
    """A target group of argument ids plus the argument meant to replace it."""

    targets: frozenset[str]
    abstract_arg: Argument


def _union_exprs(args: Sequence[Argument]) -> frozenset[str]:
    if not args:
        raise EmptySet("abstraction conditions need at least one target argument")
    out: set[str] = set()
    for a in args:
        out |= a.expressions
    return frozenset(out)


def _abstracts(lat: FiniteLattice, fmap: SemanticMap, abstractor: str, expr: str) -> bool:
    return lat.leq(fmap.image(expr), fmap.image(abstractor))


def is_abstraction_covering(lat: FiniteLattice, fmap: SemanticMap, a_x: Argument, args: Sequence[Argument]) -> bool:
    """Every participating abstractor draws from every target argument.

    An expression of a_x that abstracts anything at all in the union must
    abstract at least one expression of each single target.
    """
    union = _union_exprs(args)
    for ex in a_x.expressions:
        if not any(_abstracts(lat, fmap, ex, e) for e in union):
            continue
        if not all(any(_abstracts(lat, fmap, ex, e) for e in a.expressions) for a in args):
            return False
    return True


def is_abstraction_disjoint(lat: FiniteLattice, fmap: SemanticMap, a_x: Argument, args: Sequence[Argument]) -> bool:
    """No target expression is claimed by two different abstractors."""
    union = _union_exprs(args)
    for e in union:
        owners = sum(1 for ex in a_x.expressions if _abstracts(lat, fmap, ex, e))
        if owners > 1:
            return False
    return True


def is_abstraction_sound(lat: FiniteLattice, fmap: SemanticMap, a_x: Argument, args: Sequence[Argument]) -> bool:
    """Every target expression is below some abstractor."""
    union = _union_exprs(args)
    return all(
        any(_abstracts(lat, fmap, ex, e) for ex in a_x.expressions) for e in union
    )


def is_abstraction_complete(lat: FiniteLattice, fmap: SemanticMap, a_x: Argument, args: Sequence[Argument]) -> bool:
    """Every abstractor earns its place: it abstracts something in the union."""
    union = _union_exprs(args)
    return all(
        any(_abstracts(lat, fmap, ex, e) for e in union) for ex in a_x.expressions
    )


def is_argument_abstraction(lat: FiniteLattice, fmap: SemanticMap, a_x: Argument, args: Sequence[Argument]) -> bool:
    return (
        is_abstraction_covering(lat, fmap, a_x, args)
        and is_abstraction_disjoint(lat, fmap, a_x, args)
        and is_abstraction_sound(lat, fmap, a_x, args)
        and is_abstraction_complete(lat, fmap, a_x, args)
    )


SYNTHETIC_SUFFIX = "#abs"


def best_abstraction_of(
    lat: FiniteLattice, fmap: SemanticMap, args: Sequence[Argument]
) -> tuple[AbstractionCandidate, SemanticMap]:
    """Single-expression argument sitting exactly at the join of the targets.

    Reuses the lexicographically smallest declared expression at that node;
    otherwise a synthetic expression is minted and bound to the node in the
    returned map.  The combined id joins the target ids with '+'.
    """
    union = _union_exprs(args)
    node = alpha(lat, fmap, union)
    declared = sorted(fmap.preimages(node))
    if declared:
        symbol, out_map = declared[0], fmap
    else:
        symbol = node + SYNTHETIC_SUFFIX
        while symbol in fmap.symbols:
            symbol += "'"
        out_map = fmap.with_assignment(symbol, node)
    arg_id = "+".join(sorted(a.arg_id for a in args))
    candidate = AbstractionCandidate(
        frozenset(a.arg_id for a in args), Argument(arg_id, frozenset({symbol}))
    )
    assert is_argument_abstraction(lat, out_map, candidate.abstract_arg, list(args))
    return candidate, out_map


def _check_targets(framework: Framework, targets: Iterable[str]) -> frozenset[str]:
    wanted = frozenset(targets)
    missing = wanted - framework.argument_ids()
    if missing:
        raise TargetsNotInFramework(f"not arguments of the framework: {sorted(missing)}")
    if not wanted:
        raise TargetsNotInFramework("empty target set")
    return wanted


def _framework_arguments(framework: Framework, ids: Iterable[str]) -> list[Argument]:
    return [Argument(i, framework.argument_expressions(i)) for i in sorted(ids)]


def is_valid(framework: Framework, lat: FiniteLattice, fmap: SemanticMap, candidate: AbstractionCandidate) -> bool:
    """Targets live inside one SCC and cannot be grown within it.

    Growth means: some strictly larger subset of the same SCC, targets
    included, is still abstracted by the candidate's argument.  The whole
    SCC itself counts as a growth candidate.
    """
    targets = _check_targets(framework, candidate.targets)
    home = next((s for s in strongly_connected_components(framework) if targets <= s), None)
    if home is None:
        return False
    rest = sorted(home - targets)
    for size in range(1, len(rest) + 1):
        for extra in combinations(rest, size):
            larger = _framework_arguments(framework, targets | set(extra))
            if is_argument_abstraction(lat, fmap, candidate.abstract_arg, larger):
                return False
    return True


def is_non_trivial(lat: FiniteLattice, fmap: SemanticMap, blocked: Iterable[str], candidate: AbstractionCandidate) -> bool:
    """The merged node stays outside the too-general upper set."""
    return alpha(lat, fmap, candidate.abstract_arg.expressions) not in set(blocked)


def is_compatible(framework: Framework, lat: FiniteLattice, fmap: SemanticMap, targets: Iterable[str]) -> bool:
    """No attack inside the target group between comparable expressions.

    Equal images count as comparable, so a self-attacking arglet already
    disqualifies its group.
    """
    wanted = _check_targets(framework, targets)
    for (src, e1), (dst, e2) in framework.attacks:
        if src in wanted and dst in wanted and lat.comparable(fmap.image(e1), fmap.image(e2)):
            return False
    return True


def _external_neighbors(framework: Framework, targets: frozenset[str]) -> list[str]:
    out: set[str] = set()
    for (src, _), (dst, _) in framework.attacks:
        if src in targets and dst not in targets:
            out.add(dst)
        elif dst in targets and src not in targets:
            out.add(src)
    return sorted(out)


def is_attack_preserving(framework: Framework, lat: FiniteLattice, fmap: SemanticMap, candidate: AbstractionCandidate) -> bool:
    """Every external attacker or attackee is incomparable with the merge."""
    targets = _check_targets(framework, candidate.targets)
    merged = alpha(lat, fmap, candidate.abstract_arg.expressions)
    for ext in _external_neighbors(framework, targets):
        ext_node = alpha(lat, fmap, framework.argument_expressions(ext))
        if lat.comparable(merged, ext_node):
            return False
    return True


def is_conservative(
    framework: Framework,
    lat: FiniteLattice,
    fmap: SemanticMap,
    blocked: Iterable[str],
    candidate: AbstractionCandidate,
) -> bool:
    return (
        is_valid(framework, lat, fmap, candidate)
        and is_non_trivial(lat, fmap, blocked, candidate)
        and is_compatible(framework, lat, fmap, candidate.targets)
        and is_attack_preserving(framework, lat, fmap, candidate)
    )


@dataclass(frozen=True)
class ConservativityReport:
    """Per-condition verdicts with the witnesses that decided them."""

    candidate: AbstractionCandidate
    merged_node: str
    valid: bool
    growth_witnesses: tuple[tuple[str, ...], ...]
    non_trivial: bool
    blocked_nodes: tuple[str, ...]
    compatible: bool
    internal_conflicts: tuple[tuple[str, str, str, str], ...]
    attack_preserving: bool
    external_checks: tuple[tuple[str, str, bool], ...]

    @property
    def conservative(self) -> bool:
        return self.valid and self.non_trivial and self.compatible and self.attack_preserving


def conservativity_report(
    framework: Framework,
    lat: FiniteLattice,
    fmap: SemanticMap,
    blocked: Iterable[str],
    candidate: AbstractionCandidate,
) -> ConservativityReport:
    """Evaluate all four conditions, keeping the evidence for each verdict."""
    targets = _check_targets(framework, candidate.targets)
    merged = alpha(lat, fmap, candidate.abstract_arg.expressions)
    blocked_sorted = tuple(sorted(set(blocked)))

    growth: list[tuple[str, ...]] = []
    home = next((s for s in strongly_connected_components(framework) if targets <= s), None)
    if home is None:
        valid = False
    else:
        rest = sorted(home - targets)
        for size in range(1, len(rest) + 1):
            for extra in combinations(rest, size):
                larger_ids = targets | set(extra)
                larger = _framework_arguments(framework, larger_ids)
                if is_argument_abstraction(lat, fmap, candidate.abstract_arg, larger):
                    growth.append(tuple(sorted(larger_ids)))
        valid = not growth

    conflicts = tuple(
        (src, e1, dst, e2)
        for (src, e1), (dst, e2) in sorted(framework.attacks)
        if src in targets and dst in targets and lat.comparable(fmap.image(e1), fmap.image(e2))
    )

    externals = tuple(
        (ext, ext_node, lat.comparable(merged, ext_node))
        for ext in _external_neighbors(framework, targets)
        for ext_node in [alpha(lat, fmap, framework.argument_expressions(ext))]
    )

    return ConservativityReport(
        candidate=candidate,
        merged_node=merged,
        valid=valid,
        growth_witnesses=tuple(growth),
        non_trivial=merged not in set(blocked_sorted),
        blocked_nodes=blocked_sorted,
        compatible=not conflicts,
        internal_conflicts=conflicts,
        attack_preserving=not any(c for _, _, c in externals),
        external_checks=externals,
    )
