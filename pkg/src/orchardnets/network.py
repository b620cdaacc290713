"""Rooted phylogenetic networks: the data type, validation and structure queries.

A network is a rooted acyclic digraph without parallel arcs whose out-degree-0
vertices carry distinct leaf labels, whose root has in-degree 0 and out-degree 2,
and whose remaining vertices are either tree vertices (in 1, out 2) or
reticulations (in >= 2, out 1).  A single labelled vertex is also accepted as
the one-leaf network.

Network objects are immutable after construction and every operation here is a
pure function, so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InvalidNetworkError, NotAStackArcError, ParallelArcsError, UnknownVertexError

Arc = tuple[str, str]


class VertexClass(Enum):
    ROOT = "root"
    LEAF = "leaf"
    TREE = "tree"
    RETICULATION = "reticulation"


class ViolationKind(Enum):
    CYCLE = "cycle"
    PARALLEL_ARCS = "parallel-arcs"
    DEGREE = "degree"
    ROOT_COUNT = "root-count"
    LABEL = "label"
    UNKNOWN_NAME = "unknown-name"
    EMPTY = "empty"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    witnesses: tuple
    detail: str

    def __str__(self):
        return f"{self.kind.value}: {self.detail} {sorted(map(str, self.witnesses))}"


@dataclass(frozen=True)
class ValidationReport:
    """List of rule violations; an empty report means the input is a valid network."""

    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)


def _toposort(vertices: Iterable[str], children: Mapping[str, Sequence[str]]) -> Optional[list[str]]:
    """Kahn topological sort; None if the arc set has a cycle."""
    indeg = {v: 0 for v in vertices}
    for v in children:
        for c in children[v]:
            indeg[c] += 1
    stack = sorted((v for v, d in indeg.items() if d == 0), reverse=True)
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for c in children.get(v, ()):
            indeg[c] -= 1
            if indeg[c] == 0:
                stack.append(c)
        stack.sort(reverse=True)
    if len(order) != len(indeg):
        return None
    return order


def validate(vertex_names: Iterable[str], arcs: Iterable[Arc],
             leaf_labels: Mapping[str, str]) -> ValidationReport:
    """Check the construction data against every network rule.

    Returns the full report rather than stopping at the first problem, so a
    bad input can be diagnosed in one pass.
    """
    names = list(vertex_names)
    violations: list[Violation] = []
    nameset = set(names)
    if len(names) != len(nameset):
        dups = sorted({n for n in names if names.count(n) > 1})
        violations.append(Violation(ViolationKind.LABEL, tuple(dups), "duplicate vertex names"))
    if not nameset:
        return ValidationReport((Violation(ViolationKind.EMPTY, (), "no vertices"),))

    arcs = list(arcs)
    seen: set[Arc] = set()
    for a in arcs:
        u, v = a
        if u not in nameset or v not in nameset:
            violations.append(Violation(ViolationKind.UNKNOWN_NAME, (u, v), "arc references unknown vertex"))
        if a in seen:
            violations.append(Violation(ViolationKind.PARALLEL_ARCS, (a,), "duplicate arc"))
        seen.add(a)
    if any(v.kind is ViolationKind.UNKNOWN_NAME for v in violations):
        return ValidationReport(tuple(violations))

    children: dict[str, list[str]] = {v: [] for v in nameset}
    parents: dict[str, list[str]] = {v: [] for v in nameset}
    for u, v in seen:
        children[u].append(v)
        parents[v].append(u)

    if _toposort(nameset, children) is None:
        on_cycle = sorted(v for v in nameset if _reaches_itself(v, children))
        violations.append(Violation(ViolationKind.CYCLE, tuple(on_cycle), "directed cycle"))
        return ValidationReport(tuple(violations))

    roots = sorted(v for v in nameset if not parents[v])
    leaves = sorted(v for v in nameset if not children[v])
    single = len(nameset) == 1

    if len(roots) != 1:
        violations.append(Violation(ViolationKind.ROOT_COUNT, tuple(roots),
                                    f"{len(roots)} vertices of in-degree 0"))
    if not single and len(roots) == 1 and len(children[roots[0]]) != 2:
        violations.append(Violation(ViolationKind.DEGREE, (roots[0],),
                                    f"root out-degree {len(children[roots[0]])}, need 2"))

    for v in sorted(nameset):
        indeg, outdeg = len(parents[v]), len(children[v])
        if single or (len(roots) == 1 and v == roots[0]):
            continue
        if outdeg == 0:
            if indeg != 1:
                violations.append(Violation(ViolationKind.DEGREE, (v,),
                                            f"leaf in-degree {indeg}, need 1"))
        elif not ((indeg == 1 and outdeg == 2) or (indeg >= 2 and outdeg == 1)):
            violations.append(Violation(ViolationKind.DEGREE, (v,),
                                        f"in-degree {indeg}, out-degree {outdeg}"))

    labelled = set(leaf_labels)
    for v in sorted(labelled - set(leaves)):
        violations.append(Violation(ViolationKind.LABEL, (v,), "label on a non-leaf vertex"))
    for v in sorted(set(leaves) - labelled):
        violations.append(Violation(ViolationKind.LABEL, (v,), "leaf without a label"))
    values = [leaf_labels[v] for v in sorted(labelled)]
    if len(set(values)) != len(values):
        dups = sorted({x for x in values if values.count(x) > 1})
        violations.append(Violation(ViolationKind.LABEL, tuple(dups), "duplicate leaf labels"))
    for v in sorted(labelled):
        x = leaf_labels[v]
        if not isinstance(x, str) or not x:
            violations.append(Violation(ViolationKind.LABEL, (v,), "label must be a non-empty string"))

    return ValidationReport(tuple(violations))


def _reaches_itself(v: str, children: Mapping[str, Sequence[str]]) -> bool:
    stack = list(children.get(v, ()))
    seen = set()
    while stack:
        u = stack.pop()
        if u == v:
            return True
        if u in seen:
            continue
        seen.add(u)
        stack.extend(children.get(u, ()))
    return False


class Network:
    """Immutable rooted phylogenetic network.

    Construction validates every rule; a `Network` value that exists is valid.
    Vertex names are opaque strings, kept separate from leaf labels so that
    internal renaming never touches the label set.
    """

    __slots__ = ("vertices", "arcs", "leaf_labels", "_children", "_parents",
                 "_root", "_topo", "_label_to_leaf")

    def __init__(self, vertex_names: Iterable[str], arcs: Iterable[Arc],
                 leaf_labels: Mapping[str, str]):
        vertex_names = list(vertex_names)
        arcs = list(arcs)
        report = validate(vertex_names, arcs, leaf_labels)
        if not report.ok:
            raise InvalidNetworkError(report)
        self.vertices: frozenset[str] = frozenset(vertex_names)
        self.arcs: frozenset[Arc] = frozenset((u, v) for u, v in arcs)
        self.leaf_labels: dict[str, str] = dict(leaf_labels)
        children: dict[str, list[str]] = {v: [] for v in self.vertices}
        parents: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            children[u].append(v)
            parents[v].append(u)
        self._children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self._parents = {v: tuple(sorted(ps)) for v, ps in parents.items()}
        self._root = next(v for v in sorted(self.vertices) if not self._parents[v])
        self._topo = tuple(_toposort(self.vertices, self._children))
        self._label_to_leaf = {x: v for v, x in self.leaf_labels.items()}

    # -- basic queries -------------------------------------------------

    @property
    def root(self) -> str:
        return self._root

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self._label_to_leaf)

    def children(self, v: str) -> tuple[str, ...]:
        self._check(v)
        return self._children[v]

    def parents(self, v: str) -> tuple[str, ...]:
        self._check(v)
        return self._parents[v]

    def in_degree(self, v: str) -> int:
        return len(self.parents(v))

    def out_degree(self, v: str) -> int:
        return len(self.children(v))

    def is_leaf(self, v: str) -> bool:
        return self.out_degree(v) == 0

    def leaves(self) -> tuple[str, ...]:
        return tuple(self._label_to_leaf[x] for x in sorted(self._label_to_leaf))

    def leaf_of(self, label: str) -> str:
        try:
            return self._label_to_leaf[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    def label_of(self, v: str) -> str:
        self._check(v)
        return self.leaf_labels[v]

    def internal_vertices(self) -> tuple[str, ...]:
        """Non-leaf vertices in lexicographic order (the default profile ordering)."""
        return tuple(sorted(self.vertices - set(self.leaf_labels)))

    def topological_order(self) -> tuple[str, ...]:
        return self._topo

    def is_single_vertex(self) -> bool:
        return len(self.vertices) == 1

    def is_binary(self) -> bool:
        return all(len(self._parents[v]) <= 2 for v in self.vertices)

    def _check(self, v: str):
        if v not in self.vertices:
            raise UnknownVertexError(v)

    def __repr__(self):
        return (f"Network({len(self.vertices)} vertices, {len(self.arcs)} arcs, "
                f"leaves {sorted(self._label_to_leaf)})")

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (self.vertices == other.vertices and self.arcs == other.arcs
                and self.leaf_labels == other.leaf_labels)

    def __hash__(self):
        return hash((self.vertices, self.arcs, tuple(sorted(self.leaf_labels.items()))))


def build_network(vertex_names: Iterable[str], arcs: Iterable[Arc],
                  leaf_labels: Mapping[str, str]) -> Network:
    """Validate and construct; raises InvalidNetworkError carrying the report."""
    return Network(vertex_names, arcs, leaf_labels)


def single_vertex_network(label: str) -> Network:
    return Network([label], [], {label: label})


def vertex_class(net: Network, v: str) -> VertexClass:
    """Classify by degrees.  The one-vertex network's vertex counts as a leaf."""
    net._check(v)
    indeg, outdeg = net.in_degree(v), net.out_degree(v)
    if outdeg == 0:
        return VertexClass.LEAF
    if indeg == 0:
        return VertexClass.ROOT
    if indeg == 1:
        return VertexClass.TREE
    return VertexClass.RETICULATION


def reticulations(net: Network) -> tuple[str, ...]:
    return tuple(v for v in sorted(net.vertices) if net.in_degree(v) >= 2)


def is_reticulation(net: Network, v: str) -> bool:
    return net.in_degree(v) >= 2


def reticulation_arcs(net: Network) -> tuple[Arc, ...]:
    """Arcs directed into a reticulation."""
    return tuple(sorted((u, v) for u, v in net.arcs if net.in_degree(v) >= 2))


def stack_arcs(net: Network) -> tuple[Arc, ...]:
    """Arcs whose both endpoints are reticulations."""
    return tuple(sorted((u, v) for u, v in net.arcs
                        if net.in_degree(u) >= 2 and net.in_degree(v) >= 2))


def is_stack_free(net: Network) -> bool:
    return not stack_arcs(net)


@dataclass(frozen=True)
class SinkPartition:
    """Reticulations grouped by the transitive closure of stack adjacency."""

    classes: tuple[frozenset[str], ...]

    def class_of(self, v: str) -> frozenset[str]:
        for cls in self.classes:
            if v in cls:
                return cls
        raise UnknownVertexError(v)

    def same_class(self, u: str, v: str) -> bool:
        return any(u in cls and v in cls for cls in self.classes)


def sinks(net: Network) -> SinkPartition:
    """Partition the reticulations; two share a class iff joined by stack arcs."""
    rets = set(reticulations(net))
    adjacency: dict[str, set[str]] = {r: set() for r in rets}
    for u, v in stack_arcs(net):
        adjacency[u].add(v)
        adjacency[v].add(u)
    classes = []
    unseen = set(rets)
    for r in sorted(rets):
        if r not in unseen:
            continue
        component = {r}
        frontier = [r]
        while frontier:
            w = frontier.pop()
            for nb in adjacency[w]:
                if nb not in component:
                    component.add(nb)
                    frontier.append(nb)
        unseen -= component
        classes.append(frozenset(component))
    return SinkPartition(tuple(sorted(classes, key=sorted)))


def merged_name(members: Iterable[str]) -> str:
    return "+".join(sorted(members))


@dataclass(frozen=True)
class IdentifiedGraph:
    """Result of collapsing every sink class to one vertex.

    May carry parallel arcs, in which case it is not a phylogenetic network;
    `proper` reports whether the collapse stayed parallel-free.  The arc list
    keeps multiplicities.
    """

    vertices: frozenset[str]
    arcs: tuple[Arc, ...]
    leaf_labels: dict[str, str]
    collapsed: dict[str, frozenset[str]]
    proper: bool = field(default=True)

    def to_network(self) -> Network:
        if not self.proper:
            raise ParallelArcsError("parallel arcs present; not a phylogenetic network")
        return Network(self.vertices, self.arcs, self.leaf_labels)


def stack_identification(net: Network) -> IdentifiedGraph:
    """Collapse each sink to a single vertex and drop intra-sink arcs.

    Equivalent to repeatedly contracting stack arcs.  The collapsed vertex
    takes a fresh name recording its members.
    """
    partition = sinks(net)
    rename: dict[str, str] = {}
    collapsed: dict[str, frozenset[str]] = {}
    for cls in partition.classes:
        if len(cls) > 1:
            name = merged_name(cls)
            collapsed[name] = cls
            for v in cls:
                rename[v] = name
    mapped = [(rename.get(u, u), rename.get(v, v)) for u, v in sorted(net.arcs)]
    kept = [(u, v) for u, v in mapped if u != v]
    vertices = frozenset(rename.get(v, v) for v in net.vertices)
    proper = len(kept) == len(set(kept))
    return IdentifiedGraph(vertices, tuple(sorted(kept)), dict(net.leaf_labels),
                           collapsed, proper)


def contract_stack_arc(net: Network, arc: Arc) -> Network:
    """Delete a stack arc and merge its endpoints into one reticulation.

    On orchard inputs the merge never produces parallel arcs; if it would,
    ParallelArcsError is raised rather than silently merging.
    """
    if arc not in net.arcs or arc not in stack_arcs(net):
        raise NotAStackArcError(arc)
    u, v = arc
    name = merged_name((u, v))
    rename = {u: name, v: name}
    new_arcs = [(rename.get(p, p), rename.get(c, c)) for p, c in net.arcs if (p, c) != arc]
    if len(new_arcs) != len(set(new_arcs)):
        raise ParallelArcsError(f"contracting {arc} produces parallel arcs")
    vertices = {rename.get(w, w) for w in net.vertices}
    return Network(vertices, new_arcs, net.leaf_labels)


# -- structural class predicates ---------------------------------------


def is_tree_child(net: Network) -> bool:
    """Every non-leaf vertex has a child that is a tree vertex or a leaf."""
    for v in net.vertices:
        cs = net.children(v)
        if cs and all(net.in_degree(c) >= 2 for c in cs):
            return False
    return True


def is_tree_sibling(net: Network) -> bool:
    """Every reticulation has a parent that also parents a tree vertex or leaf."""
    for r in reticulations(net):
        if not any(any(net.in_degree(c) < 2 for c in net.children(p) if c != r)
                   for p in net.parents(r)):
            return False
    return True


def time_assignment(net: Network) -> Optional[dict[str, int]]:
    """A time map constant along reticulation arcs and increasing along tree
    arcs, or None when no such map exists.

    Endpoints of reticulation arcs are merged into groups; the map exists iff
    the group graph induced by the remaining (strict) arcs is acyclic.  The
    returned certificate comes from longest-path layering.
    """
    group = {v: v for v in net.vertices}

    def find(v):
        while group[v] != v:
            group[v] = group[group[v]]
            v = group[v]
        return v

    ret_arcs = set(reticulation_arcs(net))
    for u, v in ret_arcs:
        ru, rv = find(u), find(v)
        if ru != rv:
            group[max(ru, rv)] = min(ru, rv)

    strict: dict[str, set[str]] = {}
    for u, v in net.arcs - ret_arcs:
        gu, gv = find(u), find(v)
        if gu == gv:
            return None
        strict.setdefault(gu, set()).add(gv)
    groups = {find(v) for v in net.vertices}
    order = _toposort(groups, {g: sorted(strict.get(g, ())) for g in groups})
    if order is None:
        return None
    level = {g: 0 for g in groups}
    for g in order:
        for h in strict.get(g, ()):
            level[h] = max(level[h], level[g] + 1)
    return {v: level[find(v)] for v in sorted(net.vertices)}


def is_time_consistent(net: Network) -> bool:
    return time_assignment(net) is not None
