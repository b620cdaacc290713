"""Network file formats: edge-list (canonical), extended Newick, and DOT.

The edge-list format is canonical because it represents arbitrary in-degrees
and a fixed internal-vertex ordering losslessly:

    # comment lines start with '#'
    order: v1 v2 v3          (optional; defaults to lexicographic)
    v1 -> v2                  (one arc per line)
    a                         (bare name: the one-vertex network only)

Leaves are the names without outgoing arcs and label themselves.  Rendering
emits the order line and then arcs sorted lexicographically, so parse and
render are mutually inverse on canonical documents.

Extended Newick is a convenience interface: reticulations appear as repeated
`#H<k>` tags, with the child subtree written at exactly one occurrence.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .errors import (InconsistentHybridTagError, NonBinaryTreeVertexError,
                     ParseError)
from .network import Network, is_reticulation, sinks, stack_arcs

_NAME = re.compile(r"[^\s#>]+\Z")


def _canonical_names(net: Network) -> dict[str, str]:
    """Leaves take their labels; internal names clashing with a label get a suffix."""
    rename = {}
    labels = set(net.labels)
    for v in net.vertices:
        if net.is_leaf(v):
            rename[v] = net.label_of(v)
        elif v in labels:
            candidate = v + "_"
            while candidate in labels or candidate in net.vertices:
                candidate += "_"
            rename[v] = candidate
        else:
            rename[v] = v
    return rename


def render_edge_list(net: Network, order: Optional[Sequence[str]] = None) -> str:
    """Canonical document: order directive plus sorted arc lines."""
    rename = _canonical_names(net)
    if net.is_single_vertex():
        (v,) = net.vertices
        return rename[v] + "\n"
    if order is None:
        order = net.internal_vertices()
    lines = ["order: " + " ".join(rename[v] for v in order)]
    lines += sorted(f"{rename[u]} -> {rename[v]}" for u, v in net.arcs)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[Network, tuple[str, ...]]:
    """Parse a document into a validated network plus its vertex ordering."""
    arcs: list[tuple[str, str]] = []
    isolated: list[str] = []
    order: Optional[list[str]] = None
    for nr, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("order:"):
            if order is not None:
                raise ParseError("duplicate order directive", line=nr)
            order = line[len("order:"):].split()
            continue
        parts = line.split()
        if len(parts) == 1:
            if not _NAME.match(parts[0]):
                raise ParseError(f"bad name {parts[0]!r}", line=nr, column=1 + raw.find(parts[0]))
            isolated.append(parts[0])
            continue
        if len(parts) != 3 or parts[1] != "->":
            raise ParseError("malformed arc line", line=nr, expected="NAME -> NAME")
        u, _, v = parts
        for name in (u, v):
            if not _NAME.match(name):
                raise ParseError(f"bad name {name!r}", line=nr, column=1 + raw.find(name))
        arcs.append((u, v))

    if isolated and (arcs or len(isolated) > 1):
        raise ParseError("bare vertex lines are only allowed for the one-vertex network",
                         line=1)
    if isolated:
        name = isolated[0]
        return Network([name], [], {name: name}), ()

    if not arcs:
        raise ParseError("no arcs in document", line=1)
    vertices = {u for u, _ in arcs} | {v for _, v in arcs}
    with_out = {u for u, _ in arcs}
    leaves = vertices - with_out
    net = Network(vertices, arcs, {v: v for v in leaves})
    internal = set(net.internal_vertices())
    if order is None:
        ordering = net.internal_vertices()
    else:
        if set(order) != internal or len(order) != len(internal):
            raise ParseError("order directive must list each internal vertex exactly once",
                             line=1, expected=" ".join(sorted(internal)))
        ordering = tuple(order)
    return net, ordering


# -- extended Newick -----------------------------------------------------------


_TOKEN = re.compile(r"\(|\)|,|;|[^(),;\s]+")


def parse_enewick(text: str) -> Network:
    """Parse an extended Newick string into a validated network.

    Tree vertices must have out-degree two; every hybrid tag must carry its
    child subtree at exactly one occurrence and appear at least twice.
    """
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise ParseError("empty document", line=1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", line=1, column=len(text))
        pos += 1
        return tokens[pos - 1]

    counter = [0]
    vertices: set[str] = set()
    arcs: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    hybrids: dict[str, dict] = {}

    def fresh(prefix: str) -> str:
        counter[0] += 1
        return f"{prefix}{counter[0]}"

    def subtree() -> tuple[str, bool]:
        """Returns (vertex name, is_hybrid_occurrence)."""
        children = []
        if peek() == "(":
            take()
            children.append(subtree())
            while peek() == ",":
                take()
                children.append(subtree())
            if peek() != ")":
                raise ParseError("missing ')'", line=1, expected=")")
            take()
        name = None
        if peek() not in ("(", ")", ",", ";", None):
            name = take()
        if name is not None and "#" in name:
            base, _, tag = name.partition("#")
            if not re.fullmatch(r"H\d+", tag):
                raise ParseError(f"bad hybrid tag {tag!r}", line=1, expected="#H<number>")
            entry = hybrids.setdefault(tag, {"vertex": f"#{tag}", "occurrences": 0,
                                             "children": None})
            entry["occurrences"] += 1
            if children:
                if entry["children"] is not None:
                    raise InconsistentHybridTagError(
                        f"tag #{tag} carries a subtree at two occurrences")
                entry["children"] = [c for c, _ in children]
            return entry["vertex"], True
        if not children:
            if name is None:
                raise ParseError("empty subtree", line=1, expected="a leaf name")
            if name in labels.values():
                raise ParseError(f"duplicate leaf label {name!r}", line=1)
            v = f"L:{name}"
            vertices.add(v)
            labels[v] = name
            return v, False
        if len(children) != 2:
            raise NonBinaryTreeVertexError(
                f"tree vertex with out-degree {len(children)}")
        v = fresh("i")
        vertices.add(v)
        for child, _ in children:
            arcs.append((v, child))
        return v, False

    root, root_hybrid = subtree()
    if peek() != ";":
        raise ParseError("expected ';'", line=1, expected=";")
    take()
    if pos != len(tokens):
        raise ParseError("trailing input after ';'", line=1)
    if root_hybrid:
        raise ParseError("the root cannot be a hybrid tag", line=1)

    for tag, entry in sorted(hybrids.items()):
        v = entry["vertex"]
        vertices.add(v)
        if entry["occurrences"] < 2:
            raise InconsistentHybridTagError(f"tag #{tag} appears only once")
        if not entry["children"]:
            raise InconsistentHybridTagError(f"tag #{tag} never carries its subtree")
        if len(entry["children"]) != 1:
            raise InconsistentHybridTagError(
                f"tag #{tag} must have exactly one child, found {len(entry['children'])}")
        arcs.append((v, entry["children"][0]))

    return Network(vertices, arcs, labels)


def render_enewick(net: Network) -> str:
    """Deterministic extended Newick text; parse(render(n)) is isomorphic to n."""
    if net.is_single_vertex():
        (v,) = net.vertices
        return net.label_of(v) + ";"
    tags = {h: i + 1 for i, h in enumerate(sorted(
        v for v in net.vertices if is_reticulation(net, v)))}

    def render(v: str, via_primary: bool) -> str:
        if net.is_leaf(v):
            return net.label_of(v)
        if v in tags:
            if not via_primary:
                return f"#H{tags[v]}"
            (child,) = net.children(v)
            return f"({render(child, _primary(child) == v)})#H{tags[v]}"
        parts = sorted(render(c, _primary(c) == v) for c in net.children(v))
        return "(" + ",".join(parts) + ")"

    def _primary(v: str) -> Optional[str]:
        parents = net.parents(v)
        return min(parents) if parents else None

    return render(net.root, True) + ";"


# -- DOT export ----------------------------------------------------------------


def render_dot(net: Network, clone_groups: Optional[Sequence[Sequence[str]]] = None) -> str:
    """Deterministic DOT text with reticulations, stack arcs and sinks marked.

    Sink classes of size two or more share a fill colour; optional clone
    groups get a coloured outline.
    """
    palette = ["lightblue", "lightsalmon", "palegreen", "plum", "khaki", "lightcyan"]
    fill: dict[str, str] = {}
    for i, cls in enumerate(cls for cls in sinks(net).classes if len(cls) > 1):
        for v in cls:
            fill[v] = palette[i % len(palette)]
    outline: dict[str, str] = {}
    for i, group in enumerate(clone_groups or ()):
        for v in group:
            outline[v] = palette[(i + 3) % len(palette)]

    lines = ["digraph network {"]
    for v in sorted(net.vertices):
        attrs = []
        if net.is_leaf(v):
            attrs.append(f'label="{net.label_of(v)}"')
            attrs.append("shape=none")
        elif is_reticulation(net, v):
            attrs.append(f'label="{v}"')
            attrs.append("shape=box")
        else:
            attrs.append(f'label="{v}"')
            attrs.append("shape=circle")
        if v in fill:
            attrs.append("style=filled")
            attrs.append(f"fillcolor={fill[v]}")
        if v in outline:
            attrs.append(f"color={outline[v]}")
            attrs.append("penwidth=2")
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    stacks = set(stack_arcs(net))
    for u, v in sorted(net.arcs):
        if (u, v) in stacks:
            lines.append(f'  "{u}" -> "{v}" [style=bold, color=red, label="stack"];')
        else:
            lines.append(f'  "{u}" -> "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
