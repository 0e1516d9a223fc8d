"""Poset file formats, DOT export, and structured dumps.

The text format is one header line ``family=<A|B|C|D> n=<int>`` followed
by one generator per line, ``x <= y``.  The JSON variant mirrors the same
fields: ``{"family": "C", "n": 3, "relations": [[-2, 1], [-3, 2]]}``.
Relations listed in either format are generators; reflexive, transitive
and mirror closure happens on load.  Serialization writes the covering
relations, which regenerate the poset exactly.

All emitters sort their output, so equal inputs produce byte-identical
files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputParseError
from .posets import build_poset, covering_relations, relation_graph


def poset_to_text(P):
    lines = [f"family={P.family} n={P.n}"]
    lines += [f"{x} <= {y}" for x, y in covering_relations(P)]
    return "\n".join(lines) + "\n"


def parse_poset_text(text, strict=False):
    header = None
    generators = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            fields = dict(
                token.split("=", 1) for token in line.split() if "=" in token
            )
            if set(fields) != {"family", "n"}:
                raise InputParseError(f"bad header line {raw!r}")
            try:
                header = (fields["family"], int(fields["n"]))
            except ValueError:
                raise InputParseError(f"bad n in header {raw!r}") from None
            continue
        if "<=" not in line:
            raise InputParseError(f"bad relation line {raw!r}")
        left, right = line.split("<=", 1)
        try:
            generators.append((int(left), int(right)))
        except ValueError:
            raise InputParseError(f"bad relation line {raw!r}") from None
    if header is None:
        raise InputParseError("missing header line 'family=<F> n=<int>'")
    return build_poset(header[0], header[1], generators, strict=strict)


def poset_to_json_obj(P):
    return {
        "family": P.family,
        "n": P.n,
        "relations": [list(pair) for pair in covering_relations(P)],
    }


def parse_poset_json(obj, strict=False):
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputParseError(f"bad JSON: {exc}") from None
    try:
        family = obj["family"]
        n = int(obj["n"])
        generators = [tuple(pair) for pair in obj.get("relations", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"bad poset object: {exc}") from None
    return build_poset(family, n, generators, strict=strict)


def parse_poset(text, strict=False):
    """Sniff text vs JSON poset input by the first non-space character."""
    stripped = text.lstrip()
    if not stripped:
        raise InputParseError("empty poset input")
    if stripped[0] == "{":
        return parse_poset_json(stripped, strict=strict)
    return parse_poset_text(text, strict=strict)


def parse_inline(text, strict=False):
    """Parse the one-line form ``C;3;-2<=1,-2<=3,-3<=2``."""
    parts = text.split(";")
    if len(parts) != 3:
        raise InputParseError("inline poset must be 'FAMILY;N;GEN,GEN,...'")
    family = parts[0].strip()
    try:
        n = int(parts[1])
    except ValueError:
        raise InputParseError(f"bad n {parts[1]!r}") from None
    generators = []
    for chunk in parts[2].split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "<=" not in chunk:
            raise InputParseError(f"bad generator {chunk!r}")
        left, right = chunk.split("<=", 1)
        try:
            generators.append((int(left), int(right)))
        except ValueError:
            raise InputParseError(f"bad generator {chunk!r}") from None
    return build_poset(family, n, generators, strict=strict)


def hasse_dot(P, name="hasse"):
    """Hasse diagram in DOT, edges pointing upward in the order."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in P.elements:
        lines.append(f'  "{e}";')
    for x, y in covering_relations(P):
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def relation_graph_dot(G, name="relation_graph"):
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        lines.append(f'  "{v}";')
    for i, j in G.sorted_edges():
        lines.append(f'  "{i}" -- "{j}";')
    for v in G.sorted_loops():
        lines.append(f'  "{v}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def matrix_form_text(P):
    """The permitted-entry pattern as a grid of '*' and '.'."""
    from .algebra import matrix_form

    allowed = matrix_form(P)
    labels = P.elements
    width = max(len(str(e)) for e in labels)
    head = " " * (width + 1) + " ".join(f"{e:>{width}}" for e in labels)
    lines = [head]
    for r in labels:
        cells = " ".join(
            f"{'*' if (r, c) in allowed else '.':>{width}}" for c in labels
        )
        lines.append(f"{r:>{width}}  {cells}")
    return "\n".join(lines) + "\n"


def fraction_str(value):
    return str(Fraction(value))


def linear_form_str(terms):
    """Render ((position, coeff), ...) as a sum of x<k+1> symbols."""
    if not terms:
        return "0"
    parts = []
    for k, coeff in sorted(terms):
        symbol = f"x{k + 1}"
        if coeff == 1:
            chunk = symbol
        elif coeff == -1:
            chunk = f"-{symbol}"
        else:
            chunk = f"{fraction_str(coeff)}*{symbol}"
        if parts and not chunk.startswith("-"):
            parts.append(f"+ {chunk}")
        elif parts:
            parts.append(f"- {chunk[1:]}")
        else:
            parts.append(chunk)
    return " ".join(parts)


def commutator_matrix_text(C):
    cells = [
        [linear_form_str(C.entries[i][j]) for j in range(C.dim)]
        for i in range(C.dim)
    ]
    width = max((len(cell) for row in cells for cell in row), default=1)
    lines = [
        "basis: " + ", ".join(f"x{k + 1}={b!r}" for k, b in enumerate(C.basis))
    ]
    for row in cells:
        lines.append("  [ " + "  ".join(f"{cell:>{width}}" for cell in row) + " ]")
    return "\n".join(lines) + "\n"


def commutator_matrix_json_obj(C):
    return {
        "basis": [repr(b) for b in C.basis],
        "entries": [
            [[[k, fraction_str(c)] for k, c in C.entries[i][j]] for j in range(C.dim)]
            for i in range(C.dim)
        ],
    }


def structure_constants_text(P):
    from .algebra import structure_constants

    basis, table = structure_constants(P)
    lines = ["basis: " + ", ".join(repr(b) for b in basis)]
    for (i, j), terms in sorted(table.items()):
        rhs = " + ".join(
            (f"{fraction_str(c)}*{basis[k]!r}" if c != 1 else repr(basis[k]))
            for k, c in terms
        )
        lines.append(f"[{basis[i]!r}, {basis[j]!r}] = {rhs}")
    return "\n".join(lines) + "\n"


def structure_constants_json_obj(P):
    from .algebra import structure_constants

    basis, table = structure_constants(P)
    return {
        "basis": [repr(b) for b in basis],
        "brackets": [
            {"i": i, "j": j, "terms": [[k, fraction_str(c)] for k, c in terms]}
            for (i, j), terms in sorted(table.items())
        ],
    }


def reduction_step_json_obj(step):
    return {
        "kind": step.kind,
        "detail": step.detail,
        "edges": [list(e) for e in step.edges],
        "loops": list(step.loops),
        "rows": [
            {"label": label, "values": [fraction_str(v) for v in values]}
            for label, values in zip(step.row_labels, step.matrix)
        ],
        "rank": step.rank,
    }


def reduction_trace_json_obj(trace):
    return {
        "poset": poset_to_json_obj(trace.poset),
        "seed": trace.seed,
        "edge_values": [[list(e), fraction_str(v)] for e, v in trace.edge_values],
        "loop_values": [[v, fraction_str(x)] for v, x in trace.loop_values],
        "initial": reduction_step_json_obj(trace.initial),
        "steps": [reduction_step_json_obj(s) for s in trace.steps],
        "final_rank": trace.final_rank,
    }


def reduction_trace_text(trace):
    lines = [
        f"reduction of {trace.poset!r} (seed {trace.seed})",
        f"  start: edges={list(trace.initial.edges)} loops={list(trace.initial.loops)} "
        f"rank={trace.initial.rank}",
    ]
    for k, step in enumerate(trace.steps, start=1):
        lines.append(
            f"  step {k}: {step.kind}: {step.detail}; "
            f"edges={list(step.edges)} loops={list(step.loops)} rank={step.rank}"
        )
    lines.append(f"  final rank: {trace.final_rank}")
    return "\n".join(lines) + "\n"


def reduction_trace_dot(trace):
    """One DOT graph per snapshot, concatenated."""
    chunks = []
    for k, step in enumerate((trace.initial,) + trace.steps):
        lines = [f"graph step{k} {{", f'  label="{step.kind}";']
        seen = set()
        for i, j in step.edges:
            seen.update((i, j))
            lines.append(f'  "{i}" -- "{j}";')
        for v in step.loops:
            seen.add(v)
            lines.append(f'  "{v}" -- "{v}";')
        for v in range(1, trace.poset.n + 1):
            if v not in seen:
                lines.append(f'  "{v}";')
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n".join(chunks) + "\n"


def spectrum_json_obj(report):
    return {
        "eigenvalues": {
            fraction_str(v): m for v, m in sorted(report.multiplicities().items())
        },
        "dim": report.dim,
        "is_binary": report.is_binary,
        "zero_count": report.zero_count,
        "one_count": report.one_count,
    }


def principal_element_json_obj(element):
    return {
        "coefficients": {repr(b): fraction_str(v) for b, v in element.coefficients},
        "diagonal": None
        if element.diagonal is None
        else {str(e): fraction_str(v) for e, v in element.diagonal},
        "half_convention": element.half_convention,
    }
