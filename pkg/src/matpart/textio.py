"""Text formats for matrices, graphs, and types.

Matrix files: first line is the dimension m, then m lines of m characters
from {0, 1, *}.  Graph files: first line is "n e", then e lines "u v" with
0 <= u < v < n.  Type files reuse the matrix format.
"""

from __future__ import annotations

from .model import (
    ENTRY_CHARS,
    PartitionMatrix,
    SimpleGraph,
    TypeGraph,
    matrix_from_type,
    type_from_matrix,
)


class ParseError(ValueError):
    """Malformed input text; carries line/column context in the message."""

    def __init__(self, message: str, line: int, column: int | None = None):
        at = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({at})")
        self.line = line
        self.column = column


def parse_matrix(text: str) -> PartitionMatrix:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing dimension line", 1)
    try:
        m = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"bad dimension {lines[0].strip()!r}", 1) from None
    if m < 1:
        raise ParseError("dimension must be positive", 1)
    if len(lines) < m + 1:
        raise ParseError(f"expected {m} rows, found {len(lines) - 1}", len(lines))
    rows: list[list[int]] = []
    for i in range(m):
        raw = lines[1 + i].strip()
        if len(raw) != m:
            raise ParseError(f"row has {len(raw)} entries, expected {m}", 2 + i)
        row = []
        for j, ch in enumerate(raw):
            k = ENTRY_CHARS.find(ch)
            if k < 0:
                raise ParseError(f"bad entry {ch!r}", 2 + i, j + 1)
            row.append(k)
        rows.append(row)
    for i in range(m):
        if rows[i][i] == 2:
            raise ParseError(f"star on diagonal {i}", 2 + i, i + 1)
        for j in range(i + 1, m):
            if rows[i][j] != rows[j][i]:
                raise ParseError(f"not symmetric ({i},{j})", 2 + i, j + 1)
    for k in range(m + 1, len(lines)):
        if lines[k].strip():
            raise ParseError("trailing content after matrix", k + 1)
    return PartitionMatrix.from_rows(rows)


def serialize_matrix(mat: PartitionMatrix) -> str:
    body = "\n".join(
        "".join(ENTRY_CHARS[e] for e in row) for row in mat.entries
    )
    return f"{mat.m}\n{body}\n"


def parse_type(text: str) -> TypeGraph:
    return type_from_matrix(parse_matrix(text))


def serialize_type(tau: TypeGraph) -> str:
    return serialize_matrix(matrix_from_type(tau))


def parse_graph(text: str) -> SimpleGraph:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("missing header line", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError('header must be "n e"', 1)
    try:
        n, e = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"bad header {lines[0].strip()!r}", 1) from None
    if n < 0 or e < 0:
        raise ParseError("negative count in header", 1)
    if len(lines) < e + 1:
        raise ParseError(f"expected {e} edges, found {len(lines) - 1}", len(lines))
    edges: set[tuple[int, int]] = set()
    for k in range(e):
        parts = lines[1 + k].split()
        if len(parts) != 2:
            raise ParseError('edge line must be "u v"', 2 + k)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"bad edge {lines[1 + k].strip()!r}", 2 + k) from None
        if u == v:
            raise ParseError(f"loop at {u}", 2 + k)
        if not 0 <= u < v < n:
            raise ParseError(f"edge ({u},{v}) out of range (need 0 <= u < v < {n})", 2 + k)
        if (u, v) in edges:
            raise ParseError(f"duplicate edge ({u},{v})", 2 + k)
        edges.add((u, v))
    for k in range(e + 1, len(lines)):
        if lines[k].strip():
            raise ParseError("trailing content after edges", k + 1)
    return SimpleGraph(n, frozenset(edges))


def serialize_graph(g: SimpleGraph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


_COLOR_BY_NAME = {"red": 0, "blue": 1, "green": 2}


def parse_scenario(text: str):
    """Parse a membership-probability scenario.

    Lines (key=value, '#' comments): model=friendly|general,
    candidate=red|blue, vertex=<name>:<red|blue> (repeated),
    set=<name>,<name>,... (repeated), pair=<a>:<b>:<color> (optional).
    """
    from .randtypes import MembershipScenario

    model = candidate = None
    vertices: list[tuple[str, int]] = []
    sets: list[tuple[str, ...]] = []
    pairs: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected key=value, got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "model":
            model = value
        elif key == "candidate":
            if value not in ("red", "blue"):
                raise ParseError(f"candidate must be red or blue, got {value!r}", lineno)
            candidate = _COLOR_BY_NAME[value]
        elif key == "vertex":
            parts = value.split(":")
            if len(parts) != 2 or parts[1] not in ("red", "blue"):
                raise ParseError(f"vertex must be <name>:<red|blue>, got {value!r}", lineno)
            vertices.append((parts[0], _COLOR_BY_NAME[parts[1]]))
        elif key == "set":
            members = tuple(name.strip() for name in value.split(","))
            if not members or any(not name for name in members):
                raise ParseError(f"bad set {value!r}", lineno)
            sets.append(members)
        elif key == "pair":
            parts = value.split(":")
            if len(parts) != 3 or parts[2] not in _COLOR_BY_NAME:
                raise ParseError(f"pair must be <a>:<b>:<color>, got {value!r}", lineno)
            pairs.append((parts[0], parts[1], _COLOR_BY_NAME[parts[2]]))
        else:
            raise ParseError(f"unknown scenario key {key!r}", lineno)
    if model is None:
        raise ParseError("missing model line", 1)
    if candidate is None:
        raise ParseError("missing candidate line", 1)
    try:
        return MembershipScenario(
            model, candidate, tuple(vertices), tuple(sets), tuple(pairs)
        )
    except ValueError as exc:
        raise ParseError(str(exc), 1) from None
