"""Reading and writing graphs (edge-list and graph6) and sequence files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator

from .graph import ContractionSequence, Graph, SequenceError

__all__ = [
    "ParseError",
    "parse_edge_list",
    "format_edge_list",
    "parse_graph6",
    "format_graph6",
    "iter_graph6",
    "read_graph",
    "write_graph",
    "read_sequence",
    "write_sequence",
    "dump_sequence",
]


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_edge_list(text: str, source: str | None = None) -> Graph:
    """Header ``n m`` then ``m`` lines ``u v`` (0-based); ``#`` starts a comment."""
    lines = _content_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected header 'n m'", None, source) from None
    fields = header.split()
    if len(fields) != 2 or not all(f.lstrip("-").isdigit() for f in fields):
        raise ParseError(f"expected header 'n m', got {header!r}", no, source)
    n, m = map(int, fields)
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", no, source)
    seen: dict[tuple[int, int], int] = {}
    edges = []
    for no, line in lines:
        fields = line.split()
        if len(fields) != 2 or not all(f.lstrip("-").isdigit() for f in fields):
            raise ParseError(f"expected 'u v', got {line!r}", no, source)
        u, v = map(int, fields)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex out of range 0..{n - 1} in {line!r}", no, source)
        if u == v:
            raise ParseError(f"self-loop at {u}", no, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", no, source)
        seen[key] = no
        edges.append(key)
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given", None, source)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = sorted(g.edges())
    out = [f"{g.n} {len(edges)}"]
    out += [f"{u} {v}" for u, v in edges]
    return "\n".join(out) + "\n"


def _decode_n(data: bytes, source, line) -> tuple[int, int]:
    if not data:
        raise ParseError("empty graph6 string", line, source)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field", line, source)
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise ParseError("truncated graph6 size field", line, source)
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(s: str, source: str | None = None, line: int | None = None) -> Graph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii", errors="replace")
    if any(c < 63 or c > 126 for c in data):
        raise ParseError("invalid character in graph6 string", line, source)
    n, off = _decode_n(data, source, line)
    body = data[off:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}", line, source)
    edges = []
    bit = 0
    total = n * (n - 1) // 2
    vals = [c - 63 for c in body]
    for v in range(1, n):
        for u in range(v):
            if vals[bit // 6] >> (5 - bit % 6) & 1:
                edges.append((u, v))
            bit += 1
    if total % 6 and vals and vals[-1] & ((1 << (6 - total % 6)) - 1):
        raise ParseError("nonzero padding bits in graph6 string", line, source)
    return Graph(n, edges)


def format_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for v in range(1, n):
        av = g.adj[v]
        bits.extend(1 if u in av else 0 for u in range(v))
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def iter_graph6(text: str, source: str | None = None) -> Iterator[Graph]:
    for no, line in _content_lines(text):
        yield parse_graph6(line, source, no)


def _looks_like_edge_list(text: str) -> bool:
    for _, line in _content_lines(text):
        return all(f.lstrip("-").isdigit() for f in line.split()) and len(line.split()) == 2
    return True


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read one graph; the format comes from ``fmt``, the suffix, or the content."""
    p = Path(path)
    try:
        text = p.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read: {exc}", None, str(p)) from None
    if fmt is None:
        if p.suffix in (".g6", ".graph6"):
            fmt = "graph6"
        elif p.suffix in (".txt", ".el", ".edges"):
            fmt = "edge-list"
        else:
            fmt = "edge-list" if _looks_like_edge_list(text) else "graph6"
    if fmt == "graph6":
        graphs = list(iter_graph6(text, str(p)))
        if len(graphs) != 1:
            raise ParseError(f"expected one graph6 line, found {len(graphs)}", None, str(p))
        return graphs[0]
    if fmt == "edge-list":
        return parse_edge_list(text, str(p))
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, path: str | Path, fmt: str = "edge-list") -> None:
    text = format_graph6(g) + "\n" if fmt == "graph6" else format_edge_list(g)
    Path(path).write_text(text)


def dump_sequence(seq: ContractionSequence) -> str:
    """Canonical JSON: sorted keys, no spaces beyond separators, trailing newline."""
    return json.dumps(seq.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def write_sequence(seq: ContractionSequence, path: str | Path) -> None:
    Path(path).write_text(dump_sequence(seq))


def read_sequence(path: str | Path) -> ContractionSequence:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"invalid sequence file: {exc}", None, str(p)) from None
    try:
        return ContractionSequence.from_json(data)
    except (SequenceError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid sequence file: {exc}", None, str(p)) from None


def graphs_from_lines(lines: Iterable[str]) -> list[Graph]:
    return [parse_graph6(line) for line in lines if line.strip()]
