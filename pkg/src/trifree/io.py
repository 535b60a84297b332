"""graph6 and edge-list readers and writers."""

from __future__ import annotations

from pathlib import Path

from .graph import Graph

HEADER = b">>graph6<<"


class GraphFormatError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(message if offset is None else f"{message} (byte {offset})")


def _size_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 2**36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def emit_graph6(g: Graph) -> bytes:
    """graph6 encoding without header or trailing newline."""
    n = g.n
    out = bytearray(_size_bytes(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        aj = g.adj(j)
        for i in range(j):
            acc = (acc << 1) | (i in aj)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def _check_byte(b: int, pos: int) -> int:
    if not 63 <= b <= 126:
        raise GraphFormatError(f"byte value {b} outside graph6 range", pos)
    return b - 63


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    start = 0
    if data.startswith(HEADER):
        start = len(HEADER)
    if len(data) <= start:
        raise GraphFormatError("missing size header", start)
    pos = start
    if data[pos] == 126:
        if len(data) > pos + 1 and data[pos + 1] == 126:
            width, pos = 6, pos + 2
        else:
            width, pos = 3, pos + 1
        if len(data) < pos + width:
            raise GraphFormatError("truncated size header", len(data))
        n = 0
        for i in range(width):
            n = (n << 6) | _check_byte(data[pos + i], pos + i)
        pos += width
    else:
        n = _check_byte(data[pos], pos)
        pos += 1
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise GraphFormatError(f"expected {need} data bytes for n={n}, got {len(body)}", pos + min(len(body), need))
    edges = []
    bit = 0
    i, j = 0, 1
    for off, b in enumerate(body):
        v = _check_byte(b, pos + off)
        for s in range(5, -1, -1):
            if bit >= nbits:
                if (v >> s) & 1:
                    raise GraphFormatError("non-zero padding bits", pos + off)
                continue
            if (v >> s) & 1:
                edges.append((i, j))
            bit += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, edges)


def parse_edgelist(text: str) -> Graph:
    """Lines "u v" with 0-based ids; '#' starts a comment.

    The first line is read as an "n m" header when its second number equals
    the number of remaining edge lines and its first could hold that many
    edges (n >= 2 unless m = 0); ids on those lines must then be below n.  Otherwise it is an ordinary edge and n is one more than the largest id.
    """
    rows: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        rows.append((lineno, u, v))
    if not rows:
        return Graph(0)
    n = None
    first_line, a, b = rows[0]
    rest = rows[1:]
    if b == len(rest) and (b == 0 or a >= 2):
        n = a
        rows = rest
    if n is None:
        n = 1 + max(max(u, v) for _, u, v in rows)
    edges = set()
    for lineno, u, v in rows:
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        if u >= n or v >= n:
            raise GraphFormatError(f"line {lineno}: id out of range for n={n}")
        edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def emit_edgelist(g: Graph, header: bool = True) -> str:
    lines = [f"{g.n} {g.m}"] if header else []
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read a file as graph6 (.g6 / .graph6) or an edge list (anything else), unless fmt says otherwise."""
    path = Path(path)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        return parse_graph6(path.read_bytes())
    if fmt == "edgelist":
        return parse_edgelist(path.read_text())
    raise ValueError(f"unknown graph format {fmt!r}")


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "graph6" if path.suffix in (".g6", ".graph6") else "edgelist"
    if fmt == "graph6":
        path.write_bytes(emit_graph6(g) + b"\n")
    elif fmt == "edgelist":
        path.write_text(emit_edgelist(g))
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
