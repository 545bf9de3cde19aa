"""Plain-text hypergraph format: one hyperedge per line, whitespace-separated node ids"""

from pathlib import Path
from typing import List, Union

from ..artifacts import PathLike, write_text
from ..errors import ParseError, ValidationError
from .core import Hypergraph


def parse_hypergraph(text: str, source: str = "<string>") -> Hypergraph:
    """Parse the hypergraph text format.

    Lines whose first non-blank character is ``#`` are comments. ``n`` is one more than the largest
    node id seen; edges keep file order and get weight 1.0.

    Raises:
        ParseError: a token is not a non-negative integer.
        ValidationError: an edge line is empty or repeats a node.
    """
    edges: List[List[int]] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            raise ValidationError(f"{source}:{line_number}: empty hyperedge line")
        edge: List[int] = []
        for token in line.split():
            if not (token.isascii() and token.isdigit()):
                raise ParseError(source, "expected a non-negative integer node id", line_number, token)
            edge.append(int(token))
        if len(set(edge)) != len(edge):
            raise ValidationError(f"{source}:{line_number}: hyperedge repeats a node: {edge}")
        edges.append(edge)
    n = 1 + max((v for edge in edges for v in edge), default=-1)
    return Hypergraph(n=n, edges=edges)


def load_hypergraph(path: Union[str, Path]) -> Hypergraph:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        line_number = raw.count(b"\n", 0, exc.start) + 1
        token = raw[exc.start : exc.end].hex()
        raise ParseError(str(path), "not valid UTF-8", line_number, token) from exc
    return parse_hypergraph(text, source=str(path))


def format_hypergraph(hg: Hypergraph) -> str:
    lines = [f"# n={hg.n} m={hg.m}"]
    lines.extend(" ".join(str(v) for v in edge) for edge in hg.edges)
    return "\n".join(lines) + "\n"


def save_hypergraph(hg: Hypergraph, path: PathLike) -> Path:
    """Write ``hg`` in the text format.

    Node count is only implied by the largest id, so trailing isolated nodes do not survive a
    round trip; generated hypergraphs never have any.
    """
    return write_text(path, format_hypergraph(hg))


__all__ = ["format_hypergraph", "load_hypergraph", "parse_hypergraph", "save_hypergraph"]
