"""
Line-based automaton files.

    alphabet a b
    states 3
    start 0
    accept 0
    edge 0 a 1

Only positive-letter edges are written; `#` starts a comment.
"""
from pathlib import Path
from typing import Union

from freegroup.words import Alphabet, WordSyntaxError

from .graph import Edge, InverseAutomaton, RawGraph


class AutomatonFormatError(ValueError):
    """Raised when an automaton file cannot be parsed."""


def parse_automaton(text: str, origin: str = "<text>") -> RawGraph:
    alphabet = None
    header = {}
    edges = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *fields = line.split()
        where = f"{origin}:{number}"
        try:
            if keyword == "alphabet":
                alphabet = Alphabet(tuple(fields))
            elif keyword in ("states", "start", "accept"):
                if len(fields) != 1:
                    raise AutomatonFormatError(f"{where}: '{keyword}' takes one number")
                header[keyword] = int(fields[0])
            elif keyword == "edge":
                if alphabet is None:
                    raise AutomatonFormatError(f"{where}: 'edge' before 'alphabet'")
                if len(fields) != 3:
                    raise AutomatonFormatError(f"{where}: expected 'edge <from> <letter> <to>'")
                edges.append(Edge(int(fields[0]), alphabet.index(fields[1]), int(fields[2])))
            else:
                raise AutomatonFormatError(f"{where}: unknown keyword '{keyword}'")
        except (ValueError, WordSyntaxError) as e:
            if isinstance(e, AutomatonFormatError):
                raise
            raise AutomatonFormatError(f"{where}: {e}") from e
    if alphabet is None:
        raise AutomatonFormatError(f"{origin}: missing 'alphabet' line")
    missing = [key for key in ("states", "start", "accept") if key not in header]
    if missing:
        raise AutomatonFormatError(f"{origin}: missing {', '.join(missing)}")
    try:
        return RawGraph(alphabet, header["states"], tuple(edges), header["start"], header["accept"])
    except ValueError as e:
        raise AutomatonFormatError(f"{origin}: {e}") from e


def load_automaton(path: Union[str, Path]) -> RawGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise AutomatonFormatError(f"Cannot read {path}: {e.strerror}") from e
    return parse_automaton(text, origin=str(path))


def load_inverse_automaton(path: Union[str, Path]) -> InverseAutomaton:
    graph = load_automaton(path)
    if not graph.is_deterministic():
        raise AutomatonFormatError(f"{path}: automaton is not deterministic (run 'fold' first)")
    return graph.to_inverse()


def format_automaton(m: Union[InverseAutomaton, RawGraph]) -> str:
    """Canonical text form; edges letter-major, then by source and target."""
    edges = sorted(m.edges(), key=lambda e: (e.letter, e.source, e.target)) \
        if isinstance(m, InverseAutomaton) else sorted(m.edges, key=lambda e: (e.letter, e.source, e.target))
    lines = [
        f"alphabet {m.alphabet}",
        f"states {m.state_count}",
        f"start {m.start}",
        f"accept {m.accept}",
    ]
    lines.extend(f"edge {p} {m.alphabet.letters[x]} {q}" for p, x, q in edges)
    return "\n".join(lines) + "\n"


def write_automaton(path: Union[str, Path], m: Union[InverseAutomaton, RawGraph]) -> None:
    Path(path).write_text(format_automaton(m), encoding="utf-8")
