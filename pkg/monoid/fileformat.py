"""
Partial-injection files: a `size n` line, then `map <name> x->y x->y ...`
lines with undefined points omitted. `#` starts a comment.
"""
from typing import List, Sequence, Tuple

from .injection import PartialInjection


class InjectionFormatError(ValueError):
    """Raised when a partial-injection file cannot be parsed."""


def parse_injections(text: str, origin: str = "<text>") -> Tuple[int, List[Tuple[str, PartialInjection]]]:
    size = None
    maps: List[Tuple[str, PartialInjection]] = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *fields = line.split()
        where = f"{origin}:{number}"
        if keyword == "size":
            if len(fields) != 1 or not fields[0].isdigit():
                raise InjectionFormatError(f"{where}: expected 'size <n>'")
            size = int(fields[0])
        elif keyword == "map":
            if size is None:
                raise InjectionFormatError(f"{where}: 'map' before 'size'")
            if not fields:
                raise InjectionFormatError(f"{where}: map needs a name")
            name, pairs = fields[0], fields[1:]
            mapping = {}
            for pair in pairs:
                source, arrow, target = pair.partition("->")
                if not arrow or not source.isdigit() or not target.isdigit():
                    raise InjectionFormatError(f"{where}: bad pair '{pair}'")
                if int(source) in mapping:
                    raise InjectionFormatError(f"{where}: point {source} mapped twice")
                mapping[int(source)] = int(target)
            try:
                maps.append((name, PartialInjection.from_mapping(size, mapping)))
            except ValueError as e:
                raise InjectionFormatError(f"{where}: {e}") from e
        else:
            raise InjectionFormatError(f"{where}: unknown keyword '{keyword}'")
    if size is None:
        raise InjectionFormatError(f"{origin}: missing 'size' line")
    return size, maps


def format_injections(size: int, maps: Sequence[Tuple[str, PartialInjection]]) -> str:
    lines = [f"size {size}"]
    for name, f in maps:
        pairs = " ".join(f"{x}->{y}" for x, y in f.items())
        lines.append(f"map {name} {pairs}".rstrip())
    return "\n".join(lines) + "\n"
