"""
Injective partial maps on {0, ..., n-1}.

The image tuple is the canonical representation: entry x holds f(x), or
UNDEFINED where f is not defined. Equality, hashing and ordering all use it.
"""
from dataclasses import dataclass
from operator import itemgetter
from typing import Iterable, Iterator, List, Mapping, Tuple

UNDEFINED = -1


class SizeMismatchError(ValueError):
    """Raised when partial injections on different point sets are combined."""


def compose_images(f: Tuple[int, ...], g: Tuple[int, ...]) -> Tuple[int, ...]:
    """(f o g) on raw image tuples; f is applied after g."""
    # UNDEFINED is -1, so the padded tuple sends it to itself
    padded = f + (UNDEFINED,)
    if len(g) == 1:
        return (padded[g[0]],)
    return itemgetter(*g)(padded) if g else ()


def invert_images(f: Tuple[int, ...]) -> Tuple[int, ...]:
    inverse = [UNDEFINED] * len(f)
    for x, y in enumerate(f):
        if y != UNDEFINED:
            inverse[y] = x
    return tuple(inverse)


@dataclass(frozen=True, order=True)
class PartialInjection:
    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(y) for y in self.image)
        n = len(image)
        defined = [y for y in image if y != UNDEFINED]
        if any(not 0 <= y < n for y in defined):
            raise ValueError(f"Partial injection image {image} leaves {{0..{n - 1}}}")
        if len(set(defined)) != len(defined):
            raise ValueError(f"Partial map {image} is not injective")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, size: int) -> "PartialInjection":
        return cls(tuple(range(size)))

    @classmethod
    def empty(cls, size: int) -> "PartialInjection":
        return cls((UNDEFINED,) * size)

    @classmethod
    def from_mapping(cls, size: int, mapping: Mapping[int, int]) -> "PartialInjection":
        image = [UNDEFINED] * size
        for x, y in mapping.items():
            if not 0 <= x < size:
                raise ValueError(f"Point {x} is outside {{0..{size - 1}}}")
            image[x] = y
        return cls(tuple(image))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def items(self) -> Iterator[Tuple[int, int]]:
        return ((x, y) for x, y in enumerate(self.image) if y != UNDEFINED)

    def domain(self) -> Tuple[int, ...]:
        return tuple(x for x, _ in self.items())

    def is_idempotent(self) -> bool:
        return all(x == y for x, y in self.items())

    def cycles(self) -> List[Tuple[int, ...]]:
        """The cycles of the map (fixed points count as cycles of length 1)."""
        seen = set()
        found = []
        for start in range(self.size):
            if start in seen:
                continue
            orbit = [start]
            y = self.image[start]
            while y != UNDEFINED and y != start and y not in seen and len(orbit) <= self.size:
                orbit.append(y)
                y = self.image[y]
            if y == start:
                found.append(tuple(orbit))
                seen.update(orbit)
        return found

    def __str__(self) -> str:
        return " ".join(f"{x}->{y}" for x, y in self.items())


def compose(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    """(f o g)(x) = f(g(x)) where both are defined."""
    if f.size != g.size:
        raise SizeMismatchError(f"Cannot compose maps on {f.size} and {g.size} points")
    return PartialInjection(compose_images(f.image, g.image))


def inverse(f: PartialInjection) -> PartialInjection:
    return PartialInjection(invert_images(f.image))


def check_sizes(maps: Iterable[PartialInjection]) -> int:
    sizes = {f.size for f in maps}
    if len(sizes) > 1:
        raise SizeMismatchError(f"Partial injections on different sizes: {sorted(sizes)}")
    return sizes.pop() if sizes else 0
