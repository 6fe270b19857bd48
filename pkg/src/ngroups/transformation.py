"""Total maps on a finite carrier {0, ..., n-1}.

A transformation is stored as its image tuple, so ``f.images[x]`` is f(x).
Composition is "apply right first": ``compose(f, g)`` sends x to f(g(x)).
The module also provides kernel partitions (x ~ y iff f(x) = f(y)), the
induced map on partition blocks, and the two pointwise criteria that decide
whether a non-bijective map can sit inside a composition group: a map can be
the identity of such a group iff it is idempotent, and can be a member iff
its image and the image of its square coincide.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import DomainMismatchError, IllDefinedMapError, ParseError

__all__ = [
    "Transformation",
    "Partition",
    "ImageInfo",
    "compose",
    "power",
    "image_rank",
    "kernel_partition",
    "is_idempotent",
    "can_be_member",
    "can_be_identity",
    "induced_map",
]

_LITERAL_RE = re.compile(r"\A\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]\s*\Z")


@dataclass(frozen=True, order=True)
class Transformation:
    """A total map on {0, ..., n-1} held as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.images, tuple):
            object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if n == 0:
            raise ValueError("carrier must be non-empty")
        for x, v in enumerate(self.images):
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"image of {x} is {v!r}, outside 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    @classmethod
    def parse(cls, text: str) -> Transformation:
        """Parse a bracketed image list such as ``[0,0,2]``."""
        m = _LITERAL_RE.match(text)
        if m is None:
            raise ParseError(f"bad transformation literal: {text!r}")
        images = tuple(int(tok) for tok in m.group(1).split(","))
        try:
            return cls(images)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @classmethod
    def identity(cls, n: int) -> Transformation:
        return cls(tuple(range(n)))


@dataclass(frozen=True, order=True)
class Partition:
    """An equivalence relation on {0, ..., n-1} in canonical labelling.

    ``block_of[x]`` is the label of x's block.  Labels appear in first
    occurrence order, so ``block_of[0] == 0`` and each later label is at
    most one more than the largest label seen so far.  Two partitions are
    equal as relations iff their canonical label tuples are equal.
    """

    block_of: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.block_of, tuple):
            object.__setattr__(self, "block_of", tuple(self.block_of))
        if len(self.block_of) == 0:
            raise ValueError("carrier must be non-empty")
        top = -1
        for x, lbl in enumerate(self.block_of):
            if not isinstance(lbl, int) or lbl < 0 or lbl > top + 1:
                raise ValueError(
                    f"label {lbl!r} at position {x} breaks first-occurrence order"
                )
            if lbl == top + 1:
                top = lbl

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def block_count(self) -> int:
        return max(self.block_of) + 1

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> Partition:
        """Relabel an arbitrary label sequence into canonical form."""
        seen: dict[int, int] = {}
        out = []
        for lbl in labels:
            if lbl not in seen:
                seen[lbl] = len(seen)
            out.append(seen[lbl])
        return cls(tuple(out))

    def blocks(self) -> list[list[int]]:
        """Blocks as sorted lists, in block-label order."""
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for x, lbl in enumerate(self.block_of):
            out[lbl].append(x)
        return out

    def refines(self, other: Partition) -> bool:
        """True if every block of self lies inside a block of other."""
        if self.n != other.n:
            raise DomainMismatchError(
                f"partitions on carriers of size {self.n} and {other.n}"
            )
        rep: dict[int, int] = {}
        for x in range(self.n):
            mine, theirs = self.block_of[x], other.block_of[x]
            if mine not in rep:
                rep[mine] = theirs
            elif rep[mine] != theirs:
                return False
        return True


class ImageInfo(NamedTuple):
    image: tuple[int, ...]
    rank: int
    bijective: bool


def _require_same_carrier(f: Transformation, g: Transformation) -> None:
    if f.n != g.n:
        raise DomainMismatchError(f"maps on carriers of size {f.n} and {g.n}")


def compose(f: Transformation, g: Transformation) -> Transformation:
    """The map x -> f(g(x))."""
    _require_same_carrier(f, g)
    fi = f.images
    return Transformation(tuple(fi[v] for v in g.images))


def power(f: Transformation, k: int) -> Transformation:
    """The k-th compositional power of f, for k >= 1."""
    if k < 1:
        raise ValueError(f"power wants k >= 1, got {k}")
    if k <= 8:
        out = f
        for _ in range(k - 1):
            out = compose(f, out)
        return out
    # square-and-multiply for large exponents
    base, out = f, None
    while k:
        if k & 1:
            out = base if out is None else compose(base, out)
        k >>= 1
        if k:
            base = compose(base, base)
    assert out is not None
    return out


def image_rank(f: Transformation) -> ImageInfo:
    """Sorted image, its size, and whether f is a bijection."""
    image = tuple(sorted(set(f.images)))
    rank = len(image)
    return ImageInfo(image=image, rank=rank, bijective=rank == f.n)


def kernel_partition(f: Transformation) -> Partition:
    """The partition of the carrier by equal images under f."""
    return Partition.from_labels(f.images)


def is_idempotent(f: Transformation) -> bool:
    """True iff f(f(x)) = f(x) for every x, i.e. f fixes its image pointwise."""
    fi = f.images
    return all(fi[v] == v for v in fi)


def can_be_member(f: Transformation) -> bool:
    """True iff f can belong to some composition group of maps on its carrier.

    The criterion is that f and f*f have the same image; equivalently f
    permutes its image, so some positive power of f is idempotent.
    """
    return set(f.images) == set(compose(f, f).images)


def can_be_identity(f: Transformation) -> bool:
    """True iff f can be the identity of a composition group, i.e. f*f = f."""
    return is_idempotent(f)


def induced_map(f: Transformation, p: Partition) -> tuple[int, ...]:
    """The block-level map sending block B to the block containing f(B).

    Defined only when f maps each block of p inside a single block; the
    value at label b is the label of the block containing f(x) for any x
    with block_of[x] = b.  Raises IllDefinedMapError when two members of
    one block land in different blocks.
    """
    if f.n != p.n:
        raise DomainMismatchError(f"map on {f.n} points, partition on {p.n}")
    out = [-1] * p.block_count
    for x in range(f.n):
        b = p.block_of[x]
        t = p.block_of[f.images[x]]
        if out[b] < 0:
            out[b] = t
        elif out[b] != t:
            raise IllDefinedMapError(
                f"block {b} is sent into blocks {out[b]} and {t}"
            )
    return tuple(out)
