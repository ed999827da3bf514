"""Exact algebra of total and k-partial transformations of Q = {0..n-1}.

A transformation is stored as its image array: ``images[q]`` is the image of
state ``q``.  Values are immutable and hashable, so they can live in sets and
serve as dictionary keys during semigroup closure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Transformation:
    """A total map of {0..n-1} into itself, written as ``[p0,p1,...]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("a transformation needs at least one state")
        for q, p in enumerate(self.images):
            if not 0 <= p < n:
                raise ValueError(f"image of state {q} is {p}, outside [0, {n - 1}]")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, q: int) -> int:
        return self.images[q]

    def __mul__(self, other: "Transformation") -> "Transformation":
        """``t1 * t2`` applies t1 first: q(t1 t2) = (q t1) t2."""
        return compose(self, other)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.images) + "]"

    @classmethod
    def from_text(cls, text: str) -> "Transformation":
        """Parse the ``[p0,p1,...]`` form (whitespace tolerated)."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"transformation must be bracketed: {text!r}")
        items = [s.strip() for s in body[1:-1].split(",")]
        if items == [""]:
            raise ValueError("empty transformation")
        try:
            images = tuple(int(s) for s in items)
        except ValueError:
            raise ValueError(f"non-integer image in {text!r}") from None
        return cls(images)


def identity(n: int) -> Transformation:
    """The identity transformation on n states."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Transformation(tuple(range(n)))


def compose(t1: Transformation, t2: Transformation) -> Transformation:
    """Left-to-right composition: result maps q to t2(t1(q))."""
    if t1.n != t2.n:
        raise ValueError(f"cannot compose transformations on {t1.n} and {t2.n} states")
    im2 = t2.images
    return Transformation(tuple(im2[p] for p in t1.images))


def unitary(n: int, p: int, q: int) -> Transformation:
    """The unitary transformation (p -> q): moves p to q, fixes the rest."""
    if p == q:
        raise ValueError("a unitary transformation must move its state (p != q)")
    if not (0 <= p < n and 0 <= q < n):
        raise ValueError(f"states {p}, {q} must lie in [0, {n - 1}]")
    images = list(range(n))
    images[p] = q
    return Transformation(tuple(images))


def semiconstant(n: int, moved: Iterable[int], q: int) -> Transformation:
    """The semiconstant transformation (P -> q): all of P to q, rest fixed.

    Constant when P is the whole state set; coincides with the unitary
    (p -> q) when P = {p} or {p, q}.
    """
    pset = set(moved)
    if not pset:
        raise ValueError("P must be non-empty")
    if not 0 <= q < n:
        raise ValueError(f"target {q} must lie in [0, {n - 1}]")
    images = list(range(n))
    for p in pset:
        if not 0 <= p < n:
            raise ValueError(f"state {p} must lie in [0, {n - 1}]")
        images[p] = q
    return Transformation(tuple(images))


def constant(n: int, q: int) -> Transformation:
    """The constant transformation (Q -> q)."""
    return semiconstant(n, range(n), q)


def has_cycle_images(images) -> bool:
    """Cycle test on a raw image sequence (tuple or bytes).

    True iff some subset of size >= 2 is permuted cyclically, i.e. the
    functional graph has a cycle that is not a fixed point.
    """
    n = len(images)
    # 0 = unvisited, 1 = on current path, 2 = done
    color = [0] * n
    for start in range(n):
        if color[start]:
            continue
        path = []
        q = start
        while color[q] == 0:
            color[q] = 1
            path.append(q)
            q = images[q]
        if color[q] == 1 and images[q] != q:
            return True
        for r in path:
            color[r] = 2
    return False


def has_cycle(t: Transformation) -> bool:
    """True iff t permutes some subset of size >= 2 cyclically.

    Equivalent to t^n != t^(n+1); the power form is kept as a test oracle.
    """
    return has_cycle_images(t.images)


def is_monotonic(t: Transformation) -> bool:
    """True iff p <= q implies t(p) <= t(q), in the usual integer order."""
    im = t.images
    return all(im[q] <= im[q + 1] for q in range(t.n - 1))


def is_nondecreasing(t: Transformation) -> bool:
    """True iff q <= t(q) for every state q."""
    return all(q <= p for q, p in enumerate(t.images))


def is_partially_monotonic(t: Transformation) -> bool:
    """Membership test for order-preserving partial maps encoded totally.

    State n-1 plays the role of the undefined value: t must fix it, and the
    restriction of t to states whose image is not n-1 must be monotonic.
    """
    n = t.n
    if n < 2:
        raise ValueError("partial monotonicity needs at least 2 states")
    box = n - 1
    im = t.images
    if im[box] != box:
        return False
    last = -1
    for q in range(box):
        p = im[q]
        if p == box:
            continue
        if p < last:
            return False
        last = p
    return True


_BOX_TOKEN = re.compile(r"^B([1-9][0-9]*)$")


@dataclass(frozen=True)
class KPartialTransformation:
    """A map of {0..n-1} into the states plus k distinguishable boxes.

    ``images[q]`` is either a state in [0, n-1] or n - 1 + j for box j
    (boxes are numbered 1..k and are order-significant).  With k = 0 this is
    a plain total transformation.
    """

    images: tuple[int, ...]
    k: int

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise ValueError("a k-partial transformation needs at least one state")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        for q, p in enumerate(self.images):
            if not 0 <= p < n + self.k:
                raise ValueError(f"image of state {q} is out of range: {p}")

    @property
    def n(self) -> int:
        return len(self.images)

    def is_box(self, q: int) -> bool:
        return self.images[q] >= self.n

    def box_index(self, q: int) -> int:
        """1-based index of the box state q maps to."""
        if not self.is_box(q):
            raise ValueError(f"state {q} maps to a state, not a box")
        return self.images[q] - self.n + 1

    def domain(self) -> tuple[int, ...]:
        """States whose image is an actual state (dom(t) for k = 1)."""
        return tuple(q for q in range(self.n) if not self.is_box(q))

    def to_transformation(self) -> Transformation:
        if any(self.is_box(q) for q in range(self.n)):
            raise ValueError("transformation has boxed images")
        return Transformation(self.images)

    @classmethod
    def from_transformation(cls, t: Transformation, k: int = 0) -> "KPartialTransformation":
        return cls(t.images, k)

    def __str__(self) -> str:
        parts = []
        for q in range(self.n):
            parts.append(f"B{self.box_index(q)}" if self.is_box(q) else str(self.images[q]))
        return "[" + ",".join(parts) + "]"

    @classmethod
    def from_text(cls, text: str, n: int, k: int) -> "KPartialTransformation":
        """Parse the ``[p0,B1,...]`` form; boxes use tokens B1..Bk."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"k-partial transformation must be bracketed: {text!r}")
        images = []
        for item in (s.strip() for s in body[1:-1].split(",")):
            m = _BOX_TOKEN.match(item)
            if m:
                j = int(m.group(1))
                if j > k:
                    raise ValueError(f"box token {item} exceeds k={k}")
                images.append(n - 1 + j)
            else:
                try:
                    images.append(int(item))
                except ValueError:
                    raise ValueError(f"bad token {item!r} in {text!r}") from None
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        return cls(tuple(images), k)


def all_transformations(n: int):
    """Yield every image tuple on n states, lexicographically."""
    from itertools import product

    return product(range(n), repeat=n)
