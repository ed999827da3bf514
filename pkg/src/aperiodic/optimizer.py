"""The two O(n^3) maximization dynamic programs and their brute-force oracle.

Both optimize exact integer sizes; comparisons are on full values, never on
floating approximations, because maxima can differ in low-order digits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import bipath_k_partial, sctree_size, unitary_family_size
from .families import (
    Distribution,
    StructureTree,
    enumerate_distributions,
    leaf,
    node,
    parse_structure,
)


@dataclass(frozen=True)
class UiDpTable:
    """Best complete-unitary-with-identity size per state count.

    values[i] = m_ui(i) with m_ui(0) = 1; first_part[i] is the argmax first
    block size j, smallest on ties.  The value recursion multiplies the first
    block's factor (its tail count is i - j) by the best arrangement of the
    remaining i - j states, mirroring that every suffix of a maximal
    distribution is maximal.
    """

    n: int
    values: tuple[int, ...]
    first_part: tuple[int, ...]

    @classmethod
    def compute(cls, n: int) -> "UiDpTable":
        if n < 0:
            raise ValueError("n must be non-negative")
        values = [1] * (n + 1)
        first = [0] * (n + 1)
        for i in range(1, n + 1):
            best = None
            best_j = 0
            for j in range(1, i + 1):
                candidate = values[i - j] * bipath_k_partial(j, i - j)
                if best is None or candidate > best:
                    best = candidate
                    best_j = j
            values[i] = best
            first[i] = best_j
        return cls(n, tuple(values), tuple(first))

    def witness(self, i: int | None = None) -> Distribution:
        i = self.n if i is None else i
        parts = []
        while i:
            parts.append(self.first_part[i])
            i -= self.first_part[i]
        return Distribution(tuple(parts))


def max_unitary(n: int) -> tuple[int, Distribution]:
    """m_ui(n) with a witness distribution (lex-least among maximizers)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    table = UiDpTable.compute(n)
    return table.values[n], table.witness()


@dataclass(frozen=True)
class SctiDpTable:
    """Best semiconstant-tree k-partial counts m_scti(s, k) for s + k <= n.

    A subproblem of size s is only ever queried with k <= n - s, so the table
    is triangular.  split[k][s] is 0 for a bipath leaf, else the right
    subtree size r (the candidate splits combine the left best at k' = r + k
    with the right best at k); ties prefer the leaf, then the smallest left
    subtree.
    """

    n: int
    values: tuple[tuple[int, ...], ...]   # values[k][s], s <= n - k
    split: tuple[tuple[int, ...], ...]

    @classmethod
    def compute(cls, n: int) -> "SctiDpTable":
        if n < 1:
            raise ValueError("n must be at least 1")
        values: list[tuple[int, ...]] = [()] * (n + 1)
        split: list[tuple[int, ...]] = [()] * (n + 1)
        for k in range(n - 1, -1, -1):
            s_max = n - k
            pow_k = [1] * (s_max + 1)
            pow_k1 = [1] * (s_max + 1)
            for e in range(1, s_max + 1):
                pow_k[e] = pow_k[e - 1] * k
                pow_k1[e] = pow_k1[e - 1] * (k + 1)
            vcol = [0] * (s_max + 1)
            scol = [0] * (s_max + 1)
            for s in range(1, s_max + 1):
                best = bipath_k_partial(s, k)
                best_r = 0
                for r in range(s - 1, 0, -1):  # left size s - r ascending
                    lsize = s - r
                    candidate = (
                        values[r + k][lsize] * vcol[r]
                        + lsize * pow_k1[lsize] * (pow_k1[r] - pow_k[r])
                    )
                    if candidate > best:
                        best = candidate
                        best_r = r
                vcol[s] = best
                scol[s] = best_r
            values[k] = tuple(vcol)
            split[k] = tuple(scol)
        return cls(n, tuple(values), tuple(split))

    def value(self, s: int, k: int = 0) -> int:
        return self.values[k][s]

    def witness(self, s: int | None = None, k: int = 0) -> StructureTree:
        s = self.n if s is None else s
        r = self.split[k][s]
        if r == 0:
            return leaf(s)
        return node(self.witness(s - r, r + k), self.witness(r, k))


def max_sctree(n: int) -> tuple[int, StructureTree]:
    """m_scti(n, 0) with a witness structure tree."""
    if n < 1:
        raise ValueError("n must be at least 1")
    table = SctiDpTable.compute(n)
    return table.value(n), table.witness()


EXHAUSTIVE_LIMIT = 12


def _exhaustive_unitary(n: int) -> tuple[int, Distribution]:
    best = None
    witness = None
    for dist in enumerate_distributions(n):
        value = unitary_family_size(dist)
        if best is None or value > best:
            best = value
            witness = dist
    return best, witness


def _exhaustive_sctree(n: int) -> tuple[int, StructureTree]:
    """Brute-force max over every structure tree of n.

    Builds all shapes bottom-up as strings with their full k-vector (k up to
    n - size), so each of the ~A007317(n) shapes is evaluated once.
    """
    shapes: list[list[tuple[str, tuple[int, ...]]]] = [[] for _ in range(n + 1)]
    for s in range(1, n + 1):
        k_count = n - s + 1
        entries = [(str(s), tuple(bipath_k_partial(s, k) for k in range(k_count)))]
        for a in range(1, s):  # a = left size
            b = s - a
            for ltext, lvec in shapes[a]:
                for rtext, rvec in shapes[b]:
                    vec = tuple(
                        lvec[b + k] * rvec[k]
                        + a * (k + 1) ** a * ((k + 1) ** b - k**b)
                        for k in range(k_count)
                    )
                    entries.append((f"({ltext},{rtext})", vec))
        shapes[s] = entries
    best = None
    witness = None
    for text, vec in shapes[n]:
        if best is None or vec[0] > best:
            best = vec[0]
            witness = text
    return best, parse_structure(witness)


def exhaustive_max(kind: str, n: int):
    """Independent brute-force oracle for the DPs, n <= 12.

    Enumerates the 2^(n-1) distributions or all structure trees and evaluates
    the size formulas directly; the maximum (first witness in enumeration
    order) must agree with the DP.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}")
    if kind == "ui":
        return _exhaustive_unitary(n)
    if kind == "scti":
        return _exhaustive_sctree(n)
    raise ValueError(f"unknown kind {kind!r}")


def reevaluate(kind: str, witness) -> int:
    """Evaluate a witness through the public formulas (round-trip check)."""
    if kind == "ui":
        return unitary_family_size(witness)
    if kind == "scti":
        return sctree_size(witness)
    raise ValueError(f"unknown kind {kind!r}")
