"""Brute-force graded symmetric and exterior powers by monomial counting.

Deliberately naive: explicit bases, explicit monomials, no generating
functions. It exists to be checked by eye and used as ground truth for
:mod:`quottaut.gradedspace`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Hashable, Sequence

from . import gradedspace
from .errors import OracleBoundsError
from .gradedspace import GradedDim

MAX_ELEMENTS = 12
MAX_K = 12


@dataclass(frozen=True)
class GradedBasis:
    elements: tuple[tuple[Hashable, int], ...]

    def __post_init__(self):
        elements = tuple((label, int(deg)) for label, deg in self.elements)
        labels = [label for label, _ in elements]
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be pairwise distinct")
        object.__setattr__(self, "elements", elements)

    @classmethod
    def from_degrees(cls, degrees: Sequence[int], prefix: str = "e") -> GradedBasis:
        return cls(tuple((f"{prefix}{i}", d) for i, d in enumerate(degrees)))

    @classmethod
    def from_dims(cls, dims: GradedDim) -> GradedBasis:
        degrees = [d for d, n in dims.items() for _ in range(n)]
        return cls.from_degrees(degrees)

    def dims(self) -> GradedDim:
        return GradedDim(Counter(deg for _, deg in self.elements))

    def __len__(self) -> int:
        return len(self.elements)


def _check_bounds(basis: GradedBasis, k: int) -> None:
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if len(basis) > MAX_ELEMENTS or k > MAX_K:
        raise OracleBoundsError(
            f"enumeration refused: {len(basis)} elements, k={k} "
            f"(limits: {MAX_ELEMENTS} elements, k <= {MAX_K})"
        )


def _count(free: list[int], square_free: list[int], k: int) -> GradedDim:
    # free: elements that may repeat; square_free: elements used at most once
    counts: Counter = Counter()
    for j in range(min(k, len(square_free)) + 1):
        for subset in combinations(square_free, j):
            part = sum(subset)
            for multiset in combinations_with_replacement(free, k - j):
                counts[part + sum(multiset)] += 1
    return GradedDim(counts)


def enumerate_sym(basis: GradedBasis, k: int) -> GradedDim:
    """Count degree-k monomials: even elements repeat, odd elements square to zero."""
    _check_bounds(basis, k)
    even = [deg for _, deg in basis.elements if deg % 2 == 0]
    odd = [deg for _, deg in basis.elements if deg % 2]
    return _count(even, odd, k)


def enumerate_ext(basis: GradedBasis, k: int) -> GradedDim:
    """Count degree-k wedge monomials: even elements at most once, odd ones repeat."""
    _check_bounds(basis, k)
    even = [deg for _, deg in basis.elements if deg % 2 == 0]
    odd = [deg for _, deg in basis.elements if deg % 2]
    return _count(odd, even, k)


# 0 first, then alternating outward, so the smallest odd case is degree 1.
SWEEP_DEGREES = (0, 1, -1, 2, -2, 3)


@dataclass(frozen=True)
class Mismatch:
    op: str
    degrees: tuple[int, ...]
    k: int
    expected: GradedDim
    got: GradedDim

    def to_json(self) -> dict:
        return {
            "op": self.op,
            "basis": [[f"e{i}", d] for i, d in enumerate(self.degrees)],
            "k": self.k,
            "oracle": self.expected.to_json(),
            "series": self.got.to_json(),
        }


def sweep_bases(max_dim: int, degrees: Sequence[int] = SWEEP_DEGREES):
    """Every multiset of degrees of size 0..max_dim, smallest first."""
    for size in range(max_dim + 1):
        for combo in combinations_with_replacement(degrees, size):
            yield combo


def equivalence_sweep(max_dim: int = 5, max_k: int = 5, degrees: Sequence[int] = SWEEP_DEGREES):
    """Compare series powers against enumeration; return (checks run, mismatches)."""
    checks = 0
    mismatches: list[Mismatch] = []
    for combo in sweep_bases(max_dim, degrees):
        basis = GradedBasis.from_degrees(combo)
        dims = basis.dims()
        for k in range(max_k + 1):
            for name, brute, series in (
                ("sym_power", enumerate_sym, gradedspace.sym_power),
                ("ext_power", enumerate_ext, gradedspace.ext_power),
            ):
                checks += 1
                expected = brute(basis, k)
                got = series(dims, k)
                if expected != got:
                    mismatches.append(Mismatch(name, combo, k, expected, got))
    return checks, mismatches
