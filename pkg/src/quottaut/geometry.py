"""Dimensions, ranks and Betti numbers of the spaces around ``Quot_d(E)``.

Poincaré polynomials here use the topological grading (algebraic classes
sit in even degree), unlike the sheaf-cohomology grading used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, prod
from typing import Sequence

from .curve import BundleClass, CurveModel
from .errors import OutOfRange, PreconditionViolated
from .gradedspace import ONE, GradedDim, sym_power, tensor

TOPOLOGICAL = "topological"


@dataclass(frozen=True)
class SpaceInfo:
    name: str
    dimension: int
    poincare: GradedDim | None = None
    citation: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "poincare": self.poincare.to_json() if self.poincare is not None else None,
            "grading": TOPOLOGICAL,
            "citation": self.citation,
        }


def _nonneg(d: int, what: str = "d") -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise PreconditionViolated(f"{what} must be a non-negative integer, got {d!r}")


def dim_quot(e: BundleClass, d: int) -> int:
    _nonneg(d)
    return d * e.rank


def dim_flag(e: BundleClass, d: int) -> int:
    """Each step of the tower adds the curve (1) and a P^{rk E - 1} fibre."""
    _nonneg(d)
    return sum(1 + (e.rank - 1) for _ in range(d))


def taut_rank(f: BundleClass, d: int) -> int:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise PreconditionViolated(f"d must be a positive integer, got {d!r}")
    return d * f.rank


def hom_rank_quot(f: BundleClass, g: BundleClass, d: int) -> int:
    """Rank of ``Hom(F^[[d]], G^[[d]])`` on the Quot scheme."""
    return taut_rank(f, d) * taut_rank(g, d)


def hom_rank_sym(f: BundleClass, g: BundleClass, d: int) -> int:
    """Rank of ``Hom(F, G)^[d]`` on the symmetric product."""
    return d * f.rank * g.rank


def curve_poincare(c: CurveModel) -> GradedDim:
    return GradedDim({0: 1, 1: 2 * c.genus, 2: 1})


def projective_poincare(n: int) -> GradedDim:
    """Betti numbers of P^n."""
    return GradedDim({2 * i: 1 for i in range(n + 1)})


def poincare_flag(c: CurveModel, e: BundleClass, d: int) -> GradedDim:
    """Flag_d(E) is a d-step tower of P^{rk E - 1}-bundles, each over a copy of C."""
    _nonneg(d)
    step = tensor(curve_poincare(c), projective_poincare(e.rank - 1))
    out = ONE
    for _ in range(d):
        out = tensor(out, step)
    return out


def poincare_sym(c: CurveModel, d: int) -> GradedDim:
    _nonneg(d)
    return sym_power(curve_poincare(c), d)


def is_palindromic(p: GradedDim, dimension: int) -> bool:
    return all(p.get(i) == p.get(2 * dimension - i) for i in range(2 * dimension + 1)) and all(
        0 <= deg <= 2 * dimension for deg in p
    )


def quot_info(e: BundleClass, d: int) -> SpaceInfo:
    return SpaceInfo(f"Quot_{d}({e.label})", dim_quot(e, d), None, "Quot_d(E) is smooth of dimension d * rk E")


def flag_info(c: CurveModel, e: BundleClass, d: int) -> SpaceInfo:
    return SpaceInfo(
        f"Flag_{d}({e.label})",
        dim_flag(e, d),
        poincare_flag(c, e, d),
        "iterated projective bundle; Betti numbers by the projective bundle formula (standard)",
    )


def sym_info(c: CurveModel, d: int) -> SpaceInfo:
    return SpaceInfo(
        f"C^({d})",
        d,
        poincare_sym(c, d),
        "invented: graded S^d of H^*(C), standard Betti numbers of C^(d)",
    )


def _vandermonde_sides(splits):
    lhs = prod(comb(a + b, k) for a, b, k in splits)
    rhs = 0
    ranges = [range(0, min(k, b) + 1) for _, b, k in splits]
    for ls in product(*ranges):
        rhs += prod(comb(a, k - l) * comb(b, l) for (a, b, k), l in zip(splits, ls))
    return lhs, rhs


def filtration_rank_check(splits: Sequence[tuple[int, int, int]]) -> bool:
    """Rank count for the filtration of ``tensor_i wedge^{k_i} F_i``.

    Each ``(r_sub, r_quot, k)`` describes ``0 -> F' -> F -> F'' -> 0`` with
    the given ranks; the graded pieces ``wedge^{k-l} F' (x) wedge^l F''``
    must add up to the rank of the whole.
    """
    splits = [tuple(s) for s in splits]
    for a, b, k in splits:
        if a < 0 or b < 0 or not 1 <= k <= a + b:
            raise OutOfRange(f"invalid filtration data (r_sub={a}, r_quot={b}, k={k})")
    lhs, rhs = _vandermonde_sides(splits)
    return lhs == rhs


def taut_ses_rank_check(f: BundleClass, d: int) -> bool:
    """Rank additivity along ``0 -> F (x) O(1) -> F^<d> -> F^<d-1> -> 0``."""
    if d < 1:
        raise PreconditionViolated(f"d must be positive, got {d}")
    previous = taut_rank(f, d - 1) if d > 1 else 0
    return taut_rank(f, d) == f.rank + previous
