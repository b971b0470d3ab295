"""Curves, bundle classes, and the graded inputs ``H^*(F)`` and ``Ext^*(F, G)``.

A bundle is kept only up to the data the closed formulas consume: rank,
degree, a label, and optionally an explicit ``(h0, h1)`` or a splitting
into line bundles. Cohomology comes from Riemann-Roch plus a small set of
exact rules; anything beyond that is either refused (strict policy) or
filled in with the generic split ``h0 = max(chi, 0)`` (generic policy).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import AmbiguousCohomology, InconsistentOverride, OutOfRange, PreconditionViolated
from .gradedspace import ZERO, GradedDim, direct_sum

STRUCTURE_LABELS = frozenset({"O", "O_C"})
CANONICAL_LABELS = frozenset({"K", "K_C", "canonical"})


class CohPolicy(str, enum.Enum):
    STRICT = "strict"
    GENERIC = "generic"


class CohSource(str, enum.Enum):
    OVERRIDE = "override"
    RULE = "rule"
    GENERIC = "generic"


@dataclass(frozen=True)
class CurveModel:
    genus: int

    def __post_init__(self):
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 0:
            raise PreconditionViolated(f"genus must be a non-negative integer, got {self.genus!r}")

    @property
    def canonical_degree(self) -> int:
        return 2 * self.genus - 2


@dataclass(frozen=True)
class BundleClass:
    """Rank/degree shadow of a vector bundle on the curve.

    ``splitting`` records a decomposition into line bundles of the given
    degrees (every bundle on P^1 has one). Labels in ``STRUCTURE_LABELS``
    and ``CANONICAL_LABELS`` mark O_C and K_C; the canonical class is
    never inferred from its degree alone.
    """

    label: str
    rank: int
    degree: int
    h0: int | None = None
    h1: int | None = None
    splitting: tuple[int, ...] | None = None

    def __post_init__(self):
        if isinstance(self.rank, bool) or not isinstance(self.rank, int) or self.rank < 1:
            raise PreconditionViolated(f"bundle {self.label!r}: rank must be a positive integer")
        if isinstance(self.degree, bool) or not isinstance(self.degree, int):
            raise PreconditionViolated(f"bundle {self.label!r}: degree must be an integer")
        if (self.h0 is None) != (self.h1 is None):
            raise PreconditionViolated(f"bundle {self.label!r}: give both h0 and h1 or neither")
        if self.h0 is not None and (self.h0 < 0 or self.h1 < 0):
            raise PreconditionViolated(f"bundle {self.label!r}: h0 and h1 must be non-negative")
        if self.splitting is not None:
            split = tuple(sorted(int(x) for x in self.splitting))
            if len(split) != self.rank or sum(split) != self.degree:
                raise PreconditionViolated(
                    f"bundle {self.label!r}: splitting {split} does not match rank {self.rank}, degree {self.degree}"
                )
            object.__setattr__(self, "splitting", split)
        if self.is_structure_sheaf and (self.rank, self.degree) != (1, 0):
            raise PreconditionViolated(f"{self.label!r} is reserved for the structure sheaf (rank 1, degree 0)")

    @property
    def is_structure_sheaf(self) -> bool:
        return self.label in STRUCTURE_LABELS

    @property
    def is_canonical(self) -> bool:
        return self.label in CANONICAL_LABELS

    @property
    def has_override(self) -> bool:
        return self.h0 is not None

    @property
    def line_degrees(self) -> tuple[int, ...] | None:
        """Degrees of line-bundle summands, if known."""
        if self.splitting is not None:
            return self.splitting
        if self.rank == 1:
            return (self.degree,)
        return None

    def to_json(self) -> dict:
        out = {"label": self.label, "rank": self.rank, "degree": self.degree}
        if self.has_override:
            out["h0"], out["h1"] = self.h0, self.h1
        if self.splitting is not None:
            out["splitting"] = list(self.splitting)
        return out

    @classmethod
    def from_json(cls, data: dict) -> BundleClass:
        unknown = set(data) - {"label", "rank", "degree", "h0", "h1", "splitting"}
        if unknown:
            raise PreconditionViolated(f"unknown bundle fields: {sorted(unknown)}")
        for key in ("label", "rank", "degree"):
            if key not in data:
                raise PreconditionViolated(f"bundle is missing {key!r}")
        if not isinstance(data["label"], str) or not data["label"]:
            raise PreconditionViolated("bundle label must be a non-empty string")
        split = data.get("splitting")
        return cls(
            label=data["label"],
            rank=data["rank"],
            degree=data["degree"],
            h0=data.get("h0"),
            h1=data.get("h1"),
            splitting=tuple(split) if split is not None else None,
        )


def structure_sheaf() -> BundleClass:
    return BundleClass("O_C", 1, 0)


def canonical(c: CurveModel) -> BundleClass:
    return BundleClass("K_C", 1, c.canonical_degree)


def line_bundle(degree: int, label: str | None = None) -> BundleClass:
    return BundleClass(label or f"O({degree})", 1, degree)


def split_bundle(degrees, label: str | None = None) -> BundleClass:
    degrees = tuple(sorted(degrees))
    name = label or "O(" + ")+O(".join(str(d) for d in degrees) + ")"
    return BundleClass(name, len(degrees), sum(degrees), splitting=degrees)


def chi(c: CurveModel, f: BundleClass) -> int:
    return f.degree + f.rank * (1 - c.genus)


def _line_rule(c: CurveModel, degree: int) -> GradedDim | None:
    """Degree-only vanishing rules for a line bundle that is neither O_C nor K_C."""
    euler = degree + 1 - c.genus
    if degree > c.canonical_degree:
        return GradedDim({0: euler})
    if degree < 0:
        return GradedDim({1: -euler})
    return None


def _rule(c: CurveModel, f: BundleClass) -> GradedDim | None:
    if f.rank == 1:
        if f.is_structure_sheaf:
            return GradedDim({0: 1, 1: c.genus})
        if f.is_canonical:
            if f.degree != c.canonical_degree:
                raise PreconditionViolated(
                    f"canonical class {f.label!r} must have degree {c.canonical_degree} on genus {c.genus}"
                )
            return GradedDim({0: c.genus, 1: 1})
    summands = f.line_degrees
    if summands is None:
        return None
    out = ZERO
    for deg in summands:
        part = _line_rule(c, deg)
        if part is None:
            return None
        out = direct_sum(out, part)
    return out


def cohomology_with_source(c: CurveModel, f: BundleClass, policy: CohPolicy = CohPolicy.STRICT):
    """Return ``(H^*(F), source)`` where source says how the split was decided."""
    policy = CohPolicy(policy)
    euler = chi(c, f)
    if f.has_override:
        if f.h0 - f.h1 != euler:
            raise InconsistentOverride(
                f"bundle {f.label!r}: h0 - h1 = {f.h0 - f.h1} but Riemann-Roch gives {euler}"
            )
        return GradedDim({0: f.h0, 1: f.h1}), CohSource.OVERRIDE
    ruled = _rule(c, f)
    if ruled is not None:
        return ruled, CohSource.RULE
    if policy is CohPolicy.GENERIC:
        return GradedDim({0: max(euler, 0), 1: max(-euler, 0)}), CohSource.GENERIC
    raise AmbiguousCohomology(
        f"cannot determine H^*({f.label}) (rank {f.rank}, degree {f.degree}, genus {c.genus}) "
        "in strict mode; give h0/h1, a splitting, or use the generic policy"
    )


def cohomology(c: CurveModel, f: BundleClass, policy: CohPolicy = CohPolicy.STRICT) -> GradedDim:
    return cohomology_with_source(c, f, policy)[0]


def tensor_class(a: BundleClass, b: BundleClass) -> BundleClass:
    if a.is_structure_sheaf:
        return b
    if b.is_structure_sheaf:
        return a
    split = None
    if a.line_degrees is not None and b.line_degrees is not None and a.rank * b.rank > 1:
        split = tuple(x + y for x in a.line_degrees for y in b.line_degrees)
    return BundleClass(
        label=f"{a.label}*{b.label}",
        rank=a.rank * b.rank,
        degree=a.rank * b.degree + b.rank * a.degree,
        splitting=split,
    )


def dual_class(a: BundleClass) -> BundleClass:
    if a.is_structure_sheaf:
        return a
    if a.label.endswith("^v"):
        label = a.label[:-2]
    elif any(ch in a.label for ch in "+*"):
        label = f"({a.label})^v"
    else:
        label = f"{a.label}^v"
    split = tuple(-x for x in a.splitting) if a.splitting is not None else None
    return BundleClass(label, a.rank, -a.degree, splitting=split)


def hom_class(f: BundleClass, g: BundleClass) -> BundleClass:
    if f.is_structure_sheaf:
        return g
    if f == g and f.rank == 1:
        return structure_sheaf()
    out = tensor_class(dual_class(f), g)
    if g.is_structure_sheaf:
        return out
    return replace(out, label=f"Hom({f.label},{g.label})")


def ext_groups(c: CurveModel, f: BundleClass, g: BundleClass, policy: CohPolicy = CohPolicy.STRICT) -> GradedDim:
    """``Ext^*(F, G) = H^*(Hom(F, G))`` for vector bundles on a curve."""
    return cohomology(c, hom_class(f, g), policy)


def ext_power_class(f: BundleClass, k: int) -> BundleClass:
    if not 1 <= k <= f.rank:
        raise OutOfRange(f"wedge power {k} outside [1, {f.rank}] for {f.label!r}")
    if k == 1:
        return f
    split = None
    if f.line_degrees is not None and comb(f.rank, k) > 1:
        split = tuple(sum(s) for s in combinations(f.line_degrees, k))
    return BundleClass(
        label=f"L{k}({f.label})",
        rank=comb(f.rank, k),
        degree=comb(f.rank - 1, k - 1) * f.degree,
        splitting=split,
    )


def sym_power_class(f: BundleClass, k: int) -> BundleClass:
    if k < 0:
        raise OutOfRange(f"symmetric power {k} must be non-negative")
    if k == 0:
        return structure_sheaf()
    if k == 1:
        return f
    rank = comb(f.rank + k - 1, k)
    split = None
    if f.line_degrees is not None and rank > 1:
        split = tuple(sum(s) for s in combinations_with_replacement(f.line_degrees, k))
    return BundleClass(
        label=f"S{k}({f.label})",
        rank=rank,
        degree=comb(f.rank + k - 1, k - 1) * f.degree,
        splitting=split,
    )
