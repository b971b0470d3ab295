"""Finitely supported graded dimensions and their super-symmetric calculus.

A :class:`GradedDim` is the Poincaré polynomial of a finite-dimensional
graded vector space: a map from integer degree to non-negative dimension.
Odd degrees are treated with the Koszul sign rule, so inside ``S^k`` odd
elements anticommute and inside ``∧^k`` they commute.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from math import factorial
from typing import Literal

__all__ = [
    "GradedDim",
    "ZERO",
    "ONE",
    "direct_sum",
    "tensor",
    "dual",
    "shift",
    "sym_power",
    "ext_power",
    "evaluate",
    "even_part",
    "odd_part",
    "gen_binomial",
    "poincare_string",
]


class GradedDim(Mapping):
    """Immutable canonical map ``degree -> dimension`` with no zero entries."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        clean: dict[int, int] = {}
        for deg, dim in items:
            if isinstance(deg, bool) or not isinstance(deg, int):
                raise TypeError(f"degree must be an int, got {deg!r}")
            if isinstance(dim, bool) or not isinstance(dim, int):
                raise TypeError(f"dimension must be an int, got {dim!r}")
            clean[deg] = clean.get(deg, 0) + dim
        for deg, dim in clean.items():
            if dim < 0:
                raise ValueError(f"negative dimension {dim} in degree {deg}")
        self._coeffs = {d: clean[d] for d in sorted(clean) if clean[d]}
        self._hash = None

    def __getitem__(self, degree: int) -> int:
        return self._coeffs[degree]

    def get(self, degree, default=0):
        return self._coeffs.get(degree, default)

    def __iter__(self) -> Iterator[int]:
        return iter(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedDim):
            return self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self._coeffs == {d: v for d, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{d}: {v}" for d, v in self._coeffs.items())
        return f"GradedDim({{{inner}}})"

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: GradedDim) -> GradedDim:
        return direct_sum(self, other)

    def __mul__(self, other: GradedDim) -> GradedDim:
        return tensor(self, other)

    def degrees(self) -> tuple[int, ...]:
        return tuple(self._coeffs)

    @property
    def euler(self) -> int:
        return evaluate(self, "euler")

    @property
    def total(self) -> int:
        return evaluate(self, "total")

    def to_json(self) -> dict[str, int]:
        """Degrees become decimal-string keys so negative degrees stay unambiguous."""
        return {str(d): v for d, v in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> GradedDim:
        out = {}
        for key, val in data.items():
            try:
                deg = int(key)
            except (TypeError, ValueError):
                raise ValueError(f"degree key {key!r} is not an integer") from None
            if str(deg) != str(key):
                raise ValueError(f"degree key {key!r} is not in canonical decimal form")
            if isinstance(val, bool) or not isinstance(val, int):
                raise ValueError(f"dimension for degree {key!r} must be an integer")
            if deg in out:
                raise ValueError(f"duplicate degree {deg}")
            out[deg] = val
        return cls(out)

    @classmethod
    def concentrated(cls, degree: int, dim: int = 1) -> GradedDim:
        return cls({degree: dim})


ZERO = GradedDim()
ONE = GradedDim({0: 1})


def direct_sum(a: GradedDim, b: GradedDim) -> GradedDim:
    out = dict(a)
    for d, v in b.items():
        out[d] = out.get(d, 0) + v
    return GradedDim(out)


def tensor(a: GradedDim, b: GradedDim) -> GradedDim:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return GradedDim(out)


def dual(a: GradedDim) -> GradedDim:
    return GradedDim({-d: v for d, v in a.items()})


def shift(a: GradedDim, n: int) -> GradedDim:
    """``a[n]``, with ``shift(a, n)[d] == a[d + n]``.

    So ``shift(a, -m)`` moves a class sitting in degree 0 up to degree ``m``.
    """
    return GradedDim({d - n: v for d, v in a.items()})


def even_part(a: GradedDim) -> GradedDim:
    return GradedDim({d: v for d, v in a.items() if d % 2 == 0})


def odd_part(a: GradedDim) -> GradedDim:
    return GradedDim({d: v for d, v in a.items() if d % 2})


# Truncated series in t whose coefficients are graded dimensions in q,
# stored as a list indexed by the power of t.
_Series = list


def _series_one(k: int) -> _Series:
    return [{0: 1}] + [{} for _ in range(k)]


def _mul_geometric(series: _Series, deg: int, k: int) -> _Series:
    """Multiply by ``1/(1 - t q^deg)`` truncated at ``t^k``."""
    out = [dict(c) for c in series]
    # running sum: out[j] = series[j] + q^deg * out[j-1]
    for j in range(1, k + 1):
        for d, v in out[j - 1].items():
            out[j][d + deg] = out[j].get(d + deg, 0) + v
    return out


def _mul_linear(series: _Series, deg: int, k: int) -> _Series:
    """Multiply by ``1 + t q^deg`` truncated at ``t^k``."""
    out = [dict(c) for c in series]
    for j in range(k, 0, -1):
        for d, v in series[j - 1].items():
            out[j][d + deg] = out[j].get(d + deg, 0) + v
    return out


def _power_coefficient(a: GradedDim, k: int, *, geometric_parity: int) -> GradedDim:
    if k < 0:
        return ZERO
    series = _series_one(k)
    for deg, mult in a.items():
        step = _mul_geometric if deg % 2 == geometric_parity else _mul_linear
        for _ in range(mult):
            series = step(series, deg, k)
    return GradedDim(series[k])


def sym_power(a: GradedDim, k: int) -> GradedDim:
    """Graded symmetric power: polynomial on even degrees, exterior on odd ones.

    Coefficient of ``t^k`` in
    ``prod_{d even} (1 - t q^d)^(-a[d]) * prod_{d odd} (1 + t q^d)^(a[d])``.
    Negative ``k`` gives zero.
    """
    return _power_coefficient(a, k, geometric_parity=0)


def ext_power(a: GradedDim, k: int) -> GradedDim:
    """Graded exterior power: exterior on even degrees, polynomial on odd ones.

    A wedge power with negative exponent is zero.
    """
    return _power_coefficient(a, k, geometric_parity=1)


def evaluate(a: GradedDim, at: Literal["euler", "total"]) -> int:
    if at == "euler":
        return sum(v if d % 2 == 0 else -v for d, v in a.items())
    if at == "total":
        return sum(a.values())
    raise ValueError(f"unknown evaluation point {at!r}; expected 'euler' or 'total'")


def gen_binomial(x: int, k: int) -> int:
    """``x (x-1) ... (x-k+1) / k!`` for any integer ``x``; zero for ``k < 0``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // factorial(k)


def poincare_string(a: GradedDim, var: str = "q") -> str:
    """Render as a polynomial in ``var``, e.g. ``1 + 2q + q^2``."""
    if not a:
        return "0"
    terms = []
    for d, v in a.items():
        if d == 0:
            terms.append(str(v))
            continue
        mono = var if d == 1 else (f"{var}^{d}" if 0 <= d < 10 else f"{var}^{{{d}}}")
        terms.append(mono if v == 1 else f"{v}{mono}")
    return " + ".join(terms)
