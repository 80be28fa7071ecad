"""Punctual schemes on a curve inside a surface, as staircase ideals.

The degeneration ledger tracks two families of punctual schemes supported on
the distinguished curve: ordinary m-fold points and m-fold points carrying n
extra tangency conditions aligned with the curve.  Locally the curve is the
axis y = 0 and each scheme is a monomial ideal in k[x, y] whose staircase is
determined by its column heights (the minimal x-power present at each
y-power).  Two operations drive the ledger:

* restriction to the curve, the colength of I + (y), which is how many
  conditions the scheme imposes on sections of a line bundle on the curve;
* the residual after removing the curve once, the quotient I : y.

Both are computed here by explicit staircase arithmetic; the closed-form
rules used by the ledger are exported alongside so the test suite can check
they agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dims import delta_degree, fat_degree

__all__ = [
    "FatPoint",
    "DeltaAligned",
    "OnCurveScheme",
    "StaircaseIdeal",
    "fat_ideal",
    "delta_ideal",
    "scheme_ideal",
    "scheme_degree",
    "recognize_scheme",
    "staircase_restrict",
    "staircase_colon",
    "restrict_rule",
    "colon_rule",
]


@dataclass(frozen=True)
class FatPoint:
    """An ordinary point of multiplicity m on the curve."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.m}")

    def __str__(self) -> str:
        return f"Fat({self.m})"


@dataclass(frozen=True)
class DeltaAligned:
    """A multiplicity-m point with n tangency conditions along the curve."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= self.m:
            raise ValueError(f"need 1 <= n <= m, got (m, n) = ({self.m}, {self.n})")

    def __str__(self) -> str:
        return f"Delta({self.m},{self.n})"


OnCurveScheme = FatPoint | DeltaAligned


@dataclass(frozen=True)
class StaircaseIdeal:
    """A monomial ideal in k[x, y] of finite colength.

    ``gens`` are the minimal generators as (x-exponent, y-exponent) pairs,
    sorted by y-exponent; they form an antichain under divisibility and
    always include a pure power of y, so the colength is finite.
    """

    gens: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.gens:
            raise ValueError("ideal needs at least one generator")
        ys = [b for _, b in self.gens]
        if ys != sorted(ys) or len(set(ys)) != len(ys):
            raise ValueError("generators must have strictly increasing y-exponents")
        xs = [a for a, _ in self.gens]
        if xs != sorted(xs, reverse=True) or len(set(xs)) != len(xs):
            raise ValueError("generators must have strictly decreasing x-exponents")
        if self.gens[-1][0] != 0:
            raise ValueError("finite colength needs a pure power of y")

    @staticmethod
    def from_heights(heights: tuple[int, ...] | list[int]) -> "StaircaseIdeal":
        """Build from column heights h_b (minimal x-power at each y-power).

        ``heights`` lists the nonzero column heights; they must be weakly
        decreasing.  Column len(heights) onward lies inside the ideal.
        """
        hs = list(heights)
        if any(h <= 0 for h in hs):
            raise ValueError("heights must be positive (trim trailing zeros)")
        if any(hs[i] < hs[i + 1] for i in range(len(hs) - 1)):
            raise ValueError("heights must be weakly decreasing")
        hs.append(0)
        gens = [(h, b) for b, h in enumerate(hs) if b == 0 or h < hs[b - 1]]
        return StaircaseIdeal(gens=tuple(gens))

    @property
    def heights(self) -> tuple[int, ...]:
        """Nonzero column heights, column 0 first."""
        out = []
        for b in range(self.gens[-1][1]):
            h = min(a for a, bb in self.gens if bb <= b)
            if h == 0:
                break
            out.append(h)
        return tuple(out)

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0, 0),)

    def contains(self, a: int, b: int) -> bool:
        """Whether the monomial x^a y^b lies in the ideal."""
        return any(ga <= a and gb <= b for ga, gb in self.gens)

    def colength(self) -> int:
        """Number of monomials outside the ideal."""
        return sum(self.heights)

    def plus_y_axis(self) -> "StaircaseIdeal":
        """Ideal sum with (y): the scheme-theoretic restriction to y = 0."""
        hs = self.heights
        if not hs:
            return StaircaseIdeal(gens=((0, 0),))
        return StaircaseIdeal.from_heights((hs[0],))

    def quotient_y(self) -> "StaircaseIdeal":
        """Ideal quotient I : y, the residual after removing the axis once."""
        hs = self.heights[1:]
        if not hs:
            return StaircaseIdeal(gens=((0, 0),))
        return StaircaseIdeal.from_heights(hs)


def fat_ideal(m: int) -> StaircaseIdeal:
    """The ideal (x, y)^m of an ordinary m-fold point."""
    if m < 1:
        raise ValueError(f"multiplicity must be >= 1, got {m}")
    return StaircaseIdeal.from_heights(tuple(range(m, 0, -1)))


def delta_ideal(m: int, n: int) -> StaircaseIdeal:
    """The ideal of an m-fold point with n tangency conditions along y = 0.

    Column heights: m + 1 - b for the first n columns, then m - b.
    """
    if not 1 <= n <= m:
        raise ValueError(f"need 1 <= n <= m, got (m, n) = ({m}, {n})")
    heights = [m + 1 - b for b in range(n)] + [m - b for b in range(n, m)]
    return StaircaseIdeal.from_heights(tuple(heights))


def scheme_ideal(scheme: OnCurveScheme) -> StaircaseIdeal:
    if isinstance(scheme, FatPoint):
        return fat_ideal(scheme.m)
    return delta_ideal(scheme.m, scheme.n)


def scheme_degree(scheme: OnCurveScheme) -> int:
    """Length of the punctual scheme (its number of conditions)."""
    if isinstance(scheme, FatPoint):
        return fat_degree(scheme.m)
    return delta_degree(scheme.m, scheme.n)


def recognize_scheme(ideal: StaircaseIdeal) -> OnCurveScheme | None:
    """The scheme whose ideal this is; None for the unit ideal.

    Raises if the staircase is not of fat-point or aligned-tangency shape.
    """
    if ideal.is_unit:
        return None
    hs = ideal.heights
    m = len(hs)
    if all(hs[b] == m - b for b in range(m)):
        return FatPoint(m)
    if hs[0] == m + 1:
        n = 0
        while n < m and hs[n] == m + 1 - n:
            n += 1
        if all(hs[b] == m - b for b in range(n, m)) and 1 <= n <= m:
            return DeltaAligned(m, n)
    raise ValueError(f"staircase with heights {hs} is not a ledger scheme")


def staircase_restrict(scheme: OnCurveScheme) -> int:
    """Conditions the scheme imposes on the curve: colength of I + (y)."""
    return scheme_ideal(scheme).plus_y_axis().colength()


def staircase_colon(scheme: OnCurveScheme) -> OnCurveScheme | None:
    """Residual scheme after removing the curve once: I : y."""
    return recognize_scheme(scheme_ideal(scheme).quotient_y())


def restrict_rule(scheme: OnCurveScheme) -> int:
    """Closed form for staircase_restrict: m for fat, m + 1 with tangency."""
    if isinstance(scheme, FatPoint):
        return scheme.m
    return scheme.m + 1


def colon_rule(scheme: OnCurveScheme) -> OnCurveScheme | None:
    """Closed form for staircase_colon.

    Fat(m) leaves Fat(m - 1), tangency schemes lose one multiplicity and one
    tangency condition, and multiplicity 1 leaves nothing.
    """
    if isinstance(scheme, FatPoint):
        return FatPoint(scheme.m - 1) if scheme.m > 1 else None
    if scheme.m == 1:
        return None
    if scheme.n == 1:
        return FatPoint(scheme.m - 1)
    return DeltaAligned(scheme.m - 1, scheme.n - 1)
