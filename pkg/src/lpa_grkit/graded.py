"""Graded Grothendieck groups of polycephaly graphs.

Each head contributes one summand with an order unit built from the
lengths of the paths into the head:

* a sink gives Z[x,x^-1] with unit sum x^(-|p|),
* a comet with cycle length l gives Z^l, x acting by rotation, with unit
  the counts of path lengths modulo l,
* a rose with n petals gives Z[1/n], x acting as multiplication by n, with
  unit sum n^(-|p|).
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf

from .polycephaly import HeadKind


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c * x^e, stored as sorted (e, c) pairs with c != 0."""

    terms: tuple = ()

    def __post_init__(self):
        acc = Counter()
        for e, c in self.terms:
            acc[int(e)] += int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def from_lengths(cls, lengths):
        """sum over the lengths L of x^(-L)"""
        return cls(tuple((-L, 1) for L in lengths))

    def shift(self, k):
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def __add__(self, other):
        return LaurentPoly(self.terms + other.terms)

    def is_positive(self):
        return bool(self.terms) and all(c > 0 for _, c in self.terms)

    def top(self):
        return self.terms[-1][0]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            mono = "1" if e == 0 else ("x" if e == 1 else f"x^{e}")
            if e == 0:
                coef = str(abs(c))
            else:
                coef = "" if abs(c) == 1 else str(abs(c))
                coef += mono
            sign = "-" if c < 0 else "+"
            parts.append((sign, coef))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, coef in parts[1:]:
            out += f" {sign} {coef}"
        return out

    def to_json(self):
        return [[e, c] for e, c in self.terms]


@dataclass(frozen=True)
class ResidueVector:
    """Vector in Z^l on which x acts by (a_1,...,a_l) -> (a_l,a_1,...,a_{l-1})."""

    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("modulus must be at least 1")

    @property
    def modulus(self):
        return len(self.counts)

    @classmethod
    def from_lengths(cls, lengths, modulus):
        counts = [0] * modulus
        for L in lengths:
            counts[L % modulus] += 1
        return cls(tuple(counts))

    def rotate(self, k=1):
        k %= self.modulus
        c = self.counts
        return ResidueVector(c[len(c) - k:] + c[:len(c) - k])

    def __add__(self, other):
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        return ResidueVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def is_positive(self):
        return any(self.counts) and all(c >= 0 for c in self.counts)

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"


@dataclass(frozen=True)
class NAdicFraction:
    """An element of Z[1/n], kept as an exact fraction."""

    base: int
    value: Fraction

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        v = Fraction(self.value)
        d = v.denominator
        while d > 1:
            g = _gcd(d, self.base)
            if g == 1:
                raise ValueError(f"{v} is not in Z[1/{self.base}]")
            d //= g
        object.__setattr__(self, "value", v)

    @classmethod
    def from_lengths(cls, lengths, base):
        return cls(base, sum((Fraction(1, base ** L) for L in lengths), Fraction(0)))

    def times_power(self, k):
        return NAdicFraction(self.base, self.value * Fraction(self.base) ** k)

    def exponent_form(self):
        """(a, k) with value = a / n^k and k minimal."""
        k, v = 0, self.value
        while v.denominator != 1:
            v *= self.base
            k += 1
        return v.numerator, k

    def is_positive(self):
        return self.value > 0

    def __str__(self):
        a, k = self.exponent_form()
        if k == 0:
            return str(a)
        if k == 1:
            return f"{a}/{self.base}"
        return f"{a}/{self.base}^{k}"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class Component:
    """One summand of the graded Grothendieck group, with its order unit.

    ``vertex`` and ``lengths`` record the head the summand came from; they
    are informational and do not take part in comparisons.
    """

    kind: HeadKind
    unit: object
    vertex: str = field(default="", compare=False)
    lengths: tuple = field(default=(), compare=False)

    @property
    def group(self):
        if self.kind is HeadKind.SINK:
            return "Z[x,x^-1]"
        if self.kind is HeadKind.COMET:
            return f"Z^{self.unit.modulus} (comet)"
        return f"Z[1/{self.unit.base}]"

    def __str__(self):
        return f"{self.group} unit={self.unit}"

    def to_json(self):
        out = {"kind": self.kind.value, "group": self.group, "vertex": self.vertex,
               "text": str(self)}
        if self.kind is HeadKind.SINK:
            out["unit"] = self.unit.to_json()
        elif self.kind is HeadKind.COMET:
            out["modulus"] = self.unit.modulus
            out["unit"] = list(self.unit.counts)
        else:
            a, k = self.unit.exponent_form()
            out["base"] = self.unit.base
            out["unit"] = {"numerator": a, "exponent": k, "value": str(self.unit.value)}
        return out


@dataclass(frozen=True)
class GradedK0Module:
    components: tuple

    @property
    def unit(self):
        return tuple(c.unit for c in self.components)

    def x_act(self, element, k=1):
        if len(element) != len(self.components):
            raise ValueError("element does not match the module")
        return tuple(x_act(e, k) for e in element)

    def __str__(self):
        return "\n".join(str(c) for c in self.components) or "0"


def component_for_head(head):
    if head.kind is HeadKind.SINK:
        unit = LaurentPoly.from_lengths(head.lengths)
    elif head.kind is HeadKind.COMET:
        unit = ResidueVector.from_lengths(head.lengths, head.cycle_length)
    else:
        unit = NAdicFraction.from_lengths(head.lengths, head.petals)
    return Component(head.kind, unit, head.vertex, head.lengths)


def k0_graded_polycephaly(d):
    return GradedK0Module(tuple(component_for_head(h) for h in d.heads))


def x_act(element, k=1):
    """Apply x^k to an element of one summand (k may be negative)."""
    if isinstance(element, Component):
        return Component(element.kind, x_act(element.unit, k), element.vertex, element.lengths)
    if isinstance(element, LaurentPoly):
        return element.shift(k)
    if isinstance(element, ResidueVector):
        return element.rotate(k)
    if isinstance(element, NAdicFraction):
        return element.times_power(k)
    raise TypeError(f"no x-action on {type(element).__name__}")


def canonical_head_form(component):
    """A representative of the unit's orbit under powers of x.

    Laurent: exponents measured down from the top one, as a sorted tuple.
    Comet: the lexicographically least rotation.
    Rose: the unique integer u * n^j that n does not divide.
    """
    unit = component.unit if isinstance(component, Component) else component
    if isinstance(unit, LaurentPoly):
        if not unit.is_positive():
            raise ValueError("canonical form needs a positive unit")
        top = unit.top()
        return ("laurent", tuple(top - e for e, c in reversed(unit.terms) for _ in range(c)))
    if isinstance(unit, ResidueVector):
        return ("comet", min(unit.rotate(k).counts for k in range(unit.modulus)))
    if isinstance(unit, NAdicFraction):
        if not unit.is_positive():
            raise ValueError("canonical form needs a positive unit")
        v = unit.value
        while v.denominator != 1:
            v *= unit.base
        v = v.numerator
        while v % unit.base == 0:
            v //= unit.base
        return ("rose", unit.base, v)
    raise TypeError(f"no canonical form for {type(unit).__name__}")


def homogeneous_dim(block, lam):
    """Dimension of the degree-lam part of a graded matrix block.

    Entry (i, j) of M_n(A)(d) sits in A of degree lam + d_j - d_i. For A = K
    that is nonzero only in degree 0, for K[x^m,x^-m] in degrees divisible
    by m, and L(1,n) is infinite dimensional in every degree.
    """
    if block.kind is HeadKind.ROSE:
        return inf
    d = block.shifts
    if block.kind is HeadKind.SINK:
        return sum(1 for di in d for dj in d if lam + dj - di == 0)
    return sum(1 for di in d for dj in d if (lam + dj - di) % block.period == 0)
