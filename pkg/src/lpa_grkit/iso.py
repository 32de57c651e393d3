"""Graded isomorphism decisions with certificates.

Two polycephaly algebras are graded isomorphic exactly when their heads
can be paired type by type so that each pair of order units differs by a
power of x. That is what ``decide_graded_iso`` checks, using the canonical
orbit representatives from :mod:`lpa_grkit.graded`.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .graded import canonical_head_form, x_act
from .polycephaly import HeadKind


class Verdict(str, Enum):
    ISO = "Iso"
    NOT_ISO = "NotIso"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class HeadMatch:
    """Component ``left`` of the first module corresponds to ``right`` of the
    second, and the second unit is x^shift times the first."""

    kind: HeadKind
    left: int
    right: int
    shift: int

    def to_json(self):
        return {"kind": self.kind.value, "left": self.left, "right": self.right,
                "shift": self.shift}


@dataclass(frozen=True)
class IsoVerdict:
    verdict: Verdict
    matches: tuple = ()
    reason: str = ""
    witness: int = None

    def __bool__(self):
        return self.verdict is Verdict.ISO

    def inverse(self):
        """The verdict for the swapped pair of inputs."""
        return IsoVerdict(
            self.verdict,
            tuple(sorted((HeadMatch(m.kind, m.right, m.left, -m.shift) for m in self.matches),
                         key=lambda m: m.left)),
            self.reason,
            None if self.witness is None else -self.witness,
        )

    def to_json(self):
        out = {"verdict": self.verdict.value, "reason": self.reason}
        if self.matches:
            out["permutation"] = [[m.left, m.right] for m in self.matches]
            out["matches"] = [m.to_json() for m in self.matches]
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def strip_primes_of(value, n):
    """Remove from value every prime factor it shares with n."""
    value = abs(value)
    g = gcd(value, n)
    while g > 1:
        while value % g == 0:
            value //= g
        g = gcd(value, n)
    return value


def is_prime(n):
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def power_of(ratio, n):
    """j with ratio == n**j, or None."""
    ratio = Fraction(ratio)
    if ratio <= 0:
        return None
    num, den, j = ratio.numerator, ratio.denominator, 0
    while num % n == 0:
        num //= n
        j += 1
    while den % n == 0:
        den //= n
        j -= 1
    return j if num == 1 and den == 1 else None


def unit_class(value, n):
    """Class of a positive element of Z[1/n] modulo the positive units of Z[1/n]."""
    return strip_primes_of(Fraction(value).numerator, n)


def _group_key(c):
    if c.kind is HeadKind.SINK:
        return (c.kind.value, 0)
    if c.kind is HeadKind.COMET:
        return (c.kind.value, c.unit.modulus)
    return (c.kind.value, c.unit.base)


def _shift_between(a, b):
    """s with b.unit == x^s a.unit, assuming the orbits agree."""
    if a.kind is HeadKind.SINK:
        return b.unit.top() - a.unit.top()
    if a.kind is HeadKind.COMET:
        return next(r for r in range(a.unit.modulus) if a.unit.rotate(r) == b.unit)
    return power_of(b.unit.value / a.unit.value, a.unit.base)


def decide_graded_iso(a, b):
    """Compare two graded Grothendieck groups with order units."""
    ca, cb = a.components, b.components
    groups_a, groups_b = {}, {}
    for i, c in enumerate(ca):
        groups_a.setdefault(_group_key(c), []).append(i)
    for i, c in enumerate(cb):
        groups_b.setdefault(_group_key(c), []).append(i)
    if {k: len(v) for k, v in groups_a.items()} != {k: len(v) for k, v in groups_b.items()}:
        return IsoVerdict(Verdict.NOT_ISO, reason="head types or parameters differ: "
                          f"{sorted(Counter(_group_key(c) for c in ca).items())} vs "
                          f"{sorted(Counter(_group_key(c) for c in cb).items())}")
    matches = []
    unknown = []
    for key in sorted(groups_a):
        left = sorted(groups_a[key], key=lambda i: canonical_head_form(ca[i]))
        right = sorted(groups_b[key], key=lambda i: canonical_head_form(cb[i]))
        forms_l = [canonical_head_form(ca[i]) for i in left]
        forms_r = [canonical_head_form(cb[i]) for i in right]
        if forms_l != forms_r:
            kind, param = key
            if kind == HeadKind.ROSE.value and not is_prime(param):
                cls_l = sorted(unit_class(ca[i].unit.value, param) for i in left)
                cls_r = sorted(unit_class(cb[i].unit.value, param) for i in right)
                if cls_l == cls_r:
                    unknown.append(key)
                    continue
                return IsoVerdict(Verdict.NOT_ISO, reason=f"rose units over Z[1/{param}] differ "
                                  "even modulo the units of Z[1/n]")
            return IsoVerdict(Verdict.NOT_ISO,
                              reason=f"{kind} heads (parameter {param}) have different unit orbits")
        for i, j in zip(left, right):
            matches.append(HeadMatch(ca[i].kind, i, j, _shift_between(ca[i], cb[j])))
    if unknown:
        return IsoVerdict(Verdict.UNKNOWN, reason="rose units with composite petal count differ "
                          "by a unit of Z[1/n] that is not a power of n")
    matches.sort(key=lambda m: m.left)
    return IsoVerdict(Verdict.ISO, tuple(matches), reason="units matched head by head")


def verify_certificate(a, b, verdict):
    """Recheck an Iso certificate against the two modules."""
    ms = verdict.matches
    if sorted(m.left for m in ms) != list(range(len(a.components))):
        return False
    if sorted(m.right for m in ms) != list(range(len(b.components))):
        return False
    for m in ms:
        x, y = a.components[m.left], b.components[m.right]
        if _group_key(x) != _group_key(y) or x_act(x.unit, m.shift) != y.unit:
            return False
    return True


@dataclass(frozen=True)
class ShiftVector:
    """M_k(L_n)(shifts) or the free module L_n(shifts[0]) + ... ."""

    base: int
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(s) for s in self.shifts))
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if not self.shifts:
            raise ValueError("shift list must be nonempty")

    def translate(self, c):
        return ShiftVector(self.base, tuple(s + c for s in self.shifts))


def _neg_sum(sv):
    return sum((Fraction(1, sv.base ** s) if s >= 0 else Fraction(sv.base ** -s)
                for s in sv.shifts), Fraction(0))


def decide_matrix_leavitt_iso(a, b):
    """Graded isomorphism of M_k(L_n)(lambda) and M_k'(L_n)(gamma).

    Iso exactly when n^j * sum n^(-lambda) = sum n^(-gamma) for some j.
    """
    if a.base != b.base:
        return IsoVerdict(Verdict.NOT_ISO, reason=f"different bases {a.base} and {b.base}")
    n = a.base
    ratio = _neg_sum(b) / _neg_sum(a)
    j = power_of(ratio, n)
    if j is not None:
        return IsoVerdict(Verdict.ISO, (HeadMatch(HeadKind.ROSE, 0, 0, j),),
                          reason=f"ratio {ratio} = {n}^{j}", witness=j)
    if is_prime(n):
        return IsoVerdict(Verdict.NOT_ISO, reason=f"ratio {ratio} is not a power of {n}")
    if unit_class(ratio.numerator, n) != 1 or unit_class(ratio.denominator, n) != 1:
        return IsoVerdict(Verdict.NOT_ISO,
                          reason=f"ratio {ratio} is not a unit of Z[1/{n}]")
    return IsoVerdict(Verdict.UNKNOWN, reason=f"ratio {ratio} is a unit of Z[1/{n}] "
                      f"but not a power of {n}")


def decide_free_module_iso(a, b):
    """Graded isomorphism of L_n(l_1)+...+L_n(l_k) and L_n(g_1)+...: equal sums of n^shift."""
    if a.base != b.base:
        raise ValueError(f"base mismatch: {a.base} vs {b.base}")

    def pos_sum(sv):
        return sum((Fraction(sv.base) ** s for s in sv.shifts), Fraction(0))

    sa, sb = pos_sum(a), pos_sum(b)
    if sa == sb:
        return IsoVerdict(Verdict.ISO, reason=f"both sums equal {sa}")
    return IsoVerdict(Verdict.NOT_ISO, reason=f"sums {sa} and {sb} differ")


def abrams_factorization(k, n):
    """(t, d) with k = t*d, gcd(t, n) = 1 and every prime of d dividing n."""
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 and n >= 2")
    t = strip_primes_of(k, n)
    return t, k // t

