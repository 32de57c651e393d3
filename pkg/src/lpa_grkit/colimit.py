"""The graded Grothendieck group of a sink-free graph as a direct limit.

For a graph without sinks, K0gr is the direct limit of
Z^n -> Z^n -> Z^n -> ... with every map N^t. An element is a vector at some
stage; (v, k) and (N^t v, k + 1) are the same element. Multiplication by x
sends (v, k) to (N^t v, k), and x^-1 sends (v, k) to (v, k + 1).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .graph import sinks
from .intlin import (
    IntMatrix,
    adjacency,
    cokernel,
    determinant,
    hermite_basis,
    in_image,
    k0_relation_matrix,
    rank_mod,
    stable_kernel,
)


@dataclass(frozen=True)
class ColimitElement:
    stage: int
    vector: tuple

    def __post_init__(self):
        if self.stage < 0:
            raise ValueError("stage must be nonnegative")
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))

    def __str__(self):
        return f"({','.join(map(str, self.vector))})@{self.stage}"


def transition_matrix(g):
    return adjacency(g).transpose()


def is_strongly_graded(g):
    return not sinks(g)


def _require_sink_free(g):
    if not is_strongly_graded(g):
        raise ValueError("the direct-limit description needs a graph without sinks")


def _check_dim(g, *elements):
    for a in elements:
        if len(a.vector) != len(g.vertices):
            raise ValueError(f"vector {a.vector} does not have length {len(g.vertices)}")


def advance(g, a, stage):
    """The same element written at a later stage."""
    if stage < a.stage:
        raise ValueError("can only move an element forward")
    At = transition_matrix(g)
    v = a.vector
    for _ in range(stage - a.stage):
        v = At @ v
    return ColimitElement(stage, v)


def colimit_equal(g, a, b):
    _require_sink_free(g)
    _check_dim(g, a, b)
    top = max(a.stage, b.stage)
    va, vb = advance(g, a, top).vector, advance(g, b, top).vector
    diff = tuple(x - y for x, y in zip(va, vb))
    if not any(diff):
        return True
    At = transition_matrix(g)
    sk = stable_kernel(At)
    return not any((At ** sk.index) @ diff)


def x_action_vector(g, a, k=1):
    """x^k applied to a; negative k moves the stage instead."""
    _require_sink_free(g)
    _check_dim(g, a)
    if k < 0:
        return ColimitElement(a.stage - k, a.vector)
    return ColimitElement(a.stage, (transition_matrix(g) ** k) @ a.vector)


def order_unit(g):
    """Class of the algebra itself: one copy of each vertex at stage 0."""
    return ColimitElement(0, (1,) * len(g.vertices))


def vertex_class(g, v, shift=0):
    """Class of the graded module vL(shift)."""
    e = tuple(int(w == v) for w in g.vertices)
    return x_action_vector(g, ColimitElement(0, e), shift)


def _prime_factors(n):
    n, out, p = abs(n), [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _restrict(At, basis):
    """Matrix of At on the lattice spanned by basis (columns are images)."""
    r = len(basis)
    cols = []
    for b in basis:
        target = At @ b
        cols.append(_solve_in_basis(basis, target))
    return IntMatrix(r, r, [[cols[j][i] for j in range(r)] for i in range(r)])


def _solve_in_basis(basis, target):
    # exact Gaussian elimination on the system sum c_i basis_i = target
    r, n = len(basis), len(target)
    M = [[Fraction(basis[j][i]) for j in range(r)] + [Fraction(target[i])] for i in range(n)]
    row = 0
    pivots = []
    for c in range(r):
        piv = next((i for i in range(row, n) if M[i][c]), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        M[row] = [x / M[row][c] for x in M[row]]
        for i in range(n):
            if i != row and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[row])]
        pivots.append(c)
        row += 1
    if any(M[i][r] for i in range(row, n)):
        raise ArithmeticError("vector is not in the span")
    coeffs = [Fraction(0)] * r
    for i, c in enumerate(pivots):
        coeffs[c] = M[i][r]
    if any(x.denominator != 1 for x in coeffs):
        raise ArithmeticError("lattice is not invariant")
    return [int(x) for x in coeffs]


def _localized_name(r, d):
    if r == 0:
        return "0"
    if abs(d) == 1:
        return " ⊕ ".join(["Z"] * r)
    inner = f"Z[1/{abs(d)}]"
    return inner if r == 1 else f"⊕{r} {inner}"


@dataclass(frozen=True)
class ColimitPresentation:
    """Description of lim(Z^n, N^t).

    ``nominal`` is the group printed for the ambient description
    U_m (N^t)^-m Z^n when N is nonsingular. The colimit always embeds in it.
    ``divisible_ranks[p]`` is the rank of the largest p-divisible subgroup,
    computed on the part of the system where N^t acts injectively, and
    ``exact`` says whether the colimit is isomorphic to the localized group
    ``reduced_nominal``.
    """

    size: int
    determinant: int
    stable_kernel_rank: int
    reduced_rank: int
    reduced_determinant: int
    divisible_ranks: tuple
    nominal: str
    reduced_nominal: str
    exact: bool

    @property
    def singular(self):
        return self.determinant == 0

    def __str__(self):
        lines = []
        if self.singular:
            lines.append(f"stage-vector representation only "
                         f"(stable kernel rank {self.stable_kernel_rank})")
            lines.append(f"injective part: rank {self.reduced_rank}, "
                         f"det {self.reduced_determinant}, within {self.reduced_nominal}")
        else:
            lines.append(f"{self.nominal}  (union of (N^t)^-m Z^{self.size}, det {self.determinant})")
        for p, rp in self.divisible_ranks:
            lines.append(f"{p}-divisible rank {rp} of {self.reduced_rank}")
        lines.append(("isomorphic to " if self.exact else "not isomorphic to ")
                     + self.reduced_nominal)
        return "\n".join(lines)

    def to_json(self):
        return {
            "size": self.size,
            "determinant": self.determinant,
            "stable_kernel_rank": self.stable_kernel_rank,
            "reduced_rank": self.reduced_rank,
            "reduced_determinant": self.reduced_determinant,
            "divisible_ranks": {str(p): r for p, r in self.divisible_ranks},
            "nominal": self.nominal,
            "reduced_nominal": self.reduced_nominal,
            "exact": self.exact,
        }


def colimit_presentation(g):
    _require_sink_free(g)
    At = transition_matrix(g)
    n = At.nrows
    det = determinant(At)
    sk = stable_kernel(At)
    power = At ** sk.index
    # on the image of (N^t)^m the map is injective and the limit is unchanged
    basis = hermite_basis(power.transpose().rows)
    B = _restrict(At, basis)
    r = len(basis)
    dB = determinant(B) if r else 1
    Br = B ** r if r else B
    ranks = tuple((p, r - rank_mod(Br, p)) for p in _prime_factors(dB))
    reduced_nominal = _localized_name(r, dB)
    nominal = _localized_name(n, det) if det else "stage-vector representation only"
    return ColimitPresentation(
        size=n,
        determinant=det,
        stable_kernel_rank=len(sk.basis),
        reduced_rank=r,
        reduced_determinant=dB,
        divisible_ranks=ranks,
        nominal=nominal,
        reduced_nominal=reduced_nominal,
        exact=all(rp == r for _, rp in ranks),
    )


@dataclass(frozen=True)
class BratteliLevel:
    """Matrix block sizes at one level of the Bratteli diagram.

    ``sizes[v]`` is the number of paths of length ``depth`` ending at v.
    ``frozen`` lists the sink blocks (level, vertex, size) kept from earlier
    levels.
    """

    depth: int
    sizes: dict
    frozen: tuple = ()

    @property
    def total_dimension(self):
        return sum(k * k for k in self.sizes.values()) + sum(k * k for _, _, k in self.frozen)

    def to_json(self):
        return {"depth": self.depth, "sizes": dict(self.sizes),
                "frozen": [list(f) for f in self.frozen],
                "total_dimension": self.total_dimension}


def bratteli(g, depth):
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    At = transition_matrix(g)
    sink_set = sinks(g)
    k = (1,) * len(g.vertices)
    frozen = []
    levels = []
    for m in range(depth + 1):
        levels.append(BratteliLevel(m, dict(zip(g.vertices, k)), tuple(frozen)))
        frozen += [(m, v, c) for v, c in zip(g.vertices, k) if v in sink_set and c]
        k = At @ k
    return levels


def exactness_check(g, stages=4):
    """Generator-level check of the map from the limit onto K0.

    Sends (v, k) to the class of v in coker(N^t - I) and checks that this
    respects the limit relation and kills 1 - x on standard generators.
    """
    _require_sink_free(g)
    M = k0_relation_matrix(g)
    n = len(g.vertices)
    for k in range(stages):
        for i in range(n):
            e = ColimitElement(k, tuple(int(j == i) for j in range(n)))
            nxt = advance(g, e, k + 1)
            if not in_image(M, tuple(a - b for a, b in zip(e.vector, nxt.vector))):
                return False
            xe = x_action_vector(g, e)
            if not in_image(M, tuple(a - b for a, b in zip(e.vector, xe.vector))):
                return False
    return True


def k0_target(g):
    return cokernel(k0_relation_matrix(g), len(g.vertices))


def permutation_intertwiners(At, Bt):
    """Permutations s with P_s At = Bt P_s, P_s sending basis vector i to s[i]."""
    n = At.nrows
    if Bt.shape != At.shape:
        return []
    out = []
    for s in permutations(range(n)):
        # (P At)[s[i]][s[j]] = At[i][j] must equal (Bt P)[s[i]][s[j]] = Bt[s[i]][s[j]]
        if all(At.rows[i][j] == Bt.rows[s[i]][s[j]] for i in range(n) for j in range(n)):
            out.append(s)
    return out
