"""Exact integer matrices: Smith normal form, cokernels, kernels.

Everything uses Python integers, so there is no overflow. Matrices are
immutable and carry their shape explicitly, which keeps 3x0 and 0x3
matrices distinct.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    nrows: int
    ncols: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise ValueError("entries do not match the declared shape")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m, n):
        return cls(m, n, [[0] * n for _ in range(m)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def tolist(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return IntMatrix(self.ncols, self.nrows, [list(c) for c in zip(*self.rows)]
                         if self.nrows else [[] for _ in range(self.ncols)])

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            return IntMatrix(self.nrows, other.ncols,
                             [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.nrows, self.ncols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return IntMatrix(self.nrows, self.ncols, [[k * a for a in r] for r in self.rows])

    def __pow__(self, k):
        if self.nrows != self.ncols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        result, base = IntMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def select_columns(self, keep):
        keep = list(keep)
        return IntMatrix(self.nrows, len(keep), [[r[j] for j in keep] for r in self.rows])

    def is_diagonal(self):
        return all(self.rows[i][j] == 0 for i in range(self.nrows)
                   for j in range(self.ncols) if i != j)

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(min(self.shape)))


def determinant(A):
    """Fraction-free Bareiss elimination."""
    if A.nrows != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = A.nrows
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def rank(A):
    """Rank over the rationals."""
    M = A.tolist()
    r = 0
    for c in range(A.ncols):
        piv = next((i for i in range(r, A.nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, A.nrows):
            if M[i][c]:
                f, g = M[i][c], M[r][c]
                M[i] = [g * a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def rank_mod(A, p):
    """Rank over the field with p elements, p prime."""
    M = [[a % p for a in row] for row in A.rows]
    r = 0
    for c in range(A.ncols):
        piv = next((i for i in range(r, A.nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [a * inv % p for a in M[r]]
        for i in range(A.nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    return r


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == S with U, V unimodular and S in Smith form."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self):
        return self.S.diagonal()

    @property
    def rank(self):
        return sum(1 for d in self.S.diagonal() if d)


def smith_normal_form(A):
    """Smith normal form by row and column operations.

    The pivot at each step is the entry of least absolute value in the
    remaining block, which keeps intermediate numbers small in practice.
    """
    m, n = A.shape
    S = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
                    dirty |= S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
                    dirty |= S[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            # pull a non-multiple into the pivot row; the next pass shrinks the pivot
            add_row(bad[0], t, 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(IntMatrix(m, n, S), IntMatrix(m, m, U), IntMatrix(n, n, V))


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank plus cyclic torsion Z/d1 + Z/d2 + ... with d1 | d2 | ..."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        tor = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tor)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in tor):
            raise ValueError(f"torsion entries must be at least 2, got {tor}")
        if any(b % a for a, b in zip(tor, tor[1:])):
            raise ValueError(f"torsion {tor} is not a divisibility chain")

    @classmethod
    def from_cyclic(cls, free_rank, orders):
        """Normalize a direct sum of cyclic groups Z/k (k = 0 meaning Z)."""
        orders = [abs(k) for k in orders]
        free = free_rank + orders.count(0)
        finite = [k for k in orders if k]
        if not finite:
            return cls(free)
        diag = IntMatrix(len(finite), len(finite),
                         [[k if i == j else 0 for j in range(len(finite))]
                          for i, k in enumerate(finite)])
        return cls(free, tuple(d for d in smith_normal_form(diag).invariant_factors if d > 1))

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        if self.is_trivial():
            return "0 (trivial group)"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts)

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def cokernel(A, target_rank=None):
    """Z^target_rank / image(A) in invariant-factor form."""
    if target_rank is None:
        target_rank = A.nrows
    if A.nrows != target_rank:
        raise ValueError(f"matrix has {A.nrows} rows, expected {target_rank}")
    diag = smith_normal_form(A).invariant_factors
    nonzero = [d for d in diag if d]
    return FinAbGroup(target_rank - len(nonzero), tuple(d for d in nonzero if d > 1))


def in_image(A, u):
    """Whether the integer vector u lies in A(Z^ncols)."""
    snf = smith_normal_form(A)
    w = snf.U @ tuple(u)
    diag = snf.invariant_factors
    for i, x in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if (d == 0 and x != 0) or (d and x % d):
            return False
    return True


def hermite_basis(vectors):
    """Canonical row-echelon basis of the lattice spanned by the vectors.

    Pivots are positive and entries above a pivot are reduced into
    [0, pivot).
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    for k, piv in enumerate(out):
        c = next(j for j, a in enumerate(piv) if a)
        for i in range(k):
            q = out[i][c] // piv[c]
            if q:
                out[i] = [a - q * b for a, b in zip(out[i], piv)]
    return [tuple(r) for r in out]


def kernel_basis(A):
    """Z-basis of {x : A x = 0}, in canonical echelon form."""
    snf = smith_normal_form(A)
    r = snf.rank
    V = snf.V
    return hermite_basis([tuple(V.rows[i][j] for i in range(V.nrows)) for j in range(r, A.ncols)])


@dataclass(frozen=True)
class StableKernel:
    """Kernel of A^index, where the kernels of A^m stop growing."""

    basis: tuple
    index: int


def stable_kernel(A):
    if A.nrows != A.ncols:
        raise ValueError("stable kernel needs a square matrix")
    m, power = 1, A
    dim = A.ncols - rank(power)
    while True:
        nxt = power @ A
        dim_next = A.ncols - rank(nxt)
        if dim_next == dim:
            break
        m, power, dim = m + 1, nxt, dim_next
    return StableKernel(tuple(kernel_basis(power)) if dim else (), m)


def invariant_factors_by_minors(A):
    """Invariant factors from gcds of k x k minors.

    Exponentially slow but shares no code with the elimination routine,
    so it serves as an independent check on small matrices.
    """
    m, n = A.shape
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                sub = IntMatrix(k, k, [[A.rows[i][j] for j in cs] for i in rs])
                g = gcd(g, determinant(sub))
        if g == 0:
            break
        divisors.append(g)
    return tuple(divisors[k] // divisors[k - 1] for k in range(1, len(divisors)))


def adjacency(g):
    """N with N[i][j] the number of edges from vertex i to vertex j."""
    n = len(g.vertices)
    idx = g.index
    rows = [[0] * n for _ in range(n)]
    for e in g.edges:
        rows[idx[e.source]][idx[e.range]] += 1
    return IntMatrix(n, n, rows)


def k0_relation_matrix(g):
    """N^t - I with the columns belonging to sinks removed.

    The cokernel of this matrix is the Grothendieck group of the Leavitt
    path algebra. Rows stay in declaration order, which does not affect
    the cokernel.
    """
    n = len(g.vertices)
    full = adjacency(g).transpose() - IntMatrix.identity(n)
    return full.select_columns(j for j, v in enumerate(g.vertices) if g.out_edges(v))
