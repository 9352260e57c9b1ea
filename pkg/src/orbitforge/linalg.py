"""Exact sparse linear algebra: rank/kernel/solve over fields, Smith normal
form over ZZ with transformation certificates, and saturated-lattice helpers.

Everything is exact; results verify by substitution.  Matrices are stored
sparsely with deterministic (sorted) iteration order so downstream output is
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import Ring, ZZ, QQ, format_rational


class SparseMatrix:
    """Immutable sparse matrix over an exact ring.

    Entries are stored in a dict ``(row, col) -> scalar`` holding only the
    nonzero coefficients.
    """

    __slots__ = ("nrows", "ncols", "ring", "entries")

    def __init__(self, nrows, ncols, ring: Ring, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.ring = ring
        cleaned = {}
        if entries:
            for (r, c), v in entries.items():
                v = ring.coerce(v)
                if v != 0:
                    if not (0 <= r < nrows and 0 <= c < ncols):
                        raise IndexError(f"entry ({r},{c}) out of bounds")
                    cleaned[(r, c)] = v
        self.entries = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dense(cls, rows, ring: Ring) -> "SparseMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v != 0:
                    entries[(i, j)] = v
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, ring, entries)

    @classmethod
    def identity(cls, n, ring: Ring) -> "SparseMatrix":
        return cls(n, n, ring, {(i, i): ring.one() for i in range(n)})

    @classmethod
    def zeros(cls, nrows, ncols, ring: Ring) -> "SparseMatrix":
        return cls(nrows, ncols, ring, {})

    # -- basics ------------------------------------------------------------

    def __getitem__(self, rc):
        return self.entries.get(rc, self.ring.zero())

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(sorted(self.entries.items()))))

    def is_zero(self) -> bool:
        return not self.entries

    def to_dense(self):
        rows = [[self.ring.zero()] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def items(self):
        """Deterministic iteration over nonzero entries."""
        return sorted(self.entries.items())

    def change_ring(self, ring: Ring) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, ring, dict(self.entries))

    def __add__(self, other):
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = self.ring.add(ent.get(k, 0), v)
        return SparseMatrix(self.nrows, self.ncols, self.ring, ent)

    def __sub__(self, other):
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = self.ring.sub(ent.get(k, 0), v)
        return SparseMatrix(self.nrows, self.ncols, self.ring, ent)

    def __neg__(self):
        return SparseMatrix(
            self.nrows, self.ncols, self.ring,
            {k: self.ring.neg(v) for k, v in self.entries.items()},
        )

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(
            self.nrows, self.ncols, self.ring,
            {k: self.ring.mul(v, c) for k, v in self.entries.items()},
        )

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        ent = {}
        ring = self.ring
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                ent[key] = ring.add(ent.get(key, 0), ring.mul(a, b))
        return SparseMatrix(self.nrows, other.ncols, ring, ent)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ncols, self.nrows, self.ring,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def apply(self, vec):
        """Matrix times dense tuple vector."""
        out = [self.ring.zero()] * self.nrows
        for (r, c), v in self.entries.items():
            if vec[c] != 0:
                out[r] = self.ring.add(out[r], self.ring.mul(v, vec[c]))
        return tuple(out)

    def trace(self):
        t = self.ring.zero()
        for (r, c), v in self.entries.items():
            if r == c:
                t = self.ring.add(t, v)
        return t

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "ring": str(self.ring),
            "entries": [[r, c, format_rational(v)] for (r, c), v in self.items()],
        }

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols} over {self.ring}, {len(self.entries)} nonzero)"


def commutator(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return (a @ b) - (b @ a)


def matrix_power_rank_sequence(m: SparseMatrix, ring: Ring = QQ):
    """Ranks of m, m^2, ... until zero; m must be nilpotent."""
    ranks = []
    cur = m.change_ring(ring)
    while not cur.is_zero():
        ranks.append(rank_kernel(cur)[0])
        if len(ranks) > m.nrows:
            raise ValueError("matrix is not nilpotent")
        cur = cur @ m.change_ring(ring)
    return ranks


# -- field elimination -----------------------------------------------------


def _eliminate(rows, ring: Ring):
    """In-place row echelon over a field; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.div(ring.one(), rows[r][c])
        if rows[r][c] != ring.one():
            rows[r] = [ring.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank_kernel(m: SparseMatrix):
    """Rank and a kernel basis (list of dense tuple vectors) over a field.

    Raises on ZZ input: integer matrices go through smith_normal_form.
    """
    if not m.ring.is_field:
        raise ValueError("rank_kernel requires a field; use smith_normal_form over ZZ")
    ring = m.ring
    rows = m.to_dense()
    pivots = _eliminate(rows, ring)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    kernel = []
    for fc in free:
        vec = [ring.zero()] * m.ncols
        vec[fc] = ring.one()
        for r, pc in enumerate(pivots):
            vec[pc] = ring.neg(rows[r][fc])
        kernel.append(tuple(vec))
    for vec in kernel:
        if any(v != 0 for v in m.apply(vec)):
            raise AssertionError("kernel vector fails exact substitution check")
    return rank, kernel


def rank_of_vectors(vectors, ring: Ring) -> int:
    if not vectors:
        return 0
    rows = [[ring.coerce(x) for x in v] for v in vectors]
    return len(_eliminate(rows, ring))


def solve(m: SparseMatrix, b):
    """One exact solution x of m x = b over a field, or None."""
    if not m.ring.is_field:
        raise ValueError("solve requires a field")
    ring = m.ring
    rows = m.to_dense()
    for i in range(m.nrows):
        rows[i].append(ring.coerce(b[i]))
    pivots = _eliminate(rows, ring)
    # inconsistent iff a pivot lands in the appended column
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ring.zero()] * m.ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][m.ncols]
    sol = tuple(x)
    out = m.apply(sol)
    if any(ring.sub(out[i], ring.coerce(b[i])) != 0 for i in range(m.nrows)):
        raise AssertionError("solve result fails exact substitution check")
    return sol


class VectorSpan:
    """Echelonised span of dense vectors over a field, supporting membership,
    reduction and incremental growth."""

    def __init__(self, ring: Ring, dim: int):
        self.ring = ring
        self.dim = dim
        self.rows = []   # echelon rows
        self.pivots = []  # pivot column per row

    def reduce(self, vec):
        ring = self.ring
        v = [ring.coerce(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [ring.sub(x, ring.mul(f, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert vec; True if it enlarged the span."""
        ring = self.ring
        v = self.reduce(vec)
        for p in range(self.dim):
            if v[p] != 0:
                inv = ring.div(ring.one(), v[p])
                v = [ring.mul(inv, x) for x in v]
                # back-reduce existing rows
                for i, row in enumerate(self.rows):
                    if row[p] != 0:
                        f = row[p]
                        self.rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(row, v)]
                idx = 0
                while idx < len(self.pivots) and self.pivots[idx] < p:
                    idx += 1
                self.rows.insert(idx, v)
                self.pivots.insert(idx, p)
                return True
        return False

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


def span_intersection(vecs_a, vecs_b, ring: Ring):
    """Basis of span(vecs_a) ∩ span(vecs_b) over a field."""
    if not vecs_a or not vecs_b:
        return []
    dim = len(vecs_a[0])
    na = len(vecs_a)
    cols = {}
    for j, v in enumerate(vecs_a):
        for i, x in enumerate(v):
            if x != 0:
                cols[(i, j)] = x
    for j, v in enumerate(vecs_b):
        for i, x in enumerate(v):
            if x != 0:
                cols[(i, na + j)] = ring.neg(ring.coerce(x))
    m = SparseMatrix(dim, na + len(vecs_b), ring, cols)
    _, ker = rank_kernel(m)
    out = []
    span = VectorSpan(ring, dim)
    for kv in ker:
        vec = [ring.zero()] * dim
        for j in range(na):
            if kv[j] != 0:
                for i, x in enumerate(vecs_a[j]):
                    vec[i] = ring.add(vec[i], ring.mul(kv[j], ring.coerce(x)))
        if span.add(vec):
            out.append(tuple(vec))
    return out


# -- Smith normal form over ZZ ----------------------------------------------


@dataclass
class SNFResult:
    divisors: list        # length min(m,n); nonnegative; d_i | d_{i+1}
    left: SparseMatrix    # U, unimodular m x m
    right: SparseMatrix   # V, unimodular n x n
    left_inv: SparseMatrix
    right_inv: SparseMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d != 0)


def smith_normal_form(m: SparseMatrix) -> SNFResult:
    """Smith normal form U m V = D over ZZ, with certificates verified."""
    if m.ring.kind != "ZZ":
        raise ValueError("smith_normal_form requires integer entries")
    a = [[int(v) for v in row] for row in m.to_dense()]
    nr, nc = m.nrows, m.ncols
    U = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    Uinv = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    V = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
    Vinv = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in range(nr):
            Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def row_add(i, j, q):
        # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        U[i] = [x + q * y for x, y in zip(U[i], U[j])]
        for r in range(nr):
            Uinv[r][j] -= q * Uinv[r][i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in range(nr):
            Uinv[r][i] = -Uinv[r][i]

    def col_swap(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(nc):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(i, j, q):
        # col_i += q * col_j
        for r in range(nr):
            a[r][i] += q * a[r][j]
        for r in range(nc):
            V[r][i] += q * V[r][j]
        Vinv[j] = [x - q * y for x, y in zip(Vinv[j], Vinv[i])]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # pivot: minimal absolute value nonzero in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the whole trailing block for the chain
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1

    divisors = [a[i][i] for i in range(limit)]
    for i in range(len(divisors) - 1):
        if divisors[i + 1] % max(divisors[i], 1) != 0 and divisors[i] != 0:
            raise AssertionError("divisibility chain violated")
    res = SNFResult(
        divisors,
        SparseMatrix.from_dense(U, ZZ),
        SparseMatrix.from_dense(V, ZZ),
        SparseMatrix.from_dense(Uinv, ZZ),
        SparseMatrix.from_dense(Vinv, ZZ),
    )
    _verify_snf(m, res)
    return res


def _verify_snf(m: SparseMatrix, res: SNFResult):
    d = res.left @ m @ res.right
    expect = {}
    for i, v in enumerate(res.divisors):
        if v != 0:
            expect[(i, i)] = v
    if d.entries != expect:
        raise AssertionError("SNF certificates fail to recompose the input")
    if (res.left @ res.left_inv) != SparseMatrix.identity(m.nrows, ZZ):
        raise AssertionError("left certificate is not invertible")
    if (res.right @ res.right_inv) != SparseMatrix.identity(m.ncols, ZZ):
        raise AssertionError("right certificate is not invertible")


def r_saturated(m: SparseMatrix) -> bool:
    """True iff every nonzero elementary divisor is a power of 2 (a unit of
    R = Z[1/2]), i.e. the image lattice is a direct summand over R."""
    for d in smith_normal_form(m).divisors:
        if d == 0:
            continue
        while d % 2 == 0:
            d //= 2
        if d != 1:
            return False
    return True


def integer_kernel_basis(m: SparseMatrix):
    """Basis (list of int tuple vectors) of the saturated ZZ-kernel lattice."""
    if m.ring.kind != "ZZ":
        raise ValueError("integer_kernel_basis requires integer entries")
    res = smith_normal_form(m)
    rank = res.rank
    vd = res.right.to_dense()
    out = []
    for j in range(rank, m.ncols):
        out.append(tuple(int(vd[i][j]) for i in range(m.ncols)))
    return out


def complete_saturated_basis(vectors, dim):
    """Complete rows spanning a saturated sublattice of ZZ^dim to a basis of
    ZZ^dim; returns the list of completion vectors."""
    if not vectors:
        return [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    b = SparseMatrix.from_dense([list(v) for v in vectors], ZZ)
    res = smith_normal_form(b)
    for d in res.divisors:
        if d not in (0, 1):
            raise ValueError("sublattice is not saturated over ZZ")
    k = res.rank
    if k != len(vectors):
        raise ValueError("input vectors are not linearly independent")
    vinv = res.right_inv.to_dense()  # rows of V^{-1}
    return [tuple(int(x) for x in vinv[i]) for i in range(k, dim)]
