"""Centralisers of nilpotent elements: the graded basis of g^e, the
zeta-system spanning set with its sign table and bracket law, derived
subalgebras and the degree-(0,1) generation property.

The zeta system is realised on the Springer-Steinberg model: e in Jordan
normal form and the bilinear form prescribed block-anti-diagonally with unit
corners, which is where the relation table is integral.  Its dimensions are
cross-checked against the pyramid realisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rings import QQ, ZZ
from .linalg import SparseMatrix, commutator, rank_kernel, rank_of_vectors, VectorSpan
from .partitions import Partition, pairing_involution, check_involution
from .orbits import NilpotentRep, dynkin_grading, centralizer_dim_formula


# -- the centraliser in the pyramid realisation -------------------------------


@dataclass
class CentralizerBasis:
    rep: NilpotentRep
    vectors: list    # coordinate tuples over the Chevalley basis
    degrees: list    # Dynkin degree of each vector

    @property
    def dim(self):
        return len(self.vectors)

    def graded_dims(self) -> dict:
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def layer(self, d):
        return [v for v, dd in zip(self.vectors, self.degrees) if dd == d]


def compute_centralizer(rep: NilpotentRep) -> CentralizerBasis:
    gr = dynkin_grading(rep)
    alg = rep.algebra
    vectors = []
    degrees = []
    adc = {}
    # kernel degree by degree keeps the basis graded
    for d in sorted(gr.layers):
        idxs = gr.layers[d]
        cols = {}
        for jj, k in enumerate(idxs):
            col = alg.coordinates(commutator(rep.e, alg.basis[k]))
            for i, v in enumerate(col):
                if v != 0:
                    cols[(i, jj)] = v
        m = SparseMatrix(alg.dim, len(idxs), QQ, cols)
        _, ker = rank_kernel(m)
        for kv in ker:
            full = [Fraction(0)] * alg.dim
            for jj, k in enumerate(idxs):
                full[k] = kv[jj]
            vectors.append(tuple(full))
            degrees.append(d)
    cb = CentralizerBasis(rep, vectors, degrees)
    if cb.dim != centralizer_dim_formula(rep.lam, rep.eps):
        raise AssertionError(
            f"centraliser dimension {cb.dim} disagrees with the closed formula "
            f"{centralizer_dim_formula(rep.lam, rep.eps)} for {rep.lam}"
        )
    if any(d < 0 for d in cb.degrees):
        raise AssertionError("grading is not good: g^e has negative degrees")
    return cb


# -- the zeta system on the Springer-Steinberg model ---------------------------


def _pi(i, j):
    return 1 if i <= j else -1


@dataclass
class ZetaSystem:
    lam: Partition
    eps: int
    inv: tuple                 # involution, 0-indexed
    starts: tuple              # block offsets in k^N
    e: SparseMatrix            # Jordan normal form, over ZZ
    form: SparseMatrix         # block anti-diagonal Gram, over ZZ
    weight: tuple              # cocharacter weight of each coordinate
    zetas: dict = field(default_factory=dict)   # (i, j, s) -> SparseMatrix
    sign: dict = field(default_factory=dict)    # (i, j, s) -> epsilon_{i,j,s}

    def tuples(self):
        return sorted(self.zetas)

    def degree(self, key) -> int:
        i, j, s = key
        return self.lam.parts[i] + self.lam.parts[j] - 2 * s - 2


def _xi_matrix(lam: Partition, starts, a: int, b: int, t: int) -> SparseMatrix:
    """xi_a^{b,t}: e^k w_a -> e^{k+t} w_b (zero when the target exceeds the
    block); zero matrix for t outside [0, lam_b)."""
    N = lam.size
    ent = {}
    if 0 <= t < lam.parts[b]:
        for k in range(lam.parts[a]):
            if k + t < lam.parts[b]:
                ent[(starts[b] + k + t, starts[a] + k)] = 1
    return SparseMatrix(N, N, ZZ, ent)


def build_zeta_system(lam: Partition, eps: int, inv: tuple | None = None) -> ZetaSystem:
    if inv is None:
        inv = pairing_involution(lam, eps)
    check_involution(lam, eps, inv)
    n = lam.n
    starts = []
    acc = 0
    for p in lam.parts:
        starts.append(acc)
        acc += p
    starts = tuple(starts)
    N = lam.size

    ent = {}
    for i in range(n):
        for k in range(lam.parts[i] - 1):
            ent[(starts[i] + k + 1, starts[i] + k)] = 1
    e = SparseMatrix(N, N, ZZ, ent)

    gram = {}
    for i in range(n):
        ip = inv[i]
        for k in range(lam.parts[i]):
            gram[(starts[i] + k, starts[ip] + lam.parts[i] - 1 - k)] = (-1) ** k * _pi(i, ip)
    form = SparseMatrix(N, N, ZZ, gram)

    weight = [0] * N
    for i in range(n):
        for k in range(lam.parts[i]):
            weight[starts[i] + k] = 2 * k + 1 - lam.parts[i]

    zs = ZetaSystem(lam, eps, inv, starts, e, form, tuple(weight))

    for i in range(n):
        for j in range(n):
            for s in range(min(lam.parts[i], lam.parts[j])):
                sgn = _pi(i, inv[i]) * _pi(j, inv[j]) * (-1) ** (lam.parts[j] - s)
                xi1 = _xi_matrix(lam, starts, i, j, lam.parts[j] - 1 - s)
                xi2 = _xi_matrix(lam, starts, inv[j], inv[i], lam.parts[i] - 1 - s)
                zs.zetas[(i, j, s)] = xi1 + xi2.scale(sgn)
                zs.sign[(i, j, s)] = sgn
    return zs


def ss_sigma(zs: ZetaSystem, x: SparseMatrix) -> SparseMatrix:
    """sigma for the Springer-Steinberg form; the Gram matrix is unimodular
    so this stays integral."""
    # form^{-1}: (J^{-1})_{ab} solves J * J^{-1} = 1; J is block anti-diagonal
    # with +-1 entries, hence its inverse is its transpose up to signs; invert
    # once and cache on the instance.
    jinv = getattr(zs, "_jinv", None)
    if jinv is None:
        n = zs.e.nrows
        dense = zs.form.change_ring(QQ).to_dense()
        aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i, row in enumerate(dense)]
        from .linalg import _eliminate
        pivots = _eliminate(aug, QQ)
        if len(pivots) != n:
            raise AssertionError("Springer-Steinberg form is degenerate")
        inv_rows = [row[n:] for row in aug]
        jinv = SparseMatrix.from_dense(inv_rows, QQ)
        zs._jinv = jinv
    return -(jinv @ x.transpose().change_ring(QQ) @ zs.form.change_ring(QQ))


def verify_zeta_system(zs: ZetaSystem, full_bracket: bool = True) -> dict:
    """Exact verification of the relation table, the sigma images, the
    bracket law, the grading and the span; returns a summary dict."""
    lam, inv = zs.lam, zs.inv
    parts = lam.parts
    n = lam.n

    # symmetry of the prescribed form
    if zs.form.transpose() != zs.form.scale(zs.eps):
        raise AssertionError("form symmetry violated")
    # e is skew self-adjoint for the form: (e u, v) + (u, e v) = 0
    if (zs.e.transpose().change_ring(QQ) @ zs.form.change_ring(QQ)) != \
       (zs.form.change_ring(QQ) @ zs.e.change_ring(QQ)).scale(-1):
        raise AssertionError("e is not skew self-adjoint")

    # sigma image of each xi is the predicted signed xi
    for i in range(n):
        for j in range(n):
            for s in range(min(parts[i], parts[j])):
                sgn = zs.sign[(i, j, s)]
                xi1 = _xi_matrix(lam, zs.starts, i, j, parts[j] - 1 - s)
                xi2 = _xi_matrix(lam, zs.starts, inv[j], inv[i], parts[i] - 1 - s)
                if ss_sigma(zs, xi1.change_ring(QQ)) != xi2.change_ring(QQ).scale(sgn):
                    raise AssertionError(f"sigma image of xi({i},{j},{s}) has the wrong sign")

    killed = 0
    for (i, j, s), z in zs.zetas.items():
        # relation table (i)
        other = zs.zetas[(inv[j], inv[i], s)]
        if z != other.scale(zs.sign[(i, j, s)]):
            raise AssertionError(f"relation (i) fails at {(i, j, s)}")
        if z.is_zero():
            killed += 1
        # membership and grading (iii)
        if ss_sigma(zs, z.change_ring(QQ)) != z.change_ring(QQ):
            raise AssertionError(f"zeta{(i, j, s)} is not sigma-fixed")
        if not commutator(zs.e, z).is_zero():
            raise AssertionError(f"zeta{(i, j, s)} does not centralise e")
        want = zs.degree((i, j, s))
        for (r, c), _ in z.items():
            if zs.weight[r] - zs.weight[c] != want:
                raise AssertionError(f"zeta{(i, j, s)} is not homogeneous of degree {want}")

    if full_bracket:
        keys = zs.tuples()
        for a in keys:
            i, j, s = a
            for b in keys:
                k, l, r = b
                lhs = commutator(zs.zetas[a], zs.zetas[b])
                rhs = SparseMatrix.zeros(lam.size, lam.size, ZZ)

                def term(ii, jj, ss, coeff):
                    nonlocal rhs
                    if ss >= 0 and coeff != 0:
                        rhs = rhs + zs.zetas[(ii, jj, ss)].scale(coeff)

                if i == l:
                    term(k, j, r + s - (parts[i] - 1), 1)
                if j == k:
                    term(i, l, r + s - (parts[j] - 1), -1)
                ekl = zs.sign[(k, l, r)]
                if k == inv[i]:
                    term(inv[l], j, r + s - (parts[i] - 1), ekl)
                if j == inv[l]:
                    term(i, inv[k], r + s - (parts[j] - 1), -ekl)
                if lhs != rhs:
                    raise AssertionError(f"bracket law (ii) fails at {a}, {b}")

    # span: the zetas span exactly the fixed-space centraliser
    flat = []
    for key in zs.tuples():
        z = zs.zetas[key]
        flat.append(tuple(Fraction(z[(r, c)]) for r in range(lam.size) for c in range(lam.size)))
    span_dim = rank_of_vectors(flat, QQ)
    expected = centralizer_dim_formula(lam, zs.eps)
    if span_dim != expected:
        raise AssertionError(f"zeta span has dimension {span_dim}, expected {expected}")

    # count identity: orbits of (i,j,s) -> (j',i',s) minus killed fixed points
    seen = set()
    orbits = 0
    dead = 0
    for key in zs.tuples():
        if key in seen:
            continue
        i, j, s = key
        mate = (inv[j], inv[i], s)
        seen.add(key)
        seen.add(mate)
        if mate == key and zs.sign[key] == -1:
            dead += 1
        else:
            orbits += 1
    if orbits != expected:
        raise AssertionError(f"relation count {orbits} != dim g^e = {expected}")
    return {
        "dim": expected,
        "tuples": len(zs.zetas),
        "orbit_count": orbits,
        "killed_fixed_points": dead,
        "span_dim": span_dim,
    }


# -- derived subalgebra and generation ------------------------------------------


@dataclass
class GradedSubspace:
    dims: dict          # degree -> dimension
    codim: int
    complement_degrees: list


def _bracket_coords(alg, x_coords, y_coords):
    x = alg.from_coordinates(x_coords)
    y = alg.from_coordinates(y_coords)
    return alg.coordinates(commutator(x, y))


def derived_subalgebra(cb: CentralizerBasis) -> GradedSubspace:
    """Span of all brackets of centraliser basis pairs, with its codimension
    and a graded complement description."""
    alg = cb.rep.algebra
    span = VectorSpan(QQ, alg.dim)
    per_degree = {}
    for a in range(cb.dim):
        for b in range(a + 1, cb.dim):
            v = _bracket_coords(alg, cb.vectors[a], cb.vectors[b])
            if span.add(v):
                d = cb.degrees[a] + cb.degrees[b]
                per_degree[d] = per_degree.get(d, 0) + 1
    codim = cb.dim - span.rank
    comp_degrees = []
    full = VectorSpan(QQ, alg.dim)
    for row in span.rows:
        full.add(row)
    for v, d in zip(cb.vectors, cb.degrees):
        if full.add(v):
            comp_degrees.append(d)
    return GradedSubspace(dict(sorted(per_degree.items())), codim, sorted(comp_degrees))


def predicted_complement_size(lam: Partition, eps: int) -> int:
    """Size of the displayed complement set {zeta_i^{i+1, lam_{i+1}-1}} with
    i, i+1 both self-paired and isolated multiplicities."""
    inv = pairing_involution(lam, eps)
    parts = lam.parts
    n = lam.n
    count = 0
    for i in range(n - 1):
        if inv[i] != i or inv[i + 1] != i + 1:
            continue
        prev = parts[i - 1] if i > 0 else None
        nxt = parts[i + 2] if i + 2 < n else None
        if prev != parts[i] and parts[i] >= parts[i + 1] and parts[i + 1] != nxt:
            count += 1
    return count


def check_generation(cb: CentralizerBasis):
    """Tests [g^e(1), g^e(r-1)] = g^e(r) for all r > 1 and whether g^e(0),
    g^e(1) generate; returns (generated, per-degree witness dict)."""
    alg = cb.rep.algebra
    degrees = sorted(set(cb.degrees))
    layer = {d: cb.layer(d) for d in degrees}
    witness = {}
    generated = True
    for r in degrees:
        if r <= 1:
            continue
        span = VectorSpan(QQ, alg.dim)
        for x in layer.get(1, []):
            for y in layer.get(r - 1, []):
                span.add(_bracket_coords(alg, x, y))
        witness[r] = (span.rank, len(layer.get(r, [])))
        if span.rank != len(layer.get(r, [])):
            generated = False
    return generated, witness
