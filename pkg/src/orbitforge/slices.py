"""The skew form on g(-1), Lagrangian splitting normalised over Z[1/2], the
subalgebra m with its character values, the good transverse slice with its
contracting weights, and the integral saturation checks for ad e on the
Chevalley lattice.

The weight split uses the diagonal toral subalgebra t_e of g^e spanned by
one generator per hyperbolically paired pyramid row pair; its positive and
negative weight spaces provide the triangular decomposition n_- + l + n_+
with e distinguished in l (asserted: l has no odd Dynkin degrees).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import QQ, ZZ, is_two_power_denominator
from .linalg import (
    SparseMatrix,
    commutator,
    rank_kernel,
    smith_normal_form,
    VectorSpan,
)
from .orbits import NilpotentRep, dynkin_grading, DynkinGrading


# -- torus and triangular decomposition ---------------------------------------


def toral_generators(rep: NilpotentRep):
    """One diagonal generator per paired pyramid row pair: +1 on the upper
    row's boxes, -1 on the mirror row."""
    pyr, alg = rep.pyramid, rep.algebra
    rows = {}
    for b in pyr.boxes():
        rows.setdefault(pyr.row[b], []).append(b)
    crossed_rows = {r for r, _ in pyr.crossed}
    gens = []
    for r in sorted(rows, reverse=True):
        if r <= 0 or r in crossed_rows:
            continue  # skew rows belong to self-paired parts
        ent = {}
        for b in rows[r]:
            ent[(alg.pos[b], alg.pos[b])] = 1
            ent[(alg.pos[-b], alg.pos[-b])] = -1
        gens.append(SparseMatrix(alg.N, alg.N, QQ, ent))
    for t in gens:
        if not alg.in_algebra(t):
            raise AssertionError("toral generator not in the algebra")
        if not commutator(t, rep.e).is_zero():
            raise AssertionError("toral generator does not centralise e")
    return gens


@dataclass
class WeightData:
    rep: NilpotentRep
    grading: DynkinGrading
    torus: list                # toral generator matrices
    weights: list              # basis index -> weight tuple under the torus
    n_plus: list               # basis indices with lexicographically positive weight
    n_minus: list
    levi: list                 # weight-zero basis indices

    def side(self, k: int) -> int:
        w = self.weights[k]
        for x in w:
            if x != 0:
                return 1 if x > 0 else -1
        return 0


def weight_data(rep: NilpotentRep) -> WeightData:
    alg = rep.algebra
    gr = dynkin_grading(rep)
    torus = toral_generators(rep)
    weights = []
    for k, m in enumerate(alg.basis):
        w = []
        for t in torus:
            br = commutator(t, m)
            if br.is_zero():
                w.append(0)
            else:
                ratios = {Fraction(v, m[rc]) for rc, v in br.items() if m[rc] != 0}
                if len(ratios) != 1 or br != m.scale(next(iter(ratios))):
                    raise AssertionError("basis element is not a torus weight vector")
                val = next(iter(ratios))
                if val.denominator != 1:
                    raise AssertionError("non-integral torus weight")
                w.append(int(val))
        weights.append(tuple(w))
    wd = WeightData(rep, gr, torus, weights, [], [], [])
    for k in range(alg.dim):
        s = wd.side(k)
        (wd.n_plus if s > 0 else wd.n_minus if s < 0 else wd.levi).append(k)
    # e is distinguished in the Levi: no odd Dynkin degrees there
    for k in wd.levi:
        if gr.degree[k] % 2 != 0:
            raise AssertionError(
                "weight-zero part of g has odd Dynkin degrees; the Lagrangian "
                "split rule would be ambiguous for this representative"
            )
    for k, c in enumerate(rep.e_coords):
        if c != 0 and wd.side(k) != 0:
            raise AssertionError("e does not lie in the Levi of the weight split")
    return wd


def chi_value(rep: NilpotentRep, x: SparseMatrix):
    return rep.algebra.kappa(rep.e, x)


# -- skew form and Lagrangian pair ---------------------------------------------


@dataclass
class SkewForm:
    rep: NilpotentRep
    wd: WeightData
    minus_idx: list      # Chevalley indices spanning n_-(-1)
    plus_idx: list       # Chevalley indices spanning n_+(-1)
    gram: SparseMatrix   # full Gram on the ordered basis minus + plus
    m_block: SparseMatrix  # the block M with Psi(z'_i, z_j) = M_{ij}


def build_psi(rep: NilpotentRep, wd: WeightData | None = None) -> SkewForm:
    alg = rep.algebra
    if wd is None:
        wd = weight_data(rep)
    gr = wd.grading
    minus_idx = [k for k in gr.layer(-1) if k in set(wd.n_minus)]
    plus_idx = [k for k in gr.layer(-1) if k in set(wd.n_plus)]
    if len(minus_idx) + len(plus_idx) != len(gr.layer(-1)):
        raise AssertionError("g(-1) has torus-weight-zero vectors")
    order = minus_idx + plus_idx
    s = len(minus_idx)
    ent = {}
    for a, ka in enumerate(order):
        for b, kb in enumerate(order):
            v = chi_value(rep, commutator(alg.basis[ka], alg.basis[kb]))
            if v != 0:
                ent[(a, b)] = v
    gram = SparseMatrix(len(order), len(order), QQ, ent)
    if gram.transpose() != -gram:
        raise AssertionError("Psi is not skew-symmetric")
    for a in range(s):
        for b in range(s):
            if gram[(a, b)] != 0 or gram[(a + s, b + s)] != 0:
                raise AssertionError("n_{+-}(-1) are not totally isotropic")
    rank, _ = rank_kernel(gram)
    if rank != len(order):
        raise AssertionError("Psi is degenerate over QQ (falsifies goodness)")
    m_block = SparseMatrix(s, s, QQ, {(a, b): gram[(a, b + s)] for a in range(s) for b in range(s) if gram[(a, b + s)] != 0})
    return SkewForm(rep, wd, minus_idx, plus_idx, gram, m_block)


def gram_determinant(m: SparseMatrix):
    """Exact determinant via fraction-free expansion of the dense matrix."""
    rows = [[Fraction(x) for x in row] for row in m.to_dense()]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if rows[r][c] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


def is_signed_two_power(x) -> bool:
    x = Fraction(abs(Fraction(x)))
    if x == 0:
        return False
    num, den = x.numerator, x.denominator
    return (num & (num - 1)) == 0 and (den & (den - 1)) == 0


@dataclass
class LagrangianPair:
    rep: NilpotentRep
    psi: SkewForm
    z_minus: list   # coordinate vectors of z'_1..z'_s (after normalisation)
    z_plus: list    # coordinate vectors of z_1..z_s (Chevalley vectors)


def split_lagrangian(rep: NilpotentRep, psi: SkewForm | None = None) -> LagrangianPair:
    alg = rep.algebra
    if psi is None:
        psi = build_psi(rep)
    s = len(psi.minus_idx)
    z_plus = []
    for k in psi.plus_idx:
        vec = [Fraction(0)] * alg.dim
        vec[k] = Fraction(1)
        z_plus.append(tuple(vec))
    if s == 0:
        return LagrangianPair(rep, psi, [], [])
    det = gram_determinant(psi.m_block)
    if not is_signed_two_power(det):
        raise AssertionError(f"det(M) = {det} is not a unit of Z[1/2]")
    # invert M over QQ; entries of M^{-1} must have 2-power denominators
    from .linalg import _eliminate

    dense = psi.m_block.to_dense()
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(s)]
           for i, row in enumerate(dense)]
    _eliminate(aug, QQ)
    minv = [row[s:] for row in aug]
    z_minus = []
    for i in range(s):
        vec = [Fraction(0)] * alg.dim
        for j in range(s):
            c = minv[i][j]
            if c != 0:
                if not is_two_power_denominator(c):
                    raise AssertionError("Lagrangian normalisation leaves Z[1/2]")
                vec[psi.minus_idx[j]] += c
        z_minus.append(tuple(vec))
    pair = LagrangianPair(rep, psi, z_minus, z_plus)
    verify_duality(pair)
    return pair


def verify_duality(pair: LagrangianPair):
    alg = pair.rep.algebra
    for i, zm in enumerate(pair.z_minus):
        xm = alg.from_coordinates(zm)
        for j, zp in enumerate(pair.z_plus):
            xp = alg.from_coordinates(zp)
            val = chi_value(pair.rep, commutator(xm, xp))
            if val != (1 if i == j else 0):
                raise AssertionError(f"Psi(z'_{i}, z_{j}) = {val} != delta")
    for i, za in enumerate(pair.z_minus):
        for j, zb in enumerate(pair.z_minus):
            xa, xb = alg.from_coordinates(za), alg.from_coordinates(zb)
            if chi_value(pair.rep, commutator(xa, xb)) != 0:
                raise AssertionError("B_- is not isotropic after normalisation")


# -- the subalgebra m ------------------------------------------------------------


@dataclass
class MSubalgebra:
    rep: NilpotentRep
    basis: list        # coordinate vectors
    chi: list          # chi value per basis vector
    degrees: list

    @property
    def dim(self):
        return len(self.basis)


def build_m(rep: NilpotentRep, pair: LagrangianPair) -> MSubalgebra:
    alg = rep.algebra
    gr = pair.psi.wd.grading
    basis = list(pair.z_minus)
    degrees = [-1] * len(basis)
    for d in sorted(gr.layers):
        if d <= -2:
            for k in gr.layers[d]:
                vec = [Fraction(0)] * alg.dim
                vec[k] = Fraction(1)
                basis.append(tuple(vec))
                degrees.append(d)
    chi = []
    mats = [alg.from_coordinates(v) for v in basis]
    for x, d in zip(mats, degrees):
        val = chi_value(rep, x)
        if d != -2 and val != 0:
            raise AssertionError("chi is supported outside degree -2")
        chi.append(val)
    # subalgebra and [m, m] <= ker chi
    span = VectorSpan(QQ, alg.dim)
    for v in basis:
        span.add(v)
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            br = commutator(mats[a], mats[b])
            coords = alg.coordinates(br)
            if not span.contains(coords):
                raise AssertionError("m is not closed under the bracket")
            if chi_value(rep, br) != 0:
                raise AssertionError("chi does not vanish on [m, m]")
    msub = MSubalgebra(rep, basis, chi, degrees)
    from .orbits import centralizer_dim_formula

    d_chi = (alg.dim - centralizer_dim_formula(rep.lam, rep.eps)) // 2
    if msub.dim != d_chi:
        raise AssertionError(f"dim m = {msub.dim} != d(chi) = {d_chi}")
    return msub


# -- good transverse slice ---------------------------------------------------------


@dataclass
class SliceData:
    rep: NilpotentRep
    complement: list       # coordinate vectors of v
    degrees: list          # Dynkin degree of each complement vector
    contracting_weights: list  # 2 - degree per vector


def slice_complement(rep: NilpotentRep) -> SliceData:
    """Graded complement v to [g, e], greedily preferring Chevalley basis
    vectors, contained in the nonpositive degrees."""
    alg = rep.algebra
    gr = dynkin_grading(rep)
    comp = []
    degs = []
    for d in sorted(gr.layers):
        image = VectorSpan(QQ, alg.dim)
        for k in gr.layers.get(d - 2, []):
            image.add(alg.coordinates(commutator(rep.e, alg.basis[k])))
        want = len(gr.layers[d])
        added = 0
        for k in gr.layers[d]:
            vec = [Fraction(0)] * alg.dim
            vec[k] = Fraction(1)
            if image.add(tuple(vec)):
                comp.append(tuple(vec))
                degs.append(d)
                added += 1
        if image.rank != want:
            raise AssertionError("complement construction failed to fill a degree")
        if d > 0 and added:
            # ad e is onto in positive degrees; nothing may be added there
            raise AssertionError("[g, e] misses vectors in positive degree")
    from .orbits import centralizer_dim_formula

    if len(comp) != centralizer_dim_formula(rep.lam, rep.eps):
        raise AssertionError("dim v != dim g^e")
    if any(d > 0 for d in degs):
        raise AssertionError("complement is not contained in nonpositive degrees")
    weights = [2 - d for d in degs]
    if any(w <= 0 for w in weights):
        raise AssertionError("contracting action has a non-positive weight")
    return SliceData(rep, comp, degs, weights)


# -- integral saturation -----------------------------------------------------------


def ad_e_lattice_matrix(rep: NilpotentRep, rows_idx=None, cols_idx=None) -> SparseMatrix:
    """Matrix of ad e on the Chevalley lattice (integer entries), optionally
    restricted to Dynkin-degree pieces."""
    alg = rep.algebra
    e = alg.from_coordinates(rep.e_coords, ZZ)
    cols = cols_idx if cols_idx is not None else list(range(alg.dim))
    rows = rows_idx if rows_idx is not None else list(range(alg.dim))
    rowpos = {k: i for i, k in enumerate(rows)}
    ent = {}
    for jj, k in enumerate(cols):
        coords = alg.coordinates(commutator(e, alg.basis[k].change_ring(ZZ)))
        for i, v in enumerate(coords):
            if v != 0:
                if i not in rowpos:
                    raise AssertionError("ad e leaves the prescribed degree pieces")
                ent[(rowpos[i], jj)] = int(v)
    return SparseMatrix(len(rows), len(cols), ZZ, ent)


def integral_saturation(rep: NilpotentRep) -> dict:
    """SNF-based saturation report for ad e on the Chevalley lattice."""
    alg = rep.algebra
    gr = dynkin_grading(rep)
    full = ad_e_lattice_matrix(rep)
    snf = smith_normal_form(full)
    divisors = [d for d in snf.divisors if d != 0]
    saturated = all(is_signed_two_power(d) for d in divisors)

    graded_ok = True
    graded = {}
    for d in sorted(gr.layers):
        if d < 0:
            continue
        target = gr.layers.get(d + 2, [])
        m = ad_e_lattice_matrix(rep, rows_idx=target, cols_idx=gr.layers[d])
        sub = smith_normal_form(m)
        nz = [x for x in sub.divisors if x != 0]
        ok = len(nz) == len(target) and all(is_signed_two_power(x) for x in nz)
        graded[d] = {"divisors": sub.divisors, "onto_and_saturated": ok}
        graded_ok = graded_ok and ok

    # [e, g_R] = (g_R^e)^perp: containment via kappa and rank equality
    kernel_dim = alg.dim - snf.rank
    from .centralizer import compute_centralizer

    cb = compute_centralizer(rep)
    perp_ok = snf.rank + cb.dim == alg.dim
    for k in range(alg.dim):
        img = commutator(alg.from_coordinates(rep.e_coords), alg.basis[k])
        for v in cb.vectors:
            if alg.kappa(img, alg.from_coordinates(v)) != 0:
                perp_ok = False
    return {
        "divisors": snf.divisors,
        "saturated": saturated,
        "graded": graded,
        "graded_onto": graded_ok,
        "perp_identity": perp_ok,
        "kernel_dim": kernel_dim,
    }
