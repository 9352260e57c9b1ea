"""Nilpotent representatives from pyramids, Dynkin gradings, sl2-completion,
Jordan types, orbit dimensions and the Lusztig-Spaltenstein induction oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import QQ
from .linalg import SparseMatrix, commutator, rank_kernel, solve, rank_of_vectors
from .partitions import (
    Partition,
    DynkinPyramid,
    validate_partition,
    is_very_even,
    build_pyramid,
    admissible_partitions,
    all_partitions,
)
from .algebra import ClassicalAlgebra, build_algebra


@dataclass
class NilpotentRep:
    lam: Partition
    eps: int
    algebra: ClassicalAlgebra
    pyramid: DynkinPyramid
    e: SparseMatrix          # over QQ
    e_coords: tuple          # Chevalley coordinates of e (integers)
    very_even: bool

    @property
    def N(self) -> int:
        return self.lam.size


def _sigma_table(alg: ClassicalAlgebra):
    """Position (a, b) -> coefficient of e_{a,b} in the Chevalley basis."""
    table = {}
    for k, m in enumerate(alg.basis):
        if alg.labels[k][0] != "e":
            continue
        for (r, c), v in m.items():
            pos = (alg.indices[r], alg.indices[c])
            if pos in table:
                raise AssertionError("ambiguous Chevalley coefficient table")
            table[pos] = v
    return table


def nilpotent_positions(pyr: DynkinPyramid, eps: int):
    """Index pairs (i, j) entering e = sum sigma_{i,j} e_{i,j}."""
    boxes = pyr.boxes()
    pairs = set()
    for i in boxes:
        for j in boxes:
            if pyr.row[i] == pyr.row[j] and pyr.col[i] == pyr.col[j] + 2:
                pairs.add((i, j))
    cross = {(1, -1)} if eps == -1 else {(2, 0), (0, -2)}
    for i in boxes:
        if pyr.row[i] <= 0 or pyr.row[i] not in pyr.skew_rows:
            continue
        for j in boxes:
            if pyr.row[j] != -pyr.row[i]:
                continue
            if (pyr.col[i], pyr.col[j]) in cross:
                pairs.add((i, j))
    return sorted(pairs)


def build_nilpotent(lam: Partition, eps: int) -> NilpotentRep:
    if not validate_partition(lam, eps):
        raise ValueError(f"{lam} is not admissible for eps={eps}")
    alg = build_algebra(lam.size, eps)
    pyr = build_pyramid(lam, eps)
    table = _sigma_table(alg)
    ent = {}
    for i, j in nilpotent_positions(pyr, eps):
        ent[(alg.pos[i], alg.pos[j])] = table[(i, j)]
    e = SparseMatrix(lam.size, lam.size, QQ, ent)
    if not alg.in_algebra(e):
        raise AssertionError("nilpotent representative is not sigma-fixed")
    coords = alg.coordinates(e)
    if any(Fraction(c).denominator != 1 for c in coords):
        raise AssertionError("nilpotent representative not in the Chevalley lattice")
    rep = NilpotentRep(lam, eps, alg, pyr, e, tuple(int(c) for c in coords), is_very_even(lam, eps))
    jt = jordan_type(e)
    if jt != lam:
        raise AssertionError(f"representative for {lam} has Jordan type {jt}")
    return rep


def jordan_type(x: SparseMatrix) -> Partition:
    """Jordan type of a nilpotent matrix from the rank sequence."""
    n = x.nrows
    ranks = [n]
    cur = SparseMatrix.identity(n, QQ)
    while ranks[-1] > 0:
        cur = cur @ x.change_ring(QQ)
        r, _ = rank_kernel(cur)
        if r >= ranks[-1]:
            raise ValueError("matrix is not nilpotent")
        ranks.append(r)
    lam_conj = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    return Partition(tuple(lam_conj)).conjugate()


# -- Dynkin grading -----------------------------------------------------------


@dataclass
class DynkinGrading:
    rep: NilpotentRep
    weight: dict      # signed basis-vector index -> cocharacter weight col
    degree: tuple     # Dynkin degree of each Chevalley basis element
    layers: dict      # degree -> list of basis indices

    def layer(self, d):
        return self.layers.get(d, [])


def dynkin_grading(rep: NilpotentRep) -> DynkinGrading:
    alg, pyr = rep.algebra, rep.pyramid
    weight = {a: pyr.col[a] for a in pyr.boxes()}
    degs = []
    for k, m in enumerate(alg.basis):
        dset = set()
        for (r, c), _ in m.items():
            dset.add(weight[alg.indices[r]] - weight[alg.indices[c]])
        if len(dset) != 1:
            raise AssertionError("basis element not homogeneous for the Dynkin grading")
        degs.append(dset.pop())
    layers = {}
    for k, d in enumerate(degs):
        layers.setdefault(d, []).append(k)
    for d in layers:
        if len(layers[d]) != len(layers.get(-d, [])):
            raise AssertionError("graded dimensions are not symmetric")
    for k, c in enumerate(rep.e_coords):
        if c != 0 and degs[k] != 2:
            raise AssertionError("e is not homogeneous of degree 2")
    return DynkinGrading(rep, weight, tuple(degs), layers)


def graded_dims(gr: DynkinGrading) -> dict:
    return {d: len(ix) for d, ix in sorted(gr.layers.items())}


def ad_e_matrix(rep: NilpotentRep, ring=QQ) -> SparseMatrix:
    return rep.algebra.ad_matrix(rep.e, ring)


def centralizer_kernel(rep: NilpotentRep):
    _, ker = rank_kernel(ad_e_matrix(rep))
    return ker


def orbit_dimension(lam: Partition, eps: int):
    """(dim of the orbit, d_chi) computed via the centraliser kernel."""
    rep = build_nilpotent(lam, eps)
    dim_g = rep.algebra.dim
    dim_ge = len(centralizer_kernel(rep))
    dim_orbit = dim_g - dim_ge
    if dim_orbit % 2 != 0:
        raise AssertionError("orbit dimension must be even")
    return dim_orbit, dim_orbit // 2


def centralizer_dim_formula(lam: Partition, eps: int) -> int:
    """Closed form (1/2)(sum of conjugate-part squares +/- #odd parts);
    + for sp, - for so.  Used as a cross-check only."""
    conj = lam.conjugate().parts
    odd = sum(1 for p in lam.parts if p % 2 == 1)
    tot = sum(c * c for c in conj) + (odd if eps == -1 else -odd)
    if tot % 2 != 0:
        raise AssertionError("parity failure in the centraliser dimension formula")
    return tot // 2


def orbit_dim_formula(lam: Partition, eps: int) -> int:
    n = lam.size
    dim_g = n * (n - 1) // 2 if eps == 1 else n * (n + 1) // 2
    return dim_g - centralizer_dim_formula(lam, eps)


@dataclass
class Sl2Triple:
    e: SparseMatrix
    h: SparseMatrix
    f: SparseMatrix


def complete_sl2(rep: NilpotentRep) -> Sl2Triple:
    """Completes (e, h = cocharacter differential) to an sl2-triple in g and
    certifies [e, g(0)] = g(2)."""
    alg = rep.algebra
    gr = dynkin_grading(rep)
    ent = {}
    for a in rep.pyramid.boxes():
        if gr.weight[a] != 0:
            ent[(alg.pos[a], alg.pos[a])] = gr.weight[a]
    h = SparseMatrix(alg.N, alg.N, QQ, ent)
    if not alg.in_algebra(h):
        raise AssertionError("cocharacter differential is not in the algebra")
    if commutator(h, rep.e) != rep.e.scale(2):
        raise AssertionError("[h, e] != 2e")
    neg2 = gr.layer(-2)
    cols = {}
    target = alg.coordinates(h)
    for jj, k in enumerate(neg2):
        col = alg.coordinates(commutator(rep.e, alg.basis[k]))
        for i, v in enumerate(col):
            if v != 0:
                cols[(i, jj)] = v
    msolve = SparseMatrix(alg.dim, len(neg2), QQ, cols)
    sol = solve(msolve, list(target))
    if sol is None:
        raise AssertionError("no f in g(-2) with [e, f] = h (falsifies the sl2-completion)")
    f = SparseMatrix.zeros(alg.N, alg.N, QQ)
    for jj, k in enumerate(neg2):
        if sol[jj] != 0:
            f = f + alg.basis[k].scale(sol[jj])
    if commutator(h, f) != f.scale(-2) or commutator(rep.e, f) != h:
        raise AssertionError("sl2 relations fail")
    # density evidence: [e, g(0)] = g(2)
    zero_layer = gr.layer(0)
    vecs = [alg.coordinates(commutator(rep.e, alg.basis[k])) for k in zero_layer]
    if rank_of_vectors(vecs, QQ) != len(gr.layer(2)):
        raise AssertionError("[e, g(0)] != g(2)")
    return Sl2Triple(rep.e, h, f)


# -- Lusztig-Spaltenstein induction -------------------------------------------


@dataclass(frozen=True)
class InductionDatum:
    """Levi of shape gl_{a_1} x ... x gl_{a_k} x g_m inside g_N, carrying a
    gl-orbit on each block and a nilpotent orbit of the residual algebra."""

    N: int
    eps: int
    gl_blocks: tuple          # tuple of (a_t, Partition mu_t)
    residual: Partition       # partition of m = N - 2*sum(a_t); may be empty

    def __str__(self):
        gls = " x ".join(f"gl_{a}[{mu}]" for a, mu in self.gl_blocks)
        res = f" x g_{self.residual.size}[{self.residual}]" if self.residual.parts else ""
        return f"{gls}{res}" if gls else f"g[{self.residual}]"


def _block_indices(N: int, gl_sizes):
    """Outermost signed indices for the gl blocks; the residual keeps the
    inner indices and the central one."""
    h = N // 2
    blocks = []
    nxt = h
    for a in gl_sizes:
        blocks.append(tuple(range(nxt, nxt - a, -1)))
        nxt -= a
    return blocks, nxt  # residual half-size


def levi_weight_function(N: int, eps: int, gl_sizes):
    blocks, _ = _block_indices(N, gl_sizes)
    wt = {}
    k = len(blocks)
    for t, blk in enumerate(blocks):
        for b in blk:
            wt[b] = k - t
            wt[-b] = -(k - t)
    return wt


def nilradical_basis(alg: ClassicalAlgebra, gl_sizes):
    """Indices of Chevalley basis elements of positive Levi weight."""
    wt = levi_weight_function(alg.N, alg.eps, gl_sizes)
    out = []
    for k, m in enumerate(alg.basis):
        wset = set()
        for (r, c), _ in m.items():
            wset.add(wt.get(alg.indices[r], 0) - wt.get(alg.indices[c], 0))
        if len(wset) != 1:
            raise AssertionError("basis element not homogeneous for the Levi weight")
        w = wset.pop()
        if w > 0:
            out.append(k)
    return out


def _embed_gl_jordan(alg: ClassicalAlgebra, block, mu: Partition) -> SparseMatrix:
    """sigma-symmetrised Jordan matrix of type mu on a gl block."""
    x = SparseMatrix.zeros(alg.N, alg.N, QQ)
    pos = 0
    for part in mu.parts:
        for s in range(part - 1):
            x = x + alg.unit(block[pos + s], block[pos + s + 1])
        pos += part
    return x + alg.sigma(x)


def embed_datum(datum: InductionDatum):
    """The Levi representative (as a matrix) and the nilradical basis."""
    alg = build_algebra(datum.N, datum.eps)
    gl_sizes = tuple(a for a, _ in datum.gl_blocks)
    blocks, _ = _block_indices(datum.N, gl_sizes)
    x = SparseMatrix.zeros(alg.N, alg.N, QQ)
    for (a, mu), blk in zip(datum.gl_blocks, blocks):
        x = x + _embed_gl_jordan(alg, blk, mu)
    if datum.residual.parts and datum.residual.size >= 2:
        sub = build_nilpotent(datum.residual, datum.eps)
        for (r, c), v in sub.e.items():
            a, b = sub.algebra.indices[r], sub.algebra.indices[c]
            x = x + alg.unit(a, b, v)
    n_idx = nilradical_basis(alg, gl_sizes)
    return alg, x, n_idx


def datum_levi_orbit_dim(datum: InductionDatum) -> int:
    total = 0
    for a, mu in datum.gl_blocks:
        total += a * a - sum(c * c for c in mu.conjugate().parts)
    if datum.residual.parts and datum.residual.size >= 2:
        total += orbit_dim_formula(datum.residual, datum.eps)
    return total


def generic_datum_sample(datum: InductionDatum, samples: int = 5):
    """Deterministically sampled element of (Levi orbit) + nilradical whose
    orbit dimension certifies genericity; returns (matrix, certified type).

    Sampling uses seed-indexed small integer coefficients; the certificate is
    the dimension identity dim Ind = dim O_levi + 2 dim n, which pins the
    dense orbit because every non-generic sample lies in its boundary.
    """
    alg, x_levi, n_idx = embed_datum(datum)
    dim_n = len(n_idx)
    if dim_n == 0:
        raise ValueError("datum has zero nilradical: not a proper parabolic")
    expected_dim = datum_levi_orbit_dim(datum) + 2 * dim_n
    seed = (datum.N * 1009 + (1 if datum.eps == 1 else 2)) & 0x7FFFFFFF
    for a, mu in datum.gl_blocks:
        seed = (seed * 31 + a * 7 + sum(mu.parts)) & 0x7FFFFFFF
    best = None
    types = []
    for s in range(samples):
        state = (seed + 9176 * s + 13) & 0x7FFFFFFF
        x = x_levi
        for k in n_idx:
            state = (state * 48271) % 2147483647
            c = 1 + state % 7
            x = x + alg.basis[k].scale(c)
        jt = jordan_type(x)
        types.append(jt)
        if best is None and orbit_dim_formula(jt, datum.eps) == expected_dim:
            best = (x, jt)
    if best is None:
        raise AssertionError(
            f"no sample of {datum} reached the certified dimension {expected_dim}; "
            f"types seen: {[str(t) for t in types]}"
        )
    for jt in types:
        if orbit_dim_formula(jt, datum.eps) > expected_dim:
            raise AssertionError("sample exceeds the Lusztig-Spaltenstein dimension bound")
    return best


def induce_orbit(datum: InductionDatum, samples: int = 5):
    """Jordan type of the dense orbit in (Levi orbit) + nilradical."""
    return generic_datum_sample(datum, samples)[1]


def enumerate_levi_data(N: int, eps: int, with_orbits: bool = True):
    """All proper induction data (nonzero nilradical) up to Levi conjugacy:
    multisets of gl block sizes plus a residual orbit."""
    out = []
    h = N // 2
    for total in range(1, h + 1):
        m = N - 2 * total
        for sizes in _partition_multisets(total):
            if with_orbits:
                gl_choices = _gl_orbit_choices(sizes)
                res_choices = admissible_partitions(m, eps) if m >= 2 else (
                    [Partition((1,))] if m == 1 else [Partition(())]
                )
                for gls in gl_choices:
                    for res in res_choices:
                        out.append(InductionDatum(N, eps, gls, res))
            else:
                gls = tuple((a, Partition((1,) * a)) for a in sizes)
                res = Partition((1,) * m) if m else Partition(())
                out.append(InductionDatum(N, eps, gls, res))
    return out


def _partition_multisets(total: int):
    """Weakly decreasing tuples of positive integers summing to total."""
    return [p.parts for p in all_partitions(total)]


def _gl_orbit_choices(sizes):
    """All assignments of a gl_a orbit (any partition of a) per block."""
    if not sizes:
        return [()]
    rest = _gl_orbit_choices(sizes[1:])
    out = []
    for mu in all_partitions(sizes[0]):
        for r in rest:
            out.append(((sizes[0], mu),) + r)
    return out


def rigidity_oracle(lam: Partition, eps: int, max_n: int = 8):
    """True iff no proper Levi datum induces to lam; exhaustive sweep."""
    if lam.size > max_n:
        raise ValueError(f"rigidity oracle guarded at N <= {max_n}")
    witness = find_induction_witness(lam, eps)
    return witness is None


def find_induction_witness(lam: Partition, eps: int):
    if not validate_partition(lam, eps):
        raise ValueError(f"{lam} is not admissible for eps={eps}")
    target_dim = orbit_dim_formula(lam, eps)
    for datum in enumerate_levi_data(lam.size, eps):
        _, _, n_idx = embed_datum(datum)
        if not n_idx:
            continue
        if datum_levi_orbit_dim(datum) + 2 * len(n_idx) != target_dim:
            continue
        if induce_orbit(datum) == lam:
            return datum
    return None
