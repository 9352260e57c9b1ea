"""Reduction of the integral structures modulo odd good primes: restricted
structure via matrix p-th powers, p-characters, parabolically induced
modules over F_p as explicit action matrices, and Kac-Weisfeiler dimension
bookkeeping.

Dense module arithmetic uses integer numpy arrays reduced mod p; this is
exact (entries stay far below the int64 overflow line at desk scale).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .rings import GF, is_two_power_denominator
from .linalg import SparseMatrix, commutator, rank_kernel
from .partitions import Partition
from .orbits import (
    NilpotentRep,
    InductionDatum,
    dynkin_grading,
    embed_datum,
    datum_levi_orbit_dim,
    orbit_dim_formula,
    ad_e_matrix,
)
from .algebra import ClassicalAlgebra


@dataclass
class ModularAlgebra:
    alg: ClassicalAlgebra
    p: int
    basis_mod: list          # basis matrices over GF(p)
    p_power: list            # coordinates of x^{[p]} per basis element
    structure: dict          # (a, b) -> {c: coeff mod p}


def reduce_mod_p(alg: ClassicalAlgebra, p: int) -> ModularAlgebra:
    if p == 2:
        raise ValueError("p = 2 is a bad prime for these types")
    ring = GF(p)
    basis_mod = [b.change_ring(ring) for b in alg.basis]
    p_power = []
    for b in basis_mod:
        power = SparseMatrix.identity(alg.N, ring)
        for _ in range(p):
            power = power @ b
        p_power.append(alg.coordinates(power))
    structure = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            if a == b:
                continue
            br = commutator(basis_mod[a], basis_mod[b])
            if br.is_zero():
                continue
            coords = alg.coordinates(br)
            structure[(a, b)] = {c: v for c, v in enumerate(coords) if v != 0}
    mod = ModularAlgebra(alg, p, basis_mod, p_power, structure)
    verify_restrictedness(mod)
    return mod


def _ad_numpy(mod: ModularAlgebra, coords) -> np.ndarray:
    """ad(x) on the basis over F_p as a numpy matrix, x given by coordinates."""
    alg, p = mod.alg, mod.p
    out = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    x = SparseMatrix.zeros(alg.N, alg.N, GF(p))
    for k, c in enumerate(coords):
        if c != 0:
            x = x + mod.basis_mod[k].scale(c)
    for j in range(alg.dim):
        col = alg.coordinates(commutator(x, mod.basis_mod[j]))
        for i, v in enumerate(col):
            if v != 0:
                out[i, j] = int(v)
    return out


def verify_restrictedness(mod: ModularAlgebra):
    """ad(x^{[p]}) = (ad x)^p as matrices over F_p, for every basis x."""
    p = mod.p
    dim = mod.alg.dim
    for k in range(dim):
        unit = [0] * dim
        unit[k] = 1
        adx = _ad_numpy(mod, unit)
        power = np.eye(dim, dtype=np.int64)
        for _ in range(p):
            power = (power @ adx) % p
        target = _ad_numpy(mod, mod.p_power[k])
        if not np.array_equal(power, target % p):
            raise AssertionError(f"restrictedness fails for basis element {k}")


def p_character(rep: NilpotentRep, p: int):
    """chi = kappa(e, -) as a functional vector over F_p on the basis."""
    alg = rep.algebra
    ring = GF(p)
    gr = dynkin_grading(rep)
    vals = []
    for k in range(alg.dim):
        v = alg.kappa(rep.e, alg.basis[k])
        if v != 0 and gr.degree[k] != -2:
            raise AssertionError("p-character supported outside degree -2")
        vals.append(ring.coerce(v))
    return tuple(vals)


def centralizer_dim_mod_p(rep: NilpotentRep, p: int) -> int:
    m = ad_e_matrix(rep, GF(p))
    rank, _ = rank_kernel(m)
    return rep.algebra.dim - rank


def graded_dims_mod_p(rep: NilpotentRep, p: int) -> dict:
    """Graded dimensions are field independent (lattice bases); rank of
    ad e on each graded piece over F_p, for the stability check."""
    alg = rep.algebra
    gr = dynkin_grading(rep)
    ring = GF(p)
    e_mod = rep.e.change_ring(ring)
    out = {}
    for d in sorted(gr.layers):
        idxs = gr.layers[d]
        cols = {}
        for jj, k in enumerate(idxs):
            col = alg.coordinates(commutator(e_mod, alg.basis[k].change_ring(ring)))
            for i, v in enumerate(col):
                if v != 0:
                    cols[(i, jj)] = v
        m = SparseMatrix(alg.dim, len(idxs), ring, cols)
        r, _ = rank_kernel(m)
        out[d] = r
    return out


# -- induced modules -----------------------------------------------------------


@dataclass
class InducedModule:
    datum: InductionDatum
    p: int
    dim: int
    f_count: int
    action: list            # numpy matrix per algebra basis element
    chi: tuple              # p-character values on the basis
    e_coords: tuple         # coordinates of the inducing nilpotent


class _VermaBuilder:
    """Normal-form arithmetic for U_chi(g) acting on U(n_-) x k_{lam0}."""

    def __init__(self, mod: ModularAlgebra, f_idx, levi_idx, nplus_idx, chi, lam0):
        self.mod = mod
        self.p = mod.p
        self.f_idx = list(f_idx)
        self.f_pos = {k: i for i, k in enumerate(f_idx)}
        self.levi_idx = set(levi_idx)
        self.nplus_idx = set(nplus_idx)
        self.chi = chi
        self.lam0 = lam0
        self.monomials = {}
        self.index_of = {}

    def _mono_index(self, mono):
        if mono not in self.index_of:
            self.index_of[mono] = len(self.index_of)
            self.monomials[self.index_of[mono]] = mono
        return self.index_of[mono]

    def enumerate_basis(self):
        from itertools import product

        for expo in product(range(self.p), repeat=len(self.f_idx)):
            self._mono_index(tuple(expo))

    def act_basis(self, k: int) -> dict:
        """Action of basis element k as {column: {row: coeff}} on monomials."""
        out = {}
        for col in range(len(self.index_of)):
            vec = self._act_generator(k, {self.monomials[col]: 1})
            out[col] = {self._mono_index(m): c for m, c in vec.items() if c != 0}
        return out

    def _act_generator(self, k: int, vec: dict) -> dict:
        """Left action of basis element k on a normal-form vector."""
        out = {}
        for mono, c in vec.items():
            for m2, c2 in self._gen_on_monomial(k, mono).items():
                out[m2] = (out.get(m2, 0) + c * c2) % self.p
        return {m: c for m, c in out.items() if c != 0}

    def _gen_on_monomial(self, k: int, mono: tuple) -> dict:
        p = self.p
        first = None
        for i, e in enumerate(mono):
            if e > 0:
                first = i
                break
        if first is None:
            # acting on the highest-weight line
            if k in self.nplus_idx:
                return {}
            if k in self.levi_idx:
                lam = self.lam0.get(k, 0) % p
                return {mono: lam} if lam else {}
            return self._fmul(self.f_pos[k], mono)
        fk = self.f_idx[first]
        rest = list(mono)
        rest[first] -= 1
        rest = tuple(rest)
        out = {}
        # y * f * v = f * (y * v) + [y, f] * v
        for m2, c2 in self._gen_on_monomial(k, rest).items():
            for m3, c3 in self._fmul(first, m2).items():
                out[m3] = (out.get(m3, 0) + c2 * c3) % p
        br = self.mod.structure.get((k, fk), {})
        for c_idx, coeff in br.items():
            for m3, c3 in self._gen_on_monomial(c_idx, rest).items():
                out[m3] = (out.get(m3, 0) + int(coeff) * c3) % p
        return {m: c for m, c in out.items() if c != 0}

    def _fmul(self, i: int, mono: tuple) -> dict:
        """Left multiplication by f_i on a normal-form monomial."""
        p = self.p
        lead = None
        for j, e in enumerate(mono):
            if e > 0:
                lead = j
                break
        if lead is None or i <= lead:
            new = list(mono)
            new[i] += 1
            if new[i] < p:
                return {tuple(new): 1}
            # f_i^p = f_i^{[p]} + chi(f_i)^p inside U_chi
            new[i] = 0
            base = tuple(new)
            out = {}
            chi_val = pow(int(self.chi[self.f_idx[i]]), p, p)
            if chi_val:
                out[base] = chi_val
            fp = self.mod.p_power[self.f_idx[i]]
            for c_idx, coeff in enumerate(fp):
                if coeff != 0:
                    for m2, c2 in self._gen_on_monomial(c_idx, base).items():
                        out[m2] = (out.get(m2, 0) + int(coeff) * c2) % p
            return {m: c for m, c in out.items() if c != 0}
        # move f_i past the leading smaller-index letter
        fk = self.f_idx[lead]
        rest = list(mono)
        rest[lead] -= 1
        rest = tuple(rest)
        out = {}
        for m2, c2 in self._fmul(i, rest).items():
            for m3, c3 in self._fmul(lead, m2).items():
                out[m3] = (out.get(m3, 0) + c2 * c3) % p
        br = self.mod.structure.get((self.f_idx[i], fk), {})
        for c_idx, coeff in br.items():
            for m3, c3 in self._gen_on_monomial(c_idx, rest).items():
                out[m3] = (out.get(m3, 0) + int(coeff) * c3) % p
        return {m: c for m, c in out.items() if c != 0}


def build_induced_module(datum: InductionDatum, p: int, lam0: dict | None = None) -> InducedModule:
    """U_chi(g) tensor_{U_chi(p)} k_{lam0} with the zero orbit in the Levi;
    chi = kappa(e, -) for the certified generic nilradical sample e."""
    for _, mu in datum.gl_blocks:
        if any(x != 1 for x in mu.parts):
            raise ValueError("induced-module base case needs the zero Levi orbit")
    if datum.residual.parts and any(x != 1 for x in datum.residual.parts):
        raise ValueError("induced-module base case needs the zero residual orbit")
    alg, x_levi, n_idx = embed_datum(datum)
    if not x_levi.is_zero():
        raise AssertionError("zero orbit embedded to a nonzero element")
    mod = reduce_mod_p(alg, p)
    # the inducing element: certified generic sample inside n
    from .orbits import generic_datum_sample

    e, induced = generic_datum_sample(datum)
    e_coords = alg.coordinates(e)

    ring = GF(p)
    chi = tuple(ring.coerce(alg.kappa(e, alg.basis[k])) for k in range(alg.dim))
    # chi vanishes on the parabolic p = levi + n_+
    from .orbits import levi_weight_function

    n_plus = set(n_idx)
    wt = levi_weight_function(alg.N, alg.eps, tuple(a for a, _ in datum.gl_blocks))
    f_idx = []
    levi_idx = []
    for k in range(alg.dim):
        wset = set()
        for (r, c), _ in alg.basis[k].items():
            wset.add(wt.get(alg.indices[r], 0) - wt.get(alg.indices[c], 0))
        w = wset.pop()
        if k in n_plus:
            continue
        if w < 0:
            f_idx.append(k)
        else:
            levi_idx.append(k)
    if len(f_idx) != len(n_idx):
        raise AssertionError("opposite nilradical has the wrong dimension")
    for k in levi_idx + sorted(n_plus):
        if chi[k] != 0:
            raise AssertionError("chi does not vanish on the parabolic")

    lam0 = dict(lam0 or {})
    for k in lam0:
        if k not in set(levi_idx):
            raise ValueError("lam0 must be supported on the Levi")
    # lam0 must be a character of the Levi: it kills [l, l]
    for a in levi_idx:
        for b in levi_idx:
            br = mod.structure.get((a, b), {})
            if _eval_lam0(lam0, [br.get(c, 0) for c in range(alg.dim)], p) != 0:
                raise ValueError("lam0 does not vanish on the derived Levi")
    # restricted compatibility: lam0(h)^p - lam0(h^{[p]}) = chi(h)^p on the Levi
    for k in levi_idx:
        lhs = (pow(lam0.get(k, 0), p, p) - _eval_lam0(lam0, mod.p_power[k], p)) % p
        if lhs != pow(int(chi[k]), p, p):
            raise ValueError(f"lam0 incompatible with the p-character at basis {k}")

    builder = _VermaBuilder(mod, f_idx, levi_idx, sorted(n_plus), chi, lam0)
    builder.enumerate_basis()
    dim = p ** len(f_idx)
    if len(builder.index_of) != dim:
        raise AssertionError("module basis enumeration mismatch")
    action = []
    for k in range(alg.dim):
        cols = builder.act_basis(k)
        if len(builder.index_of) != dim:
            raise AssertionError("action left the monomial basis")
        m = np.zeros((dim, dim), dtype=np.int64)
        for col, rows in cols.items():
            for row, c in rows.items():
                m[row, col] = c
        action.append(m)
    module = InducedModule(datum, p, dim, len(f_idx), action, chi, e_coords)
    verify_induced_module(module, mod)
    return module


def _eval_lam0(lam0: dict, coords, p: int) -> int:
    total = 0
    for k, c in enumerate(coords):
        if c != 0:
            total += int(c) * lam0.get(k, 0)
    return total % p


def verify_induced_module(module: InducedModule, mod: ModularAlgebra):
    """Bracket compatibility and exact p-character identity on every basis
    element, by full matrix computation."""
    p = module.p
    dim_g = mod.alg.dim
    for a in range(dim_g):
        for b in range(a + 1, dim_g):
            lhs = (module.action[a] @ module.action[b] - module.action[b] @ module.action[a]) % p
            rhs = np.zeros_like(lhs)
            for c, v in mod.structure.get((a, b), {}).items():
                rhs = (rhs + int(v) * module.action[c]) % p
            if not np.array_equal(lhs, rhs):
                raise AssertionError(f"bracket compatibility fails at pair ({a}, {b})")
    eye = np.eye(module.dim, dtype=np.int64)
    for k in range(dim_g):
        power = eye
        for _ in range(p):
            power = (power @ module.action[k]) % p
        rest = np.zeros_like(power)
        for c, v in enumerate(mod.p_power[k]):
            if v != 0:
                rest = (rest + int(v) * module.action[c]) % p
        target = (rest + pow(int(module.chi[k]), p, p) * eye) % p
        if not np.array_equal(power, target):
            raise AssertionError(f"p-character identity fails at basis {k}")


def submodule_probe(module: InducedModule, seeds: int = 10) -> dict:
    """Closure of seeded vectors under the action matrices; reports whether
    each seed generates the whole module (suggesting simplicity per the
    Kac-Weisfeiler bound; reported, never assumed)."""
    p = module.p
    dim = module.dim
    results = []
    for s in range(seeds):
        vec = np.array(
            [(1 + ((s + 1) * 48271 * (i + 1)) % 7) % p for i in range(dim)], dtype=np.int64
        )
        basis = _GFSpan(p, dim)
        basis.add(vec)
        frontier = [vec]
        while frontier:
            nxt = []
            for v in frontier:
                for m in module.action:
                    w = (m @ v) % p
                    if basis.add(w):
                        nxt.append(w)
            frontier = nxt
        results.append(basis.rank)
    return {
        "seeds": seeds,
        "full_closures": sum(1 for r in results if r == dim),
        "ranks": results,
    }


class _GFSpan:
    def __init__(self, p, dim):
        self.p = p
        self.dim = dim
        self.rows = []
        self.pivots = []

    def add(self, vec) -> bool:
        v = vec % self.p
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                v = (v - v[piv] * row) % self.p
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return False
        piv = int(nz[0])
        inv = pow(int(v[piv]), -1, self.p)
        v = (v * inv) % self.p
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self):
        return len(self.rows)


def kw_bookkeeping(lam: Partition, eps: int, p: int, datum: InductionDatum | None = None) -> dict:
    """d(chi), the small dimension p^{d(chi)}, and for induction data the
    identity dim n + d(chi-bar) = d(chi)."""
    dim_orbit = orbit_dim_formula(lam, eps)
    d_chi = dim_orbit // 2
    out = {
        "partition": str(lam),
        "eps": eps,
        "p": p,
        "dim_orbit": dim_orbit,
        "d_chi": d_chi,
        "small_dimension": p ** d_chi,
    }
    if datum is not None:
        _, _, n_idx = embed_datum(datum)
        d_bar = datum_levi_orbit_dim(datum) // 2
        out["dim_n"] = len(n_idx)
        out["d_chi_bar"] = d_bar
        out["induction_identity"] = len(n_idx) + d_bar == d_chi
    return out


def theta_coefficients_reduce(setup, p: int) -> bool:
    """Every canonical generator coefficient has a 2-power denominator, so
    its reduction mod an odd p is well defined."""
    for th in setup.thetas.values():
        for c in th.value.values():
            if not is_two_power_denominator(c):
                return False
            Fraction(c.numerator * pow(c.denominator, -1, p), 1)
    return True
