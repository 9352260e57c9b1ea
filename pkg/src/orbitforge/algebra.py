"""Matrix realizations of so_N and sp_N.

The underlying space k^N has basis {v_i, v_{-i} | 1 <= i <= N//2} plus v_0
for N odd, carrying the bilinear form with (v_i, v_{-j}) = delta_{ij},
(v_0, v_0) = 2 and (u, v) = eps (v, u).  The algebra is the fixed space of
sigma(X) = -J^{-1} X^T J.  Basis matrices are indexed by the signed index
set; positions map to matrix coordinates through ``pos``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rings import Ring, ZZ, QQ
from .linalg import SparseMatrix, commutator, solve


class ClassicalAlgebra:
    def __init__(self, N: int, eps: int):
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if N < 1 or (eps == -1 and N % 2 != 0):
            raise ValueError(f"invalid (N, eps) = ({N}, {eps})")
        self.N = N
        self.eps = eps
        self.h = N // 2
        # matrix coordinate layout: v_h, ..., v_1, (v_0,) v_{-1}, ..., v_{-h}
        idxs = list(range(self.h, 0, -1))
        if N % 2 == 1:
            idxs.append(0)
        idxs += list(range(-1, -self.h - 1, -1))
        self.indices = idxs
        self.pos = {a: i for i, a in enumerate(idxs)}
        self._build_form()
        self._build_basis()
        self._root_data = None
        self._killing = None

    # -- form and sigma ------------------------------------------------------

    def _build_form(self):
        ent = {}
        for i in range(1, self.h + 1):
            ent[(self.pos[i], self.pos[-i])] = 1
            ent[(self.pos[-i], self.pos[i])] = self.eps
        if self.N % 2 == 1:
            ent[(self.pos[0], self.pos[0])] = 2
        self.J = SparseMatrix(self.N, self.N, QQ, ent)
        inv = {}
        for i in range(1, self.h + 1):
            inv[(self.pos[-i], self.pos[i])] = 1
            inv[(self.pos[i], self.pos[-i])] = self.eps
        if self.N % 2 == 1:
            inv[(self.pos[0], self.pos[0])] = Fraction(1, 2)
        self.J_inv = SparseMatrix(self.N, self.N, QQ, inv)
        assert self.J @ self.J_inv == SparseMatrix.identity(self.N, QQ)

    def unit(self, a: int, b: int, coeff=1, ring: Ring = QQ) -> SparseMatrix:
        """The elementary matrix coeff * e_{a,b} in signed-index labels."""
        return SparseMatrix(self.N, self.N, ring, {(self.pos[a], self.pos[b]): coeff})

    def sigma(self, x: SparseMatrix) -> SparseMatrix:
        return -(self.J_inv @ x.transpose() @ self.J)

    def in_algebra(self, x: SparseMatrix) -> bool:
        return self.sigma(x) == x

    # -- Chevalley basis ------------------------------------------------------

    def _build_basis(self):
        h, eps = self.h, self.eps
        root_vectors = []  # (root weight tuple, [(a, b, coeff), ...])

        def rv(weight, terms):
            root_vectors.append((weight, terms))

        def wt(*pairs):
            w = [0] * h
            for i, c in pairs:
                w[i - 1] += c
            return tuple(w)

        for i in range(1, h + 1):
            for j in range(1, h + 1):
                if i != j:
                    rv(wt((i, 1), (j, -1)), [(i, j, 1), (-j, -i, -1)])
        for i in range(1, h + 1):
            for j in range(i + 1, h + 1):
                if eps == 1:
                    rv(wt((i, 1), (j, 1)), [(i, -j, 1), (j, -i, -1)])
                    rv(wt((i, -1), (j, -1)), [(-j, i, 1), (-i, j, -1)])
                else:
                    rv(wt((i, 1), (j, 1)), [(i, -j, 1), (j, -i, 1)])
                    rv(wt((i, -1), (j, -1)), [(-i, j, 1), (-j, i, 1)])
        if eps == 1 and self.N % 2 == 1:
            for k in range(1, h + 1):
                rv(wt((k, 1)), [(k, 0, 2), (0, -k, -1)])
                rv(wt((k, -1)), [(0, k, 1), (-k, 0, -2)])
        if eps == -1:
            for k in range(1, h + 1):
                rv(wt((k, 2)), [(k, -k, 1)])
                rv(wt((k, -2)), [(-k, k, 1)])

        self.simple_roots = self._simple_roots()
        pos_roots = [w for w, _ in root_vectors if self._is_positive(w)]
        heights = {w: self._height(w) for w in pos_roots}

        def pos_key(w):
            return (heights[w], w)

        ordered = []
        labels = []
        # Cartan: simple coroots h_alpha = [e_alpha, e_{-alpha}]
        by_weight = {w: terms for w, terms in root_vectors}
        self._rv_terms = by_weight
        cartan = []
        for a in self.simple_roots:
            ea = self._terms_to_matrix(by_weight[a])
            ena = self._terms_to_matrix(by_weight[self._neg(a)])
            cartan.append(commutator(ea, ena))
        if len(cartan) < h:  # so_2: toral, no roots
            for i in range(len(cartan) + 1, h + 1):
                cartan.append(self.unit(i, i) - self.unit(-i, -i))
        for k, m in enumerate(cartan):
            ordered.append(m)
            labels.append(("h", k))
        for w in sorted(pos_roots, key=pos_key):
            ordered.append(self._terms_to_matrix(by_weight[w]))
            labels.append(("e", w))
        for w in sorted(pos_roots, key=pos_key):
            nw = self._neg(w)
            ordered.append(self._terms_to_matrix(by_weight[nw]))
            labels.append(("e", nw))

        self.basis = ordered
        self.labels = labels
        self.dim = len(ordered)
        expected = self.N * (self.N - 1) // 2 if eps == 1 else self.N * (self.N + 1) // 2
        if self.dim != expected:
            raise AssertionError(f"dim {self.dim} != {expected} for (N,eps)=({self.N},{eps})")
        self.positive_roots = sorted(pos_roots, key=pos_key)
        self.root_of_basis = {}
        for k, lab in enumerate(labels):
            self.root_of_basis[k] = lab[1] if lab[0] == "e" else None
        self._build_coordinate_map()

    def _terms_to_matrix(self, terms, ring: Ring = QQ) -> SparseMatrix:
        ent = {}
        for a, b, c in terms:
            ent[(self.pos[a], self.pos[b])] = c
        return SparseMatrix(self.N, self.N, ring, ent)

    def _neg(self, w):
        return tuple(-x for x in w)

    def _is_positive(self, w) -> bool:
        for x in w:
            if x != 0:
                return x > 0
        return False

    def _simple_roots(self):
        h, eps = self.h, self.eps
        simples = []
        for i in range(1, h):
            simples.append(tuple(1 if k == i - 1 else (-1 if k == i else 0) for k in range(h)))
        if eps == -1:
            simples.append(tuple(2 if k == h - 1 else 0 for k in range(h)))
        elif self.N % 2 == 1:
            simples.append(tuple(1 if k == h - 1 else 0 for k in range(h)))
        elif h >= 2:
            simples.append(tuple(1 if k >= h - 2 else 0 for k in range(h)))
        # so_2: no roots at all
        return simples

    @lru_cache(maxsize=None)
    def _height_solver(self):
        mat = SparseMatrix.from_dense(
            [[Fraction(s[i]) for s in self.simple_roots] for i in range(self.h)], QQ
        )
        return mat

    def _height(self, w) -> int:
        coeffs = solve(self._height_solver(), [Fraction(x) for x in w])
        if coeffs is None:
            raise AssertionError(f"root {w} not in simple-root span")
        total = sum(coeffs)
        if total.denominator != 1:
            raise AssertionError("non-integral height")
        return int(total)

    # -- coordinates -----------------------------------------------------------

    def _build_coordinate_map(self):
        # one matrix position per root vector where no other basis element
        # is supported; Cartan coordinates come from the diagonal
        taken = {}
        for k, m in enumerate(self.basis):
            if self.labels[k][0] != "e":
                continue
            for (r, c), v in m.items():
                if r != c:
                    taken.setdefault((r, c), []).append((k, v))
        self._lead = {}
        for k, m in enumerate(self.basis):
            if self.labels[k][0] != "e":
                continue
            found = None
            for (r, c), v in m.items():
                if len(taken[(r, c)]) == 1:
                    found = ((r, c), v)
                    break
            if found is None:
                raise AssertionError("no identifying position for a root vector")
            self._lead[k] = found
        # Cartan: express diag coefficients (on h_i = e_ii - e_{-i,-i}) in the
        # chosen Cartan basis
        hmat = []
        for k, m in enumerate(self.basis):
            if self.labels[k][0] == "h":
                hmat.append([m[(self.pos[i], self.pos[i])] for i in range(1, self.h + 1)])
        self._cartan_count = len(hmat)
        self._cartan_solver = SparseMatrix.from_dense(
            [[hmat[j][i] for j in range(len(hmat))] for i in range(self.h)], QQ
        )

    def coordinates(self, x: SparseMatrix):
        """Exact coordinates of x in the Chevalley basis; raises if x is not
        in the algebra."""
        ring = x.ring
        if ring.kind == "ZZ":
            qcoords = self.coordinates(x.change_ring(QQ))
            return tuple(ZZ.coerce(c) for c in qcoords)
        coords = [ring.zero()] * self.dim
        for k in range(self._cartan_count, self.dim):
            (rc, v) = self._lead[k]
            val = x[rc]
            if val != 0:
                coords[k] = ring.div(val, ring.coerce(v))
        diag = [x[(self.pos[i], self.pos[i])] for i in range(1, self.h + 1)]
        csol = solve(self._cartan_solver.change_ring(ring), diag)
        if csol is None:
            raise ValueError("matrix is not in the algebra (Cartan part)")
        for j in range(self._cartan_count):
            coords[j] = csol[j]
        # exact reconstruction check
        recon = SparseMatrix.zeros(self.N, self.N, ring)
        for k, c in enumerate(coords):
            if c != 0:
                recon = recon + self.basis[k].change_ring(ring).scale(c)
        if recon != x.change_ring(ring):
            raise ValueError("matrix is not in the algebra")
        return tuple(coords)

    def from_coordinates(self, coords, ring: Ring = QQ) -> SparseMatrix:
        out = SparseMatrix.zeros(self.N, self.N, ring)
        for k, c in enumerate(coords):
            if c != 0:
                out = out + self.basis[k].change_ring(ring).scale(c)
        return out

    def ad_matrix(self, x: SparseMatrix, ring: Ring = QQ) -> SparseMatrix:
        """Matrix of ad(x) on the Chevalley basis."""
        ent = {}
        for j, b in enumerate(self.basis):
            col = self.coordinates(commutator(x.change_ring(ring), b.change_ring(ring)))
            for i, v in enumerate(col):
                if v != 0:
                    ent[(i, j)] = v
        return SparseMatrix(self.dim, self.dim, ring, ent)

    @property
    def type_a_like(self) -> bool:
        """Degenerate or type-A-coincident cases excluded from the rigid
        orbit theory: so_2, so_3, so_4, so_6 and sp_2."""
        return (self.eps == 1 and self.N in (2, 3, 4, 6)) or (self.eps == -1 and self.N == 2)

    # -- root data and Killing form --------------------------------------------

    def root_data(self):
        if self._root_data is not None:
            return self._root_data
        roots = [w for w in self._rv_terms]
        norms = {w: sum(x * x for x in w) for w in roots}
        if roots:
            scale = Fraction(2, min(norms.values()))
            norms = {w: scale * n for w, n in norms.items()}
            d = max(norms.values()) / min(norms.values())
        else:
            d = Fraction(1)
        cartan_matrix = []
        for a in self.simple_roots:
            row = []
            for b in self.simple_roots:
                # <a, b^vee> = 2(a|b)/(b|b), with the unscaled product
                ab = sum(x * y for x, y in zip(a, b))
                bb = sum(x * x for x in b)
                val = Fraction(2 * ab, bb)
                if val.denominator != 1:
                    raise AssertionError("non-integral Cartan entry")
                row.append(int(val))
            cartan_matrix.append(row)
        self._root_data = {
            "roots": sorted(roots),
            "simple_roots": self.simple_roots,
            "positive_roots": self.positive_roots,
            "norms": norms,
            "d": d,
            "cartan_matrix": cartan_matrix,
        }
        return self._root_data

    def killing_form(self):
        """Gram matrix of the normalised Killing form on the Chevalley basis,
        with the proportionality constant to the trace form."""
        if self._killing is not None:
            return self._killing
        rd = self.root_data()
        norms, d = rd["norms"], rd["d"]
        gram = {}
        if rd["roots"]:
            # kappa is proportional to the trace form; fix the constant on a
            # root-vector pair from the normalised value 2d/(alpha|alpha)
            w0 = rd["positive_roots"][0]
            e_plus = self._terms_to_matrix(self._rv_terms[w0])
            e_minus = self._terms_to_matrix(self._rv_terms[self._neg(w0)])
            target = Fraction(2) * d / norms[w0]
            tr = (e_plus @ e_minus).trace()
            const = target / tr
        else:
            const = Fraction(1, 2)  # orthogonal family value
        for i in range(self.dim):
            for j in range(i, self.dim):
                val = const * (self.basis[i] @ self.basis[j]).trace()
                if val != 0:
                    gram[(i, j)] = val
                    if i != j:
                        gram[(j, i)] = val
        gmat = SparseMatrix(self.dim, self.dim, QQ, gram)
        # cross-check the closed-form values on all root-vector pairs
        for k, lab in enumerate(self.labels):
            if lab[0] != "e":
                continue
            w = lab[1]
            for l, lab2 in enumerate(self.labels):
                if lab2[0] != "e":
                    continue
                expect = Fraction(2) * d / norms[w] if lab2[1] == self._neg(w) else Fraction(0)
                if gmat[(k, l)] != expect:
                    raise AssertionError("Killing values disagree with the root formula")
        # and on the simple-coroot pairs: kappa(h_a, h_b) = 4d(a|b)/((a|a)(b|b))
        if rd["roots"]:
            scale = norms[rd["positive_roots"][0]] / Fraction(
                sum(x * x for x in rd["positive_roots"][0])
            )
            for i, a in enumerate(self.simple_roots):
                for j, b in enumerate(self.simple_roots):
                    ab = scale * sum(x * y for x, y in zip(a, b))
                    aa, bb = norms[tuple(a)], norms[tuple(b)]
                    if gmat[(i, j)] != Fraction(4) * d * ab / (aa * bb):
                        raise AssertionError("Cartan Killing values disagree with the root formula")
        self._killing = {"gram": gmat, "trace_constant": const, "d": d}
        return self._killing

    def kappa(self, x: SparseMatrix, y: SparseMatrix):
        c = self.killing_form()["trace_constant"]
        return c * (x.change_ring(QQ) @ y.change_ring(QQ)).trace()


@lru_cache(maxsize=None)
def build_algebra(N: int, eps: int) -> ClassicalAlgebra:
    return ClassicalAlgebra(N, eps)
