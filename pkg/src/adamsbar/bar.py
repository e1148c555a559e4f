"""Reduced bar construction of an Adams-graded cdga.

Words [x1|...|xm] have letters drawn from slice bases of the
augmentation ideal (positive Adams weight); cohomological degree is
-m + sum deg(xi), Adams weight is the sum of letter weights.  Since every
letter has weight >= 1, word length is bounded by the weight, and every
(degree, weight) slice is finite dimensional.

Sign conventions (fixed once, verified by the d^2 = 0 / Leibniz / Hopf
test suite): with suspended degrees ebar(x) = deg(x) - 1 and
sig_i = sum_{j<i} ebar(x_j),

  d[..] = sum_i (-1)^{sig_i} [..|d x_i|..]
        + sum_i (-1)^{sig_i + ebar(x_i)} [..|x_i x_{i+1}|..]

and the shuffle product carries the Koszul sign of the interleaving
computed from suspended degrees.  The antipode reverses the word with
sign (-1)^m * (-1)^{sum_{i<j} ebar_i ebar_j}.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .cdga import CdgaPresentation, UNIT

F = Fraction


def _wadd(out, w, c):
    y = out.get(w, F(0)) + c
    if y:
        out[w] = y
    else:
        out.pop(w, None)


class BarComplex:
    def __init__(self, A: CdgaPresentation):
        self.A = A
        self._letters = {}
        self._words = {}
        self._slices = {}
        if A.generators:
            self._min_d = min(g.coh for g in A.generators)
            self._max_d = max(g.coh for g in A.generators)
        else:
            self._min_d = self._max_d = 0

    # ---- enumeration ---------------------------------------------------

    def letters(self, r):
        """All monomial letters of Adams weight r, with cached degrees."""
        if r not in self._letters:
            out = []
            lo = min(0, r * self._min_d)
            hi = max(0, r * self._max_d)
            for n in range(lo, hi + 1):
                for m in self.A.basis_slice(n, r):
                    if m != UNIT:
                        out.append(m)
            self._letters[r] = out
        return self._letters[r]

    def words_of_weight(self, w):
        if w not in self._words:
            if w == 0:
                self._words[w] = [()]
            else:
                out = []
                for r in range(1, w + 1):
                    for letter in self.letters(r):
                        for tail in self.words_of_weight(w - r):
                            out.append((letter,) + tail)
                self._words[w] = out
        return self._words[w]

    def word_bidegree(self, word):
        n = 0
        r = 0
        for m in word:
            mn, mr = self.A.mono_bidegree(m)
            n += mn
            r += mr
        return (n - len(word), r)

    def slice(self, n, w, max_len=None):
        key = (n, w, max_len)
        if key not in self._slices:
            ws = [
                word
                for word in self.words_of_weight(w)
                if self.word_bidegree(word)[0] == n
                and (max_len is None or len(word) <= max_len)
            ]
            self._slices[key] = sorted(ws)
        return self._slices[key]

    # ---- structure maps ------------------------------------------------

    def _ebar(self, m):
        return self.A.mono_bidegree(m)[0] - 1

    def d_word(self, word):
        out = {}
        sig = 0
        for i, letter in enumerate(word):
            for lm, c in self.A.apply_d({letter: F(1)}).items():
                _wadd(out, word[:i] + (lm,) + word[i + 1:], c * (-1) ** sig)
            if i < len(word) - 1:
                prod = self.A.multiply({letter: F(1)}, {word[i + 1]: F(1)})
                s = sig + self._ebar(letter)
                for lm, c in prod.items():
                    _wadd(out, word[:i] + (lm,) + word[i + 2:], c * (-1) ** s)
            sig += self._ebar(letter)
        return out

    def d_lin(self, lin):
        out = {}
        for word, c in lin.items():
            for nw, nc in self.d_word(word).items():
                _wadd(out, nw, c * nc)
        return out

    def d_matrix(self, n, w, max_len=None):
        src = self.slice(n, w, max_len)
        dst = self.slice(n + 1, w, max_len)
        idx = {word: i for i, word in enumerate(dst)}
        mat = linalg.SparseMatrix(len(dst), len(src))
        for j, word in enumerate(src):
            for dw, c in self.d_word(word).items():
                mat.entries[(idx[dw], j)] = c
        return mat

    def shuffle_words(self, u, v):
        out = {}

        def rec(uu, vv, acc, sign):
            if not uu and not vv:
                _wadd(out, tuple(acc), F(sign))
                return
            if uu:
                rec(uu[1:], vv, acc + [uu[0]], sign)
            if vv:
                s = sign * (-1) ** (
                    self._ebar(vv[0]) * sum(self._ebar(l) for l in uu)
                )
                rec(uu, vv[1:], acc + [vv[0]], s)

        rec(list(u), list(v), [], 1)
        return out

    def shuffle_lin(self, a, b):
        out = {}
        for u, cu in a.items():
            for v, cv in b.items():
                for w, c in self.shuffle_words(u, v).items():
                    _wadd(out, w, cu * cv * c)
        return out

    def coprod_word(self, word):
        """Deconcatenation: list of (prefix, suffix) pairs (coefficient 1)."""
        return [(word[:i], word[i:]) for i in range(len(word) + 1)]

    def antipode_word(self, word):
        m = len(word)
        eb = [self._ebar(l) for l in word]
        s = sum(eb[i] * eb[j] for i in range(m) for j in range(i + 1, m))
        return {tuple(reversed(word)): F((-1) ** (m + s))}

    def antipode_lin(self, a):
        out = {}
        for word, c in a.items():
            for nw, nc in self.antipode_word(word).items():
                _wadd(out, nw, c * nc)
        return out

    def vector(self, lin, n, w, max_len=None):
        idx = {word: i for i, word in enumerate(self.slice(n, w, max_len))}
        return {idx[word]: c for word, c in lin.items()}

    def lin(self, vec, n, w, max_len=None):
        basis = self.slice(n, w, max_len)
        return {basis[i]: c for i, c in vec.items() if c}


class WeightPiece:
    """H^0 of the bar complex in one Adams weight."""

    def __init__(self, bar: BarComplex, w, max_len=None):
        self.w = w
        self.words = bar.slice(0, w, max_len)
        d_out = bar.d_matrix(0, w, max_len)
        d_in = bar.d_matrix(-1, w, max_len)
        self.dim, self.reps = linalg.cohomology(d_out, d_in)
        self.image = linalg.image_basis(d_in)
        self.projector = linalg.ClassProjector(
            self.reps, self.image, len(self.words)
        )

    def rep_lins(self, bar):
        return [bar.lin(v, 0, self.w) for v in self.reps]


class HopfPresentation:
    """Weight-truncated H^0(Bbar(A)) with all structure constants.

    product[(w1, i, w2, j)]: dict {k: coeff} over weight-(w1+w2) classes.
    coproduct[(w, k)]: dict {(w1, i, j): coeff} meaning class_i(w1) (x)
    class_j(w - w1), including the w1 = 0 and w1 = w (grouplike) parts.
    antipode[(w, k)]: dict {k2: coeff} within weight w.
    """

    def __init__(self, A: CdgaPresentation, w_max, max_len=None):
        self.A = A
        self.w_max = w_max
        self.bar = BarComplex(A)
        self.pieces = {w: WeightPiece(self.bar, w, max_len) for w in range(w_max + 1)}
        self.product = {}
        self.coproduct = {}
        self.antipode = {}
        self._compute_product()
        self._compute_coproduct()
        self._compute_antipode()

    def dims(self):
        return {w: self.pieces[w].dim for w in range(self.w_max + 1)}

    def classify(self, lin, w, strict=True):
        """Class coordinates of a degree-0 weight-w cocycle combination."""
        v = self.bar.vector(lin, 0, w)
        return self.pieces[w].projector.class_coords(v, strict=strict)

    def _compute_product(self):
        bar = self.bar
        for w1 in range(self.w_max + 1):
            for w2 in range(self.w_max + 1 - w1):
                p1, p2 = self.pieces[w1], self.pieces[w2]
                for i, u in enumerate(p1.rep_lins(bar)):
                    for j, v in enumerate(p2.rep_lins(bar)):
                        prod = bar.shuffle_lin(u, v)
                        self.product[(w1, i, w2, j)] = self.classify(prod, w1 + w2)

    def _compute_coproduct(self):
        bar = self.bar
        for w in range(self.w_max + 1):
            piece = self.pieces[w]
            for k, rep in enumerate(piece.rep_lins(bar)):
                out = {}
                # split the deconcatenation by prefix weight
                by_weight = {}
                for word, c in rep.items():
                    for u, v in bar.coprod_word(word):
                        w1 = bar.word_bidegree(u)[1]
                        by_weight.setdefault(w1, {})
                        _wadd(by_weight[w1], (u, v), c)
                for w1, pairs in by_weight.items():
                    w2 = w - w1
                    # expand over the suffix word basis; each prefix
                    # coefficient vector is then a cocycle (no negative
                    # bar degrees for connected A)
                    suffix_basis = {}
                    for (u, v), c in pairs.items():
                        suffix_basis.setdefault(v, {})
                        _wadd(suffix_basis[v], u, c)
                    # classify prefixes, collect (class_i, suffix) coeffs
                    suff_by_class = {}
                    for v, ulin in suffix_basis.items():
                        ucls = self.classify(ulin, w1)
                        for i, c in ucls.items():
                            suff_by_class.setdefault(i, {})
                            _wadd(suff_by_class[i], v, c)
                    for i, vlin in suff_by_class.items():
                        vcls = self.classify(vlin, w2)
                        for j, c in vcls.items():
                            out[(w1, i, j)] = out.get((w1, i, j), F(0)) + c
                self.coproduct[(w, k)] = {k2: c for k2, c in out.items() if c}

    def _compute_antipode(self):
        bar = self.bar
        for w in range(self.w_max + 1):
            piece = self.pieces[w]
            for k, rep in enumerate(piece.rep_lins(bar)):
                self.antipode[(w, k)] = self.classify(bar.antipode_lin(rep), w)


def h0_hopf(A: CdgaPresentation, w_max, max_len=None):
    from .cdga import is_coh_connected

    ok, wit = is_coh_connected(A, coh_max=3, adams_max=w_max)
    if not ok:
        raise ValueError(f"algebra {A.name} not cohomologically connected: {wit}")
    return HopfPresentation(A, w_max, max_len=max_len)


def bar_truncated_h0(A: CdgaPresentation, m, w_max):
    """Per-weight H^0 dims computed on words of length <= m."""
    bar = BarComplex(A)
    return {w: WeightPiece(bar, w, max_len=m).dim for w in range(w_max + 1)}


class CoLiePresentation:
    """Indecomposables gamma(w) of a HopfPresentation with their cobracket.

    basis: list of (w, class_coords) pairs; index in this list is the
    global generator index.  cobracket[g]: dict {(p, q): coeff} with
    p < q global indices, the coefficient of gen_p wedge gen_q.
    """

    def __init__(self, hopf: HopfPresentation):
        self.hopf = hopf
        self.basis = []
        self.by_weight = {}
        self._gamma_proj = {}
        for w in range(1, hopf.w_max + 1):
            piece = hopf.pieces[w]
            # decomposables: products of positive lower weights
            decomp = []
            for w1 in range(1, w):
                w2 = w - w1
                for i in range(hopf.pieces[w1].dim):
                    for j in range(hopf.pieces[w2].dim):
                        v = hopf.product[(w1, i, w2, j)]
                        if v:
                            decomp.append(v)
            decomp_basis = linalg.echelon_basis(decomp)
            reps = linalg.quotient_reps(decomp_basis, piece.dim)
            idxs = []
            for v in reps:
                idxs.append(len(self.basis))
                self.basis.append((w, v))
            self.by_weight[w] = idxs
            cols = reps + decomp_basis
            self._gamma_proj[w] = (
                linalg.SparseMatrix.from_columns(cols, piece.dim)
                if cols
                else None,
                len(reps),
                idxs,
            )
        self.cobracket = {g: self._cobracket(g) for g in range(len(self.basis))}

    def dims(self):
        return {w: len(self.by_weight[w]) for w in sorted(self.by_weight)}

    def project(self, class_vec, w):
        """gamma coordinates (global indices) of a weight-w H^0_+ vector."""
        mat, nreps, idxs = self._gamma_proj[w]
        if mat is None:
            if class_vec:
                raise ValueError("nonzero vector in trivial weight piece")
            return {}
        sol = linalg.solve(mat, class_vec)
        if sol is None:
            raise ValueError("vector outside weight piece span")
        return {idxs[i]: c for i, c in sol.items() if i < nreps and c}

    def _cobracket(self, g):
        w, class_vec = self.basis[g]
        hopf = self.hopf
        # reduced coproduct of the class, projected factor-wise to gamma
        tensor = {}
        for k, c in class_vec.items():
            for (w1, i, j), cc in hopf.coproduct[(w, k)].items():
                w2 = w - w1
                if w1 == 0 or w2 == 0:
                    continue
                gi = self.project({i: F(1)}, w1)
                gj = self.project({j: F(1)}, w2)
                for p, cp in gi.items():
                    for q, cq in gj.items():
                        _wadd(tensor, (p, q), c * cc * cp * cq)
        # antisymmetrize; the orientation (q before p) is fixed so that the
        # cobracket matches the differential of the 1-minimal model under
        # the comparison isomorphism
        out = {}
        for (p, q), c in tensor.items():
            if p < q:
                _wadd(out, (p, q), -c)
            elif q < p:
                _wadd(out, (q, p), c)
        return out


def gamma(A: CdgaPresentation, w_max):
    return CoLiePresentation(h0_hopf(A, w_max))


def polynomial_dims(gamma_dims, w_max):
    """dims of the free graded-commutative algebra on gamma generators.

    All gamma generators sit in bar degree 0, so this is a plain symmetric
    algebra: coefficient of t^w in prod_w (1 - t^w)^(-gamma_w).
    """
    coeffs = [1] + [0] * w_max
    for w, gdim in gamma_dims.items():
        for _ in range(gdim):
            # multiply by 1/(1 - t^w)
            for i in range(w, w_max + 1):
                coeffs[i] += coeffs[i - w]
    return {w: coeffs[w] for w in range(w_max + 1)}
