"""Adams-graded cdgas over Q, finitely presented.

A presentation is FREE (polynomial on generators, with odd squares zero)
or TABLE (generators carry a "table group"; any product of two
generators in the same group reduces through an explicit multiplication
table, unlisted products being zero).  The Adams weight of every
generator is >= 1, so the weight-0 part is Q*1 by construction and every
bidegree slice is finite dimensional.

Monomials are tuples ((name, exponent), ...) sorted by generator name;
elements are dicts {monomial: Fraction}.  The differential is stored on
generators only and extended by Leibniz on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg

F = Fraction

UNIT = ()  # the empty monomial


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    coh: int
    adams: int
    group: str | None = None  # table group; None for free generators


class CdgaError(Exception):
    pass


def el_zero():
    return {}


def el_gen(name):
    return {((name, 1),): F(1)}


def el_scalar(c):
    c = F(c)
    return {UNIT: c} if c else {}


def el_add(a, b, c=F(1)):
    out = dict(a)
    for m, x in b.items():
        y = out.get(m, F(0)) + c * x
        if y:
            out[m] = y
        else:
            out.pop(m, None)
    return out


def el_scale(a, c):
    c = F(c)
    if not c:
        return {}
    return {m: c * x for m, x in a.items()}


class CdgaPresentation:
    def __init__(self, name, kind, generators, differential=None, products=None,
                 augmentation=None):
        self.name = name
        self.kind = kind  # "free" | "table"
        self.generators = list(generators)
        self.gen = {g.name: g for g in self.generators}
        if len(self.gen) != len(self.generators):
            raise CdgaError(f"duplicate generator names in {name}")
        for g in self.generators:
            if g.adams < 1:
                raise CdgaError(f"generator {g.name} has Adams weight {g.adams} < 1")
        self.differential = dict(differential or {})
        # table products, keyed by name-sorted pair
        self.products = {}
        for (a, b), val in (products or {}).items():
            self.set_product(a, b, val)
        # augmentation values for the relative theory; generators absent
        # from the map are fixed (base generators), explicit empty
        # values augment to 0
        self.augmentation = dict(augmentation or {})
        self._slice_cache = {}

    def set_product(self, a, b, val):
        ga, gb = self.gen[a], self.gen[b]
        if ga.group is None or ga.group != gb.group:
            raise CdgaError(f"product {a}*{b} declared outside a table group")
        if (a, b) <= (b, a):
            self.products[(a, b)] = val
        else:
            sign = (-1) ** (ga.coh * gb.coh)
            self.products[(b, a)] = el_scale(val, sign)

    # ---- degrees -------------------------------------------------------

    def mono_bidegree(self, m):
        n = r = 0
        for name, e in m:
            g = self.gen[name]
            n += e * g.coh
            r += e * g.adams
        return (n, r)

    def el_bidegree(self, a):
        """Bidegree of a homogeneous element (None for 0, error if mixed)."""
        degs = {self.mono_bidegree(m) for m in a}
        if not degs:
            return None
        if len(degs) > 1:
            raise CdgaError(f"inhomogeneous element: bidegrees {sorted(degs)}")
        return degs.pop()

    # ---- multiplication ------------------------------------------------

    def _flat(self, m):
        out = []
        for name, e in m:
            out.extend([name] * e)
        return out

    def _sort_factors(self, factors):
        """Insertion-sort factor names, returning (sorted, Koszul sign)."""
        fs = list(factors)
        sign = 1
        for i in range(1, len(fs)):
            j = i
            while j > 0 and fs[j - 1] > fs[j]:
                da = self.gen[fs[j - 1]].coh
                db = self.gen[fs[j]].coh
                if (da % 2) and (db % 2):
                    sign = -sign
                fs[j - 1], fs[j] = fs[j], fs[j - 1]
                j -= 1
        return fs, sign

    def _assemble(self, fs):
        """Sorted factor list -> Element (handles table reduction)."""
        for i in range(len(fs) - 1):
            if fs[i] == fs[i + 1] and self.gen[fs[i]].coh % 2:
                return {}
        # find the first pair of factors sharing a table group (they need
        # not be adjacent after name-sorting) and reduce it
        for i in range(len(fs)):
            gi = self.gen[fs[i]]
            if gi.group is None:
                continue
            for j in range(i + 1, len(fs)):
                gj = self.gen[fs[j]]
                if gj.group != gi.group:
                    continue
                # commute fs[j] leftwards next to fs[i]
                sign = 1
                for k in range(i + 1, j):
                    if (gj.coh % 2) and (self.gen[fs[k]].coh % 2):
                        sign = -sign
                a, b = fs[i], fs[j]
                val = self.products.get((a, b) if a <= b else (b, a), {})
                if a > b:
                    val = el_scale(val, (-1) ** (gi.coh * gj.coh))
                mid = fs[i + 1:j] + fs[j + 1:]
                out = {}
                for vm, vc in val.items():
                    rest = fs[:i] + self._flat(vm) + mid
                    sorted_rest, s = self._sort_factors(rest)
                    out = el_add(out, self._assemble(sorted_rest), vc * s * sign)
                return out
        mono = []
        for name in fs:
            if mono and mono[-1][0] == name:
                mono[-1] = (name, mono[-1][1] + 1)
            else:
                mono.append((name, 1))
        return {tuple(mono): F(1)}

    def mono_mul(self, m1, m2):
        fs, sign = self._sort_factors(self._flat(m1) + self._flat(m2))
        return el_scale(self._assemble(fs), sign)

    def multiply(self, a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                out = el_add(out, self.mono_mul(m1, m2), c1 * c2)
        return out

    # ---- differential --------------------------------------------------

    def apply_d(self, a):
        out = {}
        for m, c in a.items():
            fs = self._flat(m)
            sgn = 1
            for i, name in enumerate(fs):
                dg = self.differential.get(name)
                if dg:
                    term = el_scalar(1)
                    for pre in fs[:i]:
                        term = self.multiply(term, el_gen(pre))
                    term = self.multiply(term, dg)
                    for post in fs[i + 1:]:
                        term = self.multiply(term, el_gen(post))
                    out = el_add(out, term, c * sgn)
                if self.gen[name].coh % 2:
                    sgn = -sgn
        return out

    def apply_aug(self, a):
        """Substitute generators by their augmentation values.

        Generators absent from the augmentation map are fixed (base
        generators); an explicit empty value kills the generator.
        """
        out = {}
        for m, c in a.items():
            term = el_scalar(1)
            for name in self._flat(m):
                val = self.augmentation.get(name)
                if name not in self.augmentation:
                    val = el_gen(name)
                term = self.multiply(term, val)
                if not term:
                    break
            out = el_add(out, term, c)
        return out

    # ---- slice bases ---------------------------------------------------

    def basis_slice(self, n, r):
        """Deterministically ordered monomial basis of A^n(r)."""
        key = (n, r)
        if key in self._slice_cache:
            return self._slice_cache[key]
        if r < 0:
            return []
        found = []
        gens = sorted(self.generators, key=lambda g: g.name)

        def rec(idx, mono, coh, adams, used_groups):
            if adams == r:
                if coh == n:
                    found.append(tuple(mono))
                # even with adams met, nothing more can be added (adams >= 1)
                return
            if idx == len(gens):
                return
            g = gens[idx]
            rec(idx + 1, mono, coh, adams, used_groups)
            if g.group is not None:
                if g.group in used_groups:
                    return
                if adams + g.adams <= r:
                    rec(idx + 1, mono + [(g.name, 1)], coh + g.coh,
                        adams + g.adams, used_groups | {g.group})
                return
            emax = (r - adams) // g.adams
            if g.coh % 2:
                emax = min(emax, 1)
            for e in range(1, emax + 1):
                rec(idx + 1, mono + [(g.name, e)], coh + e * g.coh,
                    adams + e * g.adams, used_groups)

        if r == 0:
            basis = [UNIT] if n == 0 else []
        else:
            rec(0, [], 0, 0, frozenset())
            basis = sorted(found)
        self._slice_cache[key] = basis
        return basis

    def el_vector(self, a, basis_index):
        v = {}
        for m, c in a.items():
            if m not in basis_index:
                raise CdgaError(f"monomial {m} outside expected slice")
            v[basis_index[m]] = c
        return v

    def vector_el(self, v, basis):
        return {basis[i]: c for i, c in v.items() if c}

    def d_matrix(self, n, r):
        """Matrix of d: A^n(r) -> A^{n+1}(r) in the slice bases."""
        src = self.basis_slice(n, r)
        dst = self.basis_slice(n + 1, r)
        idx = {m: i for i, m in enumerate(dst)}
        mat = linalg.SparseMatrix(len(dst), len(src))
        for j, m in enumerate(src):
            for dm, c in self.apply_d({m: F(1)}).items():
                mat.entries[(idx[dm], j)] = c
        return mat

    def cohomology_slice(self, n, r):
        """(dimension, representative Elements) of H^n(A)(r)."""
        dim, reps = linalg.cohomology(self.d_matrix(n, r), self.d_matrix(n - 1, r))
        basis = self.basis_slice(n, r)
        return dim, [self.vector_el(v, basis) for v in reps]


# ---- validation --------------------------------------------------------


def validate(A: CdgaPresentation, coh_max=5, adams_max=4):
    """Check the presentation axioms; returns (ok, list of failure strings)."""
    failures = []
    for g in A.generators:
        dg = A.differential.get(g.name)
        if not dg:
            continue
        try:
            bd = A.el_bidegree(dg)
        except CdgaError as e:
            failures.append(f"d({g.name}) inhomogeneous: {e}")
            continue
        if bd is not None and bd != (g.coh + 1, g.adams):
            failures.append(
                f"d({g.name}) has bidegree {bd}, expected {(g.coh + 1, g.adams)}")
    for g in A.generators:
        dg = A.differential.get(g.name)
        if dg and A.apply_d(dg):
            failures.append(f"d^2({g.name}) != 0")
    if A.kind == "table":
        failures.extend(_validate_table(A))
    for g in A.generators:
        if g.name not in A.augmentation:
            continue
        # augmentation must be a chain map generator-wise
        lhs = A.apply_d(A.augmentation[g.name])
        rhs = A.apply_aug(A.differential.get(g.name, {}))
        if el_add(lhs, rhs, F(-1)):
            failures.append(f"augmentation not a chain map at {g.name}")
    return (not failures), failures


def _validate_table(A):
    failures = []
    grouped = [g for g in A.generators if g.group is not None]
    for g in grouped:
        for h in grouped:
            if g.group != h.group:
                continue
            val = A.multiply(el_gen(g.name), el_gen(h.name))
            if val:
                bd = A.el_bidegree(val)
                if bd != (g.coh + h.coh, g.adams + h.adams):
                    failures.append(f"table product {g.name}*{h.name} bidegree {bd}")
            # graded commutativity is automatic from storage; associativity:
            for k in grouped:
                if k.group != g.group:
                    continue
                lhs = A.multiply(val, el_gen(k.name))
                rhs = A.multiply(el_gen(g.name),
                                 A.multiply(el_gen(h.name), el_gen(k.name)))
                if el_add(lhs, rhs, F(-1)):
                    failures.append(
                        f"table not associative on ({g.name},{h.name},{k.name})")
            # Leibniz for table values vs differential
            dval = A.apply_d(val)
            leib = el_add(
                A.multiply(A.differential.get(g.name, {}), el_gen(h.name)),
                A.multiply(el_gen(g.name), A.differential.get(h.name, {})),
                F((-1) ** g.coh))
            if el_add(dval, leib, F(-1)):
                failures.append(f"Leibniz fails on table pair ({g.name},{h.name})")
    return failures


def is_coh_connected(A: CdgaPresentation, coh_max=5, adams_max=4):
    """H^n(r) = 0 for n <= 0, r >= 1 within the window, H^0(0) = Q."""
    witnesses = []
    for r in range(1, adams_max + 1):
        for n in range(-coh_max, 1):
            dim, _ = A.cohomology_slice(n, r)
            if dim:
                witnesses.append((n, r, dim))
    return (not witnesses), witnesses


# ---- tensor product ----------------------------------------------------


def _rename_element(a, mapping):
    return {
        tuple(sorted((mapping.get(n, n), e) for n, e in m)): c for m, c in a.items()
    }


def tensor_cdga(A: CdgaPresentation, B: CdgaPresentation):
    mapping = {}
    taken = set(A.gen)
    for g in B.generators:
        new = g.name
        while new in taken:
            new = new + "'"
        mapping[g.name] = new
        taken.add(new)
    a_groups = {g.group for g in A.generators if g.group}
    group_map = {}
    for g in B.generators:
        if g.group:
            ng = g.group
            while ng in a_groups:
                ng = ng + "'"
            group_map[g.group] = ng
    gens = list(A.generators) + [
        GeneratorSpec(mapping[g.name], g.coh, g.adams,
                      group_map.get(g.group) if g.group else None)
        for g in B.generators
    ]
    diff = dict(A.differential)
    for n, val in B.differential.items():
        diff[mapping[n]] = _rename_element(val, mapping)
    aug = dict(A.augmentation)
    for n, val in B.augmentation.items():
        aug[mapping[n]] = _rename_element(val, mapping)
    kind = "table" if "table" in (A.kind, B.kind) else "free"
    out = CdgaPresentation(f"{A.name}_x_{B.name}", kind, gens, diff, None, aug)
    for (x, y), val in A.products.items():
        out.set_product(x, y, val)
    for (x, y), val in B.products.items():
        out.set_product(mapping[x], mapping[y], _rename_element(val, mapping))
    return out
