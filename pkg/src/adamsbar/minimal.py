"""Minimal models, absolute and relative, plus the Quillen comparison.

A relative minimal model over a base N is a free extension Sym*E (x) N
whose differential is inductively built from earlier generators.  The
construction follows a double induction: outer loop over Adams weight,
inner loop over cohomological degree; at each stage, closed generators
are adjoined to make the structure map surjective on H^i of the
augmentation ideal, then generators killing the kernel on H^{i+1} are
adjoined.  All certification is by exact slice linear algebra.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .bar import BarComplex, gamma as bar_gamma
from .cdga import (
    CdgaPresentation,
    GeneratorSpec,
    el_add,
    el_gen,
    el_scale,
    is_coh_connected,
)

F = Fraction


def trivial_base():
    return CdgaPresentation("Q", "free", [])


def augment_absolute(A: CdgaPresentation):
    """Copy of A augmented to Q (every generator killed)."""
    out = CdgaPresentation(A.name, A.kind, A.generators, A.differential)
    out.products = dict(A.products)
    out.augmentation = {g.name: {} for g in A.generators}
    return out


class IdealComplex:
    """The augmentation-ideal subcomplex of an augmented cdga, per slice."""

    def __init__(self, A: CdgaPresentation):
        self.A = A
        self._ker = {}
        self._coh = {}

    def kernel(self, i, m):
        """(ambient slice basis, kernel vectors of eps in slice coords)."""
        key = (i, m)
        if key not in self._ker:
            basis = self.A.basis_slice(i, m)
            idx = {mm: k for k, mm in enumerate(basis)}
            eps = linalg.SparseMatrix(len(basis), len(basis))
            for j, mono in enumerate(basis):
                for em, c in self.A.apply_aug({mono: F(1)}).items():
                    eps.entries[(idx[em], j)] = c
            # ideal = kernel of eps on the slice
            self._ker[key] = (basis, linalg.kernel_basis(eps))
        return self._ker[key]

    def to_coords(self, el, i, m):
        """Coordinates of an ideal element in the kernel basis."""
        basis, ker = self.kernel(i, m)
        idx = {mm: k for k, mm in enumerate(basis)}
        vec = {idx[mm]: c for mm, c in el.items()}
        mat = linalg.SparseMatrix.from_columns(ker, len(basis))
        sol = linalg.solve(mat, vec)
        if sol is None:
            raise ValueError("element not in the augmentation ideal")
        return sol

    def from_coords(self, v, i, m):
        basis, ker = self.kernel(i, m)
        out = {}
        for k, c in v.items():
            for bi, bc in ker[k].items():
                out = el_add(out, {basis[bi]: bc}, c)
        return out

    def d_matrix(self, i, m):
        """Restricted differential on kernel coordinates."""
        basis, ker = self.kernel(i, m)
        dim_src = len(ker)
        _, ker2 = self.kernel(i + 1, m)
        mat = linalg.SparseMatrix(len(ker2), dim_src)
        for j, kv in enumerate(ker):
            el = self.from_coords({j: F(1)}, i, m)
            del_ = self.A.apply_d(el)
            if del_:
                for k, c in self.to_coords(del_, i + 1, m).items():
                    mat.entries[(k, j)] = c
        return mat

    def cohomology(self, i, m):
        """(dim, class reps as kernel-coordinate vectors, projector)."""
        key = (i, m)
        if key not in self._coh:
            d_out = self.d_matrix(i, m)
            d_in = self.d_matrix(i - 1, m)
            dim, reps = linalg.cohomology(d_out, d_in)
            proj = linalg.ClassProjector(
                reps, linalg.image_basis(d_in), len(self.kernel(i, m)[1])
            )
            self._coh[key] = (dim, reps, proj)
        return self._coh[key]

    def solve_d(self, i, m, target_el):
        """b in the ideal slice (i, m) with d b = target, or None."""
        mat = self.d_matrix(i, m)
        tv = self.to_coords(target_el, i + 1, m)
        sol = linalg.solve(mat, tv)
        if sol is None:
            return None
        return self.from_coords(sol, i, m)


class MinimalModelResult:
    def __init__(self, base, model, structure_map, fiber_names, stage_log,
                 certification, n, w_max):
        self.base = base
        self.model = model
        self.structure_map = structure_map  # fiber gen name -> Element of A
        self.fiber_names = fiber_names
        self.stage_log = stage_log
        self.certification = certification
        self.n = n
        self.w_max = w_max

    def certified(self):
        return all(self.certification.values())

    def fiber_count(self):
        return len(self.fiber_names)

    def s_apply(self, el, target: CdgaPresentation):
        """Push a model element through the structure map into the target."""
        out = {}
        for mono, c in el.items():
            term = {(): F(1)}
            for name, e in mono:
                img = self.structure_map.get(name, el_gen(name))
                for _ in range(e):
                    term = target.multiply(term, img)
                if not term:
                    break
            out = el_add(out, term, c)
        return out


def relative_minimal_model(N: CdgaPresentation, A: CdgaPresentation, n, w_max,
                           max_stage_iters=6):
    """n-minimal model of the augmented algebra A over the base N.

    A must contain N's generators verbatim; its augmentation map kills
    the fiber generators into N (zero by default).  Returns a
    MinimalModelResult whose model is N with free fiber generators
    adjoined, certified by slice cohomology comparison within the
    (coh <= n+1, adams <= w_max) window.
    """
    ok, wit = is_coh_connected(N, coh_max=n + 2, adams_max=w_max)
    if not ok:
        raise ValueError(f"base {N.name} not cohomologically connected: {wit}")
    base_names = {g.name for g in N.generators}
    for name in base_names:
        if name not in A.gen:
            raise ValueError(f"total algebra missing base generator {name}")
    for g in A.generators:
        if g.name not in base_names and g.name not in A.augmentation:
            raise ValueError(
                f"generator {g.name} of {A.name} is neither a base "
                "generator nor augmented; unaugmented generators are "
                "fixed by the augmentation, which is only meaningful "
                "for the base"
            )

    model = CdgaPresentation(f"{A.name}_min", N.kind, N.generators, N.differential)
    model.products = dict(N.products)
    ic_A = IdealComplex(A)
    structure_map = {}
    fiber_names = []
    stage_log = []
    counter = [0]

    def fresh_name():
        while True:
            name = f"mg{counter[0]}"
            counter[0] += 1
            if name not in A.gen and name not in model.gen:
                return name

    def adjoin(coh, adams, d_el, s_el):
        nonlocal model
        name = fresh_name()
        gens = model.generators + [GeneratorSpec(name, coh, adams)]
        newm = CdgaPresentation(model.name, model.kind, gens, model.differential)
        newm.products = dict(model.products)
        newm.differential = dict(model.differential)
        if d_el:
            newm.differential[name] = d_el
        newm.augmentation = {g: {} for g in fiber_names + [name]}
        model = newm
        fiber_names.append(name)
        structure_map[name] = s_el
        return name

    def h_map_columns(ic_M, i, m):
        """Images of H^i(I_M)(m) classes under the structure map, as
        class vectors on the A side; returns (ncols, columns)."""
        dimM, repsM, _ = ic_M.cohomology(i, m)
        _, _, projA = ic_A.cohomology(i, m)
        cols = []
        for rv in repsM:
            el = ic_M.from_coords(rv, i, m)
            img = _push(el)
            cols.append(projA.class_coords(ic_A.to_coords(img, i, m)))
        return dimM, cols

    def _push(el):
        out = {}
        for mono, c in el.items():
            term = {(): F(1)}
            for gname, e in mono:
                img = structure_map.get(gname, el_gen(gname))
                for _ in range(e):
                    term = A.multiply(term, img)
                if not term:
                    break
            out = el_add(out, term, c)
        return out

    for m in range(1, w_max + 1):
        for i in range(1, n + 1):
            added_s, added_k = [], []
            iterations = 0
            while iterations < max_stage_iters:
                iterations += 1
                changed = False
                ic_M = IdealComplex(model)
                # Step A: surjectivity on H^i(I)(m)
                dimA, repsA, projA = ic_A.cohomology(i, m)
                _, cols = h_map_columns(ic_M, i, m)
                span = linalg.echelon_basis(cols)
                missing = linalg.quotient_basis(
                    span, [{k: F(1)} for k in range(dimA)]
                )
                for cv in missing:
                    z = {}
                    for k, c in cv.items():
                        z = el_add(z, ic_A.from_coords(repsA[k], i, m), c)
                    added_s.append(adjoin(i, m, {}, z))
                    changed = True
                if changed:
                    continue
                # Step B: kill the kernel on H^{i+1}(I)(m)
                ic_M = IdealComplex(model)
                dimM2, repsM2, _ = ic_M.cohomology(i + 1, m)
                _, cols2 = h_map_columns(ic_M, i + 1, m)
                phi = linalg.SparseMatrix.from_columns(
                    cols2, ic_A.cohomology(i + 1, m)[0]
                )
                for kv in linalg.kernel_basis(phi):
                    z = {}
                    for k, c in kv.items():
                        z = el_add(z, ic_M.from_coords(repsM2[k], i + 1, m), c)
                    b = ic_A.solve_d(i, m, _push(z))
                    if b is None:
                        raise RuntimeError(
                            f"structure-map image of a kernel class not exact "
                            f"at (i={i}, m={m})"
                        )
                    added_k.append(adjoin(i, m, z, b))
                    changed = True
                if not changed:
                    break
            stage_log.append(
                {
                    "adams": m,
                    "coh": i,
                    "added_surjective": added_s,
                    "added_injective": added_k,
                    "iterations": iterations,
                }
            )

    # certification
    ic_M = IdealComplex(model)
    certification = {}
    for m in range(1, w_max + 1):
        for i in range(1, n + 2):
            dimA = ic_A.cohomology(i, m)[0]
            dimM, cols = h_map_columns(ic_M, i, m)
            rank = len(linalg.echelon_basis(cols))
            if i <= n:
                certification[(i, m)] = dimA == dimM == rank
            else:
                certification[(i, m)] = rank == dimM  # injectivity only
    result = MinimalModelResult(
        N, model, structure_map, fiber_names, stage_log, certification, n, w_max
    )
    # sanity: structure map commutes with d on every fiber generator
    for name in fiber_names:
        lhs = result.s_apply(model.differential.get(name, {}), A)
        rhs = A.apply_d(structure_map[name])
        if el_add(lhs, rhs, F(-1)):
            raise RuntimeError(f"structure map fails to commute with d at {name}")
    return result


def generalized_nilpotent_check(N: CdgaPresentation, A: CdgaPresentation):
    """Topologically sort the fiber generators by differential dependency.

    Returns (True, filtration stages) or (False, a dependency cycle).
    """
    base_names = {g.name for g in N.generators}
    fiber = [g.name for g in A.generators if g.name not in base_names]
    deps = {}
    for name in fiber:
        dg = A.differential.get(name, {})
        needed = set()
        for mono in dg:
            for gname, _ in mono:
                if gname not in base_names:
                    needed.add(gname)
        deps[name] = needed
    stages = []
    placed = set()
    remaining = list(fiber)
    while remaining:
        stage = [g for g in remaining if deps[g] <= placed]
        if not stage:
            # find a cycle for the witness
            cycle = _find_cycle(deps, remaining)
            return False, cycle
        stages.append(stage)
        placed.update(stage)
        remaining = [g for g in remaining if g not in placed]
    return True, stages


def _find_cycle(deps, nodes):
    node_set = set(nodes)
    seen = []
    cur = nodes[0]
    while cur not in seen:
        seen.append(cur)
        nxt = [g for g in deps[cur] if g in node_set]
        if not nxt:
            return seen
        cur = sorted(nxt)[0]
    return seen[seen.index(cur):]


class QAColie:
    """Degree-1 generators of the 1-minimal model with cobracket d.

    basis: list of (weight, generator name); cobracket[g]: {(p, q): c}
    with p < q global indices, reading d(gen) = sum c * gen_p * gen_q.
    """

    def __init__(self, mm: MinimalModelResult):
        self.mm = mm
        model = mm.model
        self.basis = []
        self.by_weight = {}
        order = {}
        for name in mm.fiber_names:
            g = model.gen[name]
            if g.coh != 1:
                continue
            order[name] = len(self.basis)
            self.by_weight.setdefault(g.adams, []).append(len(self.basis))
            self.basis.append((g.adams, name))
        self.cobracket = {}
        for w, name in self.basis:
            gidx = order[name]
            out = {}
            for mono, c in model.differential.get(name, {}).items():
                factors = []
                for gname, e in mono:
                    factors.extend([gname] * e)
                if len(factors) != 2 or any(f not in order for f in factors):
                    raise ValueError(
                        f"d({name}) not in the exterior square of degree-1 "
                        f"generators: {mono}"
                    )
                a, b = order[factors[0]], order[factors[1]]
                if a < b:
                    out[(a, b)] = out.get((a, b), F(0)) + c
                else:
                    out[(b, a)] = out.get((b, a), F(0)) - c
            self.cobracket[gidx] = {k: c for k, c in out.items() if c}

    def dims(self):
        return {w: len(v) for w, v in sorted(self.by_weight.items())}


def qa_colie(A: CdgaPresentation, w_max):
    ok, wit = is_coh_connected(A, coh_max=3, adams_max=w_max)
    if not ok:
        raise ValueError(f"{A.name} not cohomologically connected: {wit}")
    mm = relative_minimal_model(trivial_base(), augment_absolute(A), 1, w_max)
    return QAColie(mm)


def quillen_compare(A: CdgaPresentation, w_max):
    """Compare QA (minimal model side) with gamma_A (bar side).

    Builds the map sending a degree-1 model generator e to the class of
    the length-one bar word on its structure-map image, corrected by
    longer words into a cocycle.  Returns (ok, details).
    """
    A = augment_absolute(A)
    mm = relative_minimal_model(trivial_base(), A, 1, w_max)
    qa = QAColie(mm)
    gam = bar_gamma(A, w_max)
    if {w: d for w, d in qa.dims().items() if d} != {
        w: d for w, d in gam.dims().items() if d
    }:
        return False, {"reason": "dimension mismatch",
                       "qa": qa.dims(), "gamma": gam.dims()}
    bar_m = BarComplex(mm.model)
    # image of each QA generator in gamma coordinates: take the length-1
    # word [e] in the bar complex of the model, correct it into a cocycle
    # by longer words, push letters through the structure map, classify
    phi = {}
    for gidx, (w, name) in enumerate(qa.basis):
        lin = {(((name, 1),),): F(1)}
        target = bar_m.d_lin(lin)
        if target:
            long_words = [wd for wd in bar_m.slice(0, w) if len(wd) >= 2]
            dst = bar_m.slice(1, w)
            idx = {wd: i for i, wd in enumerate(dst)}
            mat = linalg.SparseMatrix(len(dst), len(long_words))
            for j, wd in enumerate(long_words):
                for dw, c in bar_m.d_word(wd).items():
                    mat.entries[(idx[dw], j)] = c
            tv = {idx[wd]: -c for wd, c in target.items()}
            sol = linalg.solve(mat, tv)
            if sol is None:
                return False, {"reason": f"no cocycle correction for {name}"}
            for j, c in sol.items():
                lin = el_add(lin, {long_words[j]: F(1)}, c)
        pushed = {}
        for word, c in lin.items():
            expanded = {(): c}
            for letter in word:
                img = mm.s_apply({letter: F(1)}, A)
                nxt = {}
                for wd, cc in expanded.items():
                    for mono, mc in img.items():
                        nxt[wd + (mono,)] = nxt.get(wd + (mono,), F(0)) + cc * mc
                expanded = nxt
                if not expanded:
                    break
            for wd, cc in expanded.items():
                if cc:
                    pushed[wd] = pushed.get(wd, F(0)) + cc
        pushed = {wd: c for wd, c in pushed.items() if c}
        cls = gam.hopf.classify(pushed, w)
        phi[gidx] = gam.project(cls, w)
    # weight-wise isomorphism?
    for w in set(list(qa.by_weight) + list(gam.by_weight)):
        qa_idxs = qa.by_weight.get(w, [])
        gam_idxs = gam.by_weight.get(w, [])
        if len(qa_idxs) != len(gam_idxs):
            return False, {"reason": f"dim mismatch in weight {w}"}
        cols = []
        pos = {g: k for k, g in enumerate(gam_idxs)}
        for gi in qa_idxs:
            cols.append({pos[p]: c for p, c in phi[gi].items()})
        if len(linalg.echelon_basis(cols)) != len(qa_idxs):
            return False, {"reason": f"map not bijective in weight {w}"}
    # co-Lie compatibility: gamma-cobracket of phi(e) equals phi^2 of
    # the QA cobracket of e
    def wedge_apply(pairs):
        out = {}
        for (p, q), c in pairs.items():
            for a, ca in phi[p].items():
                for b, cb in phi[q].items():
                    if a < b:
                        out[(a, b)] = out.get((a, b), F(0)) + c * ca * cb
                    elif b < a:
                        out[(b, a)] = out.get((b, a), F(0)) - c * ca * cb
        return {k: c for k, c in out.items() if c}

    for gidx in range(len(qa.basis)):
        lhs = {}
        for p, c in phi[gidx].items():
            for (a, b), c2 in gam.cobracket[p].items():
                lhs[(a, b)] = lhs.get((a, b), F(0)) + c * c2
        lhs = {k: c for k, c in lhs.items() if c}
        rhs = wedge_apply(qa.cobracket[gidx])
        if lhs != rhs:
            return False, {
                "reason": f"cobracket mismatch at generator {qa.basis[gidx]}",
                "lhs": lhs,
                "rhs": rhs,
            }
    return True, {"qa_dims": qa.dims(), "gamma_dims": gam.dims(), "phi": phi}
