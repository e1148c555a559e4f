"""Shared example algebras and random-instance generators for the tests.

E1  free on x (deg 1, wt 1), dx = 0
E2  table algebra with basis {1, x0, x1} in (1,1), all products and d zero
E3  free on x, y (1,1) and z (1,2) with dz = x*y
E4  E1-augmented: free on t (1,1) [base], u (1,1), v (1,2), dv = t*u
E4p E4 plus w (1,3) with dw = u*v + t*v
"""

import random
from fractions import Fraction

from adamsbar.cdga import CdgaPresentation, GeneratorSpec, el_gen
from adamsbar import linalg

F = Fraction


def make_e1(letter="x"):
    return CdgaPresentation("E1", "free", [GeneratorSpec(letter, 1, 1)])


def make_e2():
    gens = [GeneratorSpec("x0", 1, 1, group="e2"), GeneratorSpec("x1", 1, 1, group="e2")]
    return CdgaPresentation("E2", "table", gens)


def make_e3():
    gens = [
        GeneratorSpec("x", 1, 1),
        GeneratorSpec("y", 1, 1),
        GeneratorSpec("z", 1, 2),
    ]
    A = CdgaPresentation("E3", "free", gens)
    d = {"z": A.multiply(el_gen("x"), el_gen("y"))}
    A.differential = d
    return A


def make_e4():
    gens = [
        GeneratorSpec("t", 1, 1),
        GeneratorSpec("u", 1, 1),
        GeneratorSpec("v", 1, 2),
    ]
    A = CdgaPresentation("E4", "free", gens)
    A.differential = {"v": A.multiply(el_gen("t"), el_gen("u"))}
    A.augmentation = {"u": {}, "v": {}}
    return A


def make_e4p():
    A = make_e4()
    gens = A.generators + [GeneratorSpec("w", 1, 3)]
    B = CdgaPresentation("E4p", "free", gens)
    B.differential = dict(A.differential)
    uv = B.multiply(el_gen("u"), el_gen("v"))
    tv = B.multiply(el_gen("t"), el_gen("v"))
    B.differential["w"] = {**uv, **tv}
    B.augmentation = {"u": {}, "v": {}, "w": {}}
    return B


def base_gens_e4():
    return ["t"]


def random_free_cdga(seed, max_gens=4, deg_max=2, wt_max=3):
    """A random valid FREE cdga: each differential a cocycle in earlier gens."""
    rng = random.Random(seed)
    n_gens = rng.randint(1, max_gens)
    gens = []
    diff = {}
    for i in range(n_gens):
        name = f"g{i}"
        coh = rng.randint(1, deg_max)
        adams = rng.randint(1, wt_max)
        sub = CdgaPresentation("tmp", "free", gens, diff)
        choices = []
        basis = sub.basis_slice(coh + 1, adams)
        if basis and rng.random() < 0.7:
            idx = {m: j for j, m in enumerate(basis)}
            ker = linalg.kernel_basis(sub.d_matrix(coh + 1, adams))
            if ker:
                v = {}
                for kv in ker:
                    c = F(rng.randint(-2, 2))
                    if c:
                        v = linalg.vec_add(v, kv, c)
                choices = [{basis[j]: c for j, c in v.items()}]
        gens = gens + [GeneratorSpec(name, coh, adams)]
        if choices and choices[0]:
            diff = dict(diff)
            diff[name] = choices[0]
    return CdgaPresentation(f"R{seed}", "free", gens, diff)


def random_gen_nilpotent(seed, max_fiber=3, wt_max=3):
    """Random generalized-nilpotent total algebra over the base E1 (letter t).

    Fiber generators e_i have degree 1; each differential is a random
    degree-2 cocycle in the subalgebra generated by t and earlier e's, so
    the dependency filtration is the declaration order.
    """
    rng = random.Random(seed)
    n_fiber = rng.randint(1, max_fiber)
    gens = [GeneratorSpec("t", 1, 1)]
    diff = {}
    aug = {}
    for i in range(n_fiber):
        name = f"e{i}"
        adams = rng.randint(1, wt_max)
        sub = CdgaPresentation("tmp", "free", gens, diff)
        basis = sub.basis_slice(2, adams)
        dval = {}
        if basis and rng.random() < 0.8:
            ker = linalg.kernel_basis(sub.d_matrix(2, adams))
            v = {}
            for kv in ker:
                c = F(rng.randint(-2, 2))
                if c:
                    v = linalg.vec_add(v, kv, c)
            dval = {basis[j]: c for j, c in v.items()}
        gens = gens + [GeneratorSpec(name, 1, adams)]
        if dval:
            diff = dict(diff)
            diff[name] = dval
        aug[name] = {}
    A = CdgaPresentation(f"GN{seed}", "free", gens, diff)
    A.augmentation = aug
    return A


def random_cell_module(A, seed, max_basis=4, deg_range=(0, 2), wt_range=(0, 2)):
    """Random finite cell module over A with d^2 = 0 by construction:
    each new basis element's differential is a random cocycle in the
    module built so far."""
    from adamsbar.cellmod import CellModule

    rng = random.Random(seed)
    n = rng.randint(1, max_basis)
    basis = []
    diff = {}
    for j in range(n):
        coh = rng.randint(*deg_range)
        adams = rng.randint(*wt_range)
        if basis and rng.random() < 0.7:
            M = CellModule(A, basis, diff)
            sl = M.slice_basis(coh + 1, adams)
            if sl:
                ker = linalg.kernel_basis(M.d_matrix(coh + 1, adams))
                v = {}
                for kv in ker:
                    c = F(rng.randint(-2, 2))
                    if c:
                        v = linalg.vec_add(v, kv, c)
                for k, c in v.items():
                    mono, bi = sl[k]
                    key = (bi, j)
                    cur = diff.get(key, {})
                    cur = dict(cur)
                    cur[mono] = cur.get(mono, F(0)) + c
                    if not cur[mono]:
                        del cur[mono]
                    if cur:
                        diff[key] = cur
                    elif key in diff:
                        del diff[key]
        basis.append((f"b{j}", coh, adams))
    from adamsbar.cellmod import _strict_filtration

    return CellModule(A, basis, diff, _strict_filtration(basis, diff),
                      0, f"RM{seed}")


def dg_module_from_cell(M):
    """Underlying finite-dimensional dg A-module of a cell module over a
    finite-dimensional algebra (all generators odd), as slice matrices."""
    from adamsbar.cellmod import FiniteDgModule

    A = M.algebra
    pairs = []
    wt_max = max(a for (_, _, a) in M.basis) + sum(
        g.adams for g in A.generators)
    deg_lo = min(c for (_, c, _) in M.basis)
    deg_hi = max(c for (_, c, _) in M.basis) + sum(
        abs(g.coh) for g in A.generators) + 1
    for r in range(0, wt_max + 1):
        for nn in range(deg_lo, deg_hi + 1):
            pairs.extend(M.slice_basis(nn, r))
    index = {p: i for i, p in enumerate(pairs)}
    basis = []
    for mono, j in pairs:
        nm, cj, aj = M.basis[j]
        mn, ma = A.mono_bidegree(mono)
        basis.append((f"{mono}|{nm}", cj + mn, aj + ma))
    d = {}
    for p, i in index.items():
        for (dm, bj), c in M.d_element(*p).items():
            if (dm, bj) in index:
                d[(index[(dm, bj)], i)] = c
    action = {}
    for g in A.generators:
        mat = {}
        for (mono, j), i in index.items():
            prod = A.multiply(el_gen(g.name), {mono: F(1)})
            for pm, c in prod.items():
                if (pm, j) in index:
                    mat[(index[(pm, j)], i)] = c
        action[g.name] = mat
    return FiniteDgModule(A, basis, d, action)
