#!/usr/bin/env python3
"""Writes the permutation-group data files under data/.

PSp6(2) = Sp6(2) acts on the 64 quadratic forms on F_2^6 that polarise to the
standard symplectic form; the 28 forms of Arf invariant 1 and the 36 forms of
Arf invariant 0 give its two 2-transitive actions. PSp4(3).2 = W(E6) acts on
the 27 lines of a cubic surface, realised as the (-1)-classes in Z^{1,6}.
"""
import itertools
import random
import sys
from pathlib import Path

from sympy.combinatorics import Permutation, PermutationGroup

DATA = Path(__file__).resolve().parent.parent / "data"

X_CYCLES = [
    (1, 55, 27, 36, 8, 54, 26, 32, 4, 50, 22, 30, 2, 29),
    (3, 34, 6, 35, 7, 56, 28, 42, 14, 52, 24, 40, 12, 31),
    (5, 47, 19, 45, 17, 37, 9, 43, 15, 49, 21, 44, 16, 33),
    (10, 51, 23, 39, 11, 46, 18, 53, 25, 48, 20, 41, 13, 38),
]
Y_CYCLES = [
    (1, 20), (3, 6), (4, 21), (5, 15), (8, 25), (9, 19), (10, 18), (11, 24),
    (12, 23), (13, 22), (14, 28), (16, 26), (30, 41), (31, 52), (32, 44),
    (33, 49), (35, 56), (36, 48), (37, 45), (38, 53), (39, 40), (43, 47),
    (46, 51), (50, 54),
]


def cycles_text(images):
    """Disjoint cycle notation, 1-based, fixed points omitted."""
    seen = [False] * len(images)
    out = []
    for i in range(len(images)):
        if seen[i] or images[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = images[j]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def write_group(name, degree, gens, comment):
    lines = [f"# {c}" for c in comment] + [f"degree {degree}"]
    lines += [cycles_text(g) for g in gens]
    (DATA / name).write_text("\n".join(lines) + "\n")


# ---- Sp6(2) on quadratic forms -------------------------------------------

def bform(x, y):
    """Standard symplectic form; bits 0..2 and 3..5 are dual coordinates."""
    return bin((x & 7) & (y >> 3) ^ (x >> 3) & (y & 7)).count("1") & 1


def q0(x):
    return bin((x & 7) & (x >> 3)).count("1") & 1


def transvection(v):
    return [x ^ (v if bform(x, v) else 0) for x in range(64)]


def form_table(a):
    return tuple(q0(x) ^ bform(a, x) for x in range(64))


def form_action(g, forms):
    """Permutation of the forms induced by the linear map g (Q -> Q o g^-1)."""
    inv = [0] * 64
    for x, gx in enumerate(g):
        inv[gx] = x
    index = {f: i for i, f in enumerate(forms)}
    return [index[tuple(f[inv[x]] for x in range(64))] for f in forms]


def compose_lin(g, h):
    return [g[h[x]] for x in range(64)]


def sp62_generators(rng):
    """Two products of transvections generating Sp6(2), checked by order."""
    forms28 = [form_table(a) for a in range(64) if q0(a) == 1]
    while True:
        lin = []
        for _ in range(2):
            g = list(range(64))
            for _ in range(9):
                g = compose_lin(g, transvection(rng.randrange(1, 64)))
            lin.append(g)
        perms = [Permutation(form_action(g, forms28)) for g in lin]
        if PermutationGroup(perms).order() == 1451520:
            return lin


# ---- W(E6) on the 27 lines -----------------------------------------------

def dot(u, v):
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


def reflect(v, r):
    c = dot(v, r)
    return tuple(a + c * b for a, b in zip(v, r))


def lines27():
    out = []
    for i in range(6):
        e = [0] * 7
        e[i + 1] = 1
        out.append(tuple(e))
    for i, j in itertools.combinations(range(6), 2):
        e = [1] + [0] * 6
        e[i + 1] = e[j + 1] = -1
        out.append(tuple(e))
    for i in range(6):
        e = [2] + [-1] * 6
        e[i + 1] = 0
        out.append(tuple(e))
    return out


def e6_generators():
    lines = lines27()
    index = {l: k for k, l in enumerate(lines)}
    roots = []
    for i in range(1, 6):
        r = [0] * 7
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
    roots.append((1, -1, -1, -1, 0, 0, 0))
    refl = [[index[reflect(l, r)] for l in lines] for r in roots]
    # Two generators: a reflection and a Coxeter element.
    cox = list(range(27))
    for s in refl:
        cox = [s[cox[i]] for i in range(27)]
    gens = [refl[0], cox]
    assert PermutationGroup([Permutation(g) for g in gens]).order() == 51840
    return gens


def main():
    DATA.mkdir(exist_ok=True)
    x = Permutation([[c - 1 for c in cyc] for cyc in X_CYCLES], size=56)
    y = Permutation([[c - 1 for c in cyc] for cyc in Y_CYCLES], size=56)
    write_group("psp62_wreath56.grp", 56, [x.array_form, y.array_form],
                ["Monodromy x, y of the degree-56 Belyi map with a degree-2 subcover;",
                 "x, y, (xy)^-1 have cycle types 14^4, 2^24.1^8, 4^6.2^16."])

    rng = random.Random(20190211)
    lin = sp62_generators(rng)
    forms28 = [form_table(a) for a in range(64) if q0(a) == 1]
    forms36 = [form_table(a) for a in range(64) if q0(a) == 0]
    write_group("psp62_28.grp", 28, [form_action(g, forms28) for g in lin],
                ["PSp6(2) acting on the 28 quadratic forms of Arf invariant 1."])
    g36 = [form_action(g, forms36) for g in lin]
    assert PermutationGroup([Permutation(g) for g in g36]).order() == 1451520
    write_group("psp62_36.grp", 36, g36,
                ["PSp6(2) acting on the 36 quadratic forms of Arf invariant 0."])
    write_group("psp43_2_27.grp", 27, e6_generators(),
                ["PSp4(3).2 = W(E6) acting on the 27 lines of a cubic surface."])
    return 0


if __name__ == "__main__":
    sys.exit(main())
