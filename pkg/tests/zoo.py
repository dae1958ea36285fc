"""Small test groups built from permutation generators, plus random vectors."""

import itertools
import random

from surfkernel.groups import from_table
from surfkernel.kernel_map import GeneratingVector, validate
from surfkernel.words import OrbifoldSignature


def _compose(p, q):
    return tuple(p[i] for i in q)


def perm_group(gens, name):
    """Closure of permutation generators, identity first, then BFS order."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems, frontier = [ident], [ident]
    seen = {ident}
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    idx = {p: i for i, p in enumerate(elems)}
    table = [[idx[_compose(p, q)] for q in elems] for p in elems]
    return from_table(table), name


def cyc(n, shift=0, size=None):
    size = size or n
    return tuple(list(range(shift)) + [shift + (i + 1) % n for i in range(n)]
                 + list(range(shift + n, size)))


def small_groups(max_order=12):
    out = []
    for n in range(1, max_order + 1):
        out.append(perm_group([cyc(n)] if n > 1 else [(0,)], f"Z{n}"))
    out.append(perm_group([(1, 0, 3, 2), (2, 3, 0, 1)], "Z2xZ2"))
    out.append(perm_group([(1, 2, 0, 3, 4), (1, 0, 2, 3, 4)], "S3"))
    out.append(perm_group([(1, 2, 3, 0), (3, 2, 1, 0)], "D4"))
    out.append(perm_group([cyc(5), (0, 4, 3, 2, 1)], "D5"))
    out.append(perm_group([cyc(6), (0, 5, 4, 3, 2, 1)], "D6"))
    out.append(perm_group([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"))
    out.append(perm_group([cyc(2, 0, 6), cyc(4, 2, 6)], "Z2xZ4"))
    out.append(perm_group([cyc(2, 0, 6), cyc(2, 2, 6), cyc(2, 4, 6)], "Z2^3"))
    # quaternion group as left-regular permutations of {+-1,+-i,+-j,+-k}
    q = ["1", "i", "j", "k"]
    mult = {("1", x): (1, x) for x in q}
    mult.update({(x, "1"): (1, x) for x in q})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    els = [(s, x) for s in (1, -1) for x in q]

    def left(a):
        return tuple(els.index((a[0] * b[0] * mult[a[1], b[1]][0], mult[a[1], b[1]][1])) for b in els)
    out.append(perm_group([left((1, "i")), left((1, "j"))], "Q8"))
    out.append(perm_group([cyc(3, 0, 7), (2, 1, 0, 4, 5, 6, 3)], "Z3:Z4"))
    return [(g, name) for g, name in out if g.order <= max_order]


def random_vector(grp, rng, genus, r):
    """A random valid (sig, phi) with the given shape, or None."""
    n = grp.order
    if n == 1:
        if r:
            return None
        return OrbifoldSignature(genus, ()), GeneratingVector((0,) * genus, (0,) * genus, ())
    for _ in range(50):
        A = [rng.randrange(n) for _ in range(genus)]
        B = [rng.randrange(n) for _ in range(genus)]
        xi = [rng.randrange(1, n) for _ in range(r - 1)] if r else []
        prod = 0
        for a, b in zip(A, B):
            prod = grp.mul(prod, grp.commutator(a, b))
        prod = grp.mul(prod, grp.product(xi))
        if r:
            last = grp.inv(prod)
            if last == 0:
                continue
            xi.append(last)
        elif prod != 0:
            continue
        periods = tuple(grp.element_order[x] for x in xi)
        sig = OrbifoldSignature(genus, periods)
        phi = GeneratingVector(A, B, xi)
        if validate(sig, grp, phi).valid:
            return sig, phi
    return None


def random_cases(rng, count, max_order=12, max_r=8, max_m=6, genera=(0, 1, 2)):
    groups = small_groups(max_order)
    cases = []
    tries = 0
    while len(cases) < count and tries < 50 * count:
        tries += 1
        grp, name = rng.choice(groups)
        genus = rng.choice(genera)
        r = rng.randrange(0, max_r + 1)
        got = random_vector(grp, rng, genus, r)
        if got is None:
            continue
        sig, phi = got
        if any(m > max_m for m in sig.periods):
            continue
        if 2 * sig.genus + sig.r == 0:
            continue
        cases.append((name, grp, sig, phi))
    return cases
