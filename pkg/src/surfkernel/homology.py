"""Action of the finite group on the kernel and on its first homology.

After simplification the kernel has one surface relation, which
abelianizes to zero, so first homology is free abelian on the live
generators.  Matrices use the column convention: column ``k`` of
``matrices[g]`` is the image of basis element ``k``, and
``matrices[g] @ matrices[h] == matrices[g*h]``.

Two rules for moving a kernel generator by ``g`` are available:

``conjugation`` (default)
    conjugate the generator's base word by ``rep[g]`` and rewrite.  This
    is an automorphism of the kernel and gives a genuine representation.
``translation``
    ``S[K,v] -> S[gK,v]``, the label-level rule.  It is a bijection on
    raw generators but in general does not respect the relations, so the
    resulting matrices need not form a representation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import core
from .errors import OrderingError, ShapeError
from .groups import FiniteGroup
from .kernel_map import GeneratingVector, validate
from .schreier import (
    KernelGen,
    KernelPresentation,
    KernelWord,
    SchreierTransversal,
    _Expander,
    _rewrite,
)
from .words import OrbifoldSignature

RULES = ("conjugation", "translation")


def act_on_generator(g: int, s: KernelGen, grp: FiniteGroup) -> KernelGen:
    """Label-level action: ``S[K,v] -> S[gK,v]``."""
    return KernelGen(grp.mul(g, s.coset), s.symbol)


def _image_letters(g: int, gid: int, p: KernelPresentation, rule: str) -> tuple:
    ctx = p.context
    if rule == "translation":
        c, i = divmod(gid, ctx.nsym)
        return (ctx.grp.mul(g, c) * ctx.nsym + i + 1,)
    if rule != "conjugation":
        raise ValueError(f"rule must be one of {RULES}, got {rule!r}")
    rep = ctx.transversal.encoded[g]
    word = rep + ctx.gen_as_base_word(gid) + core.inverse(rep)
    letters, end = _rewrite(word, ctx)
    assert end == 0
    return letters


def sweep_expand(letters, log, seed: int = 0) -> tuple:
    """Replay the log by whole-word substitution passes in a shuffled order.

    Gives the same result as the memoised replay; kept as an independent
    check of that machinery.
    """
    order = sorted(log)
    random.Random(seed).shuffle(order)
    w = tuple(letters)
    while any(abs(x) - 1 in log for x in w):
        for g in order:
            if any(abs(x) - 1 == g for x in w):
                w = core.substitute(w, {g: log[g]})
    return core.free_reduce(w)


def act_on_basis(g: int, k: int, p: KernelPresentation, rule: str = "conjugation") -> KernelWord:
    """Image of live generator number ``k`` under ``g``, over live generators."""
    letters = _image_letters(g, p.generators[k], p, rule)
    return p.context.to_word(p.expand(letters))


@dataclass(frozen=True)
class HomologyAction:
    """Integer matrices of the induced action; ``basis`` holds generator ids."""

    basis: tuple
    labels: tuple
    matrices: dict
    rule: str = "conjugation"

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __getitem__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def format(self, grp: FiniteGroup) -> str:
        lines = ["basis " + " ".join(self.labels)]
        for g in sorted(self.matrices):
            lines.append(f"element {grp.names[g]}")
            lines += [" ".join(f"{v:d}" for v in row) for row in self.matrices[g].tolist()]
        return "\n".join(lines) + "\n"


def basis_order(p: KernelPresentation) -> tuple:
    """Live generators sorted by (symbol, coset): hyperbolic lifts first."""
    nsym = p.context.nsym
    return tuple(sorted(p.generators, key=lambda g: (g % nsym, g // nsym)))


def homology_matrices(p: KernelPresentation, t: Optional[SchreierTransversal] = None,
                      grp: Optional[FiniteGroup] = None, phi: Optional[GeneratingVector] = None,
                      rule: str = "conjugation", replay: str = "memo", seed: int = 0
                      ) -> HomologyAction:
    """Abelianized action of every group element on the live generators.

    ``t``, ``grp`` and ``phi`` default to the presentation's own context
    and must agree with it when given.  ``replay`` picks how the
    elimination log is replayed (``memo`` or ``sweep``).
    """
    ctx = p.context
    for given, own in ((t, ctx.transversal), (grp, ctx.grp), (phi, ctx.phi)):
        if given is not None and given != own:
            raise ValueError("arguments disagree with the presentation's context")
    if len(p.relations) > 1:
        raise ShapeError("homology needs a simplified presentation with one relation")
    for r in p.relations:
        if any(core.abelianize(r, max(p.generators, default=-1) + 1)):
            raise ShapeError("the relation does not abelianize to zero")
    basis = basis_order(p)
    pos = {g: i for i, g in enumerate(basis)}
    size = len(basis)
    expander = _Expander(p.eliminated)
    matrices = {}
    for g in range(ctx.grp.order):
        m = np.zeros((size, size), dtype=np.int64)
        for k, gid in enumerate(basis):
            letters = _image_letters(g, gid, p, rule)
            if replay == "memo":
                letters = expander.expand(letters)
            elif replay == "sweep":
                letters = sweep_expand(letters, p.eliminated, seed)
            else:
                raise ValueError(f"unknown replay strategy {replay!r}")
            for x in letters:
                m[pos[abs(x) - 1], k] += 1 if x > 0 else -1
        m.setflags(write=False)
        matrices[g] = m
    return HomologyAction(basis, tuple(ctx.label(g) for g in basis), matrices, rule)


def bareiss_det(m) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [[int(v) for v in row] for row in np.asarray(m)]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def check_representation(h: HomologyAction, grp: FiniteGroup) -> bool:
    """Identity at 0, multiplicative, and every determinant is +-1."""
    if set(h.matrices) != set(range(grp.order)):
        return False
    eye = np.eye(h.rank, dtype=np.int64)
    if not np.array_equal(h.matrices[0], eye):
        return False
    for g in range(grp.order):
        for k in range(grp.order):
            if not np.array_equal(h.matrices[g] @ h.matrices[k], h.matrices[grp.mul(g, k)]):
                return False
    return all(abs(bareiss_det(m)) == 1 for m in h.matrices.values())


def column_profile(m: np.ndarray) -> dict:
    """Nonzero counts per column plus the largest absolute entry."""
    nnz = (m != 0).sum(axis=0)
    return {"multi_columns": int((nnz > 1).sum()), "nonzeros": nnz.tolist(),
            "max_abs": int(np.abs(m).max()) if m.size else 0}


@dataclass(frozen=True)
class AdaptedReport:
    """``cases[k]`` is 1-4 for a classified basis element, or None."""

    adapted: bool
    cases: tuple
    witness: Optional[int]
    detail: str = ""


def _signed_unit(col) -> Optional[tuple]:
    """``(index, sign)`` if ``col`` is plus or minus a standard basis vector."""
    nz = np.flatnonzero(col)
    if len(nz) == 1 and abs(col[nz[0]]) == 1:
        return int(nz[0]), int(col[nz[0]])
    return None


def _left_coset_reps(grp: FiniteGroup, sub: frozenset) -> list:
    reps, seen = [], set()
    for g in range(grp.order):
        if g not in seen:
            reps.append(g)
            seen.update(grp.mul(g, s) for s in sub)
    return reps


def _case1(k, h, grp):
    images = set()
    for g in range(1, grp.order):
        u = _signed_unit(h.matrices[g][:, k])
        if u is None or u[1] != 1 or u[0] == k:
            return False
        images.add(u[0])
    return len(images) == grp.order - 1


def _case23(k, h, grp):
    e = np.zeros(h.rank, dtype=np.int64)
    e[k] = 1
    for x in range(1, grp.order):
        pw = grp.powers(x)
        m = len(pw)
        if m < 2:
            continue
        vecs = [h.matrices[y] @ e for y in pw]
        if any(v.any() for v in [sum(vecs)]):
            continue
        if any(_signed_unit(v) is None for v in vecs[:m - 1]):
            continue
        reps = _left_coset_reps(grp, frozenset(pw))
        if all(_signed_unit(h.matrices[c] @ v) is not None for c in reps for v in vecs[:m - 1]):
            return True
    return False


def _case4(k, h, grp):
    col = lambda g: h.matrices[g][:, k]
    stab = [g for g in range(grp.order) if _signed_unit(col(g)) == (k, 1)]
    if grp.order > 1 and len(stab) < 2:
        return False
    return all(_signed_unit(col(g)) is not None for g in range(grp.order))


def adapted_check(h: HomologyAction, grp: FiniteGroup) -> AdaptedReport:
    """Classify every basis element into the adapted-basis cases.

    1. every nontrivial g sends it to a different basis element (+ sign);
    2/3. some cyclic subgroup <x> of order m moves it inside plus or minus
       the basis for m-1 steps, the full orbit sums to zero, and left coset
       representatives of <x> keep those images inside plus or minus the
       basis;
    4. its stabilizer is nontrivial (or G is trivial) and every image lies
       in plus or minus the basis.
    The witness is the first unclassified basis index.
    """
    cases = []
    for k in range(h.rank):
        if grp.order == 1:
            cases.append(4)
        elif _case1(k, h, grp):
            cases.append(1)
        elif _case23(k, h, grp):
            cases.append(2)
        elif _case4(k, h, grp):
            cases.append(4)
        else:
            cases.append(None)
    witness = next((k for k, c in enumerate(cases) if c is None), None)
    detail = ""
    if witness is not None:
        bad = [grp.names[g] for g in range(grp.order)
               if _signed_unit(h.matrices[g][:, witness]) is None]
        detail = (f"{h.labels[witness]} fits no case; its images under "
                  f"{', '.join(bad) or 'no element'} are not plus or minus basis elements")
    return AdaptedReport(witness is None, tuple(cases), witness, detail)


def elliptic_reduction(sig: OrbifoldSignature, grp: FiniteGroup, phi: GeneratingVector):
    """The quotient-genus-zero data with the same elliptic images, if valid."""
    sig0 = OrbifoldSignature(0, sig.periods)
    phi0 = GeneratingVector((), (), phi.Xi)
    if validate(sig0, grp, phi0).valid:
        return sig0, phi0
    return None


def block_structure_check(h: HomologyAction, sig: OrbifoldSignature, grp: FiniteGroup,
                          reference: Optional[HomologyAction] = None) -> bool:
    """Hyperbolic lifts form a permutation block with no coupling to the rest.

    The basis must list the ``2 n g0`` hyperbolic lifts first.  When a
    ``reference`` action (the genus-zero computation for the same elliptic
    data) is given, the elliptic block must equal it entrywise, with basis
    elements matched by label.
    """
    if sig.genus < 1:
        raise OrderingError("block structure needs quotient genus at least 1")
    hyper = 2 * grp.order * sig.genus
    kinds = [h.labels[i].rsplit(",", 1)[1][0] for i in range(h.rank)]
    first_x = next((i for i, c in enumerate(kinds) if c == "x"), h.rank)
    if any(c != "x" for c in kinds[first_x:]):
        raise OrderingError("basis does not list all hyperbolic lifts first")
    if first_x != hyper:
        return False
    for m in h.matrices.values():
        hb, eb = m[:hyper, :hyper], m[hyper:, hyper:]
        if m[:hyper, hyper:].any() or m[hyper:, :hyper].any():
            return False
        if not (np.isin(hb, (0, 1)).all() and (hb.sum(axis=0) == 1).all()
                and (hb.sum(axis=1) == 1).all()):
            return False
    if reference is not None:
        ell = list(h.labels[hyper:])
        if sorted(ell) != sorted(reference.labels):
            return False
        idx = [reference.labels.index(lab) for lab in ell]
        for g, m in h.matrices.items():
            if not np.array_equal(m[hyper:, hyper:], reference.matrices[g][np.ix_(idx, idx)]):
                return False
    return True
