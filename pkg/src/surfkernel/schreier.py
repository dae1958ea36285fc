"""Schreier transversals, the rewriting process and kernel presentations.

Cosets of the kernel are identified with group elements: the right coset
of a word ``w`` is ``phi(w)``.  The kernel generator ``S[K,v]`` is the
word ``rep[K] v rep[K*phi(v)]^-1``.  Internally it has id
``K * k + i`` where ``k`` is the alphabet size and ``i`` the position of
``v`` in the alphabet, and a letter is that id plus one, negated for an
inverse (the convention of :mod:`surfkernel.core`).

Dump format
-----------
::

    presentation
    signature <genus>; <m1,m2,...|->
    order <n>
    cosets <name0> <name1> ...
    generators <count>
    S[<coset>,<symbol>]
    ...
    relations <count>
    <kind>: <letter> <letter> ...
    eliminated <count>
    S[<coset>,<symbol>] = <letters or 1>
    end

A letter is ``S[<coset>,<symbol>]`` optionally followed by ``^-1``; an
empty word is written ``1``.  Lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional

from . import core
from .errors import (
    InvalidPeriodError,
    NotInKernelError,
    ShapeError,
    SimplificationIncomplete,
    TransversalError,
    UnreachableCosetError,
)
from .groups import FiniteGroup
from .kernel_map import GeneratingVector, check_shape, evaluate_letters, kernel_genus
from .words import GenSymbol, OrbifoldSignature, Word, long_relation, parse_word


class KernelGen(NamedTuple):
    coset: int
    symbol: GenSymbol


@dataclass(frozen=True)
class KernelWord:
    """Freely reduced word in kernel generators; letters are ``(KernelGen, +-1)``."""

    letters: tuple = ()

    def __post_init__(self):
        stack = []
        for gen, e in self.letters:
            gen = KernelGen(gen[0], GenSymbol(*gen[1]))
            if stack and stack[-1][0] == gen and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((gen, e))
        object.__setattr__(self, "letters", tuple(stack))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "KernelWord":
        return KernelWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other):
        return KernelWord(self.letters + other.letters)


@dataclass(frozen=True)
class SchreierTransversal:
    """Coset representatives ``rep[g]`` with ``phi(rep[g]) = g``."""

    sig: OrbifoldSignature
    rep: Mapping
    encoded: tuple = field(init=False, repr=False)

    def __post_init__(self):
        rep = {int(g): (w if isinstance(w, Word) else parse_word(w)) for g, w in self.rep.items()}
        object.__setattr__(self, "rep", rep)
        enc = tuple(self.sig.encode(rep[g]) for g in range(len(rep)))
        object.__setattr__(self, "encoded", enc)

    def __getitem__(self, g: int) -> Word:
        return self.rep[g]

    def __len__(self):
        return len(self.rep)


@dataclass(frozen=True)
class PresentationContext:
    """Everything needed to interpret kernel generators."""

    sig: OrbifoldSignature
    grp: FiniteGroup
    phi: GeneratingVector
    transversal: SchreierTransversal

    @property
    def nsym(self) -> int:
        return self.sig.size

    @property
    def images(self) -> tuple:
        return self.phi.images()

    def gen_id(self, s: KernelGen) -> int:
        return s.coset * self.nsym + self.sig.symbol_id(s.symbol)

    def gen_of(self, gid: int) -> KernelGen:
        c, i = divmod(gid, self.nsym)
        return KernelGen(c, self.sig.alphabet[i])

    def to_word(self, letters) -> KernelWord:
        return KernelWord(tuple((self.gen_of(abs(x) - 1), 1 if x > 0 else -1) for x in letters))

    def from_word(self, w: KernelWord) -> tuple:
        return tuple((self.gen_id(g) + 1) * e for g, e in w.letters)

    def end_coset(self, gid: int) -> int:
        c, i = divmod(gid, self.nsym)
        return self.grp.mul(c, self.images[i])

    def gen_as_base_word(self, gid: int) -> tuple:
        """Encoded base-alphabet word ``rep[K] v rep[Kv]^-1`` of a kernel generator."""
        c, i = divmod(gid, self.nsym)
        rep = self.transversal.encoded
        return core.free_reduce(rep[c] + (i + 1,) + core.inverse(rep[self.end_coset(gid)]))

    def label(self, s) -> str:
        if isinstance(s, int):
            s = self.gen_of(s)
        return f"S[{self.grp.names[s.coset]},{s.symbol}]"

    def format_letters(self, letters) -> str:
        if not letters:
            return "1"
        return " ".join(self.label(abs(x) - 1) + ("" if x > 0 else "^-1") for x in letters)

    def parse_label(self, text: str) -> int:
        m = re.fullmatch(r"S\[(.+),([abx]\d+)\]", text.strip())
        if not m:
            raise ValueError(f"bad kernel generator {text!r}")
        coset = self.grp.element(m.group(1))
        return self.gen_id(KernelGen(coset, GenSymbol.parse(m.group(2))))

    def parse_letters(self, text: str) -> tuple:
        text = text.strip()
        if text in ("", "1"):
            return ()
        out = []
        for tok in text.split():
            inv = tok.endswith("^-1")
            gid = self.parse_label(tok[:-3] if inv else tok)
            out.append(-(gid + 1) if inv else gid + 1)
        return tuple(out)


@dataclass(frozen=True)
class KernelPresentation:
    """Generators, relations and simplification log of the kernel.

    ``relations`` and ``eliminated`` hold encoded letters; use
    :meth:`relation_words` and :meth:`eliminated_words` for
    :class:`KernelWord` views.  ``kinds[i]`` says where relation ``i``
    came from: ``long``, ``elliptic``, ``trivial`` or ``surface``.
    """

    context: PresentationContext
    generators: tuple
    relations: tuple
    kinds: tuple
    eliminated: Mapping = field(default_factory=dict)
    genus_expected: int = 0
    stats: Mapping = field(default_factory=dict, compare=False)

    @property
    def generator_gens(self) -> tuple:
        return tuple(self.context.gen_of(g) for g in self.generators)

    def relation_words(self) -> tuple:
        return tuple(self.context.to_word(r) for r in self.relations)

    def eliminated_words(self) -> dict:
        return {self.context.gen_of(g): self.context.to_word(w) for g, w in self.eliminated.items()}

    @property
    def is_simplified(self) -> bool:
        return "surface" in self.kinds or (not self.relations and self.genus_expected == 0
                                           and bool(self.eliminated))

    def expand(self, letters) -> tuple:
        """Rewrite encoded letters over the live generators using the log."""
        return _Expander(self.eliminated).expand(letters)

    def dump(self) -> str:
        ctx = self.context
        sig = ctx.sig
        lines = ["presentation",
                 f"signature {sig.genus}; {','.join(map(str, sig.periods)) or '-'}",
                 f"order {ctx.grp.order}",
                 "cosets " + " ".join(ctx.grp.names),
                 f"generators {len(self.generators)}"]
        lines += [ctx.label(g) for g in self.generators]
        lines.append(f"relations {len(self.relations)}")
        lines += [f"{k}: {ctx.format_letters(r)}" for k, r in zip(self.kinds, self.relations)]
        lines.append(f"eliminated {len(self.eliminated)}")
        lines += [f"{ctx.label(g)} = {ctx.format_letters(w)}" for g, w in self.eliminated.items()]
        lines.append("end")
        return "\n".join(lines) + "\n"


def parse_dump(text: str, context: PresentationContext) -> KernelPresentation:
    """Inverse of :meth:`KernelPresentation.dump` for a known context."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    it = iter(lines)

    def expect(prefix):
        line = next(it, None)
        if line is None or not line.startswith(prefix):
            raise ValueError(f"expected a line starting with {prefix!r}, got {line!r}")
        return line[len(prefix):].strip()

    expect("presentation")
    sig_text = expect("signature")
    order = int(expect("order"))
    expect("cosets")
    g_text, p_text = (s.strip() for s in sig_text.split(";"))
    periods = () if p_text == "-" else tuple(int(m) for m in p_text.split(","))
    if (int(g_text), periods) != (context.sig.genus, context.sig.periods) or order != context.grp.order:
        raise ValueError("dump does not belong to the given context")
    gens = tuple(context.parse_label(next(it)) for _ in range(int(expect("generators"))))
    rels, kinds = [], []
    for _ in range(int(expect("relations"))):
        kind, _, body = next(it).partition(":")
        kinds.append(kind.strip())
        rels.append(context.parse_letters(body))
    log = {}
    for _ in range(int(expect("eliminated"))):
        lhs, _, rhs = next(it).partition("=")
        log[context.parse_label(lhs)] = context.parse_letters(rhs)
    expect("end")
    genus = kernel_genus(context.sig, context.grp.order)
    return KernelPresentation(context, gens, tuple(rels), tuple(kinds), log, genus)


def _coset_steps(sig, grp, images):
    k = sig.size
    steps = [x + 1 for x in range(k)] + [-(x + 1) for x in range(k)]
    mults = [images[x - 1] if x > 0 else grp.inverse[images[-x - 1]] for x in steps]
    return steps, mults


def coset_distances(grp: FiniteGroup, phi: GeneratingVector, sig: OrbifoldSignature) -> dict:
    """Shortest word length reaching each coset (BFS on the coset graph)."""
    _, mults = _coset_steps(sig, grp, phi.images())
    dist = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for h in mults:
            d = grp.mul(c, h)
            if d not in dist:
                dist[d] = dist[c] + 1
                queue.append(d)
    return dist


def minimal_transversal(grp: FiniteGroup, phi: GeneratingVector,
                        sig: OrbifoldSignature) -> SchreierTransversal:
    """Breadth-first minimal Schreier transversal.

    From each coset the generators are tried in alphabet order, then
    their inverses in alphabet order; the first word to reach a coset is
    its representative.
    """
    check_shape(sig, phi, grp)
    steps, mults = _coset_steps(sig, grp, phi.images())
    rep = {0: ()}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x, h in zip(steps, mults):
            d = grp.mul(c, h)
            if d not in rep:
                rep[d] = rep[c] + (x,)
                queue.append(d)
    if len(rep) != grp.order:
        missing = sorted(set(range(grp.order)) - set(rep))
        raise UnreachableCosetError(
            f"phi is not surjective; cosets {[grp.names[g] for g in missing]} are unreachable")
    return SchreierTransversal(sig, {g: sig.decode(rep[g]) for g in range(grp.order)})


def validate_transversal(t: SchreierTransversal, grp: FiniteGroup, phi: GeneratingVector,
                         sig: OrbifoldSignature) -> None:
    """Raise TransversalError unless ``t`` is a minimal Schreier transversal."""
    if set(t.rep) != set(range(grp.order)):
        raise TransversalError("transversal must have exactly one representative per element")
    if t.encoded[0]:
        raise TransversalError("the identity coset must be represented by the empty word")
    images = phi.images()
    words = set(t.encoded)
    for g, w in enumerate(t.encoded):
        if evaluate_letters(w, images, grp) != g:
            raise TransversalError(f"representative {t.rep[g]} does not map to {grp.names[g]}")
        if core.free_reduce(w) != w:
            raise TransversalError(f"representative {t.rep[g]} is not freely reduced")
        for i in range(len(w)):
            if w[:i] not in words:
                raise TransversalError(f"prefix of {t.rep[g]} is not a representative")
    dist = coset_distances(grp, phi, sig)
    for g, w in enumerate(t.encoded):
        if len(w) != dist[g]:
            raise TransversalError(
                f"representative of {grp.names[g]} has length {len(w)}, minimum is {dist[g]}")


def _rewrite(letters, ctx: PresentationContext, start: int = 0):
    table, inverse = core.group_tables(ctx.grp)
    return core.rewrite(letters, ctx.images, table, inverse, ctx.nsym, start)


def rewrite_tau(w: Word, t: SchreierTransversal, grp: FiniteGroup, phi: GeneratingVector,
                drop_trivial: bool = False) -> KernelWord:
    """Rewrite a kernel element given as a base word into kernel generators.

    With ``drop_trivial`` the generators that are freely trivial (tree
    edges of the transversal) are deleted from the result.
    """
    ctx = PresentationContext(t.sig, grp, phi, t)
    letters = t.sig.encode(w)
    out, end = _rewrite(letters, ctx)
    if end != 0:
        raise NotInKernelError(f"{w} maps to {grp.names[end]}, not the identity")
    if drop_trivial:
        trivial = trivial_generators(ctx)
        out = core.free_reduce([x for x in out if abs(x) - 1 not in trivial])
    return ctx.to_word(out)


def expand_kernel_word(kw: KernelWord, t: SchreierTransversal, grp: FiniteGroup,
                       phi: GeneratingVector) -> Word:
    """Substitute ``rep[K] v rep[Kv]^-1`` for each generator and reduce."""
    ctx = PresentationContext(t.sig, grp, phi, t)
    return t.sig.decode(expand_letters(ctx.from_word(kw), ctx))


def expand_letters(letters, ctx: PresentationContext) -> tuple:
    out = []
    for x in letters:
        w = ctx.gen_as_base_word(abs(x) - 1)
        out.extend(w if x > 0 else core.inverse(w))
    return core.free_reduce(out)


def trivial_generators(ctx: PresentationContext) -> frozenset:
    """Ids of generators that are freely trivial as base words."""
    n = ctx.grp.order
    return frozenset(g for g in range(n * ctx.nsym) if not ctx.gen_as_base_word(g))


def build_context(sig: OrbifoldSignature, grp: FiniteGroup, phi: GeneratingVector,
                  t: Optional[SchreierTransversal] = None) -> PresentationContext:
    if t is None:
        t = minimal_transversal(grp, phi, sig)
    return PresentationContext(sig, grp, phi, t)


def raw_presentation(sig: OrbifoldSignature, grp: FiniteGroup, phi: GeneratingVector,
                     t: Optional[SchreierTransversal] = None) -> KernelPresentation:
    """All ``S[K,v]`` with the rewritten long, elliptic and trivial relations.

    Long relations: one per coset representative K.  Elliptic relations:
    one per cycle of right multiplication by ``xi_j`` on the cosets, based
    at the cycle's smallest element.  Trivial relations: ``S[K,v] = 1``
    for each freely trivial generator.
    """
    ctx = build_context(sig, grp, phi, t)
    n, k = grp.order, sig.size
    rep = ctx.transversal.encoded
    R = sig.encode(long_relation(sig))
    rels, kinds = [], []
    for c in range(n):
        word = rep[c] + R + core.inverse(rep[c])
        rels.append(_rewrite(word, ctx)[0])
        kinds.append("long")
    for j, m in enumerate(sig.periods):
        x = 2 * sig.genus + j + 1
        xi = phi.Xi[j]
        seen = set()
        for c in range(n):
            if c in seen:
                continue
            d = c
            while d not in seen:
                seen.add(d)
                d = grp.mul(d, xi)
            word = rep[c] + (x,) * m + core.inverse(rep[c])
            rels.append(_rewrite(word, ctx)[0])
            kinds.append("elliptic")
    for g in sorted(trivial_generators(ctx)):
        rels.append((g + 1,))
        kinds.append("trivial")
    return KernelPresentation(ctx, tuple(range(n * k)), tuple(rels), tuple(kinds), {},
                              kernel_genus(sig, n))


class _Expander:
    """Replays an elimination log, memoising fully expanded generators."""

    def __init__(self, log):
        self.log = log
        self.memo = {}

    def gen(self, g):
        if g not in self.memo:
            # iterative post-order so deep logs do not hit the recursion limit
            stack = [g]
            while stack:
                top = stack[-1]
                pending = [abs(x) - 1 for x in self.log[top]
                           if abs(x) - 1 in self.log and abs(x) - 1 not in self.memo]
                if pending:
                    stack.extend(pending)
                    continue
                stack.pop()
                if top not in self.memo:
                    self.memo[top] = self._flat(self.log[top])
        return self.memo[g]

    def _flat(self, letters):
        out = []
        for x in letters:
            g = abs(x) - 1
            if g in self.log:
                w = self.memo[g]
                out.extend(w if x > 0 else core.inverse(w))
            else:
                out.append(x)
        return core.free_reduce(out)

    def expand(self, letters):
        for x in letters:
            g = abs(x) - 1
            if g in self.log:
                self.gen(g)
        return self._flat(letters)


def _solve(rel, g):
    """Solve ``rel = u g^e v = 1`` for ``g``: ``(v u)^-1`` if e = 1, else ``v u``."""
    p = next(i for i, x in enumerate(rel) if abs(x) - 1 == g)
    vu = rel[p + 1:] + rel[:p]
    return core.free_reduce(core.inverse(vu) if rel[p] > 0 else vu)


def is_surface_relation(rel) -> bool:
    """Every generator occurs exactly once with each sign."""
    counts = Counter(rel)
    return all(counts[x] == 1 and counts[-x] == 1 for x in counts)


def simplify(p: KernelPresentation, keep: Iterable = ()) -> KernelPresentation:
    """Tietze-simplify a raw presentation towards one surface relation.

    Freely trivial generators are deleted first.  Then, repeatedly, among
    all (relation, generator occurring once in it) pairs the one with the
    smallest key ``(generator in keep, relation length, generator id)``
    is solved for the generator, which is substituted everywhere and
    logged.  Relations that become empty are dropped.  ``keep`` lists
    KernelGen values to eliminate only when nothing else is possible.

    Raises SimplificationIncomplete (carrying the partial presentation)
    unless the result has ``2g`` generators and one surface relation.
    """
    ctx = p.context
    keep_ids = {ctx.gen_id(KernelGen(*s)) if not isinstance(s, int) else s for s in keep}
    log = dict(p.eliminated)
    trivial = set()
    rels = []
    for r, kind in zip(p.relations, p.kinds):
        if kind == "trivial" and len(r) == 1:
            trivial.add(abs(r[0]) - 1)
        else:
            rels.append(r)
    for g in sorted(trivial):
        log[g] = ()
    cut = {g: () for g in trivial}
    rels = [core.cyclic_reduce(core.substitute(r, cut)) for r in rels]
    before = len(rels)
    rels = [r for r in rels if r]
    dropped = before - len(rels)
    steps = 0
    while True:
        best = None
        for ri, r in enumerate(rels):
            for g in core.singletons(r):
                key = (g in keep_ids, len(r), g)
                if best is None or key < best[0]:
                    best = (key, ri, g)
        if best is None:
            break
        _, ri, g = best
        sol = _solve(rels.pop(ri), g)
        log[g] = sol
        steps += 1
        images = {g: sol}
        new = []
        for r in rels:
            r = core.cyclic_reduce(core.substitute(r, images)) if any(abs(x) - 1 == g for x in r) else r
            if r:
                new.append(r)
            else:
                dropped += 1
        rels = new
    live = tuple(g for g in p.generators if g not in log)
    target = 2 * p.genus_expected
    shape_ok = (len(live) == target and
                (len(rels) == 1 and is_surface_relation(rels[0]) or target == 0 and not rels))
    out = KernelPresentation(ctx, live, tuple(rels), ("surface",) * len(rels) if shape_ok
                             else ("partial",) * len(rels), log, p.genus_expected,
                             {"eliminations": steps, "trivial_removed": len(trivial),
                              "relations_dropped": dropped})
    if not shape_ok:
        raise SimplificationIncomplete(
            f"stopped with {len(live)} generators and {len(rels)} relations; "
            f"expected {target} generators and one surface relation", out)
    return out


def linkedness_check(p: KernelPresentation) -> bool:
    """True iff the single relation has each generator once with each sign
    and every generator interleaves with some partner."""
    if len(p.relations) != 1:
        raise ShapeError(f"linkedness needs exactly one relation, found {len(p.relations)}")
    rel = core.cyclic_reduce(p.relations[0])
    if not rel:
        raise ShapeError("the relation is freely trivial")
    if not is_surface_relation(rel):
        return False
    pos = {x: i for i, x in enumerate(rel)}
    gens = sorted({abs(x) for x in rel})
    for u in gens:
        lo, hi = sorted((pos[u], pos[-u]))
        if not any((lo < pos[v] < hi) != (lo < pos[-v] < hi) for v in gens if v != u):
            return False
    return True


def count_check(sig: OrbifoldSignature, grp: FiniteGroup) -> tuple:
    """Predicted ``(generators, relations)``: ``(2ng0 + nr, 1 + sum n/m_j)``."""
    n = grp.order
    for j, m in enumerate(sig.periods, 1):
        if n % m:
            raise InvalidPeriodError(f"period m_{j} = {m} does not divide the group order {n}")
    return 2 * n * sig.genus + n * sig.r, 1 + sum(n // m for m in sig.periods)


def raw_counts(p: KernelPresentation) -> tuple:
    """``(generators, relations)`` of a raw presentation, trivial relations excluded."""
    return len(p.generators), sum(1 for k in p.kinds if k != "trivial")


def pipeline(sig: OrbifoldSignature, grp: FiniteGroup, phi: GeneratingVector,
             t: Optional[SchreierTransversal] = None, keep: Iterable = ()):
    """Raw and simplified presentations in one call."""
    raw = raw_presentation(sig, grp, phi, t)
    return raw, simplify(raw, keep)
