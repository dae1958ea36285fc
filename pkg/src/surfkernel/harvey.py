"""Automorphisms of the orbifold group acting on generating vectors.

Each operation exists at two levels: a substitution on the free group over
the alphabet, and a tabulated action on generating vectors.  The
tabulated action is what orbit enumeration uses; ``consistency_check``
confirms that it agrees with evaluating the substitution through phi.

Two operations come in two variants.  ``variant="printed"`` is the
classical table entry verbatim.  ``variant="corrected"`` (the default)
is a nearby map that really is an automorphism:

* V4 sends ``x_r -> a1^-1 x_r a1`` and ``a1 -> a1^-1 x_r^-1 a1 x_r a1``
  (``b1`` as printed).  The printed version does not preserve the long
  relation up to conjugacy.
* Bhat:j conjugates the new ``(a_{j+1}, b_{j+1})`` pair by ``c^-1``
  rather than ``c``, with ``c = [a_{j+1}, b_{j+1}]``.

Under each operation's precondition both variants have the same
tabulated action.  V3's tabulated action is the honest evaluation of its
substitution: ``A1 -> A2 A1`` and every ``xi_j`` is conjugated by ``A2``.
In genus three or more the corrected V3 also conjugates ``a_i, b_i``
(``i >= 3``) by ``a2``, without which the long relation is not preserved.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .errors import ApplicabilityError
from .groups import FiniteGroup, in_cyclic_span
from .kernel_map import GeneratingVector, check_shape, evaluate_letters
from .words import (
    GenSymbol,
    OrbifoldSignature,
    Substitution,
    Word,
    apply_substitution,
    commutator,
    long_relation,
)

TAGS = ("V1", "V2", "V3", "V4", "Bhat")
VARIANTS = ("corrected", "printed")


@dataclass(frozen=True, order=True)
class HarveyOp:
    tag: str
    j: int = 0

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown operation {self.tag!r}")
        if (self.tag == "Bhat") != (self.j >= 1):
            raise ValueError("Bhat takes a parameter j >= 1; the V operations take none")

    @classmethod
    def parse(cls, text: str) -> "HarveyOp":
        text = text.strip()
        m = re.fullmatch(r"Bhat:(\d+)", text)
        if m:
            return cls("Bhat", int(m.group(1)))
        if text in ("V1", "V2", "V3", "V4"):
            return cls(text)
        raise ValueError(f"bad operation {text!r}; expected V1|V2|V3|V4|Bhat:<j>")

    def __str__(self):
        return f"Bhat:{self.j}" if self.tag == "Bhat" else self.tag

    def why_inapplicable(self, genus: int, r: int) -> Optional[str]:
        if self.tag in ("V1", "V2") and genus < 1:
            return f"{self} needs quotient genus at least 1"
        if self.tag == "V3" and genus < 2:
            return "V3 needs quotient genus at least 2"
        if self.tag == "V4" and (genus < 1 or r < 1):
            return "V4 needs quotient genus at least 1 and at least one elliptic generator"
        if self.tag == "Bhat" and genus < self.j + 1:
            return f"{self} needs quotient genus at least {self.j + 1}"
        return None

    def applicable(self, sig: OrbifoldSignature) -> bool:
        return self.why_inapplicable(sig.genus, sig.r) is None


def parse_program(text: str) -> list:
    """Comma-separated operations, applied left to right."""
    return [HarveyOp.parse(t) for t in text.split(",") if t.strip()]


@dataclass(frozen=True)
class OpResult:
    vector: GeneratingVector
    applied: bool
    reason: Optional[str] = None


def _g(kind, i):
    return Word(((GenSymbol(kind, i), 1),))


def _check_variant(variant):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def substitution_of(op: HarveyOp, sig: OrbifoldSignature, variant: str = "corrected") -> Substitution:
    return _substitution(op, sig, variant)


@lru_cache(maxsize=256)
def _substitution(op, sig, variant):
    _check_variant(variant)
    reason = op.why_inapplicable(sig.genus, sig.r)
    if reason:
        raise ApplicabilityError(reason)
    a1, b1 = _g("a", 1), _g("b", 1)
    if op.tag == "V1":
        moved = {"a1": a1 * b1}
    elif op.tag == "V2":
        moved = {"a1": a1 * b1, "b1": a1.inverse()}
    elif op.tag == "V3":
        a2, b2 = _g("a", 2), _g("b", 2)
        moved = {f"x{j}": a2 * _g("x", j) * a2.inverse() for j in range(1, sig.r + 1)}
        if variant == "corrected":
            for i in range(3, sig.genus + 1):
                moved[f"a{i}"] = a2 * _g("a", i) * a2.inverse()
                moved[f"b{i}"] = a2 * _g("b", i) * a2.inverse()
        moved.update({
            "a1": a2 * a1,
            "a2": b1 * a2 * b1.inverse(),
            "b2": a2 * b2 * a2.inverse() * b1.inverse(),
        })
    elif op.tag == "V4":
        xr = _g("x", sig.r)
        b_image = b1 * a1.inverse() * xr * a1
        if variant == "printed":
            moved = {f"x{sig.r}": a1 * xr * a1.inverse(),
                     "a1": commutator(a1, xr.inverse()) * a1,
                     "b1": b_image}
        else:
            moved = {f"x{sig.r}": a1.inverse() * xr * a1,
                     "a1": a1.inverse() * xr.inverse() * a1 * xr * a1,
                     "b1": b_image}
    else:
        j = op.j
        aj, bj = _g("a", j), _g("b", j)
        ak, bk = _g("a", j + 1), _g("b", j + 1)
        c = commutator(ak, bk)
        if variant == "corrected":
            c = c.inverse()
        moved = {f"a{j}": ak, f"b{j}": bk,
                 f"a{j + 1}": c * aj * c.inverse(),
                 f"b{j + 1}": c * bj * c.inverse()}
    return Substitution.from_partial(sig, moved)


def tabulated_action(op: HarveyOp, phi: GeneratingVector, grp: FiniteGroup,
                     variant: str = "corrected") -> GeneratingVector:
    """The listed effect on images, ignoring any precondition."""
    _check_variant(variant)
    reason = op.why_inapplicable(phi.genus, len(phi.Xi))
    if reason:
        raise ApplicabilityError(reason)
    A, B, Xi = list(phi.A), list(phi.B), list(phi.Xi)
    mul, inv = grp.mul, grp.inv
    if op.tag == "V1":
        A[0] = mul(A[0], B[0])
    elif op.tag == "V2":
        A[0], B[0] = mul(A[0], B[0]), inv(A[0])
    elif op.tag == "V3":
        a1, b1, a2, b2 = A[0], B[0], A[1], B[1]
        if variant == "printed":
            A[0] = mul(a1, a2)
        else:
            A[0] = mul(a2, a1)
            Xi = [grp.conjugate(x, a2) for x in Xi]
            A[2:] = [grp.conjugate(x, a2) for x in A[2:]]
            B[2:] = [grp.conjugate(x, a2) for x in B[2:]]
        A[1] = grp.conjugate(a2, b1)
        B[1] = grp.product((a2, b2, inv(a2), inv(b1)))
    elif op.tag == "V4":
        B[0] = mul(B[0], Xi[-1])
    else:
        j = op.j - 1
        c = grp.commutator(A[j + 1], B[j + 1])
        if variant == "corrected":
            c = inv(c)
        A[j], B[j], A[j + 1], B[j + 1] = (A[j + 1], B[j + 1],
                                          grp.conjugate(A[j], c), grp.conjugate(B[j], c))
    return GeneratingVector(A, B, Xi)


def precondition_failure(op: HarveyOp, phi: GeneratingVector, grp: FiniteGroup) -> Optional[str]:
    if op.tag == "V4" and not grp.is_abelian:
        if not in_cyclic_span(phi.A[0], phi.Xi[-1], grp):
            return (f"phi(a1) = {grp.names[phi.A[0]]} is not a power of "
                    f"phi(x{len(phi.Xi)}) = {grp.names[phi.Xi[-1]]}")
    if op.tag == "Bhat":
        k = op.j
        if not in_cyclic_span(phi.A[k], phi.B[k], grp):
            return (f"phi(a{k + 1}) = {grp.names[phi.A[k]]} is not a power of "
                    f"phi(b{k + 1}) = {grp.names[phi.B[k]]}")
    return None


def apply_op(op: HarveyOp, phi: GeneratingVector, grp: FiniteGroup,
             variant: str = "corrected") -> OpResult:
    """Apply ``op`` to ``phi``; a failed precondition returns ``phi`` unchanged."""
    reason = op.why_inapplicable(phi.genus, len(phi.Xi))
    if reason:
        raise ApplicabilityError(reason)
    reason = precondition_failure(op, phi, grp)
    if reason:
        return OpResult(phi, False, reason)
    return OpResult(tabulated_action(op, phi, grp, variant), True)


def run_program(ops: Iterable[HarveyOp], phi: GeneratingVector, grp: FiniteGroup,
                variant: str = "corrected") -> list:
    """Apply operations left to right; returns one OpResult per step."""
    out = []
    for op in ops:
        res = apply_op(op, phi, grp, variant)
        out.append(res)
        phi = res.vector
    return out


def _cyclic_rotations_equal(u: tuple, v: tuple) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    doubled = u + u
    return any(doubled[i:i + len(v)] == v for i in range(len(u)))


def _cyclic_core(w: Word) -> tuple:
    letters = w.letters
    i, k = 0, len(letters) - 1
    while i < k and letters[i][0] == letters[k][0] and letters[i][1] == -letters[k][1]:
        i += 1
        k -= 1
    return letters[i:k + 1]


def is_conjugate(u: Word, v: Word) -> bool:
    """Conjugacy in a free group: cyclic reductions agree up to rotation."""
    return _cyclic_rotations_equal(_cyclic_core(u), _cyclic_core(v))


def verify_automorphism(op: HarveyOp, sig: OrbifoldSignature, variant: str = "corrected") -> bool:
    """Long relation goes to a conjugate of itself; each x_j to a conjugate of
    some x_k with the same period."""
    sub = substitution_of(op, sig, variant)
    rel = long_relation(sig)
    if not is_conjugate(apply_substitution(rel, sub), rel):
        return False
    for j, m in enumerate(sig.periods, 1):
        image = sub[GenSymbol("x", j)]
        if not any(sig.periods[k - 1] == m and is_conjugate(image, _g("x", k))
                   for k in range(1, sig.r + 1)):
            return False
    return True


def consistency_check(op: HarveyOp, phi: GeneratingVector, grp: FiniteGroup,
                      sig: OrbifoldSignature, variant: str = "corrected") -> bool:
    """Tabulated action equals evaluation of phi through the substitution."""
    check_shape(sig, phi, grp)
    words = _encoded_images(op, sig, variant)
    table = tabulated_action(op, phi, grp, variant).images()
    return all(evaluate_letters(w, phi.images(), grp) == table[i] for i, w in enumerate(words))


@lru_cache(maxsize=256)
def _encoded_images(op, sig, variant):
    sub = substitution_of(op, sig, variant)
    return tuple(sig.encode(sub[s]) for s in sig.alphabet)


@dataclass(frozen=True)
class Orbit:
    vectors: tuple
    truncated: bool

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, phi):
        return phi in self.vectors


def enumerate_orbit(phi: GeneratingVector, ops: Iterable[HarveyOp], grp: FiniteGroup,
                    cap: int = 10000, variant: str = "corrected") -> Orbit:
    """Breadth-first closure of ``{phi}`` under the applicable operations.

    Operations are tried in sorted order; inapplicable ones and failed
    preconditions are skipped.  Vectors come back sorted by their image
    tuple.  At most ``cap`` vectors are collected; ``truncated`` says
    whether the search stopped early.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    ops = sorted(set(ops))
    ops = [op for op in ops if op.why_inapplicable(phi.genus, len(phi.Xi)) is None]
    seen = {phi}
    queue = deque([phi])
    truncated = False
    while queue and not truncated:
        cur = queue.popleft()
        for op in ops:
            res = apply_op(op, cur, grp, variant)
            if res.applied and res.vector not in seen:
                if len(seen) >= cap:
                    truncated = True
                    break
                seen.add(res.vector)
                queue.append(res.vector)
    return Orbit(tuple(sorted(seen, key=GeneratingVector.sort_key)), truncated)
