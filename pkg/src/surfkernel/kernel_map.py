"""Surface-kernel maps written as generating vectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core
from .errors import DomainError, InconsistentGenusError, ShapeError
from .groups import FiniteGroup
from .words import OrbifoldSignature, Word


@dataclass(frozen=True)
class GeneratingVector:
    """Images ``A_i = phi(a_i)``, ``B_i = phi(b_i)``, ``Xi_j = phi(x_j)``."""

    A: tuple = ()
    B: tuple = ()
    Xi: tuple = ()

    def __post_init__(self):
        for name in ("A", "B", "Xi"):
            object.__setattr__(self, name, tuple(int(g) for g in getattr(self, name)))
        if len(self.A) != len(self.B):
            raise ShapeError(f"{len(self.A)} images for the a_i but {len(self.B)} for the b_i")

    @property
    def genus(self) -> int:
        return len(self.A)

    def images(self) -> tuple:
        """Images in alphabet order a1, b1, a2, b2, ..., x1, ..., x_r."""
        out = []
        for a, b in zip(self.A, self.B):
            out += [a, b]
        return tuple(out) + self.Xi

    @classmethod
    def from_images(cls, sig: OrbifoldSignature, images) -> "GeneratingVector":
        images = tuple(images)
        if len(images) != sig.size:
            raise ShapeError(f"expected {sig.size} images, got {len(images)}")
        g = sig.genus
        return cls(images[0:2 * g:2], images[1:2 * g:2], images[2 * g:])

    def sort_key(self):
        return self.images()

    def format(self, grp: FiniteGroup | None = None) -> str:
        name = (lambda g: grp.names[g]) if grp is not None else str
        parts = [f"A{i}={name(a)} B{i}={name(b)}" for i, (a, b) in enumerate(zip(self.A, self.B), 1)]
        parts += [f"x{j}={name(x)}" for j, x in enumerate(self.Xi, 1)]
        return " ".join(parts)


@dataclass(frozen=True)
class ValidationReport:
    long_relation_ok: bool
    period_orders_ok: tuple
    surjective: bool

    @property
    def valid(self) -> bool:
        return self.long_relation_ok and all(self.period_orders_ok) and self.surjective

    def failures(self) -> list:
        out = []
        if not self.long_relation_ok:
            out.append("long relation does not evaluate to the identity")
        out += [f"period m_{j} is not the order of xi_{j}"
                for j, ok in enumerate(self.period_orders_ok, 1) if not ok]
        if not self.surjective:
            out.append("images do not generate the group")
        return out


def _signature_of(phi: GeneratingVector) -> OrbifoldSignature:
    # periods are irrelevant for the alphabet; 2 is a placeholder
    return OrbifoldSignature(phi.genus, (2,) * len(phi.Xi))


def evaluate(phi: GeneratingVector, w: Word, grp: FiniteGroup) -> int:
    """Image of ``w`` in ``grp``."""
    letters = _signature_of(phi).encode(w)
    table, inverse = core.group_tables(grp)
    return core.evaluate(letters, phi.images(), table, inverse)


def evaluate_letters(letters, images, grp: FiniteGroup) -> int:
    table, inverse = core.group_tables(grp)
    return core.evaluate(letters, images, table, inverse)


def check_shape(sig: OrbifoldSignature, phi: GeneratingVector, grp: FiniteGroup | None = None):
    if phi.genus != sig.genus or len(phi.Xi) != sig.r:
        raise ShapeError(f"vector has genus {phi.genus} and {len(phi.Xi)} elliptic images; "
                         f"signature {sig} needs {sig.genus} and {sig.r}")
    if grp is not None:
        for g in phi.images():
            if not 0 <= g < grp.order:
                raise DomainError(f"element index {g} is outside a group of order {grp.order}")


def validate(sig: OrbifoldSignature, grp: FiniteGroup, phi: GeneratingVector) -> ValidationReport:
    check_shape(sig, phi, grp)
    prod = 0
    for a, b in zip(phi.A, phi.B):
        prod = grp.mul(prod, grp.commutator(a, b))
    prod = grp.mul(prod, grp.product(phi.Xi))
    periods = tuple(grp.element_order[x] == m for x, m in zip(phi.Xi, sig.periods))
    surjective = len(grp.closure(phi.images())) == grp.order
    return ValidationReport(prod == 0, periods, surjective)


def euler_twice_genus_minus_two(sig: OrbifoldSignature, n: int) -> Fraction:
    return n * (2 * sig.genus - 2) + n * sum(1 - Fraction(1, m) for m in sig.periods)


def kernel_genus(sig: OrbifoldSignature, n: int) -> int:
    """Genus of the kernel surface for a group of order ``n`` (Riemann-Hurwitz)."""
    if n < 1:
        raise InconsistentGenusError(f"group order must be positive, got {n}")
    twice = euler_twice_genus_minus_two(sig, n) + 2
    if twice.denominator != 1 or twice.numerator % 2:
        raise InconsistentGenusError(f"2g = {twice} is not an even integer for {sig} with n = {n}")
    g = twice.numerator // 2
    if g < 0:
        raise InconsistentGenusError(f"negative genus {g} for {sig} with n = {n}")
    return g
