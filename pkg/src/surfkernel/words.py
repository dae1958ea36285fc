"""Words over the orbifold alphabet a1, b1, ..., a_g, b_g, x1, ..., x_r.

Textual syntax
--------------
A word is a whitespace-separated list of tokens.  A token is a symbol
(``a3``, ``b1``, ``x12``) optionally followed by ``^k`` for a nonzero
integer ``k``; ``x7^3`` expands to three letters and ``a1^-1`` is the
inverse letter.  The empty word is written ``1`` (an empty string also
parses).  ``str(word)`` emits only ``^-1`` suffixes, so printing and
parsing round-trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import core
from .errors import DomainError, SignatureError

KINDS = ("a", "b", "x")

_TOKEN = re.compile(r"([abx])(\d+)(?:\^(-?\d+))?")


class GenSymbol(NamedTuple):
    kind: str
    index: int

    def __str__(self):
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "GenSymbol":
        m = re.fullmatch(r"([abx])(\d+)", text.strip())
        if not m or int(m.group(2)) < 1:
            raise ValueError(f"bad generator symbol {text!r}")
        return cls(m.group(1), int(m.group(2)))


Letter = tuple  # (GenSymbol, +1 | -1)


def free_reduce(letters: Iterable[Letter]) -> tuple:
    stack: list = []
    for sym, e in letters:
        if stack and stack[-1][0] == sym and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((sym, e))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construction reduces its input."""

    letters: tuple = ()

    def __post_init__(self):
        clean = []
        for sym, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            clean.append((GenSymbol(*sym), e))
        object.__setattr__(self, "letters", free_reduce(clean))

    @classmethod
    def of(cls, *parts) -> "Word":
        """Concatenate words, symbols and ``(symbol, exp)`` pairs."""
        out = []
        for p in parts:
            if isinstance(p, Word):
                out.extend(p.letters)
            elif isinstance(p, GenSymbol):
                out.append((p, 1))
            else:
                out.append(p)
        return cls(tuple(out))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(str(s) if e == 1 else f"{s}^-1" for s, e in self.letters)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return Word()
    letters = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m or int(m.group(2)) < 1:
            raise ValueError(f"bad word token {tok!r}")
        sym = GenSymbol(m.group(1), int(m.group(2)))
        k = int(m.group(3)) if m.group(3) is not None else 1
        if k == 0:
            raise ValueError(f"zero exponent in token {tok!r}")
        letters.extend([(sym, 1 if k > 0 else -1)] * abs(k))
    return Word(tuple(letters))


def commutator(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``."""
    return Word(u.letters + v.letters + u.inverse().letters + v.inverse().letters)


@dataclass(frozen=True)
class OrbifoldSignature:
    """Quotient genus ``genus`` and branch periods ``(m_1, ..., m_r)``."""

    genus: int
    periods: tuple = ()

    def __post_init__(self):
        periods = tuple(int(m) for m in self.periods)
        object.__setattr__(self, "periods", periods)
        if int(self.genus) != self.genus or self.genus < 0:
            raise SignatureError(f"genus must be a nonnegative integer, got {self.genus!r}")
        for j, m in enumerate(periods, 1):
            if m < 2:
                raise SignatureError(f"period m_{j} = {m} is below 2")

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def alphabet(self) -> tuple:
        """Generators in canonical order: a1, b1, a2, b2, ..., x1, ..., x_r."""
        out = []
        for i in range(1, self.genus + 1):
            out += [GenSymbol("a", i), GenSymbol("b", i)]
        out += [GenSymbol("x", j) for j in range(1, self.r + 1)]
        return tuple(out)

    @property
    def size(self) -> int:
        return 2 * self.genus + self.r

    def symbol_id(self, sym: GenSymbol) -> int:
        kind, i = sym
        if kind in ("a", "b") and 1 <= i <= self.genus:
            return 2 * (i - 1) + (kind == "b")
        if kind == "x" and 1 <= i <= self.r:
            return 2 * self.genus + i - 1
        raise DomainError(f"generator {sym} is not in the alphabet of {self}")

    def encode(self, w: Word) -> tuple:
        """Signed-int letters (generator id + 1, negated for inverses)."""
        return tuple((self.symbol_id(s) + 1) * e for s, e in w.letters)

    def decode(self, letters: Sequence[int]) -> Word:
        alpha = self.alphabet
        return Word(tuple((alpha[abs(x) - 1], 1 if x > 0 else -1) for x in letters))

    def __str__(self):
        periods = ",".join(map(str, self.periods))
        return f"({self.genus}; {periods})" if periods else f"({self.genus}; -)"


def long_relation(sig: OrbifoldSignature) -> Word:
    """``[a1,b1] ... [a_g,b_g] x1 ... x_r``."""
    letters = []
    for i in range(1, sig.genus + 1):
        a, b = GenSymbol("a", i), GenSymbol("b", i)
        letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
    letters += [(GenSymbol("x", j), 1) for j in range(1, sig.r + 1)]
    return Word(tuple(letters))


@dataclass(frozen=True)
class Substitution:
    """An endomorphism of the free group on ``sig``'s alphabet.

    ``images`` is total: every symbol of the alphabet has an image word.
    """

    sig: OrbifoldSignature
    images: Mapping

    def __post_init__(self):
        alpha = self.sig.alphabet
        images = {}
        for sym, w in self.images.items():
            sym = GenSymbol(*sym)
            if sym not in alpha:
                raise DomainError(f"{sym} is not in the alphabet of {self.sig}")
            images[sym] = w if isinstance(w, Word) else parse_word(w)
        missing = [str(s) for s in alpha if s not in images]
        if missing:
            raise DomainError(f"substitution has no image for {', '.join(missing)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_partial(cls, sig: OrbifoldSignature, moved: Mapping) -> "Substitution":
        """Fill every symbol not in ``moved`` with the identity image."""
        full = {s: Word(((s, 1),)) for s in sig.alphabet}
        for sym, w in moved.items():
            full[GenSymbol.parse(sym) if isinstance(sym, str) else GenSymbol(*sym)] = w
        return cls(sig, full)

    def __getitem__(self, sym) -> Word:
        return self.images[GenSymbol(*sym)]

    def encoded(self) -> dict:
        return {self.sig.symbol_id(s): self.sig.encode(w) for s, w in self.images.items()}

    def compose(self, other: "Substitution") -> "Substitution":
        """``self`` after ``other``: v -> self(other(v))."""
        return Substitution(self.sig, {s: apply_substitution(w, self)
                                       for s, w in other.images.items()})

    def __str__(self):
        return "; ".join(f"{s} -> {self.images[s]}" for s in self.sig.alphabet)


def apply_substitution(w: Word, s: Substitution) -> Word:
    for sym in w.symbols():
        if sym not in s.images:
            raise DomainError(f"{sym} is outside the domain of the substitution")
    out = core.substitute(s.sig.encode(w), s.encoded())
    return s.sig.decode(out)
