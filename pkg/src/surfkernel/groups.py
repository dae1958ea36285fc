"""Finite groups given by multiplication tables.

Elements are plain ints in ``range(order)`` and element 0 is always the
identity.  ``table[i][j]`` is the product ``i * j`` (``i`` on the left).

Symmetric groups
----------------
``make_symmetric(d)`` lists the permutations of ``{1..d}`` in this order:

1. the identity;
2. then by number of moved points, ascending;
3. then by cycle type (cycle lengths, descending), ascending;
4. then by span (largest moved point minus smallest), ascending;
5. then by canonical cycle notation (each cycle starts at its least point,
   cycles sorted by that point), lexicographically.

Products compose right to left, ``(p * q)(k) = p(q(k))``.  For ``d = 3``
the order is ``id, (1,2), (2,3), (1,3), (1,2,3), (1,3,2)``, and
``(1,2)*(2,3) = (1,2,3)``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapacityError,
    InvalidOrderError,
    MissingIdentityError,
    NotAssociativeError,
    NotInvertibleError,
    TableValidationError,
)

GroupElement = int

#: Largest group order any constructor will tabulate.
MAX_ORDER = 2048


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A validated finite group.

    Build instances with :func:`make_cyclic`, :func:`make_symmetric` or
    :func:`from_table`; the constructor itself trusts its input.
    """

    table: np.ndarray
    names: tuple[str, ...]
    permutations: tuple[tuple[int, ...], ...] | None = None
    inverse: tuple[int, ...] = field(init=False)
    element_order: tuple[int, ...] = field(init=False)
    rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    inverse_array: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        rows = tuple(tuple(int(v) for v in row) for row in table)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        inv = tuple(row.index(0) for row in rows)
        object.__setattr__(self, "inverse", inv)
        inv_arr = np.asarray(inv, dtype=np.int64)
        inv_arr.setflags(write=False)
        object.__setattr__(self, "inverse_array", inv_arr)
        orders = []
        for g in range(n):
            k, x = 1, g
            while x != 0:
                x = rows[x][g]
                k += 1
            orders.append(k)
        object.__setattr__(self, "element_order", tuple(orders))

    def __len__(self):
        return len(self.rows)

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def identity(self) -> GroupElement:
        return 0

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return self.rows[g][h]

    def inv(self, g: GroupElement) -> GroupElement:
        return self.inverse[g]

    def product(self, elements: Iterable[GroupElement]) -> GroupElement:
        x = 0
        for g in elements:
            x = self.rows[x][g]
        return x

    def power(self, g: GroupElement, k: int) -> GroupElement:
        if k < 0:
            g, k = self.inverse[g], -k
        k %= self.element_order[g]
        x = 0
        for _ in range(k):
            x = self.rows[x][g]
        return x

    def conjugate(self, g: GroupElement, by: GroupElement) -> GroupElement:
        """``by * g * by^-1``."""
        return self.rows[self.rows[by][g]][self.inverse[by]]

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """``g h g^-1 h^-1``."""
        return self.product((g, h, self.inverse[g], self.inverse[h]))

    def powers(self, h: GroupElement) -> tuple[GroupElement, ...]:
        """``(h^0, h^1, ..., h^(order(h)-1))``."""
        out, x = [0], h
        while x != 0:
            out.append(x)
            x = self.rows[x][h]
        return tuple(out)

    def closure(self, generators: Iterable[GroupElement]) -> frozenset[GroupElement]:
        """Subgroup generated by ``generators`` (breadth-first over the table)."""
        gens = sorted(set(generators))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.rows[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def name(self, g: GroupElement) -> str:
        return self.names[g]

    def element(self, ref) -> GroupElement:
        """Resolve an element reference: an index, a name, or cycle notation."""
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            g = int(ref)
            if not 0 <= g < self.order:
                raise ValueError(f"element index {g} out of range for order {self.order}")
            return g
        if not isinstance(ref, str):
            raise TypeError(f"cannot interpret {ref!r} as a group element")
        text = ref.strip()
        if text in self.names:
            return self.names.index(text)
        if self.permutations is not None:
            perm = parse_cycles(text, len(self.permutations[0]))
            return self.permutations.index(perm)
        if text.lstrip("-").isdigit():
            return self.element(int(text))
        raise ValueError(f"unknown group element {ref!r}")

    def relabel(self, names: Sequence[str]) -> "FiniteGroup":
        names = tuple(str(s) for s in names)
        if len(names) != self.order or len(set(names)) != self.order:
            raise ValueError("need one distinct name per element")
        return FiniteGroup(self.table, names, self.permutations)


def make_cyclic(n: int) -> FiniteGroup:
    """The cyclic group Z_n, written additively: ``i * j = (i + j) mod n``."""
    if n < 1:
        raise InvalidOrderError(f"cyclic group order must be positive, got {n}")
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the cap of {MAX_ORDER}")
    idx = np.arange(n, dtype=np.int64)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, tuple(str(i) for i in range(n)))


def _cycles(perm: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen, out = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc, k = [start], perm[start - 1]
        seen.add(start)
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = perm[k - 1]
        out.append(tuple(cyc))
    return tuple(out)


def cycle_notation(perm: Sequence[int]) -> str:
    cycles = _cycles(tuple(perm))
    if not cycles:
        return "id"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse ``"(1,2)(3,4,5)"`` (or ``"id"`` / ``"()"``) to an image tuple."""
    text = text.replace(" ", "")
    image = list(range(1, degree + 1))
    if text in ("id", "()", ""):
        return tuple(image)
    if not re.fullmatch(r"(\(\d+(,\d+)*\))+", text):
        raise ValueError(f"bad cycle notation {text!r}")
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(s) for s in body.split(",")]
        if len(set(pts)) != len(pts) or not all(1 <= p <= degree for p in pts):
            raise ValueError(f"bad cycle {body!r} for degree {degree}")
        # cycles compose right to left as well
        step = {p: pts[(i + 1) % len(pts)] for i, p in enumerate(pts)}
        image = [step.get(v, v) for v in image]
    return tuple(image)


def _symmetric_key(perm):
    cycles = _cycles(perm)
    moved = [p for c in cycles for p in c]
    span = max(moved) - min(moved) if moved else 0
    return (len(moved), tuple(sorted((len(c) for c in cycles), reverse=True)), span, cycles)


def make_symmetric(degree: int, cap: int = MAX_ORDER) -> FiniteGroup:
    """The symmetric group on ``{1..degree}`` in the enumeration documented above."""
    if degree < 1:
        raise InvalidOrderError(f"degree must be positive, got {degree}")
    order = 1
    for k in range(2, degree + 1):
        order *= k
        if order > cap:
            raise CapacityError(f"S_{degree} has more than {cap} elements")
    perms = sorted(itertools.permutations(range(1, degree + 1)), key=_symmetric_key)
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((order, order), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[k] - 1] for k in range(degree))]
    return FiniteGroup(table, tuple(cycle_notation(p) for p in perms), tuple(perms))


def from_table(table, names: Sequence[str] | None = None) -> FiniteGroup:
    """Validate a square multiplication table and wrap it.

    Raises a :class:`TableValidationError` subclass naming the first axiom
    that fails: identity at index 0, inverses, cancellation, associativity.
    """
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableValidationError("table must be a non-empty square array")
    n = arr.shape[0]
    if n > MAX_ORDER:
        raise CapacityError(f"order {n} exceeds the cap of {MAX_ORDER}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise TableValidationError("table entries must be integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise TableValidationError(f"table entries must lie in [0, {n})")
    idx = np.arange(n)
    if not ((arr[0] == idx).all() and (arr[:, 0] == idx).all()):
        raise MissingIdentityError("row and column 0 must act as the identity")
    for i in range(n):
        right = np.flatnonzero(arr[i] == 0)
        if not any(arr[j, i] == 0 for j in right):
            raise NotInvertibleError(f"element {i} has no two-sided inverse")
    for i in range(n):
        if len(set(arr[i].tolist())) != n or len(set(arr[:, i].tolist())) != n:
            raise NotInvertibleError(f"row or column {i} is not a permutation (cancellation fails)")
    for i in range(n):
        # (i*j)*k against i*(j*k) for all j, k at once
        if not (arr[arr[i]] == arr[i][arr]).all():
            raise NotAssociativeError(f"associativity fails with left factor {i}")
    if names is None:
        names = tuple(str(i) for i in range(n))
    grp = FiniteGroup(arr, tuple(str(s) for s in names))
    if len(set(grp.names)) != n:
        raise ValueError("need one distinct name per element")
    return grp


def in_cyclic_span(g: GroupElement, h: GroupElement, grp: FiniteGroup) -> bool:
    """True iff ``g`` is a power of ``h``."""
    return g in grp.powers(h)
