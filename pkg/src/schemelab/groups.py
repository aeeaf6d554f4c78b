"""Finite abelian groups Z_{m_1} x ... x Z_{m_k}, their characters and dual subgroups.

Elements are handled in two encodings: a canonical coordinate tuple
``(x_1, ..., x_k)`` with ``0 <= x_j < m_j`` for I/O, and a mixed-radix integer
index (row-major, last coordinate fastest) for hashing and vectorised
arithmetic.  Most functions take and return numpy arrays of indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from .config import settings
from .exceptions import CapExceededError, GroupError, NotASubgroupError


class FiniteAbelianGroup:
    """Product of cyclic groups with a fixed nondegenerate pairing.

    The pairing is ``<x, y> = exp(2 pi i sum_{j,k} x_j F_jk y_k / m_j)``.  With
    ``form=None`` the matrix ``F`` is the identity, which gives the usual dot
    product character pairing.  A custom ``form`` may only couple coordinates
    of equal order and must induce a bijection ``y -> F y``.
    """

    def __init__(self, orders, form=None, cap=None):
        orders = tuple(int(m) for m in orders)
        if not orders:
            raise GroupError("a group needs at least one cyclic factor")
        if any(m < 2 for m in orders):
            raise GroupError(f"cyclic orders must be >= 2, got {orders}")
        cap = settings.group_cap if cap is None else cap
        size = math.prod(orders)
        if size > cap:
            raise CapExceededError(f"group of size {size} exceeds cap {cap}")
        self.orders = orders
        self.size = size
        self.rank = len(orders)
        self._m = np.array(orders, dtype=np.int64)
        self.lcm = reduce(math.lcm, orders)
        if form is None:
            self.form = None
        else:
            F = np.array(form, dtype=np.int64).reshape(self.rank, self.rank)
            for j in range(self.rank):
                for k in range(self.rank):
                    if F[j, k] % orders[j] and orders[j] != orders[k]:
                        raise GroupError("form couples coordinates of different orders")
            self.form = F % self._m[:, None]
            if not np.array_equal(self.form, self.form.T % self._m[:, None]):
                raise GroupError("pairing form must be symmetric")
            if np.array_equal(self.form, np.eye(self.rank, dtype=np.int64)):
                self.form = None
            elif np.unique(self.twist(np.arange(size))).size != size:
                raise GroupError("pairing form is degenerate")

    def __repr__(self):
        extra = "" if self.form is None else ", form=..."
        return f"FiniteAbelianGroup({list(self.orders)}{extra})"

    def __eq__(self, other):
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.orders == other.orders and _same_form(self.form, other.form)

    def __hash__(self):
        return hash(self.orders)

    def __len__(self):
        return self.size

    # -- encoding -------------------------------------------------------

    def index(self, coords) -> np.ndarray | int:
        c = np.asarray(coords, dtype=np.int64)
        if c.shape[-1] != self.rank:
            raise GroupError(f"expected {self.rank} coordinates, got shape {c.shape}")
        c = c % self._m
        idx = np.ravel_multi_index(tuple(np.moveaxis(c, -1, 0)), self.orders)
        return int(idx) if np.ndim(idx) == 0 else idx.astype(np.int64)

    def coords(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return np.stack(np.unravel_index(idx, self.orders), axis=-1).astype(np.int64)

    @cached_property
    def all_coords(self) -> np.ndarray:
        return self.coords(np.arange(self.size))

    def element(self, coords) -> GroupElement:
        c = tuple(int(v) % m for v, m in zip(coords, self.orders))
        if len(c) != self.rank:
            raise GroupError(f"expected {self.rank} coordinates")
        return GroupElement(self, c)

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def elements(self):
        for c in self.all_coords:
            yield GroupElement(self, tuple(int(v) for v in c))

    # -- arithmetic on index arrays --------------------------------------

    def add(self, a, b):
        return self.index(self.coords(a) + self.coords(b))

    def sub(self, a, b):
        return self.index(self.coords(a) - self.coords(b))

    def neg(self, a):
        return self.index(-self.coords(a))

    def difference_table(self, points=None) -> np.ndarray:
        """``T[a, b]`` is the index of ``points[b] - points[a]``."""
        pts = np.arange(self.size) if points is None else np.asarray(points)
        c = self.coords(pts)
        return self.index(c[None, :, :] - c[:, None, :])

    # -- characters --------------------------------------------------------

    def twist(self, idx):
        """Index of ``F y``; the identity when the pairing is standard."""
        if self.form is None:
            return np.asarray(idx, dtype=np.int64)
        c = self.coords(idx)
        return self.index(c @ self.form.T)

    def phase(self, x, y):
        """Integer ``k`` with ``<x, y> = exp(2 pi i k / lcm)``; broadcasts over index arrays."""
        cx = self.coords(x)
        cy = self.coords(self.twist(y))
        w = np.array([self.lcm // m for m in self.orders], dtype=np.int64)
        return np.sum(cx * cy * w, axis=-1) % self.lcm

    def pairing(self, x, y):
        x = _as_index(self, x)
        y = _as_index(self, y)
        val = np.exp(2j * np.pi * self.phase(x, y) / self.lcm)
        return complex(val) if np.ndim(val) == 0 else val


def _same_form(a, b):
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(a, b)


def _as_index(group, x):
    if isinstance(x, GroupElement):
        if x.group != group:
            raise GroupError("element belongs to a different group")
        return x.index
    return np.asarray(x, dtype=np.int64)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple

    @property
    def index(self) -> int:
        return self.group.index(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupError("elements of different groups")

    def __add__(self, other):
        self._check(other)
        return self.group.element(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return self.group.element(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return self.group.element(-a for a in self.coords)

    def __repr__(self):
        return f"GroupElement{self.coords}"

    def to_json(self):
        return list(self.coords)


def group_new(orders, form=None, cap=None) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(orders, form=form, cap=cap)


def pairing(x: GroupElement, y: GroupElement) -> complex:
    if x.group != y.group:
        raise GroupError("pairing of elements from different groups")
    return x.group.pairing(x.index, y.index)


class Subgroup:
    """Subgroup materialised as a sorted array of element indices."""

    def __init__(self, group, elements, generators=None):
        self.group = group
        self.elements = np.unique(np.asarray(elements, dtype=np.int64))
        self.generators = tuple(int(g) for g in (generators if generators is not None else ()))

    @classmethod
    def generated_by(cls, group, generators):
        gens = [_as_index(group, g) if isinstance(g, GroupElement) else _gen_index(group, g)
                for g in generators]
        elems = np.array([0], dtype=np.int64)
        for g in gens:
            elems = _close_under(group, elems, g)
        return cls(group, elems, gens)

    @classmethod
    def from_elements(cls, group, elements):
        idx = np.unique([_gen_index(group, e) for e in elements]).astype(np.int64)
        if idx.size == 0 or 0 not in idx:
            raise NotASubgroupError("set does not contain the identity")
        gens = []
        span = np.array([0], dtype=np.int64)
        for e in idx:
            if not np.isin(e, span):
                gens.append(int(e))
                span = _close_under(group, span, int(e))
        if span.size != idx.size or not np.array_equal(span, idx):
            extra = np.setdiff1d(span, idx)
            raise NotASubgroupError(
                f"set is not closed under addition, e.g. {group.coords(extra[0]).tolist()} is missing")
        return cls(group, idx, gens)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self):
        return self.order

    def __contains__(self, x):
        return bool(np.isin(_gen_index(self.group, x), self.elements))

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.group == other.group
                and np.array_equal(self.elements, other.elements))

    def __repr__(self):
        return f"Subgroup(order={self.order}, group={self.group!r})"

    def coords(self) -> np.ndarray:
        return self.group.coords(self.elements)


def _gen_index(group, g):
    if isinstance(g, GroupElement):
        return _as_index(group, g)
    if np.ndim(g) == 0:
        return int(g)
    return group.index(g)


def _close_under(group, elems, g):
    """Smallest subgroup containing the subgroup ``elems`` and ``g``."""
    out = elems
    step = elems
    while True:
        step = group.add(step, np.full(step.shape, g))
        merged = np.union1d(out, step)
        if merged.size == out.size:
            return out
        out = merged


def dual_subgroup(Y: Subgroup, X: FiniteAbelianGroup | None = None) -> Subgroup:
    """All ``x'`` with ``<y, x'> = 1`` for every ``y`` in ``Y``."""
    X = Y.group if X is None else X
    if X != Y.group:
        raise GroupError("Y is not a subgroup of X")
    # membership test needs only a generating set
    test = np.array(Y.generators, dtype=np.int64) if Y.generators else Y.elements
    if not Y.generators:
        Subgroup.from_elements(X, Y.elements)
    everything = np.arange(X.size)
    ok = np.ones(X.size, dtype=bool)
    for y in test:
        ok &= X.phase(np.full(X.size, y), everything) == 0
    return Subgroup.from_elements(X, everything[ok])
