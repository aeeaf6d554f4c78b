"""Commutative association schemes and their eigenstructure.

Storage conventions used throughout the package:

* ``P[i, j]`` is the eigenvalue of the adjacency matrix ``A_i`` on the
  idempotent ``E_j`` (rows are relation classes).
* ``Q[j, i]`` is the coefficient of ``A_i`` in ``|X| E_j`` (rows are
  idempotents), so that ``P @ Q == Q @ P == |X| I``.
* Class 0 is the diagonal relation and idempotent 0 is ``J / |X|``.

A scheme is either a *translation* scheme, stored as a group plus the class
index of every group element, or a *generic* scheme, stored as a dense
``|X| x |X|`` matrix of class indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .config import settings
from .exceptions import AxiomError, CapExceededError, EigenError, SchemeLabError
from .groups import FiniteAbelianGroup, GroupElement


class AssociationScheme:
    """A commutative association scheme with classes ``0..s``.

    Use :func:`scheme_from_partition` or :func:`scheme_from_relation` rather
    than calling the constructor directly; those verify the axioms.
    """

    def __init__(self, class_labels, transpose, *, group=None, part_of=None,
                 relmat=None, points=None, name=""):
        if (group is None) == (relmat is None):
            raise SchemeLabError("give either a group with part_of, or a relation matrix")
        self.group: FiniteAbelianGroup | None = group
        self.part_of = None if part_of is None else np.asarray(part_of, dtype=np.int64)
        self._relmat = None if relmat is None else np.asarray(relmat, dtype=np.int64)
        self.points = points
        self.class_labels = list(class_labels)
        self.transpose = np.asarray(transpose, dtype=np.int64)
        self.name = name
        self._index = None
        self._p = None

    def __repr__(self):
        kind = "translation" if self.is_translation else "generic"
        return f"AssociationScheme({self.name or kind}, points={self.n_points}, classes={self.class_count})"

    @property
    def is_translation(self) -> bool:
        return self.group is not None

    @property
    def n_points(self) -> int:
        return self.group.size if self.is_translation else self._relmat.shape[0]

    @property
    def class_count(self) -> int:
        return len(self.class_labels)

    @property
    def valencies(self) -> np.ndarray:
        if self.is_translation:
            return np.bincount(self.part_of, minlength=self.class_count)
        return np.bincount(self._relmat[0], minlength=self.class_count)

    def class_of(self, x, y):
        """Class index of the pair ``(x, y)`` of point indices; broadcasts."""
        if self.is_translation:
            return self.part_of[self.group.sub(y, x)]
        return self._relmat[x, y]

    def relation_matrix(self) -> np.ndarray:
        if not self.is_translation:
            return self._relmat
        if self.n_points > settings.matrix_cap:
            raise CapExceededError(
                f"relation matrix of {self.n_points} points exceeds cap {settings.matrix_cap}")
        return self.part_of[self.group.difference_table()]

    def point(self, idx):
        if self.is_translation:
            return tuple(int(c) for c in self.group.coords(idx))
        return self.points[idx]

    def index_of(self, point) -> int:
        if isinstance(point, GroupElement):
            return point.index
        if self.is_translation:
            return int(self.group.index(point))
        if self._index is None:
            self._index = {tuple(p): i for i, p in enumerate(self.points)}
        try:
            return self._index[tuple(point)]
        except KeyError:
            raise SchemeLabError(f"{point} is not a point of the scheme") from None

    @property
    def intersection_numbers(self) -> IntersectionNumbers:
        if self._p is None:
            self._p = verify_axioms(self)
        return self._p

    def to_json(self, eigen: EigenData | None = None) -> dict:
        out = {"points": self.n_points, "classes": self.class_count,
               "transpose": self.transpose.tolist()}
        if eigen is not None:
            out.update(eigen.to_json())
        return out


@dataclass
class IntersectionNumbers:
    p: np.ndarray

    def __getitem__(self, ijk):
        return int(self.p[ijk])

    def to_json(self):
        return self.p.tolist()


@dataclass
class EigenData:
    P: np.ndarray
    Q: np.ndarray
    v: np.ndarray
    mu: np.ndarray
    size: int
    # for translation schemes: idempotent index of every character (by group index)
    dual_class_of: np.ndarray | None = None
    scheme: AssociationScheme | None = field(default=None, repr=False, compare=False)
    _projectors: list | None = field(default=None, repr=False, compare=False)

    @property
    def class_count(self) -> int:
        return self.P.shape[0]

    @property
    def projectors(self) -> list:
        if self._projectors is None:
            if self.scheme is None:
                raise SchemeLabError("projectors need the scheme")
            if self.size > settings.projector_cap:
                raise CapExceededError(
                    f"projectors on {self.size} points exceed cap {settings.projector_cap}")
            R = self.scheme.relation_matrix()
            self._projectors = [self.Q[j][R] / self.size for j in range(self.class_count)]
        return self._projectors

    def projector(self, j) -> np.ndarray:
        return self.projectors[j]

    def to_json(self) -> dict:
        return {"P": _round_json(self.P), "Q": _round_json(self.Q),
                "v": _round_json(self.v), "mu": _round_json(self.mu)}


def _round_value(x):
    if isinstance(x, complex) or np.iscomplexobj(x):
        x = complex(x)
        if abs(x.imag) > 1e-12:
            return [float(f"{x.real:.12g}"), float(f"{x.imag:.12g}")]
        x = x.real
    return float(f"{float(x):.12g}")


def _round_json(a):
    a = np.asarray(a)
    if a.ndim == 0:
        return _round_value(a.item())
    return [_round_json(r) for r in a]


class CharacteristicMatrix(NamedTuple):
    gamma: int
    H: np.ndarray


class SelfDuality(NamedTuple):
    is_self_dual: bool
    ordering: tuple | None
    message: str = ""

    def __bool__(self):
        return self.is_self_dual


# -- construction ---------------------------------------------------------


def _element_index(X, e):
    if isinstance(e, GroupElement):
        return e.index
    if np.ndim(e) == 0:
        return int(e)
    return int(X.index(e))


def _parts_to_part_of(X: FiniteAbelianGroup, parts) -> np.ndarray:
    part_of = np.full(X.size, -1, dtype=np.int64)
    for i, part in enumerate(parts):
        for e in part:
            idx = _element_index(X, e)
            if not 0 <= idx < X.size:
                raise SchemeLabError(f"element {e} is not in the group")
            if part_of[idx] >= 0:
                raise SchemeLabError(
                    f"parts do not partition X: {X.coords(idx).tolist()} lies in parts "
                    f"{part_of[idx]} and {i}")
            part_of[idx] = i
    missing = np.flatnonzero(part_of < 0)
    if missing.size:
        raise SchemeLabError(f"parts do not partition X: {X.coords(missing[0]).tolist()} is uncovered")
    return part_of


def _translation_transpose(X, part_of, n_classes):
    neg = part_of[X.neg(np.arange(X.size))]
    transpose = np.full(n_classes, -1, dtype=np.int64)
    for i in range(n_classes):
        images = np.unique(neg[part_of == i])
        if images.size != 1:
            x = np.flatnonzero(part_of == i)[0]
            raise AxiomError("A2", f"negatives of part {i} are spread over parts {images.tolist()}",
                             witness={"part": i, "element": X.coords(x).tolist()})
        transpose[i] = images[0]
    return transpose


def scheme_from_partition(X: FiniteAbelianGroup, parts, labels=None, verify=True,
                          name="") -> AssociationScheme:
    """Translation scheme whose class ``i`` holds the pairs with ``y - x`` in ``parts[i]``."""
    parts = list(parts)
    part_of = _parts_to_part_of(X, parts)
    return _translation_scheme(X, part_of, len(parts), labels, verify, name)


def scheme_from_part_of(X: FiniteAbelianGroup, part_of, labels=None, verify=True,
                        name="") -> AssociationScheme:
    """Same as :func:`scheme_from_partition` with the part index of every element given."""
    part_of = np.asarray(part_of, dtype=np.int64)
    n_classes = int(part_of.max()) + 1
    if np.unique(part_of).size != n_classes:
        raise SchemeLabError("some part is empty")
    return _translation_scheme(X, part_of, n_classes, labels, verify, name)


def _translation_scheme(X, part_of, n_classes, labels, verify, name):
    if X.size > settings.translation_cap:
        raise CapExceededError(f"translation scheme on {X.size} points exceeds cap")
    if part_of[0] != 0 or np.count_nonzero(part_of == 0) != 1:
        raise AxiomError("A1", "part 0 must be exactly {0}")
    if any(np.count_nonzero(part_of == i) == 0 for i in range(n_classes)):
        raise SchemeLabError("some part is empty")
    transpose = _translation_transpose(X, part_of, n_classes)
    labels = list(range(n_classes)) if labels is None else list(labels)
    s = AssociationScheme(labels, transpose, group=X, part_of=part_of, name=name)
    if verify:
        s._p = verify_axioms(s)
    return s


def scheme_from_relation(points, rel, verify=True, name="") -> AssociationScheme:
    """Generic scheme from a pair classifier ``rel(x, y)`` returning hashable labels.

    The label taken on the diagonal becomes class 0; the others are numbered
    in sorted order when comparable, else in order of first appearance.
    """
    points = list(points)
    n = len(points)
    if n > settings.relation_cap:
        raise CapExceededError(f"{n} points exceed the relation cap {settings.relation_cap}")
    if n > settings.matrix_cap:
        raise CapExceededError(f"{n} points exceed the dense matrix cap {settings.matrix_cap}")
    raw = [[rel(x, y) for y in points] for x in points]
    diag = {raw[a][a] for a in range(n)}
    if len(diag) != 1:
        a = next(a for a in range(1, n) if raw[a][a] != raw[0][0])
        raise AxiomError("A1", "diagonal pairs fall into different classes",
                         witness={"pairs": [[0, 0], [a, a]]})
    d0 = diag.pop()
    seen = {}
    for row in raw:
        for lab in row:
            seen.setdefault(lab, len(seen))
    others = [lab for lab in seen if lab != d0]
    try:
        others.sort()
    except TypeError:
        pass
    labels = [d0] + others
    code = {lab: i for i, lab in enumerate(labels)}
    R = np.array([[code[lab] for lab in row] for row in raw], dtype=np.int64)
    return scheme_from_matrix(R, labels, points=points, verify=verify, name=name)


def scheme_from_matrix(R, labels=None, points=None, verify=True, name="") -> AssociationScheme:
    R = np.asarray(R, dtype=np.int64)
    n = R.shape[0]
    n_classes = int(R.max()) + 1
    if np.any(np.diag(R) != 0):
        a = int(np.flatnonzero(np.diag(R) != 0)[0])
        raise AxiomError("A1", "diagonal pair outside class 0", witness={"pairs": [[a, a]]})
    off = R + np.eye(n, dtype=np.int64)
    if np.any(off == 0):
        a, b = map(int, np.argwhere(off == 0)[0])
        raise AxiomError("A1", "class 0 contains an off-diagonal pair",
                         witness={"pairs": [[a, b]]})
    transpose = np.full(n_classes, -1, dtype=np.int64)
    for i in range(n_classes):
        mask = R == i
        if not mask.any():
            raise SchemeLabError(f"class {i} is empty")
        images = np.unique(R.T[mask])
        if images.size != 1:
            a, b = map(int, np.argwhere(mask)[0])
            raise AxiomError("A2", f"transposes of class {i} meet classes {images.tolist()}",
                             witness={"class": i, "pair": [a, b]})
        transpose[i] = images[0]
    labels = list(range(n_classes)) if labels is None else list(labels)
    points = list(range(n)) if points is None else points
    s = AssociationScheme(labels, transpose, relmat=R, points=points, name=name)
    if verify:
        s._p = verify_axioms(s)
    return s


# -- axioms -----------------------------------------------------------------


def _group_by_class(part_of, n_classes):
    order = np.argsort(part_of, kind="stable")
    starts = np.searchsorted(part_of[order], np.arange(n_classes))
    return order, starts


def verify_axioms(s: AssociationScheme) -> IntersectionNumbers:
    """Full table ``p[i, j, k]``; raises :class:`AxiomError` with a witness on failure."""
    n = s.class_count
    p = np.zeros((n, n, n), dtype=np.int64)
    if s.is_translation:
        X = s.group
        chi = np.zeros((n, X.size))
        chi[s.part_of, np.arange(X.size)] = 1.0
        axes = tuple(range(1, X.rank + 1))
        F = np.fft.fftn(chi.reshape((n,) + X.orders), axes=axes)
        order, starts = _group_by_class(s.part_of, n)
        for i in range(n):
            conv = np.fft.ifftn(F[i][None] * F, axes=axes).real.reshape(n, X.size)
            counts = np.rint(conv).astype(np.int64)
            if np.abs(conv - counts).max() > 0.25:
                raise EigenError("convolution lost precision while counting triangles")
            c = counts[:, order]
            lo = np.minimum.reduceat(c, starts, axis=1)
            hi = np.maximum.reduceat(c, starts, axis=1)
            bad = np.argwhere(lo != hi)
            if bad.size:
                j, k = map(int, bad[0])
                members = np.flatnonzero(s.part_of == k)
                vals = counts[j, members]
                y1 = members[np.argmin(vals)]
                y2 = members[np.argmax(vals)]
                raise AxiomError(
                    "A3", f"p_{{{i},{j}}}^{k} is not constant",
                    witness={"triple": [i, j, k],
                             "pairs": [[[0] * X.rank, X.coords(y).tolist()] for y in (y1, y2)],
                             "counts": [int(vals.min()), int(vals.max())]})
            p[i] = lo
    else:
        R = s._relmat
        N = R.shape[0]
        A = np.zeros((n, N, N), dtype=np.float64)
        for i in range(n):
            A[i] = R == i
        flat = R.ravel()
        order, starts = _group_by_class(flat, n)
        stacked = A.transpose(1, 0, 2).reshape(N, n * N)
        for i in range(n):
            C = np.rint(A[i] @ stacked).astype(np.int64).reshape(N, n, N)
            for j in range(n):
                c = C[:, j, :].ravel()[order]
                lo = np.minimum.reduceat(c, starts)
                hi = np.maximum.reduceat(c, starts)
                if np.any(lo != hi):
                    k = int(np.flatnonzero(lo != hi)[0])
                    pairs = np.argwhere(R == k)
                    vals = C[pairs[:, 0], j, pairs[:, 1]]
                    raise AxiomError(
                        "A3", f"p_{{{i},{j}}}^{k} is not constant",
                        witness={"triple": [i, j, k],
                                 "pairs": [pairs[np.argmin(vals)].tolist(),
                                           pairs[np.argmax(vals)].tolist()],
                                 "counts": [int(vals.min()), int(vals.max())]})
                p[i, j] = lo
    if not np.array_equal(p, p.transpose(1, 0, 2)):
        i, j, k = map(int, np.argwhere(p != p.transpose(1, 0, 2))[0])
        raise AxiomError("commutative", f"p_{{{i},{j}}}^{k} != p_{{{j},{i}}}^{k}",
                         witness={"triple": [i, j, k]})
    return IntersectionNumbers(p)


# -- eigenstructure ---------------------------------------------------------


def eigen(s: AssociationScheme, method="auto", seed=None) -> EigenData:
    """Eigenmatrices of ``s``.

    ``method`` is ``"characters"`` (translation schemes only), ``"algebra"``
    (diagonalise a random element of the Bose-Mesner algebra through the
    intersection numbers) or ``"auto"``.
    """
    if method == "auto":
        method = "characters" if s.is_translation else "algebra"
    if method == "characters":
        if not s.is_translation:
            raise EigenError("character sums need a translation scheme")
        e = _eigen_characters(s)
    elif method == "algebra":
        e = _eigen_algebra(s, settings.seed if seed is None else seed)
    else:
        raise ValueError(f"unknown eigen method {method!r}")
    _check_eigen(e)
    return e


def _realify(a, tol=1e-9):
    if np.iscomplexobj(a) and np.abs(a.imag).max(initial=0.0) <= tol:
        return a.real.copy()
    return a


def _character_table(s: AssociationScheme) -> np.ndarray:
    """``V[i, u] = sum_{x in X_i} exp(2 pi i x.u)`` for every standard character ``u``."""
    X = s.group
    n = s.class_count
    chi = np.zeros((n, X.size))
    chi[s.part_of, np.arange(X.size)] = 1.0
    axes = tuple(range(1, X.rank + 1))
    V = np.fft.ifftn(chi.reshape((n,) + X.orders), axes=axes) * X.size
    return V.reshape(n, X.size)


def _eigen_characters(s: AssociationScheme) -> EigenData:
    X = s.group
    n = s.class_count
    N = X.size
    V = _character_table(s)[:, X.twist(np.arange(N))]
    key = np.concatenate([np.round(V.real, 6), np.round(V.imag, 6)], axis=0).T
    key[key == 0] = 0.0  # fold -0.0
    _, first, dual_of = np.unique(key, axis=0, return_index=True, return_inverse=True)
    dual_of = dual_of.ravel()
    if first.size != n:
        raise EigenError(
            f"characters fall into {first.size} classes but the scheme has {n}; "
            "the partition is not self-dual as a translation scheme")
    P = _realify(V[:, first])
    v = s.valencies.astype(float)
    mu = np.bincount(dual_of, minlength=n).astype(float)
    Q = mu[:, None] * np.conj(P).T / v[None, :]
    e = EigenData(P, _realify(Q), v, mu, N, dual_of.astype(np.int64), scheme=s)
    return _canonical(e)


def _eigen_algebra(s: AssociationScheme, seed) -> EigenData:
    p = s.intersection_numbers.p.astype(float)
    n = s.class_count
    N = s.n_points
    v = np.array([p[k, s.transpose[k], 0] for k in range(n)])
    for attempt in range(settings.eigen_retries):
        rng = np.random.default_rng(seed + attempt)
        c = rng.uniform(-1.0, 1.0, size=n)
        L = np.tensordot(c, p, axes=1)
        w, U = np.linalg.eig(L)
        gaps = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gaps, np.inf)
        scale = max(1.0, np.abs(w).max())
        if gaps.min(initial=np.inf) > settings.collision_tol * scale:
            break
    else:
        raise EigenError(f"eigenvalues kept colliding after {settings.eigen_retries} attempts")
    if np.any(np.abs(U[0]) < 1e-12):
        raise EigenError("degenerate eigenvector in the regular representation")
    P = U / U[0][None, :]
    # P[:, m] is the common eigenvector of every p[i] with eigenvalue P[i, m]
    P = _realify(P, 1e-9)
    mu = N / np.sum(np.abs(P) ** 2 / v[:, None], axis=0)
    Q = mu[:, None] * np.conj(P).T / v[None, :]
    e = EigenData(P, _realify(Q), v, mu.real.astype(float), N, None, scheme=s)
    return _canonical(e)


def _canonical(e: EigenData) -> EigenData:
    """Trivial idempotent first, then by multiplicity and rounded Q row."""
    n = e.class_count
    trivial = np.flatnonzero(np.all(np.abs(e.P - e.v[:, None]) <= 1e-6 * max(1.0, e.v.max()), axis=0))
    if trivial.size != 1:
        raise EigenError("could not identify the trivial idempotent")
    t = int(trivial[0])

    def key(j):
        row = e.Q[j]
        parts = [round(float(np.real(x)), 6) + 0.0 for x in row]
        parts += [round(float(np.imag(x)), 6) + 0.0 for x in row] if np.iscomplexobj(row) else []
        return (round(float(e.mu[j]), 6), parts)

    rest = sorted((j for j in range(n) if j != t), key=key)
    return permute_idempotents(e, [t] + rest)


def permute_idempotents(e: EigenData, order) -> EigenData:
    """New EigenData whose idempotent ``j`` is the old idempotent ``order[j]``."""
    order = np.asarray(order, dtype=np.int64)
    dual = None
    if e.dual_class_of is not None:
        inv = np.empty_like(order)
        inv[order] = np.arange(order.size)
        dual = inv[e.dual_class_of]
    return EigenData(e.P[:, order], e.Q[order], e.v, e.mu[order], e.size, dual, scheme=e.scheme)


def _check_eigen(e: EigenData, tol=None):
    tol = settings.eigen_tol if tol is None else tol
    N = e.size
    if abs(e.v.sum() - N) > tol * N or abs(e.mu.sum() - N) > tol * N:
        raise EigenError("valencies or multiplicities do not sum to |X|")
    I = np.eye(e.class_count) * N
    if np.abs(e.P @ e.Q - I).max() > tol * N or np.abs(e.Q @ e.P - I).max() > tol * N:
        raise EigenError("P Q != |X| I")


# -- duality ------------------------------------------------------------------


def is_self_dual(e: EigenData, tol=1e-6) -> SelfDuality:
    """Search an idempotent ordering ``pi`` with ``P[a, pi(b)] == Q[pi(a), b]``.

    The returned ``ordering`` maps class ``k`` to idempotent ``pi[k]``.
    """
    P, Q = e.P, e.Q
    n = e.class_count
    if np.allclose(P, Q, atol=tol, rtol=0):
        return SelfDuality(True, tuple(range(n)))

    def msort(x):
        x = np.asarray(x)
        return np.sort_complex(np.round(x, 6).astype(complex))

    cand = []
    for k in range(n):
        ok = []
        for j in range(n):
            if abs(e.mu[j] - e.v[k]) > tol * max(1.0, e.v[k]):
                continue
            # column P[:, j] must be a rearrangement of column Q[:, k], and row P[k] of row Q[j]
            if not np.allclose(msort(P[:, j]), msort(Q[:, k]), atol=10 * tol):
                continue
            if not np.allclose(msort(P[k]), msort(Q[j]), atol=10 * tol):
                continue
            ok.append(j)
        if not ok:
            return SelfDuality(False, None, f"class {k} (valency {e.v[k]:g}) has no matching idempotent")
        cand.append(ok)

    pi = [-1] * n
    used = [False] * n
    seq = sorted(range(n), key=lambda k: len(cand[k]))
    assigned = []

    def fits(k, j):
        if abs(P[k, j] - Q[j, k]) > tol:
            return False
        for a in assigned:
            ja = pi[a]
            if abs(P[a, j] - Q[ja, k]) > tol or abs(P[k, ja] - Q[j, a]) > tol:
                return False
        return True

    def search(pos):
        if pos == n:
            return True
        k = seq[pos]
        for j in cand[k]:
            if not used[j] and fits(k, j):
                pi[k] = j
                used[j] = True
                assigned.append(k)
                if search(pos + 1):
                    return True
                assigned.pop()
                used[j] = False
                pi[k] = -1
        return False

    if search(0):
        return SelfDuality(True, tuple(pi))
    return SelfDuality(False, None, "no consistent ordering of idempotents makes P equal Q")


def is_F_partition(X: FiniteAbelianGroup, parts, tol=1e-6) -> bool:
    """True iff the span of the part indicators is closed under the Fourier transform."""
    parts = list(parts)
    part_of = _parts_to_part_of(X, parts)
    if part_of[0] != 0 or np.count_nonzero(part_of == 0) != 1:
        raise SchemeLabError("part 0 must be exactly {0}")
    n = len(parts)
    # only the span matters, so the class structure need not satisfy the axioms here
    s = AssociationScheme(list(range(n)), np.arange(n), group=X, part_of=part_of)
    V = _character_table(s)[:, X.twist(np.arange(X.size))]
    for j in range(n):
        block = V[:, part_of == j]
        if np.abs(block - block[:, :1]).max() > tol:
            return False
    return True


def characteristic_matrix(s: AssociationScheme, e: EigenData, gamma: int,
                          tol=None) -> CharacteristicMatrix:
    tol = settings.projector_tol if tol is None else tol
    if e.scheme is None:
        e.scheme = s
    E = e.projector(gamma)
    w, U = np.linalg.eigh(E)
    keep = w > 0.5
    rank = int(keep.sum())
    if rank != int(round(float(e.mu[gamma]))):
        raise EigenError(f"rank of E_{gamma} is {rank}, multiplicity is {e.mu[gamma]:g}")
    H = _realify(U[:, keep] * math.sqrt(s.n_points))
    if np.abs(H @ np.conj(H).T - s.n_points * E).max() > max(tol, 1e-7) * s.n_points:
        raise EigenError("characteristic matrix fails the Gram identity")
    return CharacteristicMatrix(gamma, H)


def check_projectors(e: EigenData, tol=None) -> float:
    """Largest violation of the orthogonal idempotent identities."""
    tol = settings.projector_tol if tol is None else tol
    Es = e.projectors
    N = e.size
    worst = np.abs(sum(Es) - np.eye(N)).max()
    for j, Ej in enumerate(Es):
        worst = max(worst, np.abs(Ej @ Ej - Ej).max())
        for k in range(j + 1, len(Es)):
            worst = max(worst, np.abs(Ej @ Es[k]).max())
    return float(worst)


# -- products -------------------------------------------------------------------


def _block_form(groups):
    if all(g.form is None for g in groups):
        return None
    rank = sum(g.rank for g in groups)
    F = np.zeros((rank, rank), dtype=np.int64)
    off = 0
    for g in groups:
        F[off:off + g.rank, off:off + g.rank] = np.eye(g.rank, dtype=np.int64) if g.form is None else g.form
        off += g.rank
    return F


def direct_product(factors) -> tuple[AssociationScheme, EigenData]:
    """Product scheme; class ``(i_1, ..., i_m)`` is numbered row-major."""
    factors = list(factors)
    if len(factors) < 2:
        raise SchemeLabError("a direct product needs at least two factors")
    size = math.prod(s.n_points for s, _ in factors)
    sizes = [s.class_count for s, _ in factors]
    translation = all(s.is_translation for s, _ in factors)
    if size > (settings.translation_cap if translation else settings.relation_cap):
        raise CapExceededError(f"product of size {size} exceeds cap")

    labels = [()]
    for s, _ in factors:
        labels = [a + (b,) for a in labels for b in s.class_labels]
    transpose = np.zeros(1, dtype=np.int64)
    for (s, _), k in zip(factors, sizes):
        transpose = (transpose[:, None] * k + s.transpose[None, :]).ravel()

    if translation:
        groups = [s.group for s, _ in factors]
        orders = [m for g in groups for m in g.orders]
        G = FiniteAbelianGroup(orders, form=_block_form(groups))
        part_of = np.zeros(1, dtype=np.int64)
        for (s, _), k in zip(factors, sizes):
            part_of = (part_of[:, None] * k + s.part_of[None, :]).ravel()
        prod = AssociationScheme(labels, transpose, group=G, part_of=part_of)
    else:
        R = np.zeros((1, 1), dtype=np.int64)
        for (s, _), k in zip(factors, sizes):
            Rf = s.relation_matrix()
            n0, n1 = R.shape[0], Rf.shape[0]
            R = (R[:, None, :, None] * k + Rf[None, :, None, :]).reshape(n0 * n1, n0 * n1)
        points = [()]
        for s, _ in factors:
            points = [a + (s.point(b),) for a in points for b in range(s.n_points)]
        prod = AssociationScheme(labels, transpose, relmat=R, points=points)

    P, Q, v, mu = np.ones((1, 1)), np.ones((1, 1)), np.ones(1), np.ones(1)
    dual = np.zeros(1, dtype=np.int64) if translation else None
    for (s, e), k in zip(factors, sizes):
        P, Q = np.kron(P, e.P), np.kron(Q, e.Q)
        v, mu = np.kron(v, e.v), np.kron(mu, e.mu)
        if translation:
            if e.dual_class_of is None:
                dual = None
            elif dual is not None:
                dual = (dual[:, None] * k + e.dual_class_of[None, :]).ravel()
    e = EigenData(P, Q, v, mu, size, dual, scheme=prod)
    return prod, e
