"""Designs: MacWilliams transform, design tests, Rao bounds and combinatorial oracles."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .codes import Code, _num, inner_distribution, is_perfect, radii
from .config import settings
from .exceptions import SchemeLabError
from .zoo import SchemeBundle


def macwilliams(a, eigen) -> np.ndarray:
    """``(aQ)_g = sum_i a_i Q_g(i)``; entry 0 equals ``|Y|``."""
    out = eigen.Q @ np.asarray(a)
    if np.iscomplexobj(out) and np.abs(out.imag).max(initial=0) < 1e-9:
        out = out.real
    return out


def strength_set(bundle: SchemeBundle, t) -> list:
    """``T_t``: nonzero idempotents with idempotent distance at most ``t``."""
    d = bundle.idempotent_distances
    return [int(g) for g in np.flatnonzero((d > 1e-9) & (d <= t + 1e-9))]


def is_T_design(Y: Code, bundle: SchemeBundle, T) -> bool:
    T = [int(g) for g in T]
    if 0 in T:
        raise SchemeLabError("T must not contain the trivial idempotent")
    aQ = macwilliams(inner_distribution(Y, bundle.scheme), bundle.eigen)
    return bool(np.all(np.abs(aQ[T]) <= settings.design_tol * Y.size)) if T else True


def is_t_design(Y: Code, bundle: SchemeBundle, t) -> bool:
    return is_T_design(Y, bundle, strength_set(bundle, t))


def design_strength(Y: Code, bundle: SchemeBundle) -> int:
    """Largest ``t`` such that ``Y`` is a ``t``-design."""
    d = np.unique(np.round(bundle.idempotent_distances, 9))
    best = 0
    for t in d[d > 0]:
        if not is_t_design(Y, bundle, t):
            break
        best = t
    return int(best) if float(best).is_integer() else best


@dataclass
class RaoReport:
    kind: str
    e: int
    bound: int
    size: int
    is_design: bool

    @property
    def tight(self) -> bool:
        return self.size == self.bound

    def to_json(self):
        return {"kind": self.kind, "e": self.e, "bound": self.bound, "size": self.size,
                "tight": self.tight, "is_design": self.is_design}


def mu_prime(bundle: SchemeBundle, e, kind="distance") -> int:
    key = bundle.idempotent_distances if kind == "distance" else bundle.degrees
    return int(round(float(bundle.eigen.mu[key <= e + 1e-9].sum())))


def distance_rao(Y: Code, bundle: SchemeBundle, t) -> RaoReport:
    e = int(t // 2)
    return RaoReport("distance", e, mu_prime(bundle, e, "distance"), Y.size,
                     is_t_design(Y, bundle, t))


def order_of_T(bundle: SchemeBundle, T) -> int:
    """``e(T)``: largest ``m`` with every ``0 < |g| <= 2m`` in ``T``; ``-1`` for empty ``T``."""
    T = set(int(g) for g in T)
    if not T:
        return -1
    deg = bundle.degrees
    for m in range(int(deg.max() // 2), -1, -1):
        need = set(np.flatnonzero((deg > 1e-9) & (deg <= 2 * m + 1e-9)).tolist())
        if need <= T:
            return m
    return 0


def degree_rao(Y: Code, bundle: SchemeBundle, T) -> RaoReport:
    e = order_of_T(bundle, T)
    bound = 1 if e < 0 else mu_prime(bundle, e, "degree")
    return RaoReport("degree", e, bound, Y.size, is_T_design(Y, bundle, T))


def wilson_values(bundle: SchemeBundle, e, kind="distance") -> np.ndarray:
    """``Psi_e`` at every class: the sum of ``Q_g`` over the selected idempotents."""
    key = bundle.idempotent_distances if kind == "distance" else bundle.degrees
    sel = key <= e + 1e-9
    out = bundle.eigen.Q[sel].sum(axis=0)
    if np.iscomplexobj(out) and np.abs(out.imag).max(initial=0) < 1e-9:
        out = out.real
    return out


def duality_check(Y: Code, bundle: SchemeBundle) -> dict:
    """``Y`` is ``e``-perfect iff ``Y^0`` is a tight ``2e``-design, each side computed on its own."""
    if not Y.is_additive:
        raise SchemeLabError("duality check needs an additive code")
    if not bundle.self_duality():
        raise SchemeLabError("duality check needs a self-dual scheme")
    _, e, _ = radii(Y, bundle)
    perfect = is_perfect(Y, bundle, e)
    Y0 = Y.dual()
    rao = distance_rao(Y0, bundle, 2 * e)
    tight = rao.is_design and rao.tight
    return {"e": e, "perfect": perfect, "dual_size": Y0.size, "dual_rao": rao.to_json(),
            "dual_tight": tight, "biconditional": perfect == tight}


# -- batch evaluation --------------------------------------------------------------------------
#
# The combinatorial oracles below take a batch of codes as a 0/1 indicator matrix
# ``W`` of shape ``(B, |X|)`` and return one verdict per row.


def indicators(codes, n_points) -> np.ndarray:
    W = np.zeros((len(codes), n_points))
    for r, Y in enumerate(codes):
        W[r, Y.elements if isinstance(Y, Code) else np.asarray(Y, dtype=np.int64)] = 1.0
    return W


def inner_distributions(W, bundle: SchemeBundle) -> np.ndarray:
    R = bundle.scheme.relation_matrix()
    n = bundle.scheme.class_count
    out = np.empty((W.shape[0], n))
    for i in range(n):
        out[:, i] = ((W @ (R == i)) * W).sum(axis=1)
    return out / W.sum(axis=1, keepdims=True)


def t_design_verdicts(W, bundle: SchemeBundle, t) -> np.ndarray:
    T = strength_set(bundle, t)
    if not T:
        return np.ones(W.shape[0], dtype=bool)
    aQ = inner_distributions(W, bundle) @ bundle.eigen.Q[T].T
    return np.all(np.abs(aQ) <= settings.design_tol * W.sum(axis=1, keepdims=True), axis=1)


def _balanced_rows(W, key, total) -> np.ndarray:
    counts = W @ np.eye(total)[key]
    return counts.min(axis=1) == counts.max(axis=1)


def _column_symbols(bundle: SchemeBundle):
    """Symbol of every point in every alphabet column, plus the alphabet sizes."""
    X = bundle.scheme.group
    C = X.all_coords
    syms, sizes = [], []
    for col in bundle.columns:
        orders = [X.orders[c] for c in col]
        syms.append(np.ravel_multi_index(tuple(C[:, c] for c in col), orders))
        sizes.append(math.prod(orders))
    return np.stack(syms, axis=1), sizes


def _selection_key(symbols, sizes, cols):
    key = np.zeros(len(symbols), dtype=np.int64)
    total = 1
    for c in cols:
        key = key * sizes[c] + symbols[:, c]
        total *= sizes[c]
    return key, total


def oa_verdicts(W, bundle: SchemeBundle, t) -> np.ndarray:
    """Every ``t``-column projection balanced (mixed-level orthogonal array of strength ``t``)."""
    if bundle.columns is None:
        raise SchemeLabError("orthogonal-array strength needs alphabet columns")
    symbols, sizes = _column_symbols(bundle)
    ok = np.ones(W.shape[0], dtype=bool)
    for cols in itertools.combinations(range(len(sizes)), t):
        ok &= _balanced_rows(W, *_selection_key(symbols, sizes, cols))
    return ok


def _compositions(total, parts, cap):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def ooa_verdicts(W, bundle: SchemeBundle, t, side="trailing") -> np.ndarray:
    """Balance on every selection of ``t_j`` columns from block ``j`` with ``sum t_j = t``.

    With ``side="trailing"`` the last ``t_j`` columns of each block are used, the
    selection matching the class labels of :func:`schemelab.zoo.nrt` (a block's
    weight is the position of its rightmost nonzero entry).  ``side="leading"``
    takes the first ``t_j`` columns instead.
    """
    if bundle.name != "nrt":
        raise SchemeLabError("ordered orthogonal arrays need an nrt bundle")
    symbols, sizes = _column_symbols(bundle)
    blocks = bundle.blocks
    r = len(blocks[0])
    ok = np.ones(W.shape[0], dtype=bool)
    for comp in _compositions(t, len(blocks), r):
        cols = []
        for blk, tj in zip(blocks, comp):
            if tj:
                cols += blk[r - tj:] if side == "trailing" else blk[:tj]
        ok &= _balanced_rows(W, *_selection_key(symbols, sizes, cols))
    return ok


def johnson_tt_verdicts(W, bundle: SchemeBundle, t) -> np.ndarray:
    """One constant count of ``y`` nonzero on ``R`` with ``y|_R = omega`` over all ``R``, ``omega``."""
    if bundle.name != "johnson":
        raise SchemeLabError("(t,t)-designs need a johnson bundle")
    if t == 0:
        return np.ones(W.shape[0], dtype=bool)
    q = bundle.parameters["q"]
    n = bundle.parameters["n"]
    pts = bundle.extras["points"]
    lo = np.full(W.shape[0], np.inf)
    hi = np.full(W.shape[0], -np.inf)
    for R in itertools.combinations(range(n), t):
        sub = pts[:, list(R)]
        full = np.all(sub != 0, axis=1)
        # points not covering R go to an extra bucket that is ignored
        key = np.where(full, np.ravel_multi_index(tuple((np.maximum(sub, 1) - 1).T), (q - 1,) * t),
                       (q - 1) ** t)
        counts = (W @ np.eye((q - 1) ** t + 1)[key])[:, :-1]
        lo = np.minimum(lo, counts.min(axis=1))
        hi = np.maximum(hi, counts.max(axis=1))
    return lo == hi


def subspaces(n, k, q):
    """Row-reduced bases (``k x n``) of all ``k``-dimensional subspaces of ``F_q^n``."""
    if k == 0:
        return [np.zeros((0, n), dtype=np.int64)]
    out = []
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(n) if j > pivots[i] and j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            B = np.zeros((k, n), dtype=np.int64)
            for i, p in enumerate(pivots):
                B[i, p] = 1
            for (i, j), v in zip(free, vals):
                B[i, j] = v
            out.append(B)
    return out


def sumrank_verdicts(W, bundle: SchemeBundle, t) -> np.ndarray:
    """Restriction counts to ``U_1 x ... x U_l`` are constant over forms, for ``sum dim <= t``.

    A matrix ``F`` restricted to ``U x F_q^m`` is ``B^T F`` for a basis ``B`` of
    ``U``; constant counts for each subspace tuple make the count depend on the
    dimension vector only.
    """
    if bundle.name not in ("sumrank", "bilinear"):
        raise SchemeLabError("sum-rank designs need a sum-rank bundle")
    if bundle.n_points > 10**4:
        raise SchemeLabError("sum-rank design oracle limited to 10^4 points")
    ok = np.ones(W.shape[0], dtype=bool)
    if t == 0:
        return ok
    q = bundle.parameters["q"]
    layout = bundle.blocks
    C = bundle.scheme.group.all_coords
    mats = [C[:, L["coords"]].reshape(len(C), L["n"], L["m"]) for L in layout]
    for dims in itertools.product(*[range(L["n"] + 1) for L in layout]):
        if sum(dims) == 0 or sum(dims) > t:
            continue
        choices = [subspaces(L["n"], k, q) for L, k in zip(layout, dims)]
        for bases in itertools.product(*choices):
            key = np.zeros(len(C), dtype=np.int64)
            total = 1
            for B, F in zip(bases, mats):
                if B.shape[0] == 0:
                    continue
                flat = (np.einsum("kn,ynm->ykm", B, F) % q).reshape(len(C), -1)
                for c in range(flat.shape[1]):
                    key = key * q + flat[:, c]
                total *= q ** flat.shape[1]
            ok &= _balanced_rows(W, key, total)
    return ok


# -- single-code oracles -------------------------------------------------------------------------


def _one(Y, bundle):
    return indicators([Y], bundle.n_points)


def _strength(Y, bundle, verdict, limit):
    W = _one(Y, bundle)
    t = 0
    while t < limit and verdict(W, bundle, t + 1)[0]:
        t += 1
    return t


def oa_strength(Y: Code, bundle: SchemeBundle) -> int:
    """Largest ``t`` with every ``t``-column projection balanced."""
    return _strength(Y, bundle, oa_verdicts, len(bundle.columns or []))


def ooa_strength(Y: Code, bundle: SchemeBundle, side="trailing") -> int:
    """Largest ``t`` for which all admissible per-block column selections are balanced."""
    total = sum(len(b) for b in bundle.blocks or [])
    return _strength(Y, bundle, lambda W, b, t: ooa_verdicts(W, b, t, side), total)


def johnson_tt_check(Y: Code, bundle: SchemeBundle, t) -> bool:
    return bool(johnson_tt_verdicts(_one(Y, bundle), bundle, t)[0])


def sumrank_design_check(Y: Code, bundle: SchemeBundle, t) -> bool:
    return bool(sumrank_verdicts(_one(Y, bundle), bundle, t)[0])


def design_report(Y: Code, bundle: SchemeBundle, t=None, T=None) -> dict:
    out = {}
    if T is not None:
        T = [int(g) for g in T]
        out["T"] = T
        out["is_design"] = is_T_design(Y, bundle, T)
        out["rao"] = degree_rao(Y, bundle, T).to_json()
    if t is not None:
        out["t"] = t
        out["T"] = strength_set(bundle, t) if T is None else out["T"]
        ok = is_t_design(Y, bundle, t)
        out["is_design"] = ok if T is None else out["is_design"] and ok
        out["rao"] = distance_rao(Y, bundle, t).to_json() if T is None else out["rao"]
        comb = combinatorial_verdict(Y, bundle, t)
        if comb is not None:
            out["combinatorial"] = comb
            out["oracle_agreement"] = comb == ok
    out["strength"] = _num(design_strength(Y, bundle))
    return out


def combinatorial_verdict(Y: Code, bundle: SchemeBundle, t):
    """Combinatorial ``t``-design test for bundles that have one, else ``None``."""
    if bundle.name in ("mixed", "hamming"):
        return oa_strength(Y, bundle) >= t
    if bundle.name == "nrt":
        return ooa_strength(Y, bundle) >= t
    if bundle.name == "johnson":
        return johnson_tt_check(Y, bundle, t)
    if bundle.name in ("sumrank", "bilinear") and bundle.n_points <= 10**4:
        return sumrank_design_check(Y, bundle, t)
    return None
