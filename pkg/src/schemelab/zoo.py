"""Named association schemes bundled with a multivariate labeling.

Every constructor returns a :class:`SchemeBundle`.  Classes and idempotents
are ordered by ``(distance, label)`` so that index 0 is the diagonal class and
the trivial idempotent.  Codewords of the translation schemes are group
elements in coordinate form; an alphabet of prime-power size ``p^k`` is
either ``Z_{p^k}`` (``alphabet="cyclic"``, the default) or ``Z_p^k``
(``alphabet="elementary"``), in which case one symbol spans ``k`` coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .config import settings
from .exceptions import CapExceededError, LabelingError, SchemeLabError
from .groups import FiniteAbelianGroup
from .scheme import (AssociationScheme, EigenData, direct_product, eigen, is_self_dual,
                     permute_idempotents, scheme_from_matrix, scheme_from_part_of)


@dataclass(frozen=True)
class MultivariateLabeling:
    """Labels in ``N^ell`` for classes and idempotents with weighted distances.

    ``weights`` give ``d(alpha)``; ``idempotent_weights`` (default ``weights``)
    give the distance of an idempotent label and ``degree_weights`` (default
    all ones) give its total degree ``|gamma|``.
    """

    ell: int
    relation_labels: tuple
    idempotent_labels: tuple
    weights: tuple
    idempotent_weights: tuple | None = None
    degree_weights: tuple | None = None

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise LabelingError("weights must be positive")
        for name, labels in (("relation", self.relation_labels), ("idempotent", self.idempotent_labels)):
            if any(len(a) != self.ell for a in labels):
                raise LabelingError(f"{name} labels must have length {self.ell}")
            if len(set(labels)) != len(labels):
                raise LabelingError(f"{name} labels are not injective")
            if tuple(labels[0]) != (0,) * self.ell:
                raise LabelingError(f"{name} label of index 0 must be zero")
        if len(self.relation_labels) != len(self.idempotent_labels):
            raise LabelingError("relation and idempotent label counts differ")

    @property
    def iweights(self):
        return self.weights if self.idempotent_weights is None else self.idempotent_weights

    @property
    def dweights(self):
        return (1,) * self.ell if self.degree_weights is None else self.degree_weights

    def dist_relation(self, k) -> float:
        return float(np.dot(self.weights, self.relation_labels[k]))

    def dist_idempotent(self, j) -> float:
        return float(np.dot(self.iweights, self.idempotent_labels[j]))

    def total_degree(self, j) -> float:
        return float(np.dot(self.dweights, self.idempotent_labels[j]))

    @property
    def relation_distances(self) -> np.ndarray:
        return np.array(self.relation_labels, dtype=float).reshape(-1, self.ell) @ np.array(self.weights, float)

    @property
    def idempotent_distances(self) -> np.ndarray:
        return np.array(self.idempotent_labels, dtype=float).reshape(-1, self.ell) @ np.array(self.iweights, float)

    @property
    def degrees(self) -> np.ndarray:
        return np.array(self.idempotent_labels, dtype=float).reshape(-1, self.ell) @ np.array(self.dweights, float)

    def to_json(self):
        return {"ell": self.ell,
                "labels": {"relations": [list(a) for a in self.relation_labels],
                           "idempotents": [list(g) for g in self.idempotent_labels]},
                "weights": list(self.weights),
                "idempotent_weights": list(self.iweights),
                "degree_weights": list(self.dweights)}


@dataclass
class SchemeBundle:
    scheme: AssociationScheme
    eigen: EigenData
    labeling: MultivariateLabeling
    name: str
    parameters: dict
    # coordinate indices of each alphabet column (translation schemes)
    columns: list | None = None
    # column indices of each block (nrt) or matrix layout of each block (sum-rank)
    blocks: list | None = None
    # metric on point index arrays computed straight from coordinates
    metric: Callable | None = field(default=None, repr=False)
    extras: dict = field(default_factory=dict)

    @property
    def n_points(self):
        return self.scheme.n_points

    @property
    def relation_distances(self):
        return self.labeling.relation_distances

    @property
    def idempotent_distances(self):
        return self.labeling.idempotent_distances

    @property
    def degrees(self):
        return self.labeling.degrees

    def point_distance(self, x, y):
        """Distance between point indices, read off the class labels."""
        return self.relation_distances[self.scheme.class_of(x, y)]

    def distance_from_zero(self) -> np.ndarray:
        """Distance of every group element from 0 (translation schemes)."""
        return self.relation_distances[self.scheme.part_of]

    def self_duality(self, tol=1e-6):
        return is_self_dual(self.eigen, tol)

    def to_json(self):
        out = {"name": self.name, "params": self.parameters}
        out.update(self.scheme.to_json(self.eigen))
        out.update(self.labeling.to_json())
        return out


# -- helpers -----------------------------------------------------------------


def _factorize_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


def is_prime(q) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def _symbol_orders(q, alphabet):
    if alphabet == "cyclic":
        return [q]
    if alphabet == "elementary":
        pk = _factorize_prime_power(q)
        if pk is None:
            raise SchemeLabError(f"elementary abelian alphabet needs a prime power, got {q}")
        return [pk[0]] * pk[1]
    raise SchemeLabError(f"unknown alphabet {alphabet!r}")


def _columns_for(qs, alphabet):
    orders, columns = [], []
    for q in qs:
        o = _symbol_orders(q, alphabet)
        columns.append(list(range(len(orders), len(orders) + len(o))))
        orders += o
    return orders, columns


def _nonzero_columns(coords, columns):
    return np.stack([np.any(coords[:, c] != 0, axis=1) for c in columns], axis=1)


def _check_cap(size, cap, what):
    if size > cap:
        raise CapExceededError(f"{what} needs {size} points, cap is {cap}")


def _order_labels(labels, weights):
    """Unique labels sorted by ``(distance, label)``, plus the index of every input row."""
    uniq, inverse = np.unique(labels, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    dist = uniq @ np.asarray(weights, dtype=float)
    order = sorted(range(len(uniq)), key=lambda a: (dist[a], tuple(uniq[a])))
    rank = np.empty(len(uniq), dtype=np.int64)
    rank[order] = np.arange(len(uniq))
    return [tuple(int(v) for v in uniq[a]) for a in order], rank[inverse]


def _translation_bundle(name, params, group, label_fn, dual_label_fn, weights,
                        idempotent_weights=None, degree_weights=None, columns=None,
                        blocks=None, metric=None, verify=False):
    _check_cap(group.size, settings.translation_cap, name)
    C = group.all_coords
    rel_labels, part_of = _order_labels(label_fn(C), weights)
    s = scheme_from_part_of(group, part_of, labels=rel_labels, verify=verify, name=name)
    e = eigen(s, method="characters")
    e, idem = _label_idempotents(e, dual_label_fn(group.coords(group.twist(np.arange(group.size)))),
                                 weights if idempotent_weights is None else idempotent_weights)
    lab = MultivariateLabeling(len(weights), tuple(rel_labels), tuple(idem),
                               tuple(weights), idempotent_weights, degree_weights)
    return SchemeBundle(s, e, lab, name, params, columns, blocks, metric)


def _label_idempotents(e: EigenData, char_labels, weights):
    n = e.class_count
    labels = [None] * n
    for j in range(n):
        mine = np.unique(char_labels[e.dual_class_of == j], axis=0)
        if mine.shape[0] != 1:
            raise LabelingError(f"idempotent {j} collects characters with labels {mine.tolist()}")
        labels[j] = tuple(int(v) for v in mine[0])
    if len(set(labels)) != n:
        raise LabelingError("idempotent labels are not injective")
    w = np.asarray(weights, dtype=float)
    order = sorted(range(n), key=lambda j: (float(np.dot(w, labels[j])), labels[j]))
    return permute_idempotents(e, order), [labels[j] for j in order]


def _as_product(name, params, bundles, labeling_weights, idempotent_weights=None,
                degree_weights=None, metric=None, blocks=None):
    """Direct product of bundles with labels concatenated factor by factor."""
    if len(bundles) == 1:
        b = bundles[0]
        b.name, b.parameters = name, params
        if metric is not None:
            b.metric = metric
        if blocks is not None:
            b.blocks = blocks
        return b
    s, e = direct_product([(b.scheme, b.eigen) for b in bundles])
    rel = [()]
    idem = [()]
    for b in bundles:
        rel = [a + tuple(x) for a in rel for x in b.labeling.relation_labels]
        idem = [a + tuple(x) for a in idem for x in b.labeling.idempotent_labels]
    s.class_labels = rel
    s.name = name
    columns, off = [], 0
    for b in bundles:
        columns += [[c + off for c in col] for col in (b.columns or [])]
        off += b.scheme.group.rank if b.scheme.is_translation else 0
    lab = MultivariateLabeling(len(labeling_weights), tuple(rel), tuple(idem),
                               tuple(labeling_weights), idempotent_weights, degree_weights)
    return SchemeBundle(s, e, lab, name, params, columns or None, blocks, metric)


def _hamming_metric(group, columns):
    def metric(x, y):
        c = group.coords(group.sub(y, x))
        return sum((np.any(c[..., col] != 0, axis=-1)).astype(int) for col in columns)
    return metric


# -- constructors --------------------------------------------------------------


def hamming(n: int, q: int, alphabet="cyclic", form=None) -> SchemeBundle:
    if n < 1 or q < 2:
        raise SchemeLabError("hamming needs n >= 1 and q >= 2")
    _check_cap(q ** n, settings.translation_cap, "hamming")
    orders, columns = _columns_for([q] * n, alphabet)
    G = FiniteAbelianGroup(orders, form=form)

    def weight(C):
        return _nonzero_columns(C, columns).sum(axis=1, keepdims=True)

    return _translation_bundle("hamming", {"n": n, "q": q}, G, weight, weight, (1,),
                               columns=columns, metric=_hamming_metric(G, columns))


def lee(n: int, q: int) -> SchemeBundle:
    if q < 3 or n < 1:
        raise SchemeLabError("lee needs n >= 1 and q >= 3")
    _check_cap(q ** n, settings.translation_cap, "lee")
    s = q // 2
    G = FiniteAbelianGroup([q] * n)

    def composition(C):
        L = np.minimum(C, q - C)
        return np.stack([(L == i).sum(axis=1) for i in range(1, s + 1)], axis=1)

    def metric(x, y):
        c = G.coords(G.sub(y, x))
        return np.minimum(c, q - c).sum(axis=-1)

    w = tuple(range(1, s + 1))
    return _translation_bundle("lee", {"n": n, "q": q}, G, composition, composition, w,
                               degree_weights=w, columns=[[i] for i in range(n)], metric=metric)


def homogeneous(n: int, k: int) -> SchemeBundle:
    if k < 2 or n < 1:
        raise SchemeLabError("homogeneous needs n >= 1 and k >= 2")
    m = 2 ** k
    _check_cap(m ** n, settings.translation_cap, "homogeneous")
    G = FiniteAbelianGroup([m] * n)
    half = m // 2

    def parts(C):
        U = (C % 2 == 1).sum(axis=1)
        S = (C == half).sum(axis=1)
        V = ((C != 0) & (C % 2 == 0) & (C != half)).sum(axis=1)
        return np.stack([U, V, S] if k >= 3 else [U, S], axis=1)

    def metric(x, y):
        c = G.coords(G.sub(y, x))
        return ((c != 0).astype(int) + (c == half)).sum(axis=-1)

    w = (1, 1, 2) if k >= 3 else (1, 2)
    return _translation_bundle("homogeneous", {"n": n, "k": k}, G, parts, parts, w,
                               columns=[[i] for i in range(n)], metric=metric)


def mixed(blocks, alphabet="cyclic", form=None) -> SchemeBundle:
    """Product of Hamming schemes ``H(n_i, q_i)``; one label coordinate per block.

    ``form`` may give a symmetric pairing matrix for the whole ambient group.
    """
    blocks = [(int(n), int(q)) for n, q in blocks]
    if not blocks:
        raise SchemeLabError("mixed needs at least one block")
    size = math.prod(q ** n for n, q in blocks)
    _check_cap(size, settings.translation_cap, "mixed")
    factors = []
    off = 0
    for n, q in blocks:
        orders, _ = _columns_for([q] * n, alphabet)
        sub = None
        if form is not None:
            F = np.asarray(form, dtype=np.int64)
            sub = F[off:off + len(orders), off:off + len(orders)]
            rest = np.delete(F[off:off + len(orders)], np.s_[off:off + len(orders)], axis=1)
            if np.any(rest):
                raise SchemeLabError("the pairing form must be block diagonal over the blocks")
        factors.append(hamming(n, q, alphabet=alphabet, form=sub))
        off += len(orders)
    params = {"blocks": [list(b) for b in blocks]}
    b = _as_product("mixed", params, factors, (1,) * len(blocks))
    G = b.scheme.group
    b.metric = _hamming_metric(G, b.columns)
    b.blocks = []
    start = 0
    for n, _ in blocks:
        b.blocks.append(list(range(start, start + n)))
        start += n
    return b


def nrt(n_blocks: int, r: int, q: int, alphabet="cyclic") -> SchemeBundle:
    if n_blocks < 1 or r < 1 or q < 2:
        raise SchemeLabError("nrt needs n_blocks, r >= 1 and q >= 2")
    _check_cap(q ** (r * n_blocks), settings.translation_cap, "nrt")
    orders, columns = _columns_for([q] * (r * n_blocks), alphabet)
    G = FiniteAbelianGroup(orders)
    blocks = [list(range(b * r, (b + 1) * r)) for b in range(n_blocks)]

    def positions(C):
        nz = _nonzero_columns(C, columns).reshape(len(C), n_blocks, r)
        right = np.where(nz.any(axis=2), r - np.argmax(nz[:, :, ::-1], axis=2), 0)
        left = np.where(nz.any(axis=2), np.argmax(nz, axis=2) + 1, 0)
        return right, left

    def shape(C):
        right, _ = positions(C)
        return np.stack([(right == i).sum(axis=1) for i in range(1, r + 1)], axis=1)

    def dual_shape(C):
        _, left = positions(C)
        height = np.where(left > 0, r + 1 - left, 0)
        return np.stack([(height == i).sum(axis=1) for i in range(1, r + 1)], axis=1)

    def metric(x, y):
        c = G.coords(G.sub(np.atleast_1d(y), np.atleast_1d(x)))
        right, _ = positions(c)
        return right.sum(axis=1)

    w = tuple(range(1, r + 1))
    return _translation_bundle("nrt", {"n_blocks": n_blocks, "r": r, "q": q}, G, shape, dual_shape,
                               w, degree_weights=(1,) * r, columns=columns, blocks=blocks,
                               metric=metric)


def rank_mod_p(M, p) -> np.ndarray:
    """Ranks over ``F_p`` of a stack of matrices of shape ``(K, n, m)``."""
    M = np.array(M, dtype=np.int64) % p
    K, n, m = M.shape
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(a, p - 2, p) for a in range(1, p)]
    row = np.zeros(K, dtype=np.int64)
    rows = np.arange(n)
    for col in range(m):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= row[:, None])
        ks = np.flatnonzero(cand.any(axis=1))
        if ks.size == 0:
            continue
        piv = np.argmax(cand[ks], axis=1)
        r = row[ks]
        top = M[ks, r].copy()
        M[ks, r] = M[ks, piv]
        M[ks, piv] = top
        M[ks, r] = (M[ks, r] * inv[M[ks, r, col]][:, None]) % p
        f = M[ks, :, col].copy()
        f[np.arange(ks.size), r] = 0
        M[ks] = (M[ks] - f[:, :, None] * M[ks, r][:, None, :]) % p
        row[ks] += 1
    return row


def bilinear_forms(n: int, m: int, q: int) -> SchemeBundle:
    """Matrices in ``F_q^{n x m}`` (flattened row-major) classed by rank."""
    if not is_prime(q):
        raise SchemeLabError("rank classes are implemented for prime q only")
    G = FiniteAbelianGroup([q] * (n * m))

    def rank(C):
        return rank_mod_p(C.reshape(len(C), n, m), q)[:, None]

    return _translation_bundle("bilinear", {"n": n, "m": m, "q": q}, G, rank, rank, (1,),
                               columns=[[i] for i in range(n * m)])


def sum_rank(blocks, q: int) -> SchemeBundle:
    blocks = [(int(n), int(m)) for n, m in blocks]
    if any(n > m for n, m in blocks):
        raise SchemeLabError("each block needs n_j <= m_j")
    total = sum(n * m for n, m in blocks)
    _check_cap(q ** total, settings.translation_cap, "sumrank")
    factors = [bilinear_forms(n, m, q) for n, m in blocks]
    layout, off = [], 0
    for n, m in blocks:
        layout.append({"n": n, "m": m, "coords": list(range(off, off + n * m))})
        off += n * m
    params = {"blocks": [list(b) for b in blocks], "q": q}
    b = _as_product("sumrank", params, factors, (1,) * len(blocks), blocks=layout)
    b.name, b.parameters, b.blocks = "sumrank", params, layout
    G = b.scheme.group

    def metric(x, y):
        c = G.coords(G.sub(np.atleast_1d(y), np.atleast_1d(x)))
        return sum(rank_mod_p(c[:, L["coords"]].reshape(len(c), L["n"], L["m"]), q) for L in layout)

    b.metric = metric
    return b


# -- q-ary Johnson -----------------------------------------------------------------


def johnson_points(n, w, q):
    pts = []
    for supp in itertools.combinations(range(n), w):
        for vals in itertools.product(range(1, q), repeat=w):
            x = [0] * n
            for i, v in zip(supp, vals):
                x[i] = v
            pts.append(tuple(x))
    return sorted(pts)


def _span_projector(B, tol=1e-9):
    U, sv, _ = np.linalg.svd(B, full_matrices=False)
    U = U[:, sv > tol * max(1.0, sv.max(initial=0.0))]
    return U @ U.T


def johnson_q(n: int, w: int, q: int) -> SchemeBundle:
    """Weight-``w`` words of length ``n`` over ``{0..q-1}``; label ``(w - e, w - n)``.

    Here ``n(x, y)`` is the size of the common support and ``e(x, y)`` the
    number of coordinates where ``x`` and ``y`` agree on a nonzero symbol.
    Idempotent labels ``(i, j)`` are found numerically: ``i`` is the least
    number of coordinates that the functions of the eigenspace can depend on,
    and ``j`` the least number of coordinates whose symbols they need to see
    beyond the support.
    """
    if q < 3 or w < 1 or 2 * w > n:
        raise SchemeLabError("johnson needs q >= 3 and 0 < w <= n/2")
    count = math.comb(n, w) * (q - 1) ** w
    _check_cap(count, min(settings.relation_cap, settings.matrix_cap), "johnson")
    pts = johnson_points(n, w, q)
    Xa = np.array(pts, dtype=np.int64)
    nz = Xa != 0
    common = (nz[:, None, :] & nz[None, :, :]).sum(axis=2)
    agree = ((Xa[:, None, :] == Xa[None, :, :]) & nz[:, None, :]).sum(axis=2)
    lab = np.stack([w - agree, w - common], axis=-1).reshape(-1, 2)
    uniq, R = np.unique(lab, axis=0, return_inverse=True)
    labels = [tuple(int(v) for v in u) for u in uniq]
    s = scheme_from_matrix(R.reshape(count, count), labels, points=pts, verify=True,
                           name="johnson")
    e = eigen(s, method="algebra")

    V = []
    for i in range(n + 1):
        cols = []
        for R_ in itertools.combinations(range(n), i):
            sub = Xa[:, list(R_)]
            for om in itertools.product(range(q), repeat=i):
                cols.append(np.all(sub == np.array(om, dtype=np.int64), axis=1))
        V.append(_span_projector(np.array(cols, dtype=float).T))
    Z = []
    supports = [tuple(np.flatnonzero(r)) for r in nz]
    for j in range(w + 1):
        cols = []
        for S in itertools.combinations(range(n), w):
            in_S = np.array([sp == S for sp in supports])
            for R_ in itertools.combinations(S, j):
                sub = Xa[:, list(R_)]
                for om in itertools.product(range(1, q), repeat=j):
                    cols.append(in_S & np.all(sub == np.array(om, dtype=np.int64), axis=1))
        Z.append(_span_projector(np.array(cols, dtype=float).T))

    idem = []
    for g in range(e.class_count):
        E = e.projector(g)
        mu = e.mu[g]

        def first(projs):
            for t, Pr in enumerate(projs):
                if abs(np.trace(E @ Pr).real - mu) < 1e-6 * max(1.0, mu):
                    return t
            raise LabelingError(f"idempotent {g} lies in none of the filtration spaces")

        idem.append((first(V), first(Z)))
    if sorted(idem) != sorted(labels):
        raise LabelingError(f"idempotent labels {sorted(idem)} do not match relation labels")
    order = sorted(range(e.class_count), key=lambda g: idem[g])
    e = permute_idempotents(e, order)
    e._projectors = None
    idem = [idem[g] for g in order]

    def metric(x, y):
        return np.count_nonzero(Xa[np.atleast_1d(x)] != Xa[np.atleast_1d(y)], axis=-1)

    lab_ = MultivariateLabeling(2, tuple(labels), tuple(idem), (1, 1),
                                idempotent_weights=(1, 0), degree_weights=(1, 1))
    b = SchemeBundle(s, e, lab_, "johnson", {"n": n, "w": w, "q": q}, metric=metric)
    b.extras["points"] = Xa
    return b


# -- registry ---------------------------------------------------------------------


def _parse_pairs(text):
    out = []
    for item in str(text).split(","):
        a, b = item.split(":") if ":" in item else item.split("x")
        out.append((int(a), int(b)))
    return out


def build(name: str, params) -> SchemeBundle:
    """Bundle by CLI name.  ``params`` is a dict or a string such as ``"n=3,q=2"``.

    ``mixed`` takes ``blocks="1:4,1:2"``; ``sumrank`` takes ``blocks="2x2,1x3"``
    and ``q``.
    """
    if isinstance(params, str):
        params = _parse_params(params)
    p = dict(params or {})
    alphabet = p.pop("alphabet", "cyclic")
    if name == "hamming":
        return hamming(int(p["n"]), int(p["q"]), alphabet=alphabet, form=p.get("form"))
    if name == "lee":
        return lee(int(p["n"]), int(p["q"]))
    if name == "homogeneous":
        return homogeneous(int(p["n"]), int(p["k"]))
    if name == "mixed":
        blocks = p["blocks"]
        blocks = _parse_pairs(blocks) if isinstance(blocks, str) else blocks
        return mixed(blocks, alphabet=alphabet, form=p.get("form"))
    if name == "nrt":
        return nrt(int(p["n_blocks"] if "n_blocks" in p else p["n"]), int(p["r"]), int(p["q"]),
                   alphabet=alphabet)
    if name == "sumrank":
        blocks = p["blocks"]
        blocks = _parse_pairs(blocks) if isinstance(blocks, str) else blocks
        return sum_rank(blocks, int(p["q"]))
    if name == "johnson":
        return johnson_q(int(p["n"]), int(p["w"]), int(p["q"]))
    raise SchemeLabError(f"unknown scheme {name!r}")


def _parse_params(text):
    out = {}
    text = text.strip()
    if not text:
        return out
    # blocks values contain commas, so split on ';' when present
    items = text.split(";") if ";" in text else _split_top(text)
    for item in items:
        k, _, v = item.partition("=")
        out[k.strip()] = v.strip()
    return out


def _split_top(text):
    parts, cur = [], ""
    for tok in text.split(","):
        if "=" in tok or not parts:
            if cur:
                parts.append(cur)
            cur = tok
        else:
            cur += "," + tok
    if cur:
        parts.append(cur)
    return parts


SCHEME_NAMES = ("hamming", "lee", "homogeneous", "mixed", "nrt", "sumrank", "johnson")
