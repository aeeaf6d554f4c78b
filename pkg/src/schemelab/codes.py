"""Codes in association schemes: distributions, radii, annihilators and size bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import settings
from .exceptions import AnnihilatorError, SchemeLabError
from .groups import Subgroup, dual_subgroup
from .scheme import AssociationScheme, characteristic_matrix
from .zoo import SchemeBundle, lee, mixed


class Code:
    """A nonempty set of scheme points, stored as sorted point indices."""

    def __init__(self, scheme: AssociationScheme, elements, additive=None):
        idx = np.unique(np.asarray(elements, dtype=np.int64).ravel())
        if idx.size == 0:
            raise SchemeLabError("a code must be nonempty")
        if idx.min() < 0 or idx.max() >= scheme.n_points:
            raise SchemeLabError("code element outside the point set")
        self.scheme = scheme
        self.elements = idx
        closed = scheme.is_translation and _is_subgroup(scheme.group, idx)
        if additive and not closed:
            raise SchemeLabError("code is flagged additive but is not a subgroup")
        self.is_additive = closed if additive is None else bool(additive)

    @classmethod
    def from_points(cls, scheme, points, additive=None):
        if scheme.is_translation:
            m = np.array(scheme.group.orders)
            for p in points:
                c = np.asarray(p)
                if c.shape != m.shape or np.any(c < 0) or np.any(c >= m):
                    raise SchemeLabError(f"point {list(p)} is not in the scheme's point set")
        return cls(scheme, [scheme.index_of(p) for p in points], additive)

    @classmethod
    def from_generators(cls, scheme, generators):
        if not scheme.is_translation:
            raise SchemeLabError("generators need a translation scheme")
        sub = Subgroup.generated_by(scheme.group, [tuple(g) for g in generators])
        return cls(scheme, sub.elements, True)

    @classmethod
    def kernel(cls, scheme, rows):
        """All ``x`` with ``sum_j r_j x_j = 0`` in every coordinate's cyclic group, for each row ``r``."""
        X = scheme.group
        C = X.all_coords
        ok = np.ones(X.size, dtype=bool)
        m = np.array(X.orders)
        for r in np.atleast_2d(rows):
            if np.unique(m).size != 1:
                raise SchemeLabError("kernels need a constant coordinate order")
            ok &= (C @ np.asarray(r, dtype=np.int64)) % m[0] == 0
        return cls(scheme, np.flatnonzero(ok), True)

    @property
    def size(self) -> int:
        return int(self.elements.size)

    def __len__(self):
        return self.size

    def points(self):
        return [self.scheme.point(i) for i in self.elements]

    def subgroup(self) -> Subgroup:
        if not self.is_additive:
            raise SchemeLabError("code is not additive")
        return Subgroup.from_elements(self.scheme.group, self.elements)

    def dual(self) -> Code:
        return Code(self.scheme, dual_subgroup(self.subgroup()).elements, True)

    def __eq__(self, other):
        return isinstance(other, Code) and other.scheme is self.scheme and np.array_equal(
            self.elements, other.elements)

    def to_json(self):
        return {"elements": [list(p) if isinstance(p, tuple) else p for p in self.points()],
                "additive": self.is_additive}


def _is_subgroup(X, idx):
    if idx[0] != 0:
        return False
    try:
        Subgroup.from_elements(X, idx)
    except SchemeLabError:
        return False
    return True


@dataclass
class CodeProfile:
    size: int
    a: np.ndarray
    S: list
    degree_s: int
    D: list
    distance_degree: int
    dmin: float | None
    e_pack: int
    r_cov: float
    aQ: np.ndarray
    s_prime: int
    mu_gen: int

    def to_json(self):
        return {"M": self.size, "a": _num(self.a), "S": self.S, "degree": self.degree_s,
                "D": [_num(d) for d in self.D], "distance_degree": self.distance_degree,
                "dmin": _num(self.dmin), "e_pack": self.e_pack, "r_cov": _num(self.r_cov),
                "aQ": _num(self.aQ), "s_prime": self.s_prime, "mu_gen": self.mu_gen}


def _num(x):
    if x is None:
        return None
    if isinstance(x, np.ndarray):
        return [_num(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        x = complex(x)
        if abs(x.imag) > 1e-12:
            return [float(f"{x.real:.12g}"), float(f"{x.imag:.12g}")]
        x = x.real
    v = float(f"{float(x):.12g}")
    return int(v) if v.is_integer() and abs(v) < 2**53 else v


# -- distributions ---------------------------------------------------------------


def inner_distribution(Y: Code, s: AssociationScheme | None = None) -> np.ndarray:
    s = Y.scheme if s is None else s
    n = s.class_count
    if s.is_translation:
        if Y.is_additive:
            return np.bincount(s.part_of[Y.elements], minlength=n).astype(float)
        counts = np.zeros(n)
        X = s.group
        chunk = max(1, 4_000_000 // Y.size)
        for start in range(0, Y.size, chunk):
            a = Y.elements[start:start + chunk]
            diff = X.sub(Y.elements[None, :], a[:, None])
            counts += np.bincount(s.part_of[diff].ravel(), minlength=n)
        return counts / Y.size
    R = s.relation_matrix()[np.ix_(Y.elements, Y.elements)]
    return np.bincount(R.ravel(), minlength=n) / Y.size


def occupied(a, tol=None) -> list:
    tol = settings.occupied_tol if tol is None else tol
    return [int(i) for i in np.flatnonzero(np.abs(a) > tol) if i != 0]


def degree(profile: CodeProfile) -> int:
    return profile.degree_s


def distance_set(profile_or_S, labeling) -> tuple[list, int]:
    S = profile_or_S.S if isinstance(profile_or_S, CodeProfile) else profile_or_S
    D = _distinct([labeling.dist_relation(k) for k in S])
    return D, len(D)


def _distinct(values, tol=None):
    tol = settings.distance_tol if tol is None else tol
    out = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def bound_M(s, bundle: SchemeBundle) -> int:
    """Sum of multiplicities over idempotents of total degree at most ``s``."""
    deg = bundle.degrees
    return int(round(float(bundle.eigen.mu[deg <= s + 1e-9].sum())))


def dispersion(labeling, e) -> int:
    return int(np.count_nonzero(labeling.relation_distances <= e + 1e-9))


def range_of_metricity(labeling) -> int:
    """Largest ``e`` with ``Pi(j) = j + 1`` for every ``0 <= j <= e``."""
    e = 0
    n = len(labeling.relation_labels)
    while e + 1 < n and dispersion(labeling, e + 1) == e + 2:
        e += 1
    return e


# -- radii ---------------------------------------------------------------------------


def _distances_to_code(Y: Code, bundle: SchemeBundle) -> np.ndarray:
    """Distance from every point to its nearest codeword."""
    s = bundle.scheme
    d = bundle.relation_distances
    if s.is_translation:
        X = s.group
        dz = d[s.part_of]
        best = np.full(X.size, np.inf)
        allx = np.arange(X.size)
        chunk = max(1, 4_000_000 // X.size)
        for start in range(0, Y.size, chunk):
            c = Y.elements[start:start + chunk]
            diff = X.sub(allx[:, None], c[None, :])
            best = np.minimum(best, dz[diff].min(axis=1))
        return best
    R = s.relation_matrix()
    return d[R[:, Y.elements]].min(axis=1)


def radii(Y: Code, bundle: SchemeBundle):
    """``(dmin, e_pack, r_cov)``; a single codeword packs up to the diameter."""
    d = bundle.relation_distances
    a = inner_distribution(Y, bundle.scheme)
    S = occupied(a)
    r_cov = float(_distances_to_code(Y, bundle).max())
    if not S:
        return None, int(math.floor(d.max())), r_cov
    dmin = float(min(d[k] for k in S))
    e_pack = int(math.floor((dmin - 1) / 2 + 1e-9))
    return dmin, e_pack, r_cov


def external_distances(Y: Code, bundle: SchemeBundle, aQ=None, e=None):
    """``(s_prime, mu_gen)``: support of ``aQ`` off zero and ``s' - Pi(e) + e + 1``."""
    from .designs import macwilliams
    if aQ is None:
        aQ = macwilliams(inner_distribution(Y, bundle.scheme), bundle.eigen)
    tol = settings.design_tol * Y.size
    s_prime = int(np.count_nonzero(np.abs(aQ[1:]) > tol))
    if e is None:
        e = radii(Y, bundle)[1]
    return s_prime, s_prime - dispersion(bundle.labeling, e) + e + 1


def profile(Y: Code, bundle: SchemeBundle) -> CodeProfile:
    from .designs import macwilliams
    a = inner_distribution(Y, bundle.scheme)
    S = occupied(a)
    D, dd = distance_set(S, bundle.labeling)
    dmin, e_pack, r_cov = radii(Y, bundle)
    aQ = macwilliams(a, bundle.eigen)
    s_prime, mu_gen = external_distances(Y, bundle, aQ, e_pack)
    return CodeProfile(Y.size, a, S, len(S), D, dd, dmin, e_pack, r_cov, aQ, s_prime, mu_gen)


# -- perfect codes -----------------------------------------------------------------------


def ball_size(bundle: SchemeBundle, e) -> int:
    d = bundle.relation_distances
    return int(round(float(bundle.eigen.v[d <= e + 1e-9].sum())))


def perfect_certificate(Y: Code, bundle: SchemeBundle, e) -> dict:
    dmin, _, r_cov = radii(Y, bundle)
    N = bundle.n_points
    packing = Y.size * ball_size(bundle, e) == N
    near = _balls_hit(Y, bundle, e)
    tiling = bool(np.all(near == 1))
    return {"e": int(e), "sphere_packing": bool(packing), "tiling": tiling,
            "r_cov": _num(r_cov), "r_cov_equals_e": bool(abs(r_cov - e) < 1e-9),
            "dmin": _num(dmin), "dmin_ok": dmin is None or dmin >= 2 * e + 1 - 1e-9}


def _balls_hit(Y, bundle, e):
    """Number of radius-``e`` balls around codewords containing each point."""
    s = bundle.scheme
    d = bundle.relation_distances
    if s.is_translation:
        X = s.group
        inside = (d[s.part_of] <= e + 1e-9)
        counts = np.zeros(X.size, dtype=np.int64)
        allx = np.arange(X.size)
        chunk = max(1, 4_000_000 // X.size)
        for start in range(0, Y.size, chunk):
            c = Y.elements[start:start + chunk]
            counts += inside[X.sub(allx[:, None], c[None, :])].sum(axis=1)
        return counts
    R = s.relation_matrix()
    return (d[R[:, Y.elements]] <= e + 1e-9).sum(axis=1)


def is_perfect(Y: Code, bundle: SchemeBundle, e) -> bool:
    c = perfect_certificate(Y, bundle, e)
    return c["sphere_packing"] and c["tiling"] and c["r_cov_equals_e"] and c["dmin_ok"]


# -- annihilators and Gram identities -------------------------------------------------------


@dataclass
class AnnihilatorExpansion:
    kind: str
    s: int
    values: np.ndarray
    coeffs: np.ndarray
    C: list
    residual: float
    truncates: bool
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "s": self.s, "values": _num(self.values),
                "coeffs": _num(self.coeffs), "C": self.C, "residual": _num(self.residual),
                "truncates": self.truncates}


def expand(values, bundle: SchemeBundle) -> np.ndarray:
    """Coefficients ``a_g`` with ``f(k) = sum_g a_g Q_g(k)`` for a class function ``f``."""
    e = bundle.eigen
    return (np.conj(e.Q) @ (e.v * values)) / (e.size * e.mu)


def annihilator(Y: Code, bundle: SchemeBundle, kind="degree", strict=True) -> AnnihilatorExpansion:
    """Product annihilator vanishing on the occupied classes (``degree``) or distances (``distance``)."""
    lab = bundle.labeling
    a = inner_distribution(Y, bundle.scheme)
    S = occupied(a)
    Z = np.array(lab.relation_labels, dtype=float).reshape(-1, lab.ell)
    M = Y.size
    values = np.full(len(Z), float(M))
    if kind == "degree":
        s = len(S)
        for b in S:
            zb = Z[b]
            values *= 1.0 - (Z @ zb) / (zb @ zb)
    elif kind == "distance":
        D, s = distance_set(S, lab)
        d = lab.relation_distances
        for dist in D:
            values *= 1.0 - d / dist
    else:
        raise SchemeLabError(f"unknown annihilator kind {kind!r}")
    coeffs = _clean(expand(values, bundle))
    C = [int(g) for g in np.flatnonzero(bundle.degrees <= s + 1e-9)]
    recon = bundle.eigen.Q[C].T @ coeffs[C] if C else np.zeros_like(values)
    residual = float(np.abs(recon - values).max())
    ok = residual <= 1e-7 * M
    if strict and not ok:
        raise AnnihilatorError(
            f"{kind} annihilator does not expand within total degree {s} (residual {residual:.3g})")
    return AnnihilatorExpansion(kind, int(s), values, coeffs, C, residual, ok)


def _clean(x):
    x = np.asarray(x)
    if np.iscomplexobj(x) and np.abs(x.imag).max(initial=0) < 1e-9:
        return x.real
    return x


def gram_matrix(Y: Code, bundle: SchemeBundle, C) -> np.ndarray:
    """``G_s``: the rows of the characteristic matrices ``H_g`` (``g`` in ``C``) at the codewords."""
    blocks = [characteristic_matrix(bundle.scheme, bundle.eigen, g).H[Y.elements] for g in C]
    return np.concatenate(blocks, axis=1) if blocks else np.zeros((Y.size, 0))


def gram_identity_check(Y: Code, bundle: SchemeBundle, kind="degree", tol=1e-7) -> dict:
    """Check ``G_s Delta G_s^T = M I`` and, when ``M = M(s)``, ``G_s G_s^T = M I``."""
    ann = annihilator(Y, bundle, kind, strict=False)
    C = ann.C
    G = gram_matrix(Y, bundle, C)
    Delta = np.concatenate([np.full(int(round(bundle.eigen.mu[g])), ann.coeffs[g]) for g in C])
    M = Y.size
    I = np.eye(M) * M
    lhs = (G * Delta[None, :]) @ np.conj(G).T
    err = float(np.abs(lhs - I).max())
    Ms = bound_M(ann.s, bundle)
    report = {"kind": kind, "s": ann.s, "M": M, "M_of_s": Ms, "shape": list(G.shape),
              "delta_residual": err, "identity_holds": err <= tol * max(1, M),
              "annihilator_truncates": ann.truncates, "tight": M == Ms}
    if M == Ms:
        terr = float(np.abs(G @ np.conj(G).T - I).max())
        report["tight_residual"] = terr
        report["tight_identity_holds"] = terr <= tol * max(1, M)
    return report


# -- additive codes ----------------------------------------------------------------------------


def is_graphical(bundle: SchemeBundle, full=None, seed=None) -> dict:
    """Every point at distance ``d > 1`` has a neighbour at distance 1 one step closer."""
    s = bundle.scheme
    if not s.is_translation:
        raise SchemeLabError("graphicality check implemented for translation schemes")
    X = s.group
    dz = bundle.distance_from_zero()
    units = np.flatnonzero(np.abs(dz - 1) < 1e-9)
    full = X.size <= settings.graphical_full_cap if full is None else full
    if full:
        ys = np.arange(X.size)
    else:
        rng = np.random.default_rng(settings.seed if seed is None else seed)
        ys = rng.integers(0, X.size, settings.graphical_samples)
    ys = ys[dz[ys] > 1 + 1e-9]
    ok = np.zeros(ys.size, dtype=bool)
    for u in units:
        ok |= np.abs(dz[X.sub(ys, np.full(ys.size, u))] - (dz[ys] - 1)) < 1e-9
    return {"graphical": bool(ok.all()), "mode": "full" if full else "sampled",
            "checked": int(ys.size)}


def gh_and_external_bound(Y: Code, bundle: SchemeBundle) -> dict:
    """Size bound for an additive code from the packing radius of its dual.

    The bound ``|Y| <= sum_{d(i) <= mu'} v_i`` uses ``mu' = s - Pi(e') + e' + 1``
    with ``e'`` the packing radius of ``Y^0``.  Two readings of ``s`` are
    reported: the distance count of ``Y`` and the external distance of
    ``Y^0``; the latter is the one the bound rests on.
    """
    if not Y.is_additive:
        raise SchemeLabError("the external-distance bound needs an additive code")
    lab = bundle.labeling
    graph = is_graphical(bundle)
    Y0 = Y.dual()
    prof = profile(Y, bundle)
    _, e_dual, _ = radii(Y0, bundle)
    s_dual_ext, _ = external_distances(Y0, bundle, e=e_dual)
    pi = dispersion(lab, e_dual)
    out = {"M": Y.size, "graphical": graph, "dual_size": Y0.size, "e_dual": e_dual,
           "Pi_e_dual": pi, "distance_degree": prof.distance_degree}
    for name, s in (("distance_count", prof.distance_degree), ("dual_external", s_dual_ext)):
        mu = s - pi + e_dual + 1
        bound = ball_size(bundle, mu) if mu >= 0 else 0
        out[name] = {"s": s, "mu_prime": mu, "bound": bound, "holds": Y.size <= bound}
    out["bound"] = out["dual_external"]["bound"]
    out["bound_holds"] = out["dual_external"]["holds"] if graph["graphical"] else None
    out["readings_agree"] = out["distance_count"]["bound"] == out["dual_external"]["bound"]
    Ms = bound_M(prof.distance_degree, bundle)
    out["M_of_s"] = Ms
    out["gh"] = Y.size == Ms
    sd = bundle.self_duality()
    out["self_dual_scheme"] = bool(sd)
    if out["gh"] and sd:
        out["corollary"] = {"Pi_e_dual_is_e_plus_1": pi == e_dual + 1,
                            "dual_perfect": is_perfect(Y0, bundle, e_dual),
                            "dual_covering_radius": _num(radii(Y0, bundle)[2])}
    return out


# -- Lee case studies ----------------------------------------------------------------------------


def lee_weight(x, q) -> int:
    x = np.asarray(x) % q
    return int(np.minimum(x, q - x).sum())


def lee_ball_size(n, q, radius) -> int:
    """Number of words of Lee weight at most ``radius`` in ``Z_q^n``."""
    per = np.bincount([min(x, q - x) for x in range(q)])
    dist = np.array([1], dtype=object)
    for _ in range(n):
        dist = np.convolve(dist, per.astype(object))
    return int(sum(dist[: radius + 1]))


def divisors(q):
    return [g for g in range(1, q + 1) if q % g == 0]


def lee_cn_profile(q: int, with_scheme=None) -> dict:
    """Lee weights of ``<(1, 2, ..., n)>`` over ``Z_q`` with ``n = (q - 1) / 2``."""
    if q < 3 or q % 2 == 0:
        raise SchemeLabError("q must be odd and at least 3")
    n = (q - 1) // 2
    gen = np.arange(1, n + 1)
    weights = {t: lee_weight(t * gen, q) for t in range(1, q)}
    distinct = sorted(set(weights.values()))
    expected = sorted({(q * q - g * g) // 8 for g in divisors(q) if g < q})
    by_gcd = {t: math.gcd(t, q) for t in range(1, q)}
    gcd_rule = all(weights[t] == (q * q - by_gcd[t] ** 2) // 8 for t in weights)
    tau = len(divisors(q))
    s = len(distinct)
    out = {"q": q, "n": n, "M": q, "weights": distinct, "expected_weights": expected,
           "weights_match": distinct == expected, "gcd_rule": gcd_rule,
           "distinct_count": s, "tau_minus_1": tau - 1, "count_matches": s == tau - 1,
           "M_of_s": lee_ball_size(n, q, s)}
    out["gh"] = out["M_of_s"] == q
    if with_scheme is None:
        with_scheme = q ** n <= 10**4
    if with_scheme:
        b = lee(n, q)
        Y = Code.from_generators(b.scheme, [tuple(int(v) for v in gen % q)])
        out["scheme_M_of_s"] = bound_M(s, b)
        out["scheme_distance_degree"] = profile(Y, b).distance_degree
    return out


def lee_length2_code(t: int):
    q = 2 * t * t + 2 * t + 1
    b = lee(2, q)
    C = Code.from_generators(b.scheme, [(1, 2 * t + 1)])
    return b, C


def lee_length2_selfdual(t: int) -> dict:
    if t < 1:
        raise SchemeLabError("t must be positive")
    q = 2 * t * t + 2 * t + 1
    b, C = lee_length2_code(t)
    weights = sorted({lee_weight(x, q) for x in C.points() if any(x)})
    s = len(weights)
    Ms = bound_M(s, b)
    return {"t": t, "q": q, "M": C.size, "self_dual": C == C.dual(),
            "self_orthogonal_generator": (1 + (2 * t + 1) ** 2) % q == 0,
            "weights": weights, "distinct_count": s, "expected_count": t * (t + 1) // 2,
            "M_of_s": Ms, "M_of_s_ball": lee_ball_size(2, q, s),
            "equality": Ms == C.size}


# -- the 1-perfect mixed code ----------------------------------------------------------------------

# coordinates (a, b, c2, c3, c4, c5): (a, b) is an element of F_4 in the basis (110, 011)
# of its subspace of F_2^3; the pairing there is the dot product of F_2^3.
MIXED_FORM = np.array([[0, 1, 0, 0, 0, 0],
                       [1, 0, 0, 0, 0, 0],
                       [0, 0, 1, 0, 0, 0],
                       [0, 0, 0, 1, 0, 0],
                       [0, 0, 0, 0, 1, 0],
                       [0, 0, 0, 0, 0, 1]])
MIXED_GENERATORS = [(1, 0, 1, 1, 0, 0), (0, 1, 0, 1, 1, 0), (0, 0, 1, 1, 1, 1)]


def mixed_perfect_code():
    """The 8-word additive code in ``F_4 x F_2^4`` and its ambient bundle."""
    b = mixed([(1, 4), (1, 2), (1, 2), (1, 2), (1, 2)], alphabet="elementary", form=MIXED_FORM)
    return b, Code.from_generators(b.scheme, MIXED_GENERATORS)
