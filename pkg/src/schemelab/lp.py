"""Delsarte linear programs over an eigenmatrix and a small dense simplex solver.

The matrix ``A`` has rows ``k`` and columns ``i`` with ``A[k, i] = A_k(i)``,
``A_0(i) = 1`` and ``A_k(0) > 0``.  With ``A = P`` the program variables are
indexed by idempotents (design side); with ``A = Q`` they are indexed by
classes and a program is a normalised inner distribution (code side).

Primal ``(A, M)``: maximise ``sum_{i in M} b_i`` subject to
``sum_{i in M} b_i A_k(i) >= 0`` for ``k > 0``, ``b_0 = 1``, ``b >= 0``.
Dual ``(A, M)'``: minimise ``sum_k beta_k A_k(0)`` subject to
``sum_k beta_k A_k(i) <= 0`` for ``i`` in ``M \\ {0}``, ``beta_0 = 1``, ``beta >= 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import settings
from .exceptions import InfeasibleError, LPError, UnboundedError


@dataclass
class LPProblem:
    A: np.ndarray
    M: tuple
    sense: str = "primal"
    exact: bool = False

    def __post_init__(self):
        A = np.asarray(self.A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise LPError("A must be square")
        if np.iscomplexobj(A):
            if np.abs(A.imag).max() > 1e-9:
                raise LPError("A must be real")
            A = A.real
        A = A.astype(float)
        if np.abs(A[0] - 1).max() > 1e-9:
            raise LPError("row 0 of A must be all ones")
        if np.any(A[:, 0] <= 0):
            raise LPError("column 0 of A must be positive")
        M = tuple(sorted(set(int(i) for i in self.M)))
        if 0 not in M:
            raise LPError("M must contain 0")
        if M[-1] >= A.shape[0]:
            raise LPError("M has an index outside A")
        if self.sense not in ("primal", "dual"):
            raise LPError("sense is primal or dual")
        self.A = A
        self.M = M
        self.exact = bool(np.abs(A - np.rint(A)).max() <= 1e-9)

    @property
    def n(self):
        return self.A.shape[0]

    def to_json(self):
        return {"A": self.A.tolist(), "M": list(self.M), "sense": self.sense}

    @classmethod
    def from_json(cls, data):
        return cls(np.array(data["A"], dtype=float), tuple(data["M"]), data.get("sense", "primal"))


@dataclass
class Program:
    values: list
    objective: float
    sense: str
    exact_values: list | None = field(default=None, repr=False)
    problem: LPProblem | None = field(default=None, repr=False)

    def to_json(self, certified=None):
        out = {"values": [float(f"{v:.12g}") for v in self.values],
               "objective": float(f"{self.objective:.12g}"), "sense": self.sense}
        if self.exact_values is not None:
            out["exact"] = [str(v) for v in self.exact_values]
        if certified is not None:
            out["certified"] = bool(certified)
        return out


def lp_matrix(eigen, use="P") -> np.ndarray:
    if use == "P":
        return eigen.P
    if use == "Q":
        return eigen.Q
    raise LPError(f"unknown orientation {use!r}")


def build_primal(eigen_or_A, M, use="P") -> LPProblem:
    A = eigen_or_A if isinstance(eigen_or_A, np.ndarray) else lp_matrix(eigen_or_A, use)
    return LPProblem(A, tuple(M), "primal")


def build_dual(eigen_or_A, M, use="P") -> LPProblem:
    A = eigen_or_A if isinstance(eigen_or_A, np.ndarray) else lp_matrix(eigen_or_A, use)
    return LPProblem(A, tuple(M), "dual")


# -- simplex ----------------------------------------------------------------------------


class _Tableau:
    """Dense tableau for ``max c x`` s.t. ``G x <= h``, ``x >= 0``; Bland's rule throughout."""

    def __init__(self, c, G, h, exact, tol, budget):
        self.exact = exact
        self.tol = 0 if exact else tol
        self.budget = budget
        self.pivots = 0
        conv = Fraction if exact else float
        zero, one = conv(0), conv(1)
        m, n = len(G), len(c)
        self.n, self.m = n, m
        # columns: x (n), slacks (m), artificials (one per row with h < 0)
        art_rows = [r for r in range(m) if h[r] < 0]
        self.width = n + m + len(art_rows)
        self.art = list(range(n + m, self.width))
        rows, basis = [], []
        for r in range(m):
            row = [conv(G[r][j]) for j in range(n)] + [zero] * (m + len(art_rows)) + [conv(h[r])]
            row[n + r] = one
            if h[r] < 0:
                row = [-v for v in row]
                a = n + m + art_rows.index(r)
                row[a] = one
                basis.append(a)
            else:
                basis.append(n + r)
            rows.append(row)
        self.rows = rows
        self.basis = basis
        self.c = [conv(v) for v in c]
        self.zero, self.one = zero, one

    def _objective_row(self, costs):
        z = [-v for v in costs] + [self.zero]
        for r, b in enumerate(self.basis):
            cb = costs[b]
            if cb != 0:
                row = self.rows[r]
                z = [zv + cb * rv for zv, rv in zip(z, row)]
        return z

    def _pivot(self, r, j):
        self.pivots += 1
        if self.pivots > self.budget:
            raise LPError(f"simplex exceeded the pivot budget of {self.budget}")
        row = self.rows[r]
        p = row[j]
        row = [v / p for v in row]
        self.rows[r] = row
        for k, other in enumerate(self.rows):
            if k != r and other[j] != 0:
                f = other[j]
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
        if self.z[j] != 0:
            f = self.z[j]
            self.z = [a - f * b for a, b in zip(self.z, row)]
        self.basis[r] = j

    def _run(self, allowed):
        while True:
            enter = next((j for j in allowed if self.z[j] < -self.tol), None)
            if enter is None:
                return
            best, leave = None, None
            for r, row in enumerate(self.rows):
                if row[enter] > self.tol:
                    ratio = row[-1] / row[enter]
                    if (best is None or ratio < best - self.tol
                            or (abs(ratio - best) <= self.tol and self.basis[r] < self.basis[leave])):
                        best, leave = ratio, r
            if leave is None:
                raise UnboundedError("objective is unbounded")
            self._pivot(leave, enter)

    def solve(self):
        nm = self.n + self.m
        if self.art:
            costs = [self.zero] * nm + [-self.one] * len(self.art)
            self.z = self._objective_row(costs)
            self._run(range(self.width))
            if self.z[-1] < -self.tol:
                raise InfeasibleError("the program has no feasible point")
            # drive remaining artificials out of the basis
            for r in range(len(self.rows) - 1, -1, -1):
                if self.basis[r] in self.art:
                    j = next((j for j in range(nm) if abs(self.rows[r][j]) > self.tol), None)
                    if j is None:
                        del self.rows[r]
                        del self.basis[r]
                    else:
                        self._pivot(r, j)
            self.rows = [row[:nm] + row[-1:] for row in self.rows]
            self.width = nm
        costs = list(self.c) + [self.zero] * self.m
        self.z = self._objective_row(costs)
        self._run(range(nm))
        x = [self.zero] * self.n
        for r, b in enumerate(self.basis):
            if b < self.n:
                x[b] = self.rows[r][-1]
        return x, self.z[-1]


def simplex_max(c, G, h, exact=False, tol=None, budget=None):
    """Maximise ``c x`` subject to ``G x <= h`` and ``x >= 0``; returns ``(x, value)``."""
    tol = settings.pivot_tol if tol is None else tol
    budget = settings.pivot_budget if budget is None else budget
    t = _Tableau(c, G, h, exact, tol, budget)
    return t.solve()


def _exact_entries(A):
    return [[int(round(v)) for v in row] for row in A]


def solve(p: LPProblem) -> Program:
    A = _exact_entries(p.A) if p.exact else p.A.tolist()
    n = p.n
    Mstar = [i for i in p.M if i != 0]
    if p.sense == "primal":
        # max sum b_i  s.t.  -sum_i b_i A_k(i) <= A_k(0)
        c = [1] * len(Mstar)
        G = [[-A[k][i] for i in Mstar] for k in range(1, n)]
        h = [A[k][0] for k in range(1, n)]
        x, val = simplex_max(c, G, h, p.exact)
        exact = [Fraction(0)] * n if p.exact else None
        values = [0.0] * n
        values[0] = 1.0
        for i, xi in zip(Mstar, x):
            values[i] = float(xi)
        if p.exact:
            exact[0] = Fraction(1)
            for i, xi in zip(Mstar, x):
                exact[i] = xi
        return Program(values, 1.0 + float(val), "primal", exact, p)
    # min sum_{k>0} beta_k A_k(0)  s.t.  sum_{k>0} beta_k A_k(i) <= -1 for i in M*
    c = [-A[k][0] for k in range(1, n)]
    G = [[A[k][i] for k in range(1, n)] for i in Mstar]
    h = [-1] * len(Mstar)
    x, val = simplex_max(c, G, h, p.exact)
    values = [1.0] + [float(v) for v in x]
    exact = [Fraction(1)] + list(x) if p.exact else None
    return Program(values, 1.0 - float(val), "dual", exact, p)


# -- certificates -----------------------------------------------------------------------------


def is_program(prog: Program, A, M, sense, tol=1e-9) -> bool:
    A = np.asarray(A, dtype=float)
    v = np.asarray(prog.values, dtype=float)
    scale = max(1.0, np.abs(A).max())
    if abs(v[0] - 1) > tol or np.any(v < -tol):
        return False
    M = set(M)
    if sense == "primal":
        if any(abs(v[i]) > tol for i in range(len(v)) if i not in M):
            return False
        return bool(np.all(A[1:] @ v >= -tol * scale * len(v)))
    Mstar = [i for i in M if i != 0]
    return bool(np.all(v @ A[:, Mstar] <= tol * scale * len(v)))


def slackness_check(b: Program, beta: Program, A, M=None, tol=1e-7) -> bool:
    """Both programs feasible and both complementary-slackness families hold."""
    A = np.asarray(A, dtype=float)
    if M is None:
        M = b.problem.M if b.problem is not None else tuple(np.flatnonzero(np.abs(b.values) > tol))
    M = sorted(set(M) | {0})
    if not (is_program(b, A, M, "primal", tol) and is_program(beta, A, M, "dual", tol)):
        return False
    bv = np.asarray(b.values, dtype=float)
    betav = np.asarray(beta.values, dtype=float)
    scale = max(1.0, np.abs(A).max()) * len(bv)
    inner = A @ bv  # sum_i b_i A_k(i)
    if np.any(np.abs(betav[1:] * inner[1:]) > tol * scale):
        return False
    outer = betav @ A  # sum_k beta_k A_k(i)
    Mstar = [i for i in M if i != 0]
    return bool(np.all(np.abs(bv[Mstar] * outer[Mstar]) <= tol * scale))


def rao_dual_program(bundle, e, kind="distance", t=None, T=None, tol=1e-7) -> Program:
    """Explicit dual program ``beta_k = (Psi_e(k) / mu'_e)^2`` with objective ``|X| / mu'_e``."""
    from .designs import wilson_values
    psi = wilson_values(bundle, e, kind)
    mu = float(np.real(psi[0]))
    if mu <= 0:
        raise LPError("mu'_e must be positive")
    beta = np.abs(psi / mu) ** 2
    A = np.real(bundle.eigen.P)
    if kind == "distance":
        t = 2 * e if t is None else t
        d = bundle.idempotent_distances
        M = [0] + [int(i) for i in np.flatnonzero(d >= t + 1 - 1e-9)]
    else:
        if T is None:
            deg = bundle.degrees
            T = [int(g) for g in np.flatnonzero((deg > 1e-9) & (deg <= 2 * e + 1e-9))]
        M = [0] + [i for i in range(1, A.shape[0]) if i not in set(T)]
    prob = LPProblem(A, tuple(M), "dual")
    prog = Program(beta.tolist(), float(beta @ A[:, 0]), "dual", None, prob)
    if not is_program(prog, A, M, "dual", tol):
        raise LPError("the Rao dual program is not feasible; labeling and eigenmatrix disagree")
    return prog


def load_problem(path) -> LPProblem:
    with open(path) as f:
        return LPProblem.from_json(json.load(f))
