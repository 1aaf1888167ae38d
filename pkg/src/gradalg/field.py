"""Prime fields with prescribed roots of unity and exact linear algebra.

Matrices are ``numpy.int64`` arrays holding residues in ``[0, p)``.  The
prime is kept below ``2**26`` so that matrix products of the sizes used
here never overflow.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .errors import InvalidField, InvalidParameter

__all__ = [
    "RootField",
    "make_field",
    "field_for_group",
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "solve_linear",
    "mat_inv",
    "matmul",
    "Subspace",
    "Solution",
]

MAX_PRIME = 1 << 26


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root(p: int) -> int:
    fac = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    return 1


class RootField:
    """``F_p`` together with a fixed primitive ``N``-th root of unity."""

    def __init__(self, p: int, N: int):
        if p % 2 == 0 or not _is_prime(p):
            raise InvalidParameter(f"{p} is not an odd prime")
        if p >= MAX_PRIME:
            raise InvalidParameter(f"prime {p} exceeds the supported bound {MAX_PRIME}")
        if (p - 1) % N:
            raise InvalidParameter(f"prime {p} is not 1 mod {N}")
        self.p = p
        self.N = N
        self._hash = hash(("RootField", p, N))
        self.zeta = pow(_primitive_root(p), (p - 1) // N, p)
        self._powers = [pow(self.zeta, k, p) for k in range(N)]
        self._log = {v: k for k, v in enumerate(self._powers)}

    def __repr__(self):
        return f"RootField(p={self.p}, N={self.N}, zeta={self.zeta})"

    def __eq__(self, other):
        return isinstance(other, RootField) and (self.p, self.N) == (other.p, other.N)

    def __hash__(self):
        return self._hash

    def zeta_d(self, d: int) -> int:
        """Primitive ``d``-th root ``zeta_N ** (N/d)``."""
        if d <= 0 or self.N % d:
            raise InvalidField(f"no cached root of order {d} (N = {self.N})")
        return self._powers[(self.N // d) % self.N]

    def root(self, q) -> int:
        """The field value of ``exp(2 pi i q)`` for a rational ``q``."""
        q = Fraction(q)
        k = q * self.N
        if k.denominator != 1:
            raise InvalidField(f"root of unity of order {q.denominator} not in field")
        return self._powers[int(k) % self.N]

    def log(self, x: int):
        """Inverse of :meth:`root`: ``q`` in ``[0, 1)`` or ``None``."""
        k = self._log.get(int(x) % self.p)
        return None if k is None else Fraction(k, self.N)

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def neg(self, x: int) -> int:
        return -int(x) % self.p

    def signed(self, x: int) -> int:
        """Representative in ``(-p/2, p/2]`` (for display)."""
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x

    def sqrt(self, x: int):
        """A square root of ``x`` (smallest residue), or ``None``."""
        x = int(x) % self.p
        for r in range(self.p):
            if r * r % self.p == x:
                return r
        return None

    def vec(self, values) -> np.ndarray:
        return np.asarray(values, dtype=np.int64) % self.p

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)


@lru_cache(maxsize=None)
def _make_field(N: int, prime) -> RootField:
    if prime is None:
        p = 2 * N + 1
        while not (_is_prime(p) and (p - 1) % N == 0):
            p += 1
        return RootField(p, N)
    return RootField(int(prime), N)


def make_field(required_orders: Iterable[int] = (), prime=None) -> RootField:
    """Field containing ``N``-th roots of unity, ``N = 2 * lcm(required_orders)``.

    Without an explicit prime the smallest prime ``p > 2N`` with
    ``p = 1 mod N`` is used.
    """
    orders = [int(d) for d in required_orders]
    if any(d < 1 for d in orders):
        raise InvalidParameter("root orders must be positive")
    N = 2 * (math.lcm(*orders) if orders else 1)
    return _make_field(N, prime)


def field_for_group(G, prime=None) -> RootField:
    return make_field([G.exponent], prime)


# ---------------------------------------------------------------------------
# dense linear algebra mod p
# ---------------------------------------------------------------------------

def matmul(A, B, p: int) -> np.ndarray:
    return np.matmul(A, B) % p


def rref(M, p: int):
    """Reduced row echelon form of ``M`` (copy) and the pivot columns."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim != 2:
        raise InvalidParameter("rref expects a 2-d array")
    rows, cols = A.shape
    pivots = []
    r = 0
    # columns that start at zero stay zero
    for c in np.nonzero(A.any(axis=0))[0].tolist():
        if r == rows:
            break
        k = r + int(np.argmax(A[r:, c] != 0))
        if A[k, c] == 0:
            continue
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = -R[i, f] % p
    return out


def left_nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{y : y M = 0}``."""
    return nullspace(np.asarray(M).T, p)


class Solution:
    """Solution set of ``A x = b``: a particular solution and a kernel basis."""

    def __init__(self, particular, kernel):
        self.particular = particular
        self.kernel = kernel

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    @property
    def dimension(self):
        return None if self.particular is None else len(self.kernel)

    def __repr__(self):
        if not self.feasible:
            return "Solution(infeasible)"
        return f"Solution(particular={self.particular.tolist()}, kernel_dim={len(self.kernel)})"


def solve_linear(A, b, p: int) -> Solution:
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if A.shape[0] != b.shape[0]:
        raise InvalidParameter("shape mismatch in solve_linear")
    cols = A.shape[1]
    R, piv = rref(np.hstack([A, b[:, None]]), p)
    kernel = nullspace(A, p)
    if cols in piv:
        return Solution(None, kernel)
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, cols]
    return Solution(x, kernel)


def mat_inv(M, p: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:n, n:]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of ``F_p^dim`` stored by its reduced echelon basis."""

    __slots__ = ("p", "dim_ambient", "basis", "pivots")

    def __init__(self, vectors, p: int, dim_ambient: int = None, _reduced=False):
        V = np.asarray(vectors, dtype=np.int64)
        if V.ndim == 1:
            V = V.reshape(1, -1) if V.size else V.reshape(0, dim_ambient or 0)
        if V.ndim > 2:
            V = V.reshape(V.shape[0], -1)
        if dim_ambient is None:
            dim_ambient = V.shape[1]
        if V.shape[0] and V.shape[1] != dim_ambient:
            raise InvalidParameter("vectors do not match the ambient dimension")
        self.p = p
        self.dim_ambient = dim_ambient
        if _reduced:
            self.basis = V
            self.pivots = [int(np.nonzero(row)[0][0]) for row in V]
        elif V.shape[0] == 0:
            self.basis = np.zeros((0, dim_ambient), dtype=np.int64)
            self.pivots = []
        else:
            self.basis, self.pivots = rref(V, p)

    @classmethod
    def zero(cls, dim_ambient: int, p: int) -> "Subspace":
        return cls(np.zeros((0, dim_ambient), dtype=np.int64), p, dim_ambient)

    @classmethod
    def full(cls, dim_ambient: int, p: int) -> "Subspace":
        return cls(np.eye(dim_ambient, dtype=np.int64), p, dim_ambient, _reduced=True)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.dim_ambient}, p={self.p})"

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check(self, other: "Subspace"):
        if self.dim_ambient != other.dim_ambient or self.p != other.p:
            raise InvalidParameter("subspaces live in different ambient spaces")

    def residual(self, vectors) -> np.ndarray:
        """Reduction of each row of ``vectors`` modulo the subspace."""
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim_ambient) % self.p
        if self.dim == 0:
            return V
        return (V - V[:, self.pivots] @ self.basis) % self.p

    def contains(self, vectors) -> bool:
        return not self.residual(vectors).any()

    def contains_each(self, vectors) -> np.ndarray:
        return ~self.residual(vectors).any(axis=1)

    def coordinates(self, vectors) -> np.ndarray:
        """Coordinates of members with respect to :attr:`basis`."""
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dim_ambient) % self.p
        if self.residual(V).any():
            raise InvalidParameter("vector not in subspace")
        return V[:, self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.dim_ambient)

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.dim_ambient, self.p)
        K = left_nullspace(np.vstack([self.basis, other.basis]), self.p)
        if len(K) == 0:
            return Subspace.zero(self.dim_ambient, self.p)
        return Subspace(K[:, :self.dim] @ self.basis % self.p, self.p, self.dim_ambient)

    def __and__(self, other):
        return self.intersection(other)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.p == other.p
                and self.dim_ambient == other.dim_ambient
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.dim_ambient, self.basis.tobytes()))

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains(self.basis)

    def canonical(self) -> "Subspace":
        return Subspace(self.basis, self.p, self.dim_ambient)

    def span(self, vectors) -> "Subspace":
        return Subspace(np.vstack([self.basis, np.asarray(vectors).reshape(-1, self.dim_ambient)]),
                        self.p, self.dim_ambient)


def independent_rows(vectors, p: int) -> list:
    """Indices of a maximal independent subset, scanning rows in order."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.shape[0] == 0:
        return []
    R, piv = rref(V.T, p)
    return list(piv)
