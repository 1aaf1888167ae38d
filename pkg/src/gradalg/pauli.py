"""Graded division algebras ``M_l(F)`` spanned by generalized Pauli matrices.

For a symplectic basis ``(u_i, v_i)`` of orders ``l_i`` the factor matrices
are ``diag(1, z, ..., z^(l-1))`` for ``u_i`` and the cyclic shift with ones
below the diagonal for ``v_i``; ``X_t`` is the Kronecker product over the
pairs of ``D^a P^b``.  The cocycle, the commutation factor and the transpose
signs are read off the realized matrices rather than assumed.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .errors import InternalError, InvalidField, InvalidParameter, Unsupported
from .field import RootField, mat_inv, nullspace, rank
from .groups import Bicharacter, Subgroup, SymplecticBasis, symplectic_basis, validate_bicharacter

__all__ = [
    "PauliAlgebra",
    "build_pauli",
    "pauli_for",
    "transpose_signs",
    "fixed_involution_phi0",
    "intertwiner",
]


def _factor_matrices(ell: int, F: RootField):
    p = F.p
    z = F.zeta_d(ell)
    D = np.diag([pow(z, k, p) for k in range(ell)]).astype(np.int64)
    P = np.zeros((ell, ell), dtype=np.int64)
    for j in range(ell):
        P[(j + 1) % ell, j] = 1
    return D, P


class PauliAlgebra:
    def __init__(self, T: Subgroup, basis: SymplecticBasis, F: RootField):
        self.T = T
        self.field = F
        self.symplectic = basis
        self.beta = basis.beta
        self.ell = basis.ell
        self.elements = T.elements
        self.index = T.index
        p = F.p
        if T.order % p == 0:
            raise InvalidField(f"characteristic {p} divides |T| = {T.order}")
        factors = []
        for l in basis.orders:
            try:
                factors.append(_factor_matrices(l, F))
            except InvalidField as exc:
                raise InvalidField(f"field lacks a primitive {l}-th root of unity") from exc
        coords = basis.coordinates
        mats = []
        for t in self.elements:
            c = coords[t]
            X = np.ones((1, 1), dtype=np.int64)
            for k, (D, P) in enumerate(factors):
                a, b = c[2 * k], c[2 * k + 1]
                block = np.linalg.matrix_power(D, a) @ np.linalg.matrix_power(P, b) % p
                X = np.kron(X, block) % p
            mats.append(X)
        self.matrices = np.array(mats, dtype=np.int64).reshape(T.order, self.ell, self.ell)
        self.X = {t: self.matrices[i] for i, t in enumerate(self.elements)}
        G = T.parent
        k = T.order
        self.sum_index = np.array([[self.index[G.add(s, t)] for t in self.elements]
                                   for s in self.elements], dtype=np.int64).reshape(k, k)
        self.neg_index = np.array([self.index[G.neg(t)] for t in self.elements], dtype=np.int64)
        self.sigma = self._read_sigma()
        self._check()

    def __repr__(self):
        return f"PauliAlgebra(|T|={self.T.order}, ell={self.ell}, p={self.field.p})"

    def _read_sigma(self) -> np.ndarray:
        p = self.field.p
        k = self.T.order
        prods = np.matmul(self.matrices[:, None], self.matrices[None, :]) % p
        targets = self.matrices[self.sum_index]
        flat_t = targets.reshape(k, k, -1)
        pos = np.argmax(flat_t != 0, axis=2)
        num = np.take_along_axis(prods.reshape(k, k, -1), pos[..., None], 2)[..., 0]
        den = np.take_along_axis(flat_t, pos[..., None], 2)[..., 0]
        inv = np.array([pow(int(d), -1, p) for d in den.flat], dtype=np.int64).reshape(k, k)
        sigma = num * inv % p
        if not np.array_equal(prods, sigma[..., None, None] * targets % p):
            raise InternalError("product of Pauli matrices is not a multiple of a Pauli matrix")
        return sigma

    def _check(self):
        p = self.field.p
        k = self.T.order
        if not np.array_equal(self.matrices[self.index[self.T.parent.identity]],
                              np.eye(self.ell, dtype=np.int64)):
            raise InternalError("X_e is not the identity")
        if rank(self.matrices.reshape(k, -1), p) != self.ell ** 2:
            raise InternalError("Pauli matrices are not linearly independent")
        expected = np.array([[self.field.root(self.beta(s, t)) for t in self.elements]
                             for s in self.elements], dtype=np.int64).reshape(k, k)
        if not np.array_equal(self.commutation, expected):
            raise InternalError("commutation factor differs from the input bicharacter")

    @cached_property
    def commutation(self) -> np.ndarray:
        """``beta(s, t) = sigma(s, t) / sigma(t, s)`` as field elements."""
        p = self.field.p
        inv = np.vectorize(lambda x: pow(int(x), -1, p))(self.sigma.T)
        return self.sigma * inv % p

    def cocycle_defect(self) -> list:
        """Triples violating the 2-cocycle identity (empty when it holds)."""
        p = self.field.p
        S, I = self.sigma, self.sum_index
        lhs = S[:, :, None] * S[I][:, :, :] % p  # sigma(a,b) sigma(a+b,c)
        rhs = S[None, :, :] * S[np.arange(len(S))[:, None, None], I[None, :, :]] % p
        bad = np.argwhere(lhs != rhs)
        el = self.elements
        return [(el[a], el[b], el[c]) for a, b, c in bad]

    def sigma_value(self, s, t) -> int:
        return int(self.sigma[self.index[s], self.index[t]])

    def beta_value(self, s, t) -> int:
        return int(self.commutation[self.index[s], self.index[t]])

    @cached_property
    def _coord_inverse(self) -> np.ndarray:
        return mat_inv(self.matrices.reshape(self.T.order, -1), self.field.p)

    def coordinates(self, M) -> np.ndarray:
        """Coefficients of an ``l x l`` matrix in the basis ``X_t``."""
        flat = np.asarray(M, dtype=np.int64).reshape(-1)
        return flat @ self._coord_inverse % self.field.p

    @cached_property
    def group_index(self) -> np.ndarray:
        """Index of each element of ``T`` in the parent group."""
        idx = self.T.parent.index
        return np.array([idx[t] for t in self.elements], dtype=np.int64)

    @cached_property
    def sign_form(self) -> dict:
        return transpose_signs(self)

    @cached_property
    def sign_array(self) -> np.ndarray:
        """Transpose signs as field elements, indexed like :attr:`elements`."""
        p = self.field.p
        return np.array([self.sign_form[t] % p for t in self.elements], dtype=np.int64)


    @cached_property
    def adjoint_table(self) -> tuple:
        """``(idx, coef)`` with ``X_y^-1 X_t^T X_z = coef[y, t, z] X_idx[y, t, z]``.

        Only for elementary 2-groups, where ``X_y^-1 = sigma(y, y)^-1 X_y``.
        """
        p = self.field.p
        S, I, sign = self.sigma, self.sum_index, self.sign_array
        m = self.T.order
        sq_inv = np.array([pow(int(S[j, j]), -1, p) for j in range(m)], dtype=np.int64)
        y = np.arange(m)[:, None, None]
        t = np.arange(m)[None, :, None]
        z = np.arange(m)[None, None, :]
        mid = I[y, t]
        idx = I[mid, z]
        coef = sq_inv[y] * sign[t] % p * S[y, t] % p * S[mid, z] % p
        return idx, coef


def build_pauli(T: Subgroup, basis: SymplecticBasis, F: RootField) -> PauliAlgebra:
    return PauliAlgebra(T, basis, F)


@lru_cache(maxsize=256)
def _pauli_cached(T, beta, F):
    beta = validate_bicharacter(T, beta) if T.order > 1 else beta
    return PauliAlgebra(T, symplectic_basis(T, beta), F)


def pauli_for(T: Subgroup, beta: Bicharacter, F: RootField) -> PauliAlgebra:
    """Validated, cached Pauli algebra for ``(T, beta)`` over ``F``."""
    if T.sqrt_order is None:
        raise InvalidParameter(f"|T| = {T.order} is not a perfect square")
    return _pauli_cached(T, beta, F)


def transpose_signs(D: PauliAlgebra) -> dict:
    if not D.T.is_elementary_2:
        raise Unsupported("transpose signs need an elementary abelian 2-group")
    p = D.field.p
    signs = {}
    for t, X in D.X.items():
        if np.array_equal(X.T, X):
            signs[t] = 1
        elif np.array_equal(X.T, -X % p):
            signs[t] = -1
        else:
            raise InternalError(f"transpose of X_{t} is not proportional to X_{t}")
    G = D.T.parent
    for s in D.elements:
        for t in D.elements:
            want = signs[s] * signs[t] * (1 if D.beta(s, t) == 0 else -1)
            if signs[G.add(s, t)] != want:
                raise InternalError("transpose signs are not a quadratic form")
    return signs


def fixed_involution_phi0(D: PauliAlgebra):
    """Matrix transpose on ``D``, checked to send ``X_t`` to ``sign(t) X_t``."""
    signs = transpose_signs(D)
    p = D.field.p
    for t, X in D.X.items():
        if not np.array_equal(X.T % p, signs[t] * X % p):
            raise InternalError("transpose does not act by the sign form")

    def phi0(M):
        return np.asarray(M).T.copy()

    return phi0


def intertwiner(source: np.ndarray, target: np.ndarray, gens, F: RootField):
    """Invertible ``P`` with ``P source[g] P^-1`` a root-of-unity multiple of ``target[g]``.

    ``source`` and ``target`` map generator indices ``g`` in ``gens`` to
    ``l x l`` matrices.  Scalars are searched among ``N``-th roots of unity;
    for irreducible families the solution space is one-dimensional.
    """
    p = F.p
    ell = source[gens[0]].shape[0] if gens else 1
    if not gens:
        return np.eye(ell, dtype=np.int64)
    eye = np.eye(ell, dtype=np.int64)
    roots = [F.root(Fraction(k, F.N)) for k in range(F.N)]
    for scalars in itertools.product(roots, repeat=len(gens)):
        rows = []
        for g, c in zip(gens, scalars):
            # vec(P S - c T P) = (I kron S^T - c T kron I) vec(P) for row-major vec
            A = (np.kron(eye, source[g].T) - c * np.kron(target[g], eye)) % p
            rows.append(A)
        K = nullspace(np.vstack(rows), p)
        for v in K:
            P = v.reshape(ell, ell)
            try:
                mat_inv(P, p)
            except ZeroDivisionError:
                continue
            return P
    raise InternalError("no intertwiner between the two Pauli families")
