"""Exact arithmetic in Z[zeta_p] / (zeta_p - 1)^m and its split extension.

Elements of the ring are integer coefficient vectors over 1, pi, ...,
pi^{p-2} with pi = zeta - 1, reduced to the canonical representative
modulo the lattice of the ideal (pi^m).  Nothing here touches the pc engine;
it serves as the independent model for the pro-p quotients.
"""

from __future__ import annotations

import functools
from math import comb

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form


class RingModel:
    """Z[zeta]/p^m semidirect <sigma>, sigma acting as multiplication by zeta."""

    def __init__(self, p: int, m: int):
        if p < 3 or m < 1:
            raise ValueError("need p >= 3 and m >= 1")
        self.p, self.m = p, m
        self.dim = p - 1
        # pi^{p-1} = -sum_{k=1}^{p-1} C(p,k) pi^{k-1}
        self._top = np.array([-comb(p, k) for k in range(1, p)], dtype=np.int64)
        cols = [self.pi_power(m + j) for j in range(self.dim)]
        H = hermite_normal_form(Matrix(np.array(cols, dtype=object).T.tolist()))
        self.hnf = np.array(H.tolist(), dtype=np.int64)
        if self.hnf.shape != (self.dim, self.dim):
            raise RuntimeError("ideal lattice is not of full rank")
        self.moduli = np.diag(self.hnf).copy()
        assert int(np.prod(self.moduli)) == p**m
        # p / pi, used to peel off pi-adic digits
        self._p_over_pi = np.array([-comb(p, k) for k in range(2, p + 1)], dtype=np.int64)

    # raw (unreduced) arithmetic ------------------------------------------

    def mul_pi(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros_like(v)
        out[..., 1:] = v[..., :-1]
        out = out + v[..., -1:] * self._top
        return out

    def mul_zeta(self, v: np.ndarray, i: int = 1) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        for _ in range(i % self.p):
            v = v + self.mul_pi(v)
        return v

    def pi_power(self, k: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        for _ in range(k):
            v = self.mul_pi(v)
        return v

    # canonical residues mod pi^m ------------------------------------------

    def reduce(self, v) -> np.ndarray:
        v = np.array(v, dtype=np.int64)
        for j in range(self.dim - 1, -1, -1):
            q = np.floor_divide(v[..., j], self.hnf[j, j])
            v = v - q[..., None] * self.hnf[:, j]
        return v

    def digits(self, v) -> tuple[int, ...]:
        """(d_0, ..., d_{m-1}) in [0, p) with v = sum d_k pi^k mod pi^m."""
        v = np.array(v, dtype=np.int64)
        out = []
        for _ in range(self.m):
            d = int(v[0] % self.p)
            out.append(d)
            v[0] -= d
            t = v[0] // self.p
            v = np.concatenate([v[1:], [0]]) + t * self._p_over_pi
        return tuple(out)

    def elements(self) -> np.ndarray:
        """All residues, as an array of shape (p^m, p-1)."""
        grids = np.meshgrid(*[np.arange(int(q)) for q in self.moduli], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1).astype(np.int64)

    # the semidirect product ---------------------------------------------

    def multiply(self, x, y):
        """(a, i)(b, j) = (a + zeta^i b, i + j); batched over leading axes."""
        a, i = x
        b, j = y
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zb = b.copy()
        if i.ndim == 0:
            zb = self.mul_zeta(b, int(i))
        else:
            for s in range(1, self.p):
                sel = (i % self.p) == s
                if sel.any():
                    zb[sel] = self.mul_zeta(b[sel], s)
        return self.reduce(np.asarray(a) + zb), (i + j) % self.p

    def identity(self, shape=()):
        return np.zeros(shape + (self.dim,), dtype=np.int64), np.zeros(shape, dtype=np.int64)

    def generator_images(self) -> list[tuple[np.ndarray, int]]:
        """Images of g_1 = sigma^{-1} and g_{j+2} = pi^j under the bundled map."""
        out = [(np.zeros(self.dim, dtype=np.int64), self.p - 1)]
        out += [(self.reduce(self.pi_power(j)), 0) for j in range(self.m)]
        return out

    def from_exponents(self, exps: np.ndarray):
        """Image of normal forms g_1^{e_1} ... g_n^{e_n}; ``exps`` has shape (N, m+1)."""
        exps = np.asarray(exps, dtype=np.int64)
        shape = exps.shape[:-1]
        a, i = self.identity(shape)
        for k, (ga, gi) in enumerate(self.generator_images()):
            for e in range(1, self.p):
                sel = exps[..., k] >= e
                if not sel.any():
                    continue
                na, ni = self.multiply((a, i), (np.broadcast_to(ga, a.shape), np.full(shape, gi)))
                a = np.where(sel[..., None], na, a)
                i = np.where(sel, ni, i)
        return a, i


@functools.lru_cache(maxsize=32)
def ring_model(p: int, m: int) -> RingModel:
    return RingModel(p, m)


def ring_model_multiply(p: int, m: int, x, y):
    """Product in Z[zeta_p]/pi^m semidirect C_p of two (ring element, exponent) pairs."""
    R = ring_model(p, m)
    a, i = R.multiply((np.asarray(x[0]), x[1]), (np.asarray(y[0]), y[1]))
    return a, int(i)
