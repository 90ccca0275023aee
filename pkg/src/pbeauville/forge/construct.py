"""Constructors for corpus groups."""

from __future__ import annotations

from dataclasses import dataclass

from ..pc import PcPresentation
from .ring import ring_model


@dataclass(frozen=True)
class PQuotientSpec:
    p: int
    m: int

    @property
    def order(self) -> int:
        return self.p ** (self.m + 1)


def construct_pquotient(spec: PQuotientSpec | tuple[int, int]) -> PcPresentation:
    """Quotient of order p^{m+1} of the infinite pro-p group of maximal class.

    Generators: g_1 acts on A = Z[zeta]/pi^m by zeta, g_{j+2} is pi^j in A,
    so [g_{j+2}, g_1] = g_{j+3} and g_{j+2}^p is read off the pi-adic digits
    of p * pi^j.
    """
    if isinstance(spec, tuple):
        spec = PQuotientSpec(*spec)
    p, m = spec.p, spec.m
    if p < 3 or m < 1:
        raise ValueError("need p >= 3 and m >= 1")
    if p > 7 or m > 8:
        raise ValueError("outside the supported envelope p <= 7, m <= 8")
    R = ring_model(p, m)
    n = m + 1
    power = {}
    comm = {}
    for j in range(m):
        d = R.digits(p * R.pi_power(j))
        word = tuple((k + 1, c) for k, c in enumerate(d) if c)
        if word:
            power[j + 1] = word
        if j + 2 <= m:
            comm[(j + 1, 0)] = ((j + 2, 1),)
    return PcPresentation.from_relations(p, n, power, comm)


def construct_abelian(n1: int, n2: int) -> PcPresentation:
    """C_{n1} x C_{n2} for powers n1, n2 of a common prime."""
    p = None
    exps = []
    for q in (n1, n2):
        f = _prime_power(q)
        if f is None:
            raise ValueError(f"{q} is not a prime power")
        if f[1] == 0:
            exps.append(0)
            continue
        if p is not None and f[0] != p:
            raise ValueError("orders are powers of different primes")
        p = f[0]
        exps.append(f[1])
    if p is None:
        raise ValueError("trivial group has no prime")
    power = {}
    start = 0
    for a in exps:
        for k in range(start, start + a - 1):
            power[k] = ((k + 1, 1),)
        start += a
    return PcPresentation.from_relations(p, start, power)


def _prime_power(q: int):
    if q == 1:
        return (None, 0)
    if q < 1:
        return None
    for r in range(2, q + 1):
        if q % r == 0:
            k = 0
            while q % r == 0:
                q //= r
                k += 1
            return (r, k) if q == 1 else None
    return None
