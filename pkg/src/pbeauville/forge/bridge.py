"""Agreement between pquotient presentations and the ring model."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..group import ConcreteGroup
from .construct import construct_pquotient
from .ring import ring_model


@dataclass(frozen=True)
class BridgeResult:
    p: int
    m: int
    checked: int
    mismatches: int
    injective: bool

    @property
    def ok(self) -> bool:
        return self.mismatches == 0 and self.injective


def element_images(G: ConcreteGroup, m: int):
    """Ring-model image of every element of the pquotient group G."""
    R = ring_model(G.p, m)
    return R.from_exponents(G.digits.T.astype(np.int64))


def check_ring_bridge(p: int, m: int, samples: int | None = None, seed: int = 0,
                      chunk: int = 200_000) -> BridgeResult:
    """phi(x y) == phi(x) phi(y) under the bundled generator map.

    With ``samples=None`` x runs over the generators and y over all
    elements; otherwise ``samples`` uniformly random pairs are drawn.
    """
    G = ConcreteGroup(construct_pquotient((p, m)))
    R = ring_model(p, m)
    A, I = element_images(G, m)
    codes = np.concatenate([A, I[:, None]], axis=1)
    injective = np.unique(codes, axis=0).shape[0] == G.order
    if samples is None:
        xs = np.repeat(np.asarray(G.gens, dtype=np.int64), G.order)
        ys = np.tile(G.elements, G.n)
        pairs = [(xs, ys)]
    else:
        rng = np.random.default_rng(seed)
        pairs = []
        left = samples
        while left > 0:
            k = min(chunk, left)
            pairs.append((rng.integers(0, G.order, k), rng.integers(0, G.order, k)))
            left -= k
    bad = checked = 0
    for xs, ys in pairs:
        lhs_a, lhs_i = A[G.mul(xs, ys)], I[G.mul(xs, ys)]
        rhs_a, rhs_i = R.multiply((A[xs], I[xs]), (A[ys], I[ys]))
        bad += int(((lhs_a != rhs_a).any(axis=1) | (lhs_i != rhs_i)).sum())
        checked += xs.size
    return BridgeResult(p, m, checked, bad, bool(injective))
