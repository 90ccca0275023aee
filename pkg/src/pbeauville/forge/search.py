"""Metabelian groups of maximal class by structure-constant search.

Presentations on g_1, ..., g_n (1-based in comments) with g_1 uniform,
g_2 in G_1 \\ G_2 and [g_i, g_1] = g_{i+1}.  The group is grown one
generator at a time: the quotient by <g_{m+1}, ...> is already consistent,
the new generator g_m is central of order p, and the consistency defect is
then affine in the exponents of g_m appended to the free relations ("tails").
Each layer therefore solves a linear system over F_p.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from ..pc import PcPresentation, _collect_letters, _element_letters, check_consistency

Rel = tuple  # ("pow", i) or ("comm", i, j), 0-based


@dataclass(frozen=True)
class MetabelianSearchSpec:
    p: int
    n: int
    seed: int = 0
    max_children: int = 25        # solutions kept per layer (all if fewer)
    max_emissions: int | None = None
    target: str = ""              # e.g. "mu=2", "exponent=5", "g1-pair"

    def __post_init__(self):
        if self.p > 7 or self.n > 8:
            raise ValueError("outside the search envelope p <= 7, n <= 8")
        if self.p < 3 or self.n < 4:
            raise ValueError("need p >= 3 and n >= 4")
        parse_target(self.target)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    inconsistent: int = 0
    rejected: int = 0
    emitted: int = 0
    sampled_layers: int = 0
    per_layer: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Emission:
    presentation: PcPresentation
    constants: tuple[int, ...]     # tail vector, in relation order, per layer
    table_hash: str
    mu: int
    exponent: int
    order_p_branches: int
    g1_order_p: bool


# which relations may gain an exponent of the new generator ----------------------

def free_relations(p: int, n: int, m: int) -> list[Rel]:
    """Relations of g_1..g_m (0-based < m) that may involve g_{m+1} (0-based m)."""
    new = m + 1  # 1-based index of the new generator
    rels: list[Rel] = []
    if new == n:
        rels.append(("pow", 0))
    for j in range(2, m + 1):
        if new >= j + p - 1 or new == n:
            rels.append(("pow", j - 1))
    if m >= 3 and new >= 5:
        rels.append(("comm", 2, 1))
    for j in range(4, m + 1):
        if new >= j + 1:
            rels.append(("comm", j - 1, 1))
    return rels


def _assemble(p: int, k: int, words: dict[Rel, tuple[int, ...]]) -> PcPresentation:
    power, comm = {}, {}
    for rel, vec in words.items():
        w = tuple((g, c) for g, c in enumerate(vec) if c)
        if rel[0] == "pow":
            power[rel[1]] = w
        else:
            comm[(rel[1], rel[2])] = w
    for i in range(1, k - 1):
        comm[(i, 0)] = ((i + 1, 1),)
    return PcPresentation.from_relations(p, k, power, comm)


def _test_pairs(pres: PcPresentation):
    """Words whose two collections agree in every consistent presentation."""
    p, n = pres.p, pres.n
    pw = [_element_letters(_vec(pres.power[i], n)) for i in range(n)]

    def nf(letters, start=None):
        return _collect_letters(pres, letters, start)

    out = []
    for k in range(n):
        for j in range(k):
            for i in range(j):
                out.append((nf([i], nf([k, j])), nf([k] + _element_letters(nf([j, i])))))
    for j in range(n):
        for i in range(j):
            out.append((nf(pw[j] + [i]), nf(_element_letters(nf([j, i])), nf([j] * (p - 1)))))
            out.append((nf([j] + pw[i]), nf([i] * (p - 1), nf([j, i]))))
    for i in range(n):
        out.append((nf(pw[i] + [i]), nf([i] + pw[i])))
    return out


def _vec(word, n):
    v = [0] * n
    for g, c in word:
        v[g] = c
    return v


def _defect(pres: PcPresentation) -> np.ndarray:
    """Last-coordinate discrepancy of every test pair (zero iff consistent)."""
    pairs = _test_pairs(pres)
    m = pres.n - 1
    for a, b in pairs:
        if a[:m] != b[:m]:
            raise AssertionError("quotient presentation is inconsistent")
    return np.array([(a[m] - b[m]) % pres.p for a, b in pairs], dtype=np.int64)


def solve_mod_p(A: np.ndarray, b: np.ndarray, p: int):
    """Particular solution and nullspace basis of A t = b over F_p, or None."""
    rows, cols = A.shape
    if cols == 0:
        return (np.zeros(0, np.int64), np.zeros((0, 0), np.int64)) if not (b % p).any() else None
    K = GF(p)
    aug = DomainMatrix([[K(int(v)) for v in row] + [K(int(c))] for row, c in zip(A, b)],
                       (rows, cols + 1), K)
    R, pivots = aug.rref()
    if cols in pivots:
        return None
    R = np.array([[int(x) % p for x in row] for row in R.to_Matrix().tolist()], dtype=np.int64) \
        if rows else np.zeros((0, cols + 1), np.int64)
    t0 = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        t0[c] = R[r, cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for f, c in enumerate(free):
        basis[f, c] = 1
        for r, pc in enumerate(pivots):
            basis[f, pc] = (-R[r, c]) % p
    return t0, basis


def layer_solutions(p: int, n: int, words: dict, m: int):
    """Affine space of tails for the new generator with 0-based index m."""
    rels = free_relations(p, n, m)
    base = {r: tuple(v) + (0,) for r, v in words.items()}

    def defect(t):
        trial = dict(base)
        for r, c in zip(rels, t):
            vec = trial.get(r, (0,) * (m + 1))
            trial[r] = vec[:m] + (int(c),)
        return _defect(_assemble(p, m + 1, trial))

    d0 = defect([0] * len(rels))
    A = np.stack([(defect(np.eye(len(rels), dtype=int)[r]) - d0) % p for r in range(len(rels))],
                 axis=1) if rels else np.zeros((d0.size, 0), np.int64)
    keep = np.unique(np.concatenate([A, d0[:, None]], axis=1), axis=0)
    sol = solve_mod_p(keep[:, :-1], (-keep[:, -1]) % p, p)
    return rels, base, sol


def _extend(base: dict, rels, t, m) -> dict:
    out = dict(base)
    for r, c in zip(rels, t):
        vec = out.get(r, (0,) * (m + 1))
        out[r] = vec[:m] + (int(c),)
    return out


def _children(spec: MetabelianSearchSpec, words: dict, m: int, path: tuple, stats: SearchStats):
    rels, base, sol = layer_solutions(spec.p, spec.n, words, m)
    if sol is None:
        stats.inconsistent += 1
        return []
    t0, basis = sol
    dim = basis.shape[0]
    total = spec.p**dim
    if total <= spec.max_children:
        coeffs = itertools.product(range(spec.p), repeat=dim)
    else:
        stats.sampled_layers += 1
        rng = np.random.default_rng([spec.seed, m, *path])
        picks = sorted(set(int(v) for v in rng.choice(total, size=spec.max_children, replace=False)))
        coeffs = (tuple((v // spec.p**k) % spec.p for k in range(dim - 1, -1, -1)) for v in picks)
    out = []
    for c in coeffs:
        t = (t0 + np.asarray(c, dtype=np.int64) @ basis) % spec.p if dim else t0
        out.append((tuple(int(v) for v in t), _extend(base, rels, t, m)))
    out.sort(key=lambda x: x[0])
    return out


def metabelian_search(spec: MetabelianSearchSpec, stats: SearchStats | None = None) -> Iterator[Emission]:
    """Depth-first enumeration; emissions come in lexicographic tail order."""
    from ..group import ConcreteGroup

    stats = stats if stats is not None else SearchStats()
    p, n = spec.p, spec.n
    target = parse_target(spec.target)
    # order p^3 start: g_1, g_2, g_3 with [g_2, g_1] = g_3, all powers trivial
    start = {}
    seen_hashes: set[str] = set()
    stack = [((), start, 3)]
    emitted = 0
    while stack:
        path, words, m = stack.pop()
        stats.nodes += 1
        stats.per_layer[m] = stats.per_layer.get(m, 0) + 1
        if m == n:
            stats.leaves += 1
            em = _finish(spec, words, path, target, seen_hashes, ConcreteGroup)
            if em is None:
                stats.rejected += 1
                continue
            stats.emitted += 1
            emitted += 1
            yield em
            if spec.max_emissions is not None and emitted >= spec.max_emissions:
                return
            continue
        kids = _children(spec, words, m, path, stats)
        for i, (t, w) in reversed(list(enumerate(kids))):
            stack.append((path + (i,), w, m + 1))


def _finish(spec, words, path, target, seen_hashes, ConcreteGroup):
    from ..group import derived_subgroup
    from ..maxclass import is_maximal_class, maximal_class_profile, NotMaximalClass

    p, n = spec.p, spec.n
    pres = _assemble(p, n, words)
    quick = quick_branch_orders(pres)
    if not _matches(target, quick, partial=True):
        return None
    if not check_consistency(pres).ok:
        raise AssertionError("search produced an inconsistent presentation")
    G = ConcreteGroup(pres, check=False)
    if not is_maximal_class(G):
        return None
    if derived_subgroup(G, derived_subgroup(G)).order != 1:
        return None
    try:
        prof = maximal_class_profile(G)
    except NotMaximalClass:
        return None
    g1 = prof.G1
    if not all(g1.contains(G.gens[k]) for k in range(1, n)) or g1.contains(G.gens[0]):
        return None
    uniform = prof.branches and _is_uniform(G, prof, G.gens[0])
    if not uniform:
        return None
    em_info = dict(mu=prof.mu, exponent=prof.exponent,
                   order_p_branches=len(prof.order_p_branches()),
                   g1_order_p=prof.g1_branch_order == p)
    if not _matches(target, em_info):
        return None
    digest = hashlib.sha256(b"".join(t.tobytes() for t in G.right)).hexdigest()
    if digest in seen_hashes:
        return None
    seen_hashes.add(digest)
    constants = tuple(c for r in sorted(words) for c in words[r])
    return Emission(pres, constants, digest, **em_info)


def _is_uniform(G, prof, x) -> bool:
    from ..maxclass import uniform_elements
    return bool(uniform_elements(G, prof)[x])


# target filters --------------------------------------------------------------

_KEYS = {"mu", "exponent", "order-p-branches", "g1-order-p", "g1-pair"}


def parse_target(text: str) -> dict:
    """'mu=2,exponent=25' -> {'mu': 2, 'exponent': 25}; bare flags map to True."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = part.partition("=")
        key = key.strip()
        if key not in _KEYS:
            raise ValueError(f"unknown target key {key!r}")
        out[key] = int(val) if val else True
    return out


def quick_branch_orders(pres: PcPresentation) -> dict:
    """mu and the B(G_1) order from p-th powers of g_1 g_2^a and g_2 alone."""
    p, n = pres.p, pres.n
    order_p = []
    for a in range(p):
        x = [0] * n
        x[0], x[1] = 1, a
        xp = _collect_letters(pres, _element_letters(x) * p)
        order_p.append(not any(xp))
    g2p = _collect_letters(pres, [1] * p)
    g1p = not any(g2p)
    mu = sum(order_p)
    return dict(mu=mu, order_p_branches=mu + g1p, g1_order_p=g1p)


def _matches(target: dict, info: dict, partial: bool = False) -> bool:
    for key, val in target.items():
        if partial and key == "exponent":
            continue
        if key == "mu" and info["mu"] != val:
            return False
        if key == "exponent" and info["exponent"] != val:
            return False
        if key == "order-p-branches" and info["order_p_branches"] != val:
            return False
        if key == "g1-order-p" and info["g1_order_p"] != bool(val):
            return False
        # two order-p branches, one of them B(G_1)
        if key == "g1-pair" and not (info["g1_order_p"] and info["order_p_branches"] == 2):
            return False
    return True
