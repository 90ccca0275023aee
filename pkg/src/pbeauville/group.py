"""Concrete p-groups: elements are indices 0..p^n-1 of normal forms.

Index order is lexicographic on exponent vectors, so index 0 is the
identity and "least element" always means least exponent vector.  No
multiplication table is stored; products walk the per-generator action
arrays, vectorised over numpy index arrays.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import pc
from .pc import PcPresentation


class InconsistentPresentation(ValueError):
    pass


class NotNormal(ValueError):
    pass


def _components(size: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Label connected components by their least vertex."""
    if size == 0:
        return np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
    _, lab = connected_components(graph, directed=True, connection="weak")
    least = np.full(lab.max() + 1, size, dtype=np.int64)
    np.minimum.at(least, lab, np.arange(size))
    return least[lab]


class ConcreteGroup:
    """Fully enumerated group of a consistent pc presentation."""

    def __init__(self, pres: PcPresentation, *, check: bool = True):
        self.pres = pres
        self.p, self.n = pres.p, pres.n
        self.order = pres.order
        self.digits = pc.digit_matrix(self.p, self.n)
        self.right = pc.action_tables(pres, self.digits)
        if check:
            rep = pc.check_consistency(pres, self.right)
            if not rep.ok:
                raise InconsistentPresentation(f"{rep.relation}: {rep.witness}")
        self.identity = 0
        self.gens = tuple(self.p ** (self.n - 1 - k) for k in range(self.n))
        self._cache: dict = {}

    def __repr__(self):
        return f"ConcreteGroup(p={self.p}, n={self.n})"

    # elements -----------------------------------------------------------

    def index(self, e: Sequence[int]) -> int:
        return pc.element_index(self.p, e)

    def vector(self, x: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits[:, x])

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def letters(self, x: int) -> list[int]:
        return [k for k in range(self.n) for _ in range(int(self.digits[k, x]))]

    # arithmetic ---------------------------------------------------------

    def mul(self, x, y):
        """Elementwise product of index arrays (or scalars)."""
        xa = np.asarray(x, dtype=np.int64)
        ya = np.asarray(y, dtype=np.int64)
        if ya.ndim == 0:
            return self.rmul(xa, int(ya))
        out = np.broadcast_to(xa, np.broadcast_shapes(xa.shape, ya.shape)).copy()
        for k in range(self.n):
            dk = self.digits[k][ya]
            tk = self.right[k]
            for e in range(1, self.p):
                m = dk >= e
                if not m.any():
                    break
                out = np.where(m, tk[out], out)
        return out if out.ndim else int(out)

    def rmul(self, x, y: int):
        """x * y for a fixed element y."""
        out = np.asarray(x, dtype=np.int64)
        for k in self.letters(y):
            out = self.right[k][out]
        return out if out.ndim else int(out)

    @property
    def inv(self) -> np.ndarray:
        if "inv" not in self._cache:
            back = []
            for t in self.right:
                b = np.empty_like(t)
                b[t] = np.arange(t.size)
                back.append(b)
            out = np.zeros(self.order, dtype=np.int64)
            for k in range(self.n - 1, -1, -1):
                dk = self.digits[k]
                for e in range(1, self.p):
                    m = dk >= e
                    out = np.where(m, back[k][out], out)
            self._cache["inv"] = out
        return self._cache["inv"]

    def power(self, x, m: int):
        x = np.asarray(x, dtype=np.int64)
        if m < 0:
            x, m = self.inv[x], -m
        result = np.zeros_like(x)
        while m:
            if m & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            m >>= 1
        result = np.asarray(result)
        return result if result.ndim else int(result)

    @property
    def pth(self) -> np.ndarray:
        """x -> x^p for every element."""
        if "pth" not in self._cache:
            self._cache["pth"] = self.power(self.elements, self.p)
        return self._cache["pth"]

    @property
    def orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            order = np.ones(self.order, dtype=np.int64)
            cur = self.elements
            live = cur != 0
            while live.any():
                order[live] *= self.p
                cur = self.pth[cur]
                live = cur != 0
            self._cache["orders"] = order
        return self._cache["orders"]

    @property
    def exponent(self) -> int:
        return int(self.orders.max())

    def commutator(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return self.mul(self.mul(self.inv[x], self.inv[y]), self.mul(x, y))

    def conjugate(self, x, g):
        """x^g = g^-1 x g."""
        x = np.asarray(x, dtype=np.int64)
        g = np.asarray(g, dtype=np.int64)
        return self.mul(self.mul(self.inv[g], x), g)

    def conj_by_gen(self, k: int) -> np.ndarray:
        """Conjugation by the k-th pc generator on all elements."""
        key = ("conj", k)
        if key not in self._cache:
            g = self.gens[k]
            self._cache[key] = self.rmul(self.mul(int(self.inv[g]), self.elements), g)
        return self._cache[key]

    def is_abelian(self) -> bool:
        return bool(all((self.conj_by_gen(k) == self.elements).all() for k in range(self.n)))

    # subgroups ----------------------------------------------------------

    def subgroup(self, gens: Iterable[int]) -> "Subgroup":
        return subgroup_closure(self, gens)

    @property
    def whole(self) -> "Subgroup":
        if "whole" not in self._cache:
            self._cache["whole"] = Subgroup.from_mask(self, np.ones(self.order, bool), self.gens)
        return self._cache["whole"]

    @property
    def trivial(self) -> "Subgroup":
        m = np.zeros(self.order, bool)
        m[0] = True
        return Subgroup.from_mask(self, m, ())

    @property
    def conjugacy_labels(self) -> np.ndarray:
        """Least element of each conjugacy class, per element."""
        if "ccl" not in self._cache:
            src = np.tile(self.elements, self.n)
            dst = np.concatenate([self.conj_by_gen(k) for k in range(self.n)])
            self._cache["ccl"] = _components(self.order, src, dst)
        return self._cache["ccl"]


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: ConcreteGroup = field(repr=False)
    mask: np.ndarray = field(repr=False)
    gens: tuple[int, ...]
    order: int

    @classmethod
    def from_mask(cls, G: ConcreteGroup, mask: np.ndarray, gens) -> "Subgroup":
        return cls(G, mask, tuple(int(g) for g in gens), int(mask.sum()))

    @functools.cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def contains(self, xs) -> np.ndarray:
        return self.mask[np.asarray(xs, dtype=np.int64)]

    def __eq__(self, other):
        return isinstance(other, Subgroup) and bool((self.mask == other.mask).all())

    def __hash__(self):
        return hash(self.mask.tobytes())

    def __le__(self, other: "Subgroup") -> bool:
        return bool(other.mask[self.elements].all())

    def __repr__(self):
        return f"Subgroup(order={self.order}, gens={self.gens})"

    @property
    def log_order(self) -> int:
        return round(np.log(self.order) / np.log(self.group.p)) if self.order > 1 else 0


def _close(G: ConcreteGroup, mask: np.ndarray, frontier: np.ndarray, gens) -> np.ndarray:
    while frontier.size:
        nxt = np.concatenate([G.rmul(frontier, g) for g in gens])
        nxt = np.unique(nxt[~mask[nxt]])
        mask[nxt] = True
        frontier = nxt
    return mask


def subgroup_closure(G: ConcreteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (closure under right multiplication)."""
    gens = [int(g) for g in gens if int(g) != 0]
    mask = np.zeros(G.order, bool)
    mask[0] = True
    if gens:
        mask = _close(G, mask, np.array([0], dtype=np.int64), gens)
    return Subgroup.from_mask(G, mask, gens)


def closure_of_set(G: ConcreteGroup, elements, start: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by a (possibly large) element set, with few generators."""
    H = start if start is not None else G.trivial
    cands = np.unique(np.asarray(elements, dtype=np.int64))
    gens = list(H.gens)
    while True:
        out = cands[~H.mask[cands]]
        if not out.size:
            return H
        gens.append(int(out[0]))
        H = subgroup_closure(G, gens)


def normal_closure(G: ConcreteGroup, elements) -> Subgroup:
    H = closure_of_set(G, elements)
    while True:
        conj = np.concatenate([G.conj_by_gen(k)[np.asarray(H.gens, dtype=np.int64)]
                               for k in range(G.n)]) if H.gens else np.zeros(0, np.int64)
        if H.mask[conj].all():
            return H
        H = closure_of_set(G, conj, start=H)


def is_normal(G: ConcreteGroup, H: Subgroup) -> bool:
    gens = np.asarray(H.gens, dtype=np.int64)
    return all(H.mask[G.conj_by_gen(k)[gens]].all() for k in range(G.n))


def commutator_subgroup(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B] for normal subgroups A, B: normal closure of generator commutators."""
    if not A.gens or not B.gens:
        return G.trivial
    a = np.repeat(np.asarray(A.gens, dtype=np.int64), len(B.gens))
    b = np.tile(np.asarray(B.gens, dtype=np.int64), len(A.gens))
    return normal_closure(G, G.commutator(a, b))


def intersection(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return closure_of_set(G, np.flatnonzero(A.mask & B.mask))


# series and characteristic subgroups -------------------------------------

@dataclass(frozen=True)
class SeriesChain:
    terms: tuple[Subgroup, ...]

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)

    @property
    def nilpotency_class(self) -> int:
        return len(self.terms) - 1


def lower_central_series(G: ConcreteGroup, H: Subgroup | None = None) -> SeriesChain:
    """gamma_1 = H, gamma_{i+1} = [gamma_i, H]; H must be normal in G."""
    if H is None:
        if "lcs" in G._cache:
            return G._cache["lcs"]
        H = G.whole
    terms = [H]
    while terms[-1].order > 1:
        nxt = commutator_subgroup(G, terms[-1], H)
        if nxt.order == terms[-1].order:
            raise RuntimeError("lower central series stalled; group is not nilpotent")
        terms.append(nxt)
    chain = SeriesChain(tuple(terms))
    if H is G.whole:
        G._cache["lcs"] = chain
    return chain


def derived_subgroup(G: ConcreteGroup, H: Subgroup | None = None) -> Subgroup:
    H = G.whole if H is None else H
    return commutator_subgroup(G, H, H)


def nilpotency_class(G: ConcreteGroup, H: Subgroup | None = None) -> int:
    return lower_central_series(G, H).nilpotency_class


def center(G: ConcreteGroup) -> Subgroup:
    if "center" not in G._cache:
        mask = np.ones(G.order, bool)
        for k in range(G.n):
            mask &= G.conj_by_gen(k) == G.elements
        G._cache["center"] = closure_of_set(G, np.flatnonzero(mask))
    return G._cache["center"]


def centralizer(G: ConcreteGroup, xs) -> np.ndarray:
    """Mask of elements commuting with every element of ``xs``."""
    mask = np.ones(G.order, bool)
    for x in np.atleast_1d(np.asarray(xs, dtype=np.int64)):
        mask &= G.mul(G.elements, int(x)) == G.mul(int(x), G.elements)
    return mask


def centralizer_mod(G: ConcreteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """C_G(A/B) = {x : [x, a] in B for all a in A}, for normal B <= A."""
    mask = np.ones(G.order, bool)
    for a in A.gens:
        mask &= B.mask[G.commutator(G.elements, np.full(G.order, a))]
    return closure_of_set(G, np.flatnonzero(mask))


def agemo(G: ConcreteGroup, k: int) -> Subgroup:
    """G^{p^k}: subgroup generated by all p^k-th powers."""
    x = G.elements
    for _ in range(k):
        x = G.pth[x]
    return closure_of_set(G, x)


def frattini(G: ConcreteGroup) -> Subgroup:
    """Closure of G' together with all p-th powers."""
    if "frattini" not in G._cache:
        G._cache["frattini"] = closure_of_set(G, G.pth, start=derived_subgroup(G))
    return G._cache["frattini"]


def frattini_from_generators(G: ConcreteGroup) -> Subgroup:
    """Normal closure of g_i^p and [g_i, g_j] over the pc generators."""
    gens = np.asarray(G.gens, dtype=np.int64)
    a = np.repeat(gens, G.n)
    b = np.tile(gens, G.n)
    return normal_closure(G, np.concatenate([G.pth[gens], G.commutator(a, b)]))


# G / Phi(G) coordinates and maximal subgroups ---------------------------

@dataclass(frozen=True, eq=False)
class FrattiniQuotient:
    """Coordinates of every element in G/Phi(G) = F_p^d."""
    basis: tuple[int, ...]
    coords: np.ndarray  # shape (|G|, d)

    @property
    def rank(self) -> int:
        return len(self.basis)


def frattini_quotient(G: ConcreteGroup) -> FrattiniQuotient:
    if "fq" in G._cache:
        return G._cache["fq"]
    Phi = frattini(G)
    basis = []
    H = Phi
    for g in G.gens:
        if g not in H:
            basis.append(g)
            H = closure_of_set(G, [g], start=H)
    d = len(basis)
    coords = np.zeros((G.order, d), dtype=np.int64)
    p = G.p
    phi = Phi.elements
    for combo in np.ndindex(*([p] * d)):
        rep = 0
        for b, c in zip(basis, combo):
            rep = G.mul(rep, G.power(b, c))
        coset = G.mul(rep, phi)
        coords[coset] = combo
    fq = FrattiniQuotient(tuple(basis), coords)
    G._cache["fq"] = fq
    return fq


def rank(G: ConcreteGroup) -> int:
    return frattini_quotient(G).rank


def is_two_generated(G: ConcreteGroup) -> tuple[bool, int]:
    """(d(G) == 2, d(G)) with d(G) the rank of G/Phi(G)."""
    d = rank(G)
    return d == 2, d


def hyperplanes(p: int, d: int) -> list[tuple[int, ...]]:
    """Normalised non-zero functionals on F_p^d (first non-zero entry 1), sorted."""
    out = []
    for v in np.ndindex(*([p] * d)):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            out.append(tuple(v))
    return sorted(out)


def maximal_subgroups(G: ConcreteGroup) -> list[Subgroup]:
    """Index-p subgroups, as kernels of the normalised functionals on G/Phi(G)."""
    if "maxsubs" in G._cache:
        return G._cache["maxsubs"]
    fq = frattini_quotient(G)
    out = []
    for f in hyperplanes(G.p, fq.rank):
        val = (fq.coords @ np.asarray(f, dtype=np.int64)) % G.p
        out.append(closure_of_set(G, np.flatnonzero(val == 0)))
    G._cache["maxsubs"] = out
    return out


def directions(G: ConcreteGroup) -> np.ndarray:
    """For a 2-generated G: index of the unique maximal subgroup containing x, or -1 on Phi(G)."""
    if "dirs" in G._cache:
        return G._cache["dirs"]
    out = np.full(G.order, -1, dtype=np.int64)
    for i, M in enumerate(maximal_subgroups(G)):
        if rank(G) != 2:
            raise ValueError("directions need d(G) = 2")
        out[M.mask & ~frattini(G).mask] = i
    G._cache["dirs"] = out
    return out


# quotients ----------------------------------------------------------------

def coset_labels(G: ConcreteGroup, N: Subgroup) -> np.ndarray:
    """Least element of the coset xN, for every x."""
    if not N.gens:
        return G.elements.copy()
    src = np.tile(G.elements, len(N.gens))
    dst = np.concatenate([G.rmul(G.elements, g) for g in N.gens])
    return _components(G.order, src, dst)


@dataclass(frozen=True, eq=False)
class Quotient:
    group: ConcreteGroup
    projection: np.ndarray      # G-index -> quotient index
    pc_preimages: tuple[int, ...]  # G-elements mapping to the quotient's pc generators


def quotient(G: ConcreteGroup, N: Subgroup) -> Quotient:
    """G/N with an induced pc presentation and the canonical projection."""
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    lab = coset_labels(G, N)
    # pc generators whose image is not in the image of later generators
    chosen: list[int] = []
    tail = N
    for k in range(G.n - 1, -1, -1):
        g = G.gens[k]
        if g not in tail:
            chosen.append(g)
            tail = closure_of_set(G, [g], start=tail)
    chosen.reverse()
    m = len(chosen)
    p = G.p
    # every element of G/N is uniquely h_0^{a_0} ... h_{m-1}^{a_{m-1}} N
    reps = np.zeros(1, dtype=np.int64)
    for h in chosen:
        pw = np.array([G.power(h, a) for a in range(p)], dtype=np.int64)
        reps = G.mul(np.repeat(reps, p), np.tile(pw, reps.size))
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[lab[reps]] = np.arange(reps.size)
    if (lookup[lab[reps]] != np.arange(reps.size)).any():
        raise RuntimeError("induced generators do not give a pc sequence of G/N")

    def word_of(x: int):
        e = pc.index_element(p, m, int(lookup[lab[x]]))
        return tuple((g, c) for g, c in enumerate(e) if c)

    power = {i: word_of(G.pth[h]) for i, h in enumerate(chosen)}
    comm = {}
    for i in range(m):
        for j in range(i):
            comm[(i, j)] = word_of(G.commutator(chosen[i], chosen[j]))
    qpres = PcPresentation.from_relations(p, m, power, comm)
    Q = ConcreteGroup(qpres)
    return Quotient(Q, lookup[lab], tuple(chosen))


# conjugacy of order-p subgroups -------------------------------------------

@dataclass(frozen=True, eq=False)
class ConjugacyPartition:
    subgroup_ids: np.ndarray        # per element of order p: least element of <x>, else -1
    class_ids: np.ndarray           # per element of order p: class number, else -1
    representatives: tuple[int, ...]  # per class: least element generating a member

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    @property
    def subgroups(self) -> np.ndarray:
        return np.unique(self.subgroup_ids[self.subgroup_ids >= 0])


def cyclic_subgroup_ids(G: ConcreteGroup) -> np.ndarray:
    """Least generator of <x> for every x (0 for the identity)."""
    if "cyc" not in G._cache:
        best = G.elements.copy()
        cur = G.elements
        for k in range(2, G.exponent):
            cur = G.mul(cur, G.elements)
            if k % G.p:
                best = np.where(cur != 0, np.minimum(best, cur), best)
        G._cache["cyc"] = best
    return G._cache["cyc"]


def minimal_subgroup_classes(G: ConcreteGroup) -> ConjugacyPartition:
    if "msc" in G._cache:
        return G._cache["msc"]
    is_p = G.orders == G.p
    els = np.flatnonzero(is_p)
    sub = np.full(G.order, -1, dtype=np.int64)
    best = els.copy()
    cur = els.copy()
    for _ in range(G.p - 2):
        cur = G.mul(cur, els)
        best = np.minimum(best, cur)
    sub[els] = best
    src = np.tile(sub[els], G.n)
    dst = np.concatenate([sub[G.conj_by_gen(k)[els]] for k in range(G.n)])
    lab = _components(G.order, src, dst)  # labels indexed by subgroup id
    reps = np.unique(lab[sub[els]]) if els.size else np.zeros(0, np.int64)
    cls = np.full(G.order, -1, dtype=np.int64)
    cls[els] = np.searchsorted(reps, lab[sub[els]])
    part = ConjugacyPartition(sub, cls, tuple(int(r) for r in reps))
    G._cache["msc"] = part
    return part


def socles(G: ConcreteGroup) -> np.ndarray:
    """x^{o(x)/p} for every non-identity x (0 at the identity)."""
    if "socle" not in G._cache:
        cur = G.elements.copy()
        while True:
            nxt = G.pth[cur]
            move = nxt != 0
            if not move.any():
                break
            cur = np.where(move, nxt, cur)
        G._cache["socle"] = cur
    return G._cache["socle"]


# abelian invariants ---------------------------------------------------------

def abelian_invariants(G: ConcreteGroup) -> tuple[int, ...]:
    """Cyclic factor orders (descending) of an abelian p-group."""
    if not G.is_abelian():
        raise ValueError("group is not abelian")
    p = G.p
    # |Omega_k| = p^{sum_i min(k, a_i)}
    logs = [0]
    k = 1
    while logs[-1] < G.n:
        logs.append(int(round(np.log(int((G.orders <= p**k).sum())) / np.log(p))))
        k += 1
    # number of factors with a_i >= k is logs[k] - logs[k-1]
    at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
    parts = []
    for k, c in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        parts += [p**k] * (c - nxt)
    return tuple(sorted(parts, reverse=True))
