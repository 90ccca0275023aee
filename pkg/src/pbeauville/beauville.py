"""Beauville structures on finite p-groups.

Sigma(S) for S = {x, y} is the union of all conjugates of <x>, <y>, <xy>.
Two cyclic p-subgroups meet non-trivially iff they share their subgroup of
order p, so Sigma(S1) and Sigma(S2) meet trivially iff no element of T1 and
no element of T2 have conjugate socles.  The socle mode searches with that
reduction; the naive mode intersects literal Sigma sets.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .group import (
    ConcreteGroup,
    abelian_invariants,
    agemo,
    cyclic_subgroup_ids,
    directions,
    frattini,
    is_two_generated,
    maximal_subgroups,
    nilpotency_class,
    minimal_subgroup_classes,
    quotient,
    socles,
    subgroup_closure,
)
from .maxclass import maximal_class_profile

NAIVE_CAP = 5**5
SOCLE_CAP = 5**7

DECISIONS = (
    "not-2-generated", "not-beauville", "beauville",
    "beauville-tame", "beauville-wild", "indeterminate",
)


class NotGenerating(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BeauvilleWitness:
    S1: tuple[int, int]
    S2: tuple[int, int]
    T1: tuple[int, int, int]
    T2: tuple[int, int, int]
    kind: str  # "structure" or "failing-lift"

    def as_dict(self, G: ConcreteGroup | None = None) -> dict:
        fmt = (lambda x: list(G.vector(x))) if G is not None else int
        return {
            "kind": self.kind,
            "S1": [fmt(x) for x in self.S1], "S2": [fmt(x) for x in self.S2],
            "T1": [fmt(x) for x in self.T1], "T2": [fmt(x) for x in self.T2],
        }


@dataclass(frozen=True)
class BeauvilleReport:
    decision: str
    method: str
    witness: BeauvilleWitness | None = None
    lift_witness: BeauvilleWitness | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def __post_init__(self):
        if self.decision not in DECISIONS:
            raise ValueError(f"unknown decision {self.decision!r}")

    @property
    def is_beauville(self) -> bool | None:
        if self.decision == "indeterminate":
            return None
        return self.decision.startswith("beauville")


def triple(G: ConcreteGroup, S) -> tuple[int, int, int]:
    x, y = (int(s) for s in S)
    return x, y, int(G.mul(x, y))


def generates(G: ConcreteGroup, S) -> bool:
    return subgroup_closure(G, S).order == G.order


# Sigma sets, computed literally ---------------------------------------------

def conjugacy_class(G: ConcreteGroup, t: int) -> np.ndarray:
    """{g^-1 t g : g in G}, by conjugating with every element."""
    return np.unique(G.mul(G.rmul(G.inv, int(t)), G.elements))


def sigma(G: ConcreteGroup, S) -> np.ndarray:
    """Sigma(S) as a sorted element array (contains the identity)."""
    if not generates(G, S):
        raise NotGenerating("S does not generate G")
    parts = [np.zeros(1, dtype=np.int64)]
    for t in triple(G, S):
        cls = conjugacy_class(G, t)
        cur = cls
        while True:
            parts.append(cur)
            cur = G.mul(cur, cls)
            if (cur == 0).all():
                break
    return np.unique(np.concatenate(parts))


def sigma_intersection_trivial(G: ConcreteGroup, S1, S2) -> bool:
    a = sigma(G, S1)
    b = sigma(G, S2)
    return np.intersect1d(a, b, assume_unique=True).size == 1


def is_beauville_structure(G: ConcreteGroup, S1, S2) -> bool:
    return generates(G, S1) and generates(G, S2) and sigma_intersection_trivial(G, S1, S2)


class LiteralSigma:
    """Memoised literal Sigma(<t>) sets, keyed by the cyclic subgroup <t>."""

    def __init__(self, G: ConcreteGroup):
        self.G = G
        self.cyc = cyclic_subgroup_ids(G)
        self._memo: dict[int, np.ndarray] = {}

    def of(self, t: int) -> np.ndarray:
        key = int(self.cyc[t])
        if key not in self._memo:
            G = self.G
            cls = conjugacy_class(G, t)
            parts, cur = [np.zeros(1, np.int64)], cls
            while not (cur == 0).all():
                parts.append(cur)
                cur = G.mul(cur, cls)
            self._memo[key] = np.unique(np.concatenate(parts))
        return self._memo[key]

    def sigma(self, S) -> np.ndarray:
        return np.unique(np.concatenate([self.of(t) for t in triple(self.G, S)]))

    def trivial_intersection(self, S1, S2) -> bool:
        return np.intersect1d(self.sigma(S1), self.sigma(S2), assume_unique=True).size == 1


# downstairs -------------------------------------------------------------

def downstairs_structures(p: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pairs of disjoint 3-subsets of the p+1 directions of C_p x C_p."""
    out = []
    for a in itertools.combinations(range(p + 1), 3):
        for b in itertools.combinations(range(p + 1), 3):
            if a < b and not set(a) & set(b):
                out.append((a, b))
    return out


def direction_triple(G: ConcreteGroup, S) -> tuple[int, ...]:
    d = directions(G)
    return tuple(sorted(int(d[t]) for t in triple(G, S)))


def realized_direction_triples(G: ConcreteGroup) -> set[tuple[int, ...]]:
    """Direction triples of all generating pairs of a 2-generated G."""
    d = directions(G)
    out = set()
    good = np.flatnonzero(d >= 0)
    for x in good:
        ys = good[d[good] != d[x]]
        xy = G.mul(int(x), ys)
        trip = np.sort(np.stack([np.full(ys.size, d[x]), d[ys], d[xy]]), axis=0)
        out |= {tuple(int(v) for v in col) for col in np.unique(trip, axis=1).T}
    return out


# socle classes ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SocleClassTable:
    class_ids: np.ndarray   # per element; -1 at the identity
    class_count: int


def socle_class_table(G: ConcreteGroup) -> SocleClassTable:
    if "sct" not in G._cache:
        part = minimal_subgroup_classes(G)
        ids = part.class_ids[socles(G)]
        ids[0] = -1
        G._cache["sct"] = SocleClassTable(ids, part.class_count)
    return G._cache["sct"]


# signature search -----------------------------------------------------------

def _scan(digits, right, p, xs, comp, dirs, budget):
    """Least generating pair (x, y) for every component-id triple.

    x runs over ``xs`` (ascending), y over all elements.  Returns a dict
    from the sorted id triple to (x, y), plus the number of pairs examined.
    """
    n = digits.shape[0]
    allowed = np.flatnonzero(dirs >= 0)
    base = int(comp.max()) + 1
    best: dict[tuple[int, int, int], tuple[int, int]] = {}
    seen = 0
    for x in xs:
        x = int(x)
        ys = allowed[dirs[allowed] != dirs[x]]
        seen += ys.size
        if budget is not None and seen > budget:
            raise BudgetExceeded(f"more than {budget} generating pairs")
        xy = np.full(ys.size, x, dtype=np.int64)
        for k in range(n):
            dk = digits[k][ys]
            for e in range(1, p):
                m = dk >= e
                if not m.any():
                    break
                xy = np.where(m, right[k][xy], xy)
        a, b, c = comp[x], comp[ys], comp[xy]
        lo = np.minimum(np.minimum(b, c), a)
        hi = np.maximum(np.maximum(b, c), a)
        code = (lo * base + (a + b + c - lo - hi)) * base + hi
        keys, first = np.unique(code, return_index=True)
        for c, i in zip(keys.tolist(), first.tolist()):
            key = (c // (base * base), c // base % base, c % base)
            if key not in best:
                best[key] = (x, int(ys[i]))
    return best, seen


def _scan_worker(args):
    return _scan(*args)


def _signatures(G: ConcreteGroup, xs, comp, budget=None, workers=1):
    dirs = directions(G)
    xs = np.asarray(xs, dtype=np.int64)
    xs = xs[dirs[xs] >= 0]
    if workers <= 1 or xs.size < 2 * workers:
        return _scan(G.digits, G.right, G.p, xs, comp, dirs, budget)
    chunks = np.array_split(xs, workers)
    per = None if budget is None else budget
    args = [(G.digits, G.right, G.p, c, comp, dirs, per) for c in chunks]
    merged: dict = {}
    seen = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for best, s in pool.map(_scan_worker, args):
            seen += s
            for k, v in best.items():
                if k not in merged or v < merged[k]:
                    merged[k] = v
    if budget is not None and seen > budget:
        raise BudgetExceeded(f"more than {budget} generating pairs")
    return merged, seen


def _find_disjoint(sigs: dict, conflicts: dict[int, set[int]]):
    """Least pair of signatures with no conflicting components.

    Signatures are ranked by their least generating pair.  ``conflicts[u]``
    lists the component ids that clash with u (u itself included).
    """
    order = sorted(sigs, key=sigs.get)
    holders: dict[int, int] = {}
    for r, key in enumerate(order):
        for u in set(key):
            holders[u] = holders.get(u, 0) | (1 << r)
    clash: dict[int, int] = {}
    for u in holders:
        acc = 0
        for v in conflicts.get(u, {u}):
            acc |= holders.get(v, 0)
        clash[u] = acc
    full = (1 << len(order)) - 1
    for r, key in enumerate(order):
        bad = 0
        for u in set(key):
            bad |= clash[u]
        good = full & ~bad
        if good:
            j = (good & -good).bit_length() - 1
            return order[r], order[j]
    return None


def _rep_elements(G: ConcreteGroup) -> np.ndarray:
    return np.unique(G.conjugacy_labels)


def beauville_oracle(G: ConcreteGroup, mode: str = "socle", budget: int | None = None,
                     workers: int | None = None) -> BeauvilleReport:
    """Decide the Beauville property from the definition."""
    t0 = time.perf_counter()
    if workers is None:
        workers = int(os.environ.get("PBEAUVILLE_WORKERS", "1"))
    two, d = is_two_generated(G)
    if not two:
        return BeauvilleReport("not-2-generated", mode, details={"d": d},
                               seconds=time.perf_counter() - t0)
    cap = NAIVE_CAP if mode == "naive" else SOCLE_CAP
    if mode not in ("naive", "socle"):
        raise ValueError(f"unknown mode {mode!r}")
    if G.order > cap:
        return BeauvilleReport("indeterminate", mode,
                               details={"reason": f"|G| = {G.order} exceeds the {mode} cap {cap}"},
                               seconds=time.perf_counter() - t0)
    try:
        if mode == "socle":
            table = socle_class_table(G)
            comp = table.class_ids
            sigs, seen = _signatures(G, _rep_elements(G), comp, budget, workers)
            conflicts = {}
            lit = None
        else:
            lit = LiteralSigma(G)
            comp, conflicts = _naive_components(G, lit)
            sigs, seen = _signatures(G, G.elements, comp, budget, workers)
    except BudgetExceeded as exc:
        return BeauvilleReport("indeterminate", mode, details={"reason": str(exc)},
                               seconds=time.perf_counter() - t0)
    found = _find_disjoint(sigs, conflicts)
    details = {"pairs_examined": seen, "signatures": len(sigs)}
    if found is None:
        return BeauvilleReport("not-beauville", mode, details=details,
                               seconds=time.perf_counter() - t0)
    S1, S2 = sigs[found[0]], sigs[found[1]]
    witness = BeauvilleWitness(S1, S2, triple(G, S1), triple(G, S2), "structure")
    checker = lit or LiteralSigma(G)
    ok = generates(G, S1) and generates(G, S2) and checker.trivial_intersection(S1, S2)
    details["witness_reverified"] = ok
    if not ok:
        raise AssertionError("Beauville witness failed literal re-verification")
    return BeauvilleReport("beauville", mode, witness, details=details,
                           seconds=time.perf_counter() - t0)


def _naive_components(G: ConcreteGroup, lit: LiteralSigma):
    """Per element: id of the literal Sigma(<t>) set; clashes by literal intersection."""
    cyc = lit.cyc
    nontriv = np.flatnonzero(G.elements != 0)
    keys = {}
    comp = np.full(G.order, -1, dtype=np.int64)
    masks = []
    for t in nontriv:
        s = lit.of(int(t))
        b = np.packbits(np.isin(np.arange(G.order), s, assume_unique=True)).tobytes()
        if b not in keys:
            keys[b] = len(keys)
            masks.append(int.from_bytes(b, "big"))
        comp[t] = keys[b]
    ident = 1 << (8 * math.ceil(G.order / 8) - 1)
    conflicts = {}
    for u, mu_ in enumerate(masks):
        conflicts[u] = {v for v, mv in enumerate(masks) if (mu_ & mv) & ~ident}
    return comp, conflicts


# tame / wild ------------------------------------------------------------------

def branch_socle_classes(G: ConcreteGroup) -> list[set[int]]:
    """Socle class ids occurring in each maximal branch."""
    d = directions(G)
    sc = socle_class_table(G).class_ids
    return [set(np.unique(sc[d == k]).tolist()) for k in range(int(d.max()) + 1)]


def tame_wild(G: ConcreteGroup, report: BeauvilleReport) -> BeauvilleReport:
    """Refine a Beauville verdict to tame or wild."""
    if report.decision != "beauville":
        raise ValueError("tame/wild needs a Beauville verdict")
    two, _ = is_two_generated(G)
    if not two:
        raise ValueError("tame/wild needs d(G) = 2")
    per_dir = branch_socle_classes(G)
    clash = None
    for d1, d2 in itertools.combinations(range(len(per_dir)), 2):
        common = per_dir[d1] & per_dir[d2]
        if common:
            clash = (d1, d2, min(common))
            break
    details = dict(report.details)
    if G.p < 5:
        # C_p x C_p has no Beauville structure, so there is nothing to lift
        details["tame_certificate"] = "vacuous: G/Phi(G) admits no Beauville structure"
        return replace(report, decision="beauville-tame", details=details)
    if clash is None:
        details["tame_certificate"] = "branch socle classes pairwise disjoint"
        return replace(report, decision="beauville-tame", details=details)
    lift = failing_lift(G, *clash)
    details["lift_reverified"] = True
    return replace(report, decision="beauville-wild", lift_witness=lift, details=details)


def failing_lift(G: ConcreteGroup, d1: int, d2: int, cls: int) -> BeauvilleWitness:
    """Lift of a downstairs Beauville structure that is not a Beauville structure."""
    d = directions(G)
    sc = socle_class_table(G).class_ids
    x1 = int(np.flatnonzero((d == d1) & (sc == cls))[0])
    x2 = int(np.flatnonzero((d == d2) & (sc == cls))[0])
    ndir = int(d.max()) + 1
    rest = [k for k in range(ndir) if k not in (d1, d2)]
    for e1, f1 in itertools.permutations(rest, 2):
        D1 = {d1, e1, f1}
        free = [k for k in range(ndir) if k not in D1]
        S1 = _pair_with(G, x1, e1, f1)
        if S1 is None:
            continue
        for e2, f2 in itertools.permutations([k for k in free if k != d2], 2):
            S2 = _pair_with(G, x2, e2, f2)
            if S2 is not None:
                w = BeauvilleWitness(S1, S2, triple(G, S1), triple(G, S2), "failing-lift")
                _verify_failing_lift(G, w)
                return w
    raise AssertionError("no separable lift found")


def _pair_with(G: ConcreteGroup, x: int, e: int, f: int):
    d = directions(G)
    ys = np.flatnonzero(d == e)
    hit = ys[d[G.mul(x, ys)] == f]
    return (x, int(hit[0])) if hit.size else None


def _verify_failing_lift(G: ConcreteGroup, w: BeauvilleWitness):
    Q = quotient(G, frattini(G))
    proj = Q.projection
    down1 = tuple(int(proj[s]) for s in w.S1)
    down2 = tuple(int(proj[s]) for s in w.S2)
    if not is_beauville_structure(Q.group, down1, down2):
        raise AssertionError("lift does not come from a downstairs Beauville structure")
    if not (generates(G, w.S1) and generates(G, w.S2)):
        raise AssertionError("lift does not generate")
    if sigma_intersection_trivial(G, w.S1, w.S2):
        raise AssertionError("claimed failing lift is a Beauville structure")


def wild_by_signatures(G: ConcreteGroup) -> bool:
    """Wild iff some generating pairs have disjoint direction triples but clashing socles.

    Brute-force cross-check of :func:`tame_wild`; small groups only.
    """
    d = directions(G)
    sc = socle_class_table(G).class_ids
    sigs: set = set()
    good = np.flatnonzero(d >= 0)
    for x in _rep_elements(G):
        if d[x] < 0:
            continue
        ys = good[d[good] != d[x]]
        xy = G.mul(int(x), ys)
        D = np.sort(np.stack([np.full(ys.size, d[x]), d[ys], d[xy]]), axis=0)
        K = np.sort(np.stack([np.full(ys.size, sc[x]), sc[ys], sc[xy]]), axis=0)
        for col in np.unique(np.concatenate([D, K]), axis=1).T:
            sigs.add((frozenset(col[:3].tolist()), frozenset(col[3:].tolist())))
    sigs = list(sigs)
    for (D1, K1), (D2, K2) in itertools.combinations(sigs, 2):
        if not D1 & D2 and K1 & K2:
            return True
    return False


# the classification theorem --------------------------------------------------

def classify_fast(G: ConcreteGroup) -> BeauvilleReport:
    """Beauville verdict for a maximal-class group from mu and the branch orders."""
    t0 = time.perf_counter()
    prof = maximal_class_profile(G)
    p, n = prof.p, prof.n
    details: dict = {"p": p, "n": n, "mu": prof.mu}
    if n <= p:
        # order at most p^p: Beauville iff exponent p and p >= 5
        ok = p >= 5 and prof.exponent == p
        details.update(case="order<=p^p", asserted=True)
        return BeauvilleReport("beauville-tame" if ok else "not-beauville", "classifier",
                               details=details, seconds=time.perf_counter() - t0)
    g1dir = next(b.direction for b in prof.branches if b.is_G1)
    X = [b.direction for b in prof.branches if b.order == p]
    non_g1 = [b.direction for b in prof.branches if not b.is_G1]
    g1_order_p = g1dir in X
    residue_ok = n % (p - 1) != 2 % (p - 1)

    if p < 5:
        by_branches = by_mu = "not-beauville"
    else:
        if sorted(X) == sorted(non_g1):
            by_branches = "beauville-tame"
        elif len(X) == 2 and (residue_ok or (n == p + 1 and g1_order_p)):
            by_branches = "beauville-wild"
        else:
            by_branches = "not-beauville"
        if prof.mu == p:
            by_mu = "beauville-tame"
        elif prof.mu == 2 and (residue_ok or (n == p + 1 and g1_order_p)):
            by_mu = "beauville-wild"
        else:
            by_mu = "not-beauville"
    hypothesis = prof.metabelian or any(
        nilpotency_class(G, M) <= 2 for M in maximal_subgroups(G))
    details.update(
        branch_reading=by_branches, mu_reading=by_mu, hypothesis=hypothesis,
        order_p_branches=X, g1_direction=g1dir, g1_branch_order_p=g1_order_p,
    )
    if by_branches != by_mu:
        details.update(case="readings-disagree", asserted=False)
        return BeauvilleReport("indeterminate", "classifier", details=details,
                               seconds=time.perf_counter() - t0)
    verdict = by_mu
    if verdict == "beauville-tame":
        details["case"] = "X=G\\G1"
    elif verdict == "beauville-wild":
        details["case"] = "X=two branches"
    else:
        details["case"] = "p<5" if p < 5 else "none"
    details["asserted"] = verdict != "not-beauville" or hypothesis
    if not details["asserted"]:
        details["note"] = "theorem-inapplicable, oracle required"
    return BeauvilleReport(verdict, "classifier", details=details,
                           seconds=time.perf_counter() - t0)


def oracle_with_type(G: ConcreteGroup, mode: str = "socle", budget=None, workers=None) -> BeauvilleReport:
    rep = beauville_oracle(G, mode=mode, budget=budget, workers=workers)
    if rep.decision == "beauville":
        rep = tame_wild(G, rep)
    return rep


# reference predicates -------------------------------------------------------

def catanese_predicate(invariants) -> bool:
    """Abelian group with the given cyclic factor orders is C_n x C_n, n > 1, gcd(n, 6) = 1."""
    by_prime: dict[int, list[int]] = {}
    for q in invariants:
        q = int(q)
        r = 2
        while q > 1:
            if q % r == 0:
                e = 0
                while q % r == 0:
                    q //= r
                    e += 1
                by_prime.setdefault(r, []).append(e)
            r += 1
    if not by_prime:
        return False
    n = 1
    for r, es in by_prime.items():
        es = [e for e in es if e]
        if len(es) != 2 or es[0] != es[1]:
            return False
        n *= r ** es[0]
    return n > 1 and math.gcd(n, 6) == 1


def abelian_catanese(G) -> bool:
    """Catanese's criterion for an abelian ConcreteGroup or a list of cyclic orders."""
    if isinstance(G, ConcreteGroup):
        return catanese_predicate(abelian_invariants(G))
    return catanese_predicate(G)


@dataclass(frozen=True)
class GoodPowerResult:
    value: bool
    agemo_order: int
    exponent: int


def good_power_criterion(G: ConcreteGroup) -> GoodPowerResult:
    """p >= 5 and |G^{p^{e-1}}| >= p^2, for a 2-generator group of exponent p^e."""
    two, d = is_two_generated(G)
    if not two:
        raise ValueError(f"criterion needs d(G) = 2, got {d}")
    e = round(math.log(G.exponent, G.p))
    size = agemo(G, e - 1).order
    return GoodPowerResult(G.p >= 5 and size >= G.p**2, size, G.exponent)


def oracle_coprime_product(components, mode: str = "socle") -> bool:
    """Beauville test for a direct product of groups of pairwise coprime orders.

    Such a product is Beauville iff every factor is: generating pairs and
    Sigma sets split factorwise, and a trivial intersection in the product
    needs one in each factor.
    """
    return all(beauville_oracle(H, mode=mode).is_beauville for H in components)


# the socle reduction, checked against literal Sigma sets -------------------------

@dataclass(frozen=True)
class ReductionCheck:
    pair_pairs: int       # generating-pair pairs covered
    classes: int          # distinct (literal, socle) signature classes compared
    mismatches: int


def _generating_pairs(G: ConcreteGroup):
    d = directions(G)
    good = np.flatnonzero(d >= 0)
    for x in good:
        ys = good[d[good] != d[x]]
        yield int(x), ys


def socle_reduction_exhaustive(G: ConcreteGroup) -> ReductionCheck:
    """Literal and socle intersection tests agree on all pairs of generating pairs.

    Both tests depend on a generating pair only through its triple of
    literal Sigma(<t>) sets, resp. socle classes, so it suffices to compare
    every pair of distinct signature combinations (with multiplicities).
    """
    lit = LiteralSigma(G)
    comp, _ = _naive_components(G, lit)
    masks: dict[int, int] = {}
    for t in np.flatnonzero(comp >= 0):
        u = int(comp[t])
        if u not in masks:
            s = lit.of(int(t))
            m = np.zeros(G.order, dtype=bool)
            m[s] = True
            m[0] = False
            masks[u] = int.from_bytes(np.packbits(m).tobytes(), "big")
    sc = socle_class_table(G).class_ids
    combos: dict[tuple, int] = {}
    for x, ys in _generating_pairs(G):
        xy = G.mul(x, ys)
        lk = np.sort(np.stack([np.full(ys.size, comp[x]), comp[ys], comp[xy]]), axis=0)
        sk = np.sort(np.stack([np.full(ys.size, sc[x]), sc[ys], sc[xy]]), axis=0)
        keys, counts = np.unique(np.concatenate([lk, sk]), axis=1, return_counts=True)
        for col, c in zip(keys.T, counts):
            k = tuple(int(v) for v in col)
            combos[k] = combos.get(k, 0) + int(c)
    items = list(combos.items())
    sig = [masks[k[0]] | masks[k[1]] | masks[k[2]] for k, _ in items]
    soc = [set(k[3:]) for k, _ in items]
    bad = 0
    total = 0
    for i in range(len(items)):
        for j in range(len(items)):
            literal = not (sig[i] & sig[j])
            reduced = not (soc[i] & soc[j])
            total += items[i][1] * items[j][1]
            if literal != reduced:
                bad += items[i][1] * items[j][1]
    return ReductionCheck(total, len(items), bad)


def socle_reduction_sampled(G: ConcreteGroup, samples: int = 10_000, seed: int = 0) -> ReductionCheck:
    """Same comparison on random pairs of generating pairs, Sigma sets built literally."""
    rng = np.random.default_rng(seed)
    d = directions(G)
    sc = socle_class_table(G).class_ids
    lit = LiteralSigma(G)
    good = np.flatnonzero(d >= 0)
    masks: dict[int, int] = {}

    def mask(t):
        key = int(lit.cyc[t])
        if key not in masks:
            m = np.zeros(G.order, dtype=bool)
            m[lit.of(int(t))] = True
            m[0] = False
            masks[key] = int.from_bytes(np.packbits(m).tobytes(), "big")
        return masks[key]

    def draw():
        x = int(rng.choice(good))
        ys = good[d[good] != d[x]]
        return triple(G, (x, int(rng.choice(ys))))

    bad = 0
    for _ in range(samples):
        T1, T2 = draw(), draw()
        literal = not ((mask(T1[0]) | mask(T1[1]) | mask(T1[2])) & (mask(T2[0]) | mask(T2[1]) | mask(T2[2])))
        reduced = not ({int(sc[t]) for t in T1} & {int(sc[t]) for t in T2})
        bad += literal != reduced
    return ReductionCheck(samples, 0, bad)
