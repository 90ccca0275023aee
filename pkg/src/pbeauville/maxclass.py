"""Invariants of p-groups of maximal class.

Notation: for a group of order p^n and class n-1, G_i is the i-th term of
the lower central series for i >= 2, G_1 = C_G(G_2/G_4), and G_i = 1 for
i >= n.  A branch B(M) is M minus Phi(G) for a maximal subgroup M.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .group import (
    ConcreteGroup,
    SeriesChain,
    Subgroup,
    center,
    centralizer,
    centralizer_mod,
    closure_of_set,
    coset_labels,
    derived_subgroup,
    frattini,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
)


class NotMaximalClass(ValueError):
    pass


@dataclass(frozen=True)
class BranchProfile:
    direction: int
    is_G1: bool
    order: int
    representative: int
    verified: bool          # every element of the branch was checked
    uniform: bool | None    # all branch elements share the order (None if unchecked)


@dataclass(eq=False)
class MaxClassProfile:
    p: int
    n: int
    series: SeriesChain = field(repr=False)
    G1: Subgroup | None = field(repr=False)
    ell: int | None
    branches: list[BranchProfile] = field(repr=False)
    mu: int | None
    metabelian: bool
    g1_class: int | None
    exponent: int
    top_centralizer: Subgroup | None = field(repr=False, default=None)

    @property
    def reduced(self) -> bool:
        return self.G1 is None

    @property
    def g1_abelian(self) -> bool | None:
        return None if self.g1_class is None else self.g1_class <= 1

    @property
    def g1_branch(self) -> BranchProfile | None:
        return next((b for b in self.branches if b.is_G1), None)

    @property
    def g1_branch_order(self) -> int | None:
        b = self.g1_branch
        return None if b is None else b.order

    def term(self, i: int) -> Subgroup:
        """G_i, with G_1 the distinguished maximal subgroup."""
        if i <= 0:
            raise ValueError("series index starts at 1")
        if i == 1:
            if self.G1 is None:
                raise ValueError("G_1 is only defined for n >= 4")
            return self.G1
        if i >= len(self.series):
            return self.series[-1]
        return self.series[i - 1]

    def order_p_branches(self) -> list[int]:
        return [b.direction for b in self.branches if b.order == self.p]

    def summary(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "ell": self.ell,
            "mu": self.mu,
            "metabelian": self.metabelian,
            "g1_class": self.g1_class,
            "exponent": self.exponent,
            "branch_orders": [b.order for b in self.branches],
            "g1_direction": next((b.direction for b in self.branches if b.is_G1), None),
        }


def is_maximal_class(G: ConcreteGroup) -> bool:
    return G.n >= 2 and lower_central_series(G).nilpotency_class == G.n - 1


def _default_verify(G: ConcreteGroup) -> bool:
    return G.order < 5**7


def maximal_class_profile(G: ConcreteGroup, verify: bool | None = None) -> MaxClassProfile:
    """Profile of a maximal-class group; raises NotMaximalClass otherwise."""
    key = ("profile", verify)
    if key in G._cache:
        return G._cache[key]
    if not is_maximal_class(G):
        raise NotMaximalClass(f"class {lower_central_series(G).nilpotency_class} != n-1 = {G.n - 1}")
    if verify is None:
        verify = _default_verify(G)
    series = lower_central_series(G)
    n, p = G.n, G.p
    G1 = top = None
    ell = None
    if n >= 4:
        G2 = series[1]
        G4 = series[3] if len(series) > 3 else G.trivial
        G1 = centralizer_mod(G, G2, G4)
        top = closure_of_set(G, np.flatnonzero(centralizer(G, series[n - 3].gens)))
    prof = MaxClassProfile(
        p=p, n=n, series=series, G1=G1, ell=None, branches=[], mu=None,
        metabelian=derived_subgroup(G, series[1]).order == 1 if len(series) > 1 else True,
        g1_class=nilpotency_class(G, G1) if G1 is not None else None,
        exponent=G.exponent, top_centralizer=top,
    )
    if n >= 4:
        prof.ell = degree_of_commutativity(G, prof)
    prof.branches = branch_profiles(G, prof, verify=verify)
    if G1 is not None:
        prof.mu = sum(1 for b in prof.branches if not b.is_G1 and b.order == p)
    G._cache[key] = prof
    return prof


def degree_of_commutativity(G: ConcreteGroup, profile: MaxClassProfile) -> int:
    """Largest l <= n-3 with [G_i, G_j] <= G_{i+j+l} for all i, j >= 1."""
    n = profile.n
    if n < 4:
        raise ValueError("degree of commutativity needs n >= 4")
    # depth[i, j]: largest k with [G_i, G_j] <= G_k, n when the commutator is trivial
    depth = {}
    for i in range(1, n):
        for j in range(i, n):
            A, B = profile.term(i), profile.term(j)
            a = np.repeat(np.asarray(A.gens, dtype=np.int64), len(B.gens))
            b = np.tile(np.asarray(B.gens, dtype=np.int64), len(A.gens))
            c = G.commutator(a, b)
            if not (c != 0).any():
                depth[(i, j)] = n
                continue
            k = 1
            while k + 1 < n and profile.term(k + 1).contains(c).all():
                k += 1
            depth[(i, j)] = k
    for ell in range(n - 3, -1, -1):
        if all(d >= min(i + j + ell, n) for (i, j), d in depth.items()):
            return ell
    raise AssertionError("no non-negative degree of commutativity")


def uniform_elements(G: ConcreteGroup, profile: MaxClassProfile) -> np.ndarray:
    """Mask of s outside G_1 and C_G(G_{n-2})."""
    if profile.G1 is None:
        raise ValueError("uniform elements need n >= 4")
    return ~(profile.G1.mask | profile.top_centralizer.mask)


def branch_profiles(G: ConcreteGroup, profile: MaxClassProfile, verify: bool = True) -> list[BranchProfile]:
    Phi = frattini(G)
    out = []
    for d, M in enumerate(maximal_subgroups(G)):
        branch = np.flatnonzero(M.mask & ~Phi.mask)
        rep = int(branch[0])
        is_g1 = profile.G1 is not None and M == profile.G1
        if verify:
            orders = G.orders[branch]
            order = int(orders[0])
            out.append(BranchProfile(d, is_g1, order, rep, True, bool((orders == order).all())))
        else:
            out.append(BranchProfile(d, is_g1, _order_of(G, rep), rep, False, None))
    return out


def _order_of(G: ConcreteGroup, x: int) -> int:
    k = 1
    while x:
        x = G.power(x, G.p)
        k *= G.p
    return k


def mu(G: ConcreteGroup) -> int:
    prof = maximal_class_profile(G)
    if prof.mu is None:
        raise ValueError("mu needs n >= 4")
    return prof.mu


@dataclass(frozen=True)
class UniformityResult:
    ok: bool
    violations: tuple[tuple[int, int, int, int], ...] = ()  # (direction, element, order, expected)


def verify_branch_uniformity(G: ConcreteGroup) -> UniformityResult:
    """Every element of every maximal branch has the same order."""
    if not is_maximal_class(G):
        raise NotMaximalClass("branch uniformity is stated for maximal class")
    Phi = frattini(G)
    bad = []
    for d, M in enumerate(maximal_subgroups(G)):
        branch = np.flatnonzero(M.mask & ~Phi.mask)
        orders = G.orders[branch]
        off = np.flatnonzero(orders != orders[0])
        bad += [(d, int(branch[i]), int(orders[i]), int(orders[0])) for i in off[:5]]
    return UniformityResult(not bad, tuple(bad))


@dataclass(frozen=True)
class MiechWitness:
    s: int
    s1: int
    a: int
    b: int
    residuals: tuple[int, ...]   # (s s1^i)^p (a^i b^{i^2})^{-1}, i = 1..p-1
    b_central: bool
    b_order_ok: bool
    b_in_g1_derived: bool

    @property
    def ok(self) -> bool:
        return self.b_central and self.b_order_ok and not any(self.residuals)


def _g1_hypothesis(profile: MaxClassProfile) -> bool:
    return profile.metabelian or (profile.g1_class is not None and profile.g1_class <= 2)


def verify_miech_identity(G: ConcreteGroup, profile: MaxClassProfile | None = None) -> MiechWitness | None:
    """Fit (s s1^i)^p = a^i b^{i^2} on i = 1, 2 and check it for all i < p.

    Returns None when not applicable: p = 2, n < 4, neither metabelian nor
    G_1 of class <= 2, or no uniform element of order p.
    """
    profile = profile or maximal_class_profile(G)
    p = G.p
    if p == 2 or profile.G1 is None or not _g1_hypothesis(profile):
        return None
    uni = np.flatnonzero(uniform_elements(G, profile) & (G.orders == p))
    if not uni.size:
        return None
    s = int(uni[0])
    cands = np.flatnonzero(profile.G1.mask & ~profile.term(2).mask)
    good = cands[G.orders[G.mul(s, cands)] == p]
    s1 = int(good[0]) if good.size else int(cands[0])
    f = [None] + [G.power(G.mul(s, G.power(s1, i)), p) for i in range(1, p)]
    b = G.power(G.mul(f[2], G.power(f[1], -2)), (p + 1) // 2)
    a = G.mul(f[1], int(G.inv[b]))
    residuals = []
    for i in range(1, p):
        pred = G.mul(G.power(a, i), G.power(b, i * i))
        residuals.append(G.mul(f[i], int(G.inv[pred])))
    g1_derived = derived_subgroup(G, profile.G1)
    return MiechWitness(
        s, s1, a, b, tuple(int(r) for r in residuals),
        b_central=b in center(G),
        b_order_ok=G.power(b, p) == 0,
        b_in_g1_derived=b in g1_derived,
    )


@dataclass(frozen=True)
class MiechSweep:
    applicable: bool
    pairs: int                       # (s, s1) pairs checked
    failures: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_miech_exhaustive(G: ConcreteGroup, profile: MaxClassProfile | None = None) -> MiechSweep:
    """(s s1^i)^p = a^i b^{i^2} with b central, for every s1 in G_1 minus G_2.

    s runs over one uniform element of order p per conjugacy class; the
    identity is invariant under simultaneous conjugation, so this covers
    all pairs.  a, b are fitted from i = 1, 2 and checked for i < p.
    """
    profile = profile or maximal_class_profile(G)
    p = G.p
    if p == 2 or profile.G1 is None or not _g1_hypothesis(profile):
        return MiechSweep(False, 0)
    uni = uniform_elements(G, profile) & (G.orders == p)
    labels = G.conjugacy_labels
    reps = np.unique(labels[uni])
    s1 = np.flatnonzero(profile.G1.mask & ~profile.term(2).mask)
    Z = center(G)
    half = (p + 1) // 2
    fails = []
    for s in reps:
        s = int(s)
        f = [None] + [G.power(G.mul(np.full(s1.size, s), G.power(s1, i)), p)
                      for i in range(1, p)]
        b = G.power(G.mul(f[2], G.power(f[1], -2)), half)
        a = G.mul(f[1], G.inv[b])
        good = Z.contains(b) & (G.power(b, p) == 0)
        for i in range(3, p):
            good &= G.mul(G.power(a, i), G.power(b, i * i)) == f[i]
        fails += [(s, int(x)) for x in s1[~good][:5]]
    return MiechSweep(True, int(reps.size * s1.size), tuple(fails))


def verify_sigma_identity(G: ConcreteGroup, profile: MaxClassProfile, s: int, s1: int) -> tuple[bool, int]:
    """[sigma_{i,k}, sigma_{i,l}] == [s_{k+1}, s_{l+1}]^{i^2} for 0 <= l < k < p.

    sigma_{i,k} = [s1^i, s, ..., s] with k copies of s; s_j = sigma_{1,j-1}.
    Returns (all hold, number of instances checked).
    """
    p = G.p
    sig = {}
    for i in range(1, p):
        x = G.power(s1, i)
        sig[(i, 0)] = x
        for k in range(1, p):
            x = G.commutator(x, s)
            sig[(i, k)] = x
    checked = 0
    for i in range(1, p):
        for k in range(1, p):
            for ell in range(k):
                lhs = G.commutator(sig[(i, k)], sig[(i, ell)])
                rhs = G.power(G.commutator(sig[(1, k)], sig[(1, ell)]), i * i)
                checked += 1
                if lhs != rhs:
                    return False, checked
    return True, checked


@dataclass(frozen=True)
class PowerLocationResult:
    applicable: bool
    ok: bool
    violations: tuple[tuple[int, int], ...] = ()  # (i, element)


def verify_pth_power_location(G: ConcreteGroup, profile: MaxClassProfile | None = None) -> PowerLocationResult:
    """x^p lies in G_{i+p-1} minus G_{i+p} for x in G_i minus G_{i+1}, i <= n-p."""
    profile = profile or maximal_class_profile(G)
    p, n = G.p, G.n
    if n < p + 2:
        return PowerLocationResult(False, True)
    bad = []
    for i in range(1, n - p + 1):
        layer = np.flatnonzero(profile.term(i).mask & ~profile.term(i + 1).mask)
        pw = G.pth[layer]
        ok = profile.term(i + p - 1).contains(pw) & ~profile.term(i + p).contains(pw)
        bad += [(i, int(x)) for x in layer[~ok][:5]]
    return PowerLocationResult(True, not bad, tuple(bad))


def small_order_exponents(G: ConcreteGroup) -> tuple[int, int]:
    """(exp G/Z(G), exp Phi(G)), computed from element orders."""
    Z = center(G)
    Phi = frattini(G)
    e_quot = 1
    cur = G.elements
    while not Z.contains(cur).all():
        cur = G.pth[cur]
        e_quot *= G.p
    e_phi = int(G.orders[Phi.elements].max())
    return e_quot, e_phi


@dataclass(frozen=True)
class StructureReport:
    ok: bool
    checks: dict


def verify_structure(G: ConcreteGroup, profile: MaxClassProfile | None = None) -> StructureReport:
    """The structural facts every maximal-class group must satisfy."""
    profile = profile or maximal_class_profile(G)
    p, n = G.p, G.n
    checks = {}
    orders = profile.series.orders
    checks["index_p_steps"] = orders[0] == p * p * orders[1] and all(
        orders[i] == p * orders[i + 1] for i in range(1, len(orders) - 1))
    if n >= 4:
        checks["index_p_steps"] &= profile.G1.order == p * orders[1]
    checks["branch_uniformity"] = verify_branch_uniformity(G).ok
    if n >= 4:
        G1 = profile.G1
        checks["G1_maximal"] = G1.order * p == G.order
        checks["ell_iff_G1_centralizes"] = (profile.ell > 0) == (G1 == profile.top_centralizer)
        uni = uniform_elements(G, profile)
        xs = np.flatnonzero(uni)
        checks["uniform_pth_central"] = bool(center(G).contains(G.pth[xs]).all())
        # conjugacy classes of uniform elements are exactly their Phi-cosets
        ccl = G.conjugacy_labels[xs]
        cos = coset_labels(G, frattini(G))[xs]
        pairs = np.unique(np.stack([ccl, cos]), axis=1).shape[1]
        checks["uniform_conjugates_are_coset"] = (
            pairs == np.unique(ccl).size == np.unique(cos).size)
        reps = [b.representative for b in profile.branches if uni[b.representative]]
        checks["uniform_centralizer_p2"] = all(
            int(centralizer(G, [s]).sum()) == p * p for s in reps)
        if n >= 5:
            classes = [nilpotency_class(G, M) for M in maximal_subgroups(G)]
            checks["class2_maximal_is_G1"] = all(
                M == G1 for M, c in zip(maximal_subgroups(G), classes) if c <= 2)
        if _g1_hypothesis(profile) and profile.mu is not None:
            allowed = {0, 1, p} if profile.g1_abelian else {0, 1, 2, p}
            checks["mu_values"] = profile.mu in allowed
        if n >= p + 2:
            checks["pth_power_location"] = verify_pth_power_location(G, profile).ok
    if n <= p + 1 and n >= 2:
        e_quot, e_phi = small_order_exponents(G)
        checks["exp_quotient_by_center_is_p"] = e_quot == p or n == 2
        checks["exp_frattini_is_p"] = e_phi <= p
    return StructureReport(all(checks.values()), checks)
