"""Cross-validation of the classification against the oracle, one group at a time."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .beauville import (
    NAIVE_CAP,
    SOCLE_CAP,
    BeauvilleReport,
    catanese_predicate,
    classify_fast,
    good_power_criterion,
    oracle_with_type,
)
from .group import ConcreteGroup, abelian_invariants, center, is_two_generated, quotient
from .maxclass import (
    is_maximal_class,
    maximal_class_profile,
    verify_branch_uniformity,
    verify_miech_exhaustive,
    verify_structure,
)

QUOTIENT_ORACLE_CAP = 5**5


@dataclass
class Row:
    name: str
    group_id: str
    p: int
    n: int
    maximal_class: bool
    profile: dict | None = None
    structure: dict | None = None
    miech: dict | None = None
    fast: dict | None = None
    oracle: dict | None = None
    good_power: dict | None = None
    catanese: bool | None = None
    quotient: dict | None = None
    agreement: str = "n/a"        # agree | disagree | oracle adjudicated | n/a
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self) -> dict:
        d = asdict(self)
        d.pop("seconds")
        return d


def report_dict(rep: BeauvilleReport, G: ConcreteGroup | None = None) -> dict:
    out = {"decision": rep.decision, "method": rep.method, "details": _plain(rep.details)}
    if rep.witness is not None:
        out["witness"] = rep.witness.as_dict(G)
    if rep.lift_witness is not None:
        out["failing_lift"] = rep.lift_witness.as_dict(G)
    return out


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def _same(fast: str, oracle: str) -> bool:
    return fast == oracle


def verify_group(name: str, group_id: str, G: ConcreteGroup, oracle_cap: int = SOCLE_CAP,
                 mode: str = "socle") -> Row:
    t0 = time.perf_counter()
    p, n = G.p, G.n
    row = Row(name, group_id, p, n, maximal_class=is_maximal_class(G) and n >= 3)
    oracle = None
    if G.order <= oracle_cap and (mode != "naive" or G.order <= NAIVE_CAP):
        oracle = oracle_with_type(G, mode=mode)
        row.oracle = report_dict(oracle, G)
        if oracle.decision == "indeterminate":
            oracle = None
    if is_two_generated(G)[0]:
        gp = good_power_criterion(G)
        row.good_power = {"value": gp.value, "agemo_order": gp.agemo_order, "exponent": gp.exponent}
        if oracle is not None:
            row.good_power["oracle_agrees"] = gp.value == oracle.is_beauville
    if G.is_abelian():
        row.catanese = catanese_predicate(abelian_invariants(G))
        if oracle is not None and row.catanese != oracle.is_beauville:
            row.failures.append("catanese criterion disagrees with the oracle")
    if not row.maximal_class:
        row.seconds = time.perf_counter() - t0
        return row

    prof = maximal_class_profile(G)
    row.profile = _plain(prof.summary())
    st = verify_structure(G, prof)
    row.structure = _plain(st.checks)
    row.failures += [f"structure: {k}" for k, v in st.checks.items() if not v]
    if not verify_branch_uniformity(G).ok:
        row.failures.append("branch uniformity")
    if n >= 4 and prof.mu is not None and prof.mu not in (0, 1, 2, p) and (
            prof.metabelian or (prof.g1_class or 99) <= 2):
        row.failures.append(f"mu = {prof.mu}")
    sweep = verify_miech_exhaustive(G, prof)
    row.miech = {"applicable": sweep.applicable, "pairs": sweep.pairs, "ok": sweep.ok}
    if not sweep.ok:
        row.failures.append("miech identity")

    fast = classify_fast(G)
    row.fast = report_dict(fast)
    if oracle is not None:
        if fast.decision == "indeterminate":
            row.agreement = "oracle adjudicated"
            row.fast["adjudication"] = {
                "oracle": oracle.decision,
                "branch_reading_matches": fast.details["branch_reading"] == oracle.decision,
                "mu_reading_matches": fast.details["mu_reading"] == oracle.decision,
            }
        elif _same(fast.decision, oracle.decision):
            row.agreement = "agree"
        else:
            row.agreement = "disagree"
            if fast.details.get("asserted"):
                row.failures.append(f"classifier {fast.decision} vs oracle {oracle.decision}")

    if p >= 5 and n >= 3:
        row.quotient = _quotient_check(G)
        if not row.quotient["ok"]:
            row.failures.append("G/Z(G) is not a tame Beauville group")
    row.seconds = time.perf_counter() - t0
    return row


def _quotient_check(G: ConcreteGroup) -> dict:
    Q = quotient(G, center(G)).group
    if Q.order <= QUOTIENT_ORACLE_CAP:
        rep = oracle_with_type(Q, mode="socle")
        method = "oracle"
    else:
        rep = classify_fast(Q)
        method = "classifier"
    return {"order": Q.order, "method": method, "decision": rep.decision,
            "ok": rep.decision == "beauville-tame"}
