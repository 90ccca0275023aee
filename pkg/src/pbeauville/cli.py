"""Command-line front end.

Exit status: 0 completed, 2 input error, 3 indeterminate or budget
exhausted, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .beauville import BeauvilleReport, beauville_oracle, classify_fast, oracle_with_type, tame_wild
from .corpus import CorpusEntry, default_corpus, group_id, read_corpus, write_corpus
from .forge import PQuotientSpec, construct_abelian, construct_pquotient
from .forge.search import MetabelianSearchSpec, SearchStats, metabelian_search
from .group import (
    ConcreteGroup,
    InconsistentPresentation,
    abelian_invariants,
    center,
    frattini,
    is_two_generated,
    lower_central_series,
    quotient,
)
from .harness import _plain, report_dict, verify_group
from .maxclass import NotMaximalClass, is_maximal_class, maximal_class_profile, verify_structure
from .pc import PresentationError, check_consistency, format_presentation, parse_presentation

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_INDETERMINATE, EXIT_INVARIANT = 0, 2, 3, 4


class InputError(Exception):
    pass


# records ------------------------------------------------------------------------

class Results:
    """Append-only JSON-lines results file; one complete line per write."""

    def __init__(self, path: str | None):
        self.path = Path(path) if path else None

    def append(self, command: str, args: dict, group: dict | None, result: dict, seconds: float):
        rec = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": command,
            "args": args,
            "group": group,
            "result": _plain(result),
            "volatile": {
                "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "seconds": round(seconds, 3),
            },
        }
        if self.path is None:
            return rec
        line = json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n"
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
        return rec


def load_group(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        pres = parse_presentation(text)
    except PresentationError as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        G = ConcreteGroup(pres)
    except InconsistentPresentation as exc:
        raise InputError(f"{path}: inconsistent presentation ({exc})") from exc
    info = {"id": group_id(pres), "source": str(path), "p": pres.p, "n": pres.n}
    return pres, G, info


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    return int(os.environ.get("PBEAUVILLE_WORKERS", "1"))


def _fmt_elt(G, x) -> str:
    v = G.vector(int(x))
    word = " ".join(f"g{i + 1}^{c}" if c > 1 else f"g{i + 1}" for i, c in enumerate(v) if c)
    return word or "1"


def _print_witness(G, rep: BeauvilleReport):
    for label, w in (("structure", rep.witness), ("failing lift", rep.lift_witness)):
        if w is None:
            continue
        print(f"  {label}:")
        print(f"    S1 = {{{_fmt_elt(G, w.S1[0])}, {_fmt_elt(G, w.S1[1])}}}")
        print(f"    S2 = {{{_fmt_elt(G, w.S2[0])}, {_fmt_elt(G, w.S2[1])}}}")


# commands -----------------------------------------------------------------------

def cmd_check(args, results: Results) -> int:
    t0 = time.perf_counter()
    try:
        pres = parse_presentation(Path(args.path).read_text())
    except (OSError, PresentationError) as exc:
        raise InputError(str(exc)) from exc
    rep = check_consistency(pres)
    info = {"id": group_id(pres), "source": args.path, "p": pres.p, "n": pres.n}
    result = {"consistent": rep.ok, "elements": rep.elements, "expected": rep.expected,
              "relation": rep.relation, "witness": rep.witness}
    results.append("check", {}, info, result, time.perf_counter() - t0)
    if rep.ok:
        print(f"consistent: order {pres.p}^{pres.n} = {pres.order}")
        return EXIT_OK
    print(f"inconsistent: {rep.relation}" + (f", {rep.witness[0]} != {rep.witness[1]}" if rep.witness else
                                               f", {rep.elements} of {rep.expected} normal forms reached"))
    return EXIT_INPUT


def cmd_analyze(args, results: Results) -> int:
    t0 = time.perf_counter()
    pres, G, info = load_group(args.path)
    lcs = lower_central_series(G)
    two, d = is_two_generated(G)
    result = {
        "order": G.order, "exponent": G.exponent, "class": lcs.nilpotency_class,
        "lower_central_orders": list(lcs.orders), "center_order": center(G).order,
        "frattini_order": frattini(G).order, "rank": d,
    }
    print(f"order {G.p}^{G.n}, exponent {G.exponent}, class {lcs.nilpotency_class}, d(G) = {d}")
    print(f"lower central series orders: {list(lcs.orders)}")
    print(f"|Z(G)| = {center(G).order}, |Phi(G)| = {frattini(G).order}")
    if G.is_abelian():
        result["abelian_invariants"] = list(abelian_invariants(G))
        print(f"abelian invariants: {list(abelian_invariants(G))}")
    status = EXIT_OK
    if is_maximal_class(G) and G.n >= 3:
        prof = maximal_class_profile(G)
        st = verify_structure(G, prof)
        result["profile"] = prof.summary()
        result["structure"] = st.checks
        s = prof.summary()
        print(f"maximal class: mu = {s.get('mu')}, degree of commutativity = {s.get('ell')}, "
              f"branch orders = {s.get('branch_orders')}")
        for k, v in st.checks.items():
            print(f"  {k}: {'ok' if v else 'VIOLATED'}")
        if not st.ok:
            status = EXIT_INVARIANT
    results.append("analyze", {}, info, result, time.perf_counter() - t0)
    return status


def cmd_oracle(args, results: Results) -> int:
    t0 = time.perf_counter()
    pres, G, info = load_group(args.path)
    rep = beauville_oracle(G, mode=args.mode, budget=args.budget, workers=_workers(args))
    if rep.decision == "beauville":
        rep = tame_wild(G, rep)
    results.append("oracle", {"mode": args.mode, "budget": args.budget}, info,
                   report_dict(rep, G), time.perf_counter() - t0)
    if rep.decision.startswith("beauville-"):
        print("beauville")
        print(f"  type: {rep.decision.split('-', 1)[1]}")
    else:
        print(rep.decision)
    if rep.decision == "indeterminate":
        print(f"  {rep.details.get('reason')}")
        return EXIT_INDETERMINATE
    _print_witness(G, rep)
    return EXIT_OK


def cmd_classify(args, results: Results) -> int:
    t0 = time.perf_counter()
    pres, G, info = load_group(args.path)
    try:
        rep = classify_fast(G)
    except NotMaximalClass as exc:
        raise InputError(f"{args.path}: not of maximal class ({exc})") from exc
    out = report_dict(rep)
    status = EXIT_OK
    case = rep.details.get("case")
    if rep.decision == "indeterminate":
        print("readings disagree: "
              f"by branches {rep.details['branch_reading']}, by mu {rep.details['mu_reading']}")
        if args.adjudicate:
            orc = oracle_with_type(G, workers=_workers(args))
            out["adjudication"] = report_dict(orc, G)
            print(f"oracle adjudicated: {orc.decision}")
            status = EXIT_INDETERMINATE if orc.decision == "indeterminate" else EXIT_OK
        else:
            status = EXIT_INDETERMINATE
    else:
        tag = "" if rep.details.get("asserted", True) else f" [{rep.details.get('note')}]"
        print(f"{rep.decision} (case {case}){tag}")
    results.append("classify", {"adjudicate": args.adjudicate}, info, out, time.perf_counter() - t0)
    return status


def cmd_quotient(args, results: Results) -> int:
    t0 = time.perf_counter()
    pres, G, info = load_group(args.path)
    if args.by == "center":
        N = center(G)
    elif args.by.startswith("gamma:"):
        try:
            k = int(args.by.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad --by value {args.by!r}") from exc
        lcs = lower_central_series(G)
        if k < 1:
            raise InputError("gamma index starts at 1")
        N = lcs[k - 1] if k - 1 < len(lcs) else G.trivial
    else:
        raise InputError(f"bad --by value {args.by!r}")
    Q = quotient(G, N)
    text = format_presentation(Q.group.pres)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    qid = group_id(Q.group.pres)
    results.append("quotient", {"by": args.by}, info,
                   {"quotient_id": qid, "order": Q.group.order, "output": args.output},
                   time.perf_counter() - t0)
    if args.output:
        print(f"quotient of order {Q.group.p}^{Q.group.n} written to {args.output}")
    return EXIT_OK


def cmd_construct(args, results: Results) -> int:
    t0 = time.perf_counter()
    entries: list[CorpusEntry] = []
    extra = {}
    try:
        if args.kind == "pquotient":
            p, m = args.params
            entries.append(CorpusEntry(f"pquotient-{p}-{m}", {"kind": "pquotient", "p": p, "m": m},
                                       construct_pquotient(PQuotientSpec(p, m))))
        elif args.kind == "abelian":
            n1, n2 = args.params
            entries.append(CorpusEntry(f"abelian-{n1}-{n2}", {"kind": "abelian", "n1": n1, "n2": n2},
                                       construct_abelian(n1, n2)))
        elif args.kind == "metabelian-search":
            p, n = args.params
            spec = MetabelianSearchSpec(p, n, seed=args.seed, max_children=args.max_children,
                                        max_emissions=args.max_emissions, target=args.filter)
            stats = SearchStats()
            tag = args.filter.replace("=", "").replace(",", "-") or "any"
            for k, em in enumerate(metabelian_search(spec, stats)):
                entries.append(CorpusEntry(
                    f"metabelian-{p}-{n}-{tag}-{k:03d}",
                    {"kind": "metabelian-search", "p": p, "n": n, "target": args.filter,
                     "seed": args.seed, "max_children": args.max_children,
                     "max_emissions": args.max_emissions, "index": k},
                    em.presentation))
            extra = {"search": {"nodes": stats.nodes, "leaves": stats.leaves,
                                "emitted": stats.emitted, "sampled_layers": stats.sampled_layers}}
        elif args.kind == "corpus":
            entries = default_corpus()
    except (ValueError, PresentationError) as exc:
        raise InputError(str(exc)) from exc
    mpath = write_corpus(entries, args.outdir)
    for e in entries:
        print(f"{e.name}.pc  order {e.presentation.p}^{e.presentation.n}  {e.group_id[:12]}")
    if not entries:
        print("no presentations emitted")
    print(f"manifest: {mpath}")
    results.append("construct", {"kind": args.kind, "params": args.params}, None,
                   {"files": [f"{e.name}.pc" for e in entries],
                    "ids": [e.group_id for e in entries], **extra}, time.perf_counter() - t0)
    return EXIT_OK


def cmd_verify_theorem(args, results: Results) -> int:
    t0 = time.perf_counter()
    corpusdir = Path(args.corpusdir)
    if not corpusdir.is_dir():
        raise InputError(f"{corpusdir} is not a directory")
    status = EXIT_OK
    header = f"{'group':32s} {'oracle':16s} {'classifier':16s} {'G/Z(G)':16s} status"
    print(header)
    print("-" * len(header))
    paths = sorted(corpusdir.glob("*.pc"))
    entries = {e.name: e for e in read_corpus(corpusdir, skip_invalid=True)}
    for path in paths:
        e = entries.get(path.stem)
        if e is None:
            print(f"{path.stem:32s} unparsable presentation")
            status = max(status, EXIT_INPUT)
            continue
        try:
            G = ConcreteGroup(e.presentation)
        except InconsistentPresentation:
            print(f"{e.name:32s} inconsistent presentation")
            status = max(status, EXIT_INPUT)
            continue
        row = verify_group(e.name, e.group_id, G, oracle_cap=args.oracle_cap)
        orc = row.oracle["decision"] if row.oracle else "-"
        fast = row.fast["decision"] if row.fast else "-"
        quo = row.quotient["decision"] if row.quotient else "-"
        state = "FAIL: " + "; ".join(row.failures) if row.failures else row.agreement
        print(f"{e.name:32s} {orc:16s} {fast:16s} {quo:16s} {state}")
        results.append("verify-theorem", {"oracle_cap": args.oracle_cap},
                       {"id": e.group_id, "source": e.source, "p": G.p, "n": G.n},
                       row.record(), row.seconds)
        if row.failures:
            status = EXIT_INVARIANT
    print(f"{len(paths)} groups, {time.perf_counter() - t0:.1f}s")
    return status


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pbeauville", description=__doc__.splitlines()[0])
    ap.add_argument("--results", default=os.environ.get("PBEAUVILLE_RESULTS", "results.jsonl"),
                    help="JSON-lines results file (use '' to disable)")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and certify consistency")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze", help="structural invariants and maximal-class profile")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle", help="decide the Beauville property by search")
    p.add_argument("path")
    p.add_argument("--mode", choices=("socle", "naive"), default="socle")
    p.add_argument("--budget", type=int, default=None, help="max generating pairs examined")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("classify", help="fast verdict for groups of maximal class")
    p.add_argument("path")
    p.add_argument("--adjudicate", action="store_true", help="run the oracle if readings disagree")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quotient", help="write a quotient presentation")
    p.add_argument("path")
    p.add_argument("--by", required=True, help="center or gamma:k")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("construct", help="build presentations and a manifest")
    p.add_argument("kind", choices=("pquotient", "abelian", "metabelian-search", "corpus"))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--outdir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-children", type=int, default=25)
    p.add_argument("--max-emissions", type=int, default=None)
    p.add_argument("--filter", default="")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify-theorem", help="classifier vs oracle over a corpus directory")
    p.add_argument("corpusdir")
    p.add_argument("--oracle-cap", type=int, default=5**7)
    p.set_defaults(func=cmd_verify_theorem)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "construct":
        want = {"pquotient": 2, "abelian": 2, "metabelian-search": 2, "corpus": 0}[args.kind]
        if len(args.params) != want:
            ap.error(f"construct {args.kind} takes {want} integer parameters")
    results = Results(args.results or None)
    try:
        return args.func(args, results)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
