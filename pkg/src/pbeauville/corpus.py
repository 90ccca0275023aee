"""Default corpus of test groups and the on-disk corpus format."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .forge import construct_abelian, construct_pquotient
from .forge.search import MetabelianSearchSpec, metabelian_search
from .pc import PcPresentation, PresentationError, format_presentation, parse_presentation


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: dict
    presentation: PcPresentation = field(repr=False)

    @property
    def group_id(self) -> str:
        return group_id(self.presentation)


def canonical_bytes(pres: PcPresentation) -> bytes:
    return format_presentation(pres).encode()


def group_id(pres: PcPresentation) -> str:
    return hashlib.sha256(canonical_bytes(pres)).hexdigest()


# p, n, target, max_children, max_emissions
SEARCHES = (
    (5, 4, "", 25, None),
    (5, 5, "", 25, None),
    (5, 5, "mu=5", 125, 3),
    (5, 6, "", 5, None),
    (5, 6, "g1-pair", 25, 3),
    (5, 7, "", 4, 8),
    (5, 7, "mu=2", 25, 4),
    (3, 5, "", 9, 4),
)


def default_corpus(searches=SEARCHES) -> list[CorpusEntry]:
    out = []
    for n1, n2 in [(2, 2), (3, 3), (5, 5), (7, 7), (25, 25), (25, 5), (9, 9)]:
        out.append(CorpusEntry(f"abelian-{n1}-{n2}", {"kind": "abelian", "n1": n1, "n2": n2},
                               construct_abelian(n1, n2)))
    for p, ms in [(5, range(2, 7)), (3, range(2, 6)), (7, range(2, 5))]:
        for m in ms:
            out.append(CorpusEntry(f"pquotient-{p}-{m}", {"kind": "pquotient", "p": p, "m": m},
                                   construct_pquotient((p, m))))
    for p, n, target, mc, me in searches:
        spec = MetabelianSearchSpec(p, n, seed=0, max_children=mc, max_emissions=me, target=target)
        for k, em in enumerate(metabelian_search(spec)):
            tag = target.replace("=", "").replace(",", "-") or "any"
            out.append(CorpusEntry(
                f"metabelian-{p}-{n}-{tag}-{k:03d}",
                {"kind": "metabelian-search", "p": p, "n": n, "target": target, "seed": 0,
                 "max_children": mc, "max_emissions": me, "index": k},
                em.presentation))
    return out


def write_corpus(entries, outdir) -> Path:
    """One presentation file per entry plus manifest.json."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    mpath = outdir / "manifest.json"
    manifest = {}
    if mpath.exists():
        manifest = {g["file"]: g for g in json.loads(mpath.read_text())["groups"]}
    for e in entries:
        path = outdir / f"{e.name}.pc"
        path.write_bytes(canonical_bytes(e.presentation))
        manifest[path.name] = {"file": path.name, "id": e.group_id, "source": e.source,
                               "p": e.presentation.p, "n": e.presentation.n}
    groups = [manifest[k] for k in sorted(manifest)]
    mpath.write_text(json.dumps({"schema_version": 1, "groups": groups}, indent=1, sort_keys=True) + "\n")
    return mpath


def read_corpus(corpusdir, skip_invalid: bool = False) -> list[CorpusEntry]:
    corpusdir = Path(corpusdir)
    sources = {}
    mpath = corpusdir / "manifest.json"
    if mpath.exists():
        for g in json.loads(mpath.read_text())["groups"]:
            sources[g["file"]] = g["source"]
    out = []
    for path in sorted(corpusdir.glob("*.pc")):
        try:
            pres = parse_presentation(path.read_text())
        except PresentationError:
            if skip_invalid:
                continue
            raise
        out.append(CorpusEntry(path.stem, sources.get(path.name, {"kind": "file", "path": str(path)}), pres))
    return out
