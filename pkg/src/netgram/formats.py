"""Line-oriented text format for networks and homomorphisms, plus report rendering.

::

    network demo
      symbol s
      symbol t
      node n whole=s part=t
      hook h1 at=n
      hook h2 at=s
      edge e from=h1 to=h2
      facet k of=e
      glue a b          # b is glued to a
    end

    hom id : demo -> demo
      map s s
      ...
    end
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import ParseError
from .hommodel import Homomorphism
from .netmodel import Network
from .relcore import Element, Relation, Sort
from .report import ViolationReport

TOKEN = re.compile(r"[^\s=#]+")

_ATTRS = {
    "symbol": (),
    "node": ("whole", "part"),
    "hook": ("at",),
    "edge": ("from", "to"),
    "facet": ("of",),
}
_SORT = {"symbol": Sort.SYMBOL, "node": Sort.NODE, "hook": Sort.HOOK, "edge": Sort.EDGE, "facet": Sort.FACET}


@dataclass
class Document:
    networks: dict[str, Network] = field(default_factory=dict)
    homs: dict[str, Homomorphism] = field(default_factory=dict)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _check_token(no: int, tok: str) -> str:
    if not TOKEN.fullmatch(tok):
        raise ParseError(no, f"malformed identifier {tok!r}")
    return tok


def _attrs(no: int, kw: str, words: list[str]) -> dict[str, str]:
    out = {}
    for w in words:
        key, eq, val = w.partition("=")
        if not eq or key not in _ATTRS[kw]:
            raise ParseError(no, f"unexpected {w!r} in {kw} declaration")
        if key in out:
            raise ParseError(no, f"attribute {key} given twice")
        out[key] = _check_token(no, val)
    missing = [k for k in _ATTRS[kw] if k not in out]
    if missing:
        raise ParseError(no, f"{kw} declaration lacks {', '.join(missing)}=")
    return out


def _build_network(name: str, decls: list, glues: list) -> Network:
    index: dict[str, tuple[Element, int]] = {}
    for no, kw, ident, _ in decls:
        if ident in index:
            raise ParseError(no, f"duplicate identifier {ident!r}")
        index[ident] = (Element(_SORT[kw], ident), no)

    def ref(no, ident, *sorts):
        if ident not in index:
            raise ParseError(no, f"unknown identifier {ident!r}")
        e = index[ident][0]
        if sorts and e.sort not in sorts:
            want = " or ".join(s.keyword for s in sorts)
            raise ParseError(no, f"{ident!r} is a {e.sort.keyword}, expected {want}")
        return e

    sets = {s: set() for s in Sort}
    W, P, A, F, S, C = {}, {}, {}, {}, {}, {}
    for no, kw, ident, attrs in decls:
        e = index[ident][0]
        sets[e.sort].add(e)
        if kw == "symbol":
            W[e] = e
        elif kw == "node":
            W[e] = ref(no, attrs["whole"], Sort.SYMBOL)
            P[e] = ref(no, attrs["part"], Sort.SYMBOL)
        elif kw == "hook":
            A[e] = ref(no, attrs["at"], Sort.NODE, Sort.SYMBOL)
        elif kw == "edge":
            F[e] = ref(no, attrs["from"], Sort.HOOK)
            S[e] = ref(no, attrs["to"], Sort.HOOK)
        else:
            C[e] = ref(no, attrs["of"], Sort.EDGE)
    universe = frozenset(e for e, _ in index.values())
    pairs = []
    for no, a, b in glues:
        pairs.append((ref(no, a), ref(no, b)))
    return Network(*(sets[s] for s in Sort), W, P, A, F, S, C, Relation(universe, pairs), name=name)


def parse_document(text: str, resolver: Mapping[str, Network] | Callable[[str], Network] | None = None) -> Document:
    """Parse every ``network`` and ``hom`` block.

    Homomorphisms may refer to networks defined earlier in the same text or
    supplied by ``resolver`` (a mapping or a callable).
    """
    doc = Document()
    block = None
    for no, words in _lines(text):
        head = words[0]
        if block is None:
            if head == "network":
                if len(words) != 2:
                    raise ParseError(no, "expected: network <name>")
                block = ("network", _check_token(no, words[1]), no, [], [])
            elif head == "hom":
                if len(words) != 6 or words[2] != ":" or words[4] != "->":
                    raise ParseError(no, "expected: hom <name> : <source> -> <target>")
                names = [_check_token(no, w) for w in (words[1], words[3], words[5])]
                block = ("hom", names, no, [])
            else:
                raise ParseError(no, f"expected a network or hom block, got {head!r}")
            continue
        if head == "end":
            if len(words) != 1:
                raise ParseError(no, "unexpected text after end")
            if block[0] == "network":
                _, name, start, decls, glues = block
                if name in doc.networks:
                    raise ParseError(start, f"network {name!r} defined twice")
                doc.networks[name] = _build_network(name, decls, glues)
            else:
                _, names, start, maps = block
                if names[0] in doc.homs:
                    raise ParseError(start, f"hom {names[0]!r} defined twice")
                doc.homs[names[0]] = _build_hom(start, names, maps, doc.networks, resolver)
            block = None
            continue
        if block[0] == "network":
            if head in _ATTRS:
                if len(words) < 2:
                    raise ParseError(no, f"{head} declaration lacks an identifier")
                ident = _check_token(no, words[1])
                block[3].append((no, head, ident, _attrs(no, head, words[2:])))
            elif head == "glue":
                if len(words) != 3:
                    raise ParseError(no, "expected: glue <super> <sub>")
                block[4].append((no, _check_token(no, words[1]), _check_token(no, words[2])))
            else:
                raise ParseError(no, f"unknown declaration {head!r}")
        else:
            if head != "map" or len(words) != 3:
                raise ParseError(no, "expected: map <source-id> <target-id>")
            block[3].append((no, _check_token(no, words[1]), _check_token(no, words[2])))
    if block is not None:
        raise ParseError(block[2], f"{block[0]} block is not closed by end")
    return doc


def _resolve(name: str, local: Mapping[str, Network], resolver, no: int) -> Network:
    if name in local:
        return local[name]
    if resolver is not None:
        try:
            net = resolver(name) if callable(resolver) else resolver[name]
        except KeyError:
            net = None
        if net is not None:
            return net
    raise ParseError(no, f"unresolved network {name!r}")


def _build_hom(start: int, names, maps, local, resolver) -> Homomorphism:
    hname, sname, tname = names
    src = _resolve(sname, local, resolver, start)
    tgt = _resolve(tname, local, resolver, start)
    mapping: dict[Element, Element] = {}
    for no, a, b in maps:
        if a not in src.by_name:
            raise ParseError(no, f"unknown source identifier {a!r}")
        if b not in tgt.by_name:
            raise ParseError(no, f"unknown target identifier {b!r}")
        x = src.by_name[a]
        if x in mapping:
            raise ParseError(no, f"{a!r} mapped twice")
        mapping[x] = tgt.by_name[b]
    missing = sorted(src.universe - set(mapping))
    if missing:
        raise ParseError(start, f"map is not total: no map line for {missing[0].name!r}")
    return Homomorphism(src, tgt, mapping, name=hname)


def parse_network(text: str) -> Network:
    doc = parse_document(text)
    if len(doc.networks) != 1 or doc.homs:
        raise ParseError(1, f"expected exactly one network block, found {len(doc.networks)}")
    return next(iter(doc.networks.values()))


def parse_hom(text: str, resolver=None) -> Homomorphism:
    doc = parse_document(text, resolver)
    if len(doc.homs) != 1:
        raise ParseError(1, f"expected exactly one hom block, found {len(doc.homs)}")
    return next(iter(doc.homs.values()))


# -- serialization ---------------------------------------------------------------------


def serialize_network(net: Network, name: str | None = None) -> str:
    name = name or net.name or "net"
    lines = [f"network {name}"]
    for s in sorted(net.sigma, key=lambda e: e.name):
        lines.append(f"  symbol {s.name}")
    for n in sorted(net.nodes, key=lambda e: e.name):
        lines.append(f"  node {n.name} whole={net.W[n].name} part={net.P[n].name}")
    for h in sorted(net.hooks, key=lambda e: e.name):
        lines.append(f"  hook {h.name} at={net.A[h].name}")
    for e in sorted(net.edges, key=lambda e: e.name):
        lines.append(f"  edge {e.name} from={net.F[e].name} to={net.S[e].name}")
    for k in sorted(net.facets, key=lambda e: e.name):
        lines.append(f"  facet {k.name} of={net.C[k].name}")
    for a, b in sorted(net.G.pairs, key=lambda p: (p[0].name, p[1].name)):
        lines.append(f"  glue {a.name} {b.name}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_hom(h: Homomorphism, name: str | None = None, source: str | None = None, target: str | None = None) -> str:
    name = name or h.name or "hom"
    source = source or h.source.name or "source"
    target = target or h.target.name or "target"
    lines = [f"hom {name} : {source} -> {target}"]
    for x in sorted(h.mapping, key=lambda e: (e.sort, e.name)):
        lines.append(f"  map {x.name} {h.mapping[x].name}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def serialize_bundle(h: Homomorphism) -> str:
    """A self-contained document: both networks followed by the map."""
    src = h.source.name or "source"
    tgt = h.target.name or "target"
    if src == tgt and h.source != h.target:
        src, tgt = src + "_1", tgt + "_0"
    parts = [serialize_network(h.source, src)]
    if tgt != src:
        parts.append(serialize_network(h.target, tgt))
    parts.append(serialize_hom(h, source=src, target=tgt))
    return "\n".join(parts)


# -- reports ---------------------------------------------------------------------------


def render_report(report: ViolationReport, fmt: str = "tabular") -> str:
    if fmt == "structured":
        payload = {
            "ok": report.ok,
            "violations": [
                {"code": v.code, "elements": [repr(e) for e in v.elements], "message": v.message}
                for v in report.violations
            ],
            "infeasible": [{"code": c, "message": m} for c, m in report.infeasible],
            "notes": [{"code": c, "note": m} for c, m in report.notes],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = []
    for v in report.violations:
        elems = ",".join(e.name for e in v.elements)
        lines.append(f"{v.code}\t{elems}\t{v.message}")
    for code, msg in report.infeasible:
        lines.append(f"{code}\t\tinfeasible: {msg}")
    return "".join(line + "\n" for line in lines)
