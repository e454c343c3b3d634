"""JSON manifests: exact, canonical, with shared algebras referenced by ``#id``.

A manifest is a JSON object::

    {"schema_version": "1", "kind": "square", "field": "q",
     "objects": {"K[C2]": {"type": "hopf", ...}, ...},
     "payload": {...}}

Hopf algebras and groups live in ``objects`` and are referenced as ``"#id"``;
a reference without ``#`` is a path, relative to the manifest, of another
manifest whose payload is the referenced object. Morphisms and actions are
written inline. Structure constants are sorted flat lists of
``[indices..., scalar]`` with scalars as exact strings.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .action import HopfAction
from .exactla import QQ, Field, LinMap, Vec, field_from_name
from .groups import GroupCrossedModule, GroupCrossedSquare
from .hopfcore import FiniteGroup, FinHopf
from .morphism import HopfMorphism
from .square import Cat2, CrossedSquare
from .twoaction import Hopf2Action, SplitEpi2
from .xmod import Cat1, CrossedModule, ReflexiveGraph

SCHEMA_VERSION = "1"
KINDS = ("hopf", "group", "morphism", "action", "xmod", "cat1", "square", "2action", "pt2", "cat2",
         "group_xmod", "group_square")


class ManifestError(ValueError):
    """Malformed input; ``where`` locates the offending field."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def kind_of(obj: Any) -> str:
    for cls, kind in ((FinHopf, "hopf"), (FiniteGroup, "group"), (HopfMorphism, "morphism"),
                      (HopfAction, "action"), (CrossedModule, "xmod"), (Cat1, "cat1"),
                      (CrossedSquare, "square"), (Hopf2Action, "2action"), (Cat2, "cat2"),
                      (SplitEpi2, "pt2"), (GroupCrossedModule, "group_xmod"),
                      (GroupCrossedSquare, "group_square")):
        if isinstance(obj, cls):
            return kind
    raise TypeError(f"no manifest kind for {type(obj).__name__}")


def field_tag(field: Field) -> str:
    return "q" if field.characteristic == 0 else f"fp:{field.characteristic}"


# -- writing -----------------------------------------------------------------------------


class _Writer:
    def __init__(self, field: Field):
        self.field = field
        self.objects: dict[str, dict] = {}
        self._ids: dict[int, str] = {}

    def scalar(self, c) -> str:
        return self.field.fmt(c)

    def _name(self, base: str) -> str:
        base = base or "obj"
        name, k = base, 1
        while name in self.objects:
            k += 1
            name = f"{base}~{k}"
        return name

    def ref(self, obj) -> str:
        key = id(obj)
        if key not in self._ids:
            name = self._name(obj.name if isinstance(obj, FinHopf) else "G")
            self._ids[key] = name
            self.objects[name] = {}
            self.objects[name] = self.hopf(obj) if isinstance(obj, FinHopf) else self.group(obj)
        return "#" + self._ids[key]

    def entries(self, f: LinMap, dom_shape: tuple[int, ...], cod_shape: tuple[int, ...]) -> list:
        out = []
        for i in range(f.dom_dim):
            di = _unflatten(i, dom_shape)
            for k, v in f.coldict(i).items():
                if v:
                    out.append([*di, *_unflatten(k, cod_shape), self.scalar(v)])
        out.sort(key=lambda e: e[:-1])
        return out

    def hopf(self, H: FinHopf) -> dict:
        n = H.dim
        return {
            "type": "hopf",
            "name": H.name,
            "dim": n,
            "labels": list(H.labels),
            "mult": self.entries(H.mult, (n, n), (n,)),
            "unit": sorted([k, self.scalar(v)] for k, v in H.unit.d.items()),
            "comult": self.entries(H.comult, (n,), (n, n)),
            "counit": [e[:1] + e[2:] for e in self.entries(H.counit, (n,), (1,))],
            "antipode": self.entries(H.antipode, (n,), (n,)),
            "grouplike": H.grouplike,
        }

    def group(self, G: FiniteGroup) -> dict:
        return {"type": "group", "labels": list(G.labels), "table": [list(r) for r in G.table],
                "identity": G.identity}

    def morphism(self, f: HopfMorphism) -> dict:
        return {"type": "morphism", "name": f.name, "dom": self.ref(f.dom), "cod": self.ref(f.cod),
                "matrix": self.entries(f.map, (f.dom.dim,), (f.cod.dim,))}

    def action(self, a: HopfAction) -> dict:
        nb, nx = a.acting.dim, a.acted.dim
        return {"type": "action", "name": a.name, "acting": self.ref(a.acting), "acted": self.ref(a.acted),
                "act": self.entries(a.xi, (nb, nx), (nx,))}

    def pairing(self, h: LinMap, M: FinHopf, N: FinHopf, L: FinHopf) -> list:
        return self.entries(h, (M.dim, N.dim), (L.dim,))

    def payload(self, obj) -> dict:
        kind = kind_of(obj)
        if kind in ("hopf", "group"):
            return {"type": kind, "ref": self.ref(obj)}
        if kind == "morphism":
            return self.morphism(obj)
        if kind == "action":
            return self.action(obj)
        if kind == "xmod":
            return {"type": kind, "name": obj.name, "B": self.ref(obj.B), "X": self.ref(obj.X),
                    "d": self.morphism(obj.d), "act": self.action(obj.act)}
        if kind == "cat1":
            g = obj.graph
            return {"type": kind, "name": obj.name, "A1": self.ref(g.A1), "A0": self.ref(g.A0),
                    "delta": self.morphism(g.delta), "gamma": self.morphism(g.gamma),
                    "iota": self.morphism(g.iota)}
        if kind == "square":
            s = obj
            return {"type": kind, "name": s.name, **{k: self.ref(getattr(s, k)) for k in "LMNP"},
                    **{k: self.morphism(getattr(s, k)) for k in ("lam", "lamp", "mu", "nu")},
                    **{k: self.action(getattr(s, k)) for k in ("actPL", "actPM", "actPN")},
                    "h": self.pairing(s.h, s.M, s.N, s.L)}
        if kind == "2action":
            a = obj
            return {"type": kind, "name": a.name, **{k: self.ref(getattr(a, k)) for k in "LMNP"},
                    **{k: self.action(getattr(a, k)) for k in ("actPL", "actPM", "actPN", "actML", "actNL")},
                    "h": self.pairing(a.h, a.M, a.N, a.L)}
        if kind == "pt2":
            return self._pt2(obj)
        if kind == "cat2":
            return {**self._pt2(obj.base), "type": kind, "name": obj.name,
                    "tN": self.morphism(obj.tN), "tM": self.morphism(obj.tM)}
        if kind == "group_xmod":
            return {"type": kind, "B": self.ref(obj.B), "X": self.ref(obj.X), "d": list(obj.d),
                    "act": [list(r) for r in obj.act]}
        g = obj
        return {"type": kind, **{k: self.ref(getattr(g, k)) for k in "LMNP"},
                **{k: list(getattr(g, k)) for k in ("lam", "lamp", "mu", "nu")},
                **{k: [list(r) for r in getattr(g, k)] for k in ("actPL", "actPM", "actPN", "h")}}

    def _pt2(self, s: SplitEpi2) -> dict:
        return {"type": "pt2", "name": s.name, "H": self.ref(s.H), "N": self.ref(s.N), "M": self.ref(s.M),
                **{k: self.morphism(getattr(s, k)) for k in ("iN", "iM", "sN", "sM")}}


def _unflatten(i: int, shape: tuple[int, ...]) -> list[int]:
    out = []
    for n in reversed(shape):
        i, r = divmod(i, n)
        out.append(r)
    return out[::-1]


def _flatten(idx, shape, where) -> int:
    flat = 0
    for i, n in zip(idx, shape):
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n:
            raise ManifestError(f"index {i!r} out of range 0..{n - 1}", where)
        flat = flat * n + i
    return flat


def _field_of(obj) -> Field:
    if isinstance(obj, FinHopf):
        return obj.field
    if isinstance(obj, (FiniteGroup, GroupCrossedModule, GroupCrossedSquare)):
        return QQ
    for attr in ("B", "L", "H", "acting", "dom", "graph", "base", "A1"):
        x = getattr(obj, attr, None)
        if x is not None:
            return _field_of(x)
    raise TypeError("cannot determine the field")


def to_manifest(obj) -> dict:
    field = _field_of(obj)
    w = _Writer(field)
    payload = w.payload(obj)
    return {"schema_version": SCHEMA_VERSION, "kind": kind_of(obj), "field": field_tag(field),
            "objects": w.objects, "payload": payload}


def dumps(obj) -> str:
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(to_manifest(obj), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def save(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


# -- reading -----------------------------------------------------------------------------


class _Reader:
    def __init__(self, doc: dict, base_dir: str, cache: dict, where: str):
        self.where = where
        if not isinstance(doc, dict):
            raise ManifestError("manifest must be a JSON object", where)
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ManifestError(f"unsupported schema_version {version!r}", f"{where}.schema_version")
        try:
            self.field = field_from_name(str(doc.get("field", "q")))
        except ValueError as e:
            raise ManifestError(str(e), f"{where}.field") from None
        self.kind = doc.get("kind")
        if self.kind not in KINDS:
            raise ManifestError(f"unknown kind {self.kind!r}", f"{where}.kind")
        self.doc = doc
        self.objects = doc.get("objects", {})
        if not isinstance(self.objects, dict):
            raise ManifestError("objects must be a mapping", f"{where}.objects")
        self.base_dir = base_dir
        self.cache = cache
        self.built: dict[str, Any] = {}
        self._busy: set[str] = set()

    def scalar(self, s, where):
        if not isinstance(s, str):
            raise ManifestError(f"scalar must be a string, got {s!r}", where)
        try:
            return self.field.parse(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ManifestError(f"bad scalar {s!r}: {e}", where) from None

    def need(self, rec: dict, key: str, where: str):
        if not isinstance(rec, dict) or key not in rec:
            raise ManifestError(f"missing field {key!r}", where)
        return rec[key]

    def columns(self, entries, dom_shape, cod_shape, where) -> dict:
        if not isinstance(entries, list):
            raise ManifestError("expected a list of entries", where)
        cols: dict[int, dict] = {}
        nd = len(dom_shape)
        for j, e in enumerate(entries):
            loc = f"{where}[{j}]"
            if not isinstance(e, list) or len(e) != nd + len(cod_shape) + 1:
                raise ManifestError(f"entry must have {nd + len(cod_shape)} indices and a scalar", loc)
            i = _flatten(e[:nd], dom_shape, loc)
            k = _flatten(e[nd:-1], cod_shape, loc)
            c = self.scalar(e[-1], loc)
            col = cols.setdefault(i, {})
            if k in col:
                raise ManifestError("duplicate entry", loc)
            if c:
                col[k] = c
        return cols

    def linmap(self, entries, dom_shape, cod_shape, where) -> LinMap:
        dom, cod = 1, 1
        for n in dom_shape:
            dom *= n
        for n in cod_shape:
            cod *= n
        cols = self.columns(entries, dom_shape, cod_shape, where)
        return LinMap(dom, cod, columns={i: cols.get(i, {}) for i in range(dom)})

    # references

    def resolve(self, ref, where: str, want: str):
        if isinstance(ref, dict):
            return self.record(ref, where, want)
        if not isinstance(ref, str) or not ref:
            raise ManifestError(f"expected a reference to a {want}", where)
        if ref.startswith("#"):
            name = ref[1:]
            if name in self.built:
                obj = self.built[name]
            else:
                if name not in self.objects:
                    raise ManifestError(f"unresolved reference {ref!r}", where)
                if name in self._busy:
                    raise ManifestError(f"cyclic reference {ref!r}", where)
                self._busy.add(name)
                obj = self.record(self.objects[name], f"{self.where}.objects.{name}", want)
                self._busy.discard(name)
                self.built[name] = obj
        else:
            obj = load(os.path.join(self.base_dir, ref), self.cache)
        if kind_of(obj) != want:
            raise ManifestError(f"reference {ref!r} is a {kind_of(obj)}, expected a {want}", where)
        return obj

    def record(self, rec, where: str, want: str | None = None):
        if not isinstance(rec, dict):
            raise ManifestError("expected an object record", where)
        typ = rec.get("type")
        if want is not None and typ not in (want, None) and not (typ in ("hopf", "group") and "ref" in rec):
            raise ManifestError(f"expected a {want}, found {typ!r}", where)
        typ = typ or want
        if "ref" in rec and typ in ("hopf", "group"):
            return self.resolve(rec["ref"], f"{where}.ref", typ)
        try:
            build = getattr(self, "_" + typ.replace("2action", "twoaction"))
        except (AttributeError, TypeError):
            raise ManifestError(f"unknown record type {typ!r}", where) from None
        return build(rec, where)

    # builders

    def _hopf(self, rec, where) -> FinHopf:
        n = self.need(rec, "dim", where)
        labels = self.need(rec, "labels", where)
        if not isinstance(n, int) or n < 1 or not isinstance(labels, list) or len(labels) != n:
            raise ManifestError("dim must be positive and match labels", where)
        unit = Vec(n, self.columns([[0, *e] for e in self.need(rec, "unit", where)], (1,), (n,),
                                   f"{where}.unit").get(0, {}))
        counit_cols = self.columns([[e[0], 0, e[1]] if isinstance(e, list) and len(e) == 2 else e
                                    for e in self.need(rec, "counit", where)], (n,), (1,), f"{where}.counit")
        try:
            return FinHopf(self.field, [str(x) for x in labels],
                           self.linmap(self.need(rec, "mult", where), (n, n), (n,), f"{where}.mult"), unit,
                           self.linmap(self.need(rec, "comult", where), (n,), (n, n), f"{where}.comult"),
                           LinMap(n, 1, columns={i: counit_cols.get(i, {}) for i in range(n)}),
                           self.linmap(self.need(rec, "antipode", where), (n,), (n,), f"{where}.antipode"),
                           grouplike=rec.get("grouplike"), name=str(rec.get("name", "")))
        except ManifestError:
            raise
        except (ValueError, IndexError) as e:
            raise ManifestError(str(e), where) from None

    def _group(self, rec, where) -> FiniteGroup:
        try:
            return FiniteGroup(tuple(self.need(rec, "labels", where)),
                               tuple(tuple(r) for r in self.need(rec, "table", where)),
                               rec.get("identity", 0))
        except ManifestError:
            raise
        except (ValueError, TypeError) as e:
            raise ManifestError(str(e), where) from None

    def _morphism(self, rec, where) -> HopfMorphism:
        A = self.resolve(self.need(rec, "dom", where), f"{where}.dom", "hopf")
        B = self.resolve(self.need(rec, "cod", where), f"{where}.cod", "hopf")
        f = self.linmap(self.need(rec, "matrix", where), (A.dim,), (B.dim,), f"{where}.matrix")
        return HopfMorphism(A, B, f, str(rec.get("name", "")))

    def _action(self, rec, where) -> HopfAction:
        B = self.resolve(self.need(rec, "acting", where), f"{where}.acting", "hopf")
        X = self.resolve(self.need(rec, "acted", where), f"{where}.acted", "hopf")
        xi = self.linmap(self.need(rec, "act", where), (B.dim, X.dim), (X.dim,), f"{where}.act")
        return HopfAction(B, X, xi, str(rec.get("name", "")))

    def _check_ends(self, f, dom, cod, where):
        if f.dom is not dom or f.cod is not cod:
            raise ManifestError(f"map goes {f.dom.name} -> {f.cod.name}, expected {dom.name} -> {cod.name}",
                                where)

    def _check_acts(self, a, B, X, where):
        if a.acting is not B or a.acted is not X:
            raise ManifestError(f"action of {a.acting.name} on {a.acted.name}, expected {B.name} on {X.name}",
                                where)

    def _corners(self, rec, where, keys="LMNP"):
        return [self.resolve(self.need(rec, k, where), f"{where}.{k}", "hopf") for k in keys]

    def _xmod(self, rec, where) -> CrossedModule:
        B, X = self._corners(rec, where, "BX")
        d = self.record(self.need(rec, "d", where), f"{where}.d", "morphism")
        act = self.record(self.need(rec, "act", where), f"{where}.act", "action")
        self._check_ends(d, X, B, f"{where}.d")
        self._check_acts(act, B, X, f"{where}.act")
        return CrossedModule(B, X, d, act, name=str(rec.get("name", "")))

    def _cat1(self, rec, where) -> Cat1:
        A1, A0 = self._corners(rec, where, ("A1", "A0"))
        maps = {k: self.record(self.need(rec, k, where), f"{where}.{k}", "morphism")
                for k in ("delta", "gamma", "iota")}
        for k, (dom, cod) in (("delta", (A1, A0)), ("gamma", (A1, A0)), ("iota", (A0, A1))):
            self._check_ends(maps[k], dom, cod, f"{where}.{k}")
        return Cat1(ReflexiveGraph(A1, A0, maps["delta"], maps["gamma"], maps["iota"]),
                    name=str(rec.get("name", "")))

    def _pairing(self, rec, where, L, M, N) -> LinMap:
        return self.linmap(self.need(rec, "h", where), (M.dim, N.dim), (L.dim,), f"{where}.h")

    def _square(self, rec, where) -> CrossedSquare:
        L, M, N, P = self._corners(rec, where)
        maps = {k: self.record(self.need(rec, k, where), f"{where}.{k}", "morphism")
                for k in ("lam", "lamp", "mu", "nu")}
        for k, (dom, cod) in (("lam", (L, M)), ("lamp", (L, N)), ("mu", (M, P)), ("nu", (N, P))):
            self._check_ends(maps[k], dom, cod, f"{where}.{k}")
        acts = {k: self.record(self.need(rec, k, where), f"{where}.{k}", "action")
                for k in ("actPL", "actPM", "actPN")}
        for k, X in (("actPL", L), ("actPM", M), ("actPN", N)):
            self._check_acts(acts[k], P, X, f"{where}.{k}")
        return CrossedSquare(L, M, N, P, maps["lam"], maps["lamp"], maps["mu"], maps["nu"], acts["actPL"],
                             acts["actPM"], acts["actPN"], self._pairing(rec, where, L, M, N),
                             name=str(rec.get("name", "")))

    def _twoaction(self, rec, where) -> Hopf2Action:
        L, M, N, P = self._corners(rec, where)
        acts = {k: self.record(self.need(rec, k, where), f"{where}.{k}", "action")
                for k in ("actPL", "actPM", "actPN", "actML", "actNL")}
        for k, (B, X) in (("actPL", (P, L)), ("actPM", (P, M)), ("actPN", (P, N)), ("actML", (M, L)),
                          ("actNL", (N, L))):
            self._check_acts(acts[k], B, X, f"{where}.{k}")
        return Hopf2Action(L, M, N, P, *(acts[k] for k in ("actPL", "actPM", "actPN", "actML", "actNL")),
                           self._pairing(rec, where, L, M, N), name=str(rec.get("name", "")))

    def _pt2(self, rec, where) -> SplitEpi2:
        H, N, M = self._corners(rec, where, "HNM")
        maps = {k: self.record(self.need(rec, k, where), f"{where}.{k}", "morphism")
                for k in ("iN", "iM", "sN", "sM")}
        for k, (dom, cod) in (("iN", (N, H)), ("iM", (M, H)), ("sN", (H, N)), ("sM", (H, M))):
            self._check_ends(maps[k], dom, cod, f"{where}.{k}")
        return SplitEpi2(H, N, M, maps["iN"], maps["iM"], maps["sN"], maps["sM"], name=str(rec.get("name", "")))

    def _cat2(self, rec, where) -> Cat2:
        base = self._pt2(rec, where)
        tN = self.record(self.need(rec, "tN", where), f"{where}.tN", "morphism")
        tM = self.record(self.need(rec, "tM", where), f"{where}.tM", "morphism")
        self._check_ends(tN, base.H, base.N, f"{where}.tN")
        self._check_ends(tM, base.H, base.M, f"{where}.tM")
        return Cat2(base, tN, tM, name=str(rec.get("name", "")))

    def _table(self, rec, key, rows, cols, where):
        t = self.need(rec, key, where)
        try:
            t = tuple(tuple(r) for r in t) if rows is not None else tuple(t)
        except TypeError:
            raise ManifestError("malformed table", f"{where}.{key}") from None
        flat = [x for r in t for x in r] if rows is not None else list(t)
        if (rows is not None and (len(t) != rows or any(len(r) != len(t[0]) for r in t))) or \
                any(not isinstance(x, int) or not 0 <= x < cols for x in flat):
            raise ManifestError("table has the wrong shape or entries out of range", f"{where}.{key}")
        return t

    def _group_xmod(self, rec, where) -> GroupCrossedModule:
        B = self.resolve(self.need(rec, "B", where), f"{where}.B", "group")
        X = self.resolve(self.need(rec, "X", where), f"{where}.X", "group")
        return GroupCrossedModule(B, X, self._table(rec, "d", None, B.order, where),
                                  self._table(rec, "act", B.order, X.order, where))

    def _group_square(self, rec, where) -> GroupCrossedSquare:
        L, M, N, P = (self.resolve(self.need(rec, k, where), f"{where}.{k}", "group") for k in "LMNP")
        t = self._table
        return GroupCrossedSquare(L, M, N, P, t(rec, "lam", None, M.order, where),
                                  t(rec, "lamp", None, N.order, where), t(rec, "mu", None, P.order, where),
                                  t(rec, "nu", None, P.order, where), t(rec, "actPL", P.order, L.order, where),
                                  t(rec, "actPM", P.order, M.order, where),
                                  t(rec, "actPN", P.order, N.order, where), t(rec, "h", M.order, L.order, where))

    def payload(self):
        rec = self.need(self.doc, "payload", self.where)
        obj = self.record(rec, f"{self.where}.payload", self.kind)
        if kind_of(obj) != self.kind:
            raise ManifestError(f"payload is a {kind_of(obj)}, manifest says {self.kind}", self.where)
        return obj


def loads(text: str, base_dir: str = ".", where: str = "<string>", cache: dict | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ManifestError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", where) from None
    return _Reader(doc, base_dir, {} if cache is None else cache, where).payload()


def load(path: str, cache: dict | None = None):
    """Parse a manifest file; referenced files are loaded once per ``cache``."""
    cache = {} if cache is None else cache
    key = os.path.realpath(path)
    if key in cache:
        if cache[key] is None:
            raise ManifestError("cyclic file reference", path)
        return cache[key]
    cache[key] = None
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ManifestError(f"cannot read: {e.strerror}", path) from None
    obj = loads(text, os.path.dirname(path) or ".", path, cache)
    cache[key] = obj
    return obj


__all__ = ["KINDS", "ManifestError", "SCHEMA_VERSION", "dumps", "field_tag", "kind_of", "load", "loads",
           "save", "to_manifest"]
