"""JSON instance files: ingestion, task execution and export of derived bundles.

Document layout::

    {
      "field": "Q" | "GF(7)",
      "objects": {"V": 2},
      "groups": {"G": {"names": [...], "table": [[...]]}},
      "generators": {"m": {"dom": ["V", "V"], "cod": ["V"], "matrix": [["1", "0", ...], ...]}},
      "declare": [{"kind": "hopf", "name": "H", "group": "S3"}, ...],
      "tasks": [{"check": "hopf", "target": "H"}, {"derive": "G", "target": "R"},
                {"eval": "mu_H o (id[H] x lam_H)"}]
    }

Scalars are strings in canonical form.  Builtin group names (C2, C3, C4,
C2xC2, C6, S3, D4, Q8) may be used wherever a group is expected.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import brace as br
from . import modules as md
from . import projections as pj
from . import rrb as rb
from .dsl import Environment
from .errors import HopfLabError, InstanceError, ParseError, PreconditionError, TypecheckError
from .groups import BUILTIN_GROUPS, GroupTable, builtin
from .hopf import (
    MAPS,
    HopfAlgebraData,
    ModuleData,
    add_hopf,
    check_hopf,
    check_module_structure,
    group_algebra,
)
from .linalg import FieldSpec, Matrix, Morphism, ObjectSig
from .report import Report

KINDS = ("hopf", "module", "skewbrace", "hopfbrace", "rrb", "rrbmodule", "hbrmodule",
         "hopfprojection", "rrbprojection", "hbrprojection")


@dataclass
class Structure:
    kind: str
    name: str
    value: Any
    over: str | None = None


@dataclass
class Instance:
    field: FieldSpec
    objects: dict[str, int]
    groups: dict[str, GroupTable]
    generators: dict[str, Morphism]
    structures: dict[str, Structure]
    tasks: list[dict]

    def get(self, name: str, kind: str | tuple[str, ...], loc: str) -> Structure:
        kinds = (kind,) if isinstance(kind, str) else kind
        s = self.structures.get(name)
        if s is None:
            raise InstanceError(f"unknown structure {name!r}", loc)
        if s.kind not in kinds:
            raise InstanceError(f"{name!r} is a {s.kind}, expected {' or '.join(kinds)}", loc)
        return s

    def env(self, hopf: str | None = None) -> Environment:
        """Generators, plus ``{map}_{name}`` for every Hopf algebra (bare names for ``hopf``)."""
        env = Environment(self.field, dict(self.objects), dict(self.generators))
        hopfs = [s for s in self.structures.values() if s.kind == "hopf"]
        if hopf is None and len(hopfs) == 1:
            hopf = hopfs[0].name
        for s in hopfs:
            add_hopf(env, s.value, s.value.name)
            if s.name == hopf:
                add_hopf(env, s.value, s.value.name, "")
        return env


# ---------------------------------------------------------------------- ingest


def _require(d: dict, key: str, loc: str):
    if key not in d:
        raise InstanceError(f"missing key {key!r}", loc)
    return d[key]


def _group(inst_groups: dict[str, GroupTable], ref, loc: str) -> GroupTable:
    if isinstance(ref, str):
        if ref in inst_groups:
            return inst_groups[ref]
        if ref in BUILTIN_GROUPS:
            return builtin(ref)
        raise InstanceError(f"unknown group {ref!r}", loc)
    raise InstanceError("group references must be names", loc)


def _parse_groups(doc: dict) -> dict[str, GroupTable]:
    out = {}
    for name, spec in doc.get("groups", {}).items():
        loc = f"groups.{name}"
        if isinstance(spec, str):
            out[name] = _group({}, spec, loc)
            continue
        try:
            out[name] = GroupTable(tuple(_require(spec, "names", loc)),
                                   tuple(tuple(r) for r in _require(spec, "table", loc)))
        except HopfLabError as exc:
            raise InstanceError(str(exc), loc) from None
    return out


def _sig(objects: dict[str, int], names, loc: str) -> ObjectSig:
    if names in ("K", None):
        names = []
    if isinstance(names, str):
        names = [names]
    factors = []
    for n in names:
        if n == "K":
            continue
        if n not in objects:
            raise InstanceError(f"unknown object {n!r}", loc)
        factors.append((n, objects[n]))
    return ObjectSig(tuple(factors))


def _parse_matrix(fld: FieldSpec, rows, shape: tuple[int, int], loc: str) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InstanceError("matrix must be a list of rows", loc)
    got = (len(rows), len(rows[0]) if rows else 0)
    if got != shape or any(len(r) != shape[1] for r in rows):
        raise InstanceError(f"dimension mismatch: expected {shape[0]}x{shape[1]}, got "
                            f"{got[0]}x{got[1]}", loc)
    vals = []
    for i, row in enumerate(rows):
        out = []
        for j, s in enumerate(row):
            if not isinstance(s, str):
                raise InstanceError("scalars must be strings", f"{loc}[{i}][{j}]")
            try:
                out.append(fld.parse_scalar(s))
            except HopfLabError as exc:
                raise InstanceError(str(exc), f"{loc}[{i}][{j}]") from None
        vals.append(out)
    if shape[0] == 0 or shape[1] == 0:
        raise InstanceError("empty matrix", loc)
    return Matrix.from_rows(fld, vals)


def _implicit_objects(doc: dict, groups: dict[str, GroupTable], objects: dict[str, int]) -> None:
    for k, d in enumerate(doc.get("declare", [])):
        if isinstance(d, dict) and d.get("kind") == "hopf" and "group" in d:
            loc = f"declare[{k}]"
            name = _require(d, "name", loc)
            dim = _group(groups, d["group"], loc).order
            if objects.get(name, dim) != dim:
                raise InstanceError(f"object {name} declared with dimension {objects[name]}, group has {dim}", loc)
            objects[name] = dim


def ingest_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    try:
        fld = FieldSpec.parse(doc.get("field", "Q"))
    except HopfLabError as exc:
        raise InstanceError(str(exc), "field") from None
    objects = {}
    for name, dim in doc.get("objects", {}).items():
        if not isinstance(dim, int) or dim < 1:
            raise InstanceError("dimension must be a positive integer", f"objects.{name}")
        objects[name] = dim
    groups = _parse_groups(doc)
    _implicit_objects(doc, groups, objects)
    generators = {}
    for name, g in doc.get("generators", {}).items():
        loc = f"generators.{name}"
        dom = _sig(objects, g.get("dom", []), loc + ".dom")
        cod = _sig(objects, g.get("cod", []), loc + ".cod")
        mat = _parse_matrix(fld, _require(g, "matrix", loc), (cod.dim, dom.dim), f"{loc}.matrix")
        generators[name] = Morphism(dom, cod, mat)
    inst = Instance(fld, objects, groups, generators, {}, [])
    for k, d in enumerate(doc.get("declare", [])):
        loc = f"declare[{k}]"
        if not isinstance(d, dict):
            raise InstanceError("declarations must be objects", loc)
        kind = _require(d, "kind", loc)
        name = _require(d, "name", loc)
        if kind not in _BUILDERS:
            raise InstanceError(f"unknown kind {kind!r}", loc)
        if name in inst.structures:
            raise InstanceError(f"duplicate structure name {name!r}", loc)
        try:
            s = _BUILDERS[kind](inst, d, loc)
        except (InstanceError, PreconditionError):
            raise
        except HopfLabError as exc:
            raise InstanceError(str(exc), loc) from None
        inst.structures[name] = s
    tasks = doc.get("tasks", [])
    for k, t in enumerate(tasks):
        _validate_task(inst, t, f"tasks[{k}]")
    inst.tasks = list(tasks)
    return inst


def ingest(path: str | Path) -> Instance:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceError(f"cannot read instance: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return ingest_dict(doc)


# --------------------------------------------------------------- declarations


def _gen(inst: Instance, d: dict, key: str, loc: str, shape: tuple[int, int] | None = None) -> Morphism:
    ref = _require(d, key, loc)
    g = inst.generators.get(ref)
    if g is None:
        raise InstanceError(f"unknown generator {ref!r}", f"{loc}.{key}")
    if shape is not None and g.mat.shape != shape:
        raise InstanceError(f"dimension mismatch: generator {ref!r} is {g.mat.shape[0]}x{g.mat.shape[1]}, "
                            f"expected {shape[0]}x{shape[1]}", f"{loc}.{key}")
    return g


def _build_hopf(inst: Instance, d: dict, loc: str) -> Structure:
    name = d["name"]
    if "group" in d:
        return Structure("hopf", name, group_algebra(_group(inst.groups, d["group"], loc), inst.field, name))
    n = inst.objects.get(d.get("object", name))
    if n is None:
        raise InstanceError(f"carrier object {d.get('object', name)!r} is not declared", loc)
    shapes = {"eta": (n, 1), "mu": (n, n * n), "eps": (1, n), "delta": (n * n, n), "lam": (n, n)}
    maps = {m: _gen(inst, d, m, loc, shapes[m]) for m in MAPS}
    return Structure("hopf", name, HopfAlgebraData(d.get("object", name), **maps))


def _build_module(inst: Instance, d: dict, loc: str) -> Structure:
    over = inst.get(_require(d, "over", loc), "hopf", f"{loc}.over").value
    carrier = _sig(inst.objects, _require(d, "carrier", loc), f"{loc}.carrier")
    flavor = d.get("flavor", "module")
    comod = flavor.startswith("comodule")
    shape = (over.dim * carrier.dim, carrier.dim) if comod else (carrier.dim, over.dim * carrier.dim)
    m = _gen(inst, d, "map", loc, shape)
    structure = inst.get(d["structure"], "hopf", f"{loc}.structure").value if "structure" in d else None
    try:
        data = ModuleData(carrier, m, flavor, structure)
    except HopfLabError as exc:
        raise InstanceError(str(exc), loc) from None
    return Structure("module", d["name"], data, d["over"])


def _build_skewbrace(inst: Instance, d: dict, loc: str) -> Structure:
    if "group" in d:
        g = _group(inst.groups, d["group"], loc)
        preset = d.get("preset", "trivial")
        if preset not in ("trivial", "opposite"):
            raise InstanceError("preset must be 'trivial' or 'opposite'", f"{loc}.preset")
        return Structure("skewbrace", d["name"], br.trivial_brace(g) if preset == "trivial" else br.opposite_brace(g))
    star = _group(inst.groups, _require(d, "star", loc), f"{loc}.star")
    circ = _group(inst.groups, _require(d, "circ", loc), f"{loc}.circ")
    return Structure("skewbrace", d["name"], br.SkewBrace(star, circ))


def _build_hopfbrace(inst: Instance, d: dict, loc: str) -> Structure:
    name = d["name"]
    if "skewbrace" in d:
        sb = inst.get(d["skewbrace"], "skewbrace", f"{loc}.skewbrace").value
        return Structure("hopfbrace", name, br.linearize_skew_brace(sb, inst.field, name))
    first = inst.get(_require(d, "first", loc), "hopf", f"{loc}.first").value
    n = first.dim
    second = first.replace(mu=_gen(inst, d, "mu2", loc, (n, n * n)), lam=_gen(inst, d, "lam2", loc, (n, n)))
    return Structure("hopfbrace", name, br.HopfBraceData(first, second))


def _build_rrb(inst: Instance, d: dict, loc: str) -> Structure:
    preset = d.get("preset")
    if preset == "goncharov":
        h = inst.get(_require(d, "H", loc), "hopf", f"{loc}.H").value
        return Structure("rrb", d["name"], rb.goncharov_rrb(h))
    if preset == "unit":
        return Structure("rrb", d["name"], rb.unit_rrb(inst.field))
    if preset == "F":
        hb = inst.get(_require(d, "brace", loc), "hopfbrace", f"{loc}.brace").value
        return Structure("rrb", d["name"], rb.functor_F(hb))
    if preset is not None:
        raise InstanceError(f"unknown rrb preset {preset!r}", f"{loc}.preset")
    H = inst.get(_require(d, "H", loc), "hopf", f"{loc}.H").value
    B = inst.get(_require(d, "B", loc), "hopf", f"{loc}.B").value
    T = _gen(inst, d, "T", loc, (B.dim, H.dim))
    phi = _gen(inst, d, "phi", loc, (H.dim, B.dim * H.dim))
    return Structure("rrb", d["name"], rb.RelRotaBaxterData(H, B, T, phi))


def _build_rrbmodule(inst: Instance, d: dict, loc: str) -> Structure:
    over_name = _require(d, "over", loc)
    r = inst.get(over_name, "rrb", f"{loc}.over").value
    preset = d.get("preset")
    if preset == "regular":
        return Structure("rrbmodule", d["name"], md.reg_module(r), over_name)
    if preset == "trivial":
        return Structure("rrbmodule", d["name"], md.triv_module(r), over_name)
    if preset is not None:
        raise InstanceError(f"unknown rrbmodule preset {preset!r}", f"{loc}.preset")
    M = _sig(inst.objects, _require(d, "M", loc), f"{loc}.M")
    N = _sig(inst.objects, _require(d, "N", loc), f"{loc}.N")
    m, n = M.dim, N.dim
    return Structure("rrbmodule", d["name"], md.RrbModuleData(
        M, N, _gen(inst, d, "phiH", loc, (m, r.H.dim * m)), _gen(inst, d, "phiB", loc, (m, r.B.dim * m)),
        _gen(inst, d, "phiN", loc, (n, r.B.dim * n)), _gen(inst, d, "gamma", loc, (n, m))), over_name)


def _build_hbrmodule(inst: Instance, d: dict, loc: str) -> Structure:
    over_name = _require(d, "over", loc)
    hb = inst.get(over_name, "hopfbrace", f"{loc}.over").value
    preset = d.get("preset")
    if preset == "regular":
        return Structure("hbrmodule", d["name"], md.regular_hbr_module(hb), over_name)
    if preset == "trivial":
        return Structure("hbrmodule", d["name"], md.trivial_hbr_module(hb), over_name)
    if preset is not None:
        raise InstanceError(f"unknown hbrmodule preset {preset!r}", f"{loc}.preset")
    M = _sig(inst.objects, _require(d, "M", loc), f"{loc}.M")
    shape = (M.dim, hb.dim * M.dim)
    return Structure("hbrmodule", d["name"], md.HbrModuleData(
        M, _gen(inst, d, "psi1", loc, shape), _gen(inst, d, "psi2", loc, shape)), over_name)


def _build_hopfprojection(inst: Instance, d: dict, loc: str) -> Structure:
    X = inst.get(_require(d, "X", loc), "hopf", f"{loc}.X").value
    Y = inst.get(_require(d, "Y", loc), "hopf", f"{loc}.Y").value
    return Structure("hopfprojection", d["name"], pj.HopfProjection(
        X, Y, _gen(inst, d, "f", loc, (Y.dim, X.dim)), _gen(inst, d, "g", loc, (X.dim, Y.dim))))


def _build_rrbprojection(inst: Instance, d: dict, loc: str) -> Structure:
    inner = inst.get(_require(d, "inner", loc), "rrb", f"{loc}.inner").value
    outer = inst.get(_require(d, "outer", loc), "rrb", f"{loc}.outer").value
    a, h, b, dd = inner.H.dim, inner.B.dim, outer.H.dim, outer.B.dim
    return Structure("rrbprojection", d["name"], pj.RrbProjection(
        inner, outer, _gen(inst, d, "f", loc, (b, a)), _gen(inst, d, "h", loc, (dd, h)),
        _gen(inst, d, "g", loc, (a, b)), _gen(inst, d, "l", loc, (h, dd))))


def _build_hbrprojection(inst: Instance, d: dict, loc: str) -> Structure:
    inner = inst.get(_require(d, "inner", loc), "hopfbrace", f"{loc}.inner").value
    outer = inst.get(_require(d, "outer", loc), "hopfbrace", f"{loc}.outer").value
    return Structure("hbrprojection", d["name"], pj.HbrProjection(
        inner, outer, _gen(inst, d, "x", loc, (outer.dim, inner.dim)),
        _gen(inst, d, "y", loc, (inner.dim, outer.dim))))


_BUILDERS: dict[str, Callable[[Instance, dict, str], Structure]] = {
    "hopf": _build_hopf,
    "module": _build_module,
    "skewbrace": _build_skewbrace,
    "hopfbrace": _build_hopfbrace,
    "rrb": _build_rrb,
    "rrbmodule": _build_rrbmodule,
    "hbrmodule": _build_hbrmodule,
    "hopfprojection": _build_hopfprojection,
    "rrbprojection": _build_rrbprojection,
    "hbrprojection": _build_hbrprojection,
}


# ---------------------------------------------------------------------- checks


def _over(inst: Instance, s: Structure):
    return inst.structures[s.over].value


# check kind -> (structure kinds accepted, runner)
CHECKS: dict[str, tuple[tuple[str, ...], Callable[[Instance, Structure], Report]]] = {
    "hopf": (("hopf",), lambda i, s: check_hopf(s.value, f"hopf algebra {s.name}")),
    "module": (("module",), lambda i, s: check_module_structure(s.value, _over(i, s))),
    "skewbrace": (("skewbrace",), lambda i, s: br.check_skew_brace(s.value)),
    "braid": (("skewbrace",), lambda i, s: br.check_braid_relation(br.qybe_solution_from_skew_brace(s.value))),
    "hopfbrace": (("hopfbrace",), lambda i, s: br.check_hopf_brace(s.value)),
    "gamma": (("hopfbrace",), lambda i, s: br.check_gamma(s.value)),
    "rrb": (("rrb",), lambda i, s: rb.check_rrb(s.value, f"relative Rota-Baxter operator {s.name}")),
    "rrbmodule": (("rrbmodule",), lambda i, s: md.check_rrb_module(s.value, _over(i, s))),
    "modiso": (("rrbmodule",), lambda i, s: md.modiso_equivalence_check(s.value, _over(i, s))),
    "hbrmodule": (("hbrmodule",), lambda i, s: md.check_hbr_module(s.value, _over(i, s))),
    "hopfprojection": (("hopfprojection",), lambda i, s: pj.check_hopf_projection(s.value)),
    "coinvariants": (("hopfprojection",), lambda i, s: pj.check_coinvariants(pj.coinvariant_package(s.value))),
    "rrbprojection": (("rrbprojection",), lambda i, s: pj.check_rrb_projection(s.value)),
    "induced": (("rrbprojection",), lambda i, s: pj.check_induced_rrb(s.value)),
    "strong": (("rrbprojection",), lambda i, s: pj.check_strong_projection(s.value)),
    "squares": (("rrbprojection", "hbrprojection"), lambda i, s: pj.check_commuting_squares(s.value)),
    "hbrprojection": (("hbrprojection",), lambda i, s: pj.check_hbr_projection(s.value)),
    "bracecoinvariants": (("hbrprojection",), lambda i, s: pj.check_brace_coinvariants(s.value)),
}

# functor -> (source kind, result kind)
FUNCTORS = {
    "F": ("hopfbrace", "rrb"),
    "G": ("rrb", "hopfbrace"),
    "W": ("hbrmodule", "rrbmodule"),
    "U": ("rrbmodule", "hbrmodule"),
    "V": ("hbrmodule", "rrbmodule"),
    "P": ("rrbprojection", "rrb"),
    "P'": ("hbrprojection", "hopfbrace"),
    "Q": ("hbrprojection", "rrbprojection"),
    "R": ("rrbprojection", "hbrprojection"),
    "coinv": ("hopfprojection", "coinvariants"),
}


def _validate_task(inst: Instance, t, loc: str) -> None:
    if not isinstance(t, dict):
        raise InstanceError("tasks must be objects", loc)
    if "check" in t:
        kind = t["check"]
        if kind not in CHECKS:
            raise InstanceError(f"unknown check kind {kind!r}", f"{loc}.check")
        inst.get(_require(t, "target", loc), CHECKS[kind][0], f"{loc}.target")
    elif "derive" in t:
        fn = t["derive"]
        if fn not in FUNCTORS:
            raise InstanceError(f"unknown functor {fn!r}", f"{loc}.derive")
        inst.get(_require(t, "target", loc), FUNCTORS[fn][0], f"{loc}.target")
        if fn == "V":
            inst.get(_require(t, "over", loc), "rrb", f"{loc}.over")
    elif "eval" in t:
        if not isinstance(t["eval"], str):
            raise InstanceError("eval expects an expression string", f"{loc}.eval")
    else:
        raise InstanceError("task needs one of 'check', 'derive', 'eval'", loc)


def task_kind(t: dict) -> str:
    if "check" in t:
        return t["check"]
    return "derive" if "derive" in t else "eval"


def suite(inst: Instance, s: Structure) -> Report:
    """The defining check of a declared structure."""
    return CHECKS[s.kind][1](inst, s)


# ---------------------------------------------------------------------- derive


def derive(inst: Instance, functor: str, target: str, over: str | None = None):
    """Apply a functor to a declared structure; returns ``(kind, value, over_value)``."""
    src_kind, out_kind = FUNCTORS[functor]
    s = inst.get(target, src_kind, "derive.target")
    v = s.value
    if functor == "F":
        return out_kind, rb.functor_F(v), None
    if functor == "G":
        return out_kind, rb.functor_G(v), None
    if functor == "W":
        hb = _over(inst, s)
        return out_kind, md.functor_W(v, hb), rb.functor_F(hb)
    if functor == "U":
        r = _over(inst, s)
        return out_kind, md.functor_U(v, r), rb.functor_G(r)
    if functor == "V":
        r = inst.get(over, "rrb", "derive.over").value
        return out_kind, md.functor_V(v, r), r
    if functor == "P":
        return out_kind, pj.proj_functor_P(v), None
    if functor == "P'":
        return out_kind, pj.brace_coinvariants(v), None
    if functor == "Q":
        return out_kind, pj.proj_functor_Q(v), None
    if functor == "R":
        return out_kind, pj.proj_functor_R(v), None
    return out_kind, pj.coinvariant_package(v), None


def derived_report(kind: str, value, over) -> Report:
    if kind == "rrb":
        return rb.check_rrb(value)
    if kind == "hopfbrace":
        return br.check_hopf_brace(value)
    if kind == "rrbmodule":
        return md.check_rrb_module(value, over)
    if kind == "hbrmodule":
        return md.check_hbr_module(value, over)
    if kind == "rrbprojection":
        return pj.check_rrb_projection(value)
    if kind == "hbrprojection":
        return pj.check_hbr_projection(value)
    return pj.check_coinvariants(value)


# ---------------------------------------------------------------------- export


class Exporter:
    """Accumulates an instance document from bundles; names are made unique."""

    def __init__(self, fld: FieldSpec):
        self.field = fld
        self.objects: dict[str, int] = {}
        self.generators: dict[str, dict] = {}
        self.declare: list[dict] = []
        self.tasks: list[dict] = []
        self._seen: dict[int, str] = {}
        self._names: set[str] = set()

    def _fresh(self, base: str) -> str:
        name, k = base, 2
        while name in self._names or name in self.objects:
            name, k = f"{base}{k}", k + 1
        self._names.add(name)
        return name

    def _object(self, sig: ObjectSig, base: str) -> list[str]:
        if sig.dim == 1:
            return []
        name = self._fresh(base)
        self.objects[name] = sig.dim
        return [name]

    def gen(self, base: str, m: Morphism, dom: list[str], cod: list[str]) -> str:
        name = self._fresh(base)
        self.generators[name] = {"dom": dom, "cod": cod, "matrix": m.mat.literal()}
        return name

    def hopf(self, h: HopfAlgebraData, base: str | None = None) -> str:
        if id(h) in self._seen:
            return self._seen[id(h)]
        name = self._fresh(base or h.name)
        self.objects[name] = h.dim
        sigs = {"eta": ([], [name]), "mu": ([name, name], [name]), "eps": ([name], []),
                "delta": ([name], [name, name]), "lam": ([name], [name])}
        entry = {"kind": "hopf", "name": name}
        for m in MAPS:
            entry[m] = self.gen(f"{name}_{m}", getattr(h, m), *sigs[m])
        self.declare.append(entry)
        self._seen[id(h)] = name
        return name

    def hopfbrace(self, hb: br.HopfBraceData, base: str = "HB") -> str:
        first = self.hopf(hb.first, base + "1")
        name = self._fresh(base)
        self.declare.append({"kind": "hopfbrace", "name": name, "first": first,
                             "mu2": self.gen(f"{name}_mu2", hb.mu2, [first, first], [first]),
                             "lam2": self.gen(f"{name}_lam2", hb.lam2, [first], [first])})
        return name

    def rrb(self, r: rb.RelRotaBaxterData, base: str = "R") -> str:
        h = self.hopf(r.H, base + "H")
        b = self.hopf(r.B, base + "B")
        name = self._fresh(base)
        self.declare.append({"kind": "rrb", "name": name, "H": h, "B": b,
                             "T": self.gen(f"{name}_T", r.T, [h], [b]),
                             "phi": self.gen(f"{name}_phi", r.phi, [b, h], [h])})
        return name

    def rrbmodule(self, m: md.RrbModuleData, over: rb.RelRotaBaxterData, base: str = "M") -> str:
        r = self.rrb(over, base + "R")
        entry = self.declare[-1]
        h, b = entry["H"], entry["B"]
        M = self._object(m.M, base + "M")
        N = self._object(m.N, base + "N")
        name = self._fresh(base)
        self.declare.append({
            "kind": "rrbmodule", "name": name, "over": r, "M": M, "N": N,
            "phiH": self.gen(f"{name}_phiH", m.phiH, [h] + M, M),
            "phiB": self.gen(f"{name}_phiB", m.phiB, [b] + M, M),
            "phiN": self.gen(f"{name}_phiN", m.phiN, [b] + N, N),
            "gamma": self.gen(f"{name}_gamma", m.gamma, M, N)})
        return name

    def hbrmodule(self, m: md.HbrModuleData, over: br.HopfBraceData, base: str = "M") -> str:
        hb = self.hopfbrace(over, base + "HB")
        first = self.declare[-1]["first"]
        M = self._object(m.M, base + "M")
        name = self._fresh(base)
        self.declare.append({
            "kind": "hbrmodule", "name": name, "over": hb, "M": M,
            "psi1": self.gen(f"{name}_psi1", m.psi1, [first] + M, M),
            "psi2": self.gen(f"{name}_psi2", m.psi2, [first] + M, M)})
        return name

    def rrbprojection(self, p: pj.RrbProjection, base: str = "PR") -> str:
        inner = self.rrb(p.inner, base + "in")
        ih, ib = self.declare[-1]["H"], self.declare[-1]["B"]
        outer = self.rrb(p.outer, base + "out")
        oh, ob = self.declare[-1]["H"], self.declare[-1]["B"]
        name = self._fresh(base)
        self.declare.append({
            "kind": "rrbprojection", "name": name, "inner": inner, "outer": outer,
            "f": self.gen(f"{name}_f", p.f, [ih], [oh]), "h": self.gen(f"{name}_h", p.h, [ib], [ob]),
            "g": self.gen(f"{name}_g", p.g, [oh], [ih]), "l": self.gen(f"{name}_l", p.l, [ob], [ib])})
        return name

    def hbrprojection(self, p: pj.HbrProjection, base: str = "HP") -> str:
        inner = self.hopfbrace(p.inner, base + "in")
        i1 = self.declare[-1]["first"]
        outer = self.hopfbrace(p.outer, base + "out")
        o1 = self.declare[-1]["first"]
        name = self._fresh(base)
        self.declare.append({
            "kind": "hbrprojection", "name": name, "inner": inner, "outer": outer,
            "x": self.gen(f"{name}_x", p.x, [i1], [o1]), "y": self.gen(f"{name}_y", p.y, [o1], [i1])})
        return name

    def coinvariants(self, pkg: pj.CoinvariantPackage, base: str = "I") -> str:
        pr = pkg.projection
        x = self.hopf(pr.X, base + "X")
        y = self.hopf(pr.Y, base + "Y")
        name = self.hopf(pkg.hopf(base), base)
        self.declare.append({"kind": "module", "name": self._fresh(f"{name}_action"), "over": x,
                             "carrier": name, "map": self.gen(f"{name}_psi", pkg.psi, [x, name], [name])})
        self.declare.append({"kind": "module", "name": self._fresh(f"{name}_coaction"), "over": x,
                             "carrier": name, "flavor": "comodule",
                             "map": self.gen(f"{name}_rho", pkg.rho, [name], [x, name])})
        self.gen(f"{name}_p", pkg.p, [y], [name])
        self.gen(f"{name}_i", pkg.i, [name], [y])
        return name

    def add(self, kind: str, value, over=None, base: str | None = None) -> str:
        method = getattr(self, kind)
        args = (value, over) if kind in ("rrbmodule", "hbrmodule") else (value,)
        name = method(*args, base) if base else method(*args)
        check = "hopf" if kind == "coinvariants" else kind
        self.tasks.append({"check": check, "target": name})
        return name

    def document(self) -> dict:
        return {"field": self.field.name, "objects": self.objects, "generators": self.generators,
                "declare": self.declare, "tasks": self.tasks}


def export(kind: str, value, fld: FieldSpec, over=None, base: str | None = None) -> dict:
    ex = Exporter(fld)
    ex.add(kind, value, over, base)
    return ex.document()


_STRING_LIST = re.compile(r'\[\s+((?:"[^"]*",?\s*)+)\]')


def dumps(doc: dict) -> str:
    """JSON with one line per matrix row."""
    text = json.dumps(doc, indent=1)
    text = _STRING_LIST.sub(lambda m: "[" + ", ".join(re.findall(r'"[^"]*"', m.group(1))) + "]", text)
    return text + "\n"


# ------------------------------------------------------------------------- run


@dataclass
class TaskRecord:
    index: int
    kind: str
    label: str
    verdict: str  # "pass" | "fail" | "error"
    report: Report | None = None
    output: str | None = None
    error: str | None = None
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out: dict[str, Any] = {"task": self.index, "kind": self.kind, "label": self.label,
                               "verdict": self.verdict}
        if self.report is not None:
            out["report"] = self.report.to_json()
        if self.output is not None:
            out["output"] = self.output
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class RunResult:
    records: list[TaskRecord] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if any(r.verdict == "error" for r in self.records):
            return 2
        return 1 if any(r.verdict == "fail" for r in self.records) else 0

    def render(self, verbose: bool = False, timings: bool = False) -> str:
        lines = []
        for r in self.records:
            head = f"[{r.verdict.upper()}] task {r.index}: {r.label}"
            if timings:
                head += f"  ({r.seconds:.3f}s)"
            lines.append(head)
            if r.report is not None and (verbose or r.verdict != "pass"):
                lines.append(_indent(r.report.render() if verbose else _failures(r.report)))
            if r.output:
                lines.append(_indent(r.output))
            if r.error:
                lines.append(_indent(f"error: {r.error}"))
        n_pass = sum(r.verdict == "pass" for r in self.records)
        lines.append(f"{n_pass}/{len(self.records)} tasks passed")
        return "\n".join(lines)

    def to_json(self, timings: bool = False) -> dict:
        return {"exit_code": self.exit_code, "tasks": [r.to_json(timings) for r in self.records]}


def _indent(text: str) -> str:
    return "\n".join("    " + line for line in text.splitlines())


def _failures(rep: Report) -> str:
    lines = []
    for name, c in rep.failures():
        lines.append(name[: len(name) - len(c.name)] + c.describe(rep.field))
    return "\n".join(lines) or "(no failing checks)"


def format_morphism(m: Morphism) -> str:
    rows = m.mat.literal()
    width = max((len(s) for r in rows for s in r), default=1)
    body = "\n".join("[" + " ".join(s.rjust(width) for s in r) + "]" for r in rows)
    return f"{m.cod} <- {m.dom}  ({m.mat.shape[0]}x{m.mat.shape[1]} over {m.field.name})\n{body}"


def _run_task(inst: Instance, t: dict, out_dir: Path | None) -> tuple[str, Report | None, str | None]:
    if "check" in t:
        kind = t["check"]
        s = inst.structures[t["target"]]
        rep = CHECKS[kind][1](inst, s)
        return ("pass" if rep.passed else "fail"), rep, None
    if "derive" in t:
        fn, target = t["derive"], t["target"]
        s = inst.structures[target]
        pre = suite(inst, s)
        if not pre.passed:
            pre.title = f"input {target} fails its own suite; {fn} not applied"
            return "fail", pre, None
        kind, value, over = derive(inst, fn, target, t.get("over"))
        rep = derived_report(kind, value, over)
        base = t.get("name") or f"{fn.replace(chr(39), 'p')}_{target}"
        doc = export(kind, value, inst.field, over, base)
        text = dumps(doc)
        if t.get("out"):
            path = Path(t["out"])
            if out_dir is not None and not path.is_absolute():
                path = out_dir / path
            path.write_text(text)
            msg = f"wrote {path}"
        else:
            msg = None
        if t.get("register", True):
            over_name = None
            if over is not None:
                over_name = f"{base}_over"
                inst.structures[over_name] = Structure(
                    "rrb" if isinstance(over, rb.RelRotaBaxterData) else "hopfbrace", over_name, over)
            inst.structures.setdefault(base, Structure(kind, base, value, over_name))
        return ("pass" if rep.passed else "fail"), rep, msg
    env = inst.env(t.get("hopf"))
    return "pass", None, format_morphism(env.eval(t["eval"]))


def _label(t: dict) -> str:
    if "check" in t:
        return f"check {t['check']} {t['target']}"
    if "derive" in t:
        return f"derive {t['derive']} {t['target']}"
    return f"eval {t['eval']}"


def run(inst: Instance, only: set[str] | None = None, out_dir: Path | None = None) -> RunResult:
    """Execute tasks in declaration order; ``only`` restricts to the given task kinds."""
    res = RunResult()
    for k, t in enumerate(inst.tasks):
        kind = task_kind(t)
        if only and kind not in only:
            continue
        start = time.perf_counter()
        try:
            verdict, rep, output = _run_task(inst, t, out_dir)
            rec = TaskRecord(k, kind, _label(t), verdict, rep, output)
        except PreconditionError as exc:
            rec = TaskRecord(k, kind, _label(t), "fail", exc.report, error=str(exc))
        except (ParseError, TypecheckError, InstanceError) as exc:
            rec = TaskRecord(k, kind, _label(t), "error", error=str(exc))
        except HopfLabError as exc:
            rec = TaskRecord(k, kind, _label(t), "fail", error=str(exc))
        rec.seconds = time.perf_counter() - start
        res.records.append(rec)
    return res


def structures_equal(kind: str, a, b) -> bool:
    """Entrywise comparison of two bundles of the same kind (used by round-trip tests)."""
    if kind in ("hopf", "hopfbrace", "rrb"):
        return a.same_structure(b)
    if kind in ("rrbmodule", "hbrmodule"):
        return a.same_structure(b)
    if kind == "rrbprojection":
        return (a.inner.same_structure(b.inner) and a.outer.same_structure(b.outer)
                and all(getattr(a, m).mat == getattr(b, m).mat for m in "fhgl"))
    if kind == "hbrprojection":
        return pj.same_hbr_projection(a, b)
    raise HopfLabError(f"no comparison for {kind}")


__all__ = [
    "Instance", "Structure", "ingest", "ingest_dict", "run", "RunResult", "TaskRecord", "derive",
    "export", "Exporter", "dumps", "format_morphism", "CHECKS", "FUNCTORS", "KINDS", "structures_equal",
]
