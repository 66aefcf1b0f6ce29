"""JSON scenario files: algebras, maps, a descent square, modules and a check plan.

Scalars are integers or ``"p/q"`` strings.  Ring elements are dense
coordinate arrays over the algebra's flat basis; matrices are row-major
arrays of such coordinate arrays.  Loading checks structure and resolves
names; mathematical validity is left to the ``validate`` check so that a
broken algebra is reported instead of refused.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra import CurvedDgaMap, DescentSquare, GradedAlgebra, nodal_square, sq1_square, sq2_square
from .cohesive import CohesiveModule
from .descent.glue import StrictDescentDatum
from .linalg import Field, ModP

__all__ = [
    "SCHEMA_VERSION",
    "CHECK_KINDS",
    "Scenario",
    "ScenarioError",
    "load_scenario",
    "parse_scenario",
    "shipped_scenarios",
    "dump_square",
    "dump_module",
    "dump_datum",
]

SCHEMA_VERSION = 1
FIXTURES = {"SQ1": sq1_square, "SQ2": sq2_square, "NODAL": nodal_square}
CHECK_KINDS = ("validate", "cohom", "restrict", "patch", "atilde", "verify-descent",
               "mayer-vietoris", "p1")


class ScenarioError(ValueError):
    """Malformed scenario; ``path`` is the dotted field path, ``line`` the JSON line if known."""

    def __init__(self, path, msg, line=None, source=None):
        where = source or "<scenario>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {path or '<root>'}: {msg}")
        self.path, self.msg, self.line = path, msg, line


@dataclass
class Scenario:
    name: str
    field: Field
    square: DescentSquare | None = None
    algebras: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    plan: list = field(default_factory=list)
    source: str = "<scenario>"

    def object_names(self):
        """Names of the modules over the square's A (all modules without a square)."""
        A = self.square.A if self.square is not None else None
        return [n for n, E in self.modules.items() if A is None or E.algebra is A]

    def module_list(self, names=None):
        return [self.modules[n] for n in (self.object_names() if names is None else names)]


# -- low-level readers ------------------------------------------------------------


class _Reader:
    def __init__(self, text, source):
        self.text = text
        self.source = source

    def line_of(self, path):
        """Best-effort line of the last key of ``path`` in the raw text."""
        key = str(path).split(".")[-1]
        needle = f'"{key}"'
        for n, line in enumerate(self.text.splitlines(), 1):
            if needle in line:
                return n
        return None

    def fail(self, path, msg):
        raise ScenarioError(path, msg, self.line_of(path), self.source)


def _scalar(rd, fld, x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        rd.fail(path, f"scalar must be an integer or a 'p/q' string, got {x!r}")
    try:
        return fld(x)
    except (ValueError, ZeroDivisionError) as exc:
        rd.fail(path, f"bad scalar {x!r}: {exc}")


def _coords(rd, fld, x, dim, path):
    if not isinstance(x, list) or len(x) != dim:
        rd.fail(path, f"expected a coordinate array of length {dim}")
    out = {}
    for i, c in enumerate(x):
        v = _scalar(rd, fld, c, f"{path}.{i}")
        if v:
            out[i] = v
    return out


def _matrix(rd, A, x, path, shape=None):
    if not isinstance(x, list) or any(not isinstance(r, list) for r in x):
        rd.fail(path, "matrix must be an array of rows")
    if x and len({len(r) for r in x}) != 1:
        rd.fail(path, "ragged matrix")
    if shape is not None and (len(x), len(x[0]) if x else 0) != shape and x:
        rd.fail(path, f"expected shape {shape}, got {(len(x), len(x[0]))}")
    return [[_coords(rd, A.field, e, A.dim, f"{path}.{a}.{b}") for b, e in enumerate(r)]
            for a, r in enumerate(x)]


def _need(rd, obj, key, path, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        rd.fail(f"{path}.{key}" if path else key, "missing field")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        rd.fail(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return v


def _index(rd, x, n, path):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
        rd.fail(path, f"index out of range 0..{n - 1}")
    return x


# -- section readers -------------------------------------------------------------


def _read_algebra(rd, fld, name, node):
    path = f"algebras.{name}"
    labels = _need(rd, node, "labels", path, list)
    if not labels or any(not isinstance(lv, list) for lv in labels):
        rd.fail(f"{path}.labels", "expected a non-empty array of per-degree label arrays")
    dim = sum(len(lv) for lv in labels)
    prods = {}
    for n, t in enumerate(_need(rd, node, "products", path, list)):
        p = f"{path}.products.{n}"
        if not isinstance(t, list) or len(t) != 3:
            rd.fail(p, "expected [leftIndex, rightIndex, resultCoordinates]")
        i, j = _index(rd, t[0], dim, p), _index(rd, t[1], dim, p)
        prods[(i, j)] = _coords(rd, fld, t[2], dim, f"{p}.2")
    unit = _coords(rd, fld, _need(rd, node, "unit", path), dim, f"{path}.unit")
    der = {}
    for n, t in enumerate(node.get("derivation", [])):
        p = f"{path}.derivation.{n}"
        if not isinstance(t, list) or len(t) != 2:
            rd.fail(p, "expected [index, coordinates]")
        der[_index(rd, t[0], dim, p)] = _coords(rd, fld, t[1], dim, f"{p}.1")
    curv = node.get("curvature")
    curv = _coords(rd, fld, curv, dim, f"{path}.curvature") if curv is not None else None
    return GradedAlgebra(fld, labels, prods, unit, der, curv, name=node.get("name", name))


def _read_map(rd, algebras, name, node):
    path = f"maps.{name}"
    src = _ref(rd, algebras, _need(rd, node, "source", path), f"{path}.source")
    tgt = _ref(rd, algebras, _need(rd, node, "target", path), f"{path}.target")
    images = {}
    for n, t in enumerate(_need(rd, node, "images", path, list)):
        p = f"{path}.images.{n}"
        if not isinstance(t, list) or len(t) != 2:
            rd.fail(p, "expected [sourceIndex, targetCoordinates]")
        images[_index(rd, t[0], src.dim, p)] = _coords(rd, tgt.field, t[1], tgt.dim, f"{p}.1")
    om = node.get("omega")
    om = _coords(rd, tgt.field, om, tgt.dim, f"{path}.omega") if om is not None else None
    return CurvedDgaMap(src, tgt, images, om, name=node.get("name", name))


def _ref(rd, table, key, path):
    if not isinstance(key, str) or key not in table:
        rd.fail(path, f"unresolved reference {key!r}")
    return table[key]


def _read_square(rd, fld, sc, node):
    if "fixture" in node:
        fx = node["fixture"]
        if fx not in FIXTURES:
            rd.fail("square.fixture", f"unknown fixture {fx!r} (known: {sorted(FIXTURES)})")
        sq = FIXTURES[fx](fld)
        for nm in "ABCD":
            sc.algebras.setdefault(nm, sq.algebra(nm))
        for nm in "fkgl":
            sc.maps.setdefault(nm, getattr(sq, nm))
        return sq
    parts = {}
    for nm in "ABCD":
        parts[nm] = _ref(rd, sc.algebras, _need(rd, node, nm, "square"), f"square.{nm}")
    for nm in "fkgl":
        parts[nm] = _ref(rd, sc.maps, _need(rd, node, nm, "square"), f"square.{nm}")
    ends = {"f": "AB", "k": "AC", "g": "BD", "l": "CD"}
    for nm, (s, t) in ends.items():
        if parts[nm].source is not parts[s] or parts[nm].target is not parts[t]:
            rd.fail(f"square.{nm}", f"map must go from square.{s} to square.{t}")
    bases = {}
    for nm, idx in _need(rd, node, "bases", "square", dict).items():
        if nm not in "ABCD" or len(nm) != 1:
            rd.fail(f"square.bases.{nm}", "bases are keyed by A, B, C, D")
        bases[nm] = [_index(rd, i, parts[nm].dim, f"square.bases.{nm}") for i in idx]
    return DescentSquare(parts["A"], parts["B"], parts["C"], parts["D"], parts["f"], parts["k"],
                         parts["g"], parts["l"], bases, node.get("name", "square"))


def _read_module(rd, sc, name, node):
    path = f"modules.{name}"
    A = _ref(rd, sc.algebras, _need(rd, node, "algebra", path), f"{path}.algebra")
    idem = {}
    for deg, blk in _need(rd, node, "degrees", path, dict).items():
        try:
            j = int(deg)
        except ValueError:
            rd.fail(f"{path}.degrees.{deg}", "degree keys must be integers")
        size = _need(rd, blk, "size", f"{path}.degrees.{deg}", int)
        e = blk.get("idempotent")
        idem[j] = _matrix(rd, A, e, f"{path}.degrees.{deg}.idempotent", (size, size)) if e is not None \
            else [[dict(A.unit) if a == b else {} for b in range(size)] for a in range(size)]
    omega = {}
    for n, c in enumerate(node.get("connection", [])):
        p = f"{path}.connection.{n}"
        jt, js = _need(rd, c, "target", p, int), _need(rd, c, "source", p, int)
        if jt not in idem or js not in idem:
            rd.fail(p, f"connection block ({jt}, {js}) refers to a degree without generators")
        omega[(jt, js)] = _matrix(rd, A, _need(rd, c, "matrix", p), f"{p}.matrix",
                                  (len(idem[jt]), len(idem[js])))
    try:
        return CohesiveModule(A, idem, omega, node.get("name", name))
    except ValueError as exc:
        rd.fail(path, str(exc))


def _read_datum(rd, sc, name, node):
    path = f"data.{name}"
    if sc.square is None:
        rd.fail(path, "descent data need a square")
    m = _ref(rd, sc.modules, _need(rd, node, "m", path), f"{path}.m")
    n = _ref(rd, sc.modules, _need(rd, node, "n", path), f"{path}.n")
    if m.algebra is not sc.square.B or n.algebra is not sc.square.C:
        rd.fail(path, "m must live over square.B and n over square.C")
    D = sc.square.D
    phi, inv = {}, {}
    for key, out in (("phi", phi), ("phi_inverse", inv)):
        for deg, mat in _need(rd, node, key, path, dict).items():
            j = int(deg)
            out[j] = _matrix(rd, D, mat, f"{path}.{key}.{deg}")
    return StrictDescentDatum(m, n, phi, inv, node.get("name", name))


_PLAN_KEYS = {"check", "name", "objects", "pairs", "window", "count", "max_rank", "twists",
              "truncations", "data", "samples", "degrees"}


def _read_plan(rd, sc, plan):
    out = []
    for n, step in enumerate(plan):
        p = f"plan.{n}"
        kind = _need(rd, step, "check", p, str)
        if kind not in CHECK_KINDS:
            rd.fail(f"{p}.check", f"unknown check {kind!r} (known: {', '.join(CHECK_KINDS)})")
        extra = set(step) - _PLAN_KEYS
        if extra:
            rd.fail(f"{p}.{sorted(extra)[0]}", "unknown plan field")
        for key in ("objects",):
            for nm in step.get(key, []):
                _ref(rd, sc.modules, nm, f"{p}.{key}")
        for pair in step.get("pairs", []) if isinstance(step.get("pairs"), list) else []:
            if not isinstance(pair, list) or len(pair) != 2:
                rd.fail(f"{p}.pairs", "pairs are [source, target] name arrays")
            for nm in pair:
                if nm not in sc.modules and nm not in sc.data:
                    rd.fail(f"{p}.pairs", f"unresolved reference {nm!r}")
        for nm in step.get("data", []):
            _ref(rd, sc.data, nm, f"{p}.data")
        w = step.get("window")
        if w is not None and (not isinstance(w, list) or len(w) != 2 or w[0] > w[1]):
            rd.fail(f"{p}.window", "window is [lo, hi] with lo <= hi")
        if kind != "p1" and kind != "validate" and sc.square is None:
            rd.fail(p, f"check {kind!r} needs a square")
        out.append(dict(step))
    return out


# -- entry points ------------------------------------------------------------------


def parse_scenario(text, source="<scenario>") -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("", f"invalid JSON: {exc.msg} (column {exc.colno})", exc.lineno, source) from exc
    rd = _Reader(text, source)
    if not isinstance(raw, dict):
        rd.fail("", "top level must be an object")
    ver = _need(rd, raw, "version", "")
    if ver != SCHEMA_VERSION:
        rd.fail("version", f"unsupported schema version {ver!r} (this reader knows {SCHEMA_VERSION})")
    try:
        fld = Field.from_tag(raw.get("field", "Q"))
    except ValueError as exc:
        rd.fail("field", str(exc))
    sc = Scenario(raw.get("name", Path(source).stem), fld, source=source)
    for name, node in raw.get("algebras", {}).items():
        sc.algebras[name] = _read_algebra(rd, fld, name, node)
    for name, node in raw.get("maps", {}).items():
        sc.maps[name] = _read_map(rd, sc.algebras, name, node)
    if raw.get("square") is not None:
        sc.square = _read_square(rd, fld, sc, raw["square"])
    for name, node in raw.get("modules", {}).items():
        sc.modules[name] = _read_module(rd, sc, name, node)
    for name, node in raw.get("data", {}).items():
        sc.data[name] = _read_datum(rd, sc, name, node)
    sc.plan = _read_plan(rd, sc, raw.get("plan", []))
    return sc


def shipped_scenarios():
    root = resources.files("milnor_descent") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_scenario(ref) -> Scenario:
    """Load from a path, or by name from the shipped scenarios."""
    p = Path(ref)
    if p.exists():
        return parse_scenario(p.read_text(), str(p))
    name = str(ref)[:-5] if str(ref).endswith(".json") else str(ref)
    res = resources.files("milnor_descent") / "scenarios" / f"{name}.json"
    if not res.is_file():
        raise ScenarioError("", f"no such scenario file or shipped scenario (shipped: "
                                f"{', '.join(shipped_scenarios())})", source=str(ref))
    return parse_scenario(res.read_text(), f"{name}.json")


# -- writers (used to produce the shipped fixtures) ------------------------------------


def _jscalar(x):
    if isinstance(x, ModP):
        return int(x)
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jcoords(A, a):
    z = 0
    return [_jscalar(a[i]) if i in a else z for i in range(A.dim)]


def _jmatrix(A, M):
    return [[_jcoords(A, x) for x in r] for r in M]


def dump_algebra(A):
    out = {"labels": A.labels,
           "unit": _jcoords(A, A.unit),
           "products": [[i, j, _jcoords(A, v)] for (i, j), v in sorted(A.products.items())]}
    if A.derivation:
        out["derivation"] = [[i, _jcoords(A, v)] for i, v in sorted(A.derivation.items())]
    if A.curvature:
        out["curvature"] = _jcoords(A, A.curvature)
    return out


def dump_map(m, names):
    out = {"source": names[id(m.source)], "target": names[id(m.target)],
           "images": [[i, _jcoords(m.target, v)] for i, v in sorted(m.images.items())]}
    if m.omega:
        out["omega"] = _jcoords(m.target, m.omega)
    return out


def dump_square(sq):
    """``(algebras, maps, square)`` sections describing ``sq`` explicitly."""
    names = {id(sq.algebra(nm)): nm for nm in "ABCD"}
    algebras = {nm: dump_algebra(sq.algebra(nm)) for nm in "ABCD"}
    maps = {nm: dump_map(getattr(sq, nm), names) for nm in "fkgl"}
    square = {nm: nm for nm in "ABCDfkgl"}
    square["bases"] = {nm: list(v) for nm, v in sq.bases.items()}
    square["name"] = sq.name
    return algebras, maps, square


def dump_module(E, algebra_name):
    A = E.algebra
    return {"algebra": algebra_name, "name": E.name,
            "degrees": {str(j): {"size": E.size(j), "idempotent": _jmatrix(A, E.e(j))}
                        for j in E.degrees},
            "connection": [{"target": jt, "source": js, "matrix": _jmatrix(A, M)}
                           for (jt, js), M in sorted(E.omega.items())]}


def dump_datum(d, m_name, n_name, D):
    return {"m": m_name, "n": n_name, "name": d.name,
            "phi": {str(j): _jmatrix(D, M) for j, M in sorted(d.phi0.items())},
            "phi_inverse": {str(j): _jmatrix(D, M) for j, M in sorted(d.phi0_inv.items())}}
