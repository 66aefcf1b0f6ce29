"""Regenerate the shipped scenario files from the fixture constructors.

    python tools/make_scenarios.py [outdir]
"""

import json
import sys
from pathlib import Path

from milnor_descent.algebra import nodal_square, perturb_structure_constant, sq1_square, sq2_square
from milnor_descent.samples import make_rng, object_set, random_strict_datum
from milnor_descent.scenario import SCHEMA_VERSION, dump_algebra, dump_datum, dump_module, dump_square


def base(name, sq, field="Q"):
    algebras, maps, square = dump_square(sq)
    mods = {E.name: dump_module(E, "A") for E in object_set(sq)}
    return {"version": SCHEMA_VERSION, "name": name, "field": field, "algebras": algebras,
            "maps": maps, "square": square, "modules": mods}


def add_datum(sc, sq, seed, name):
    d = random_strict_datum(sq, make_rng(seed), 2, name=name)
    sc["modules"][f"M{name}"] = dump_module(d.m, "B")
    sc["modules"][f"N{name}"] = dump_module(d.n, "C")
    sc.setdefault("data", {})[name] = dump_datum(d, f"M{name}", f"N{name}", sq.D)


def scenarios():
    out = {}
    objs1 = [E.name for E in object_set(sq1_square())]
    sc = base("sq1_descent", sq1_square())
    add_datum(sc, sq1_square(), 11, "d0")
    sc["plan"] = [
        {"check": "validate"},
        {"check": "cohom", "objects": objs1[:4], "window": [-1, 2]},
        {"check": "restrict", "objects": objs1},
        {"check": "patch", "count": 5, "max_rank": 2, "data": ["d0"], "objects": objs1[:4]},
        {"check": "atilde", "objects": objs1, "samples": 4},
        {"check": "verify-descent", "objects": objs1, "window": [-3, 3], "data": ["d0"]},
        {"check": "mayer-vietoris", "objects": objs1, "samples": 3, "window": [-1, 1]},
    ]
    out["sq1_descent"] = sc

    objs2 = [E.name for E in object_set(sq2_square())]
    sc = base("sq2_descent", sq2_square())
    sc["plan"] = [
        {"check": "validate"},
        {"check": "cohom", "objects": objs2[:3], "window": [-1, 2]},
        {"check": "restrict", "objects": objs2},
        {"check": "patch", "objects": objs2[:1]},
        {"check": "atilde", "objects": objs2, "samples": 3},
        {"check": "verify-descent", "objects": objs2, "window": [-3, 3]},
        {"check": "mayer-vietoris", "objects": objs2, "samples": 3, "window": [-1, 1]},
    ]
    out["sq2_descent"] = sc

    objsn = [E.name for E in object_set(nodal_square())]
    sc = base("nodal", nodal_square())
    add_datum(sc, nodal_square(), 5, "d0")
    add_datum(sc, nodal_square(), 6, "d1")
    sc["plan"] = [
        {"check": "validate"},
        {"check": "cohom", "window": [-1, 1]},
        {"check": "restrict"},
        {"check": "patch", "count": 25, "max_rank": 3, "data": ["d0", "d1"], "objects": objsn},
        {"check": "atilde", "samples": 4},
        {"check": "verify-descent", "window": [-3, 3], "data": ["d0", "d1"]},
        {"check": "mayer-vietoris", "samples": 4, "window": [-1, 1]},
    ]
    out["nodal"] = sc

    sq = sq2_square()
    sc = base("perturbed", sq)
    A = sq.A
    one, x = A.index("1"), A.index("x")
    bad = perturb_structure_constant(A, x, x, one, 1)
    sc["algebras"]["A"] = dump_algebra(bad)
    sc["modules"] = {}
    sc["plan"] = [{"check": "validate"}]
    out["perturbed"] = sc

    out["empty"] = {"version": SCHEMA_VERSION, "name": "empty"}
    out["p1"] = {"version": SCHEMA_VERSION, "name": "p1", "field": "Q",
                 "plan": [{"check": "p1", "twists": [[2, 0]], "truncations": [4, 6]},
                          {"check": "p1", "twists": [[0, j] for j in range(5)] + [[j, 0] for j in range(2, 6)],
                           "truncations": [10]}]}
    return out


def main(outdir=None):
    root = Path(outdir or Path(__file__).resolve().parents[1] / "src" / "milnor_descent" / "scenarios")
    root.mkdir(parents=True, exist_ok=True)
    for name, sc in scenarios().items():
        (root / f"{name}.json").write_text(json.dumps(sc, indent=1, ensure_ascii=False) + "\n")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    main(*sys.argv[1:])
