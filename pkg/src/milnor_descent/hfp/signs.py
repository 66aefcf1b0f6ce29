"""Pick the sign convention of the fiber product by running the dg axioms.

Candidates are tried in a fixed order (differential variant outer,
composition variant inner) and the first one passing the whole suite wins.
"""

from __future__ import annotations

from itertools import islice

from ..checks import ValidationReport
from .core import COMPOSITION_VARIANTS, DIFFERENTIAL_VARIANTS, HfpHomComplex, SignConvention, hfp_compose

__all__ = ["axiom_suite", "select_sign_convention", "candidate_conventions"]


def candidate_conventions():
    return [SignConvention(d[0], c[0]) for d in DIFFERENTIAL_VARIANTS for c in COMPOSITION_VARIANTS]


def _basis_sample(H, degrees, limit):
    out = []
    for i in degrees:
        out.extend(islice(H.basis(i), limit))
    return out


def axiom_suite(objects, degrees=(-1, 0, 1), per_degree=3) -> ValidationReport:
    """d² = 0, Leibniz, associativity and unitality on basis samples.

    All objects must share one context; its current convention is tested.
    """
    ctx = objects[0].ctx
    rep = ValidationReport(f"fiber-product axioms [{ctx.convention.describe()}]")
    homs = {}

    def hom(a, b):
        key = (id(a), id(b))
        if key not in homs:
            homs[key] = HfpHomComplex(a, b)
        return homs[key]

    d2 = None
    for a in objects:
        for b in objects:
            try:
                hom(a, b).complex()
            except ValueError:
                d2 = d2 or (a.name, b.name)
    rep.add("d-squared-zero", d2 is None, d2)
    if d2 is not None:
        return rep

    leib = assoc = unit = None
    for a in objects:
        for b in objects:
            Hab = hom(a, b)
            fs = _basis_sample(Hab, degrees, per_degree)
            for f in fs:
                if unit is None:
                    if hfp_compose(b.identity(), f) != f or hfp_compose(f, a.identity()) != f:
                        unit = (a.name, b.name, f.degree)
            for c in objects:
                Hbc, Hac = hom(b, c), hom(a, c)
                gs = _basis_sample(Hbc, degrees, per_degree)
                for g in gs:
                    for f in fs:
                        gf = hfp_compose(g, f)
                        lhs = Hac.apply_d(gf)
                        sg = g.source.ctx.D.field(-1 if g.degree % 2 else 1)
                        rhs = hfp_compose(Hbc.apply_d(g), f) + \
                            hfp_compose(g, Hab.apply_d(f)).scale(sg)
                        if leib is None and lhs != rhs:
                            leib = (a.name, b.name, c.name, g.degree, f.degree)
                if assoc is None:
                    for e in objects[:2]:
                        hs = _basis_sample(hom(c, e), degrees, 2)
                        for h in hs:
                            for g in gs[:2]:
                                for f in fs[:2]:
                                    if hfp_compose(hfp_compose(h, g), f) != \
                                            hfp_compose(h, hfp_compose(g, f)):
                                        assoc = (a.name, b.name, c.name, e.name)
    rep.add("leibniz", leib is None, leib)
    rep.add("associativity", assoc is None, assoc)
    rep.add("unitality", unit is None, unit)
    return rep


def select_sign_convention(objects, **kw):
    """Return ``(convention, reports)``; convention is None if no candidate passes."""
    ctx = objects[0].ctx
    reports = []
    for conv in candidate_conventions():
        c2 = ctx.with_convention(conv)
        objs = [type(x)(c2, x.m, x.n, x.phi, x.certificate, x.name) for x in objects]
        rep = axiom_suite(objs, **kw)
        reports.append((conv, rep))
        if rep.ok:
            return conv, reports
    return None, reports
