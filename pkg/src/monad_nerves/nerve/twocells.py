"""2-cells of a vertical theory between parallel monad morphisms.

A 2-cell ``(F, xi) ~> (G, xi') : P -> Q`` is, pointwise in X, a cell of Q
from ``FX`` to ``GX``: each component is a natural transformation between
the matching functors (``X`` reads as F, ``Y`` as G). Kleisli components
must also satisfy the Kleisli 2-cell condition, so that the projection to
Kleisli data lands in Kl.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..fincat import NatTrans, compose_functors, enumerate_nattrans, validate_nattrans
from ..monad import compose_monad_morphisms
from ..report import Violation
from .construct import equation_failures, vcompose_cells, whisker
from .theory import Cell


@dataclass(eq=False)
class TheoryTwoCell:
    dom: object
    cod: object
    data: tuple  # one {object: morphism} dict per component

    def at(self, x):
        """The Q-cell ``F x ~> G x``."""
        return Cell(self.dom.F.ob(x), self.cod.F.ob(x), tuple(d[x] for d in self.data))

    def __eq__(self, other):
        if not isinstance(other, TheoryTwoCell):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.data == other.data

    __hash__ = None

    def key(self):
        return tuple(tuple(sorted(map(repr, d.items()))) for d in self.data)


def _from_cells(dom, cod, objects, pointwise, n):
    data = tuple({x: pointwise[x].data[i] for x in objects} for i in range(n))
    return TheoryTwoCell(dom, cod, data)


def _side(comp, a, b):
    return (a if comp.src == "X" else b), (a if comp.tgt == "X" else b)


def _component_nattrans(comp, a, b, comps):
    s, t = _side(comp, a, b)
    cod = compose_functors(t.F, a.cod.endo) if comp.kleisli else t.F
    return NatTrans(s.F, cod, comps)


def _klcond_failures(comp, a, b, comps):
    s, t = _side(comp, a, b)
    P, Q = a.dom, a.cod
    d = Q.base
    bad = []
    for x in P.base.objects:
        mu = Q.mu(t.F.ob(x))
        lhs = d.then(s.xi[x], Q.Pm(comps[x]), mu)
        rhs = d.then(comps[P.P(x)], Q.Pm(t.xi[x]), mu)
        if lhs != rhs:
            bad.append(x)
    return bad


def validate_theory_2cell(theory, cell):
    """Naturality, the theory's equations pointwise, and the Kleisli condition."""
    a, b = cell.dom, cell.cod
    out = []
    for comp, comps in zip(theory.components, cell.data):
        for v in validate_nattrans(_component_nattrans(comp, a, b, comps)):
            out.append(Violation(f"{comp.name}: {v.law}", v.instance, v.detail, v.structural))
    if out:
        return out
    Q = a.cod
    for x in a.dom.base.objects:
        for lhs, rhs, why in equation_failures(theory, Q, cell.at(x)):
            out.append(Violation(f"equation {lhs} = {rhs}", (x,), why))
    for comp, comps in zip(theory.components, cell.data):
        if comp.kleisli:
            for x in _klcond_failures(comp, a, b, comps):
                out.append(Violation(f"{comp.name}: Kleisli 2-cell condition", (x,)))
    return out


def enumerate_theory_2cells(theory, a, b, budget=None):
    options = []
    for comp in theory.components:
        s, t = _side(comp, a, b)
        cod = compose_functors(t.F, a.cod.endo) if comp.kleisli else t.F
        found = []
        for nt in enumerate_nattrans(s.F, cod, budget):
            comps = nt.components
            if comp.kleisli and _klcond_failures(comp, a, b, comps):
                continue
            found.append(comps)
        options.append(found)
    objects = a.dom.base.objects
    for data in product(*options):
        if budget is not None:
            budget.spend()
        cell = TheoryTwoCell(a, b, tuple(data))
        if all(not equation_failures(theory, a.cod, cell.at(x)) for x in objects):
            yield cell


def identity_2cell(theory, mm):
    from .construct import identity_cell

    Q = mm.cod
    objs = mm.dom.base.objects
    pts = {x: identity_cell(theory, Q, mm.F.ob(x)) for x in objs}
    return _from_cells(mm, mm, objs, pts, len(theory.components))


def _compose_mm(a, b, cache):
    if cache is None:
        return compose_monad_morphisms(a, b)
    key = ("mm", id(a), id(b))
    if key not in cache:
        cache[key] = (a, b, compose_monad_morphisms(a, b))
    return cache[key][2]


def _memo(cache, key, fn):
    if cache is None:
        return fn()
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def vcompose_2cells(theory, alpha, beta, cache=None):
    if alpha.cod is not beta.dom and alpha.cod != beta.dom:
        raise ValueError("2-cells are not vertically composable")
    Q = alpha.dom.cod
    objs = alpha.dom.dom.base.objects
    pts = {}
    for x in objs:
        f, g = alpha.at(x), beta.at(x)
        pts[x] = _memo(cache, ("v", id(Q), f, g), lambda: vcompose_cells(theory, Q, f, g))
    return _from_cells(alpha.dom, beta.cod, objs, pts, len(theory.components))


def whisker_right_2cell(theory, alpha, mm, cache=None):
    """alpha : (F) ~> (F') followed by (G, phi) : Q -> R."""
    objs = alpha.dom.dom.base.objects
    pts = {}
    for x in objs:
        f = alpha.at(x)
        pts[x] = _memo(cache, ("w", id(mm), f), lambda: whisker(theory, mm, f))
    return _from_cells(
        _compose_mm(alpha.dom, mm, cache), _compose_mm(alpha.cod, mm, cache),
        objs, pts, len(theory.components),
    )


def whisker_left_2cell(theory, mm, beta, cache=None):
    """(F, xi) : P -> Q followed by beta : (G) ~> (G')."""
    objs = mm.dom.base.objects
    data = tuple({x: d[mm.F.ob(x)] for x in objs} for d in beta.data)
    return TheoryTwoCell(_compose_mm(mm, beta.dom, cache), _compose_mm(mm, beta.cod, cache), data)


def hcompose_2cells(theory, alpha, beta, cache=None):
    """Both whiskering orders; returns the pair so callers can compare them.

    ``cache`` is an optional dict reused across calls to share composite
    monad morphisms and pointwise composites.
    """
    one = vcompose_2cells(
        theory,
        whisker_right_2cell(theory, alpha, beta.dom, cache),
        whisker_left_2cell(theory, alpha.cod, beta, cache),
        cache,
    )
    two = vcompose_2cells(
        theory,
        whisker_left_2cell(theory, alpha.dom, beta, cache),
        whisker_right_2cell(theory, alpha, beta.cod, cache),
        cache,
    )
    return one, two
