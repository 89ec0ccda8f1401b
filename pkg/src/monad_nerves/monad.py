"""Monads on finite categories and the 2-categories Mnd and Kl built on them.

Conventions: a monad morphism ``(F, xi) : P -> Q`` has ``xi : FP => QF``
with components ``xi_X : F(PX) -> Q(FX)``. A Kleisli 2-cell
``(F, xi) ~> (F', xi')`` is a transformation ``F => QF'``. All composites
are written diagrammatically (first map first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, NamedTuple

from .fincat import (
    ArrowMap,
    FinCat,
    Functor,
    NatTrans,
    arrow_category,
    compose_functors,
    enumerate_functors,
    enumerate_nattrans,
    identity_functor,
    validate_category,
    validate_functor,
)
from .report import Budget, Violation


@dataclass(eq=True)
class Monad:
    base: FinCat
    endo: Functor
    unit: NatTrans
    mult: NatTrans
    name: str = field(default="", compare=False)

    def __repr__(self):
        return f"<Monad {self.name or ''} on {self.base!r}>"

    def P(self, x):
        return self.endo.ob_map[x]

    def Pm(self, f):
        return self.endo.mor_map[f]

    def eta(self, x):
        return self.unit.components[x]

    def mu(self, x):
        return self.mult.components[x]


@dataclass(eq=True)
class MonadMorphism:
    dom: Monad
    cod: Monad
    F: Functor
    xi: NatTrans
    name: str = field(default="", compare=False)

    def __repr__(self):
        return f"<MonadMorphism {self.name or ''}>"


@dataclass(eq=True)
class MonadTwoCell:
    dom: MonadMorphism
    cod: MonadMorphism
    alpha: NatTrans


@dataclass(eq=True)
class KlTwoCell:
    dom: MonadMorphism
    cod: MonadMorphism
    alpha: NatTrans


@dataclass(eq=True)
class DistributiveLaw:
    """A transformation ``lam : TP => PT`` between two monads on one base."""

    T: Monad
    P: Monad
    lam: NatTrans

    def as_monad_morphism(self):
        """``(T, lam) : P -> P``."""
        P, T = self.P, self.T
        return MonadMorphism(P, P, T.endo, self.lam, name="(T,lam)")

    def unit_cell(self):
        """eta_T as a monad 2-cell from the identity morphism to (T, lam)."""
        return MonadTwoCell(identity_monad_morphism(self.P), self.as_monad_morphism(), self.T.unit)

    def mult_cell(self):
        """mu_T as a monad 2-cell from (T, lam)(T, lam) to (T, lam)."""
        tl = self.as_monad_morphism()
        return MonadTwoCell(compose_monad_morphisms(tl, tl), tl, self.T.mult)


# -- constructors -----------------------------------------------------------


def identity_monad(c):
    ident = identity_functor(c)
    ids = {x: c.id(x) for x in c.objects}
    return Monad(c, ident, NatTrans(ident, ident, ids), NatTrans(ident, ident, ids), name=f"Id[{c.name}]")


def _thin_arrow(c, x, y):
    hom = c.hom(x, y)
    return hom[0] if hom else None


def closure_monad(poset, closure, name=""):
    """Monad on a thin category from an object map ``closure``.

    Entries that do not exist in the poset (a non-monotone map, a
    non-inflationary unit, ``c(c(x)) > c(x)``) are left out; the validators
    report them as missing components.
    """
    closure = {str(k): str(v) for k, v in closure.items()}
    mor_map = {}
    for f, (x, y) in poset.morphisms.items():
        g = _thin_arrow(poset, closure[x], closure[y])
        if g is not None:
            mor_map[f] = g
    endo = Functor(poset, poset, closure, mor_map, name="c")
    ident = identity_functor(poset)
    twice = compose_functors(endo, endo)
    unit = {x: _thin_arrow(poset, x, closure[x]) for x in poset.objects}
    mult = {x: _thin_arrow(poset, closure[closure[x]], closure[x]) for x in poset.objects}
    return Monad(
        poset,
        endo,
        NatTrans(ident, endo, {x: m for x, m in unit.items() if m is not None}),
        NatTrans(twice, endo, {x: m for x, m in mult.items() if m is not None}),
        name=name,
    )


def identity_monad_morphism(m):
    F = identity_functor(m.base)
    return MonadMorphism(m, m, F, NatTrans(m.endo, m.endo, {x: m.base.id(m.P(x)) for x in m.base.objects}), name="id")


def compose_monad_morphisms(a, b):
    """(F, xi) : P -> Q then (G, phi) : Q -> R is (F;G, G(xi);phi F)."""
    R = b.cod
    d = R.base
    FG = compose_functors(a.F, b.F)
    comps = {
        x: d.compose(b.F.mor(a.xi[x]), b.xi[a.F.ob(x)]) for x in a.dom.base.objects
    }
    return MonadMorphism(
        a.dom, R, FG,
        NatTrans(compose_functors(a.dom.endo, FG), compose_functors(FG, R.endo), comps),
        name=f"{a.name};{b.name}" if a.name and b.name else "",
    )


def underlying_morphism(F, Q):
    """The monad morphism (F, eta_Q F) out of the identity monad on dom(F)."""
    src = identity_monad(F.dom)
    return MonadMorphism(
        src, Q, F, NatTrans(F, compose_functors(F, Q.endo), {x: Q.eta(F.ob(x)) for x in F.dom.objects}),
        name="und",
    )


def unit_monad_morphism(m):
    """(1, eta) : (1, C) -> (P, C)."""
    ident = identity_functor(m.base)
    return MonadMorphism(identity_monad(m.base), m, ident, NatTrans(ident, m.endo, m.unit.components), name="(1,eta)")


def mult_monad_morphism(m):
    """(P, mu) : (P, C) -> (1, C)."""
    twice = compose_functors(m.endo, m.endo)
    return MonadMorphism(m, identity_monad(m.base), m.endo, NatTrans(twice, m.endo, m.mult.components), name="(P,mu)")


class KleisliArrow(NamedTuple):
    """A morphism X -> Y of a Kleisli category: ``arrow : X -> PY``."""

    arrow: Hashable
    tgt: Hashable


def kleisli_category(m):
    c = m.base
    morphisms = {}
    for x in c.objects:
        for y in c.objects:
            for f in c.hom(x, m.P(y)):
                morphisms[KleisliArrow(f, y)] = (x, y)
    composition = {}
    for k, (x, y) in morphisms.items():
        for l, (w, z) in morphisms.items():
            if w == y:
                composition[k, l] = KleisliArrow(c.then(k.arrow, m.Pm(l.arrow), m.mu(z)), z)
    identities = {x: KleisliArrow(m.eta(x), x) for x in c.objects}
    return FinCat(c.objects, morphisms, identities, composition, name=f"{c.name}_kl")


def arrow_monad(m):
    """The monad [2, P] acting componentwise on the arrow category."""
    c = m.base
    A = arrow_category(c)
    P = m.Pm
    ob_map = {f: P(f) for f in A.objects}
    mor_map = {s: ArrowMap(P(s.dom), P(s.cod), P(s.on_src), P(s.on_tgt)) for s in A.morphisms}
    endo = Functor(A, A, ob_map, mor_map, name="[2,P]")
    unit = {f: ArrowMap(f, P(f), m.eta(c.src(f)), m.eta(c.tgt(f))) for f in A.objects}
    mult = {f: ArrowMap(P(P(f)), P(f), m.mu(c.src(f)), m.mu(c.tgt(f))) for f in A.objects}
    ident = identity_functor(A)
    return Monad(
        A, endo, NatTrans(ident, endo, unit), NatTrans(compose_functors(endo, endo), endo, mult),
        name=f"[2,{m.name}]",
    )


# -- validation -------------------------------------------------------------


def _components(label, comps, category, objects, boundary):
    """Structural check of a family of components against expected boundaries."""
    out = []
    for x in objects:
        want = boundary(x)
        if x not in comps:
            out.append(Violation(f"missing {label} component", (x,), f"expected {want[0]!r} -> {want[1]!r}", True))
        elif comps[x] not in category.morphisms:
            out.append(Violation(f"unknown {label} component", (x, comps[x]), "", True))
        elif category.morphisms[comps[x]] != want:
            out.append(Violation(
                f"{label} component boundary", (x,),
                f"{comps[x]!r} : {category.morphisms[comps[x]]}, expected {want}", True,
            ))
    return out


def _naturality(label, comps, F, G, c, d):
    out = []
    for f, (x, y) in c.morphisms.items():
        lhs = d.compose(F(f), comps[y])
        rhs = d.compose(comps[x], G(f))
        if lhs != rhs:
            out.append(Violation(f"{label} naturality", (f,), f"{lhs!r} != {rhs!r}"))
    return out


def _functor_shape(label, F, dom, cod):
    out = []
    if F.dom is not dom and F.dom != dom or F.cod is not cod and F.cod != cod:
        out.append(Violation(f"{label} shape", (), "functor has the wrong domain or codomain", True))
    for v in validate_functor(F):
        out.append(Violation(f"{label} {v.law}", v.instance, v.detail, True))
    return out


def validate_monad(m):
    """Unit triangles and associativity square, at every object."""
    c = m.base
    out = [Violation(f"base {v.law}", v.instance, v.detail, True) for v in validate_category(c)]
    if out:
        return out
    out = _functor_shape("endo", m.endo, c, c)
    if out:
        return out
    P, Pm = m.P, m.Pm
    out += _components("unit", m.unit.components, c, c.objects, lambda x: (x, P(x)))
    out += _components("mult", m.mult.components, c, c.objects, lambda x: (P(P(x)), P(x)))
    if out:
        return out
    eta, mu = m.eta, m.mu
    out += _naturality("unit", m.unit.components, lambda f: f, Pm, c, c)
    out += _naturality("mult", m.mult.components, lambda f: Pm(Pm(f)), Pm, c, c)
    for x in c.objects:
        idp = c.id(P(x))
        lhs = c.compose(eta(P(x)), mu(x))
        if lhs != idp:
            out.append(Violation("left unit", (x,), f"eta_P;mu = {lhs!r}"))
        rhs = c.compose(Pm(eta(x)), mu(x))
        if rhs != idp:
            out.append(Violation("right unit", (x,), f"P(eta);mu = {rhs!r}"))
        a, b = c.compose(mu(P(x)), mu(x)), c.compose(Pm(mu(x)), mu(x))
        if a != b:
            out.append(Violation("associativity", (x,), f"mu_P;mu = {a!r}, P(mu);mu = {b!r}"))
    return out


def _monads_ok(label, *monads):
    out = []
    for i, m in enumerate(monads):
        for v in validate_monad(m):
            out.append(Violation(f"{label}[{i}] {v.law}", v.instance, v.detail, True))
    return out


def validate_monad_morphism(mm, check_monads=True):
    """Naturality of xi, the unit triangle and the pentagon, at every object.

    ``check_monads=False`` skips re-validating the two monads, for callers
    that have already done so.
    """
    P, Q, F = mm.dom, mm.cod, mm.F
    c, d = P.base, Q.base
    out = _monads_ok("monad", P, Q) if check_monads else []
    if out:
        return out
    out = _functor_shape("F", F, c, d)
    if out:
        return out
    comps = mm.xi.components
    out = _components("xi", comps, d, c.objects, lambda x: (F.ob(P.P(x)), Q.P(F.ob(x))))
    if out:
        return out
    out += _naturality("xi", comps, lambda f: F.mor(P.Pm(f)), lambda f: Q.Pm(F.mor(f)), c, d)
    for x in c.objects:
        lhs = d.compose(F.mor(P.eta(x)), comps[x])
        if lhs != Q.eta(F.ob(x)):
            out.append(Violation("triangle", (x,), f"F(eta);xi = {lhs!r}, eta_Q F = {Q.eta(F.ob(x))!r}"))
        lhs = d.compose(F.mor(P.mu(x)), comps[x])
        rhs = d.then(comps[P.P(x)], Q.Pm(comps[x]), Q.mu(F.ob(x)))
        if lhs != rhs:
            out.append(Violation("pentagon", (x,), f"F(mu);xi = {lhs!r}, xi_P;Q(xi);mu_Q = {rhs!r}"))
    return out


def _parallel(a, b, check_morphisms=True):
    out = []
    if not (a.dom is b.dom or a.dom == b.dom) or not (a.cod is b.cod or a.cod == b.cod):
        out.append(Violation("shape", (), "monad morphisms are not parallel", True))
    if not check_morphisms:
        return out
    for label, mm in (("dom", a), ("cod", b)):
        for v in validate_monad_morphism(mm):
            out.append(Violation(f"{label} morphism {v.law}", v.instance, v.detail, True))
    return out


def validate_monad_2cell(cell):
    """alpha : F => F' natural with xi;Q(alpha) = alpha_P;xi'."""
    a, b = cell.dom, cell.cod
    out = _parallel(a, b)
    if out:
        return out
    P, Q = a.dom, a.cod
    c, d = P.base, Q.base
    F, G = a.F, b.F
    comps = cell.alpha.components
    out = _components("alpha", comps, d, c.objects, lambda x: (F.ob(x), G.ob(x)))
    if out:
        return out
    out += _naturality("alpha", comps, F.mor, G.mor, c, d)
    for x in c.objects:
        lhs = d.compose(a.xi[x], Q.Pm(comps[x]))
        rhs = d.compose(comps[P.P(x)], b.xi[x])
        if lhs != rhs:
            out.append(Violation("compatibility", (x,), f"xi;Q(alpha) = {lhs!r}, alpha_P;xi' = {rhs!r}"))
    return out


def validate_kl_2cell(cell, check_morphisms=True):
    """alpha : F => QF' natural and satisfying the Kleisli 2-cell condition.

    ``check_morphisms=False`` trusts the two monad morphisms.
    """
    a, b = cell.dom, cell.cod
    out = _parallel(a, b, check_morphisms)
    if out:
        return out
    P, Q = a.dom, a.cod
    c, d = P.base, Q.base
    F, G = a.F, b.F
    comps = cell.alpha.components
    out = _components("alpha", comps, d, c.objects, lambda x: (F.ob(x), Q.P(G.ob(x))))
    if out:
        return out
    out += _naturality("alpha", comps, F.mor, lambda f: Q.Pm(G.mor(f)), c, d)
    for x in c.objects:
        mu = Q.mu(G.ob(x))
        lhs = d.then(a.xi[x], Q.Pm(comps[x]), mu)
        rhs = d.then(comps[P.P(x)], Q.Pm(b.xi[x]), mu)
        if lhs != rhs:
            out.append(Violation("klcond", (x,), f"xi;Q(alpha);mu = {lhs!r}, alpha_P;Q(xi');mu = {rhs!r}"))
    return out


def validate_distributive_law(law):
    """The four compatibility equations of ``lam : TP => PT``."""
    T, P = law.T, law.P
    out = _monads_ok("monad", T, P)
    if out:
        return out
    if not (T.base is P.base or T.base == P.base):
        return [Violation("shape", (), "monads live on different categories", True)]
    c = P.base
    comps = law.lam.components
    out = _components("lam", comps, c, c.objects, lambda x: (T.P(P.P(x)), P.P(T.P(x))))
    if out:
        return out
    out += _naturality("lam", comps, lambda f: T.Pm(P.Pm(f)), lambda f: P.Pm(T.Pm(f)), c, c)
    for x in c.objects:
        lhs, rhs = c.compose(T.Pm(P.eta(x)), comps[x]), P.eta(T.P(x))
        if lhs != rhs:
            out.append(Violation("unit of P", (x,), f"T(eta_P);lam = {lhs!r}, eta_P T = {rhs!r}"))
        lhs, rhs = c.compose(T.eta(P.P(x)), comps[x]), P.Pm(T.eta(x))
        if lhs != rhs:
            out.append(Violation("unit of T", (x,), f"eta_T P;lam = {lhs!r}, P(eta_T) = {rhs!r}"))
        lhs = c.compose(T.Pm(P.mu(x)), comps[x])
        rhs = c.then(comps[P.P(x)], P.Pm(comps[x]), P.mu(T.P(x)))
        if lhs != rhs:
            out.append(Violation("mult of P", (x,), f"T(mu_P);lam = {lhs!r}, lam_P;P(lam);mu_P T = {rhs!r}"))
        lhs = c.compose(T.mu(P.P(x)), comps[x])
        rhs = c.then(T.Pm(comps[x]), comps[T.P(x)], P.Pm(T.mu(x)))
        if lhs != rhs:
            out.append(Violation("mult of T", (x,), f"mu_T P;lam = {lhs!r}, T(lam);lam_T;P(mu_T) = {rhs!r}"))
    return out


# -- Kleisli 2-cell algebra -------------------------------------------------


def _kl_nat(a, b, comps):
    Q = a.cod
    return NatTrans(a.F, compose_functors(b.F, Q.endo), comps)


def kl_identity(mm):
    """The identity Kleisli 2-cell eta_Q F on (F, xi)."""
    Q = mm.cod
    return KlTwoCell(mm, mm, _kl_nat(mm, mm, {x: Q.eta(mm.F.ob(x)) for x in mm.dom.base.objects}))


def kl_vcompose(a, b):
    """alpha : (F) ~> (F') then beta : (F') ~> (F''), i.e. alpha;Q(beta);mu F''."""
    if a.cod != b.dom:
        raise ValueError("kl_vcompose: cod(a) != dom(b)")
    Q = a.dom.cod
    d = Q.base
    G = b.cod.F
    comps = {
        x: d.then(a.alpha[x], Q.Pm(b.alpha[x]), Q.mu(G.ob(x))) for x in a.dom.dom.base.objects
    }
    return KlTwoCell(a.dom, b.cod, _kl_nat(a.dom, b.cod, comps))


def kl_hcompose(a, b):
    """Horizontal composite of alpha : P -> Q and beta : Q -> R.

    Component at X is G(alpha_X) ; phi_{F'X} ; R(beta_{F'X}) ; mu_R G'F'X.
    """
    if a.dom.cod != b.dom.dom:
        raise ValueError("kl_hcompose: the cells are not horizontally composable")
    G, phi = b.dom.F, b.dom.xi
    Fp = a.cod.F
    Gp = b.cod.F
    R = b.dom.cod
    e = R.base
    comps = {}
    for x in a.dom.dom.base.objects:
        y = Fp.ob(x)
        comps[x] = e.then(G.mor(a.alpha[x]), phi[y], R.Pm(b.alpha[y]), R.mu(Gp.ob(y)))
    dom = compose_monad_morphisms(a.dom, b.dom)
    cod = compose_monad_morphisms(a.cod, b.cod)
    return KlTwoCell(dom, cod, _kl_nat(dom, cod, comps))


def monad_2cell_as_kl(cell):
    """A monad 2-cell alpha : F => F' viewed as the Kleisli 2-cell alpha;eta_Q F'."""
    Q = cell.dom.cod
    d = Q.base
    G = cell.cod.F
    comps = {x: d.compose(cell.alpha[x], Q.eta(G.ob(x))) for x in cell.dom.dom.base.objects}
    return KlTwoCell(cell.dom, cell.cod, _kl_nat(cell.dom, cell.cod, comps))


# -- enumeration ------------------------------------------------------------


def enumerate_monad_morphisms(P, Q, budget=None):
    """Every monad morphism P -> Q, by brute force over functors and xi."""
    budget = budget or Budget(None)
    c, d = P.base, Q.base
    for F in enumerate_functors(c, d, budget):
        FP = compose_functors(P.endo, F)
        QF = compose_functors(F, Q.endo)
        for xi in enumerate_nattrans(FP, QF, budget):
            mm = MonadMorphism(P, Q, F, xi)
            if not _morphism_laws(mm):
                yield mm


def _morphism_laws(mm):
    """Triangle and pentagon only (shape and naturality already known)."""
    P, Q, F, xi = mm.dom, mm.cod, mm.F, mm.xi
    d = Q.base
    out = []
    for x in P.base.objects:
        if d.compose(F.mor(P.eta(x)), xi[x]) != Q.eta(F.ob(x)):
            out.append(x)
        elif d.compose(F.mor(P.mu(x)), xi[x]) != d.then(xi[P.P(x)], Q.Pm(xi[x]), Q.mu(F.ob(x))):
            out.append(x)
    return out


def enumerate_kl_2cells(a, b, budget=None):
    Q = a.cod
    for alpha in enumerate_nattrans(a.F, compose_functors(b.F, Q.endo), budget):
        cell = KlTwoCell(a, b, alpha)
        if not _klcond(cell):
            yield cell


def _klcond(cell):
    a, b = cell.dom, cell.cod
    P, Q = a.dom, a.cod
    d = Q.base
    bad = []
    for x in P.base.objects:
        mu = Q.mu(b.F.ob(x))
        if d.then(a.xi[x], Q.Pm(cell.alpha[x]), mu) != d.then(cell.alpha[P.P(x)], Q.Pm(b.xi[x]), mu):
            bad.append(x)
    return bad


def enumerate_monad_2cells(a, b, budget=None):
    P, Q = a.dom, a.cod
    d = Q.base
    for alpha in enumerate_nattrans(a.F, b.F, budget):
        # both sides of the 2-cell equation are parallel, so thin bases need no check
        if d.is_thin() or all(
            d.compose(a.xi[x], Q.Pm(alpha[x])) == d.compose(alpha[P.P(x)], b.xi[x])
            for x in P.base.objects
        ):
            yield MonadTwoCell(a, b, alpha)


def all_monad_2cells(morphisms, budget=None):
    """Yield every monad 2-cell between two of the given parallel morphisms.

    Order is that of the pairs ``(a, b)`` in ``morphisms x morphisms``.  On a
    thin codomain a 2-cell exists exactly when every ``F_a(x) -> F_b(x)``
    hom is inhabited, so candidates for ``b`` are found with bitmask
    intersections instead of one search per pair.
    """
    morphisms = list(morphisms)
    if not morphisms:
        return
    budget = budget or Budget(None)
    d = morphisms[0].cod.base
    if not d.is_thin():
        for a in morphisms:
            for b in morphisms:
                yield from enumerate_monad_2cells(a, b, budget)
        return
    objects = morphisms[0].dom.base.objects
    # reach[x][u]: bitmask of the morphisms b with an arrow u -> F_b(x)
    reach = {x: {u: 0 for u in d.objects} for x in objects}
    for i, b in enumerate(morphisms):
        for x in objects:
            v = b.F.ob(x)
            for u in d.objects:
                if d.hom(u, v):
                    reach[x][u] |= 1 << i
    for a in morphisms:
        mask = (1 << len(morphisms)) - 1
        for x in objects:
            budget.spend()
            mask &= reach[x][a.F.ob(x)]
        i = 0
        while mask:
            if mask & 1:
                b = morphisms[i]
                comps = {x: d.hom(a.F.ob(x), b.F.ob(x))[0] for x in objects}
                yield MonadTwoCell(a, b, NatTrans(a.F, b.F, comps))
            mask >>= 1
            i += 1
