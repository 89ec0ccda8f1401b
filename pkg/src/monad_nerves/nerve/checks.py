"""Exhaustive checks of the main theorem's hypotheses and conclusions."""

from __future__ import annotations

from ..double import Square, validate_double_functor
from ..fincat import enumerate_functors
from ..monad import MonadMorphism, enumerate_monad_morphisms, validate_monad_morphism
from ..report import (
    INCONCLUSIVE,
    PASS,
    FAIL,
    Budget,
    CheckResult,
    SearchBudgetExceeded,
    Violation,
    result_from,
)
from .construct import (
    ClosureViolation,
    all_cells,
    apply_endofunctor,
    cells,
    epsilon,
    identity_cell,
    is_cell,
    is_square,
    nerve_double_category,
    phi,
    recover_xi,
    shape_failures,
    equation_failures,
    vcompose_cells,
    whisker,
    whisker_double_functor,
)
from .twocells import enumerate_theory_2cells, hcompose_2cells, validate_theory_2cell, vcompose_2cells


def _kleisli_then(m, f, g, z):
    c = m.base
    return c.then(f, m.Pm(g), m.mu(z))


def check_theorem_axioms(theory, m):
    """Axioms 2a, 2b, 3a, 3b (required) and the optional functoriality axiom."""
    c = m.base
    objs = c.objects
    every = all_cells(theory, m)
    tag = theory.name

    bad = []
    for y in objs:
        e = epsilon(theory, m, y)
        problems = shape_failures(theory, m, e) or [f"{l} = {r}: {w}" for l, r, w in equation_failures(theory, m, e)]
        if problems:
            bad.append(Violation("epsilon is not a cell", (y,), "; ".join(problems)))
        elif phi(theory, e) != c.id(m.P(y)):
            bad.append(Violation("phi(epsilon) is not the identity", (y,), repr(phi(theory, e))))
    results = [result_from(f"{tag}/2a-epsilon", bad)]

    bad = []
    for f in every:
        e = epsilon(theory, m, f.tgt)
        if not is_square(theory, m, phi(theory, f), c.id(f.tgt), f, e):
            bad.append(Violation("missing square (phi f, id, f, epsilon)", (f,)))
    results.append(result_from(f"{tag}/2b-mainax", bad))

    bad = []
    for x in objs:
        for y in objs:
            hom = cells(theory, m, x, y)
            for f in hom:
                for g in hom:
                    if f != g and is_square(theory, m, c.id(x), c.id(y), f, g):
                        bad.append(Violation("identity-bounded square between distinct cells", (f, g)))
    results.append(result_from(f"{tag}/3a-degenerate", bad))

    bad = []
    for x in objs:
        e, Pe = epsilon(theory, m, x), None
        Pe = apply_endofunctor(theory, m, e)
        if not is_cell(theory, m, Pe):
            bad.append(Violation("P(epsilon) is not a cell", (x,), str(Pe)))
        elif not is_square(theory, m, m.eta(m.P(x)), m.eta(x), e, Pe):
            bad.append(Violation("missing square (eta_P, eta, epsilon, P epsilon)", (x,)))
    results.append(result_from(f"{tag}/3b-epsilon-eta", bad))

    results.append(_optional_functoriality(theory, m, every))
    return results


def _optional_functoriality(theory, m, every):
    """The extra pasting axiom; equivalent to phi preserving identities and composites."""
    c = m.base
    check = f"{theory.name}/optional-functoriality"
    if theory.composite is None:
        return CheckResult(check, INCONCLUSIVE, [], False, "theory has no composition recipe")
    bad = []
    for x in c.objects:
        if phi(theory, identity_cell(theory, m, x)) != m.eta(x):
            bad.append(Violation("phi(identity) != eta", (x,)))
    by_src = {}
    for g in every:
        by_src.setdefault(g.src, []).append(g)
    for f in every:
        for g in by_src.get(f.tgt, ()):
            y, z = f.tgt, g.tgt
            ey, epz, ez = epsilon(theory, m, y), epsilon(theory, m, m.P(z)), epsilon(theory, m, z)
            Pphig = m.Pm(phi(theory, g))
            if not is_square(theory, m, Pphig, phi(theory, g), ey, epz):
                bad.append(Violation("missing square (P phi g, phi g, epsilon, epsilon P)", (f, g)))
                continue
            stacked = vcompose_cells(theory, m, epz, ez)
            if not is_square(theory, m, m.mu(z), c.id(z), stacked, ez):
                bad.append(Violation("missing square (mu, id, epsilon P;epsilon, epsilon)", (z,)))
                continue
            fg = vcompose_cells(theory, m, f, g)
            if phi(theory, fg) != _kleisli_then(m, phi(theory, f), phi(theory, g), z):
                bad.append(Violation("pasted square differs from the square of the composite", (f, g)))
    return result_from(check, bad, required=False, note="optional axiom; never affects the verdict")


# -- closure -------------------------------------------------------------------


def check_vertical_closure(theory, m):
    """Identity cells and vertical composites of cells stay cells."""
    bad = []
    for x in m.base.objects:
        i = identity_cell(theory, m, x)
        if not is_cell(theory, m, i):
            bad.append(Violation("identity is not a cell", (x,)))
    every = all_cells(theory, m)
    by_src = {}
    for g in every:
        by_src.setdefault(g.src, []).append(g)
    for f in every:
        for g in by_src.get(f.tgt, ()):
            if not is_cell(theory, m, vcompose_cells(theory, m, f, g)):
                bad.append(Violation("vertical composite is not a cell", (f, g)))
    return result_from(f"{theory.name}/closure-vertical", bad)


def check_whisker_closure(theory, m_P, m_Q, budget=None):
    """Whiskering every cell by every monad morphism gives a cell and a double functor."""
    check = f"{theory.name}/closure-whiskering"
    budget = budget or Budget()
    bad = []
    try:
        dom, cod = nerve_double_category(theory, m_P), nerve_double_category(theory, m_Q)
        for mm in enumerate_monad_morphisms(m_P, m_Q, budget):
            for f in dom.vcat.morphisms:
                budget.spend()
                if not is_cell(theory, m_Q, whisker(theory, mm, f)):
                    bad.append(Violation("whiskered cell is not a cell", (f,)))
            if not bad:
                for v in validate_double_functor(whisker_double_functor(theory, mm, dom, cod)):
                    bad.append(Violation(f"whiskering double functor: {v.law}", v.instance, v.detail))
    except SearchBudgetExceeded as exc:
        return CheckResult(check, INCONCLUSIVE, [], True, str(exc))
    except ClosureViolation as exc:
        bad.append(Violation("closure violation", tuple(exc.witness), str(exc)))
    return result_from(check, bad)


def check_horizontal_closure(theory, m_P, m_Q, m_R, budget=None):
    """Compose every enumerable pair of 2-cells P -> Q -> R and validate the results.

    Both whiskering orders are computed and compared, and vertical composites
    of 2-cells between morphisms P -> Q are validated too.
    """
    check = f"{theory.name}/closure-horizontal"
    budget = budget or Budget()
    bad = []
    try:
        pq = list(enumerate_monad_morphisms(m_P, m_Q, budget))
        qr = list(enumerate_monad_morphisms(m_Q, m_R, budget))
        cells_pq = _all_2cells(theory, pq, budget)
        cells_qr = _all_2cells(theory, qr, budget)
        for group in (cells_pq, cells_qr):
            for alpha in group:
                for beta in group:
                    if alpha.cod is beta.dom:
                        budget.spend()
                        for v in validate_theory_2cell(theory, vcompose_2cells(theory, alpha, beta)):
                            bad.append(Violation(f"vertical composite: {v.law}", v.instance, v.detail))
        cache = {}
        for alpha in cells_pq:
            for beta in cells_qr:
                budget.spend()
                one, two = hcompose_2cells(theory, alpha, beta, cache)
                for v in validate_theory_2cell(theory, one):
                    bad.append(Violation(f"horizontal composite: {v.law}", v.instance, v.detail))
                if one != two:
                    bad.append(Violation("whiskering orders disagree", (alpha.key(), beta.key())))
    except SearchBudgetExceeded as exc:
        return CheckResult(check, INCONCLUSIVE, [], True, str(exc))
    note = f"{len(cells_pq)} x {len(cells_qr)} 2-cells composed"
    return result_from(check, bad, note=note)


def _all_2cells(theory, morphisms, budget):
    out = []
    for a in morphisms:
        for b in morphisms:
            out.extend(enumerate_theory_2cells(theory, a, b, budget))
    return out


# -- faithfulness and fullness -----------------------------------------------


def check_faithfulness(theory, m_P, m_Q, budget=None):
    """Distinct monad morphisms give distinct whiskering double functors."""
    check = f"{theory.name}/faithful"
    budget = budget or Budget()
    try:
        dom, cod = nerve_double_category(theory, m_P), nerve_double_category(theory, m_Q)
        seen = {}
        bad = []
        n = 0
        for mm in enumerate_monad_morphisms(m_P, m_Q, budget):
            n += 1
            key = whisker_double_functor(theory, mm, dom, cod).key()
            if key in seen:
                bad.append(Violation("two monad morphisms whisker to the same double functor", (seen[key], n - 1)))
            else:
                seen[key] = n - 1
    except SearchBudgetExceeded as exc:
        return CheckResult(check, INCONCLUSIVE, [], True, f"search truncated: {exc}")
    return result_from(check, bad, note=f"{n} monad morphisms")


def check_round_trip(theory, m_P, m_Q, budget=None):
    """recover_xi(whisker(F, xi)) == xi for every monad morphism."""
    check = f"{theory.name}/round-trip"
    budget = budget or Budget()
    bad = []
    n = 0
    try:
        dom, cod = nerve_double_category(theory, m_P), nerve_double_category(theory, m_Q)
        for mm in enumerate_monad_morphisms(m_P, m_Q, budget):
            n += 1
            xi = recover_xi(theory, m_P, m_Q, whisker_double_functor(theory, mm, dom, cod))
            if xi != mm.xi:
                bad.append(Violation("recovered xi differs", (n - 1,), f"{xi.components} != {mm.xi.components}"))
    except SearchBudgetExceeded as exc:
        return CheckResult(check, INCONCLUSIVE, [], True, f"search truncated: {exc}")
    return result_from(check, bad, note=f"{n} monad morphisms")


def epsilon_class(theory, m):
    """Cells epsilon_X;f and the P-images Pf that are themselves cells."""
    out = []
    for f in all_cells(theory, m):
        out.append(vcompose_cells(theory, m, epsilon(theory, m, f.src), f))
        Pf = apply_endofunctor(theory, m, f)
        if is_cell(theory, m, Pf):
            out.append(Pf)
    return list(dict.fromkeys(out))


def enumerate_double_functors(dom, cod, budget):
    """Double functors between property-like double categories.

    A pair of functors agreeing on objects is a double functor iff it sends
    squares to squares; the square map is then forced by boundaries.
    """
    for H in enumerate_functors(dom.hcat, cod.hcat, budget):
        for V in enumerate_functors(dom.vcat, cod.vcat, budget, ob_maps=[H.ob_map]):
            smap = {}
            for s, b in dom.squares.items():
                budget.spend()
                t = Square(H.mor(b.top), H.mor(b.bottom), V.mor(b.left), V.mor(b.right))
                if t not in cod.squares:
                    break
                smap[s] = t
            else:
                from ..double import DoubleFunctor

                yield DoubleFunctor(dom, cod, H, V, smap)


def check_fullness_bounded(theory, m_P, m_Q, budget=None):
    """Every double functor determined on the epsilon-class is a whiskering.

    Returns two results: the required fullness check and a non-required
    probe listing double functors that are not determined on the class.
    """
    check = f"{theory.name}/full-on-determined"
    probe = f"{theory.name}/probe-undetermined"
    budget = budget or Budget()
    try:
        dom, cod = nerve_double_category(theory, m_P), nerve_double_category(theory, m_Q)
        found = list(enumerate_double_functors(dom, cod, budget))
    except SearchBudgetExceeded:
        note = f"search truncated after {budget.spent} candidate evaluations (bound {budget.bound})"
        return [
            CheckResult(check, INCONCLUSIVE, [], True, note),
            CheckResult(probe, INCONCLUSIVE, [], False, note),
        ]
    klass = epsilon_class(theory, m_P)
    groups = {}
    for D in found:
        sig = (tuple(sorted(map(repr, D.hfunctor.mor_map.items()))), tuple(D.vfunctor.mor(k) for k in klass))
        groups.setdefault(sig, []).append(D)
    determined = [g[0] for g in groups.values() if len(g) == 1]
    undetermined = [D for g in groups.values() if len(g) > 1 for D in g]
    bad = []
    for i, D in enumerate(determined):
        for v in validate_double_functor(D):
            bad.append(Violation(f"enumerated functor {i}: {v.law}", v.instance, v.detail))
        try:
            mm = MonadMorphism(m_P, m_Q, D.hfunctor, recover_xi(theory, m_P, m_Q, D))
        except (ValueError, KeyError) as exc:
            bad.append(Violation("xi cannot be recovered", (i,), str(exc)))
            continue
        problems = validate_monad_morphism(mm)
        if problems:
            bad.append(Violation("recovered (F, xi) is not a monad morphism", (i,), str(problems[0])))
            continue
        if whisker_double_functor(theory, mm, dom, cod) != D:
            bad.append(Violation("determined double functor is not the whiskering by its recovered (F, xi)", (i,)))
    note = f"{len(found)} double functors, {len(determined)} determined on the class of {len(klass)} cells"
    full = result_from(check, bad, note=note + f"; {budget.spent} candidate evaluations of {budget.bound}")
    status = PASS if not undetermined else FAIL
    probe_result = CheckResult(
        probe, status,
        [Violation("double functor not determined on the epsilon-class", (D.key(),)) for D in undetermined],
        False,
        "open-question probe: a finding here is evidence, not a verdict",
    )
    return [full, probe_result]
