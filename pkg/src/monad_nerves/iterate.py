"""Lifting a monad along a distributive law and assembling a triple category.

Given ``lam : TP => PT``, the pair ``(T, lam)`` is a monad morphism
``P -> P`` and ``eta_T``, ``mu_T`` are monad 2-cells. Whiskering by it acts
on the nerve of P, and the square families of the two 2-cells make that
action a monad on the category of vertical cells and squares. Taking a
second nerve of this lifted monad gives the top corner of the grid::

    c01 = cells/squares of N1(P)  <-- c11 = cells/squares of N2(lifted)
     ^                                 ^
    c00 = base                    <-- c10 = cells/squares of N2(T)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .double import (
    DoubleCategory,
    DoubleFunctor,
    InternalCategory,
    Square,
    TripleCategory,
    as_internal_category,
    morphism_category,
    validate_double_functor,
    validate_double_nat,
    validate_triple_category,
)
from .fincat import Functor, NatTrans, compose_functors, identity_functor
from .monad import (
    Monad,
    MonadMorphism,
    validate_distributive_law,
    validate_monad,
    validate_monad_2cell,
    validate_monad_morphism,
)
from .nerve.checks import check_theorem_axioms
from .nerve.construct import corollary_squares, nerve_double_category, whisker_double_functor
from .nerve.theory import Cell
from .report import Violation, overall_status


class LiftError(ValueError):
    """The lifted structure fails a law; ``violations`` lists every instance."""

    def __init__(self, message, violations):
        super().__init__(f"{message}: " + "; ".join(map(str, violations[:5])))
        self.violations = violations


@dataclass(eq=False)
class LiftedDoubleMonad:
    theory: object
    law: object
    base: DoubleCategory
    action: DoubleFunctor
    unit_squares: dict
    mult_squares: dict
    monad: Monad
    checks: list = field(default_factory=list)

    @property
    def on_base(self):
        """The action on objects and horizontal morphisms; this is T itself."""
        return self.action.hfunctor


def _tag(prefix, violations):
    return [Violation(f"{prefix}: {v.law}", v.instance, v.detail, v.structural) for v in violations]


def lifted_double_monad(theory1, law):
    """The double monad on N1(P) induced by ``law``; raises :class:`LiftError`."""
    P, T = law.P, law.T
    mm = law.as_monad_morphism()
    problems = _tag("(T, lam) as a monad morphism", validate_monad_morphism(mm))
    if problems:
        raise LiftError("(T, lam) is not a monad morphism P -> P", problems)
    problems = _tag("unit of T as a 2-cell", validate_monad_2cell(law.unit_cell()))
    problems += _tag("mult of T as a 2-cell", validate_monad_2cell(law.mult_cell()))
    problems += _tag("distributive law", validate_distributive_law(law))
    if problems:
        raise LiftError("the distributive law does not lift", problems)

    N1 = nerve_double_category(theory1, P)
    action = whisker_double_functor(theory1, mm, N1, N1)
    problems = _tag("lifted action", validate_double_functor(action))
    families = {}
    for label, cell in (("unit", law.unit_cell()), ("mult", law.mult_cell())):
        WF, WG, squares, missing = corollary_squares(theory1, cell, N1, N1)
        problems += [Violation(f"{label} family: missing square", (rho,), "", True) for rho in missing]
        if not missing:
            problems += _tag(f"{label} family", validate_double_nat(WF, WG, cell.alpha.components, squares))
        families[label] = squares
    if problems:
        raise LiftError("the lifted action is not a double monad", problems)

    c01 = morphism_category(N1)
    endo = Functor(c01, c01, dict(action.vfunctor.mor_map), dict(action.square_map), name="T~")
    monad = Monad(
        c01,
        endo,
        NatTrans(identity_functor(c01), endo, families["unit"]),
        NatTrans(compose_functors(endo, endo), endo, families["mult"]),
        name=f"{T.name}~",
    )
    problems = _tag("lifted monad", validate_monad(monad))
    if problems:
        raise LiftError("the lifted square families do not form a monad", problems)
    return LiftedDoubleMonad(theory1, law, N1, action, families["unit"], families["mult"], monad)


def _strict(dom, cod, F):
    """``(F, identity) : dom -> cod`` for a functor strictly commuting with the monads."""
    d = cod.base
    comps = {x: d.id(cod.P(F.ob(x))) for x in dom.base.objects}
    return MonadMorphism(dom, cod, F, NatTrans(compose_functors(dom.endo, F), compose_functors(F, cod.endo), comps))


def _arrow_part(W, dom_arr, cod_arr, name):
    """The functor between categories of cells and squares induced by a double functor."""
    return Functor(dom_arr, cod_arr, dict(W.vfunctor.mor_map), dict(W.square_map), name=name)


def triple_from_distributive_law(theory1, theory2, law):
    """Assemble the triple category; returns ``(triple, report)``.

    ``report`` holds the precondition axiom checks for theory2 on T and on
    the lifted monad. Raises :class:`LiftError` if a precondition fails.
    """
    lifted = lifted_double_monad(theory1, law)
    T, Tl = law.T, lifted.monad
    report = []
    for label, m in (("T", T), ("lifted T", Tl)):
        for r in check_theorem_axioms(theory2, m):
            r.check = f"{label}: {r.check}"
            report.append(r)
    if overall_status(report) != "pass":
        bad = [Violation(r.check, (), r.status) for r in report if r.required and not r.passed]
        raise LiftError("theory2's axioms fail on T or on the lifted monad", bad)

    N1 = lifted.base
    N2T = nerve_double_category(theory2, T)
    N2L = nerve_double_category(theory2, Tl)
    row0 = as_internal_category(N2T)
    col0 = as_internal_category(N1)
    row1 = as_internal_category(N2L)
    c00, c10, c01, c11 = row0.ob_cat, row0.arr_cat, col0.arr_cat, row1.arr_cat
    row1.ob_cat = c01

    maps = {}
    for label, F, dom, cod, ND, NC, A, B in (
        ("src", col0.src, Tl, T, N2L, N2T, c11, c10),
        ("tgt", col0.tgt, Tl, T, N2L, N2T, c11, c10),
        ("unit", col0.unit, T, Tl, N2T, N2L, c10, c11),
    ):
        mm = _strict(dom, cod, F)
        problems = _tag(f"column {label} as a strict monad morphism", validate_monad_morphism(mm))
        if problems:
            raise LiftError(f"column {label} does not commute with the monads", problems)
        maps[label] = _arrow_part(whisker_double_functor(theory2, mm, ND, NC), A, B, label)

    col1 = InternalCategory(c10, c11, maps["src"], maps["tgt"], maps["unit"], {}, {}, name="col1")
    n = len(theory2.components)
    for u, v in col1.composable_ob():
        col1.comp_ob[u, v] = _stack_cells(N1, u, v, n)
    for s, t in col1.composable_mor():
        a, b = c11.morphisms[s], c11.morphisms[t]
        sa, sb = N2L.squares[s], N2L.squares[t]
        col1.comp_mor[s, t] = Square(
            N1.vcomp[sa.top, sb.top], N1.vcomp[sa.bottom, sb.bottom],
            col1.comp_ob[a[0], b[0]], col1.comp_ob[a[1], b[1]],
        )
    triple = TripleCategory(c00, c10, c01, c11, row0, row1, col0, col1, name=f"{theory1.name}/{theory2.name}")
    return triple, report


def _stack_cells(N1, u, v, n):
    """Vertical composite in N1 of two cells whose components are N1-squares."""
    return Cell(
        N1.vcat.compose(u.src, v.src),
        N1.vcat.compose(u.tgt, v.tgt),
        tuple(N1.vcomp[u.data[i], v.data[i]] for i in range(n)),
    )


def check_triple(theory1, theory2, law):
    """Build and validate; returns ``(triple or None, violations, report)``."""
    try:
        triple, report = triple_from_distributive_law(theory1, theory2, law)
    except LiftError as exc:
        return None, exc.violations, []
    return triple, validate_triple_category(triple), report
