"""Nerve double categories of a monad under a vertical theory."""

from __future__ import annotations

from itertools import product

import numpy as np

from ..double import (
    DoubleFunctor,
    Square,
    _property_like_double,
    transpose,
    validate_double_functor,
    validate_double_nat,
)
from ..fincat import FinCat, Functor, NatTrans, compose_functors, validate_functor
from ..report import Violation
from .theory import Cell, evaluate


class ClosureViolation(ValueError):
    """A construction left the class of valid cells; ``witness`` names the inputs."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = witness


def components(theory, cell):
    return {c.name: v for c, v in zip(theory.components, cell.data)}


def phi(theory, cell):
    """The Kleisli arrow ``src -> P tgt`` underlying a cell."""
    return cell.data[theory.index(theory.phi)]


def _env(cell):
    return {"X": cell.src, "Y": cell.tgt}


def component_boundary(m, comp, env):
    tgt = env[comp.tgt]
    return env[comp.src], m.P(tgt) if comp.kleisli else tgt


def equation_failures(theory, m, cell):
    """Equations of the theory that fail (or do not type-check) on ``cell``."""
    env, comps = _env(cell), components(theory, cell)
    bad = []
    for lhs, rhs in theory.equations:
        try:
            a, b = evaluate(m, lhs, env, comps), evaluate(m, rhs, env, comps)
        except (ValueError, KeyError) as exc:
            bad.append((lhs, rhs, f"ill-typed: {exc}"))
            continue
        if a != b:
            bad.append((lhs, rhs, f"{a!r} != {b!r}"))
    return bad


def shape_failures(theory, m, cell):
    out = []
    if len(cell.data) != len(theory.components):
        return [f"expected {len(theory.components)} components, got {len(cell.data)}"]
    env = _env(cell)
    for comp, f in zip(theory.components, cell.data):
        want = component_boundary(m, comp, env)
        if m.base.morphisms.get(f) != want:
            out.append(f"component {comp.name} = {f!r} is not a morphism {want[0]!r} -> {want[1]!r}")
    return out


def is_cell(theory, m, cell):
    return not shape_failures(theory, m, cell) and not equation_failures(theory, m, cell)


def cells(theory, m, x, y):
    """Every cell ``x ~> y``, in the declared order of the base's morphisms."""
    env = {"X": x, "Y": y}
    homs = [m.base.hom(*component_boundary(m, c, env)) for c in theory.components]
    out = []
    for data in product(*homs):
        cell = Cell(x, y, data)
        if not equation_failures(theory, m, cell):
            out.append(cell)
    return out


def all_cells(theory, m):
    objs = m.base.objects
    return [c for x in objs for y in objs for c in cells(theory, m, x, y)]


def identity_cell(theory, m, x):
    env = {"X": x, "Y": x}
    return Cell(x, x, tuple(evaluate(m, p, env) for p in theory.identity))


def epsilon(theory, m, y):
    """The distinguished cell ``PY ~> Y``."""
    env = {"X": m.P(y), "Y": y}
    return Cell(m.P(y), y, tuple(evaluate(m, p, env) for p in theory.epsilon))


def vcompose_cells(theory, m, f, g):
    """``f : X ~> Y`` then ``g : Y ~> Z``."""
    if theory.composite is None:
        raise ValueError(f"theory {theory.name!r} has no composition recipe")
    if f.tgt != g.src:
        raise ValueError(f"cells {f} and {g} are not composable")
    env = {"X": f.src, "Y": f.tgt, "Z": g.tgt}
    comps = {f"f.{k}": v for k, v in components(theory, f).items()}
    comps.update({f"g.{k}": v for k, v in components(theory, g).items()})
    return Cell(f.src, g.tgt, tuple(evaluate(m, p, env, comps) for p in theory.composite))


def apply_endofunctor(theory, m, cell):
    """The monad applied componentwise: ``PX ~> PY``.

    This is a cell whenever ``P(eta) = eta P``, which holds for idempotent
    monads; callers check the result with :func:`is_cell`.
    """
    return Cell(m.P(cell.src), m.P(cell.tgt), tuple(m.Pm(f) for f in cell.data))


def is_square(theory, m, top, bottom, left, right):
    """Square predicate: each component commutes with the horizontal sides.

    A component ``S -> T`` (or ``S -> PT``) of ``left`` and ``right`` must
    satisfy ``left_c ; side_T = side_S ; right_c`` with ``side_X = top`` and
    ``side_Y = bottom`` (the target side passed through P for Kleisli
    components).
    """
    c = m.base
    if not (
        c.src(top) == left.src and c.tgt(top) == right.src
        and c.src(bottom) == left.tgt and c.tgt(bottom) == right.tgt
    ):
        raise ValueError(f"boundary mismatch: top {top!r}, bottom {bottom!r}, left {left}, right {right}")
    side = {"X": top, "Y": bottom}
    for comp, a, b in zip(theory.components, left.data, right.data):
        t = side[comp.tgt]
        if comp.kleisli:
            t = m.Pm(t)
        if c.compose(a, t) != c.compose(side[comp.src], b):
            return False
    return True


def vertical_category(theory, m):
    objs = m.base.objects
    by_src = {x: [] for x in objs}
    morphisms = {}
    for cell in all_cells(theory, m):
        morphisms[cell] = (cell.src, cell.tgt)
        by_src[cell.src].append(cell)
    identities = {}
    for x in objs:
        i = identity_cell(theory, m, x)
        if i not in morphisms:
            raise ClosureViolation(f"identity cell on {x!r} fails the {theory.name} equations", (x,))
        identities[x] = i
    composition = {}
    for f in morphisms:
        for g in by_src[f.tgt]:
            h = vcompose_cells(theory, m, f, g)
            if h not in morphisms:
                raise ClosureViolation(
                    f"vertical composite of {f} and {g} is not a {theory.name} cell: {h}", (f, g)
                )
            composition[f, g] = h
    return FinCat(objs, morphisms, identities, composition, name=f"{m.name}-{theory.name}")


def square_candidates(theory, m, vcat):
    """Every square boundary of the nerve for which the predicate holds."""
    c = m.base
    squares = []
    vs = list(vcat.morphisms)
    for left in vs:
        for right in vs:
            tops = c.hom(left.src, right.src)
            if not tops:
                continue
            bottoms = c.hom(left.tgt, right.tgt)
            for top in tops:
                for bottom in bottoms:
                    if is_square(theory, m, top, bottom, left, right):
                        squares.append(Square(top, bottom, left, right))
    return squares


def nerve_double_category(theory, m, name=None):
    """Horizontal = base, vertical = cells, squares = boundaries where the predicate holds."""
    vcat = vertical_category(theory, m)
    squares = square_candidates(theory, m, vcat)
    try:
        return _property_like_double(m.base, vcat, squares, name=name or f"N_{theory.name}({m.name})")
    except ValueError as exc:
        raise ClosureViolation(f"square predicate not closed: {exc}") from exc


def whisker(theory, mm, cell):
    """Whisker a cell of the domain monad by ``(F, xi)``.

    Plain components are mapped by F; a Kleisli component ``S -> PT`` maps to
    ``F(c) ; xi_T``.
    """
    F, xi, d = mm.F, mm.xi, mm.cod.base
    env = _env(cell)
    data = []
    for comp, f in zip(theory.components, cell.data):
        g = F.mor(f)
        if comp.kleisli:
            g = d.compose(g, xi[env[comp.tgt]])
        data.append(g)
    return Cell(F.ob(cell.src), F.ob(cell.tgt), tuple(data))


def whisker_double_functor(theory, mm, dom=None, cod=None):
    dom = dom or nerve_double_category(theory, mm.dom)
    cod = cod or nerve_double_category(theory, mm.cod)
    F = mm.F
    vmap = {}
    for cell in dom.vcat.morphisms:
        w = whisker(theory, mm, cell)
        if w not in cod.vcat.morphisms:
            raise ClosureViolation(f"whiskering {cell} gives {w}, not a {theory.name} cell", (cell,))
        vmap[cell] = w
    V = Functor(dom.vcat, cod.vcat, dict(F.ob_map), vmap, name=f"V{mm.name}")
    squares = {
        s: Square(F.mor(b.top), F.mor(b.bottom), vmap[b.left], vmap[b.right]) for s, b in dom.squares.items()
    }
    return DoubleFunctor(dom, cod, F, V, squares, name=f"whisker{mm.name}")


def recover_xi(theory, m_P, m_Q, action):
    """``xi_X := phi(action(epsilon_X))`` for a double functor ``action``."""
    F = action.hfunctor
    comps = {}
    for x in m_P.base.objects:
        e = epsilon(theory, m_P, x)
        if e not in action.vfunctor.mor_map:
            raise ValueError(f"the action is not defined on epsilon at {x!r}")
        comps[x] = phi(theory, action.vfunctor.mor(e))
    return NatTrans(compose_functors(m_P.endo, F), compose_functors(F, m_Q.endo), comps, name="xi")


def embedding_from_res(m, L, res):
    """The embedding cell ``(L, eta;res)`` of a presentation ``L : Y -> X``, ``res : PX -> PY``.

    Requires ``P(L);res = id`` and that ``res`` is a homomorphism of free
    algebras (``mu_X;res = P(res);mu_Y``).
    """
    c = m.base
    y, x = c.morphisms[L]
    if c.morphisms.get(res) != (m.P(x), m.P(y)):
        raise ValueError(f"res must be a morphism {m.P(x)!r} -> {m.P(y)!r}")
    if c.compose(m.Pm(L), res) != c.id(m.P(y)):
        raise ValueError("retraction square fails: P(L);res is not the identity")
    if c.compose(m.mu(x), res) != c.compose(m.Pm(res), m.mu(y)):
        raise ValueError("homomorphism square fails: mu_X;res != P(res);mu_Y")
    return Cell(x, y, (L, c.compose(m.eta(x), res)))


def res_from_embedding(m, cell):
    """Inverse of :func:`embedding_from_res`: ``(pi, P(tau);mu_Y)``."""
    pi, tau = cell.data
    return pi, m.base.compose(m.Pm(tau), m.mu(cell.tgt))


# -- square families of monad 2-cells -------------------------------------


def corollary_squares(theory, two_cell, dom_nerve=None, cod_nerve=None):
    """One square per cell rho of N(P): top alpha_X, bottom alpha_Y, sides whiskered.

    Returns ``(WF, WG, squares, missing)`` where ``missing`` lists cells whose
    square does not exist in N(Q).
    """
    a, b = two_cell.dom, two_cell.cod
    dom_nerve = dom_nerve or nerve_double_category(theory, a.dom)
    cod_nerve = cod_nerve or nerve_double_category(theory, a.cod)
    WF = whisker_double_functor(theory, a, dom_nerve, cod_nerve)
    WG = whisker_double_functor(theory, b, dom_nerve, cod_nerve)
    alpha = two_cell.alpha
    squares, missing = {}, []
    for rho, (x, y) in dom_nerve.vcat.morphisms.items():
        s = Square(alpha[x], alpha[y], WF.vfunctor.mor(rho), WG.vfunctor.mor(rho))
        if s in cod_nerve.squares:
            squares[rho] = s
        else:
            missing.append(rho)
    return WF, WG, squares, missing


def check_corollary_family(theory, two_cell, dom_nerve=None, cod_nerve=None):
    WF, WG, squares, missing = corollary_squares(theory, two_cell, dom_nerve, cod_nerve)
    out = [Violation("missing square of the 2-cell family", (rho,), "", True) for rho in missing]
    if out:
        return out
    return validate_double_nat(WF, WG, two_cell.alpha.components, squares)


class FamilyChecker:
    """Checks 2-cell square families between two fixed monads, in bulk.

    ``check(two_cell)`` returns the violations for each theory.  Whiskering
    functors are built and validated once per monad morphism.  When both
    nerves identify squares by boundary (they always do for the built-in
    nerves), the double-functor laws and the identity, vertical-composition
    and square-naturality laws of the family compare squares with equal
    boundaries.  What is left is functoriality of the vertical map, existence
    of every square, and naturality of the components, which is checked once
    per 2-cell rather than once per theory.
    """

    def __init__(self, theories, m_P, m_Q, nerves=None):
        nerves = nerves or {}
        self.base = m_P.base
        self.codbase = m_Q.base
        # base arrows interned as ints keep the hot set lookups cheap
        h = self._h = {f: i for i, f in enumerate(m_Q.base.morphisms)}
        self._comp = {(h[f], h[g]): h[k] for (f, g), k in m_Q.base.composition.items()}
        self._theories = []
        for th in theories:
            dom = nerves.get((th.name, id(m_P))) or nerve_double_category(th, m_P)
            cod = dom if m_Q is m_P else nerves.get((th.name, id(m_Q))) or nerve_double_category(th, m_Q)
            fast = all(k == v for k, v in dom.squares.items()) and all(k == v for k, v in cod.squares.items())
            index = {cell: i for i, cell in enumerate(cod.vcat.morphisms)}
            self._theories.append({
                "theory": th,
                "dom": dom,
                "cod": cod,
                "fast": fast,
                "index": index,
                "valid": {(h[q.top], h[q.bottom], index[q.left], index[q.right]) for q in cod.squares.values()},
                "rhos": [(rho, x, y) for rho, (x, y) in dom.vcat.morphisms.items()],
                "squares": list(zip(*dom.squares.values())),
                "xs": [x for x, _ in dom.vcat.morphisms.values()],
                "ys": [y for _, y in dom.vcat.morphisms.values()],
                "whiskers": {},
            })
        self._arrows = list(self.base.morphisms.items())
        self._srcs = [x for _, (x, _) in self._arrows]
        self._tgts = [y for _, (_, y) in self._arrows]
        self._hmaps = {}
        self._all_sides = {}

    def _hmap(self, mm):
        key = id(mm)
        if key not in self._hmaps:
            self._hmaps[key] = (mm, [self._h[mm.F.mor(f)] for f, _ in self._arrows])
        return self._hmaps[key][1]

    def _whiskering(self, t, mm):
        key = id(mm)
        cache = t["whiskers"]
        if key in cache:
            return cache[key][1:]
        th, dom, cod, index = t["theory"], t["dom"], t["cod"], t["index"]
        if t["fast"]:
            vmap = {cell: whisker(th, mm, cell) for cell in dom.vcat.morphisms}
            bad = [Violation("whiskered cell is not a cell", (c,), "", True) for c, w in vmap.items() if w not in index]
            if not bad:
                bad = validate_functor(Functor(dom.vcat, cod.vcat, dict(mm.F.ob_map), vmap))
            if not bad:
                Fm, h, valid = mm.F.mor_map, self._h, t["valid"]
                F = {f: h[g] for f, g in Fm.items()}.__getitem__
                at = {c: index[w] for c, w in vmap.items()}.__getitem__
                sq = t["squares"]
                if not valid.issuperset(zip(*(map(f, side) for f, side in zip((F, F, at, at), sq)))):
                    bad = [
                        Violation("square image", (q,))
                        for q in dom.squares.values()
                        if (F(q.top), F(q.bottom), at(q.left), at(q.right)) not in valid
                    ]
            W = vmap
        else:
            W = whisker_double_functor(th, mm, dom, cod)
            bad = validate_double_functor(W)
            vmap = W.vfunctor.mor_map
        if bad:
            raise ClosureViolation(f"whiskering by {mm.name} is not a double functor: {bad[0]}")
        sides = [index[vmap[rho]] for rho, _, _ in t["rhos"]]
        cache[key] = (mm, W, sides)
        return W, sides

    def check(self, two_cell):
        A = two_cell.alpha.components
        h = self._h
        at = {x: h.get(f) for x, f in A.items()}.__getitem__
        get = self._comp.get
        Fs, Gs = self._hmap(two_cell.dom), self._hmap(two_cell.cod)
        lhs = list(map(get, zip(Fs, map(at, self._tgts))))
        rhs = list(map(get, zip(map(at, self._srcs), Gs)))
        natural = []
        if lhs != rhs or None in lhs:
            natural = [
                Violation("naturality on horizontal morphisms", (f,))
                for (f, _), l, r in zip(self._arrows, lhs, rhs)
                if l is None or l != r
            ]
        out = {}
        lefts, rights = self._sides(two_cell.dom), self._sides(two_cell.cod)
        for t, (WF, left), (WG, right) in zip(self._theories, lefts, rights):
            valid = t["valid"]
            missing = []
            if not valid.issuperset(zip(map(at, t["xs"]), map(at, t["ys"]), left, right)):
                missing = [
                    rho for (rho, x, y), l, r in zip(t["rhos"], left, right) if (at(x), at(y), l, r) not in valid
                ]
            if missing:
                out[t["theory"].name] = [
                    Violation("missing square of the 2-cell family", (rho,), "", True) for rho in missing
                ]
            elif t["fast"]:
                out[t["theory"].name] = list(natural)
            else:
                squares = {
                    rho: Square(A[x], A[y], WF.vfunctor.mor(rho), WG.vfunctor.mor(rho)) for rho, x, y in t["rhos"]
                }
                out[t["theory"].name] = validate_double_nat(WF, WG, A, squares)
        return out

    def check_all(self, two_cells):
        """``[check(c) for c in two_cells]``, vectorised over the cells.

        Rows that fail here, and every row of a theory without the boundary
        shortcut, are re-run through :meth:`check` for exact violations.
        """
        cells = list(two_cells)
        if not cells:
            return []
        h, objects = self._h, list(self.base.objects)
        col = {x: i for i, x in enumerate(objects)}
        none = len(h)
        A = np.array([[h.get(c.alpha.components.get(x), none) for x in objects] for c in cells], dtype=np.int64)
        rows, morphisms = {}, []
        for c in cells:
            for mm in (c.dom, c.cod):
                if id(mm) not in rows:
                    rows[id(mm)] = len(morphisms)
                    morphisms.append(mm)
        li = np.array([rows[id(c.dom)] for c in cells])
        ri = np.array([rows[id(c.cod)] for c in cells])
        # naturality, through a dense composition table padded with a "none" row
        table = np.full((none + 1, none + 1), -1, dtype=np.int64)
        for (f, g), k in self._comp.items():
            table[f, g] = k
        H = np.array([self._hmap(mm) for mm in morphisms], dtype=np.int64).reshape(len(morphisms), -1)
        srcs = [col[x] for x in self._srcs]
        tgts = [col[y] for y in self._tgts]
        lhs = table[H[li], A[:, tgts]]
        rhs = table[A[:, srcs], H[ri]]
        ok = ((lhs == rhs) & (lhs >= 0)).all(axis=1)
        slow = False
        for t, sides in zip(self._theories, zip(*(self._sides(mm) for mm in morphisms))):
            if not t["fast"]:
                slow = True
                continue
            S = np.array([side for _, side in sides], dtype=np.int64).reshape(len(morphisms), -1)
            n = len(t["index"]) + 1
            valid = np.array(sorted(((a * (none + 1) + b) * n + l) * n + r for a, b, l, r in t["valid"]), dtype=np.int64)
            xs = [col[x] for x in t["xs"]]
            ys = [col[y] for y in t["ys"]]
            key = ((A[:, xs] * (none + 1) + A[:, ys]) * n + S[li]) * n + S[ri]
            ok &= np.isin(key, valid).all(axis=1)
        blank = {t["theory"].name: [] for t in self._theories}
        return [dict(blank) if good and not slow else self.check(c) for c, good in zip(cells, ok.tolist())]

    def _sides(self, mm):
        key = id(mm)
        if key not in self._all_sides:
            self._all_sides[key] = (mm, [self._whiskering(t, mm) for t in self._theories])
        return self._all_sides[key][1]


def transpose_nerve(theory, m, two_cells=()):
    """Transpose of the nerve; each given monad 2-cell out of ``m`` must yield its square family."""
    d = nerve_double_category(theory, m)
    problems = []
    for cell in two_cells:
        if cell.dom.dom != m:
            raise ValueError("two-cell does not start at this monad")
        cod = d if cell.dom.cod == m else None
        problems += check_corollary_family(theory, cell, d, cod)
    if problems:
        raise ValueError("2-cell square family fails: " + "; ".join(map(str, problems[:5])))
    return transpose(d)
