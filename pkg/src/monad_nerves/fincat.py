"""Finite categories, functors and natural transformations as explicit tables.

Composition is always diagrammatic: ``compose(f, g)`` is "f then g" and is
only defined when ``tgt(f) == src(g)``. Object and morphism ids are any
hashable values; categories read from files use strings, derived categories
(arrow categories, Kleisli categories, cell categories) use tuples.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Hashable, NamedTuple

from .report import Budget, Violation, structural_first


class FinCat:
    """A finite category given by its full composition table.

    ``morphisms`` maps a morphism id to ``(src, tgt)`` and keeps declaration
    order; ``composition`` maps a composable pair ``(f, g)`` to the id of
    "f then g". Nothing is validated on construction, see
    :func:`validate_category`.
    """

    def __init__(self, objects, morphisms, identities, composition, name=""):
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.identities = dict(identities)
        self.composition = dict(composition)
        self.name = name

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCat{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self.morphisms == other.morphisms
            and self.identities == other.identities
            and self.composition == other.composition
        )

    __hash__ = None

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def id(self, x):
        return self.identities[x]

    @cached_property
    def _homs(self):
        homs = {(x, y): [] for x in self.objects for y in self.objects}
        for f, (x, y) in self.morphisms.items():
            homs.setdefault((x, y), []).append(f)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x, y):
        return self._homs.get((x, y), ())

    @cached_property
    def _out(self):
        out = {x: [] for x in self.objects}
        for f, (x, _) in self.morphisms.items():
            out.setdefault(x, []).append(f)
        return out

    def out_of(self, x):
        return self._out.get(x, [])

    def compose(self, f, g):
        """Return "f then g"; raises ValueError for a non-composable pair."""
        try:
            return self.composition[f, g]
        except KeyError:
            pass
        if f not in self.morphisms or g not in self.morphisms:
            unknown = f if f not in self.morphisms else g
            raise ValueError(f"unknown morphism {unknown!r} in {self!r}")
        if self.tgt(f) != self.src(g):
            raise ValueError(
                f"{f!r}: {self.src(f)!r}->{self.tgt(f)!r} and {g!r}: "
                f"{self.src(g)!r}->{self.tgt(g)!r} are not composable"
            )
        raise ValueError(f"composition table has no entry for ({f!r}, {g!r})")

    def then(self, *fs):
        """Compose a path of morphisms left to right."""
        if not fs:
            raise ValueError("empty path")
        result = fs[0]
        for g in fs[1:]:
            result = self.compose(result, g)
        return result

    def composable_pairs(self):
        for f, (_, y) in self.morphisms.items():
            for g in self.out_of(y):
                yield f, g

    @cached_property
    def _thin(self):
        return all(len(v) <= 1 for v in self._homs.values())

    def is_thin(self):
        return self._thin


def compose(c, f, g):
    return c.compose(f, g)


def validate_category(c):
    """List every violated category axiom instance of ``c`` (empty if valid)."""
    out = []
    objects = set(c.objects)
    if len(objects) != len(c.objects):
        out.append(Violation("duplicate object", (), "object ids must be unique", True))
    for f, (x, y) in c.morphisms.items():
        for end in (x, y):
            if end not in objects:
                out.append(Violation("unknown object", (f, end), "morphism endpoint", True))
    for x in c.objects:
        if x not in c.identities:
            out.append(Violation("missing identity", (x,), "", True))
    for x, i in c.identities.items():
        if x not in objects:
            out.append(Violation("unknown object", (x,), "identity declared for it", True))
        if i not in c.morphisms:
            out.append(Violation("unknown morphism", (i,), f"identity of {x!r}", True))
    for (f, g), h in c.composition.items():
        bad = [m for m in (f, g, h) if m not in c.morphisms]
        if bad:
            out.append(Violation("unknown morphism", (f, g, h), f"{bad[0]!r} in composition", True))
        elif c.tgt(f) != c.src(g):
            out.append(Violation("non-composable entry", (f, g, h), "tgt(f) != src(g)", True))
    if out:
        return structural_first(out)

    for x, i in c.identities.items():
        if c.morphisms[i] != (x, x):
            out.append(Violation("identity boundary", (x, i), f"identity is {c.morphisms[i]}"))
    for (f, g), h in c.composition.items():
        if c.morphisms[h] != (c.src(f), c.tgt(g)):
            out.append(Violation("composite boundary", (f, g, h), f"{h!r} has boundary {c.morphisms[h]}"))
    for f, g in c.composable_pairs():
        if (f, g) not in c.composition:
            out.append(Violation("missing composite", (f, g)))
    for f, (x, y) in c.morphisms.items():
        ix, iy = c.identities.get(x), c.identities.get(y)
        if c.composition.get((ix, f), f) != f:
            out.append(Violation("left unit", (f,), f"id;f = {c.composition[ix, f]!r}"))
        if c.composition.get((f, iy), f) != f:
            out.append(Violation("right unit", (f,), f"f;id = {c.composition[f, iy]!r}"))
    comp = c.composition
    for (f, g), fg in comp.items():
        for h in c.out_of(c.tgt(g)):
            gh = comp.get((g, h))
            left = comp.get((fg, h))
            right = comp.get((f, gh)) if gh is not None else None
            if left is not None and right is not None and left != right:
                out.append(Violation("associativity", (f, g, h), f"(fg)h = {left!r}, f(gh) = {right!r}"))
    return out


class Functor:
    """A functor between finite categories given by object and morphism maps."""

    def __init__(self, dom, cod, ob_map, mor_map, name=""):
        self.dom = dom
        self.cod = cod
        self.ob_map = dict(ob_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def __repr__(self):
        return f"<Functor {self.name or ''} {self.dom!r} -> {self.cod!r}>"

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self.ob_map == other.ob_map and self.mor_map == other.mor_map

    __hash__ = None

    def ob(self, x):
        return self.ob_map[x]

    def mor(self, f):
        return self.mor_map[f]


def identity_functor(c):
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms}, name="id")


def compose_functors(F, G):
    """F then G."""
    return Functor(
        F.dom,
        G.cod,
        {x: G.ob_map[y] for x, y in F.ob_map.items() if y in G.ob_map},
        {f: G.mor_map[g] for f, g in F.mor_map.items() if g in G.mor_map},
        name=f"{F.name};{G.name}" if F.name and G.name else "",
    )


def validate_functor(F):
    out = []
    c, d = F.dom, F.cod
    for x in c.objects:
        if x not in F.ob_map:
            out.append(Violation("missing object image", (x,), "", True))
        elif F.ob_map[x] not in d.identities:
            out.append(Violation("unknown object", (x, F.ob_map[x]), "image not in codomain", True))
    for f in c.morphisms:
        if f not in F.mor_map:
            out.append(Violation("missing morphism image", (f,), "", True))
        elif F.mor_map[f] not in d.morphisms:
            out.append(Violation("unknown morphism", (f, F.mor_map[f]), "image not in codomain", True))
    if out:
        return out
    for f, (x, y) in c.morphisms.items():
        if d.morphisms[F.mor_map[f]] != (F.ob_map[x], F.ob_map[y]):
            out.append(Violation(
                "boundary", (f,),
                f"F({f!r}) = {F.mor_map[f]!r} : {d.morphisms[F.mor_map[f]]}, expected "
                f"{(F.ob_map[x], F.ob_map[y])}",
            ))
    for x, i in c.identities.items():
        if F.mor_map[i] != d.identities[F.ob_map[x]]:
            out.append(Violation("identity", (x,), f"F(id) = {F.mor_map[i]!r}"))
    bad_boundary = {v.instance[0] for v in out if v.law == "boundary"}
    for (f, g), h in c.composition.items():
        if f in bad_boundary or g in bad_boundary:
            continue
        image = d.composition.get((F.mor_map[f], F.mor_map[g]))
        if image != F.mor_map[h]:
            out.append(Violation("composition", (f, g), f"F(f;g) = {F.mor_map[h]!r}, F(f);F(g) = {image!r}"))
    return out


class NatTrans:
    """A natural transformation ``dom => cod`` between parallel functors."""

    def __init__(self, dom, cod, components, name=""):
        self.dom = dom
        self.cod = cod
        self.components = dict(components)
        self.name = name

    def __repr__(self):
        return f"<NatTrans {self.name or ''}>"

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.components == other.components

    __hash__ = None

    def __getitem__(self, x):
        return self.components[x]

    @property
    def category(self):
        """The codomain category, where the components live."""
        return self.dom.cod


def identity_nattrans(F):
    return NatTrans(F, F, {x: F.cod.id(F.ob(x)) for x in F.dom.objects}, name="id")


def validate_nattrans(a):
    out = []
    F, G = a.dom, a.cod
    c, d = F.dom, F.cod
    if G.dom is not c and G.dom != c or G.cod is not d and G.cod != d:
        return [Violation("shape", (), "functors are not parallel", True)]
    for x in c.objects:
        if x not in a.components:
            out.append(Violation("missing component", (x,), "", True))
        elif a.components[x] not in d.morphisms:
            out.append(Violation("unknown morphism", (x, a.components[x]), "", True))
        elif d.morphisms[a.components[x]] != (F.ob(x), G.ob(x)):
            out.append(Violation(
                "component boundary", (x,),
                f"{a.components[x]!r} : {d.morphisms[a.components[x]]}, expected {(F.ob(x), G.ob(x))}",
                True,
            ))
    if out:
        return out
    for f, (x, y) in c.morphisms.items():
        lhs = d.compose(F.mor(f), a[y])
        rhs = d.compose(a[x], G.mor(f))
        if lhs != rhs:
            out.append(Violation("naturality", (f,), f"F(f);a_Y = {lhs!r}, a_X;G(f) = {rhs!r}"))
    return out


def vcompose_nattrans(a, b):
    """a : F => G then b : G => H."""
    if a.cod != b.dom:
        raise ValueError("vertical composite needs cod(a) == dom(b)")
    d = a.category
    return NatTrans(a.dom, b.cod, {x: d.compose(a[x], b[x]) for x in a.dom.dom.objects})


def whisker_left(F, a):
    """Precompose a : G => H with F, giving (F;G) => (F;H)."""
    if F.cod is not a.dom.dom and F.cod != a.dom.dom:
        raise ValueError("whisker_left: codomain of F is not the domain of the transformation")
    return NatTrans(
        compose_functors(F, a.dom),
        compose_functors(F, a.cod),
        {x: a[F.ob(x)] for x in F.dom.objects},
    )


def whisker_right(a, H):
    """Postcompose a : F => G with H, giving (F;H) => (G;H)."""
    if H.dom is not a.category and H.dom != a.category:
        raise ValueError("whisker_right: domain of H is not the codomain category")
    return NatTrans(
        compose_functors(a.dom, H),
        compose_functors(a.cod, H),
        {x: H.mor(a[x]) for x in a.dom.dom.objects},
    )


def hcompose_nattrans(a, b):
    """a : F => G : C -> D and b : H => K : D -> E give (F;H) => (G;K)."""
    if a.category is not b.dom.dom and a.category != b.dom.dom:
        raise ValueError("hcompose: categories do not match")
    e = b.category
    H = b.dom
    return NatTrans(
        compose_functors(a.dom, H),
        compose_functors(a.cod, b.cod),
        {x: e.compose(H.mor(a[x]), b[a.cod.ob(x)]) for x in a.dom.dom.objects},
    )


# -- example generators -----------------------------------------------------


def poset_category(elements, leq, name=""):
    """Thin category of a finite poset.

    ``leq`` is either a callable ``leq(a, b)`` or an iterable of pairs
    ``(a, b)`` meaning a <= b. Objects are ``str(element)``; the morphism
    for a <= b is ``"a->b"`` and identities are ``"id_a"``.
    """
    elements = list(elements)
    if callable(leq):
        rel = {(a, b) for a in elements for b in elements if leq(a, b)}
    else:
        rel = set(leq)
    for a in elements:
        if (a, a) not in rel:
            raise ValueError(f"relation is not reflexive at {a!r}")
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise ValueError(f"relation is not antisymmetric on {a!r}, {b!r}")
        for c in elements:
            if (b, c) in rel and (a, c) not in rel:
                raise ValueError(f"relation is not transitive on {a!r} <= {b!r} <= {c!r}")

    def mor(a, b):
        return f"id_{a}" if a == b else f"{a}->{b}"

    morphisms = {mor(a, b): (str(a), str(b)) for a in elements for b in elements if (a, b) in rel}
    composition = {
        (mor(a, b), mor(b, c)): mor(a, c)
        for a, b in itertools.product(elements, repeat=2)
        if (a, b) in rel
        for c in elements
        if (b, c) in rel
    }
    return FinCat(
        [str(a) for a in elements],
        morphisms,
        {str(a): mor(a, a) for a in elements},
        composition,
        name=name,
    )


def chain_category(n):
    """The ordinal 0 < 1 < ... < n-1 as a category."""
    return poset_category(range(n), lambda a, b: a <= b, name=f"chain{n}")


def discrete_category(objects, name="discrete"):
    objects = [str(x) for x in objects]
    return poset_category(objects, lambda a, b: a == b, name=name)


def monoid_category(elements, table, unit, obj="*", name="monoid"):
    """One-object category of a finite monoid; ``table[a, b]`` is "a then b"."""
    return FinCat(
        [obj],
        {m: (obj, obj) for m in elements},
        {obj: unit},
        {(a, b): table[a, b] for a in elements for b in elements},
        name=name,
    )


class ArrowMap(NamedTuple):
    """Morphism of an arrow category: a commuting square from ``dom`` to ``cod``.

    ``on_src`` : src(dom) -> src(cod) and ``on_tgt`` : tgt(dom) -> tgt(cod)
    with ``dom ; on_tgt == on_src ; cod``.
    """

    dom: Hashable
    cod: Hashable
    on_src: Hashable
    on_tgt: Hashable


def arrow_category(c):
    """The category [2, c]: arrows of ``c`` and commuting squares between them."""
    morphisms = {}
    for f in c.morphisms:
        for g in c.morphisms:
            for a in c.hom(c.src(f), c.src(g)):
                for b in c.hom(c.tgt(f), c.tgt(g)):
                    if c.compose(f, b) == c.compose(a, g):
                        morphisms[ArrowMap(f, g, a, b)] = (f, g)
    identities = {f: ArrowMap(f, f, c.id(c.src(f)), c.id(c.tgt(f))) for f in c.morphisms}
    by_dom = {}
    for m in morphisms:
        by_dom.setdefault(m.dom, []).append(m)
    composition = {}
    for m in morphisms:
        for n in by_dom.get(m.cod, []):
            composition[m, n] = ArrowMap(
                m.dom, n.cod, c.compose(m.on_src, n.on_src), c.compose(m.on_tgt, n.on_tgt)
            )
    return FinCat(list(c.morphisms), morphisms, identities, composition, name=f"[2,{c.name}]")


# -- brute-force enumeration -------------------------------------------------


def enumerate_functors(c, d, budget=None, ob_maps=None):
    """Yield every functor c -> d by backtracking over the tables.

    ``budget`` (a :class:`Budget`) is charged one unit per candidate
    assignment; ``ob_maps`` restricts the object maps tried.
    """
    budget = budget or Budget(None)
    non_ids = [f for f in c.morphisms if f not in set(c.identities.values())]
    triples = {f: [] for f in c.morphisms}
    for (f, g), h in c.composition.items():
        for m in {f, g, h}:
            triples[m].append((f, g, h))
    if ob_maps is None:
        ob_maps = _object_maps(c, d, non_ids, budget)
    for ob_map in ob_maps:
        budget.spend()
        mor_map = {c.id(x): d.id(ob_map[x]) for x in c.objects}

        def consistent(m):
            for f, g, h in triples[m]:
                if f in mor_map and g in mor_map and h in mor_map:
                    if d.composition.get((mor_map[f], mor_map[g])) != mor_map[h]:
                        return False
            return True

        if not all(consistent(i) for i in mor_map):
            continue

        def extend(k):
            if k == len(non_ids):
                yield Functor(c, d, ob_map, mor_map)
                return
            f = non_ids[k]
            for g in d.hom(ob_map[c.src(f)], ob_map[c.tgt(f)]):
                budget.spend()
                mor_map[f] = g
                if consistent(f):
                    yield from extend(k + 1)
                del mor_map[f]

        yield from extend(0)


def _object_maps(c, d, non_ids, budget):
    """Object maps leaving no morphism of ``c`` without a possible image."""
    objects = list(c.objects)
    position = {x: i for i, x in enumerate(objects)}
    edges = {x: [] for x in objects}
    for f in non_ids:
        x, y = c.morphisms[f]
        edges[objects[max(position[x], position[y])]].append((x, y))
    ob_map = {}

    def extend(k):
        if k == len(objects):
            yield dict(ob_map)
            return
        x = objects[k]
        for image in d.objects:
            budget.spend()
            ob_map[x] = image
            if all(d.hom(ob_map[s], ob_map[t]) for s, t in edges[x]):
                yield from extend(k + 1)
        ob_map.pop(x, None)

    return extend(0)


def enumerate_nattrans(F, G, budget=None):
    """Yield every natural transformation F => G."""
    budget = budget or Budget(None)
    c, d = F.dom, F.cod
    if d.is_thin():
        # parallel arrows coincide, so the only candidate is forced and natural
        fo, go, homs, comps = F.ob_map, G.ob_map, d._homs, {}
        for x in c.objects:
            hom = homs.get((fo[x], go[x]))
            if not hom:
                budget.spend(len(comps) + 1)
                return
            comps[x] = hom[0]
        budget.spend(len(comps))
        yield NatTrans(F, G, comps)
        return
    objects = list(c.objects)
    position = {x: i for i, x in enumerate(objects)}
    checks = {x: [] for x in objects}
    for f, (x, y) in c.morphisms.items():
        checks[objects[max(position[x], position[y])]].append(f)
    comps = {}

    def natural(x):
        for f in checks[x]:
            s, t = c.morphisms[f]
            if d.compose(F.mor(f), comps[t]) != d.compose(comps[s], G.mor(f)):
                return False
        return True

    def extend(k):
        if k == len(objects):
            yield NatTrans(F, G, comps)
            return
        x = objects[k]
        for m in d.hom(F.ob(x), G.ob(x)):
            budget.spend()
            comps[x] = m
            if natural(x):
                yield from extend(k + 1)
            del comps[x]

    yield from extend(0)


def isomorphic(c, d):
    """Brute-force test for an isomorphism of categories; returns one or None."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    ob_maps = (
        dict(zip(c.objects, perm)) for perm in itertools.permutations(d.objects)
    )
    for F in enumerate_functors(c, d, ob_maps=ob_maps):
        if len(set(F.mor_map.values())) == len(d.morphisms):
            return F
    return None
