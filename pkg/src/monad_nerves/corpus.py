"""The desk-scale corpus of small categories and monads used by checks and tests."""

from __future__ import annotations

from .fincat import FinCat, chain_category, monoid_category, poset_category
from .monad import DistributiveLaw, arrow_monad, closure_monad, identity_monad


def terminal():
    return FinCat(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"}, name="terminal")


def cyclic2():
    """The group of order two as a one-object category."""
    table = {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "1"}
    return monoid_category(["1", "t"], table, "1", name="Z2")


def walking_idempotent():
    table = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return monoid_category(["1", "e"], table, "1", name="idem")


def parallel_pair():
    morphisms = {"id0": ("0", "0"), "id1": ("1", "1"), "f": ("0", "1"), "g": ("0", "1")}
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1"}
    for h in ("f", "g"):
        comp["id0", h] = h
        comp[h, "id1"] = h
    return FinCat(["0", "1"], morphisms, {"0": "id0", "1": "id1"}, comp, name="pair")


def square_poset():
    """The product of two 2-chains: 00 <= 01, 10 <= 11."""
    elems = ["00", "01", "10", "11"]
    return poset_category(elems, lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="square")


def diamond():
    """bot < a, b < top."""
    elems = ["bot", "a", "b", "top"]
    rel = {(x, x) for x in elems} | {("bot", x) for x in elems} | {(x, "top") for x in elems}
    return poset_category(elems, rel, name="diamond")


def constant_top():
    """The closure x -> 2 on the 3-chain."""
    return closure_monad(chain_category(3), {0: 2, 1: 2, 2: 2}, name="top")


def lower_closure():
    """{0, 1} -> 1, 2 -> 2 on the 3-chain."""
    return closure_monad(chain_category(3), {0: 1, 1: 1, 2: 2}, name="c011")


def diamond_closure():
    return closure_monad(diamond(), {"bot": "a", "a": "a", "b": "top", "top": "top"}, name="diamond-c")


def identity_corpus():
    """Identity monads on categories with one to four objects."""
    return [
        identity_monad(terminal()),
        identity_monad(cyclic2()),
        identity_monad(walking_idempotent()),
        identity_monad(parallel_pair()),
        identity_monad(chain_category(3)),
        identity_monad(square_poset()),
    ]


def closure_corpus():
    return [constant_top(), lower_closure(), diamond_closure()]


def monad_corpus():
    """Every corpus monad: identities, closure operators and one arrow monad."""
    return identity_corpus() + closure_corpus() + [arrow_monad(constant_top())]


def small_identity_monads():
    """Identity monads on categories with at most three objects."""
    return [m for m in identity_corpus() if len(m.base.objects) <= 3]


def constant_top_law():
    """T = P = constant-top with identity components."""
    m = constant_top()
    from .fincat import NatTrans, compose_functors

    TP = compose_functors(m.endo, m.endo)
    lam = NatTrans(TP, TP, {x: m.base.id(m.P(m.P(x))) for x in m.base.objects})
    return DistributiveLaw(m, m, lam)


def trivial_law(m):
    """T = m over the identity monad P, with identity components."""
    from .fincat import NatTrans

    P = identity_monad(m.base)
    lam = NatTrans(m.endo, m.endo, {x: m.base.id(m.P(x)) for x in m.base.objects})
    return DistributiveLaw(m, P, lam)
