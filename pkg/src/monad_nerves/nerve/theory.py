"""Vertical theories: which data makes up a vertical cell X ~> Y of a nerve.

A theory is declarative. Each component has a shape ``S -> T`` or, for a
Kleisli component, ``S -> PT`` where ``S`` and ``T`` are ``X`` or ``Y``.
Equations, the identity cell, the epsilon cell and vertical composites are
all written as paths in a tiny language evaluated in the monad's base::

    pi;tau                 composite of two components (first map first)
    eta(Y);eta(PY)         unit components at Y and at PY
    f.tau;P(g.tau);mu(Z)   parts of the cells being composed

Objects inside ``eta``, ``mu`` and ``id`` are a variable (``X``, ``Y``,
``Z``) prefixed by any number of ``P``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, NamedTuple


class Cell(NamedTuple):
    """A vertical cell ``src ~> tgt``; ``data`` follows the theory's component order."""

    src: Hashable
    tgt: Hashable
    data: tuple


@dataclass(frozen=True)
class Component:
    name: str
    src: str
    tgt: str
    kleisli: bool = False


@dataclass(frozen=True)
class VerticalTheory:
    """Cell shape, Kleisli projection and recipes of one nerve variant.

    ``composite`` may be ``None`` for custom theories, which are then only
    usable with the axiom checker.
    """

    name: str
    components: tuple
    phi: str
    equations: tuple = ()
    identity: tuple = ()
    epsilon: tuple = ()
    composite: tuple | None = None

    def index(self, name):
        for i, c in enumerate(self.components):
            if c.name == name:
                return i
        raise KeyError(name)

    @property
    def tag(self):
        return self.name


# -- path language ------------------------------------------------------------

_OBJ = re.compile(r"^(P*)([A-Z])$")
_NAME = re.compile(r"^(?:[fg]\.)?[a-z][a-z0-9_]*$")


def _split(path):
    depth, start, parts = 0, 0, []
    for i, ch in enumerate(path):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {path!r}")
        elif ch == ";" and depth == 0:
            parts.append(path[start:i])
            start = i + 1
    if depth:
        raise ValueError(f"unbalanced parentheses in {path!r}")
    parts.append(path[start:])
    return [p.strip() for p in parts]


def _parse_obj(text):
    m = _OBJ.match(text.strip())
    if not m:
        raise ValueError(f"bad object expression {text!r}")
    return len(m.group(1)), m.group(2)


@lru_cache(maxsize=None)
def parse_path(path):
    """Parse a path into a tuple of steps."""
    steps = []
    for part in _split(path):
        if not part:
            raise ValueError(f"empty step in {path!r}")
        head, paren, rest = part.partition("(")
        if paren:
            if not rest.endswith(")"):
                raise ValueError(f"bad step {part!r}")
            arg = rest[:-1]
            if head == "P":
                steps.append(("P", parse_path(arg)))
            elif head in ("eta", "mu", "id"):
                steps.append((head, _parse_obj(arg)))
            else:
                raise ValueError(f"unknown operation {head!r} in {path!r}")
        elif _NAME.match(part) and part not in ("eta", "mu", "id"):
            steps.append(("c", part))
        else:
            raise ValueError(f"bad step {part!r} in {path!r}")
    return tuple(steps)


def _ob(m, env, spec):
    k, var = spec
    if var not in env:
        raise ValueError(f"object variable {var} is not bound here")
    x = env[var]
    for _ in range(k):
        x = m.P(x)
    return x


def _step(m, env, comps, step):
    kind, arg = step
    if kind == "c":
        if arg not in comps:
            raise ValueError(f"unknown component {arg!r}")
        return comps[arg]
    if kind == "P":
        return m.Pm(_run(m, env, comps, arg))
    x = _ob(m, env, arg)
    if kind == "eta":
        return m.eta(x)
    if kind == "mu":
        return m.mu(x)
    return m.base.id(x)


def _run(m, env, comps, steps):
    out = _step(m, env, comps, steps[0])
    for s in steps[1:]:
        out = m.base.compose(out, _step(m, env, comps, s))
    return out


def evaluate(m, path, env, comps=None):
    """Evaluate a path in the base of ``m``; raises ValueError if ill-typed."""
    return _run(m, env, comps or {}, parse_path(path))


# -- built-in theories -------------------------------------------------------

KLEISLI = VerticalTheory(
    "kleisli",
    (Component("tau", "X", "Y", True),),
    phi="tau",
    identity=("eta(X)",),
    epsilon=("id(X)",),
    composite=("f.tau;P(g.tau);mu(Z)",),
)

EMBEDDING = VerticalTheory(
    "embedding",
    (Component("pi", "Y", "X"), Component("tau", "X", "Y", True)),
    phi="tau",
    equations=(("pi;tau", "eta(Y)"),),
    identity=("id(X)", "eta(X)"),
    epsilon=("eta(Y)", "id(X)"),
    composite=("g.pi;f.pi", "f.tau;P(g.tau);mu(Z)"),
)

SPLITEPI = VerticalTheory(
    "splitepi",
    (Component("s", "Y", "X", True), Component("e", "X", "Y", True)),
    phi="e",
    equations=(("s;P(e)", "eta(Y);eta(PY)"),),
    identity=("eta(X)", "eta(X)"),
    epsilon=("eta(Y);eta(PY)", "id(X)"),
    composite=("g.s;P(f.s);mu(X)", "f.e;P(g.e);mu(Z)"),
)


def multi_embedding(n):
    """n sections ``pi1..pin`` of one Kleisli arrow ``tau``."""
    if n < 1:
        raise ValueError("multi-embedding needs at least one section")
    pis = [f"pi{i}" for i in range(1, n + 1)]
    return VerticalTheory(
        f"multi:{n}",
        tuple(Component(p, "Y", "X") for p in pis) + (Component("tau", "X", "Y", True),),
        phi="tau",
        equations=tuple((f"{p};tau", "eta(Y)") for p in pis),
        identity=("id(X)",) * n + ("eta(X)",),
        epsilon=("eta(Y)",) * n + ("id(X)",),
        composite=tuple(f"g.{p};f.{p}" for p in pis) + ("f.tau;P(g.tau);mu(Z)",),
    )


BUILTIN = ("kleisli", "embedding", "splitepi")


def theory_from_tag(tag):
    """``kleisli``, ``embedding``, ``splitepi`` or ``multi:<n>``."""
    if tag == "kleisli":
        return KLEISLI
    if tag == "embedding":
        return EMBEDDING
    if tag == "splitepi":
        return SPLITEPI
    if tag.startswith("multi:"):
        try:
            n = int(tag.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad theory tag {tag!r}") from None
        return multi_embedding(n)
    raise ValueError(f"unknown theory {tag!r}; expected kleisli, embedding, splitepi or multi:<n>")


def check_theory_definition(theory):
    """Static sanity checks of a (possibly custom) theory; returns messages."""
    out = []
    names = [c.name for c in theory.components]
    if len(set(names)) != len(names):
        out.append("component names are not unique")
    for c in theory.components:
        if c.src not in ("X", "Y") or c.tgt not in ("X", "Y"):
            out.append(f"component {c.name}: endpoints must be X or Y")
    try:
        phi = theory.components[theory.index(theory.phi)]
        if not (phi.kleisli and phi.src == "X" and phi.tgt == "Y"):
            out.append("phi must name a Kleisli component X -> PY")
    except KeyError:
        out.append(f"phi names an unknown component {theory.phi!r}")
    recipes = [("identity", theory.identity), ("epsilon", theory.epsilon)]
    if theory.composite is not None:
        recipes.append(("composite", theory.composite))
    for label, recipe in recipes:
        if len(recipe) != len(theory.components):
            out.append(f"{label} recipe needs one path per component")
    paths = [p for eq in theory.equations for p in eq] + [p for _, r in recipes for p in r]
    for p in paths:
        try:
            parse_path(p)
        except ValueError as exc:
            out.append(str(exc))
    return out


def theory_from_dict(spec):
    """Build a custom theory from its JSON description."""
    comps = tuple(
        Component(c["name"], c["src"], c["tgt"], bool(c.get("kleisli", False))) for c in spec["components"]
    )
    theory = VerticalTheory(
        spec.get("name", "custom"),
        comps,
        phi=spec["phi"],
        equations=tuple(tuple(e) for e in spec.get("equations", ())),
        identity=tuple(spec["identity"]),
        epsilon=tuple(spec["epsilon"]),
        composite=tuple(spec["composite"]) if spec.get("composite") else None,
    )
    problems = check_theory_definition(theory)
    if problems:
        raise ValueError("; ".join(problems))
    return theory


def theory_to_dict(theory):
    return {
        "name": theory.name,
        "components": [
            {"name": c.name, "src": c.src, "tgt": c.tgt, "kleisli": c.kleisli} for c in theory.components
        ],
        "phi": theory.phi,
        "equations": [list(e) for e in theory.equations],
        "identity": list(theory.identity),
        "epsilon": list(theory.epsilon),
        "composite": list(theory.composite) if theory.composite is not None else None,
    }
