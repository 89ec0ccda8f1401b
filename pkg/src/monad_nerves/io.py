"""JSON files for categories, monads, 2-cells, laws, double and triple categories.

Identifiers may be strings, numbers or (nested) lists; lists decode to
tuples so derived ids such as cells and squares round-trip. Maps whose keys
are all strings are written as JSON objects, other maps as lists of
``[key, value]`` pairs; both forms are accepted on input. Composition is
always "f then g": ``[f, g, fg]``.
"""

from __future__ import annotations

import hashlib
import json
import os

from .double import DoubleCategory, InternalCategory, TripleCategory
from .fincat import FinCat, Functor, NatTrans, compose_functors, identity_functor
from .monad import DistributiveLaw, KlTwoCell, Monad, MonadMorphism, MonadTwoCell

KINDS = (
    "category", "monad", "monad_morphism", "kl_2cell", "monad_2cell",
    "distributive_law", "double_category", "triple_category", "theory",
)


class ParseError(ValueError):
    """Unreadable or structurally malformed input file."""


def encode_id(x):
    if isinstance(x, tuple):
        return [encode_id(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    raise TypeError(f"cannot encode identifier {x!r}")


def decode_id(x):
    if isinstance(x, list):
        return tuple(decode_id(v) for v in x)
    if isinstance(x, dict):
        raise ParseError(f"identifiers cannot be objects: {x!r}")
    return x


class Interner:
    """Shares compound ids through a table; a reference is written ``{"@": n}``.

    Large derived categories (squares of squares) repeat the same nested
    ids thousands of times, so triple category files intern them.
    """

    def __init__(self):
        self.index = {}
        self.table = []

    def __call__(self, x):
        if not isinstance(x, tuple):
            return encode_id(x)
        n = self.index.get(x)
        if n is None:
            entry = [self(v) for v in x]
            n = self.index[x] = len(self.table)
            self.table.append(entry)
        return {"@": n}


def id_table_decoder(table):
    """Decoder for ids written by :class:`Interner`; entries only refer backwards."""
    if not isinstance(table, list):
        raise ParseError("ids: expected a list")
    decoded = []

    def dec(x):
        if isinstance(x, dict):
            n = x.get("@")
            if set(x) != {"@"} or not isinstance(n, int) or not 0 <= n < len(decoded):
                raise ParseError(f"bad id reference {x!r}")
            return decoded[n]
        if isinstance(x, list):
            return tuple(dec(v) for v in x)
        return x

    for entry in table:
        if not isinstance(entry, list):
            raise ParseError(f"ids: entries must be lists, got {entry!r}")
        decoded.append(dec(entry))
    return dec


def encode_map(mapping, enc=encode_id):
    if all(isinstance(k, str) for k in mapping):
        return {k: enc(v) for k, v in mapping.items()}
    return [[enc(k), enc(v)] for k, v in mapping.items()]


def decode_map(data, what="map", dec=decode_id):
    if isinstance(data, dict):
        return {k: dec(v) for k, v in data.items()}
    if isinstance(data, list):
        out = {}
        for entry in data:
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError(f"{what}: expected [key, value] pairs, got {entry!r}")
            out[dec(entry[0])] = dec(entry[1])
        return out
    raise ParseError(f"{what}: expected an object or a list of pairs")


def _triples(data, what, dec=decode_id):
    if not isinstance(data, list):
        raise ParseError(f"{what}: expected a list of [f, g, fg] triples")
    out = {}
    for entry in data:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(f"{what}: bad entry {entry!r}")
        f, g, h = (dec(v) for v in entry)
        out[f, g] = h
    return out


def _need(data, key, what):
    if not isinstance(data, dict):
        raise ParseError(f"{what}: expected a JSON object")
    if key not in data:
        raise ParseError(f"{what}: missing key {key!r}")
    return data[key]


# -- readers -------------------------------------------------------------------


def category_from_dict(data, objects=None, dec=decode_id):
    what = "category"
    objs = [dec(o) for o in data["objects"]] if "objects" in data else objects
    if objs is None:
        raise ParseError(f"{what}: missing key 'objects'")
    morphisms = {}
    for m in _need(data, "morphisms", what):
        if not isinstance(m, dict) or not {"id", "src", "tgt"} <= set(m):
            raise ParseError(f"{what}: morphism entries need id, src and tgt: {m!r}")
        morphisms[dec(m["id"])] = (dec(m["src"]), dec(m["tgt"]))
    identities = decode_map(_need(data, "identities", what), "identities", dec)
    composition = _triples(_need(data, "composition", what), "composition", dec)
    return FinCat(objs, morphisms, identities, composition, name=data.get("name", ""))


def _functor(data, dom, cod, what, dec=decode_id):
    return Functor(
        dom, cod,
        decode_map(_need(data, "ob_map", what), what, dec), decode_map(_need(data, "mor_map", what), what, dec),
        name=data.get("name", ""),
    )


class _Loader:
    def __init__(self, base_dir):
        self.base_dir = base_dir

    def ref(self, value, expect):
        """Inline object or path to another file of the expected kind."""
        if isinstance(value, str):
            path = value if os.path.isabs(value) else os.path.join(self.base_dir, value)
            kind, obj = load_file(path)
            if kind != expect:
                raise ParseError(f"{value}: expected a {expect} file, got {kind}")
            return obj
        return self.build(value, expect)

    def build(self, data, kind):
        return getattr(self, kind)(data)

    def category(self, data):
        return category_from_dict(data)

    def monad(self, data):
        c = self.ref(_need(data, "category", "monad"), "category")
        endo = _functor(_need(data, "endo", "monad"), c, c, "endo")
        return Monad(
            c, endo,
            NatTrans(identity_functor(c), endo, decode_map(_need(data, "unit", "monad"), "unit")),
            NatTrans(compose_functors(endo, endo), endo, decode_map(_need(data, "mult", "monad"), "mult")),
            name=data.get("name", ""),
        )

    def monad_morphism(self, data):
        P = self.ref(_need(data, "dom", "monad_morphism"), "monad")
        Q = self.ref(_need(data, "cod", "monad_morphism"), "monad")
        F = _functor(_need(data, "F", "monad_morphism"), P.base, Q.base, "F")
        xi = NatTrans(
            compose_functors(P.endo, F), compose_functors(F, Q.endo),
            decode_map(_need(data, "xi", "monad_morphism"), "xi"),
        )
        return MonadMorphism(P, Q, F, xi, name=data.get("name", ""))

    def _two_cell(self, data, cls, kleisli):
        what = "kl_2cell" if kleisli else "monad_2cell"
        a = self.ref(_need(data, "dom", what), "monad_morphism")
        b = self.ref(_need(data, "cod", what), "monad_morphism")
        target = compose_functors(b.F, a.cod.endo) if kleisli else b.F
        return cls(a, b, NatTrans(a.F, target, decode_map(_need(data, "alpha", what), "alpha")))

    def kl_2cell(self, data):
        return self._two_cell(data, KlTwoCell, True)

    def monad_2cell(self, data):
        return self._two_cell(data, MonadTwoCell, False)

    def distributive_law(self, data):
        T = self.ref(_need(data, "T", "distributive_law"), "monad")
        P = self.ref(_need(data, "P", "distributive_law"), "monad")
        TP, PT = compose_functors(P.endo, T.endo), compose_functors(T.endo, P.endo)
        return DistributiveLaw(T, P, NatTrans(TP, PT, decode_map(_need(data, "lam", "distributive_law"), "lam")))

    def double_category(self, data):
        what = "double_category"
        objs = [decode_id(o) for o in _need(data, "objects", what)]
        h = category_from_dict(_need(data, "horizontal", what), objs)
        v = category_from_dict(_need(data, "vertical", what), objs)
        squares = {}
        for s in _need(data, "squares", what):
            if not isinstance(s, dict) or not {"id", "top", "bottom", "left", "right"} <= set(s):
                raise ParseError(f"{what}: square entries need id, top, bottom, left, right: {s!r}")
            squares[decode_id(s["id"])] = tuple(decode_id(s[k]) for k in ("top", "bottom", "left", "right"))
        from .double import Square

        squares = {k: Square(*b) for k, b in squares.items()}
        return DoubleCategory(
            h, v, squares,
            _triples(_need(data, "hcomp", what), "hcomp"),
            _triples(_need(data, "vcomp", what), "vcomp"),
            decode_map(_need(data, "hunit", what), "hunit"),
            decode_map(_need(data, "vunit", what), "vunit"),
            name=data.get("name", ""),
        )

    def triple_category(self, data):
        what = "triple_category"
        dec = id_table_decoder(data["ids"]) if "ids" in data else decode_id
        corners = _need(data, "corners", what)
        cats = {k: category_from_dict(_need(corners, k, "corners"), dec=dec) for k in ("00", "10", "01", "11")}
        place = {"row0": ("00", "10"), "row1": ("01", "11"), "col0": ("00", "01"), "col1": ("10", "11")}
        edges = {}
        for name, (ob, arr) in place.items():
            e = _need(_need(data, "edges", what), name, "edges")
            B, A = cats[ob], cats[arr]
            edges[name] = InternalCategory(
                B, A,
                _functor(_need(e, "src", name), A, B, f"{name}.src", dec),
                _functor(_need(e, "tgt", name), A, B, f"{name}.tgt", dec),
                _functor(_need(e, "unit", name), B, A, f"{name}.unit", dec),
                _triples(_need(e, "comp_ob", name), f"{name}.comp_ob", dec),
                _triples(_need(e, "comp_mor", name), f"{name}.comp_mor", dec),
                name=name,
            )
        return TripleCategory(
            cats["00"], cats["10"], cats["01"], cats["11"],
            edges["row0"], edges["row1"], edges["col0"], edges["col1"], name=data.get("name", ""),
        )

    def theory(self, data):
        from .nerve.theory import theory_from_dict

        try:
            return theory_from_dict(data)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"theory: {exc}") from exc


def detect_kind(data):
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    if "kind" in data:
        if data["kind"] not in KINDS:
            raise ParseError(f"unknown kind {data['kind']!r}")
        return data["kind"]
    keys = set(data)
    if "corners" in keys:
        return "triple_category"
    if "squares" in keys:
        return "double_category"
    if "lam" in keys:
        return "distributive_law"
    if "xi" in keys:
        return "monad_morphism"
    if "alpha" in keys:
        raise ParseError("a 2-cell file must say \"kind\": \"kl_2cell\" or \"monad_2cell\"")
    if "endo" in keys:
        return "monad"
    if "components" in keys and "phi" in keys:
        return "theory"
    if {"morphisms", "composition"} <= keys:
        return "category"
    raise ParseError("cannot tell what kind of file this is")


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_file(path):
    """Returns ``(kind, object)``."""
    data = read_json(path)
    kind = detect_kind(data)
    loader = _Loader(os.path.dirname(os.path.abspath(path)))
    try:
        return kind, loader.build(data, kind)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"{path}: malformed {kind}: {exc!r}") from exc


def load(path, expect=None):
    kind, obj = load_file(path)
    if expect is not None and kind != expect:
        raise ParseError(f"{path}: expected a {expect} file, got {kind}")
    return obj


def file_digest(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


# -- writers -------------------------------------------------------------------


def category_to_dict(c, with_objects=True, enc=encode_id):
    out = {"kind": "category", "name": c.name} if with_objects else {}
    if with_objects:
        out["objects"] = [enc(o) for o in c.objects]
    out["morphisms"] = [{"id": enc(f), "src": enc(s), "tgt": enc(t)} for f, (s, t) in c.morphisms.items()]
    out["identities"] = encode_map(c.identities, enc)
    out["composition"] = [[enc(f), enc(g), enc(h)] for (f, g), h in c.composition.items()]
    return out


def functor_to_dict(F, enc=encode_id):
    return {"ob_map": encode_map(F.ob_map, enc), "mor_map": encode_map(F.mor_map, enc)}


def monad_to_dict(m):
    return {
        "kind": "monad",
        "name": m.name,
        "category": category_to_dict(m.base),
        "endo": functor_to_dict(m.endo),
        "unit": encode_map(m.unit.components),
        "mult": encode_map(m.mult.components),
    }


def monad_morphism_to_dict(mm):
    return {
        "kind": "monad_morphism",
        "name": mm.name,
        "dom": monad_to_dict(mm.dom),
        "cod": monad_to_dict(mm.cod),
        "F": functor_to_dict(mm.F),
        "xi": encode_map(mm.xi.components),
    }


def two_cell_to_dict(cell):
    kind = "kl_2cell" if isinstance(cell, KlTwoCell) else "monad_2cell"
    return {
        "kind": kind,
        "dom": monad_morphism_to_dict(cell.dom),
        "cod": monad_morphism_to_dict(cell.cod),
        "alpha": encode_map(cell.alpha.components),
    }


def distributive_law_to_dict(law):
    return {
        "kind": "distributive_law",
        "T": monad_to_dict(law.T),
        "P": monad_to_dict(law.P),
        "lam": encode_map(law.lam.components),
    }


def double_category_to_dict(d):
    return {
        "kind": "double_category",
        "name": d.name,
        "objects": [encode_id(o) for o in d.objects],
        "horizontal": category_to_dict(d.hcat, with_objects=False),
        "vertical": category_to_dict(d.vcat, with_objects=False),
        "squares": [
            {"id": encode_id(s), "top": encode_id(b.top), "bottom": encode_id(b.bottom),
             "left": encode_id(b.left), "right": encode_id(b.right)}
            for s, b in d.squares.items()
        ],
        "hcomp": [[encode_id(s), encode_id(t), encode_id(r)] for (s, t), r in d.hcomp.items()],
        "vcomp": [[encode_id(s), encode_id(t), encode_id(r)] for (s, t), r in d.vcomp.items()],
        "hunit": encode_map(d.hunit),
        "vunit": encode_map(d.vunit),
    }


def _edge_to_dict(ic, enc=encode_id):
    return {
        "src": functor_to_dict(ic.src, enc),
        "tgt": functor_to_dict(ic.tgt, enc),
        "unit": functor_to_dict(ic.unit, enc),
        "comp_ob": [[enc(u), enc(v), enc(w)] for (u, v), w in ic.comp_ob.items()],
        "comp_mor": [[enc(u), enc(v), enc(w)] for (u, v), w in ic.comp_mor.items()],
    }


def triple_category_to_dict(t):
    enc = Interner()
    corners = {k: category_to_dict(c, enc=enc) for k, c in (("00", t.c00), ("10", t.c10), ("01", t.c01), ("11", t.c11))}
    edges = {name: _edge_to_dict(ic, enc) for name, ic in t.edges().items()}
    return {"kind": "triple_category", "name": t.name, "ids": enc.table, "corners": corners, "edges": edges}


def to_dict(obj):
    if isinstance(obj, FinCat):
        return category_to_dict(obj)
    if isinstance(obj, Monad):
        return monad_to_dict(obj)
    if isinstance(obj, MonadMorphism):
        return monad_morphism_to_dict(obj)
    if isinstance(obj, (KlTwoCell, MonadTwoCell)):
        return two_cell_to_dict(obj)
    if isinstance(obj, DistributiveLaw):
        return distributive_law_to_dict(obj)
    if isinstance(obj, DoubleCategory):
        return double_category_to_dict(obj)
    if isinstance(obj, TripleCategory):
        return triple_category_to_dict(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj):
    data = to_dict(obj)
    if isinstance(obj, TripleCategory):
        # derived corners are large; compact separators keep the file small
        return json.dumps(data, separators=(",", ":")) + "\n"
    return json.dumps(data, indent=1) + "\n"


def save(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
