"""Regenerate the sample files in data/ from the built-in corpus.

    python3 demos/make_data.py
"""

import json
import os

from monad_nerves import corpus
from monad_nerves.fincat import NatTrans, chain_category, compose_functors, identity_functor
from monad_nerves.io import dumps, save
from monad_nerves.monad import DistributiveLaw, Monad, identity_monad, unit_monad_morphism

HERE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")


def broken_monad():
    """Identity functor on Z2 with multiplication t: the unit laws fail."""
    c = corpus.cyclic2()
    I = identity_functor(c)
    return Monad(c, I, NatTrans(I, I, {"*": "1"}), NatTrans(compose_functors(I, I), I, {"*": "t"}), name="bad")


def twisted_law():
    """lam = t on Z2 between identity monads; naturality holds, the unit axioms do not."""
    m = identity_monad(corpus.cyclic2())
    return DistributiveLaw(m, m, NatTrans(m.endo, m.endo, {"*": "t"}))


def main():
    os.makedirs(HERE, exist_ok=True)
    files = {
        "chain3.json": chain_category(3),
        "top.json": corpus.constant_top(),
        "lower.json": corpus.lower_closure(),
        "id_chain3.json": identity_monad(chain_category(3)),
        "id_z2.json": identity_monad(corpus.cyclic2()),
        "unit_top.json": unit_monad_morphism(corpus.constant_top()),
        "law_top.json": corpus.constant_top_law(),
        "law_trivial.json": corpus.trivial_law(corpus.lower_closure()),
        "broken_monad.json": broken_monad(),
        "law_twisted.json": twisted_law(),
    }
    for name, obj in files.items():
        save(obj, os.path.join(HERE, name))

    # a unit component that names a morphism the category does not have
    data = json.loads(dumps(corpus.constant_top()))
    data["unit"]["0"] = "nope"
    with open(os.path.join(HERE, "dangling_monad.json"), "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")

    with open(os.path.join(HERE, "malformed.json"), "w") as fh:
        fh.write('{"kind": "monad", "category": "chain3.json",\n "endo": {"ob_map": {"0": "2"\n')

    # the monad file may point at a category file instead of inlining it
    ref = json.loads(dumps(corpus.constant_top()))
    ref["category"] = "chain3.json"
    with open(os.path.join(HERE, "top_ref.json"), "w") as fh:
        json.dump(ref, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
