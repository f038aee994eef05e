"""JSON instance files for the finite model.

One document describes a category with everything the checks consume::

    {
      "name": "...",
      "objects": ["a", "b"],
      "morphisms": [{"id": "ida", "dom": "a", "cod": "a"}, ...],
      "identities": {"a": "ida", ...},
      "comp": {"g": {"f": "g_after_f", ...}, ...},
      "functors": {"M": {"on_objects": {"a": ["x"], ...},
                          "on_morphisms": {"ida": {"x": "x"}, ...}}, ...},
      "nat_trans": {"t": {"source": "M", "target": "N",
                           "components": {"a": {"x": "y"}, ...}}, ...},
      "endofunctors": {"G": {"on_objects": {"a": "b", ...},
                              "on_morphisms": {"ida": "idb", ...},
                              "to_identity": {"a": "r", ...},
                              "from_identity": {"a": "s", ...}}, ...},
      "nat_families": {"eta": {"source": "G", "target": "id",
                                "components": {"a": "r", ...}}, ...},
      "sliced": {"A": {"total": "At", "base": "L", "structure": "tauA"}, ...},
      "roles": {...}
    }

``comp[g][f]`` is g-after-f.  The identity endofunctor (with identity
comparison families) is always available under the name ``id``.

``roles`` configures what the law suite and the model-check command run::

    "roles": {
      "ccc": {"functors": [names...], "probes": [names...],
               "probe_morphisms": [nat_trans names...]},
      "slice_ccc": {"base": functor, "pairs": [[A, B]...], "probes": [sliced...]},
      "exp_compat": [{"g": endo, "m": functor, "n": functor,
                       "g2": endo, "eta": family}...],      # g2/eta optional
      "slice_exp_compat": [{"g": endo, "base": functor, "a": sliced,
                             "b": sliced, "g2": ..., "eta": ...}...],
      "localization": [{"g": endo, "a": sliced, "r": functor,
                         "g2": ..., "eta": ...}...]
    }

Loading validates all the data and raises with the failing check and
witness, so a planted defect in a file is caught at the door.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import WeilError
from .core import (
    EndofunctorData,
    FinCat,
    FinEndofunctor,
    FinFunctor,
    FinNatTrans,
    NatFamily,
    SlicedObject,
    fincat,
    identity_endofunctor_data,
    validate_category,
    validate_endofunctor,
    validate_functor,
    validate_nat_family,
    validate_nat_trans,
    validate_sliced,
)
from .core import validate_endofunctor_data


@dataclass
class Instance:
    name: str
    cat: FinCat
    functors: dict = field(default_factory=dict)
    nat_trans: dict = field(default_factory=dict)
    endofunctors: dict = field(default_factory=dict)
    nat_families: dict = field(default_factory=dict)
    sliced: dict = field(default_factory=dict)
    roles: dict = field(default_factory=dict)

    def functor(self, name: str) -> FinFunctor:
        try:
            return self.functors[name]
        except KeyError:
            raise WeilError("instance %s has no functor %r" % (self.name, name)) from None

    def endo(self, name: str) -> EndofunctorData:
        try:
            return self.endofunctors[name]
        except KeyError:
            raise WeilError("instance %s has no endofunctor %r" % (self.name, name)) from None

    def family(self, name: str) -> NatFamily:
        try:
            return self.nat_families[name]
        except KeyError:
            raise WeilError("instance %s has no family %r" % (self.name, name)) from None

    def sliced_obj(self, name: str) -> SlicedObject:
        try:
            return self.sliced[name]
        except KeyError:
            raise WeilError("instance %s has no sliced object %r" % (self.name, name)) from None


def load_instance(doc: dict, validate: bool = True) -> Instance:
    name = doc.get("name", "instance")
    comp = {}
    for g, row in doc.get("comp", {}).items():
        for f, gf in row.items():
            comp[(g, f)] = gf
    cat = fincat(
        name,
        doc["objects"],
        [(m["id"], m["dom"], m["cod"]) for m in doc["morphisms"]],
        doc["identities"],
        comp,
    )

    reports = [validate_category(cat)] if validate else []

    functors = {}
    for fname, body in doc.get("functors", {}).items():
        f = FinFunctor(
            cat,
            {c: tuple(body["on_objects"].get(c, ())) for c in cat.objects},
            {a.name: dict(body["on_morphisms"].get(a.name, {})) for a in cat.arrows},
            fname,
        )
        functors[fname] = f
        if validate:
            reports.append(validate_functor(f, fname))

    nat_trans = {}
    for tname, body in doc.get("nat_trans", {}).items():
        t = FinNatTrans(
            functors[body["source"]],
            functors[body["target"]],
            {c: dict(body["components"].get(c, {})) for c in cat.objects},
            tname,
        )
        nat_trans[tname] = t
        if validate:
            reports.append(validate_nat_trans(t, tname))

    endos = {"id": identity_endofunctor_data(cat)}
    plain_endos = {"id": endos["id"].functor}
    for gname, body in doc.get("endofunctors", {}).items():
        fun = FinEndofunctor(
            cat,
            dict(body["on_objects"]),
            dict(body["on_morphisms"]),
            gname,
        )
        plain_endos[gname] = fun
        data = EndofunctorData(
            fun,
            NatFamily(fun, plain_endos["id"], dict(body["to_identity"]), "%s.to_id" % gname),
            NatFamily(plain_endos["id"], fun, dict(body["from_identity"]), "%s.from_id" % gname),
            gname,
        )
        endos[gname] = data
        if validate:
            reports.append(validate_endofunctor(fun, gname))
            reports.append(validate_endofunctor_data(data, gname))

    families = {}
    for ename, body in doc.get("nat_families", {}).items():
        fam = NatFamily(
            plain_endos[body["source"]],
            plain_endos[body["target"]],
            dict(body["components"]),
            ename,
        )
        families[ename] = fam
        if validate:
            reports.append(validate_nat_family(fam, ename))

    sliced = {}
    for sname, body in doc.get("sliced", {}).items():
        structure = nat_trans[body["structure"]]
        expected_total = functors[body["total"]]
        expected_base = functors[body["base"]]
        if structure.source is not expected_total or structure.target is not expected_base:
            raise WeilError(
                "sliced object %r: structure %r does not run %s -> %s"
                % (sname, body["structure"], body["total"], body["base"])
            )
        s = SlicedObject(expected_total, structure, sname)
        sliced[sname] = s
        if validate:
            reports.append(validate_sliced(s, sname))

    if validate:
        failed = [rep for rep in reports if not rep.passed]
        if failed:
            lines = []
            for rep in failed:
                for c in rep.failures():
                    lines.append("%s: %s (witness: %r)" % (rep.title, c.name, c.witness))
            raise WeilError("instance %s failed validation:\n%s" % (name, "\n".join(lines)))

    return Instance(
        name=name,
        cat=cat,
        functors=functors,
        nat_trans=nat_trans,
        endofunctors=endos,
        nat_families=families,
        sliced=sliced,
        roles=doc.get("roles", {}),
    )


def load_instance_file(path, validate: bool = True) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return load_instance(json.load(fh), validate=validate)
