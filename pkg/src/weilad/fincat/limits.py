"""Objectwise finite limits: terminal/initial functors, products, equalizers, fibered products."""

from __future__ import annotations

from ..errors import NonNatural
from .core import (
    FinCat,
    FinFunctor,
    FinNatTrans,
    SlicedObject,
    label_key,
)


def terminal_functor(cat: FinCat, star="*") -> FinFunctor:
    return FinFunctor(
        cat,
        {c: (star,) for c in cat.objects},
        {a.name: {star: star} for a in cat.arrows},
        "1",
    )


def initial_functor(cat: FinCat) -> FinFunctor:
    return FinFunctor(cat, {c: () for c in cat.objects}, {a.name: {} for a in cat.arrows}, "0")


def product(m: FinFunctor, n: FinFunctor):
    """Objectwise pairs with componentwise action; returns (P, proj1, proj2)."""
    cat = m.cat
    on_objects = {c: tuple((x, y) for x in m.at(c) for y in n.at(c)) for c in cat.objects}
    on_morphisms = {
        a.name: {
            (x, y): (m.apply(a.name, x), n.apply(a.name, y))
            for x in m.at(a.dom)
            for y in n.at(a.dom)
        }
        for a in cat.arrows
    }
    p = FinFunctor(cat, on_objects, on_morphisms, "%sx%s" % (m.name, n.name))
    proj1 = FinNatTrans(p, m, {c: {(x, y): x for x, y in p.at(c)} for c in cat.objects}, "pr1")
    proj2 = FinNatTrans(p, n, {c: {(x, y): y for x, y in p.at(c)} for c in cat.objects}, "pr2")
    return p, proj1, proj2


def pairing(f: FinNatTrans, g: FinNatTrans, prod: FinFunctor) -> FinNatTrans:
    """The unique map into a product induced by two maps out of a common source."""
    src = f.source
    comps = {
        c: {x: (f.apply(c, x), g.apply(c, x)) for x in src.at(c)}
        for c in src.cat.objects
    }
    return FinNatTrans(src, prod, comps, "<%s,%s>" % (f.name, g.name))


def equalizer(f: FinNatTrans, g: FinNatTrans):
    """Objectwise agreement subfunctor and its inclusion.

    The action restricts because both transformations are natural; if a
    corrupted input breaks that, the escape is reported as NonNatural with
    the witness element.
    """
    m = f.source
    cat = m.cat
    on_objects = {
        c: tuple(x for x in m.at(c) if f.apply(c, x) == g.apply(c, x)) for c in cat.objects
    }
    on_morphisms = {}
    for a in cat.arrows:
        table = {}
        allowed = set(on_objects[a.cod])
        for x in on_objects[a.dom]:
            y = m.apply(a.name, x)
            if y not in allowed:
                raise NonNatural(
                    "equalizer is not closed under the action of %s" % a.name,
                    witness={"arrow": a.name, "element": x},
                )
            table[x] = y
        on_morphisms[a.name] = table
    e = FinFunctor(cat, on_objects, on_morphisms, "eq(%s,%s)" % (f.name, g.name))
    incl = FinNatTrans(e, m, {c: {x: x for x in e.at(c)} for c in cat.objects}, "incl")
    return e, incl


def fibered_product(a: SlicedObject, b: SlicedObject):
    """Pairs with equal structure points, sliced over the common base.

    Returns (sliced object, proj1, proj2) where the projections are slice
    morphisms to ``a`` and ``b``.
    """
    cat = a.total.cat
    on_objects = {}
    for c in cat.objects:
        elems = [
            (x, y)
            for x in a.total.at(c)
            for y in b.total.at(c)
            if a.point(c, x) == b.point(c, y)
        ]
        on_objects[c] = tuple(sorted(elems, key=label_key))
    on_morphisms = {
        ar.name: {
            (x, y): (a.total.apply(ar.name, x), b.total.apply(ar.name, y))
            for (x, y) in on_objects[ar.dom]
        }
        for ar in cat.arrows
    }
    total = FinFunctor(cat, on_objects, on_morphisms, "%sx_L%s" % (a.name, b.name))
    structure = FinNatTrans(
        total,
        a.base,
        {c: {(x, y): a.point(c, x) for (x, y) in total.at(c)} for c in cat.objects},
        "fp-structure",
    )
    sliced = SlicedObject(total, structure, total.name)
    proj1 = FinNatTrans(total, a.total, {c: {e: e[0] for e in total.at(c)} for c in cat.objects}, "pr1")
    proj2 = FinNatTrans(total, b.total, {c: {e: e[1] for e in total.at(c)} for c in cat.objects}, "pr2")
    return sliced, proj1, proj2


def terminal_sliced(base: FinFunctor) -> SlicedObject:
    """The base over itself: the terminal object of the slice."""
    total = FinFunctor(base.cat, dict(base.on_objects), dict(base.on_morphisms), base.name)
    ident = FinNatTrans(
        total, base, {c: {x: x for x in base.at(c)} for c in base.cat.objects}, "id"
    )
    return SlicedObject(total, ident, base.name)
