"""Pointwise exponential objects and the brute-force currying verifier.

At an object W the exponential M^N collects the families that assign to each
arrow out of W a function N(cod) -> M(cod), subject to the compatibility
equations along composable pairs; the action of an arrow reindexes a family
by precomposition.  Equivalently (and this is how the verifier reads it),
such a family is exactly an element of the set of natural transformations
out of the representable-at-W product with N into M, which is why currying
against arbitrary probe functors must be a bijection.
"""

from __future__ import annotations

import itertools

from ..errors import NonNatural, SizeLimit
from ..report import Report
from .core import (
    FinFunctor,
    FinNatTrans,
    enumerate_nat_trans,
    resolve_max_enum,
    validate_functor,
)
from .limits import product


def _sorted_arrows_from(cat, obj):
    return tuple(sorted(cat.arrows_from(obj)))


def family_lookup(element) -> dict:
    """Element of an exponential -> {arrow: images tuple}."""
    return dict(element)


def exponential(m: FinFunctor, n: FinFunctor, max_enum=None) -> FinFunctor:
    """The functor of compatible function families, built by bounded search.

    An element at W is a tuple of (arrow, images) pairs over the sorted
    arrows out of W; ``images[k]`` is where the k-th element of N(cod arrow)
    goes.  The search is depth-first over arrows with the compatibility
    equations checked as soon as both participating components are assigned;
    the raw candidate count is bounded up front and overflow raises
    SizeLimit instead of truncating.
    """
    cat = m.cat
    bound = resolve_max_enum(max_enum)
    n_index = {c: {x: i for i, x in enumerate(n.at(c))} for c in cat.objects}

    on_objects = {}
    for w in cat.objects:
        arrs = _sorted_arrows_from(cat, w)
        pos = {a: i for i, a in enumerate(arrs)}

        total = 1
        empty = False
        for a in arrs:
            cod = cat.cod(a)
            if n.at(cod) and not m.at(cod):
                empty = True
                break
            total *= max(1, len(m.at(cod))) ** len(n.at(cod))
            if total > bound:
                raise SizeLimit(
                    "exponential candidate count at %s exceeds bound %d" % (w, bound)
                )
        if empty:
            on_objects[w] = ()
            continue

        by_level: dict = {i: [] for i in range(len(arrs))}
        for phi1 in arrs:
            for phi2 in cat.arrows_from(cat.cod(phi1)):
                phi21 = cat.compose(phi2, phi1)
                by_level[max(pos[phi1], pos[phi21])].append((phi1, phi2, phi21))

        found = []
        assign: dict = {}

        def extend(i, w=w, arrs=arrs, by_level=by_level, found=found, assign=assign):
            if i == len(arrs):
                found.append(tuple((a, assign[a]) for a in arrs))
                return
            a = arrs[i]
            cod = cat.cod(a)
            for images in itertools.product(m.at(cod), repeat=len(n.at(cod))):
                assign[a] = images
                if _constraints_hold(cat, m, n, n_index, assign, by_level[i]):
                    extend(i + 1)
            del assign[a]

        extend(0)
        on_objects[w] = tuple(found)

    element_sets = {w: set(v) for w, v in on_objects.items()}
    on_morphisms = {}
    for ar in cat.arrows:
        arrs2 = _sorted_arrows_from(cat, ar.cod)
        table = {}
        for s in on_objects[ar.dom]:
            lookup = family_lookup(s)
            image = tuple((a2, lookup[cat.compose(a2, ar.name)]) for a2 in arrs2)
            if image not in element_sets[ar.cod]:
                raise NonNatural(
                    "reindexed family escapes the exponential",
                    witness={"arrow": ar.name, "element": s},
                )
            table[s] = image
        on_morphisms[ar.name] = table

    return FinFunctor(cat, on_objects, on_morphisms, "(%s)^(%s)" % (m.name, n.name))


def _constraints_hold(cat, m, n, n_index, assign, constraints) -> bool:
    for phi1, phi2, phi21 in constraints:
        s1 = assign[phi1]
        s21 = assign[phi21]
        cod1 = cat.cod(phi1)
        m_phi2 = m.map(phi2)
        n_phi2 = n.map(phi2)
        idx21 = n_index[cat.cod(phi2)]
        for k, elem in enumerate(n.at(cod1)):
            if m_phi2[s1[k]] != s21[idx21[n_phi2[elem]]]:
                return False
    return True


def curry_transform(t: FinNatTrans, p: FinFunctor, n: FinFunctor, exp: FinFunctor) -> FinNatTrans:
    """Turn t: P x N => M into P => M^N by partial application along each arrow."""
    cat = p.cat
    comps = {}
    for w in cat.objects:
        arrs = _sorted_arrows_from(cat, w)
        table = {}
        for pt in p.at(w):
            fam = []
            for a in arrs:
                cod = cat.cod(a)
                moved = p.apply(a, pt)
                fam.append((a, tuple(t.apply(cod, (moved, x)) for x in n.at(cod))))
            table[pt] = tuple(fam)
        comps[w] = table
    return FinNatTrans(p, exp, comps, "curry(%s)" % t.name)


def verify_ccc(m, n, probes, probe_morphisms=(), max_enum=None) -> Report:
    """Check the currying bijection of the exponential against brute force.

    For every probe P, all transformations P x N => M and P => M^N are
    enumerated outright and the constructed currying map is checked to be a
    bijection between them; supplied transformations between probes are used
    to check that currying is natural in the probe.  Counts per probe land
    in the report data so independent runs can be compared verbatim.
    """
    rep = Report("currying (%s)^(%s)" % (m.name, n.name))
    exp = exponential(m, n, max_enum)
    rep.merge(validate_functor(exp, "exponential"))
    exp_sets = {c: set(exp.at(c)) for c in m.cat.objects}

    curried_by_probe = {}
    for pi, p in enumerate(probes):
        pname = p.name or "probe%d" % pi
        pn, _, _ = product(p, n)
        hom_uncurried = list(enumerate_nat_trans(pn, m, max_enum))
        hom_curried = list(enumerate_nat_trans(p, exp, max_enum))

        curried = []
        landed, witness = True, None
        for t in hom_uncurried:
            ct = curry_transform(t, p, n, exp)
            curried.append(ct)
            if landed:
                for c in m.cat.objects:
                    bad = [x for x in ct.components[c].values() if x not in exp_sets[c]]
                    if bad:
                        landed, witness = False, {"probe": pname, "object": c, "family": bad[0]}
                        break
        rep.add("%s: curried maps land in the exponential" % pname, landed, witness)

        canon_a = {ct.canonical() for ct in curried}
        canon_b = {t.canonical() for t in hom_curried}
        rep.add(
            "%s: currying is injective" % pname,
            len(canon_a) == len(hom_uncurried),
            {"distinct": len(canon_a), "maps": len(hom_uncurried)},
        )
        rep.add(
            "%s: currying is onto" % pname,
            canon_a == canon_b,
            {"missing": len(canon_b - canon_a), "extra": len(canon_a - canon_b)},
        )
        rep.data[pname] = {
            "hom_uncurried": len(hom_uncurried),
            "hom_curried": len(hom_curried),
            "bijective": len(canon_a) == len(hom_uncurried) and canon_a == canon_b,
        }
        curried_by_probe[id(p)] = (p, pn, hom_uncurried)

    for ui, u in enumerate(probe_morphisms):
        src, tgt = u.source, u.target
        if id(tgt) not in curried_by_probe:
            continue
        _, _, hom_tgt = curried_by_probe[id(tgt)]
        ok, witness = True, None
        for t in hom_tgt:
            pulled_comps = {
                c: {
                    (x, y): t.apply(c, (u.apply(c, x), y))
                    for x in src.at(c)
                    for y in n.at(c)
                }
                for c in m.cat.objects
            }
            pn_src, _, _ = product(src, n)
            pulled = FinNatTrans(pn_src, m, pulled_comps)
            left = curry_transform(pulled, src, n, exp).canonical()
            right = _compose_then_canonical(curry_transform(t, tgt, n, exp), u)
            if left != right:
                ok, witness = False, {"probe_morphism": ui, "transform": t.canonical()}
                break
        rep.add("currying is natural along probe morphism %d" % ui, ok, witness)

    return rep


def _compose_then_canonical(curried: FinNatTrans, u: FinNatTrans):
    comps = {
        c: {x: curried.apply(c, u.apply(c, x)) for x in u.source.at(c)}
        for c in u.source.cat.objects
    }
    return FinNatTrans(u.source, curried.target, comps).canonical()
