"""The committed test corpus: maps, algebras, morphisms, finite instances.

Everything the law suite runs on is fixed data in ``weilad/data``:
polynomial/rational maps (exact in rational mode), transcendental maps
(float mode), a family of truncation algebras with a set of morphisms
between them, and the finite category instance files.  Randomized inputs on
top are drawn from per-map safe windows with seeds derived by hashing, so a
given seed reproduces byte-identical runs.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import scalars
from .algebra import (
    WeilAlgebra,
    base_algebra,
    canonical_morphisms,
    dual_algebra,
    identity_morphism,
    jet_algebra,
    mixed_algebra,
    morphism_from_generator_images,
    tensor,
    tensor_of_morphisms,
)
from .expr import SmoothMap, parse_function_file
from .fincat import Instance, load_instance
from .numbers import WeilNumber, number


@dataclass(frozen=True)
class CorpusMap:
    """A committed map with a safe evaluation window for its inputs."""

    name: str
    smooth_map: SmoothMap
    lo: Fraction
    hi: Fraction
    float_point: tuple

    @property
    def arity(self) -> int:
        return self.smooth_map.arity


_WINDOWS = {
    # rational window (lo, hi) for random augmentations, float base point
    "p01_square": (Fraction(-2), Fraction(2), (0.7,)),
    "p02_cubic": (Fraction(-2), Fraction(2), (1.3,)),
    "p03_bilinear": (Fraction(-2), Fraction(2), (0.7, 1.1)),
    "p04_mixed_poly": (Fraction(-2), Fraction(2), (0.4, 0.9)),
    "p05_geom": (Fraction(1, 4), Fraction(2), (0.5,)),
    "p06_cayley": (Fraction(1, 4), Fraction(2), (0.6, 1.2)),
    "p07_trilinear": (Fraction(-2), Fraction(2), (0.5, 0.8, 1.1)),
    "p08_quintic": (Fraction(-2), Fraction(2), (0.9,)),
    "p09_ratio": (Fraction(1, 4), Fraction(2), (0.7, 0.4)),
    "p10_pow4": (Fraction(1, 4), Fraction(2), (0.8,)),
    "p11_pair": (Fraction(-2), Fraction(2), (0.5, 1.4)),
    "p12_constmix": (Fraction(-2), Fraction(2), (1.1, 0.6)),
    "s01_exp": (None, None, (0.4,)),
    "s02_sincos": (None, None, (0.7,)),
    "s03_expsin": (None, None, (0.5,)),
    "s04_logpoly": (None, None, (0.8,)),
    "s05_sqrtpoly": (None, None, (0.9,)),
    "s06_tanh_atan": (None, None, (0.6,)),
    "s07_expxy": (None, None, (0.5, 0.8)),
    "s08_wave": (None, None, (0.3, 0.7)),
    "s09_logmix": (None, None, (0.4,)),
    "s10_gauss": (None, None, (0.8, 0.5)),
    "s11_tan": (None, None, (0.9,)),
    "s12_rsqrt": (None, None, (0.3,)),
}


def _load_maps(prefix: str):
    out = []
    root = resources.files("weilad").joinpath("data/corpus")
    for entry in sorted(p.name for p in root.iterdir() if p.name.endswith(".fn")):
        if not entry.startswith(prefix):
            continue
        name = entry[: -len(".fn")]
        smooth = parse_function_file(root.joinpath(entry).read_text(encoding="utf-8"))
        lo, hi, fpoint = _WINDOWS[name]
        out.append(CorpusMap(name, smooth, lo, hi, fpoint))
    return out


_POLYRAT = None
_SMOOTH = None


def polyrat_maps():
    """Polynomial and rational maps; exact under rational coefficients."""
    global _POLYRAT
    if _POLYRAT is None:
        _POLYRAT = tuple(_load_maps("p"))
    return _POLYRAT


def smooth_maps():
    """Transcendental compositions; float mode only."""
    global _SMOOTH
    if _SMOOTH is None:
        _SMOOTH = tuple(_load_maps("s"))
    return _SMOOTH


def corpus_map(name: str) -> CorpusMap:
    for m in polyrat_maps() + smooth_maps():
        if m.name == name:
            return m
    raise KeyError(name)


# ---------------------------------------------------------------------------
# algebras and morphisms


def algebra_family():
    """The bundled family the exhaustive algebra checks run over."""
    d1 = dual_algebra(1)
    j2 = jet_algebra(2)
    return (
        base_algebra(),
        d1,
        dual_algebra(2),
        j2,
        jet_algebra(3),
        mixed_algebra(1, 1),
        tensor(d1, dual_algebra(1)).algebra,
        tensor(j2, dual_algebra(1)).algebra,
    )


def tensor_pairs():
    """Algebra pairs for the nesting-vs-tensor law."""
    d1 = dual_algebra(1)
    j2 = jet_algebra(2)
    return (
        (d1, d1),
        (d1, j2),
        (j2, d1),
        (j2, j2),
        (dual_algebra(2), d1),
        (mixed_algebra(1, 1), d1),
    )


def morphism_family():
    """Named morphisms between family algebras; at least one of each flavor."""
    d1 = dual_algebra(1)
    d2 = dual_algebra(2)
    j2 = jet_algebra(2)
    j3 = jet_algebra(3)
    dd = tensor(d1, dual_algebra(1)).algebra
    aug_j2, _ = canonical_morphisms(j2)
    _, unit_d1 = canonical_morphisms(d1)
    aug_d1, _ = canonical_morphisms(d1)

    out = {
        "id_dual": identity_morphism(d1),
        "scale2": morphism_from_generator_images(d1, d1, [number(d1, [0, 2])]),
        "aug_jet2": aug_j2,
        "unit_dual": unit_d1,
        "sum_embed": morphism_from_generator_images(j2, dd, [number(dd, [0, 1, 1, 0])]),
        "swap_dd": morphism_from_generator_images(
            dd, dd, [number(dd, [0, 1, 0, 0]), number(dd, [0, 0, 1, 0])]
        ),
        "trunc32": morphism_from_generator_images(j3, j2, [number(j2, [0, 1, 0])]),
        "square_embed": morphism_from_generator_images(d1, j2, [number(j2, [0, 0, 1])]),
        "proj21": morphism_from_generator_images(
            d2, d1, [number(d1, [0, 1]), number(d1, [0, 0])]
        ),
        "aug_x_id": tensor_of_morphisms(aug_d1, identity_morphism(d1)),
    }
    return out


def composable_pairs():
    """(phi, psi) with cod(phi) = dom(psi), for the composition law."""
    m = morphism_family()
    return (
        (m["scale2"], m["scale2"]),
        (m["sum_embed"], m["swap_dd"]),
        (m["sum_embed"], m["aug_x_id"]),
        (m["trunc32"], m["sum_embed"]),
        (m["square_embed"], m["aug_jet2"]),
        (m["unit_dual"], m["square_embed"]),
    )


# ---------------------------------------------------------------------------
# randomized inputs


def derived_seed(*parts) -> int:
    digest = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    import math

    den = rng.randint(1, 4)
    lo_n = math.ceil(lo * den)
    hi_n = math.floor(hi * den)
    if lo_n > hi_n:
        den = 8
        lo_n = math.ceil(lo * den)
        hi_n = math.floor(hi * den)
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_number(w: WeilAlgebra, rng: random.Random, mode: str,
                  lo=None, hi=None, center: float = 0.0) -> WeilNumber:
    """A random element: augmentation from the safe window, small nilpotent part."""
    if mode == scalars.RATIONAL:
        lo = Fraction(-2) if lo is None else lo
        hi = Fraction(2) if hi is None else hi
        coeffs = [random_rational(rng, lo, hi)]
        coeffs += [random_rational(rng, Fraction(-2), Fraction(2)) for _ in range(w.dim - 1)]
    else:
        coeffs = [center + rng.uniform(-0.3, 0.3)]
        coeffs += [rng.uniform(-1.0, 1.0) for _ in range(w.dim - 1)]
    return number(w, coeffs, mode)


def random_inputs(entry: CorpusMap, w: WeilAlgebra, rng: random.Random, mode: str):
    """One random element per input variable, inside the map's safe window."""
    out = []
    for i in range(entry.arity):
        if mode == scalars.RATIONAL:
            out.append(random_number(w, rng, mode, entry.lo, entry.hi))
        else:
            out.append(random_number(w, rng, mode, center=entry.float_point[i]))
    return out


def random_point(entry: CorpusMap, rng: random.Random, mode: str):
    if mode == scalars.RATIONAL:
        return tuple(random_rational(rng, entry.lo, entry.hi) for _ in range(entry.arity))
    return tuple(c + rng.uniform(-0.3, 0.3) for c in entry.float_point)


# ---------------------------------------------------------------------------
# finite instances


_INSTANCES = None

INSTANCE_NAMES = ("terminal", "arrow", "iso", "idem")


def bundled_instances() -> dict:
    global _INSTANCES
    if _INSTANCES is None:
        import json

        out = {}
        root = resources.files("weilad").joinpath("data/instances")
        for name in INSTANCE_NAMES:
            doc = json.loads(root.joinpath(name + ".json").read_text(encoding="utf-8"))
            out[name] = load_instance(doc)
        _INSTANCES = out
    return _INSTANCES


def bundled_instance(name: str) -> Instance:
    return bundled_instances()[name]
