"""Sparse monomials: basis labels for quotients of polynomial rings."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=False)
class Monomial:
    """A monomial in finitely many generators, stored as sorted (index, exponent) pairs.

    The empty tuple is the unit monomial 1.  Exponents are always >= 1 for
    present indices.
    """

    exps: tuple = ()

    @staticmethod
    def of(pairs) -> "Monomial":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        merged: dict[int, int] = {}
        for idx, exp in pairs:
            if exp < 0:
                raise ValueError("negative exponent in monomial")
            if exp:
                merged[idx] = merged.get(idx, 0) + exp
        return Monomial(tuple(sorted(merged.items())))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def exponent(self, index: int) -> int:
        for i, e in self.exps:
            if i == index:
                return e
        return 0

    def support(self):
        return tuple(i for i, _ in self.exps)

    def is_unit(self) -> bool:
        return not self.exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        merged = dict(self.exps)
        for i, e in other.exps:
            merged[i] = merged.get(i, 0) + e
        return Monomial(tuple(sorted(merged.items())))

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(i) >= e for i, e in self.exps)

    def pure_power(self):
        """Return (index, exponent) if this is a power of a single generator, else None."""
        if len(self.exps) == 1:
            return self.exps[0]
        return None

    def shift(self, offset: int) -> "Monomial":
        """Reindex every generator by a constant offset (used by tensor products)."""
        return Monomial(tuple((i + offset, e) for i, e in self.exps))

    def sort_key(self, num_gens: int):
        """Degree first, then lexicographic with earlier generators ranked higher.

        Under this key the basis of k[x,y]/(x^2,xy,y^2) lists as 1, x, y.
        """
        dense = tuple(-self.exponent(i) for i in range(num_gens))
        return (self.degree, dense)

    def label(self, names) -> str:
        if not self.exps:
            return "1"
        parts = []
        for i, e in self.exps:
            parts.append(names[i] if e == 1 else "%s^%d" % (names[i], e))
        return "*".join(parts)

    def __repr__(self):
        return "Monomial(%r)" % (self.exps,)
