"""Exact rational polyhedral cones via the double description method.

All cones are closed convex rational cones ``{x : f . x >= 0}``. Both
representations are kept over the integers: inequality forms, extreme rays,
and lineality bases are primitive integer vectors. There is no floating
point and no LP solver anywhere in this module; conversions run the double
description method with the combinatorial adjacency test, with lineality
handled by pivoting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import dot, integerize, primitive, rank, row_space_basis

IntVec = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class ZeroCone(ValueError):
    """Raised when an operation needs a nonzero cone."""


def normalize_form(coeffs, allow_zero: bool = False) -> IntVec:
    """Clear denominators and reduce to primitive integer coefficients."""
    v = integerize(coeffs)
    if not allow_zero and all(x == 0 for x in v):
        raise ValueError("the zero form is not allowed here")
    return v


def _reduce_mod_rows(v: IntVec, basis: list[IntVec]) -> IntVec:
    """Canonical representative of v modulo the row space of an RREF basis."""
    vec = [Fraction(x) for x in v]
    for row in basis:
        pivot = next(i for i, x in enumerate(row) if x != 0)
        if vec[pivot] != 0:
            f = vec[pivot] / row[pivot]
            vec = [x - f * y for x, y in zip(vec, row)]
    return integerize(vec)


def dd_vrep(dim: int, forms: list[IntVec]) -> tuple[list[IntVec], list[IntVec]]:
    """V-representation (extreme rays, lineality basis) of an H-cone.

    The rays come back primitive, reduced modulo the lineality space, and
    lexicographically sorted; the lineality basis is the canonical RREF one.
    """
    lineality: list[IntVec] = [
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[IntVec, int]] = []  # (vector, zero-set bitmask)
    for idx, a in enumerate(forms):
        bit = 1 << idx
        lin_vals = [dot(a, l) for l in lineality]
        pivot = next((i for i, v in enumerate(lin_vals) if v != 0), None)
        if pivot is not None:
            v = lineality[pivot]
            if lin_vals[pivot] < 0:
                v = tuple(-x for x in v)
            av = dot(a, v)
            new_lin = []
            for i, l in enumerate(lineality):
                if i == pivot:
                    continue
                al = lin_vals[i]
                if al == 0:
                    new_lin.append(l)
                else:
                    new_lin.append(primitive(tuple(av * x - al * y for x, y in zip(l, v))))
            lineality = new_lin
            new_rays = []
            for r, zs in rays:
                ar = dot(a, r)
                if ar != 0:
                    r = primitive(tuple(av * x - ar * y for x, y in zip(r, v)))
                new_rays.append((r, zs | bit))
            # The pivot vector becomes the single ray off the new hyperplane.
            new_rays.append((primitive(v), bit - 1))
            rays = new_rays
            continue
        vals = [dot(a, r) for r, _ in rays]
        if all(v >= 0 for v in vals):
            rays = [(r, zs | bit if val == 0 else zs) for (r, zs), val in zip(rays, vals)]
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        kept = [rays[i] for i in pos] + [(rays[i][0], rays[i][1] | bit) for i in zero]
        for p in pos:
            rp, zp = rays[p]
            for n in neg:
                rn, zn = rays[n]
                common = zp & zn
                adjacent = True
                for o, (_, zo) in enumerate(rays):
                    if o != p and o != n and (zo & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = primitive(tuple(vals[p] * x - vals[n] * y for x, y in zip(rn, rp)))
                kept.append((w, common | bit))
        rays = kept
    lin_basis = row_space_basis(list(lineality))
    out_rays = sorted(_reduce_mod_rows(r, lin_basis) for r, _ in rays)
    return out_rays, lin_basis


@dataclass(frozen=True)
class ConeProfile:
    dimension: int
    lineality_dim: int
    ray_count: int
    facet_count: int
    is_simplicial_mod_lineality: bool


class RationalCone:
    """A rational cone with lazily synchronized H- and V-representations."""

    __slots__ = ("dim", "_ineqs", "_vrep", "_dualrep")

    def __init__(self, dim: int, _ineqs=None, _vrep=None, _dualrep=None):
        if dim < 1:
            raise ValueError("ambient dimension must be >= 1")
        self.dim = dim
        self._ineqs = _ineqs
        self._vrep = _vrep
        self._dualrep = _dualrep

    @classmethod
    def from_inequalities(cls, dim: int, forms) -> "RationalCone":
        normalized = []
        for f in forms:
            if len(f) != dim:
                raise DimensionMismatch(f"form {f} does not have length {dim}")
            v = normalize_form(f, allow_zero=True)
            if any(x != 0 for x in v):
                normalized.append(v)
        return cls(dim, _ineqs=tuple(sorted(set(normalized))))

    @classmethod
    def from_generators(cls, dim: int, rays, lineality=()) -> "RationalCone":
        gens = []
        for r in list(rays) + list(lineality) + [tuple(-x for x in l) for l in lineality]:
            if len(r) != dim:
                raise DimensionMismatch(f"generator {r} does not have length {dim}")
            v = normalize_form(r, allow_zero=True)
            if any(x != 0 for x in v):
                gens.append(v)
        # Generators of the cone are inequality forms of its dual.
        dualrep = dd_vrep(dim, sorted(set(gens)))
        return cls(dim, _dualrep=dualrep)

    # -- representations ---------------------------------------------------

    def _forms_for_dd(self) -> list[IntVec]:
        if self._ineqs is not None:
            return list(self._ineqs)
        facets, span_perp = self._dualrep
        return list(facets) + [l for l in span_perp] + [tuple(-x for x in l) for l in span_perp]

    def vrep(self) -> tuple[list[IntVec], list[IntVec]]:
        if self._vrep is None:
            self._vrep = dd_vrep(self.dim, self._forms_for_dd())
        return self._vrep

    def dualrep(self) -> tuple[list[IntVec], list[IntVec]]:
        """V-representation of the dual cone: (facet normals, span-complement)."""
        if self._dualrep is None:
            rays, lin = self.vrep()
            forms = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
            self._dualrep = dd_vrep(self.dim, sorted(set(forms)))
        return self._dualrep

    @property
    def rays(self) -> tuple[IntVec, ...]:
        return tuple(self.vrep()[0])

    @property
    def lineality(self) -> tuple[IntVec, ...]:
        return tuple(self.vrep()[1])

    @property
    def facets(self) -> tuple[IntVec, ...]:
        return tuple(self.dualrep()[0])

    @property
    def span_equations(self) -> tuple[IntVec, ...]:
        return tuple(self.dualrep()[1])

    @property
    def inequalities(self) -> tuple[IntVec, ...]:
        if self._ineqs is not None:
            return self._ineqs
        facets, span_perp = self.dualrep()
        forms = list(facets) + list(span_perp) + [tuple(-x for x in l) for l in span_perp]
        return tuple(sorted(set(forms)))

    # -- structure ---------------------------------------------------------

    def analyze(self) -> ConeProfile:
        rays, lin = self.vrep()
        facets, span_perp = self.dualrep()
        dimension = self.dim - len(span_perp)
        return ConeProfile(
            dimension=dimension,
            lineality_dim=len(lin),
            ray_count=len(rays),
            facet_count=len(facets),
            is_simplicial_mod_lineality=(len(rays) == dimension - len(lin)),
        )

    def dual(self) -> "RationalCone":
        vrep = self.vrep()
        dualrep = self.dualrep()
        return RationalCone(self.dim, _vrep=dualrep, _dualrep=vrep)

    # -- point and cone queries ---------------------------------------------

    def contains_point(self, v) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch("point has the wrong length")
        facets, span_perp = self.dualrep()
        return all(dot(f, v) >= 0 for f in facets) and all(dot(e, v) == 0 for e in span_perp)

    def contains(self, other: "RationalCone") -> bool:
        if other.dim != self.dim:
            raise DimensionMismatch("cones live in different spaces")
        facets, span_perp = self.dualrep()
        rays, lin = other.vrep()
        for r in rays:
            if any(dot(f, r) < 0 for f in facets) or any(dot(e, r) != 0 for e in span_perp):
                return False
        for l in lin:
            if any(dot(f, l) != 0 for f in facets) or any(dot(e, l) != 0 for e in span_perp):
                return False
        return True

    def compare(self, other: "RationalCone") -> str:
        """One of 'equal', 'a_subset_b', 'b_subset_a', 'incomparable'."""
        ab = other.contains(self)
        ba = self.contains(other)
        if ab and ba:
            return "equal"
        if ab:
            return "a_subset_b"
        if ba:
            return "b_subset_a"
        return "incomparable"

    def same_cone(self, other: "RationalCone") -> bool:
        return self.compare(other) == "equal"

    def interior_point(self) -> IntVec:
        """A point in the relative interior (strict on every facet)."""
        rays, lin = self.vrep()
        if not rays:
            if not lin:
                raise ZeroCone("the zero cone has no interior point")
            return tuple(0 for _ in range(self.dim))
        return tuple(sum(col) for col in zip(*rays))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        rays, lin = self.vrep()
        return {
            "dim": self.dim,
            "ineqs": [list(f) for f in self.inequalities],
            "rays": [list(r) for r in rays],
            "lineality": [list(l) for l in lin],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RationalCone":
        cone = cls.from_inequalities(data["dim"], [tuple(f) for f in data["ineqs"]])
        if "rays" in data and "lineality" in data:
            stored = cls(
                data["dim"],
                _vrep=(
                    [tuple(r) for r in data["rays"]],
                    [tuple(l) for l in data["lineality"]],
                ),
            )
            if not (cone.contains(stored) and stored.contains(cone)):
                raise ValueError("stored V-representation disagrees with the inequalities")
        return cone

    def __repr__(self) -> str:
        state = []
        if self._ineqs is not None:
            state.append(f"{len(self._ineqs)} ineqs")
        if self._vrep is not None:
            state.append(f"{len(self._vrep[0])} rays, lin {len(self._vrep[1])}")
        return f"RationalCone(dim={self.dim}, {'; '.join(state) or 'lazy'})"


def cone_from_inequalities(m: int, forms) -> RationalCone:
    """Cone {x : f . x >= 0 for all f} in dimension m."""
    return RationalCone.from_inequalities(m, forms)


def extremality_certificate(cone: RationalCone) -> bool:
    """Check every listed ray is extreme: its active facets cut a 1-dim face.

    This is the Farkas-style consistency test used by the test suite; it
    relies only on containment arithmetic, not on the DD bookkeeping.
    """
    rays, lin = cone.vrep()
    facets, span_perp = cone.dualrep()
    lin_dim = len(lin)
    for r in rays:
        active = [f for f in facets if dot(f, r) == 0]
        face_cut = list(active) + list(span_perp)
        if not face_cut:
            if cone.dim - lin_dim != 1:
                return False
            continue
        if rank(face_cut) != cone.dim - lin_dim - 1:
            return False
    return True
