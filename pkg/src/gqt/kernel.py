"""Self-orthogonal geometry of a Hermitian form: points, lines, polarity.

For the standard form in dimension 4 over GF(q^2) the point set is the
Hermitian surface X0^(q+1) + X1^(q+1) + X2^(q+1) + X3^(q+1) = 0, a
generalized quadrangle of order (q^2, q).  Enumeration is brute force
over normalized rays; lines come from spans of collinear point pairs.
"""

from __future__ import annotations

import csv
import io
import itertools
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import (
    DependentBasisError,
    DimensionMismatchError,
    NotKernelPointError,
    NotUniqueError,
    SelfOrthogonalInputError,
    TooLargeError,
    ZeroVectorError,
)
from .field import FieldElement, FieldSpec
from .linalg import FieldMatrix, FieldVector, HermitianForm, nullspace

# Default desk-scale guard for enumeration; override with the flag or
# GQT_GUARD_OVERRIDE=1.
_MAX_DIM = 4
_MAX_Q = 5


class ProjectivePoint:
    """Normalized ray: leftmost nonzero coordinate equals 1."""

    __slots__ = ("coords",)

    def __init__(self, coords: FieldVector):
        self.coords = normalize_ray(coords)

    @property
    def spec(self) -> FieldSpec:
        return self.coords.spec

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "pt(" + ", ".join(str(e) for e in self.coords) + ")"

    def to_json(self) -> list:
        return self.coords.to_json()


def normalize_ray(v: FieldVector) -> FieldVector:
    """Scale so the leftmost nonzero coordinate is 1."""
    lead = next((e for e in v.entries if not e.is_zero()), None)
    if lead is None:
        raise ZeroVectorError("the zero vector spans no ray")
    if lead == v.spec.one:
        return v
    return v.scale(lead.inverse())


def enumerate_projective_points(spec: FieldSpec, dim: int) -> Iterator[FieldVector]:
    """All normalized rays of PG(dim-1, order), deterministic order."""
    elements = list(spec.elements())
    one, zero = spec.one, spec.zero
    for lead in range(dim):
        prefix = [zero] * lead + [one]
        free = dim - lead - 1
        for tail in itertools.product(elements, repeat=free):
            yield FieldVector(spec, prefix + list(tail))


def is_self_orthogonal(v: FieldVector, f: HermitianForm) -> bool:
    return f.evaluate(v, v).is_zero()


@dataclass
class KernelGeometry:
    """Enumerated self-orthogonal points and totally isotropic lines."""

    form: HermitianForm
    points: Tuple[ProjectivePoint, ...]
    lines: Tuple[FrozenSet[int], ...]
    incidence: Dict[int, FrozenSet[int]]
    _point_index: Dict[ProjectivePoint, int] = field(default_factory=dict)
    _adjacency: Tuple[FrozenSet[int], ...] = ()

    @property
    def spec(self) -> FieldSpec:
        return self.form.spec

    def index_of(self, point: ProjectivePoint) -> int:
        idx = self._point_index.get(point)
        if idx is None:
            raise NotKernelPointError(f"{point!r} is not a kernel point")
        return idx

    def contains(self, point: ProjectivePoint) -> bool:
        return point in self._point_index

    def collinear_indices(self, i: int) -> FrozenSet[int]:
        return self._adjacency[i]

    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "dim": self.form.dim,
            "gram": self.form.gram.to_json(),
            "num_points": len(self.points),
            "num_lines": len(self.lines),
            "points": [p.to_json() for p in self.points],
            "lines": [sorted(line) for line in self.lines],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        spec = self.spec
        w.writerow(["# p", spec.p, "k", spec.k, "dim", self.form.dim,
                    "modulus", " ".join(str(c) for c in spec.modulus)])
        w.writerow(["kind", "index", "data"])
        for i, p in enumerate(self.points):
            w.writerow(["point", i, " ".join(
                ",".join(str(c) for c in e.coeffs) for e in p.coords)])
        for i, line in enumerate(self.lines):
            w.writerow(["line", i, " ".join(str(j) for j in sorted(line))])
        return buf.getvalue()


def _guard(spec: FieldSpec, dim: int, override: bool) -> None:
    if override or os.environ.get("GQT_GUARD_OVERRIDE") == "1":
        return
    if dim > _MAX_DIM or (spec.q or spec.order) > _MAX_Q:
        raise TooLargeError(
            f"enumeration guard: dim <= {_MAX_DIM} and q <= {_MAX_Q}; "
            "pass override=True or set GQT_GUARD_OVERRIDE=1"
        )


def enumerate_kernel(f: HermitianForm, override: bool = False) -> KernelGeometry:
    """All self-orthogonal rays and all totally isotropic projective lines."""
    spec = f.spec
    dim = f.dim
    _guard(spec, dim, override)

    points: List[ProjectivePoint] = []
    for v in enumerate_projective_points(spec, dim):
        if f.evaluate(v, v).is_zero():
            points.append(ProjectivePoint(v))
    point_index = {p: i for i, p in enumerate(points)}

    n = len(points)
    adjacency: List[Set[int]] = [set() for _ in range(n)]
    for i in range(n):
        pi = points[i].coords
        for j in range(i + 1, n):
            if f.evaluate(pi, points[j].coords).is_zero():
                adjacency[i].add(j)
                adjacency[j].add(i)

    # Every span of two collinear kernel points is totally isotropic for a
    # Hermitian form; deduplicate spans by their sorted point-index sets.
    lines: Set[FrozenSet[int]] = set()
    elements = list(spec.elements())
    for i in range(n):
        u = points[i].coords
        for j in adjacency[i]:
            if j < i:
                continue
            v = points[j].coords
            member_ids = {i, j}
            for lam in elements:
                w = u.scale(lam) + v
                member_ids.add(point_index[ProjectivePoint(w)])
            lines.add(frozenset(member_ids))
    sorted_lines = tuple(sorted(lines, key=lambda s: tuple(sorted(s))))

    incidence: Dict[int, Set[int]] = {i: set() for i in range(n)}
    for li, line in enumerate(sorted_lines):
        for pi in line:
            incidence[pi].add(li)

    return KernelGeometry(
        form=f,
        points=tuple(points),
        lines=sorted_lines,
        incidence={i: frozenset(s) for i, s in incidence.items()},
        _point_index=point_index,
        _adjacency=tuple(frozenset(s) for s in adjacency),
    )


def collinear(x: ProjectivePoint, y: ProjectivePoint, geom: KernelGeometry) -> bool:
    """True iff <x,y> = 0; cross-checked against shared lines."""
    i, j = geom.index_of(x), geom.index_of(y)
    by_form = geom.form.evaluate(x.coords, y.coords).is_zero()
    if i == j:
        return True
    by_lines = bool(geom.incidence[i] & geom.incidence[j])
    assert by_form == by_lines, "form and incidence disagree on collinearity"
    return by_form


# --- polarity -----------------------------------------------------------------

def polar_hyperplane(v: FieldVector, f: HermitianForm) -> FieldVector:
    """Coefficients c with pi(v) = {w : sum c_i w_i = 0}; c = conj(v) gram."""
    if v.is_zero():
        raise ZeroVectorError("the polar of the zero vector is undefined")
    if len(v) != f.dim:
        raise DimensionMismatchError("vector length does not match the form")
    conj_row = FieldMatrix(f.spec, [[e.conj() for e in v.entries]])
    return FieldVector(f.spec, (conj_row @ f.gram).rows[0])


def polar_of_subspace(basis: Sequence[FieldVector], f: HermitianForm) -> List[FieldVector]:
    """Basis of the intersection of the polar hyperplanes of a subspace."""
    basis = list(basis)
    if not basis:
        raise DependentBasisError("empty basis")
    functional_rows = [polar_hyperplane(v, f).entries for v in basis]
    m = FieldMatrix(f.spec, functional_rows)
    if m.rank() < len(basis):
        raise DependentBasisError("basis vectors are linearly dependent")
    return nullspace(m)


def polar_point(basis: Sequence[FieldVector], f: HermitianForm) -> ProjectivePoint:
    """Polar of a hyperplane-spanning basis, as a single projective point."""
    polar = polar_of_subspace(basis, f)
    if len(polar) != 1:
        raise NotUniqueError(f"polar has dimension {len(polar)}, expected a point")
    return ProjectivePoint(polar[0])


# --- axioms and derived objects -------------------------------------------------

@dataclass
class OneOrAllReport:
    """Outcome of the One-or-All sweep over non-incident (point, line) pairs."""

    pairs_checked: int
    count_distribution: Dict[int, int]
    violations: List[Tuple[int, int, int]]  # (point index, line index, count)
    gq_unique_line_failures: List[Tuple[int, int]]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.gq_unique_line_failures

    def to_json(self) -> dict:
        return {
            "pairs_checked": self.pairs_checked,
            "count_distribution": {str(k): v for k, v in sorted(self.count_distribution.items())},
            "violations": [list(v) for v in self.violations],
            "gq_unique_line_failures": [list(v) for v in self.gq_unique_line_failures],
            "passed": self.passed,
        }


def verify_one_or_all(geom: KernelGeometry) -> OneOrAllReport:
    """Check: a point off a line sees either one or all of its points.

    Also checks the rank-2 refinement: exactly one line through the point
    meets the line.  Violations are recorded, not raised.
    """
    distribution: Dict[int, int] = {}
    violations: List[Tuple[int, int, int]] = []
    gq_failures: List[Tuple[int, int]] = []
    pairs = 0
    for li, line in enumerate(geom.lines):
        members = sorted(line)
        size = len(members)
        for xi in range(len(geom.points)):
            if xi in line:
                continue
            pairs += 1
            adjacent = geom.collinear_indices(xi)
            seen = [pj for pj in members if pj in adjacent]
            count = len(seen)
            distribution[count] = distribution.get(count, 0) + 1
            if count not in (1, size):
                violations.append((xi, li, count))
                continue
            if count == 1:
                # unique connecting line through x hitting this line
                connecting = geom.incidence[xi] & geom.incidence[seen[0]]
                if len(connecting) != 1:
                    gq_failures.append((xi, li))
    return OneOrAllReport(
        pairs_checked=pairs,
        count_distribution=distribution,
        violations=violations,
        gq_unique_line_failures=gq_failures,
    )


def hermitian_curve(x: ProjectivePoint, geom: KernelGeometry) -> List[ProjectivePoint]:
    """Kernel points in the polar plane of a non-self-orthogonal point."""
    f = geom.form
    if f.evaluate(x.coords, x.coords).is_zero():
        raise SelfOrthogonalInputError("curve basepoint must not be self-orthogonal")
    return [p for p in geom.points if f.evaluate(x.coords, p.coords).is_zero()]


def unique_meet(line: FrozenSet[int], curve: Sequence[ProjectivePoint],
                geom: KernelGeometry) -> ProjectivePoint:
    """The single common point of a kernel line and a Hermitian curve."""
    curve_ids = {geom.index_of(p) for p in curve}
    common = sorted(line & curve_ids)
    if len(common) != 1:
        raise NotUniqueError(f"line meets curve in {len(common)} points, expected 1")
    return geom.points[common[0]]
