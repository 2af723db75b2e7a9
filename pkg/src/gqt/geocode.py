"""Point-transport coding scheme over the self-orthogonal geometry.

Alice and Bob share three pairwise disjoint kernel lines and a unitary.
A non-self-orthogonal state is encoded as the three intersection points
of its polar plane's curve with the shared lines, pushed through the
unitary; transport uses the super-dense channel bit-by-bit; decoding
inverts the unitary, spans the plane through the three points and takes
its polar point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DegenerateSpanError,
    ExhaustedSearchError,
    MalformedBitstreamError,
    NotKernelPointError,
    SelfOrthogonalStateError,
)
from .field import FieldSpec
from .kernel import (
    KernelGeometry,
    ProjectivePoint,
    hermitian_curve,
    normalize_ray,
    polar_point,
    unique_meet,
)
from .linalg import FieldMatrix, FieldVector, random_unitary
from .protocols import sdc_decode, sdc_encode

SERIALIZATION_VERSION = 1


@dataclass
class GeoParams:
    """Shared parameters: three disjoint line indices and a unitary."""

    geom: KernelGeometry
    line_indices: Tuple[int, int, int]
    eta: FieldMatrix
    eta_inverse: FieldMatrix
    seed: int

    def to_json(self) -> dict:
        return {
            "field": self.geom.spec.to_json(),
            "seed": self.seed,
            "lines": [sorted(self.geom.lines[i]) for i in self.line_indices],
            "line_indices": list(self.line_indices),
            "eta": self.eta.to_json(),
        }


@dataclass
class GeoCiphertext:
    """Three transported kernel points plus their canonical bitstream."""

    points: Tuple[ProjectivePoint, ProjectivePoint, ProjectivePoint]
    bitstream: str

    def to_json(self) -> dict:
        return {
            "version": SERIALIZATION_VERSION,
            "points": [p.to_json() for p in self.points],
            "bitstream": self.bitstream,
        }


def agree_parameters(geom: KernelGeometry, seed: int) -> GeoParams:
    """Seeded choice of three pairwise disjoint lines and a unitary."""
    rng = random.Random(seed)
    order = list(range(len(geom.lines)))
    rng.shuffle(order)
    chosen: List[int] = []
    for li in order:
        if all(not (geom.lines[li] & geom.lines[cj]) for cj in chosen):
            chosen.append(li)
            if len(chosen) == 3:
                break
    if len(chosen) < 3:
        raise ExhaustedSearchError("no three pairwise disjoint lines found")
    eta = random_unitary(geom.form, rng.getrandbits(63))
    return GeoParams(
        geom=geom,
        line_indices=(chosen[0], chosen[1], chosen[2]),
        eta=eta,
        eta_inverse=eta.inverse(),
        seed=seed,
    )


def geo_encode(state: FieldVector, params: GeoParams) -> GeoCiphertext:
    """Three curve points on the shared lines, pushed through the unitary."""
    geom = params.geom
    form = geom.form
    if form.evaluate(state, state).is_zero():
        raise SelfOrthogonalStateError("state must not be self-orthogonal")
    x = ProjectivePoint(normalize_ray(state))
    curve = hermitian_curve(x, geom)
    meets = [
        unique_meet(geom.lines[li], curve, geom)
        for li in params.line_indices
    ]
    span = FieldMatrix(form.spec, [list(m.coords.entries) for m in meets])
    if span.rank() < 3:
        raise DegenerateSpanError(
            "the three intersection points do not span a plane"
        )
    transported = tuple(
        ProjectivePoint(params.eta @ m.coords) for m in meets
    )
    bits = serialize_points(transported, form.spec)
    return GeoCiphertext(points=transported, bitstream=bits)


def geo_decode(ct: GeoCiphertext, params: GeoParams) -> ProjectivePoint:
    """Invert the unitary, span the plane, return its polar point."""
    geom = params.geom
    for p in ct.points:
        if not geom.contains(p):
            raise NotKernelPointError(f"{p!r} is not a kernel point")
    pulled = [ProjectivePoint(params.eta_inverse @ p.coords) for p in ct.points]
    span = FieldMatrix(geom.spec, [list(p.coords.entries) for p in pulled])
    if span.rank() < 3:
        raise DegenerateSpanError("ciphertext points do not span a plane")
    return polar_point([p.coords for p in pulled], geom.form)


# --- bit serialization and transport ------------------------------------------------

def _bits_per_coeff(p: int) -> int:
    return max(1, (p - 1).bit_length())


def serialize_points(points: Sequence[ProjectivePoint], spec: FieldSpec) -> str:
    """Fixed-width bits: coordinates in order, coefficients little-endian."""
    width = _bits_per_coeff(spec.p)
    bits = []
    for point in points:
        for entry in point.coords.entries:
            for c in entry.coeffs:
                bits.append(format(c, f"0{width}b"))
    return "".join(bits)


def deserialize_points(bits: str, spec: FieldSpec, dim: int) -> List[ProjectivePoint]:
    """Inverse of serialize_points; validates widths and coefficient range."""
    width = _bits_per_coeff(spec.p)
    per_point = dim * spec.k * width
    if not bits or len(bits) % per_point != 0 or any(b not in "01" for b in bits):
        raise MalformedBitstreamError(
            f"bitstream length must be a positive multiple of {per_point}"
        )
    points = []
    for start in range(0, len(bits), per_point):
        chunk = bits[start:start + per_point]
        entries = []
        pos = 0
        for _ in range(dim):
            coeffs = []
            for _ in range(spec.k):
                c = int(chunk[pos:pos + width], 2)
                if c >= spec.p:
                    raise MalformedBitstreamError(f"coefficient {c} out of range for p={spec.p}")
                coeffs.append(c)
                pos += width
            entries.append(spec.element(coeffs))
        vec = FieldVector(spec, entries)
        if vec.is_zero():
            raise MalformedBitstreamError("decoded point is the zero vector")
        points.append(ProjectivePoint(vec))
    return points


def geo_transmit(ct: GeoCiphertext, spec: FieldSpec) -> Tuple[str, List[ProjectivePoint]]:
    """Push every chunk of the bitstream through the super-dense channel.

    Characteristic 2 carries one bit per Bell use (messages 00/01), other
    characteristics two bits; odd tails are padded with a zero bit that is
    stripped on receipt.
    """
    if not ct.points:
        raise MalformedBitstreamError("empty ciphertext")
    bits = ct.bitstream
    if not bits:
        raise MalformedBitstreamError("empty bitstream")
    received = []
    if spec.p == 2:
        for b in bits:
            message = "00" if b == "0" else "01"
            decoded = sdc_decode(sdc_encode(message, spec), spec)
            received.append("0" if decoded == "00" else "1")
    else:
        padded = bits + ("0" if len(bits) % 2 else "")
        for i in range(0, len(padded), 2):
            decoded = sdc_decode(sdc_encode(padded[i:i + 2], spec), spec)
            received.append(decoded)
        received = [b for chunk in received for b in chunk][: len(bits)]
    received_bits = "".join(received)
    dim = len(ct.points[0].coords)
    points = deserialize_points(received_bits, spec, dim)
    return received_bits, points


@dataclass
class RoundTripReport:
    """Batch encode/transmit/decode sweep outcome."""

    trials: int
    successes: int
    degenerate: int
    self_orthogonal_skipped: int
    witnesses: List[dict]

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "degenerate_count": self.degenerate,
            "self_orthogonal_skipped": self.self_orthogonal_skipped,
            "witnesses": self.witnesses,
        }


def roundtrip_sweep(params: GeoParams, trials: int, seed: int) -> RoundTripReport:
    """Seeded random non-self-orthogonal states through the full pipeline."""
    geom = params.geom
    spec = geom.spec
    rng = random.Random(seed)
    dim = geom.form.dim
    order = spec.order
    successes = 0
    degenerate = 0
    skipped = 0
    witnesses: List[dict] = []
    done = 0
    while done < trials:
        vec = FieldVector(spec, [spec.from_index(rng.randrange(order)) for _ in range(dim)])
        if vec.is_zero():
            continue
        if geom.form.evaluate(vec, vec).is_zero():
            skipped += 1
            continue
        done += 1
        try:
            ct = geo_encode(vec, params)
        except DegenerateSpanError:
            degenerate += 1
            witnesses.append({"state": vec.to_json(), "failure": "DegenerateSpan"})
            continue
        _, received = geo_transmit(ct, spec)
        recovered = geo_decode(GeoCiphertext(points=tuple(received), bitstream=ct.bitstream),
                               params)
        if recovered == ProjectivePoint(vec):
            successes += 1
        else:
            witnesses.append({
                "state": vec.to_json(),
                "failure": "Mismatch",
                "recovered": recovered.to_json(),
            })
    return RoundTripReport(
        trials=trials,
        successes=successes,
        degenerate=degenerate,
        self_orthogonal_skipped=skipped,
        witnesses=witnesses,
    )
