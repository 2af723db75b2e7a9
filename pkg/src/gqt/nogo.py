"""Cloneability and deletability classification of state pairs.

A cloning (or deleting) operator forces phi (x) psi + psi (x) phi = 0,
which over a field vanishes only when a state is zero or, in
characteristic 2, when the two states lie on the same ray.  The
entrywise condition a_i b_j = -b_i a_j is evaluated alongside the tensor
and the two must agree.  Commutators [a_i, a_j] are evaluated as well;
over commutative scalars they are identically zero, which documents the
general division-ring statement without fake arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, FieldMismatchError, NotUnitaryError
from .field import FieldElement, FieldSpec, build_field
from .linalg import FieldMatrix, FieldVector, HermitianForm, is_unitary, tensor


class CloneVerdict(str, Enum):
    ZERO_STATE = "ZeroState"
    SAME_RAY_CHAR2 = "SameRayChar2"
    SAME_RAY_CHAR_ODD = "SameRayCharOdd"
    INDEPENDENT = "Independent"


@dataclass
class CloneClassification:
    """Verdict for one (phi, psi) pair, with the tensor obstruction value."""

    verdict: CloneVerdict
    tensor_obstruction: FieldVector
    witness: Optional[FieldElement]  # rho with psi = phi * rho, when on one ray
    entrywise_agrees: bool
    commutators_vanish: bool
    kind: str = "clone"  # or "delete"

    @property
    def obstruction_vanishes(self) -> bool:
        return self.tensor_obstruction.is_zero()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict.value,
            "tensor_obstruction": self.tensor_obstruction.to_json(),
            "obstruction_vanishes": self.obstruction_vanishes,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "entrywise_agrees": self.entrywise_agrees,
            "commutators_vanish": self.commutators_vanish,
        }


def _same_ray_witness(phi: FieldVector, psi: FieldVector) -> Optional[FieldElement]:
    """rho with psi = phi * rho, or None; assumes both nonzero."""
    lead = next(i for i, e in enumerate(phi.entries) if not e.is_zero())
    rho = psi.entries[lead] / phi.entries[lead]
    if rho.is_zero():
        return None
    return rho if phi.scale(rho) == psi else None


def _classify(phi: FieldVector, psi: FieldVector, kind: str) -> CloneClassification:
    if phi.spec != psi.spec:
        raise FieldMismatchError("states over different fields")
    if len(phi) != len(psi):
        raise DimensionMismatchError("states of different lengths")
    spec = phi.spec

    obstruction = tensor(phi, psi) + tensor(psi, phi)

    # entrywise reading of the same equation: a_i b_j = -b_i a_j
    entrywise_zero = all(
        (phi[i] * psi[j] + psi[i] * phi[j]).is_zero()
        for i in range(len(phi))
        for j in range(len(psi))
    )
    entrywise_agrees = entrywise_zero == obstruction.is_zero()

    # commutators of the first state's entries; always zero over a field
    commutators_vanish = all(
        (phi[i] * phi[j] - phi[j] * phi[i]).is_zero()
        for i in range(len(phi))
        for j in range(len(phi))
    )

    if phi.is_zero() or psi.is_zero():
        verdict: CloneVerdict = CloneVerdict.ZERO_STATE
        witness = None
    else:
        witness = _same_ray_witness(phi, psi)
        if witness is not None:
            verdict = (
                CloneVerdict.SAME_RAY_CHAR2
                if spec.p == 2
                else CloneVerdict.SAME_RAY_CHAR_ODD
            )
        else:
            verdict = CloneVerdict.INDEPENDENT

    return CloneClassification(
        verdict=verdict,
        tensor_obstruction=obstruction,
        witness=witness,
        entrywise_agrees=entrywise_agrees,
        commutators_vanish=commutators_vanish,
        kind=kind,
    )


def clone_obstruction(phi: FieldVector, psi: FieldVector) -> CloneClassification:
    """Classify whether a single unitary could clone both states."""
    return _classify(phi, psi, "clone")


def delete_obstruction(phi: FieldVector, psi: FieldVector) -> CloneClassification:
    """Same tensor equation as cloning; invertibility alone forces it."""
    return _classify(phi, psi, "delete")


def f2_orthogonal_special_case(max_order: int = 9) -> dict:
    """Check alpha^2 = alpha (and beta^2 = beta) across implemented fields.

    It holds for every element exactly in F_2; every larger field up to
    max_order yields a counterexample, which is recorded.
    """
    fields: List[Tuple[int, int]] = []
    for p, k in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)]:
        if p ** k <= max_order:
            fields.append((p, k))
    results = []
    for p, k in sorted(fields, key=lambda pk: (pk[0] ** pk[1], pk[0])):
        spec = build_field(p, k)
        counterexample = None
        for x in spec.elements():
            if x * x != x:
                counterexample = x
                break
        results.append({
            "p": p,
            "k": k,
            "order": spec.order,
            "idempotent_everywhere": counterexample is None,
            "counterexample": counterexample.to_json() if counterexample else None,
        })
    only_f2 = all(
        r["idempotent_everywhere"] == (r["order"] == 2) for r in results
    )
    return {"fields": results, "holds_only_in_f2": only_f2}


def permutation_clone_check(
    u: FieldMatrix,
    states: Sequence[FieldVector],
    blank: FieldVector,
    form: Optional[HermitianForm] = None,
) -> dict:
    """Does u map {psi (x) blank} bijectively onto {phi (x) phi}?

    Returns the induced mapping when it does; an identity mapping means u
    clones every element of the set.
    """
    states = list(states)
    if not states:
        raise DimensionMismatchError("empty state set")
    n = len(states[0])
    if any(len(s) != n for s in states) or len(blank) != n:
        raise DimensionMismatchError("all states and the blank must share a length")
    if u.nrows != n * n or not u.is_square():
        raise DimensionMismatchError(
            f"operator must act on the {n * n}-dimensional tensor space"
        )
    if form is not None and not is_unitary(u, form):
        raise NotUnitaryError("operator is not unitary for the supplied form")

    targets = {tensor(s, s): i for i, s in enumerate(states)}
    mapping: Dict[int, int] = {}
    used = set()
    witness = None
    for i, s in enumerate(states):
        image = u @ tensor(s, blank)
        j = targets.get(image)
        if j is None or j in used:
            witness = {"state_index": i, "image": image.to_json()}
            break
        mapping[i] = j
        used.add(j)
    ok = witness is None and len(mapping) == len(states)
    return {
        "is_permutation_clone": ok,
        "associated_permutation": mapping if ok else None,
        "is_identity_permutation": ok and all(i == j for i, j in mapping.items()),
        "failure_witness": witness,
    }
