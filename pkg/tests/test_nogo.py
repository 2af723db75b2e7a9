import itertools
import random

import pytest

from gqt.errors import DimensionMismatchError, NotUnitaryError
from gqt.field import build_field
from gqt.linalg import FieldMatrix, FieldVector, random_unitary, standard_form, tensor
from gqt.nogo import (
    CloneVerdict,
    clone_obstruction,
    delete_obstruction,
    f2_orthogonal_special_case,
    permutation_clone_check,
)


def all_vectors(spec, dim):
    for combo in itertools.product(list(spec.elements()), repeat=dim):
        yield FieldVector(spec, combo)


def test_independent_pair(gf4):
    phi = FieldVector(gf4, [1, 0])
    psi = FieldVector(gf4, [0, 1])
    c = clone_obstruction(phi, psi)
    assert c.verdict is CloneVerdict.INDEPENDENT
    assert c.tensor_obstruction == FieldVector(gf4, [0, 1, 1, 0])
    assert not c.obstruction_vanishes
    assert c.entrywise_agrees and c.commutators_vanish


def test_same_ray_char2(gf4):
    t = gf4.gen
    phi = FieldVector(gf4, [gf4.one, t])
    c = clone_obstruction(phi, phi.scale(t))
    assert c.verdict is CloneVerdict.SAME_RAY_CHAR2
    assert c.obstruction_vanishes
    assert c.witness == t


def test_same_ray_char_odd(gf9):
    phi = FieldVector(gf9, [1, 2])
    c = clone_obstruction(phi, phi)
    assert c.verdict is CloneVerdict.SAME_RAY_CHAR_ODD
    # T = 2 (phi tensor phi) != 0 in odd characteristic
    assert c.tensor_obstruction == tensor(phi, phi).scale(gf9.from_int(2))
    assert not c.obstruction_vanishes
    assert c.witness == gf9.one


def test_zero_state(gf4):
    c = clone_obstruction(FieldVector(gf4, [0, 0]), FieldVector(gf4, [1, 0]))
    assert c.verdict is CloneVerdict.ZERO_STATE
    assert c.obstruction_vanishes
    assert c.witness is None


@pytest.mark.parametrize("p", [2, 3])
def test_obstruction_vanishing_characterization(p):
    """T = 0 iff a state is zero, or char 2 and the states share a ray."""
    spec = build_field(p, 2)
    counts = {v: 0 for v in CloneVerdict}
    for phi in all_vectors(spec, 2):
        for psi in all_vectors(spec, 2):
            c = clone_obstruction(phi, psi)
            counts[c.verdict] += 1
            expected_zero = c.verdict in (
                CloneVerdict.ZERO_STATE,
                CloneVerdict.SAME_RAY_CHAR2,
            )
            assert c.obstruction_vanishes == expected_zero
            assert c.entrywise_agrees
            assert c.commutators_vanish
    total = spec.order ** 4
    assert sum(counts.values()) == total
    if p == 2:
        assert counts[CloneVerdict.ZERO_STATE] == 31
        assert counts[CloneVerdict.SAME_RAY_CHAR2] == 45
        assert counts[CloneVerdict.SAME_RAY_CHAR_ODD] == 0
        assert counts[CloneVerdict.INDEPENDENT] == 180
    else:
        assert counts[CloneVerdict.SAME_RAY_CHAR2] == 0
        assert counts[CloneVerdict.SAME_RAY_CHAR_ODD] > 0


def test_delete_obstruction_matches_clone(gf9):
    rng = random.Random(3)
    for _ in range(100):
        phi = FieldVector(gf9, [gf9.from_index(rng.randrange(9)) for _ in range(2)])
        psi = FieldVector(gf9, [gf9.from_index(rng.randrange(9)) for _ in range(2)])
        c = clone_obstruction(phi, psi)
        d = delete_obstruction(phi, psi)
        assert d.kind == "delete" and c.kind == "clone"
        assert d.verdict is c.verdict
        assert d.tensor_obstruction == c.tensor_obstruction


def test_f2_special_case():
    report = f2_orthogonal_special_case(max_order=9)
    assert report["holds_only_in_f2"]
    orders = [r["order"] for r in report["fields"]]
    assert orders == sorted(orders) and 2 in orders and max(orders) == 9
    for r in report["fields"]:
        if r["order"] == 2:
            assert r["idempotent_everywhere"] and r["counterexample"] is None
        else:
            assert not r["idempotent_everywhere"]
            assert r["counterexample"] is not None


def test_permutation_clone_cnot_on_f2_basis():
    f2 = build_field(2, 1)
    # CNOT on F_2^2 (x) F_2^2: |x>|y> -> |x>|y + x>
    rows = [[0] * 4 for _ in range(4)]
    for x in range(2):
        for y in range(2):
            rows[2 * x + ((y + x) % 2)][2 * x + y] = 1
    cnot = FieldMatrix(f2, rows)
    basis = [FieldVector(f2, [1, 0]), FieldVector(f2, [0, 1])]
    blank = FieldVector(f2, [1, 0])
    out = permutation_clone_check(cnot, basis, blank)
    assert out["is_permutation_clone"]
    assert out["is_identity_permutation"]
    assert out["associated_permutation"] == {0: 0, 1: 1}
    assert out["failure_witness"] is None


def test_permutation_clone_singleton(gf4):
    # any single nonzero state is cloned by some permutation-free check:
    # the identity works when blank == state
    ident = FieldMatrix(gf4, [[1 if i == j else 0 for j in range(4)] for i in range(4)])
    phi = FieldVector(gf4, [1, 0])
    out = permutation_clone_check(ident, [phi], phi)
    assert out["is_permutation_clone"] and out["is_identity_permutation"]


def test_permutation_clone_generic_failure(gf9, form9_dim4):
    u = random_unitary(form9_dim4, 21)
    states = [FieldVector(gf9, [1, 0]), FieldVector(gf9, [0, 1]),
              FieldVector(gf9, [1, 1])]
    blank = FieldVector(gf9, [1, 0])
    out = permutation_clone_check(u, states, blank, form=form9_dim4)
    assert not out["is_permutation_clone"]
    assert out["failure_witness"] is not None
    assert out["associated_permutation"] is None


def test_permutation_clone_rejects_non_unitary(gf9, form9_dim4):
    m = FieldMatrix(gf9, [[1 if j == 0 else 0 for j in range(4)] for _ in range(4)])
    with pytest.raises(NotUnitaryError):
        permutation_clone_check(m, [FieldVector(gf9, [1, 0])],
                                FieldVector(gf9, [1, 0]), form=form9_dim4)


def test_permutation_clone_dimension_checks(gf4):
    ident2 = FieldMatrix(gf4, [[1, 0], [0, 1]])
    with pytest.raises(DimensionMismatchError):
        permutation_clone_check(ident2, [FieldVector(gf4, [1, 0])],
                                FieldVector(gf4, [1, 0]))
    with pytest.raises(DimensionMismatchError):
        permutation_clone_check(ident2, [], FieldVector(gf4, [1, 0]))
