import random
from itertools import product

import pytest

from qtorus.errors import ConfigError
from qtorus.cyclotomic import root_of_unity
from qtorus.lattice import hnf_contains, hnf_rows
from qtorus.torus import TorusSpec


SPEC_I = TorusSpec.from_upper(2, 2, {(0, 1): 1})
SPEC_II = TorusSpec.from_upper(2, 3, {(0, 1): 1})
SPEC_III = TorusSpec.from_upper(3, 4, {(0, 1): 1, (0, 2): 2, (1, 2): 0})


def brute_radical_residues(spec):
    # independent oracle: direct congruence check over (Z/N)^d
    hits = []
    for n in product(range(spec.N), repeat=spec.d):
        if all(
            sum(spec.A[i][j] * n[j] for j in range(spec.d)) % spec.N == 0
            for i in range(spec.d)
        ):
            hits.append(n)
    return hits


def sigma_oracle(spec, n, m):
    # multiply the individual root-of-unity factors one by one
    out = root_of_unity(1, 0)
    for j in range(spec.d):
        for i in range(j):
            out = out * root_of_unity(spec.N, spec.A[j][i] * n[j] * m[i])
    return out


def test_validation_rejects_bad_matrices():
    with pytest.raises(ConfigError):
        TorusSpec(2, 2, [[1, 1], [1, 0]])  # nonzero diagonal
    with pytest.raises(ConfigError):
        TorusSpec(2, 4, [[0, 1], [1, 0]])  # 1 + 1 != 0 mod 4
    with pytest.raises(ConfigError):
        TorusSpec(2, 2, [[0, 1]])  # wrong shape
    TorusSpec(2, 4, [[0, 1], [3, 0]])  # fine


def test_sigma_reference_values():
    e1, e2 = (1, 0), (0, 1)
    assert SPEC_I.sigma(e2, e1) == -1
    assert SPEC_I.sigma(e1, e2) == 1
    assert SPEC_I.comm_factor(e1, e2) == -1
    assert SPEC_II.comm_factor(e1, e2) == root_of_unity(3, 1)
    assert SPEC_II.comm_factor(e2, e1) == root_of_unity(3, 2)


@pytest.mark.parametrize("spec", [SPEC_I, SPEC_II, SPEC_III])
def test_sigma_matches_factor_product_oracle(spec):
    rng = random.Random(99)
    for _ in range(60):
        n = tuple(rng.randint(-4, 4) for _ in range(spec.d))
        m = tuple(rng.randint(-4, 4) for _ in range(spec.d))
        assert spec.sigma(n, m) == sigma_oracle(spec, n, m)
        assert spec.comm_factor(n, m) == spec.sigma(n, m) / spec.sigma(m, n)


@pytest.mark.parametrize("spec", [SPEC_I, SPEC_II, SPEC_III])
def test_bicharacter_laws(spec):
    rng = random.Random(7)
    for _ in range(50):
        n, m, s, r = (
            tuple(rng.randint(-3, 3) for _ in range(spec.d)) for _ in range(4)
        )
        lhs = spec.sigma(tuple(a + b for a, b in zip(n, m)), tuple(a + b for a, b in zip(s, r)))
        rhs = spec.sigma(n, s) * spec.sigma(n, r) * spec.sigma(m, s) * spec.sigma(m, r)
        assert lhs == rhs
        assert spec.comm_factor(n, m) == spec.comm_factor(m, n).inverse()
        assert spec.comm_factor(n, n) == 1
        assert spec.comm_factor(n, tuple(-a for a in n)) == 1


@pytest.mark.parametrize(
    "spec,orders,index",
    [(SPEC_I, (2, 2), 4), (SPEC_II, (3, 3), 9), (SPEC_III, (4, 4, 2), 16)],
)
def test_radical_against_enumeration(spec, orders, index):
    rad = spec.radical()
    residues = brute_radical_residues(spec)
    assert rad.index == spec.N**spec.d // len(residues)
    assert rad.index == index
    assert rad.axis_orders == orders
    # membership agrees with the congruence oracle on a whole window
    for n in product(range(-spec.N, spec.N + 1), repeat=spec.d):
        expected = tuple(x % spec.N for x in n) in set(residues)
        assert rad.contains(n) == expected
        assert spec.in_radical(n) == expected
    # basis rows really are radical points
    for row in rad.basis:
        assert spec.in_radical(row)


def test_diagonal_reporting():
    assert SPEC_I.radical().diagonal and SPEC_I.radical().diagonal_orders == (2, 2)
    assert SPEC_II.radical().diagonal_orders == (3, 3)
    rad3 = SPEC_III.radical()
    # the axis orders multiply to 32 but the lattice has index 16: not diagonal
    assert not rad3.diagonal
    assert rad3.diagonal_orders is None
    assert rad3.contains((0, 2, 1))


def test_radical_matches_hnf_of_residue_generators():
    # second oracle: HNF of residue representatives plus N*Z^d
    for spec in (SPEC_I, SPEC_II, SPEC_III):
        gens = [list(r) for r in brute_radical_residues(spec)]
        gens += [[spec.N if j == i else 0 for j in range(spec.d)] for i in range(spec.d)]
        expected = hnf_rows(gens)
        assert list(spec.radical().basis) == expected


def test_corrupted_sigma_breaks_cocycle_law():
    spec = TorusSpec(2, 2, [[0, 1], [1, 0]], corrupt_sigma=True)
    n, m, s, r = (1, 0), (0, 1), (1, 1), (1, 0)
    lhs = spec.sigma((n[0] + m[0], n[1] + m[1]), (s[0] + r[0], s[1] + r[1]))
    rhs = spec.sigma(n, s) * spec.sigma(n, r) * spec.sigma(m, s) * spec.sigma(m, r)
    assert lhs != rhs


def test_json_round_trip():
    blob = SPEC_III.to_json()
    again = TorusSpec.from_json(blob)
    assert again == SPEC_III
    assert blob == {"d": 3, "N": 4, "A": [[0, 1, 2], [3, 0, 0], [2, 0, 0]]}
