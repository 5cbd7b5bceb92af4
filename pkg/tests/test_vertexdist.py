from fractions import Fraction as Fr

import pytest

from conftest import profile_probs
from sgtrees.gasket import AddressError, enumerate_addresses, parse_address, resolve_address
from sgtrees.vertexdist import E, E0, E2, compile_word, full_table, transfer_matrices, vertex_distribution


def test_transfer_matrix_structure():
    tm = transfer_matrices()
    assert E == E0 + tm.E1 + E2
    assert E0 @ E0 == tm.E1 and E2 @ E2 == tm.E1
    # columns of R and L are probability-like: F column of R sums to 1
    assert sum(tm.R.col(0)) == 1 and sum(tm.L.col(0)) == 1


def test_word_compilation():
    letter, w = compile_word(parse_address("a[1,1]"), 2)
    assert (letter, w.base_stage, w.factors) == ("a", 1, ("R",))
    letter, w = compile_word(parse_address("b[2,1,0]"), 4)
    assert (letter, w.base_stage, w.factors) == ("c", 1, ("R", "E0R", "L"))
    letter, w = compile_word(parse_address("c[1]"), 4)
    assert (w.base_stage, w.factors) == (2, ("L", "L"))
    with pytest.raises(AddressError):
        compile_word(parse_address("o"), 3)


def test_frozen_values_at_stage_two():
    assert vertex_distribution(2, parse_address("a[1,1]")) == (Fr(7, 27), Fr(781, 1620), Fr(37, 162), Fr(49, 1620))
    assert vertex_distribution(2, parse_address("o")) == (Fr(106, 135), Fr(29, 135), 0, 0)


def test_matches_exhaustive_enumeration(exhaustive_n2):
    oracle = profile_probs(exhaustive_n2)
    table = full_table(2)
    assert len(table) == 15
    for addr, dist in table.items():
        assert dist == oracle[resolve_address(addr, 2)], addr


def test_matches_determinant_oracle(mtt_n3):
    oracle = profile_probs(mtt_n3)
    for addr, dist in full_table(3).items():
        assert dist == oracle[resolve_address(addr, 3)], addr


@pytest.mark.parametrize("n", range(0, 7))
def test_rows_sum_to_one_and_corners(n):
    table = full_table(n)
    assert list(table) == enumerate_addresses(n)
    for addr, d in table.items():
        assert sum(d) == 1
        if addr.kind(n) in ("origin", "corner"):
            assert d[2] == d[3] == 0


def test_tilde_images_agree():
    for addr in enumerate_addresses(4):
        if addr.is_word and not addr.tilde:
            mirror = parse_address("~" + str(addr), 4)
            assert vertex_distribution(4, addr) == vertex_distribution(4, mirror)
