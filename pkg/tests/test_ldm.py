from fractions import Fraction

import pytest

from fran_dtb.errors import ShiftRangeError, SizeMismatch, UnreachableUser
from fran_dtb.ldm import INF, BitVec, QMode, channel_outputs, downshift, gaussian_to_ldm, make_channel, rat, ratio


def test_make_channel_sets_q():
    n = make_channel(2, 5, 4)
    assert n.q == 5 and n.n == (2, 5, 4)
    assert make_channel(2, 5, 4, nF=7, q_mode=QMode.WithFronthaul).q == 7
    assert make_channel(2, 5, 4, nF=7).q == 5


@pytest.mark.parametrize("args", [(1, 1, 0), (0, 0, 3)])
def test_unreachable_users_rejected(args):
    with pytest.raises(UnreachableUser):
        make_channel(*args)


def test_bad_types_and_signs():
    with pytest.raises(TypeError):
        make_channel(1.0, 2, 3)
    with pytest.raises(ValueError):
        make_channel(-1, 2, 3)


def test_zero_cross_link_allowed():
    assert make_channel(3, 0, 2).nd2 == 0


def test_downshift_and_xor():
    x = BitVec.of("1011")
    assert str(downshift(x, 1)) == "0101"
    assert str(downshift(x, 4)) == "0000"
    assert str(x ^ BitVec.of("0110")) == "1101"
    with pytest.raises(ShiftRangeError):
        downshift(x, 5)
    with pytest.raises(SizeMismatch):
        x ^ BitVec.of("01")


def test_outputs_of_small_example():
    # eNB sends a1 b1 b2 b3 a3, HeNB puts a2^b3 on its top level (q=5, nd1=2)
    n = make_channel(2, 5, 4)
    a1, a2, a3, b1, b2, b3 = 1, 0, 1, 1, 1, 0
    x2 = BitVec((a1, b1, b2, b3, a3))
    x1 = BitVec((a2 ^ b3, 0, 0, 0, 0))
    y1, y2 = channel_outputs(x1, x2, n)
    assert y2.bits[1:] == (a1, b1, b2, b3)
    # level 3 of y1 holds b3 ^ (a2 ^ b3) = a2
    assert y1.bits == (a1, b1, b2, a2, a3)
    with pytest.raises(SizeMismatch):
        channel_outputs(BitVec.zeros(4), x2, n)


def test_gaussian_mapping_uses_exact_integer_gains():
    n = gaussian_to_ldm(1.0, [2.0, 8 ** 0.5, 4.0], CF=2.5)
    assert n.n == (2, 3, 4) and n.nF == 3
    with pytest.raises(ValueError):
        gaussian_to_ldm(0.0, [1, 1, 1])


def test_rat_and_ratio():
    assert rat("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        rat(0.5)
    assert ratio(1, 0) == INF and ratio(0, 0) == 0 and ratio(1, 4) == Fraction(1, 4)
