import numpy as np
import pytest

from spinmagic.pauli import (
    MAX_ENUMERATION_SITES,
    PauliString,
    StateVector,
    enumerate_paulis,
    make_pauli,
    pauli_apply,
    pauli_expectation,
)

from conftest import haar_state, pauli_matrix


def test_letter_table_examples():
    p = make_pauli("ZI")
    assert (p.x_mask, p.z_mask) == (0b00, 0b01)
    p = make_pauli("III")
    assert (p.x_mask, p.z_mask) == (0, 0)
    p = make_pauli("Y")
    assert (p.x_mask, p.z_mask) == (1, 1)


def test_make_pauli_round_trips_letters():
    for letters in ("XYZI", "IIII", "ZZXY", "Y"):
        assert make_pauli(letters).letters() == letters


def test_make_pauli_rejects_bad_letter_with_site():
    with pytest.raises(ValueError, match="site 3"):
        make_pauli("XXQZ")
    with pytest.raises(ValueError):
        make_pauli("")


def test_bit0_is_site_one():
    # Z on site 1 only: sign is set by bit 0 of the basis index.
    z1 = make_pauli("ZI")
    for b in range(4):
        s = StateVector.computational(2, b)
        expected = 1.0 if (b & 1) == 0 else -1.0
        assert pauli_expectation(z1, s) == pytest.approx(expected)


def test_index_convention_and_round_trip():
    for length in (1, 2, 3):
        for idx, p in enumerate(enumerate_paulis(length)):
            assert p.index == idx
            assert PauliString.from_index(idx, length) == p


def test_enumeration_order_l1():
    letters = [p.letters() for p in enumerate_paulis(1)]
    assert letters == ["I", "Z", "X", "Y"]


def test_enumeration_extremes_l2():
    strings = list(enumerate_paulis(2))
    assert len(strings) == 16
    assert strings[0].letters() == "II"
    assert strings[-1].letters() == "YY"


def test_enumeration_count_l3():
    assert sum(1 for _ in enumerate_paulis(3)) == 64


def test_enumeration_guard():
    with pytest.raises(ValueError):
        list(enumerate_paulis(MAX_ENUMERATION_SITES + 1))


def test_apply_bit_flip():
    s = StateVector.computational(1, 0)
    out = pauli_apply(make_pauli("X"), s)
    np.testing.assert_allclose(out.amplitudes, [0, 1], atol=1e-15)


def test_apply_y_phase():
    s = StateVector.computational(1, 0)
    out = pauli_apply(make_pauli("Y"), s)
    np.testing.assert_allclose(out.amplitudes, [0, 1j], atol=1e-15)


def test_apply_zz_stabilizes_bell():
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    out = pauli_apply(make_pauli("ZZ"), bell)
    np.testing.assert_allclose(out.amplitudes, bell.amplitudes, atol=1e-15)


def test_expectation_examples():
    rng = np.random.default_rng(3)
    s = StateVector(haar_state(3, rng))
    assert pauli_expectation(make_pauli("III"), s) == pytest.approx(1.0, abs=1e-12)

    plus = StateVector(np.array([1, 1]) / np.sqrt(2))
    assert pauli_expectation(make_pauli("Z"), plus) == pytest.approx(0.0, abs=1e-12)

    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert pauli_expectation(make_pauli("XX"), bell) == pytest.approx(1.0, abs=1e-12)


def test_length_mismatch_rejected():
    s = StateVector.computational(2, 0)
    with pytest.raises(ValueError, match="mismatch"):
        pauli_apply(make_pauli("X"), s)
    with pytest.raises(ValueError, match="mismatch"):
        pauli_expectation(make_pauli("XXX"), s)


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_apply_matches_dense_oracle(length):
    rng = np.random.default_rng(100 + length)
    s = StateVector(haar_state(length, rng))
    for p in enumerate_paulis(length):
        expected = pauli_matrix(p.letters()) @ s.amplitudes
        np.testing.assert_allclose(
            pauli_apply(p, s).amplitudes, expected, atol=1e-12
        )


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_expectation_matches_dense_oracle(length):
    rng = np.random.default_rng(200 + length)
    s = StateVector(haar_state(length, rng))
    for p in enumerate_paulis(length):
        expected = np.vdot(s.amplitudes, pauli_matrix(p.letters()) @ s.amplitudes)
        assert abs(expected.imag) < 1e-12
        assert pauli_expectation(p, s) == pytest.approx(expected.real, abs=1e-12)


def test_apply_is_isometry_and_involution():
    rng = np.random.default_rng(7)
    for length in (2, 3, 5):
        s = StateVector(haar_state(length, rng))
        for _ in range(20):
            p = PauliString.from_index(int(rng.integers(4**length)), length)
            out = pauli_apply(p, s)
            assert out.norm() == pytest.approx(1.0, abs=1e-12)
            back = pauli_apply(p, out)
            np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-12)


def test_state_vector_normalizes_and_freezes():
    s = StateVector(np.array([3.0, 4.0]))
    assert s.norm() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        StateVector(np.zeros(4))
    with pytest.raises(ValueError):
        StateVector(np.ones(3))
    with pytest.raises(ValueError):
        s.amplitudes[0] = 1.0


def test_pauli_string_equality_and_validation():
    assert PauliString(1, 2, 2) == PauliString(1, 2, 2)
    assert PauliString(1, 2, 2) != PauliString(1, 2, 3)
    with pytest.raises(ValueError):
        PauliString(4, 0, 2)
    with pytest.raises(ValueError):
        PauliString(0, 0, 0)
