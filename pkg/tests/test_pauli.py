import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabrbm.oracle import pauli_matrix
from stabrbm.pauli import (
    BasisKet,
    PauliError,
    PauliOperator,
    apply_to_ket,
    commutes,
    format_pauli,
    multiply,
    parse_pauli,
)

from conftest import FIVE_QUBIT, paulis


def ket_vector(ket: BasisKet) -> np.ndarray:
    vec = np.zeros(1 << ket.n, dtype=complex)
    vec[int(str(ket), 2)] = 1
    return vec


@st.composite
def pauli_ops(draw, n=None, hermitian=False):
    n = draw(st.integers(1, 3)) if n is None else n
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    phase = draw(st.sampled_from([0, 2] if hermitian else [0, 1, 2, 3]))
    return PauliOperator(n, x, z, phase)


@st.composite
def pauli_pairs(draw):
    n = draw(st.integers(1, 3))
    return draw(pauli_ops(n)), draw(pauli_ops(n))


def test_parse_examples():
    p = parse_pauli("XZZXI")
    assert p.x_bits == (1, 0, 0, 1, 0)
    assert p.z_bits == (0, 1, 1, 0, 0)
    assert p.phase == 0

    ident = parse_pauli("IIIII")
    assert (ident.x, ident.z, ident.phase) == (0, 0, 0)

    p = parse_pauli("-YZ")
    assert p.x_bits == (1, 0)
    assert p.z_bits == (1, 1)
    assert p.phase == 2
    assert parse_pauli("+XY") == parse_pauli("XY")


@pytest.mark.parametrize(
    "text, fragment",
    [("", "empty"), ("-", "empty"), ("XQZ", "position 2"), ("-XQ", "position 3"), ("X Z", "position 2")],
)
def test_parse_errors(text, fragment):
    with pytest.raises(PauliError, match=fragment):
        parse_pauli(text)


def test_format_examples():
    assert format_pauli(parse_pauli("XZZXI")) == "XZZXI"
    assert format_pauli(parse_pauli("-YZ")) == "-YZ"
    assert format_pauli(PauliOperator.from_bits([0], [1], phase=2)) == "-Z"
    with pytest.raises(PauliError):
        format_pauli(PauliOperator(1, 1, 0, 1))


@given(st.text(alphabet="IXYZ", min_size=1, max_size=12), st.sampled_from(["", "-"]))
def test_parse_format_roundtrip(body, sign):
    assert format_pauli(parse_pauli(sign + body)) == sign + body


def test_multiply_examples():
    z, x = parse_pauli("Z"), parse_pauli("X")
    zx = multiply(z, x)
    assert zx.letters() == "Y" and zx.phase == 1
    xz = multiply(x, z)
    assert xz.letters() == "Y" and xz.phase == 3
    for word in ["XZZXI", "-YZ", "YYY", "-I"]:
        p = parse_pauli(word)
        assert multiply(p, p) == PauliOperator.identity(p.n)


def test_multiply_five_qubit_dense():
    a, b = paulis(FIVE_QUBIT[:2])
    np.testing.assert_array_equal(pauli_matrix(multiply(a, b)), pauli_matrix(a) @ pauli_matrix(b))


def test_single_site_table_against_dense():
    letters = ["I", "X", "Y", "Z"]
    for a, b in itertools.product(letters, repeat=2):
        pa, pb = parse_pauli(a), parse_pauli(b)
        np.testing.assert_array_equal(pauli_matrix(pa * pb), pauli_matrix(pa) @ pauli_matrix(pb))


@given(pauli_pairs())
def test_multiply_matches_dense(pair):
    a, b = pair
    np.testing.assert_array_equal(pauli_matrix(multiply(a, b)), pauli_matrix(a) @ pauli_matrix(b))


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(pauli_ops(n), pauli_ops(n), pauli_ops(n))))
def test_multiply_associative(triple):
    a, b, c = triple
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_mismatched_sizes():
    with pytest.raises(PauliError):
        multiply(parse_pauli("XX"), parse_pauli("X"))
    with pytest.raises(PauliError):
        commutes(parse_pauli("XX"), parse_pauli("X"))
    with pytest.raises(PauliError):
        apply_to_ket(parse_pauli("XX"), BasisKet(1, 0))


def test_commutes_examples():
    assert not commutes(parse_pauli("X"), parse_pauli("Z"))
    assert commutes(parse_pauli("XX"), parse_pauli("ZZ"))
    gens = paulis(FIVE_QUBIT)
    assert all(commutes(a, b) for a in gens for b in gens)


@given(pauli_pairs())
def test_commutes_iff_application_order_irrelevant(pair):
    a, b = pair
    n = a.n
    same = True
    for bits in range(1 << n):
        ket = BasisKet(n, bits)
        k1, e1 = apply_to_ket(a, ket)
        k1, f1 = apply_to_ket(b, k1)
        k2, e2 = apply_to_ket(b, ket)
        k2, f2 = apply_to_ket(a, k2)
        assert k1 == k2
        same &= (e1 + f1) % 4 == (e2 + f2) % 4
    assert commutes(a, b) == same


def test_apply_examples():
    assert apply_to_ket(parse_pauli("Z"), BasisKet(1, 1)) == (BasisKet(1, 1), 2)
    assert apply_to_ket(parse_pauli("Y"), BasisKet(1, 0)) == (BasisKet(1, 1), 1)
    assert apply_to_ket(parse_pauli("Y"), BasisKet(1, 1)) == (BasisKet(1, 0), 3)


def test_apply_final_five_qubit_row_dense():
    p = parse_pauli("XZIIZ")
    ket = BasisKet.from_string("00000")
    out, e = apply_to_ket(p, ket)
    dense = pauli_matrix(p) @ ket_vector(ket)
    np.testing.assert_array_equal(dense, (1j**e) * ket_vector(out))


def _check_ket_action(p):
    mat = pauli_matrix(p)
    for bits in range(1 << p.n):
        ket = BasisKet(p.n, bits)
        out, e = apply_to_ket(p, ket)
        np.testing.assert_array_equal(mat @ ket_vector(ket), (1j**e) * ket_vector(out))


@pytest.mark.parametrize("a, b", list(itertools.product("IXYZ", repeat=2)))
@pytest.mark.parametrize("n, positions", [(2, (0, 1)), (3, (0, 2)), (3, (2, 1))])
def test_apply_matches_dense_embedded_pairs(a, b, n, positions):
    word = ["I"] * n
    word[positions[0]], word[positions[1]] = a, b
    for sign in ("", "-"):
        _check_ket_action(parse_pauli(sign + "".join(word)))


@given(pauli_ops())
def test_apply_matches_dense(p):
    _check_ket_action(p)


def test_basis_ket_string():
    ket = BasisKet.from_string("0110")
    assert str(ket) == "0110"
    assert [ket.bit(i) for i in range(4)] == [0, 1, 1, 0]
    with pytest.raises(PauliError):
        BasisKet.from_string("012")
