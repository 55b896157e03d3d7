from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import a, mukai_vectors, ns_classes, primitive_vectors, vec
from enriques_mukai.errors import InternalConsistencyError, InvalidInputError, PreconditionError
from enriques_mukai.lattice import (
    E8_GRAM,
    F,
    GRAM,
    SIGMA,
    MukaiVector,
    NSClass,
    SurfaceContext,
    alpha,
    central_charge,
    check_gram,
    classify_content,
    content,
    integer_determinant,
    is_primitive,
    mukai_pairing,
    mukai_square,
    ns_pairing,
    pair8,
    pair10,
    parse_vector,
    parse_vector_text,
    square8,
    square10,
    vector_from_dict,
    vector_to_dict,
)

H = SIGMA + F


def test_gram_facts():
    facts = check_gram()
    assert facts == {"ns_det": -1, "e8_det": 1, "diagonal_even": True, "symmetric": True}


def test_e8_block_is_negated_cartan():
    adjacent = {(1, 3), (3, 4), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8)}
    for i in range(1, 9):
        for j in range(1, 9):
            want = -2 if i == j else 1 if (min(i, j), max(i, j)) in adjacent else 0
            assert E8_GRAM[i - 1][j - 1] == want


@given(st.tuples(*[st.integers(-9, 9)] * 10), st.tuples(*[st.integers(-9, 9)] * 10))
def test_unrolled_kernels_match_matrix(x, y):
    full = sum(x[i] * GRAM[i][j] * y[j] for i in range(10) for j in range(10))
    assert pair10(x, y) == full
    assert square10(x) == pair10(x, x)
    assert square8(x[2:]) == pair8(x[2:], x[2:])


def test_determinant_helper():
    assert integer_determinant([[0, 1], [1, 0]]) == -1
    assert integer_determinant([[2, 1], [4, 2]]) == 0
    assert integer_determinant([[0, 0, 1], [0, 2, 0], [3, 0, 0]]) == -6


class TestPairingExamples:
    def test_hyperbolic(self):
        assert ns_pairing(H, H) == 2

    def test_root_square(self):
        assert ns_pairing(alpha(1), alpha(1)) == -2

    def test_adjacent_roots(self):
        assert ns_pairing(alpha(1), alpha(3)) == 1
        assert ns_pairing(alpha(1), alpha(2)) == 0

    def test_torsion_is_invisible(self):
        assert ns_pairing(NSClass(1, 1, kappa=1), H) == 2

    def test_mukai_pairing(self):
        o = vec(1, s=-1)
        assert mukai_pairing(o, o) == -1
        assert mukai_pairing(vec(2), vec(0, (0, 1))) == 0
        v = vec(2, a(1), 4)
        assert mukai_pairing(v, v) == 6

    def test_mukai_square(self):
        assert mukai_square(vec(1, s=-1)) == -1
        assert mukai_square(vec(2)) == 0
        assert mukai_square(vec(2, a(1), 4)) == 6


class TestContent:
    def test_examples(self):
        assert content(vec(2)) == 2
        assert content(vec(2, (1,))) == 1
        assert content(vec(4, (2, 2), 6)) == 2

    def test_zero_vector(self):
        with pytest.raises(PreconditionError):
            content(vec(0))

    def test_primitive_examples(self):
        assert is_primitive(vec(2))
        assert not is_primitive(vec(2, a(1, 2), 2))
        assert is_primitive(vec(4, (1, 1), 0))

    def test_classify(self):
        rep = classify_content(vec(2))
        assert rep.ell == 2 and rep.r_plus_s_mod4 == 2
        assert classify_content(vec(2, (1,))).ell == 1
        rep = classify_content(vec(6, (2,), 0))
        assert rep.ell == 2 and rep.r_plus_s_mod4 == 2 and all(rep.checks.values())

    def test_classify_rejects_non_primitive(self):
        with pytest.raises(PreconditionError):
            classify_content(vec(2, a(1, 2), 2))


class TestCentralCharge:
    def test_examples(self):
        assert central_charge(vec(2), 1, H) == (2, 0)
        assert central_charge(vec(0, (0, 1)), 1, H) == (0, 1)
        assert central_charge(vec(1, s=-1), 1, H) == (Fraction(1, 2), 0)

    def test_rational_t(self):
        re, im = central_charge(vec(2, (0, 1), 0), Fraction(1, 3), H)
        assert re == Fraction(2, 9) and im == Fraction(1, 3)

    def test_bad_t(self):
        with pytest.raises(PreconditionError):
            central_charge(vec(2), 0, H)
        with pytest.raises(PreconditionError):
            central_charge(vec(2), 1, SIGMA)

    @given(mukai_vectors(), mukai_vectors(), st.fractions(min_value=Fraction(1, 10), max_value=5))
    def test_additive(self, v, w, t):
        zv, zw, zs = central_charge(v, t, H), central_charge(w, t, H), central_charge(v + w, t, H)
        assert zs == (zv[0] + zw[0], zv[1] + zw[1])


class TestProperties:
    @given(mukai_vectors(), mukai_vectors())
    def test_symmetric(self, v, w):
        assert mukai_pairing(v, w) == mukai_pairing(w, v)

    @given(mukai_vectors(), mukai_vectors(), mukai_vectors(), st.integers(-5, 5))
    def test_bilinear(self, u, v, w, n):
        assert mukai_pairing(u + v, w) == mukai_pairing(u, w) + mukai_pairing(v, w)
        nu = MukaiVector(n * u.r, n * u.c1, n * u.s)
        assert mukai_pairing(nu, w) == n * mukai_pairing(u, w)

    @given(mukai_vectors())
    def test_even_lattice(self, v):
        assert mukai_square(v) == mukai_pairing(v, v)
        assert (mukai_square(v) - v.r * v.s) % 2 == 0

    @given(primitive_vectors(r_min=-8, r_max=8))
    def test_content_law(self, v):
        rep = classify_content(v)
        assert rep.ell in (1, 2)
        if rep.ell == 2:
            assert (v.r + v.s) % 4 == 2

    @given(ns_classes(), ns_classes())
    def test_class_arithmetic(self, x, y):
        assert (x + y).kappa == (x.kappa + y.kappa) % 2
        assert (x - x).is_zero() and (x - x).kappa == 0
        assert (3 * x).free == tuple(3 * c for c in x.free)


class TestValidation:
    def test_parity(self):
        with pytest.raises(InvalidInputError):
            vec(2, s=1)

    def test_kappa_range(self):
        with pytest.raises(InvalidInputError):
            NSClass(kappa=2)

    def test_e8_length(self):
        with pytest.raises(InvalidInputError):
            NSClass(0, 0, (1, 2))

    def test_bool_rejected(self):
        with pytest.raises(InvalidInputError):
            MukaiVector(True, NSClass(), 1)

    def test_numpy_ints_become_python_ints(self):
        np = pytest.importorskip("numpy")
        v = MukaiVector(np.int64(2), NSClass.from_free(np.arange(10)), np.int64(0))
        assert type(v.r) is int and all(type(x) is int for x in v.c1.free)

    def test_context(self):
        SurfaceContext(nodal=True, nodal_cycles=[alpha(1)])
        with pytest.raises(PreconditionError):
            SurfaceContext(ample=SIGMA)
        with pytest.raises(PreconditionError):
            SurfaceContext(nodal=True, nodal_cycles=[H])
        with pytest.raises(PreconditionError):
            SurfaceContext(nodal=False, nodal_cycles=[alpha(1)])


class TestEncoding:
    def test_bracket_forms(self):
        v, given_kappa = parse_vector_text("[2;0…0;0;1]")
        assert v == vec(2, kappa=1) and given_kappa
        v, _ = parse_vector_text("[2;2,0,...;2]")
        assert v == vec(2, (2,), 2)
        v, given_kappa = parse_vector_text("[4;1,1,0...;0]")
        assert v == vec(4, (1, 1)) and not given_kappa
        v, _ = parse_vector_text("[2; ...,1; 0]")
        assert v.c1.free[-1] == 1

    def test_json_with_a(self):
        v, _ = vector_from_dict({"r": 1, "c1": [0] * 10, "a": "1/2"})
        assert v.s == -1
        v, _ = vector_from_dict({"r": 2, "c1": [0] * 10, "a": -1})
        assert v.s == 2
        with pytest.raises(InvalidInputError):
            vector_from_dict({"r": 2, "c1": [0] * 10, "a": "1/3"})
        with pytest.raises(InvalidInputError):
            vector_from_dict({"r": 2, "c1": [0] * 10, "a": 0, "s": 0})

    @given(mukai_vectors())
    def test_round_trip(self, v):
        assert vector_from_dict(vector_to_dict(v))[0] == v
        assert parse_vector(str(v))[0] == v

    @pytest.mark.parametrize("text", ["", "[1;2]", "[a;0;0]", "[2;1,2,3;0]", "{bad", "[2;" + ",".join(["0"] * 11) + ";0]"])
    def test_malformed(self, text):
        with pytest.raises(InvalidInputError):
            parse_vector(text)
