import numpy as np
import pytest
from scipy.stats import unitary_group

from stairway.closure import (
    check_family_dimensions,
    closure_defect,
    is_universal,
    lie_closure,
    predicted_dimension,
    su_dimension,
)
from stairway.errors import CapacityError, DimensionError
from stairway.pauli import SIGMA_X, SIGMA_Y, SIGMA_Z, PauliString, g2_generator, make_generators, to_matrix


def family(n, label):
    return make_generators(n, label).matrices()


def test_su2_from_x_and_z():
    res = lie_closure([SIGMA_X, SIGMA_Z])
    assert res.dimension == 3
    # sigma_y lies in the span
    v = SIGMA_Y.reshape(-1) / np.sqrt(2)
    coeffs = [np.vdot(b.reshape(-1), v) for b in res.basis]
    assert sum(abs(c) ** 2 for c in coeffs) == pytest.approx(1.0, abs=1e-12)


def test_single_generator():
    res = lie_closure([SIGMA_Z])
    assert res.dimension == 1
    assert not is_universal([SIGMA_Z], 1)


def test_clifford_e_n2():
    assert lie_closure(family(2, "clifford_e")).dimension == 10


def test_clifford_e_with_g2_is_universal():
    gens = list(family(2, "clifford_e")) + [to_matrix(g2_generator(2))]
    assert lie_closure(gens).dimension == 15
    assert is_universal(gens, 2)


@pytest.mark.parametrize(
    "n, expected",
    [
        (2, {"clifford_e": 10, "d_set": 10, "enew": 15, "enew_symmetric": 6}),
        (3, {"clifford_e": 21, "d_set": 21, "enew": 63, "enew_symmetric": 15}),
    ],
)
def test_family_dimensions(n, expected):
    result = check_family_dimensions(n)
    for label, dim in expected.items():
        assert result[label] == (dim, dim)


def test_enew_without_z_gates_not_universal():
    gens = [to_matrix(PauliString.from_label(s)) for s in ("XI", "IX", "ZZ")]
    dim = lie_closure(gens).dimension
    assert dim == 6 < 15


def test_is_universal_examples():
    assert is_universal(family(2, "enew"), 2)
    assert not is_universal(family(3, "enew_symmetric"), 3)


def test_predicted_dimension():
    assert [predicted_dimension("clifford_e", n) for n in (2, 3, 4)] == [10, 21, 36]
    assert [predicted_dimension("enew_symmetric", n) for n in (2, 3, 4)] == [6, 15, 28]
    assert predicted_dimension("enew", 3) == su_dimension(3) == 63
    with pytest.raises(ValueError):
        predicted_dimension("bogus", 2)


def test_family_range():
    with pytest.raises(CapacityError):
        check_family_dimensions(1)
    with pytest.raises(CapacityError):
        check_family_dimensions(5)


def test_argument_errors():
    with pytest.raises(ValueError):
        lie_closure([np.array([[0, 1], [0, 0]])])
    with pytest.raises(ValueError):
        lie_closure([])
    with pytest.raises(ValueError):
        lie_closure([np.zeros((2, 2))])
    with pytest.raises(DimensionError):
        lie_closure([SIGMA_X, np.eye(4)])
    with pytest.raises(ValueError):
        lie_closure([SIGMA_X], rank_tol=0)


def test_capacity(monkeypatch):
    monkeypatch.setenv("STAIRWAY_DENSE_CAP", "2")
    with pytest.raises(CapacityError):
        lie_closure(family(3, "enew"))


def test_basis_orthonormal_and_hermitian():
    res = lie_closure(family(3, "clifford_e"))
    flat = res.basis.reshape(res.dimension, -1)
    gram = (flat.conj() @ flat.T).real
    np.testing.assert_allclose(gram, np.eye(res.dimension), atol=1e-10)
    np.testing.assert_allclose(res.basis, res.basis.conj().transpose(0, 2, 1), atol=1e-12)
    assert res.rank_tolerance == 1e-9
    assert res.iterations >= 1


def test_traceless_closure():
    res = lie_closure(family(3, "enew"))
    assert np.max(np.abs(np.trace(res.basis, axis1=1, axis2=2))) < 1e-10


@pytest.mark.parametrize("label", ["clifford_e", "enew", "enew_symmetric"])
def test_fixpoint(label):
    res = lie_closure(family(2, label))
    assert closure_defect(res) <= res.rank_tolerance


def test_permutation_invariance(rng):
    gens = list(family(3, "enew_symmetric"))
    base = lie_closure(gens).dimension
    for _ in range(3):
        perm = rng.permutation(len(gens))
        assert lie_closure([gens[i] for i in perm]).dimension == base


def test_scaling_invariance(rng):
    gens = family(2, "clifford_e")
    scaled = [g * rng.choice([-1, 1]) * rng.uniform(0.1, 5.0) for g in gens]
    assert lie_closure(scaled).dimension == 10


def test_conjugation_invariance():
    u = unitary_group.rvs(8, random_state=7)
    for label, dim in (("clifford_e", 21), ("enew_symmetric", 15)):
        gens = [u @ g @ u.conj().T for g in family(3, label)]
        assert lie_closure(gens).dimension == dim


def test_monotone():
    gens = list(family(2, "enew"))
    dims = [lie_closure(gens[: k + 1]).dimension for k in range(len(gens))]
    assert dims == sorted(dims)
    assert dims[-1] == 15


def test_general_matrix_generators(rng):
    # interaction with unequal level energies and exchange, not a Pauli string
    zz = to_matrix(PauliString.from_label("ZZ"))
    xx = to_matrix(PauliString.from_label("XX"))
    yy = to_matrix(PauliString.from_label("YY"))
    h_int = 0.7 * zz + 0.3 * (xx + yy)
    gens = [to_matrix(PauliString.from_label(s)) for s in ("XI", "IX", "ZI", "IZ")] + [h_int]
    assert is_universal(gens, 2)
