import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropy_cf.cf import cf_eval, iter_convergents, scale_transform
from entropy_cf.errors import DimensionMismatchError, NotPositiveDefiniteError
from entropy_cf.expansions import (
    congruence_quotient,
    divergence_Dq,
    divergence_literal_cf,
    entropy_phi,
    entropy_product_cf,
    entropy_Sn,
    entropy_Sn_convergence,
    entropy_Sq,
    ln_series,
    matrix_ln_cf,
    matrix_phi,
    matrix_pow_cf,
    pow_via_exp_ln,
    powln_matrix,
    powln_product_cf,
    relative_entropy_convergence,
    relative_entropy_S,
)
from entropy_cf.golden import printed_matrix, printed_tables
from entropy_cf.linalg import inverse, solve, spd_sqrt
from entropy_cf.oracle import oracle_divergence, oracle_entropy, oracle_fn
from entropy_cf.scalar import ln_cf_simple, pow_cf_simple
from helpers import random_orthogonal, random_spd, random_spd_pair

EX2 = np.array([[2.0, 1.0], [1.0, 3.0]])
THIRD = 1.0 / 3.0
seeds = st.integers(0, 2**32 - 1)


def scale(x):
    return max(1.0, float(np.abs(x).max()))


def convergents(table):
    return [r.convergent for r in table.rows]


# ---- Cayley image --------------------------------------------------------


def test_phi_identity():
    assert np.array_equal(matrix_phi(np.eye(3)), np.zeros((3, 3)))


def test_phi_diagonal():
    assert np.allclose(matrix_phi(np.diag([2.0, 3.0])), np.diag([-1 / 3, -0.5]), rtol=1e-15, atol=0)


@given(st.integers(1, 6), seeds)
@settings(max_examples=40, deadline=None)
def test_phi_invariants(m, seed):
    a = random_spd(np.random.default_rng(seed), m, 0.01, 100.0)
    phi = matrix_phi(a)
    lam = np.linalg.eigvalsh(a)
    assert np.array_equal(phi, phi.T)
    assert np.allclose(np.sort(np.linalg.eigvalsh(phi)), np.sort((1 - lam) / (1 + lam)), atol=1e-12)
    assert np.max(np.abs(np.linalg.eigvalsh(phi))) < 1
    assert np.abs(phi @ a - a @ phi).max() <= 1e-10 * np.abs(a).max()


@given(st.integers(1, 5), seeds)
@settings(max_examples=30, deadline=None)
def test_entropy_phi_contractive(m, seed):
    a, b = random_spd_pair(np.random.default_rng(seed), m)
    assert np.max(np.abs(np.linalg.eigvalsh(entropy_phi(a, b)))) < 1


def test_congruence_quotient_example(example3_pair):
    a, b = example3_pair
    m, root = congruence_quotient(a, b)
    assert np.array_equal(m.data, m.data.T)
    assert np.abs(root.data @ m.data @ root.data - b.data).max() <= 1e-12
    similar = np.sort(np.linalg.eigvals(solve(a.data, b.data)).real)
    assert np.allclose(np.linalg.eigvalsh(m.data), similar, rtol=1e-12)
    assert np.allclose(similar, [0.517, 0.6, 2.15], atol=5e-3)


# ---- A^q and ln A --------------------------------------------------------


@pytest.mark.parametrize("form", ["general", "simple"])
def test_pow_identity(form):
    for _, f in iter_convergents(matrix_pow_cf(np.eye(2), 0.4, form), 6):
        assert np.array_equal(f, np.eye(2))


@pytest.mark.parametrize("form, n", [("general", 20), ("simple", 10)])
def test_pow_sqrt_diagonal(form, n):
    res = cf_eval(matrix_pow_cf(np.diag([2.0, 3.0]), 0.5, form), n, 1e-300)
    assert np.abs(res.value - np.diag([math.sqrt(2), math.sqrt(3)])).max() <= 1e-8


@pytest.mark.parametrize("form, n", [("general", 20), ("simple", 10)])
def test_pow_cube_root(form, n):
    res = cf_eval(matrix_pow_cf(EX2, THIRD, form), n, 1e-300)
    assert np.abs(res.value - oracle_fn(EX2, "pow", THIRD).value).max() <= 1e-8


@pytest.mark.parametrize("form", ["general", "simple"])
def test_ln_identity(form):
    for _, f in iter_convergents(matrix_ln_cf(np.eye(2), form), 6):
        assert np.array_equal(f, np.zeros((2, 2)))


@pytest.mark.parametrize("form, n", [("general", 20), ("simple", 10)])
def test_ln_diagonal(form, n):
    res = cf_eval(matrix_ln_cf(np.diag([2.0, 0.5]), form), n, 1e-300)
    assert np.abs(res.value - np.diag([math.log(2), -math.log(2)])).max() <= 1e-8


@pytest.mark.parametrize("form, n", [("general", 20), ("simple", 10)])
def test_ln_example(form, n):
    res = cf_eval(matrix_ln_cf(EX2, form), n, 1e-300)
    assert np.abs(res.value - oracle_fn(EX2, "ln").value).max() <= 1e-8


def test_simple_form_falls_back_near_one():
    a = np.diag([1.0, 2.0])
    for make in (lambda f: matrix_pow_cf(a, 0.5, f), lambda f: matrix_ln_cf(a, f)):
        simple = [f for _, f in iter_convergents(make("simple"), 8)]
        general = [f for _, f in iter_convergents(make("general"), 8)]
        assert all(np.array_equal(x, y) for x, y in zip(simple, general))


def test_unknown_form():
    with pytest.raises(ValueError):
        matrix_pow_cf(EX2, 0.5, form="other")


@pytest.mark.parametrize("q", [0.0, 1.0, 2.0])
def test_pow_exponent_domain(q):
    with pytest.raises(ValueError):
        matrix_pow_cf(EX2, q)


def test_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        matrix_ln_cf(np.diag([1.0, -1.0]))


@pytest.mark.parametrize("form", ["general", "simple"])
def test_coefficients_commute(rng, form):
    a = random_spd(rng, 4, 1.5, 5.0)
    for make in (lambda: matrix_pow_cf(a, 0.3, form), lambda: matrix_ln_cf(a, form)):
        mats = [x for pair, _ in zip(make().pairs(), range(6)) for x in pair] + [a]
        for x in mats:
            for y in mats:
                assert np.abs(x @ y - y @ x).max() <= 1e-9 * scale(x) * scale(y)


@pytest.mark.parametrize("lams", [[0.5, 2.0, 3.0, 0.25], [4.0, 1.5], [0.3]])
def test_diagonal_reduction_exact(lams):
    a = np.diag(lams)
    pow_ref = np.array([pow_cf_simple(x, 0.3).convergents(12) for x in lams])
    ln_ref = np.array([ln_cf_simple(x).convergents(12) for x in lams])
    for cf, ref in ((matrix_pow_cf(a, 0.3, "simple"), pow_ref), (matrix_ln_cf(a, "simple"), ln_ref)):
        for n, f in iter_convergents(cf, 12):
            assert np.array_equal(np.diag(f), ref[:, n - 1])
            assert np.array_equal(f, np.diag(np.diag(f)))


@given(st.integers(1, 5), seeds)
@settings(max_examples=40, deadline=None)
def test_ln_congruence_covariance(m, seed):
    rng = np.random.default_rng(seed)
    a = random_spd(rng, m)
    v = random_orthogonal(rng, m)
    rotated = [f for _, f in iter_convergents(matrix_ln_cf(v @ a @ v.T), 10)]
    plain = [v @ f @ v.T for _, f in iter_convergents(matrix_ln_cf(a), 10)]
    assert all(np.abs(x - y).max() <= 1e-9 * scale(y) for x, y in zip(rotated, plain))


# ---- A^q ln A ------------------------------------------------------------


def test_powln_identity():
    value, table = powln_matrix(np.eye(3), 0.5, max_n=5, tol=1e-300)
    # consecutive convergents agree exactly, so the stopping rule ends at n = 1
    assert [r.n for r in table.rows] == [1]
    assert np.array_equal(value, np.zeros((3, 3)))
    for cf in (matrix_pow_cf(np.eye(3), 0.5), matrix_ln_cf(np.eye(3))):
        assert all(np.array_equal(f, cf.head) for _, f in iter_convergents(cf, 5))


def test_powln_example2_first_and_fifth():
    _, table = powln_matrix(EX2, THIRD, max_n=5, tol=1e-300)
    printed = printed_tables()["example2"]["matrices"]
    first, _ = printed_matrix(printed[0])
    fifth, _ = printed_matrix(printed[4])
    # printed asymmetry is ~2e-10, so compare at that level
    assert np.abs(table.rows[0].difference - first).max() <= 1e-9
    assert np.abs(table.rows[4].difference - fifth).max() <= 1e-9
    assert table.difference == "reference - F_n"


def test_powln_errors_decrease():
    _, table = powln_matrix(EX2, THIRD, max_n=10, tol=1e-300)
    errs = table.maxabs_errors()
    assert all(x > y for x, y in zip(errs, errs[1:]))


@given(st.integers(1, 5), seeds)
@settings(max_examples=30, deadline=None)
def test_powln_congruence_covariance(m, seed):
    rng = np.random.default_rng(seed)
    a = random_spd(rng, m)
    v = random_orthogonal(rng, m)
    _, rotated = powln_matrix(v @ a @ v.T, 0.4, max_n=8, tol=1e-300)
    _, plain = powln_matrix(a, 0.4, max_n=8, tol=1e-300)
    for x, y in zip(convergents(rotated), convergents(plain)):
        ref = v @ y @ v.T
        assert np.abs(x - ref).max() <= 1e-9 * scale(ref)


@given(st.integers(2, 6), st.floats(0.05, 0.95), seeds)
@settings(max_examples=30, deadline=None)
def test_powln_oracle(m, q, seed):
    a = random_spd(np.random.default_rng(seed), m)
    value, _ = powln_matrix(a, q, max_n=12, tol=1e-300)
    assert np.abs(value - oracle_fn(a, "powln", q).value).max() <= 1e-6
    assert np.array_equal(value, value.T)


def test_powln_simple_form_matches_general():
    _, simple = powln_matrix(EX2, THIRD, max_n=8, tol=1e-300, form="simple")
    _, general = powln_matrix(EX2, THIRD, max_n=8, tol=1e-300)
    assert all(np.abs(x - y).max() <= 1e-9 for x, y in zip(convergents(simple), convergents(general)))


def test_powln_stops_on_tolerance():
    _, table = powln_matrix(EX2, THIRD, max_n=60, tol=1e-10)
    assert len(table.rows) < 60
    assert table.maxabs_errors()[-1] < 1e-9


# ---- S_q -----------------------------------------------------------------


def test_entropy_example3_entries(example3_pair):
    a, b = example3_pair
    _, table = entropy_Sq(a, b, THIRD, max_n=5, tol=1e-300)
    assert table.difference == "F_n - reference"
    assert table.rows[0].difference[1, 1] == pytest.approx(-0.09860205655, abs=1e-8)
    assert table.rows[4].difference[1, 1] == pytest.approx(-0.18655e-6, abs=1e-8)


def test_entropy_same_pair(example3_pair):
    a, _ = example3_pair
    value, table = entropy_Sq(a, a, 0.5)
    assert np.array_equal(value, np.zeros((3, 3)))
    assert table.maxabs_errors()[0] <= 1e-14  # oracle roundoff only


@given(st.integers(2, 5), st.floats(0.05, 0.95), seeds)
@settings(max_examples=30, deadline=None)
def test_entropy_oracle(m, q, seed):
    a, b = random_spd_pair(np.random.default_rng(seed), m)
    value, _ = entropy_Sq(a, b, q, max_n=12, tol=1e-300)
    assert np.abs(value - oracle_entropy(a, b, q).value).max() <= 1e-6
    assert np.abs(value - value.T).max() <= 1e-9 * scale(value)


def test_entropy_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        entropy_Sq(np.eye(2), np.eye(3), 0.5)


# ---- S and S_n -----------------------------------------------------------


def test_relative_entropy_same_pair(example3_pair):
    a, _ = example3_pair
    assert np.abs(relative_entropy_S(a, a)).max() == 0.0


def test_relative_entropy_commuting():
    value = relative_entropy_S(np.diag([2.0, 3.0]), np.diag([4.0, 3.0]), max_n=40, tol=1e-14)
    assert np.abs(value - np.diag([2 * math.log(2), 0.0])).max() <= 1e-12


def test_relative_entropy_example3(example3_pair):
    a, b = example3_pair
    value, table = relative_entropy_convergence(a, b, max_n=12, tol=1e-300)
    assert np.abs(value - oracle_entropy(a, b, 0).value).max() <= 1e-7
    assert table.rows[-1].n == 12


@given(st.integers(1, 4), seeds)
@settings(max_examples=30, deadline=None)
def test_relative_entropy_oracle(m, seed):
    a, b = random_spd_pair(np.random.default_rng(seed), m, 0.5, 2.0)
    value = relative_entropy_S(a, b, max_n=30, tol=1e-13)
    assert np.abs(value - oracle_entropy(a, b, 0).value).max() <= 1e-9


def test_sn_commuting_first_order():
    lam, mu = np.array([2.0, 3.0]), np.array([4.0, 3.0])
    value = entropy_Sn(np.diag(lam), np.diag(mu), 1, max_n=40, tol=1e-14)
    assert np.abs(value - np.diag(mu * np.log(mu / lam))).max() <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sn_same_pair(example3_pair, n):
    a, _ = example3_pair
    assert np.abs(entropy_Sn(a, a, n)).max() == 0.0


def test_sn_first_order_identity(example3_pair):
    a, b = example3_pair
    s = relative_entropy_S(a, b, max_n=30, tol=1e-14)
    ba = b.data @ inverse(a.data)
    value = entropy_Sn(a, b, 1, max_n=30, tol=1e-14)
    assert np.abs(value - ba @ s).max() <= 1e-9 * scale(value)


def test_sn_second_order_sandwich(example3_pair):
    a, b = example3_pair
    s = relative_entropy_S(a, b, max_n=30, tol=1e-14)
    ba = b.data @ inverse(a.data)
    ab = inverse(a.data) @ b.data
    value = entropy_Sn(a, b, 2, max_n=30, tol=1e-14)
    assert np.abs(value - ba @ s @ ab).max() <= 1e-9 * scale(value)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sn_oracle(example3_pair, n):
    a, b = example3_pair
    value, table = entropy_Sn_convergence(a, b, n, max_n=30, tol=1e-14)
    assert np.abs(value - oracle_entropy(a, b, n).value).max() <= 1e-8 * scale(value)
    assert table.command == "entropy-n"


@pytest.mark.parametrize("n", [0, -1, 1.5, True])
def test_sn_order_domain(n):
    with pytest.raises(ValueError):
        entropy_Sn(np.eye(2), 2 * np.eye(2), n)


# ---- D_q -----------------------------------------------------------------


def test_divergence_example4_entries(example3_pair):
    a, b = example3_pair
    _, table = divergence_Dq(a, b, THIRD, max_n=5, tol=1e-300)
    assert table.rows[0].difference[0, 0] == pytest.approx(-0.069264959, abs=1e-8)
    assert table.rows[4].difference[1, 1] == pytest.approx(0.14255e-6, abs=1e-8)


def test_divergence_same_pair(example3_pair):
    a, _ = example3_pair
    value, _ = divergence_Dq(a, a, THIRD)
    assert np.array_equal(value, np.zeros((3, 3)))


@given(st.integers(2, 5), st.floats(0.05, 0.95), seeds)
@settings(max_examples=30, deadline=None)
def test_divergence_oracle_and_psd(m, q, seed):
    a, b = random_spd_pair(np.random.default_rng(seed), m)
    value, _ = divergence_Dq(a, b, q, max_n=12, tol=1e-300)
    assert np.abs(value - oracle_divergence(a, b, q).value).max() <= 1e-6
    assert np.linalg.eigvalsh(value).min() >= -1e-9 * scale(value)
    assert np.abs(value - value.T).max() <= 1e-9 * scale(value)


# ---- explicit product continued fractions (diagnostics) -------------------


def clustered(seed=7):
    return random_spd(np.random.default_rng(seed), 3, eigenvalues=[2.0, 2.2, 2.5])


@pytest.mark.parametrize("a, depth", [(clustered(), 6), (EX2, 3)], ids=["clustered", "example2"])
def test_product_cf_matches_lockstep(a, depth):
    _, table = powln_matrix(a, 0.4, max_n=depth, tol=1e-300)
    product = [f for _, f in iter_convergents(powln_product_cf(a, 0.4), depth)]
    for x, y in zip(product, convergents(table)):
        assert np.abs(x - y).max() <= 1e-8 * scale(y)


def test_product_cf_denominator_variant_departs():
    a = clustered()
    _, table = powln_matrix(a, 0.4, max_n=3, tol=1e-300)
    denominators_only = [f for _, f in iter_convergents(powln_product_cf(a, 0.4, variant="denominators"), 3)]
    assert np.abs(denominators_only[0] - table.rows[0].convergent).max() <= 1e-12
    assert np.abs(denominators_only[1] - table.rows[1].convergent).max() > 1e-4


def test_entropy_product_cf_scaled(example3_pair):
    a, b = example3_pair
    _, table = entropy_Sq(a, b, THIRD, max_n=3, tol=1e-300)
    product = [f for _, f in iter_convergents(entropy_product_cf(a, b, THIRD), 3)]
    for x, y in zip(product, convergents(table)):
        assert np.abs(x - y).max() <= 1e-10 * scale(y)


def test_scale_transform_cross_check(example3_pair):
    a, b = example3_pair
    m, root = congruence_quotient(a, b)
    inner = powln_product_cf(m, THIRD)
    outer = scale_transform(inner, root.data, root.data)
    for (_, f0), (_, f1) in zip(iter_convergents(inner, 3), iter_convergents(outer, 3)):
        ref = root.data @ f0 @ root.data
        assert np.abs(f1 - ref).max() <= 1e-10 * scale(ref)


@pytest.mark.parametrize("head", ["congruence", "difference"])
def test_literal_divergence_is_shifted_entropy(head):
    rng = np.random.default_rng(11)
    a = random_spd(rng, 3, 1.0, 2.0)
    root = spd_sqrt(a).data
    b = root @ clustered() @ root
    b = (b + b.T) / 2
    m, _ = congruence_quotient(a, b)
    offset = m.data - np.eye(3) if head == "congruence" else b - a
    q = 0.4
    res = cf_eval(divergence_literal_cf(a, b, q, head=head), 6, 1e-300)
    s = oracle_entropy(a, b, q).value
    assert np.abs(res.value - (offset + s)).max() <= 1e-6
    assert np.abs(res.value - oracle_divergence(a, b, q).value).max() > 0.1


def test_literal_divergence_unknown_head():
    with pytest.raises(ValueError):
        divergence_literal_cf(np.eye(2), 2 * np.eye(2), 0.5, head="other")


# ---- power-series references ---------------------------------------------


def test_ln_series_identity():
    assert np.array_equal(ln_series(np.eye(2)), np.zeros((2, 2)))


def test_ln_series_diagonal():
    tol = 1e-13
    assert np.abs(ln_series(np.diag([2.0, 3.0]), tol) - np.diag([math.log(2), math.log(3)])).max() <= 10 * tol


@given(st.integers(1, 5), seeds)
@settings(max_examples=30, deadline=None)
def test_ln_series_matches_cf(m, seed):
    tol = 1e-11
    a = random_spd(np.random.default_rng(seed), m)
    cf = cf_eval(matrix_ln_cf(a), 200, tol * 1e-2).value
    assert np.abs(ln_series(a, tol) - cf).max() <= 10 * tol * scale(cf)


def test_pow_via_exp_ln_trivial():
    a = EX2
    assert np.array_equal(pow_via_exp_ln(a, 0.0), np.eye(2))
    assert np.abs(pow_via_exp_ln(a, 1.0, 1e-13) - a).max() <= 10 * 1e-13 * 3


def test_pow_via_exp_ln_diagonal():
    assert np.abs(pow_via_exp_ln(np.diag([4.0, 9.0]), 0.5, 1e-13) - np.diag([2.0, 3.0])).max() <= 1e-12


@given(st.integers(1, 4), st.floats(0.05, 0.95), seeds)
@settings(max_examples=30, deadline=None)
def test_pow_via_exp_ln_matches_cf(m, q, seed):
    a = random_spd(np.random.default_rng(seed), m)
    cf = cf_eval(matrix_pow_cf(a, q), 200, 1e-13).value
    assert np.abs(pow_via_exp_ln(a, q, 1e-13) - cf).max() <= 1e-10 * scale(cf)
