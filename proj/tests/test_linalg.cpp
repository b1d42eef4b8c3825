#include "aqm/linalg.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aqm;

namespace {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Operator op(Matrix m, Factorization f) { return Operator(std::move(m), std::move(f)); }

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("factorization validates entries and total dimension") {
    CHECK(Factorization({2, 3}).total_dim() == 6);
    CHECK(Factorization({1, 5, 2}).total_dim() == 10);
    CHECK_THROWS_AS(Factorization({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Factorization(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(Operator(Matrix::Identity(4, 4), Factorization({2, 3})),
                    std::invalid_argument);
}

TEST_CASE("operator construction rejects bad input") {
    CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3), Factorization({2})), std::invalid_argument);
    Matrix nonherm(2, 2);
    nonherm << 0, 1, 0, 0;
    CHECK_THROWS_AS(Operator::hermitian(nonherm, Factorization({2})), std::invalid_argument);
    Matrix inf = Matrix::Zero(2, 2);
    inf(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Operator(inf, Factorization({2})), std::invalid_argument);
}

TEST_CASE("pure state requires unit norm") {
    Vector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(PureState(v, Factorization({2})), std::invalid_argument);
    v << 1.0, 0.0;
    CHECK_NOTHROW(PureState(v, Factorization({2})));
}

TEST_CASE("density state invariants") {
    Matrix ok = Matrix::Zero(2, 2);
    ok(0, 0) = 0.25;
    ok(1, 1) = 0.75;
    CHECK_NOTHROW(DensityState(ok, Factorization({2})));

    Matrix bad_trace = 2.0 * ok;
    CHECK_THROWS_AS(DensityState(bad_trace, Factorization({2})), std::invalid_argument);

    Matrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(DensityState(negative, Factorization({2})), std::invalid_argument);
}

TEST_CASE("tensor identity and diagonal cases") {
    Operator i2 = Operator::identity(Factorization({2}));
    Operator i3 = Operator::identity(Factorization({3}));
    Operator t = tensor(i2, i3);
    CHECK(max_abs(t.entries() - Matrix::Identity(6, 6)) == 0.0);
    CHECK(t.factorization() == Factorization({2, 3}));

    Operator sz = op(pauli_z(), Factorization({2}));
    Operator d = tensor(sz, i3);
    Matrix expected = Matrix::Zero(6, 6);
    for (int k = 0; k < 3; ++k) {
        expected(k, k) = 1.0;
        expected(k + 3, k + 3) = -1.0;
    }
    CHECK(max_abs(d.entries() - expected) == 0.0);
}

TEST_CASE("tensor matches the four-index oracle") {
    Operator sx = op(pauli_x(), Factorization({2}));
    Operator sz = op(pauli_z(), Factorization({2}));
    CHECK(max_abs(tensor(sx, sz).entries() - oracles::kron_oracle(pauli_x(), pauli_z())) == 0.0);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = oracles::random_matrix(3, rng);
        Matrix b = oracles::random_matrix(2, rng);
        Matrix got = tensor(op(a, Factorization({3})), op(b, Factorization({2}))).entries();
        CHECK(max_abs(got - oracles::kron_oracle(a, b)) == 0.0);
    }
}

TEST_CASE("tensor associativity") {
    // Structured operators (entries 0, +-1, +-i) have exactly representable
    // products, so regrouping is bitwise equal.
    std::vector<Matrix> structured{pauli_x(), pauli_y(), pauli_z(), Matrix::Identity(2, 2)};
    for (const Matrix& a : structured) {
        for (const Matrix& b : structured) {
            for (const Matrix& c : structured) {
                Operator oa = op(a, Factorization({2}));
                Operator ob = op(b, Factorization({2}));
                Operator oc = op(c, Factorization({2}));
                Matrix left = tensor(tensor(oa, ob), oc).entries();
                Matrix right = tensor(oa, tensor(ob, oc)).entries();
                CHECK(max_abs(left - right) == 0.0);
            }
        }
    }
    // Random dense factors agree to rounding.
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        Operator a = op(oracles::random_matrix(2, rng), Factorization({2}));
        Operator b = op(oracles::random_matrix(3, rng), Factorization({3}));
        Operator c = op(oracles::random_matrix(2, rng), Factorization({2}));
        Matrix left = tensor(tensor(a, b), c).entries();
        Matrix right = tensor(a, tensor(b, c)).entries();
        CHECK(max_abs(left - right) <= 1e-15 * max_abs(left));
    }
}

TEST_CASE("partial trace of the correlated composite state keeps the pointer weights") {
    // sum_i a_i |s_i>|O_i> with symmetric amplitudes.
    const double r = 1.0 / std::sqrt(2.0);
    Vector psi = Vector::Zero(6);
    psi(1) = r;  // |s_1, O_1>
    psi(5) = r;  // |s_2, O_2>
    DensityState rho = DensityState::from_pure(PureState(psi, Factorization({2, 3})));
    DensityState reduced = partial_trace(rho, {1});
    Matrix expected = Matrix::Zero(3, 3);
    expected(1, 1) = 0.5;
    expected(2, 2) = 0.5;
    CHECK(max_abs(reduced.entries() - expected) <= 1e-15);
    CHECK(reduced.factorization() == Factorization({3}));
}

TEST_CASE("partial trace of a product state recovers the factor") {
    std::mt19937_64 rng(13);
    Matrix rho_s = oracles::random_density_matrix(2, 2, rng);
    Matrix rho_o = oracles::random_density_matrix(3, 3, rng);
    Operator a = op(rho_s, Factorization({2}));
    Operator b = op(rho_o, Factorization({3}));
    DensityState product(tensor(a, b).entries(), Factorization({2, 3}));
    DensityState reduced = partial_trace(product, {0});
    CHECK(max_abs(reduced.entries() - rho_s) <= 1e-14);
}

TEST_CASE("partial trace matches the index-summation oracle") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix rho = oracles::random_density_matrix(4, 4, rng);
        DensityState state(rho, Factorization({2, 2}));
        DensityState reduced = partial_trace(state, {1});
        Matrix expected = oracles::partial_trace_oracle(rho, {2, 2}, {1});
        CHECK(max_abs(reduced.entries() - expected) <= 1e-12);
    }
    // Three factors, keep a non-adjacent pair.
    Matrix rho = oracles::random_density_matrix(12, 5, rng);
    DensityState state(rho, Factorization({2, 3, 2}));
    DensityState reduced = partial_trace(state, {0, 2});
    CHECK(max_abs(reduced.entries() - oracles::partial_trace_oracle(rho, {2, 3, 2}, {0, 2})) <=
          1e-12);
    CHECK(reduced.factorization() == Factorization({2, 2}));
}

TEST_CASE("partial trace preserves trace and positivity") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix rho = oracles::random_density_matrix(12, 1 + trial % 6, rng);
        DensityState state(rho, Factorization({2, 3, 2}));
        for (const std::vector<int>& keep :
             {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{2},
              std::vector<int>{0, 1}, std::vector<int>{1, 2}}) {
            DensityState reduced = partial_trace(state, keep);
            CHECK(std::abs(reduced.entries().trace().real() - 1.0) <= 1e-12);
            Eigen::SelfAdjointEigenSolver<Matrix> solver(reduced.entries(),
                                                         Eigen::EigenvaluesOnly);
            CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("partial trace rejects bad factor sets") {
    Matrix rho = Matrix::Identity(6, 6) / 6.0;
    DensityState state(rho, Factorization({2, 3}));
    CHECK_THROWS_AS(partial_trace(state, {2}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(state, {}), std::invalid_argument);
}

TEST_CASE("keeping every factor is the identity") {
    std::mt19937_64 rng(18);
    Matrix rho = oracles::random_density_matrix(6, 3, rng);
    DensityState state(rho, Factorization({2, 3}));
    DensityState kept = partial_trace(state, {0, 1});
    CHECK(max_abs(kept.entries() - rho) == 0.0);
    CHECK(kept.factorization() == Factorization({2, 3}));
    // Duplicated indices collapse to the set.
    DensityState dup = partial_trace(state, {1, 1, 0});
    CHECK(max_abs(dup.entries() - rho) == 0.0);
}

TEST_CASE("hermitian eigendecomposition on known spectra") {
    Matrix q = Matrix::Zero(3, 3);
    q(1, 1) = 1.0;
    q(2, 2) = -1.0;
    EigenSystem sys = eig_hermitian(Operator::hermitian(q, Factorization({3})));
    CHECK(sys.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sys.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sys.eigenvalues(2) == doctest::Approx(1.0).epsilon(1e-12));

    EigenSystem sx = eig_hermitian(Operator::hermitian(pauli_x(), Factorization({2})));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(sx.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sx.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(std::abs(sx.eigenvectors(0, 0) - Complex(r, 0)) <= 1e-12);
    CHECK(std::abs(sx.eigenvectors(1, 0) - Complex(-r, 0)) <= 1e-12);
    CHECK(std::abs(sx.eigenvectors(0, 1) - Complex(r, 0)) <= 1e-12);
    CHECK(std::abs(sx.eigenvectors(1, 1) - Complex(r, 0)) <= 1e-12);
}

TEST_CASE("interference-term matrix is a rank-2 swap") {
    // |s_1 O_1><s_2 O_2| + h.c. on the 6-dim composite space.
    Matrix b = Matrix::Zero(6, 6);
    b(1, 5) = 1.0;
    b(5, 1) = 1.0;
    EigenSystem sys = eig_hermitian(Operator::hermitian(b, Factorization({2, 3})));
    CHECK(sys.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(sys.eigenvalues(5) == doctest::Approx(1.0));
    for (int k = 1; k < 5; ++k) {
        CHECK(std::abs(sys.eigenvalues(k)) <= 1e-12);
    }
}

TEST_CASE("eigendecomposition reconstructs the operator") {
    std::mt19937_64 rng(16);
    for (int dim : {2, 6, 16, 64}) {
        Matrix h = oracles::random_hermitian(dim, rng);
        Operator a = Operator::hermitian(h, Factorization({dim}));
        EigenSystem sys = eig_hermitian(a);
        Matrix rebuilt =
            sys.eigenvectors * sys.eigenvalues.asDiagonal() * sys.eigenvectors.adjoint();
        CHECK(max_abs(rebuilt - h) <= 1e-10);
        CHECK(max_abs(sys.eigenvectors.adjoint() * sys.eigenvectors -
                      Matrix::Identity(dim, dim)) <= 1e-10);
    }
}

TEST_CASE("eigendecomposition requires the hermitian flag") {
    CHECK_THROWS_AS(eig_hermitian(op(pauli_x(), Factorization({2}))), std::invalid_argument);
}

TEST_CASE("hilbert-schmidt inner product") {
    Operator i2 = Operator::identity(Factorization({2}));
    CHECK(hs_inner(i2, i2) == Complex(2.0, 0.0));
    CHECK(std::abs(hs_inner(op(pauli_x(), Factorization({2})),
                            op(pauli_z(), Factorization({2})))) == 0.0);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = oracles::random_matrix(4, rng);
        Matrix b = oracles::random_matrix(4, rng);
        Operator oa = op(a, Factorization({4}));
        Operator ob = op(b, Factorization({4}));
        CHECK(std::abs(hs_inner(oa, ob) - oracles::hs_inner_oracle(a, b)) <= 1e-12);
        // Conjugate symmetry and positivity.
        CHECK(std::abs(hs_inner(oa, ob) - std::conj(hs_inner(ob, oa))) <= 1e-12);
        CHECK(hs_inner(oa, oa).real() > 0.0);
        CHECK(std::abs(hs_inner(oa, oa).imag()) <= 1e-12);
    }
    CHECK_THROWS_AS(hs_inner(i2, Operator::identity(Factorization({3}))), std::invalid_argument);
}

}  // TEST_SUITE
