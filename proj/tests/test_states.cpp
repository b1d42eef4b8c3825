#include "aqm/states.hpp"

#include "aqm/dynamics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace aqm;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Amplitudes symmetric() { return {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)}; }

PureState basis_state(int dim, int index, Factorization f) {
    Vector v = Vector::Zero(dim);
    v(index) = 1.0;
    return PureState(std::move(v), std::move(f));
}

}  // namespace

TEST_SUITE("states") {

TEST_CASE("ensemble to density for the incoming mixture") {
    PureState s1 = basis_state(2, 0, Factorization({2}));
    PureState s2 = basis_state(2, 1, Factorization({2}));
    DensityState rho = ensemble_to_density(Ensemble({{s1, 0.5}, {s2, 0.5}}));
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 0.5;
    expected(1, 1) = 0.5;
    CHECK(max_abs(rho.entries() - expected) == 0.0);
}

TEST_CASE("a singleton ensemble is the projector onto its state") {
    std::mt19937_64 rng(31);
    Vector v = oracles::random_unit_vector(3, rng);
    PureState psi(v, Factorization({3}));
    DensityState rho = ensemble_to_density(Ensemble({{psi, 1.0}}));
    CHECK(max_abs(rho.entries() - v * v.adjoint()) <= 1e-15);
}

TEST_CASE("the outcome gemenge reproduces the mixed final state") {
    MeasurementModel model = MeasurementModel::standard();
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        auto [a1, a2] = oracles::random_amplitudes(rng);
        Amplitudes amps{a1, a2};
        PureState m1 = basis_state(6, 1, Factorization({2, 3}));  // |s_1, O_1>
        PureState m2 = basis_state(6, 5, Factorization({2, 3}));  // |s_2, O_2>
        DensityState from_gemenge =
            ensemble_to_density(Ensemble({{m1, std::norm(a1)}, {m2, std::norm(a2)}}));
        DensityState direct = mixed_final_state(amps, model);
        CHECK(max_abs(from_gemenge.entries() - direct.entries()) <= 1e-14);
    }
}

TEST_CASE("ensemble validation") {
    PureState s1 = basis_state(2, 0, Factorization({2}));
    PureState o0 = basis_state(3, 0, Factorization({3}));
    CHECK_THROWS_AS(Ensemble({{s1, 0.6}, {o0, 0.4}}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble({{s1, 0.7}}), std::invalid_argument);
    CHECK_THROWS_AS(Ensemble({{s1, -0.1}, {s1, 1.1}}), std::invalid_argument);
    CHECK_THROWS_AS(ensemble_to_density(Ensemble(
                        {{s1, 0.5}, {basis_state(3, 0, Factorization({3})), 0.5}})),
                    std::invalid_argument);
}

TEST_CASE("restriction to the pointer algebra hides purity") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState pure = DensityState::from_pure(premeasured_state(symmetric(), model));
    DensityState mixed = mixed_final_state(symmetric(), model);
    auto u_o = std::make_shared<const StarAlgebra>(pointer_subalgebra(model.pointer_lifted()));

    RestrictedState r_pure = restrict_state(pure, u_o);
    RestrictedState r_mixed = restrict_state(mixed, u_o);

    // Pointer expectation vanishes for the symmetric state (eigenvalues +1/-1).
    CHECK(std::abs(r_pure.expectation(model.pointer_lifted())) <= 1e-12);
    // Direct-trace oracle for an operator inside the span.
    Complex direct = (pure.entries() * model.pointer_lifted().entries()).trace();
    CHECK(std::abs(r_pure.expectation(model.pointer_lifted()) - direct) <= 1e-12);

    REQUIRE(r_pure.coefficients().size() == r_mixed.coefficients().size());
    for (std::size_t k = 0; k < r_pure.coefficients().size(); ++k) {
        CHECK(std::abs(r_pure.coefficients()[k] - r_mixed.coefficients()[k]) <= 1e-12);
    }
}

TEST_CASE("restricted states carry nothing outside their span") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState pure = DensityState::from_pure(premeasured_state(symmetric(), model));
    auto u_o = std::make_shared<const StarAlgebra>(pointer_subalgebra(model.pointer_lifted()));
    RestrictedState r = restrict_state(pure, u_o);
    // The interference term is orthogonal to the pointer span, so the
    // restricted functional assigns it zero even though the global state
    // gives it expectation 1.
    Operator b = interference_observable(model, 1, 2);
    CHECK(std::abs(r.expectation(b)) <= 1e-12);
    CHECK(pure.expectation(b).real() == doctest::Approx(1.0));
}

TEST_CASE("restriction to the trivial algebra keeps only normalization") {
    std::mt19937_64 rng(33);
    DensityState rho(oracles::random_density_matrix(4, 3, rng), Factorization({4}));
    StarAlgebra trivial = generate_algebra({Operator::identity(Factorization({4}))});
    RestrictedState r = restrict_state(rho, trivial);
    REQUIRE(r.coefficients().size() == 1);
    CHECK(std::abs(r.expectation(Operator::identity(Factorization({4}))) - Complex(1.0, 0.0)) <=
          1e-12);
}

TEST_CASE("restriction is linear in the state") {
    std::mt19937_64 rng(34);
    StarAlgebra alg = generate_algebra({Operator::hermitian(oracles::random_hermitian(4, rng),
                                                            Factorization({4}))});
    auto shared = std::make_shared<const StarAlgebra>(alg);
    for (int trial = 0; trial < 10; ++trial) {
        DensityState rho1(oracles::random_density_matrix(4, 2, rng), Factorization({4}));
        DensityState rho2(oracles::random_density_matrix(4, 4, rng), Factorization({4}));
        const double lambda = 0.3;
        Matrix mix = lambda * rho1.entries() + (1.0 - lambda) * rho2.entries();
        RestrictedState r_mix = restrict_state(DensityState(mix, Factorization({4})), shared);
        RestrictedState r1 = restrict_state(rho1, shared);
        RestrictedState r2 = restrict_state(rho2, shared);
        for (std::size_t k = 0; k < r_mix.coefficients().size(); ++k) {
            Complex expected =
                lambda * r1.coefficients()[k] + (1.0 - lambda) * r2.coefficients()[k];
            CHECK(std::abs(r_mix.coefficients()[k] - expected) <= 1e-12);
        }
    }
}

TEST_CASE("restriction rejects dimension mismatch") {
    std::mt19937_64 rng(35);
    DensityState rho(oracles::random_density_matrix(4, 2, rng), Factorization({4}));
    StarAlgebra alg = generate_algebra({Operator::identity(Factorization({3}))});
    CHECK_THROWS_AS(restrict_state(rho, alg), std::invalid_argument);
}

TEST_CASE("classical restriction of the premeasured state") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState pure = DensityState::from_pure(premeasured_state(symmetric(), model));
    ClassicalState c = restrict_classical(pure, model.pointer_lifted());
    REQUIRE(c.points.size() == 3);
    for (const auto& point : c.points) {
        if (std::abs(point.spectrum_value) <= 1e-9) {
            CHECK(point.probability == doctest::Approx(0.0).epsilon(1e-12));
        } else {
            CHECK(point.probability == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
}

TEST_CASE("classical restriction of the initial product state is a delta") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState rho = DensityState::from_pure(incoming_state({Complex(1.0, 0.0), Complex(0.0, 0.0)}, model));
    // Before premeasurement the pointer rests at q0.
    ClassicalState c = restrict_classical(rho, model.pointer_lifted());
    CHECK(is_extremal(c, 1e-10));
    for (const auto& point : c.points) {
        if (std::abs(point.spectrum_value) <= 1e-9) {
            CHECK(point.probability == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("classical restriction reproduces born weights") {
    MeasurementModel model = MeasurementModel::standard();
    Amplitudes amps{Complex(0.6, 0.0), Complex(0.8, 0.0)};
    DensityState pure = DensityState::from_pure(premeasured_state(amps, model));
    ClassicalState c = restrict_classical(pure, model.pointer_lifted());
    for (const auto& point : c.points) {
        if (std::abs(point.spectrum_value - 1.0) <= 1e-9) {
            CHECK(point.probability == doctest::Approx(0.36).epsilon(1e-12));
        } else if (std::abs(point.spectrum_value + 1.0) <= 1e-9) {
            CHECK(point.probability == doctest::Approx(0.64).epsilon(1e-12));
        }
    }
}

TEST_CASE("classical restriction agrees with the partial-trace diagonal") {
    MeasurementModel model = MeasurementModel::standard();
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 12; ++trial) {
        DensityState rho(oracles::random_density_matrix(6, 1 + trial % 4, rng),
                         Factorization({2, 3}));
        ClassicalState c = restrict_classical(rho, model.pointer_lifted());

        DensityState on_o = partial_trace(rho, {1});
        EigenSystem sys = eig_hermitian(model.pointer());
        for (const auto& point : c.points) {
            double diag = 0.0;
            for (int k = 0; k < 3; ++k) {
                if (std::abs(sys.eigenvalues(k) - point.spectrum_value) <= 1e-8) {
                    Vector v = sys.eigenvectors.col(k);
                    diag += (v.adjoint() * on_o.entries() * v).value().real();
                }
            }
            CHECK(std::abs(point.probability - diag) <= 1e-12);
        }
    }
}

TEST_CASE("classical restriction requires a hermitian pointer") {
    std::mt19937_64 rng(37);
    DensityState rho(oracles::random_density_matrix(6, 2, rng), Factorization({2, 3}));
    Matrix skew = Matrix::Zero(6, 6);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(restrict_classical(rho, Operator(skew, Factorization({2, 3}))),
                    std::invalid_argument);
}

TEST_CASE("extremality detects delta distributions") {
    ClassicalState delta{{{1.0, 1.0}, {-1.0, 0.0}}, nullptr};
    CHECK(is_extremal(delta, 1e-10));
    ClassicalState even{{{1.0, 0.5}, {-1.0, 0.5}}, nullptr};
    CHECK_FALSE(is_extremal(even, 1e-10));
    ClassicalState nearly{{{1.0, 1.0 - 1e-13}, {-1.0, 1e-13}}, nullptr};
    CHECK(is_extremal(nearly, 1e-10));
}

TEST_CASE("breuer verdicts across the three algebras") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState pure = DensityState::from_pure(premeasured_state(symmetric(), model));
    DensityState mixed = mixed_final_state(symmetric(), model);

    StarAlgebra u_o = pointer_subalgebra(model.pointer_lifted());
    BreuerResult on_pointer = breuer_indistinguishable(pure, mixed, u_o);
    CHECK(on_pointer.indistinguishable);
    CHECK_FALSE(on_pointer.witness.has_value());

    StarAlgebra u_ms = full_matrix_algebra(6);
    BreuerResult on_full = breuer_indistinguishable(pure, mixed, u_ms);
    CHECK_FALSE(on_full.indistinguishable);
    REQUIRE(on_full.witness.has_value());
    // The maximizing witness is the interference term itself for symmetric
    // amplitudes: expectation 1 on the pure state, 0 on the mixture.
    CHECK(on_full.expectation_1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(on_full.expectation_2 == doctest::Approx(0.0).epsilon(1e-10));
    Matrix b = Matrix::Zero(6, 6);
    b(1, 5) = 1.0;
    b(5, 1) = 1.0;
    CHECK(max_abs(on_full.witness->entries() - b) <= 1e-10);

    BreuerResult reflexive = breuer_indistinguishable(pure, pure, u_ms);
    CHECK(reflexive.indistinguishable);
}

TEST_CASE("no observer-local witness separates pure from mixed") {
    MeasurementModel model = MeasurementModel::standard();
    StarAlgebra u_r = local_subalgebra(Factorization({2, 3}), 1);
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 20; ++trial) {
        auto [a1, a2] = oracles::random_amplitudes(rng);
        Amplitudes amps{a1, a2};
        DensityState pure = DensityState::from_pure(premeasured_state(amps, model));
        DensityState mixed = mixed_final_state(amps, model);
        BreuerResult r = breuer_indistinguishable(pure, mixed, u_r);
        CHECK(r.indistinguishable);
        CHECK(r.max_gap <= 1e-12);
    }
}

TEST_CASE("off-diagonal local observables have zero final expectation") {
    MeasurementModel model = MeasurementModel::standard();
    std::mt19937_64 rng(39);
    for (int trial = 0; trial < 20; ++trial) {
        auto [a1, a2] = oracles::random_amplitudes(rng);
        DensityState pure = DensityState::from_pure(premeasured_state({a1, a2}, model));
        // Random observer-local Hermitian with zero diagonal in the pointer basis.
        Matrix x = oracles::random_hermitian(3, rng);
        x.diagonal().setZero();
        Operator lifted = tensor(Operator::identity(Factorization({2})),
                                 Operator::hermitian(x, Factorization({3})));
        CHECK(std::abs(pure.expectation(lifted)) <= 1e-10);
    }
}

TEST_CASE("witness gap equals twice the coherence for the full algebra") {
    MeasurementModel model = MeasurementModel::standard();
    StarAlgebra u_ms = full_matrix_algebra(6);
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 10; ++trial) {
        auto [a1, a2] = oracles::random_amplitudes(rng);
        Amplitudes amps{a1, a2};
        DensityState pure = DensityState::from_pure(premeasured_state(amps, model));
        DensityState mixed = mixed_final_state(amps, model);
        BreuerResult r = breuer_indistinguishable(pure, mixed, u_ms);
        const double coherence = std::abs(a1) * std::abs(a2);
        if (coherence > 1e-6) {
            REQUIRE_FALSE(r.indistinguishable);
            CHECK(r.witness_gap >= 2.0 * coherence - 1e-10);
        }
    }
}

TEST_CASE("breuer restriction ansatz equals the partial trace") {
    MeasurementModel model = MeasurementModel::standard();
    DensityState pure = DensityState::from_pure(premeasured_state(symmetric(), model));
    DensityState breuer = breuer_restricted_state(pure, {1});
    DensityState traced = partial_trace(pure, {1});
    CHECK(max_abs(breuer.entries() - traced.entries()) == 0.0);
}

}  // TEST_SUITE
