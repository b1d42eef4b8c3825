#pragma once

#include "aqm/algebra.hpp"
#include "aqm/linalg.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

// Ensembles, restriction of composite states to observer subalgebras,
// classical restricted states over pointer outcomes, and the
// indistinguishability check on a subalgebra.

namespace aqm {

/// Explicit table of states and probabilities; finer-grained than the density
/// matrix it induces. Weights are nonnegative and sum to 1 within 1e-12.
class Ensemble {
public:
    using State = std::variant<PureState, DensityState>;
    struct Member {
        State state;
        double weight;
    };

    explicit Ensemble(std::vector<Member> members);

    [[nodiscard]] const std::vector<Member>& members() const { return members_; }

private:
    std::vector<Member> members_;
};

/// Probability distribution over the joint spectrum of a commutative
/// subalgebra; its extremal points are the delta distributions at single
/// pointer outcomes.
struct ClassicalState {
    struct Point {
        double spectrum_value;
        double probability;
    };
    std::vector<Point> points;
    std::shared_ptr<const StarAlgebra> source_algebra;
};

/// A state known only through its expectations on an algebra's orthonormal
/// basis; it carries no information about operators outside the span.
class RestrictedState {
public:
    RestrictedState(std::vector<Complex> coefficients, std::shared_ptr<const StarAlgebra> algebra);

    [[nodiscard]] const std::vector<Complex>& coefficients() const { return coeffs_; }
    [[nodiscard]] const StarAlgebra& algebra() const { return *algebra_; }

    /// Expectation of an operator in the span: sum_k <b_k, a> c_k.
    [[nodiscard]] Complex expectation(const Operator& a) const;

private:
    std::vector<Complex> coeffs_;
    std::shared_ptr<const StarAlgebra> algebra_;
};

/// Density matrix sum_l P_l rho_l of an ensemble.
DensityState ensemble_to_density(const Ensemble& w);

/// Restriction of rho to the algebra: coefficients c_k = trace(rho * b_k).
RestrictedState restrict_state(const DensityState& rho,
                               std::shared_ptr<const StarAlgebra> alg);
RestrictedState restrict_state(const DensityState& rho, const StarAlgebra& alg);

/// Statistical restricted state over pointer outcomes: probabilities
/// p_i = trace(rho * P_i) over the spectral projectors of the (Hermitian)
/// pointer lifted to rho's space.
ClassicalState restrict_classical(const DensityState& rho, const Operator& pointer);

/// True iff exactly one probability is >= 1 - tol (delta distribution).
bool is_extremal(const ClassicalState& c, double tol);

struct BreuerResult {
    bool indistinguishable = true;
    /// Largest |trace((rho1 - rho2) * b_k)| over the algebra basis.
    double max_gap = 0.0;
    /// Present when distinguishable: Hermitian part of the maximizing basis
    /// combination, normalized to unit operator norm.
    std::optional<Operator> witness;
    /// Witness expectations on rho1 / rho2 (0 when indistinguishable).
    double expectation_1 = 0.0;
    double expectation_2 = 0.0;
    /// |expectation_1 - expectation_2|.
    double witness_gap = 0.0;
};

/// Two states are indistinguishable on an algebra iff every basis expectation
/// agrees within tol; otherwise the maximizing Hermitian witness is returned.
BreuerResult breuer_indistinguishable(const DensityState& rho1, const DensityState& rho2,
                                      const StarAlgebra& alg, double tol = kAlgebraTol);

/// Partial-trace restriction ansatz for individual states, exposed read-only
/// for comparison; never used as a sampling rule.
DensityState breuer_restricted_state(const DensityState& rho, const std::vector<int>& keep);

}  // namespace aqm
