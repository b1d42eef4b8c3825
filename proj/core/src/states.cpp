#include "aqm/states.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aqm {

Ensemble::Ensemble(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("Ensemble: needs at least one member");
    }
    double total = 0.0;
    const Factorization* fac = nullptr;
    for (const Member& m : members_) {
        if (m.weight < 0.0) {
            throw std::invalid_argument("Ensemble: weights must be nonnegative");
        }
        total += m.weight;
        const Factorization& f = std::holds_alternative<PureState>(m.state)
                                     ? std::get<PureState>(m.state).factorization()
                                     : std::get<DensityState>(m.state).factorization();
        if (fac == nullptr) {
            fac = &f;
        } else if (!(*fac == f)) {
            throw std::invalid_argument("Ensemble: members must share a factorization");
        }
    }
    if (std::abs(total - 1.0) > kConstructTol) {
        throw std::invalid_argument("Ensemble: weights must sum to 1 within 1e-12");
    }
}

RestrictedState::RestrictedState(std::vector<Complex> coefficients,
                                 std::shared_ptr<const StarAlgebra> algebra)
    : coeffs_(std::move(coefficients)), algebra_(std::move(algebra)) {
    if (algebra_ == nullptr) {
        throw std::invalid_argument("RestrictedState: algebra required");
    }
    if (coeffs_.size() != algebra_->basis().size()) {
        throw std::invalid_argument("RestrictedState: one coefficient per basis element");
    }
    Complex unit = expectation(Operator::identity(algebra_->basis().front().factorization()));
    if (std::abs(unit - Complex(1.0, 0.0)) > kConstructTol) {
        throw std::invalid_argument("RestrictedState: expectation of identity must be 1");
    }
}

Complex RestrictedState::expectation(const Operator& a) const {
    std::vector<Complex> coords = algebra_->coordinates(a);
    Complex sum{0.0, 0.0};
    for (std::size_t k = 0; k < coords.size(); ++k) {
        sum += coords[k] * coeffs_[k];
    }
    return sum;
}

DensityState ensemble_to_density(const Ensemble& w) {
    const auto& members = w.members();
    auto density_of = [](const Ensemble::Member& m) {
        if (std::holds_alternative<PureState>(m.state)) {
            return DensityState::from_pure(std::get<PureState>(m.state));
        }
        return std::get<DensityState>(m.state);
    };
    DensityState first = density_of(members.front());
    Matrix acc = members.front().weight * first.entries();
    for (std::size_t i = 1; i < members.size(); ++i) {
        acc += members[i].weight * density_of(members[i]).entries();
    }
    return DensityState(std::move(acc), first.factorization());
}

RestrictedState restrict_state(const DensityState& rho,
                               std::shared_ptr<const StarAlgebra> alg) {
    if (alg == nullptr) {
        throw std::invalid_argument("restrict_state: algebra required");
    }
    if (alg->dim_space() != rho.dim()) {
        throw std::invalid_argument("restrict_state: dimension mismatch");
    }
    std::vector<Complex> coeffs;
    coeffs.reserve(alg->basis().size());
    for (const Operator& b : alg->basis()) {
        coeffs.push_back((rho.entries() * b.entries()).trace());
    }
    return RestrictedState(std::move(coeffs), std::move(alg));
}

RestrictedState restrict_state(const DensityState& rho, const StarAlgebra& alg) {
    return restrict_state(rho, std::make_shared<const StarAlgebra>(alg));
}

ClassicalState restrict_classical(const DensityState& rho, const Operator& pointer) {
    if (!pointer.is_hermitian()) {
        throw std::invalid_argument("restrict_classical: pointer must be Hermitian");
    }
    if (pointer.dim() != rho.dim()) {
        throw std::invalid_argument("restrict_classical: dimension mismatch");
    }
    auto alg = std::make_shared<const StarAlgebra>(pointer_subalgebra(pointer));
    std::vector<SpectrumPoint> spectrum = classical_spectrum(*alg);
    ClassicalState state;
    state.source_algebra = alg;
    state.points.reserve(spectrum.size());
    for (const SpectrumPoint& point : spectrum) {
        double p = (rho.entries() * point.projector.entries()).trace().real();
        state.points.push_back({point.value_map.at(0), p});
    }
    return state;
}

bool is_extremal(const ClassicalState& c, double tol) {
    int sharp = 0;
    for (const auto& point : c.points) {
        if (point.probability >= 1.0 - tol) ++sharp;
    }
    return sharp == 1;
}

BreuerResult breuer_indistinguishable(const DensityState& rho1, const DensityState& rho2,
                                      const StarAlgebra& alg, double tol) {
    if (rho1.dim() != rho2.dim() || rho1.dim() != alg.dim_space()) {
        throw std::invalid_argument("breuer_indistinguishable: dimension mismatch");
    }
    const Matrix delta = rho1.entries() - rho2.entries();
    BreuerResult result;
    Matrix combination = Matrix::Zero(alg.dim_space(), alg.dim_space());
    for (const Operator& b : alg.basis()) {
        Complex gap = (delta * b.entries()).trace();
        result.max_gap = std::max(result.max_gap, std::abs(gap));
        combination += std::conj(gap) * b.entries();
    }
    result.indistinguishable = result.max_gap <= tol;
    if (!result.indistinguishable) {
        Matrix herm = 0.5 * (combination + combination.adjoint().eval());
        Operator witness = Operator::hermitian(std::move(herm), rho1.factorization());
        double norm = operator_norm(witness);
        witness = Operator::hermitian(Matrix(witness.entries() / norm), rho1.factorization());
        result.expectation_1 = (rho1.entries() * witness.entries()).trace().real();
        result.expectation_2 = (rho2.entries() * witness.entries()).trace().real();
        result.witness_gap = std::abs(result.expectation_1 - result.expectation_2);
        result.witness = std::move(witness);
    }
    return result;
}

DensityState breuer_restricted_state(const DensityState& rho, const std::vector<int>& keep) {
    return partial_trace(rho, keep);
}

}  // namespace aqm
