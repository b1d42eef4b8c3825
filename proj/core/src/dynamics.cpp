#include "aqm/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace aqm {

namespace {

Vector basis_vector(int dim, int index) {
    Vector v = Vector::Zero(dim);
    v(index) = Complex(1.0, 0.0);
    return v;
}

}  // namespace

Amplitudes Amplitudes::normalized(double band) const {
    double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > band) {
        throw std::invalid_argument("Amplitudes: |a1|^2 + |a2|^2 must be 1 within the band");
    }
    double scale = 1.0 / std::sqrt(n2);
    return Amplitudes{a1 * scale, a2 * scale};
}

MeasurementModel::MeasurementModel(int s_dim, int o_dim, Operator pointer,
                                   Operator s_basis_observable, Operator premeasurement)
    : s_dim_(s_dim),
      o_dim_(o_dim),
      pointer_(std::move(pointer)),
      s_obs_(std::move(s_basis_observable)),
      premeasurement_(std::move(premeasurement)) {
    if (s_dim_ < 2 || o_dim_ < s_dim_ + 1) {
        throw std::invalid_argument("MeasurementModel: need o_dim >= s_dim + 1 >= 3");
    }
    if (pointer_.dim() != o_dim_ || !pointer_.is_hermitian()) {
        throw std::invalid_argument("MeasurementModel: pointer must be Hermitian on O");
    }
    if (s_obs_.dim() != s_dim_ || !s_obs_.is_hermitian()) {
        throw std::invalid_argument("MeasurementModel: measured observable must be Hermitian on S");
    }
    const Matrix& u = premeasurement_.entries();
    if (u.rows() != s_dim_ * o_dim_) {
        throw std::invalid_argument("MeasurementModel: premeasurement dimension mismatch");
    }
    if (max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) > kIdentityTol) {
        throw std::invalid_argument("MeasurementModel: premeasurement must be unitary");
    }
    // Columns |s_i, O_0> must be exactly the basis vectors |s_i, O_i>.
    for (int i = 1; i <= s_dim_; ++i) {
        Vector expected = basis_vector(s_dim_ * o_dim_, (i - 1) * o_dim_ + i);
        if ((u.col((i - 1) * o_dim_) - expected).cwiseAbs().maxCoeff() != 0.0) {
            throw std::invalid_argument(
                "MeasurementModel: premeasurement must map |s_i,O_0> to |s_i,O_i>");
        }
    }
}

MeasurementModel MeasurementModel::standard(std::array<double, 3> pointer_eigenvalues) {
    Matrix q = Matrix::Zero(3, 3);
    q(0, 0) = pointer_eigenvalues[0];
    q(1, 1) = pointer_eigenvalues[1];
    q(2, 2) = pointer_eigenvalues[2];
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = 1.0;
    sz(1, 1) = -1.0;
    return MeasurementModel(2, 3, Operator::hermitian(std::move(q), Factorization({3})),
                            Operator::hermitian(std::move(sz), Factorization({2})),
                            build_premeasurement(2, 3));
}

Factorization MeasurementModel::composite_factorization() const {
    return Factorization({s_dim_, o_dim_});
}

Operator MeasurementModel::pointer_lifted() const {
    return tensor(Operator::identity(Factorization({s_dim_})), pointer_);
}

Operator MeasurementModel::s_observable_lifted(const Operator& obs) const {
    return tensor(obs, Operator::identity(Factorization({o_dim_})));
}

Operator build_premeasurement(int s_dim, int o_dim) {
    if (o_dim < s_dim + 1) {
        throw std::invalid_argument("build_premeasurement: need o_dim >= s_dim + 1");
    }
    const int dim = s_dim * o_dim;
    Matrix u = Matrix::Identity(dim, dim);
    for (int i = 1; i <= s_dim; ++i) {
        const int rest = (i - 1) * o_dim;       // |s_i, O_0>
        const int excited = (i - 1) * o_dim + i;  // |s_i, O_i>
        u(rest, rest) = 0.0;
        u(excited, excited) = 0.0;
        u(excited, rest) = 1.0;
        u(rest, excited) = 1.0;
    }
    return Operator(std::move(u), Factorization({s_dim, o_dim}), true);
}

DensityState evolve_liouville(const DensityState& rho, const Operator& h, double t, double dt) {
    if (!h.is_hermitian()) {
        throw std::invalid_argument("evolve_liouville: Hamiltonian must be Hermitian");
    }
    if (h.dim() != rho.dim()) {
        throw std::invalid_argument("evolve_liouville: dimension mismatch");
    }
    if (dt <= 0.0 || t < 0.0) {
        throw std::invalid_argument("evolve_liouville: need dt > 0 and t >= 0");
    }

    const Matrix& ham = h.entries();
    auto flow = [&ham](const Matrix& m) -> Matrix {
        return Complex(0.0, -1.0) * (ham * m - m * ham);
    };

    Matrix state = rho.entries();
    double remaining = t;
    while (remaining > 1e-15) {
        const double step = std::min(dt, remaining);
        Matrix k1 = flow(state);
        Matrix k2 = flow(state + (0.5 * step) * k1);
        Matrix k3 = flow(state + (0.5 * step) * k2);
        Matrix k4 = flow(state + step * k3);
        state += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        remaining -= step;
    }
    const double trace_tol = 1e-9 * std::max(1.0, t);
    return DensityState::with_tolerance(std::move(state), rho.factorization(), trace_tol,
                                        /*check_positivity=*/false);
}

DensityState evolve_exact(const DensityState& rho, const Operator& h, double t) {
    if (!h.is_hermitian()) {
        throw std::invalid_argument("evolve_exact: Hamiltonian must be Hermitian");
    }
    if (h.dim() != rho.dim()) {
        throw std::invalid_argument("evolve_exact: dimension mismatch");
    }
    EigenSystem sys = eig_hermitian(h);
    Vector phases(sys.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(Complex(0.0, -sys.eigenvalues(k) * t));
    }
    Matrix propagator = sys.eigenvectors * phases.asDiagonal() * sys.eigenvectors.adjoint();
    Matrix evolved = propagator * rho.entries() * propagator.adjoint();
    return DensityState::with_tolerance(std::move(evolved), rho.factorization(), 1e-10,
                                        /*check_positivity=*/true);
}

Operator interference_observable(const MeasurementModel& model, int i, int j) {
    if (i == j) {
        throw std::invalid_argument("interference_observable: indices must differ");
    }
    if (i < 1 || i > model.s_dim() || j < 1 || j > model.s_dim()) {
        throw std::invalid_argument("interference_observable: outcome index out of range");
    }
    const int dim = model.s_dim() * model.o_dim();
    const int row = (i - 1) * model.o_dim() + i;  // |s_i, O_i>
    const int col = (j - 1) * model.o_dim() + j;  // |s_j, O_j>
    Matrix b = Matrix::Zero(dim, dim);
    b(row, col) = 1.0;
    b(col, row) = 1.0;
    return Operator(std::move(b), model.composite_factorization(), true);
}

PureState decohere_triple(const Amplitudes& a, const std::vector<Vector>& env) {
    if (env.size() != 2) {
        throw std::invalid_argument("decohere_triple: one environment vector per outcome");
    }
    const auto env_dim = env.front().size();
    for (const Vector& e : env) {
        if (e.size() != env_dim) {
            throw std::invalid_argument("decohere_triple: environment dimensions must match");
        }
        if (std::abs(e.norm() - 1.0) > kConstructTol) {
            throw std::invalid_argument("decohere_triple: environment vectors must be unit norm");
        }
    }
    Amplitudes amps = a.normalized();
    const int s_dim = 2;
    const int o_dim = 3;
    Vector out = Vector::Zero(s_dim * o_dim * env_dim);
    const Complex coeffs[2] = {amps.a1, amps.a2};
    for (int i = 1; i <= 2; ++i) {
        const long base = ((i - 1) * o_dim + i) * env_dim;  // |s_i>|O_i> block
        out.segment(base, env_dim) = coeffs[i - 1] * env[static_cast<std::size_t>(i - 1)];
    }
    return PureState(std::move(out), Factorization({s_dim, o_dim, static_cast<int>(env_dim)}));
}

std::vector<Vector> environment_pair(int dim, double kappa, double phase) {
    if (dim < 2) {
        throw std::invalid_argument("environment_pair: need dim >= 2");
    }
    if (kappa < 0.0 || kappa > 1.0) {
        throw std::invalid_argument("environment_pair: overlap must lie in [0, 1]");
    }
    Vector e1 = basis_vector(dim, 0);
    Vector e2 = Vector::Zero(dim);
    // <E2|E1> = kappa * exp(i phase).
    e2(0) = kappa * std::exp(Complex(0.0, -phase));
    e2(1) = std::sqrt(1.0 - kappa * kappa);
    return {std::move(e1), std::move(e2)};
}

DensityState mixed_final_state(const Amplitudes& a, const MeasurementModel& model) {
    Amplitudes amps = a.normalized();
    const int dim = model.s_dim() * model.o_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    const Complex coeffs[2] = {amps.a1, amps.a2};
    for (int i = 1; i <= 2; ++i) {
        const int idx = (i - 1) * model.o_dim() + i;
        rho(idx, idx) = std::norm(coeffs[i - 1]);
    }
    return DensityState(std::move(rho), model.composite_factorization());
}

PureState incoming_state(const Amplitudes& a, const MeasurementModel& model) {
    Amplitudes amps = a.normalized();
    Vector s(2);
    s(0) = amps.a1;
    s(1) = amps.a2;
    PureState system(std::move(s), Factorization({model.s_dim()}));
    PureState rest(basis_vector(model.o_dim(), 0), Factorization({model.o_dim()}));
    return tensor(system, rest);
}

DensityState incoming_mixture(const Amplitudes& a, const MeasurementModel& model) {
    Amplitudes amps = a.normalized();
    const int dim = model.s_dim() * model.o_dim();
    Matrix rho = Matrix::Zero(dim, dim);
    rho(0, 0) = std::norm(amps.a1);                  // |s_1, O_0>
    rho(model.o_dim(), model.o_dim()) = std::norm(amps.a2);  // |s_2, O_0>
    return DensityState(std::move(rho), model.composite_factorization());
}

PureState premeasured_state(const Amplitudes& a, const MeasurementModel& model) {
    PureState in = incoming_state(a, model);
    Vector out = model.premeasurement().entries() * in.amplitudes();
    return PureState(std::move(out), in.factorization());
}

Operator premeasurement_hamiltonian(const MeasurementModel& model, double duration) {
    if (duration <= 0.0) {
        throw std::invalid_argument("premeasurement_hamiltonian: duration must be positive");
    }
    // The premeasurement permutation is a symmetric involution, so its
    // spectral logarithm is V diag(0 | pi) V^dagger.
    EigenSystem sys = eig_hermitian(model.premeasurement());
    RealVector angles(sys.eigenvalues.size());
    for (Eigen::Index k = 0; k < angles.size(); ++k) {
        angles(k) = sys.eigenvalues(k) < 0.0 ? std::numbers::pi : 0.0;
    }
    Matrix h = sys.eigenvectors * angles.asDiagonal() * sys.eigenvectors.adjoint();
    h = (0.5 / duration) * (h + h.adjoint().eval());
    return Operator::hermitian(std::move(h), model.composite_factorization());
}

}  // namespace aqm
