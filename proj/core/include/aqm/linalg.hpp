#pragma once

#include <Eigen/Dense>

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <vector>

// Dense complex matrix layer: tensor-factored operators, pure/density states,
// Kronecker products, partial traces and Hermitian eigendecomposition.
// All values are immutable after construction and safe to share across threads.

namespace aqm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Construction-time tolerance (norms, hermiticity) and the looser tolerance
// used for numerical identities.
inline constexpr double kConstructTol = 1e-12;
inline constexpr double kIdentityTol = 1e-10;

/// Ordered subsystem dimensions of a tensor-product space, e.g. {2,3} for S(x)O.
/// Index convention everywhere: the first factor varies slowest (row-major
/// over factors), so basis state |i,j> of {d0,d1} has flat index i*d1 + j.
class Factorization {
public:
    Factorization() = default;
    Factorization(std::initializer_list<int> dims) : Factorization(std::vector<int>(dims)) {}
    explicit Factorization(std::vector<int> dims);

    [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
    [[nodiscard]] int factor(int slot) const { return dims_.at(static_cast<std::size_t>(slot)); }
    [[nodiscard]] int count() const { return static_cast<int>(dims_.size()); }
    [[nodiscard]] int total_dim() const { return total_; }

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.dims_ == b.dims_;
    }

private:
    std::vector<int> dims_;
    int total_ = 1;
};

/// Dense complex square matrix tagged with a tensor factorization.
/// Carrier of observables and Hamiltonians. When flagged Hermitian the entries
/// must equal their conjugate transpose within 1e-12.
class Operator {
public:
    Operator(Matrix entries, Factorization factorization, bool hermitian = false);

    static Operator identity(const Factorization& f);
    /// Validates and flags the matrix as Hermitian.
    static Operator hermitian(Matrix entries, Factorization f) {
        return Operator(std::move(entries), std::move(f), true);
    }

    [[nodiscard]] const Matrix& entries() const { return entries_; }
    [[nodiscard]] const Factorization& factorization() const { return fac_; }
    [[nodiscard]] bool is_hermitian() const { return hermitian_; }
    [[nodiscard]] int dim() const { return static_cast<int>(entries_.rows()); }

    [[nodiscard]] Operator adjoint() const;

private:
    Matrix entries_;
    Factorization fac_;
    bool hermitian_ = false;
};

/// Unit-norm complex vector on a factored space (norm 1 within 1e-12).
class PureState {
public:
    PureState(Vector amplitudes, Factorization factorization);

    [[nodiscard]] const Vector& amplitudes() const { return amps_; }
    [[nodiscard]] const Factorization& factorization() const { return fac_; }
    [[nodiscard]] int dim() const { return static_cast<int>(amps_.size()); }

private:
    Vector amps_;
    Factorization fac_;
};

/// Density matrix: Hermitian, unit trace (1e-10), eigenvalues >= -1e-10.
class DensityState {
public:
    explicit DensityState(Operator matrix);
    DensityState(Matrix entries, Factorization factorization);

    static DensityState from_pure(const PureState& psi);
    /// Constructor for integrator outputs: the matrix is symmetrized, the
    /// trace is checked against trace_tol and the positivity floor is skipped
    /// when check_positivity is false (fixed-step integration error is O(dt^4)
    /// and can exceed the construction floor at coarse steps).
    static DensityState with_tolerance(Matrix entries, Factorization factorization,
                                       double trace_tol, bool check_positivity);

    [[nodiscard]] const Operator& matrix() const { return matrix_; }
    [[nodiscard]] const Matrix& entries() const { return matrix_.entries(); }
    [[nodiscard]] const Factorization& factorization() const { return matrix_.factorization(); }
    [[nodiscard]] int dim() const { return matrix_.dim(); }

    [[nodiscard]] Complex expectation(const Operator& observable) const;

private:
    struct unchecked_t {};
    DensityState(Operator matrix, unchecked_t) : matrix_(std::move(matrix)) {}

    Operator matrix_;
};

/// Kronecker product with concatenated factorization; first factor slowest.
Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);

/// Trace out every factor not listed in `keep` (indices into the
/// factorization, any order, duplicates ignored). Kept factors stay in their
/// original relative order. Preserves trace and positivity.
DensityState partial_trace(const DensityState& rho, const std::vector<int>& keep);

/// Matrix-level partial trace used by the density-state overload.
Matrix partial_trace(const Matrix& m, const Factorization& fac, const std::vector<int>& keep,
                     Factorization* kept_fac = nullptr);

struct EigenSystem {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // orthonormal columns, phase-fixed
};

/// Spectral decomposition of a Hermitian operator. Eigenvalues ascending;
/// each eigenvector's first nonzero component is made real-positive so
/// projector labels are reproducible.
EigenSystem eig_hermitian(const Operator& a);

/// Hilbert-Schmidt inner product trace(a^dagger * b).
Complex hs_inner(const Operator& a, const Operator& b);

/// Largest absolute entry.
double max_abs(const Matrix& m);

/// Largest |eigenvalue| of a Hermitian operator (spectral norm).
double operator_norm(const Operator& a);

}  // namespace aqm
