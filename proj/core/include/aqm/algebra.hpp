#pragma once

#include "aqm/linalg.hpp"

#include <map>
#include <vector>

// Finite-dimensional unital *-closed operator spans: generation from
// generators, commutativity certification, and simultaneous diagonalization
// of commutative spans into joint-eigenspace projectors.

namespace aqm {

inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kDegeneracyGap = 1e-8;

/// Unital *-closed operator span with an orthonormal basis under hs_inner.
/// Immutable; construction via generate_algebra / pointer_subalgebra /
/// local_subalgebra / full_matrix_algebra.
class StarAlgebra {
public:
    StarAlgebra(std::vector<Operator> basis, std::vector<Operator> generators, int dim_space);

    [[nodiscard]] const std::vector<Operator>& basis() const { return basis_; }
    [[nodiscard]] const std::vector<Operator>& generators() const { return generators_; }
    [[nodiscard]] int dim_space() const { return dim_space_; }
    [[nodiscard]] int size() const { return static_cast<int>(basis_.size()); }

    /// Frobenius norm of (candidate - its orthogonal projection onto the span).
    [[nodiscard]] double span_residual(const Operator& candidate) const;
    /// hs_inner coordinates of `candidate` against the basis.
    [[nodiscard]] std::vector<Complex> coordinates(const Operator& candidate) const;

private:
    std::vector<Operator> basis_;
    std::vector<Operator> generators_;
    int dim_space_;
};

/// One point of the joint spectrum of a commutative algebra: the minimal
/// joint-eigenspace projector and the eigenvalue each generator takes on it.
struct SpectrumPoint {
    int label = 0;
    std::map<int, double> value_map;  // generator index -> eigenvalue
    Operator projector;
};

/// Smallest unital *-closed linear span containing the generators. Products
/// and adjoints are iterated and orthonormalized under hs_inner until the
/// span dimension stabilizes (bounded by d^2). Membership is decided by
/// Gram-Schmidt residual relative to tol * ||candidate||.
StarAlgebra generate_algebra(const std::vector<Operator>& generators, double tol = kAlgebraTol);

/// True iff max over basis pairs of ||[b_i, b_j]||_max <= tol.
bool is_commutative(const StarAlgebra& alg, double tol = kAlgebraTol);

/// Simultaneous diagonalization of a commutative algebra: minimal joint
/// eigenspace projectors with per-generator eigenvalue labels. Eigenvalues
/// closer than gap_threshold are grouped into one eigenspace. Every algebra
/// element reconstructs as sum_k c_k P_k within 1e-10.
std::vector<SpectrumPoint> classical_spectrum(const StarAlgebra& alg,
                                              double gap_threshold = kDegeneracyGap);

/// Algebra generated by a single Hermitian observable; equals the span of its
/// spectral projectors (dimension = number of distinct eigenvalues).
StarAlgebra pointer_subalgebra(const Operator& q);

/// Algebra of all operators I (x) ... (x) X (x) ... (x) I acting on one slot
/// of the factorization; basis dimension = (slot dimension)^2.
StarAlgebra local_subalgebra(const Factorization& factorization, int slot);

/// All operators on a dim-dimensional space (basis of matrix units).
StarAlgebra full_matrix_algebra(int dim);

}  // namespace aqm
