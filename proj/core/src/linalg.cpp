#include "aqm/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace aqm {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

}  // namespace

Factorization::Factorization(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw std::invalid_argument("Factorization: needs at least one factor");
    }
    total_ = 1;
    for (int d : dims_) {
        if (d < 1) {
            throw std::invalid_argument("Factorization: every factor dimension must be >= 1");
        }
        total_ *= d;
    }
}

Operator::Operator(Matrix entries, Factorization factorization, bool hermitian)
    : entries_(std::move(entries)), fac_(std::move(factorization)), hermitian_(hermitian) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("Operator: matrix must be square");
    }
    if (!all_finite(entries_)) {
        throw std::invalid_argument("Operator: entries must be finite");
    }
    if (fac_.total_dim() != entries_.rows()) {
        throw std::invalid_argument("Operator: factorization does not match matrix dimension");
    }
    if (hermitian_ && hermiticity_defect(entries_) > kConstructTol) {
        throw std::invalid_argument("Operator: flagged hermitian but entries are not");
    }
}

Operator Operator::identity(const Factorization& f) {
    return Operator(Matrix::Identity(f.total_dim(), f.total_dim()), f, true);
}

Operator Operator::adjoint() const {
    return Operator(entries_.adjoint(), fac_, hermitian_);
}

PureState::PureState(Vector amplitudes, Factorization factorization)
    : amps_(std::move(amplitudes)), fac_(std::move(factorization)) {
    if (fac_.total_dim() != amps_.size()) {
        throw std::invalid_argument("PureState: factorization does not match vector dimension");
    }
    if (!amps_.allFinite()) {
        throw std::invalid_argument("PureState: amplitudes must be finite");
    }
    if (std::abs(amps_.norm() - 1.0) > kConstructTol) {
        throw std::invalid_argument("PureState: norm must be 1 within 1e-12");
    }
}

DensityState::DensityState(Operator matrix) : matrix_(std::move(matrix)) {
    if (hermiticity_defect(matrix_.entries()) > kConstructTol) {
        throw std::invalid_argument("DensityState: matrix must be Hermitian");
    }
    if (!matrix_.is_hermitian()) {
        matrix_ = Operator::hermitian(matrix_.entries(), matrix_.factorization());
    }
    double tr = matrix_.entries().trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw std::invalid_argument("DensityState: trace must be 1 within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_.entries(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityState: eigenvalues must be >= -1e-10");
    }
}

DensityState::DensityState(Matrix entries, Factorization factorization)
    : DensityState(Operator(std::move(entries), std::move(factorization))) {}

DensityState DensityState::from_pure(const PureState& psi) {
    Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityState(Operator::hermitian(std::move(m), psi.factorization()), unchecked_t{});
}

DensityState DensityState::with_tolerance(Matrix entries, Factorization factorization,
                                          double trace_tol, bool check_positivity) {
    Matrix sym = 0.5 * (entries + entries.adjoint().eval());
    double tr = sym.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw std::invalid_argument("DensityState: trace drift exceeds tolerance");
    }
    if (check_positivity) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-10) {
            throw std::invalid_argument("DensityState: eigenvalues must be >= -1e-10");
        }
    }
    return DensityState(Operator::hermitian(std::move(sym), std::move(factorization)),
                        unchecked_t{});
}

Complex DensityState::expectation(const Operator& observable) const {
    if (observable.dim() != dim()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    return (entries() * observable.entries()).trace();
}

Operator tensor(const Operator& a, const Operator& b) {
    const Matrix& am = a.entries();
    const Matrix& bm = b.entries();
    const auto ar = am.rows();
    const auto br = bm.rows();
    Matrix out(ar * br, ar * br);
    for (Eigen::Index i = 0; i < ar; ++i) {
        for (Eigen::Index j = 0; j < ar; ++j) {
            out.block(i * br, j * br, br, br) = am(i, j) * bm;
        }
    }
    std::vector<int> dims = a.factorization().dims();
    const auto& bd = b.factorization().dims();
    dims.insert(dims.end(), bd.begin(), bd.end());
    return Operator(std::move(out), Factorization(std::move(dims)),
                    a.is_hermitian() && b.is_hermitian());
}

PureState tensor(const PureState& a, const PureState& b) {
    const Vector& av = a.amplitudes();
    const Vector& bv = b.amplitudes();
    Vector out(av.size() * bv.size());
    for (Eigen::Index i = 0; i < av.size(); ++i) {
        out.segment(i * bv.size(), bv.size()) = av(i) * bv;
    }
    std::vector<int> dims = a.factorization().dims();
    const auto& bd = b.factorization().dims();
    dims.insert(dims.end(), bd.begin(), bd.end());
    return PureState(std::move(out), Factorization(std::move(dims)));
}

Matrix partial_trace(const Matrix& m, const Factorization& fac, const std::vector<int>& keep,
                     Factorization* kept_fac) {
    const auto& dims = fac.dims();
    std::set<int> keep_set;
    for (int k : keep) {
        if (k < 0 || k >= fac.count()) {
            throw std::invalid_argument("partial_trace: factor index out of range");
        }
        keep_set.insert(k);
    }
    if (keep_set.empty()) {
        throw std::invalid_argument("partial_trace: keep set must be nonempty");
    }

    // Strides of each factor under the first-factor-slowest convention.
    std::vector<long> stride(dims.size());
    long acc = 1;
    for (int k = fac.count() - 1; k >= 0; --k) {
        stride[static_cast<std::size_t>(k)] = acc;
        acc *= dims[static_cast<std::size_t>(k)];
    }

    std::vector<int> kept_dims;
    std::vector<long> kept_strides;
    std::vector<long> traced_strides;
    std::vector<int> traced_dims;
    for (int k = 0; k < fac.count(); ++k) {
        if (keep_set.count(k)) {
            kept_dims.push_back(dims[static_cast<std::size_t>(k)]);
            kept_strides.push_back(stride[static_cast<std::size_t>(k)]);
        } else {
            traced_dims.push_back(dims[static_cast<std::size_t>(k)]);
            traced_strides.push_back(stride[static_cast<std::size_t>(k)]);
        }
    }

    // Flat offsets of every kept / traced multi-index.
    auto offsets = [](const std::vector<int>& sub_dims, const std::vector<long>& sub_strides) {
        long n = 1;
        for (int d : sub_dims) n *= d;
        std::vector<long> out;
        out.reserve(static_cast<std::size_t>(n));
        std::vector<int> idx(sub_dims.size(), 0);
        for (long c = 0; c < n; ++c) {
            long off = 0;
            for (std::size_t k = 0; k < sub_dims.size(); ++k) {
                off += idx[k] * sub_strides[k];
            }
            out.push_back(off);
            for (int k = static_cast<int>(sub_dims.size()) - 1; k >= 0; --k) {
                if (++idx[static_cast<std::size_t>(k)] < sub_dims[static_cast<std::size_t>(k)]) break;
                idx[static_cast<std::size_t>(k)] = 0;
            }
        }
        return out;
    };

    const std::vector<long> kept_off = offsets(kept_dims, kept_strides);
    const std::vector<long> traced_off = offsets(traced_dims, traced_strides);

    const auto nk = static_cast<Eigen::Index>(kept_off.size());
    Matrix out = Matrix::Zero(nk, nk);
    for (Eigen::Index r = 0; r < nk; ++r) {
        for (Eigen::Index c = 0; c < nk; ++c) {
            Complex sum{0.0, 0.0};
            for (long t : traced_off) {
                sum += m(kept_off[static_cast<std::size_t>(r)] + t,
                         kept_off[static_cast<std::size_t>(c)] + t);
            }
            out(r, c) = sum;
        }
    }
    if (kept_fac != nullptr) {
        *kept_fac = Factorization(kept_dims);
    }
    return out;
}

DensityState partial_trace(const DensityState& rho, const std::vector<int>& keep) {
    Factorization kept_fac({1});
    Matrix reduced = partial_trace(rho.entries(), rho.factorization(), keep, &kept_fac);
    return DensityState(std::move(reduced), std::move(kept_fac));
}

EigenSystem eig_hermitian(const Operator& a) {
    if (!a.is_hermitian()) {
        throw std::invalid_argument("eig_hermitian: operator must be flagged hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: decomposition failed");
    }
    EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
    // Phase-fix: first nonzero component of each eigenvector made real-positive.
    for (Eigen::Index c = 0; c < sys.eigenvectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < sys.eigenvectors.rows(); ++r) {
            Complex v = sys.eigenvectors(r, c);
            if (std::abs(v) > 1e-9) {
                sys.eigenvectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return sys;
}

Complex hs_inner(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return (a.entries().adjoint() * b.entries()).trace();
}

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

double operator_norm(const Operator& a) {
    if (a.is_hermitian()) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries(), Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::JacobiSVD<Matrix> svd(a.entries());
    return svd.singularValues()(0);
}

}  // namespace aqm
