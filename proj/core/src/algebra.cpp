#include "aqm/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace aqm {

namespace {

double frobenius(const Matrix& m) {
    return m.norm();
}

// Orthogonal projection residual of `m` against an orthonormal matrix list.
Matrix residual_against(const std::vector<Operator>& basis, Matrix m) {
    // Two passes keep the residual orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
        for (const Operator& b : basis) {
            Complex coeff = (b.entries().conjugate().cwiseProduct(m)).sum();
            m -= coeff * b.entries();
        }
    }
    return m;
}

}  // namespace

StarAlgebra::StarAlgebra(std::vector<Operator> basis, std::vector<Operator> generators,
                         int dim_space)
    : basis_(std::move(basis)), generators_(std::move(generators)), dim_space_(dim_space) {
    if (basis_.empty()) {
        throw std::invalid_argument("StarAlgebra: basis must be nonempty");
    }
    for (const Operator& b : basis_) {
        if (b.dim() != dim_space_) {
            throw std::invalid_argument("StarAlgebra: basis dimension mismatch");
        }
    }
    // Orthonormality under hs_inner.
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = i; j < basis_.size(); ++j) {
            Complex g = hs_inner(basis_[i], basis_[j]);
            double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > 1e-8) {
                throw std::invalid_argument("StarAlgebra: basis is not orthonormal");
            }
        }
    }
    // Unit, adjoint closure, multiplication closure.
    const Operator ident = Operator::identity(basis_.front().factorization());
    if (span_residual(ident) > kAlgebraTol * std::sqrt(static_cast<double>(dim_space_))) {
        throw std::invalid_argument("StarAlgebra: identity not in span");
    }
    for (const Operator& b : basis_) {
        if (span_residual(b.adjoint()) > kAlgebraTol) {
            throw std::invalid_argument("StarAlgebra: span not closed under adjoint");
        }
    }
    for (const Operator& bi : basis_) {
        for (const Operator& bj : basis_) {
            Operator prod(bi.entries() * bj.entries(), bi.factorization());
            double scale = std::max(1.0, frobenius(prod.entries()));
            if (span_residual(prod) > kAlgebraTol * scale) {
                throw std::invalid_argument("StarAlgebra: span not closed under multiplication");
            }
        }
    }
}

double StarAlgebra::span_residual(const Operator& candidate) const {
    if (candidate.dim() != dim_space_) {
        throw std::invalid_argument("span_residual: dimension mismatch");
    }
    return frobenius(residual_against(basis_, candidate.entries()));
}

std::vector<Complex> StarAlgebra::coordinates(const Operator& candidate) const {
    if (candidate.dim() != dim_space_) {
        throw std::invalid_argument("coordinates: dimension mismatch");
    }
    std::vector<Complex> coords;
    coords.reserve(basis_.size());
    for (const Operator& b : basis_) {
        coords.push_back((b.entries().conjugate().cwiseProduct(candidate.entries())).sum());
    }
    return coords;
}

StarAlgebra generate_algebra(const std::vector<Operator>& generators, double tol) {
    if (generators.empty()) {
        throw std::invalid_argument("generate_algebra: at least one generator required");
    }
    if (tol <= 0.0) {
        throw std::invalid_argument("generate_algebra: tol must be positive");
    }
    const int dim = generators.front().dim();
    const Factorization& fac = generators.front().factorization();
    for (const Operator& g : generators) {
        if (g.dim() != dim) {
            throw std::invalid_argument("generate_algebra: generators must share one dimension");
        }
    }

    std::vector<Operator> basis;
    auto try_add = [&](const Matrix& candidate) {
        double nrm = frobenius(candidate);
        if (nrm <= tol) return false;
        Matrix r = residual_against(basis, candidate);
        double rn = frobenius(r);
        if (rn <= tol * nrm) return false;
        basis.emplace_back(Matrix(r / rn), fac);
        return true;
    };

    try_add(Matrix::Identity(dim, dim));
    for (const Operator& g : generators) {
        try_add(g.entries());
        try_add(g.entries().adjoint());
    }

    const std::size_t max_size = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t snapshot = basis.size();
        for (std::size_t i = 0; i < snapshot; ++i) {
            grew |= try_add(basis[i].entries().adjoint());
            for (std::size_t j = 0; j < snapshot; ++j) {
                grew |= try_add(basis[i].entries() * basis[j].entries());
            }
        }
        if (basis.size() > max_size) {
            throw std::logic_error("generate_algebra: span exceeded d^2");
        }
    }
    return StarAlgebra(std::move(basis), generators, dim);
}

bool is_commutative(const StarAlgebra& alg, double tol) {
    const auto& basis = alg.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Matrix comm = basis[i].entries() * basis[j].entries() -
                          basis[j].entries() * basis[i].entries();
            if (max_abs(comm) > tol) return false;
        }
    }
    return true;
}

std::vector<SpectrumPoint> classical_spectrum(const StarAlgebra& alg, double gap_threshold) {
    if (!is_commutative(alg, kAlgebraTol)) {
        throw std::invalid_argument("classical_spectrum: algebra is not commutative");
    }
    const int dim = alg.dim_space();

    // Joint eigenspaces by successive refinement: split each block by the
    // Hermitian and anti-Hermitian parts of every basis element.
    std::vector<Matrix> blocks{Matrix::Identity(dim, dim)};
    auto refine_by = [&](const Matrix& h) {
        if (max_abs(h) < 1e-14) return;
        std::vector<Matrix> next;
        for (const Matrix& v : blocks) {
            const auto m = v.cols();
            if (m == 1) {
                next.push_back(v);
                continue;
            }
            Matrix compressed = v.adjoint() * h * v;
            compressed = 0.5 * (compressed + compressed.adjoint().eval());
            Eigen::SelfAdjointEigenSolver<Matrix> solver(compressed);
            const RealVector& vals = solver.eigenvalues();
            const Matrix& vecs = solver.eigenvectors();
            Eigen::Index start = 0;
            for (Eigen::Index k = 1; k <= m; ++k) {
                if (k == m || vals(k) - vals(k - 1) > gap_threshold) {
                    next.push_back(v * vecs.middleCols(start, k - start));
                    start = k;
                }
            }
        }
        blocks = std::move(next);
    };
    for (const Operator& b : alg.basis()) {
        Matrix h = 0.5 * (b.entries() + b.entries().adjoint().eval());
        Matrix ah = Complex(0.0, -0.5) * (b.entries() - b.entries().adjoint().eval());
        refine_by(h);
        refine_by(ah);
    }

    const Factorization& fac = alg.basis().front().factorization();
    std::vector<SpectrumPoint> points;
    points.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        Matrix p = blocks[k] * blocks[k].adjoint();
        p = 0.5 * (p + p.adjoint().eval());
        SpectrumPoint point{static_cast<int>(k), {},
                            Operator::hermitian(std::move(p), fac)};
        const double rank = static_cast<double>(blocks[k].cols());
        for (std::size_t g = 0; g < alg.generators().size(); ++g) {
            Complex val = (point.projector.entries() * alg.generators()[g].entries()).trace();
            point.value_map[static_cast<int>(g)] = val.real() / rank;
        }
        points.push_back(std::move(point));
    }

    // Every algebra element must reconstruct from the projectors.
    for (const Operator& b : alg.basis()) {
        Matrix rebuilt = Matrix::Zero(dim, dim);
        for (const SpectrumPoint& point : points) {
            const Matrix& p = point.projector.entries();
            Complex coeff = (p * b.entries()).trace() / p.trace();
            rebuilt += coeff * p;
        }
        if (max_abs(rebuilt - b.entries()) > kIdentityTol) {
            throw std::runtime_error("classical_spectrum: reconstruction failed");
        }
    }
    return points;
}

StarAlgebra pointer_subalgebra(const Operator& q) {
    if (!q.is_hermitian()) {
        throw std::invalid_argument("pointer_subalgebra: observable must be Hermitian");
    }
    return generate_algebra({q});
}

StarAlgebra local_subalgebra(const Factorization& factorization, int slot) {
    if (slot < 0 || slot >= factorization.count()) {
        throw std::invalid_argument("local_subalgebra: invalid slot");
    }
    const auto& dims = factorization.dims();
    long dim_before = 1;
    long dim_after = 1;
    for (int k = 0; k < slot; ++k) dim_before *= dims[static_cast<std::size_t>(k)];
    for (int k = slot + 1; k < factorization.count(); ++k) {
        dim_after *= dims[static_cast<std::size_t>(k)];
    }
    const int m = dims[static_cast<std::size_t>(slot)];
    const int total = factorization.total_dim();
    const double norm = std::sqrt(static_cast<double>(dim_before * dim_after));

    std::vector<Operator> basis;
    std::vector<Operator> generators;
    basis.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Matrix unit = Matrix::Zero(total, total);
            for (long b = 0; b < dim_before; ++b) {
                for (long a = 0; a < dim_after; ++a) {
                    long row = (b * m + i) * dim_after + a;
                    long col = (b * m + j) * dim_after + a;
                    unit(row, col) = Complex(1.0, 0.0);
                }
            }
            generators.emplace_back(unit, factorization);
            basis.emplace_back(Matrix(unit / norm), factorization);
        }
    }
    return StarAlgebra(std::move(basis), std::move(generators), total);
}

StarAlgebra full_matrix_algebra(int dim) {
    return local_subalgebra(Factorization({dim}), 0);
}

}  // namespace aqm
