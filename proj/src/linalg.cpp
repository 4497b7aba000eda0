#include "oqsym/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef OQSYM_USE_LAPACKE
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>
#endif

namespace oqsym {

double hermiticity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermiticity_defect: matrix not square");
    }
    if (m.rows() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    return hermiticity_defect(m) <= tol;
}

Matrix identity(int dim) {
    if (dim < 1) throw std::invalid_argument("identity: dim must be >= 1");
    return Matrix::Identity(dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

namespace {

// Dense Hermitian eigensolve of a matrix already known to be Hermitian.
// LAPACK's divide-and-conquer driver for anything beyond trivial sizes,
// Eigen otherwise.
Eigensystem eigh_unchecked(const Matrix& h) {
    const int n = static_cast<int>(h.rows());
    Eigensystem es;
#ifdef OQSYM_USE_LAPACKE
    if (n > 32) {
        Matrix v = h;
        RealVector w(n);
        const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                               v.data(), n, w.data());
        if (info != 0) {
            throw std::runtime_error("hermitian_eigensystem: zheevd failed, info=" +
                                     std::to_string(info));
        }
        es.values = std::move(w);
        es.vectors = std::move(v);
        return es;
    }
#endif
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigensystem: eigensolver failed");
    }
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    return es;
}

}  // namespace

Eigensystem hermitian_eigensystem(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    }
    const double defect = hermiticity_defect(h);
    if (defect > tol) {
        throw std::invalid_argument("hermitian_eigensystem: input not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
    return eigh_unchecked(0.5 * (h + h.adjoint()));
}

SpectralCache::SpectralCache(const Matrix& h, double tol) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("SpectralCache: matrix not square");
    }
    const double defect = hermiticity_defect(h);
    if (defect > tol) {
        throw std::invalid_argument("SpectralCache: input not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
    dim_ = static_cast<int>(h.rows());
    const Matrix sym = 0.5 * (h + h.adjoint());

    // Connected components of the sparsity pattern via union-find.
    std::vector<int> parent(dim_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int j = 0; j < dim_; ++j) {
        for (int i = j + 1; i < dim_; ++i) {
            if (sym(i, j) != Complex(0.0, 0.0)) {
                const int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }
        }
    }
    std::vector<std::vector<int>> groups(dim_);
    for (int i = 0; i < dim_; ++i) groups[find(i)].push_back(i);

    for (auto& g : groups) {
        if (g.empty()) continue;
        Block blk;
        blk.index = std::move(g);
        const int m = static_cast<int>(blk.index.size());
        Matrix sub(m, m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) sub(a, b) = sym(blk.index[a], blk.index[b]);
        }
        Eigensystem es = eigh_unchecked(sub);
        blk.w = std::move(es.values);
        blk.v = std::move(es.vectors);
        blocks_.push_back(std::move(blk));
    }
}

Matrix SpectralCache::unitary(double t) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& blk : blocks_) {
        const int m = static_cast<int>(blk.index.size());
        const Vector phase = (Complex(0, -t) * blk.w.cast<Complex>().array()).exp();
        const Matrix u = (blk.v * phase.asDiagonal()) * blk.v.adjoint();
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) out(blk.index[a], blk.index[b]) = u(a, b);
        }
    }
    return out;
}

Matrix SpectralCache::propagate(const Matrix& cols, double t) const {
    if (cols.rows() != dim_) {
        throw std::invalid_argument("SpectralCache::propagate: row mismatch");
    }
    Matrix out(dim_, cols.cols());
    for (const auto& blk : blocks_) {
        const int m = static_cast<int>(blk.index.size());
        Matrix sub(m, cols.cols());
        for (int a = 0; a < m; ++a) sub.row(a) = cols.row(blk.index[a]);
        const Vector phase = (Complex(0, -t) * blk.w.cast<Complex>().array()).exp();
        Matrix prop = blk.v * (phase.asDiagonal() * (blk.v.adjoint() * sub));
        for (int a = 0; a < m; ++a) out.row(blk.index[a]) = prop.row(a);
    }
    return out;
}

RealVector SpectralCache::eigenvalues_sorted() const {
    RealVector all(dim_);
    int pos = 0;
    for (const auto& blk : blocks_) {
        for (int a = 0; a < blk.w.size(); ++a) all(pos++) = blk.w(a);
    }
    std::sort(all.data(), all.data() + all.size());
    return all;
}

Matrix evolve_unitary(const Matrix& h, double t, double tol) {
    return SpectralCache(h, tol).unitary(t);
}

Matrix partial_trace(const Matrix& q, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("partial_trace: factor dims must be >= 1");
        total *= d;
    }
    if (q.rows() != q.cols() || q.rows() != total) {
        throw std::invalid_argument("partial_trace: matrix dimension does not match factors");
    }
    const int nf = static_cast<int>(dims.size());
    std::vector<bool> kept(nf, false);
    for (int f : keep) {
        if (f < 0 || f >= nf) throw std::invalid_argument("partial_trace: keep index out of range");
        if (kept[f]) throw std::invalid_argument("partial_trace: duplicate keep index");
        kept[f] = true;
    }

    std::vector<long> stride(nf, 1);
    for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    long dk = 1, dt = 1;
    std::vector<int> keep_f, trace_f;
    for (int f = 0; f < nf; ++f) {
        if (kept[f]) { keep_f.push_back(f); dk *= dims[f]; }
        else         { trace_f.push_back(f); dt *= dims[f]; }
    }

    // Offsets of every kept multi-index and every traced multi-index into the
    // full flat index.
    auto offsets = [&](const std::vector<int>& fs, long count) {
        std::vector<long> off(count, 0);
        long rep = count;
        for (int f : fs) {
            rep /= dims[f];
            for (long i = 0; i < count; ++i) {
                off[i] += ((i / rep) % dims[f]) * stride[f];
            }
        }
        return off;
    };
    const std::vector<long> koff = offsets(keep_f, dk);
    const std::vector<long> toff = offsets(trace_f, dt);

    Matrix out = Matrix::Zero(dk, dk);
    for (long i = 0; i < dk; ++i) {
        for (long j = 0; j < dk; ++j) {
            Complex sum(0.0, 0.0);
            for (long r = 0; r < dt; ++r) {
                sum += q(koff[i] + toff[r], koff[j] + toff[r]);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

double hs_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_distance: dimension mismatch");
    }
    return (a - b).norm();
}

}  // namespace oqsym
