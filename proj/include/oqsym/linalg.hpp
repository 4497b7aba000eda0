// linalg.hpp — dense complex kernels: Kronecker products, Hermitian
// eigendecomposition, unitary evolution, partial traces, Hilbert-Schmidt
// distance.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace oqsym {

using Complex    = std::complex<double>;
using Matrix     = Eigen::MatrixXcd;
using Vector     = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Hermiticity tolerance for constructed Hamiltonians. Asymmetry above this
// is a construction bug, not roundoff.
inline constexpr double kHermiticityTol = 1e-10;

// max_ij |m(i,j) - conj(m(j,i))|; zero for exactly Hermitian input.
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermiticityTol);

Matrix identity(int dim);

// Kronecker product, row-index convention (i_a * rows_b + i_b).
Matrix kron(const Matrix& a, const Matrix& b);

struct Eigensystem {
    RealVector values;   // ascending
    Matrix vectors;      // columns, orthonormal
};

// Eigendecomposition of a Hermitian matrix; rejects inputs whose
// hermiticity defect exceeds `tol`.
Eigensystem hermitian_eigensystem(const Matrix& h, double tol = kHermiticityTol);

// Block-diagonal spectral factorization of a Hermitian matrix. The blocks
// are the connected components of the sparsity pattern, so the result is
// identical (to roundoff) to a full eigendecomposition while large
// structured Hamiltonians factor in pieces.
class SpectralCache {
  public:
    explicit SpectralCache(const Matrix& h, double tol = kHermiticityTol);

    int dim() const { return dim_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    // e^{-i t h}, dense.
    Matrix unitary(double t) const;

    // e^{-i t h} * cols without forming the full unitary.
    Matrix propagate(const Matrix& cols, double t) const;

    RealVector eigenvalues_sorted() const;

  private:
    struct Block {
        std::vector<int> index;  // rows/cols of the original matrix
        RealVector w;
        Matrix v;
    };
    int dim_ = 0;
    std::vector<Block> blocks_;
};

// e^{-i t h} for Hermitian h, via eigendecomposition.
Matrix evolve_unitary(const Matrix& h, double t, double tol = kHermiticityTol);

// Trace over the factors not listed in `keep`. `dims` are the tensor factor
// dimensions in kron order; `keep` is an ascending subset of factor indices.
Matrix partial_trace(const Matrix& q, const std::vector<int>& dims,
                     const std::vector<int>& keep);

// Hilbert-Schmidt (Frobenius) norm of a - b.
double hs_distance(const Matrix& a, const Matrix& b);

}  // namespace oqsym
