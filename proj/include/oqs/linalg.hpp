#pragma once

#include <complex>

#include <Eigen/Dense>

#include "oqs/errors.hpp"

namespace oqs {

using cxd = std::complex<double>;

/// Dense complex matrix, stored row-major. Substrate for every operator in
/// the library; dimensionless unless the caller assigns units.
using ComplexMatrix =
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;

/// Hermitian eigendecomposition result. Eigenvalues ascending; eigenvector
/// columns orthonormal, each phase-fixed so its largest-magnitude component
/// is real positive (reproducible across runs).
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

ComplexMatrix identity(Eigen::Index d);

/// Largest entry magnitude, max_ij |M_ij|.
double max_norm(const ComplexMatrix& m);

/// Kronecker product: (A otimes B)[i*rB+k, j*cB+l] = A[i,j] B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Keep { A, B };

/// Partial trace of an operator on a (dimA*dimB)-dimensional product space.
/// Satisfies tr_r(A otimes B) = A tr(B) when keeping the first factor.
ComplexMatrix partial_trace(const ComplexMatrix& x, Eigen::Index dim_a,
                            Eigen::Index dim_b, Keep keep);

/// Eigendecomposition of a Hermitian matrix (within kHermTol in max norm;
/// the input is symmetrized before solving).
Spectrum eigh(const ComplexMatrix& m);

/// Matrix exponential. Uses a spectral route for Hermitian and
/// anti-Hermitian inputs and scaling-and-squaring Pade otherwise, since
/// semigroup generators are generally non-normal.
ComplexMatrix expm(const ComplexMatrix& m);

// Column-stacking vectorization: vec(X)[j*d+i] = X(i,j), so the map
// X -> A X B has matrix (B^T otimes A). Used by every superoperator.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

// Two-level operators in the canonical basis {|0>, |1>}, e_0 = |0>, so
// sigma_z |0> = |0>. (The two-level atom module orders its basis excited
// state first and builds its own matrices.)
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();   // |1><0|
ComplexMatrix sigma_minus();  // |0><1|

}  // namespace oqs
