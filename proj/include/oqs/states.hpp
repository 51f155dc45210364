#pragma once

#include "oqs/linalg.hpp"

namespace oqs {

/// Normalized state vector, ||psi|| = 1 within 1e-12.
class PureState {
  public:
    explicit PureState(ComplexVector amplitudes);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// Canonical basis vector e_k of C^d.
    static PureState basis(Eigen::Index d, Eigen::Index k);

  private:
    ComplexVector amplitudes_;
};

/// Validated quantum state: Hermitian, unit trace, positive semidefinite.
/// Eigenvalues in (-1e-10, 0) are clamped to zero at construction since
/// integrator output drifts slightly negative.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m);

    /// Admits trace within 1e-6 of one and renormalizes; the PSD floor is
    /// widened to -1e-9. Intended for ODE integrator output only.
    static DensityMatrix relaxed(ComplexMatrix m);

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked) : matrix_(std::move(m)) {}
    static ComplexMatrix validate(ComplexMatrix m, double trace_tol,
                                  double psd_floor, bool renormalize);

    ComplexMatrix matrix_;
};

/// Rank-one projector |psi><psi|.
DensityMatrix project(const PureState& psi);

/// <A>_rho = tr(rho A). Real within round-off when A is Hermitian.
cxd expectation(const DensityMatrix& rho, const ComplexMatrix& a);

/// (1/2) sum_k |lambda_k(rho - sigma)|, in [0, 1].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace oqs
