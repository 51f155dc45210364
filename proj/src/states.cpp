#include "oqs/states.hpp"

#include <cmath>

namespace oqs {

PureState::PureState(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw DimensionError("PureState: empty amplitude vector");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
        throw NormalizationError("PureState: vector norm deviates from 1 by more than 1e-12");
    }
}

PureState PureState::basis(Eigen::Index d, Eigen::Index k) {
    if (k < 0 || k >= d) {
        throw DimensionError("PureState::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(d);
    v(k) = 1.0;
    return PureState(std::move(v));
}

ComplexMatrix DensityMatrix::validate(ComplexMatrix m, double trace_tol,
                                      double psd_floor, bool renormalize) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("DensityMatrix: matrix is not square");
    }
    ComplexMatrix adj = m.adjoint();
    if (max_norm(m - adj) > kHermTol) {
        throw HermiticityError("DensityMatrix: not Hermitian within 1e-10");
    }
    m = 0.5 * (m + adj);
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw NormalizationError("DensityMatrix: trace deviates from 1 beyond tolerance");
    }
    if (renormalize) m /= tr;

    Spectrum s = eigh(m);
    const double min_eig = s.eigenvalues(0);
    if (min_eig < psd_floor) {
        throw PositivityError("DensityMatrix: eigenvalue below PSD floor");
    }
    if (min_eig < 0.0) {
        RealVector clamped = s.eigenvalues.cwiseMax(0.0);
        m = s.eigenvectors * clamped.cast<cxd>().asDiagonal() *
            s.eigenvectors.adjoint();
    }
    return m;
}

DensityMatrix::DensityMatrix(ComplexMatrix m)
    : matrix_(validate(std::move(m), 1e-10, -1e-10, false)) {}

DensityMatrix DensityMatrix::relaxed(ComplexMatrix m) {
    return DensityMatrix(validate(std::move(m), 1e-6, -1e-9, true), Unchecked{});
}

DensityMatrix project(const PureState& psi) {
    const ComplexVector& v = psi.amplitudes();
    ComplexMatrix m(v.size(), v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = 0; j < v.size(); ++j)
            m(i, j) = v(i) * std::conj(v(j));
    return DensityMatrix(std::move(m));
}

cxd expectation(const DensityMatrix& rho, const ComplexMatrix& a) {
    if (a.rows() != rho.dim() || a.cols() != rho.dim()) {
        throw DimensionError("expectation: observable dimension mismatch");
    }
    return (rho.matrix() * a).trace();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace_distance: dimension mismatch");
    }
    Spectrum s = eigh(ComplexMatrix(rho.matrix() - sigma.matrix()));
    return 0.5 * s.eigenvalues.cwiseAbs().sum();
}

}  // namespace oqs
