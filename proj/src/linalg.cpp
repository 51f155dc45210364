#include "oqs/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace oqs {

namespace {

// Multiply each eigenvector column by a phase so that its largest-magnitude
// component becomes real positive. Ties resolve to the first such component,
// which keeps degenerate subspaces reproducible.
void canonicalize_phases(ComplexMatrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            const double a = std::abs(vectors(r, c));
            if (a > best) {
                best = a;
                imax = r;
            }
        }
        if (best > 0.0) {
            const cxd phase = vectors(imax, c) / best;
            vectors.col(c) *= std::conj(phase);
        }
    }
}

Spectrum spectral(const ComplexMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) {
        throw Error("eigh: eigensolver failed to converge");
    }
    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
    canonicalize_phases(s.eigenvectors);
    return s;
}

}  // namespace

ComplexMatrix identity(Eigen::Index d) {
    return ComplexMatrix::Identity(d, d);
}

double max_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Eigen::Index dim_a,
                            Eigen::Index dim_b, Keep keep) {
    if (dim_a <= 0 || dim_b <= 0) {
        throw DimensionError("partial_trace: factor dimensions must be positive");
    }
    const Eigen::Index d = dim_a * dim_b;
    if (x.rows() != d || x.cols() != d) {
        throw DimensionError("partial_trace: operator is not (dimA*dimB) square");
    }
    if (keep == Keep::A) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
        for (Eigen::Index a = 0; a < dim_a; ++a)
            for (Eigen::Index ap = 0; ap < dim_a; ++ap)
                for (Eigen::Index b = 0; b < dim_b; ++b)
                    out(a, ap) += x(a * dim_b + b, ap * dim_b + b);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index b = 0; b < dim_b; ++b)
        for (Eigen::Index bp = 0; bp < dim_b; ++bp)
            for (Eigen::Index a = 0; a < dim_a; ++a)
                out(b, bp) += x(a * dim_b + b, a * dim_b + bp);
    return out;
}

Spectrum eigh(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("eigh: matrix is not square");
    }
    ComplexMatrix adj = m.adjoint();
    if (max_norm(m - adj) > kHermTol) {
        throw HermiticityError("eigh: input is not Hermitian within 1e-10");
    }
    return spectral(ComplexMatrix(0.5 * (m + adj)));
}

ComplexMatrix expm(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("expm: matrix is not square");
    }
    const Eigen::Index n = m.rows();
    const double scale = std::max(1.0, max_norm(m));
    ComplexMatrix adj = m.adjoint();
    if (max_norm(m - adj) <= 1e-12 * scale) {
        // Hermitian: V e^Lambda V^+
        Spectrum s = spectral(ComplexMatrix(0.5 * (m + adj)));
        ComplexVector ew(n);
        for (Eigen::Index k = 0; k < n; ++k) ew(k) = std::exp(s.eigenvalues(k));
        return s.eigenvectors * ew.asDiagonal() * s.eigenvectors.adjoint();
    }
    if (max_norm(m + adj) <= 1e-12 * scale) {
        // Anti-Hermitian: m = iH with H Hermitian, result unitary.
        ComplexMatrix h = cxd(0.0, -1.0) * m;
        Spectrum s = spectral(ComplexMatrix(0.5 * (h + h.adjoint().eval())));
        ComplexVector ew(n);
        for (Eigen::Index k = 0; k < n; ++k)
            ew(k) = std::polar(1.0, s.eigenvalues(k));
        return s.eigenvectors * ew.asDiagonal() * s.eigenvectors.adjoint();
    }
    return m.exp();
}

ComplexVector vec(const ComplexMatrix& m) {
    ComplexVector v(m.size());
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            v(j * m.rows() + i) = m(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) {
        throw DimensionError("unvec: vector length does not match target shape");
    }
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = v(j * rows + i);
    return m;
}

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix sigma_y() {
    ComplexMatrix m(2, 2);
    m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

}  // namespace oqs
