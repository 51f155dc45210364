#include "oqs/gksl.hpp"

#include <cmath>

namespace oqs {

namespace {

ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

// Superoperator matrix of X -> F_i X F_j^+ under column stacking.
ComplexMatrix gamma_superop(const ComplexMatrix& fi, const ComplexMatrix& fj) {
    return kron(fj.conjugate(), fi);
}

cxd hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.adjoint() * b).trace();
}

}  // namespace

Superoperator::Superoperator(Eigen::Index dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
    if (dim_ <= 0 || matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
        throw DimensionError("Superoperator: matrix is not d^2 x d^2");
    }
}

Superoperator Superoperator::from_map(
    Eigen::Index dim,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
    ComplexMatrix m(dim * dim, dim * dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            ComplexMatrix image = map(matrix_unit(dim, i, j));
            if (image.rows() != dim || image.cols() != dim) {
                throw DimensionError("Superoperator::from_map: map changes dimensions");
            }
            m.col(j * dim + i) = vec(image);
        }
    }
    return Superoperator(dim, std::move(m));
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
        throw DimensionError("Superoperator::apply: operand is not d x d");
    }
    return unvec(matrix_ * vec(x), dim_, dim_);
}

GKSLGenerator::GKSLGenerator(ComplexMatrix hamiltonian, std::vector<Jump> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
    if (hamiltonian_.rows() != hamiltonian_.cols() || hamiltonian_.rows() == 0) {
        throw DimensionError("GKSLGenerator: Hamiltonian is not square");
    }
    ComplexMatrix adj = hamiltonian_.adjoint();
    if (max_norm(hamiltonian_ - adj) > kHermTol) {
        throw HermiticityError("GKSLGenerator: Hamiltonian not Hermitian within 1e-10");
    }
    hamiltonian_ = 0.5 * (hamiltonian_ + adj);
    for (auto& j : jumps_) {
        if (j.op.rows() != dim() || j.op.cols() != dim()) {
            throw DimensionError("GKSLGenerator: jump operator dimension mismatch");
        }
        if (j.rate < -1e-12) {
            throw DomainError("GKSLGenerator: negative jump rate");
        }
        if (j.rate < 0.0) j.rate = 0.0;
    }
}

OperatorBasis::OperatorBasis(Eigen::Index d, std::vector<ComplexMatrix> f)
    : dim_(d), elements_(std::move(f)) {}

OperatorBasis OperatorBasis::gell_mann(Eigen::Index d) {
    if (d <= 0) throw DimensionError("OperatorBasis: dimension must be positive");
    std::vector<ComplexMatrix> f;
    f.reserve(d * d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = inv_sqrt2;
            m(k, j) = inv_sqrt2;
            f.push_back(std::move(m));
        }
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = cxd(0.0, -inv_sqrt2);
            m(k, j) = cxd(0.0, inv_sqrt2);
            f.push_back(std::move(m));
        }
    for (Eigen::Index l = 1; l < d; ++l) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (Eigen::Index j = 0; j < l; ++j) m(j, j) = norm;
        m(l, l) = -static_cast<double>(l) * norm;
        f.push_back(std::move(m));
    }
    f.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
    return OperatorBasis(d, std::move(f));
}

Superoperator superop_from_generator(const GKSLGenerator& gen) {
    const Eigen::Index d = gen.dim();
    const ComplexMatrix eye = identity(d);
    const ComplexMatrix& h = gen.hamiltonian();
    ComplexMatrix m = cxd(0.0, -1.0) *
                      (kron(eye, h) - kron(h.transpose(), eye));
    for (const auto& jump : gen.jumps()) {
        const ComplexMatrix& v = jump.op;
        ComplexMatrix vv = v.adjoint() * v;
        m += jump.rate * (kron(v.conjugate(), v) - 0.5 * kron(eye, vv) -
                          0.5 * kron(vv.transpose(), eye));
    }
    return Superoperator(d, std::move(m));
}

DensityMatrix evolve(const GKSLGenerator& gen, const DensityMatrix& rho0,
                     double t) {
    if (t < 0.0) throw DomainError("evolve: negative time");
    if (gen.dim() != rho0.dim()) {
        throw DimensionError("evolve: generator/state dimension mismatch");
    }
    Superoperator l = superop_from_generator(gen);
    ComplexMatrix propagator = expm(ComplexMatrix(t * l.matrix()));
    ComplexMatrix out = unvec(propagator * vec(rho0.matrix()), gen.dim(), gen.dim());
    return DensityMatrix::relaxed(std::move(out));
}

GkslDecomposition gksl_decompose(const Superoperator& lmat,
                                 const OperatorBasis& basis) {
    const Eigen::Index d = lmat.dim();
    if (basis.dim() != d) {
        throw DimensionError("gksl_decompose: basis dimension mismatch");
    }
    const Eigen::Index n = d * d;
    const auto& f = basis.elements();

    // Precondition: L annihilates the trace, <vec(1)| L = 0.
    Eigen::RowVectorXcd trace_functional =
        vec(identity(d)).adjoint() * lmat.matrix();
    if (trace_functional.cwiseAbs().maxCoeff() > 1e-8) {
        throw NotTracePreserving("gksl_decompose: superoperator does not annihilate the trace within 1e-8");
    }
    // Precondition: L(X^+) = L(X)^+ on all matrix units.
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            ComplexMatrix e = matrix_unit(d, i, j);
            ComplexMatrix lhs = lmat.apply(ComplexMatrix(e.adjoint()));
            ComplexMatrix rhs = lmat.apply(e).adjoint();
            if (max_norm(lhs - rhs) > 1e-8) {
                throw HermiticityError("gksl_decompose: superoperator is not Hermiticity-preserving within 1e-8");
            }
        }
    }

    // Expansion L = sum_ij a_ij (X -> F_i X F_j^+). The maps form an
    // orthonormal basis of superoperators, so projection solves the system.
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = hs_inner(gamma_superop(f[i], f[j]), lmat.matrix());

    // Effective Hamiltonian from the identity-column coefficients:
    // F = (1/sqrt d) sum_i a_{i,n-1} F_i, H = -(F - F^+)/(2i).
    ComplexMatrix f_op = ComplexMatrix::Zero(d, d);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        f_op += inv_sqrt_d * a(i, n - 1) * f[i];
    ComplexMatrix h = cxd(0.0, 0.5) * (f_op - f_op.adjoint().eval());

    // Trace preservation pins the Hermitian part of F; verify it.
    ComplexMatrix re_f_expected =
        -(0.5 / static_cast<double>(d)) * a(n - 1, n - 1) * identity(d);
    for (Eigen::Index i = 0; i + 1 < n; ++i)
        for (Eigen::Index j = 0; j + 1 < n; ++j)
            re_f_expected -= 0.5 * a(i, j) * (f[j].adjoint() * f[i]).eval();
    ComplexMatrix re_f = 0.5 * (f_op + f_op.adjoint().eval());
    if (max_norm(re_f - re_f_expected) > 1e-8) {
        throw NotTracePreserving("gksl_decompose: Hermitian part of F violates the trace-preservation identity");
    }

    ComplexMatrix coeff = a.topLeftCorner(n - 1, n - 1);
    coeff = 0.5 * (coeff + coeff.adjoint().eval());
    Spectrum spec = eigh(coeff);
    if (spec.eigenvalues(0) < -1e-8) {
        throw NotCompletelyPositiveGenerator(
            "gksl_decompose: coefficient matrix has a negative eigenvalue",
            spec.eigenvalues(0));
    }

    std::vector<GKSLGenerator::Jump> jumps;
    for (Eigen::Index l = 0; l < n - 1; ++l) {
        const double rate = std::max(spec.eigenvalues(l), 0.0);
        if (rate <= 0.0) continue;
        ComplexMatrix v = ComplexMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < n - 1; ++i)
            v += spec.eigenvectors(i, l) * f[i];
        jumps.push_back({std::move(v), rate});
    }

    GKSLGenerator gen(std::move(h), std::move(jumps));
    double residual =
        max_norm(lmat.matrix() - superop_from_generator(gen).matrix());
    return GkslDecomposition{std::move(gen), std::move(coeff), residual};
}

double semigroup_check(const GKSLGenerator& gen, double t, double s) {
    ComplexMatrix l = superop_from_generator(gen).matrix();
    ComplexMatrix lhs = expm(ComplexMatrix((t + s) * l));
    ComplexMatrix rhs = expm(ComplexMatrix(t * l)) * expm(ComplexMatrix(s * l));
    return max_norm(lhs - rhs);
}

ComplexMatrix choi_of_exponential(const GKSLGenerator& gen, double t) {
    const Eigen::Index d = gen.dim();
    ComplexMatrix propagator =
        expm(ComplexMatrix(t * superop_from_generator(gen).matrix()));
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = 0; k < d; ++k) {
            ComplexMatrix image =
                unvec(propagator * vec(matrix_unit(d, j, k)), d, d);
            choi += kron(image, matrix_unit(d, j, k));
        }
    return choi;
}

}  // namespace oqs
