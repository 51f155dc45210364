#include "oqs/channels.hpp"

#include <cmath>

namespace oqs {

namespace {

// Row-major flattening of K equals (K (x) I) v with v = sum_j e_j (x) e_j.
ComplexVector kraus_column(const ComplexMatrix& k) {
    const Eigen::Index d = k.rows();
    ComplexVector w(d * d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n) w(m * d + n) = k(m, n);
    return w;
}

void fix_phase(ComplexMatrix& k) {
    Eigen::Index im = 0, jm = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        for (Eigen::Index j = 0; j < k.cols(); ++j)
            if (std::abs(k(i, j)) > best) {
                best = std::abs(k(i, j));
                im = i;
                jm = j;
            }
    if (best > 0.0) k *= std::conj(k(im, jm) / best);
}

}  // namespace

QuantumChannel::QuantumChannel(Eigen::Index dim, ComplexMatrix choi)
    : dim_(dim), choi_(std::move(choi)) {
    if (dim_ <= 0 || choi_.rows() != dim_ * dim_ || choi_.cols() != dim_ * dim_) {
        throw DimensionError("QuantumChannel: Choi matrix is not d^2 x d^2");
    }
    ComplexMatrix adj = choi_.adjoint();
    if (max_norm(choi_ - adj) > 1e-9) {
        throw HermiticityError("QuantumChannel: Choi matrix not Hermitian within 1e-9");
    }
    choi_ = 0.5 * (choi_ + adj);
    Spectrum s = eigh(choi_);
    if (s.eigenvalues(0) < -1e-9) {
        throw CompletePositivityError(
            "QuantumChannel: Choi matrix has eigenvalue below -1e-9");
    }
    ComplexMatrix marginal =
        partial_trace(choi_, dim_, dim_, Keep::B) - identity(dim_);
    if (max_norm(marginal) > 1e-9) {
        throw TracePreservationError(
            "QuantumChannel: output marginal of Choi deviates from identity beyond 1e-9");
    }
}

QuantumChannel QuantumChannel::identity_channel(Eigen::Index d) {
    ComplexVector v = kraus_column(identity(d));
    ComplexMatrix choi = v * v.adjoint();
    return QuantumChannel(d, std::move(choi));
}

KrausSet::KrausSet(Eigen::Index dim, std::vector<ComplexMatrix> operators)
    : dim_(dim), operators_(std::move(operators)) {
    if (dim_ <= 0 || operators_.empty()) {
        throw DimensionError("KrausSet: need at least one operator");
    }
    if (static_cast<Eigen::Index>(operators_.size()) > dim_ * dim_) {
        throw DimensionError("KrausSet: more than d^2 operators");
    }
    for (const auto& k : operators_) {
        if (k.rows() != dim_ || k.cols() != dim_) {
            throw DimensionError("KrausSet: operator is not d x d");
        }
    }
    if (completeness_residual() > 1e-9) {
        throw CompletenessError("KrausSet: sum K^+ K deviates from identity beyond 1e-9");
    }
}

double KrausSet::completeness_residual() const {
    return oqs::completeness_residual(dim_, operators_);
}

DensityMatrix apply(const QuantumChannel& phi, const DensityMatrix& rho) {
    if (phi.dim() != rho.dim()) {
        throw DimensionError("apply: channel/state dimension mismatch");
    }
    // Phi(X) = tr_2[ C (1 (x) X^T) ] in the output-first Choi convention.
    ComplexMatrix xt = rho.matrix().transpose();
    ComplexMatrix prod = phi.choi() * kron(identity(phi.dim()), xt);
    return DensityMatrix(partial_trace(prod, phi.dim(), phi.dim(), Keep::A));
}

QuantumChannel choi_from_kraus(const KrausSet& kraus) {
    return QuantumChannel(kraus.dim(), choi_sum(kraus.dim(), kraus.operators()));
}

ComplexMatrix choi_sum(Eigen::Index dim, const std::vector<ComplexMatrix>& ops) {
    ComplexMatrix choi = ComplexMatrix::Zero(dim * dim, dim * dim);
    for (const auto& k : ops) {
        if (k.rows() != dim || k.cols() != dim) {
            throw DimensionError("choi_sum: operator is not d x d");
        }
        ComplexVector w = kraus_column(k);
        choi += w * w.adjoint();
    }
    return choi;
}

double completeness_residual(Eigen::Index dim,
                             const std::vector<ComplexMatrix>& ops) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (const auto& k : ops) {
        if (k.rows() != dim || k.cols() != dim) {
            throw DimensionError("completeness_residual: operator is not d x d");
        }
        acc += k.adjoint() * k;
    }
    return max_norm(acc - identity(dim));
}

KrausSet kraus_from_choi(const QuantumChannel& phi, double tol) {
    const Eigen::Index d = phi.dim();
    Spectrum s = eigh(phi.choi());
    const double lambda_max = s.eigenvalues(s.eigenvalues.size() - 1);
    if (s.eigenvalues(0) < -1e-9 * std::max(1.0, lambda_max)) {
        throw CompletePositivityError("kraus_from_choi: Choi matrix not PSD within tolerance");
    }
    const double cut = tol * std::max(lambda_max, 0.0);
    std::vector<ComplexMatrix> ops;
    for (Eigen::Index a = s.eigenvalues.size() - 1; a >= 0; --a) {
        const double lambda = s.eigenvalues(a);
        if (lambda <= cut) break;
        ComplexMatrix k(d, d);
        const double w = std::sqrt(lambda);
        for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index n = 0; n < d; ++n)
                k(m, n) = w * s.eigenvectors(m * d + n, a);
        fix_phase(k);
        ops.push_back(std::move(k));
    }
    return KrausSet(d, std::move(ops));
}

CptpReport is_cptp(const ComplexMatrix& choi_candidate, Eigen::Index d,
                   double tol) {
    if (d <= 0 || choi_candidate.rows() != d * d || choi_candidate.cols() != d * d) {
        throw DimensionError("is_cptp: candidate is not d^2 x d^2");
    }
    ComplexMatrix adj = choi_candidate.adjoint();
    if (max_norm(choi_candidate - adj) > tol) {
        throw HermiticityError("is_cptp: candidate not Hermitian within tolerance");
    }
    Spectrum s = eigh(ComplexMatrix(0.5 * (choi_candidate + adj)));
    const double min_eig = s.eigenvalues(0);
    const double tp_residual =
        max_norm(partial_trace(choi_candidate, d, d, Keep::B) - identity(d));
    return CptpReport{min_eig >= -tol, tp_residual <= tol, min_eig, tp_residual};
}

Dilation dilate(const QuantumChannel& phi) {
    const Eigen::Index d = phi.dim();
    KrausSet kraus = kraus_from_choi(phi);
    const Eigen::Index n = static_cast<Eigen::Index>(kraus.operators().size());
    const Eigen::Index full = d * n;

    // Columns of the isometry: e_i (x) Omega |-> sum_alpha K_alpha e_i (x) e_alpha.
    std::vector<ComplexVector> cols(d, ComplexVector::Zero(full));
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index alpha = 0; alpha < n; ++alpha)
            for (Eigen::Index m = 0; m < d; ++m)
                cols[i](m * n + alpha) = kraus.operators()[alpha](m, i);

    ComplexMatrix completed = extend_isometry(cols);

    // Place column i at the slot of e_i (x) Omega (flat index i*n) and fill
    // the remaining slots with the completion vectors in order.
    ComplexMatrix u = ComplexMatrix::Zero(full, full);
    Eigen::Index next = d;
    for (Eigen::Index i = 0; i < d; ++i) u.col(i * n) = completed.col(i);
    for (Eigen::Index c = 0; c < full; ++c) {
        if (c % n == 0 && c / n < d) continue;
        u.col(c) = completed.col(next++);
    }
    return Dilation{n, PureState::basis(n, 0), std::move(u)};
}

DensityMatrix apply_dilation(const Dilation& dil, const DensityMatrix& rho) {
    const Eigen::Index n = dil.dim_r;
    const Eigen::Index d = rho.dim();
    if (dil.unitary.rows() != d * n) {
        throw DimensionError("apply_dilation: unitary/state dimension mismatch");
    }
    ComplexMatrix omega_proj = project(dil.omega).matrix();
    ComplexMatrix joint = kron(rho.matrix(), omega_proj);
    ComplexMatrix evolved = dil.unitary * joint * dil.unitary.adjoint();
    return DensityMatrix(partial_trace(evolved, d, n, Keep::A));
}

ComplexMatrix extend_isometry(const std::vector<ComplexVector>& columns) {
    if (columns.empty()) {
        throw IsometryError("extend_isometry: no columns supplied");
    }
    const Eigen::Index n = columns.front().size();
    const Eigen::Index k = static_cast<Eigen::Index>(columns.size());
    if (k > n) {
        throw IsometryError("extend_isometry: more columns than the space dimension");
    }
    for (const auto& c : columns) {
        if (c.size() != n) {
            throw IsometryError("extend_isometry: columns of unequal length");
        }
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            const cxd g = columns[i].dot(columns[j]);
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - target) > 1e-10) {
                throw IsometryError("extend_isometry: supplied columns not orthonormal within 1e-10");
            }
        }
    }

    ComplexMatrix u(n, n);
    for (Eigen::Index i = 0; i < k; ++i) u.col(i) = columns[i];
    Eigen::Index have = k;
    for (Eigen::Index cand = 0; cand < n && have < n; ++cand) {
        ComplexVector v = ComplexVector::Zero(n);
        v(cand) = 1.0;
        // Two projection passes for numerical orthogonality.
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index c = 0; c < have; ++c)
                v -= u.col(c).dot(v) * u.col(c);
        const double norm = v.norm();
        if (norm < 1e-8) continue;
        u.col(have++) = v / norm;
    }
    if (have < n) {
        throw IsometryError("extend_isometry: completion failed");
    }
    return u;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Eigen::Index dim_a,
                                Eigen::Index dim_b) {
    if (dim_a <= 0 || dim_b <= 0 || rho.dim() != dim_a * dim_b) {
        throw DimensionError("partial_transpose: dimensions do not factor the state");
    }
    const ComplexMatrix& x = rho.matrix();
    ComplexMatrix out(x.rows(), x.cols());
    for (Eigen::Index a = 0; a < dim_a; ++a)
        for (Eigen::Index ap = 0; ap < dim_a; ++ap)
            for (Eigen::Index b = 0; b < dim_b; ++b)
                for (Eigen::Index bp = 0; bp < dim_b; ++bp)
                    out(a * dim_b + b, ap * dim_b + bp) =
                        x(a * dim_b + bp, ap * dim_b + b);
    return out;
}

double ppt_min_eig(const DensityMatrix& rho, Eigen::Index dim_a,
                   Eigen::Index dim_b) {
    Spectrum s = eigh(partial_transpose(rho, dim_a, dim_b));
    return s.eigenvalues(0);
}

ComplexMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cxd(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const cxd rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

QuantumChannel random_cptp(Eigen::Index d, std::mt19937_64& rng) {
    const Eigen::Index n = d * d;  // ancilla dimension
    ComplexMatrix u = random_unitary(d * n, rng);
    std::vector<ComplexMatrix> ops;
    ops.reserve(n);
    // K_alpha[m, i] = <e_m (x) e_alpha | U | e_i (x) Omega>, Omega = e_0.
    for (Eigen::Index alpha = 0; alpha < n; ++alpha) {
        ComplexMatrix k(d, d);
        for (Eigen::Index m = 0; m < d; ++m)
            for (Eigen::Index i = 0; i < d; ++i) k(m, i) = u(m * n + alpha, i * n);
        ops.push_back(std::move(k));
    }
    return choi_from_kraus(KrausSet(d, std::move(ops)));
}

DensityMatrix random_density(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cxd(gauss(rng), gauss(rng));
    ComplexMatrix w = g * g.adjoint();
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

}  // namespace oqs
