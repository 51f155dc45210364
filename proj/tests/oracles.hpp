// Independent reference routines used only by tests. These deliberately
// avoid the library's solver paths (Eigen eigensolvers, Pade expm) so that
// agreement is a genuine cross-check.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "oqs/linalg.hpp"

namespace oracle {

using oqs::ComplexMatrix;
using oqs::cxd;

// Cyclic Jacobi diagonalization for complex Hermitian matrices.
// Returns eigenvalues ascending; columns of `vectors` are the eigenvectors.
struct JacobiResult {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;
};

inline JacobiResult jacobi_eigh(ComplexMatrix a, int max_sweeps = 100,
                                double tol = 1e-14) {
    const Eigen::Index n = a.rows();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(a(p, q)));
        if (off <= tol * scale) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(apq);
                const double theta =
                    0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cxd eip = std::polar(1.0, phi);
                // Rotation U = [[c, s e^{i phi}], [-s e^{-i phi}, c]] acting on
                // columns/rows p, q; chosen to null the (p,q) entry.
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cxd akp = a(k, p);
                    const cxd akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(eip) * akq;
                    a(k, q) = s * eip * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cxd apk = a(p, k);
                    const cxd aqk = a(q, k);
                    a(p, k) = c * apk - s * eip * aqk;
                    a(q, k) = s * std::conj(eip) * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cxd vkp = v(k, p);
                    const cxd vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(eip) * vkq;
                    v(k, q) = s * eip * vkp + c * vkq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });
    JacobiResult res;
    res.eigenvalues.resize(n);
    res.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        res.eigenvalues[k] = a(order[k], order[k]).real();
        res.vectors.col(k) = v.col(order[k]);
    }
    return res;
}

// Plain truncated Taylor series; adequate for ||M|| <~ 1 where it is used.
inline ComplexMatrix taylor_expm(const ComplexMatrix& m, int max_terms = 120) {
    ComplexMatrix sum = ComplexMatrix::Identity(m.rows(), m.cols());
    ComplexMatrix term = sum;
    for (int k = 1; k <= max_terms; ++k) {
        term = ComplexMatrix(term * m) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    return sum;
}

// Brute-force index contraction for the partial trace over the second factor.
inline ComplexMatrix contract_second_factor(const ComplexMatrix& x,
                                            Eigen::Index da, Eigen::Index db) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index a = 0; a < da; ++a)
        for (Eigen::Index ap = 0; ap < da; ++ap)
            for (Eigen::Index b = 0; b < db; ++b)
                out(a, ap) += x(a * db + b, ap * db + b);
    return out;
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                                   std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            m(i, j) = cxd(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
    ComplexMatrix g = random_matrix(d, d, rng);
    return ComplexMatrix(0.5 * (g + g.adjoint().eval()));
}

}  // namespace oracle
