#pragma once

#include <random>
#include <vector>

#include "oqs/states.hpp"

namespace oqs {

// Choi matrix convention used throughout this module:
//
//     C = sum_{jk} Phi(|e_j><e_k|) (x) |e_j><e_k| = (Phi (x) id)(|v><v|),
//     v = sum_j e_j (x) e_j   (unnormalized),
//
// with the OUTPUT factor FIRST. The transposed convention (input factor
// first) is equally common in the literature; file formats and bindings all
// use the ordering above. Consequences: tr C = d for a trace-preserving map,
// and tracing out the FIRST factor of C must give the identity.
class QuantumChannel {
  public:
    /// Validates Hermiticity, positivity (complete positivity) and the
    /// trace-preservation marginal, all within 1e-9.
    QuantumChannel(Eigen::Index dim, ComplexMatrix choi);

    static QuantumChannel identity_channel(Eigen::Index d);

    Eigen::Index dim() const { return dim_; }
    const ComplexMatrix& choi() const { return choi_; }

  private:
    Eigen::Index dim_;
    ComplexMatrix choi_;
};

/// Ordered Kraus operators K_1..K_N (N <= d^2) with sum K^+ K = 1 within 1e-9.
class KrausSet {
  public:
    KrausSet(Eigen::Index dim, std::vector<ComplexMatrix> operators);

    Eigen::Index dim() const { return dim_; }
    const std::vector<ComplexMatrix>& operators() const { return operators_; }

    /// Residual ||sum K^+ K - 1||_max of the completeness relation.
    double completeness_residual() const;

  private:
    Eigen::Index dim_;
    std::vector<ComplexMatrix> operators_;
};

/// Open-system representation of a channel: a unitary on system x ancilla
/// and a fixed ancilla state, reducing to the channel after a partial trace.
struct Dilation {
    Eigen::Index dim_r;    // ancilla dimension = Kraus rank, <= d^2
    PureState omega;       // ancilla reference state (first basis vector)
    ComplexMatrix unitary; // (d*dim_r) x (d*dim_r), system factor first
};

struct CptpReport {
    bool cp;
    bool tp;
    double min_choi_eig;
    double tp_residual;
};

DensityMatrix apply(const QuantumChannel& phi, const DensityMatrix& rho);

QuantumChannel choi_from_kraus(const KrausSet& kraus);

/// Choi matrix assembled from a raw operator list, without the completeness
/// validation of KrausSet; lets verification report violations instead of
/// failing at construction.
ComplexMatrix choi_sum(Eigen::Index dim, const std::vector<ComplexMatrix>& ops);
double completeness_residual(Eigen::Index dim,
                             const std::vector<ComplexMatrix>& ops);

/// Eigendecomposes the Choi matrix and reshapes eigenvectors into Kraus
/// operators, K_alpha[m,n] = sqrt(lambda_alpha) <e_m (x) e_n, s_alpha>.
/// Eigenvalues below tol (relative to the largest) are dropped; each K is
/// phase-fixed so its largest-magnitude entry is real positive. Ordered by
/// descending eigenvalue.
KrausSet kraus_from_choi(const QuantumChannel& phi, double tol = 1e-12);

/// Checks a candidate Choi matrix: cp iff min eigenvalue >= -tol, tp iff
/// the output marginal equals the identity within tol.
CptpReport is_cptp(const ComplexMatrix& choi_candidate, Eigen::Index d,
                   double tol = 1e-9);

/// Constructs the minimal unitary dilation, U (e_i (x) Omega) =
/// sum_alpha K_alpha e_i (x) e_alpha, completed to a full unitary.
Dilation dilate(const QuantumChannel& phi);

/// tr_R[ U (rho (x) |Omega><Omega|) U^+ ] for a dilation of a d-dim channel.
DensityMatrix apply_dilation(const Dilation& dil, const DensityMatrix& rho);

/// Completes orthonormal columns in C^N to an N x N unitary by Gram-Schmidt
/// over the canonical basis, skipping candidates whose residual norm falls
/// below 1e-8. The first k columns equal the inputs exactly.
ComplexMatrix extend_isometry(const std::vector<ComplexVector>& columns);

/// Transposes the second tensor factor. The result stays Hermitian with
/// unit trace but may fail positivity; a negative eigenvalue certifies
/// entanglement (PPT criterion).
ComplexMatrix partial_transpose(const DensityMatrix& rho, Eigen::Index dim_a,
                                Eigen::Index dim_b);
double ppt_min_eig(const DensityMatrix& rho, Eigen::Index dim_a,
                   Eigen::Index dim_b);

/// Haar-distributed unitary (Ginibre + QR with phase fix).
ComplexMatrix random_unitary(Eigen::Index d, std::mt19937_64& rng);

/// Random channel built by reduction of a random unitary on a d * d^2
/// bipartite space against a fixed ancilla state, so it is CPTP by
/// construction. Used by self-tests.
QuantumChannel random_cptp(Eigen::Index d, std::mt19937_64& rng);

/// Random density matrix (normalized Wishart).
DensityMatrix random_density(Eigen::Index d, std::mt19937_64& rng);

}  // namespace oqs
