#pragma once

#include <functional>
#include <vector>

#include "oqs/states.hpp"

namespace oqs {

/// A linear map on d x d operators, stored as its d^2 x d^2 matrix acting on
/// column-stacked operators (see vec()).
class Superoperator {
  public:
    Superoperator(Eigen::Index dim, ComplexMatrix matrix);

    /// Builds the matrix column by column from the map's action on matrix
    /// units, so the two representations agree exactly.
    static Superoperator from_map(
        Eigen::Index dim,
        const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

    ComplexMatrix apply(const ComplexMatrix& x) const;

    Eigen::Index dim() const { return dim_; }
    const ComplexMatrix& matrix() const { return matrix_; }

  private:
    Eigen::Index dim_;
    ComplexMatrix matrix_;
};

/// Semigroup generator in canonical form: Hamiltonian H plus jump operators
/// V_l with rates gamma_l >= 0 (hbar = 1, rates in inverse time).
class GKSLGenerator {
  public:
    struct Jump {
        ComplexMatrix op;
        double rate;
    };

    GKSLGenerator(ComplexMatrix hamiltonian, std::vector<Jump> jumps);

    Eigen::Index dim() const { return hamiltonian_.rows(); }
    const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
    const std::vector<Jump>& jumps() const { return jumps_; }

  private:
    ComplexMatrix hamiltonian_;
    std::vector<Jump> jumps_;
};

/// Orthonormal operator basis F_1..F_{d^2} under <A,B> = tr(A^+ B), with
/// F_{d^2} = 1/sqrt(d) and every other element traceless.
class OperatorBasis {
  public:
    /// Generalized Gell-Mann basis: symmetric and antisymmetric off-diagonal
    /// families, the diagonal family, then the scaled identity last.
    static OperatorBasis gell_mann(Eigen::Index d);

    Eigen::Index dim() const { return dim_; }
    const std::vector<ComplexMatrix>& elements() const { return elements_; }

  private:
    OperatorBasis(Eigen::Index d, std::vector<ComplexMatrix> f);
    Eigen::Index dim_;
    std::vector<ComplexMatrix> elements_;
};

/// L(X) = -i[H,X] + sum_l gamma_l (V_l X V_l^+ - {V_l^+ V_l, X}/2) as a
/// matrix on column-stacked operators.
Superoperator superop_from_generator(const GKSLGenerator& gen);

/// e^{tL} rho0, t >= 0.
DensityMatrix evolve(const GKSLGenerator& gen, const DensityMatrix& rho0,
                     double t);

struct GkslDecomposition {
    GKSLGenerator generator;
    ComplexMatrix coefficient_matrix;  // (d^2-1) x (d^2-1) Hermitian PSD
    double residual;                   // max-norm gap after reconstruction
};

/// Recovers canonical (H, {V_l, gamma_l}) data from a superoperator that
/// annihilates the trace and preserves Hermiticity (both within 1e-8).
///
/// The coefficient matrix is obtained by orthogonal projection of L onto the
/// basis of maps X -> F_i X F_j^+ (these are orthonormal when the F_i are),
/// which solves the d^4-dimensional expansion exactly. H = -Im F from the
/// identity-column coefficients (tr H = 0); diagonalizing the coefficient
/// block gives the rates and jump operators. A negative eigenvalue below
/// -1e-8 means no completely positive semigroup has this generator.
///
/// Gauge freedoms are not fixed beyond tr H = 0 and the eigenvector phase
/// rule: {sqrt(gamma_l) V_l} may be unitarily remixed within degenerate rate
/// clusters, so callers should compare reconstructed superoperators rather
/// than raw jump lists.
GkslDecomposition gksl_decompose(const Superoperator& lmat,
                                 const OperatorBasis& basis);

/// ||e^{(t+s)L} - e^{tL} e^{sL}||_max; vanishes for a true semigroup.
double semigroup_check(const GKSLGenerator& gen, double t, double s);

/// Choi matrix of X -> e^{tL}(X), for complete-positivity checks of the
/// evolution maps.
ComplexMatrix choi_of_exponential(const GKSLGenerator& gen, double t);

}  // namespace oqs
