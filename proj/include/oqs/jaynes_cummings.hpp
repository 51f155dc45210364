#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "oqs/states.hpp"

namespace oqs {

/// Two-level atom coupled to a Lorentzian reservoir. Frequencies carry
/// inverse-time units; the coupling weight g carries frequency^2 so the
/// reservoir correlation function does too. Amplitudes refer to the
/// single-excitation sector: c1 multiplies the excited atom, c0 the ground
/// atom with empty reservoir, and |c0|^2 + |c1|^2 <= 1 (reservoir modes
/// carry the remainder).
class JCParams {
  public:
    JCParams(double g, double gamma, double omega0, double omega_c, cxd c1_0,
             cxd c0 = cxd(0.0, 0.0));

    double g() const { return g_; }
    double gamma() const { return gamma_; }
    double omega0() const { return omega0_; }
    double omega_c() const { return omega_c_; }
    double delta() const { return delta_; }  // omega0 - omega_c, fixed once
    cxd c1_0() const { return c1_0_; }
    cxd c0() const { return c0_; }

  private:
    double g_, gamma_, omega0_, omega_c_, delta_;
    cxd c1_0_, c0_;
};

/// Lorentzian spectral density J(omega) = (g/pi) Gamma/((omega-omega_c)^2 + Gamma^2).
double lorentzian_j(double omega, const JCParams& p);

/// Reservoir correlation kernel, closed form (g/sqrt(2 pi)) e^{-(Gamma - i Delta) tau}.
cxd correlation_f(double tau, const JCParams& p);

/// Same kernel by direct numerical Fourier transform of the spectral
/// density; independent route agreeing with the closed form to ~1e-8.
cxd correlation_f_quadrature(double tau, const JCParams& p);

/// Excited-state amplitude c1(0) e^{-qt/2}[cosh(Rt/2) + (q/R) sinh(Rt/2)]
/// with q = Gamma - i Delta and R = sqrt(q^2 - 4g/sqrt(2 pi)) on the
/// principal branch. Series expansion through (Rt)^4 below |Rt| = 1e-4,
/// where the direct formula cancels catastrophically.
cxd c1_exact(double t, const JCParams& p);

/// Analytic dc1/dt = -(2g/sqrt(2 pi)) c1(0) e^{-qt/2} sinh(Rt/2)/R.
cxd c1_derivative(double t, const JCParams& p);

/// Solves dc1/dt = -int_0^t kernel(t-s) c1(s) ds on a uniform grid starting
/// at zero: trapezoidal memory quadrature with a Heun predictor-corrector
/// step, globally second order at O(n^2) total cost.
std::vector<cxd> c1_volterra(const std::vector<double>& grid, const JCParams& p,
                             const std::function<cxd(double)>& kernel);

/// Instantaneous decay rate gamma(t) and frequency shift S(t), defined by
/// dc1/dt / c1 = -gamma/2 - i S/2.
struct RateSample {
    double gamma;
    double shift;
};

/// Empty when |c1(t)| < 1e-12: the rates genuinely diverge at amplitude
/// zeros (underdamped regimes), so callers must handle the flag.
std::optional<RateSample> rates(double t, const JCParams& p);

/// Closed-form gamma(t) in the overdamped resonant regime (Delta = 0,
/// Gamma^2 > 4g/sqrt(2 pi)); RegimeError outside it.
double gamma_resonant(double t, const JCParams& p);

/// Atom state in the interaction picture, ordered basis {|1>, |0>}:
/// [[|c1|^2, conj(c0) c1], [c0 conj(c1), 1 - |c1|^2]].
DensityMatrix rho_interaction(double t, const JCParams& p);

enum class Picture { Interaction, Schroedinger };

/// Right-hand side of the exact time-local master equation,
/// -(i/2) S(t) [n, rho] + gamma(t) (sm rho sp - {n, rho}/2) with
/// n = |1><1|; the Schroedinger picture adds -i[omega0 n, rho].
ComplexMatrix master_rhs(const DensityMatrix& rho, double t, const JCParams& p,
                         Picture picture = Picture::Interaction);

/// Time-gridded record of the atom dynamics (interaction picture).
struct JCTrajectory {
    std::vector<double> times;
    std::vector<cxd> c1;
    std::vector<double> gamma;
    std::vector<double> shift;
    std::vector<DensityMatrix> rho;
    bool aborted = false;       // hit a rate singularity; record is partial
    double abort_time = 0.0;
};

/// Closed-form trajectory: amplitudes, rates, and the matrix built from them.
JCTrajectory exact_trajectory(const JCParams& p, const std::vector<double>& grid);

/// Classical RK4 on the time-dependent master equation, rates sampled
/// analytically at stage times. Aborts with a partial trajectory when a
/// rate singularity is encountered.
JCTrajectory integrate_master(const JCParams& p, const std::vector<double>& grid);

/// Uniformly sampled reservoir modes on [omega_c - W, omega_c + W] with
/// |g_k|^2 = J(omega_k) dOmega / sqrt(2 pi), so sum_k |g_k|^2 e^{-i omega_k tau}
/// is the Riemann sum of the continuum correlation function.
struct DiscreteReservoir {
    std::vector<double> omegas;
    std::vector<double> couplings;  // g_k, real positive
    double window_halfwidth;
    double spacing;
    double c0_error_bound;  // bound on |sum g_k^2 - C(0)| from tail + discretization
};

DiscreteReservoir sample_reservoir(const JCParams& p, int n_modes,
                                   double halfwidth_in_widths);

/// sum_k g_k^2 e^{-i omega_k tau}, the discrete stand-in for C(tau).
cxd discrete_correlation(const DiscreteReservoir& res, double tau);

struct DiscreteRun {
    std::vector<cxd> c1;                    // per grid point
    std::vector<double> excitation_norm;    // |c1|^2 + sum |d_k|^2 per grid point
    std::vector<cxd> final_mode_amplitudes; // d_k at the final time
};

/// RK4 on the coupled amplitude system
///   i dc1/dt = sum_k g_k e^{i(omega0-omega_k)t} d_k,
///   i dd_k/dt = g_k e^{-i(omega0-omega_k)t} c1,
/// from d_k(0) = 0; unitary, so the excitation norm is conserved.
DiscreteRun simulate_discrete(const DiscreteReservoir& res, const JCParams& p,
                              const std::vector<double>& grid);

/// steps+1 equally spaced points covering [0, t_max].
std::vector<double> uniform_grid(double t_max, int steps);

}  // namespace oqs
