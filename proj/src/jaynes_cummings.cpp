#include "oqs/jaynes_cummings.hpp"

#include <algorithm>
#include <cmath>

namespace oqs {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

struct ClosedForm {
    cxd q;  // Gamma - i Delta
    cxd r;  // sqrt(q^2 - 4g/sqrt(2 pi)), principal branch
};

ClosedForm closed_form(const JCParams& p) {
    const cxd q(p.gamma(), -p.delta());
    return ClosedForm{q, std::sqrt(q * q - 4.0 * p.g() / kSqrt2Pi)};
}

void check_uniform(const std::vector<double>& grid) {
    if (grid.empty()) throw GridError("time grid is empty");
    if (std::abs(grid.front()) > 1e-12) {
        throw GridError("time grid must start at zero");
    }
    if (grid.size() == 1) return;
    const double h = grid[1] - grid[0];
    if (h <= 0.0) throw GridError("time grid must be strictly increasing");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double step = grid[i + 1] - grid[i];
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw GridError("time grid is not uniform");
        }
    }
}

// Ordered basis {|1>, |0>}, excited state first, matching the 2x2 matrices
// used throughout this module.
ComplexMatrix excited_projector() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
}

ComplexMatrix lower_op() {  // |0><1|
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix raise_op() {  // |1><0|
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix master_rhs_raw(const ComplexMatrix& rho, double gam, double shift,
                             const JCParams& p, Picture picture) {
    static const ComplexMatrix n = excited_projector();
    static const ComplexMatrix sm = lower_op();
    static const ComplexMatrix sp = raise_op();
    ComplexMatrix comm = n * rho - rho * n;
    ComplexMatrix diss = sm * rho * sp - 0.5 * (n * rho + rho * n);
    ComplexMatrix out = cxd(0.0, -0.5 * shift) * comm + gam * diss;
    if (picture == Picture::Schroedinger) {
        out += cxd(0.0, -p.omega0()) * comm;
    }
    return out;
}

// --- adaptive Gauss-Kronrod 7/15 ---------------------------------------

const double kK15Nodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126};
const double kK15Weights[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292};
const double kG7Weights[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697};

template <typename F>
cxd gk15(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    cxd k15 = kK15Weights[0] * f(c);
    cxd g7 = kG7Weights[0] * f(c);
    for (int i = 1; i < 8; ++i) {
        const cxd lo = f(c - hw * kK15Nodes[i]);
        const cxd hi = f(c + hw * kK15Nodes[i]);
        k15 += kK15Weights[i] * (lo + hi);
        if (i % 2 == 0) g7 += kG7Weights[i / 2] * (lo + hi);
    }
    err = std::abs(hw * (k15 - g7));
    return hw * k15;
}

template <typename F>
cxd adaptive_gk15(const F& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    const cxd coarse = gk15(f, a, b, err);
    if (err <= tol || depth >= 25) return coarse;
    const double c = 0.5 * (a + b);
    return adaptive_gk15(f, a, c, 0.5 * tol, depth + 1) +
           adaptive_gk15(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace

JCParams::JCParams(double g, double gamma, double omega0, double omega_c,
                   cxd c1_0, cxd c0)
    : g_(g), gamma_(gamma), omega0_(omega0), omega_c_(omega_c),
      delta_(omega0 - omega_c), c1_0_(c1_0), c0_(c0) {
    if (!(g_ > 0.0)) throw DomainError("JCParams: coupling weight g must be positive");
    if (!(gamma_ > 0.0)) throw DomainError("JCParams: Lorentzian width must be positive");
    if (!(omega0_ > 0.0)) throw DomainError("JCParams: Bohr frequency must be positive");
    if (!(omega_c_ > 0.0)) throw DomainError("JCParams: cavity frequency must be positive");
    if (std::norm(c0_) + std::norm(c1_0_) > 1.0 + 1e-12) {
        throw NormalizationError("JCParams: |c0|^2 + |c1(0)|^2 exceeds 1");
    }
}

double lorentzian_j(double omega, const JCParams& p) {
    const double u = omega - p.omega_c();
    return (p.g() / kPi) * p.gamma() / (u * u + p.gamma() * p.gamma());
}

cxd correlation_f(double tau, const JCParams& p) {
    if (tau < 0.0) throw DomainError("correlation_f: negative time lag");
    return p.g() / kSqrt2Pi * std::exp(-cxd(p.gamma(), -p.delta()) * tau);
}

cxd correlation_f_quadrature(double tau, const JCParams& p) {
    if (tau < 0.0) throw DomainError("correlation_f_quadrature: negative time lag");
    const double gam = p.gamma();
    const double coeff = p.g() * gam / (kPi * kSqrt2Pi);

    // Centered integral I = int_R e^{-iu tau} / (u^2 + Gamma^2) du; the
    // window misses an oscillatory tail handled analytically below.
    double w = 60.0 * gam;
    cxd tail(0.0, 0.0);
    if (tau == 0.0) {
        tail = 2.0 * (0.5 * kPi - std::atan(w / gam)) / gam;
    } else {
        // Two integration-by-parts terms leave a remainder < 4/(tau^2 W^3).
        const double target = 1e-10 / coeff;
        w = std::max(w, std::cbrt(4.0 / (tau * tau * target)));
        const double denom = w * w + gam * gam;
        const double r0 = 1.0 / denom;
        const double r1 = -2.0 * w / (denom * denom);
        const cxd itau(0.0, tau);
        const cxd upper = std::exp(-itau * w) * (r0 / itau + r1 / (itau * itau));
        tail = 2.0 * upper.real();
    }

    auto integrand = [tau, gam](double u) {
        return std::exp(cxd(0.0, -u * tau)) / (u * u + gam * gam);
    };
    const int panels = std::max(
        16, std::min(200000, static_cast<int>(std::ceil(2.0 * w * tau / kPi))));
    const double panel_tol = std::max(1e-15, 1e-11 / panels);
    cxd integral(0.0, 0.0);
    for (int k = 0; k < panels; ++k) {
        const double a = -w + 2.0 * w * k / panels;
        const double b = -w + 2.0 * w * (k + 1) / panels;
        integral += adaptive_gk15(integrand, a, b, panel_tol, 0);
    }
    return coeff * std::exp(cxd(0.0, p.delta() * tau)) * (integral + tail);
}

cxd c1_exact(double t, const JCParams& p) {
    if (t < 0.0) throw DomainError("c1_exact: negative time");
    const ClosedForm cf = closed_form(p);
    const cxd x = 0.5 * cf.r * t;
    if (std::abs(x) < 1e-4) {
        const cxd x2 = x * x;
        const cxd ch = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
        const cxd shc = 1.0 + x2 / 6.0 + x2 * x2 / 120.0;  // sinh(x)/x
        return p.c1_0() * std::exp(-0.5 * cf.q * t) * (ch + 0.5 * cf.q * t * shc);
    }
    if (x.real() > 20.0) {
        // cosh/sinh overflow past Re(Rt/2) ~ 700; factor out e^{x}.
        const cxd em = std::exp(-2.0 * x);
        const cxd ratio = cf.q / cf.r;
        return p.c1_0() * std::exp(0.5 * (cf.r - cf.q) * t) * 0.5 *
               ((1.0 + ratio) + (1.0 - ratio) * em);
    }
    return p.c1_0() * std::exp(-0.5 * cf.q * t) *
           (std::cosh(x) + (cf.q / cf.r) * std::sinh(x));
}

cxd c1_derivative(double t, const JCParams& p) {
    if (t < 0.0) throw DomainError("c1_derivative: negative time");
    const ClosedForm cf = closed_form(p);
    const cxd x = 0.5 * cf.r * t;
    const double wgt = 2.0 * p.g() / kSqrt2Pi;
    if (std::abs(x) < 1e-4) {
        const cxd x2 = x * x;
        const cxd shc = 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
        return -wgt * p.c1_0() * std::exp(-0.5 * cf.q * t) * 0.5 * t * shc;
    }
    if (x.real() > 20.0) {
        const cxd em = std::exp(-2.0 * x);
        return -wgt * p.c1_0() * std::exp(0.5 * (cf.r - cf.q) * t) * (1.0 - em) /
               (2.0 * cf.r);
    }
    return -wgt * p.c1_0() * std::exp(-0.5 * cf.q * t) * std::sinh(x) / cf.r;
}

std::vector<cxd> c1_volterra(const std::vector<double>& grid, const JCParams& p,
                             const std::function<cxd(double)>& kernel) {
    check_uniform(grid);
    const std::size_t n = grid.size();
    std::vector<cxd> y(n);
    y[0] = p.c1_0();
    if (n == 1) return y;
    const double h = grid[1] - grid[0];

    std::vector<cxd> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = kernel(j * h);

    // Trapezoidal memory sum over the history y[0..m], endpoint value ym.
    auto memory = [&](std::size_t m, const cxd& ym) {
        if (m == 0) return cxd(0.0, 0.0);
        cxd acc = 0.5 * (f[m] * y[0] + f[0] * ym);
        for (std::size_t j = 1; j < m; ++j) acc += f[m - j] * y[j];
        return h * acc;
    };

    for (std::size_t m = 0; m + 1 < n; ++m) {
        const cxd k1 = -memory(m, y[m]);
        const cxd predictor = y[m] + h * k1;
        const cxd k2 = -memory(m + 1, predictor);
        y[m + 1] = y[m] + 0.5 * h * (k1 + k2);
    }
    return y;
}

std::optional<RateSample> rates(double t, const JCParams& p) {
    if (t < 0.0) throw DomainError("rates: negative time");
    const cxd c = c1_exact(t, p);
    if (std::abs(c) < 1e-12) return std::nullopt;
    const cxd ratio = c1_derivative(t, p) / c;
    // + 0.0 normalizes negative zero out of the reports
    return RateSample{-2.0 * ratio.real() + 0.0, -2.0 * ratio.imag() + 0.0};
}

double gamma_resonant(double t, const JCParams& p) {
    if (t < 0.0) throw DomainError("gamma_resonant: negative time");
    if (std::abs(p.delta()) > 1e-12 * std::max(1.0, p.omega0())) {
        throw RegimeError("gamma_resonant: detuning must vanish");
    }
    const double disc = p.gamma() * p.gamma() - 4.0 * p.g() / kSqrt2Pi;
    if (disc <= 0.0) {
        throw RegimeError("gamma_resonant: requires Gamma^2 > 4g/sqrt(2 pi)");
    }
    const double r0 = std::sqrt(disc);
    // tanh form stays finite for all t.
    const double th = std::tanh(0.5 * r0 * t);
    return (4.0 * p.g() / kSqrt2Pi) * th / (r0 + p.gamma() * th);
}

DensityMatrix rho_interaction(double t, const JCParams& p) {
    const cxd c1 = c1_exact(t, p);
    const cxd c0 = p.c0();
    ComplexMatrix m(2, 2);
    m(0, 0) = std::norm(c1);
    m(0, 1) = std::conj(c0) * c1;
    m(1, 0) = c0 * std::conj(c1);
    m(1, 1) = 1.0 - std::norm(c1);
    return DensityMatrix(std::move(m));
}

ComplexMatrix master_rhs(const DensityMatrix& rho, double t, const JCParams& p,
                         Picture picture) {
    if (rho.dim() != 2) throw DimensionError("master_rhs: state is not 2x2");
    const auto r = rates(t, p);
    if (!r) {
        throw AmplitudeZeroError("master_rhs: rates diverge at an amplitude zero");
    }
    return master_rhs_raw(rho.matrix(), r->gamma, r->shift, p, picture);
}

JCTrajectory exact_trajectory(const JCParams& p, const std::vector<double>& grid) {
    JCTrajectory traj;
    for (double t : grid) {
        const auto r = rates(t, p);
        if (!r) {
            traj.aborted = true;
            traj.abort_time = t;
            break;
        }
        traj.times.push_back(t);
        traj.c1.push_back(c1_exact(t, p));
        traj.gamma.push_back(r->gamma);
        traj.shift.push_back(r->shift);
        traj.rho.push_back(rho_interaction(t, p));
    }
    return traj;
}

JCTrajectory integrate_master(const JCParams& p, const std::vector<double>& grid) {
    if (grid.empty()) throw GridError("integrate_master: empty grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i + 1] <= grid[i]) {
            throw GridError("integrate_master: grid must be strictly increasing");
        }
    }

    JCTrajectory traj;
    ComplexMatrix rho = rho_interaction(grid[0], p).matrix();

    auto record = [&](double t, const ComplexMatrix& m) {
        const auto r = rates(t, p);
        if (!r) {
            traj.aborted = true;
            traj.abort_time = t;
            return false;
        }
        traj.times.push_back(t);
        traj.c1.push_back(c1_exact(t, p));
        traj.gamma.push_back(r->gamma);
        traj.shift.push_back(r->shift);
        traj.rho.push_back(DensityMatrix::relaxed(m));
        return true;
    };

    if (!record(grid[0], rho)) return traj;

    for (std::size_t n = 0; n + 1 < grid.size(); ++n) {
        const double t0 = grid[n];
        const double h = grid[n + 1] - grid[n];
        const auto r0 = rates(t0, p);
        const auto rm = rates(t0 + 0.5 * h, p);
        const auto r1 = rates(t0 + h, p);
        if (!r0 || !rm || !r1) {
            traj.aborted = true;
            traj.abort_time = !r0 ? t0 : (!rm ? t0 + 0.5 * h : t0 + h);
            return traj;
        }
        const ComplexMatrix k1 = master_rhs_raw(rho, r0->gamma, r0->shift, p,
                                                Picture::Interaction);
        const ComplexMatrix k2 = master_rhs_raw(
            ComplexMatrix(rho + 0.5 * h * k1), rm->gamma, rm->shift, p,
            Picture::Interaction);
        const ComplexMatrix k3 = master_rhs_raw(
            ComplexMatrix(rho + 0.5 * h * k2), rm->gamma, rm->shift, p,
            Picture::Interaction);
        const ComplexMatrix k4 = master_rhs_raw(ComplexMatrix(rho + h * k3),
                                                r1->gamma, r1->shift, p,
                                                Picture::Interaction);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!record(grid[n + 1], rho)) return traj;
    }
    return traj;
}

DiscreteReservoir sample_reservoir(const JCParams& p, int n_modes,
                                   double halfwidth_in_widths) {
    if (n_modes < 2) throw DomainError("sample_reservoir: need at least two modes");
    if (!(halfwidth_in_widths > 0.0)) {
        throw DomainError("sample_reservoir: window halfwidth must be positive");
    }
    const double w = halfwidth_in_widths * p.gamma();
    const double spacing = 2.0 * w / (n_modes - 1);

    DiscreteReservoir res;
    res.window_halfwidth = w;
    res.spacing = spacing;
    res.omegas.resize(n_modes);
    res.couplings.resize(n_modes);
    double total = 0.0;
    for (int k = 0; k < n_modes; ++k) {
        const double omega = p.omega_c() - w + k * spacing;
        res.omegas[k] = omega;
        const double weight = lorentzian_j(omega, p) * spacing / kSqrt2Pi;
        res.couplings[k] = std::sqrt(weight);
        total += weight;
    }

    // |sum g_k^2 - C(0)| <= Lorentzian tail + endpoint excess + trapezoid
    // discretization (Euler-Maclaurin with the total variation of J').
    const double gam = p.gamma();
    const double tail = (2.0 * p.g() / kPi) * std::atan(gam / w) / kSqrt2Pi;
    const double endpoints = spacing *
        (lorentzian_j(res.omegas.front(), p) + lorentzian_j(res.omegas.back(), p)) /
        (2.0 * kSqrt2Pi);
    const double max_dj = (p.g() / kPi) * 3.0 * std::sqrt(3.0) / (8.0 * gam * gam);
    const double discretization = spacing * spacing * 4.0 * max_dj / (12.0 * kSqrt2Pi);
    res.c0_error_bound = tail + endpoints + discretization;

    const double c0 = p.g() / kSqrt2Pi;
    if (std::abs(total - c0) > res.c0_error_bound) {
        throw Error("sample_reservoir: discretized weight misses C(0) beyond the error bound");
    }
    return res;
}

cxd discrete_correlation(const DiscreteReservoir& res, double tau) {
    cxd acc(0.0, 0.0);
    for (std::size_t k = 0; k < res.omegas.size(); ++k) {
        acc += res.couplings[k] * res.couplings[k] *
               std::exp(cxd(0.0, -res.omegas[k] * tau));
    }
    return acc;
}

DiscreteRun simulate_discrete(const DiscreteReservoir& res, const JCParams& p,
                              const std::vector<double>& grid) {
    check_uniform(grid);
    const std::size_t n_modes = res.omegas.size();
    const std::size_t steps = grid.size() - 1;
    const double h = steps > 0 ? grid[1] - grid[0] : 0.0;

    std::vector<double> detuning(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        detuning[k] = p.omega0() - res.omegas[k];
    }

    // State layout: y[0] = c1, y[1 + k] = d_k.
    std::vector<cxd> y(n_modes + 1, cxd(0.0, 0.0));
    y[0] = p.c1_0();

    auto phases_at = [&](double t, std::vector<cxd>& out) {
        for (std::size_t k = 0; k < n_modes; ++k) {
            out[k] = std::polar(1.0, detuning[k] * t);
        }
    };
    auto rhs = [&](const std::vector<cxd>& state, const std::vector<cxd>& phases,
                   std::vector<cxd>& dydt) {
        cxd s(0.0, 0.0);
        const cxd minus_i(0.0, -1.0);
        for (std::size_t k = 0; k < n_modes; ++k) {
            s += res.couplings[k] * phases[k] * state[1 + k];
        }
        dydt[0] = minus_i * s;
        for (std::size_t k = 0; k < n_modes; ++k) {
            dydt[1 + k] = minus_i * res.couplings[k] * std::conj(phases[k]) * state[0];
        }
    };
    auto norm_sq = [&](const std::vector<cxd>& state) {
        double acc = 0.0;
        for (const cxd& z : state) acc += std::norm(z);
        return acc;
    };

    DiscreteRun run;
    run.c1.reserve(grid.size());
    run.excitation_norm.reserve(grid.size());
    run.c1.push_back(y[0]);
    run.excitation_norm.push_back(norm_sq(y));

    std::vector<cxd> ph_start(n_modes), ph_mid(n_modes), ph_end(n_modes);
    std::vector<cxd> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
        stage(y.size());
    phases_at(grid.empty() ? 0.0 : grid[0], ph_start);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t0 = grid[step];
        phases_at(t0 + 0.5 * h, ph_mid);
        phases_at(t0 + h, ph_end);

        rhs(y, ph_start, k1);
        for (std::size_t i = 0; i < y.size(); ++i) stage[i] = y[i] + 0.5 * h * k1[i];
        rhs(stage, ph_mid, k2);
        for (std::size_t i = 0; i < y.size(); ++i) stage[i] = y[i] + 0.5 * h * k2[i];
        rhs(stage, ph_mid, k3);
        for (std::size_t i = 0; i < y.size(); ++i) stage[i] = y[i] + h * k3[i];
        rhs(stage, ph_end, k4);
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        ph_start.swap(ph_end);

        run.c1.push_back(y[0]);
        run.excitation_norm.push_back(norm_sq(y));
    }
    run.final_mode_amplitudes.assign(y.begin() + 1, y.end());
    return run;
}

std::vector<double> uniform_grid(double t_max, int steps) {
    if (steps < 1 || !(t_max > 0.0)) {
        throw GridError("uniform_grid: need t_max > 0 and at least one step");
    }
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = t_max * i / steps;
    return grid;
}

}  // namespace oqs
