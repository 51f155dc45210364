// Command-line front end. Exit codes: 0 = success or certification,
// 2 = a mathematical violation was detected (CPTP/PSD failure, tolerance
// breach, rate singularity), 1 = usage, format, or I/O errors.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oqs/channels.hpp"
#include "oqs/gksl.hpp"
#include "oqs/jaynes_cummings.hpp"
#include "oqs/json_io.hpp"

namespace {

using namespace oqs;

cxd parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return cxd(std::stod(text), 0.0);
        return cxd(std::stod(text.substr(0, comma)),
                   std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw FormatError("cannot parse complex number: " + text);
    }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write file: " + path);
    out << content;
}

struct JcOptions {
    double g = 1.0;
    double gamma_width = 2.0;
    double delta = 0.0;
    double omega0 = 10.0;
    std::string c1 = "1";
    std::string c0 = "0";
    double tmax = 5.0;
    int steps = 5000;
    std::string out;
};

JCParams params_from(const JcOptions& o) {
    return JCParams(o.g, o.gamma_width, o.omega0, o.omega0 - o.delta,
                    parse_complex(o.c1), parse_complex(o.c0));
}

void add_common_jc_flags(CLI::App* cmd, JcOptions& o) {
    cmd->add_option("--g", o.g, "coupling weight of the Lorentzian density");
    cmd->add_option("--gamma-width", o.gamma_width, "Lorentzian width");
    cmd->add_option("--delta", o.delta, "detuning omega0 - omega_c");
    cmd->add_option("--omega0", o.omega0, "atomic Bohr frequency");
    cmd->add_option("--c1", o.c1, "initial excited amplitude, re or re,im");
    cmd->add_option("--c0", o.c0, "ground amplitude, re or re,im");
    cmd->add_option("--tmax", o.tmax, "final time");
    cmd->add_option("--steps", o.steps, "number of grid steps");
}

int run_jc_simulate(const JcOptions& o, const std::string& method) {
    JCParams p = params_from(o);
    auto grid = uniform_grid(o.tmax, o.steps);
    JCTrajectory traj =
        method == "rk4" ? integrate_master(p, grid) : exact_trajectory(p, grid);
    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(o.out, csv.str());
    }
    if (traj.aborted) {
        std::cerr << "rate singularity near t = " << format_float(traj.abort_time)
                  << "; trajectory is partial\n";
        return 2;
    }
    return 0;
}

int run_jc_rates(const JcOptions& o) {
    JCParams p = params_from(o);
    auto grid = uniform_grid(o.tmax, o.steps);
    JCTrajectory traj = exact_trajectory(p, grid);
    std::ostringstream csv;
    write_rates_csv(csv, traj.times, traj.gamma, traj.shift);
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(o.out, csv.str());
    }
    if (traj.aborted) {
        std::cerr << "rate singularity near t = " << format_float(traj.abort_time)
                  << "; output is partial\n";
        return 2;
    }
    return 0;
}

int run_jc_oracle(const JcOptions& o, int modes, double halfwidth) {
    JCParams p = params_from(o);
    DiscreteReservoir res = sample_reservoir(p, modes, halfwidth);
    auto grid = uniform_grid(o.tmax, o.steps);
    DiscreteRun run = simulate_discrete(res, p, grid);
    std::vector<cxd> exact(grid.size());
    double worst = 0.0;
    double norm_drift = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        exact[i] = c1_exact(grid[i], p);
        worst = std::max(worst, std::abs(run.c1[i] - exact[i]));
        norm_drift = std::max(
            norm_drift, std::abs(run.excitation_norm[i] - run.excitation_norm[0]));
    }
    std::ostringstream csv;
    write_oracle_csv(csv, grid, run.c1, exact);
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(o.out, csv.str());
        std::cout << "modes: " << modes << '\n'
                  << "max deviation from closed form: " << format_float(worst) << '\n'
                  << "max excitation-norm drift: " << format_float(norm_drift) << '\n';
    }
    return 0;
}

ComplexMatrix choi_from_file(const ChannelFile& file, double* completeness) {
    if (!file.from_kraus) {
        if (completeness) *completeness = -1.0;
        return file.choi;
    }
    if (completeness) {
        *completeness = completeness_residual(file.dim, file.kraus);
    }
    return choi_sum(file.dim, file.kraus);
}

int run_channel_verify(const std::string& path, double tol) {
    ChannelFile file = channel_from_json(load_json_file(path));
    double completeness = -1.0;
    ComplexMatrix choi = choi_from_file(file, &completeness);

    std::cout << "dim: " << file.dim << '\n';
    if (file.from_kraus) {
        std::cout << "source: kraus (" << file.kraus.size() << " operators)\n"
                  << "completeness residual: " << format_float(completeness) << '\n';
    } else {
        std::cout << "source: choi\n";
    }

    bool hermitian = true;
    CptpReport rep{false, false, 0.0, 0.0};
    try {
        rep = is_cptp(choi, file.dim, tol);
    } catch (const HermiticityError&) {
        hermitian = false;
    }
    if (!hermitian) {
        std::cout << "result: violation (choi matrix not Hermitian within tol)\n";
        return 2;
    }
    std::cout << "min choi eigenvalue: " << format_float(rep.min_choi_eig) << '\n'
              << "tp residual: " << format_float(rep.tp_residual) << '\n'
              << "cp: " << yes_no(rep.cp) << '\n'
              << "tp: " << yes_no(rep.tp) << '\n';
    const bool complete_ok = !file.from_kraus || completeness <= tol;
    if (rep.cp && rep.tp && complete_ok) {
        std::cout << "result: certified CPTP (tol " << format_float(tol) << ")\n";
        return 0;
    }
    std::cout << "result: violation\n";
    return 2;
}

int run_channel_kraus(const std::string& path, double trunc_tol,
                      const std::string& out) {
    ChannelFile file = channel_from_json(load_json_file(path));
    QuantumChannel phi(file.dim, choi_from_file(file, nullptr));
    KrausSet kraus = kraus_from_choi(phi, trunc_tol);
    const std::string text = kraus_to_json(kraus).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
        std::cout << "kraus rank: " << kraus.operators().size() << '\n';
    }
    return 0;
}

int run_channel_dilate(const std::string& path, const std::string& out) {
    ChannelFile file = channel_from_json(load_json_file(path));
    QuantumChannel phi(file.dim, choi_from_file(file, nullptr));
    Dilation dil = dilate(phi);
    save_json_file(out, dilation_to_json(file.dim, dil));
    const double unitarity = max_norm(
        ComplexMatrix(dil.unitary.adjoint() * dil.unitary) -
        identity(dil.unitary.rows()));
    std::cout << "dimR: " << dil.dim_r << '\n'
              << "unitarity residual: " << format_float(unitarity) << '\n';
    return 0;
}

int run_channel_ppt(const std::string& path, const std::string& dims, double tol) {
    const auto comma = dims.find(',');
    if (comma == std::string::npos) {
        throw FormatError("--dims expects dA,dB");
    }
    Eigen::Index da = 0, db = 0;
    try {
        da = std::stol(dims.substr(0, comma));
        db = std::stol(dims.substr(comma + 1));
    } catch (const std::exception&) {
        throw FormatError("--dims expects integers dA,dB");
    }
    DensityMatrix rho(matrix_from_json(load_json_file(path)));
    const double min_eig = ppt_min_eig(rho, da, db);
    std::cout << "min eigenvalue of the partial transpose: "
              << format_float(min_eig) << '\n';
    if (min_eig < -tol) {
        std::cout << "result: entangled (positivity violated)\n";
        return 2;
    }
    std::cout << "result: no violation (PPT)\n";
    return 0;
}

int run_channel_selftest(std::uint64_t seed, int count, int dim, double tol) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::Index> dims;
    if (dim == 0) {
        dims = {2, 3};
    } else {
        dims = {dim};
    }
    int failures = 0;
    double worst_roundtrip = 0.0, worst_reduction = 0.0;
    for (Eigen::Index d : dims) {
        for (int i = 0; i < count; ++i) {
            QuantumChannel phi = random_cptp(d, rng);
            KrausSet kraus = kraus_from_choi(phi);
            const double rt = max_norm(choi_from_kraus(kraus).choi() - phi.choi());
            worst_roundtrip = std::max(worst_roundtrip, rt);
            if (rt > 1e-10 || kraus.completeness_residual() > 1e-9 ||
                static_cast<Eigen::Index>(kraus.operators().size()) > d * d) {
                ++failures;
                continue;
            }
            Dilation dil = dilate(phi);
            bool ok = dil.dim_r <= d * d;
            for (int s = 0; s < 5 && ok; ++s) {
                DensityMatrix rho = random_density(d, rng);
                const double dev = max_norm(apply_dilation(dil, rho).matrix() -
                                            apply(phi, rho).matrix());
                worst_reduction = std::max(worst_reduction, dev);
                ok = dev <= tol;
            }
            if (!ok) ++failures;
        }
    }
    std::cout << "channels checked: " << count * static_cast<int>(dims.size()) << '\n'
              << "worst round-trip residual: " << format_float(worst_roundtrip) << '\n'
              << "worst dilation residual: " << format_float(worst_reduction) << '\n'
              << "failures: " << failures << '\n';
    return failures == 0 ? 0 : 2;
}

int run_gksl_decompose(const std::string& path, const std::string& out) {
    Superoperator lmat = superop_from_json(load_json_file(path));
    OperatorBasis basis = OperatorBasis::gell_mann(lmat.dim());
    try {
        GkslDecomposition dec = gksl_decompose(lmat, basis);
        std::cout << "dim: " << lmat.dim() << '\n';
        std::cout << "rates:";
        for (const auto& j : dec.generator.jumps()) {
            std::cout << ' ' << format_float(j.rate);
        }
        std::cout << '\n'
                  << "residual: " << format_float(dec.residual) << '\n'
                  << "result: valid generator\n";
        if (!out.empty()) save_json_file(out, generator_to_json(dec.generator));
        return 0;
    } catch (const NotCompletelyPositiveGenerator& e) {
        std::cout << "min coefficient eigenvalue: "
                  << format_float(e.min_eigenvalue) << '\n'
                  << "result: violation (not a completely positive semigroup generator)\n";
        return 2;
    } catch (const NotTracePreserving& e) {
        std::cout << "result: violation (" << e.what() << ")\n";
        return 2;
    }
}

int run_gksl_evolve(const std::string& path, const std::string& rho0_path,
                    double tmax, int steps, const std::string& out) {
    GKSLGenerator gen = generator_from_json(load_json_file(path));
    DensityMatrix rho0(matrix_from_json(load_json_file(rho0_path)));
    if (rho0.dim() != gen.dim()) {
        throw FormatError("initial state dimension does not match the generator");
    }
    auto grid = uniform_grid(tmax, steps);
    const double h = grid[1] - grid[0];
    ComplexMatrix step = expm(
        ComplexMatrix(h * superop_from_generator(gen).matrix()));

    std::vector<DensityMatrix> states;
    states.reserve(grid.size());
    states.push_back(rho0);
    ComplexVector v = vec(rho0.matrix());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        v = step * v;
        states.push_back(
            DensityMatrix::relaxed(unvec(v, gen.dim(), gen.dim())));
    }
    std::ostringstream csv;
    write_evolution_csv(csv, grid, states);
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(out, csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open quantum systems toolkit: dissipative two-level dynamics, "
                 "quantum channels, semigroup generators"};
    app.require_subcommand(1);
    int rc = 0;

    // ---- jc -------------------------------------------------------------
    auto* jc = app.add_subcommand("jc", "dissipative two-level atom dynamics");
    jc->require_subcommand(1);

    JcOptions sim_opts;
    std::string sim_method = "exact";
    auto* sim = jc->add_subcommand("simulate", "atom trajectory as CSV");
    add_common_jc_flags(sim, sim_opts);
    sim->add_option("--out", sim_opts.out, "output CSV path (stdout if omitted)");
    sim->add_option("--method", sim_method, "exact or rk4")
        ->check(CLI::IsMember({"exact", "rk4"}));
    sim->callback([&]() { rc = run_jc_simulate(sim_opts, sim_method); });

    JcOptions rates_opts;
    auto* rates_cmd = jc->add_subcommand("rates", "decay rate and shift as CSV");
    add_common_jc_flags(rates_cmd, rates_opts);
    rates_cmd->add_option("--out", rates_opts.out, "output CSV path (stdout if omitted)");
    rates_cmd->callback([&]() { rc = run_jc_rates(rates_opts); });

    JcOptions oracle_opts;
    int oracle_modes = 2000;
    double oracle_halfwidth = 40.0;
    auto* oracle_cmd = jc->add_subcommand(
        "oracle", "discrete-reservoir integration against the closed form");
    add_common_jc_flags(oracle_cmd, oracle_opts);
    oracle_cmd->add_option("--modes", oracle_modes, "number of reservoir modes");
    oracle_cmd->add_option("--halfwidth-gammas", oracle_halfwidth,
                           "window halfwidth in units of the Lorentzian width");
    oracle_cmd->add_option("--out", oracle_opts.out, "output CSV path (stdout if omitted)");
    oracle_cmd->callback(
        [&]() { rc = run_jc_oracle(oracle_opts, oracle_modes, oracle_halfwidth); });

    // ---- channel --------------------------------------------------------
    auto* channel = app.add_subcommand("channel", "quantum channel toolbox");
    channel->require_subcommand(1);

    std::string verify_path;
    double verify_tol = 1e-9;
    auto* verify = channel->add_subcommand("verify", "check CPTP conditions");
    verify->add_option("file", verify_path, "channel JSON file")->required();
    verify->add_option("--tol", verify_tol, "certification tolerance");
    verify->callback([&]() { rc = run_channel_verify(verify_path, verify_tol); });

    std::string kraus_path, kraus_out;
    double kraus_tol = 1e-12;
    auto* kraus_cmd = channel->add_subcommand("kraus", "Kraus operators from the choi spectrum");
    kraus_cmd->add_option("file", kraus_path, "channel JSON file")->required();
    kraus_cmd->add_option("--tol", kraus_tol, "relative truncation tolerance");
    kraus_cmd->add_option("--out", kraus_out, "output JSON path (stdout if omitted)");
    kraus_cmd->callback([&]() { rc = run_channel_kraus(kraus_path, kraus_tol, kraus_out); });

    std::string dilate_path, dilate_out;
    auto* dilate_cmd = channel->add_subcommand(
        "dilate", "unitary system-ancilla representation");
    dilate_cmd->add_option("file", dilate_path, "channel JSON file")->required();
    dilate_cmd->add_option("--out", dilate_out, "output JSON path")->required();
    dilate_cmd->callback([&]() { rc = run_channel_dilate(dilate_path, dilate_out); });

    std::string ppt_path, ppt_dims;
    double ppt_tol = 1e-12;
    auto* ppt_cmd = channel->add_subcommand("ppt", "partial-transpose entanglement test");
    ppt_cmd->add_option("file", ppt_path, "density matrix JSON file")->required();
    ppt_cmd->add_option("--dims", ppt_dims, "factor dimensions dA,dB")->required();
    ppt_cmd->add_option("--tol", ppt_tol, "negativity tolerance");
    ppt_cmd->callback([&]() { rc = run_channel_ppt(ppt_path, ppt_dims, ppt_tol); });

    std::uint64_t selftest_seed = 12345;
    int selftest_count = 20;
    int selftest_dim = 0;
    double selftest_tol = 1e-9;
    auto* selftest = channel->add_subcommand(
        "selftest", "random-channel round-trip and dilation checks");
    selftest->add_option("--seed", selftest_seed, "RNG seed");
    selftest->add_option("--count", selftest_count, "channels per dimension");
    selftest->add_option("--dim", selftest_dim, "dimension (0 = both 2 and 3)");
    selftest->add_option("--tol", selftest_tol, "dilation tolerance");
    selftest->callback([&]() {
        rc = run_channel_selftest(selftest_seed, selftest_count, selftest_dim,
                                  selftest_tol);
    });

    // ---- gksl -----------------------------------------------------------
    auto* gksl = app.add_subcommand("gksl", "semigroup generators");
    gksl->require_subcommand(1);

    std::string dec_path, dec_out;
    auto* dec = gksl->add_subcommand("decompose",
                                     "canonical form of a superoperator");
    dec->add_option("file", dec_path, "superoperator JSON file")->required();
    dec->add_option("--out", dec_out, "write the recovered generator JSON here");
    dec->callback([&]() { rc = run_gksl_decompose(dec_path, dec_out); });

    std::string evolve_path, evolve_rho0, evolve_out;
    double evolve_tmax = 1.0;
    int evolve_steps = 100;
    auto* evo = gksl->add_subcommand("evolve", "semigroup evolution as CSV");
    evo->add_option("file", evolve_path, "generator JSON file")->required();
    evo->add_option("--rho0", evolve_rho0, "initial density matrix JSON")->required();
    evo->add_option("--tmax", evolve_tmax, "final time");
    evo->add_option("--steps", evolve_steps, "number of grid steps");
    evo->add_option("--out", evolve_out, "output CSV path (stdout if omitted)");
    evo->callback([&]() {
        rc = run_gksl_evolve(evolve_path, evolve_rho0, evolve_tmax, evolve_steps,
                             evolve_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const GridError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        // remaining library errors are detected mathematical violations
        std::cerr << "violation: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
