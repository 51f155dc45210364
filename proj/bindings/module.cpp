// Python bindings. Matrices cross the boundary as numpy complex arrays;
// validated types (density matrices, channels) are reconstructed on entry
// so python callers get the same invariant checks as C++ callers.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oqs/channels.hpp"
#include "oqs/gksl.hpp"
#include "oqs/jaynes_cummings.hpp"

namespace py = pybind11;
using namespace oqs;

namespace {

Keep parse_keep(const std::string& keep) {
    if (keep == "A" || keep == "a") return Keep::A;
    if (keep == "B" || keep == "b") return Keep::B;
    throw DomainError("keep must be 'A' or 'B'");
}

Picture parse_picture(const std::string& picture) {
    if (picture == "interaction") return Picture::Interaction;
    if (picture == "schroedinger") return Picture::Schroedinger;
    throw DomainError("picture must be 'interaction' or 'schroedinger'");
}

GKSLGenerator make_generator(
    const ComplexMatrix& h,
    const std::vector<std::pair<ComplexMatrix, double>>& jumps) {
    std::vector<GKSLGenerator::Jump> js;
    js.reserve(jumps.size());
    for (const auto& [v, rate] : jumps) js.push_back({v, rate});
    return GKSLGenerator(h, std::move(js));
}

py::dict trajectory_dict(const JCTrajectory& traj) {
    py::list rho;
    for (const auto& r : traj.rho) rho.append(r.matrix());
    py::dict out;
    out["times"] = traj.times;
    out["c1"] = traj.c1;
    out["gamma"] = traj.gamma;
    out["S"] = traj.shift;
    out["rho"] = rho;
    out["aborted"] = traj.aborted;
    out["abort_time"] = traj.abort_time;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "open quantum systems toolkit: dissipative two-level dynamics, "
              "quantum channels, semigroup generators";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<HermiticityError>(m, "HermiticityError", PyExc_ValueError);
    py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_ValueError);
    py::register_exception<PositivityError>(m, "PositivityError", PyExc_ValueError);
    py::register_exception<CompletenessError>(m, "CompletenessError", PyExc_ValueError);
    py::register_exception<CompletePositivityError>(m, "CompletePositivityError",
                                                    PyExc_ValueError);
    py::register_exception<TracePreservationError>(m, "TracePreservationError",
                                                   PyExc_ValueError);
    py::register_exception<IsometryError>(m, "IsometryError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<GridError>(m, "GridError", PyExc_ValueError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
    py::register_exception<AmplitudeZeroError>(m, "AmplitudeZeroError",
                                               PyExc_ArithmeticError);
    py::register_exception<NotCompletelyPositiveGenerator>(
        m, "NotCompletelyPositiveGeneratorError", PyExc_ValueError);
    py::register_exception<NotTracePreserving>(m, "NotTracePreservingError",
                                               PyExc_ValueError);

    // dense complex linear algebra
    m.def("kron", &kron, py::arg("a"), py::arg("b"));
    m.def(
        "partial_trace",
        [](const ComplexMatrix& x, Eigen::Index dim_a, Eigen::Index dim_b,
           const std::string& keep) {
            return partial_trace(x, dim_a, dim_b, parse_keep(keep));
        },
        py::arg("x"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "A");
    m.def(
        "eigh",
        [](const ComplexMatrix& mat) {
            Spectrum s = eigh(mat);
            return py::make_tuple(s.eigenvalues, s.eigenvectors);
        },
        py::arg("m"), "eigenvalues (ascending) and phase-fixed eigenvector columns");
    m.def("expm", &expm, py::arg("m"));

    // states
    m.def(
        "project",
        [](const ComplexVector& psi) { return project(PureState(psi)).matrix(); },
        py::arg("psi"));
    m.def(
        "expectation",
        [](const ComplexMatrix& rho, const ComplexMatrix& a) {
            return expectation(DensityMatrix(rho), a);
        },
        py::arg("rho"), py::arg("a"));
    m.def(
        "trace_distance",
        [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
            return trace_distance(DensityMatrix(rho), DensityMatrix(sigma));
        },
        py::arg("rho"), py::arg("sigma"));

    // channels
    m.def(
        "choi_from_kraus",
        [](Eigen::Index dim, const std::vector<ComplexMatrix>& ops) {
            return choi_from_kraus(KrausSet(dim, ops)).choi();
        },
        py::arg("dim"), py::arg("kraus"));
    m.def(
        "kraus_from_choi",
        [](Eigen::Index dim, const ComplexMatrix& choi, double tol) {
            return kraus_from_choi(QuantumChannel(dim, choi), tol).operators();
        },
        py::arg("dim"), py::arg("choi"), py::arg("tol") = 1e-12);
    m.def(
        "is_cptp",
        [](const ComplexMatrix& choi, Eigen::Index dim, double tol) {
            CptpReport rep = is_cptp(choi, dim, tol);
            py::dict out;
            out["cp"] = rep.cp;
            out["tp"] = rep.tp;
            out["min_choi_eig"] = rep.min_choi_eig;
            out["tp_residual"] = rep.tp_residual;
            return out;
        },
        py::arg("choi"), py::arg("dim"), py::arg("tol") = 1e-9);
    m.def(
        "apply_channel",
        [](Eigen::Index dim, const ComplexMatrix& choi, const ComplexMatrix& rho) {
            return apply(QuantumChannel(dim, choi), DensityMatrix(rho)).matrix();
        },
        py::arg("dim"), py::arg("choi"), py::arg("rho"));
    m.def(
        "dilate",
        [](Eigen::Index dim, const ComplexMatrix& choi) {
            Dilation dil = dilate(QuantumChannel(dim, choi));
            py::dict out;
            out["dim_r"] = dil.dim_r;
            out["omega"] = dil.omega.amplitudes();
            out["unitary"] = dil.unitary;
            return out;
        },
        py::arg("dim"), py::arg("choi"));
    m.def("extend_isometry", &extend_isometry, py::arg("columns"));
    m.def(
        "partial_transpose",
        [](const ComplexMatrix& rho, Eigen::Index da, Eigen::Index db) {
            return partial_transpose(DensityMatrix(rho), da, db);
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "ppt_min_eig",
        [](const ComplexMatrix& rho, Eigen::Index da, Eigen::Index db) {
            return ppt_min_eig(DensityMatrix(rho), da, db);
        },
        py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
    m.def(
        "random_cptp_choi",
        [](Eigen::Index dim, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_cptp(dim, rng).choi();
        },
        py::arg("dim"), py::arg("seed") = 12345);
    m.def(
        "random_density",
        [](Eigen::Index dim, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_density(dim, rng).matrix();
        },
        py::arg("dim"), py::arg("seed") = 12345);

    // semigroup generators
    m.def(
        "superop_from_generator",
        [](const ComplexMatrix& h,
           const std::vector<std::pair<ComplexMatrix, double>>& jumps) {
            return superop_from_generator(make_generator(h, jumps)).matrix();
        },
        py::arg("hamiltonian"), py::arg("jumps"));
    m.def(
        "evolve",
        [](const ComplexMatrix& h,
           const std::vector<std::pair<ComplexMatrix, double>>& jumps,
           const ComplexMatrix& rho0, double t) {
            return evolve(make_generator(h, jumps), DensityMatrix(rho0), t).matrix();
        },
        py::arg("hamiltonian"), py::arg("jumps"), py::arg("rho0"), py::arg("t"));
    m.def(
        "gksl_decompose",
        [](Eigen::Index dim, const ComplexMatrix& lmat) {
            GkslDecomposition dec = gksl_decompose(
                Superoperator(dim, lmat), OperatorBasis::gell_mann(dim));
            py::list ops, rates;
            for (const auto& j : dec.generator.jumps()) {
                ops.append(j.op);
                rates.append(j.rate);
            }
            py::dict out;
            out["hamiltonian"] = dec.generator.hamiltonian();
            out["jump_operators"] = ops;
            out["rates"] = rates;
            out["coefficient_matrix"] = dec.coefficient_matrix;
            out["residual"] = dec.residual;
            return out;
        },
        py::arg("dim"), py::arg("superop"));
    m.def(
        "semigroup_check",
        [](const ComplexMatrix& h,
           const std::vector<std::pair<ComplexMatrix, double>>& jumps, double t,
           double s) { return semigroup_check(make_generator(h, jumps), t, s); },
        py::arg("hamiltonian"), py::arg("jumps"), py::arg("t"), py::arg("s"));

    // dissipative two-level atom
    py::class_<JCParams>(m, "JCParams")
        .def(py::init<double, double, double, double, cxd, cxd>(), py::arg("g"),
             py::arg("gamma"), py::arg("omega0"), py::arg("omega_c"),
             py::arg("c1_0"), py::arg("c0") = cxd(0.0, 0.0))
        .def_property_readonly("g", &JCParams::g)
        .def_property_readonly("gamma", &JCParams::gamma)
        .def_property_readonly("omega0", &JCParams::omega0)
        .def_property_readonly("omega_c", &JCParams::omega_c)
        .def_property_readonly("delta", &JCParams::delta)
        .def_property_readonly("c1_0", &JCParams::c1_0)
        .def_property_readonly("c0", &JCParams::c0);

    py::class_<DiscreteReservoir>(m, "DiscreteReservoir")
        .def(py::init<>())
        .def_readwrite("omegas", &DiscreteReservoir::omegas)
        .def_readwrite("couplings", &DiscreteReservoir::couplings)
        .def_readwrite("window_halfwidth", &DiscreteReservoir::window_halfwidth)
        .def_readwrite("spacing", &DiscreteReservoir::spacing)
        .def_readwrite("c0_error_bound", &DiscreteReservoir::c0_error_bound);

    m.def("lorentzian_j", &lorentzian_j, py::arg("omega"), py::arg("params"));
    m.def("correlation_f", &correlation_f, py::arg("tau"), py::arg("params"));
    m.def("correlation_f_quadrature", &correlation_f_quadrature, py::arg("tau"),
          py::arg("params"));
    m.def("c1_exact", &c1_exact, py::arg("t"), py::arg("params"));
    m.def("c1_derivative", &c1_derivative, py::arg("t"), py::arg("params"));
    m.def(
        "c1_volterra",
        [](const std::vector<double>& grid, const JCParams& p,
           const std::optional<std::function<cxd(double)>>& kernel) {
            if (kernel) return c1_volterra(grid, p, *kernel);
            return c1_volterra(grid, p,
                               [&p](double tau) { return correlation_f(tau, p); });
        },
        py::arg("grid"), py::arg("params"), py::arg("kernel") = py::none());
    m.def(
        "rates",
        [](double t, const JCParams& p) -> py::object {
            const auto r = rates(t, p);
            if (!r) return py::none();
            return py::make_tuple(r->gamma, r->shift);
        },
        py::arg("t"), py::arg("params"),
        "returns (gamma, S) or None at an amplitude zero");
    m.def("gamma_resonant", &gamma_resonant, py::arg("t"), py::arg("params"));
    m.def(
        "rho_interaction",
        [](double t, const JCParams& p) { return rho_interaction(t, p).matrix(); },
        py::arg("t"), py::arg("params"));
    m.def(
        "master_rhs",
        [](const ComplexMatrix& rho, double t, const JCParams& p,
           const std::string& picture) {
            return master_rhs(DensityMatrix(rho), t, p, parse_picture(picture));
        },
        py::arg("rho"), py::arg("t"), py::arg("params"),
        py::arg("picture") = "interaction");
    m.def(
        "exact_trajectory",
        [](const JCParams& p, const std::vector<double>& grid) {
            return trajectory_dict(exact_trajectory(p, grid));
        },
        py::arg("params"), py::arg("grid"));
    m.def(
        "integrate_master",
        [](const JCParams& p, const std::vector<double>& grid) {
            return trajectory_dict(integrate_master(p, grid));
        },
        py::arg("params"), py::arg("grid"));
    m.def("sample_reservoir", &sample_reservoir, py::arg("params"),
          py::arg("n_modes"), py::arg("halfwidth_in_widths"));
    m.def("discrete_correlation", &discrete_correlation, py::arg("reservoir"),
          py::arg("tau"));
    m.def(
        "simulate_discrete",
        [](const DiscreteReservoir& res, const JCParams& p,
           const std::vector<double>& grid) {
            DiscreteRun run = simulate_discrete(res, p, grid);
            py::dict out;
            out["c1"] = run.c1;
            out["excitation_norm"] = run.excitation_norm;
            out["final_mode_amplitudes"] = run.final_mode_amplitudes;
            return out;
        },
        py::arg("reservoir"), py::arg("params"), py::arg("grid"));
    m.def("uniform_grid", &uniform_grid, py::arg("t_max"), py::arg("steps"));

#ifdef OPENQS_VERSION
    m.attr("__version__") = OPENQS_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
