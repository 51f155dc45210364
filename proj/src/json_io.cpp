#include "oqs/json_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace oqs {

using nlohmann::json;

std::string format_float(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries")) {
        throw FormatError("matrix literal needs rows, cols and entries");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) {
        throw FormatError("matrix literal has non-positive dimensions");
    }
    const auto& entries = j.at("entries");
    if (!entries.is_array() ||
        static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw FormatError("matrix literal entry count does not match rows*cols");
    }
    ComplexMatrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++idx) {
            const auto& e = entries.at(idx);
            if (!e.is_array() || e.size() != 2) {
                throw FormatError("matrix entries must be [re, im] pairs");
            }
            m(i, j2) = cxd(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

ChannelFile channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim")) {
        throw FormatError("channel file needs a dim field");
    }
    ChannelFile f;
    f.dim = j.at("dim").get<Eigen::Index>();
    const bool has_kraus = j.contains("kraus");
    const bool has_choi = j.contains("choi");
    if (has_kraus == has_choi) {
        throw FormatError("channel file needs exactly one of kraus or choi");
    }
    f.from_kraus = has_kraus;
    if (has_kraus) {
        for (const auto& mj : j.at("kraus")) {
            f.kraus.push_back(matrix_from_json(mj));
        }
        if (f.kraus.empty()) throw FormatError("channel file has an empty kraus list");
    } else {
        f.choi = matrix_from_json(j.at("choi"));
    }
    return f;
}

json kraus_to_json(const KrausSet& k) {
    json ops = json::array();
    for (const auto& op : k.operators()) ops.push_back(matrix_to_json(op));
    return json{{"dim", k.dim()}, {"kraus", ops}};
}

GKSLGenerator generator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("H")) {
        throw FormatError("generator file needs dim and H fields");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    ComplexMatrix h = matrix_from_json(j.at("H"));
    if (h.rows() != dim || h.cols() != dim) {
        throw FormatError("generator Hamiltonian does not match dim");
    }
    std::vector<GKSLGenerator::Jump> jumps;
    if (j.contains("jumps")) {
        for (const auto& jj : j.at("jumps")) {
            if (!jj.contains("V") || !jj.contains("gamma")) {
                throw FormatError("jump entries need V and gamma fields");
            }
            jumps.push_back({matrix_from_json(jj.at("V")),
                             jj.at("gamma").get<double>()});
        }
    }
    return GKSLGenerator(std::move(h), std::move(jumps));
}

json generator_to_json(const GKSLGenerator& gen) {
    json jumps = json::array();
    for (const auto& jump : gen.jumps()) {
        jumps.push_back({{"V", matrix_to_json(jump.op)}, {"gamma", jump.rate}});
    }
    return json{{"dim", gen.dim()},
                {"H", matrix_to_json(gen.hamiltonian())},
                {"jumps", jumps}};
}

Superoperator superop_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("matrix")) {
        throw FormatError("superoperator file needs dim and matrix fields");
    }
    const auto dim = j.at("dim").get<Eigen::Index>();
    return Superoperator(dim, matrix_from_json(j.at("matrix")));
}

json dilation_to_json(Eigen::Index dim, const Dilation& dil) {
    ComplexMatrix omega(dil.dim_r, 1);
    for (Eigen::Index i = 0; i < dil.dim_r; ++i) {
        omega(i, 0) = dil.omega.amplitudes()(i);
    }
    return json{{"dim", dim},
                {"dimR", dil.dim_r},
                {"omega", matrix_to_json(omega)},
                {"U", matrix_to_json(dil.unitary)}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw FormatError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const JCTrajectory& traj) {
    out << "t,re_c1,im_c1,abs_c1,gamma,S,rho11,rho00,re_rho10,im_rho10\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const ComplexMatrix& r = traj.rho[i].matrix();
        out << format_float(traj.times[i]) << ','
            << format_float(traj.c1[i].real()) << ','
            << format_float(traj.c1[i].imag()) << ','
            << format_float(std::abs(traj.c1[i])) << ','
            << format_float(traj.gamma[i]) << ','
            << format_float(traj.shift[i]) << ','
            << format_float(r(0, 0).real()) << ','
            << format_float(r(1, 1).real()) << ','
            << format_float(r(0, 1).real()) << ','
            << format_float(r(0, 1).imag()) << '\n';
    }
}

void write_oracle_csv(std::ostream& out, const std::vector<double>& times,
                      const std::vector<cxd>& discrete,
                      const std::vector<cxd>& exact) {
    out << "t,re_c1_discrete,im_c1_discrete,re_c1_exact,im_c1_exact,abs_error\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_float(times[i]) << ','
            << format_float(discrete[i].real()) << ','
            << format_float(discrete[i].imag()) << ','
            << format_float(exact[i].real()) << ','
            << format_float(exact[i].imag()) << ','
            << format_float(std::abs(discrete[i] - exact[i])) << '\n';
    }
}

void write_rates_csv(std::ostream& out, const std::vector<double>& times,
                     const std::vector<double>& gamma,
                     const std::vector<double>& shift) {
    out << "t,gamma,S\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_float(times[i]) << ',' << format_float(gamma[i]) << ','
            << format_float(shift[i]) << '\n';
    }
}

void write_evolution_csv(std::ostream& out, const std::vector<double>& times,
                         const std::vector<DensityMatrix>& states) {
    if (states.empty()) return;
    const Eigen::Index d = states.front().dim();
    out << 't';
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            out << ",re_rho_" << i << '_' << j << ",im_rho_" << i << '_' << j;
    out << '\n';
    for (std::size_t n = 0; n < times.size(); ++n) {
        out << format_float(times[n]);
        const ComplexMatrix& m = states[n].matrix();
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                out << ',' << format_float(m(i, j).real()) << ','
                    << format_float(m(i, j).imag());
        out << '\n';
    }
}

}  // namespace oqs
