#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "oqs/channels.hpp"
#include "oqs/gksl.hpp"
#include "oqs/jaynes_cummings.hpp"

namespace oqs {

/// Shortest-exact decimal with 17 significant digits, '.' separator and 'e'
/// exponent marker, independent of locale.
std::string format_float(double x);

// Matrix literal: {"rows": r, "cols": c, "entries": [[re, im], ...]} with
// entries listed row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// Channel file: {"dim": d, "kraus": [matrix, ...]} or {"dim": d, "choi": matrix}.
struct ChannelFile {
    Eigen::Index dim;
    bool from_kraus;
    std::vector<ComplexMatrix> kraus;  // when from_kraus
    ComplexMatrix choi;                // otherwise
};
ChannelFile channel_from_json(const nlohmann::json& j);
nlohmann::json kraus_to_json(const KrausSet& k);

// Generator file: {"dim": d, "H": matrix, "jumps": [{"V": matrix, "gamma": g}, ...]}.
GKSLGenerator generator_from_json(const nlohmann::json& j);
nlohmann::json generator_to_json(const GKSLGenerator& gen);

// Superoperator file: {"dim": d, "matrix": matrix}.
Superoperator superop_from_json(const nlohmann::json& j);

nlohmann::json dilation_to_json(Eigen::Index dim, const Dilation& dil);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// Trajectory CSV, one row per grid time:
// t,re_c1,im_c1,abs_c1,gamma,S,rho11,rho00,re_rho10,im_rho10
// where rho11 = <1|rho|1> (excited population) and rho10 = <1|rho|0>.
void write_trajectory_csv(std::ostream& out, const JCTrajectory& traj);

// Reservoir-oracle CSV: t,re_c1_discrete,im_c1_discrete,re_c1_exact,im_c1_exact,abs_error
void write_oracle_csv(std::ostream& out, const std::vector<double>& times,
                      const std::vector<cxd>& discrete,
                      const std::vector<cxd>& exact);

// Rates CSV: t,gamma,S
void write_rates_csv(std::ostream& out, const std::vector<double>& times,
                     const std::vector<double>& gamma,
                     const std::vector<double>& shift);

// Density-matrix trajectory CSV: t then re/im of every entry, row-major.
void write_evolution_csv(std::ostream& out, const std::vector<double>& times,
                         const std::vector<DensityMatrix>& states);

}  // namespace oqs
