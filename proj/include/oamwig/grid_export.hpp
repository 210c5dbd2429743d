#pragma once

// Grid requests and the text export format.
//
// CSV export:
//
//   # oamwig-grid 1
//   # state: <canonical state spec>
//   # convention: paper|marginal
//   # quad_order: <Gauss-Hermite nodes>
//   # r: <n_r> nodes <r_min> .. <r_max>
//   # phi: <n_phi> nodes k*2pi/<n_phi>
//   # ell: <ell_min> .. <ell_max>
//   r,phi,ell,W
//   <one row per grid point, r outermost, then phi, then ell>
//
// JSON export is a single object with the same header fields plus the axes
// and a flat "W" array in the same order. Numbers are written in the
// shortest form that reads back to the same double, so identical requests
// give identical bytes.

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "oamwig/cyl_wigner.hpp"
#include "oamwig/errors.hpp"
#include "oamwig/state_spec.hpp"

namespace oamwig {

inline constexpr int kExportFormatVersion = 1;

/// paper: W of the central formula as written. marginal: W / kOracleScale,
/// the p_r-integrated Cartesian Wigner function, whose integral over
/// dr dphi dl (l continuous) is 1.
enum class CylConvention { Paper, Marginal };

enum class ExportFormat { Csv, Json };

inline std::string to_string(CylConvention c) { return c == CylConvention::Paper ? "paper" : "marginal"; }
inline std::string to_string(ExportFormat f) { return f == ExportFormat::Csv ? "csv" : "json"; }

struct GridRequest {
    double r_min{kDefaultRMin};
    double r_max{6.0};
    int n_r{64};
    int n_phi{64};
    int ell_min{-5};
    int ell_max{5};
    std::optional<int> quad_order;  ///< default max_total_quanta + 8
    CylConvention convention{CylConvention::Paper};

    void validate() const {
        if (!(r_min > 0.0) || !std::isfinite(r_min))
            throw PreconditionError("grid request: r_min must be > 0 (r = 0 is excluded)");
        if (n_r < 1 || n_phi < 1) throw PreconditionError("grid request: n_r and n_phi must be >= 1");
        if (n_r > 1 && !(r_max > r_min)) throw PreconditionError("grid request: r_max must exceed r_min");
        if (ell_min > ell_max) throw PreconditionError("grid request: ell_min must be <= ell_max");
        if (quad_order && *quad_order < 1) throw PreconditionError("grid request: quad_order must be >= 1");
    }

    int effective_quad_order(const TwoModeFock& s) const { return quad_order.value_or(s.max_total_quanta() + 8); }
};

struct GridExport {
    std::string state;
    CylConvention convention{CylConvention::Paper};
    int quad_order{0};
    CylGrid grid;
};

inline GridExport compute_grid(const StateSpec& spec, const GridRequest& req,
                               unsigned threads = default_thread_count()) {
    req.validate();
    const auto s = spec.build();
    const int order = req.effective_quad_order(s);
    std::vector<int> ells;
    for (int l = req.ell_min; l <= req.ell_max; ++l) ells.push_back(l);
    GridExport out{to_string(spec), req.convention, order,
                   wigner_cyl_grid(s, radial_nodes(req.r_min, req.r_max, req.n_r), angular_nodes(req.n_phi), ells,
                                   gauss_hermite(order), threads)};
    if (req.convention == CylConvention::Marginal)
        for (auto& v : out.grid.values) v /= kOracleScale;
    return out;
}

inline void write_grid(std::ostream& os, const GridExport& ex, ExportFormat format) {
    using detail::format_double;
    const auto& g = ex.grid;
    if (format == ExportFormat::Csv) {
        os << "# oamwig-grid " << kExportFormatVersion << '\n'
           << "# state: " << ex.state << '\n'
           << "# convention: " << to_string(ex.convention) << '\n'
           << "# quad_order: " << ex.quad_order << '\n'
           << "# r: " << g.r_nodes.size() << " nodes " << format_double(g.r_nodes.front()) << " .. "
           << format_double(g.r_nodes.back()) << '\n'
           << "# phi: " << g.phi_nodes.size() << " nodes k*2pi/" << g.phi_nodes.size() << '\n'
           << "# ell: " << g.ell_values.front() << " .. " << g.ell_values.back() << '\n'
           << "r,phi,ell,W\n";
        for (std::size_t ir = 0; ir < g.r_nodes.size(); ++ir)
            for (std::size_t ip = 0; ip < g.phi_nodes.size(); ++ip)
                for (std::size_t il = 0; il < g.ell_values.size(); ++il)
                    os << format_double(g.r_nodes[ir]) << ',' << format_double(g.phi_nodes[ip]) << ','
                       << g.ell_values[il] << ',' << format_double(g.at(ir, ip, il)) << '\n';
        return;
    }
    nlohmann::ordered_json j;
    j["format"] = "oamwig-grid";
    j["version"] = kExportFormatVersion;
    j["state"] = ex.state;
    j["convention"] = to_string(ex.convention);
    j["quad_order"] = ex.quad_order;
    j["r"] = g.r_nodes;
    j["phi"] = g.phi_nodes;
    j["ell"] = g.ell_values;
    j["layout"] = "r, phi, ell (ell fastest)";
    j["W"] = g.values;
    os << j.dump(1) << '\n';
}

}  // namespace oamwig
