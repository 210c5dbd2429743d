// oamwig: cylindrical Wigner functions of two-mode Fock states from the command line.
//
// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 numerical-tolerance failure, 1 anything unexpected. Failures also write
// one JSON record to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oamwig/cyl_wigner.hpp"
#include "oamwig/grid_export.hpp"
#include "oamwig/state_spec.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kParse = 2, kPrecondition = 3, kNumerical = 4 };

int report(const std::string& kind, const std::string& message, int code, int line = 0, int column = 0) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (line > 0) {
        j["line"] = line;
        j["column"] = column;
    }
    j["exit_code"] = code;
    std::cerr << j.dump() << '\n';
    return code;
}

struct StateOptions {
    std::string text;
    std::string file;

    oamwig::StateSpec load() const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw oamwig::PreconditionError("cannot read state file '" + file + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            return oamwig::parse_state_spec(ss.str());
        }
        return oamwig::parse_state_spec(text);
    }
};

void add_state_options(CLI::App* cmd, StateOptions& opts) {
    auto* group = cmd->add_option_group("state");
    group->add_option("-s,--state", opts.text, "state spec, e.g. \"eigenstate N=3 l0=1\"");
    group->add_option("--state-file", opts.file, "file holding a state spec");
    group->require_option(1);
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw oamwig::PreconditionError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct GridOptions {
    StateOptions state;
    oamwig::GridRequest req;
    int quad_order{0};
    std::string convention{"paper"};
    std::string format{"csv"};
    std::string out;
};

int run_wigner_cyl(const GridOptions& o) {
    auto req = o.req;
    if (o.quad_order > 0) req.quad_order = o.quad_order;
    req.convention = o.convention == "marginal" ? oamwig::CylConvention::Marginal : oamwig::CylConvention::Paper;
    const auto spec = o.state.load();
    const auto ex = oamwig::compute_grid(spec, req);
    Output out(o.out);
    oamwig::write_grid(out.stream(), ex, o.format == "json" ? oamwig::ExportFormat::Json : oamwig::ExportFormat::Csv);
    return kOk;
}

struct OracleOptions {
    StateOptions state;
    int points{10};
    std::uint64_t seed{1};
    double r_min{0.5};
    double r_max{2.5};
    int ell_max{3};
    double tolerance{1e-6};
    double floor{1e-10};
};

// Radii below this are reported but not used for the spread: l/r grows
// without bound and both sides fall below any meaningful floor.
constexpr double kOracleExcludedRadius = 0.1;

int run_oracle_check(const OracleOptions& o) {
    using oamwig::detail::format_double;
    if (o.points < 1) throw oamwig::PreconditionError("oracle-check: --points must be >= 1");
    if (!(o.r_min > 0.0) || !(o.r_max >= o.r_min)) throw oamwig::PreconditionError("oracle-check: need 0 < r_min <= r_max");
    if (o.ell_max < 0) throw oamwig::PreconditionError("oracle-check: --ell-max must be >= 0");
    const auto spec = o.state.load();
    const auto s = spec.build();

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> r_dist(o.r_min, o.r_max);
    std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<int> ell_dist(-o.ell_max, o.ell_max);

    std::cout << "# state: " << oamwig::to_string(spec) << '\n' << "r,phi,ell,W_cyl,W_oracle,ratio,status\n";
    double lo = INFINITY, hi = -INFINITY, sum = 0.0;
    int used = 0;
    bool notice = false;
    for (int i = 0; i < o.points; ++i) {
        const double r = r_dist(rng), phi = phi_dist(rng);
        const int ell = ell_dist(rng);
        const oamwig::CylPoint pt(r, phi, ell);
        const double w = oamwig::wigner_cyl(s, pt);
        oamwig::Diagnostics diag;
        const double orc = oamwig::oracle_cyl_from_cartesian(s, pt, &diag);
        for (const auto& msg : diag.warnings) std::cerr << "warning: " << msg << '\n';
        std::string status = "ok";
        double ratio = NAN;
        if (r < kOracleExcludedRadius) {
            status = "excluded";
            notice = true;
        } else if (std::abs(orc) < o.floor) {
            status = "below-floor";
        } else {
            ratio = w / orc;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            sum += ratio;
            ++used;
        }
        std::cout << format_double(r) << ',' << format_double(pt.phi) << ',' << ell << ',' << format_double(w) << ','
                  << format_double(orc) << ',' << (std::isnan(ratio) ? "nan" : format_double(ratio)) << ',' << status
                  << '\n';
    }
    if (notice)
        std::cout << "# notice: points with r < " << format_double(kOracleExcludedRadius)
                  << " lie in the excluded region and are not used for the spread\n";
    if (used == 0) {
        std::cout << "FAIL: no usable points\n";
        return report("numerical", "oracle-check: no point above the value floor outside the excluded region",
                      kNumerical);
    }
    const double kappa = sum / used;
    const double spread = (hi - lo) / std::abs(kappa);
    std::cout << "kappa: " << format_double(kappa) << '\n'
              << "spread: " << format_double(spread) << '\n'
              << "points_used: " << used << '\n'
              << (spread <= o.tolerance ? "PASS" : "FAIL") << '\n';
    if (spread > o.tolerance)
        return report("numerical", "oracle-check: ratio spread " + format_double(spread) + " exceeds " +
                                       format_double(o.tolerance),
                      kNumerical);
    return kOk;
}

struct MarginalOptions {
    StateOptions state;
    std::string type{"angle-oam"};
    int n_phi{64};
    int ell_min{-5};
    int ell_max{5};
    double r_min{oamwig::kDefaultRMin};
    double r_max{6.0};
    int n_r{64};
    int ring_max{40};
    std::string out;
};

int run_marginal(const MarginalOptions& o) {
    using oamwig::detail::format_double;
    const auto spec = o.state.load();
    const auto s = spec.build();
    Output out(o.out);
    auto& os = out.stream();
    os << "# oamwig-marginal " << oamwig::kExportFormatVersion << '\n' << "# state: " << oamwig::to_string(spec) << '\n';
    if (o.type == "angle-oam") {
        if (o.ell_min > o.ell_max) throw oamwig::PreconditionError("marginal: ell_min must be <= ell_max");
        os << "# marginal: int_0^inf W dr\nphi,ell,M\n";
        for (double phi : oamwig::angular_nodes(o.n_phi))
            for (int ell = o.ell_min; ell <= o.ell_max; ++ell) {
                oamwig::Diagnostics diag;
                const double m = oamwig::marginal_angle_oam(s, phi, ell, &diag);
                for (const auto& msg : diag.warnings) std::cerr << "warning: " << msg << '\n';
                os << format_double(phi) << ',' << ell << ',' << format_double(m) << '\n';
            }
    } else {
        os << "# marginal: sum_{|l|<=" << o.ring_max << "} int W dphi\nr,M\n";
        for (double r : oamwig::radial_nodes(o.r_min, o.r_max, o.n_r))
            os << format_double(r) << ',' << format_double(oamwig::marginal_radial(s, r, o.ring_max)) << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cylindrical Wigner functions W(r, phi, l) of two-mode Fock states"};
    app.set_version_flag("--version", std::string("oamwig ") + kVersion);
    app.require_subcommand(1);

    GridOptions grid;
    auto* wc = app.add_subcommand("wigner-cyl", "evaluate W(r, phi, l) on a grid and export it");
    add_state_options(wc, grid.state);
    wc->add_option("--r-min", grid.req.r_min, "smallest radius (> 0)")->capture_default_str();
    wc->add_option("--r-max", grid.req.r_max, "largest radius")->capture_default_str();
    wc->add_option("--nr", grid.req.n_r, "number of radii")->capture_default_str();
    wc->add_option("--nphi", grid.req.n_phi, "number of angles k*2pi/nphi")->capture_default_str();
    wc->add_option("--lmin", grid.req.ell_min, "smallest l")->capture_default_str();
    wc->add_option("--lmax", grid.req.ell_max, "largest l")->capture_default_str();
    wc->add_option("--quad-order", grid.quad_order, "Gauss-Hermite nodes (default: max n_+ + n_- plus 8)");
    wc->add_option("--convention", grid.convention, "paper or marginal (divided by 4 pi^2)")
        ->check(CLI::IsMember({"paper", "marginal"}))
        ->capture_default_str();
    wc->add_option("--format", grid.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    wc->add_option("-o,--out", grid.out, "output file (default stdout)");

    OracleOptions oracle;
    auto* oc = app.add_subcommand("oracle-check", "compare wigner_cyl with the p_r-integrated Cartesian Wigner function");
    add_state_options(oc, oracle.state);
    oc->add_option("--points", oracle.points)->capture_default_str();
    oc->add_option("--seed", oracle.seed)->capture_default_str();
    oc->add_option("--r-min", oracle.r_min)->capture_default_str();
    oc->add_option("--r-max", oracle.r_max)->capture_default_str();
    oc->add_option("--ell-max", oracle.ell_max, "points draw l from [-ell-max, ell-max]")->capture_default_str();
    oc->add_option("--tol", oracle.tolerance, "largest accepted relative spread of the ratio")->capture_default_str();
    oc->add_option("--floor", oracle.floor, "points with |oracle| below this are skipped")->capture_default_str();

    MarginalOptions marg;
    auto* mc = app.add_subcommand("marginal", "angle-OAM or radial marginals");
    add_state_options(mc, marg.state);
    mc->add_option("--type", marg.type)->check(CLI::IsMember({"angle-oam", "radial"}))->capture_default_str();
    mc->add_option("--nphi", marg.n_phi)->capture_default_str();
    mc->add_option("--lmin", marg.ell_min)->capture_default_str();
    mc->add_option("--lmax", marg.ell_max)->capture_default_str();
    mc->add_option("--r-min", marg.r_min)->capture_default_str();
    mc->add_option("--r-max", marg.r_max)->capture_default_str();
    mc->add_option("--nr", marg.n_r)->capture_default_str();
    mc->add_option("--ring-max", marg.ring_max, "largest |l| summed by the radial marginal")->capture_default_str();
    mc->add_option("-o,--out", marg.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return report("usage", e.what(), kParse);
    }

    try {
        if (*wc) return run_wigner_cyl(grid);
        if (*oc) return run_oracle_check(oracle);
        if (*mc) return run_marginal(marg);
    } catch (const oamwig::ParseError& e) {
        return report("parse", e.what(), kParse, e.line(), e.column());
    } catch (const oamwig::PreconditionError& e) {
        return report("precondition", e.what(), kPrecondition);
    } catch (const oamwig::NumericalError& e) {
        return report("numerical", e.what(), kNumerical);
    } catch (const std::exception& e) {
        return report("internal", e.what(), 1);
    }
    return kOk;
}
