#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "profiles.hpp"
#include "oamwig/cyl_wigner.hpp"
#include "test_util.hpp"

using namespace oamwig;
using oamwig::testing::mixed_err;
using oamwig::testing::random_state;
using oamwig::testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

TwoModeFock vacuum() { return make_N_l_eigenstate(0, 0); }

double vacuum_w(double r, int ell) { return 4.0 * std::sqrt(kPi) * std::exp(-r * r - double(ell) * ell / (r * r)); }

}  // namespace

TEST(WignerCyl, VacuumExamples) {
    EXPECT_NEAR(wigner_cyl(vacuum(), {1.0, 0.3, 0}), 4.0 * std::sqrt(kPi) * std::exp(-1.0), 1e-14);
    EXPECT_NEAR(wigner_cyl(vacuum(), {1.0, 0.0, 0}), 2.60820, 1e-5);
    const double ratio = wigner_cyl(vacuum(), {1.0, 1.1, 1}) / wigner_cyl(vacuum(), {1.0, 1.1, 0});
    EXPECT_NEAR(ratio, std::exp(-1.0), 1e-14);
}

TEST(WignerCyl, VacuumClosedFormGrid) {
    const auto s = vacuum();
    const auto grid = wigner_cyl_grid(s, radial_nodes(0.2, 3.0, 10), angular_nodes(4), {-2, -1, 0, 1, 2},
                                      default_cyl_rule(s));
    for (std::size_t i = 0; i < grid.r_nodes.size(); ++i)
        for (std::size_t j = 0; j < grid.phi_nodes.size(); ++j)
            for (std::size_t k = 0; k < grid.ell_values.size(); ++k)
                EXPECT_LE(mixed_err(grid.at(i, j, k), vacuum_w(grid.r_nodes[i], grid.ell_values[k])), 1e-10);
}

TEST(WignerCyl, EigenstatesArePhiIndependent) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> rad(0.1, 3.0), ang(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> ells(-4, 4);
    for (auto [N, l0] : {std::pair{0, 0}, {1, 1}, {2, 0}, {3, -1}, {4, 2}, {6, -6}, {7, 3}}) {
        const auto s = make_N_l_eigenstate(N, l0);
        for (int i = 0; i < 10; ++i) {
            const double r = rad(rng);
            const int ell = ells(rng);
            const double ref = wigner_cyl(s, {r, 0.0, ell});
            EXPECT_LE(mixed_err(wigner_cyl(s, {r, ang(rng), ell}), ref), 1e-12) << N << "," << l0;
        }
    }
    const auto summed = make_summed_oam(2, 10);
    EXPECT_LE(mixed_err(wigner_cyl(summed, {1.3, 0.0, 1}), wigner_cyl(summed, {1.3, 4.0, 1})), 1e-12);
}

TEST(WignerCyl, RealnessResidue) {
    std::mt19937_64 rng(32);
    std::uniform_int_distribution<int> deg(0, 8), ells(-5, 5);
    std::uniform_real_distribution<double> rad(0.1, 4.0), ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 500; ++i) {
        const auto s = random_state(rng, deg(rng), 0.7);
        const auto w = wigner_cyl_detailed(s, {rad(rng), ang(rng), ells(rng)}, default_cyl_rule(s));
        EXPECT_LE(w.imag_residue, 1e-12 * std::max(1.0, std::abs(w.value)));
    }
}

TEST(WignerCyl, RotationalCovariance) {
    // rotate_state multiplies by exp(+i phi0 L), which moves W to phi + phi0.
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> deg(1, 7), ells(-4, 4);
    std::uniform_real_distribution<double> rad(0.1, 3.5), ang(0.0, 2.0 * kPi);
    for (int i = 0; i < 40; ++i) {
        const auto s = random_state(rng, deg(rng));
        const double phi0 = ang(rng);
        const auto rotated = rotate_state(s, phi0);
        for (int j = 0; j < 5; ++j) {
            const double r = rad(rng), phi = ang(rng);
            const int ell = ells(rng);
            EXPECT_LE(mixed_err(wigner_cyl(rotated, {r, phi, ell}), wigner_cyl(s, {r, phi + phi0, ell})), 1e-10);
        }
    }
}

TEST(WignerCyl, Preconditions) {
    EXPECT_THROW(CylPoint(0.0, 0.0, 0), PreconditionError);
    EXPECT_THROW(CylPoint(-1.0, 0.0, 0), PreconditionError);
    const auto s = make_N_l_eigenstate(10, 2);
    EXPECT_THROW(wigner_cyl(s, {1.0, 0.0, 0}, gauss_hermite(5)), PreconditionError);
    EXPECT_NO_THROW(wigner_cyl(s, {1.0, 0.0, 0}, gauss_hermite(11)));
    EXPECT_THROW(wigner_cyl(s, {1.0, 0.0, 0}, gauss_legendre(40, -5.0, 5.0)), PreconditionError);
    const auto unnormalized = TwoModeFock::from_entries(1, {{0, 0, 2.0}});
    EXPECT_THROW(wigner_cyl(unnormalized, {1.0, 0.0, 0}), PreconditionError);
}

TEST(WignerCyl, HighCutoffMatchesOracle) {
    // Small r and l != 0 at D = 40 cancel badly on the shifted contour.
    const auto s = make_summed_oam(0, 40);
    for (auto [r, ell] : {std::pair{0.3, 1}, {0.5, -1}, {0.8, 2}}) {
        const double w = wigner_cyl(s, {r, 0.0, ell});
        const double o = kOracleScale * oracle_cyl_from_cartesian(s, {r, 0.0, ell});
        EXPECT_LE(std::abs(w - o), 1e-6 * std::max(1.0, std::abs(o))) << r << "," << ell;
    }
}

TEST(WignerCylGrid, VacuumTwoByTwo) {
    const auto s = vacuum();
    const auto grid = wigner_cyl_grid(s, {0.5, 1.5}, {0.0, kPi}, {1}, default_cyl_rule(s));
    ASSERT_EQ(grid.values.size(), 4u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(grid.at(i, j, 0), vacuum_w(grid.r_nodes[i], 1), 1e-13);
}

TEST(WignerCylGrid, RotationIsCyclicShift) {
    std::mt19937_64 rng(34);
    const auto s = random_state(rng, 5);
    const int n_phi = 12, shift = 5;
    const auto rotated = rotate_state(s, 2.0 * kPi * shift / n_phi);
    const auto r = radial_nodes(0.2, 2.6, 4);
    const std::vector<int> ells{-2, 0, 3};
    const auto a = wigner_cyl_grid(s, r, angular_nodes(n_phi), ells, default_cyl_rule(s));
    const auto b = wigner_cyl_grid(rotated, r, angular_nodes(n_phi), ells, default_cyl_rule(s));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int j = 0; j < n_phi; ++j)
            for (std::size_t k = 0; k < ells.size(); ++k)
                EXPECT_LE(mixed_err(b.at(i, j, k), a.at(i, (j + shift) % n_phi, k)), 1e-10);
}

TEST(WignerCylGrid, DeterministicAcrossThreadCounts) {
    std::mt19937_64 rng(35);
    const auto s = random_state(rng, 6);
    const auto one = wigner_cyl_grid(s, radial_nodes(0.1, 3.0, 7), angular_nodes(9), {-1, 0, 2}, default_cyl_rule(s), 1);
    const auto four = wigner_cyl_grid(s, radial_nodes(0.1, 3.0, 7), angular_nodes(9), {-1, 0, 2}, default_cyl_rule(s), 4);
    EXPECT_EQ(one.values, four.values);
}

TEST(WignerCylGrid, Errors) {
    const auto s = vacuum();
    const auto rule = default_cyl_rule(s);
    EXPECT_THROW(wigner_cyl_grid(s, {1.0}, {0.0}, {}, rule), PreconditionError);
    EXPECT_THROW(wigner_cyl_grid(s, {}, {0.0}, {0}, rule), PreconditionError);
    EXPECT_THROW(wigner_cyl_grid(s, {0.0, 1.0}, {0.0}, {0}, rule), PreconditionError);
    EXPECT_THROW(wigner_cyl_grid(s, {2.0, 1.0}, {0.0}, {0}, rule), PreconditionError);
    EXPECT_THROW(radial_nodes(0.0, 1.0, 3), PreconditionError);
    EXPECT_THROW(wigner_cyl_grid(make_N_l_eigenstate(12, 0), {1.0}, {0.0}, {0}, gauss_hermite(4)), PreconditionError);
}

TEST(MarginalAngleOam, VacuumClosedForm) {
    const auto s = vacuum();
    for (int ell = -4; ell <= 4; ++ell)
        for (double phi : {0.0, 1.9})
            EXPECT_NEAR(marginal_angle_oam(s, phi, ell), 2.0 * kPi * std::exp(-2.0 * std::abs(ell)), 1e-6) << ell;
    const double ratio = marginal_angle_oam(s, 0.4, 1) / marginal_angle_oam(s, 0.4, 0);
    EXPECT_NEAR(ratio, std::exp(-2.0), 1e-6);
}

TEST(MarginalAngleOam, RejectsUnmappedRule) {
    EXPECT_THROW(marginal_angle_oam(vacuum(), 0.0, 0, gauss_legendre(32, 0.0, 5.0)), PreconditionError);
}

TEST(MarginalAngleOam, TailWarning) {
    Diagnostics diag;
    marginal_angle_oam(vacuum(), 0.0, 0, gauss_legendre_mapped(64, 1e-9, 2.0), &diag);
    EXPECT_FALSE(diag.warnings.empty());
    Diagnostics quiet;
    marginal_angle_oam(vacuum(), 0.0, 0, &quiet);
    EXPECT_TRUE(quiet.warnings.empty());
}

TEST(MarginalAngleOam, SuperpositionOscillatesWithFrequencySix) {
    const auto s = make_superposition(3, -3, 0.0, 9);
    const auto p = oamwig::testing::angle_marginal_l0(s, 48);
    const auto fit = oamwig::testing::fit_sinusoid(p.x, p.y, 6);
    EXPECT_NEAR(fit.frequency, 6.0, 0.06);
    EXPECT_GT(fit.amplitude, 1e-3);
    EXPECT_LE(fit.residual, 1e-8 * fit.amplitude);
    EXPECT_LT(*std::min_element(p.y.begin(), p.y.end()), 0.0);
}

TEST(MarginalAngleOam, RelativePhaseRotatesPattern) {
    // With this library's conventions the pattern goes as cos(6 phi - phi0 + delta).
    const auto base = oamwig::testing::angle_marginal_l0(make_superposition(3, -3, 0.0, 9), 48);
    const auto f0 = oamwig::testing::fit_sinusoid(base.x, base.y, 6);
    for (double phi0 : {0.4, 1.0, 2.5}) {
        const auto p = oamwig::testing::angle_marginal_l0(make_superposition(3, -3, phi0, 9), 48);
        const auto f = oamwig::testing::fit_sinusoid(p.x, p.y, 6);
        EXPECT_NEAR(oamwig::testing::principal_angle(f.phase - f0.phase + phi0), 0.0, 1e-9) << phi0;
        EXPECT_NEAR(f.amplitude, f0.amplitude, 1e-9);
    }
}

TEST(MarginalRadial, VacuumClosedForm) {
    double want = 0.0;
    for (int ell = -8; ell <= 8; ++ell) want += 2.0 * kPi * 4.0 * std::sqrt(kPi) * std::exp(-1.0 - double(ell) * ell);
    EXPECT_LE(rel_err(marginal_radial(vacuum(), 1.0, 8), want), 1e-12);
    EXPECT_LE(rel_err(marginal_radial(vacuum(), 1.0, 12), want), 1e-12);
}

TEST(MarginalRadial, EllMaxTooSmall) {
    EXPECT_THROW(marginal_radial(vacuum(), 2.0, 0), NumericalError);
    EXPECT_THROW(marginal_radial(vacuum(), 3.0, 2), NumericalError);
    EXPECT_THROW(marginal_radial(vacuum(), 0.0, 8), PreconditionError);
    EXPECT_THROW(marginal_radial(vacuum(), 1.0, -1), PreconditionError);
}

TEST(MarginalRadial, EigenstateIsTwoPiTimesSingleAngle) {
    for (auto [N, l0] : {std::pair{2, 0}, {3, 1}, {5, -3}}) {
        const auto s = make_N_l_eigenstate(N, l0);
        const double r = 1.4;
        const int ell_max = 24;
        double single = 0.0;
        for (int ell = -ell_max; ell <= ell_max; ++ell) single += wigner_cyl(s, {r, 0.9, ell});
        EXPECT_LE(rel_err(marginal_radial(s, r, ell_max), 2.0 * kPi * single), 1e-12) << N << "," << l0;
    }
}

TEST(MarginalRadial, SummedStateShowsRings) {
    const auto s = make_summed_oam(0, 20);
    const auto p = oamwig::testing::radial_marginal_profile(s, 7.0, 0.35, 40);
    EXPECT_GE(oamwig::testing::local_maxima(p.y).size(), 3u);
}

TEST(OracleCyl, VacuumFixesScale) {
    const double o = oracle_cyl_from_cartesian(vacuum(), {1.0, 0.0, 0});
    EXPECT_LE(rel_err(4.0 * std::sqrt(kPi) * std::exp(-1.0) / o, kOracleScale), 1e-12);
}

TEST(OracleCyl, ConstantRatioAcrossStates) {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> rad(0.3, 2.5), ang(0.0, 2.0 * kPi);
    std::uniform_int_distribution<int> ells(-3, 3);
    for (const auto& s : {make_N_l_eigenstate(2, 0), make_superposition(1, -1, 0.0, 3), random_state(rng, 4)}) {
        for (int i = 0; i < 10; ++i) {
            const CylPoint at(rad(rng), ang(rng), ells(rng));
            const double w = wigner_cyl(s, at);
            const double o = oracle_cyl_from_cartesian(s, at);
            if (std::abs(w) < 1e-10) continue;
            EXPECT_LE(rel_err(w / o, kOracleScale), 1e-6) << at.r << "," << at.phi << "," << at.ell;
        }
    }
}

TEST(OracleCyl, TailWarning) {
    Diagnostics diag;
    oracle_cyl_from_cartesian(vacuum(), {1.0, 0.0, 0}, gauss_legendre_mapped(40, 0.1, 1.0), &diag);
    EXPECT_FALSE(diag.warnings.empty());
}
