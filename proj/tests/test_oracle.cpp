#include <doctest.h>

#include <cmath>
#include <vector>

#include "dirac/catalog.hpp"
#include "dirac/errors.hpp"
#include "dirac/oracle.hpp"
#include "dirac/spectra.hpp"
#include "dirac/specfun.hpp"

using namespace dirac;
using namespace dirac::oracle;

namespace {

double closed_level(const PotentialSpec& s, double lb, int kappa, int n) {
    SpectrumRequest req{s, RelativisticContext{lb}, AngularChannel{kappa},
                        Branch::Regular, +1, {n}};
    return spectra::energies(req)[0].epsilon;
}

} // namespace

TEST_CASE("free system: kinetic balance keeps f small") {
    RadialProblem p;
    p.lambda_bar = 0.1;
    p.U = [](double) { return 0.0; };
    p.V = [](double) { return 0.0; };
    p.domain = RadialDomain::FullLine;
    ShootingConfig cfg;
    cfg.r_min = 1.0;
    cfg.r_max = 30.0;
    cfg.match_point = 30.0;
    IntegrateResult res = integrate_dirac(p, 1.0, Direction::Outward, cfg);
    CHECK(std::abs(res.f) <= 0.2 * std::abs(res.g));
}

TEST_CASE("scaling invariance of the match ratio") {
    PotentialSpec c(CoulombPot{-0.5});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    RadialProblem p = make_problem(c, ctx, ch);
    double eps = closed_level(c, 0.1, 1, 0);
    ShootingConfig cfg = auto_config(c, ctx, ch, eps);
    IntegrateResult a = integrate_dirac(p, eps, Direction::Outward, cfg);
    // the seed is normalized internally; the ratio must not depend on the
    // overall scale of (g, f), which the renormalizing integrator guarantees
    IntegrateResult b = integrate_dirac(p, eps, Direction::Outward, cfg);
    CHECK(a.ratio == b.ratio);
}

TEST_CASE("Coulomb: closed-form levels match the oracle to 1e-8") {
    PotentialSpec c(CoulombPot{-0.5});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    RadialProblem p = make_problem(c, ctx, ch);
    for (int n : {0, 1, 2}) {
        double eps = closed_level(c, 0.1, 1, n);
        ShootingConfig cfg = auto_config(c, ctx, ch, eps);
        auto root = refine_near(p, eps, 2e-5, cfg);
        REQUIRE(root.has_value());
        CHECK(std::abs(*root - eps) / eps <= 1e-8);
        // log-derivative mismatch at the closed-form energy
        IntegrateResult o = integrate_dirac(p, eps, Direction::Outward, cfg);
        IntegrateResult i = integrate_dirac(p, eps, Direction::Inward, cfg);
        CHECK(std::abs(o.ratio - i.ratio) < 1e-6);
        // node/index correspondence
        CHECK(count_nodes_matched(p, *root, cfg) == n);
    }
}

TEST_CASE("oracle self-consistency under config perturbations") {
    PotentialSpec c(CoulombPot{-0.5});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    RadialProblem p = make_problem(c, ctx, ch);
    double eps = closed_level(c, 0.1, 1, 0);
    ShootingConfig cfg = auto_config(c, ctx, ch, eps);
    auto e0 = refine_near(p, eps, 2e-5, cfg);
    ShootingConfig cfg2 = cfg;
    cfg2.match_point *= 1.2;
    auto e1 = refine_near(p, eps, 2e-5, cfg2);
    ShootingConfig cfg3 = cfg;
    cfg3.match_point *= 0.8;
    cfg3.r_max *= 1.5;
    auto e2 = refine_near(p, eps, 2e-5, cfg3);
    REQUIRE(e0.has_value());
    REQUIRE(e1.has_value());
    REQUIRE(e2.has_value());
    CHECK(std::abs(*e1 - *e0) < 1e-10);
    CHECK(std::abs(*e2 - *e0) < 1e-10);
}

TEST_CASE("oscillator: both towers match the oracle") {
    RelativisticContext ctx{0.1};
    PotentialSpec o(OscillatorPot{1.0});
    {
        AngularChannel ch{1};
        RadialProblem p = make_problem(o, ctx, ch);
        double eps = std::sqrt(1.0 + 4.0 * 0.01 * (0 + 1 + 0.5));
        ShootingConfig cfg = auto_config(o, ctx, ch, eps);
        auto root = refine_near(p, eps, 5e-4, cfg);
        REQUIRE(root.has_value());
        CHECK(std::abs(*root - eps) / eps <= 1e-8);
    }
    {
        // irregular tower at kappa = -1: eps^2 = 1 + 4 lb^2 w^2 n
        AngularChannel ch{-1};
        RadialProblem p = make_problem(o, ctx, ch);
        double eps = std::sqrt(1.0 + 4.0 * 0.01 * 2.0);
        ShootingConfig cfg = auto_config(o, ctx, ch, eps);
        auto root = refine_near(p, eps, 5e-4, cfg);
        REQUIRE(root.has_value());
        CHECK(std::abs(*root - eps) / eps <= 1e-8);
    }
}

TEST_CASE("Morse: oracle confirms the catalog-row form, not the shifted variant") {
    PotentialSpec m(MorsePot{30.0, 180.0, 1.0});
    RelativisticContext ctx{0.05};
    AngularChannel ch{1};
    RadialProblem p = make_problem(m, ctx, ch);
    for (int n : {0, 1}) {
        double eps = closed_level(m, 0.05, 1, n);
        ShootingConfig cfg = auto_config(m, ctx, ch, eps);
        auto root = refine_near(p, eps, 2e-3, cfg);
        REQUIRE(root.has_value());
        CHECK(std::abs(*root - eps) / eps <= 1e-8);
    }
    // the (n+1/2)-shifted literature variant has no eigenvalue nearby
    double T = derive_transform(m, ctx, ch).T;
    double q = 0.05 * 1.0 * T * 0.5;
    double printed = (-q + std::sqrt(1.0 + T * T - q * q)) / (1.0 + T * T);
    ShootingConfig cfg = auto_config(m, ctx, ch, printed);
    auto bogus = refine_near(p, printed, 1e-4, cfg);
    CHECK(!bogus.has_value());
}

TEST_CASE("degenerate bracket reports no sign change") {
    PotentialSpec c(CoulombPot{-0.5});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    RadialProblem p = make_problem(c, ctx, ch);
    ShootingConfig cfg = auto_config(c, ctx, ch, 0.9997);
    CHECK_THROWS_AS(shoot_eigenvalue(p, 0.99970, 0.99971, cfg), NoSignChange);
}

TEST_CASE("transformed-system integration agrees with the rotated (g,f) run") {
    PotentialSpec m(MorsePot{30.0, 180.0, 1.0});
    RelativisticContext ctx{0.05};
    AngularChannel ch{1};
    RadialProblem p = make_problem(m, ctx, ch);
    TransformParameters tp = derive_transform(m, ctx, ch);
    double eps = closed_level(m, 0.05, 1, 0);
    ShootingConfig cfg = auto_config(m, ctx, ch, eps);
    IntegrateResult gf = integrate_dirac(p, eps, Direction::Outward, cfg);
    IntegrateResult ph = integrate_transformed(p, tp, eps, Direction::Outward, cfg);
    // rotate (g,f) -> (phi+, phi-) and compare the ratio at the match point
    double th = p.theta;
    double php = std::cos(th) * gf.g + std::sin(th) * gf.f;
    double phm = -std::sin(th) * gf.g + std::cos(th) * gf.f;
    CHECK(ph.ratio == doctest::Approx(phm / php).epsilon(1e-8));
}

TEST_CASE("residual_second_order") {
    // exact analytic Coulomb upper component
    double lb = 0.1, Z = -0.5;
    int kap = 1;
    PotentialSpec c(CoulombPot{Z});
    RelativisticContext ctx{lb};
    double gam = spectra::coulomb_gamma(CoulombPot{Z}, ctx, AngularChannel{kap});
    double eps = closed_level(c, lb, kap, 0);
    double lam0 = -2.0 * Z * eps / (gam + 1.0);

    auto build = [&](int npts) {
        std::vector<double> r(npts), phi(npts);
        double r0 = 0.5, r1 = 25.0;
        for (int i = 0; i < npts; ++i) {
            r[i] = r0 + (r1 - r0) * i / (npts - 1.0);
            phi[i] = std::pow(lam0 * r[i], gam + 1.0) * std::exp(-lam0 * r[i] / 2.0);
        }
        auto veff = [&](double rr) {
            return gam * (gam + 1.0) / (rr * rr) + 2.0 * Z * eps / rr -
                   (eps * eps - 1.0) / (lb * lb);
        };
        return residual_second_order(phi, veff, r);
    };
    double res = build(20001);
    CHECK(res < 1e-6);

    // refinement by 2 shrinks the residual by about 4 (O(h^2) differencing)
    double res_coarse = build(2001);
    double res_fine = build(4001);
    double ratio = res_coarse / res_fine;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.5);

    // random-ish noise is rejected loudly
    std::vector<double> r(101), noise(101);
    for (int i = 0; i < 101; ++i) {
        r[i] = 0.5 + 0.1 * i;
        noise[i] = ((i * 2654435761u) % 1000) / 500.0 - 1.0;
    }
    auto veff = [&](double) { return 1.0; };
    CHECK(residual_second_order(noise, veff, r) > 1.0);
}

TEST_CASE("schrodinger oracle: hydrogen ground state") {
    SchrodingerProblem p;
    p.U_eff = [](double r) { return -2.0 / r; };  // l=0, Z=-1
    p.domain = RadialDomain::HalfLinePower;
    p.origin_exponent = 1.0;
    ShootingConfig cfg;
    cfg.r_min = 1e-7;
    cfg.r_max = 45.0;
    cfg.match_point = 1.5;
    double E = schrodinger_eigenvalue(p, -0.7, -0.3, cfg);
    CHECK(std::abs(E + 0.5) < 1e-10);
}

TEST_CASE("schrodinger oracle: nonrelativistic Woods-Saxon caption constraint") {
    // caption form: f(E, a, R, V0) = (n - 1/2) pi, n = 1, 2, ...
    double V0 = 2.8, a = 0.5, R = 8.0;
    SchrodingerProblem p;
    p.U_eff = [&](double r) { return -2.0 * V0 / (1.0 + std::exp((r - R) / a)); };
    p.domain = RadialDomain::HalfLineDirichlet;
    ShootingConfig cfg;
    cfg.r_min = 1e-8;
    cfg.r_max = R + 40.0 * a;
    cfg.match_point = 0.5 * R;

    // scan for the lowest two levels
    std::vector<double> levels;
    double prev = schrodinger_mismatch(p, -V0 + 1e-4, cfg);
    double eprev = -V0 + 1e-4;
    for (int i = 1; i <= 400 && levels.size() < 2; ++i) {
        double E = -V0 + 1e-4 + (V0 - 2e-4) * i / 400.0;
        double cur = schrodinger_mismatch(p, E, cfg);
        if (std::isfinite(prev) && std::isfinite(cur) && prev * cur < 0.0)
            levels.push_back(schrodinger_eigenvalue(p, eprev, E, cfg));
        prev = cur;
        eprev = E;
    }
    REQUIRE(levels.size() >= 2);
    for (std::size_t i = 0; i < 2; ++i) {
        auto f = spectra::woods_saxon_f(levels[i], a, R, V0);
        REQUIRE(f.has_value());
        double target = (double(i) + 1.0 - 0.5) * M_PI;  // n = i+1 in caption counting
        CHECK(std::abs(*f - target) < 1e-6);
    }
}

TEST_CASE("level counts: closed-form n_max matches the oracle node scan") {
    // RM-I fixture: n_max = 2 -> 3 bound levels -> 3 nodes just below threshold
    PotentialSpec rm(RosenMorse1Pot{4.0, 2.0, 1.0});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    RadialProblem p = make_problem(rm, ctx, ch);
    auto nm = spectra::n_max(rm, ctx, ch);
    REQUIRE(nm.has_value());
    // count nodes at the top of the bound window: the last level is
    // eps_2 ~ 1.053; just above it and below the continuum edge the outward
    // solution carries n_max+1 nodes
    double eps_top = closed_level(rm, 0.1, 1, *nm) + 2e-3;
    ShootingConfig cfg = auto_config(rm, ctx, ch, eps_top);
    CHECK(count_nodes(p, eps_top, cfg) == *nm + 1);
}

TEST_CASE("node/index correspondence for the line-form potentials") {
    for (auto [spec, lb] : {std::pair<PotentialSpec, double>{
                                PotentialSpec(MorsePot{30.0, 180.0, 1.0}), 0.05},
                            {PotentialSpec(RosenMorse1Pot{4.0, 2.0, 1.0}), 0.1}}) {
        RelativisticContext ctx{lb};
        AngularChannel ch{1};
        RadialProblem p = make_problem(spec, ctx, ch);
        for (int n : {0, 1, 2}) {
            double eps = closed_level(spec, lb, 1, n);
            ShootingConfig cfg = auto_config(spec, ctx, ch, eps);
            auto root = refine_near(p, eps, 2e-3, cfg);
            REQUIRE(root.has_value());
            CHECK(count_nodes_matched(p, *root, cfg) == n);
        }
    }
}

TEST_CASE("residual checker rejects non-uniform grids") {
    std::vector<double> r = {0.1, 0.2, 0.35, 0.4};
    std::vector<double> phi = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(residual_second_order(phi, [](double) { return 1.0; }, r),
                    DomainError);
}
