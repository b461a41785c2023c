#include <doctest.h>

#include <cmath>

#include "dirac/errors.hpp"
#include "dirac/spectra.hpp"

using namespace dirac;
using namespace dirac::spectra;

namespace {
SpectrumRequest make_req(PotentialSpec spec, double lb, int kappa,
                         std::vector<int> ns, Branch br = Branch::Regular,
                         int sign = +1) {
    return SpectrumRequest{std::move(spec), RelativisticContext{lb},
                           AngularChannel{kappa}, br, sign, std::move(ns)};
}
} // namespace

TEST_CASE("coulomb spectrum") {
    // Z = 0: free case, eps = +-1
    auto st = coulomb_energy(make_req(PotentialSpec(CoulombPot{0.0}), 0.1, 1, {0, 1, 2}));
    for (const auto& s : st) CHECK(s.epsilon == 1.0);

    // frozen fixture (shooting-oracle adjudicated): lb=0.1 Z=-0.5 kappa=1
    auto v = coulomb_energy(make_req(PotentialSpec(CoulombPot{-0.5}), 0.1, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(0.999687255538).epsilon(1e-11));
    CHECK(v[1].epsilon == doctest::Approx(0.999861024202).epsilon(1e-11));

    // algebraic rearrangement of the closed form
    double lb = 0.1, Z = -0.5;
    double gam = coulomb_gamma(CoulombPot{Z}, RelativisticContext{lb}, AngularChannel{1});
    for (const auto& s : v) {
        double lhs = (1.0 / (s.epsilon * s.epsilon) - 1.0) * std::pow(s.n + gam + 1.0, 2);
        CHECK(lhs == doctest::Approx(lb * lb * Z * Z).epsilon(1e-12));
    }
    // kappa^2 - gamma^2 = lb^2 Z^2 to machine epsilon
    CHECK(1.0 - gam * gam == doctest::Approx(lb * lb * Z * Z).epsilon(1e-14));

    // branch guards
    CHECK_THROWS_AS(coulomb_energy(make_req(PotentialSpec(CoulombPot{-0.5}), 0.1, -1, {0})),
                    BranchError);
    CHECK_THROWS_AS(
        coulomb_energy(make_req(PotentialSpec(CoulombPot{-0.5}), 0.1, 1, {0}, Branch::Irregular)),
        BranchError);
}

TEST_CASE("coulomb lowest-state pair identity") {
    // irregular branch, kappa < 0: eps-bar_0 with the - sign equals gamma/kappa
    double lb = 0.1, Z = -0.5;
    int kap = -1;
    auto v = coulomb_energy(make_req(PotentialSpec(CoulombPot{Z}), lb, kap, {0},
                                     Branch::Irregular, -1));
    double gam = coulomb_gamma(CoulombPot{Z}, RelativisticContext{lb}, AngularChannel{kap});
    CHECK(v[0].epsilon == doctest::Approx(gam / kap).epsilon(1e-14));
}

TEST_CASE("oscillator spectrum") {
    // omega -> 0 limit
    auto v0 = oscillator_energy(make_req(PotentialSpec(OscillatorPot{1e-8}), 0.1, 1, {0, 3}));
    for (const auto& s : v0) CHECK(s.epsilon == doctest::Approx(1.0).epsilon(1e-14));

    // irregular n = 0: exactly 1
    auto vi = oscillator_energy(make_req(PotentialSpec(OscillatorPot{1.0}), 0.1, -1, {0},
                                         Branch::Irregular));
    CHECK(vi[0].epsilon == 1.0);

    // lb=0.1 omega=1 kappa=1 n=0 -> sqrt(1.06)
    auto vr = oscillator_energy(make_req(PotentialSpec(OscillatorPot{1.0}), 0.1, 1, {0}));
    CHECK(vr[0].epsilon == doctest::Approx(std::sqrt(1.06)).epsilon(1e-15));

    // linearity: eps_n^2 - 1 exactly linear in n with slope 4 lb^2 w^2
    auto vs = oscillator_energy(make_req(PotentialSpec(OscillatorPot{1.3}), 0.05, 2,
                                         {0, 1, 2, 3, 4}));
    double slope = 4.0 * 0.05 * 0.05 * 1.3 * 1.3;
    for (std::size_t i = 1; i < vs.size(); ++i) {
        double d = (vs[i].epsilon * vs[i].epsilon) - (vs[i - 1].epsilon * vs[i - 1].epsilon);
        CHECK(d == doctest::Approx(slope).epsilon(1e-13));
    }

    // negative radicand
    CHECK_THROWS_AS(
        oscillator_energy(make_req(PotentialSpec(OscillatorPot{40.0}), 0.1, -12, {0})),
        DomainError);
}

TEST_CASE("morse spectrum (oracle-adjudicated form = catalog row)") {
    // lb=0.05, lambda=1, T=0.3 via A=30, B=180
    PotentialSpec m(MorsePot{30.0, 180.0, 1.0});
    auto v = morse_energy(make_req(m, 0.05, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(0.957826285221).epsilon(1e-11));
    CHECK(v[1].epsilon == doctest::Approx(0.970488697918).epsilon(1e-11));
    CHECK(v[2].epsilon == doctest::Approx(0.980945398662).epsilon(1e-11));

    // n = 0 level is exactly C = 1/sqrt(1+T^2) on both branches
    RelativisticContext ctx{0.05};
    auto tp = derive_transform(m, ctx, AngularChannel{1});
    CHECK(v[0].epsilon == doctest::Approx(tp.C).epsilon(1e-14));
    auto vi = morse_energy(make_req(m, 0.05, 1, {0}, Branch::Irregular));
    CHECK(vi[0].epsilon == doctest::Approx(1.0 / std::sqrt(1.0 + tp.T * tp.T)).epsilon(1e-13));

    // energy_sign pairing: regular -eps_n, irregular -eps_{n+1}
    auto vm = morse_energy(make_req(m, 0.05, 1, {0, 1}, Branch::Regular, -1));
    CHECK(vm[0].epsilon == doctest::Approx(-v[0].epsilon).epsilon(1e-15));
    auto vim = morse_energy(make_req(m, 0.05, 1, {0}, Branch::Irregular, -1));
    CHECK(vim[0].epsilon == doctest::Approx(-v[1].epsilon).epsilon(1e-13));

    // equality with the catalog-row form A/tau^2 [lb^2 lam B n + sqrt(tau^2 - (lb lam A n)^2)]
    double lb = 0.05, A = 30.0, B = 180.0, lam = 1.0;
    double tau = std::sqrt(A * A + lb * lb * B * B);
    for (const auto& s : v) {
        double row = A / (tau * tau) *
                     (lb * lb * lam * B * s.n +
                      std::sqrt(tau * tau - std::pow(lb * lam * A * s.n, 2)));
        CHECK(s.epsilon == doctest::Approx(row).epsilon(1e-14));
    }

    // beyond n_max
    CHECK_THROWS_AS(morse_energy(make_req(m, 0.05, 1, {6})), DomainError);
}

TEST_CASE("rosen-morse1 spectrum") {
    PotentialSpec rm(RosenMorse1Pot{4.0, 2.0, 1.0});
    auto v = rosen_morse1_energy(make_req(rm, 0.1, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(0.998752338878).epsilon(1e-11));
    CHECK(v[1].epsilon == doctest::Approx(1.032116992751).epsilon(1e-11));
    CHECK(v[2].epsilon == doctest::Approx(1.053048380222).epsilon(1e-11));

    // B -> 0 (fixed A): the n = 0 level 1/sqrt(1+T^2) climbs to 1
    double prev = std::abs(v[0].epsilon - 1.0);
    for (double b : {0.6, 0.2, 0.06}) {
        PotentialSpec rs(RosenMorse1Pot{4.0, b, 1.0});
        auto w = rosen_morse1_energy(make_req(rs, 0.1, 1, {0}));
        double dev = std::abs(w[0].epsilon - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 2e-6);

    CHECK_THROWS_AS(rosen_morse1_energy(make_req(rm, 0.1, 1, {4})), DomainError);
    CHECK_THROWS_AS(rosen_morse1_energy(make_req(rm, 0.1, 1, {0}, Branch::Irregular)),
                    BranchError);
}

TEST_CASE("eckart spectrum") {
    PotentialSpec e(EckartPot{-4.0, -60.0, 1.0});
    auto v = eckart_energy(make_req(e, 0.1, 1, {0, 1, 2}));
    // monotone |eps_n| up to n_max
    CHECK(v[0].epsilon < v[1].epsilon);
    CHECK(v[1].epsilon < v[2].epsilon);
    // binding guard: at B=-30 the n=1 state fails the two-sided decay test
    PotentialSpec weak(EckartPot{-4.0, -30.0, 1.0});
    CHECK_NOTHROW(eckart_energy(make_req(weak, 0.1, 1, {0})));
    CHECK_THROWS_AS(eckart_energy(make_req(weak, 0.1, 1, {1})), DomainError);
    // requires a repulsive core
    CHECK_THROWS_AS(eckart_energy(make_req(PotentialSpec(EckartPot{4.0, -60.0, 1.0}),
                                           0.1, 1, {0})),
                    DomainError);
}

TEST_CASE("rosen-morse2 and scarf spectra") {
    PotentialSpec rm2(RosenMorse2Pot{3.2, 4.5, 1.0});
    auto v = rosen_morse2_energy(make_req(rm2, 0.1, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(1.0).epsilon(1e-15));  // n=0 sits exactly at 1
    CHECK(v[1].epsilon == doctest::Approx(1.026645021417).epsilon(1e-11));
    CHECK(v[2].epsilon == doctest::Approx(1.043072384832).epsilon(1e-11));

    PotentialSpec sc(ScarfPot{2.0, 0.5, 1.0});
    auto w = scarf_energy(make_req(sc, 0.1, 1, {0, 1}));
    CHECK(w[0].epsilon == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w[1].epsilon == doctest::Approx(1.014889156509).epsilon(1e-11));
    CHECK_THROWS_AS(scarf_energy(make_req(sc, 0.1, 1, {2})), DomainError);

    // bracket-vanish structure of the closed form at n = A/lambda:
    // eps would equal sqrt(1 + lb^2 A^2); that index is not a bound level,
    // so the operation refuses it.
    double lb = 0.1, A = 3.0;
    double formula_at_vanish = std::sqrt(1.0 + lb * lb * A * A);
    CHECK(formula_at_vanish == doctest::Approx(std::sqrt(1.09)).epsilon(1e-15));
    PotentialSpec rm2i(RosenMorse2Pot{3.0, 4.5, 1.0});
    CHECK_THROWS_AS(rosen_morse2_energy(make_req(rm2i, lb, 1, {3})), DomainError);
}

TEST_CASE("poschl-teller spectrum") {
    PotentialSpec pt(PoschlTellerPot{9.0, 1.0, 1.0});
    auto v = poschl_teller_energy(make_req(pt, 0.1, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(1.228820572744).epsilon(1e-11));
    CHECK(v[1].epsilon == doctest::Approx(1.322875655532).epsilon(1e-11));
    CHECK(v[2].epsilon == doctest::Approx(1.382027496109).epsilon(1e-11));
    CHECK_THROWS_AS(poschl_teller_energy(make_req(pt, 0.1, 1, {4})), DomainError);

    // all bound PT levels lie above the rest mass: eps^2 >= 1
    for (const auto& s : v) CHECK(s.epsilon >= 1.0);
}

TEST_CASE("woods-saxon spectrum") {
    PotentialSpec ws(WoodsSaxonPot{5.0, 4.0, 2.0});
    auto v = woods_saxon_energy(make_req(ws, 0.05, 1, {0, 1, 2}));
    CHECK(v[0].epsilon == doctest::Approx(0.9935361050021398).epsilon(1e-10));
    CHECK(v[1].epsilon == doctest::Approx(0.995702810629651).epsilon(1e-10));
    CHECK(v[2].epsilon == doctest::Approx(0.9982966983013366).epsilon(1e-10));

    // monotone in n
    CHECK(v[0].epsilon < v[1].epsilon);
    CHECK(v[1].epsilon < v[2].epsilon);

    // the returned roots re-satisfy the constraint to high accuracy
    RelativisticContext ctx{0.05};
    for (const auto& s : v) {
        auto f = woods_saxon_f_rel(ws.as<WoodsSaxonPot>(), ctx, s.epsilon);
        REQUIRE(f.has_value());
        CHECK(std::abs(*f - (s.n + 0.5) * M_PI) < 1e-10);
    }
}

TEST_CASE("sign symmetry of the +- closed forms") {
    std::vector<PotentialSpec> specs = {
        PotentialSpec(CoulombPot{-0.5}),
        PotentialSpec(OscillatorPot{1.0}),
        PotentialSpec(RosenMorse1Pot{4.0, 2.0, 1.0}),
        PotentialSpec(EckartPot{-4.0, -60.0, 1.0}),
        PotentialSpec(RosenMorse2Pot{3.2, 4.5, 1.0}),
        PotentialSpec(ScarfPot{2.0, 0.5, 1.0}),
        PotentialSpec(PoschlTellerPot{9.0, 1.0, 1.0}),
    };
    for (const auto& s : specs) {
        auto plus = energies(make_req(s, 0.1, 1, {0, 1}));
        auto minus = energies(make_req(s, 0.1, 1, {0, 1}, Branch::Regular, -1));
        for (std::size_t i = 0; i < plus.size(); ++i)
            CHECK(minus[i].epsilon == doctest::Approx(-plus[i].epsilon).epsilon(1e-15));
    }
}

TEST_CASE("branch ordering over fixtures") {
    std::vector<std::pair<PotentialSpec, double>> fixtures = {
        {PotentialSpec(CoulombPot{-0.5}), 0.1},
        {PotentialSpec(OscillatorPot{1.0}), 0.1},
        {PotentialSpec(MorsePot{30.0, 180.0, 1.0}), 0.05},
        {PotentialSpec(RosenMorse1Pot{4.0, 2.0, 1.0}), 0.1},
        {PotentialSpec(EckartPot{-4.0, -60.0, 1.0}), 0.1},
        {PotentialSpec(RosenMorse2Pot{3.2, 4.5, 1.0}), 0.1},
        {PotentialSpec(PoschlTellerPot{9.0, 1.0, 1.0}), 0.1},
    };
    for (const auto& [s, lb] : fixtures) {
        auto v = energies(make_req(s, lb, 1, {0, 1, 2}));
        CHECK(std::abs(v[0].epsilon) < std::abs(v[1].epsilon));
        CHECK(std::abs(v[1].epsilon) < std::abs(v[2].epsilon));
    }
}

TEST_CASE("n_max") {
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    CHECK(!spectra::n_max(PotentialSpec(CoulombPot{-0.5}), ctx, ch).has_value());
    CHECK(!spectra::n_max(PotentialSpec(OscillatorPot{1.0}), ctx, ch).has_value());

    // Morse: largest n with n lb lambda < T
    RelativisticContext c2{0.05};
    auto nm = spectra::n_max(PotentialSpec(MorsePot{30.0, 180.0, 1.0}), c2, ch);
    REQUIRE(nm.has_value());
    CHECK(*nm == 5);  // T = 0.3, lb*lambda = 0.05 -> n < 6

    auto nrm = spectra::n_max(PotentialSpec(RosenMorse1Pot{4.0, 2.0, 1.0}), ctx, ch);
    REQUIRE(nrm.has_value());
    CHECK(*nrm == 2);  // n=3 fails the two-sided decay condition

    auto nws = spectra::n_max(PotentialSpec(WoodsSaxonPot{5.0, 4.0, 2.0}), c2, ch);
    REQUIRE(nws.has_value());
    CHECK(*nws >= 2);
}

namespace {
// tiny deterministic generator for the property sweeps
struct Lcg {
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    double next(double lo, double hi) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        double u = double((s >> 11) & ((1ull << 52) - 1)) / double(1ull << 52);
        return lo + (hi - lo) * u;
    }
};
} // namespace

TEST_CASE("property sweep: sign symmetry and ordering on random parameters") {
    Lcg rng;
    for (int trial = 0; trial < 40; ++trial) {
        double lb = rng.next(0.02, 0.12);
        PotentialSpec spec = [&]() -> PotentialSpec {
            switch (trial % 4) {
                case 0: return PotentialSpec(CoulombPot{-rng.next(0.1, 0.9)});
                case 1: return PotentialSpec(OscillatorPot{rng.next(0.5, 2.0)});
                case 2: {
                    double A = rng.next(3.5, 8.0);
                    return PotentialSpec(RosenMorse1Pot{A, rng.next(0.5, 0.4 * A), 1.0});
                }
                default: {
                    double B = rng.next(0.6, 1.4);
                    return PotentialSpec(PoschlTellerPot{B + rng.next(4.0, 9.0), B, 1.0});
                }
            }
        }();
        auto plus = energies(make_req(spec, lb, 1, {0, 1}));
        auto minus = energies(make_req(spec, lb, 1, {0, 1}, Branch::Regular, -1));
        CHECK(minus[0].epsilon == -plus[0].epsilon);
        CHECK(minus[1].epsilon == -plus[1].epsilon);
        CHECK(std::abs(plus[0].epsilon) < std::abs(plus[1].epsilon));
    }
}

TEST_CASE("woods-saxon: requesting a level beyond the window reports NoRoot") {
    PotentialSpec ws(WoodsSaxonPot{5.0, 4.0, 2.0});
    CHECK_THROWS_AS(woods_saxon_energy(make_req(ws, 0.05, 1, {20})), NoRoot);
}
