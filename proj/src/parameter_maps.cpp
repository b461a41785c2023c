#include "dirac/parameter_maps.hpp"
#include "dirac/errors.hpp"

#include <cmath>
#include <limits>

namespace dirac::parameter_maps {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Scan-and-bisect a scalar equation g(eps) = 0 over (lo, hi); evaluations
// outside the admissible region surface as NaN and are skipped.
double solve_eps(const std::function<double(double)>& g_raw, double lo, double hi,
                 const char* who) {
    auto g = [&](double e) -> double {
        try {
            return g_raw(e);
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const int panels = 4000;
    double prev = g(lo);
    double eprev = lo;
    for (int i = 1; i <= panels; ++i) {
        double e = lo + (hi - lo) * double(i) / panels;
        double cur = g(e);
        if (std::isfinite(prev) && std::isfinite(cur) && prev * cur <= 0.0) {
            double a = eprev, b = e, fa = prev;
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                double m = 0.5 * (a + b);
                double fm = g(m);
                if (fa * fm <= 0.0) b = m;
                else { a = m; fa = fm; }
            }
            return 0.5 * (a + b);
        }
        prev = cur;
        eprev = e;
    }
    throw InconsistentMap(std::string(who) + ": no real eps solves the mapped spectrum");
}

} // namespace

double nonrel_limit_energy(double eps, const RelativisticContext& ctx) {
    return (eps * eps - 1.0) / (2.0 * ctx.lambda_bar * ctx.lambda_bar);
}

double nonrel_spectrum(PotentialTag tag, const nlohmann::json& params, int n) {
    switch (tag) {
        case PotentialTag::Coulomb: {
            double ell = params.at("ell"), Z = params.at("Z");
            double d = ell + n + 1.0;
            return -Z * Z / (2.0 * d * d);
        }
        case PotentialTag::Oscillator: {
            // [-d^2 + l(l+1)/r^2 + w^4 r^2 - 2E] psi = 0
            double ell = params.at("ell"), w = params.at("omega");
            return w * w * (2.0 * n + ell + 1.5);
        }
        case PotentialTag::Morse: {
            // [-d^2 + A^2 e^{-2 lam r} - A(2B + lam) e^{-lam r} - 2E] psi = 0
            double B = params.at("B"), lam = params.at("lambda");
            double t = B - n * lam;
            if (!(t > 0.0)) throw DomainError("morse nonrel: n beyond the bound tower");
            return -t * t / 2.0;
        }
        case PotentialTag::RosenMorse1:
        case PotentialTag::Eckart: {
            // [-d^2 -+ A(A+lam) sech^2/csch^2 + 2B tanh/coth + A^2 - 2E] psi = 0
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            double mu = A - n * lam;
            if (mu == 0.0) throw DomainError("rm-family nonrel: A - n lambda = 0");
            return 0.5 * (A * A - mu * mu - B * B / (mu * mu));
        }
        case PotentialTag::RosenMorse2:
        case PotentialTag::Scarf: {
            double A = params.at("A"), lam = params.at("lambda");
            double mu = A - n * lam;
            return 0.5 * (A * A - mu * mu);
        }
        case PotentialTag::PoschlTeller: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            double s = A + B;
            double gap = A - B - (2.0 * n + 1.0) * lam;
            return 0.5 * (s * s - gap * gap);
        }
        case PotentialTag::WoodsSaxon: {
            // root of f(E, a, R, V0) = (n + 1/2) pi in E
            double V0 = params.at("V0"), a = params.at("a"), R = params.at("R");
            double target = (n + 0.5) * kPi;
            auto g = [&](double E) {
                auto f = spectra::woods_saxon_f(E, a, R, V0);
                return f ? *f - target : std::numeric_limits<double>::quiet_NaN();
            };
            return solve_eps(g, -V0 + 1e-9, -1e-12, "woods-saxon nonrel");
        }
    }
    throw DomainError("nonrel_spectrum: bad tag");
}

std::vector<ParameterMap> maps_for(PotentialTag tag) {
    using MC = MapComponent;
    switch (tag) {
        case PotentialTag::Coulomb:
            return {
                {tag, MC::Upper, Branch::Regular,
                 {{"l", "gamma"}, {"Z", "Z eps"}, {"E", "(eps^2-1)/2lb^2"}}},
                {tag, MC::Upper, Branch::Irregular,
                 {{"l", "-gamma-1"}, {"Z", "Z eps"}, {"E", "(eps^2-1)/2lb^2"}}},
                {tag, MC::Lower, Branch::Regular,
                 {{"l", "gamma-1"}, {"Z", "Z eps"}, {"E", "(eps^2-1)/2lb^2"}}},
                {tag, MC::Lower, Branch::Irregular,
                 {{"l", "-gamma"}, {"Z", "Z eps"}, {"E", "(eps^2-1)/2lb^2"}}},
            };
        case PotentialTag::Oscillator:
            return {{tag, MC::Upper, Branch::Regular,
                     {{"l", "kappa"}, {"omega", "omega"},
                      {"E", "(eps^2-1)/2lb^2 + omega^2(1/2-kappa)"}}}};
        case PotentialTag::Morse:
            return {{tag, MC::Upper, Branch::Regular,
                     {{"A", "A"}, {"B", "eps B/A"}, {"E", "(eps^2-1)/2lb^2"}}}};
        case PotentialTag::RosenMorse1:
            return {
                {tag, MC::Upper, Branch::Regular,
                 {{"A", "lb B/T"}, {"B", "B eps"}, {"E", "(eps^2-1)/2lb^2"}}},
                {tag, MC::Upper, Branch::Irregular,
                 {{"A", "-lb B/T - lambda"}, {"B", "B eps"},
                  {"E", "(eps^2-1)/2lb^2 + lambda(lb B/T + lambda/2)"}}},
                {tag, MC::Lower, Branch::Regular,
                 {{"A", "lb B/T - lambda"}, {"B", "B eps"},
                  {"E", "(eps^2-1)/2lb^2 - lambda(lb B/T - lambda/2)"}}},
                {tag, MC::Lower, Branch::Irregular,
                 {{"A", "-lb B/T"}, {"B", "B eps"}, {"E", "(eps^2-1)/2lb^2"}}},
            };
        case PotentialTag::Eckart:
            return {{tag, MC::Upper, Branch::Regular,
                     {{"A", "A"}, {"B", "eps B"}, {"E", "(eps^2-1)/2lb^2"}}}};
        case PotentialTag::RosenMorse2:
        case PotentialTag::Scarf:
        case PotentialTag::PoschlTeller:
            return {{tag, MC::Upper, Branch::Regular,
                     {{"A", "A"}, {"B", "B"}, {"E", "(eps^2-1)/2lb^2"}}}};
        case PotentialTag::WoodsSaxon:
            return {{tag, MC::Upper, Branch::Regular,
                     {{"R", "R"}, {"a", "1/lambda"}, {"V0", "eps B - lambda^2/2"},
                      {"E", "(eps^2-1)/2lb^2"}}}};
    }
    throw DomainError("maps_for: bad tag");
}

double apply_map(const ParameterMap& map, int n, const PotentialSpec& spec,
                 const RelativisticContext& ctx, const AngularChannel& chan) {
    if (map.tag != spec.tag())
        throw DomainError("apply_map: map does not belong to this potential");
    const double lb = ctx.lambda_bar;

    switch (map.tag) {
        case PotentialTag::Coulomb: {
            const auto& p = spec.as<CoulombPot>();
            double gam = spectra::coulomb_gamma(p, ctx, chan);
            double ell;
            if (map.component == MapComponent::Upper)
                ell = map.branch == Branch::Regular ? gam : -gam - 1.0;
            else
                ell = map.branch == Branch::Regular ? gam - 1.0 : -gam;
            auto g = [&](double eps) {
                nlohmann::json pr = {{"ell", ell}, {"Z", p.Z * eps}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) -
                       nonrel_spectrum(PotentialTag::Coulomb, pr, n);
            };
            return solve_eps(g, 1e-6, 1.0 - 1e-12, "coulomb map");
        }
        case PotentialTag::Oscillator: {
            const auto& p = spec.as<OscillatorPot>();
            double w = p.omega, k = chan.kappa;
            auto g = [&](double eps) {
                nlohmann::json pr = {{"ell", k}, {"omega", w}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) + w * w * (0.5 - k) -
                       nonrel_spectrum(PotentialTag::Oscillator, pr, n);
            };
            double hi = std::sqrt(1.0 + 4.0 * lb * lb * w * w * (n + std::abs(k) + 2.0)) + 1.0;
            return solve_eps(g, 1e-6, hi, "oscillator map");
        }
        case PotentialTag::Morse: {
            const auto& p = spec.as<MorsePot>();
            auto g = [&](double eps) {
                nlohmann::json pr = {{"B", eps * p.B / p.A}, {"lambda", p.lambda}};
                pr["A"] = p.A;
                return (eps * eps - 1.0) / (2.0 * lb * lb) -
                       nonrel_spectrum(PotentialTag::Morse, pr, n);
            };
            return solve_eps(g, 1e-6, 1.0 - 1e-12, "morse map");
        }
        case PotentialTag::RosenMorse1: {
            const auto& p = spec.as<RosenMorse1Pot>();
            TransformParameters tp = derive_transform(spec, ctx, chan);
            double Asub, shift;
            if (map.component == MapComponent::Upper && map.branch == Branch::Regular) {
                Asub = lb * p.B / tp.T;  // = A
                shift = 0.0;
            } else if (map.component == MapComponent::Lower && map.branch == Branch::Regular) {
                Asub = lb * p.B / tp.T - p.lambda;
                shift = -p.lambda * (lb * p.B / tp.T - p.lambda / 2.0);
            } else {
                throw Unsupported("rosen-morse1 map: irregular choices are recorded but "
                                  "not backed by a closed nonrelativistic tower");
            }
            auto g = [&](double eps) {
                nlohmann::json pr = {{"A", Asub}, {"B", eps * p.B}, {"lambda", p.lambda}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) + shift -
                       nonrel_spectrum(PotentialTag::RosenMorse1, pr, n);
            };
            double hi = std::sqrt(1.0 + lb * lb * p.A * p.A) + 0.5;
            return solve_eps(g, 1e-6, hi, "rosen-morse1 map");
        }
        case PotentialTag::Eckart: {
            const auto& p = spec.as<EckartPot>();
            auto g = [&](double eps) {
                nlohmann::json pr = {{"A", p.A}, {"B", eps * p.B}, {"lambda", p.lambda}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) -
                       nonrel_spectrum(PotentialTag::Eckart, pr, n);
            };
            return solve_eps(g, 1e-6, 1.0 - 1e-12, "eckart map");
        }
        case PotentialTag::RosenMorse2:
        case PotentialTag::Scarf: {
            double A = map.tag == PotentialTag::RosenMorse2 ? spec.as<RosenMorse2Pot>().A
                                                            : spec.as<ScarfPot>().A;
            double lam = map.tag == PotentialTag::RosenMorse2
                             ? spec.as<RosenMorse2Pot>().lambda
                             : spec.as<ScarfPot>().lambda;
            auto g = [&](double eps) {
                nlohmann::json pr = {{"A", A}, {"lambda", lam}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) -
                       nonrel_spectrum(PotentialTag::RosenMorse2, pr, n);
            };
            double hi = std::sqrt(1.0 + lb * lb * A * A) + 0.5;
            return solve_eps(g, 1e-6, hi, "rm2/scarf map");
        }
        case PotentialTag::PoschlTeller: {
            const auto& p = spec.as<PoschlTellerPot>();
            auto g = [&](double eps) {
                nlohmann::json pr = {{"A", p.A}, {"B", p.B}, {"lambda", p.lambda}};
                return (eps * eps - 1.0) / (2.0 * lb * lb) -
                       nonrel_spectrum(PotentialTag::PoschlTeller, pr, n);
            };
            double hi = std::sqrt(1.0 + lb * lb * (p.A + p.B) * (p.A + p.B)) + 0.5;
            return solve_eps(g, 1e-6, hi, "poschl-teller map");
        }
        case PotentialTag::WoodsSaxon: {
            const auto& p = spec.as<WoodsSaxonPot>();
            double target = (n + 0.5) * kPi;
            auto g = [&](double eps) {
                auto f = spectra::woods_saxon_f_rel(p, ctx, eps);
                return f ? *f - target : std::numeric_limits<double>::quiet_NaN();
            };
            double q = lb * lb * p.B;
            double lo = -q + std::sqrt(q * q + 1.0 + lb * lb * p.lambda * p.lambda) + 1e-9;
            return solve_eps(g, lo, 1.0 - 1e-12, "woods-saxon map");
        }
    }
    throw DomainError("apply_map: bad tag");
}

NonrelReference schrodinger_reference(PotentialTag tag, const nlohmann::json& params) {
    NonrelReference ref;
    switch (tag) {
        case PotentialTag::Coulomb: {
            double ell = params.at("ell"), Z = params.at("Z");
            ref.U_eff = [ell, Z](double r) { return ell * (ell + 1.0) / (r * r) + 2.0 * Z / r; };
            ref.domain = RadialDomain::HalfLinePower;
            ref.origin_exponent = ell + 1.0;
            break;
        }
        case PotentialTag::Oscillator: {
            double ell = params.at("ell"), w = params.at("omega");
            ref.U_eff = [ell, w](double r) {
                return ell * (ell + 1.0) / (r * r) + std::pow(w, 4) * r * r;
            };
            ref.domain = RadialDomain::HalfLinePower;
            ref.origin_exponent = ell + 1.0;
            break;
        }
        case PotentialTag::Morse: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double e = std::exp(-lam * r);
                return A * A * e * e - A * (2.0 * B + lam) * e;
            };
            ref.domain = RadialDomain::FullLine;
            break;
        }
        case PotentialTag::RosenMorse1: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double s = 1.0 / std::cosh(lam * r);
                return -A * (A + lam) * s * s + 2.0 * B * std::tanh(lam * r) + A * A;
            };
            ref.domain = RadialDomain::FullLine;
            break;
        }
        case PotentialTag::Eckart: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double s = 1.0 / std::sinh(lam * r);
                double c = std::cosh(lam * r) * s;
                return A * (A + lam) * s * s + 2.0 * B * c + A * A;
            };
            ref.domain = RadialDomain::HalfLinePower;
            ref.origin_exponent = -A / lam;  // principal branch for A < -lam/2
            break;
        }
        case PotentialTag::RosenMorse2: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double s = 1.0 / std::sinh(lam * r);
                return (A * A + B * B + lam * A) * s * s -
                       B * (2.0 * A + lam) * std::cosh(lam * r) * s * s + A * A;
            };
            ref.domain = RadialDomain::HalfLinePower;
            ref.origin_exponent = (B - A) / lam;
            break;
        }
        case PotentialTag::Scarf: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double c = 1.0 / std::cosh(lam * r);
                return -(A * A - B * B + lam * A) * c * c +
                       B * (2.0 * A + lam) * std::tanh(lam * r) * c + A * A;
            };
            ref.domain = RadialDomain::FullLine;
            break;
        }
        case PotentialTag::PoschlTeller: {
            double A = params.at("A"), B = params.at("B"), lam = params.at("lambda");
            ref.U_eff = [A, B, lam](double r) {
                double s = 1.0 / std::sinh(lam * r);
                double c = 1.0 / std::cosh(lam * r);
                return B * (B - lam) * s * s - A * (A - lam) * c * c +
                       (A + B) * (A + B);
            };
            ref.domain = RadialDomain::HalfLinePower;
            ref.origin_exponent = B / lam;
            break;
        }
        case PotentialTag::WoodsSaxon: {
            double V0 = params.at("V0"), a = params.at("a"), R = params.at("R");
            ref.U_eff = [V0, a, R](double r) {
                return -2.0 * V0 / (1.0 + std::exp((r - R) / a));
            };
            ref.domain = RadialDomain::HalfLineDirichlet;
            break;
        }
    }
    return ref;
}

} // namespace dirac::parameter_maps
