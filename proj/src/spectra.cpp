#include "dirac/spectra.hpp"
#include "dirac/errors.hpp"
#include "dirac/parallel.hpp"
#include "dirac/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dirac::spectra {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_request(const SpectrumRequest& req) {
    if (req.energy_sign != +1 && req.energy_sign != -1)
        throw DomainError("energy_sign must be +1 or -1");
    if (!std::is_sorted(req.n_list.begin(), req.n_list.end()))
        throw DomainError("n_list must be sorted ascending");
    for (int n : req.n_list)
        if (n < 0) throw DomainError("n must be >= 0");
}

} // namespace

double coulomb_gamma(const CoulombPot& p, const RelativisticContext& ctx,
                     const AngularChannel& chan) {
    double disc = double(chan.kappa) * chan.kappa - ctx.lambda_bar * ctx.lambda_bar * p.Z * p.Z;
    if (disc <= 0.0) throw DomainError("coulomb: gamma imaginary (|lb Z| >= |kappa|)");
    return std::sqrt(disc);
}

std::vector<BoundState> coulomb_energy(const SpectrumRequest& req) {
    check_request(req);
    const auto& p = req.spec.as<CoulombPot>();
    const double lb = req.ctx.lambda_bar;
    const double gam = coulomb_gamma(p, req.ctx, req.chan);
    if (req.branch == Branch::Regular && req.chan.kappa < 0)
        throw BranchError("coulomb regular branch requires kappa > 0");
    if (req.branch == Branch::Irregular && req.chan.kappa > 0)
        throw BranchError("coulomb irregular branch requires kappa < 0");
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double denom = req.branch == Branch::Regular ? (n + gam + 1.0) : (n - gam);
        double x = lb * p.Z / denom;
        double eps = req.energy_sign / std::sqrt(1.0 + x * x);
        out.push_back({n, req.branch, req.energy_sign, eps});
    }
    return out;
}

std::vector<BoundState> oscillator_energy(const SpectrumRequest& req) {
    check_request(req);
    const auto& p = req.spec.as<OscillatorPot>();
    const double lb = req.ctx.lambda_bar;
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double rad = req.branch == Branch::Regular
                         ? 1.0 + 4.0 * lb * lb * p.omega * p.omega * (n + req.chan.kappa + 0.5)
                         : 1.0 + 4.0 * lb * lb * p.omega * p.omega * n;
        if (rad < 0.0) throw DomainError("oscillator: negative radicand");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * std::sqrt(rad)});
    }
    return out;
}

namespace {

// Positive-energy Morse level, valid while n lb lambda < T.  Regular and
// irregular towers share the same quadratic (both follow from the
// oscillator-reference matching); the branches differ in the wavefunction
// pairing and in the negative-energy index convention.
double morse_level(double lb, double lam, double T, int n) {
    double q = n * lb * lam;
    double one = 1.0 + T * T;
    double rad = one - q * q;
    if (rad < 0.0) throw DomainError("morse: negative radicand");
    double eps = (q * T + std::sqrt(rad)) / one;
    if (!(T * eps - q > 0.0))
        throw DomainError("morse: n beyond n_max (state not bound)");
    return eps;
}

} // namespace

std::vector<BoundState> morse_energy(const SpectrumRequest& req) {
    check_request(req);
    const auto& p = req.spec.as<MorsePot>();
    const double lb = req.ctx.lambda_bar;
    TransformParameters tp = derive_transform(req.spec, req.ctx, req.chan);
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double eps;
        if (req.energy_sign > 0) {
            eps = morse_level(lb, p.lambda, tp.T, n);
        } else {
            // eps_n^- = -eps_n (regular); eps-bar_n^- = -eps-bar_{n+1} (irregular)
            int m = req.branch == Branch::Regular ? n : n + 1;
            eps = -morse_level(lb, p.lambda, tp.T, m);
        }
        out.push_back({n, req.branch, req.energy_sign, eps});
    }
    return out;
}

namespace {

// Shared RM-I / Eckart closed form:
//   eps_n^2 = [1 + lb^2 A^2 - lb^2 lam^2 mu_n^2] / [1 + (lb B / lam mu_n)^2],
//   mu_n = A/lam - n, nu_n = eps_n B / lam^2 mu_n.
double rm_family_level(double lb, double A, double B, double lam, int n,
                       const char* who) {
    double mu = A / lam - n;
    if (mu == 0.0) throw DomainError(std::string(who) + ": mu_n = 0");
    double num = 1.0 + lb * lb * A * A - lb * lb * lam * lam * mu * mu;
    if (num <= 0.0) throw DomainError(std::string(who) + ": negative radicand");
    double den = 1.0 + (lb * B / (lam * mu)) * (lb * B / (lam * mu));
    return std::sqrt(num / den);
}

} // namespace

std::vector<BoundState> rosen_morse1_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("rosen-morse1: irregular branch not provided by the closed forms");
    const auto& p = req.spec.as<RosenMorse1Pot>();
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double mu = p.A / p.lambda - n;
        if (!(mu > 0.0)) throw DomainError("rosen-morse1: mu_n <= 0");
        double eps = rm_family_level(req.ctx.lambda_bar, p.A, p.B, p.lambda, n, "rosen-morse1");
        // full-line decay on both sides: mu_n > |nu_n|
        double nu = eps * p.B / (p.lambda * p.lambda * mu);
        if (!(mu > std::abs(nu)))
            throw DomainError("rosen-morse1: n beyond n_max (tail does not decay)");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * eps});
    }
    return out;
}

std::vector<BoundState> eckart_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("eckart: irregular branch not provided by the closed forms");
    const auto& p = req.spec.as<EckartPot>();
    // the closed form behaves like r^{-A/lambda} at the origin; that is the
    // principal solution only for A <= -lambda/2
    if (!(p.A <= -p.lambda / 2.0))
        throw DomainError("eckart: requires A <= -lambda/2 (repulsive core)");
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double mu = p.A / p.lambda - n;  // < 0
        double eps = rm_family_level(req.ctx.lambda_bar, p.A, p.B, p.lambda, n, "eckart");
        // decay at infinity: mu_n + nu_n > 0
        double nu = eps * p.B / (p.lambda * p.lambda * mu);
        if (!(mu + nu > 0.0))
            throw DomainError("eckart: n beyond n_max (tail does not decay)");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * eps});
    }
    return out;
}

namespace {

double rm2_scarf_level(double lb, double A, double lam, int n, const char* who) {
    if (!(A / lam - n > 0.0))
        throw DomainError(std::string(who) + ": n beyond n_max (A/lambda - n <= 0)");
    double mu = A / lam - n;
    double rad = 1.0 + lb * lb * A * A - lb * lb * lam * lam * mu * mu;
    if (rad < 0.0) throw DomainError(std::string(who) + ": negative radicand");
    return std::sqrt(rad);
}

} // namespace

std::vector<BoundState> rosen_morse2_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("rosen-morse2: irregular branch not provided by the closed forms");
    const auto& p = req.spec.as<RosenMorse2Pot>();
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double eps = rm2_scarf_level(req.ctx.lambda_bar, p.A, p.lambda, n, "rosen-morse2");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * eps});
    }
    return out;
}

std::vector<BoundState> scarf_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("scarf: irregular branch not provided by the closed forms");
    const auto& p = req.spec.as<ScarfPot>();
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        double eps = rm2_scarf_level(req.ctx.lambda_bar, p.A, p.lambda, n, "scarf");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * eps});
    }
    return out;
}

std::vector<BoundState> poschl_teller_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("poschl-teller: irregular branch not provided by the closed forms");
    const auto& p = req.spec.as<PoschlTellerPot>();
    const double lb = req.ctx.lambda_bar;
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        // bound while A - B - (2n+1) lambda > 0
        double gap = p.A - p.B - (2.0 * n + 1.0) * p.lambda;
        if (!(gap > 0.0))
            throw DomainError("poschl-teller: n beyond n_max");
        double s = p.A + p.B;
        double rad = 1.0 + lb * lb * s * s - lb * lb * gap * gap;
        if (rad < 0.0) throw DomainError("poschl-teller: negative radicand");
        out.push_back({n, req.branch, req.energy_sign, req.energy_sign * std::sqrt(rad)});
    }
    return out;
}

std::optional<double> woods_saxon_f(double E, double a, double R, double V0) {
    using specfun::cplx;
    double mu2 = -2.0 * a * a * E;
    double v2 = 2.0 * a * a * V0 - mu2;
    if (mu2 <= 0.0 || v2 <= 0.0) return std::nullopt;
    double mu = std::sqrt(mu2), v = std::sqrt(v2);
    return v * R / a - std::atan2(v, mu) + specfun::arg_gamma(cplx(0.0, 2.0 * v)) -
           2.0 * specfun::arg_gamma(cplx(mu, v));
}

std::optional<double> woods_saxon_f_rel(const WoodsSaxonPot& p,
                                        const RelativisticContext& ctx, double eps) {
    const double lb = ctx.lambda_bar;
    double E = (eps * eps - 1.0) / (2.0 * lb * lb);
    double V0 = eps * p.B - p.lambda * p.lambda / 2.0;
    return woods_saxon_f(E, 1.0 / p.lambda, p.R, V0);
}

namespace {

struct WsRoot {
    int n;
    double eps;
};

// Scan the admissible window eps in (-1+delta, 1-delta) in uniform panels
// for sign changes of f - (n+1/2)pi and bisect.  Panels are evaluated by the
// parallel kernel and merged in panel order.
std::vector<WsRoot> ws_scan_roots(const WoodsSaxonPot& p, const RelativisticContext& ctx,
                                  int want_max_n) {
    const int panels = 2000;
    const double delta = 1e-6;
    // v^2 > 0 requires eps^2 + 2 lb^2 B eps - (1 + lb^2 lam^2) > 0; panels
    // below that edge only produce skipped (inadmissible) evaluations, so the
    // scan window starts at the edge.
    const double lb = ctx.lambda_bar;
    double q = lb * lb * p.B;
    double eps_edge = -q + std::sqrt(q * q + 1.0 + lb * lb * p.lambda * p.lambda);
    const double lo = std::max(-1.0 + delta, eps_edge + delta), hi = 1.0 - delta;
    if (lo >= hi) return {};
    std::vector<double> fvals = par::map_indexed<double>(panels + 1, [&](std::size_t i) {
        double eps = lo + (hi - lo) * double(i) / panels;
        auto f = woods_saxon_f_rel(p, ctx, eps);
        return f ? *f : std::numeric_limits<double>::quiet_NaN();
    });
    std::vector<WsRoot> roots;
    for (int n = 0; n <= want_max_n; ++n) {
        double target = (n + 0.5) * kPi;
        for (int i = 0; i < panels; ++i) {
            double fa = fvals[i], fb = fvals[i + 1];
            if (std::isnan(fa) || std::isnan(fb)) continue;
            double da = fa - target, db = fb - target;
            if (da == 0.0) {
                roots.push_back({n, lo + (hi - lo) * double(i) / panels});
                break;
            }
            if (da * db < 0.0) {
                double a = lo + (hi - lo) * double(i) / panels;
                double b = lo + (hi - lo) * double(i + 1) / panels;
                double va = da;
                for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                    double m = 0.5 * (a + b);
                    auto fm = woods_saxon_f_rel(p, ctx, m);
                    double dm = (fm ? *fm : std::numeric_limits<double>::quiet_NaN()) - target;
                    if (std::isnan(dm)) break;
                    if (va * dm <= 0.0) b = m;
                    else { a = m; va = dm; }
                }
                roots.push_back({n, 0.5 * (a + b)});
                break;
            }
        }
    }
    return roots;
}

} // namespace

std::vector<BoundState> woods_saxon_energy(const SpectrumRequest& req) {
    check_request(req);
    if (req.branch != Branch::Regular)
        throw BranchError("woods-saxon: irregular branch not provided");
    if (req.energy_sign != +1)
        throw DomainError("woods-saxon: the boundary constraint binds the + energy branch");
    const auto& p = req.spec.as<WoodsSaxonPot>();
    int nmax_req = req.n_list.empty() ? 0 : req.n_list.back();
    auto roots = ws_scan_roots(p, req.ctx, nmax_req);
    std::vector<BoundState> out;
    for (int n : req.n_list) {
        auto it = std::find_if(roots.begin(), roots.end(),
                               [n](const WsRoot& r) { return r.n == n; });
        if (it == roots.end())
            throw NoRoot("woods-saxon: no root for requested n in the admissible window");
        out.push_back({n, req.branch, req.energy_sign, it->eps});
    }
    return out;
}

std::vector<BoundState> energies(const SpectrumRequest& req) {
    switch (req.spec.tag()) {
        case PotentialTag::Coulomb:      return coulomb_energy(req);
        case PotentialTag::Oscillator:   return oscillator_energy(req);
        case PotentialTag::Morse:        return morse_energy(req);
        case PotentialTag::RosenMorse1:  return rosen_morse1_energy(req);
        case PotentialTag::Eckart:       return eckart_energy(req);
        case PotentialTag::RosenMorse2:  return rosen_morse2_energy(req);
        case PotentialTag::Scarf:        return scarf_energy(req);
        case PotentialTag::PoschlTeller: return poschl_teller_energy(req);
        case PotentialTag::WoodsSaxon:   return woods_saxon_energy(req);
    }
    throw DomainError("energies: bad tag");
}

std::optional<int> n_max(const PotentialSpec& spec, const RelativisticContext& ctx,
                         const AngularChannel& chan, Branch branch) {
    SpectrumRequest req{spec, ctx, chan, branch, +1, {}};
    switch (spec.tag()) {
        case PotentialTag::Coulomb:
        case PotentialTag::Oscillator:
            return std::nullopt;
        case PotentialTag::WoodsSaxon: {
            auto roots = ws_scan_roots(spec.as<WoodsSaxonPot>(), ctx, 64);
            if (roots.empty()) return -1;
            int best = -1;
            for (const auto& r : roots) best = std::max(best, r.n);
            return best;
        }
        default: {
            // walk the closed form until it throws
            int n = 0;
            const int cap = 100000;
            while (n < cap) {
                req.n_list = {n};
                try {
                    energies(req);
                } catch (const DomainError&) {
                    return n - 1;
                }
                ++n;
            }
            return cap;
        }
    }
}

} // namespace dirac::spectra
