#include "dirac/xpct.hpp"
#include "dirac/errors.hpp"
#include "dirac/parallel.hpp"
#include "dirac/specfun.hpp"

#include <cmath>

namespace dirac::xpct {

double XPCTMap::q(double rho) const {
    switch (q_tag) {
        case QTag::Identity: return rho;
        case QTag::RhoSquared: return rho * rho;
        case QTag::LogRho: return -2.0 / param * std::log(rho);
        case QTag::ArctanhCosh:
        case QTag::ArccothCosh: {
            // coth^-1(cosh(lam rho)) = acosh-free stable form; the arctanh row
            // differs by the constant i pi/(2 lam) dropped on the real section
            double c = std::cosh(param * rho);
            return 0.5 / param * std::log((c + 1.0) / (c - 1.0));
        }
        case QTag::ScarfComplex: return -rho;  // real section of sinh^-1[-i cosh]/lam
        case QTag::HalfRho: return rho / 2.0;
        case QTag::PowerLaw: return std::pow(rho, param + 1.0);
    }
    throw DomainError("XPCTMap::q: bad tag");
}

double XPCTMap::qp(double rho) const {
    switch (q_tag) {
        case QTag::Identity: return 1.0;
        case QTag::RhoSquared: return 2.0 * rho;
        case QTag::LogRho: return -2.0 / (param * rho);
        case QTag::ArctanhCosh:
        case QTag::ArccothCosh: return -1.0 / std::sinh(param * rho);
        case QTag::ScarfComplex: return -1.0;
        case QTag::HalfRho: return 0.5;
        case QTag::PowerLaw: return (param + 1.0) * std::pow(rho, param);
    }
    throw DomainError("XPCTMap::qp: bad tag");
}

double XPCTMap::qpp(double rho) const {
    switch (q_tag) {
        case QTag::Identity: return 0.0;
        case QTag::RhoSquared: return 2.0;
        case QTag::LogRho: return 2.0 / (param * rho * rho);
        case QTag::ArctanhCosh:
        case QTag::ArccothCosh: {
            double s = std::sinh(param * rho);
            return param * std::cosh(param * rho) / (s * s);
        }
        case QTag::ScarfComplex: return 0.0;
        case QTag::HalfRho: return 0.0;
        case QTag::PowerLaw: return param * (param + 1.0) * std::pow(rho, param - 1.0);
    }
    throw DomainError("XPCTMap::qpp: bad tag");
}

double XPCTMap::rho_of(double r) const {
    switch (q_tag) {
        case QTag::Identity: return r;
        case QTag::RhoSquared:
            if (r < 0.0) throw SingularMap("rho^2 map: r must be >= 0");
            return std::sqrt(r);
        case QTag::LogRho: return std::exp(-param * r / 2.0);
        case QTag::ArctanhCosh:
        case QTag::ArccothCosh: {
            // cosh(lam rho) = coth(lam r), r > 0
            double c = std::cosh(param * r) / std::sinh(param * r);
            return std::acosh(c) / param;
        }
        case QTag::ScarfComplex: return -r;
        case QTag::HalfRho: return 2.0 * r;
        case QTag::PowerLaw: return std::pow(r, 1.0 / (param + 1.0));
    }
    throw DomainError("XPCTMap::rho_of: bad tag");
}

XPCTMap make_map(QTag tag, double param, PotentialTag reference, PotentialTag target) {
    XPCTMap m;
    m.q_tag = tag;
    m.param = param;
    m.reference = reference;
    m.target = target;
    m.complex_section = tag == QTag::ArctanhCosh || tag == QTag::ScarfComplex;
    switch (tag) {
        case QTag::Identity: m.q_display = "rho"; break;
        case QTag::RhoSquared: m.q_display = "rho^2"; break;
        case QTag::LogRho: m.q_display = "-(2/tau) ln rho"; break;
        case QTag::ArctanhCosh: m.q_display = "atanh[cosh(lam rho)]/lam"; break;
        case QTag::ArccothCosh: m.q_display = "acoth[cosh(lam rho)]/lam"; break;
        case QTag::ScarfComplex: m.q_display = "asinh[-i cosh(lam rho)]/lam"; break;
        case QTag::HalfRho: m.q_display = "rho/2"; break;
        case QTag::PowerLaw: m.q_display = "rho^(nu+1)"; break;
    }
    return m;
}

std::vector<XPCTMap> table4(double param) {
    using PT = PotentialTag;
    return {
        make_map(QTag::RhoSquared, param, PT::Oscillator, PT::Coulomb),
        make_map(QTag::Identity, param, PT::Oscillator, PT::Oscillator),
        make_map(QTag::LogRho, param, PT::Oscillator, PT::Morse),
        make_map(QTag::ArctanhCosh, param, PT::RosenMorse2, PT::RosenMorse1),
        make_map(QTag::ArccothCosh, param, PT::RosenMorse2, PT::Eckart),
        make_map(QTag::Identity, param, PT::RosenMorse2, PT::RosenMorse2),
        make_map(QTag::ScarfComplex, param, PT::RosenMorse2, PT::Scarf),
        make_map(QTag::HalfRho, param, PT::RosenMorse2, PT::PoschlTeller),
        make_map(QTag::PowerLaw, param, PT::Oscillator, PT::Oscillator),
    };
}

InducedPotential induced_potential(const XPCTMap& map,
                                   const std::function<double(double)>& U_hat,
                                   double xi_hat, double C_hat,
                                   const PotentialSpec& target,
                                   const RelativisticContext& ctx,
                                   const AngularChannel& target_chan,
                                   const std::vector<double>& r_grid) {
    InducedPotential out;
    out.h = par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
        double rho = map.rho_of(r_grid[i]);
        double qp = map.qp(rho);
        if (qp == 0.0) throw SingularMap("induced_potential: q' vanishes on the grid");
        return (-xi_hat + C_hat * U_hat(rho) - map.qpp(rho) / (2.0 * qp)) / qp;
    });

    // kappa of the target problem from the 1/r coefficient of the induced U
    TransformParameters tp = derive_transform(target, ctx, target_chan);
    {
        auto at = [&](double r) {
            double rho = map.rho_of(r);
            double qp = map.qp(rho);
            return (-xi_hat + C_hat * U_hat(rho) - map.qpp(rho) / (2.0 * qp)) / qp;
        };
        double r1 = 1e-6, r2 = 2e-6;
        double k1 = r1 * at(r1), k2 = r2 * at(r2);
        out.kappa_target = (2.0 * k1 - k2) / tp.C;  // Richardson toward r -> 0
    }

    // least-squares additive constant against the target's -xi + C U
    double sum = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double lhs = -tp.xi + tp.C * target.U(r_grid[i], target_chan.kappa, ctx);
        sum += lhs - out.h[i];
    }
    out.fitted_const = sum / double(r_grid.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double lhs = -tp.xi + tp.C * target.U(r_grid[i], target_chan.kappa, ctx);
        worst = std::max(worst, std::abs(lhs - out.h[i] - out.fitted_const));
    }
    out.residual = worst;
    return out;
}

EnergyRelation energy_relation(const XPCTMap& map, const PotentialSpec& target,
                               const RelativisticContext& ctx,
                               const AngularChannel& target_chan, int n,
                               MapComponent comp) {
    const double lb = ctx.lambda_bar;
    EnergyRelation rel;
    switch (map.q_tag) {
        case QTag::Identity: {
            SpectrumRequest req{target, ctx, target_chan, Branch::Regular, +1, {n}};
            rel.eps = spectra::energies(req)[0].epsilon;
            rel.kappa_hat = target_chan.kappa;
            return rel;
        }
        case QTag::LogRho: {
            // oscillator -> Morse: matching the exponential and constant
            // terms of the covariance relation gives
            // eps^2 - 1 = -(T eps - n tau lb)^2 (upper route) with the
            // back-solution khat = +-(2 T eps/lb tau + 1/2) - 2n - 1
            const auto& p = target.as<MorsePot>();
            TransformParameters tp = derive_transform(target, ctx, target_chan);
            double tau = p.lambda;  // range parameter of the target row
            double one = 1.0 + tp.T * tp.T;
            double qn = n * lb * tau;
            double rad = one - qn * qn;
            if (rad < 0.0) throw NoSolution("log-rho map: negative discriminant");
            if (comp == MapComponent::Upper) {
                rel.eps = (qn * tp.T + std::sqrt(rad)) / one;
                rel.kappa_hat = (2.0 * tp.T * rel.eps / (lb * tau) + 0.5) - 2.0 * n - 1.0;
            } else {
                rel.eps = -(qn * tp.T + std::sqrt(rad)) / one;
                rel.kappa_hat = -(2.0 * tp.T * rel.eps / (lb * tau) + 0.5) - 2.0 * n - 1.0;
            }
            return rel;
        }
        case QTag::RhoSquared: {
            // oscillator -> Coulomb: matching constants gives
            // eps^2 = 1 - lb^2 w^4/4 with w^2 = -2 Z eps/(gamma + n + 1)
            const auto& p = target.as<CoulombPot>();
            double gam = spectra::coulomb_gamma(p, ctx, target_chan);
            double d = n + gam + 1.0;
            double x = lb * p.Z / d;
            rel.eps = 1.0 / std::sqrt(1.0 + x * x);
            rel.kappa_hat = 2.0 * gam + 0.5;
            return rel;
        }
        default:
            throw Unsupported("energy_relation: analytic matching implemented for the "
                              "identity, rho^2 and log-rho rows");
    }
}

namespace {

// 4-point Lagrange interpolation on a sorted grid.
double interp4(const std::vector<double>& x, const std::vector<double>& y, double xq) {
    const std::size_t n = x.size();
    auto it = std::lower_bound(x.begin(), x.end(), xq);
    std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
    std::size_t s = i < 1 ? 0 : (i + 3 > n ? n - 4 : i - 1);
    double acc = 0.0;
    for (std::size_t j = s; j < s + 4; ++j) {
        double w = 1.0;
        for (std::size_t k = s; k < s + 4; ++k)
            if (k != j) w *= (xq - x[k]) / (x[j] - x[k]);
        acc += w * y[j];
    }
    return acc;
}

} // namespace

RadialSpinor oscillator_reference_spinor(double omega, double kappa_hat, int n,
                                         const RelativisticContext& ctx,
                                         const std::vector<double>& rho_grid) {
    const double lb = ctx.lambda_bar;
    double eps = std::sqrt(1.0 + 4.0 * lb * lb * omega * omega * (n + kappa_hat + 0.5));
    RadialSpinor sp;
    sp.r = rho_grid;
    sp.state = BoundState{n, Branch::Regular, +1, eps};
    sp.phi_plus = par::map_indexed<double>(rho_grid.size(), [&](std::size_t i) {
        double rho = rho_grid[i];
        double y = omega * omega * rho * rho;
        return std::pow(omega * rho, kappa_hat + 1.0) * std::exp(-y / 2.0) *
               specfun::laguerre(n, kappa_hat + 0.5, y);
    });
    double ratio = (eps - 1.0) / (2.0 * lb * omega);  // balance-derived lower amplitude
    sp.phi_minus = par::map_indexed<double>(rho_grid.size(), [&](std::size_t i) {
        double rho = rho_grid[i];
        double y = omega * omega * rho * rho;
        return ratio * std::pow(omega * rho, kappa_hat) * std::exp(-y / 2.0) *
               specfun::laguerre(n, kappa_hat - 0.5, y);
    });
    std::vector<double> dens(rho_grid.size());
    for (std::size_t i = 0; i < rho_grid.size(); ++i)
        dens[i] = sp.phi_plus[i] * sp.phi_plus[i] + sp.phi_minus[i] * sp.phi_minus[i];
    sp.norm = wavefunctions::trapezoid(dens, rho_grid);
    return sp;
}

RadialSpinor transform_spinor(const XPCTMap& map, const RadialSpinor& reference,
                              double eps_hat, double C_hat,
                              const TransformParameters& target_tp, double eps_target,
                              const std::vector<double>& r_grid,
                              const PotentialSpec* target, const RelativisticContext* ctx,
                              const AngularChannel* target_chan) {
    if (std::abs(target_tp.C + eps_target) < 1e-12)
        throw SingularMap("transform_spinor: C + eps vanishes");
    RadialSpinor sp;
    sp.r = r_grid;
    sp.state = BoundState{reference.state.n, reference.state.branch, +1, eps_target};
    sp.phi_plus.resize(r_grid.size());
    double rho_lo = std::min(reference.r.front(), reference.r.back());
    double rho_hi = std::max(reference.r.front(), reference.r.back());
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        double rho = map.rho_of(r_grid[i]);
        if (rho < rho_lo || rho > rho_hi)
            throw DomainError("transform_spinor: target grid leaves the reference range");
        double qp = std::abs(map.qp(rho));
        double gp = std::sqrt(qp * std::abs((C_hat + eps_hat) / (target_tp.C + eps_target)));
        sp.phi_plus[i] = gp * interp4(reference.r, reference.phi_plus, rho);
    }
    // the transported Schroedinger-like component fixes its partner through
    // the first-order pair on the target side
    if (target && ctx && target_chan) {
        sp.phi_minus = wavefunctions::kinetic_balance(
            sp.phi_plus, wavefunctions::BalanceDirection::FromPlus, sp.state, *target, *ctx,
            *target_chan, target_tp, r_grid);
    } else {
        sp.phi_minus.assign(r_grid.size(), 0.0);
    }
    wavefunctions::normalize(sp);
    return sp;
}

} // namespace dirac::xpct
