#include "dirac/catalog.hpp"
#include "dirac/errors.hpp"

#include <cmath>

namespace dirac {

namespace {
double coth(double x) { return std::cosh(x) / std::sinh(x); }
} // namespace

const char* to_string(PotentialTag t) {
    switch (t) {
        case PotentialTag::Coulomb:      return "coulomb";
        case PotentialTag::Oscillator:   return "oscillator";
        case PotentialTag::Morse:        return "morse";
        case PotentialTag::RosenMorse1:  return "rosen-morse1";
        case PotentialTag::Eckart:       return "eckart";
        case PotentialTag::RosenMorse2:  return "rosen-morse2";
        case PotentialTag::Scarf:        return "scarf";
        case PotentialTag::PoschlTeller: return "poschl-teller";
        case PotentialTag::WoodsSaxon:   return "woods-saxon";
    }
    return "?";
}

PotentialTag tag_from_string(const std::string& name) {
    for (int i = 0; i <= int(PotentialTag::WoodsSaxon); ++i)
        if (name == to_string(PotentialTag(i))) return PotentialTag(i);
    throw DomainError("unknown potential: " + name);
}

PotentialSpec::PotentialSpec(Variant v) : v_(std::move(v)) { validate(); }

void PotentialSpec::validate() const {
    auto need_pos = [](double x, const char* what) {
        if (!(x > 0.0)) throw DomainError(std::string(what) + " must be > 0");
    };
    std::visit([&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, OscillatorPot>) {
            if (p.omega < 0.0) throw DomainError("omega must be >= 0");
        }
        else if constexpr (std::is_same_v<T, CoulombPot>) { (void)p; }
        else if constexpr (std::is_same_v<T, WoodsSaxonPot>) {
            need_pos(p.lambda, "lambda");
            need_pos(p.R, "R");
        } else {
            need_pos(p.lambda, "lambda");
            if (p.A == 0.0) throw DomainError("A must be nonzero");
        }
    }, v_);
}

PotentialTag PotentialSpec::tag() const {
    return std::visit([](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CoulombPot>) return PotentialTag::Coulomb;
        else if constexpr (std::is_same_v<T, OscillatorPot>) return PotentialTag::Oscillator;
        else if constexpr (std::is_same_v<T, MorsePot>) return PotentialTag::Morse;
        else if constexpr (std::is_same_v<T, RosenMorse1Pot>) return PotentialTag::RosenMorse1;
        else if constexpr (std::is_same_v<T, EckartPot>) return PotentialTag::Eckart;
        else if constexpr (std::is_same_v<T, RosenMorse2Pot>) return PotentialTag::RosenMorse2;
        else if constexpr (std::is_same_v<T, ScarfPot>) return PotentialTag::Scarf;
        else if constexpr (std::is_same_v<T, PoschlTellerPot>) return PotentialTag::PoschlTeller;
        else return PotentialTag::WoodsSaxon;
    }, v_);
}

double PotentialSpec::V(double r) const {
    return std::visit([&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CoulombPot>) return p.Z / r;
        else if constexpr (std::is_same_v<T, OscillatorPot>) return 0.0;
        else if constexpr (std::is_same_v<T, MorsePot>) return -p.B * std::exp(-p.lambda * r);
        else if constexpr (std::is_same_v<T, RosenMorse1Pot>) return p.B * std::tanh(p.lambda * r);
        else if constexpr (std::is_same_v<T, EckartPot>) return p.B * coth(p.lambda * r);
        else if constexpr (std::is_same_v<T, RosenMorse2Pot>) return 0.0;
        else if constexpr (std::is_same_v<T, ScarfPot>) return 0.0;
        else if constexpr (std::is_same_v<T, PoschlTellerPot>) return 0.0;
        else return -p.B / (1.0 + std::exp(p.lambda * (r - p.R)));
    }, v_);
}

double PotentialSpec::tau(const RelativisticContext& ctx) const {
    const double lb = ctx.lambda_bar;
    return std::visit([&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MorsePot> || std::is_same_v<T, RosenMorse1Pot> ||
                      std::is_same_v<T, EckartPot>) {
            // tau^2 = A^2 + lb^2 B^2, oriented so that C = A/tau > 0
            return std::copysign(std::sqrt(p.A * p.A + lb * lb * p.B * p.B), p.A);
        } else if constexpr (std::is_same_v<T, WoodsSaxonPot>) {
            // tau^2 = lambda^2 + lb^2 B^2
            return std::sqrt(p.lambda * p.lambda + lb * lb * p.B * p.B);
        } else {
            throw Unsupported("tau: not a tau-bearing potential row");
        }
    }, v_);
}

double PotentialSpec::U(double r, int kappa, const RelativisticContext& ctx) const {
    return std::visit([&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CoulombPot>) return double(kappa) / r;
        else if constexpr (std::is_same_v<T, OscillatorPot>)
            return p.omega * p.omega * r + double(kappa) / r;
        else if constexpr (std::is_same_v<T, MorsePot>)
            return -tau(ctx) * std::exp(-p.lambda * r);
        else if constexpr (std::is_same_v<T, RosenMorse1Pot>)
            return tau(ctx) * std::tanh(p.lambda * r);
        else if constexpr (std::is_same_v<T, EckartPot>)
            return tau(ctx) * coth(p.lambda * r);
        else if constexpr (std::is_same_v<T, RosenMorse2Pot>)
            return p.A * coth(p.lambda * r) - p.B / std::sinh(p.lambda * r);
        else if constexpr (std::is_same_v<T, ScarfPot>)
            return p.A * std::tanh(p.lambda * r) + p.B / std::cosh(p.lambda * r);
        else if constexpr (std::is_same_v<T, PoschlTellerPot>)
            return -p.A * std::tanh(p.lambda * r) - p.B * coth(p.lambda * r);
        else
            return tau(ctx) / (1.0 + std::exp(p.lambda * (r - p.R)));
    }, v_);
}

double PotentialSpec::W(double r, int kappa, const RelativisticContext& ctx) const {
    // W = U - kappa/r; for Coulomb W = 0 identically.
    if (tag() == PotentialTag::Coulomb) return 0.0;
    if (tag() == PotentialTag::Oscillator) {
        return as<OscillatorPot>().omega * as<OscillatorPot>().omega * r;
    }
    return U(r, kappa, ctx) - double(kappa) / r;
}

double PotentialSpec::dU(double r, int kappa, const RelativisticContext& ctx) const {
    return std::visit([&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CoulombPot>) return -double(kappa) / (r * r);
        else if constexpr (std::is_same_v<T, OscillatorPot>)
            return p.omega * p.omega - double(kappa) / (r * r);
        else if constexpr (std::is_same_v<T, MorsePot>)
            return p.lambda * tau(ctx) * std::exp(-p.lambda * r);
        else if constexpr (std::is_same_v<T, RosenMorse1Pot>) {
            double s = 1.0 / std::cosh(p.lambda * r);
            return tau(ctx) * p.lambda * s * s;
        } else if constexpr (std::is_same_v<T, EckartPot>) {
            double s = 1.0 / std::sinh(p.lambda * r);
            return -tau(ctx) * p.lambda * s * s;
        } else if constexpr (std::is_same_v<T, RosenMorse2Pot>) {
            double sh = std::sinh(p.lambda * r), ch = std::cosh(p.lambda * r);
            return p.lambda * (-p.A / (sh * sh) + p.B * ch / (sh * sh));
        } else if constexpr (std::is_same_v<T, ScarfPot>) {
            double ch = std::cosh(p.lambda * r), th = std::tanh(p.lambda * r);
            return p.lambda * (p.A / (ch * ch) - p.B * th / ch);
        } else if constexpr (std::is_same_v<T, PoschlTellerPot>) {
            double sh = std::sinh(p.lambda * r), ch = std::cosh(p.lambda * r);
            return p.lambda * (-p.A / (ch * ch) + p.B / (sh * sh));
        } else {
            double e = std::exp(p.lambda * (r - p.R));
            double y = 1.0 / (1.0 + e);
            return -tau(ctx) * p.lambda * y * (1.0 - y);
        }
    }, v_);
}

double PotentialSpec::origin_u_coeff(int kappa, const RelativisticContext& ctx) const {
    switch (tag()) {
        case PotentialTag::Coulomb:
        case PotentialTag::Oscillator:
            return double(kappa);
        case PotentialTag::Eckart:
            return tau(ctx) / as<EckartPot>().lambda;
        case PotentialTag::RosenMorse2: {
            const auto& p = as<RosenMorse2Pot>();
            return (p.A - p.B) / p.lambda;
        }
        case PotentialTag::PoschlTeller: {
            const auto& p = as<PoschlTellerPot>();
            return -p.B / p.lambda;
        }
        default:
            return 0.0;  // regular at the origin
    }
}

double PotentialSpec::origin_v_coeff() const {
    switch (tag()) {
        case PotentialTag::Coulomb: return as<CoulombPot>().Z;
        case PotentialTag::Eckart: {
            const auto& p = as<EckartPot>();
            return p.B / p.lambda;
        }
        default: return 0.0;
    }
}

RadialDomain PotentialSpec::domain(int) const {
    switch (tag()) {
        case PotentialTag::Coulomb:
        case PotentialTag::Oscillator:
        case PotentialTag::Eckart:
        case PotentialTag::RosenMorse2:
        case PotentialTag::PoschlTeller:
            return RadialDomain::HalfLinePower;
        case PotentialTag::Morse:
        case PotentialTag::RosenMorse1:
        case PotentialTag::Scarf:
            return RadialDomain::FullLine;
        case PotentialTag::WoodsSaxon:
            return RadialDomain::HalfLineDirichlet;
    }
    return RadialDomain::FullLine;
}

bool PotentialSpec::kappa_free() const {
    PotentialTag t = tag();
    return t != PotentialTag::Coulomb && t != PotentialTag::Oscillator;
}

nlohmann::json PotentialSpec::to_json() const {
    nlohmann::json params;
    std::visit([&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CoulombPot>) params = {{"Z", p.Z}};
        else if constexpr (std::is_same_v<T, OscillatorPot>) params = {{"omega", p.omega}};
        else if constexpr (std::is_same_v<T, WoodsSaxonPot>)
            params = {{"B", p.B}, {"R", p.R}, {"lambda", p.lambda}};
        else
            params = {{"A", p.A}, {"B", p.B}, {"lambda", p.lambda}};
    }, v_);
    return {{"potential", name()}, {"params", params}};
}

PotentialSpec PotentialSpec::from_json(const nlohmann::json& j) {
    PotentialTag t = tag_from_string(j.at("potential").get<std::string>());
    const auto& p = j.at("params");
    switch (t) {
        case PotentialTag::Coulomb: return PotentialSpec(CoulombPot{p.at("Z").get<double>()});
        case PotentialTag::Oscillator: return PotentialSpec(OscillatorPot{p.at("omega").get<double>()});
        case PotentialTag::Morse:
            return PotentialSpec(MorsePot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::RosenMorse1:
            return PotentialSpec(RosenMorse1Pot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::Eckart:
            return PotentialSpec(EckartPot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::RosenMorse2:
            return PotentialSpec(RosenMorse2Pot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::Scarf:
            return PotentialSpec(ScarfPot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::PoschlTeller:
            return PotentialSpec(PoschlTellerPot{p.at("A"), p.at("B"), p.at("lambda")});
        case PotentialTag::WoodsSaxon:
            return PotentialSpec(WoodsSaxonPot{p.at("B"), p.at("R"), p.at("lambda")});
    }
    throw DomainError("from_json: bad tag");
}

double PotentialSpec::constraint_xi(const RelativisticContext& ctx, int kappa) const {
    switch (tag()) {
        case PotentialTag::Coulomb: return as<CoulombPot>().Z / kappa;
        case PotentialTag::Oscillator:
        case PotentialTag::RosenMorse2:
        case PotentialTag::Scarf:
        case PotentialTag::PoschlTeller:
            return 0.0;
        case PotentialTag::Morse: return as<MorsePot>().B / tau(ctx);
        case PotentialTag::RosenMorse1: return as<RosenMorse1Pot>().B / tau(ctx);
        case PotentialTag::Eckart: return as<EckartPot>().B / tau(ctx);
        case PotentialTag::WoodsSaxon: return -as<WoodsSaxonPot>().B / tau(ctx);
    }
    throw DomainError("constraint_xi: bad tag");
}

TransformParameters derive_transform(const PotentialSpec& spec,
                                     const RelativisticContext& ctx,
                                     const AngularChannel& chan,
                                     int sign) {
    const double lb = ctx.lambda_bar;
    if (!(lb > 0.0)) throw DomainError("lambda_bar must be > 0");
    if (chan.kappa == 0) throw DomainError("kappa must be nonzero");
    if (sign != +1 && sign != -1) throw DomainError("sign must be +1 or -1");

    TransformParameters tp;
    tp.sign = sign;
    tp.xi = spec.constraint_xi(ctx, chan.kappa);
    double S = sign * lb * tp.xi;          // sin(lb eta) = +- lb xi
    if (std::abs(S) >= 1.0)
        throw DomainError("derive_transform: |sin(lb eta)| >= 1, unphysical parameters");
    tp.S = S;
    tp.C = std::sqrt(1.0 - S * S);
    tp.T = tp.S / tp.C;
    tp.eta = std::asin(S) / lb;
    return tp;
}

double potential_constraint_check(const PotentialSpec& spec,
                                  const TransformParameters& tp,
                                  const AngularChannel& chan,
                                  const RelativisticContext& ctx,
                                  const std::vector<double>& r_grid) {
    // Residual of V(r) = xi [W(r) + kappa/r]; V and U are evaluated from
    // their own closed forms.  tp.xi carries the frame sign; the constraint
    // itself holds in the + frame.
    const double xi = tp.sign > 0 ? tp.xi : -tp.xi;
    double worst = 0.0;
    for (double r : r_grid) {
        double v = spec.V(r);
        double u = spec.U(r, chan.kappa, ctx);
        double resid = std::abs(v - xi * u) / (1.0 + std::abs(v));
        worst = std::max(worst, resid);
    }
    return worst;
}

} // namespace dirac
