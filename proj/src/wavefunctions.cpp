#include "dirac/wavefunctions.hpp"
#include "dirac/errors.hpp"
#include "dirac/parallel.hpp"
#include "dirac/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace dirac::wavefunctions {

using specfun::cplx;

namespace {

double lgamma_pos(double x) { return specfun::log_gamma(x); }

// i^{-m} P_m^{(a, conj a)}(i z) is real for the Scarf parameter pattern.
double scarf_real_jacobi(int m, double mu, double nu, double z) {
    cplx a(-mu - 0.5, -nu), b(-mu - 0.5, nu);
    cplx p = specfun::jacobi(m, a, b, cplx(0.0, z));
    cplx phase = std::pow(cplx(0.0, -1.0), m);
    cplx v = phase * p;
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
        throw NumericalError("scarf: imaginary residue exceeds bound");
    return v.real();
}

struct Frame {
    double C, S, T, xi, lb;
};

Frame frame_of(const TransformParameters& tp, const RelativisticContext& ctx) {
    if (tp.sign != +1)
        throw Unsupported("wavefunctions: closed forms are built in the sign=+1 frame");
    return {tp.C, tp.S, tp.T, tp.xi, ctx.lambda_bar};
}

void require_positive_branch(const BoundState& st) {
    if (st.energy_sign != +1)
        throw Unsupported("wavefunctions: only the + energy branch has table forms");
}

} // namespace

WavefunctionParams wavefunction_params(const BoundState& state, const PotentialSpec& spec,
                                       const RelativisticContext& ctx,
                                       const AngularChannel& chan,
                                       const TransformParameters& tp) {
    const double lb = ctx.lambda_bar;
    const double eps = state.epsilon;
    WavefunctionParams wp;
    switch (spec.tag()) {
        case PotentialTag::Coulomb: {
            const auto& p = spec.as<CoulombPot>();
            double gam = spectra::coulomb_gamma(p, ctx, chan);
            double denom = state.branch == Branch::Regular ? (state.n + gam + 1.0)
                                                           : (state.n - gam);
            wp.mu = gam;
            wp.scale = -2.0 * p.Z * std::abs(eps) / denom;  // lambda_n
            wp.z = [s = wp.scale](double r) { return s * r; };
            break;
        }
        case PotentialTag::Oscillator: {
            const auto& p = spec.as<OscillatorPot>();
            wp.scale = p.omega * p.omega;
            wp.z = [w2 = wp.scale](double r) { return w2 * r * r; };
            break;
        }
        case PotentialTag::Morse: {
            const auto& p = spec.as<MorsePot>();
            wp.scale = 2.0 * p.A / p.lambda;                    // mu = 2A/lambda
            wp.nu = eps * p.B / (p.A * p.lambda) - state.n;     // nu_n = B eps/(A lam) - n
            wp.z = [mv = wp.scale, lam = p.lambda](double r) { return mv * std::exp(-lam * r); };
            break;
        }
        case PotentialTag::RosenMorse1: {
            const auto& p = spec.as<RosenMorse1Pot>();
            wp.mu = p.A / p.lambda - state.n;
            wp.nu = eps * p.B / (p.lambda * p.lambda * wp.mu);
            wp.z = [lam = p.lambda](double r) { return std::tanh(lam * r); };
            break;
        }
        case PotentialTag::Eckart: {
            const auto& p = spec.as<EckartPot>();
            wp.mu = p.A / p.lambda - state.n;
            wp.nu = eps * p.B / (p.lambda * p.lambda * wp.mu);
            wp.z = [lam = p.lambda](double r) { return std::cosh(lam * r) / std::sinh(lam * r); };
            break;
        }
        case PotentialTag::RosenMorse2: {
            const auto& p = spec.as<RosenMorse2Pot>();
            wp.mu = (p.B - p.A) / p.lambda;
            wp.nu = -(p.B + p.A) / p.lambda;
            wp.z = [lam = p.lambda](double r) { return std::cosh(lam * r); };
            break;
        }
        case PotentialTag::Scarf: {
            const auto& p = spec.as<ScarfPot>();
            wp.mu = p.A / p.lambda;
            wp.nu = p.B / p.lambda;
            wp.z = [lam = p.lambda](double r) { return std::sinh(lam * r); };
            break;
        }
        case PotentialTag::PoschlTeller: {
            const auto& p = spec.as<PoschlTellerPot>();
            wp.mu = p.B / p.lambda;
            wp.nu = 1.0 - p.A / p.lambda;  // exponent of (1+z)^{nu/2}
            wp.z = [lam = p.lambda](double r) { return std::cosh(2.0 * lam * r); };
            break;
        }
        case PotentialTag::WoodsSaxon: {
            const auto& p = spec.as<WoodsSaxonPot>();
            double mu2 = (1.0 - eps * eps) / (lb * lb * p.lambda * p.lambda);
            double nu2 = 2.0 * eps * p.B / (p.lambda * p.lambda) - mu2 - 1.0;
            if (mu2 <= 0.0 || nu2 <= 0.0)
                throw DomainError("woods-saxon: state outside the admissible window");
            wp.mu = std::sqrt(mu2);
            wp.nu = std::sqrt(nu2);
            wp.z = [lam = p.lambda, R = p.R](double r) {
                return 1.0 / (1.0 + std::exp(lam * (r - R)));
            };
            break;
        }
    }
    (void)tp;
    return wp;
}

std::vector<double> make_grid(const BoundState& state, const PotentialSpec& spec,
                              const RelativisticContext& ctx, const AngularChannel& chan,
                              int n_points) {
    if (n_points < 16) throw DomainError("make_grid: too few points");
    const double lb = ctx.lambda_bar;
    const double eps = state.epsilon;
    double lo = 0.0, hi = 1.0;
    bool geometric = false;
    switch (spec.tag()) {
        case PotentialTag::Coulomb: {
            TransformParameters tp = derive_transform(spec, ctx, chan);
            WavefunctionParams wp = wavefunction_params(state, spec, ctx, chan, tp);
            lo = 1e-6 / wp.scale;
            hi = (2.0 * (state.n + 1) + 88.0) / wp.scale;
            geometric = true;
            break;
        }
        case PotentialTag::Oscillator: {
            const auto& p = spec.as<OscillatorPot>();
            if (!(p.omega > 0.0)) throw DomainError("oscillator spinor: omega must be > 0");
            lo = 1e-6 / p.omega;
            hi = std::sqrt(70.0 + 4.0 * state.n) / p.omega;
            geometric = true;
            break;
        }
        case PotentialTag::Morse: {
            const auto& p = spec.as<MorsePot>();
            double mv = 2.0 * p.A / p.lambda;
            // x in [x_hi, x_lo]: left edge where x = 95, right where the
            // x^nu tail falls below ~1e-14 of the peak
            TransformParameters tp = derive_transform(spec, ctx, chan);
            double nu = eps * tp.T / (lb * p.lambda) - state.n;
            lo = -std::log(95.0 / mv) / p.lambda;
            // right tail: (x/x_peak)^nu < 1e-14 with x_peak = 2 nu
            double x_tail = 2.0 * nu * std::exp(-33.0 / nu);
            hi = -std::log(std::min(x_tail, 0.8 * mv) / mv) / p.lambda;
            break;
        }
        case PotentialTag::RosenMorse1: {
            const auto& p = spec.as<RosenMorse1Pot>();
            TransformParameters tp = derive_transform(spec, ctx, chan);
            WavefunctionParams wp = wavefunction_params(state, spec, ctx, chan, tp);
            lo = -(34.0 / (wp.mu - std::abs(wp.nu))) / p.lambda;
            hi = (34.0 / (wp.mu - std::abs(wp.nu))) / p.lambda;
            break;
        }
        case PotentialTag::Eckart: {
            const auto& p = spec.as<EckartPot>();
            TransformParameters tp = derive_transform(spec, ctx, chan);
            WavefunctionParams wp = wavefunction_params(state, spec, ctx, chan, tp);
            lo = 1e-5 / p.lambda;
            hi = 36.0 / (p.lambda * (wp.mu + wp.nu));
            break;
        }
        case PotentialTag::RosenMorse2: {
            const auto& p = spec.as<RosenMorse2Pot>();
            lo = 1e-5 / p.lambda;
            hi = 36.0 / (p.A - state.n * p.lambda);
            break;
        }
        case PotentialTag::Scarf: {
            const auto& p = spec.as<ScarfPot>();
            double rate = p.A - state.n * p.lambda;
            lo = -36.0 / rate;
            hi = 36.0 / rate;
            break;
        }
        case PotentialTag::PoschlTeller: {
            const auto& p = spec.as<PoschlTellerPot>();
            double rate = p.A - p.B - (2.0 * state.n + 1.0) * p.lambda;
            lo = 1e-5 / p.lambda;
            hi = 36.0 / rate;
            break;
        }
        case PotentialTag::WoodsSaxon: {
            const auto& p = spec.as<WoodsSaxonPot>();
            TransformParameters tp = derive_transform(spec, ctx, chan);
            WavefunctionParams wp = wavefunction_params(state, spec, ctx, chan, tp);
            lo = 1e-6;
            hi = p.R + 34.0 / (p.lambda * wp.mu);
            break;
        }
    }
    std::vector<double> r(n_points);
    if (geometric) {
        double q = std::log(hi / lo) / (n_points - 1.0);
        for (int i = 0; i < n_points; ++i) r[i] = lo * std::exp(q * i);
    } else {
        for (int i = 0; i < n_points; ++i)
            r[i] = lo + (hi - lo) * double(i) / (n_points - 1.0);
    }
    return r;
}

namespace {

// upper-component value generators (unit overall scale where the paper gives
// no constant); returning the amplitude separately keeps the closed lower
// components exactly consistent with the upper ones.
struct UpperForm {
    std::function<double(double)> eval;
    double amplitude = 1.0;  // multiplies eval
};

UpperForm upper_form(const BoundState& st, const PotentialSpec& spec,
                     const RelativisticContext& ctx, const AngularChannel& chan,
                     const TransformParameters& tp) {
    const Frame fr = frame_of(tp, ctx);
    const double eps = st.epsilon;
    const int m = st.n;
    WavefunctionParams wp = wavefunction_params(st, spec, ctx, chan, tp);
    UpperForm uf;
    switch (spec.tag()) {
        case PotentialTag::Coulomb: {
            double gam = wp.mu, lam = wp.scale;
            if (st.branch == Branch::Regular) {
                if (chan.kappa < 0) throw BranchError("coulomb regular needs kappa > 0");
                // normalization constant carrying the level factor that
                // restores unit quadrature of the component shape
                double a = std::sqrt(lam / (2.0 * (m + gam + 1.0)) *
                                     std::exp(lgamma_pos(m + 1.0) - lgamma_pos(m + 2.0 * gam + 2.0)));
                uf.amplitude = a * std::sqrt((fr.C + eps) / (2.0 * fr.C));
                uf.eval = [lam, gam, m](double r) {
                    double x = lam * r;
                    return std::pow(x, gam + 1.0) * std::exp(-x / 2.0) *
                           specfun::laguerre(m, 2.0 * gam + 1.0, x);
                };
            } else {
                if (chan.kappa > 0) throw BranchError("coulomb irregular needs kappa < 0");
                if (!(lam > 0.0))
                    throw DomainError("coulomb irregular: non-normalizable scale");
                uf.amplitude = 1.0;
                uf.eval = [lam, gam, m](double r) {
                    double x = lam * r;
                    return std::pow(x, -gam) * std::exp(-x / 2.0) *
                           specfun::laguerre(m, -2.0 * gam - 1.0, x);
                };
            }
            break;
        }
        case PotentialTag::Oscillator: {
            const auto& p = spec.as<OscillatorPot>();
            double w = p.omega;
            if (st.branch == Branch::Regular) {
                if (chan.kappa < 0) throw BranchError("oscillator regular spinor needs kappa > 0");
                double k = chan.kappa;
                double a = std::sqrt(w * std::exp(lgamma_pos(m + 1.0) - lgamma_pos(m + k + 1.5)));
                uf.amplitude = a * std::sqrt(std::abs(1.0 + eps));
                uf.eval = [w, k, m](double r) {
                    double y = w * w * r * r;
                    return std::pow(w * r, k + 1.0) * std::exp(-y / 2.0) *
                           specfun::laguerre(m, k + 0.5, y);
                };
            } else {
                if (chan.kappa > 0) throw BranchError("oscillator irregular spinor needs kappa < 0");
                double k = chan.kappa;
                double a = std::sqrt(w * std::exp(lgamma_pos(m + 1.0) - lgamma_pos(m - k + 0.5)));
                uf.amplitude = a * std::sqrt(std::abs(1.0 + eps));
                uf.eval = [w, k, m](double r) {
                    double y = w * w * r * r;
                    return std::pow(w * r, -k) * std::exp(-y / 2.0) *
                           specfun::laguerre(m, -k - 0.5, y);
                };
            }
            break;
        }
        case PotentialTag::Morse: {
            double nu = wp.nu, mv = wp.scale;
            const auto& p = spec.as<MorsePot>();
            uf.amplitude = std::sqrt((fr.C + eps) / fr.C);
            uf.eval = [nu, mv, lam = p.lambda, m](double r) {
                double x = mv * std::exp(-lam * r);
                return std::pow(x, nu) * std::exp(-x / 2.0) * specfun::laguerre(m, 2.0 * nu, x);
            };
            break;
        }
        case PotentialTag::RosenMorse1: {
            const auto& p = spec.as<RosenMorse1Pot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            // catalog normalization constant (cross-checked against quadrature in tests)
            double a = std::sqrt(lam / 2.0 * (m + mu + 0.5) * std::pow(2.0, -2.0 * mu) *
                                 std::exp(lgamma_pos(m + 1.0) + lgamma_pos(m + 2.0 * mu + 1.0) -
                                          lgamma_pos(m + mu + nu + 1.0) -
                                          lgamma_pos(m + mu - nu + 1.0)));
            uf.amplitude = a * std::sqrt((fr.C + eps) / fr.C);
            uf.eval = [mu, nu, lam, m](double r) {
                // (1-z)^{(mu+nu)/2} (1+z)^{(mu-nu)/2} = e^{-nu lam r} cosh^{-mu}
                double z = std::tanh(lam * r);
                return std::exp(-nu * lam * r - mu * std::log(std::cosh(lam * r))) *
                       specfun::jacobi(m, mu + nu, mu - nu, z);
            };
            break;
        }
        case PotentialTag::Eckart: {
            const auto& p = spec.as<EckartPot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            uf.eval = [mu, nu, lam, m](double r) {
                // (z-1)^{(mu+nu)/2} (z+1)^{(mu-nu)/2} = e^{-nu lam r} sinh^{-mu}
                double z = std::cosh(lam * r) / std::sinh(lam * r);
                return std::exp(-nu * lam * r - mu * std::log(std::sinh(lam * r))) *
                       specfun::jacobi(m, mu + nu, mu - nu, z);
            };
            break;
        }
        case PotentialTag::RosenMorse2: {
            const auto& p = spec.as<RosenMorse2Pot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            uf.eval = [mu, nu, lam, m](double r) {
                double z = std::cosh(lam * r);
                double zm1 = 2.0 * std::pow(std::sinh(lam * r / 2.0), 2);
                double zp1 = 2.0 * std::pow(std::cosh(lam * r / 2.0), 2);
                return std::pow(zm1, mu / 2.0) * std::pow(zp1, nu / 2.0) *
                       specfun::jacobi(m, mu - 0.5, nu - 0.5, z);
            };
            break;
        }
        case PotentialTag::Scarf: {
            const auto& p = spec.as<ScarfPot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            uf.eval = [mu, nu, lam, m](double r) {
                double z = std::sinh(lam * r);
                return std::pow(1.0 + z * z, -mu / 2.0) * std::exp(-nu * std::atan(z)) *
                       scarf_real_jacobi(m, mu, nu, z);
            };
            break;
        }
        case PotentialTag::PoschlTeller: {
            const auto& p = spec.as<PoschlTellerPot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            uf.eval = [mu, nu, lam, m](double r) {
                double z = std::cosh(2.0 * lam * r);
                double zm1 = 2.0 * std::pow(std::sinh(lam * r), 2);
                double zp1 = 2.0 * std::pow(std::cosh(lam * r), 2);
                return std::pow(zm1, mu / 2.0) * std::pow(zp1, nu / 2.0) *
                       specfun::jacobi(m, mu - 0.5, nu - 0.5, z);
            };
            break;
        }
        case PotentialTag::WoodsSaxon: {
            const auto& p = spec.as<WoodsSaxonPot>();
            double mu = wp.mu, nu = wp.nu;
            uf.eval = [mu, nu, lam = p.lambda, R = p.R](double r) {
                double z = 1.0 / (1.0 + std::exp(lam * (r - R)));
                double log1mz = -std::log1p(std::exp(-lam * (r - R)));
                cplx pref = std::pow(z, mu) * std::exp(cplx(0.0, nu * log1mz));
                cplx F = specfun::gauss_2f1(cplx(mu, nu), cplx(mu + 1.0, nu),
                                            cplx(2.0 * mu + 1.0, 0.0), z);
                return (pref * F).real();
            };
            break;
        }
    }
    return uf;
}

} // namespace

std::vector<double> upper_component(const BoundState& state, const PotentialSpec& spec,
                                    const RelativisticContext& ctx,
                                    const AngularChannel& chan,
                                    const TransformParameters& tp,
                                    const std::vector<double>& r_grid) {
    require_positive_branch(state);
    UpperForm uf = upper_form(state, spec, ctx, chan, tp);
    return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
        return uf.amplitude * uf.eval(r_grid[i]);
    });
}

bool has_closed_lower(PotentialTag tag) {
    return tag == PotentialTag::Coulomb || tag == PotentialTag::Oscillator ||
           tag == PotentialTag::Morse || tag == PotentialTag::RosenMorse1;
}

std::vector<double> lower_component_closed(const BoundState& state, const PotentialSpec& spec,
                                           const RelativisticContext& ctx,
                                           const AngularChannel& chan,
                                           const TransformParameters& tp,
                                           const std::vector<double>& r_grid) {
    require_positive_branch(state);
    const Frame fr = frame_of(tp, ctx);
    const double eps = state.epsilon;
    const int m = state.n;
    WavefunctionParams wp = wavefunction_params(state, spec, ctx, chan, tp);
    UpperForm uf = upper_form(state, spec, ctx, chan, tp);

    switch (spec.tag()) {
        case PotentialTag::Coulomb: {
            if (state.branch != Branch::Regular)
                throw Unsupported("coulomb: closed lower is built for the regular branch");
            // rotated-branch solution (index m+1, energy eps_m) composed back
            // into the working frame: phi- = (phi~ - S phi+)/C
            double gam = wp.mu, lam = wp.scale;
            double a = std::sqrt(lam / (2.0 * (m + gam + 1.0)) *
                                 std::exp(lgamma_pos(m + 1.0) - lgamma_pos(m + 2.0 * gam + 2.0)));
            double amp_t = a * std::sqrt(double(m + 1) * (m + 1.0 + 2.0 * gam)) *
                           std::sqrt(std::abs(fr.C - eps) / (2.0 * fr.C));
            return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
                double r = r_grid[i];
                double x = lam * r;
                double tilde = amp_t * std::pow(x, gam) * std::exp(-x / 2.0) *
                               specfun::laguerre(m + 1, 2.0 * gam - 1.0, x);
                double up = uf.amplitude * uf.eval(r);
                return (tilde - fr.S * up) / fr.C;
            });
        }
        case PotentialTag::Oscillator: {
            const auto& p = spec.as<OscillatorPot>();
            double w = p.omega;
            if (state.branch == Branch::Regular) {
                double k = chan.kappa;
                double a = std::sqrt(w * std::exp(lgamma_pos(m + 1.0) - lgamma_pos(m + k + 0.5)));
                double amp = a * std::sqrt(std::abs(1.0 - eps));
                return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
                    double r = r_grid[i];
                    double y = w * w * r * r;
                    return amp * std::pow(w * r, k) * std::exp(-y / 2.0) *
                           specfun::laguerre(m, k - 0.5, y);
                });
            }
            // irregular: lower has degree m-1 (vanishes identically at m=0)
            double ratio = m == 0 ? 0.0 : -2.0 * fr.lb * w / (1.0 + eps);
            return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
                if (m == 0) return 0.0;
                double r = r_grid[i];
                double y = w * w * r * r;
                double k = chan.kappa;
                return ratio * uf.amplitude * std::pow(w * r, -k + 1.0) * std::exp(-y / 2.0) *
                       specfun::laguerre(m - 1, -k + 0.5, y);
            });
        }
        case PotentialTag::Morse: {
            const auto& p = spec.as<MorsePot>();
            double nu = wp.nu, mv = wp.scale, lam = p.lambda;
            double coef = fr.lb * lam * (m + 2.0 * nu) / (fr.C + eps);
            return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
                double r = r_grid[i];
                double up = uf.amplitude * uf.eval(r);
                double shifted = 0.0;
                if (m >= 1) {
                    double x = mv * std::exp(-lam * r);
                    shifted = uf.amplitude * std::pow(x, nu) * std::exp(-x / 2.0) *
                              specfun::laguerre(m - 1, 2.0 * nu, x);
                }
                return -fr.T * up + coef * shifted;
            });
        }
        case PotentialTag::RosenMorse1: {
            if (state.branch != Branch::Regular)
                throw Unsupported("rosen-morse1: closed lower is built for the regular branch");
            const auto& p = spec.as<RosenMorse1Pot>();
            double mu = wp.mu, nu = wp.nu, lam = p.lambda;
            double coef = fr.lb * lam * (m + mu + nu) * (m + mu - nu) /
                          ((m + mu) * (fr.C + eps));
            return par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
                double r = r_grid[i];
                double up = uf.amplitude * uf.eval(r);
                double shifted = 0.0;
                if (m >= 1) {
                    double z = std::tanh(lam * r);
                    shifted = uf.amplitude *
                              std::exp(-nu * lam * r - mu * std::log(std::cosh(lam * r))) *
                              specfun::jacobi(m - 1, mu + nu, mu - nu, z);
                }
                return -fr.T * up + coef * shifted;
            });
        }
        default:
            throw Unsupported(std::string(spec.name()) +
                              ": the lower spinor has no closed form; use kinetic_balance");
    }
}

std::vector<double> derivative5(const std::vector<double>& y, const std::vector<double>& x) {
    const std::size_t n = y.size();
    if (n < 5 || x.size() != n) throw DomainError("derivative5: need >= 5 points");
    std::vector<double> dy(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t s = i < 2 ? 0 : (i + 2 >= n ? n - 5 : i - 2);
        double xi = x[i];
        double d = 0.0;
        for (std::size_t j = s; j < s + 5; ++j) {
            // w_j = sum_{m != j} 1/(x_j - x_m) prod_{k != j,m} (xi - x_k)/(x_j - x_k)
            double w = 0.0;
            for (std::size_t mm = s; mm < s + 5; ++mm) {
                if (mm == j) continue;
                double prod = 1.0 / (x[j] - x[mm]);
                for (std::size_t k = s; k < s + 5; ++k) {
                    if (k == j || k == mm) continue;
                    prod *= (xi - x[k]) / (x[j] - x[k]);
                }
                w += prod;
            }
            d += w * y[j];
        }
        dy[i] = d;
    }
    return dy;
}

std::vector<double> kinetic_balance(const std::vector<double>& phi_known,
                                    BalanceDirection which, const BoundState& state,
                                    const PotentialSpec& spec, const RelativisticContext& ctx,
                                    const AngularChannel& chan, const TransformParameters& tp,
                                    const std::vector<double>& r_grid) {
    const Frame fr = frame_of(tp, ctx);
    const double eps = state.epsilon;
    if (phi_known.size() != r_grid.size())
        throw DomainError("kinetic_balance: grid size mismatch");
    std::vector<double> dphi = derivative5(phi_known, r_grid);
    std::vector<double> out(r_grid.size());
    if (which == BalanceDirection::FromPlus) {
        if (std::abs(fr.C + eps) < 1e-12)
            throw SingularBalance("kinetic_balance: C + eps vanishes");
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            double u = spec.U(r_grid[i], chan.kappa, ctx);
            out[i] = fr.lb / (fr.C + eps) *
                     ((-fr.xi + fr.C * u) * phi_known[i] + dphi[i]);
        }
    } else {
        // exact inverse of the FromPlus relation; the diagonal constraint
        // term 2 lb^2 xi U enters the denominator
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            double u = spec.U(r_grid[i], chan.kappa, ctx);
            double den = fr.C - eps + 2.0 * fr.lb * fr.lb * fr.xi * u;
            if (std::abs(den) < 1e-12)
                throw SingularBalance("kinetic_balance: C - eps + 2 lb^2 xi U vanishes");
            out[i] = fr.lb / den * ((fr.xi - fr.C * u) * phi_known[i] + dphi[i]);
        }
    }
    return out;
}

RadialSpinor make_spinor(const BoundState& state, const PotentialSpec& spec,
                         const RelativisticContext& ctx, const AngularChannel& chan,
                         const TransformParameters& tp, const std::vector<double>& r_grid,
                         bool lower_via_balance) {
    RadialSpinor sp;
    sp.r = r_grid;
    sp.state = state;
    sp.phi_plus = upper_component(state, spec, ctx, chan, tp, r_grid);
    if (!lower_via_balance && has_closed_lower(spec.tag()))
        sp.phi_minus = lower_component_closed(state, spec, ctx, chan, tp, r_grid);
    else
        sp.phi_minus = kinetic_balance(sp.phi_plus, BalanceDirection::FromPlus, state, spec,
                                       ctx, chan, tp, r_grid);
    std::vector<double> dens(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        dens[i] = sp.phi_plus[i] * sp.phi_plus[i] + sp.phi_minus[i] * sp.phi_minus[i];
    sp.norm = trapezoid(dens, r_grid);
    return sp;
}

RadialSpinor coulomb_lowest_state(const PotentialSpec& spec, const RelativisticContext& ctx,
                                  const AngularChannel& chan,
                                  const std::vector<double>& r_grid) {
    const auto& p = spec.as<CoulombPot>();
    if (chan.kappa < 0) throw BranchError("coulomb lowest pair: built on kappa > 0");
    if (!(p.Z < 0.0)) throw DomainError("coulomb lowest pair: needs attractive Z < 0");
    double gam = spectra::coulomb_gamma(p, ctx, chan);
    double s = -2.0 * p.Z / chan.kappa;
    double lognorm = 0.5 * ((2.0 * gam + 1.0) * std::log(s) - lgamma_pos(2.0 * gam + 1.0));
    RadialSpinor sp;
    sp.r = r_grid;
    sp.state = BoundState{-1, Branch::Regular, -1, -gam / chan.kappa};
    sp.phi_plus.assign(r_grid.size(), 0.0);
    sp.phi_minus = par::map_indexed<double>(r_grid.size(), [&](std::size_t i) {
        double r = r_grid[i];
        return std::exp(lognorm + gam * std::log(r) + p.Z * r / chan.kappa);
    });
    std::vector<double> dens(r_grid.size());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        dens[i] = sp.phi_minus[i] * sp.phi_minus[i];
    sp.norm = trapezoid(dens, r_grid);
    return sp;
}

double trapezoid(const std::vector<double>& y, const std::vector<double>& x) {
    if (y.size() != x.size() || y.size() < 2) throw DomainError("trapezoid: bad input");
    return par::sum_indexed(y.size() - 1, [&](std::size_t i) {
        return 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    });
}

double inner_product(const RadialSpinor& a, const RadialSpinor& b) {
    if (a.r.size() != b.r.size()) throw DomainError("inner_product: grid mismatch");
    std::vector<double> dens(a.r.size());
    for (std::size_t i = 0; i < a.r.size(); ++i)
        dens[i] = a.phi_plus[i] * b.phi_plus[i] + a.phi_minus[i] * b.phi_minus[i];
    return trapezoid(dens, a.r);
}

double normalize(RadialSpinor& spinor) {
    std::vector<double> dens(spinor.r.size());
    for (std::size_t i = 0; i < spinor.r.size(); ++i)
        dens[i] = spinor.phi_plus[i] * spinor.phi_plus[i] +
                  spinor.phi_minus[i] * spinor.phi_minus[i];
    double n = trapezoid(dens, spinor.r);
    if (!(n > 1e-280)) throw ZeroNorm("normalize: vanishing composite norm");
    double scale = 1.0 / std::sqrt(n);
    for (auto& v : spinor.phi_plus) v *= scale;
    for (auto& v : spinor.phi_minus) v *= scale;
    spinor.norm = 1.0;
    spinor.scale_applied = scale;
    return scale;
}

} // namespace dirac::wavefunctions
