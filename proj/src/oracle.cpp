#include "dirac/oracle.hpp"
#include "dirac/errors.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace dirac::oracle {

namespace {

using Vec2 = std::array<double, 2>;

// Dormand-Prince 5(4) pair on a 2-component linear system, with
// renormalization on the fly (only ratios matter) and sign-change counting
// of a tracked linear combination c1*y0 + c2*y1.
struct Dp54 {
    std::function<void(double, const Vec2&, Vec2&)> rhs;
    double rtol = 1e-12;
    double atol = 1e-300;
    double track_c1 = 1.0, track_c2 = 0.0;  // phi+ combination for node counts

    int nodes = 0;
    int steps = 0;

    void step_rhs(double t, const Vec2& y, Vec2& dy) const { rhs(t, y, dy); }

    // integrate from t0 to t1 (either direction); y renormalized in place
    void run(double t0, double t1, Vec2& y) {
        const double dir = t1 > t0 ? 1.0 : -1.0;
        double t = t0;
        double span = std::abs(t1 - t0);
        double h = dir * std::min(1e-3 * span, 1e-4 + 1e-3 * std::abs(t0));
        if (h == 0.0) h = dir * 1e-6;
        double last_track = track_c1 * y[0] + track_c2 * y[1];

        Vec2 k1, k2, k3, k4, k5, k6, k7, ytmp, y5, y4;
        step_rhs(t, y, k1);
        int guard = 0;
        while (dir * (t1 - t) > 0.0) {
            if (++guard > 40000000) throw StiffFailure("integrator: too many steps");
            if (dir * (t + h - t1) > 0.0) h = t1 - t;

            auto at = [&](double c, const Vec2& yy, Vec2& out) { step_rhs(t + c * h, yy, out); };
            for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (0.2 * k1[i]);
            at(0.2, ytmp, k2);
            for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (3.0 / 40 * k1[i] + 9.0 / 40 * k2[i]);
            at(0.3, ytmp, k3);
            for (int i = 0; i < 2; ++i)
                ytmp[i] = y[i] + h * (44.0 / 45 * k1[i] - 56.0 / 15 * k2[i] + 32.0 / 9 * k3[i]);
            at(0.8, ytmp, k4);
            for (int i = 0; i < 2; ++i)
                ytmp[i] = y[i] + h * (19372.0 / 6561 * k1[i] - 25360.0 / 2187 * k2[i] +
                                      64448.0 / 6561 * k3[i] - 212.0 / 729 * k4[i]);
            at(8.0 / 9, ytmp, k5);
            for (int i = 0; i < 2; ++i)
                ytmp[i] = y[i] + h * (9017.0 / 3168 * k1[i] - 355.0 / 33 * k2[i] +
                                      46732.0 / 5247 * k3[i] + 49.0 / 176 * k4[i] -
                                      5103.0 / 18656 * k5[i]);
            at(1.0, ytmp, k6);
            for (int i = 0; i < 2; ++i)
                y5[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                                    125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                                    11.0 / 84 * k6[i]);
            step_rhs(t + h, y5, k7);
            for (int i = 0; i < 2; ++i)
                y4[i] = y[i] + h * (5179.0 / 57600 * k1[i] + 7571.0 / 16695 * k3[i] +
                                    393.0 / 640 * k4[i] - 92097.0 / 339200 * k5[i] +
                                    187.0 / 2100 * k6[i] + 1.0 / 40 * k7[i]);

            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
            }
            if (err <= 1.0) {
                t += h;
                y = y5;
                k1 = k7;  // FSAL
                ++steps;
                double tr = track_c1 * y[0] + track_c2 * y[1];
                if (last_track != 0.0 && tr != 0.0 &&
                    std::signbit(tr) != std::signbit(last_track))
                    ++nodes;
                if (tr != 0.0) last_track = tr;
                double m = std::max(std::abs(y[0]), std::abs(y[1]));
                if (m > 1e120) {
                    y[0] /= m;
                    y[1] /= m;
                    k1[0] /= m;
                    k1[1] /= m;
                    last_track /= m;
                }
                if (m != 0.0 && m < 1e-120) {
                    y[0] /= m;
                    y[1] /= m;
                    k1[0] /= m;
                    k1[1] /= m;
                    last_track /= m;
                }
            }
            double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            fac = std::min(5.0, std::max(0.2, fac));
            h *= fac;
            if (std::abs(h) < 1e-16 * std::max(1.0, std::abs(t)))
                throw StiffFailure("integrator: step underflow");
        }
    }
};

Vec2 seed_left(const RadialProblem& p, double eps, double r0) {
    const double lb = p.lambda_bar;
    switch (p.domain) {
        case RadialDomain::HalfLinePower: {
            double u1 = p.origin_u, v1 = p.origin_v;
            double g0, f0;
            if (std::abs(v1) > 1e-14) {
                double alpha = std::sqrt(u1 * u1 - lb * lb * v1 * v1);
                g0 = 1.0;
                f0 = -(u1 + alpha) / (lb * v1);
            } else if (u1 > 0.0) {
                f0 = 1.0;
                g0 = (1.0 + eps) / lb * r0 / (2.0 * u1 + 1.0);
            } else {
                g0 = 1.0;
                f0 = (1.0 - eps) / lb * r0 / (2.0 * std::abs(u1) + 1.0);
            }
            double m = std::max(std::abs(g0), std::abs(f0));
            return {g0 / m, f0 / m};
        }
        case RadialDomain::HalfLineDirichlet:
            return {-std::sin(p.theta), std::cos(p.theta)};
        case RadialDomain::FullLine: {
            double u = p.U(r0), v = p.V(r0);
            double a = (1.0 + eps - lb * lb * v) / lb;
            double b = (1.0 - eps + lb * lb * v) / lb;
            double beta = std::sqrt(std::max(u * u + a * b, 1e-300));
            double g0 = a, f0 = beta + u;
            double m = std::max(std::abs(g0), std::abs(f0));
            return {g0 / m, f0 / m};
        }
    }
    return {1.0, 0.0};
}

Vec2 seed_right(const RadialProblem& p, double eps, double r1) {
    const double lb = p.lambda_bar;
    double u = p.U(r1), v = p.V(r1);
    double a = (1.0 + eps - lb * lb * v) / lb;
    double b = (1.0 - eps + lb * lb * v) / lb;
    double beta = std::sqrt(std::max(u * u + a * b, 1e-300));
    double g0 = a, f0 = u - beta;
    double m = std::max(std::abs(g0), std::abs(f0));
    return {g0 / m, f0 / m};
}

Dp54 make_integrator(const RadialProblem& p, double eps, const ShootingConfig& cfg) {
    Dp54 ode;
    const double lb = p.lambda_bar;
    ode.rhs = [&p, eps, lb](double r, const Vec2& y, Vec2& dy) {
        double u = p.U(r), v = p.V(r);
        dy[0] = -u * y[0] + (1.0 + eps - lb * lb * v) / lb * y[1];
        dy[1] = u * y[1] + (1.0 - eps + lb * lb * v) / lb * y[0];
    };
    ode.rtol = cfg.tol;
    ode.track_c1 = std::cos(p.theta);
    ode.track_c2 = std::sin(p.theta);
    return ode;
}

} // namespace

RadialProblem make_problem(const PotentialSpec& spec, const RelativisticContext& ctx,
                           const AngularChannel& chan) {
    RadialProblem prob;
    prob.lambda_bar = ctx.lambda_bar;
    prob.U = [spec, k = chan.kappa, ctx](double r) { return spec.U(r, k, ctx); };
    prob.V = [spec](double r) { return spec.V(r); };
    prob.domain = spec.domain(chan.kappa);
    prob.origin_u = spec.origin_u_coeff(chan.kappa, ctx);
    prob.origin_v = spec.origin_v_coeff();
    TransformParameters tp = derive_transform(spec, ctx, chan);
    prob.theta = ctx.lambda_bar * tp.eta / 2.0;
    return prob;
}

ShootingConfig auto_config(const PotentialSpec& spec, const RelativisticContext& ctx,
                           const AngularChannel& chan, double eps_hint) {
    RadialProblem p = make_problem(spec, ctx, chan);
    const double lb = ctx.lambda_bar;
    ShootingConfig cfg;

    // local forbidden-region exponent^2 of the (g,f) system
    auto beta2 = [&](double r) {
        double u = p.U(r), v = p.V(r);
        return u * u + (1.0 - (eps_hint - lb * lb * v) * (eps_hint - lb * lb * v)) / (lb * lb);
    };

    // left edge
    double left0 = 1e-7;
    switch (p.domain) {
        case RadialDomain::HalfLinePower:
            left0 = spec.tag() == PotentialTag::Coulomb ||
                            spec.tag() == PotentialTag::Oscillator
                        ? 1e-7
                        : 1e-6;
            break;
        case RadialDomain::HalfLineDirichlet:
            left0 = 1e-8;
            break;
        case RadialDomain::FullLine: {
            // march left until the accumulated decay exponent reaches ~45
            double r = 0.0, acc = 0.0, dr = 0.02;
            while (acc < 45.0 && r > -400.0) {
                double b2 = beta2(r);
                if (b2 > 0.0) acc += std::sqrt(b2) * dr;
                r -= dr;
            }
            left0 = r;
            break;
        }
    }
    cfg.r_min = left0;

    // classical turning region: coarse scan for the outermost allowed point
    double scan_lo = std::max(left0, 1e-6);
    double r_turn = scan_lo;
    double best_b2 = std::numeric_limits<double>::max();
    double r_match = scan_lo;
    {
        double span = 200.0;
        int npts = 4000;
        for (int i = 1; i <= npts; ++i) {
            double r = scan_lo + span * double(i) / npts;
            double b2 = beta2(r);
            if (b2 < 0.0) r_turn = r;
            if (b2 < best_b2) {
                best_b2 = b2;
                r_match = r;
            }
        }
    }

    // asymptotic decay rate past the turning region
    double beta_asym = 0.0;
    for (double r = r_turn + 5.0; r < r_turn + 400.0; r += 5.0) {
        double b2 = beta2(r);
        if (b2 > 0.0) {
            beta_asym = std::sqrt(b2);
            break;
        }
    }
    if (beta_asym <= 0.0) beta_asym = 0.05;
    cfg.r_max = r_turn + 45.0 / beta_asym;
    cfg.match_point = std::min(std::max(r_match, scan_lo + 0.05), 0.9 * cfg.r_max);
    return cfg;
}

IntegrateResult integrate_dirac(const RadialProblem& prob, double eps,
                                Direction dir, const ShootingConfig& cfg) {
    Dp54 ode = make_integrator(prob, eps, cfg);
    Vec2 y;
    if (dir == Direction::Outward) {
        y = seed_left(prob, eps, cfg.r_min);
        ode.run(cfg.r_min, cfg.match_point, y);
    } else {
        y = seed_right(prob, eps, cfg.r_max);
        ode.run(cfg.r_max, cfg.match_point, y);
    }
    IntegrateResult res;
    res.g = y[0];
    res.f = y[1];
    res.ratio = y[1] / y[0];
    res.phi_plus_nodes = ode.nodes;
    res.steps = ode.steps;
    return res;
}

double mismatch(const RadialProblem& prob, double eps, const ShootingConfig& cfg) {
    IntegrateResult out = integrate_dirac(prob, eps, Direction::Outward, cfg);
    IntegrateResult in = integrate_dirac(prob, eps, Direction::Inward, cfg);
    double no = std::hypot(out.g, out.f), ni = std::hypot(in.g, in.f);
    return (out.g * in.f - out.f * in.g) / (no * ni);
}

double shoot_eigenvalue(const RadialProblem& prob, double lo, double hi,
                        const ShootingConfig& cfg) {
    double fa = mismatch(prob, lo, cfg);
    double fb = mismatch(prob, hi, cfg);
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0)
        throw NoSignChange("shoot_eigenvalue: no sign change across bracket");
    double a = lo, b = hi;
    for (int it = 0; it < cfg.max_bisect; ++it) {
        double m = 0.5 * (a + b);
        double fm = mismatch(prob, m, cfg);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if (b - a < cfg.eps_tol) return 0.5 * (a + b);
    }
    return 0.5 * (a + b);
}

std::optional<double> refine_near(const RadialProblem& prob, double eps_hint,
                                  double width, const ShootingConfig& cfg) {
    for (int k = 1; k <= 6; ++k) {
        double lo = eps_hint - width * k / 3.0;
        double hi = eps_hint + width * k / 3.0;
        double fa = mismatch(prob, lo, cfg);
        double fb = mismatch(prob, hi, cfg);
        if (!std::isnan(fa) && !std::isnan(fb) && fa * fb < 0.0) {
            double a = lo, b = hi;
            for (int it = 0; it < cfg.max_bisect && b - a > cfg.eps_tol; ++it) {
                double m = 0.5 * (a + b);
                double fm = mismatch(prob, m, cfg);
                if (fm == 0.0) return m;
                if (fa * fm < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            return 0.5 * (a + b);
        }
    }
    return std::nullopt;
}

int count_nodes(const RadialProblem& prob, double eps, const ShootingConfig& cfg) {
    ShootingConfig c = cfg;
    c.match_point = cfg.r_max;  // full outward sweep
    IntegrateResult res = integrate_dirac(prob, eps, Direction::Outward, c);
    return res.phi_plus_nodes;
}

int count_nodes_matched(const RadialProblem& prob, double eps, const ShootingConfig& cfg) {
    IntegrateResult out = integrate_dirac(prob, eps, Direction::Outward, cfg);
    IntegrateResult in = integrate_dirac(prob, eps, Direction::Inward, cfg);
    return out.phi_plus_nodes + in.phi_plus_nodes;
}

double residual_second_order(const std::vector<double>& phi,
                             const std::function<double(double)>& veff_minus_k2,
                             const std::vector<double>& r_grid) {
    if (phi.size() != r_grid.size() || phi.size() < 3)
        throw DomainError("residual_second_order: bad grid");
    const std::size_t n = phi.size();
    double h = r_grid[1] - r_grid[0];
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs(r_grid[i + 1] - r_grid[i] - h) > 1e-9 * h)
            throw DomainError("residual_second_order: grid must be uniform");
    double maxphi = 0.0;
    for (double v : phi) maxphi = std::max(maxphi, std::abs(v));
    if (maxphi == 0.0) throw ZeroNorm("residual_second_order: zero input");
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double d2 = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
        double v = veff_minus_k2(r_grid[i]);
        double res = -d2 + v * phi[i];
        worst = std::max(worst, std::abs(res) / (maxphi * (1.0 + std::abs(v))));
    }
    return worst;
}

namespace {

Dp54 make_schrodinger(const SchrodingerProblem& p, double E, const ShootingConfig& cfg) {
    Dp54 ode;
    ode.rhs = [&p, E](double r, const Vec2& y, Vec2& dy) {
        dy[0] = y[1];
        dy[1] = (p.U_eff(r) - 2.0 * E) * y[0];
    };
    ode.rtol = cfg.tol;
    ode.track_c1 = 1.0;
    ode.track_c2 = 0.0;
    return ode;
}

} // namespace

double schrodinger_mismatch(const SchrodingerProblem& prob, double E,
                            const ShootingConfig& cfg) {
    Dp54 out = make_schrodinger(prob, E, cfg);
    Vec2 yo;
    switch (prob.domain) {
        case RadialDomain::HalfLinePower: {
            double pexp = prob.origin_exponent;
            double r0 = cfg.r_min;
            yo = {1.0, pexp / r0};
            break;
        }
        case RadialDomain::HalfLineDirichlet:
            yo = {0.0, 1.0};
            break;
        case RadialDomain::FullLine: {
            double b2 = prob.U_eff(cfg.r_min) - 2.0 * E;
            double beta = std::sqrt(std::max(b2, 1e-300));
            yo = {1.0, beta};
            break;
        }
    }
    out.run(cfg.r_min, cfg.match_point, yo);

    Dp54 inn = make_schrodinger(prob, E, cfg);
    double b2 = prob.U_eff(cfg.r_max) - 2.0 * E;
    double beta = std::sqrt(std::max(b2, 1e-300));
    Vec2 yi = {1.0, -beta};
    inn.run(cfg.r_max, cfg.match_point, yi);

    double no = std::hypot(yo[0], yo[1]), ni = std::hypot(yi[0], yi[1]);
    return (yo[0] * yi[1] - yo[1] * yi[0]) / (no * ni);
}

double schrodinger_eigenvalue(const SchrodingerProblem& prob, double lo, double hi,
                              const ShootingConfig& cfg) {
    double fa = schrodinger_mismatch(prob, lo, cfg);
    double fb = schrodinger_mismatch(prob, hi, cfg);
    if (std::isnan(fa) || std::isnan(fb) || fa * fb > 0.0)
        throw NoSignChange("schrodinger_eigenvalue: no sign change across bracket");
    double a = lo, b = hi;
    for (int it = 0; it < cfg.max_bisect && b - a > cfg.eps_tol * std::max(1.0, std::abs(a));
         ++it) {
        double m = 0.5 * (a + b);
        double fm = schrodinger_mismatch(prob, m, cfg);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) b = m;
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

IntegrateResult integrate_transformed(const RadialProblem& prob,
                                      const TransformParameters& tp, double eps,
                                      Direction dir, const ShootingConfig& cfg) {
    // phi+' = (xi - C U) phi+ + [(C+eps)/lb] phi-
    // phi-' = (C U - xi) phi- + [(C-eps)/lb + 2 lb xi U] phi+
    Dp54 ode;
    const double lb = prob.lambda_bar;
    const double C = tp.C, xi = tp.xi;
    ode.rhs = [&prob, lb, C, xi, eps](double r, const Vec2& y, Vec2& dy) {
        double u = prob.U(r);
        dy[0] = (xi - C * u) * y[0] + (C + eps) / lb * y[1];
        dy[1] = (C * u - xi) * y[1] + ((C - eps) / lb + 2.0 * lb * xi * u) * y[0];
    };
    ode.rtol = cfg.tol;
    // seed: rotate the (g,f) seed into the transformed frame
    double th = prob.theta;
    Vec2 gf = dir == Direction::Outward ? seed_left(prob, eps, cfg.r_min)
                                        : seed_right(prob, eps, cfg.r_max);
    Vec2 y = {std::cos(th) * gf[0] + std::sin(th) * gf[1],
              -std::sin(th) * gf[0] + std::cos(th) * gf[1]};
    if (dir == Direction::Outward)
        ode.run(cfg.r_min, cfg.match_point, y);
    else
        ode.run(cfg.r_max, cfg.match_point, y);
    IntegrateResult res;
    res.g = y[0];
    res.f = y[1];
    res.ratio = y[1] / y[0];
    res.phi_plus_nodes = ode.nodes;
    res.steps = ode.steps;
    return res;
}

} // namespace dirac::oracle
