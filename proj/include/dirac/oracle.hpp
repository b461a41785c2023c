#ifndef DIRAC_ORACLE_HPP
#define DIRAC_ORACLE_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "dirac/catalog.hpp"
#include "dirac/spectra.hpp"

namespace dirac::oracle {

struct ShootingConfig {
    double r_min = 1e-7;
    double r_max = 40.0;
    double match_point = 2.0;
    double tol = 1e-12;       // local integrator tolerance (relative)
    int max_bisect = 90;
    double eps_tol = 1e-12;   // eigenvalue bisection width
};

enum class Direction { Outward, Inward };

// The coupled first-order radial system read off the rows of the radial
// Dirac equation:
//   g' = -U g + [(1 + eps - lb^2 V)/lb] f
//   f' = +U f + [(1 - eps + lb^2 V)/lb] g
// with U = W + kappa/r combined analytically.
struct RadialProblem {
    std::function<double(double)> U;
    std::function<double(double)> V;
    double lambda_bar = 0.1;
    RadialDomain domain = RadialDomain::FullLine;
    double origin_u = 0.0;   // lim r U for the power seed
    double origin_v = 0.0;   // lim r V
    double theta = 0.0;      // lb*eta/2 for the Dirichlet BC (phi+(0)=0)
};

RadialProblem make_problem(const PotentialSpec& spec, const RelativisticContext& ctx,
                           const AngularChannel& chan);

// Suggest integration bounds and a match point for a level near eps_hint.
// Sized for the catalog's bound towers; the turning-point scan covers
// r <= ~200, which holds through the shipped fixtures.
ShootingConfig auto_config(const PotentialSpec& spec, const RelativisticContext& ctx,
                           const AngularChannel& chan, double eps_hint);

struct IntegrateResult {
    double g = 0.0, f = 0.0;     // components at the match point (renormalized)
    double ratio = 0.0;          // f/g at the match point
    int phi_plus_nodes = 0;      // sign changes of phi+ along the sweep
    int steps = 0;
};

IntegrateResult integrate_dirac(const RadialProblem& prob, double eps,
                                Direction dir, const ShootingConfig& cfg);

// Normalized two-sided matching determinant; vanishes at eigenvalues.
double mismatch(const RadialProblem& prob, double eps, const ShootingConfig& cfg);

// Bisect the mismatch inside [lo, hi]; NoSignChange if the bracket does not
// straddle a root.
double shoot_eigenvalue(const RadialProblem& prob, double lo, double hi,
                        const ShootingConfig& cfg);

// Locate the eigenvalue nearest eps_hint by expanding a bracket around it.
std::optional<double> refine_near(const RadialProblem& prob, double eps_hint,
                                  double width, const ShootingConfig& cfg);

// Interior nodes of phi+ along the outward sweep to r_max (Sturm count of
// the left-regular solution; used for level counting below a trial energy).
int count_nodes(const RadialProblem& prob, double eps, const ShootingConfig& cfg);

// Interior nodes of an eigenstate: outward and inward sweeps joined at the
// match point, so the far tail never contaminates the count.
int count_nodes_matched(const RadialProblem& prob, double eps, const ShootingConfig& cfg);

// Scaled sup-norm residual of a sampled second-order solution:
//   max_i |(-D^2 phi)_i + v_i phi_i| / (max|phi| (1 + |v_i|)),
// second differences on a uniform grid.
double residual_second_order(const std::vector<double>& phi,
                             const std::function<double(double)>& veff_minus_k2,
                             const std::vector<double>& r_grid);

// Nonrelativistic shooting for [-d^2/dr^2 + U_eff(r) - 2E] psi = 0.
struct SchrodingerProblem {
    std::function<double(double)> U_eff;
    RadialDomain domain = RadialDomain::HalfLinePower;
    double origin_exponent = 1.0;  // psi ~ r^(l_eff+1)
};

double schrodinger_mismatch(const SchrodingerProblem& prob, double E,
                            const ShootingConfig& cfg);
double schrodinger_eigenvalue(const SchrodingerProblem& prob, double lo, double hi,
                              const ShootingConfig& cfg);

// Integrate the transformed system (phi+, phi-) and return the components at
// the match point; used for the rotation-equivalence check.
IntegrateResult integrate_transformed(const RadialProblem& prob,
                                      const TransformParameters& tp, double eps,
                                      Direction dir, const ShootingConfig& cfg);

} // namespace dirac::oracle

#endif
