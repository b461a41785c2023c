#ifndef DIRAC_XPCT_HPP
#define DIRAC_XPCT_HPP

#include <functional>
#include <string>
#include <vector>

#include "dirac/catalog.hpp"
#include "dirac/parameter_maps.hpp"
#include "dirac/wavefunctions.hpp"

namespace dirac::xpct {

enum class QTag {
    Identity,      // q = rho
    RhoSquared,    // q = rho^2               (oscillator -> coulomb)
    LogRho,        // q = -(2/tau) ln rho     (oscillator -> morse)
    ArctanhCosh,   // q = tanh^-1[cosh]/lam   (rm2 -> rm1; real section of coth^-1 + i pi/2)
    ArccothCosh,   // q = coth^-1[cosh]/lam   (rm2 -> eckart)
    ScarfComplex,  // q = sinh^-1[-i cosh]/lam (rm2 -> scarf; real section -rho)
    HalfRho,       // q = rho/2               (rm2 -> poschl-teller)
    PowerLaw,      // q = rho^{nu+1}          (power-law potential at rest mass)
};

struct XPCTMap {
    QTag q_tag = QTag::Identity;
    PotentialTag reference = PotentialTag::Oscillator;
    PotentialTag target = PotentialTag::Oscillator;
    double param = 1.0;         // tau / lambda / nu of the row
    bool complex_section = false;
    std::string q_display;

    double q(double rho) const;
    double qp(double rho) const;
    double qpp(double rho) const;
    double rho_of(double r) const;  // inverse on the real section
};

// The catalog rows; `param` fills the tau/lambda slots.
std::vector<XPCTMap> table4(double param = 1.0);
XPCTMap make_map(QTag tag, double param,
                 PotentialTag reference = PotentialTag::Oscillator,
                 PotentialTag target = PotentialTag::Oscillator);

struct InducedPotential {
    std::vector<double> h;    // (1/q')[-xi_hat + C_hat U_hat - q''/(2 q')] on the grid
    double kappa_target = 0;  // 1/r coefficient of the induced U
    double fitted_const = 0;  // additive-constant freedom, least-squares fitted
    double residual = 0;      // max |h + const - (-xi + C U_target)| after the fit
};

// Covariance condition of the wave equation, upper-component signs; the
// reference problem enters through its U-hat, xi-hat, C-hat.
InducedPotential induced_potential(const XPCTMap& map,
                                   const std::function<double(double)>& U_hat,
                                   double xi_hat, double C_hat,
                                   const PotentialSpec& target,
                                   const RelativisticContext& ctx,
                                   const AngularChannel& target_chan,
                                   const std::vector<double>& r_grid);

struct EnergyRelation {
    double eps = 1.0;
    double kappa_hat = 0.0;  // reference-channel back-solution
};

// Determinant-matching relation resolved for the analytic rows
// (identity, rho^2, log rho); throws NoSolution / Unsupported otherwise.
EnergyRelation energy_relation(const XPCTMap& map, const PotentialSpec& target,
                               const RelativisticContext& ctx,
                               const AngularChannel& target_chan, int n,
                               MapComponent comp = MapComponent::Upper);

// Reference Dirac-Oscillator spinor at a (generally non-integer) kappa-hat.
RadialSpinor oscillator_reference_spinor(double omega, double kappa_hat, int n,
                                         const RelativisticContext& ctx,
                                         const std::vector<double>& rho_grid);

// phi+(r) = g+(rho) phi-hat+(rho) with g+ = sqrt(|q'| (C_hat + eps_hat)/(C + eps)),
// four-point interpolation of the reference samples; the lower component is
// completed by target-side kinetic balance, then the pair is normalized.
RadialSpinor transform_spinor(const XPCTMap& map, const RadialSpinor& reference,
                              double eps_hat, double C_hat,
                              const TransformParameters& target_tp, double eps_target,
                              const std::vector<double>& r_grid,
                              const PotentialSpec* target = nullptr,
                              const RelativisticContext* ctx = nullptr,
                              const AngularChannel* target_chan = nullptr);

} // namespace dirac::xpct

#endif
