#ifndef DIRAC_WAVEFUNCTIONS_HPP
#define DIRAC_WAVEFUNCTIONS_HPP

#include <functional>
#include <vector>

#include "dirac/catalog.hpp"
#include "dirac/spectra.hpp"

namespace dirac {

// Sampled two-component radial spinor in the working (sign = +1) frame.
struct RadialSpinor {
    std::vector<double> r;
    std::vector<double> phi_plus;
    std::vector<double> phi_minus;
    BoundState state;
    double norm = 0.0;        // quadrature of phi+^2 + phi-^2 over r
    double scale_applied = 1.0;
};

// Per-potential derived symbols of the wavefunction tables.
struct WavefunctionParams {
    double mu = 0.0;       // mu_n (or kappa-type exponent where that is the role)
    double nu = 0.0;       // nu_n
    double scale = 0.0;    // lambda_n (Coulomb) / mu = 2A/lambda (Morse) / omega^2 (oscillator arg)
    std::function<double(double)> z;  // the row's variable z(r)
};

namespace wavefunctions {

enum class BalanceDirection { FromPlus, FromMinus };

WavefunctionParams wavefunction_params(const BoundState& state, const PotentialSpec& spec,
                                       const RelativisticContext& ctx,
                                       const AngularChannel& chan,
                                       const TransformParameters& tp);

// Default sampling grid for the potential family: uniform across the
// support for the line-form rows, geometric from ~1e-6 * scale for the
// power-law rows.
std::vector<double> make_grid(const BoundState& state, const PotentialSpec& spec,
                              const RelativisticContext& ctx, const AngularChannel& chan,
                              int n_points = 4001);

std::vector<double> upper_component(const BoundState& state, const PotentialSpec& spec,
                                    const RelativisticContext& ctx,
                                    const AngularChannel& chan,
                                    const TransformParameters& tp,
                                    const std::vector<double>& r_grid);

// Closed lower components (Coulomb, Oscillator, Morse, RM-I); throws
// Unsupported for the rows whose lower spinor has no closed form.
std::vector<double> lower_component_closed(const BoundState& state, const PotentialSpec& spec,
                                           const RelativisticContext& ctx,
                                           const AngularChannel& chan,
                                           const TransformParameters& tp,
                                           const std::vector<double>& r_grid);

bool has_closed_lower(PotentialTag tag);

// phi_minus = lb/(C+eps) [-xi + C U + d/dr] phi_plus  (FromPlus), and the
// exact inverse of that relation (FromMinus); five-point differencing.
std::vector<double> kinetic_balance(const std::vector<double>& phi_known,
                                    BalanceDirection which, const BoundState& state,
                                    const PotentialSpec& spec, const RelativisticContext& ctx,
                                    const AngularChannel& chan, const TransformParameters& tp,
                                    const std::vector<double>& r_grid);

RadialSpinor make_spinor(const BoundState& state, const PotentialSpec& spec,
                         const RelativisticContext& ctx, const AngularChannel& chan,
                         const TransformParameters& tp, const std::vector<double>& r_grid,
                         bool lower_via_balance = false);

// The degenerate Coulomb lowest pair: Phi = (0, phi0^-) at eps = -gamma/kappa.
RadialSpinor coulomb_lowest_state(const PotentialSpec& spec, const RelativisticContext& ctx,
                                  const AngularChannel& chan,
                                  const std::vector<double>& r_grid);

// Rescales both components so the composite norm is 1; returns the scale.
double normalize(RadialSpinor& spinor);

double trapezoid(const std::vector<double>& y, const std::vector<double>& x);
double inner_product(const RadialSpinor& a, const RadialSpinor& b);

// Five-point first derivative on an arbitrary strictly increasing grid.
std::vector<double> derivative5(const std::vector<double>& y, const std::vector<double>& x);

} // namespace wavefunctions
} // namespace dirac

#endif
