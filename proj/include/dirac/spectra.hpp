#ifndef DIRAC_SPECTRA_HPP
#define DIRAC_SPECTRA_HPP

#include <optional>
#include <vector>

#include "dirac/catalog.hpp"

namespace dirac {

enum class Branch { Regular, Irregular };

struct BoundState {
    int n = 0;
    Branch branch = Branch::Regular;
    int energy_sign = +1;
    double epsilon = 1.0;
};

struct SpectrumRequest {
    PotentialSpec spec;
    RelativisticContext ctx;
    AngularChannel chan;
    Branch branch = Branch::Regular;
    int energy_sign = +1;
    std::vector<int> n_list;
};

namespace spectra {

// Per-potential closed forms.  All return the requested levels or throw
// DomainError / BranchError.
std::vector<BoundState> coulomb_energy(const SpectrumRequest& req);
std::vector<BoundState> oscillator_energy(const SpectrumRequest& req);
std::vector<BoundState> morse_energy(const SpectrumRequest& req);
std::vector<BoundState> rosen_morse1_energy(const SpectrumRequest& req);
std::vector<BoundState> eckart_energy(const SpectrumRequest& req);
std::vector<BoundState> rosen_morse2_energy(const SpectrumRequest& req);
std::vector<BoundState> scarf_energy(const SpectrumRequest& req);
std::vector<BoundState> poschl_teller_energy(const SpectrumRequest& req);
std::vector<BoundState> woods_saxon_energy(const SpectrumRequest& req);

// Dispatch on the spec's tag.
std::vector<BoundState> energies(const SpectrumRequest& req);

// Largest admissible level index; nullopt for the unbounded towers
// (Coulomb, Oscillator).
std::optional<int> n_max(const PotentialSpec& spec, const RelativisticContext& ctx,
                         const AngularChannel& chan, Branch branch = Branch::Regular);

// Woods-Saxon boundary-constraint function
//   f(E, a, R, V0) = vR/a - atan(v/mu) + arg G(2iv) - 2 arg G(mu + iv),
//   mu^2 = -2 a^2 E, v^2 = 2 a^2 V0 - mu^2.
// Returns nullopt where mu^2 <= 0 or v^2 <= 0.
std::optional<double> woods_saxon_f(double E, double a, double R, double V0);

// f evaluated at the relativistic slots: E -> (eps^2-1)/2 lb^2, a -> 1/lambda,
// V0 -> eps B - lambda^2/2.
std::optional<double> woods_saxon_f_rel(const WoodsSaxonPot& p,
                                        const RelativisticContext& ctx, double eps);

// gamma = sqrt(kappa^2 - lb^2 Z^2)
double coulomb_gamma(const CoulombPot& p, const RelativisticContext& ctx,
                     const AngularChannel& chan);

} // namespace spectra
} // namespace dirac

#endif
