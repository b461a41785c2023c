#ifndef DIRAC_PARAMETER_MAPS_HPP
#define DIRAC_PARAMETER_MAPS_HPP

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/catalog.hpp"
#include "dirac/spectra.hpp"

namespace dirac {

enum class MapComponent { Upper, Lower };

// One substitution record "source -> target", kept as display strings so the
// CLI can print the table rows; the numeric content lives in apply_map.
struct Substitution {
    std::string source;
    std::string target;
};

struct ParameterMap {
    PotentialTag tag;
    MapComponent component = MapComponent::Upper;
    Branch branch = Branch::Regular;
    std::vector<Substitution> subs;
};

namespace parameter_maps {

// All map records for a potential (both components and branches where the
// catalog provides them).
std::vector<ParameterMap> maps_for(PotentialTag tag);

// Relativistic level implied by the map and the known nonrelativistic
// spectrum; solved by bracketing/bisection where eps appears on both sides.
// Throws InconsistentMap when no root exists in the admissible window.
double apply_map(const ParameterMap& map, int n, const PotentialSpec& spec,
                 const RelativisticContext& ctx, const AngularChannel& chan);

// E = (eps^2 - 1) / (2 lb^2)
double nonrel_limit_energy(double eps, const RelativisticContext& ctx);

// The "well-known" nonrelativistic spectra backing the maps (2E convention
// of the reference equations).  Parameter keys per tag:
//   coulomb {ell, Z}, oscillator {ell, omega}, morse {A, B, lambda},
//   rosen-morse1 / eckart {A, B, lambda}, rosen-morse2 / scarf {A, B, lambda},
//   poschl-teller {A, B, lambda}, woods-saxon {V0, a, R, n_offset?}
double nonrel_spectrum(PotentialTag tag, const nlohmann::json& params, int n);

struct NonrelReference {
    std::function<double(double)> U_eff;   // effective potential, 2E convention
    RadialDomain domain = RadialDomain::HalfLinePower;
    double origin_exponent = 1.0;
};

NonrelReference schrodinger_reference(PotentialTag tag, const nlohmann::json& params);

} // namespace parameter_maps
} // namespace dirac

#endif
