#ifndef DIRAC_CATALOG_HPP
#define DIRAC_CATALOG_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dirac {

// Compton scale lambda-bar in atomic units (m = hbar = 1, c = 1/lambda-bar).
struct RelativisticContext {
    double lambda_bar = 0.1;
};

// Spin-orbit quantum number kappa != 0; kappa = l for kappa > 0 and
// kappa = -l-1 for kappa < 0, j = |kappa| - 1/2.
struct AngularChannel {
    int kappa = 1;
    int ell() const { return kappa > 0 ? kappa : -kappa - 1; }
    double j() const { return (kappa > 0 ? kappa : -kappa) - 0.5; }
};

// Global rotation bookkeeping: S = sin(lb*eta), C = cos(lb*eta), T = S/C,
// constraint coefficient xi with S = sign * lb * xi.  The sign convention is
// carried as data; the closed-form layer works in the sign = +1 frame.
struct TransformParameters {
    double eta = 0.0;
    double S = 0.0;
    double C = 1.0;
    double T = 0.0;
    double xi = 0.0;
    int sign = +1;
};

struct CoulombPot     { double Z; };
struct OscillatorPot  { double omega; };
struct MorsePot       { double A, B, lambda; };  // A = C*tau (W strength via tau), V strength B, range
struct RosenMorse1Pot { double A, B, lambda; };
struct EckartPot      { double A, B, lambda; };
struct RosenMorse2Pot { double A, B, lambda; };
struct ScarfPot       { double A, B, lambda; };
struct PoschlTellerPot{ double A, B, lambda; };
struct WoodsSaxonPot  { double B, R, lambda; };

enum class PotentialTag {
    Coulomb, Oscillator, Morse, RosenMorse1, Eckart,
    RosenMorse2, Scarf, PoschlTeller, WoodsSaxon
};

const char* to_string(PotentialTag t);
PotentialTag tag_from_string(const std::string& name);

// How the radial problem is posed for the numerical oracle.
enum class RadialDomain {
    HalfLinePower,     // 1/r singularity at the origin, power-law seed
    FullLine,          // S-wave form regular everywhere, solved on the line
    HalfLineDirichlet, // regular at the origin, phi+(0) = 0
};

class PotentialSpec {
public:
    using Variant = std::variant<CoulombPot, OscillatorPot, MorsePot,
                                 RosenMorse1Pot, EckartPot, RosenMorse2Pot,
                                 ScarfPot, PoschlTellerPot, WoodsSaxonPot>;

    PotentialSpec() : v_(CoulombPot{-1.0}) {}
    explicit PotentialSpec(Variant v);

    PotentialTag tag() const;
    const char* name() const { return to_string(tag()); }
    const Variant& variant() const { return v_; }

    template <class T> const T& as() const { return std::get<T>(v_); }
    template <class T> bool is() const { return std::holds_alternative<T>(v_); }

    // Even component V(r).
    double V(double r) const;
    // Odd component W(r); carries -kappa/r for the S-wave family.
    double W(double r, int kappa, const RelativisticContext& ctx) const;
    // U(r) = W(r) + kappa/r, with the kappa/r cancellation done analytically.
    double U(double r, int kappa, const RelativisticContext& ctx) const;
    double dU(double r, int kappa, const RelativisticContext& ctx) const;

    // Strength of the W column: tau^2 = A^2 + lb^2 B^2 (Morse/RM-I/Eckart),
    // tau^2 = lambda^2 + lb^2 B^2 (Woods-Saxon); signed so that C > 0.
    double tau(const RelativisticContext& ctx) const;

    // Coefficient of the linear constraint V = xi (W + kappa/r).
    double constraint_xi(const RelativisticContext& ctx, int kappa) const;

    // Origin data for power seeds: u_m1 = lim r U(r), v_m1 = lim r V(r).
    double origin_u_coeff(int kappa, const RelativisticContext& ctx) const;
    double origin_v_coeff() const;

    RadialDomain domain(int kappa) const;
    // kappa enters U only for Coulomb and Oscillator.
    bool kappa_free() const;

    nlohmann::json to_json() const;
    static PotentialSpec from_json(const nlohmann::json& j);

private:
    Variant v_;
    void validate() const;
};

// Transformation parameter per the catalog (eta column); throws DomainError
// when |sin(lb*eta)| would exceed 1.
TransformParameters derive_transform(const PotentialSpec& spec,
                                     const RelativisticContext& ctx,
                                     const AngularChannel& chan,
                                     int sign = +1);

// max over the grid of |V(r) - xi*U(r)| / (1 + |V(r)|).
double potential_constraint_check(const PotentialSpec& spec,
                                  const TransformParameters& tp,
                                  const AngularChannel& chan,
                                  const RelativisticContext& ctx,
                                  const std::vector<double>& r_grid);

} // namespace dirac

#endif
