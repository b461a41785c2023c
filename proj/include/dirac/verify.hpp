#ifndef DIRAC_VERIFY_HPP
#define DIRAC_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/catalog.hpp"
#include "dirac/spectra.hpp"

namespace dirac::verify {

struct Fixture {
    std::string name;
    PotentialSpec spec;
    double lambda_bar;
    int kappa;
    std::vector<int> levels;
    double tol;  // closed-vs-oracle relative tolerance
};

// The shipped fixture set: two parameter points per catalog potential,
// regular branch, n in {0,1,2} where admissible.
const std::vector<Fixture>& catalog_fixtures();
std::optional<Fixture> fixture_by_name(const std::string& name);
std::vector<Fixture> fixtures_for(PotentialTag tag);

struct Check {
    std::string name;
    double value = 0.0;      // measured deviation / quantity
    double tolerance = 0.0;  // pass iff value <= tolerance (when tolerance > 0)
    bool pass = true;
    nlohmann::json detail;
};

struct Section {
    std::string name;
    std::vector<Check> checks;
    bool pass() const;
    nlohmann::json to_json() const;
};

struct RunReport {
    std::string command;
    std::vector<Section> sections;
    double wall_time_seconds = 0.0;
    bool pass() const;
    nlohmann::json to_json() const;
};

// Acceptance criteria, one section each.
Section check_spectra_vs_oracle(const std::vector<Fixture>& fixtures,
                                double perturb_epsilon = 0.0);
Section check_nonrel_limit();
Section check_spinor_residuals();
Section check_normalization();
Section check_xpct();
Section check_special_levels();
Section check_woods_saxon();
Section check_adjudication();

// O(lambda-bar^2) convergence table (the verify --limit-scan output).
Section limit_scan(PotentialTag tag);

RunReport run_all(const std::string& command_echo);

} // namespace dirac::verify

#endif
