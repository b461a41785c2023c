#ifndef DIRAC_ERRORS_HPP
#define DIRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dirac {

// Parameters outside the admissible region of a formula (imaginary gamma,
// negative radicand, n past n_max, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Requested branch incompatible with the channel (kappa sign) or not
// provided by the closed-form layer.
struct BranchError : std::runtime_error {
    explicit BranchError(const std::string& what) : std::runtime_error(what) {}
};

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct NoRoot : std::runtime_error {
    explicit NoRoot(const std::string& what) : std::runtime_error(what) {}
};

struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};

struct MaxIterations : std::runtime_error {
    explicit MaxIterations(const std::string& what) : std::runtime_error(what) {}
};

struct SingularBalance : std::runtime_error {
    explicit SingularBalance(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMap : std::runtime_error {
    explicit SingularMap(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolution : std::runtime_error {
    explicit NoSolution(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroNorm : std::runtime_error {
    explicit ZeroNorm(const std::string& what) : std::runtime_error(what) {}
};

struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

struct Overflow : std::runtime_error {
    explicit Overflow(const std::string& what) : std::runtime_error(what) {}
};

struct StiffFailure : std::runtime_error {
    explicit StiffFailure(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentMap : std::runtime_error {
    explicit InconsistentMap(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dirac

#endif
