#ifndef PHOTONLOC_VERIFY_HPP
#define PHOTONLOC_VERIFY_HPP

#include <string>
#include <vector>

#include "photonloc/config.hpp"

namespace photonloc {

struct CheckResult {
    std::string suite;
    std::string check;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Report {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    const CheckResult* first_failure() const;
    std::string to_json() const;
};

// Individual verification suites. Default bounds are overridden globally
// by cfg.tol when it is set.
std::vector<CheckResult> suite_polarization(const RunConfig& cfg);
std::vector<CheckResult> suite_operator(const RunConfig& cfg);      // eigenvalue equation
std::vector<CheckResult> suite_commutator(const RunConfig& cfg);    // incl. Pryce negative control
std::vector<CheckResult> suite_adjoint(const RunConfig& cfg);       // pseudo-Hermiticity + similarity
std::vector<CheckResult> suite_biorthonormality(const RunConfig& cfg);
std::vector<CheckResult> suite_parseval(const RunConfig& cfg);
std::vector<CheckResult> suite_densities(const RunConfig& cfg);
std::vector<CheckResult> suite_maxwell(const RunConfig& cfg);
std::vector<CheckResult> suite_two_mode(const RunConfig& cfg);
std::vector<CheckResult> suite_two_photon(const RunConfig& cfg);    // amplitude vs Fock oracle
std::vector<CheckResult> suite_fock_norms(const RunConfig& cfg);
std::vector<CheckResult> suite_jz(const RunConfig& cfg);

// Everything above, in a fixed order.
Report run_verify(const RunConfig& cfg);

} // namespace photonloc

#endif
