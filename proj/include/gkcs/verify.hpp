#ifndef GKCS_VERIFY_HPP
#define GKCS_VERIFY_HPP

#include <string>
#include <vector>

// Cross-validation suites: every closed form in the library checked
// against its independent series/quadrature route at pinned tolerances.
// Shared by the `verify` CLI command and the acceptance tests.

namespace gkcs::verify {

struct VerificationReport {
  std::string id;      // invariant being checked
  std::string module;  // owning module
  std::string detail;  // identity text plus the worst parameter point
  double worst_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  bool pass = false;
};

std::vector<VerificationReport> verify_specfun_cross_routes();
std::vector<VerificationReport> verify_gamma_anchors();
std::vector<VerificationReport> verify_generating_identities();
std::vector<VerificationReport> verify_eigenbasis();
std::vector<VerificationReport> verify_normalization();
std::vector<VerificationReport> verify_wavefunction();
std::vector<VerificationReport> verify_overlap_and_measure();
std::vector<VerificationReport> verify_mp_orthogonality();
std::vector<VerificationReport> verify_resolution_of_identity();
std::vector<VerificationReport> verify_kernel();

/// All suites, in a fixed order.
std::vector<VerificationReport> run_all();

}  // namespace gkcs::verify

#endif
