#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ratekit/rng.hpp"

namespace ratekit {

struct VerifyOptions {
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0 = RATEKIT_THREADS env, else hardware concurrency
};

struct SuiteCase {
  std::string name;
  bool pass = false;
  double metric = 0.0;     // the measured residual / ratio for the case
  double threshold = 0.0;  // the bound it was checked against
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCase> cases;
  int failed = 0;
  bool passed() const { return failed == 0; }
};

// env RATEKIT_THREADS > requested flag > hardware concurrency
unsigned resolve_threads(unsigned requested);

// Index-parallel map with deterministic gather; fn(i) must only write state
// owned by case i.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

// Representation theorems: quadrature vs prefactor * G for each variant,
// m in {1,2,3}, 25 seeded draws (general delta = m rho and the delta = 1
// corollary forms), relative 1e-6.
SuiteResult run_repr_suite(const VerifyOptions& opt);

// Exact ODE route: Mellin-side operator identity < 1e-11 for the six
// operator families, plus perturbed-operator negative controls > 1e-4.
SuiteResult run_ode_exact_suite(const VerifyOptions& opt);

// Numeric ODE route: finite-difference residuals of the theorem operators
// applied to quadrature values, plus step-refinement slope studies.
SuiteResult run_ode_fd_suite(const VerifyOptions& opt);

// Pathway limits: empirical convergence order of |I_beta - I1| along
// beta = 1 +- 2^{-k}, and the gamma-ratio limit bound.
SuiteResult run_limits_suite(const VerifyOptions& opt);

// Gamma identities: multiplication formula residuals, functional equation,
// reflection formula.
SuiteResult run_identities_suite(const VerifyOptions& opt);

// Method coherence: contour independence of the abscissa, series/contour
// agreement, truncation convergence, Mellin-pair sanity, and Auto never
// raising MethodDisagreement on valid specs.
SuiteResult run_coherence_suite(const VerifyOptions& opt);

std::vector<SuiteResult> run_all_suites(const VerifyOptions& opt);

SuiteResult run_suite_by_name(const std::string& name, const VerifyOptions& opt);

}  // namespace ratekit
