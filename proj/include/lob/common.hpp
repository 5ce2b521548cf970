#pragma once

#include <cmath>
#include <stdexcept>

namespace lob {

// Error taxonomy shared by the library and the command-line frontend.
//   config_error    — invalid parameters / configuration        (CLI exit code 2)
//   data_error      — malformed or insufficient input data      (CLI exit code 3)
//   numerical_error — numerical diagnostics: lost positivity,
//                     undefined estimator, non-convergence      (CLI exit code 4)
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Standard normal CDF via the complementary error function (stable in both tails).
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

} // namespace lob
