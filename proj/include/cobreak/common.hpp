#pragma once

#include <stdexcept>

namespace cobreak {

// Tolerance conventions used throughout:
//   hermiticity / trace checks        1e-10
//   eigenvalue floor for PSD checks  -1e-9
//   matrix-element comparisons        1e-9  (runtime-overridable, see set_matrix_tol)
//   parametric angle criteria         1e-12
inline constexpr double kHermTol  = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdFloor = 1e-9;
inline constexpr double kParamTol = 1e-12;

// Matrix-element tolerance; defaults to 1e-9. The CLI overrides it from the
// COBREAK_TOL environment variable.
double matrix_tol();
void set_matrix_tol(double tol);

// An operation's entry requirement was not met (CLI exit code 4).
class precondition_error : public std::logic_error {
  using std::logic_error::logic_error;
};

// Two supposedly equivalent computations disagreed (CLI exit code 3).
class consistency_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cobreak
