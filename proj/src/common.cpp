#include "cobreak/common.hpp"

namespace cobreak {

namespace {
double g_matrix_tol = 1e-9;
}

double matrix_tol() { return g_matrix_tol; }

void set_matrix_tol(double tol) {
  if (tol <= 0.0) throw std::invalid_argument("matrix tolerance must be positive");
  g_matrix_tol = tol;
}

}  // namespace cobreak
