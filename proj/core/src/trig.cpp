#include "trig.hpp"

#include <cmath>

namespace ccm::detail {

void cos_into(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::cos(in[i]);
}

void sin_into(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(in[i]);
}

}  // namespace ccm::detail
