#pragma once

#include <cstddef>

namespace ccm::detail {

// Elementwise cos/sin over contiguous doubles. Built so glibc's vector math
// library can be used when available.
void cos_into(const double* in, double* out, std::size_t n);
void sin_into(const double* in, double* out, std::size_t n);

}  // namespace ccm::detail
