#include "subsup/set_function.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup {

static void check_table_size(int n) {
  if (n > 24) throw std::invalid_argument("build_value_table: ground set too large");
}

std::vector<double> build_value_table_serial(const SetFunction& fn) {
  int n = fn.n();
  check_table_size(n);
  std::size_t total = std::size_t{1} << n;
  std::vector<double> table(total);
  for (std::size_t mask = 0; mask < total; ++mask)
    table[mask] = fn.value_mask(static_cast<std::uint64_t>(mask));
  return table;
}

std::vector<double> build_value_table(const SetFunction& fn) {
  int n = fn.n();
  check_table_size(n);
  std::int64_t total = std::int64_t{1} << n;
  std::vector<double> table(static_cast<std::size_t>(total));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t mask = 0; mask < total; ++mask)
    table[static_cast<std::size_t>(mask)] = fn.value_mask(static_cast<std::uint64_t>(mask));
  return table;
}

}  // namespace subsup
