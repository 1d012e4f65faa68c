#ifndef NHMC_BUILTINS_HPP
#define NHMC_BUILTINS_HPP

#include "nhmc/core.hpp"

#include <cmath>

namespace nhmc {

/// The 2x2 swap matrix at every time.
ChainModel permutation2(Window window);

/// Alternating state-space sizes: two states at even times, one at odd times.
/// P_n = (1; 1) for even n and (.5 .5) for odd n.
ChainModel alternating_dimension(Window window);

/// Stochastic matrix with i.i.d. exponential weights per row, entries bounded below by `floor`
/// before renormalization. For property tests and demos.
template <class Rng>
Matrix random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng, double floor = 0.0);

// ---------------------------------------------------------------------------

template <class Rng>
Matrix random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng, double floor) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      // 53-bit uniform on (0, 1]
      const double u = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
      m(i, j) = floor - std::log(u);
    }
    m.row(i) /= m.row(i).sum();
  }
  return m;
}

}  // namespace nhmc

#endif  // NHMC_BUILTINS_HPP
