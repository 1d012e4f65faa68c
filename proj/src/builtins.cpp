#include "nhmc/builtins.hpp"

namespace nhmc {

ChainModel permutation2(Window window) {
  Matrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  return ChainModel::homogeneous(swap, window);
}

ChainModel alternating_dimension(Window window) {
  Matrix split(1, 2);
  split << 0.5, 0.5;
  Matrix merge(2, 1);
  merge << 1.0, 1.0;
  std::vector<Matrix> steps;
  for (TimeIndex n = window.start; n < window.end; ++n) {
    steps.push_back(n % 2 == 0 ? merge : split);
  }
  return ChainModel(window, std::move(steps));
}

}  // namespace nhmc
