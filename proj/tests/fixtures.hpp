#pragma once

#include "smspsa/markov.hpp"

namespace smspsa::fixtures {

// Three-state ring with weak back links and a fixed 0.001 self-loop per state.
inline StochasticMatrix ring_matrix() {
  MatrixX<double> p(3, 3);
  p << 0.001, 0.001, 0.998,
       0.998, 0.001, 0.001,
       0.001, 0.998, 0.001;
  return StochasticMatrix(p);
}

inline AdjustmentMask ring_mask() {
  MatrixX<double> c(3, 3);
  c << 0, 1, 1,
       1, 0, 1,
       1, 1, 0;
  return AdjustmentMask::from_numeric(c);
}

}  // namespace smspsa::fixtures
