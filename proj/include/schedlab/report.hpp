#pragma once

#include "schedlab/bounds.hpp"

namespace schedlab {

/// Algorithm-vs-oracle comparison for one instance.
struct RatioReport {
  double algorithm_value = 0.0;
  double oracle_value = 0.0;
  double ratio = 1.0;
  bounds::BoundValue bound;
  double margin = 0.0;  // bound.value - ratio; >= 0 when the bound holds
};

}  // namespace schedlab
