#pragma once

#include <cstdint>
#include <vector>

#include "sbal/core.hpp"

namespace sbal::tsupport {

inline Instance make(std::vector<std::int64_t> x, CoefficientSet set) { return Instance(std::move(x), set); }

inline Instance random_instance(int n, const CoefficientSet& set, std::int64_t W, Rng& rng) {
  return gen_instance(n, set, UniformRange{W}, rng).instance;
}

inline bool in_set(const CoeffVector& c, const CoefficientSet& set) {
  for (int z : c)
    if (!set.contains(z)) return false;
  return true;
}

}  // namespace sbal::tsupport
