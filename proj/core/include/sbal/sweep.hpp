#pragma once

// Round-major profile sweep shared by the dispatchers. Round r visits every
// profile in order; the first success by (round, profile index) wins. Each
// (round, profile) cell gets its own RNG stream, so the result and the folded
// statistics do not depend on the thread count.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sbal/core.hpp"

namespace sbal {

struct SolveOptions {
  int repeats = 0;  // rounds per profile; 0 means 50 n^2
  int threads = 1;
};

int default_repeats(std::size_t n);

// What a single (round, profile) attempt reports back.
struct RoundResult {
  std::optional<CoeffVector> c;  // candidate in the original coordinates
  bool skipped = false;
  bool cap_fired = false;
  std::uint64_t prime = 0;
  std::uint64_t list_size = 0;
};

struct SweepTask {
  std::function<RoundResult(std::size_t profile, Rng& rng)> run;
  // Optional per-round preparation (e.g. sign re-randomization); called
  // before any cell of the round with its own stream.
  std::function<void(int round, Rng& rng)> begin_round;
};

SolverReport sweep_profiles(const Instance& inst, std::size_t profile_count, int rounds,
                            std::uint64_t seed, int threads, const SweepTask& task);

}  // namespace sbal
