#include "sbal/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace sbal {

int default_repeats(std::size_t n) { return static_cast<int>(50 * n * n); }

namespace {

void run_cells(std::size_t begin, std::size_t end, int round, std::uint64_t seed, int threads,
               const SweepTask& task, std::vector<RoundResult>& out) {
  auto cell = [&](std::size_t p) {
    Rng rng = derive_rng(seed, static_cast<std::uint64_t>(round), p);
    out[p - begin] = task.run(p, rng);
  };
  if (threads <= 1 || end - begin < 2) {
    for (std::size_t p = begin; p < end; ++p) cell(p);
    return;
  }
  std::atomic<std::size_t> next{begin};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t p; (p = next.fetch_add(1)) < end;) {
        try {
          cell(p);
        } catch (...) {
          std::lock_guard lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

SolverReport sweep_profiles(const Instance& inst, std::size_t profile_count, int rounds,
                            std::uint64_t seed, int threads, const SweepTask& task) {
  SolverReport rep;
  std::vector<char> cap_every_round(profile_count, 1);
  std::int64_t rounds_done = 0, cells = 0, list_total = 0, list_max = 0, cap_hits = 0;

  const std::size_t chunk = threads <= 1 ? 1 : static_cast<std::size_t>(threads) * 4;
  std::vector<RoundResult> buf;

  for (int round = 0; round < rounds && !rep.solved(); ++round) {
    ++rounds_done;
    if (task.begin_round) {
      Rng rr = derive_rng(seed, static_cast<std::uint64_t>(round), ~std::uint64_t{0});
      task.begin_round(round, rr);
    }
    for (std::size_t begin = 0; begin < profile_count && !rep.solved(); begin += chunk) {
      const std::size_t end = std::min(profile_count, begin + chunk);
      buf.assign(end - begin, RoundResult{});
      run_cells(begin, end, round, seed, threads, task, buf);
      // fold in profile order and stop at the first success
      for (std::size_t p = begin; p < end; ++p) {
        const RoundResult& r = buf[p - begin];
        if (r.skipped) {
          cap_every_round[p] = 0;
          continue;
        }
        ++cells;
        list_total += static_cast<std::int64_t>(r.list_size);
        list_max = std::max<std::int64_t>(list_max, static_cast<std::int64_t>(r.list_size));
        if (r.cap_fired)
          ++cap_hits;
        else
          cap_every_round[p] = 0;
        if (r.c) {
          rep = SolverReport::solved_with(inst, *r.c);
          rep.stats["prime"] = static_cast<std::int64_t>(r.prime);
          rep.stats["S_size"] = static_cast<std::int64_t>(r.list_size);
          rep.stats["winning_profile"] = static_cast<std::int64_t>(p);
          break;
        }
      }
    }
  }

  if (!rep.solved()) {
    bool stuck = rounds > 0 && std::any_of(cap_every_round.begin(), cap_every_round.end(),
                                           [](char v) { return v != 0; });
    rep.outcome = stuck ? Outcome::RetryableFailure : Outcome::NoSolutionFound;
    rep.stats["prime"] = 0;
    rep.stats["S_size"] = 0;
    if (stuck) rep.notes.push_back("cap fired in every round for at least one profile");
  }
  rep.stats["rounds"] = rounds_done;
  rep.stats["profiles"] = static_cast<std::int64_t>(profile_count);
  rep.stats["cells"] = cells;
  rep.stats["list_total"] = list_total;
  rep.stats["list_max"] = list_max;
  rep.stats["cap_hits"] = cap_hits;
  return rep;
}

}  // namespace sbal
