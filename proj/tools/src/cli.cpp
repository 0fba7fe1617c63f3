#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "sbal/analysis.hpp"
#include "sbal/ess.hpp"
#include "sbal/mitm.hpp"
#include "sbal/oracle.hpp"
#include "sbal/rep_with0.hpp"
#include "sbal/rep_without0.hpp"

namespace sbal::cli {

using io::InputError;
using io::json;

std::string resolve_algo(const std::string& algo, const CoefficientSet& set) {
  if (algo != "auto") return algo;
  if (set.has_zero()) return set.d() == 1 ? "ess" : "rep0";
  return set.d() <= 2 ? "mitm" : "repnz";
}

SolverReport run_algo(const std::string& algo_in, const Instance& inst, std::uint64_t seed, const SolveOptions& opts) {
  const std::string algo = resolve_algo(algo_in, inst.coeff_set());
  const auto& set = inst.coeff_set();
  Rng rng(seed);
  if (algo == "oracle") return brute_force_solve(inst);
  if (algo == "mitm") return classic_mitm(inst);
  if (algo == "unbalanced") return solve_unbalanced(inst, rng, opts);
  if (algo == "rep0") {
    if (!set.has_zero()) throw InputError("rep0 needs a [-d:d] coefficient set");
    return solve_with0(inst, rng, opts);
  }
  if (algo == "repnz") {
    if (set.has_zero()) throw InputError("repnz needs a [+-d] coefficient set");
    return solve_without0(inst, rng, opts);
  }
  if (algo == "ess") {
    if (!(set == CoefficientSet::full_range(1))) throw InputError("ess needs the [-1:1] coefficient set");
    return solve_ess(inst, rng, opts);
  }
  throw InputError("unknown algorithm " + algo);
}

namespace {

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Solved: return kOk;
    case Outcome::NoSolutionFound: return kNoSolution;
    case Outcome::RetryableFailure: return kRetryable;
  }
  return kBadInput;
}

json parse_file(const std::string& path) { return io::parse_text(io::read_source(path)); }

void print_report(std::ostream& out, const SolverReport& rep, const std::string& algo, std::uint64_t seed, bool as_json) {
  if (as_json) {
    out << io::report_to_json(rep, algo, seed).dump() << "\n";
    return;
  }
  out << "outcome: " << outcome_name(rep.outcome) << "\n";
  if (rep.solution) {
    out << "c:";
    for (int z : rep.solution->c) out << ' ' << z;
    out << "\n";
  }
  out << "algo: " << algo << "\nseed: " << seed << "\n";
  for (const auto& [k, v] : rep.stats) out << k << ": " << v << "\n";
  for (const auto& n : rep.notes) out << "note: " << n << "\n";
}

// "z:count,z:count"
SolutionProfile parse_profile(const std::string& spec, const CoefficientSet& set, int n) {
  std::map<int, int> m;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("profile entries look like z:count");
    try {
      m[std::stoi(item.substr(0, colon))] += std::stoi(item.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw InputError("profile entries look like z:count");
    }
  }
  try {
    SolutionProfile p = SolutionProfile::from_map(set, m);
    if (p.n() != n) throw InputError("profile counts must sum to n");
    return p;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

// As even as possible; leftover entries go to the first coefficients.
SolutionProfile balanced_profile(const CoefficientSet& set, int n) {
  const int k = set.cardinality();
  std::vector<int> counts(k, n / k);
  for (int i = 0; i < n % k; ++i) ++counts[i];
  return SolutionProfile(set, counts);
}

std::string exponent_id(const std::string& algo) {
  if (algo == "mitm") return "classic";
  if (algo == "unbalanced") return "unbalanced";
  if (algo == "rep0") return "with0";
  if (algo == "repnz") return "without0";
  if (algo == "ess") return "ess";
  return "";
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

struct SolveArgs {
  std::string path = "-";
  std::string algo = "auto";
  std::uint64_t seed = 1;
  int repeats = 0;
  int threads = 1;
  bool json = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = io::instance_from_json(parse_file(a.path));
  const std::string algo = resolve_algo(a.algo, inst.coeff_set());
  SolveOptions opts;
  opts.repeats = a.repeats;
  opts.threads = a.threads;
  const SolverReport rep = run_algo(algo, inst, a.seed, opts);
  print_report(out, rep, algo, a.seed, a.json);
  return exit_for(rep.outcome);
}

int cmd_verify(const std::string& inst_path, const std::string& sol_path, std::ostream& out) {
  const Instance inst = io::instance_from_json(parse_file(inst_path));
  const CoeffVector c = io::solution_from_json(parse_file(sol_path));
  const bool ok = c.size() == inst.n() && is_solution(inst, c);
  out << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kInvalid;
}

int cmd_count(const std::string& path, bool as_json, std::ostream& out) {
  const Instance inst = io::instance_from_json(parse_file(path));
  const std::uint64_t count = count_solutions(inst);
  if (as_json)
    out << json{{"count", count}}.dump() << "\n";
  else
    out << count << "\n";
  return kOk;
}

struct GenerateArgs {
  int n = 8;
  std::string kind = "range";
  int d = 1;
  std::uint64_t seed = 1;
  std::int64_t W = 100;
  bool planted = false;
  std::string profile;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  const CoefficientSet set = io::coeff_set_from_json(json{{"kind", a.kind}, {"d", a.d}});
  if (a.n < 2) throw InputError("generate: n must be at least 2");
  Rng rng = derive_rng(a.seed, 0);
  GenMode mode = UniformRange{a.W};
  if (a.planted || !a.profile.empty()) {
    SolutionProfile p = a.profile.empty() ? balanced_profile(set, a.n) : parse_profile(a.profile, set, a.n);
    mode = Planted{p, a.W};
  }
  GeneratedInstance g = [&] {
    try {
      return gen_instance(a.n, set, mode, rng);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  json j = io::instance_to_json(g.instance);
  if (g.planted) j["planted"] = *g.planted;
  out << j.dump() << "\n";
  return kOk;
}

int cmd_analyze(const std::string& target, int d_max, std::ostream& out) {
  json j;
  if (target == "pm2") {
    auto r = optimize_pm2();
    j = {{"value", r.value}, {"alpha0", r.alpha0}, {"alpha1", r.alpha1}};
  } else if (target == "pm3") {
    auto r = optimize_pm3();
    j = {{"value", r.value}, {"beta", r.beta}, {"branch_unbalanced", r.branch_unbalanced}, {"branch_shifted", r.branch_shifted}};
  } else if (target == "ess") {
    auto r = optimize_ess();
    j = {{"value", r.value}, {"p", r.p}, {"eps", r.eps}};
  } else if (target == "appendix-b") {
    j["rows"] = json::array();
    for (int d = 1; d <= d_max; ++d) {
      auto r = appendix_b_check(d);
      json row = {{"d", d}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.lhs < r.rhs}};
      if (r.has_table) {
        row["table_lhs"] = r.table_lhs;
        row["table_rhs"] = r.table_rhs;
      }
      j["rows"].push_back(row);
    }
  } else if (target == "table1") {
    j["rows"] = json::array();
    for (int d = 3; d <= 7; ++d)
      for (int v = 0; v < factor_variant_count(d); ++v) {
        auto r = table1_check(d, v);
        auto f = good_factors(d, v);
        j["rows"].push_back({{"d", d}, {"variant", v}, {"C1", f.C1}, {"C2", f.C2}, {"ratio_base", r.ratio_base},
                             {"ratio_exponent", r.ratio_exponent}, {"mim_base", std::exp2(r.mim_exponent)},
                             {"table_base", r.table_base}});
      }
  } else {
    throw InputError("analyze: target must be pm2, pm3, ess, appendix-b or table1");
  }
  out << j.dump(2) << "\n";
  return kOk;
}

struct Suite {
  int n_min = 0, n_max = -1, count = 0, repeats = 0;
  std::uint64_t seed = 1;
  std::int64_t W = 100;
  std::vector<CoefficientSet> sets;
  std::vector<std::string> algos;
};

Suite suite_from_json(const json& j) {
  if (!j.is_object()) throw InputError("suite must be a JSON object");
  Suite s;
  try {
    s.n_min = j.value("n_min", 0);
    s.n_max = j.value("n_max", -1);
    s.count = j.value("count", 1);
    s.repeats = j.value("repeats", 0);
    s.seed = j.value("seed", std::uint64_t{1});
    s.W = j.value("W", std::int64_t{100});
    for (const auto& c : j.value("sets", json::array())) s.sets.push_back(io::coeff_set_from_json(c));
    s.algos = j.value("algos", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw InputError(std::string("suite: ") + e.what());
  }
  if (s.n_min < 0 || s.count < 0) throw InputError("suite: negative n_min or count");
  if (s.n_max > 64) throw InputError("suite: n_max above 64");
  return s;
}

int cmd_bench(const std::string& suite_path, const std::string& out_path, bool timing, std::ostream& out) {
  const Suite s = suite_from_json(parse_file(suite_path));
  std::ostringstream csv;
  csv << "algo,n,C,seed,outcome,rounds,prime,|S|,millis,predicted_exponent\n";
  for (const auto& algo : s.algos)
    for (std::size_t si = 0; si < s.sets.size(); ++si)
      for (int n = std::max(s.n_min, 2); n <= s.n_max; ++n)
        for (int k = 0; k < s.count; ++k) {
          const CoefficientSet& set = s.sets[si];
          const std::uint64_t iseed = splitmix64(splitmix64(splitmix64(s.seed) ^ si) ^ (std::uint64_t(n) << 32 | k));
          Rng grng = derive_rng(iseed, 0);
          const Instance inst = gen_instance(n, set, UniformRange{s.W}, grng).instance;
          SolveOptions opts;
          opts.repeats = s.repeats;
          const auto t0 = std::chrono::steady_clock::now();
          const SolverReport rep = run_algo(algo, inst, iseed, opts);
          const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          auto stat = [&](const char* key) -> std::string {
            auto it = rep.stats.find(key);
            return it == rep.stats.end() ? "-" : std::to_string(it->second);
          };
          std::string list = stat("list_max");
          if (list == "-") list = stat("list_total");
          std::string predicted = "-";
          if (auto id = exponent_id(resolve_algo(algo, set)); !id.empty()) {
            try {
              predicted = fixed(runtime_exponent(id, balanced_profile(set, n)), 6);
            } catch (const std::invalid_argument&) {
            }
          }
          csv << algo << ',' << n << ',' << set.name() << ',' << iseed << ',' << outcome_name(rep.outcome) << ','
              << stat("rounds") << ',' << stat("prime") << ',' << list << ',' << (timing ? fixed(ms, 3) : "-") << ','
              << predicted << "\n";
        }
  if (out_path.empty() || out_path == "-") {
    out << csv.str();
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write " + out_path);
    f << csv.str();
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subset Balancing solvers", "sbal"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve an instance (exit 0 solved, 3 no solution, 4 retryable)");
  solve->add_option("instance", sa.path, "instance JSON file, - for stdin");
  solve->add_option("--algo", sa.algo)->check(CLI::IsMember({"auto", "mitm", "unbalanced", "rep0", "repnz", "ess", "oracle"}));
  solve->add_option("--seed", sa.seed);
  solve->add_option("--repeats", sa.repeats, "rounds per profile, 0 for the default 50 n^2")->check(CLI::NonNegativeNumber);
  solve->add_option("--threads", sa.threads)->check(CLI::PositiveNumber);
  solve->add_flag("--json", sa.json);

  std::string vinst, vsol;
  auto* verify = app.add_subcommand("verify", "Check a candidate solution (exit 0 valid, 1 invalid)");
  verify->add_option("instance", vinst)->required();
  verify->add_option("solution", vsol)->required();

  std::string cpath = "-";
  bool cjson = false;
  auto* count = app.add_subcommand("count", "Count solutions by exhaustive search");
  count->add_option("instance", cpath);
  count->add_flag("--json", cjson);

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate a random or planted instance");
  generate->add_option("--n", ga.n);
  generate->add_option("--kind", ga.kind)->check(CLI::IsMember({"range", "no_zero"}));
  generate->add_option("--d", ga.d);
  generate->add_option("--seed", ga.seed);
  generate->add_option("--W", ga.W)->check(CLI::PositiveNumber);
  generate->add_flag("--planted", ga.planted, "plant a solution (balanced profile unless --profile)");
  generate->add_option("--profile", ga.profile, "planted profile as z:count,...");

  std::string target;
  int d_max = 8;
  auto* analyze = app.add_subcommand("analyze", "Reproduce optimized exponents and bound tables");
  analyze->add_option("--target", target)->required()->check(CLI::IsMember({"pm2", "pm3", "ess", "appendix-b", "table1"}));
  analyze->add_option("--d-max", d_max, "last d for appendix-b")->check(CLI::Range(1, 170));

  std::string suite, out_path;
  bool timing = false;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench->add_option("--suite", suite)->required();
  bench->add_option("--out", out_path);
  bench->add_flag("--timing", timing, "fill the millis column (breaks byte-identical output)");

  std::vector<std::string> storage{"sbal"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*solve) return cmd_solve(sa, out);
    if (*verify) return cmd_verify(vinst, vsol, out);
    if (*count) return cmd_count(cpath, cjson, out);
    if (*generate) return cmd_generate(ga, out);
    if (*analyze) return cmd_analyze(target, d_max, out);
    if (*bench) return cmd_bench(suite, out_path, timing, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace sbal::cli
