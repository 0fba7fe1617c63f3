#include "sbal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sbal/compat.hpp"
#include "sbal/rep_without0.hpp"

namespace sbal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

double xlog(double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); }

// Repeated local grids around the incumbent, shrinking the step each pass.
template <typename F>
void refine_1d(F&& f, double lo, double hi, double& arg, double& best, double step, bool maximize) {
  for (int pass = 0; pass < 60 && step > 1e-13; ++pass) {
    const double c = arg;
    for (int k = -10; k <= 10; ++k) {
      const double t = std::clamp(c + k * step, lo, hi);
      const double v = f(t);
      if (maximize ? v > best : v < best) {
        best = v;
        arg = t;
      }
    }
    step *= 0.25;
  }
}

}  // namespace

double entropy(std::span<const double> p) {
  double s = 0.0, h = 0.0;
  for (double v : p) {
    if (v < 0.0) throw std::invalid_argument("entropy: negative component");
    s += v;
    h += xlog(v);
  }
  if (s > 1.0 + 1e-9) throw std::invalid_argument("entropy: components sum above 1");
  return h;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
  return xlog(p) + xlog(1.0 - p);
}

double pm2_objective(double a0, double a1) {
  const double rest = (1.0 - a0 - 2.0 * a1) / 2.0;
  if (a0 < 0.0 || a1 < 0.0 || rest < -1e-15) return kNegInf;
  const double r = std::max(rest, 0.0);
  const double probs[] = {a0, a1, a1, r, r};
  const double unbalanced = entropy(probs) / 2.0;
  const double rep = std::log2(3.0) * (1.0 - a0) - 2.0 * a1;
  return std::min(unbalanced, rep);
}

Pm2Result optimize_pm2(double step) {
  Pm2Result best{kNegInf, 0.0, 0.0};
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= steps; ++i) {
    const double a0 = i * step;
    for (int j = 0; 2.0 * j * step <= 1.0 - a0 + 1e-12; ++j) {
      const double a1 = j * step;
      const double v = pm2_objective(a0, a1);
      if (v > best.value) best = {v, a0, a1};
    }
  }
  double s = step;
  for (int pass = 0; pass < 60 && s > 1e-13; ++pass) {
    const double c0 = best.alpha0, c1 = best.alpha1;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) {
        const double a0 = std::clamp(c0 + i * s, 0.0, 1.0), a1 = std::clamp(c1 + j * s, 0.0, 0.5);
        const double v = pm2_objective(a0, a1);
        if (v > best.value) best = {v, a0, a1};
      }
    s *= 0.25;
  }
  return best;
}

double pm3_branch_unbalanced(double beta) {
  const double q = (1.0 - 2.0 * beta) / 4.0;
  const double probs[] = {q, beta, q, q, beta, q};
  return entropy(probs) / 2.0;
}

double pm3_branch_shifted(double beta) { return std::log2(6.0) / 3.0 + 0.5 - 2.0 * beta / 3.0; }

Pm3Result optimize_pm3(double step) {
  auto f = [](double b) { return std::min(pm3_branch_unbalanced(b), pm3_branch_shifted(b)); };
  double arg = 0.0, best = kNegInf;
  const int steps = static_cast<int>(std::lround(0.5 / step));
  for (int i = 0; i <= steps; ++i) {
    const double b = i * step;
    if (f(b) > best) {
      best = f(b);
      arg = b;
    }
  }
  refine_1d(f, 0.0, 0.5, arg, best, step, true);
  return {best, arg, pm3_branch_unbalanced(arg), pm3_branch_shifted(arg)};
}

double ess_branch_certificate(double p, double eps) {
  if (p < 0.0 || p >= 1.0) return kInf;
  const double t = 2.0 * eps / (1.0 - p);
  if (t > 1.0) return kInf;
  return 1.0 + binary_entropy(2.0 * eps) / 2.0 + c_certificate(eps) - binary_entropy(t) * (1.0 - p) - p;
}

double ess_branch_baseline(double p) { return (binary_entropy(p) + 1.0 - p) / 2.0; }

EssResult optimize_ess(double step) {
  constexpr double eps_hi = 1.0 / 12.0 - 1e-12;
  // inner: best eps for a fixed p
  auto inner = [&](double p, double& eps_arg) {
    double best = kInf;
    eps_arg = 0.0;
    auto g = [&](double e) { return ess_branch_certificate(p, e); };
    for (double e = 0.0; e <= eps_hi; e += step) {
      const double v = g(e);
      if (v < best) {
        best = v;
        eps_arg = e;
      }
    }
    refine_1d(g, 0.0, eps_hi, eps_arg, best, step, false);
    return best;
  };
  auto outer = [&](double p) {
    double e;
    return std::min(inner(p, e), ess_branch_baseline(p));
  };
  double arg = 0.0, best = kNegInf;
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i < steps; ++i) {
    const double p = i * step;
    const double v = outer(p);
    if (v > best) {
      best = v;
      arg = p;
    }
  }
  refine_1d(outer, 0.0, 1.0 - step, arg, best, step, true);
  double eps;
  inner(arg, eps);
  return {best, arg, eps};
}

AppendixBRow appendix_b_check(int d) {
  if (d < 1) throw std::invalid_argument("appendix_b_check: d must be positive");
  const double k = 3.0 * (2.0 * d + 1.0);
  const double lhs = std::exp(std::log(d + 1.0) * (1.0 - 2.0 / k) - std::lgamma(d + 1.0) * 4.0 / k);
  const double rhs = std::sqrt(2.0 * d + 1.0);
  // upper bounds on lhs and lower bounds on rhs for d = 1..8, as published;
  // the d = 6 right-hand entry is a misprint of sqrt(13) = 3.6056
  static constexpr double tl[] = {1.715, 2.154, 2.492, 2.772, 3.013, 3.227, 3.419, 3.595};
  static constexpr double tr[] = {1.732, 2.236, 2.645, 3.000, 3.316, 3.360, 3.872, 4.123};
  AppendixBRow row{d, lhs, rhs, d <= 8, 0.0, 0.0};
  if (row.has_table) {
    row.table_lhs = tl[d - 1];
    row.table_rhs = tr[d - 1];
  }
  return row;
}

Table1Row table1_check(int d, int variant) {
  if (d < 3 || d > 7) throw std::invalid_argument("table1_check: d must lie in [3, 7]");
  if (variant < 0 || variant >= factor_variant_count(d)) throw std::invalid_argument("table1_check: unknown row");
  const FactorPair f = good_factors(d, variant);
  const CoefficientSet set = CoefficientSet::no_zero(d);
  const double mim = std::log2(static_cast<double>(set.cardinality())) / 2.0;
  const double ratio = mim - f.gamma;
  return {d, variant, ratio, std::exp2(ratio), mim, f.table_base};
}

double runtime_exponent(std::string_view algo, const SolutionProfile& pi, double eps) {
  const auto& set = pi.coeff_set();
  const double n = pi.n();
  const double k = set.cardinality();
  if (n <= 0) throw std::invalid_argument("runtime_exponent: empty profile");
  if (algo == "classic") return std::log2(k) / 2.0;
  if (algo == "unbalanced") {
    std::vector<double> p;
    for (int c : pi.counts()) p.push_back(c / n);
    return entropy(p) / 2.0;
  }
  if (algo == "with0") {
    if (!set.has_zero()) throw std::invalid_argument("runtime_exponent: with0 needs [-d:d]");
    const int d = set.d();
    double logg = 0.0;
    for (std::size_t i = 0; i < set.values().size(); ++i)
      logg += pi.counts()[i] * std::log2(static_cast<double>(d + 1 - std::abs(set.values()[i])));
    const double lb = std::log2(d + 1.0);
    return lb - std::min(logg / n, lb / 2.0);
  }
  if (algo == "without0") {
    if (set.has_zero()) throw std::invalid_argument("runtime_exponent: without0 needs [+-d]");
    if (set.d() < 3) return std::log2(k) / 2.0;
    const double g = gamma_for_profile(pi, good_factors(set.d(), 0));
    if (g <= 0.0) return std::log2(k) / 2.0;
    return std::log2(k) / 2.0 - g / 4.0;
  }
  if (algo == "ess" || algo == "ess-baseline") {
    if (!(set == CoefficientSet::full_range(1))) throw std::invalid_argument("runtime_exponent: ess needs [-1:1]");
    const double p0 = pi.count(0) / n, p1 = pi.count(1) / n, pm = pi.count(-1) / n;
    if (algo == "ess-baseline") return binary_entropy(p0) / 2.0 + (p1 + pm) / 2.0;
    if (p1 <= 0.0 || eps > p1) throw std::invalid_argument("runtime_exponent: ess needs eps <= π(1)/n");
    return 1.0 + binary_entropy(2.0 * eps) / 2.0 + c_certificate(eps) - 2.0 * binary_entropy(eps / p1) * p1 - p0;
  }
  throw std::invalid_argument("runtime_exponent: unknown algorithm id " + std::string(algo));
}

}  // namespace sbal
