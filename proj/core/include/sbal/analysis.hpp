#pragma once

// Entropy helpers and numerical reproduction of the optimized exponents.

#include <span>
#include <string_view>
#include <vector>

#include "sbal/core.hpp"

namespace sbal {

/// -sum p_i log2 p_i with 0 log 0 = 0.
double entropy(std::span<const double> p);
double binary_entropy(double p);

struct Pm2Result {
  double value, alpha0, alpha1;
};
/// Worst-case balance between the unbalanced and representation solvers on
/// [-2:2], as a function of (α0, α1) = (π(0)/n, π(1)/n).
double pm2_objective(double alpha0, double alpha1);
Pm2Result optimize_pm2(double step = 1e-3);

struct Pm3Result {
  double value, beta, branch_unbalanced, branch_shifted;
};
double pm3_branch_unbalanced(double beta);
double pm3_branch_shifted(double beta);
Pm3Result optimize_pm3(double step = 1e-3);

struct EssResult {
  double value, p, eps;
};
/// Certificate-based branch and the baseline branch, with p = π(0)/n.
double ess_branch_certificate(double p, double eps);
double ess_branch_baseline(double p);
EssResult optimize_ess(double step = 1e-3);

struct AppendixBRow {
  int d;
  double lhs, rhs;
  bool has_table;
  double table_lhs, table_rhs;  // published bounds for d <= 8
};
/// lhs = (d+1) (d+1)^{-2/(3(2d+1))} (d!)^{-4/(3(2d+1))}, rhs = sqrt(2d+1).
AppendixBRow appendix_b_check(int d);

struct Table1Row {
  int d, variant;
  double ratio_exponent;  // log2(|L|/|P|)/n for the balanced profile
  double ratio_base;
  double mim_exponent;    // log2|C|/2
  double table_base;
};
Table1Row table1_check(int d, int variant);

/// Predicted log2(work)/n. Ids: classic, unbalanced, with0, without0, ess,
/// ess-baseline. eps is only read by ess.
double runtime_exponent(std::string_view algo, const SolutionProfile& pi, double eps = 0.04493);

}  // namespace sbal
