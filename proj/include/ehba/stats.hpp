#pragma once

#include <vector>

namespace ehba {

// Regularized incomplete beta function I_x(a, b), evaluated with the
// standard continued fraction. Domain: a, b > 0, x in [0, 1].
double incomplete_beta(double a, double b, double x);

// Two-sided p-value of a Student-t statistic with df degrees of freedom:
// I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int n = 0;  // number of pairs
};

// Paired two-sided t-test on the differences x[k] - y[k]. Degenerate
// inputs are guarded rather than NaN: fewer than two pairs or all-zero
// differences give p = 1; zero variance around a nonzero mean gives p = 0.
TTestResult paired_t_test(const std::vector<double>& x, const std::vector<double>& y);

struct SignTestResult {
  int wins = 0;    // x[k] > y[k]
  int losses = 0;  // x[k] < y[k]
  double p = 1.0;  // one-sided binomial tail at 1/2; ties dropped
};

// One-sided sign test of the hypothesis that x tends to exceed y.
SignTestResult sign_test_greater(const std::vector<double>& x, const std::vector<double>& y);

// Arithmetic mean; throws DomainError on an empty list.
double mean_of(const std::vector<double>& xs);

// Sample standard error of the mean (sd / sqrt(n)); 0 for n < 2.
double stderr_of(const std::vector<double>& xs);

}  // namespace ehba
