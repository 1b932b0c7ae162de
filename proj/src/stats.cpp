#include "ehba/stats.hpp"

#include <cmath>
#include <cstddef>

#include "ehba/errors.hpp"

namespace ehba {

namespace {

// Lentz-style continued fraction for the incomplete beta; converges
// quickly when x < (a+1)/(a+b+2), which the caller arranges.
double beta_fraction(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ConfigError("incomplete_beta: shape parameters must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ConfigError("student_t_two_sided_p: df must be positive");
  if (std::isnan(t)) throw DomainError("student_t_two_sided_p: t is NaN");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

TTestResult paired_t_test(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ConfigError("paired_t_test: unequal sample sizes");
  TTestResult r;
  r.n = static_cast<int>(x.size());
  if (r.n < 2) return r;  // no variance estimate; cannot reject
  double mean = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) mean += x[k] - y[k];
  mean /= r.n;
  double ss = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k] - mean;
    ss += d * d;
  }
  const double var = ss / (r.n - 1);
  if (var <= 0.0) {
    // Identical differences every pair: either no effect at all or an
    // exactly constant one.
    r.t = 0.0;
    r.p = mean == 0.0 ? 1.0 : 0.0;
    return r;
  }
  r.t = mean / std::sqrt(var / r.n);
  r.p = student_t_two_sided_p(r.t, r.n - 1);
  return r;
}

SignTestResult sign_test_greater(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ConfigError("sign_test_greater: unequal sample sizes");
  SignTestResult r;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > y[k]) ++r.wins;
    if (x[k] < y[k]) ++r.losses;
  }
  const int n = r.wins + r.losses;
  if (n == 0) return r;
  double tail = 0.0;
  for (int k = r.wins; k <= n; ++k) {
    tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                     n * std::log(2.0));
  }
  r.p = tail < 1.0 ? tail : 1.0;
  return r;
}

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) throw DomainError("mean_of: empty sample");
  double total = 0.0;
  for (double v : xs) total += v;
  return total / xs.size();
}

double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = mean_of(xs);
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (xs.size() - 1) / xs.size());
}

}  // namespace ehba
