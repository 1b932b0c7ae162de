#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ehba/csv.hpp"
#include "ehba/errors.hpp"
#include "ehba/rng.hpp"
#include "ehba/stats.hpp"

using namespace ehba;

namespace {

// Simpson quadrature of the beta density over [0, x]; valid oracle for
// a, b >= 1 where the integrand is bounded.
double beta_cdf_quadrature(double a, double b, double x) {
  const int n = 20000;  // even
  const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  auto density = [&](double u) {
    if (u <= 0.0 || u >= 1.0) {
      // only hit with a==1 or b==1 exponents where the limit is finite
      double v = 1.0;
      if (a != 1.0) v *= std::pow(u, a - 1.0);
      if (b != 1.0) v *= std::pow(1.0 - u, b - 1.0);
      return v / std::exp(lb);
    }
    return std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u) - lb);
  };
  const double step = x / n;
  double total = density(0.0) + density(x);
  for (int k = 1; k < n; ++k) total += density(k * step) * (k % 2 ? 4.0 : 2.0);
  return total * step / 3.0;
}

}  // namespace

TEST_CASE("incomplete beta matches closed forms") {
  for (double x : {0.05, 0.2, 0.5, 0.7, 0.95}) {
    CHECK(incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
    CHECK(incomplete_beta(1.0, 3.5, x) ==
          doctest::Approx(1.0 - std::pow(1.0 - x, 3.5)).epsilon(1e-12));
    CHECK(incomplete_beta(2.5, 1.0, x) == doctest::Approx(std::pow(x, 2.5)).epsilon(1e-12));
    // arcsine law
    CHECK(incomplete_beta(0.5, 0.5, x) ==
          doctest::Approx(2.0 / M_PI * std::asin(std::sqrt(x))).epsilon(1e-12));
  }
  CHECK(incomplete_beta(3.0, 4.0, 0.0) == 0.0);
  CHECK(incomplete_beta(3.0, 4.0, 1.0) == 1.0);
}

TEST_CASE("incomplete beta matches quadrature and symmetry") {
  // integer shapes keep the density polynomial, where Simpson converges
  // far past the comparison tolerance
  const double shapes[] = {1.0, 2.0, 3.0, 5.0, 9.0};
  for (double a : shapes) {
    for (double b : shapes) {
      for (double x : {0.1, 0.35, 0.5, 0.8}) {
        const double got = incomplete_beta(a, b, x);
        CHECK(got == doctest::Approx(beta_cdf_quadrature(a, b, x)).epsilon(1e-9));
        CHECK(got + incomplete_beta(b, a, 1.0 - x) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(got >= 0.0);
        CHECK(got <= 1.0);
      }
    }
  }
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(incomplete_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("student t p-values match low-df closed forms") {
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    // df = 1: Cauchy
    CHECK(student_t_two_sided_p(t, 1.0) ==
          doctest::Approx(1.0 - 2.0 / M_PI * std::atan(t)).epsilon(1e-12));
    // df = 2 has an elementary CDF
    CHECK(student_t_two_sided_p(t, 2.0) ==
          doctest::Approx(1.0 - t / std::sqrt(t * t + 2.0)).epsilon(1e-12));
    // symmetry in t
    CHECK(student_t_two_sided_p(-t, 5.0) == student_t_two_sided_p(t, 5.0));
  }
  CHECK(student_t_two_sided_p(INFINITY, 3.0) == 0.0);
  // approaches the normal tail for large df
  CHECK(student_t_two_sided_p(1.959963985, 100000.0) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("paired t-test frozen example and guards") {
  TTestResult r = paired_t_test({1.1, 1.2, 1.3}, {1.0, 1.0, 1.0});
  CHECK(r.n == 3);
  CHECK(r.t == doctest::Approx(std::sqrt(12.0)).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(1.0 - std::sqrt(6.0 / 7.0)).epsilon(1e-12));

  // a condition against itself
  std::vector<double> same{0.3, 0.7, 0.2, 0.9};
  CHECK(paired_t_test(same, same).p == 1.0);

  // differences constant up to rounding noise: overwhelming evidence
  TTestResult shifted = paired_t_test({0.6, 0.7, 0.8}, {0.5, 0.6, 0.7});
  CHECK(shifted.p < 1e-9);
  CHECK(shifted.p < 0.05);

  // bit-identical nonzero differences: the exact zero-variance guard
  TTestResult exact = paired_t_test({0.25, 0.25, 0.25}, {0.0, 0.0, 0.0});
  CHECK(exact.p == 0.0);

  CHECK(paired_t_test({1.0}, {0.0}).p == 1.0);
  CHECK_THROWS_AS(paired_t_test({1.0, 2.0}, {1.0}), ConfigError);
}

TEST_CASE("paired t-test agrees with a direct formula on random data") {
  RngStream rng(4242, "stats");
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.next_below(20));
    std::vector<double> x(n), y(n);
    for (int k = 0; k < n; ++k) {
      x[k] = rng.next_unit();
      y[k] = rng.next_unit();
    }
    TTestResult r = paired_t_test(x, y);
    double mean = 0.0;
    for (int k = 0; k < n; ++k) mean += (x[k] - y[k]) / n;
    double ss = 0.0;
    for (int k = 0; k < n; ++k) {
      ss += (x[k] - y[k] - mean) * (x[k] - y[k] - mean);
    }
    if (ss == 0.0) continue;
    const double t = mean / std::sqrt(ss / (n - 1) / n);
    CHECK(r.t == doctest::Approx(t).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(incomplete_beta(0.5 * (n - 1), 0.5,
                                                 (n - 1) / ((n - 1) + t * t)))
                     .epsilon(1e-12));
    CHECK(r.p >= 0.0);
    CHECK(r.p <= 1.0);
  }
}

TEST_CASE("one-sided sign test binomial tails") {
  // 8 wins, 2 losses: tail = (45 + 10 + 1) / 2^10
  std::vector<double> x, y;
  for (int k = 0; k < 8; ++k) {
    x.push_back(1.0);
    y.push_back(0.0);
  }
  for (int k = 0; k < 2; ++k) {
    x.push_back(0.0);
    y.push_back(1.0);
  }
  x.push_back(0.5);  // tie, dropped
  y.push_back(0.5);
  SignTestResult r = sign_test_greater(x, y);
  CHECK(r.wins == 8);
  CHECK(r.losses == 2);
  CHECK(r.p == doctest::Approx(56.0 / 1024.0).epsilon(1e-12));

  // sweeping wins: p must increase as wins are replaced by losses
  double prev = 0.0;
  for (int wins = 30; wins >= 0; --wins) {
    std::vector<double> a(30, 0.0), b(30, 1.0);
    for (int k = 0; k < wins; ++k) {
      a[k] = 1.0;
      b[k] = 0.0;
    }
    const double p = sign_test_greater(a, b).p;
    CHECK(p >= prev);
    CHECK(p <= 1.0);
    prev = p;
  }
  CHECK(sign_test_greater({1.0, 2.0}, {1.0, 2.0}).p == 1.0);  // all ties
  // 30 wins out of 30
  std::vector<double> aw(30, 1.0), bw(30, 0.0);
  CHECK(sign_test_greater(aw, bw).p == doctest::Approx(std::pow(0.5, 30)).epsilon(1e-9));
}

TEST_CASE("mean and standard error helpers") {
  CHECK(mean_of({0.0, 1.0}) == 0.5);
  CHECK(stderr_of({0.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(stderr_of({0.7}) == 0.0);
  CHECK(stderr_of({0.5, 0.5, 0.5}) == 0.0);
  CHECK(stderr_of({0.4, 0.4, 0.4}) <= 1e-12);
  CHECK_THROWS_AS(mean_of({}), DomainError);
}

TEST_CASE("csv writer quotes and enforces width") {
  std::ostringstream out;
  CsvWriter w(out, {"name", "value"});
  w.row({"plain", format_number(0.5)});
  w.row({"with,comma", "with \"quote\""});
  CHECK(w.rows() == 2);
  CHECK(out.str() ==
        "name,value\n"
        "plain,0.5\n"
        "\"with,comma\",\"with \"\"quote\"\"\"\n");
  CHECK_THROWS_AS(w.row({"too", "many", "fields"}), ConfigError);

  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-3) == "-3");
  CHECK(format_number(std::uint64_t{18446744073709551615ull}) == "18446744073709551615");
  // shortest-round-trip rendering parses back exactly
  for (double v : {1.0 / 3.0, 2.0 / 3.0, 1e-9, 123456.789, 0.0}) {
    CHECK(std::stod(format_number(v)) == v);
  }
}
