// Exact counts behind the existence argument: projective points, bijections
// versus projective maps of a line, subspace totals, and the factorial versus
// subspace-count inequality that forces non-bilinear P_sigma.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bilin/fpcore.hpp"

namespace bilin {

using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigCount big_pow(Residue p, std::uint64_t e) { return boost::multiprecision::pow(BigCount(p), static_cast<unsigned>(e)); }

inline BigCount big_factorial(std::uint64_t n) {
  BigCount r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

/// (p^n - 1)/(p - 1), checked against the lower bound p^(n-1).
inline BigCount proj_count(Residue p, std::size_t n) {
  Field{p};
  if (n == 0) throw std::invalid_argument("proj_count: n must be positive");
  const BigCount c = (big_pow(p, n) - 1) / (p - 1);
  if (c < big_pow(p, n - 1)) throw std::logic_error("proj_count: lower bound p^(n-1) failed");
  return c;
}

/// ((p+1)!, (p+1)p(p-1)): bijections of P(F_p^2) and the projective ones.
inline std::pair<BigCount, BigCount> bijection_vs_projective(Residue p) {
  Field{p};
  return {big_factorial(p + 1), BigCount(p + 1) * p * (p - 1)};
}

/// Gaussian binomial [m choose k]_p.
inline BigCount gaussian_binomial(Residue p, std::size_t m, std::size_t k) {
  if (k > m) return 0;
  BigCount num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= big_pow(p, m - i) - 1;
    den *= big_pow(p, i + 1) - 1;
  }
  return num / den;
}

/// The bound 2(p^(m^2/2 + m) - 1)/(p^m - 1). When m is odd the exponent is
/// half-integral and `exact` is empty; comparisons then square both sides.
struct SubspaceBound {
  Residue p = 2;
  std::uint64_t twice_exponent = 0;  // m^2 + 2m
  BigCount denominator;              // p^m - 1
  std::optional<BigRational> exact;
  double approx = 0.0;
};

struct SubspaceCounts {
  BigCount exact_total;
  SubspaceBound paper_bound;
  bool within_bound = false;
};

inline SubspaceCounts subspace_counts(Residue p, std::size_t m) {
  Field{p};
  if (m == 0 || m > 64) throw std::invalid_argument("subspace_counts: m must be in 1..64");
  SubspaceCounts out;
  for (std::size_t k = 0; k <= m; ++k) out.exact_total += gaussian_binomial(p, m, k);

  auto& b = out.paper_bound;
  b.p = p;
  b.twice_exponent = static_cast<std::uint64_t>(m) * m + 2 * m;
  b.denominator = big_pow(p, m) - 1;
  const double half_e = static_cast<double>(b.twice_exponent) / 2.0;
  b.approx = 2.0 * (std::pow(static_cast<double>(p), half_e) - 1.0) / (std::pow(static_cast<double>(p), static_cast<double>(m)) - 1.0);
  if (b.twice_exponent % 2 == 0) {
    b.exact = BigRational(2 * (big_pow(p, b.twice_exponent / 2) - 1), b.denominator);
    out.within_bound = BigRational(out.exact_total) <= *b.exact;
  } else {
    // T <= 2(s - 1)/d  <=>  T d + 2 <= 2 s  <=>  (T d + 2)^2 <= 4 p^(2e)
    const BigCount lhs = out.exact_total * b.denominator + 2;
    out.within_bound = lhs * lhs <= 4 * big_pow(p, b.twice_exponent);
  }
  return out;
}

enum class InequalityMode { Stirling, ExactFactorial };

inline std::string to_string(InequalityMode m) { return m == InequalityMode::Stirling ? "stirling" : "exact_factorial"; }

/// Log-domain sides of the comparison at (p, n), before any escalation.
struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool escalated = false;
  bool violated = false;
};

inline constexpr double kLogMargin = 1e-6;

namespace detail {

// Largest m = p^(n-1) for which the exact factorial comparison is run.
inline constexpr std::uint64_t kExactFactorialLimit = 20000;

inline bool exact_factorial_violated(Residue p, std::size_t n, std::uint64_t m) {
  // m! > (32/15) p^(n^4/2)  <=>  (15 m!)^2 > 32^2 p^(n^4)
  const BigCount lhs = 15 * big_factorial(m);
  const auto n4 = static_cast<std::uint64_t>(n) * n * n * n;
  return lhs * lhs > 1024 * big_pow(p, n4);
}

inline bool stirling_high_precision_violated(Residue p, std::size_t n) {
  using F = boost::multiprecision::cpp_bin_float_100;
  const F lp = log(F(p));
  const F m = exp(F(static_cast<double>(n - 1)) * lp);
  const F lhs = m * (F(static_cast<double>(n - 1)) * lp - 1);
  const F n4 = F(static_cast<double>(n)) * n * n * n;
  const F rhs = log(F(32) / 15) + n4 / 2 * lp;
  if (abs(lhs - rhs) < F("1e-60")) throw std::runtime_error("inequality_check: undecidable tie");
  return lhs > rhs;
}

}  // namespace detail

inline InequalitySides inequality_sides(Residue p, std::size_t n, InequalityMode mode) {
  Field{p};
  if (n < 1) throw std::invalid_argument("inequality_check: n must be positive");
  const double lp = std::log(static_cast<double>(p));
  const double n4 = std::pow(static_cast<double>(n), 4);
  const double m = std::pow(static_cast<double>(p), static_cast<double>(n - 1));
  InequalitySides s;
  s.rhs = std::log(32.0 / 15.0) + n4 / 2.0 * lp;
  s.lhs = mode == InequalityMode::Stirling ? m * (static_cast<double>(n - 1) * lp - 1.0) : std::lgamma(m + 1.0);
  if (std::abs(s.lhs - s.rhs) > kLogMargin) {
    s.violated = s.lhs > s.rhs;
    return s;
  }
  s.escalated = true;
  if (mode == InequalityMode::Stirling) {
    s.violated = detail::stirling_high_precision_violated(p, n);
  } else {
    if (m > static_cast<double>(detail::kExactFactorialLimit)) throw std::runtime_error("inequality_check: tie beyond exact range");
    s.violated = detail::exact_factorial_violated(p, n, static_cast<std::uint64_t>(m));
  }
  return s;
}

/// True when the chosen lower bound for (p^(n-1))! exceeds (32/15) p^(n^4/2).
inline bool inequality_check(Residue p, std::size_t n, InequalityMode mode) { return inequality_sides(p, n, mode).violated; }

inline constexpr std::size_t kN0ScanLimit = 64;

/// Smallest n >= 2 with the inequality violated, or none up to kN0ScanLimit.
inline std::optional<std::size_t> n0_estimate(Residue p, InequalityMode mode) {
  for (std::size_t n = 2; n <= kN0ScanLimit; ++n) {
    if (inequality_check(p, n, mode)) return n;
  }
  return std::nullopt;
}

inline std::vector<Residue> first_primes(std::size_t count) {
  std::vector<Residue> out;
  for (Residue c = 2; out.size() < count; ++c) {
    if (is_prime(c)) out.push_back(c);
  }
  return out;
}

}  // namespace bilin
