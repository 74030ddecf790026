#include "oamq/special_functions.hpp"

#include <cmath>
#include <string>

#include "oamq/errors.hpp"
#include "oamq/physics.hpp"

namespace oamq {
namespace {

void check_degree(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": negative degree " + std::to_string(n));
  if (n > kMaxPolynomialDegree) {
    throw UnsupportedRangeError(std::string(what) + ": degree " + std::to_string(n) +
                                " exceeds supported maximum " +
                                std::to_string(kMaxPolynomialDegree));
  }
}

}  // namespace

double laguerre(int n, double alpha, double x) {
  check_degree(n, "laguerre");
  if (!(alpha > -1.0)) throw DomainError("laguerre: alpha must exceed -1");

  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0 + alpha - x) * cur - (k - 1.0 + alpha) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  check_degree(n, "hermite");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * (k - 1.0) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  double acc = 0.0;
  for (int k = 2; k <= n; ++k) acc += std::log(static_cast<double>(k));
  return acc;
}

double lg_norm(int n, int l, double waist) {
  check_degree(n, "lg_norm");
  const int a = std::abs(l);
  if (a > kMaxPolynomialDegree) {
    throw UnsupportedRangeError("lg_norm: |l| = " + std::to_string(a) + " outside envelope");
  }
  if (!(waist > 0)) throw DomainError("lg_norm: waist must be positive");
  const double log_ratio = log_factorial(n) - log_factorial(n + a);
  return std::sqrt(2.0 / kPi * std::exp(log_ratio)) / waist;
}

double hg_norm(int n, double waist) {
  check_degree(n, "hg_norm");
  if (!(waist > 0)) throw DomainError("hg_norm: waist must be positive");
  const double log_denominator = std::log(waist) + n * std::log(2.0) + log_factorial(n);
  return std::pow(2.0 / kPi, 0.25) * std::exp(-0.5 * log_denominator);
}

}  // namespace oamq
