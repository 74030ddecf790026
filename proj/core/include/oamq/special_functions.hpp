#pragma once

namespace oamq {

/// Highest polynomial degree (and |l| for normalisation constants) the
/// simulator supports.
inline constexpr int kMaxPolynomialDegree = 32;

/// Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence.
/// Requires 0 <= n <= kMaxPolynomialDegree and alpha > -1.
double laguerre(int n, double alpha, double x);

/// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

/// log(n!) accumulated as a sum of logs.
double log_factorial(int n);

/// Normalisation constant (1/m) of the Laguerre-Gauss profile
///   N (sqrt(2) r/w)^|l| L_n^|l|(2 r^2/w^2) exp(-r^2/w^2) exp(i l phi)
/// over the plane: N = sqrt(2 n! / (pi (n+|l|)!)) / w.
double lg_norm(int n, int l, double waist);

/// One-dimensional Hermite-Gauss constant (1/sqrt(m)) for
///   N H_n(sqrt(2) x/w) exp(-x^2/w^2),  N = (2/pi)^(1/4) / sqrt(w 2^n n!).
double hg_norm(int n, double waist);

}  // namespace oamq
