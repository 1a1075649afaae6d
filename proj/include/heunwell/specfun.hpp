#pragma once

// Real special functions needed for packet normalisation and overlaps:
// log-gamma, incomplete gamma and the (regularised) confluent
// hypergeometric function. All functions are pure and thread-safe.

namespace heunwell::specfun {

struct SpecFunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// gamma(a, u) = int_0^u t^(a-1) e^(-t) dt, for a > 0 and u >= 0.
/// Series for u < a + 1, Lentz continued fraction for Gamma(a, u) otherwise.
SpecFunResult lower_incomplete_gamma_ex(double a, double u);
double lower_incomplete_gamma(double a, double u);

/// Gamma(a, u) = Gamma(a) - gamma(a, u).
double upper_incomplete_gamma(double a, double u);

/// 1F1~(a; b; z) = sum_k (a)_k z^k / (Gamma(b + k) k!).
/// Entire in b, so non-positive integer b is allowed. Negative z goes
/// through Kummer's transformation so the summed series has no
/// cancellation for the parameter ranges used here.
SpecFunResult regularized_1f1_ex(double a, double b, double z);
double regularized_1f1(double a, double b, double z);

/// Kummer's M(a; b; z) = Gamma(b) 1F1~(a; b; z). b must not be a
/// non-positive integer. Does not form Gamma(b), so large b is fine.
double kummer_m(double a, double b, double z);

/// ln B(a, b) for a, b > 0.
double ln_beta(double a, double b);

}  // namespace heunwell::specfun
