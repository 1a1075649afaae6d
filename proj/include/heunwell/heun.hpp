#pragma once

// Confluent Heun power series H(alpha, beta, xi) = sum_n v_n xi^n for the
// hyperbolic double well, with coefficients from the three-term recurrence
//   A_n v_n = B_n v_{n-1} + C_n v_{n-2},  v_0 = 1, v_{-1} = 0.
// Everything here runs in long double.

#include <optional>
#include <string_view>
#include <vector>

namespace heunwell {

enum class Parity { Even, Odd };

std::string_view to_string(Parity p);
Parity parity_from_string(std::string_view s);

struct HeunParams {
    long double alpha = 0;
    long double beta = 0;
    long double gamma_p = 0;
    long double delta = 0;
    long double eta = 0;
    long double mu = 0;
    long double nu = 0;
    Parity parity = Parity::Even;
};

/// Heun parameters for the even reduction (xi = sech^2) or, for Odd, the
/// even set pushed through odd_param_map. alpha must be negative.
HeunParams derive_params(long double alpha, long double beta, Parity parity);

/// (alpha, beta, gamma, delta, eta) -> (-alpha, -gamma, beta, -delta, eta + alpha^2/4).
/// mu and nu are re-derived from the mapped delta and eta.
HeunParams odd_param_map(const HeunParams& p);

struct RecurrenceCoeffs {
    long double A = 0;
    long double B = 0;
    long double C = 0;
};

/// Coefficients of the recurrence at index n >= 1. Throws
/// DegeneratePivotError when A_n vanishes.
RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, int n);

/// |v_n| above this stops the forward recursion.
inline constexpr long double kDivergenceGuard = 1e100L;

struct SeriesCoeffs {
    HeunParams params;
    int n_max = 0;
    std::vector<long double> v;  // v[0] .. v[n_max], or shorter if diverged
    std::optional<int> divergence_index;

    bool diverged() const { return divergence_index.has_value(); }
    /// Highest index actually computed.
    int last_index() const { return static_cast<int>(v.size()) - 1; }
};

SeriesCoeffs series_coeffs(const HeunParams& p, int n_max);

/// Value of v_n without storing the sequence. If the recursion diverges
/// first, returns v at the divergence index and sets `reached` to it.
struct CoefficientValue {
    long double value = 0;
    int reached = 0;
    bool diverged = false;
};
CoefficientValue series_coefficient(const HeunParams& p, int n);

struct SeriesValue {
    long double value = 0;
    /// |v_N| * N at the truncation point N; only meaningful at xi = 1.
    long double tail_estimate = 0;
};

/// Truncated sum_{n <= n_terms} v_n xi^n (n_terms < 0 means all computed terms).
SeriesValue heun_series_eval(const SeriesCoeffs& c, long double xi, int n_terms = -1);

/// d/dxi of the truncated series.
long double heun_series_derivative(const SeriesCoeffs& c, long double xi, int n_terms = -1);

}  // namespace heunwell
