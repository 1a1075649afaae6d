#include "heunwell/heun.hpp"

#include <cmath>
#include <string>

#include "heunwell/errors.hpp"

namespace heunwell {

std::string_view to_string(Parity p) {
    return p == Parity::Even ? "even" : "odd";
}

Parity parity_from_string(std::string_view s) {
    if (s == "even" || s == "Even") return Parity::Even;
    if (s == "odd" || s == "Odd") return Parity::Odd;
    throw DomainError("unknown parity '" + std::string(s) + "'");
}

HeunParams derive_params(long double alpha, long double beta, Parity parity) {
    if (!(alpha < 0)) throw DomainError("derive_params: alpha must be negative");
    HeunParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma_p = -0.5L;
    p.nu = (alpha + beta * (beta + 1)) / 4;
    p.mu = (alpha * (alpha + 2) + 2 * alpha * beta - beta * (beta + 1)) / 4;
    p.delta = p.mu + p.nu - alpha / 2 * (beta + p.gamma_p + 2);
    p.eta = alpha / 2 * (beta + 1) - p.mu - (beta + p.gamma_p + beta * p.gamma_p) / 2;
    p.parity = Parity::Even;
    return parity == Parity::Even ? p : odd_param_map(p);
}

HeunParams odd_param_map(const HeunParams& p) {
    HeunParams q;
    q.alpha = -p.alpha;
    q.beta = -p.gamma_p;
    q.gamma_p = p.beta;
    q.delta = -p.delta;
    q.eta = p.eta + p.alpha * p.alpha / 4;
    q.mu = q.alpha / 2 * (q.beta + 1) - q.eta - (q.beta + q.gamma_p + q.beta * q.gamma_p) / 2;
    q.nu = q.delta + q.alpha / 2 * (q.beta + q.gamma_p + 2) - q.mu;
    q.parity = p.parity == Parity::Even ? Parity::Odd : Parity::Even;
    return q;
}

RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, int n) {
    if (n < 1) throw DomainError("recurrence_coeffs: n must be >= 1");
    const long double inv = 1.0L / n;
    const long double inv2 = inv * inv;
    const long double a = p.alpha;
    const long double b = p.beta;
    const long double g = p.gamma_p;
    RecurrenceCoeffs rc;
    rc.A = 1 + b * inv;
    if (rc.A == 0) throw DegeneratePivotError("recurrence_coeffs: A_n = 0 (beta = -n)", n);
    rc.B = 1 + inv * (b + g - a - 1) + inv2 * (p.eta - (b + g - a) / 2 + b / 2 * (g - a));
    // alpha/n^2 * (delta/alpha + ...) written without dividing by alpha
    rc.C = a * inv + inv2 * (p.delta + a * ((b + g) / 2 - 1));
    return rc;
}

SeriesCoeffs series_coeffs(const HeunParams& p, int n_max) {
    if (n_max < 1) throw DomainError("series_coeffs: n_max must be >= 1");
    SeriesCoeffs out;
    out.params = p;
    out.n_max = n_max;
    out.v.reserve(static_cast<std::size_t>(n_max) + 1);
    out.v.push_back(1.0L);
    long double prev = 0.0L;
    for (int n = 1; n <= n_max; ++n) {
        const auto rc = recurrence_coeffs(p, n);
        const long double cur = out.v.back();
        const long double next = (rc.B * cur + rc.C * prev) / rc.A;
        out.v.push_back(next);
        prev = cur;
        if (!(std::fabs(next) <= kDivergenceGuard)) {
            out.divergence_index = n;
            break;
        }
    }
    return out;
}

CoefficientValue series_coefficient(const HeunParams& p, int n) {
    if (n < 0) throw DomainError("series_coefficient: n must be >= 0");
    long double prev = 0.0L;
    long double cur = 1.0L;
    for (int k = 1; k <= n; ++k) {
        const auto rc = recurrence_coeffs(p, k);
        const long double next = (rc.B * cur + rc.C * prev) / rc.A;
        prev = cur;
        cur = next;
        if (!(std::fabs(cur) <= kDivergenceGuard)) return {cur, k, true};
    }
    return {cur, n, false};
}

SeriesValue heun_series_eval(const SeriesCoeffs& c, long double xi, int n_terms) {
    const int last = (n_terms < 0 || n_terms > c.last_index()) ? c.last_index() : n_terms;
    long double acc = 0.0L;
    for (int n = last; n >= 0; --n) acc = acc * xi + c.v[static_cast<std::size_t>(n)];
    return {acc, std::fabs(c.v[static_cast<std::size_t>(last)]) * last};
}

long double heun_series_derivative(const SeriesCoeffs& c, long double xi, int n_terms) {
    const int last = (n_terms < 0 || n_terms > c.last_index()) ? c.last_index() : n_terms;
    long double acc = 0.0L;
    for (int n = last; n >= 1; --n) acc = acc * xi + n * c.v[static_cast<std::size_t>(n)];
    return acc;
}

}  // namespace heunwell
