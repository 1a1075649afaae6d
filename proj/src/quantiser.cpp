#include "heunwell/quantiser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "heunwell/errors.hpp"

namespace heunwell {
namespace {

constexpr long double kTiny = 1e-300L;

long double coefficient_at(long double alpha, Parity parity, long double beta, int n) {
    return series_coefficient(derive_params(alpha, beta, parity), n).value;
}

int sign_of(long double v) {
    return (v > 0) - (v < 0);
}

// Bisection of beta -> v_n on [lo, hi] given the endpoint values.
long double bisect(long double alpha, Parity parity, int n, long double lo, long double hi,
                   long double flo, double tol) {
    while (hi - lo > tol) {
        const long double mid = 0.5L * (lo + hi);
        const long double fm = coefficient_at(alpha, parity, mid, n);
        if (fm == 0) return mid;
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

}  // namespace

std::vector<long double> scan_roots(const PotentialConfig& cfg, Parity parity, const ScanOptions& opts) {
    if (opts.n_eval < 100) throw DomainError("scan_roots: n_eval must be >= 100");
    const long double bmax = beta_upper_limit(cfg);
    int m = opts.grid_points;
    if (m <= 0) m = std::max(8, static_cast<int>(std::ceil(opts.grid_density * static_cast<double>(bmax))));

    std::vector<long double> grid;
    grid.reserve(static_cast<std::size_t>(m) + 1);
    grid.push_back(bmax * 1e-6L);
    for (int i = 1; i <= m; ++i) grid.push_back(bmax * i / m);

    const int n1 = opts.n_eval;
    const int n2 = 2 * opts.n_eval;
    std::vector<long double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = coefficient_at(cfg.alpha, parity, grid[i], n1);

    std::vector<long double> roots;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (f[i] == 0) {
            roots.push_back(grid[i]);
            continue;
        }
        if (sign_of(f[i]) == sign_of(f[i + 1]) || f[i + 1] == 0) continue;
        const long double r1 = bisect(cfg.alpha, parity, n1, grid[i], grid[i + 1], f[i], opts.bisection_tol);

        const long double g_lo = coefficient_at(cfg.alpha, parity, grid[i], n2);
        const long double g_hi = coefficient_at(cfg.alpha, parity, grid[i + 1], n2);
        if (sign_of(g_lo) == sign_of(g_hi)) continue;
        const long double r2 = bisect(cfg.alpha, parity, n2, grid[i], grid[i + 1], g_lo, opts.bisection_tol);
        if (std::fabs(r1 - r2) <= opts.stability_tol) roots.push_back(r1);
    }
    return roots;
}

long double continued_fraction_condition(long double alpha, Parity parity, long double beta, int depth) {
    if (depth < 1) throw DomainError("continued_fraction_condition: depth must be >= 1");
    const HeunParams p = derive_params(alpha, beta, parity);
    long double tail = 0.0L;
    for (int n = depth; n >= 2; --n) {
        const auto rc = recurrence_coeffs(p, n);
        long double denom = rc.B / rc.A + tail;
        if (denom == 0) denom = kTiny;
        tail = (rc.C / rc.A) / denom;
    }
    const auto rc1 = recurrence_coeffs(p, 1);
    long double a1 = rc1.C / rc1.A;
    if (a1 == 0) a1 = kTiny;
    return (rc1.B / rc1.A + tail) / a1;
}

long double continued_fraction_condition(long double alpha, Parity parity, long double beta, long double tol) {
    int depth = 64;
    long double prev = continued_fraction_condition(alpha, parity, beta, depth);
    while (depth < (1 << 16)) {
        depth *= 2;
        const long double cur = continued_fraction_condition(alpha, parity, beta, depth);
        if (std::fabs(cur - prev) <= tol * std::max(1.0L, std::fabs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

long double refine_root_cf(long double alpha, Parity parity, long double beta0, long double tol) {
    auto f = [&](long double b) { return continued_fraction_condition(alpha, parity, b, tol); };
    long double x0 = beta0;
    long double x1 = beta0 * (1 + 1e-7L) + 1e-9L;
    long double f0 = f(x0);
    long double f1 = f(x1);
    long double best = std::fabs(f0) < std::fabs(f1) ? x0 : x1;
    long double best_f = std::min(std::fabs(f0), std::fabs(f1));

    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        if (f1 == 0) {
            converged = true;
            best = x1;
            break;
        }
        if (f1 == f0) {
            // at the rounding floor; accept if the bracket is already tight
            converged = std::fabs(x1 - x0) <= 1e3L * tol * std::max(1.0L, std::fabs(x1));
            break;
        }
        const long double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        const long double step = std::fabs(x2 - x1);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if (std::fabs(f1) <= best_f) {
            best = x1;
            best_f = std::fabs(f1);
        }
        if (step <= tol * std::max(1.0L, std::fabs(x1))) {
            converged = true;
            break;
        }
    }
    if (!converged) throw RefinementError("refine_root_cf: secant iteration did not converge", best);
    if (!(std::fabs(best - beta0) < 1e-3L))
        throw RefinementError("refine_root_cf: converged to a root more than 1e-3 away from the start", best);
    return best;
}

long double refine_root_cf(const PotentialConfig& cfg, Parity parity, long double beta0, long double tol) {
    return refine_root_cf(cfg.alpha, parity, beta0, tol);
}

BoundStateBounds bound_state_bounds(const PotentialConfig& cfg) {
    constexpr double pi = std::numbers::pi;
    const double factor = std::pow(4.0 / 75.0 * (20.0 + pi * pi), 0.25);
    const double upper = 1.0 + factor * std::sqrt(cfg.V0 * cfg.d);
    return {1, static_cast<int>(std::floor(upper))};
}

SmoothnessResult smoothness_diagnostic(const HeunParams& params, int N) {
    if (params.parity != Parity::Even) throw DomainError("smoothness_diagnostic: even parameters required");
    if (N < 0) throw DomainError("smoothness_diagnostic: N must be >= 0");
    const SeriesCoeffs c = series_coeffs(params, std::max(N, 1));
    const long double shift = (params.alpha + params.beta) / 2;
    SmoothnessResult r;
    const int last = std::min(N, c.last_index());
    for (int n = 0; n <= last; ++n) r.value += c.v[static_cast<std::size_t>(n)] * (n + shift);
    r.terms = last + 1;
    r.diverged = c.diverged() && *c.divergence_index <= N;
    return r;
}

std::vector<double> scaled_coefficient_profile(const HeunParams& params, int N) {
    const SeriesCoeffs c = series_coeffs(params, N);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= c.last_index(); ++n) {
        const long double v = c.v[static_cast<std::size_t>(n)];
        out.push_back(static_cast<double>(static_cast<long double>(n) * n * std::fabs(v)));
    }
    return out;
}

namespace {

double tail_sup(const HeunParams& params, int N, int k) {
    const SeriesCoeffs c = series_coeffs(params, N);
    if (c.diverged()) return std::numeric_limits<double>::infinity();
    double sup = 0.0;
    for (int n = k + 1; n <= N; ++n) {
        const long double v = c.v[static_cast<std::size_t>(n)];
        sup = std::max(sup, static_cast<double>(static_cast<long double>(n) * n * std::fabs(v)));
    }
    return sup;
}

int tail_start(const HeunParams& params) {
    return static_cast<int>(std::ceil(2.0L * std::fabs(params.alpha)));
}

}  // namespace

DecayBound decay_bound(const HeunParams& params, int N) {
    DecayBound b;
    b.tail_start = tail_start(params);
    if (b.tail_start >= N) throw DomainError("decay_bound: N must exceed 2|alpha|");
    b.constant = tail_sup(params, N, b.tail_start);
    b.max_excess = 1.0;
    return b;
}

DecayBound decay_excess(const HeunParams& params, double constant, int N) {
    DecayBound b;
    b.tail_start = tail_start(params);
    if (b.tail_start >= N) throw DomainError("decay_excess: N must exceed 2|alpha|");
    if (!(constant > 0.0)) throw DomainError("decay_excess: constant must be positive");
    b.constant = constant;
    b.max_excess = tail_sup(params, N, b.tail_start) / constant;
    return b;
}

Spectrum full_spectrum(const PotentialConfig& cfg, const SpectrumOptions& opts) {
    Spectrum spec;
    spec.bounds = bound_state_bounds(cfg);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
        for (long double r : scan_roots(cfg, parity, opts.scan)) {
            SpectrumState s;
            s.parity = parity;
            s.scan_beta = r;
            s.beta = refine_root_cf(cfg, parity, r, opts.tol);
            s.energy = beta_to_energy(cfg, s.beta);
            spec.states.push_back(s);
        }
    }
    std::sort(spec.states.begin(), spec.states.end(),
              [](const SpectrumState& a, const SpectrumState& b) { return a.energy < b.energy; });
    for (std::size_t i = 0; i < spec.states.size(); ++i) spec.states[i].index = static_cast<int>(i);

    const int count = static_cast<int>(spec.states.size());
    if (count < spec.bounds.lower || count > spec.bounds.upper)
        throw SpectrumInconsistencyError("full_spectrum: " + std::to_string(count) +
                                         " bound states outside [" + std::to_string(spec.bounds.lower) +
                                         ", " + std::to_string(spec.bounds.upper) + "]");
    const long double vmin = potential_minimum(cfg);
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
        const auto& s = spec.states[i];
        const Parity expected = i % 2 == 0 ? Parity::Even : Parity::Odd;
        if (s.parity != expected)
            throw SpectrumInconsistencyError("full_spectrum: parity alternation violated at state " +
                                             std::to_string(i));
        if (!(s.energy > vmin && s.energy < 0))
            throw SpectrumInconsistencyError("full_spectrum: energy outside (min V, 0) at state " +
                                             std::to_string(i));
        if (i > 0 && !(s.energy > spec.states[i - 1].energy))
            throw SpectrumInconsistencyError("full_spectrum: degenerate energies at state " + std::to_string(i));
    }
    return spec;
}

}  // namespace heunwell
