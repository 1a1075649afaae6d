#include "heunwell/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heunwell/errors.hpp"

namespace heunwell {
namespace {

void check_shape(const FdGrid& grid) {
    if (grid.n < 3 || grid.n % 2 == 0) throw DomainError("FdGrid: n must be odd and >= 3");
    if (!(grid.L > 0.0)) throw DomainError("FdGrid: L must be positive");
}

// Interior diagonal 1/h^2 + V(x_i), i = 1 .. n-2.
std::vector<double> diagonal(const std::function<double(double)>& V, const FdGrid& grid) {
    const double h = grid.h();
    std::vector<double> a(static_cast<std::size_t>(grid.n - 2));
    for (int i = 1; i <= grid.n - 2; ++i) a[static_cast<std::size_t>(i - 1)] = 1.0 / (h * h) + V(grid.x(i));
    return a;
}

int sturm_count(const std::vector<double>& a, double b2, double E) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        q = a[i] - E - (i == 0 ? 0.0 : b2 / q);
        if (q == 0.0) q = -1e-300;
        if (q < 0.0) ++count;
    }
    return count;
}

// j-th eigenvalue (0-based): smallest E with count(E) > j.
double bisect_eigenvalue(const std::vector<double>& a, double b2, int j, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(a, b2, mid) > j)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double gershgorin_low(const std::vector<double>& a, double b) {
    return *std::min_element(a.begin(), a.end()) - 2.0 * b;
}

double gershgorin_high(const std::vector<double>& a, double b) {
    return *std::max_element(a.begin(), a.end()) + 2.0 * b;
}

FdSpectrum solve(const std::vector<double>& a, double h, int k) {
    if (k < 1) throw DomainError("fd_spectrum: k must be >= 1");
    const double b = 1.0 / (2.0 * h * h);
    const double b2 = b * b;
    const double lower = gershgorin_low(a, b);
    const int bound = sturm_count(a, b2, 0.0);
    FdSpectrum out;
    out.requested = k;
    out.shortfall = bound < k;
    const int m = std::min(k, bound);
    for (int j = 0; j < m; ++j) out.energies.push_back(bisect_eigenvalue(a, b2, j, lower, 0.0));
    return out;
}

std::function<double(double)> well(const PotentialConfig& cfg) {
    return [cfg](double x) { return potential_value(cfg, x); };
}

// Thomas solve of a tridiagonal system with constant off-diagonal `off`.
template <class T>
void thomas(const std::vector<T>& diag, T off, std::vector<T>& rhs) {
    const std::size_t n = diag.size();
    std::vector<T> c(n);
    T denom = diag[0];
    c[0] = off / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - off * c[i - 1];
        c[i] = off / denom;
        rhs[i] = (rhs[i] - off * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace

void validate(const FdGrid& grid, double d) {
    check_shape(grid);
    if (grid.L < 6.0 * d) throw DomainError("FdGrid: L must be at least 6 d");
}

int fd_count_below(const std::function<double(double)>& V, const FdGrid& grid, double E) {
    check_shape(grid);
    const double b = 1.0 / (2.0 * grid.h() * grid.h());
    return sturm_count(diagonal(V, grid), b * b, E);
}

FdSpectrum fd_spectrum(const std::function<double(double)>& V, const FdGrid& grid, int k) {
    check_shape(grid);
    return solve(diagonal(V, grid), grid.h(), k);
}

FdSpectrum fd_spectrum(const PotentialConfig& cfg, const FdGrid& grid, int k) {
    validate(grid, cfg.d);
    return fd_spectrum(well(cfg), grid, k);
}

FdRichardson fd_spectrum_richardson(const PotentialConfig& cfg, const FdGrid& grid, int k) {
    const FdSpectrum c = fd_spectrum(cfg, grid, k);
    const FdSpectrum f = fd_spectrum(cfg, grid.refined(), k);
    FdRichardson out;
    out.coarse = c.energies;
    out.fine = f.energies;
    out.shortfall = c.shortfall || f.shortfall;
    const std::size_t m = std::min(c.energies.size(), f.energies.size());
    for (std::size_t i = 0; i < m; ++i) {
        out.extrapolated.push_back((4.0 * f.energies[i] - c.energies[i]) / 3.0);
        out.error_bar.push_back(std::fabs(f.energies[i] - c.energies[i]) / 3.0);
    }
    return out;
}

std::vector<double> fd_eigenvector(const std::function<double(double)>& V, const FdGrid& grid, double E) {
    check_shape(grid);
    const double h = grid.h();
    std::vector<double> a = diagonal(V, grid);
    const double b = 1.0 / (2.0 * h * h);
    const int below = sturm_count(a, b * b, E);
    double target = 0.0, gap = std::numeric_limits<double>::infinity();
    for (int j : {below - 1, below}) {
        if (j < 0 || j >= static_cast<int>(a.size())) continue;
        const double ej = bisect_eigenvalue(a, b * b, j, gershgorin_low(a, b), gershgorin_high(a, b));
        if (std::fabs(ej - E) < gap) {
            gap = std::fabs(ej - E);
            target = ej;
        }
    }
    const double shift = target - 1e-10 * std::max(1.0, std::fabs(target));
    for (double& v : a) v -= shift;
    const double off = -1.0 / (2.0 * h * h);
    // no parity in the start vector
    std::vector<double> y(a.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(i) + 0.2);
    for (int it = 0; it < 4; ++it) {
        thomas(a, off, y);
        double s = 0.0;
        for (double v : y) s += v * v;
        const double scale = 1.0 / std::sqrt(s * h);
        for (double& v : y) v *= scale;
    }
    std::vector<double> out(static_cast<std::size_t>(grid.n), 0.0);
    std::copy(y.begin(), y.end(), out.begin() + 1);
    // positive at its largest-magnitude point
    const auto it = std::max_element(out.begin(), out.end(), [](double l, double r) { return std::fabs(l) < std::fabs(r); });
    if (*it < 0.0)
        for (double& v : out) v = -v;
    return out;
}

std::vector<std::complex<double>> sample_on_grid(const FdGrid& grid, const std::function<double(double)>& f) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) out[static_cast<std::size_t>(i)] = f(grid.x(i));
    out.front() = 0.0;
    out.back() = 0.0;
    return out;
}

FdPropagation fd_propagate(const PotentialConfig& cfg, const FdGrid& grid, std::vector<std::complex<double>> psi0,
                           double dt, int steps, int sample_every) {
    validate(grid, cfg.d);
    if (psi0.size() != static_cast<std::size_t>(grid.n)) throw DomainError("fd_propagate: psi0 size differs from grid");
    if (!(dt > 0.0) || steps < 0 || sample_every < 1) throw DomainError("fd_propagate: need dt > 0, steps >= 0");
    using C = std::complex<double>;
    const double h = grid.h();
    const std::vector<double> a = diagonal(well(cfg), grid);
    const std::size_t m = a.size();
    const C half(0.0, 0.5 * dt);
    const double off = -1.0 / (2.0 * h * h);

    // (1 + i H dt/2) psi_new = (1 - i H dt/2) psi_old; factorise the left side once.
    std::vector<C> lhs(m), c(m), inv(m);
    const C loff = half * off;
    for (std::size_t i = 0; i < m; ++i) lhs[i] = 1.0 + half * a[i];
    inv[0] = 1.0 / lhs[0];
    c[0] = loff * inv[0];
    for (std::size_t i = 1; i < m; ++i) {
        inv[i] = 1.0 / (lhs[i] - loff * c[i - 1]);
        c[i] = loff * inv[i];
    }

    std::vector<C> psi(psi0.begin() + 1, psi0.end() - 1);
    const std::vector<C> init = psi;
    auto norm = [h](const std::vector<C>& v) {
        double s = 0.0;
        for (const C& z : v) s += std::norm(z);
        return s * h;
    };
    auto overlap = [&](const std::vector<C>& v) {
        C s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += std::conj(v[i]) * init[i];
        return s * h;
    };
    const double n0 = norm(psi);
    if (!(n0 > 0.0)) throw DomainError("fd_propagate: zero initial state");

    FdPropagation out;
    auto track = [&](double drift) {
        if (std::isnan(drift) || drift > out.norm_drift) out.norm_drift = drift;
    };
    out.times.push_back(0.0);
    out.autocorr.push_back(std::norm(overlap(psi)));
    std::vector<C> rhs(m);
    for (int s = 1; s <= steps; ++s) {
        for (std::size_t i = 0; i < m; ++i) {
            C r = (1.0 - half * a[i]) * psi[i];
            if (i > 0) r -= loff * psi[i - 1];
            if (i + 1 < m) r -= loff * psi[i + 1];
            rhs[i] = r;
        }
        rhs[0] *= inv[0];
        for (std::size_t i = 1; i < m; ++i) rhs[i] = (rhs[i] - loff * rhs[i - 1]) * inv[i];
        for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
        psi.swap(rhs);
        if (s % sample_every == 0 || s == steps) {
            out.times.push_back(s * dt);
            out.autocorr.push_back(std::norm(overlap(psi)));
            track(std::fabs(norm(psi) - n0) / n0);
        }
    }
    track(std::fabs(norm(psi) - n0) / n0);
    if (!(out.norm_drift <= 1e-6))
        throw StabilityError("fd_propagate: norm drift " + std::to_string(out.norm_drift) + " exceeds 1e-6");
    out.psi.assign(1, C(0.0));
    out.psi.insert(out.psi.end(), psi.begin(), psi.end());
    out.psi.push_back(0.0);
    return out;
}

}  // namespace heunwell
