#include "heunwell/dynamics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "heunwell/errors.hpp"

namespace heunwell {
namespace {

constexpr double kPi = std::numbers::pi;

struct Term {
    std::complex<double> chi;
    double energy;
    const Eigenstate* state;
};

std::vector<Term> active_terms(const EvolvedState& es) {
    std::vector<Term> out;
    for (const auto& [n, chi] : es.overlaps.values) {
        if (chi == 0.0) continue;
        for (const auto& s : es.states)
            if (s.index == n) out.push_back({chi, static_cast<double>(s.energy), &s});
    }
    return out;
}

std::complex<double> evaluate(const std::vector<Term>& terms, double x, double t) {
    std::complex<double> sum = 0.0;
    for (const auto& term : terms)
        sum += term.chi * std::polar(1.0, -term.energy * t) * eval_wavefunction(*term.state, x);
    return sum;
}

double grid_step(const std::vector<double>& g, const char* what) {
    if (g.size() < 2) throw DomainError(std::string(what) + " needs at least two points");
    const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
    if (!(h > 0.0)) throw DomainError(std::string(what) + " must be ascending");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (std::fabs(g[i] - g[i - 1] - h) > 1e-6 * h) throw DomainError(std::string(what) + " must be uniform");
    return h;
}

struct FftwPlan {
    fftw_plan plan = nullptr;
    ~FftwPlan() {
        if (plan) fftw_destroy_plan(plan);
    }
};

}  // namespace

EvolvedState make_evolved_state(OverlapSet overlaps, Spectrum spectrum, std::vector<Eigenstate> states) {
    for (const auto& [n, v] : overlaps.values) {
        const bool known = std::any_of(spectrum.states.begin(), spectrum.states.end(),
                                       [n = n](const SpectrumState& s) { return s.index == n; });
        const bool built =
            std::any_of(states.begin(), states.end(), [n = n](const Eigenstate& s) { return s.index == n; });
        if (!known || !built) throw DomainError("overlap index " + std::to_string(n) + " has no eigenstate");
    }
    return EvolvedState{std::move(overlaps), std::move(spectrum), std::move(states)};
}

std::complex<double> evolve(const EvolvedState& es, double x, double t) {
    return evaluate(active_terms(es), x, t);
}

AutocorrSeries autocorrelation(const EvolvedState& es, const std::vector<double>& times) {
    AutocorrSeries out;
    out.times = times;
    out.values.resize(times.size());
    const auto terms = active_terms(es);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::complex<double> a = 0.0;
        for (const auto& term : terms) a += std::norm(term.chi) * std::polar(1.0, term.energy * times[i]);
        out.values[i] = std::norm(a);
    }
    return out;
}

double relative_variation(const TimeSeries& s) {
    if (s.values.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2) throw DomainError("uniform_grid needs n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<FrequencyPeak> dominant_frequencies(const TimeSeries& series, int k, const FrequencyOptions& opts) {
    const std::size_t n = series.values.size();
    if (n < 16 || series.times.size() != n) throw ResolutionError("series too short for a frequency estimate");
    const double dt = grid_step(series.times, "time samples");
    const double bin = 2.0 * kPi / (static_cast<double>(n) * dt);
    if (opts.max_bin_width > 0.0 && bin > opts.max_bin_width)
        throw ResolutionError("series too short: bin width " + std::to_string(bin) + " exceeds requested resolution");
    if (k <= 0) return {};

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);

    std::size_t nfft = 1;
    while (nfft < n * static_cast<std::size_t>(std::max(1, opts.zero_pad))) nfft <<= 1;
    std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(nfft), &fftw_free);
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(fftw_alloc_complex(nfft / 2 + 1), &fftw_free);
    double wsum = 0.0;
    for (std::size_t i = 0; i < nfft; ++i) {
        if (i < n) {
            const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1)));
            in.get()[i] = (series.values[i] - mean) * w;
            wsum += w;
        } else {
            in.get()[i] = 0.0;
        }
    }
    FftwPlan plan;
    plan.plan = fftw_plan_dft_r2c_1d(static_cast<int>(nfft), in.get(), out.get(), FFTW_ESTIMATE);
    fftw_execute(plan.plan);

    const std::size_t nb = nfft / 2 + 1;
    std::vector<double> amp(nb);
    for (std::size_t i = 0; i < nb; ++i) amp[i] = 2.0 * std::hypot(out.get()[i][0], out.get()[i][1]) / wsum;
    const double domega = 2.0 * kPi / (static_cast<double>(nfft) * dt);

    std::vector<FrequencyPeak> peaks;
    for (std::size_t i = 1; i + 1 < nb; ++i) {
        if (!(amp[i] > amp[i - 1] && amp[i] >= amp[i + 1])) continue;
        const double a = amp[i - 1], b = amp[i], c = amp[i + 1];
        const double denom = a - 2.0 * b + c;
        const double delta = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
        peaks.push_back({(static_cast<double>(i) + delta) * domega, b - 0.25 * (a - c) * delta});
    }
    std::sort(peaks.begin(), peaks.end(), [](const auto& l, const auto& r) { return l.amplitude > r.amplitude; });
    if (peaks.empty()) return peaks;
    const double floor =
        std::max(opts.absolute_floor * std::max(1.0, std::fabs(mean)), opts.relative_threshold * peaks.front().amplitude);
    std::erase_if(peaks, [&](const FrequencyPeak& p) { return p.amplitude < floor; });
    if (peaks.size() > static_cast<std::size_t>(k)) peaks.resize(static_cast<std::size_t>(k));
    return peaks;
}

double WignerGrid::dx() const {
    return (x_grid.back() - x_grid.front()) / static_cast<double>(x_grid.size() - 1);
}

double WignerGrid::dp() const {
    return (p_grid.back() - p_grid.front()) / static_cast<double>(p_grid.size() - 1);
}

double WignerGrid::total() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * dx() * dp();
}

std::vector<double> WignerGrid::position_marginal() const {
    std::vector<double> m(x_grid.size(), 0.0);
    const std::size_t np = p_grid.size();
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < np; ++j) s += values[i * np + j];
        m[i] = s * dp();
    }
    return m;
}

WignerGrid wigner(const EvolvedState& es, double t, const std::vector<double>& x_grid,
                  const std::vector<double>& p_grid, const WignerOptions& opts) {
    grid_step(x_grid, "x grid");
    grid_step(p_grid, "p grid");
    const auto terms = active_terms(es);
    if (terms.empty()) throw DomainError("wigner: no populated states");
    const double d = terms.front().state->d;

    // Decay window [-Y, Y] outside of which |Psi| < decay_threshold * peak.
    const double cap = opts.window_cap * d;
    const double step = opts.scan_step * d;
    const int nscan = static_cast<int>(std::ceil(cap / step));
    std::vector<double> mags(2 * static_cast<std::size_t>(nscan) + 1);
    double peak = 0.0;
    for (int i = -nscan; i <= nscan; ++i) {
        const double m = std::abs(evaluate(terms, i * step, t));
        mags[static_cast<std::size_t>(i + nscan)] = m;
        peak = std::max(peak, m);
    }
    if (std::max(mags.front(), mags.back()) > opts.boundary_threshold * peak)
        throw WindowError("wigner: wavefunction has not decayed inside |x| < " + std::to_string(cap));
    int edge = 0;
    for (int i = -nscan; i <= nscan; ++i)
        if (mags[static_cast<std::size_t>(i + nscan)] >= opts.decay_threshold * peak) edge = std::max(edge, std::abs(i));
    const double Y = std::min(cap, (edge + 1) * step);

    double pmax = 0.0;
    for (double p : p_grid) pmax = std::max(pmax, std::fabs(p));
    const double h = kPi / (8.0 * std::max(pmax, 1.0));

    WignerGrid out;
    out.x_grid = x_grid;
    out.p_grid = p_grid;
    out.t = t;
    const std::size_t np = p_grid.size();
    out.values.assign(x_grid.size() * np, 0.0);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        const int J = std::max(0, static_cast<int>(std::floor((Y - std::fabs(x)) / h)));
        std::vector<std::complex<double>> f(static_cast<std::size_t>(J) + 1);
        for (int j = 0; j <= J; ++j) {
            const double mu = j * h;
            f[static_cast<std::size_t>(j)] = std::conj(evaluate(terms, x + mu, t)) * evaluate(terms, x - mu, t);
        }
        for (std::size_t k = 0; k < np; ++k) {
            const std::complex<double> rot = std::polar(1.0, 2.0 * p_grid[k] * h);
            std::complex<double> phase = rot;
            double s = f[0].real();
            for (int j = 1; j <= J; ++j) {
                s += 2.0 * (f[static_cast<std::size_t>(j)] * phase).real();
                phase *= rot;
            }
            out.values[i * np + k] = s * h / kPi;
        }
    }
    return out;
}

EvolvedState partial_superposition(const EvolvedState& es, const std::set<int>& indices) {
    if (indices.empty()) throw DomainError("partial_superposition: empty index set");
    EvolvedState out{OverlapSet{}, es.spectrum, es.states};
    for (int n : indices) {
        const auto it = es.overlaps.values.find(n);
        if (it == es.overlaps.values.end())
            throw DomainError("partial_superposition: unknown state index " + std::to_string(n));
        out.overlaps.values[n] = it->second;
    }
    out.overlaps.recompute_bound_fraction();
    return out;
}

namespace {

struct CentralMoments {
    double xx = 0.0, pp = 0.0, xp = 0.0;
};

CentralMoments central_moments(const WignerGrid& grid, double half_width) {
    const std::size_t np = grid.p_grid.size();
    CentralMoments m;
    for (std::size_t i = 0; i < grid.x_grid.size(); ++i) {
        const double x = grid.x_grid[i];
        if (std::fabs(x) >= half_width) continue;
        for (std::size_t j = 0; j < np; ++j) {
            const double p = grid.p_grid[j];
            const double w = grid.values[i * np + j];
            m.xx += w * x * x;
            m.pp += w * p * p;
            m.xp += w * x * p;
        }
    }
    const double cell = grid.dx() * grid.dp();
    m.xx *= cell;
    m.pp *= cell;
    m.xp *= cell;
    return m;
}

}  // namespace

double bridge_slope(const WignerGrid& grid, double half_width) {
    return central_moments(grid, half_width).xp;
}

double principal_axis_angle(const WignerGrid& grid, double half_width) {
    const CentralMoments m = central_moments(grid, half_width);
    return 0.5 * std::atan2(2.0 * m.xp, m.xx - m.pp);
}

TimeSeries bridge_slope_series(const EvolvedState& es, const std::vector<double>& times,
                               const std::vector<double>& x_grid, const std::vector<double>& p_grid,
                               double half_width) {
    TimeSeries out;
    out.times = times;
    for (double t : times) out.values.push_back(bridge_slope(wigner(es, t, x_grid, p_grid), half_width));
    return out;
}

double relative_l2(const WignerGrid& a, const WignerGrid& b) {
    if (a.values.size() != b.values.size()) throw DomainError("relative_l2: grid shapes differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        num += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
        den += b.values[i] * b.values[i];
    }
    return std::sqrt(num / den);
}

}  // namespace heunwell
