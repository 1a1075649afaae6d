// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "heunwell/dynamics.hpp"
#include "heunwell/eigenstates.hpp"
#include "heunwell/fd_oracle.hpp"
#include "heunwell/quantiser.hpp"
#include "heunwell/wavepackets.hpp"

using namespace heunwell;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && dt > limit_s) {
        o.pass = false;
        o.detail += fmt("; runtime over %.0f s", limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s  criterion %d  %s: %s  (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt);
    std::fflush(stdout);
}

struct Well {
    PotentialConfig cfg;
    Spectrum spectrum;
    std::vector<Eigenstate> states;
};

Well build_well() {
    Well w;
    w.cfg = PotentialConfig::make(74.785, 1.0);
    w.spectrum = full_spectrum(w.cfg);
    w.states = build_eigenstates(w.cfg, w.spectrum);
    return w;
}

EvolvedState evolved(const Well& w, const WavepacketSpec& spec) {
    return make_evolved_state(compute_overlaps(Wavepacket(spec, w.cfg), w.states), w.spectrum, w.states);
}

double gap(const Well& w, int m, int n) { return static_cast<double>(w.spectrum[m].energy - w.spectrum[n].energy); }

std::string peak_list(const std::vector<FrequencyPeak>& pk) {
    std::string s = "{";
    for (std::size_t i = 0; i < pk.size(); ++i) s += fmt(i ? ", %.4f" : "%.4f", pk[i].omega);
    return s + "}";
}

bool near(const std::vector<FrequencyPeak>& pk, std::vector<double> want, double tol) {
    if (pk.size() != want.size()) return false;
    std::vector<double> got;
    for (const auto& p : pk) got.push_back(p.omega);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i)
        if (std::fabs(got[i] - want[i]) > tol) return false;
    return true;
}

}  // namespace

int main() {
    report(1, "reference quantisation roots", 5.0, [] {
        const std::pair<long double, long double> ref[] = {{-12.2300554754797689L, 2.61502773773988446614L},
                                                           {-24.4098065308194893L, 8.70490326540974469239L}};
        Outcome o{true, ""};
        for (const auto& [alpha, beta] : ref) {
            const PotentialConfig pc = PotentialConfig::from_alpha(alpha, 1.0);
            long double best = 0;
            for (long double r : scan_roots(pc, Parity::Even)) {
                const long double b = refine_root_cf(pc, Parity::Even, r);
                if (best == 0 || std::fabs(b - beta) < std::fabs(best - beta)) best = b;
            }
            const double rel = static_cast<double>(std::fabs(best - beta) / beta);
            o.pass = o.pass && rel <= 1e-15;
            o.detail += fmt("%salpha %.6Lf: beta %.20Lg, rel %.2e", o.detail.empty() ? "" : "; ", alpha, best, rel);
        }
        return o;
    });

    const Well w = build_well();

    report(2, "full spectrum", 30.0, [] {
        const Well x = build_well();
        const double want[] = {-8.153, -8.141, -3.419, -3.298, -0.697, -0.441};
        Outcome o{x.spectrum.size() == 6, fmt("%zu states, bounds (%d, %d), E =", x.spectrum.size(),
                                             x.spectrum.bounds.lower, x.spectrum.bounds.upper)};
        o.pass = o.pass && x.spectrum.bounds.lower == 1 && x.spectrum.bounds.upper == 10;
        for (std::size_t i = 0; i < x.spectrum.size(); ++i) {
            const double e = static_cast<double>(x.spectrum[i].energy);
            o.detail += fmt(" %.5f", e);
            if (i < 6) o.pass = o.pass && std::round(e * 1000) == std::round(want[i] * 1000);
        }
        return o;
    });

    report(3, "eigen-gap frequencies", 0, [&] {
        const double g20 = gap(w, 2, 0), g40 = gap(w, 4, 0);
        return Outcome{std::fabs(g20 - 4.73) <= 0.01 && std::fabs(g40 - 7.46) <= 0.02,
                       fmt("E2-E0 = %.5f, E4-E0 = %.5f", g20, g40)};
    });

    report(4, "autocorrelation classes", 0, [&] {
        const auto ts = uniform_grid(0.0, 200.0, 4001);
        const auto p7 = dominant_frequencies(autocorrelation(evolved(w, DleSpec{7.0, 0.25}), ts), 5);
        const auto p4 = dominant_frequencies(autocorrelation(evolved(w, DleSpec{4.0, 0.25}), ts), 5);
        const double var = relative_variation(autocorrelation(evolved(w, DleSpec{7.0, 0.3}), uniform_grid(0.0, 10.0, 2001)));
        const bool ok = near(p7, {4.73}, 0.02) && near(p4, {4.73, 7.46}, 0.02) && var < 1e-3;
        return Outcome{ok, "DLE(7,1/4) peaks " + peak_list(p7) + ", DLE(4,1/4) peaks " + peak_list(p4) +
                               fmt(", DLE(7,3/10) relative variation %.2e", var)};
    });

    report(5, "mixed-packet envelope", 0, [&] {
        const EvolvedState es = evolved(w, MixedSpec{std::numbers::pi / 4, DleSpec{7.0, 0.3}, DloSpec{-5.598, 0.83, 1.0}});
        const auto a = autocorrelation(es, uniform_grid(0.0, 10000.0, 50001));
        const auto pk = dominant_frequencies(a, 8);
        if (pk.empty()) return Outcome{false, "no peaks"};
        const auto low = std::min_element(pk.begin(), pk.end(), [](auto& l, auto& r) { return l.omega < r.omega; });
        const double period = 2 * std::numbers::pi / low->omega;
        const double exact = 2 * std::numbers::pi / gap(w, 1, 0);
        return Outcome{std::fabs(period - 520.0) <= 5.0,
                       fmt("chi0 %.5f, chi1 %.5f, measured period %.2f, 2pi/(E1-E0) = %.2f", es.overlaps.values.at(0),
                           es.overlaps.values.at(1), period, exact)};
    });

    report(6, "finite-difference oracle", 120.0, [] {
        const Well x = build_well();
        const FdGrid g{12.0, 4001};
        const FdRichardson r = fd_spectrum_richardson(x.cfg, g, 6);
        double worst = 0;
        for (std::size_t i = 0; i < x.spectrum.size() && i < r.extrapolated.size(); ++i) {
            const double e = static_cast<double>(x.spectrum[i].energy);
            worst = std::max(worst, std::fabs(e - r.extrapolated[i]) / std::fabs(e));
        }
        const bool count = !r.shortfall && r.extrapolated.size() == x.spectrum.size();
        const Wavepacket p(DleSpec{7.0, 0.25}, x.cfg);
        const FdPropagation pr = fd_propagate(x.cfg, g, sample_on_grid(g, [&](double t) { return p(t); }), 1e-3, 4000, 10);
        const auto an = autocorrelation(evolved(x, DleSpec{7.0, 0.25}), pr.times);
        double diff = 0;
        for (std::size_t i = 0; i < an.values.size(); ++i) diff = std::max(diff, std::fabs(an.values[i] - pr.autocorr[i]));
        return Outcome{count && worst <= 1e-4 && diff <= 2e-2,
                       fmt("max relative level difference %.2e, max ||a|^2 difference| on [0, 4] %.2e, norm drift %.1e",
                           worst, diff, pr.norm_drift)};
    });

    report(7, "coefficient decay bound", 0, [&] {
        Outcome o{true, ""};
        for (const auto& st : w.spectrum.states) {
            if (st.parity != Parity::Even) continue;
            const DecayBound b = decay_bound(derive_params(w.cfg.alpha, st.beta, Parity::Even));
            double weakest = 1e300;
            for (long double off : {st.beta - 0.05L, st.beta + 0.05L})
                weakest = std::min(weakest, decay_excess(derive_params(w.cfg.alpha, off, Parity::Even), b.constant).max_excess);
            o.pass = o.pass && std::isfinite(b.constant) && weakest >= 10.0;
            o.detail += fmt("%sbeta %.4Lf: c = %.3g, off-root excess >= %.3g", o.detail.empty() ? "" : "; ", st.beta,
                            b.constant, weakest);
        }
        return o;
    });

    const auto xs = uniform_grid(-6.0, 6.0, 241);
    const auto ps = uniform_grid(-10.0, 10.0, 401);
    report(8, "Wigner grids", 0, [&] {
        const EvolvedState es = evolved(w, DleSpec{7.0, 0.25});
        Outcome o{true, ""};
        double slowest = 0;
        std::vector<WignerGrid> grids;
        for (double t : {0.0, 0.4, 1.0, 1.33}) {
            const auto t0 = std::chrono::steady_clock::now();
            grids.push_back(wigner(es, t, xs, ps));
            slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            const WignerGrid& g = grids.back();
            const auto marg = g.position_marginal();
            double me = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) me = std::max(me, std::fabs(marg[i] - std::norm(evolve(es, xs[i], t))));
            const double mass = std::fabs(g.total() - es.overlaps.bound_fraction);
            o.pass = o.pass && me <= 1e-4 && mass <= 1e-3;
            o.detail += fmt("t=%.2f marginal %.1e mass %.1e; ", t, me, mass);
        }
        const double l2 = relative_l2(grids[3], grids[0]);
        o.pass = o.pass && l2 <= 1e-2 && slowest < 120.0;
        o.detail += fmt("relative L2(1.33, 0) %.2e; slowest snapshot %.2f s", l2, slowest);
        return o;
    });

    report(9, "partial superposition bridge", 0, [&] {
        const EvolvedState full = evolved(w, DleSpec{4.0, 0.25});
        const auto bx = uniform_grid(-0.5, 0.5, 21);
        const auto ts = uniform_grid(0.0, 40.0, 201);
        const auto part = dominant_frequencies(bridge_slope_series(partial_superposition(full, {0, 2}), ts, bx, ps, 0.5), 5);
        const auto all = dominant_frequencies(bridge_slope_series(full, ts, bx, ps, 0.5), 5);
        return Outcome{near(part, {4.73}, 0.05),
                       "states {0,2} peaks " + peak_list(part) + ", all states peaks " + peak_list(all)};
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures ? 1 : 0;
}
