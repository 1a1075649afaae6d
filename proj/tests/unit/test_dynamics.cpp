#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fixtures.hpp"
#include "heunwell/dynamics.hpp"
#include "heunwell/errors.hpp"

using namespace heunwell;

namespace {

using cd = std::complex<double>;

const DleSpec kDle7{7.0, 0.25};
const DleSpec kDle4{4.0, 0.25};

double gap(int m, int n) {
    const auto& sp = fixtures::standard_well().spectrum;
    return static_cast<double>(sp[m].energy - sp[n].energy);
}

// double-sum form over state pairs
double autocorr_double_sum(const EvolvedState& es, double t) {
    cd a = 0;
    for (const auto& [n, ln] : es.overlaps.values)
        for (const auto& [m, lm] : es.overlaps.values)
            a += ln * ln * lm * lm * std::exp(cd(0, 1) * static_cast<double>(es.spectrum[n].energy - es.spectrum[m].energy) * t);
    return a.real();
}

double norm_at(const EvolvedState& es, double t) {
    double s = 0;
    const double h = 0.01;
    for (int i = -2000; i <= 2000; ++i) s += std::norm(evolve(es, i * h, t)) * h;
    return s;
}

}  // namespace

TEST_CASE("evolution basics") {
    const auto& w = fixtures::standard_well();
    const EvolvedState es = fixtures::evolved(kDle7);
    for (double x : {-1.2, 0.0, 0.6, 2.0}) {
        double proj = 0;
        for (const auto& s : w.states) proj += es.overlaps.values.at(s.index) * eval_wavefunction(s, x);
        CHECK(std::abs(evolve(es, x, 0.0) - cd(proj, 0)) < 1e-14);
    }
    for (double t : {0.0, 0.9, 17.3}) CHECK(norm_at(es, t) == doctest::Approx(es.overlaps.bound_fraction).epsilon(1e-9));

    OverlapSet single;
    single.values[2] = 1.0;
    single.recompute_bound_fraction();
    const EvolvedState one = make_evolved_state(single, w.spectrum, w.states);
    for (double x : {0.3, 1.4})
        for (double t : {0.5, 3.0, 40.0}) CHECK(std::abs(evolve(one, x, t)) == doctest::Approx(std::abs(evolve(one, x, 0.0))));

    OverlapSet bad;
    bad.values[7] = 1.0;
    CHECK_THROWS_AS(make_evolved_state(bad, w.spectrum, w.states), DomainError);
}

TEST_CASE("autocorrelation matches independent forms") {
    const EvolvedState es = fixtures::evolved(MixedSpec{0.6, kDle4, DloSpec{0.0, 0.8, 1.0}});
    const std::vector<double> ts = uniform_grid(0.0, 30.0, 61);
    const AutocorrSeries a = autocorrelation(es, ts);
    REQUIRE(a.values.size() == ts.size());
    const double bf = es.overlaps.bound_fraction;
    CHECK(a.values[0] == doctest::Approx(bf * bf).epsilon(1e-14));
    for (std::size_t i = 0; i < ts.size(); i += 6) {
        CHECK(a.values[i] == doctest::Approx(autocorr_double_sum(es, ts[i])).epsilon(1e-12));
        cd ov = 0;
        for (int k = -2000; k <= 2000; ++k) ov += std::conj(evolve(es, k * 0.01, 0.0)) * evolve(es, k * 0.01, ts[i]) * 0.01;
        CHECK(a.values[i] == doctest::Approx(std::norm(ov)).epsilon(1e-8));
        CHECK(a.values[i] <= bf * bf + 1e-14);
    }
}

TEST_CASE("series helpers") {
    const auto g = uniform_grid(1.0, 3.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g[1] == doctest::Approx(1.5));
    CHECK(g.back() == 3.0);
    CHECK(relative_variation(TimeSeries{{0, 1, 2}, {2.0, 1.0, 1.5}}) == doctest::Approx(0.5));
}

TEST_CASE("frequency content of the autocorrelation") {
    const std::vector<double> ts = uniform_grid(0.0, 200.0, 4001);
    SUBCASE("single frequency for c = 7") {
        const auto pk = dominant_frequencies(autocorrelation(fixtures::evolved(kDle7), ts), 5);
        REQUIRE(pk.size() == 1);
        CHECK(pk[0].omega == doctest::Approx(4.73).epsilon(0.02 / 4.73));
    }
    SUBCASE("two frequencies for c = 4") {
        const auto pk = dominant_frequencies(autocorrelation(fixtures::evolved(kDle4), ts), 5);
        REQUIRE(pk.size() == 2);
        std::vector<double> om{pk[0].omega, pk[1].omega};
        std::sort(om.begin(), om.end());
        CHECK(om[0] == doctest::Approx(4.73).epsilon(0.02 / 4.73));
        CHECK(om[1] == doctest::Approx(7.46).epsilon(0.02 / 7.46));
    }
    SUBCASE("every peak is an eigen-gap") {
        for (const WavepacketSpec spec : {WavepacketSpec{kDle4}, WavepacketSpec{MixedSpec{0.9, kDle4, DloSpec{0.0, 0.8, 1.0}}},
                                          WavepacketSpec{DleSpec{2.0, 0.5}}}) {
            const EvolvedState es = fixtures::evolved(spec);
            const double bin = 2 * std::numbers::pi / (ts.back() - ts.front());
            for (const auto& p : dominant_frequencies(autocorrelation(es, ts), 8)) {
                bool hit = false;
                for (const auto& [n, ln] : es.overlaps.values)
                    for (const auto& [m, lm] : es.overlaps.values)
                        if (m > n && std::fabs(ln * lm) > 1e-4 && std::fabs(p.omega - std::fabs(gap(m, n))) <= bin) hit = true;
                CHECK(hit);
            }
        }
    }
    SUBCASE("an eigenstate gives a flat series") {
        OverlapSet single;
        single.values[0] = 1.0;
        single.recompute_bound_fraction();
        const auto& w = fixtures::standard_well();
        const AutocorrSeries a = autocorrelation(make_evolved_state(single, w.spectrum, w.states), ts);
        CHECK(relative_variation(a) < 1e-14);
        CHECK(dominant_frequencies(a, 5).empty());
    }
    SUBCASE("near-eigenstate packet barely moves") {
        CHECK(relative_variation(autocorrelation(fixtures::evolved(DleSpec{7.0, 0.3}), uniform_grid(0.0, 10.0, 2001))) < 1e-3);
    }
}

TEST_CASE("frequency resolution limits") {
    const TimeSeries shortie{uniform_grid(0.0, 1.0, 10), std::vector<double>(10, 1.0)};
    CHECK_THROWS_AS(dominant_frequencies(shortie, 3), ResolutionError);
    const AutocorrSeries a = autocorrelation(fixtures::evolved(kDle7), uniform_grid(0.0, 20.0, 401));
    FrequencyOptions o;
    o.max_bin_width = 0.1;  // 2 pi / 20 is wider
    CHECK_THROWS_AS(dominant_frequencies(a, 3, o), ResolutionError);
    o.max_bin_width = 0.5;
    CHECK_NOTHROW(dominant_frequencies(a, 3, o));
    TimeSeries uneven{{0, 1, 2.5, 3}, {1, 2, 3, 4}};
    for (int i = 4; i < 20; ++i) {
        uneven.times.push_back(i);
        uneven.values.push_back(1);
    }
    CHECK_THROWS(dominant_frequencies(uneven, 2));
}

TEST_CASE("long envelope of a mixed packet") {
    const EvolvedState es = fixtures::evolved(MixedSpec{std::numbers::pi / 4, DleSpec{7.0, 0.3}, DloSpec{-5.598, 0.83, 1.0}});
    const double period = 2 * std::numbers::pi / gap(1, 0);
    CHECK(period == doctest::Approx(520.0).epsilon(5.0 / 520.0));
    // slow beat: |a|^2 drops from ~1 to ~0 at half the period
    const AutocorrSeries a = autocorrelation(es, {0.0, period / 2, period});
    CHECK(a.values[0] > 0.99);
    CHECK(a.values[1] < 0.01);
    CHECK(a.values[2] == doctest::Approx(a.values[0]).epsilon(2e-2));
}

TEST_CASE("Wigner grid properties") {
    const auto& w = fixtures::standard_well();
    const std::vector<double> xs = uniform_grid(-6.0, 6.0, 121);
    const std::vector<double> ps = uniform_grid(-10.0, 10.0, 201);
    SUBCASE("normalisation, marginal and bound") {
        const EvolvedState es = fixtures::evolved(kDle7);
        for (double t : {0.0, 0.77}) {
            const WignerGrid g = wigner(es, t, xs, ps);
            CHECK(g.values.size() == xs.size() * ps.size());
            CHECK(g.total() == doctest::Approx(es.overlaps.bound_fraction).epsilon(1e-3));
            const auto marg = g.position_marginal();
            double worst = 0, top = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                worst = std::max(worst, std::fabs(marg[i] - std::norm(evolve(es, xs[i], t))));
                top = std::max(top, *std::max_element(g.values.begin() + i * ps.size(), g.values.begin() + (i + 1) * ps.size()));
            }
            CHECK(worst <= 1e-4);
            CHECK(top > 0.25);
            double amax = 0;
            for (double v : g.values) amax = std::max(amax, std::fabs(v));
            CHECK(amax <= 1.0 / std::numbers::pi + 1e-3);
        }
    }
    SUBCASE("symmetries of a real even eigenstate") {
        OverlapSet single;
        single.values[2] = 1.0;
        single.recompute_bound_fraction();
        const WignerGrid g = wigner(make_evolved_state(single, w.spectrum, w.states), 3.0, xs, ps);
        const std::size_t nx = xs.size(), np = ps.size();
        double worst = 0;
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < np; ++j) {
                worst = std::max(worst, std::fabs(g.at(i, j) - g.at(i, np - 1 - j)));
                worst = std::max(worst, std::fabs(g.at(i, j) - g.at(nx - 1 - i, j)));
            }
        CHECK(worst < 1e-12);
    }
    SUBCASE("recurrence after one oscillation period") {
        const EvolvedState es = fixtures::evolved(kDle7);
        const double T = 2 * std::numbers::pi / gap(2, 0);
        CHECK(T == doctest::Approx(1.33).epsilon(0.01 / 1.33));
        CHECK(relative_l2(wigner(es, 1.33, xs, ps), wigner(es, 0.0, xs, ps)) <= 1e-2);
        CHECK(relative_l2(wigner(es, T / 2, xs, ps), wigner(es, 0.0, xs, ps)) > 0.1);
    }
    SUBCASE("errors") {
        const EvolvedState es = fixtures::evolved(kDle7);
        WignerOptions tight;
        tight.window_cap = 1.0;
        CHECK_THROWS_AS(wigner(es, 0.0, xs, ps, tight), WindowError);
        CHECK_THROWS_AS(wigner(es, 0.0, {-1.0, 0.0, 2.0}, ps), DomainError);
    }
}

TEST_CASE("partial superpositions") {
    const EvolvedState es = fixtures::evolved(kDle4);
    CHECK_THROWS_AS(partial_superposition(es, {}), DomainError);
    CHECK_THROWS_AS(partial_superposition(es, {0, 9}), DomainError);
    std::set<int> all;
    for (const auto& [n, v] : es.overlaps.values) all.insert(n);
    const EvolvedState same = partial_superposition(es, all);
    CHECK(same.overlaps.values == es.overlaps.values);
    CHECK(same.overlaps.bound_fraction == doctest::Approx(es.overlaps.bound_fraction));
    const EvolvedState ground = partial_superposition(es, {0});
    CHECK(relative_variation(autocorrelation(ground, uniform_grid(0.0, 50.0, 101))) < 1e-14);
    for (double t : {0.0, 2.0, 9.0}) CHECK(std::norm(evolve(ground, 0.7, t)) == doctest::Approx(std::norm(evolve(ground, 0.7, 0.0))));
}

TEST_CASE("bridge shear follows the populated gaps") {
    const EvolvedState es = fixtures::evolved(kDle4);
    const std::vector<double> xs = uniform_grid(-0.5, 0.5, 21);
    const std::vector<double> ps = uniform_grid(-10.0, 10.0, 401);
    const std::vector<double> ts = uniform_grid(0.0, 40.0, 201);
    FrequencyOptions fo;
    fo.relative_threshold = 0.05;
    const auto pk = dominant_frequencies(bridge_slope_series(partial_superposition(es, {0, 2}), ts, xs, ps, 0.5), 5, fo);
    REQUIRE(pk.size() == 1);
    CHECK(pk[0].omega == doctest::Approx(gap(2, 0)).epsilon(0.02 / 4.73));
    const auto full = dominant_frequencies(bridge_slope_series(es, ts, xs, ps, 0.5), 5, fo);
    bool has40 = false;
    for (const auto& p : full) has40 |= std::fabs(p.omega - gap(4, 0)) < 0.05;
    CHECK(has40);
    // a single stationary state has no shear at all
    const WignerGrid g = wigner(partial_superposition(es, {2}), 1.0, xs, ps);
    CHECK(std::fabs(bridge_slope(g, 0.5)) < 1e-12);
    CHECK(std::isfinite(principal_axis_angle(g, 0.5)));
}
