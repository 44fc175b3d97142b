#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <vector>

#include "aetf/rng.hpp"
#include "aetf/spectra.hpp"

using namespace aetf;

TEST_CASE("IndexSet sorts, validates and deduplicates") {
    const IndexSet s(FrameShape(6, 3), {5, 1, 3});
    CHECK(s.indices == std::vector<int>{1, 3, 5});
    CHECK(s.contains(3));
    CHECK(!s.contains(2));

    CHECK_THROWS_AS(IndexSet(FrameShape(6, 3), {1, 2}), std::invalid_argument);        // wrong size
    CHECK_THROWS_AS(IndexSet(FrameShape(6, 3), {1, 2, 8}), std::invalid_argument);     // >= N+
    CHECK_THROWS_AS(IndexSet(FrameShape(6, 3), {1, 2, -1}), std::invalid_argument);    // negative
    CHECK_THROWS_AS(IndexSet(FrameShape(6, 3), {1, 2, 2}), std::invalid_argument);     // duplicate
}

TEST_CASE("difference_spectrum counts ordered XOR pairs") {
    const auto spectrum = difference_spectrum(IndexSet(FrameShape(4, 3), {1, 2, 3}));
    CHECK(spectrum.counts == std::vector<int64_t>{3, 2, 2, 2});
}

TEST_CASE("difference_spectrum of a classical (16, 6) difference set is flat") {
    const auto spectrum = difference_spectrum(IndexSet(FrameShape(16, 6), {0, 1, 2, 4, 8, 15}));
    CHECK(spectrum.counts[0] == 6);
    for (int l = 1; l < 16; ++l) CHECK(spectrum.counts[l] == 2);
}

TEST_CASE("difference_spectrum invariants on random sets") {
    Rng rng(2024);
    for (int t = 0; t < 50; ++t) {
        const int n_plus = 1 << (2 + static_cast<int>(rng.below(4)));  // 4..32
        const int m = 2 + static_cast<int>(rng.below(n_plus - 1));
        const IndexSet s(FrameShape(n_plus, m), rng.sample_without_replacement(n_plus, m));
        const auto spectrum = difference_spectrum(s);
        CHECK(spectrum.counts[0] == m);
        CHECK(std::accumulate(spectrum.counts.begin(), spectrum.counts.end(), int64_t{0}) ==
              int64_t{m} * m);
        for (int l = 1; l < n_plus; ++l) CHECK(spectrum.counts[l] % 2 == 0);
    }
}

TEST_CASE("ds_target is the flat two-level spectrum, only for N = N+") {
    const auto t43 = ds_target(FrameShape(4, 3));
    CHECK(t43.values == std::vector<double>{3, 2, 2, 2});
    CHECK(t43.alpha_excess == 0.0);
    CHECK(t43.integer_feasible);

    const auto t87 = ds_target(FrameShape(8, 7));
    CHECK(t87.values[0] == 7);
    for (int l = 1; l < 8; ++l) CHECK(t87.values[l] == 6);

    const auto t16 = ds_target(FrameShape(16, 6));
    CHECK(t16.values[0] == 6);
    for (int l = 1; l < 16; ++l) CHECK(t16.values[l] == 2);

    CHECK(!ds_target(FrameShape(8, 4)).integer_feasible);  // 12/7 level
    CHECK_THROWS_AS(ds_target(FrameShape(6, 3)), std::invalid_argument);
}

TEST_CASE("alpha_excess closed form and limits") {
    CHECK(alpha_excess(FrameShape(6, 3)) == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
    CHECK(alpha_excess(FrameShape(5, 2)) == doctest::Approx(3.0 / 32.0).epsilon(1e-15));
    CHECK(alpha_excess(FrameShape(4, 3)) == 0.0);   // N = N+
    CHECK(alpha_excess(FrameShape(16, 6)) == 0.0);  // N = N+
    CHECK(alpha_excess(FrameShape(5, 1)) == 0.0);   // M = 1
    CHECK(alpha_excess(FrameShape(1, 1)) == 0.0);

    // Shrinks as N fills the enclosing power of two (M = 3).
    const double a5 = alpha_excess(FrameShape(5, 3));
    const double a6 = alpha_excess(FrameShape(6, 3));
    const double a7 = alpha_excess(FrameShape(7, 3));
    CHECK(a5 == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(a7 == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
    CHECK(a5 > a6);
    CHECK(a6 > a7);
    CHECK(a7 > alpha_excess(FrameShape(8, 3)));
    CHECK(alpha_excess(FrameShape(8, 3)) == 0.0);
}

TEST_CASE("gds_target three-level shape for N = 6, M = 3") {
    const auto t = gds_target(FrameShape(6, 3));
    REQUIRE(t.values.size() == 8);
    CHECK(t.values[0] == 3.0);
    for (int l : {1, 2, 3, 5, 6, 7})
        CHECK(t.values[l] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(t.values[4] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::accumulate(t.values.begin(), t.values.end(), 0.0) ==
          doctest::Approx(9.0).epsilon(1e-12));
    CHECK(t.alpha_excess == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
    CHECK(!t.integer_feasible);
}

TEST_CASE("gds_target sums to M^2 and matches ds_target at N = N+") {
    Rng rng(99);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.below(63));
        const int m = 1 + static_cast<int>(rng.below(n));
        const auto gds = gds_target(FrameShape(n, m));
        const double sum = std::accumulate(gds.values.begin(), gds.values.end(), 0.0);
        CHECK(sum == doctest::Approx(static_cast<double>(m) * m).epsilon(1e-9));
    }
    for (int n : {4, 8, 16, 32}) {
        for (int m = 1; m <= n; m += 3) {
            const auto a = gds_target(FrameShape(n, m));
            const auto b = ds_target(FrameShape(n, m));
            REQUIRE(a.values.size() == b.values.size());
            for (size_t i = 0; i < a.values.size(); ++i)
                CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
            CHECK(a.alpha_excess == 0.0);
            CHECK(a.integer_feasible == b.integer_feasible);
        }
    }
}

TEST_CASE("target_correlation_profile levels") {
    const auto t = target_correlation_profile(FrameShape(6, 3));
    CHECK(t.n_minus == 4);
    CHECK(t.n_plus == 8);
    CHECK(t.welch_level == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(t.raised_level == doctest::Approx(0.2 + 1.0 / 15.0).epsilon(1e-15));
    CHECK(t.level(0) == 1.0);
    CHECK(t.level(1) == t.welch_level);
    CHECK(t.level(3) == t.welch_level);
    CHECK(t.level(4) == t.raised_level);
    CHECK(t.level(7) == t.raised_level);

    const auto etf = target_correlation_profile(FrameShape(8, 7));
    CHECK(etf.welch_level == doctest::Approx(1.0 / 49.0).epsilon(1e-15));
    CHECK(etf.raised_level == etf.welch_level);
}

TEST_CASE("is_difference_set matches the flat-spectrum definition") {
    CHECK(is_difference_set(IndexSet(FrameShape(4, 3), {1, 2, 3})));
    CHECK(is_difference_set(IndexSet(FrameShape(4, 3), {0, 1, 2})));
    CHECK(is_difference_set(IndexSet(FrameShape(4, 4), {0, 1, 2, 3})));
    CHECK(is_difference_set(IndexSet(FrameShape(8, 7), {1, 2, 3, 4, 5, 6, 7})));
    CHECK(is_difference_set(IndexSet(FrameShape(16, 6), {0, 1, 2, 4, 8, 15})));
    CHECK(!is_difference_set(IndexSet(FrameShape(16, 6), {0, 1, 2, 3, 4, 5})));
    // No integer level exists for (8, 4): cannot be a difference set.
    CHECK(!is_difference_set(IndexSet(FrameShape(8, 4), {0, 1, 2, 4})));
    CHECK_THROWS_AS(is_difference_set(IndexSet(FrameShape(6, 3), {1, 2, 3})),
                    std::invalid_argument);
}
