#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "aetf/gf2_hadamard.hpp"

using namespace aetf;

namespace {

// Direct O(N^2) transform straight from the definition, independent of the
// butterfly implementation under test.
std::vector<double> wht_oracle(const std::vector<double>& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> out(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) out[k] += v[j] * hadamard_entry(k, j);
    return out;
}

}  // namespace

TEST_CASE("binary_inner is the parity of shared bits") {
    CHECK(binary_inner(0, 0) == 0);
    CHECK(binary_inner(3, 5) == 1);  // 011 & 101 -> one shared bit
    CHECK(binary_inner(3, 3) == 0);  // two shared bits
    CHECK(binary_inner(7, 7) == 1);  // three shared bits
    CHECK(binary_inner(6, 1) == 0);  // disjoint supports
    for (int k = 0; k < 64; ++k) {
        CHECK(binary_inner(0, k) == 0);
        CHECK(binary_inner(k, 0) == 0);
    }
}

TEST_CASE("binary_inner is symmetric and bilinear over GF(2)") {
    std::mt19937 gen(11);
    std::uniform_int_distribution<int> dist(0, 255);
    for (int t = 0; t < 500; ++t) {
        const int i = dist(gen), j = dist(gen), k = dist(gen);
        CHECK(binary_inner(i, j) == binary_inner(j, i));
        CHECK(binary_inner(i, j ^ k) == (binary_inner(i, j) ^ binary_inner(i, k)));
    }
}

TEST_CASE("hadamard_entry rows are mutually orthogonal") {
    for (int n : {2, 4, 8, 16, 64}) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                int dot = 0;
                for (int c = 0; c < n; ++c) dot += hadamard_entry(i, c) * hadamard_entry(j, c);
                CHECK(dot == (i == j ? n : 0));
            }
        }
    }
}

TEST_CASE("hadamard_entry row and column zero are all ones") {
    for (int k = 0; k < 64; ++k) {
        CHECK(hadamard_entry(0, k) == 1);
        CHECK(hadamard_entry(k, 0) == 1);
    }
    // 2x2 kernel.
    CHECK(hadamard_entry(1, 1) == -1);
}

TEST_CASE("xor_diff is an involution with identity 0") {
    for (int a = 0; a < 16; ++a) {
        CHECK(xor_diff(a, a) == 0);
        for (int b = 0; b < 16; ++b) {
            CHECK(xor_diff(xor_diff(a, b), b) == a);
            CHECK(xor_diff(a, b) == xor_diff(b, a));
        }
    }
}

TEST_CASE("walsh_hadamard_transform matches the direct-sum oracle") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int n : {1, 2, 4, 8, 16, 32, 64}) {
        std::vector<double> v(n);
        for (auto& x : v) x = dist(gen);
        const std::vector<double> expect = wht_oracle(v);
        const std::vector<double> got = walsh_hadamard_transform(std::vector<double>(v));
        for (int k = 0; k < n; ++k) CHECK(got[k] == doctest::Approx(expect[k]).epsilon(1e-12));
    }
}

TEST_CASE("walsh_hadamard_transform applied twice multiplies by the length") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(32);
    for (auto& x : v) x = dist(gen);
    std::vector<double> twice = v;
    walsh_hadamard_transform(twice);
    walsh_hadamard_transform(twice);
    for (size_t i = 0; i < v.size(); ++i)
        CHECK(twice[i] == doctest::Approx(32.0 * v[i]).epsilon(1e-12));
}

TEST_CASE("walsh_hadamard_transform of a delta is a Hadamard row") {
    std::vector<double> v(16, 0.0);
    v[5] = 1.0;
    walsh_hadamard_transform(v);
    for (int k = 0; k < 16; ++k) CHECK(v[k] == hadamard_entry(5, k));
}

TEST_CASE("walsh_hadamard_transform rejects non-power-of-two lengths") {
    for (int n : {0, 3, 6, 12, 100}) {
        std::vector<double> v(n, 1.0);
        CHECK_THROWS_AS(walsh_hadamard_transform(std::span<double>(v)), std::invalid_argument);
    }
}

TEST_CASE("FrameShape derives the padded dimensions") {
    const FrameShape s(6, 3);
    CHECK(s.n_users == 6);
    CHECK(s.m_rows == 3);
    CHECK(s.l_bits == 3);
    CHECK(s.n_plus == 8);
    CHECK(s.n_minus == 4);

    CHECK(FrameShape(16, 6).n_plus == 16);
    CHECK(FrameShape(16, 6).n_minus == 8);
    CHECK(FrameShape(17, 5).n_plus == 32);
    CHECK(FrameShape(1, 1).n_plus == 1);
    CHECK(FrameShape(1, 1).n_minus == 0);
}

TEST_CASE("FrameShape ratios and Welch bound") {
    CHECK(FrameShape(4, 3).welch_bound() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(FrameShape(8, 7).welch_bound() == doctest::Approx(1.0 / 49.0).epsilon(1e-15));
    CHECK(FrameShape(16, 6).gamma() == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(FrameShape(1, 1).welch_bound() == 0.0);
    CHECK(FrameShape(5, 5).welch_bound() == 0.0);
}

TEST_CASE("FrameShape rejects invalid dimensions") {
    CHECK_THROWS_AS(FrameShape(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(FrameShape(-4, 2), std::invalid_argument);
    CHECK_THROWS_AS(FrameShape(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(FrameShape(4, 5), std::invalid_argument);
}
