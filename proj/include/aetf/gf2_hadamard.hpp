#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace aetf {

/// Arithmetic context shared by every construction in the toolkit: N users,
/// M Hadamard rows, and the enclosing power-of-two index range
/// N+ = 2^ceil(log2 N) with its half point N- = N+/2. All index arithmetic
/// (differences, transforms) lives on [0, N+).
struct FrameShape {
    int n_users = 0;   // N
    int m_rows = 0;    // M
    int l_bits = 0;    // L = ceil(log2 N)
    int n_plus = 0;    // N+ = 2^L
    int n_minus = 0;   // N- = N+/2

    FrameShape(int n_users, int m_rows);

    double gamma() const { return static_cast<double>(m_rows) / n_users; }

    // (N-M)/((N-1)M); defined as 0 for the single-user frame.
    double welch_bound() const;

    friend bool operator==(const FrameShape&, const FrameShape&) = default;
};

/// Inner product of the binary expansions of i and j over GF(2)^L.
inline int binary_inner(int i, int j) {
    return std::popcount(static_cast<unsigned>(i) & static_cast<unsigned>(j)) & 1;
}

/// Sylvester Hadamard entry h_ij = (-1)^<i,j>. Symmetric in (i, j).
inline int hadamard_entry(int i, int j) {
    return binary_inner(i, j) ? -1 : 1;
}

/// Index difference over GF(2)^L (XOR); its own inverse.
inline int xor_diff(int a, int b) {
    return a ^ b;
}

/// In-place unnormalized Walsh-Hadamard transform:
/// v[k] <- sum_l v[l] * (-1)^<k,l>. Applying twice multiplies by the length.
/// Throws std::invalid_argument unless the length is a power of two.
void walsh_hadamard_transform(std::span<double> v);

/// Convenience value form for rvalues; lvalue vectors convert to span and
/// transform in place instead of mutating a silent copy.
[[nodiscard]] inline std::vector<double> walsh_hadamard_transform(std::vector<double>&& v) {
    walsh_hadamard_transform(std::span<double>(v));
    return std::move(v);
}

}  // namespace aetf
