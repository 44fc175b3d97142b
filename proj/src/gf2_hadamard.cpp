#include "aetf/gf2_hadamard.hpp"

#include <stdexcept>
#include <string>

namespace aetf {

namespace {

int ceil_log2(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
}

}  // namespace

FrameShape::FrameShape(int n, int m) : n_users(n), m_rows(m) {
    if (n < 1) throw std::invalid_argument("FrameShape: n_users must be positive");
    if (m < 1 || m > n)
        throw std::invalid_argument("FrameShape: need 1 <= m_rows <= n_users, got M=" +
                                    std::to_string(m) + " N=" + std::to_string(n));
    l_bits = ceil_log2(n);
    n_plus = 1 << l_bits;
    n_minus = n_plus / 2;
}

double FrameShape::welch_bound() const {
    if (n_users <= 1) return 0.0;
    return static_cast<double>(n_users - m_rows) /
           (static_cast<double>(n_users - 1) * m_rows);
}

void walsh_hadamard_transform(std::span<double> v) {
    const size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("walsh_hadamard_transform: length must be a power of two");
    for (size_t h = 1; h < n; h <<= 1) {
        for (size_t i = 0; i < n; i += 2 * h) {
            for (size_t j = i; j < i + h; ++j) {
                const double a = v[j];
                const double b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace aetf
