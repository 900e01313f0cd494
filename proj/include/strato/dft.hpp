#pragma once

#include "strato/common.hpp"

#include <span>
#include <vector>

namespace strato {

/// In-place iterative radix-2 FFT, e^{-i 2 pi j m / n} kernel (inverse uses
/// the + sign and applies no 1/n). Length must be a power of two.
inline void fft_radix2(std::span<cplx> a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidParams("fft_radix2: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

/// Signed frequency index of FFT bin i for length n: 0..n/2-1, -n/2..-1.
inline int fft_signed_index(std::size_t i, std::size_t n) {
    return i < n / 2 ? int(i) : int(i) - int(n);
}

} // namespace strato
