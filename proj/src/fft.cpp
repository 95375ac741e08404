#include "phasewig/fft.hpp"

#include <cmath>
#include <numbers>

namespace phasewig::fft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative Cooley-Tukey, n a power of two.
void fft_pow2(std::vector<cd>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? +kTwoPi : -kTwoPi) / len;
        const cd wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (int k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

// Bluestein chirp-z for arbitrary n, expressed through a pow2 convolution.
void fft_bluestein(std::vector<cd>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    const int m = next_pow2(2 * n - 1);
    const double sign = inverse ? +1.0 : -1.0;

    std::vector<cd> chirp(n);
    for (int k = 0; k < n; ++k) {
        // exp(sign * -i*pi*k^2/n); reduce k^2 mod 2n to keep the argument small
        const long long k2 = (static_cast<long long>(k) * k) % (2LL * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(k2) / n;
        chirp[k] = cd(std::cos(ang), std::sin(ang));
    }

    std::vector<cd> fa(m, cd(0, 0)), fb(m, cd(0, 0));
    for (int k = 0; k < n; ++k) fa[k] = a[k] * chirp[k];
    fb[0] = std::conj(chirp[0]);
    for (int k = 1; k < n; ++k) fb[k] = fb[m - k] = std::conj(chirp[k]);

    fft_pow2(fa, false);
    fft_pow2(fb, false);
    for (int k = 0; k < m; ++k) fa[k] *= fb[k];
    fft_pow2(fa, true);
    const double inv_m = 1.0 / m;
    for (int k = 0; k < n; ++k) a[k] = fa[k] * inv_m * chirp[k];
}

}  // namespace

void transform(std::vector<cd>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    if (n <= 1) return;
    if (is_pow2(n)) {
        fft_pow2(a, inverse);
    } else {
        fft_bluestein(a, inverse);
    }
    if (inverse) {
        const double inv_n = 1.0 / n;
        for (auto& x : a) x *= inv_n;
    }
}

void transform_strided(cd* base, int count, int stride, bool inverse) {
    std::vector<cd> tmp(count);
    for (int k = 0; k < count; ++k) tmp[k] = base[static_cast<std::ptrdiff_t>(k) * stride];
    transform(tmp, inverse);
    for (int k = 0; k < count; ++k) base[static_cast<std::ptrdiff_t>(k) * stride] = tmp[k];
}

}  // namespace phasewig::fft
