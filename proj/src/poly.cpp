#include "phasewig/poly.hpp"

#include <cmath>

namespace phasewig::poly {

CPoly trim(CPoly a) {
    while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
    return a;
}

CPoly add(const CPoly& a, const CPoly& b) {
    CPoly out(std::max(a.size(), b.size()), cd(0, 0));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
    return out;
}

CPoly mul(const CPoly& a, const CPoly& b) {
    if (a.empty() || b.empty()) return {cd(0, 0)};
    CPoly out(a.size() + b.size() - 1, cd(0, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

CPoly scale(const CPoly& a, cd s) {
    CPoly out(a);
    for (auto& c : out) c *= s;
    return out;
}

CPoly derivative(const CPoly& a) {
    if (a.size() <= 1) return {cd(0, 0)};
    CPoly out(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = a[k] * static_cast<double>(k);
    return out;
}

CPoly stretch(const CPoly& a, cd s) {
    CPoly out(a);
    cd f(1, 0);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] *= f;
        f *= s;
    }
    return out;
}

cd eval(const CPoly& a, cd x) {
    cd acc(0, 0);
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
    return acc;
}

CPoly conj_coeffs(const CPoly& a) {
    CPoly out(a);
    for (auto& c : out) c = std::conj(c);
    return out;
}

int degree(const CPoly& a) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (std::abs(a[k]) != 0.0) return static_cast<int>(k);
    return 0;
}

CPoly hermite(int n) {
    CPoly hm1{cd(1, 0)};  // H_0
    if (n == 0) return hm1;
    CPoly h{cd(0, 0), cd(2, 0)};  // H_1 = 2x
    for (int k = 1; k < n; ++k) {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        CPoly next(h.size() + 1, cd(0, 0));
        for (std::size_t j = 0; j < h.size(); ++j) next[j + 1] = 2.0 * h[j];
        for (std::size_t j = 0; j < hm1.size(); ++j) next[j] -= 2.0 * k * hm1[j];
        hm1 = std::move(h);
        h = std::move(next);
    }
    return h;
}

}  // namespace phasewig::poly
