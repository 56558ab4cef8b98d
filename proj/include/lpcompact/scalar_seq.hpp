#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "lpcompact/errors.hpp"
#include "lpcompact/exponent.hpp"
#include "lpcompact/rng.hpp"
#include "lpcompact/summation.hpp"

namespace lpc {

using cplx = std::complex<double>;

// A finite-support complex sequence: entries [0, support) are stored, all
// later entries are implicitly zero. Stands for a truncated element of l^p
// or c_0.
struct ScalarSeq {
    std::vector<cplx> entries;

    ScalarSeq() = default;
    explicit ScalarSeq(std::vector<cplx> e) : entries(std::move(e)) {}
    ScalarSeq(std::initializer_list<cplx> e) : entries(e) {}

    std::size_t support() const { return entries.size(); }

    // Entry with zero-padding beyond the support.
    cplx at(std::size_t i) const { return i < entries.size() ? entries[i] : cplx{0.0, 0.0}; }

    bool is_zero() const {
        return std::all_of(entries.begin(), entries.end(), [](cplx z) { return z == cplx{0.0, 0.0}; });
    }

    static ScalarSeq zeros(std::size_t n) { return ScalarSeq(std::vector<cplx>(n, cplx{0.0, 0.0})); }

    // Standard basis vector e_i (1-based index, support i).
    static ScalarSeq basis(std::size_t i) {
        ScalarSeq s = zeros(i);
        s.entries[i - 1] = cplx{1.0, 0.0};
        return s;
    }
};

// p-th power of |z| with the p = 2 and p = 1 cases kept exact.
inline double abs_pow(cplx z, double p) {
    if (p == 2.0) return std::norm(z);
    if (p == 1.0) return std::abs(z);
    return std::pow(std::abs(z), p);
}

inline double root_pow(double sum, double p) {
    if (p == 2.0) return std::sqrt(sum);
    if (p == 1.0) return sum;
    return std::pow(sum, 1.0 / p);
}

// (sum |x_i|^p)^{1/p} over a raw range; max |x_i| for p = inf.
inline double p_norm(const cplx* data, std::size_t n, const Exponent& p) {
    if (p.is_inf()) {
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(data[i]));
        return mx;
    }
    const double pv = p.value();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(abs_pow(data[i], pv));
    return root_pow(acc.value(), pv);
}

inline double p_norm(const ScalarSeq& x, const Exponent& p) {
    return p_norm(x.entries.data(), x.entries.size(), p);
}

// Tail (sum_{i > m} |x_i|^p)^{1/p}; indices are 1-based, so m = 0 is the
// whole sequence. Finite p only.
inline double tail_p_norm(const ScalarSeq& x, const Exponent& p, std::size_t m) {
    if (p.is_inf()) throw InfiniteExponentError("tail_p_norm: tails are a finite-p criterion");
    if (m >= x.support()) return 0.0;
    return p_norm(x.entries.data() + m, x.entries.size() - m, p);
}

// Bilinear pairing sum x_i y_i (no conjugation); the shorter sequence is
// zero-padded.
inline cplx holder_pair(const ScalarSeq& x, const ScalarSeq& y) {
    const std::size_t n = std::min(x.support(), y.support());
    CompensatedComplexSum acc;
    for (std::size_t i = 0; i < n; ++i) acc.add(x.entries[i] * y.entries[i]);
    return acc.value();
}

// The q-unit witness of the p-norm: a sequence y with ||y||_q = 1 and
// sum x_i y_i = ||x||_p (real, to machine precision). Canonical phases are
// y_i = conj(x_i) |x_i|^{p-2} / ||x||_p^{p-1}, with y_i = 0 where x_i = 0;
// for p = inf the witness is a phase-adjusted basis vector at a
// maximal-modulus entry, and for p = 1 the full phase vector conj(x_i)/|x_i|.
inline ScalarSeq holder_extremizer(const ScalarSeq& x, const Exponent& p) {
    if (x.is_zero()) throw ZeroSequenceError("holder_extremizer: zero sequence has no norming witness");

    ScalarSeq y = ScalarSeq::zeros(x.support());
    if (p.is_inf()) {
        std::size_t best = 0;
        double best_abs = -1.0;
        for (std::size_t i = 0; i < x.support(); ++i) {
            const double a = std::abs(x.entries[i]);
            if (a > best_abs) {
                best_abs = a;
                best = i;
            }
        }
        y.entries[best] = std::conj(x.entries[best]) / best_abs;
        return y;
    }

    const double pv = p.value();
    if (pv == 1.0) {
        for (std::size_t i = 0; i < x.support(); ++i) {
            const double a = std::abs(x.entries[i]);
            if (a > 0.0) y.entries[i] = std::conj(x.entries[i]) / a;
        }
        return y;
    }

    const double nrm = p_norm(x, p);
    const double scale = std::pow(nrm, pv - 1.0);
    for (std::size_t i = 0; i < x.support(); ++i) {
        const double a = std::abs(x.entries[i]);
        if (a > 0.0) y.entries[i] = std::conj(x.entries[i]) * std::pow(a, pv - 2.0) / scale;
    }
    return y;
}

inline ScalarSeq difference(const ScalarSeq& x, const ScalarSeq& y) {
    const std::size_t n = std::max(x.support(), y.support());
    ScalarSeq d = ScalarSeq::zeros(n);
    for (std::size_t i = 0; i < n; ++i) d.entries[i] = x.at(i) - y.at(i);
    return d;
}

inline ScalarSeq random_gaussian_seq(Rng& rng, std::size_t n) {
    ScalarSeq s = ScalarSeq::zeros(n);
    for (auto& z : s.entries) z = rng.complex_gaussian();
    return s;
}

// A random sequence normalized to ||.||_q = 1 (Gaussian direction).
inline ScalarSeq random_unit_seq(Rng& rng, std::size_t n, const Exponent& q) {
    ScalarSeq s = random_gaussian_seq(rng, n);
    double nrm = p_norm(s, q);
    while (nrm < 1e-12) {
        s = random_gaussian_seq(rng, n);
        nrm = p_norm(s, q);
    }
    for (auto& z : s.entries) z /= nrm;
    return s;
}

} // namespace lpc
