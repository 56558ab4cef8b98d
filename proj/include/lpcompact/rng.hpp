#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace lpc {

// Deterministic RNG: all randomness in the toolkit flows from one explicit
// 64-bit seed. Gaussian variates use Box-Muller on raw 53-bit uniforms so
// streams do not depend on library-specific distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        double u1 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    // Derive an independent sub-stream; used to give optimizer restarts
    // reproducible per-index randomness.
    Rng split(std::uint64_t index) {
        return Rng(next_u64() ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }

private:
    std::mt19937_64 engine_;
};

inline Eigen::VectorXcd gaussian_vector(Rng& rng, Eigen::Index n) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.complex_gaussian();
    return v;
}

// Haar-uniform unit vector on the l2 sphere of C^n.
inline Eigen::VectorXcd unit_sphere_vector(Rng& rng, Eigen::Index n) {
    Eigen::VectorXcd v = gaussian_vector(rng, n);
    double nrm = v.norm();
    while (nrm < 1e-12) {
        v = gaussian_vector(rng, n);
        nrm = v.norm();
    }
    return v / nrm;
}

inline Eigen::MatrixXcd gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

} // namespace lpc
