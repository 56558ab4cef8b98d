#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "lpcompact/cfun.hpp"
#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/hilbert.hpp"
#include "lpcompact/spaces.hpp"

namespace lpc::fixtures {

// a_i = e_i / sqrt(i) in C^N with the l2 norm: the strong p-sums diverge
// like the harmonic series while the dual shadow stays compact, with tail
// suprema exactly 1/sqrt(m+1).
inline OperatorSeq<CnSpace> inverse_sqrt_basis_seq(int n, Exponent p = Exponent(2.0)) {
    CnSpace space(n, Exponent(2.0));
    std::vector<Eigen::VectorXcd> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e[i - 1] = 1.0 / std::sqrt(static_cast<double>(i));
        terms.push_back(std::move(e));
    }
    return {space, std::move(terms), p};
}

// a = (e_1, ..., e_N): bounded dual shadow whose tails stay pinned at 1
// until the truncation horizon.
inline OperatorSeq<CnSpace> basis_seq(int n, Exponent p = Exponent(2.0)) {
    CnSpace space(n, Exponent(2.0));
    std::vector<Eigen::VectorXcd> terms;
    terms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e[i] = 1.0;
        terms.push_back(std::move(e));
    }
    return {space, std::move(terms), p};
}

// The dual shadow of the inverse-sqrt sequence under all basis functionals:
// the family whose p-tails realize the analytic suprema exactly.
inline Family inverse_sqrt_shadow_family(int n) {
    Family fam;
    fam.label = "inverse-sqrt dual shadow";
    for (int j = 1; j <= n; ++j) {
        ScalarSeq s = ScalarSeq::zeros(static_cast<std::size_t>(n));
        s.entries[static_cast<std::size_t>(j - 1)] = 1.0 / std::sqrt(static_cast<double>(j));
        fam.members.push_back(std::move(s));
    }
    return fam;
}

inline Family basis_family(int n) {
    Family fam;
    fam.label = "basis";
    for (int j = 1; j <= n; ++j) fam.members.push_back(ScalarSeq::basis(static_cast<std::size_t>(j)));
    return fam;
}

// f_i = 2^{-i} g on a 1-D grid with max |g| = 1 attained at a grid point
// (g = sin(pi x), even cell count), so the image tails are the plain
// geometric sums (sum_{m < i <= N} 4^{-i})^{1/2} at p = 2.
inline GridFunctionSeq geometric_decay_fun(int n, int grid_cells = 16, Exponent p = Exponent(2.0)) {
    Grid grid = Grid::uniform_1d(grid_cells);
    std::vector<Eigen::VectorXcd> comps;
    for (int i = 1; i <= n; ++i) {
        Eigen::VectorXcd f(grid.size());
        for (int s = 0; s < grid.size(); ++s) {
            const double x = grid.points[static_cast<std::size_t>(s)].coords[0];
            f[s] = std::pow(2.0, -i) * std::sin(M_PI * x);
        }
        comps.push_back(std::move(f));
    }
    return {std::move(grid), std::move(comps), p};
}

// Disjoint unit bumps marching across the grid: image tails stall at 1
// until the horizon and the sup-modulus stays order one.
inline GridFunctionSeq bump_train_fun(int n, Exponent p = Exponent(2.0)) {
    Grid grid = Grid::uniform_1d(2 * n);
    std::vector<Eigen::VectorXcd> comps;
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXcd f = Eigen::VectorXcd::Zero(grid.size());
        f[2 * i + 1] = 1.0; // bump supported on a single interior point
        comps.push_back(std::move(f));
    }
    return {std::move(grid), std::move(comps), p};
}

inline OperatorTuple nilpotent_singleton() {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 0, 0;
    return {2, {m}, Exponent(2.0)};
}

inline OperatorTuple identity_pair(Exponent p = Exponent(2.0)) {
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
    return {2, {id, id}, p};
}

// (shift, shift*) on C^2: the joint range is the circle pair, with joint
// radius 1/sqrt(2) and tuple norm 1.
inline OperatorTuple shift_pair(Exponent p = Exponent(2.0)) {
    Eigen::MatrixXcd up(2, 2), down(2, 2);
    up << 0, 1, 0, 0;
    down << 0, 0, 1, 0;
    return {2, {up, down}, p};
}

inline OperatorTuple random_tuple(Rng& rng, int d, int n, Exponent p) {
    std::vector<Eigen::MatrixXcd> ops;
    ops.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ops.push_back(gaussian_matrix(rng, d, d));
    return {d, std::move(ops), p};
}

inline OperatorSeq<CnSpace> random_cn_seq(Rng& rng, int dim, int n_terms, Exponent r, Exponent p) {
    CnSpace space(dim, r);
    std::vector<Eigen::VectorXcd> terms;
    for (int i = 0; i < n_terms; ++i) terms.push_back(gaussian_vector(rng, dim));
    return {space, std::move(terms), p};
}

inline OperatorSeq<GridFunctionSpace> random_cgrid_seq(Rng& rng, int points, int n_terms, Exponent p) {
    GridFunctionSpace space(points);
    std::vector<Eigen::VectorXcd> terms;
    for (int i = 0; i < n_terms; ++i) terms.push_back(gaussian_vector(rng, points));
    return {space, std::move(terms), p};
}

inline OperatorSeq<MatrixSpace> random_mat_seq(Rng& rng, int d, int n_terms, Exponent p) {
    MatrixSpace space(d);
    std::vector<Eigen::MatrixXcd> terms;
    for (int i = 0; i < n_terms; ++i) terms.push_back(gaussian_matrix(rng, d, d));
    return {space, std::move(terms), p};
}

} // namespace lpc::fixtures
