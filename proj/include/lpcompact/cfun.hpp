#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lpcompact/errors.hpp"
#include "lpcompact/exponent.hpp"
#include "lpcompact/greedy_net.hpp"
#include "lpcompact/scalar_seq.hpp"

namespace lpc {

// A finite metric grid standing in for a compact domain: labelled points
// with coordinates in [0,1]^k and an adjacency graph carrying metric
// distances. "Neighbourhood" below always means an adjacency ball.
struct GridPoint {
    std::string label;
    std::vector<double> coords;
};

struct Grid {
    std::vector<GridPoint> points;
    std::vector<std::pair<int, int>> adjacency;

    int size() const { return static_cast<int>(points.size()); }

    double distance(int i, int j) const {
        const auto& a = points[static_cast<std::size_t>(i)].coords;
        const auto& b = points[static_cast<std::size_t>(j)].coords;
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
        return std::sqrt(s);
    }

    int index_of(const std::string& label) const {
        for (int i = 0; i < size(); ++i)
            if (points[static_cast<std::size_t>(i)].label == label) return i;
        throw UnknownPointError("Grid: unknown point '" + label + "'");
    }

    // Adjacency must connect the grid and carry positive lengths.
    void validate() const {
        if (points.empty()) throw std::invalid_argument("Grid: no points");
        for (const auto& [i, j] : adjacency) {
            if (i < 0 || j < 0 || i >= size() || j >= size())
                throw std::invalid_argument("Grid: adjacency index out of range");
            if (!(distance(i, j) > 0.0)) throw std::invalid_argument("Grid: zero-length edge");
        }
        if (size() > 1) {
            std::vector<char> seen(points.size(), 0);
            std::queue<int> bfs;
            bfs.push(0);
            seen[0] = 1;
            int reached = 1;
            while (!bfs.empty()) {
                const int u = bfs.front();
                bfs.pop();
                for (const auto& [i, j] : adjacency) {
                    const int v = i == u ? j : (j == u ? i : -1);
                    if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
                        seen[static_cast<std::size_t>(v)] = 1;
                        ++reached;
                        bfs.push(v);
                    }
                }
            }
            if (reached != size()) throw std::invalid_argument("Grid: adjacency graph is not connected");
        }
    }

    // Uniform grid on [0,1] with k+1 points and unit-interval adjacency.
    static Grid uniform_1d(int k) {
        Grid g;
        for (int i = 0; i <= k; ++i)
            g.points.push_back({"s" + std::to_string(i), {static_cast<double>(i) / k}});
        for (int i = 0; i < k; ++i) g.adjacency.emplace_back(i, i + 1);
        g.validate();
        return g;
    }

    // nx-by-ny lattice on [0,1]^2 with 4-neighbour adjacency.
    static Grid lattice_2d(int nx, int ny) {
        Grid g;
        const auto id = [nx](int ix, int iy) { return iy * nx + ix; };
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix)
                g.points.push_back({"s" + std::to_string(ix) + "_" + std::to_string(iy),
                                    {nx > 1 ? static_cast<double>(ix) / (nx - 1) : 0.0,
                                     ny > 1 ? static_cast<double>(iy) / (ny - 1) : 0.0}});
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                if (ix + 1 < nx) g.adjacency.emplace_back(id(ix, iy), id(ix + 1, iy));
                if (iy + 1 < ny) g.adjacency.emplace_back(id(ix, iy), id(ix, iy + 1));
            }
        g.validate();
        return g;
    }
};

// A sequence of grid-sampled functions (f_1, ..., f_N), each a value table
// over the grid, viewed as the map s -> (f_1(s), f_2(s), ...) into l^p.
struct GridFunctionSeq {
    Grid grid;
    std::vector<Eigen::VectorXcd> components; // components[i] has one value per point
    Exponent p;

    GridFunctionSeq(Grid g, std::vector<Eigen::VectorXcd> comps, Exponent exponent)
        : grid(std::move(g)), components(std::move(comps)), p(exponent) {
        grid.validate();
        for (const auto& c : components)
            if (c.size() != grid.size())
                throw DimensionMismatchError("GridFunctionSeq: component not total on the grid");
    }

    std::size_t size() const { return components.size(); }
};

// The point's component vector (f_1(s), ..., f_N(s)).
inline ScalarSeq evaluate(const GridFunctionSeq& f, int point) {
    if (point < 0 || point >= f.grid.size()) throw UnknownPointError("evaluate: point index out of range");
    ScalarSeq out = ScalarSeq::zeros(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.entries[i] = f.components[i][point];
    return out;
}

inline ScalarSeq evaluate(const GridFunctionSeq& f, const std::string& label) {
    return evaluate(f, f.grid.index_of(label));
}

// For each cutoff m: sup over grid points of the p-tail of F(s) beyond m.
inline std::vector<std::pair<std::size_t, double>> image_tail_profile(const GridFunctionSeq& f,
                                                                      const std::vector<std::size_t>& cutoffs) {
    if (f.p.is_inf()) throw InfiniteExponentError("image_tail_profile: finite p required");
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(cutoffs.size());
    for (std::size_t m : cutoffs) {
        double sup = 0.0;
        for (int s = 0; s < f.grid.size(); ++s) sup = std::max(sup, tail_p_norm(evaluate(f, s), f.p, m));
        out.emplace_back(m, sup);
    }
    return out;
}

// p-modulus of continuity over adjacency scales: for each distinct edge
// length delta, the max of ||F(s) - F(s')||_p over edges no longer than
// delta. Nondecreasing in delta by construction.
inline std::vector<std::pair<double, double>> modulus_of_continuity(const GridFunctionSeq& f, const Exponent& p) {
    std::set<double> scales;
    for (const auto& [i, j] : f.grid.adjacency) scales.insert(f.grid.distance(i, j));

    std::vector<std::pair<double, double>> out;
    for (double delta : scales) {
        double omega = 0.0;
        for (const auto& [i, j] : f.grid.adjacency) {
            if (f.grid.distance(i, j) <= delta)
                omega = std::max(omega, p_norm(difference(evaluate(f, i), evaluate(f, j)), p));
        }
        out.emplace_back(delta, omega);
    }
    return out;
}

// Largest adjacency ball around s0 on which the head components move by at
// most eps / m^{1/p}, together with the measured max of ||F(s)-F(s0)||_p^p
// on that ball and the bound (1 + 2^{p+1}) eps^p it must stay under.
struct ContinuityBoundReport {
    double epsilon = 0.0;
    std::size_t cutoff_m = 0;
    double tail_at_cutoff = 0.0;
    double head_threshold = 0.0; // eps / m^{1/p}
    int ball_radius_hops = 0;
    std::size_t ball_points = 0;
    double measured_max = 0.0; // max ||F(s) - F(s0)||_p^p over the ball
    double bound = 0.0;        // (1 + 2^{p+1}) eps^p
    bool ok = false;
};

namespace detail {

// Hop distances from s0 over the adjacency graph.
inline std::vector<int> hop_distances(const Grid& grid, int s0) {
    std::vector<int> dist(grid.points.size(), -1);
    std::queue<int> bfs;
    dist[static_cast<std::size_t>(s0)] = 0;
    bfs.push(s0);
    while (!bfs.empty()) {
        const int u = bfs.front();
        bfs.pop();
        for (const auto& [i, j] : grid.adjacency) {
            const int v = i == u ? j : (j == u ? i : -1);
            if (v >= 0 && dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                bfs.push(v);
            }
        }
    }
    return dist;
}

} // namespace detail

inline ContinuityBoundReport continuity_bound_check(const GridFunctionSeq& f, int s0, double epsilon) {
    if (f.p.is_inf()) throw InfiniteExponentError("continuity_bound_check: finite p required");
    if (s0 < 0 || s0 >= f.grid.size()) throw UnknownPointError("continuity_bound_check: point out of range");
    if (!(epsilon > 0.0)) throw std::invalid_argument("continuity_bound_check: epsilon must be > 0");
    const double pv = f.p.value();

    // Tail premise: a cutoff strictly below the horizon with sup-tail < eps.
    // The trivial cutoff m = N (empty tail) does not qualify.
    ContinuityBoundReport rep;
    rep.epsilon = epsilon;
    bool have_cutoff = false;
    for (std::size_t m = 0; m < f.size(); ++m) {
        double sup = 0.0;
        for (int s = 0; s < f.grid.size(); ++s) sup = std::max(sup, tail_p_norm(evaluate(f, s), f.p, m));
        if (sup < epsilon) {
            rep.cutoff_m = m;
            rep.tail_at_cutoff = sup;
            have_cutoff = true;
            break;
        }
    }
    if (!have_cutoff)
        throw NoCertificateError("continuity_bound_check: image tails never fall below epsilon before the horizon");

    rep.head_threshold = rep.cutoff_m == 0
                             ? std::numeric_limits<double>::infinity()
                             : epsilon / std::pow(static_cast<double>(rep.cutoff_m), 1.0 / pv);

    // Grow the adjacency ball while every point in it keeps the head
    // components within the threshold.
    const auto hops = detail::hop_distances(f.grid, s0);
    const auto head_ok = [&](int s) {
        for (std::size_t i = 0; i < rep.cutoff_m; ++i)
            if (std::abs(f.components[i][s] - f.components[i][s0]) > rep.head_threshold) return false;
        return true;
    };
    int max_hops = 0;
    for (int d : hops) max_hops = std::max(max_hops, d);
    int radius = 0;
    for (int r = 1; r <= max_hops; ++r) {
        bool all_ok = true;
        for (int s = 0; s < f.grid.size(); ++s)
            if (hops[static_cast<std::size_t>(s)] == r && !head_ok(s)) all_ok = false;
        if (!all_ok) break;
        radius = r;
    }
    rep.ball_radius_hops = radius;

    const ScalarSeq at_s0 = evaluate(f, s0);
    for (int s = 0; s < f.grid.size(); ++s) {
        const int h = hops[static_cast<std::size_t>(s)];
        if (h < 0 || h > radius) continue;
        ++rep.ball_points;
        const double diff = p_norm(difference(evaluate(f, s), at_s0), f.p);
        rep.measured_max = std::max(rep.measured_max, std::pow(diff, pv));
    }
    rep.bound = (1.0 + std::pow(2.0, pv + 1.0)) * std::pow(epsilon, pv);
    rep.ok = rep.measured_max <= rep.bound;
    return rep;
}

// p = inf route: the sup-component modulus over adjacency scales plus a
// greedy net of the component set under the sup norm. Small nets and a
// decaying modulus are the finite-window face of equicontinuity.
struct EquicontinuityReport {
    std::vector<std::pair<double, double>> modulus; // (delta, sup_i |f_i(s)-f_i(s')|)
    struct NetAtEps {
        double epsilon;
        std::size_t net_size;
        std::vector<std::size_t> net_indices;
    };
    std::vector<NetAtEps> nets;
};

inline EquicontinuityReport equicontinuity_check_pinf(const GridFunctionSeq& f,
                                                      const std::vector<double>& eps_grid) {
    EquicontinuityReport rep;
    rep.modulus = modulus_of_continuity(f, Exponent::infinity());

    const auto sup_dist = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        return (a - b).cwiseAbs().maxCoeff();
    };
    for (double eps : eps_grid) {
        const auto net = greedy_net(f.components, eps, sup_dist);
        rep.nets.push_back({eps, net.indices.size(), net.indices});
    }
    return rep;
}

} // namespace lpc
