#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "lpcompact/exponent.hpp"
#include "lpcompact/rng.hpp"
#include "lpcompact/scalar_seq.hpp"
#include "lpcompact/spaces.hpp"

namespace lpc {

// Shared multistart budgets. Instances are tiny; generous budgets buy
// reproducibility. All randomness derives from the seed.
struct AscentOptions {
    int restarts = 32;
    int iters = 200;
    double step0 = 0.25;
    double shrink = 0.5;
    double step_min = 1e-9;
    int probes = 8;             // trial perturbations per iteration
    std::uint64_t seed = 1;
    std::size_t dual_samples = 64; // dual-ball sample count for shadow families
};

template <class Arg>
struct MaximizeResult {
    Arg arg;
    double value = 0.0;
};

namespace detail {

// Gradient-free pattern ascent: probe `probes` perturbations per iteration,
// move to the best improvement, shrink the step on failure, stop when the
// step underflows. Deterministic given the rng stream.
template <class Arg, class Obj, class Perturb>
MaximizeResult<Arg> pattern_ascent(Arg start, double f0, Obj&& objective, Perturb&& perturb, Rng rng,
                                   const AscentOptions& opt) {
    MaximizeResult<Arg> cur{std::move(start), f0};
    double step = opt.step0;
    for (int it = 0; it < opt.iters; ++it) {
        bool improved = false;
        Arg best_arg = cur.arg;
        double best_val = cur.value;
        const double accept = cur.value + 1e-14 * (1.0 + std::abs(cur.value));
        for (int k = 0; k < opt.probes; ++k) {
            Arg trial = perturb(cur.arg, rng, step);
            const double v = objective(trial);
            if (v > accept && v > best_val) {
                best_val = v;
                best_arg = std::move(trial);
                improved = true;
            }
        }
        if (improved) {
            cur.arg = std::move(best_arg);
            cur.value = best_val;
        } else {
            step *= opt.shrink;
            if (step < opt.step_min) break;
        }
    }
    return cur;
}

// Rank starts by objective value (stable; ties keep candidate order) and
// return the indices of the best `count`.
inline std::vector<std::size_t> top_indices(const std::vector<double>& values, std::size_t count) {
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&values](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (order.size() > count) order.resize(count);
    return order;
}

} // namespace detail

// Multistart pattern search over the dual unit ball of a target space.
// Starts are the caller's extra candidates, the extreme-point slate, and
// random dual-ball samples; the best `restarts` starts by initial value are
// ascended. The returned value is a certified lower bound of the true
// supremum (it is the objective at an explicit dual-ball functional).
template <class Space, class Obj>
MaximizeResult<typename Space::Functional> dual_ball_maximize(
    const Space& space, Obj&& objective, const AscentOptions& opt,
    std::vector<typename Space::Functional> extra_starts = {}) {
    using Functional = typename Space::Functional;

    std::vector<Functional> candidates = std::move(extra_starts);
    for (auto& phi : space.dual_slate()) candidates.push_back(std::move(phi));
    Rng rng(opt.seed);
    for (int i = 0; i < opt.restarts; ++i) candidates.push_back(space.random_functional(rng));

    MaximizeResult<Functional> best{space.dual_slate().front(), 0.0};
    if (opt.restarts <= 0) return best; // degenerate budget: report a zero bound, never crash

    std::vector<double> initial(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) initial[i] = objective(candidates[i]);

    const auto order = detail::top_indices(initial, static_cast<std::size_t>(opt.restarts));
    bool have = false;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t idx = order[rank];
        auto res = detail::pattern_ascent(
            candidates[idx], initial[idx], objective,
            [&space](const Functional& phi, Rng& r, double step) { return space.perturb(phi, r, step); },
            rng.split(rank), opt);
        if (!have || res.value > best.value) {
            best = std::move(res);
            have = true;
        }
    }
    return best;
}

// Multistart pattern search over the unit sphere of l^q in C^n: the beta
// side of the operator-norm supremum. Same budgets and determinism rules as
// dual_ball_maximize.
template <class Obj>
MaximizeResult<ScalarSeq> maximize_on_q_sphere(std::size_t n, const Exponent& q, Obj&& objective,
                                               const AscentOptions& opt,
                                               std::vector<ScalarSeq> extra_starts = {}) {
    std::vector<ScalarSeq> candidates = std::move(extra_starts);
    for (std::size_t i = 1; i <= n; ++i) {
        ScalarSeq e = ScalarSeq::zeros(n);
        e.entries[i - 1] = 1.0;
        candidates.push_back(e);
    }
    Rng rng(opt.seed);
    for (int i = 0; i < opt.restarts; ++i) candidates.push_back(random_unit_seq(rng, n, q));

    MaximizeResult<ScalarSeq> best{ScalarSeq::zeros(n), 0.0};
    if (opt.restarts <= 0) return best;

    std::vector<double> initial(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) initial[i] = objective(candidates[i]);

    const auto perturb = [&q, n](const ScalarSeq& b, Rng& r, double step) {
        ScalarSeq trial = b;
        trial.entries.resize(n, cplx{0.0, 0.0});
        for (auto& z : trial.entries) z += step * r.complex_gaussian();
        const double nrm = p_norm(trial, q);
        if (nrm < 1e-14) return b;
        for (auto& z : trial.entries) z /= nrm;
        return trial;
    };

    const auto order = detail::top_indices(initial, static_cast<std::size_t>(opt.restarts));
    bool have = false;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t idx = order[rank];
        auto res = detail::pattern_ascent(candidates[idx], initial[idx], objective, perturb, rng.split(rank), opt);
        if (!have || res.value > best.value) {
            best = std::move(res);
            have = true;
        }
    }
    return best;
}

} // namespace lpc
