#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/fixtures.hpp"
#include "lpcompact/hilbert.hpp"
#include "lpcompact/optimize.hpp"

namespace lpc {

// One row of the verification table: a named identity or inequality, the
// worst residual measured over seeded random instances, and the tolerance
// it must stay under.
struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

namespace verify_detail {

inline std::vector<Exponent> exponent_grid() {
    return {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()};
}

inline CheckResult holder_inequality(Rng& rng, int trials) {
    CheckResult res{"holder_inequality", false, 0.0, 1e-12,
                    "pairing modulus never exceeds the conjugate norm product"};
    for (int t = 0; t < trials; ++t) {
        const ScalarSeq x = random_gaussian_seq(rng, 8);
        const ScalarSeq y = random_gaussian_seq(rng, 8);
        for (const auto& p : exponent_grid()) {
            const double lhs = std::abs(holder_pair(x, y));
            const double rhs = p_norm(x, p) * p_norm(y, p.conjugate());
            res.worst = std::max(res.worst, lhs - rhs);
        }
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult extremizer_tightness(Rng& rng, int trials) {
    CheckResult res{"holder_extremizer_tightness", false, 0.0, 1e-12,
                    "the canonical q-unit witness attains the p-norm"};
    for (int t = 0; t < trials; ++t) {
        const ScalarSeq x = random_gaussian_seq(rng, 6);
        for (const auto& p : exponent_grid()) {
            const ScalarSeq y = holder_extremizer(x, p);
            const double nrm = p_norm(x, p);
            const double unit_gap = std::abs(p_norm(y, p.conjugate()) - 1.0);
            const double pair_gap = std::abs(holder_pair(x, y) - nrm) / std::max(1.0, nrm);
            res.worst = std::max({res.worst, unit_gap, pair_gap});
        }
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

template <class Space>
double norm_equality_gap(const OperatorSeq<Space>& seq, const AscentOptions& opt) {
    const auto tn = triple_norm(seq, opt);
    const auto on = operator_norm(seq, opt, std::optional<typename Space::Functional>(tn.arg));
    return std::abs(on.value - tn.value) / std::max(1.0, tn.value);
}

inline CheckResult norm_equality(Rng& rng, int per_space, const AscentOptions& opt) {
    CheckResult res{"norm_equality", false, 0.0, 1e-3,
                    "domain-side and dual-shadow operator-norm estimates agree"};
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()};
    for (int t = 0; t < per_space; ++t) {
        const Exponent p = ps[static_cast<std::size_t>(t) % ps.size()];
        AscentOptions o = opt;
        o.seed = opt.seed + static_cast<std::uint64_t>(t) * 977;
        const int n = 2 + static_cast<int>(rng.uniform() * 5); // <= 6
        const int terms = 1 + static_cast<int>(rng.uniform() * 8);
        const int points = 2 + static_cast<int>(rng.uniform() * 11);
        const int d = 2 + static_cast<int>(rng.uniform() * 2);
        const Exponent r = t % 2 == 0 ? Exponent(2.0) : Exponent(3.0);
        res.worst = std::max(res.worst, norm_equality_gap(fixtures::random_cn_seq(rng, n, terms, r, p), o));
        res.worst = std::max(res.worst, norm_equality_gap(fixtures::random_cgrid_seq(rng, points, terms, p), o));
        res.worst = std::max(res.worst, norm_equality_gap(fixtures::random_mat_seq(rng, d, terms, p), o));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

template <class Space>
double dual_pair_residual(const OperatorSeq<Space>& seq, Rng& rng, std::uint64_t seed) {
    double worst = 0.0;
    const auto functionals = sample_dual_ball(seq.space, seq.space.dual_slate().size() + 4, seed);
    for (const auto& phi : functionals) {
        const ScalarSeq beta = random_gaussian_seq(rng, seq.size());
        const cplx via_shadow = holder_pair(beta, dual_map(seq, phi));
        const cplx via_image = seq.space.dual_apply(phi, apply(seq, beta));
        const double scale = std::max(1.0, std::abs(via_image));
        worst = std::max(worst, std::abs(via_shadow - via_image) / scale);
    }
    return worst;
}

inline CheckResult dual_pair_identity(Rng& rng, int trials, const AscentOptions& opt) {
    CheckResult res{"dual_pair_identity", false, 0.0, 1e-12,
                    "pairing beta against the shadow equals applying the functional to the image"};
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(t);
        res.worst = std::max(
            res.worst, dual_pair_residual(fixtures::random_cn_seq(rng, 4, 5, Exponent(2.0), Exponent(2.0)), rng, seed));
        res.worst =
            std::max(res.worst, dual_pair_residual(fixtures::random_cgrid_seq(rng, 6, 4, Exponent(2.0)), rng, seed));
        res.worst =
            std::max(res.worst, dual_pair_residual(fixtures::random_mat_seq(rng, 2, 4, Exponent(2.0)), rng, seed));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult pairing_identity(Rng& rng, int trials) {
    CheckResult res{"tuple_pairing_identity", false, 0.0, 1e-12,
                    "beta paired with the sequence of <T_i x, y> equals <(T beta) x, y>"};
    for (int t = 0; t < trials; ++t) {
        const auto tup = fixtures::random_tuple(rng, 3, 4, Exponent(2.0));
        const Eigen::VectorXcd x = unit_sphere_vector(rng, 3);
        const Eigen::VectorXcd y = unit_sphere_vector(rng, 3);
        const ScalarSeq beta = random_gaussian_seq(rng, 4);
        const cplx lhs = holder_pair(beta, pair_sequence(tup, x, y));
        const cplx rhs = y.dot(tup.combine(beta) * x);
        res.worst = std::max(res.worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult polarization(Rng& rng, int trials) {
    CheckResult res{"polarization_identity", false, 0.0, 1e-10,
                    "four-point expansion reproduces <T x, y>, scaled residual"};
    for (int t = 0; t < trials; ++t) {
        const auto tup = fixtures::random_tuple(rng, 4, 5, Exponent(2.0));
        const Eigen::VectorXcd x = 2.0 * gaussian_vector(rng, 4);
        const Eigen::VectorXcd y = 2.0 * gaussian_vector(rng, 4);
        double max_norm = 0.0;
        for (const auto& op : tup.ops) max_norm = std::max(max_norm, op.norm());
        const double scale = (x.norm() + y.norm()) * (x.norm() + y.norm()) * std::max(1.0, max_norm);
        res.worst = std::max(res.worst, polarization_residual(tup, x, y) / scale);
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult radius_sandwich(Rng& rng, int trials, const AscentOptions& opt) {
    CheckResult res{"radius_sandwich", false, 0.0, 1e-3,
                    "half the tuple norm <= joint radius <= tuple norm, relative slack"};
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)};
    for (int t = 0; t < trials; ++t) {
        const int d = 2 + static_cast<int>(rng.uniform() * 5);
        const int n = 1 + static_cast<int>(rng.uniform() * 8);
        const auto tup = fixtures::random_tuple(rng, d, n, ps[static_cast<std::size_t>(t) % ps.size()]);
        AscentOptions o = opt;
        o.seed = opt.seed + static_cast<std::uint64_t>(t) * 31;
        const auto joint = joint_numerical_radius(tup, o);
        std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> starts{{joint.witness, joint.witness}};
        const auto tn = tuple_norm(tup, o, starts);
        const double scale = std::max(1.0, tn.value);
        res.worst = std::max(res.worst, (0.5 * tn.value - joint.omega) / scale);
        res.worst = std::max(res.worst, (joint.omega - tn.value) / scale);
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult radius_duality(Rng& rng, int trials, const AscentOptions& opt) {
    CheckResult res{"radius_duality", false, 0.0, 2e-3,
                    "joint radius equals the supremum of single radii over the q-unit ball"};
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)};
    for (int t = 0; t < trials; ++t) {
        const int d = 2 + static_cast<int>(rng.uniform() * 3);
        const int n = 1 + static_cast<int>(rng.uniform() * 5);
        const auto tup = fixtures::random_tuple(rng, d, n, ps[static_cast<std::size_t>(t) % ps.size()]);
        AscentOptions o = opt;
        o.seed = opt.seed + static_cast<std::uint64_t>(t) * 73;
        res.worst = std::max(res.worst, radius_duality_check(tup, o).gap_rel);
    }
    res.pass = res.worst <= res.tolerance;
    return res;
}

inline CheckResult gradient_direction(Rng& rng, int trials) {
    CheckResult res{"sphere_gradient", false, 0.0, 1e-5,
                    "ascent direction matches central finite differences at non-degenerate points"};
    const std::vector<Exponent> ps{Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0)};
    int done = 0;
    int attempts = 0;
    while (done < trials && attempts < trials * 20) {
        ++attempts;
        const int d = 2 + static_cast<int>(rng.uniform() * 3);
        const auto tup = fixtures::random_tuple(rng, d, 3, ps[static_cast<std::size_t>(done) % ps.size()]);
        const Eigen::VectorXcd x = unit_sphere_vector(rng, d);
        bool degenerate = false;
        for (const auto& op : tup.ops)
            if (std::abs(x.dot(op * x)) < 1e-3) degenerate = true;
        if (degenerate) continue;

        const Eigen::VectorXcd grad = joint_radius_gradient(tup, x);
        Eigen::VectorXcd w = gaussian_vector(rng, d);
        w -= x.dot(w).real() * x; // tangent direction
        if (w.norm() < 1e-8) continue;
        w /= w.norm();

        const double h = 1e-6;
        const auto value_at = [&](double s) {
            Eigen::VectorXcd v = x + s * w;
            v /= v.norm();
            return joint_radius_objective(tup, v);
        };
        const double fd = (value_at(h) - value_at(-h)) / (2.0 * h);
        const double an = grad.dot(w).real();
        res.worst = std::max(res.worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        ++done;
    }
    res.pass = done == trials && res.worst <= res.tolerance;
    return res;
}

inline CheckResult certificate_fixtures(const AscentOptions& opt) {
    CheckResult res{"tail_certificates", false, 0.0, 0.0,
                    "inverse-sqrt shadow certifies at m(0.2) = 25; the basis family never below the horizon"};
    bool ok = true;

    const Family shadow = fixtures::inverse_sqrt_shadow_family(100);
    const auto cert = kolmogorov_certificate(shadow, Exponent(2.0), 0.2);
    ok = ok && cert.satisfied && cert.cutoff_m == 25;

    const Family basis = fixtures::basis_family(20);
    const auto basis_cert = kolmogorov_certificate(basis, Exponent(2.0), 0.5);
    ok = ok && basis_cert.cutoff_m == 20;
    const auto profile = tail_profile(basis, Exponent(2.0), {0, 5, 19});
    for (const auto& [m, tail] : profile) ok = ok && std::abs(tail - 1.0) <= 1e-12;

    AscentOptions o = opt;
    const auto rep = classify(fixtures::basis_seq(20), {0.5}, o);
    ok = ok && !rep.in_lpc;
    const auto rep2 = classify(fixtures::inverse_sqrt_basis_seq(100), {0.5, 0.3, 0.2}, o);
    ok = ok && rep2.in_lpc && !rep2.in_lp && std::abs(rep2.triple_norm - 1.0) <= 1e-3;

    res.pass = ok;
    res.worst = ok ? 0.0 : 1.0;
    return res;
}

} // namespace verify_detail

// The seeded self-check battery behind the `verify` command. `scale`
// multiplies the per-check instance counts; budgets come from `opt`.
inline std::vector<CheckResult> run_verification(const AscentOptions& opt, int scale = 1) {
    std::vector<CheckResult> results;
    Rng rng(opt.seed);
    results.push_back(verify_detail::holder_inequality(rng, 40 * scale));
    results.push_back(verify_detail::extremizer_tightness(rng, 40 * scale));
    results.push_back(verify_detail::norm_equality(rng, 8 * scale, opt));
    results.push_back(verify_detail::dual_pair_identity(rng, 10 * scale, opt));
    results.push_back(verify_detail::pairing_identity(rng, 50 * scale));
    results.push_back(verify_detail::polarization(rng, 50 * scale));
    results.push_back(verify_detail::radius_sandwich(rng, 6 * scale, opt));
    results.push_back(verify_detail::radius_duality(rng, 4 * scale, opt));
    results.push_back(verify_detail::gradient_direction(rng, 10 * scale));
    results.push_back(verify_detail::certificate_fixtures(opt));
    return results;
}

} // namespace lpc
