#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpcompact/cfun.hpp"
#include "lpcompact/compactness.hpp"
#include "lpcompact/diagonal_operator.hpp"
#include "lpcompact/hilbert.hpp"
#include "lpcompact/json_writer.hpp"
#include "lpcompact/version.hpp"

namespace lpc {

// Everything a report needs to be reproduced: tool identity, seed, budgets.
// Identical RunMeta plus identical input must produce byte-identical files.
struct RunMeta {
    std::string command;
    std::string input_path;
    std::uint64_t seed = 1;
    int restarts = 32;
    int iters = 200;
    std::vector<double> eps_grid{0.5, 0.3, 0.2};
};

inline JsonValue meta_json(const RunMeta& meta) {
    JsonValue j = JsonValue::object();
    j.set("tool", kToolName);
    j.set("version", kToolVersion);
    j.set("command", meta.command);
    j.set("input", meta.input_path);
    j.set("seed", meta.seed);
    j.set("restarts", meta.restarts);
    j.set("iters", meta.iters);
    JsonValue eps = JsonValue::array();
    for (double e : meta.eps_grid) eps.push(e);
    j.set("eps_grid", std::move(eps));
    return j;
}

inline JsonValue complex_json(cplx z) {
    JsonValue pair = JsonValue::array();
    pair.push(z.real());
    pair.push(z.imag());
    return pair;
}

inline JsonValue seq_json(const ScalarSeq& s) {
    JsonValue arr = JsonValue::array();
    for (cplx z : s.entries) arr.push(complex_json(z));
    return arr;
}

inline JsonValue vector_json(const Eigen::VectorXcd& v) {
    JsonValue arr = JsonValue::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push(complex_json(v[i]));
    return arr;
}

inline JsonValue certificate_json(const Certificate& c) {
    JsonValue j = JsonValue::object();
    j.set("epsilon", c.epsilon);
    j.set("m", c.cutoff_m);
    j.set("sup_tail", c.sup_tail);
    j.set("satisfied", c.satisfied);
    return j;
}

// The identity labels carried by each report name what the numbers
// instantiate; consumers can match on them without reading this code.
inline JsonValue membership_json(const MembershipReport& rep, const RunMeta& meta) {
    JsonValue j = JsonValue::object();
    j.set("meta", meta_json(meta));

    JsonValue input = JsonValue::object();
    input.set("space", rep.space_kind);
    input.set("p", rep.p_label);
    input.set("domain", rep.domain_label);
    input.set("n_terms", rep.n_terms);
    j.set("input", std::move(input));

    JsonValue norms = JsonValue::object();
    norms.set("strong_norm", rep.strong_norm);
    norms.set("triple_norm", rep.triple_norm);
    norms.set("operator_norm", rep.operator_norm);
    norms.set("norm_equality_gap", rep.norm_equality_gap);
    norms.set("norm_equality_label", "operator norm of the diagonal map vs dual-shadow sup");
    norms.set("proof_chain_ok", rep.proof_chain_ok);
    j.set("norms", std::move(norms));

    JsonValue certs = JsonValue::array();
    for (const auto& c : rep.shadow_certificates) certs.push(certificate_json(c));
    j.set("shadow_certificates", std::move(certs));

    JsonValue strong_certs = JsonValue::array();
    for (const auto& c : rep.strong_certificates) strong_certs.push(certificate_json(c));
    j.set("strong_certificates", std::move(strong_certs));

    if (!rep.inf_net_sizes.empty()) {
        JsonValue nets = JsonValue::array();
        for (const auto& [eps, size] : rep.inf_net_sizes) {
            JsonValue n = JsonValue::object();
            n.set("epsilon", eps);
            n.set("net_size", size);
            nets.push(std::move(n));
        }
        j.set("component_nets", std::move(nets));
    }

    JsonValue membership = JsonValue::object();
    membership.set("in_lp", rep.in_lp);
    membership.set("in_lpb", rep.in_lpb);
    membership.set("in_lpc", rep.in_lpc);
    membership.set("window_note",
                   "flags describe tail decay inside the truncation window; they are not claims "
                   "about an infinite extension");
    j.set("membership", std::move(membership));

    j.set("max_entry_bound", rep.max_entry_bound);
    if (rep.space_kind == "mat") {
        JsonValue dual = JsonValue::object();
        dual.set("rank_one_estimate", rep.rank_one_estimate);
        dual.set("general_estimate", rep.general_estimate);
        dual.set("gap", std::abs(rep.general_estimate - rep.rank_one_estimate));
        j.set("dual_ball_routes", std::move(dual));
    }
    return j;
}

inline std::string tail_profile_csv(const std::vector<std::pair<std::size_t, double>>& profile) {
    std::string out = "m,sup_tail\n";
    char buf[64];
    for (const auto& [m, tail] : profile) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", m, tail);
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Joint numerical range / radius reporting.
// ---------------------------------------------------------------------------
struct RadiusReport {
    double omega = 0.0;
    Eigen::VectorXcd omega_witness;
    double tuple_norm_value = 0.0;
    Eigen::VectorXcd norm_x, norm_y;
    std::vector<double> single_radii;
    double sup_w_beta = 0.0;
    ScalarSeq beta_witness;
    double duality_gap_rel = 0.0;
    double sandwich_lower_margin = 0.0; // omega - ||T||/2
    double sandwich_upper_margin = 0.0; // ||T|| - omega
    bool sandwich_ok = false;
};

inline RadiusReport build_radius_report(const OperatorTuple& t, const AscentOptions& opt,
                                        double sandwich_tol = 1e-3) {
    RadiusReport rep;
    const auto duality = radius_duality_check(t, opt);
    rep.omega = duality.omega;
    rep.omega_witness = duality.omega_witness;
    rep.sup_w_beta = duality.sup_w_beta;
    rep.beta_witness = duality.beta;
    rep.duality_gap_rel = duality.gap_rel;

    std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> starts;
    if (rep.omega_witness.size() == t.d && rep.omega_witness.norm() > 0.5)
        starts.emplace_back(rep.omega_witness, rep.omega_witness);
    const auto tn = tuple_norm(t, opt, starts);
    rep.tuple_norm_value = tn.value;
    rep.norm_x = tn.x;
    rep.norm_y = tn.y;

    for (const auto& op : t.ops) rep.single_radii.push_back(single_numerical_radius(op).w);

    const double scale = std::max(1.0, rep.tuple_norm_value);
    rep.sandwich_lower_margin = rep.omega - 0.5 * rep.tuple_norm_value;
    rep.sandwich_upper_margin = rep.tuple_norm_value - rep.omega;
    rep.sandwich_ok = rep.sandwich_lower_margin >= -sandwich_tol * scale &&
                      rep.sandwich_upper_margin >= -sandwich_tol * scale;
    return rep;
}

inline JsonValue radius_json(const RadiusReport& rep, const OperatorTuple& t, const RunMeta& meta) {
    JsonValue j = JsonValue::object();
    j.set("meta", meta_json(meta));

    JsonValue input = JsonValue::object();
    input.set("d", t.d);
    input.set("p", t.p.str());
    input.set("n_operators", t.size());
    j.set("input", std::move(input));

    JsonValue radius = JsonValue::object();
    radius.set("omega", rep.omega);
    radius.set("omega_label", "joint numerical radius: sup over unit x of the pairing p-norm");
    radius.set("omega_witness", vector_json(rep.omega_witness));
    radius.set("tuple_norm", rep.tuple_norm_value);
    radius.set("tuple_norm_label", "sup over unit x,y of the pairing p-norm");
    radius.set("norm_witness_x", vector_json(rep.norm_x));
    radius.set("norm_witness_y", vector_json(rep.norm_y));
    j.set("radius", std::move(radius));

    JsonValue singles = JsonValue::array();
    for (double w : rep.single_radii) singles.push(w);
    j.set("single_radii", std::move(singles));

    JsonValue sandwich = JsonValue::object();
    sandwich.set("label", "half the tuple norm <= joint radius <= tuple norm");
    sandwich.set("lower_margin", rep.sandwich_lower_margin);
    sandwich.set("upper_margin", rep.sandwich_upper_margin);
    sandwich.set("ok", rep.sandwich_ok);
    j.set("sandwich", std::move(sandwich));

    JsonValue duality = JsonValue::object();
    duality.set("label", "joint radius equals sup over q-unit beta of w(T beta)");
    duality.set("sup_w_beta", rep.sup_w_beta);
    duality.set("gap_rel", rep.duality_gap_rel);
    duality.set("beta_witness", seq_json(rep.beta_witness));
    j.set("duality", std::move(duality));
    return j;
}

// Tail certificates of the sampled joint range, and the quantitative
// comparison between the diagonal family {<T x, x>} and the full pairing
// family {<T x, y>}: polarization bounds every xy-tail by twice the worst
// diagonal tail, so the measured ratio is reported against that constant.
struct RangeTailReport {
    std::vector<Certificate> diagonal_certificates; // family {<T x, x>}
    std::vector<Certificate> pairing_certificates;  // family {<T x, y>}
    double max_tail_ratio = 0.0;                    // sup_m xy-tail(m) / xx-tail(m)
    double polarization_factor = 2.0;
};

inline RangeTailReport range_tail_report(const OperatorTuple& t, const RangeSample& sample,
                                         const std::vector<double>& eps_grid, std::uint64_t seed) {
    RangeTailReport rep;
    Family diag{sample.points, "diagonal pairings"};

    Family pairing{{}, "two-sided pairings"};
    Rng rng(seed ^ 0xf00dULL);
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const Eigen::VectorXcd x = unit_sphere_vector(rng, t.d);
        const Eigen::VectorXcd y = unit_sphere_vector(rng, t.d);
        pairing.members.push_back(pair_sequence(t, x, y));
    }

    for (double eps : eps_grid) {
        rep.diagonal_certificates.push_back(kolmogorov_certificate(diag, t.p, eps));
        rep.pairing_certificates.push_back(kolmogorov_certificate(pairing, t.p, eps));
    }

    std::vector<std::size_t> cutoffs;
    for (std::size_t m = 0; m < t.size(); ++m) cutoffs.push_back(m);
    const auto diag_tails = tail_profile(diag, t.p, cutoffs);
    const auto pair_tails = tail_profile(pairing, t.p, cutoffs);
    for (std::size_t k = 0; k < cutoffs.size(); ++k) {
        if (diag_tails[k].second > 1e-14)
            rep.max_tail_ratio = std::max(rep.max_tail_ratio, pair_tails[k].second / diag_tails[k].second);
    }
    return rep;
}

inline JsonValue range_tail_json(const RangeTailReport& rep) {
    JsonValue j = JsonValue::object();
    JsonValue diag = JsonValue::array();
    for (const auto& c : rep.diagonal_certificates) diag.push(certificate_json(c));
    j.set("diagonal_certificates", std::move(diag));
    JsonValue pairing = JsonValue::array();
    for (const auto& c : rep.pairing_certificates) pairing.push(certificate_json(c));
    j.set("pairing_certificates", std::move(pairing));
    j.set("max_tail_ratio", rep.max_tail_ratio);
    j.set("polarization_factor", rep.polarization_factor);
    j.set("note", "sampled-family certificates; finite tuples always certify at the horizon");
    return j;
}

// One row per sampled range point: N pairing coordinates then the witness.
inline std::string range_sample_csv(const RangeSample& sample, std::size_t n_ops, int d) {
    std::string out;
    for (std::size_t i = 0; i < n_ops; ++i) {
        out += "re_" + std::to_string(i + 1) + ",im_" + std::to_string(i + 1) + ",";
    }
    for (int k = 0; k < d; ++k) {
        out += "wre_" + std::to_string(k + 1) + ",wim_" + std::to_string(k + 1);
        out += (k + 1 < d) ? "," : "\n";
    }
    char buf[64];
    for (std::size_t r = 0; r < sample.points.size(); ++r) {
        for (std::size_t i = 0; i < n_ops; ++i) {
            const cplx z = sample.points[r].at(i);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", z.real(), z.imag());
            out += buf;
        }
        const auto& w = sample.witnesses[r];
        for (int k = 0; k < d; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", w[k].real(), w[k].imag());
            out += buf;
            out += (k + 1 < d) ? "," : "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid-function reporting.
// ---------------------------------------------------------------------------
inline JsonValue continuity_bound_json(const ContinuityBoundReport& rep) {
    JsonValue j = JsonValue::object();
    j.set("epsilon", rep.epsilon);
    j.set("cutoff_m", rep.cutoff_m);
    j.set("tail_at_cutoff", rep.tail_at_cutoff);
    j.set("head_threshold", rep.head_threshold);
    j.set("ball_radius_hops", rep.ball_radius_hops);
    j.set("ball_points", rep.ball_points);
    j.set("measured_max", rep.measured_max);
    j.set("bound", rep.bound);
    j.set("bound_label", "neighbourhood max of the p-th power gap against (1 + 2^{p+1}) eps^p");
    j.set("ok", rep.ok);
    return j;
}

inline std::string modulus_csv(const std::vector<std::pair<double, double>>& modulus) {
    std::string out = "delta,omega\n";
    char buf[64];
    for (const auto& [delta, omega] : modulus) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", delta, omega);
        out += buf;
    }
    return out;
}

} // namespace lpc
