#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lpcompact/errors.hpp"
#include "lpcompact/exponent.hpp"
#include "lpcompact/optimize.hpp"
#include "lpcompact/rng.hpp"
#include "lpcompact/scalar_seq.hpp"

namespace lpc {

// Operator tuples T = (T_1, ..., T_N) on C^d with the inner-product
// convention <u, v> = v^H u, so <T x, y> = y^H T x. Pairing sequences,
// joint numerical range/radius, and the beta-route duality all live here.
struct OperatorTuple {
    int d;
    std::vector<Eigen::MatrixXcd> ops;
    Exponent p;

    OperatorTuple(int dim, std::vector<Eigen::MatrixXcd> operators, Exponent exponent)
        : d(dim), ops(std::move(operators)), p(exponent) {
        if (d < 1) throw std::invalid_argument("OperatorTuple: d >= 1 required");
        if (ops.empty()) throw EmptySequenceError("OperatorTuple: at least one operator required");
        if (p.is_inf() || p.value() <= 1.0)
            throw std::invalid_argument("OperatorTuple: p must lie in (1, inf)");
        for (const auto& t : ops)
            if (t.rows() != d || t.cols() != d) throw DimensionMismatchError("OperatorTuple: operator shape mismatch");
    }

    std::size_t size() const { return ops.size(); }

    // T beta = sum beta_i T_i (excess support ignored).
    Eigen::MatrixXcd combine(const ScalarSeq& beta) const {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
        const std::size_t n = std::min(size(), beta.support());
        for (std::size_t i = 0; i < n; ++i) acc += beta.entries[i] * ops[i];
        return acc;
    }
};

namespace detail {

inline ScalarSeq raw_pair_sequence(const OperatorTuple& t, const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
    ScalarSeq out = ScalarSeq::zeros(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out.entries[i] = y.dot(t.ops[i] * x);
    return out;
}

// Reported witnesses are gauge-fixed: first nonzero coordinate real positive.
inline Eigen::VectorXcd fix_phase(Eigen::VectorXcd v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > 1e-12) {
            v *= std::conj(v[i]) / a;
            break;
        }
    }
    return v;
}

} // namespace detail

// (<T_1 x, y>, <T_2 x, y>, ...) for unit vectors; nonunit inputs are
// normalized first.
inline ScalarSeq pair_sequence(const OperatorTuple& t, Eigen::VectorXcd x, Eigen::VectorXcd y) {
    if (x.size() != t.d || y.size() != t.d) throw DimensionMismatchError("pair_sequence: vector size mismatch");
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx < 1e-14 || ny < 1e-14) throw ZeroVectorError("pair_sequence: zero vector");
    x /= nx;
    y /= ny;
    return detail::raw_pair_sequence(t, x, y);
}

// ---------------------------------------------------------------------------
// Single-operator numerical radius by angle sweep:
//   w(M) = max_theta lambda_max( (e^{i theta} M + e^{-i theta} M^H) / 2 ),
// swept on a uniform grid then refined by golden-section search. The
// witness is the top eigenvector at the best angle.
// ---------------------------------------------------------------------------
struct SingleRadiusResult {
    double w = 0.0;
    double theta = 0.0;
    Eigen::VectorXcd witness;
};

inline SingleRadiusResult single_numerical_radius(const Eigen::MatrixXcd& m, int sweep_points = 720) {
    if (m.rows() != m.cols()) throw DimensionMismatchError("single_numerical_radius: square matrix required");
    const auto realpart_max = [&m](double theta) {
        const Eigen::MatrixXcd h =
            0.5 * (std::polar(1.0, theta) * m + std::polar(1.0, -theta) * m.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues()[m.rows() - 1];
    };

    double best_theta = 0.0;
    double best = realpart_max(0.0);
    for (int k = 1; k < sweep_points; ++k) {
        const double theta = 2.0 * M_PI * k / sweep_points;
        const double v = realpart_max(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }

    // Golden-section refinement in the bracket around the best sweep angle.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best_theta - 2.0 * M_PI / sweep_points;
    double b = best_theta + 2.0 * M_PI / sweep_points;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = realpart_max(c);
    double fd = realpart_max(d);
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = realpart_max(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = realpart_max(d);
        }
    }
    const double theta_star = 0.5 * (a + b);
    const Eigen::MatrixXcd h =
        0.5 * (std::polar(1.0, theta_star) * m + std::polar(1.0, -theta_star) * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const double value = es.eigenvalues()[m.rows() - 1];

    SingleRadiusResult res;
    res.witness = detail::fix_phase(es.eigenvectors().col(m.rows() - 1));
    res.theta = theta_star;
    res.w = std::max({best, value, 0.0});
    return res;
}

// ---------------------------------------------------------------------------
// Joint numerical radius: sup over unit x of (sum_i |<T_i x, x>|^p)^{1/p},
// by multistart projected gradient ascent on the sphere of C^d.
// ---------------------------------------------------------------------------

// Objective and its Riemannian (tangent-projected) gradient at unit x. The
// gradient of |z_i|^p with z_i = x^H T_i x is
//   p |z_i|^{p-2} ( conj(z_i) T_i x + z_i T_i^H x ),
// with the vanishing-term subgradient taken as 0 when z_i = 0 and p < 2.
inline double joint_radius_objective(const OperatorTuple& t, const Eigen::VectorXcd& x) {
    ScalarSeq z = detail::raw_pair_sequence(t, x, x);
    return p_norm(z, t.p);
}

inline Eigen::VectorXcd joint_radius_gradient(const OperatorTuple& t, const Eigen::VectorXcd& x) {
    const double pv = t.p.value();
    Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(t.d);
    double fsum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const cplx z = x.dot(t.ops[i] * x);
        const double az = std::abs(z);
        fsum += std::pow(az, pv);
        if (az < 1e-14) continue;
        const double coeff = pv * std::pow(az, pv - 2.0);
        grad += coeff * (std::conj(z) * (t.ops[i] * x) + z * (t.ops[i].adjoint() * x));
    }
    if (fsum <= 0.0) return Eigen::VectorXcd::Zero(t.d);
    grad *= std::pow(fsum, 1.0 / pv - 1.0) / pv; // chain rule through the outer p-th root
    const double radial = x.dot(grad).real();
    return grad - radial * x;
}

struct JointRadiusResult {
    double omega = 0.0;
    Eigen::VectorXcd witness;
};

namespace detail {

template <class Obj, class Grad>
std::pair<double, Eigen::VectorXcd> sphere_ascent(Eigen::VectorXcd x, Obj&& objective, Grad&& gradient,
                                                  int iters) {
    double fx = objective(x);
    double eta = 0.5;
    for (int it = 0; it < iters; ++it) {
        const Eigen::VectorXcd g = gradient(x);
        if (g.norm() < 1e-13) break;
        bool accepted = false;
        while (eta >= 1e-13) {
            Eigen::VectorXcd trial = x + eta * g;
            trial /= trial.norm();
            const double ft = objective(trial);
            if (ft > fx + 1e-16) {
                x = std::move(trial);
                fx = ft;
                eta = std::min(eta * 1.5, 1.0);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if (!accepted) break;
    }
    return {fx, std::move(x)};
}

} // namespace detail

inline JointRadiusResult joint_numerical_radius(const OperatorTuple& t, const AscentOptions& opt,
                                                const std::vector<Eigen::VectorXcd>& extra_starts = {}) {
    std::vector<Eigen::VectorXcd> starts = extra_starts;
    for (int k = 0; k < t.d; ++k) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(t.d);
        e[k] = 1.0;
        starts.push_back(e);
    }
    Rng rng(opt.seed);
    for (int i = 0; i < opt.restarts; ++i) starts.push_back(unit_sphere_vector(rng, t.d));

    JointRadiusResult best;
    best.witness = Eigen::VectorXcd::Zero(t.d);
    if (opt.restarts <= 0) return best;

    std::vector<double> initial(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) initial[i] = joint_radius_objective(t, starts[i]);
    const auto order = detail::top_indices(initial, static_cast<std::size_t>(opt.restarts));

    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        auto [val, x] = detail::sphere_ascent(
            starts[order[rank]], [&t](const Eigen::VectorXcd& v) { return joint_radius_objective(t, v); },
            [&t](const Eigen::VectorXcd& v) { return joint_radius_gradient(t, v); }, opt.iters);
        if (val > best.omega) {
            best.omega = val;
            best.witness = detail::fix_phase(x);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Tuple operator norm: sup over unit x, y of (sum_i |<T_i x, y>|^p)^{1/p},
// by ascent on the product of spheres.
// ---------------------------------------------------------------------------
struct TupleNormResult {
    double value = 0.0;
    Eigen::VectorXcd x;
    Eigen::VectorXcd y;
};

inline double tuple_norm_objective(const OperatorTuple& t, const Eigen::VectorXcd& x,
                                   const Eigen::VectorXcd& y) {
    return p_norm(detail::raw_pair_sequence(t, x, y), t.p);
}

// Gradients on the pair: for z_i = y^H T_i x,
//   grad_x += p |z_i|^{p-2} z_i (T_i^H y),  grad_y += p |z_i|^{p-2} conj(z_i) (T_i x).
inline std::pair<Eigen::VectorXcd, Eigen::VectorXcd> tuple_norm_gradient(const OperatorTuple& t,
                                                                         const Eigen::VectorXcd& x,
                                                                         const Eigen::VectorXcd& y) {
    const double pv = t.p.value();
    Eigen::VectorXcd gx = Eigen::VectorXcd::Zero(t.d);
    Eigen::VectorXcd gy = Eigen::VectorXcd::Zero(t.d);
    double fsum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const cplx z = y.dot(t.ops[i] * x);
        const double az = std::abs(z);
        fsum += std::pow(az, pv);
        if (az < 1e-14) continue;
        const double coeff = pv * std::pow(az, pv - 2.0);
        gx += coeff * z * (t.ops[i].adjoint() * y);
        gy += coeff * std::conj(z) * (t.ops[i] * x);
    }
    if (fsum <= 0.0) return {gx, gy};
    const double outer = std::pow(fsum, 1.0 / pv - 1.0) / pv;
    gx *= outer;
    gy *= outer;
    gx -= x.dot(gx).real() * x;
    gy -= y.dot(gy).real() * y;
    return {gx, gy};
}

inline TupleNormResult tuple_norm(const OperatorTuple& t, const AscentOptions& opt,
                                  const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>>&
                                      extra_starts = {}) {
    std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> starts = extra_starts;
    for (int k = 0; k < t.d; ++k)
        for (int l = 0; l < t.d; ++l) {
            Eigen::VectorXcd ex = Eigen::VectorXcd::Zero(t.d);
            Eigen::VectorXcd ey = Eigen::VectorXcd::Zero(t.d);
            ex[k] = 1.0;
            ey[l] = 1.0;
            starts.emplace_back(ex, ey);
        }
    for (const auto& op : t.ops) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues()[0] > 1e-14) starts.emplace_back(svd.matrixV().col(0), svd.matrixU().col(0));
    }
    Rng rng(opt.seed ^ 0x7e57ULL);
    for (int i = 0; i < opt.restarts; ++i)
        starts.emplace_back(unit_sphere_vector(rng, t.d), unit_sphere_vector(rng, t.d));

    TupleNormResult best;
    best.x = Eigen::VectorXcd::Zero(t.d);
    best.y = Eigen::VectorXcd::Zero(t.d);
    if (opt.restarts <= 0) return best;

    std::vector<double> initial(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i)
        initial[i] = tuple_norm_objective(t, starts[i].first, starts[i].second);
    const auto order = detail::top_indices(initial, static_cast<std::size_t>(opt.restarts));

    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        Eigen::VectorXcd x = starts[order[rank]].first;
        Eigen::VectorXcd y = starts[order[rank]].second;
        double fx = initial[order[rank]];
        double eta = 0.5;
        for (int it = 0; it < opt.iters; ++it) {
            auto [gx, gy] = tuple_norm_gradient(t, x, y);
            if (gx.norm() + gy.norm() < 1e-13) break;
            bool accepted = false;
            while (eta >= 1e-13) {
                Eigen::VectorXcd tx = x + eta * gx;
                Eigen::VectorXcd ty = y + eta * gy;
                tx /= tx.norm();
                ty /= ty.norm();
                const double ft = tuple_norm_objective(t, tx, ty);
                if (ft > fx + 1e-16) {
                    x = std::move(tx);
                    y = std::move(ty);
                    fx = ft;
                    eta = std::min(eta * 1.5, 1.0);
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if (!accepted) break;
        }
        if (fx > best.value) {
            best.value = fx;
            best.x = detail::fix_phase(x);
            best.y = detail::fix_phase(y);
        }
    }
    return best;
}

// Max entrywise residual of <T x, y> against its four-point polarization
// expansion (1/4) sum_k i^k <T(x + i^k y), x + i^k y>; x and y arbitrary.
inline double polarization_residual(const OperatorTuple& t, const Eigen::VectorXcd& x,
                                    const Eigen::VectorXcd& y) {
    if (x.size() != t.d || y.size() != t.d) throw DimensionMismatchError("polarization_residual: size mismatch");
    const cplx iu{0.0, 1.0};
    double residual = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
        const cplx lhs = y.dot(t.ops[n] * x);
        CompensatedComplexSum acc;
        cplx ik{1.0, 0.0};
        for (int k = 0; k < 4; ++k) {
            const Eigen::VectorXcd u = x + ik * y;
            acc.add(ik * u.dot(t.ops[n] * u));
            ik *= iu;
        }
        residual = std::max(residual, std::abs(lhs - 0.25 * acc.value()));
    }
    return residual;
}

// ---------------------------------------------------------------------------
// Radius duality: sup over unit-||.||_q beta of w(T beta), estimated by
// alternating the exact Holder extremizer of the diagonal pairing sequence
// against the angle-sweep witness. Each alternation is monotone, so the
// estimate is a certified lower bound.
// ---------------------------------------------------------------------------
struct DualityReport {
    double omega = 0.0;          // joint radius estimate
    double sup_w_beta = 0.0;     // sup_beta w(T beta) estimate
    double gap_rel = 0.0;        // |omega - sup_w_beta| / max(1, omega)
    ScalarSeq beta;              // best beta found
    Eigen::VectorXcd omega_witness;
};

inline DualityReport radius_duality_check(const OperatorTuple& t, const AscentOptions& opt) {
    const Exponent q = t.p.conjugate();
    DualityReport rep;

    const auto joint = joint_numerical_radius(t, opt);
    rep.omega = joint.omega;
    rep.omega_witness = joint.witness;

    const auto w_of = [&t](const ScalarSeq& beta) { return single_numerical_radius(t.combine(beta)); };

    auto alternate = [&](ScalarSeq beta) {
        double w = w_of(beta).w;
        for (int it = 0; it < 32; ++it) {
            const auto rad = w_of(beta);
            const ScalarSeq z = detail::raw_pair_sequence(t, rad.witness, rad.witness);
            if (z.is_zero()) break;
            ScalarSeq next = holder_extremizer(z, t.p);
            const double wn = w_of(next).w;
            if (wn <= w * (1.0 + 1e-14) + 1e-300) break;
            beta = std::move(next);
            w = wn;
        }
        return std::make_pair(w, beta);
    };

    std::vector<ScalarSeq> starts;
    if (joint.omega > 0.0) {
        const ScalarSeq z = detail::raw_pair_sequence(t, joint.witness, joint.witness);
        if (!z.is_zero()) starts.push_back(holder_extremizer(z, t.p));
    }
    for (std::size_t i = 1; i <= t.size(); ++i) {
        ScalarSeq e = ScalarSeq::zeros(t.size());
        e.entries[i - 1] = 1.0;
        starts.push_back(e);
    }
    Rng rng(opt.seed ^ 0xbe7aULL);
    const int random_starts = std::max(2, opt.restarts / 8);
    for (int i = 0; i < random_starts; ++i) starts.push_back(random_unit_seq(rng, t.size(), q));

    rep.beta = ScalarSeq::zeros(t.size());
    for (auto& b : starts) {
        auto [w, beta] = alternate(std::move(b));
        if (w > rep.sup_w_beta) {
            rep.sup_w_beta = w;
            rep.beta = std::move(beta);
        }
    }
    rep.gap_rel = std::abs(rep.omega - rep.sup_w_beta) / std::max(1.0, rep.omega);
    return rep;
}

// ---------------------------------------------------------------------------
// Joint numerical range sampling.
// ---------------------------------------------------------------------------
struct RangeSample {
    std::vector<ScalarSeq> points;         // <T x, x> per witness, support N
    std::vector<Eigen::VectorXcd> witnesses;
    std::uint64_t seed = 0;
    double omega_with_pool = 0.0; // radius estimate with the witnesses in the ascent pool
};

inline RangeSample numerical_range_sample(const OperatorTuple& t, std::size_t count, std::uint64_t seed,
                                          const AscentOptions& opt) {
    if (count < 1) throw std::invalid_argument("numerical_range_sample: count >= 1 required");
    RangeSample sample;
    sample.seed = seed;
    Rng rng(seed);
    sample.witnesses.reserve(count);
    sample.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXcd x = unit_sphere_vector(rng, t.d);
        sample.points.push_back(detail::raw_pair_sequence(t, x, x));
        sample.witnesses.push_back(detail::fix_phase(std::move(x)));
    }
    sample.omega_with_pool = joint_numerical_radius(t, opt, sample.witnesses).omega;
    return sample;
}

} // namespace lpc
