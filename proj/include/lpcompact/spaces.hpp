#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lpcompact/errors.hpp"
#include "lpcompact/exponent.hpp"
#include "lpcompact/rng.hpp"
#include "lpcompact/scalar_seq.hpp"

namespace lpc {

// Target spaces: concrete stand-ins for the Banach space the operator maps
// into. Each instance provides the same surface:
//
//   Element                      vector/matrix value type
//   norm(a)                      the instance norm
//   dual_apply(phi, a)           action of a dual-ball functional, |phi(a)| <= norm(a)
//   norming_functional(a)        unit functional with phi(a) = norm(a) (real, >= 0)
//   dual_slate()                 extreme-point candidates always worth sampling
//   random_functional(rng)       unit-dual-norm random sample
//   perturb(phi, rng, step)      local move for pattern search, reprojected to the ball
//
// Functionals are kept in concrete representations (weight vectors, atomic
// measures, rank-one pairs / trace-class matrices) so optimizers can walk
// them directly.

inline double p_norm(const Eigen::VectorXcd& v, const Exponent& p) {
    return p_norm(v.data(), static_cast<std::size_t>(v.size()), p);
}

namespace detail {

inline Eigen::VectorXcd normalized_p(const Eigen::VectorXcd& v, const Exponent& p, Eigen::Index fallback_dim) {
    const double nrm = p_norm(v, p);
    if (nrm < 1e-14) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(fallback_dim);
        e[0] = 1.0;
        return e;
    }
    return v / nrm;
}

} // namespace detail

// ---------------------------------------------------------------------------
// C^n with the l^r norm. Dual-ball functionals are weight vectors w with
// ||w||_{r'} <= 1 acting by the bilinear pairing sum w_i a_i.
// ---------------------------------------------------------------------------
class CnSpace {
public:
    using Element = Eigen::VectorXcd;
    struct Functional {
        Eigen::VectorXcd weights;
    };

    CnSpace(int n, Exponent r) : n_(n), r_(r), r_dual_(r.conjugate()) {
        if (n < 1) throw std::invalid_argument("CnSpace: n >= 1 required");
    }

    int dim() const { return n_; }
    const Exponent& r() const { return r_; }
    std::string kind() const { return "cn"; }

    Element zero_element() const { return Eigen::VectorXcd::Zero(n_); }

    double norm(const Element& a) const {
        check(a);
        return p_norm(a, r_);
    }

    cplx dual_apply(const Functional& phi, const Element& a) const {
        check(a);
        if (phi.weights.size() != n_) throw DimensionMismatchError("CnSpace: functional size mismatch");
        CompensatedComplexSum acc;
        for (Eigen::Index i = 0; i < n_; ++i) acc.add(phi.weights[i] * a[i]);
        return acc.value();
    }

    Functional norming_functional(const Element& a) const {
        check(a);
        ScalarSeq s(std::vector<cplx>(a.data(), a.data() + a.size()));
        if (s.is_zero()) return Functional{first_basis()};
        const ScalarSeq w = holder_extremizer(s, r_);
        return Functional{Eigen::Map<const Eigen::VectorXcd>(w.entries.data(), n_)};
    }

    std::vector<Functional> dual_slate() const {
        std::vector<Functional> slate;
        slate.reserve(n_);
        for (int k = 0; k < n_; ++k) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n_);
            e[k] = 1.0;
            slate.push_back(Functional{e});
        }
        return slate;
    }

    Functional random_functional(Rng& rng) const {
        return Functional{detail::normalized_p(gaussian_vector(rng, n_), r_dual_, n_)};
    }

    Functional perturb(const Functional& phi, Rng& rng, double step) const {
        Eigen::VectorXcd w = phi.weights + step * gaussian_vector(rng, n_);
        return Functional{detail::normalized_p(w, r_dual_, n_)};
    }

    void validate_element(const Element& a) const { check(a); }

private:
    Eigen::VectorXcd first_basis() const {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n_);
        e[0] = 1.0;
        return e;
    }
    void check(const Element& a) const {
        if (a.size() != n_) throw DimensionMismatchError("CnSpace: element size mismatch");
    }
    int n_;
    Exponent r_;
    Exponent r_dual_;
};

// ---------------------------------------------------------------------------
// Continuous functions sampled on a finite point set, sup norm. Dual-ball
// functionals are finite atomic measures: weight vectors with total
// variation <= 1; unimodular point masses are the extreme points.
// ---------------------------------------------------------------------------
class GridFunctionSpace {
public:
    using Element = Eigen::VectorXcd;
    struct Functional {
        Eigen::VectorXcd weights; // atom j sits at grid point j
    };

    explicit GridFunctionSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) throw std::invalid_argument("GridFunctionSpace: at least one point required");
    }
    explicit GridFunctionSpace(int npoints) {
        if (npoints < 1) throw std::invalid_argument("GridFunctionSpace: at least one point required");
        for (int i = 0; i < npoints; ++i) labels_.push_back("s" + std::to_string(i));
    }

    int points() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::string kind() const { return "cgrid"; }

    Element zero_element() const { return Eigen::VectorXcd::Zero(points()); }

    double norm(const Element& f) const {
        check(f);
        return f.cwiseAbs().maxCoeff();
    }

    cplx dual_apply(const Functional& mu, const Element& f) const {
        check(f);
        if (mu.weights.size() != points()) throw DimensionMismatchError("GridFunctionSpace: measure size mismatch");
        CompensatedComplexSum acc;
        for (Eigen::Index j = 0; j < f.size(); ++j) acc.add(mu.weights[j] * f[j]);
        return acc.value();
    }

    // Unimodular point mass at a maximal-modulus point.
    Functional norming_functional(const Element& f) const {
        check(f);
        Eigen::Index best = 0;
        double best_abs = -1.0;
        for (Eigen::Index j = 0; j < f.size(); ++j) {
            const double a = std::abs(f[j]);
            if (a > best_abs) {
                best_abs = a;
                best = j;
            }
        }
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(points());
        w[best] = best_abs > 0.0 ? std::conj(f[best]) / best_abs : cplx{1.0, 0.0};
        return Functional{w};
    }

    std::vector<Functional> dual_slate() const {
        std::vector<Functional> slate;
        slate.reserve(points());
        for (int j = 0; j < points(); ++j) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(points());
            w[j] = 1.0;
            slate.push_back(Functional{w});
        }
        return slate;
    }

    Functional random_functional(Rng& rng) const {
        // Alternate between a random unimodular point mass and a spread
        // atomic measure with total variation 1.
        if (rng.uniform() < 0.5) {
            Eigen::VectorXcd w = Eigen::VectorXcd::Zero(points());
            const int j = static_cast<int>(rng.uniform() * points()) % points();
            const double theta = rng.uniform_in(0.0, 2.0 * M_PI);
            w[j] = std::polar(1.0, theta);
            return Functional{w};
        }
        return Functional{tv_normalized(gaussian_vector(rng, points()))};
    }

    Functional perturb(const Functional& mu, Rng& rng, double step) const {
        Eigen::VectorXcd w = mu.weights + step * gaussian_vector(rng, points());
        return Functional{tv_normalized(w)};
    }

    void validate_element(const Element& f) const { check(f); }

private:
    Eigen::VectorXcd tv_normalized(const Eigen::VectorXcd& w) const {
        const double tv = w.cwiseAbs().sum();
        if (tv < 1e-14) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(points());
            e[0] = 1.0;
            return e;
        }
        return w / tv;
    }
    void check(const Element& f) const {
        if (f.size() != points()) throw DimensionMismatchError("GridFunctionSpace: element size mismatch");
    }
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// d x d complex matrices with the operator norm (largest singular value).
// The dual ball carries two sampled representations: rank-one functionals
// T -> y^* T x with unit x, y, and trace functionals T -> tr(T G) with
// trace norm of G at most 1. Rank-one functionals suffice for norms; trace
// samples stress the full dual-ball supremum.
// ---------------------------------------------------------------------------
class MatrixSpace {
public:
    using Element = Eigen::MatrixXcd;

    struct RankOneFunctional {
        Eigen::VectorXcd x;
        Eigen::VectorXcd y;
    };
    struct TraceFunctional {
        Eigen::MatrixXcd g;
    };
    using Functional = std::variant<RankOneFunctional, TraceFunctional>;

    explicit MatrixSpace(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("MatrixSpace: d >= 1 required");
    }

    int dim() const { return d_; }
    std::string kind() const { return "mat"; }

    Element zero_element() const { return Eigen::MatrixXcd::Zero(d_, d_); }

    double norm(const Element& t) const {
        check(t);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t);
        return svd.singularValues()[0];
    }

    cplx dual_apply(const Functional& phi, const Element& t) const {
        check(t);
        if (const auto* r1 = std::get_if<RankOneFunctional>(&phi)) {
            if (r1->x.size() != d_ || r1->y.size() != d_)
                throw DimensionMismatchError("MatrixSpace: rank-one functional size mismatch");
            return (r1->y.adjoint() * t * r1->x)(0, 0);
        }
        const auto& tr = std::get<TraceFunctional>(phi);
        if (tr.g.rows() != d_ || tr.g.cols() != d_)
            throw DimensionMismatchError("MatrixSpace: trace functional size mismatch");
        return (t * tr.g).trace();
    }

    // Top singular pair: phi(T) = u_1^* T v_1 = sigma_max(T).
    Functional norming_functional(const Element& t) const {
        check(t);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.singularValues()[0] < 1e-300) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d_);
            e[0] = 1.0;
            return RankOneFunctional{e, e};
        }
        return RankOneFunctional{svd.matrixV().col(0), svd.matrixU().col(0)};
    }

    std::vector<Functional> dual_slate() const {
        std::vector<Functional> slate;
        slate.reserve(static_cast<std::size_t>(d_) * d_ + 1);
        for (int k = 0; k < d_; ++k)
            for (int l = 0; l < d_; ++l) {
                Eigen::VectorXcd x = Eigen::VectorXcd::Zero(d_);
                Eigen::VectorXcd y = Eigen::VectorXcd::Zero(d_);
                x[k] = 1.0;
                y[l] = 1.0;
                slate.push_back(RankOneFunctional{x, y});
            }
        slate.push_back(TraceFunctional{Eigen::MatrixXcd::Identity(d_, d_) / static_cast<double>(d_)});
        return slate;
    }

    Functional random_functional(Rng& rng) const {
        if (rng.uniform() < 0.5)
            return RankOneFunctional{unit_sphere_vector(rng, d_), unit_sphere_vector(rng, d_)};
        return TraceFunctional{trace_normalized(gaussian_matrix(rng, d_, d_))};
    }

    Functional perturb(const Functional& phi, Rng& rng, double step) const {
        if (const auto* r1 = std::get_if<RankOneFunctional>(&phi)) {
            Eigen::VectorXcd x = r1->x + step * gaussian_vector(rng, d_);
            Eigen::VectorXcd y = r1->y + step * gaussian_vector(rng, d_);
            const double nx = x.norm();
            const double ny = y.norm();
            if (nx < 1e-14 || ny < 1e-14) return phi;
            return RankOneFunctional{x / nx, y / ny};
        }
        const auto& tr = std::get<TraceFunctional>(phi);
        return TraceFunctional{trace_normalized(tr.g + step * gaussian_matrix(rng, d_, d_))};
    }

    static bool is_rank_one(const Functional& phi) { return std::holds_alternative<RankOneFunctional>(phi); }

    void validate_element(const Element& t) const { check(t); }

private:
    Eigen::MatrixXcd trace_normalized(const Eigen::MatrixXcd& g) const {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g);
        const double trace_norm = svd.singularValues().sum();
        if (trace_norm < 1e-14) return Eigen::MatrixXcd::Identity(d_, d_) / static_cast<double>(d_);
        return g / trace_norm;
    }
    void check(const Element& t) const {
        if (t.rows() != d_ || t.cols() != d_) throw DimensionMismatchError("MatrixSpace: element shape mismatch");
    }
    int d_;
};

// Deterministic dual-ball sample: the extreme-point slate first, random
// fill afterwards, truncated to the requested count.
template <class Space>
std::vector<typename Space::Functional> sample_dual_ball(const Space& space, std::size_t count,
                                                         std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_dual_ball: count >= 1 required");
    std::vector<typename Space::Functional> out = space.dual_slate();
    Rng rng(seed);
    while (out.size() < count) out.push_back(space.random_functional(rng));
    out.resize(count);
    return out;
}

} // namespace lpc
