#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lpcompact/errors.hpp"
#include "lpcompact/exponent.hpp"
#include "lpcompact/greedy_net.hpp"
#include "lpcompact/scalar_seq.hpp"

namespace lpc {

// A finite sampled family of l^p points. The toolkit certifies sampled
// families and reports how the cutoff grows as the tolerance shrinks; it
// never claims anything about an infinite family.
struct Family {
    std::vector<ScalarSeq> members;
    std::string label;

    std::size_t max_support() const {
        std::size_t m = 0;
        for (const auto& s : members) m = std::max(m, s.support());
        return m;
    }
};

// Total-boundedness certificate: sup over members of the p-tail beyond
// cutoff_m, checked against epsilon. satisfied <=> sup_tail < epsilon.
struct Certificate {
    double epsilon = 0.0;
    std::size_t cutoff_m = 0;
    double sup_tail = 0.0;
    bool satisfied = false;
};

namespace detail {

// Per-member suffix sums of |x_i|^p: suffix[m] = sum_{i > m} |x_i|^p,
// accumulated right-to-left with compensation.
inline std::vector<double> tail_power_table(const ScalarSeq& x, double pv) {
    std::vector<double> suffix(x.support() + 1, 0.0);
    CompensatedSum acc;
    for (std::size_t i = x.support(); i-- > 0;) {
        acc.add(abs_pow(x.entries[i], pv));
        suffix[i] = acc.value();
    }
    return suffix;
}

class FamilyTails {
public:
    FamilyTails(const Family& fam, const Exponent& p) : pv_(p.value()), horizon_(fam.max_support()) {
        tables_.reserve(fam.members.size());
        for (const auto& m : fam.members) tables_.push_back(tail_power_table(m, pv_));
    }

    // sup over members of (sum_{i > m} |x_i|^p)^{1/p}
    double sup_tail(std::size_t m) const {
        double worst = 0.0;
        for (const auto& t : tables_)
            if (m < t.size() - 1) worst = std::max(worst, t[m]);
        return root_pow(worst, pv_);
    }

    std::size_t horizon() const { return horizon_; }

private:
    double pv_;
    std::size_t horizon_;
    std::vector<std::vector<double>> tables_;
};

} // namespace detail

// For each cutoff m, the exact max over members of the p-tail beyond m.
inline std::vector<std::pair<std::size_t, double>> tail_profile(const Family& fam, const Exponent& p,
                                                                const std::vector<std::size_t>& cutoffs) {
    if (p.is_inf())
        throw InfiniteExponentError("tail_profile: tails are not the p=inf criterion; use element nets instead");
    detail::FamilyTails tails(fam, p);
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(cutoffs.size());
    for (std::size_t m : cutoffs) out.emplace_back(m, tails.sup_tail(m));
    return out;
}

// Least cutoff m (exact scan, no shortcuts) whose sup-tail falls below
// epsilon. Finite-support families always certify by m = max support, where
// the tail is exactly 0; the informative output is how m grows as epsilon
// shrinks.
inline Certificate kolmogorov_certificate(const Family& fam, const Exponent& p, double epsilon) {
    if (p.is_inf()) throw InfiniteExponentError("kolmogorov_certificate: finite p required");
    if (!(epsilon > 0.0)) throw std::invalid_argument("kolmogorov_certificate: epsilon must be > 0");
    detail::FamilyTails tails(fam, p);
    Certificate cert;
    cert.epsilon = epsilon;
    for (std::size_t m = 0; m <= tails.horizon(); ++m) {
        const double t = tails.sup_tail(m);
        if (t < epsilon || m == tails.horizon()) {
            cert.cutoff_m = m;
            cert.sup_tail = t;
            cert.satisfied = t < epsilon;
            return cert;
        }
    }
    return cert; // unreachable: the loop returns at m = horizon
}

// Greedy farthest-point net in p-norm distance; every member ends up within
// epsilon of some net point.
inline NetResult epsilon_net(const Family& fam, const Exponent& p, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon_net: epsilon must be > 0");
    return greedy_net(fam.members, epsilon,
                      [&p](const ScalarSeq& a, const ScalarSeq& b) { return p_norm(difference(a, b), p); });
}

} // namespace lpc
