#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lpc {

// An exponent p in [1, inf] together with the Holder conjugacy 1/p + 1/q = 1.
// p = inf is a distinguished case, never a float sentinel: every consumer
// branches on is_inf() explicitly, which keeps powers like |x|^p from
// silently overflowing.
class Exponent {
public:
    explicit Exponent(double p) : value_(p), inf_(false) {
        if (!(p >= 1.0) || std::isinf(p))
            throw std::invalid_argument("Exponent: p must be a finite real >= 1 (use Exponent::infinity())");
    }

    static Exponent infinity() {
        Exponent e;
        e.inf_ = true;
        return e;
    }

    bool is_inf() const { return inf_; }
    bool is_one() const { return !inf_ && value_ == 1.0; }

    // Finite value; invalid for p = inf.
    double value() const {
        if (inf_) throw std::logic_error("Exponent::value() on p = inf");
        return value_;
    }

    // Value as a double with inf mapped to +inf; for display and comparisons.
    double as_double() const { return inf_ ? std::numeric_limits<double>::infinity() : value_; }

    Exponent conjugate() const {
        if (inf_) return Exponent(1.0);
        if (value_ == 1.0) return infinity();
        if (value_ == 2.0) return Exponent(2.0);
        return Exponent(value_ / (value_ - 1.0));
    }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

    std::string str() const {
        if (inf_) return "inf";
        double ip = 0.0;
        if (std::modf(value_, &ip) == 0.0) return std::to_string(static_cast<long long>(ip));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", value_);
        return buf;
    }

private:
    Exponent() : value_(0.0), inf_(true) {}
    double value_;
    bool inf_;
};

inline Exponent conjugate(const Exponent& p) { return p.conjugate(); }

// Parses "inf", plain numbers, and small ratios like "4/3".
inline Exponent parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "oo")
        return Exponent::infinity();
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = std::stod(text.substr(0, slash));
        const double den = std::stod(text.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("parse_exponent: zero denominator");
        return Exponent(num / den);
    }
    return Exponent(std::stod(text));
}

} // namespace lpc
