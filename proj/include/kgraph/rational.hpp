#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace kgraph {

/// Exact rational arithmetic on 64-bit numerator/denominator.
/// All operations check for overflow and throw; values in this project are
/// tiny (denominators bounded by products of a few window lengths), so an
/// overflow always indicates a bug rather than a capacity problem.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }

    double to_double() const { return double(num_) / double(den_); }

    /// "p/q" (or just "p" when q == 1); exact, for CSV emission.
    std::string to_string() const {
        std::ostringstream os;
        os << num_;
        if (den_ != 1) os << '/' << den_;
        return os.str();
    }

    /// Decimal rendering with the given number of significant digits.
    std::string to_decimal(int sig_digits = 12) const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    using i128 = __int128;

    static Rational from128(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_, den_;
};

inline std::string Rational::to_decimal(int sig_digits) const {
    if (num_ == 0) return "0";
    std::ostringstream os;
    os.precision(sig_digits);
    os << to_double();
    return os.str();
}

}  // namespace kgraph
