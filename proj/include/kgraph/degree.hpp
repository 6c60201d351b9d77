#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgraph {

/// Multi-index in N^k; the value of the degree functor.
///
/// The order conventions matter: m <= n is coordinatewise, and m < n is
/// *strictly* coordinatewise (these are different relations, not the strict
/// part of <=).  Arithmetic is checked; overflow throws.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::size_t rank, std::uint32_t fill = 0) : c_(rank, fill) {
        if (rank == 0) throw std::invalid_argument("Degree: rank 0 not allowed");
    }
    Degree(std::initializer_list<std::uint32_t> init) : c_(init) {
        if (c_.empty()) throw std::invalid_argument("Degree: rank 0 not allowed");
    }
    explicit Degree(std::vector<std::uint32_t> coords) : c_(std::move(coords)) {
        if (c_.empty()) throw std::invalid_argument("Degree: rank 0 not allowed");
    }

    std::size_t rank() const { return c_.size(); }
    std::uint32_t operator[](std::size_t i) const { return c_[i]; }
    std::uint32_t& operator[](std::size_t i) { return c_[i]; }
    const std::vector<std::uint32_t>& coords() const { return c_; }

    bool is_zero() const {
        for (auto x : c_) if (x != 0) return false;
        return true;
    }

    friend Degree operator+(const Degree& a, const Degree& b) {
        a.require_same_rank(b);
        Degree r(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            std::uint64_t s = std::uint64_t(a.c_[i]) + b.c_[i];
            if (s > std::numeric_limits<std::uint32_t>::max())
                throw std::overflow_error("Degree: addition overflow");
            r.c_[i] = static_cast<std::uint32_t>(s);
        }
        return r;
    }

    /// Coordinatewise difference; requires b <= a.
    friend Degree operator-(const Degree& a, const Degree& b) {
        a.require_same_rank(b);
        Degree r(a.rank());
        for (std::size_t i = 0; i < a.rank(); ++i) {
            if (b.c_[i] > a.c_[i])
                throw std::invalid_argument("Degree: subtraction underflow");
            r.c_[i] = a.c_[i] - b.c_[i];
        }
        return r;
    }

    friend bool operator==(const Degree& a, const Degree& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Degree& a, const Degree& b) { return a.c_ != b.c_; }

    /// Lexicographic order, for use as a map key only (not the lattice order).
    friend bool lex_less(const Degree& a, const Degree& b) { return a.c_ < b.c_; }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ',';
            os << c_[i];
        }
        os << ')';
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Degree& d) {
        return os << d.to_string();
    }

    void require_same_rank(const Degree& o) const {
        if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    }

private:
    std::vector<std::uint32_t> c_;
};

/// m <= n coordinatewise.
inline bool leq(const Degree& m, const Degree& n) {
    m.require_same_rank(n);
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (m[i] > n[i]) return false;
    return true;
}

/// m < n strictly in every coordinate.
inline bool lt_strict(const Degree& m, const Degree& n) {
    m.require_same_rank(n);
    for (std::size_t i = 0; i < m.rank(); ++i)
        if (m[i] >= n[i]) return false;
    return true;
}

/// Coordinatewise maximum m v n.
inline Degree degree_join(const Degree& m, const Degree& n) {
    m.require_same_rank(n);
    Degree r(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) r[i] = std::max(m[i], n[i]);
    return r;
}

/// The representative of m + H_n in {p : p < n}: coordinatewise m_i mod n_i.
/// Every n_i must be >= 1.
inline Degree degree_residue(const Degree& m, const Degree& n) {
    m.require_same_rank(n);
    Degree r(m.rank());
    for (std::size_t i = 0; i < m.rank(); ++i) {
        if (n[i] == 0) throw std::invalid_argument("degree_residue: zero modulus");
        r[i] = m[i] % n[i];
    }
    return r;
}

/// Residue for signed multi-indices (mathematical mod, result in [0, n)).
inline Degree degree_residue_signed(const std::vector<std::int64_t>& m, const Degree& n) {
    if (m.size() != n.rank()) throw std::invalid_argument("degree_residue: rank mismatch");
    Degree r(n.rank());
    for (std::size_t i = 0; i < n.rank(); ++i) {
        if (n[i] == 0) throw std::invalid_argument("degree_residue: zero modulus");
        std::int64_t v = m[i] % std::int64_t(n[i]);
        if (v < 0) v += n[i];
        r[i] = static_cast<std::uint32_t>(v);
    }
    return r;
}

/// A coset of H_n presented by its canonical representative (< modulus).
struct ResidueClass {
    Degree modulus;
    Degree representative;

    ResidueClass(const Degree& m, const Degree& n)
        : modulus(n), representative(degree_residue(m, n)) {
        for (std::size_t i = 0; i < n.rank(); ++i)
            if (n[i] == 0) throw std::invalid_argument("ResidueClass: zero modulus");
    }

    friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
        return a.modulus == b.modulus && a.representative == b.representative;
    }
};

/// Iterates all degrees p with p <= bound (the full box), in lexicographic
/// order; calls f(p) for each.  Deterministic enumeration order.
template <typename F>
void for_each_degree_leq(const Degree& bound, F&& f) {
    Degree p(bound.rank(), 0);
    while (true) {
        f(const_cast<const Degree&>(p));
        std::size_t i = bound.rank();
        for (;;) {
            if (i == 0) return;
            --i;
            if (p[i] < bound[i]) { ++p[i]; break; }
            p[i] = 0;
        }
    }
}

/// Iterates all degrees p with p < bound strictly coordinatewise.
template <typename F>
void for_each_degree_lt(const Degree& bound, F&& f) {
    for (std::size_t i = 0; i < bound.rank(); ++i)
        if (bound[i] == 0) return;
    Degree b(bound.rank());
    for (std::size_t i = 0; i < bound.rank(); ++i) b[i] = bound[i] - 1;
    for_each_degree_leq(b, std::forward<F>(f));
}

}  // namespace kgraph
