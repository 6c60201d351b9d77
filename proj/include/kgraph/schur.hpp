#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/fock.hpp"
#include "kgraph/rational.hpp"
#include "kgraph/report.hpp"

namespace kgraph {

inline std::uint32_t ceil_half(std::uint32_t x) { return (x + 1) / 2; }

/// Tent-shaped weight matrix on {0..m-1}^2 with entries
/// min(i+1, j+1, m-i, m-j) / Z, where Z = ceil(m/2)+1 for even m and
/// ceil(m/2)+2 for odd m; evaluation is zero outside the index square.
class KappaMatrix {
public:
    explicit KappaMatrix(std::uint32_t m) : m_(m) {
        if (m == 0) throw std::invalid_argument("kappa: m must be >= 1");
        std::uint32_t l = ceil_half(m);
        denom_ = (m % 2 == 0) ? l + 1 : l + 2;
    }

    std::uint32_t m() const { return m_; }
    std::int64_t denominator() const { return denom_; }

    /// Extended evaluation: zero outside {0..m-1}^2.
    Rational at(std::int64_t i, std::int64_t j) const {
        if (i < 0 || j < 0 || i >= std::int64_t(m_) || j >= std::int64_t(m_)) return Rational(0);
        std::int64_t v = std::min(std::min(i + 1, j + 1),
                                  std::min(std::int64_t(m_) - i, std::int64_t(m_) - j));
        return Rational(v, denom_);
    }

private:
    std::uint32_t m_;
    std::int64_t denom_;
};

inline KappaMatrix kappa(std::uint32_t m) { return KappaMatrix(m); }

/// The rank-2 weight Delta_n = (kappa_{n1} (x) A_{n2} + A_{n1} (x)
/// kappa_{n2}) / 2, evaluated entrywise as (kappa_{n1}(i1,j1) +
/// kappa_{n2}(i2,j2)) / 2 with the zero-extended kappas.
class DeltaTensor {
public:
    explicit DeltaTensor(const Degree& n)
        : n_(n), k1_(n[0]), k2_(n[1]) {
        if (n.rank() != 2) throw std::invalid_argument("delta: rank-2 degree required");
    }

    const Degree& n() const { return n_; }
    const KappaMatrix& kappa1() const { return k1_; }
    const KappaMatrix& kappa2() const { return k2_; }

    Rational at(std::int64_t i1, std::int64_t i2, std::int64_t j1, std::int64_t j2) const {
        return (k1_.at(i1, j1) + k2_.at(i2, j2)) * Rational(1, 2);
    }

    /// Dense matrix view on the n1 n2 grid, index (i1, i2) -> i1*n2 + i2.
    std::vector<std::vector<Rational>> grid() const {
        std::size_t dim = std::size_t(n_[0]) * n_[1];
        std::vector<std::vector<Rational>> g(dim, std::vector<Rational>(dim));
        for (std::uint32_t i1 = 0; i1 < n_[0]; ++i1)
            for (std::uint32_t i2 = 0; i2 < n_[1]; ++i2)
                for (std::uint32_t j1 = 0; j1 < n_[0]; ++j1)
                    for (std::uint32_t j2 = 0; j2 < n_[1]; ++j2)
                        g[i1 * n_[1] + i2][j1 * n_[1] + j2] = at(i1, i2, j1, j2);
        return g;
    }

private:
    Degree n_;
    KappaMatrix k1_, k2_;
};

inline DeltaTensor delta(const Degree& n) { return DeltaTensor(n); }

// ---------------------------------------------------------------------------
// Numerical certificates (Eigen-backed)
// ---------------------------------------------------------------------------

/// Minimum eigenvalue >= -tol for a symmetric real matrix.
inline bool psd_check(const std::vector<std::vector<double>>& m, double tol = 1e-10) {
    const std::size_t dim = m.size();
    Eigen::MatrixXd a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (m[i].size() != dim) throw std::invalid_argument("psd_check: not square");
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = m[i][j];
    }
    if (!a.isApprox(a.transpose(), 1e-14))
        throw std::invalid_argument("psd_check: matrix not symmetric");
    if (dim == 0) return true;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

inline std::vector<std::vector<double>> to_double_matrix(const std::vector<std::vector<Rational>>& m) {
    std::vector<std::vector<double>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].resize(m[i].size());
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = m[i][j].to_double();
    }
    return out;
}

inline bool psd_check(const KappaMatrix& k, double tol = 1e-10) {
    std::vector<std::vector<Rational>> m(k.m(), std::vector<Rational>(k.m()));
    for (std::uint32_t i = 0; i < k.m(); ++i)
        for (std::uint32_t j = 0; j < k.m(); ++j) m[i][j] = k.at(i, j);
    return psd_check(to_double_matrix(m), tol);
}

inline bool psd_check(const DeltaTensor& d, double tol = 1e-10) {
    return psd_check(to_double_matrix(d.grid()), tol);
}

inline double spectral_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::MatrixXcd gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return top <= 0 ? 0.0 : std::sqrt(top);
}

/// Checks || M o A || <= ||A|| (1 + tol) for `trials` random complex matrices
/// A (seeded deterministically), entrywise product o, spectral norms.
inline AxiomReport schur_contraction_check(const std::vector<std::vector<Rational>>& weight,
                                           int trials, double tol = 1e-10,
                                           std::uint64_t seed = 0x5eed) {
    AxiomReport rep;
    const std::size_t dim = weight.size();
    Eigen::MatrixXd m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = weight[i][j].to_double();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXcd a(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                a(i, j) = std::complex<double>(unit(rng), unit(rng));
        Eigen::MatrixXcd schur = m.array() * a.array();
        double lhs = spectral_norm(schur), rhs = spectral_norm(a);
        if (lhs > rhs * (1.0 + tol))
            rep.fail("schur-contraction", "trial " + std::to_string(t) + ": " +
                                              std::to_string(lhs) + " > " + std::to_string(rhs));
    }
    rep.bump("trials", trials);
    return rep;
}

/// Exact averaging identity behind the contraction claim, for even n: on the
/// degree grid, Schur multiplication by Delta_n is the average of the window
/// compressions Phi^{i,j} a Phi^{i,j}.  Entrywise this says
///   kappa_m(x, y) = (1/(m/2+1)) #{ 1 <= j <= m/2 : |x - c| < j and |y - c| < j }
/// with c = (m-1)/2, per coordinate; verified by exact rational comparison on
/// the full grid.
inline AxiomReport phi_decomposition_check(const DeltaTensor& d) {
    AxiomReport rep;
    const Degree& n = d.n();
    for (std::size_t c = 0; c < 2; ++c)
        if (n[c] % 2 != 0)
            throw std::invalid_argument("phi_decomposition_check: even window lengths required");

    auto phi_sum = [&](const KappaMatrix& k, std::int64_t x, std::int64_t y) {
        std::int64_t m = k.m();
        std::int64_t hits = 0;
        for (std::int64_t j = 1; j <= m / 2; ++j) {
            // |x - (m-1)/2| < j with the half-integer center, scaled by 2
            bool in_x = std::llabs(2 * x - (m - 1)) < 2 * j;
            bool in_y = std::llabs(2 * y - (m - 1)) < 2 * j;
            if (in_x && in_y) ++hits;
        }
        return Rational(hits, m / 2 + 1);
    };

    for (std::uint32_t i1 = 0; i1 < n[0]; ++i1)
        for (std::uint32_t i2 = 0; i2 < n[1]; ++i2)
            for (std::uint32_t j1 = 0; j1 < n[0]; ++j1)
                for (std::uint32_t j2 = 0; j2 < n[1]; ++j2) {
                    Rational expect =
                        (phi_sum(d.kappa1(), i1, j1) + phi_sum(d.kappa2(), i2, j2)) *
                        Rational(1, 2);
                    if (d.at(i1, i2, j1, j2) != expect)
                        rep.fail("phi-decomposition",
                                 "entry ((" + std::to_string(i1) + "," + std::to_string(i2) +
                                     "),(" + std::to_string(j1) + "," + std::to_string(j2) + "))");
                }
    rep.bump("grid-entries", std::int64_t(n[0]) * n[1] * n[0] * n[1]);
    return rep;
}

// ---------------------------------------------------------------------------
// Window arithmetic
// ---------------------------------------------------------------------------

/// The unique translates h, g in H_n placing a + p into the windows [n, 2n)
/// and [ceil(3n/2), ceil(5n/2)).
struct WindowPair {
    Degree a, p, n;
    std::vector<std::int64_t> h, g;
};

inline WindowPair windows(const Degree& a, const Degree& p, const Degree& n) {
    a.require_same_rank(n);
    if (!lt_strict(p, n)) throw std::invalid_argument("windows: need p < n");
    WindowPair w{a, p, n, {}, {}};
    w.h.resize(n.rank());
    w.g.resize(n.rank());
    for (std::size_t j = 0; j < n.rank(); ++j) {
        const std::int64_t nj = n[j], apj = std::int64_t(a[j]) + p[j];
        auto place = [&](std::int64_t lo) {
            // unique value in [lo, lo + n) congruent to apj mod n
            std::int64_t r = (apj - lo) % nj;
            if (r < 0) r += nj;
            return lo + r - apj;
        };
        w.h[j] = place(nj);
        w.g[j] = place((3 * nj + 1) / 2);
        // difference invariant: the two offsets differ by ceil(n/2) or
        // -floor(n/2)
        std::int64_t x = apj + w.h[j] - nj;
        std::int64_t y = apj + w.g[j] - (3 * nj + 1) / 2;
        std::int64_t diff = x - y;
        if (diff != (nj + 1) / 2 && diff != -(nj / 2))
            throw std::logic_error("windows: offset difference invariant violated");
    }
    return w;
}

// ---------------------------------------------------------------------------
// Defect of the order-1 approximation
// ---------------------------------------------------------------------------

struct DefectReport {
    Degree a, b, n;
    Rational defect;  // max over p < n of |Delta_{n,1}(p) + Delta_{n,2}(p) - 1|
    Rational bound;   // 2 (1 + |a1-b1| + |a2-b2|) / (2 (min(ceil(n1/2), ceil(n2/2)) + 1))
    bool ok = false;  // defect <= bound
};

inline DefectReport defect(const Degree& a, const Degree& b, const Degree& n) {
    if (n.rank() != 2 || a.rank() != 2 || b.rank() != 2)
        throw std::invalid_argument("defect: rank-2 degrees required");
    for (std::size_t i = 0; i < 2; ++i)
        if (n[i] == 0) throw std::invalid_argument("defect: n must have coordinates >= 1");
    DeltaTensor dn(n);
    DefectReport rep{a, b, n, Rational(0), Rational(0), false};

    for_each_degree_lt(n, [&](const Degree& p) {
        WindowPair w = windows(a, p, n);
        std::int64_t x1 = std::int64_t(a[0]) + p[0] + w.h[0] - n[0];
        std::int64_t x2 = std::int64_t(a[1]) + p[1] + w.h[1] - n[1];
        std::int64_t y1 = std::int64_t(b[0]) + p[0] + w.h[0] - n[0];
        std::int64_t y2 = std::int64_t(b[1]) + p[1] + w.h[1] - n[1];
        Rational d1 = dn.at(x1, x2, y1, y2);
        std::int64_t c1 = (3 * std::int64_t(n[0]) + 1) / 2, c2 = (3 * std::int64_t(n[1]) + 1) / 2;
        std::int64_t u1 = std::int64_t(a[0]) + p[0] + w.g[0] - c1;
        std::int64_t u2 = std::int64_t(a[1]) + p[1] + w.g[1] - c2;
        std::int64_t v1 = std::int64_t(b[0]) + p[0] + w.g[0] - c1;
        std::int64_t v2 = std::int64_t(b[1]) + p[1] + w.g[1] - c2;
        Rational d2 = dn.at(u1, u2, v1, v2);
        Rational dev = (d1 + d2 - Rational(1)).abs();
        if (rep.defect < dev) rep.defect = dev;
    });

    std::int64_t spread = std::llabs(std::int64_t(a[0]) - b[0]) + std::llabs(std::int64_t(a[1]) - b[1]);
    std::int64_t half = std::min(ceil_half(n[0]), ceil_half(n[1]));
    rep.bound = Rational(2 * (1 + spread), 2 * (half + 1));
    rep.ok = rep.defect <= rep.bound;
    return rep;
}

/// CSV table of defects over a list of moduli: deterministic, decimal with 12
/// significant digits plus exact p/q columns.
inline void sweep(const Degree& a, const Degree& b, const std::vector<Degree>& n_list,
                  std::ostream& os) {
    os << "n1,n2,a1,a2,b1,b2,defect,bound,ok,defect_exact,bound_exact\n";
    for (const Degree& n : n_list) {
        DefectReport r = defect(a, b, n);
        os << n[0] << ',' << n[1] << ',' << a[0] << ',' << a[1] << ',' << b[0] << ',' << b[1]
           << ',' << r.defect.to_decimal(12) << ',' << r.bound.to_decimal(12) << ','
           << (r.ok ? "true" : "false") << ',' << r.defect.to_string() << ','
           << r.bound.to_string() << '\n';
    }
}

// ---------------------------------------------------------------------------
// kappa inequalities used by the bound
// ---------------------------------------------------------------------------

/// kappa_m(i,j) >= kappa_m(i,i) - |i-j| / (ceil(m/2)+1), exhaustively.
inline AxiomReport kappa_lipschitz_check(std::uint32_t m) {
    AxiomReport rep;
    KappaMatrix k(m);
    Rational lip(1, ceil_half(m) + 1);
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = 0; j < m; ++j) {
            Rational slack = lip * Rational(std::llabs(i - j));
            if (k.at(i, j) < k.at(i, i) - slack)
                rep.fail("kappa-lipschitz",
                         "m=" + std::to_string(m) + " (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
        }
    return rep;
}

/// Window-sum evaluation: the range of kappa(x,x) + kappa(x+s,x+s) over all x
/// with x, x+s in {0..m-1}, and whether the bounds
/// (ceil(m/2)+1)/(ceil(m/2)+2) <= sum <= 1 hold.  The shift s = floor(m/2) is
/// the one the defect evaluation realizes; the s = ceil(m/2) variant is
/// evaluated for reporting (for odd m it undershoots the lower bound).
struct WindowSumReport {
    std::uint32_t m = 0;
    std::int64_t shift = 0;
    Rational lo, hi;
    bool meets_lower = false, meets_upper = false;
    bool evaluated = false;  // false when no x fits the shift
};

inline WindowSumReport window_sum_report(std::uint32_t m, std::int64_t shift) {
    KappaMatrix k(m);
    WindowSumReport r;
    r.m = m;
    r.shift = shift;
    Rational lower(ceil_half(m) + 1, ceil_half(m) + 2);
    for (std::int64_t x = 0; x + shift < m && x < m; ++x) {
        Rational sum = k.at(x, x) + k.at(x + shift, x + shift);
        if (!r.evaluated) {
            r.lo = r.hi = sum;
            r.evaluated = true;
        } else {
            if (sum < r.lo) r.lo = sum;
            if (r.hi < sum) r.hi = sum;
        }
    }
    if (r.evaluated) {
        r.meets_lower = r.lo >= lower;
        r.meets_upper = r.hi <= Rational(1);
    }
    return r;
}

// ---------------------------------------------------------------------------
// P_n / Q_n on the truncated Fock space
// ---------------------------------------------------------------------------

struct PnQnResult {
    SparseOperator p_op, q_op;
    AxiomReport report;  // exact agreement of the two computation routes
};

namespace schurdetail {

/// Diagonal projection onto basis paths with degree in [lo, hi).
inline SparseOperator window_projection(const FockSpace& F, const Degree& lo, const Degree& hi) {
    SparseOperator r(&F);
    const TruncatedKGraph& g = F.graph();
    for (MorphismId m = 0; m < g.size(); ++m) {
        const Degree& d = g.degree(m);
        bool in = true;
        for (std::size_t i = 0; i < d.rank(); ++i)
            if (!(lo[i] <= d[i] && d[i] < hi[i])) in = false;
        if (in) r.add(m, m, Rational(1));
    }
    return r;
}

/// Entrywise weighting by Delta(d(row) - base, d(col) - base).
inline SparseOperator schur_weight(const FockSpace& F, const SparseOperator& a,
                                   const DeltaTensor& dn, const Degree& base) {
    SparseOperator r(&F);
    const TruncatedKGraph& g = F.graph();
    for (const auto& [k, v] : a.entries()) {
        const Degree& dr = g.degree(k.first);
        const Degree& dc = g.degree(k.second);
        Rational w = dn.at(std::int64_t(dr[0]) - base[0], std::int64_t(dr[1]) - base[1],
                           std::int64_t(dc[0]) - base[0], std::int64_t(dc[1]) - base[1]);
        if (!(w == Rational(0))) r.add(k.first, k.second, v * w);
    }
    return r;
}

/// The closed-form sum over tau with both composite degrees in the window.
inline SparseOperator closed_form(const FockSpace& F, const DeltaTensor& dn, MorphismId mu,
                                  MorphismId nu, const Degree& lo, const Degree& hi) {
    SparseOperator r(&F);
    const TruncatedKGraph& g = F.graph();
    const Degree& dmu = g.degree(mu);
    const Degree& dnu = g.degree(nu);
    // tau ranges over s(mu)Lambda with lo <= d(mu tau), d(nu tau) < hi
    for_each_degree_leq(g.depth() - degree_join(dmu, dnu), [&](const Degree& dt) {
        bool in = true;
        for (std::size_t i = 0; i < dt.rank(); ++i) {
            std::uint32_t m1 = dmu[i] + dt[i], m2 = dnu[i] + dt[i];
            if (!(lo[i] <= m1 && m1 < hi[i] && lo[i] <= m2 && m2 < hi[i])) in = false;
        }
        if (!in) return;
        for (MorphismId tau : g.range_set(g.source(mu), dt)) {
            MorphismId mt = g.compose(mu, tau);
            MorphismId nt = g.compose(nu, tau);
            Rational w = dn.at(std::int64_t(g.degree(mt)[0]) - lo[0],
                               std::int64_t(g.degree(mt)[1]) - lo[1],
                               std::int64_t(g.degree(nt)[0]) - lo[0],
                               std::int64_t(g.degree(nt)[1]) - lo[1]);
            if (!(w == Rational(0))) r.add(mt, nt, w);
        }
    });
    return r;
}

}  // namespace schurdetail

/// Computes P_n(t_mu t_nu^*) and Q_n(t_mu t_nu^*) both by window compression
/// plus Schur weighting and by the closed-form sum, asserting exact
/// agreement.  Requires s(mu) = s(nu) and depth >= ceil(5n/2) + max(d(mu),
/// d(nu)) coordinatewise.
inline PnQnResult pn_qn_apply(const FockSpace& F, const Degree& n, MorphismId mu, MorphismId nu) {
    const TruncatedKGraph& g = F.graph();
    if (g.rank() != 2 || n.rank() != 2) throw std::invalid_argument("pn_qn_apply: rank-2 only");
    if (g.source(mu) != g.source(nu))
        throw std::invalid_argument("pn_qn_apply: sources must agree");
    Degree need(2);
    for (std::size_t i = 0; i < 2; ++i)
        need[i] = (5 * n[i] + 1) / 2 + std::max(g.degree(mu)[i], g.degree(nu)[i]);
    g.require_within_depth(need);

    DeltaTensor dn(n);
    PnQnResult out;
    Degree two_n = n + n;
    Degree c3(2), c5(2);
    for (std::size_t i = 0; i < 2; ++i) {
        c3[i] = (3 * n[i] + 1) / 2;
        c5[i] = (5 * n[i] + 1) / 2;
    }

    SparseOperator a = creation(F, mu) * creation(F, nu).adjoint();

    SparseOperator rp = schurdetail::window_projection(F, n, two_n);
    SparseOperator p_compress = schurdetail::schur_weight(F, rp * a * rp, dn, n);
    SparseOperator p_closed = schurdetail::closed_form(F, dn, mu, nu, n, two_n);
    if (p_compress != p_closed)
        out.report.fail("pn-two-route", g.label(mu) + "," + g.label(nu));
    out.p_op = p_closed;

    SparseOperator rq = schurdetail::window_projection(F, c3, c5);
    SparseOperator q_compress = schurdetail::schur_weight(F, rq * a * rq, dn, c3);
    SparseOperator q_closed = schurdetail::closed_form(F, dn, mu, nu, c3, c5);
    if (q_compress != q_closed)
        out.report.fail("qn-two-route", g.label(mu) + "," + g.label(nu));
    out.q_op = q_closed;

    out.report.bump("p-entries", std::int64_t(out.p_op.entries().size()));
    out.report.bump("q-entries", std::int64_t(out.q_op.entries().size()));
    return out;
}

}  // namespace kgraph
