#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/digraph.hpp"
#include "kgraph/kgraph.hpp"
#include "kgraph/report.hpp"

namespace kgraph {

/// [lambda]_H: the unique prefix of lambda whose degree is d(lambda) mod n.
inline MorphismId bracket(const TruncatedKGraph& g, MorphismId lam, const Degree& n) {
    return g.factor(lam, degree_residue(g.degree(lam), n)).first;
}

/// T(lambda): the unique suffix with lambda = [lambda] T(lambda); its degree
/// lies in H_n.
inline MorphismId tail(const TruncatedKGraph& g, MorphismId lam, const Degree& n) {
    return g.factor(lam, degree_residue(g.degree(lam), n)).second;
}

// ---------------------------------------------------------------------------
// The delayed k-graph Lambda(n).
//
// Morphisms are pairs (lambda, lambda') with lambda' in s(lambda)Lambda^{<n};
// d((lambda,lambda')) = d(lambda), s = (s(lambda), lambda'), r = (r(lambda),
// [lambda lambda']), and (lambda,lambda')(mu,mu') = (lambda mu, mu') whenever
// lambda' = [mu mu'].  Vertices are identified with Lambda^{<n}.
//
// Realizing depth D needs the base graph truncated at D + n - 1 or deeper
// (computing [lambda lambda'] requires composites of degree up to D + n - 1);
// the constructor refuses shallower bases rather than truncating silently.
// ---------------------------------------------------------------------------

class DelayGraph final : public TruncatedKGraph {
public:
    DelayGraph(KGraphPtr base, Degree n, Degree depth)
        : TruncatedKGraph(std::move(depth)), base_(std::move(base)), n_(std::move(n)) {
        if (n_.rank() != base_->rank() || this->depth().rank() != base_->rank())
            throw std::invalid_argument("delay: rank mismatch");
        for (std::size_t i = 0; i < n_.rank(); ++i)
            if (n_[i] == 0) throw std::invalid_argument("delay: n must have all coordinates >= 1");
        Degree required(this->depth().rank());
        for (std::size_t i = 0; i < required.rank(); ++i)
            required[i] = this->depth()[i] + n_[i] - 1;
        if (!leq(required, base_->depth()))
            throw std::invalid_argument("delay: base depth " + base_->depth().to_string() +
                                        " is below the required " + required.to_string());

        tails_ = base_->paths(std::nullopt, PathSpec::below(n_));
        tails_by_vertex_.resize(base_->vertices().size());
        for (MorphismId t : tails_)
            tails_by_vertex_[base_->vertex_position(base_->range(t))].push_back(t);

        // pass 1: enumerate pairs (lambda, lambda') in base-id order
        for (MorphismId lam = 0; lam < base_->size(); ++lam) {
            if (!leq(base_->degree(lam), this->depth())) continue;
            for (MorphismId t : tails_by_vertex_[base_->vertex_position(base_->source(lam))]) {
                pair_index_[pack(lam, t)] = static_cast<MorphismId>(base_id_.size());
                base_id_.push_back(lam);
                tail_id_.push_back(t);
            }
        }
        // pass 2: ranges via [lambda lambda'], then intern
        rtail_.resize(base_id_.size());
        for (std::size_t i = 0; i < base_id_.size(); ++i) {
            MorphismId lam = base_id_[i], t = tail_id_[i];
            MorphismId lt = base_->compose(lam, t);
            rtail_[i] = bracket(*base_, lt, n_);
            intern(base_->degree(lam), vertex_of_tail(rtail_[i]), vertex_of_tail(t));
        }
        finalize();

        // stored composition: for each y = (mu,mu'), the composable x are the
        // pairs (lambda, [mu mu']) with s(lambda) = r(mu) within depth
        for (MorphismId y = 0; y < size(); ++y) {
            MorphismId mu = base_id_[y], t = rtail_[y];
            MorphismId v = base_->range(mu);
            for_each_degree_leq(this->depth() - degree(y), [&](const Degree& da) {
                for (MorphismId lam : base_->source_set(v, da)) {
                    MorphismId x = pair_index_.at(pack(lam, t));
                    MorphismId c = base_->compose(lam, mu);
                    compose_table_[pack(x, y)] = pair_index_.at(pack(c, tail_id_[y]));
                }
            });
        }
    }

    std::string label(MorphismId m) const override {
        return "[" + base_->label(base_id_[m]) + "|" + base_->label(tail_id_[m]) + "]";
    }

    const KGraphPtr& base() const { return base_; }
    const Degree& modulus() const { return n_; }
    MorphismId base_id(MorphismId m) const { return base_id_[m]; }
    MorphismId tail_id(MorphismId m) const { return tail_id_[m]; }
    MorphismId range_tail(MorphismId m) const { return rtail_[m]; }
    const std::vector<MorphismId>& tails() const { return tails_; }
    const std::vector<MorphismId>& tails_at(MorphismId base_vertex) const {
        return tails_by_vertex_[base_->vertex_position(base_vertex)];
    }

    /// Delay morphism id of the pair (lambda, lambda'); throws if not stored.
    MorphismId pair(MorphismId lam, MorphismId t) const {
        auto it = pair_index_.find(pack(lam, t));
        if (it == pair_index_.end())
            throw std::invalid_argument("delay: pair (" + base_->label(lam) + "," +
                                        base_->label(t) + ") is not a stored morphism");
        return it->second;
    }

    std::optional<MorphismId> try_pair(MorphismId lam, MorphismId t) const {
        auto it = pair_index_.find(pack(lam, t));
        if (it == pair_index_.end()) return std::nullopt;
        return it->second;
    }

    /// The vertex (r(t), t) of Lambda(n) attached to a tail t in Lambda^{<n}.
    MorphismId vertex_of_tail(MorphismId t) const {
        return pair_index_.at(pack(base_->range(t), t));
    }

protected:
    std::optional<MorphismId> compose_impl(MorphismId a, MorphismId b) const override {
        auto it = compose_table_.find(pack(a, b));
        if (it == compose_table_.end()) return std::nullopt;
        return it->second;
    }

    std::pair<MorphismId, MorphismId> factor_impl(MorphismId lam, const Degree& m) const override {
        auto [mu, nu] = base_->factor(base_id_[lam], m);
        MorphismId nu_lt = base_->compose(nu, tail_id_[lam]);
        MorphismId t1 = bracket(*base_, nu_lt, n_);
        return {pair_index_.at(pack(mu, t1)), pair_index_.at(pack(nu, tail_id_[lam]))};
    }

private:
    static std::uint64_t pack(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

    KGraphPtr base_;
    Degree n_;
    std::vector<MorphismId> tails_;
    std::vector<std::vector<MorphismId>> tails_by_vertex_;
    std::vector<MorphismId> base_id_, tail_id_, rtail_;
    std::unordered_map<std::uint64_t, MorphismId> pair_index_;
    std::unordered_map<std::uint64_t, MorphismId> compose_table_;
};

using DelayGraphPtr = std::shared_ptr<const DelayGraph>;

inline DelayGraphPtr delay(KGraphPtr base, Degree n, Degree depth) {
    return std::make_shared<DelayGraph>(std::move(base), std::move(n), std::move(depth));
}

// ---------------------------------------------------------------------------
// Checks for the delay construction
// ---------------------------------------------------------------------------

/// Compares the closed form for Lambda(n)^min against brute-force lambda_min
/// in the realized graph, for all pairs of morphisms of degree <= bound.
/// Pairs with distinct ranges [lambda lambda'] != [mu mu'] are empty on both
/// sides by the range obstruction and are tallied rather than enumerated.
inline AxiomReport delayed_min_check(const DelayGraph& dg, const Degree& bound) {
    dg.require_within_depth(bound);
    AxiomReport rep;
    const TruncatedKGraph& base = *dg.base();
    const Degree& n = dg.modulus();

    std::map<MorphismId, std::vector<MorphismId>> by_rtail;
    std::int64_t in_bound = 0;
    for (MorphismId x = 0; x < dg.size(); ++x)
        if (leq(dg.degree(x), bound)) {
            by_rtail[dg.range_tail(x)].push_back(x);
            ++in_bound;
        }
    std::int64_t same_range_pairs = 0;
    for (const auto& [t, bucket] : by_rtail)
        same_range_pairs += std::int64_t(bucket.size()) * std::int64_t(bucket.size());
    rep.bump("pairs-total", in_bound * in_bound);
    rep.bump("pairs-empty-by-range", in_bound * in_bound - same_range_pairs);
    rep.bump("pairs-enumerated", same_range_pairs);

    for (const auto& [t, bucket] : by_rtail) {
        for (MorphismId x : bucket)
            for (MorphismId y : bucket) {
                // closed form
                std::set<std::pair<MorphismId, MorphismId>> expected;
                auto base_min = base.lambda_min(dg.base_id(x), dg.base_id(y));
                for (auto [alpha, beta] : base_min.pairs) {
                    for (MorphismId tau : dg.tails_at(base.source(alpha))) {
                        MorphismId at = base.compose(alpha, tau);
                        if (bracket(base, at, n) != dg.tail_id(x)) continue;
                        MorphismId bt = base.compose(beta, tau);
                        if (bracket(base, bt, n) != dg.tail_id(y)) continue;
                        expected.insert({dg.pair(alpha, tau), dg.pair(beta, tau)});
                    }
                }
                // brute force in the realized graph
                auto got = dg.lambda_min(x, y);
                std::set<std::pair<MorphismId, MorphismId>> actual(got.pairs.begin(),
                                                                   got.pairs.end());
                if (expected != actual)
                    rep.fail("delayed-min", dg.label(x) + " vs " + dg.label(y) + ": closed form " +
                                                std::to_string(expected.size()) + " pairs, brute force " +
                                                std::to_string(actual.size()));
                if (got.pairs.size() != got.mce.size())
                    rep.fail("delayed-min-bijection", dg.label(x) + " vs " + dg.label(y));
            }
    }
    return rep;
}

/// Convenience form building the realized graph at depth = bound.
inline AxiomReport delayed_min_check(KGraphPtr base, const Degree& n, const Degree& bound) {
    auto dg = delay(std::move(base), n, bound);
    return delayed_min_check(*dg, bound);
}

/// With n = (1,...,1) the delay is isomorphic to the base truncation via
/// (lambda, s(lambda)) <-> lambda; checked exhaustively including composition.
inline AxiomReport delay_degenerate_check(const DelayGraph& dg) {
    AxiomReport rep;
    for (std::size_t i = 0; i < dg.modulus().rank(); ++i)
        if (dg.modulus()[i] != 1)
            throw std::invalid_argument("delay_degenerate_check: modulus must be all ones");
    const TruncatedKGraph& base = *dg.base();

    std::int64_t base_count = 0;
    for (MorphismId lam = 0; lam < base.size(); ++lam)
        if (leq(base.degree(lam), dg.depth())) ++base_count;
    if (std::int64_t(dg.size()) != base_count)
        rep.fail("degenerate-size", std::to_string(dg.size()) + " vs " + std::to_string(base_count));

    for (MorphismId x = 0; x < dg.size(); ++x) {
        MorphismId lam = dg.base_id(x);
        if (dg.tail_id(x) != base.source(lam)) rep.fail("degenerate-tail", dg.label(x));
        if (dg.degree(x) != base.degree(lam)) rep.fail("degenerate-degree", dg.label(x));
        if (dg.base_id(dg.range(x)) != base.range(lam) || dg.base_id(dg.source(x)) != base.source(lam))
            rep.fail("degenerate-endpoints", dg.label(x));
    }
    for (MorphismId x = 0; x < dg.size(); ++x)
        for (MorphismId y = 0; y < dg.size(); ++y) {
            auto dxy = dg.try_compose(x, y);
            auto bxy = base.try_compose(dg.base_id(x), dg.base_id(y));
            bool db = dxy.has_value(), bb = bxy.has_value();
            if (db != bb ||
                (db && dg.base_id(*dxy) != *bxy))
                rep.fail("degenerate-compose", dg.label(x) + " * " + dg.label(y));
        }
    return rep;
}

/// Range-set identity from the construction: |(r(lambda),lambda) Lambda(n)^m|
/// = |s(lambda) Lambda^p| with p = m + [d(lambda) - m] - d(lambda).
inline AxiomReport delay_range_count_check(const DelayGraph& dg) {
    AxiomReport rep;
    const TruncatedKGraph& base = *dg.base();
    const Degree& n = dg.modulus();
    for (MorphismId t : dg.tails()) {
        MorphismId v = dg.vertex_of_tail(t);
        for_each_degree_leq(dg.depth(), [&](const Degree& m) {
            std::vector<std::int64_t> diff(n.rank());
            for (std::size_t i = 0; i < n.rank(); ++i)
                diff[i] = std::int64_t(base.degree(t)[i]) - std::int64_t(m[i]);
            Degree residue = degree_residue_signed(diff, n);
            Degree p = m + residue - base.degree(t);
            std::size_t lhs = dg.range_set(v, m).size();
            std::size_t rhs = base.range_set(base.source(t), p).size();
            if (lhs != rhs)
                rep.fail("delay-range-count", "tail " + base.label(t) + " m=" + m.to_string() +
                                                  ": " + std::to_string(lhs) + " vs " +
                                                  std::to_string(rhs));
        });
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The delayed directed graph E(m).
// ---------------------------------------------------------------------------

struct DelayedDigraph {
    DirectedGraph graph;  // E(m) as a plain directed graph
    std::uint32_t m = 1;
    // digraph source (start vertex, as an E-vertex name) of each E(m) vertex,
    // indexed like graph's vertices
    std::vector<std::string> vertex_start;
};

/// Kribs-Solel delay of a directed graph: vertices are paths shorter than m;
/// the edge (e, mu) runs from e.mu (or s_E(e) when |mu| = m-1) to mu.
/// Vertex names are dotted path labels; edge names are "(e|mu)".
inline DelayedDigraph graph_delay(const DirectedGraph& E, std::uint32_t m) {
    if (m == 0) throw std::invalid_argument("graph_delay: m must be >= 1");
    E.require_no_sinks();
    DelayedDigraph out;
    out.m = m;

    // enumerate E^{<m} with canonical labels; paths as (start, edge list)
    struct Path {
        std::uint32_t start;
        std::vector<std::uint32_t> edges;
    };
    std::vector<Path> paths;
    auto path_label = [&](const Path& p) {
        if (p.edges.empty()) return E.vertex_name(p.start);
        std::string s;
        for (std::size_t i = 0; i < p.edges.size(); ++i) {
            if (i) s += '.';
            s += E.edge(p.edges[i]).name;
        }
        return s;
    };
    for (std::uint32_t v = 0; v < E.vertex_count(); ++v) paths.push_back({v, {}});
    std::size_t level_begin = 0;
    for (std::uint32_t len = 1; len < m; ++len) {
        std::size_t level_end = paths.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            std::uint32_t end = paths[i].edges.empty() ? paths[i].start
                                                       : E.edge(paths[i].edges.back()).dst;
            for (std::uint32_t e : E.out_edges(end)) {
                Path q = paths[i];
                q.edges.push_back(e);
                paths.push_back(std::move(q));
            }
        }
        level_begin = level_end;
    }
    for (const auto& p : paths) {
        out.graph.add_vertex(path_label(p));
        out.vertex_start.push_back(E.vertex_name(p.start));
    }

    // edges (e, mu) with r_E(e) = s_E(mu), i.e. dst(e) = start of mu
    for (const auto& mu : paths) {
        for (std::uint32_t e = 0; e < E.edge_count(); ++e) {
            if (E.edge(e).dst != mu.start) continue;
            std::string name = "(" + E.edge(e).name + "|" + path_label(mu) + ")";
            std::string src;
            if (mu.edges.size() < std::size_t(m) - 1) {
                Path emu{E.edge(e).src, {e}};
                emu.edges.insert(emu.edges.end(), mu.edges.begin(), mu.edges.end());
                src = path_label(emu);
            } else {
                src = E.vertex_name(E.edge(e).src);
            }
            out.graph.add_edge(name, src, path_label(mu));
        }
    }
    out.graph.require_no_sinks();
    return out;
}

/// Verifies E(m)* = E*(m): the identity map on the common edge set
/// intertwines range and source, and path counts agree up to degree D.
inline AxiomReport delay_path_iso_check(const DirectedGraph& E, std::uint32_t m, std::uint32_t D) {
    AxiomReport rep;
    if (m == 0) throw std::invalid_argument("delay_path_iso_check: m must be >= 1");
    auto em = graph_delay(E, m);
    auto A = path_category(em.graph, D);                              // E(m)*
    auto B = delay(path_category(E, D + m - 1), Degree{m}, Degree{D});  // E*(m)

    // vertex sets: E(m)^0 versus Lambda^{<m}, by canonical label
    std::set<std::string> va, vb;
    for (MorphismId v : A->vertices()) va.insert(A->label(v));
    for (MorphismId t : B->tails()) vb.insert(B->base()->label(t));
    if (va != vb) rep.fail("iso-vertices", "vertex label sets differ");
    rep.bump("vertices", std::int64_t(va.size()));

    // edge sets with range/source intertwining
    std::map<std::string, MorphismId> a_edges;
    for (MorphismId e : A->morphisms_of_degree(Degree{1})) a_edges[A->label(e)] = e;
    auto b_edges = B->morphisms_of_degree(Degree{1});
    if (a_edges.size() != b_edges.size())
        rep.fail("iso-edge-count",
                 std::to_string(a_edges.size()) + " vs " + std::to_string(b_edges.size()));
    for (MorphismId x : b_edges) {
        std::string name =
            "(" + B->base()->label(B->base_id(x)) + "|" + B->base()->label(B->tail_id(x)) + ")";
        auto it = a_edges.find(name);
        if (it == a_edges.end()) {
            rep.fail("iso-edge-missing", name);
            continue;
        }
        MorphismId e = it->second;
        if (A->label(A->range(e)) != B->base()->label(B->range_tail(x)))
            rep.fail("iso-range", name);
        if (A->label(A->source(e)) != B->base()->label(B->tail_id(x)))
            rep.fail("iso-source", name);
    }

    // path-count agreement per degree and per vertex
    for (std::uint32_t l = 0; l <= D; ++l) {
        if (A->morphisms_of_degree(Degree{l}).size() != B->morphisms_of_degree(Degree{l}).size())
            rep.fail("iso-path-count", "degree " + std::to_string(l));
    }
    for (MorphismId v : A->vertices()) {
        // match A vertex to B vertex through labels
        MorphismId bt = kNoMorphism;
        for (MorphismId t : B->tails())
            if (B->base()->label(t) == A->label(v)) bt = B->vertex_of_tail(t);
        if (bt == kNoMorphism) continue;
        for (std::uint32_t l = 0; l <= D; ++l)
            if (A->range_set(v, Degree{l}).size() != B->range_set(bt, Degree{l}).size())
                rep.fail("iso-fan-count", A->label(v) + " degree " + std::to_string(l));
    }
    return rep;
}

/// Verifies that ((l1,l2),(l1',l2')) -> ((l1,l1'),(l2,l2')) is a bijection
/// (Lambda1 x Lambda2)((n1,n2)) -> Lambda1(n1) x Lambda2(n2) preserving
/// degree, range, source, and composition, exhaustively up to depth.
inline AxiomReport product_delay_compat_check(KGraphPtr base1, KGraphPtr base2, const Degree& n1,
                                              const Degree& n2, const Degree& d1, const Degree& d2) {
    AxiomReport rep;
    auto prod = cartesian_product(base1, base2);
    std::vector<std::uint32_t> nn = n1.coords(), dd = d1.coords();
    nn.insert(nn.end(), n2.coords().begin(), n2.coords().end());
    dd.insert(dd.end(), d2.coords().begin(), d2.coords().end());
    auto lhs = delay(prod, Degree(nn), Degree(dd));
    auto dg1 = delay(base1, n1, d1);
    auto dg2 = delay(base2, n2, d2);
    auto rhs = cartesian_product(dg1, dg2);

    if (lhs->size() != rhs->size())
        rep.fail("compat-size", std::to_string(lhs->size()) + " vs " + std::to_string(rhs->size()));
    if (lhs->vertices().size() != dg1->tails().size() * dg2->tails().size())
        rep.fail("compat-vertex-count", "LHS^0 != |Lambda1^<n1| * |Lambda2^<n2|");

    auto rhs_product = std::static_pointer_cast<const ProductGraph>(rhs);
    auto phi = [&](MorphismId x) -> MorphismId {
        MorphismId lam = lhs->base_id(x), t = lhs->tail_id(x);
        MorphismId a = dg1->pair(prod->first(lam), prod->first(t));
        MorphismId b = dg2->pair(prod->second(lam), prod->second(t));
        return rhs_product->pair_id(a, b);
    };

    std::vector<MorphismId> image(lhs->size());
    std::set<MorphismId> seen;
    for (MorphismId x = 0; x < lhs->size(); ++x) {
        image[x] = phi(x);
        if (!seen.insert(image[x]).second) rep.fail("compat-injective", lhs->label(x));
        if (lhs->degree(x) != rhs->degree(image[x])) rep.fail("compat-degree", lhs->label(x));
    }
    for (MorphismId x = 0; x < lhs->size(); ++x) {
        if (image[lhs->range(x)] != rhs->range(image[x])) rep.fail("compat-range", lhs->label(x));
        if (image[lhs->source(x)] != rhs->source(image[x])) rep.fail("compat-source", lhs->label(x));
    }
    std::int64_t pairs = 0;
    for (MorphismId x = 0; x < lhs->size(); ++x)
        for (MorphismId y = 0; y < lhs->size(); ++y) {
            auto l = lhs->try_compose(x, y);
            auto r = rhs->try_compose(image[x], image[y]);
            if (l.has_value() != r.has_value() || (l && image[*l] != *r))
                rep.fail("compat-compose", lhs->label(x) + " * " + lhs->label(y));
            if (l) ++pairs;
        }
    rep.bump("composable-pairs", pairs);
    return rep;
}

/// Generator-level identity (iota~_{n1} (x) iota~_{n2}) . Theta =
/// Theta . iota~_{(n1,n2)}: both sides index the same set of generators.
inline bool prodgraph_generator_check(const DelayGraph& dg1, const DelayGraph& dg2,
                                      const DelayGraph& dgp, const ProductGraph& prod,
                                      MorphismId mu1, MorphismId mu2) {
    // left side: independent tails
    std::set<std::pair<MorphismId, MorphismId>> lhs;
    for (MorphismId nu1 : dg1.tails_at(dg1.base()->source(mu1)))
        for (MorphismId nu2 : dg2.tails_at(dg2.base()->source(mu2)))
            lhs.insert({dg1.pair(mu1, nu1), dg2.pair(mu2, nu2)});
    // right side: product tails pushed through the identification
    std::set<std::pair<MorphismId, MorphismId>> rhs;
    MorphismId mu = prod.pair_id(mu1, mu2);
    for (MorphismId t : dgp.tails_at(prod.source(mu))) {
        rhs.insert({dg1.pair(mu1, prod.first(t)), dg2.pair(mu2, prod.second(t))});
    }
    return lhs == rhs;
}

/// Convenience form for a single sample pair, building the delays and the
/// product at the depths the comparison needs.
inline bool prodgraph_generator_check(KGraphPtr base1, KGraphPtr base2, const Degree& n1,
                                      const Degree& n2, MorphismId mu1, MorphismId mu2) {
    Degree d1 = base1->degree(mu1), d2 = base2->degree(mu2);
    auto dg1 = delay(base1, n1, d1);
    auto dg2 = delay(base2, n2, d2);
    auto prod = cartesian_product(base1, base2);
    std::vector<std::uint32_t> nn = n1.coords(), dd = d1.coords();
    nn.insert(nn.end(), n2.coords().begin(), n2.coords().end());
    dd.insert(dd.end(), d2.coords().begin(), d2.coords().end());
    auto dgp = delay(prod, Degree(nn), Degree(dd));
    return prodgraph_generator_check(*dg1, *dg2, *dgp, *prod, mu1, mu2);
}

/// Rout-equivalence at the generator level: for every vertex and edge of E,
/// the index set of iota~_{m,E} followed by relabeling equals that of
/// relabeling followed by iota~_m.
inline AxiomReport rout_equivalence_check(const DirectedGraph& E, std::uint32_t m) {
    AxiomReport rep;
    if (m == 0) throw std::invalid_argument("rout_equivalence_check: m must be >= 1");
    auto em = graph_delay(E, m);
    auto estar = path_category(E, m);  // depth 1 + m - 1 suffices for edge generators
    auto dgm = delay(estar, Degree{m}, Degree{1});

    // vertices: {tails with r_{E*} = v} versus {E(m)^0 paths starting at v}
    for (std::uint32_t v = 0; v < E.vertex_count(); ++v) {
        std::set<std::string> lhs, rhs;
        for (MorphismId t : dgm->tails_at(static_cast<MorphismId>(v)))
            lhs.insert(estar->label(t));
        for (std::uint32_t w = 0; w < em.graph.vertex_count(); ++w)
            if (em.vertex_start[w] == E.vertex_name(v)) rhs.insert(em.graph.vertex_name(w));
        if (lhs != rhs)
            rep.fail("rout-vertex", E.vertex_name(v) + ": " + std::to_string(lhs.size()) + " vs " +
                                        std::to_string(rhs.size()));
        rep.bump("vertex-terms", std::int64_t(lhs.size()));
    }

    // edges: {(e, lambda) from iota~_m} versus E(m)^1
    std::set<std::pair<std::string, std::string>> rhs_edges;
    for (std::uint32_t e = 0; e < em.graph.edge_count(); ++e) {
        const std::string& name = em.graph.edge(e).name;
        auto bar = name.find('|');
        rhs_edges.insert({name.substr(1, bar - 1), name.substr(bar + 1, name.size() - bar - 2)});
    }
    std::set<std::pair<std::string, std::string>> lhs_edges;
    for (std::uint32_t e = 0; e < E.edge_count(); ++e) {
        // the E* morphism of the single edge e
        auto e_morph = estar->morphisms_of_degree(Degree{1});
        for (MorphismId me : e_morph) {
            if (estar->label(me) != E.edge(e).name) continue;
            for (MorphismId t : dgm->tails_at(estar->source(me)))
                lhs_edges.insert({estar->label(me), estar->label(t)});
        }
    }
    if (lhs_edges != rhs_edges)
        rep.fail("rout-edges", std::to_string(lhs_edges.size()) + " vs " +
                                   std::to_string(rhs_edges.size()));
    rep.bump("edge-terms", std::int64_t(lhs_edges.size()));
    return rep;
}

}  // namespace kgraph
