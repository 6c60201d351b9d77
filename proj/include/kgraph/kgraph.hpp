#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/degree.hpp"
#include "kgraph/digraph.hpp"
#include "kgraph/report.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

using MorphismId = std::uint32_t;
inline constexpr MorphismId kNoMorphism = 0xffffffffu;

/// Query for paths(): morphisms of an exact degree, of degree strictly below
/// a bound (coordinatewise), or in an interval [lo, hi).
struct PathSpec {
    enum class Kind { Exact, Below, Interval } kind;
    Degree a;
    Degree b;  // upper bound for Interval; unused otherwise

    static PathSpec exactly(Degree n) { return {Kind::Exact, n, n}; }
    static PathSpec below(Degree n) { return {Kind::Below, n, n}; }
    static PathSpec interval(Degree lo, Degree hi) { return {Kind::Interval, std::move(lo), std::move(hi)}; }
};

struct LambdaMinResult {
    std::vector<std::pair<MorphismId, MorphismId>> pairs;  // (alpha, beta)
    std::vector<MorphismId> mce;                           // mu.alpha = nu.beta
};

/// All morphisms of a row-finite k-graph with degree <= depth, with
/// composition and factorisation oracles.  Instances are immutable once
/// constructed; every operation is const and pure.
///
/// Morphism ids are assigned in construction order, which each backend makes
/// deterministic; all enumerations are emitted in id order.
class TruncatedKGraph {
public:
    virtual ~TruncatedKGraph() = default;

    std::size_t rank() const { return depth_.rank(); }
    const Degree& depth() const { return depth_; }
    std::size_t size() const { return degrees_.size(); }

    const Degree& degree(MorphismId m) const { return degrees_[m]; }
    MorphismId range(MorphismId m) const { return range_[m]; }
    MorphismId source(MorphismId m) const { return source_[m]; }
    bool is_vertex(MorphismId m) const { return degrees_[m].is_zero(); }
    const std::vector<MorphismId>& vertices() const { return vertices_; }

    virtual std::string label(MorphismId m) const = 0;

    /// Composition oracle: defined when s(a) = r(b) and d(a)+d(b) <= depth.
    std::optional<MorphismId> try_compose(MorphismId a, MorphismId b) const {
        if (source_[a] != range_[b]) return std::nullopt;
        const Degree& da = degrees_[a];
        const Degree& db = degrees_[b];
        for (std::size_t i = 0; i < da.rank(); ++i)
            if (da[i] + db[i] > depth_[i]) return std::nullopt;
        return compose_impl(a, b);
    }

    MorphismId compose(MorphismId a, MorphismId b) const {
        auto c = try_compose(a, b);
        if (!c)
            throw std::invalid_argument("compose: " + label(a) + " and " + label(b) +
                                        " are not composable within depth");
        return *c;
    }

    /// Factorisation oracle: lambda = first.second with d(first) = m.
    std::pair<MorphismId, MorphismId> factor(MorphismId lam, const Degree& m) const {
        if (!leq(m, degrees_[lam]))
            throw std::invalid_argument("factor: split " + m.to_string() +
                                        " exceeds degree of " + label(lam));
        return factor_impl(lam, m);
    }

    /// The segment lambda(m, n); requires m <= n <= d(lambda).
    MorphismId segment(MorphismId lam, const Degree& m, const Degree& n) const {
        if (!leq(m, n) || !leq(n, degrees_[lam]))
            throw std::invalid_argument("segment: need m <= n <= d(lambda)");
        MorphismId prefix = factor(lam, n).first;
        return factor(prefix, m).second;
    }

    /// Lambda^n, in id order.
    const std::vector<MorphismId>& morphisms_of_degree(const Degree& n) const {
        auto it = by_degree_.find(n.coords());
        return it == by_degree_.end() ? empty_ : it->second;
    }

    /// v Lambda^n = morphisms of degree n with range v, in id order.
    const std::vector<MorphismId>& range_set(MorphismId v, const Degree& n) const {
        auto it = by_range_degree_.find({v, n.coords()});
        return it == by_range_degree_.end() ? empty_ : it->second;
    }

    /// Lambda^n v = morphisms of degree n with source v, in id order.
    const std::vector<MorphismId>& source_set(MorphismId v, const Degree& n) const {
        auto it = by_source_degree_.find({v, n.coords()});
        return it == by_source_degree_.end() ? empty_ : it->second;
    }

    /// Enumerates morphisms matching the spec, optionally restricted to a
    /// range vertex; output sorted by id.  Throws if the spec needs degrees
    /// beyond the truncation depth.
    std::vector<MorphismId> paths(std::optional<MorphismId> range_vertex, const PathSpec& spec) const {
        std::vector<MorphismId> out;
        auto take_degree = [&](const Degree& n) {
            const auto& ids = range_vertex ? range_set(*range_vertex, n) : morphisms_of_degree(n);
            out.insert(out.end(), ids.begin(), ids.end());
        };
        switch (spec.kind) {
            case PathSpec::Kind::Exact:
                require_within_depth(spec.a);
                take_degree(spec.a);
                break;
            case PathSpec::Kind::Below: {
                bool empty = false;
                for (std::size_t i = 0; i < spec.a.rank(); ++i)
                    if (spec.a[i] == 0) empty = true;
                if (empty) break;
                Degree top(spec.a.rank());
                for (std::size_t i = 0; i < spec.a.rank(); ++i) top[i] = spec.a[i] - 1;
                require_within_depth(top);
                for_each_degree_leq(top, take_degree);
                break;
            }
            case PathSpec::Kind::Interval: {
                if (!lt_strict(spec.a, spec.b))
                    throw std::invalid_argument("paths: interval needs lo < hi strictly");
                Degree top(spec.b.rank());
                for (std::size_t i = 0; i < spec.b.rank(); ++i) top[i] = spec.b[i] - 1;
                require_within_depth(top);
                for_each_degree_leq(top - spec.a, [&](const Degree& off) {
                    take_degree(spec.a + off);
                });
                break;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Lambda^min(mu, nu) together with MCE(mu, nu), by exhaustive enumeration
    /// of r(mu)Lambda^{d(mu) v d(nu)}.  Requires the join within depth.
    LambdaMinResult lambda_min(MorphismId mu, MorphismId nu) const {
        Degree join = degree_join(degrees_[mu], degrees_[nu]);
        require_within_depth(join);
        LambdaMinResult res;
        if (range_[mu] != range_[nu]) return res;  // no common extension can exist
        for (MorphismId lam : range_set(range_[mu], join)) {
            if (factor(lam, degrees_[mu]).first != mu) continue;
            if (factor(lam, degrees_[nu]).first != nu) continue;
            res.mce.push_back(lam);
            res.pairs.emplace_back(segment(lam, degrees_[mu], join),
                                   segment(lam, degrees_[nu], join));
        }
        return res;
    }

    void require_within_depth(const Degree& n) const {
        if (!leq(n, depth_))
            throw std::invalid_argument("degree " + n.to_string() + " exceeds truncation depth " +
                                        depth_.to_string());
    }

    std::uint32_t vertex_position(MorphismId v) const { return vertex_pos_.at(v); }

protected:
    explicit TruncatedKGraph(Degree depth) : depth_(std::move(depth)) {}

    MorphismId intern(const Degree& d, MorphismId r, MorphismId s) {
        MorphismId id = static_cast<MorphismId>(degrees_.size());
        degrees_.push_back(d);
        range_.push_back(r);
        source_.push_back(s);
        return id;
    }

    /// Vertices must be interned with range = source = own id.
    MorphismId intern_vertex() {
        MorphismId id = static_cast<MorphismId>(degrees_.size());
        degrees_.push_back(Degree(depth_.rank(), 0));
        range_.push_back(id);
        source_.push_back(id);
        return id;
    }

    /// Builds the degree/range/source indexes; call once at the end of
    /// subclass construction.
    void finalize() {
        for (MorphismId m = 0; m < degrees_.size(); ++m) {
            by_degree_[degrees_[m].coords()].push_back(m);
            by_range_degree_[{range_[m], degrees_[m].coords()}].push_back(m);
            by_source_degree_[{source_[m], degrees_[m].coords()}].push_back(m);
            if (degrees_[m].is_zero()) {
                vertex_pos_[m] = static_cast<std::uint32_t>(vertices_.size());
                vertices_.push_back(m);
            }
        }
    }

    virtual std::optional<MorphismId> compose_impl(MorphismId a, MorphismId b) const = 0;
    virtual std::pair<MorphismId, MorphismId> factor_impl(MorphismId lam, const Degree& m) const = 0;

private:
    Degree depth_;
    std::vector<Degree> degrees_;
    std::vector<MorphismId> range_, source_;
    std::vector<MorphismId> vertices_;
    std::unordered_map<MorphismId, std::uint32_t> vertex_pos_;
    std::map<std::vector<std::uint32_t>, std::vector<MorphismId>> by_degree_;
    std::map<std::pair<MorphismId, std::vector<std::uint32_t>>, std::vector<MorphismId>> by_range_degree_;
    std::map<std::pair<MorphismId, std::vector<std::uint32_t>>, std::vector<MorphismId>> by_source_degree_;
    std::vector<MorphismId> empty_;
};

using KGraphPtr = std::shared_ptr<const TruncatedKGraph>;

// ---------------------------------------------------------------------------
// Path category of a directed graph, regarded as a 1-graph.
//
// The range and source maps are interchanged relative to the directed-graph
// convention: the 1-graph range of a path is the directed-graph source of its
// first edge.  Composition of 1-graph morphisms is then concatenation of
// directed paths in travel order.
// ---------------------------------------------------------------------------

class PathCategoryGraph final : public TruncatedKGraph {
public:
    PathCategoryGraph(DirectedGraph digraph, std::uint32_t depth)
        : TruncatedKGraph(Degree{depth}), digraph_(std::move(digraph)) {
        digraph_.require_no_sinks();
        const std::uint32_t nv = static_cast<std::uint32_t>(digraph_.vertex_count());
        for (std::uint32_t v = 0; v < nv; ++v) {
            MorphismId id = intern_vertex();
            starts_.push_back(v);
            edges_.emplace_back();
            key_[path_key(v, {})] = id;
        }
        // paths of length l extend paths of length l-1 by an out-edge at the end
        std::vector<MorphismId> prev(vertices_range(nv));
        for (std::uint32_t len = 1; len <= depth; ++len) {
            std::vector<MorphismId> cur;
            for (MorphismId p : prev) {
                std::uint32_t end = end_vertex(p);
                for (std::uint32_t e : digraph_.out_edges(end)) {
                    std::vector<std::uint32_t> ed = edges_[p];
                    ed.push_back(e);
                    MorphismId id = intern(Degree{len}, /*r=*/starts_[p], /*s=*/digraph_.edge(e).dst);
                    starts_.push_back(starts_[p]);
                    key_[path_key(starts_[p], ed)] = id;
                    edges_.push_back(std::move(ed));
                    cur.push_back(id);
                }
            }
            prev = std::move(cur);
        }
        finalize();
    }

    std::string label(MorphismId m) const override {
        if (edges_[m].empty()) return digraph_.vertex_name(starts_[m]);
        std::string out;
        for (std::size_t i = 0; i < edges_[m].size(); ++i) {
            if (i) out += '.';
            out += digraph_.edge(edges_[m][i]).name;
        }
        return out;
    }

    const DirectedGraph& digraph() const { return digraph_; }
    const std::vector<std::uint32_t>& path_edges(MorphismId m) const { return edges_[m]; }
    std::uint32_t path_start(MorphismId m) const { return starts_[m]; }

    /// Morphism id of a directed path given by start vertex and edge list.
    std::optional<MorphismId> find_path(std::uint32_t start, const std::vector<std::uint32_t>& ed) const {
        auto it = key_.find(path_key(start, ed));
        if (it == key_.end()) return std::nullopt;
        return it->second;
    }

protected:
    std::optional<MorphismId> compose_impl(MorphismId a, MorphismId b) const override {
        std::vector<std::uint32_t> ed = edges_[a];
        ed.insert(ed.end(), edges_[b].begin(), edges_[b].end());
        auto it = key_.find(path_key(starts_[a], ed));
        if (it == key_.end()) return std::nullopt;
        return it->second;
    }

    std::pair<MorphismId, MorphismId> factor_impl(MorphismId lam, const Degree& m) const override {
        std::uint32_t cut = m[0];
        std::vector<std::uint32_t> first(edges_[lam].begin(), edges_[lam].begin() + cut);
        std::vector<std::uint32_t> second(edges_[lam].begin() + cut, edges_[lam].end());
        std::uint32_t mid = cut == 0 ? starts_[lam] : digraph_.edge(edges_[lam][cut - 1]).dst;
        return {key_.at(path_key(starts_[lam], first)), key_.at(path_key(mid, second))};
    }

private:
    std::uint32_t end_vertex(MorphismId p) const {
        return edges_[p].empty() ? starts_[p] : digraph_.edge(edges_[p].back()).dst;
    }

    static std::vector<std::uint32_t> path_key(std::uint32_t start, const std::vector<std::uint32_t>& ed) {
        std::vector<std::uint32_t> k;
        k.reserve(ed.size() + 1);
        k.push_back(start);
        k.insert(k.end(), ed.begin(), ed.end());
        return k;
    }

    static std::vector<MorphismId> vertices_range(std::uint32_t nv) {
        std::vector<MorphismId> v(nv);
        for (std::uint32_t i = 0; i < nv; ++i) v[i] = i;
        return v;
    }

    DirectedGraph digraph_;
    std::vector<std::uint32_t> starts_;               // digraph source of first edge
    std::vector<std::vector<std::uint32_t>> edges_;   // edge ids in travel order
    std::map<std::vector<std::uint32_t>, MorphismId> key_;
};

// ---------------------------------------------------------------------------
// 2-graph presented by a skeleton with factorisation squares.
//
// Morphisms are stored in the normal form "all blue letters first"; a word is
// a pair (blue chain, red chain).  Composition and factorisation rewrite
// words by square application: the square map sends the blue-red word b.r to
// the red-blue word r'.b', and its inverse bubbles blue letters leftwards.
// ---------------------------------------------------------------------------

class SkeletonGraph final : public TruncatedKGraph {
public:
    /// `validate` controls the square-table checks (completeness, uniqueness,
    /// bijectivity).  Tests use validate=false to feed corrupted tables to
    /// verify_axioms.
    SkeletonGraph(Skeleton2 skeleton, Degree depth, bool validate = true)
        : TruncatedKGraph(std::move(depth)), sk_(std::move(skeleton)) {
        if (this->depth().rank() != 2)
            throw std::invalid_argument("SkeletonGraph: depth must have rank 2");
        build_square_maps(validate);
        require_no_sources();
        build_morphisms();
        finalize();
        build_tables();
    }

    std::string label(MorphismId m) const override {
        if (is_vertex(m)) return sk_.vertex_name(static_cast<std::uint32_t>(m));
        std::string out;
        for (std::uint32_t b : blues_[m]) {
            if (!out.empty()) out += '.';
            out += sk_.blue()[b].name;
        }
        for (std::uint32_t r : reds_[m]) {
            if (!out.empty()) out += '.';
            out += sk_.red()[r].name;
        }
        return out;
    }

    const Skeleton2& skeleton() const { return sk_; }

protected:
    std::optional<MorphismId> compose_impl(MorphismId a, MorphismId b) const override {
        auto it = compose_table_.find(pack(a, b));
        if (it == compose_table_.end()) return std::nullopt;
        return it->second;
    }

    std::pair<MorphismId, MorphismId> factor_impl(MorphismId lam, const Degree& m) const override {
        auto it = factor_table_.find(split_key(lam, m[0], m[1]));
        if (it == factor_table_.end())
            throw std::runtime_error("factorisation undefined at " + label(lam) +
                                     " split " + m.to_string() + " (incomplete square table)");
        return it->second;
    }

private:
    using Word = std::vector<std::uint32_t>;

    void build_square_maps(bool validate) {
        for (const auto& sq : sk_.squares()) {
            const auto& b = sk_.blue()[sq.b];
            const auto& r = sk_.red()[sq.r];
            const auto& r2 = sk_.red()[sq.r2];
            const auto& b2 = sk_.blue()[sq.b2];
            if (validate) {
                if (b.source != r.range)
                    throw std::invalid_argument("square (" + b.name + "," + r.name +
                                                "): blue-red pair not composable");
                if (r2.source != b2.range)
                    throw std::invalid_argument("square ~(" + r2.name + "," + b2.name +
                                                "): red-blue pair not composable");
                if (r2.range != b.range || b2.source != r.source)
                    throw std::invalid_argument("square (" + b.name + "," + r.name + "," + r2.name +
                                                "," + b2.name + "): endpoint mismatch");
                if (fsq_.count(pack(sq.b, sq.r)))
                    throw std::invalid_argument("duplicate square for blue-red pair (" + b.name +
                                                "," + r.name + ")");
                if (isq_.count(pack(sq.r2, sq.b2)))
                    throw std::invalid_argument("square bijectivity failure: red-blue pair (" +
                                                r2.name + "," + b2.name + ") hit twice");
            }
            fsq_[pack(sq.b, sq.r)] = {sq.r2, sq.b2};
            isq_[pack(sq.r2, sq.b2)] = {sq.b, sq.r};
        }
        if (validate) {
            for (std::uint32_t b = 0; b < sk_.blue().size(); ++b)
                for (std::uint32_t r = 0; r < sk_.red().size(); ++r)
                    if (sk_.blue()[b].source == sk_.red()[r].range && !fsq_.count(pack(b, r)))
                        throw std::invalid_argument("missing square for blue-red pair (" +
                                                    sk_.blue()[b].name + "," + sk_.red()[r].name + ")");
            for (std::uint32_t b = 0; b < sk_.blue().size(); ++b)
                for (std::uint32_t r = 0; r < sk_.red().size(); ++r)
                    if (sk_.red()[r].source == sk_.blue()[b].range && !isq_.count(pack(r, b)))
                        throw std::invalid_argument("square bijectivity failure: red-blue pair (" +
                                                    sk_.red()[r].name + "," + sk_.blue()[b].name +
                                                    ") not covered");
        }
    }

    void require_no_sources() const {
        for (std::uint32_t v = 0; v < sk_.vertex_count(); ++v) {
            bool has_blue = false, has_red = false;
            for (const auto& e : sk_.blue()) has_blue |= (e.range == v);
            for (const auto& e : sk_.red()) has_red |= (e.range == v);
            if (!has_blue || !has_red)
                throw std::invalid_argument("Skeleton2: vertex " + sk_.vertex_name(v) +
                                            " receives no " + (has_blue ? "red" : "blue") +
                                            " edge (source in the 2-graph)");
        }
    }

    void build_morphisms() {
        const std::uint32_t nv = static_cast<std::uint32_t>(sk_.vertex_count());
        for (std::uint32_t v = 0; v < nv; ++v) {
            intern_vertex();
            blues_.emplace_back();
            reds_.emplace_back();
        }
        for (std::uint32_t v = 0; v < nv; ++v) key_[{{}, {}, v}] = v;

        // chains by length, lexicographically by construction order
        auto chains = [&](const std::vector<Skeleton2::Edge>& side, std::uint32_t maxlen) {
            std::vector<std::vector<Word>> by_len(maxlen + 1);
            for (std::uint32_t e = 0; e < side.size(); ++e) by_len[1].push_back({e});
            for (std::uint32_t len = 2; len <= maxlen; ++len)
                for (const Word& c : by_len[len - 1])
                    for (std::uint32_t e = 0; e < side.size(); ++e)
                        if (side[c.back()].source == side[e].range) {
                            Word w = c;
                            w.push_back(e);
                            by_len[len].push_back(std::move(w));
                        }
            return by_len;
        };
        auto blue_chains = chains(sk_.blue(), depth()[0]);
        auto red_chains = chains(sk_.red(), depth()[1]);

        for_each_degree_leq(depth(), [&](const Degree& d) {
            std::uint32_t p = d[0], q = d[1];
            if (p == 0 && q == 0) return;
            if (q == 0) {
                for (const Word& B : blue_chains[p]) add_word(B, {});
            } else if (p == 0) {
                for (const Word& R : red_chains[q]) add_word({}, R);
            } else {
                for (const Word& B : blue_chains[p])
                    for (const Word& R : red_chains[q])
                        if (sk_.blue()[B.back()].source == sk_.red()[R.front()].range)
                            add_word(B, R);
            }
        });
    }

    void add_word(Word B, Word R) {
        std::uint32_t p = static_cast<std::uint32_t>(B.size());
        std::uint32_t q = static_cast<std::uint32_t>(R.size());
        MorphismId r, s;
        if (p > 0) r = sk_.blue()[B.front()].range;
        else r = sk_.red()[R.front()].range;
        if (q > 0) s = sk_.red()[R.back()].source;
        else s = sk_.blue()[B.back()].source;
        std::uint32_t anchor = p > 0 ? sk_.blue()[B.front()].range : sk_.red()[R.front()].range;
        MorphismId id = intern(Degree{p, q}, r, s);
        key_[{B, R, anchor}] = id;
        blues_.push_back(std::move(B));
        reds_.push_back(std::move(R));
    }

    /// Normal form of the word R.B (reds then blues): bubbles each blue
    /// letter leftwards with inverse squares.  Returns nullopt if a needed
    /// square is missing (possible only with validate=false).
    std::optional<std::pair<Word, Word>> merge(Word reds, const Word& blues) const {
        Word blues_out;
        for (std::uint32_t b : blues) {
            std::uint32_t cur = b;
            for (std::size_t i = reds.size(); i-- > 0;) {
                auto it = isq_.find(pack(reds[i], cur));
                if (it == isq_.end()) return std::nullopt;
                cur = it->second.first;
                reds[i] = it->second.second;
            }
            blues_out.push_back(cur);
        }
        return std::make_pair(std::move(blues_out), std::move(reds));
    }

    /// Normal form of the word B.R as reds-first: bubbles each red letter
    /// leftwards with forward squares.
    std::optional<std::pair<Word, Word>> split_reds_left(Word blues, const Word& reds) const {
        Word reds_out;
        for (std::uint32_t r : reds) {
            std::uint32_t cur = r;
            for (std::size_t i = blues.size(); i-- > 0;) {
                auto it = fsq_.find(pack(blues[i], cur));
                if (it == fsq_.end()) return std::nullopt;
                cur = it->second.first;
                blues[i] = it->second.second;
            }
            reds_out.push_back(cur);
        }
        return std::make_pair(std::move(reds_out), std::move(blues));
    }

    std::optional<MorphismId> lookup(const Word& B, const Word& R, std::uint32_t anchor) const {
        auto it = key_.find(std::make_tuple(B, R, anchor));
        if (it == key_.end()) return std::nullopt;
        return it->second;
    }

    void build_tables() {
        // composition on all endpoint-compatible pairs within depth
        for (MorphismId a = 0; a < size(); ++a) {
            for_each_degree_leq(depth() - degree(a), [&](const Degree& db) {
                for (MorphismId b : range_set(source(a), db)) {
                    auto m = merge(reds_[a], blues_[b]);
                    if (!m) return;
                    Word B = blues_[a];
                    B.insert(B.end(), m->first.begin(), m->first.end());
                    Word R = m->second;
                    R.insert(R.end(), reds_[b].begin(), reds_[b].end());
                    std::uint32_t anchor = vertex_of(range(a));
                    auto id = lookup(B, R, anchor);
                    if (id) compose_table_[pack(a, b)] = *id;
                }
            });
        }
        // factorisation of every stored morphism at every split
        for (MorphismId lam = 0; lam < size(); ++lam) {
            const Degree& d = degree(lam);
            for_each_degree_leq(d, [&](const Degree& m) {
                std::uint32_t p1 = m[0], q1 = m[1];
                Word B1(blues_[lam].begin(), blues_[lam].begin() + p1);
                Word B2(blues_[lam].begin() + p1, blues_[lam].end());
                auto srl = split_reds_left(B2, reds_[lam]);
                if (!srl) return;
                const Word& Rt = srl->first;
                const Word& B2t = srl->second;
                Word Rmu(Rt.begin(), Rt.begin() + q1);
                auto nu_words = merge(Word(Rt.begin() + q1, Rt.end()), B2t);
                if (!nu_words) return;
                std::uint32_t mu_anchor =
                    !B1.empty() ? sk_.blue()[B1.front()].range
                                : (!Rmu.empty() ? sk_.red()[Rmu.front()].range : vertex_of(range(lam)));
                auto mu = lookup(B1, Rmu, mu_anchor);
                std::uint32_t nu_anchor =
                    !nu_words->first.empty()
                        ? sk_.blue()[nu_words->first.front()].range
                        : (!nu_words->second.empty() ? sk_.red()[nu_words->second.front()].range
                                                     : 0);
                if (nu_words->first.empty() && nu_words->second.empty()) {
                    // nu is the source vertex of lam
                    nu_anchor = vertex_of(source(lam));
                }
                auto nu = lookup(nu_words->first, nu_words->second, nu_anchor);
                if (mu && nu) factor_table_[split_key(lam, p1, q1)] = {*mu, *nu};
            });
        }
    }

    std::uint32_t vertex_of(MorphismId v) const { return static_cast<std::uint32_t>(v); }

    static std::uint64_t pack(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }
    static std::uint64_t split_key(std::uint64_t lam, std::uint32_t p, std::uint32_t q) {
        return (lam << 32) | (std::uint64_t(p) << 16) | q;
    }

    Skeleton2 sk_;
    std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> fsq_;  // (b,r) -> (r',b')
    std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> isq_;  // (r',b') -> (b,r)
    std::vector<Word> blues_, reds_;
    std::map<std::tuple<Word, Word, std::uint32_t>, MorphismId> key_;
    std::unordered_map<std::uint64_t, MorphismId> compose_table_;
    std::unordered_map<std::uint64_t, std::pair<MorphismId, MorphismId>> factor_table_;
};

// ---------------------------------------------------------------------------
// Cartesian product of two truncated k-graphs.
// ---------------------------------------------------------------------------

class ProductGraph final : public TruncatedKGraph {
public:
    ProductGraph(KGraphPtr g1, KGraphPtr g2)
        : TruncatedKGraph(concat(g1->depth(), g2->depth())), g1_(std::move(g1)), g2_(std::move(g2)) {
        const std::uint64_t n1 = g1_->size(), n2 = g2_->size();
        if (n1 * n2 >= kNoMorphism)
            throw std::invalid_argument("ProductGraph: too many morphism pairs");
        size2_ = static_cast<std::uint32_t>(n2);
        for (MorphismId a = 0; a < n1; ++a)
            for (MorphismId b = 0; b < n2; ++b)
                intern(concat(g1_->degree(a), g2_->degree(b)),
                       pair_id(g1_->range(a), g2_->range(b)),
                       pair_id(g1_->source(a), g2_->source(b)));
        finalize();
    }

    std::string label(MorphismId m) const override {
        return "(" + g1_->label(first(m)) + "," + g2_->label(second(m)) + ")";
    }

    MorphismId pair_id(MorphismId a, MorphismId b) const { return a * size2_ + b; }
    MorphismId first(MorphismId m) const { return m / size2_; }
    MorphismId second(MorphismId m) const { return m % size2_; }
    const KGraphPtr& factor1() const { return g1_; }
    const KGraphPtr& factor2() const { return g2_; }

protected:
    std::optional<MorphismId> compose_impl(MorphismId a, MorphismId b) const override {
        auto c1 = g1_->try_compose(first(a), first(b));
        if (!c1) return std::nullopt;
        auto c2 = g2_->try_compose(second(a), second(b));
        if (!c2) return std::nullopt;
        return pair_id(*c1, *c2);
    }

    std::pair<MorphismId, MorphismId> factor_impl(MorphismId lam, const Degree& m) const override {
        const std::size_t k1 = g1_->rank();
        Degree m1(k1), m2(rank() - k1);
        for (std::size_t i = 0; i < k1; ++i) m1[i] = m[i];
        for (std::size_t i = k1; i < rank(); ++i) m2[i - k1] = m[i];
        auto f1 = g1_->factor(first(lam), m1);
        auto f2 = g2_->factor(second(lam), m2);
        return {pair_id(f1.first, f2.first), pair_id(f1.second, f2.second)};
    }

private:
    static Degree concat(const Degree& a, const Degree& b) {
        std::vector<std::uint32_t> c = a.coords();
        c.insert(c.end(), b.coords().begin(), b.coords().end());
        return Degree(std::move(c));
    }

    KGraphPtr g1_, g2_;
    std::uint32_t size2_ = 0;
};

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

inline std::shared_ptr<const PathCategoryGraph> path_category(DirectedGraph digraph, std::uint32_t depth) {
    return std::make_shared<PathCategoryGraph>(std::move(digraph), depth);
}

inline std::shared_ptr<const SkeletonGraph> build_2graph(Skeleton2 skeleton, Degree depth,
                                                         bool validate = true) {
    return std::make_shared<SkeletonGraph>(std::move(skeleton), std::move(depth), validate);
}

inline std::shared_ptr<const ProductGraph> cartesian_product(KGraphPtr g1, KGraphPtr g2) {
    if (!g1 || !g2) throw std::invalid_argument("cartesian_product: null factor");
    if (g1->rank() == 0 || g2->rank() == 0)
        throw std::invalid_argument("cartesian_product: rank-0 factor not allowed");
    return std::make_shared<ProductGraph>(std::move(g1), std::move(g2));
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
    /// Associativity triples are enumerated exhaustively up to this many
    /// checks; beyond it, a deterministic proportional sample per degree
    /// triple is used and the report records the coverage.
    std::int64_t assoc_budget = 500000;
};

namespace detail {

using CountMatrix = std::vector<std::vector<std::int64_t>>;

inline CountMatrix mat_mul(const CountMatrix& a, const CountMatrix& b) {
    const std::size_t n = a.size();
    CountMatrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline std::int64_t mat_total(const CountMatrix& a) {
    std::int64_t t = 0;
    for (const auto& row : a)
        for (auto x : row) t += x;
    return t;
}

}  // namespace detail

/// Checks the k-graph axioms of a truncated graph by exhaustive enumeration
/// within depth: vertices are the degree-0 morphisms, identity laws, degree
/// functoriality, existence and uniqueness of factorisations for every
/// stored morphism and every split, associativity (budgeted), and
/// row-finiteness / no-sources for every vertex and degree <= depth.
///
/// Uniqueness is certified by a counting argument: the per-degree incidence
/// counts must satisfy C_{m} . C_{n} = C_{m+n} entrywise (so composition is a
/// bijection from composable pairs onto its target), and the factorisation
/// oracle supplies a verified section of it.
inline AxiomReport verify_axioms(const TruncatedKGraph& g, const VerifyOptions& opt = {}) {
    AxiomReport rep;
    const std::size_t V = g.vertices().size();
    rep.bump("morphisms", static_cast<std::int64_t>(g.size()));

    // vertices are exactly the degree-0 morphisms, with r = s = id
    for (MorphismId v : g.vertices()) {
        if (g.range(v) != v || g.source(v) != v)
            rep.fail("vertex-identity", g.label(v));
    }
    for (MorphismId m = 0; m < g.size(); ++m) {
        if (!g.is_vertex(g.range(m)) || !g.is_vertex(g.source(m)))
            rep.fail("range-source-are-vertices", g.label(m));
    }

    // identity laws
    for (MorphismId m = 0; m < g.size(); ++m) {
        auto left = g.try_compose(g.range(m), m);
        if (!left || *left != m) rep.fail("left-identity", g.label(m));
        auto right = g.try_compose(m, g.source(m));
        if (!right || *right != m) rep.fail("right-identity", g.label(m));
    }

    // no sources / row-finiteness within depth
    std::int64_t max_fan = 0;
    for_each_degree_leq(g.depth(), [&](const Degree& n) {
        for (MorphismId v : g.vertices()) {
            std::int64_t c = static_cast<std::int64_t>(g.range_set(v, n).size());
            max_fan = std::max(max_fan, c);
            if (c == 0) rep.fail("no-sources", g.label(v) + " has empty vLambda^" + n.to_string());
        }
    });
    rep.bump("max-range-fan", max_fan);

    // per-degree incidence count matrices
    std::map<std::vector<std::uint32_t>, detail::CountMatrix> counts;
    for_each_degree_leq(g.depth(), [&](const Degree& n) {
        counts.emplace(n.coords(), detail::CountMatrix(V, std::vector<std::int64_t>(V, 0)));
    });
    for (MorphismId m = 0; m < g.size(); ++m) {
        auto& cm = counts.at(g.degree(m).coords());
        cm[g.vertex_position(g.range(m))][g.vertex_position(g.source(m))] += 1;
    }

    // counting form of unique factorisation: C_m . C_n == C_{m+n}
    std::int64_t degree_pairs = 0;
    for_each_degree_leq(g.depth(), [&](const Degree& m) {
        for_each_degree_leq(g.depth() - m, [&](const Degree& n) {
            ++degree_pairs;
            auto prod = detail::mat_mul(counts.at(m.coords()), counts.at(n.coords()));
            if (prod != counts.at((m + n).coords()))
                rep.fail("factorisation-counting",
                         "composable-pair count at " + m.to_string() + "+" + n.to_string() +
                             " differs from |Lambda^" + (m + n).to_string() + "|");
        });
    });
    rep.bump("degree-pairs", degree_pairs);

    // factorisation oracle: existence, degree/range/source laws, recomposition
    std::int64_t splits = 0;
    for (MorphismId lam = 0; lam < g.size(); ++lam) {
        const Degree& d = g.degree(lam);
        for_each_degree_leq(d, [&](const Degree& m) {
            ++splits;
            try {
                auto [mu, nu] = g.factor(lam, m);
                if (g.degree(mu) != m || g.degree(nu) != d - m)
                    rep.fail("factor-degree", g.label(lam) + " at " + m.to_string());
                if (g.range(mu) != g.range(lam) || g.source(nu) != g.source(lam) ||
                    g.source(mu) != g.range(nu))
                    rep.fail("factor-endpoints", g.label(lam) + " at " + m.to_string());
                auto back = g.try_compose(mu, nu);
                if (!back || *back != lam)
                    rep.fail("factor-recompose", g.label(lam) + " at " + m.to_string() + " gives " +
                                                     g.label(mu) + " * " + g.label(nu));
            } catch (const std::exception& e) {
                rep.fail("factor-undefined", g.label(lam) + " at " + m.to_string() + ": " + e.what());
            }
        });
    }
    rep.bump("splits-checked", splits);

    // associativity on composable triples within depth; when the triple count
    // exceeds the budget, a deterministic global stride samples them evenly
    {
        // dense degree indexing and per (vertex, degree) buckets
        std::vector<Degree> degs;
        std::map<std::vector<std::uint32_t>, std::uint32_t> deg_index;
        for_each_degree_leq(g.depth(), [&](const Degree& n) {
            deg_index[n.coords()] = static_cast<std::uint32_t>(degs.size());
            degs.push_back(n);
        });
        const std::size_t ND = degs.size();
        std::vector<std::vector<std::vector<MorphismId>>> buckets(
            V, std::vector<std::vector<MorphismId>>(ND));
        for (MorphismId m = 0; m < g.size(); ++m)
            buckets[g.vertex_position(g.range(m))][deg_index.at(g.degree(m).coords())].push_back(m);
        // addable[i] = degree indexes j with degs[i] + degs[j] <= depth, plus sum index
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> addable(ND);
        for (std::uint32_t i = 0; i < ND; ++i)
            for_each_degree_leq(g.depth() - degs[i], [&](const Degree& n) {
                std::uint32_t j = deg_index.at(n.coords());
                addable[i].push_back({j, deg_index.at((degs[i] + n).coords())});
            });

        std::int64_t assoc_total = 0;
        for (std::uint32_t i1 = 0; i1 < ND; ++i1) {
            for (auto [i2, s12] : addable[i1]) {
                auto c12 = detail::mat_mul(counts.at(degs[i1].coords()), counts.at(degs[i2].coords()));
                for (auto [i3, s123] : addable[s12])
                    assoc_total += detail::mat_total(detail::mat_mul(c12, counts.at(degs[i3].coords())));
            }
        }
        rep.bump("assoc-total", assoc_total);
        const std::int64_t stride =
            assoc_total > opt.assoc_budget && opt.assoc_budget > 0
                ? (assoc_total + opt.assoc_budget - 1) / opt.assoc_budget
                : 1;
        rep.bump("assoc-stride", stride);

        // span_table[v][s] = total rho candidates for a pair with source v and
        // combined degree index s; lets the sweep skip hit-free pairs in O(1)
        std::vector<std::vector<std::int64_t>> span_table(V, std::vector<std::int64_t>(ND, 0));
        for (std::uint32_t v = 0; v < V; ++v)
            for (std::uint32_t s = 0; s < ND; ++s)
                for (auto [i3, s123] : addable[s])
                    span_table[v][s] += static_cast<std::int64_t>(buckets[v][i3].size());

        std::int64_t counter = 0, checked = 0;
        for (MorphismId mu = 0; mu < g.size(); ++mu) {
            const std::uint32_t i1 = deg_index.at(g.degree(mu).coords());
            const auto& nu_buckets = buckets[g.vertex_position(g.source(mu))];
            for (auto [i2, s12] : addable[i1]) {
                for (MorphismId nu : nu_buckets[i2]) {
                    const std::uint32_t nu_src = g.vertex_position(g.source(nu));
                    const std::int64_t span = span_table[nu_src][s12];
                    // first sampled index at or after `counter` is counter+off
                    const std::int64_t off = (stride - (counter % stride)) % stride;
                    if (off >= span) {
                        counter += span;
                        continue;
                    }
                    std::optional<MorphismId> munu;
                    bool munu_ready = false;
                    const auto& rho_buckets = buckets[nu_src];
                    for (auto [i3, s123] : addable[s12]) {
                        const auto& rhos = rho_buckets[i3];
                        const std::int64_t nrho = static_cast<std::int64_t>(rhos.size());
                        std::int64_t j = (stride - (counter % stride)) % stride;
                        for (; j < nrho; j += stride) {
                            if (!munu_ready) {
                                munu = g.try_compose(mu, nu);
                                munu_ready = true;
                                if (!munu) rep.fail("compose-undefined", g.label(mu) + " * " + g.label(nu));
                            }
                            if (!munu) break;
                            MorphismId rho = rhos[static_cast<std::size_t>(j)];
                            ++checked;
                            auto lhs = g.try_compose(*munu, rho);
                            auto nurho = g.try_compose(nu, rho);
                            std::optional<MorphismId> rhs =
                                nurho ? g.try_compose(mu, *nurho) : std::nullopt;
                            if (!lhs || !rhs || *lhs != *rhs)
                                rep.fail("associativity", "(" + g.label(mu) + "," + g.label(nu) + "," +
                                                              g.label(rho) + ")");
                        }
                        counter += nrho;
                    }
                }
            }
        }
        rep.bump("assoc-checked", checked);
    }

    return rep;
}

}  // namespace kgraph
