#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgraph {

/// A finite directed graph E = (E^0, E^1, r_E, s_E) in the directed-graph
/// convention: an edge e runs from its source s_E(e) to its range r_E(e).
/// Here we require row-finite with no sinks: every vertex emits at least one
/// (and finitely many) edges, 0 < |{e : s_E(e) = v}| < oo.
class DirectedGraph {
public:
    struct Edge {
        std::string name;
        std::uint32_t src = 0;  // s_E(e)
        std::uint32_t dst = 0;  // r_E(e)
    };

    std::uint32_t add_vertex(const std::string& name) {
        if (vertex_ids_.count(name))
            throw std::invalid_argument("DirectedGraph: duplicate vertex " + name);
        std::uint32_t id = static_cast<std::uint32_t>(vertex_names_.size());
        vertex_ids_[name] = id;
        vertex_names_.push_back(name);
        out_edges_.emplace_back();
        in_edges_.emplace_back();
        return id;
    }

    void add_edge(const std::string& name, const std::string& src, const std::string& dst) {
        if (edge_ids_.count(name))
            throw std::invalid_argument("DirectedGraph: duplicate edge " + name);
        auto is = vertex_ids_.find(src);
        auto id = vertex_ids_.find(dst);
        if (is == vertex_ids_.end() || id == vertex_ids_.end())
            throw std::invalid_argument("DirectedGraph: edge " + name + " references unknown vertex");
        std::uint32_t eid = static_cast<std::uint32_t>(edges_.size());
        edge_ids_[name] = eid;
        edges_.push_back({name, is->second, id->second});
        out_edges_[is->second].push_back(eid);
        in_edges_[id->second].push_back(eid);
    }

    std::size_t vertex_count() const { return vertex_names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_name(std::uint32_t v) const { return vertex_names_[v]; }
    const Edge& edge(std::uint32_t e) const { return edges_[e]; }
    const std::vector<std::uint32_t>& out_edges(std::uint32_t v) const { return out_edges_[v]; }
    const std::vector<std::uint32_t>& in_edges(std::uint32_t v) const { return in_edges_[v]; }
    bool has_vertex(const std::string& name) const { return vertex_ids_.count(name) != 0; }
    std::uint32_t vertex_id(const std::string& name) const { return vertex_ids_.at(name); }

    /// Throws unless every vertex emits at least one edge.
    void require_no_sinks() const {
        if (vertex_names_.empty()) throw std::invalid_argument("DirectedGraph: empty vertex set");
        for (std::uint32_t v = 0; v < vertex_names_.size(); ++v)
            if (out_edges_[v].empty())
                throw std::invalid_argument("DirectedGraph: vertex " + vertex_names_[v] +
                                            " is a sink (emits no edge)");
    }

private:
    std::map<std::string, std::uint32_t> vertex_ids_;
    std::vector<std::string> vertex_names_;
    std::map<std::string, std::uint32_t> edge_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> out_edges_;
    std::vector<std::vector<std::uint32_t>> in_edges_;
};

/// Parses the line-oriented digraph format:
///   vertex <name>
///   edge <name> <src> <dst>
/// with '#' comments and blank lines ignored.
inline DirectedGraph parse_digraph(std::istream& in) {
    DirectedGraph g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            std::string name;
            if (!(ls >> name))
                throw std::invalid_argument("digraph line " + std::to_string(lineno) + ": vertex needs a name");
            g.add_vertex(name);
        } else if (kw == "edge") {
            std::string name, src, dst;
            if (!(ls >> name >> src >> dst))
                throw std::invalid_argument("digraph line " + std::to_string(lineno) + ": edge needs name src dst");
            g.add_edge(name, src, dst);
        } else {
            throw std::invalid_argument("digraph line " + std::to_string(lineno) + ": unknown keyword " + kw);
        }
    }
    return g;
}

}  // namespace kgraph
