#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgraph {

/// Presentation of a 2-graph by generators and factorisation squares.
/// Edges are given in the k-graph convention (range first): a blue edge b of
/// degree (1,0) runs r(b) <- s(b).  A square (b, r, r', b') records that the
/// degree-(1,1) path b.r factorises as r'.b'; completeness and bijectivity of
/// the square list are exactly the conditions for the presented category to
/// be a 2-graph.
class Skeleton2 {
public:
    struct Edge {
        std::string name;
        std::uint32_t range = 0;
        std::uint32_t source = 0;
    };
    struct Square {
        std::uint32_t b, r, r2, b2;  // b.r = r2.b2
    };

    std::uint32_t add_vertex(const std::string& name) {
        if (vertex_ids_.count(name))
            throw std::invalid_argument("Skeleton2: duplicate vertex " + name);
        std::uint32_t id = static_cast<std::uint32_t>(vertex_names_.size());
        vertex_ids_[name] = id;
        vertex_names_.push_back(name);
        return id;
    }

    void add_blue(const std::string& name, const std::string& range, const std::string& source) {
        add_edge(blue_, name, range, source);
    }
    void add_red(const std::string& name, const std::string& range, const std::string& source) {
        add_edge(red_, name, range, source);
    }

    void add_square(const std::string& b, const std::string& r,
                    const std::string& r2, const std::string& b2) {
        squares_.push_back({blue_id(b), red_id(r), red_id(r2), blue_id(b2)});
    }

    std::size_t vertex_count() const { return vertex_names_.size(); }
    const std::string& vertex_name(std::uint32_t v) const { return vertex_names_[v]; }
    const std::vector<Edge>& blue() const { return blue_; }
    const std::vector<Edge>& red() const { return red_; }
    const std::vector<Square>& squares() const { return squares_; }

private:
    void add_edge(std::vector<Edge>& side, const std::string& name,
                  const std::string& range, const std::string& source) {
        if (blue_ids_.count(name) || red_ids_.count(name))
            throw std::invalid_argument("Skeleton2: duplicate edge " + name);
        auto ir = vertex_ids_.find(range);
        auto is = vertex_ids_.find(source);
        if (ir == vertex_ids_.end() || is == vertex_ids_.end())
            throw std::invalid_argument("Skeleton2: edge " + name + " references unknown vertex");
        std::uint32_t id = static_cast<std::uint32_t>(side.size());
        (&side == &blue_ ? blue_ids_ : red_ids_)[name] = id;
        side.push_back({name, ir->second, is->second});
    }

    std::uint32_t blue_id(const std::string& name) const {
        auto it = blue_ids_.find(name);
        if (it == blue_ids_.end()) throw std::invalid_argument("Skeleton2: unknown blue edge " + name);
        return it->second;
    }
    std::uint32_t red_id(const std::string& name) const {
        auto it = red_ids_.find(name);
        if (it == red_ids_.end()) throw std::invalid_argument("Skeleton2: unknown red edge " + name);
        return it->second;
    }

    std::map<std::string, std::uint32_t> vertex_ids_;
    std::vector<std::string> vertex_names_;
    std::map<std::string, std::uint32_t> blue_ids_, red_ids_;
    std::vector<Edge> blue_, red_;
    std::vector<Square> squares_;
};

/// Parses the skeleton format:
///   vertex <name>
///   blue <name> <range> <source>
///   red <name> <range> <source>
///   square <b> <r> <r'> <b'>
inline Skeleton2 parse_skeleton(std::istream& in) {
    Skeleton2 sk;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto want = [&](int k) {
            std::vector<std::string> toks(k);
            for (auto& t : toks)
                if (!(ls >> t))
                    throw std::invalid_argument("skeleton line " + std::to_string(lineno) +
                                                ": " + kw + " needs " + std::to_string(k) + " arguments");
            return toks;
        };
        if (kw == "vertex") {
            sk.add_vertex(want(1)[0]);
        } else if (kw == "blue") {
            auto t = want(3);
            sk.add_blue(t[0], t[1], t[2]);
        } else if (kw == "red") {
            auto t = want(3);
            sk.add_red(t[0], t[1], t[2]);
        } else if (kw == "square") {
            auto t = want(4);
            sk.add_square(t[0], t[1], t[2], t[3]);
        } else {
            throw std::invalid_argument("skeleton line " + std::to_string(lineno) + ": unknown keyword " + kw);
        }
    }
    return sk;
}

}  // namespace kgraph
