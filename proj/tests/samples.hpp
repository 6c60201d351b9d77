#pragma once

// The shared sample corpus, defined programmatically so tests do not depend
// on file paths.  The files under samples/ mirror these definitions.

#include "kgraph/digraph.hpp"
#include "kgraph/skeleton.hpp"

namespace samples {

/// Single vertex with one loop e.
inline kgraph::DirectedGraph loop() {
    kgraph::DirectedGraph g;
    g.add_vertex("v");
    g.add_edge("e", "v", "v");
    return g;
}

/// Directed 3-cycle.
inline kgraph::DirectedGraph cycle3() {
    kgraph::DirectedGraph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_vertex("c");
    g.add_edge("x", "a", "b");
    g.add_edge("y", "b", "c");
    g.add_edge("z", "c", "a");
    return g;
}

/// Two vertices u -> w plus a loop at w.
inline kgraph::DirectedGraph twovertex() {
    kgraph::DirectedGraph g;
    g.add_vertex("u");
    g.add_vertex("w");
    g.add_edge("a", "u", "w");
    g.add_edge("b", "w", "w");
    return g;
}

/// Binary tree of depth 1 with return edges: root branches to two leaves,
/// both leaves return to the root.
inline kgraph::DirectedGraph btree() {
    kgraph::DirectedGraph g;
    g.add_vertex("r");
    g.add_vertex("l0");
    g.add_vertex("l1");
    g.add_edge("d0", "r", "l0");
    g.add_edge("d1", "r", "l1");
    g.add_edge("u0", "l0", "r");
    g.add_edge("u1", "l1", "r");
    return g;
}

/// One vertex, one blue loop f, one red loop g, commuting square: the
/// 2-graph is a copy of N^2 (one morphism per degree).
inline kgraph::Skeleton2 grid() {
    kgraph::Skeleton2 sk;
    sk.add_vertex("v");
    sk.add_blue("f", "v", "v");
    sk.add_red("g", "v", "v");
    sk.add_square("f", "g", "g", "f");
    return sk;
}

/// One vertex, blue loops f1 f2, red loop g, with the flip squares
/// f1.g = g.f2 and f2.g = g.f1.
inline kgraph::Skeleton2 flip() {
    kgraph::Skeleton2 sk;
    sk.add_vertex("v");
    sk.add_blue("f1", "v", "v");
    sk.add_blue("f2", "v", "v");
    sk.add_red("g", "v", "v");
    sk.add_square("f1", "g", "g", "f2");
    sk.add_square("f2", "g", "g", "f1");
    return sk;
}

}  // namespace samples
