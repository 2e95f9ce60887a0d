#ifndef MTK_TREE_HPP
#define MTK_TREE_HPP

#include "mtk/error.hpp"
#include "mtk/four_point.hpp"
#include "mtk/metric_space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mtk {

// A positively weighted tree. Nodes carrying an original point label have
// node_is_point set; the remaining nodes are synthetic branch points.
struct WeightedTree {
    struct Edge {
        int u, v;
        Rat weight;
    };

    std::vector<std::string> node_labels;
    std::vector<bool> node_is_point;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> incident; // node -> incident edge ids
    std::map<std::string, int> leaf_map;    // original point label -> node

    int node_count() const { return static_cast<int>(node_labels.size()); }
    int degree(int node) const { return static_cast<int>(incident[node].size()); }
    int find_node(const std::string& label) const;
};

// A point of the continuum tree: a node, or an interior position on an edge
// measured from edges[edge].u (0 < offset < weight; endpoint positions
// normalize to node form).
struct TreePoint {
    int node = -1;
    int edge = -1;
    Rat offset = 0;

    static TreePoint at_node(int n) {
        TreePoint p;
        p.node = n;
        return p;
    }
    static TreePoint on_edge(int e, Rat off) {
        TreePoint p;
        p.node = -1;
        p.edge = e;
        p.offset = std::move(off);
        return p;
    }
    bool is_node() const { return node >= 0; }
};

/// Validate connectivity, acyclicity and positive weights; builds adjacency
/// and the point-label map. Throws InvalidTree.
WeightedTree build_tree(std::vector<std::string> node_labels, std::vector<bool> node_is_point,
                        std::vector<WeightedTree::Edge> edges);

class NotATreeMetric : public Error {
public:
    NotATreeMetric(const FiniteMetricSpace& space, FourPointReport report);
    FourPointReport report;
};

/// Finite spaces are tree metrics exactly when the four-point condition holds.
bool is_tree_metric(const FiniteMetricSpace& space);

/// Read the tree off the tight span: vertices of the 1-dimensional complex
/// become nodes, 1-skeleton edges become tree edges with sup-metric weights;
/// synthetic degree-2 nodes are contracted. Path distances reproduce the
/// input exactly. Throws NotATreeMetric (with the four-point report).
WeightedTree realize_tree(const FiniteMetricSpace& space);

/// Normalize an edge position at offset 0 or weight to node form; validates
/// indices and offset range (UnknownNode / UnknownEdge / InvalidOffset).
TreePoint normalize_point(const WeightedTree& tree, const TreePoint& p);

/// Unique path length between two tree points.
Rat tree_distance(const WeightedTree& tree, const TreePoint& p, const TreePoint& q);

/// The point at distance s from p on the path toward q (0 <= s <= d(p,q)).
TreePoint point_toward(const WeightedTree& tree, const TreePoint& p, const TreePoint& q,
                       const Rat& s);

/// The unique point common to all three pairwise paths.
TreePoint tree_median(const WeightedTree& tree, const TreePoint& p, const TreePoint& q,
                      const TreePoint& r);

struct TreeBall {
    TreePoint center;
    Rat radius;
};

/// A point inside every ball whenever the family pairwise overlaps
/// (Helly property of the continuum tree); absent iff some pair fails
/// to overlap. Minimizes max_i (d(p, c_i) - r_i) exactly per edge.
std::optional<TreePoint> tree_ball_intersection(const WeightedTree& tree,
                                                const std::vector<TreeBall>& family);

/// Rooted Newick text: root is the node adjacent to the lexicographically
/// smallest leaf (that leaf itself when the tree has <= 2 nodes), children
/// ordered by smallest descendant leaf label, branch lengths in shortest
/// exact decimal or p/q form.
std::string to_newick(const WeightedTree& tree);

/// Undirected DOT graph with weight-labeled edges.
std::string to_dot(const WeightedTree& tree);

/// Human-readable position ("node s1" or "edge a-s1 at 1/2") for diagnostics.
std::string describe_point(const WeightedTree& tree, const TreePoint& p);

} // namespace mtk

#endif
