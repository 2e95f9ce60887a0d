#include "mtk/tree.hpp"
#include "mtk/extremal.hpp"
#include "mtk/tight_span.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace mtk {

namespace {

int other_end(const WeightedTree::Edge& e, int node) { return e.u == node ? e.v : e.u; }

// Distances from one node to every node (weighted BFS; trees have no cycles).
std::vector<Rat> node_distances(const WeightedTree& tree, int from) {
    std::vector<Rat> dist(tree.node_count(), Rat(-1));
    dist[from] = 0;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int e : tree.incident[u]) {
            int v = other_end(tree.edges[e], u);
            if (dist[v] < 0) {
                dist[v] = dist[u] + tree.edges[e].weight;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// Node sequence of the path between two nodes.
std::vector<int> node_path(const WeightedTree& tree, int from, int to) {
    std::vector<int> parent(tree.node_count(), -1);
    std::vector<bool> seen(tree.node_count(), false);
    seen[from] = true;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == to)
            break;
        for (int e : tree.incident[u]) {
            int v = other_end(tree.edges[e], u);
            if (!seen[v]) {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    std::vector<int> path;
    for (int u = to; u != -1; u = parent[u])
        path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

int edge_between(const WeightedTree& tree, int u, int v) {
    for (int e : tree.incident[u])
        if (other_end(tree.edges[e], u) == v)
            return e;
    throw Error("InternalError", "nodes are not adjacent");
}

Rat node_to_point(const WeightedTree& tree, const std::vector<Rat>& from_node,
                  const TreePoint& q) {
    if (q.is_node())
        return from_node[q.node];
    const auto& e = tree.edges[q.edge];
    return std::min(from_node[e.u] + q.offset, from_node[e.v] + (e.weight - q.offset));
}

} // namespace

int WeightedTree::find_node(const std::string& label) const {
    for (int i = 0; i < node_count(); ++i)
        if (node_labels[i] == label)
            return i;
    return -1;
}

WeightedTree build_tree(std::vector<std::string> node_labels, std::vector<bool> node_is_point,
                        std::vector<WeightedTree::Edge> edges) {
    const int n = static_cast<int>(node_labels.size());
    if (n == 0)
        throw Error("InvalidTree", "a tree needs at least one node");
    if (static_cast<int>(node_is_point.size()) != n)
        throw Error("InvalidTree", "point flags do not match the node list");
    if (static_cast<int>(edges.size()) != n - 1)
        throw Error("InvalidTree", "a tree on " + std::to_string(n) + " nodes needs " +
                                       std::to_string(n - 1) + " edges");
    std::set<std::string> seen;
    for (const auto& label : node_labels)
        if (label.empty() || !seen.insert(label).second)
            throw Error("InvalidTree", "node labels must be distinct and non-empty");

    WeightedTree tree;
    tree.node_labels = std::move(node_labels);
    tree.node_is_point = std::move(node_is_point);
    tree.edges = std::move(edges);
    tree.incident.resize(n);
    for (size_t e = 0; e < tree.edges.size(); ++e) {
        const auto& edge = tree.edges[e];
        if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n || edge.u == edge.v)
            throw Error("InvalidTree", "edge endpoints out of range");
        if (edge.weight <= 0)
            throw Error("InvalidTree", "edge weights must be positive");
        tree.incident[edge.u].push_back(static_cast<int>(e));
        tree.incident[edge.v].push_back(static_cast<int>(e));
    }

    // n-1 edges and connectivity together rule out cycles.
    std::vector<Rat> dist = node_distances(tree, 0);
    for (const Rat& d : dist)
        if (d < 0)
            throw Error("InvalidTree", "tree is not connected");

    for (int i = 0; i < n; ++i)
        if (tree.node_is_point[i])
            tree.leaf_map[tree.node_labels[i]] = i;
    return tree;
}

NotATreeMetric::NotATreeMetric(const FiniteMetricSpace& space, FourPointReport r)
    : Error("NotATreeMetric",
            "four-point condition fails at (" + space.labels[r.worst_quadruple[0]] + "," +
                space.labels[r.worst_quadruple[1]] + "," + space.labels[r.worst_quadruple[2]] +
                "," + space.labels[r.worst_quadruple[3]] + ") with excess " +
                format_rational(r.excess)),
      report(std::move(r)) {}

bool is_tree_metric(const FiniteMetricSpace& space) {
    return four_point_report(space).holds;
}

WeightedTree realize_tree(const FiniteMetricSpace& space) {
    FourPointReport report = four_point_report(space);
    if (!report.holds)
        throw NotATreeMetric(space, report);

    if (space.size() == 1)
        return build_tree({space.labels[0]}, {true}, {});

    TightSpanComplex complex = enumerate_tight_span(space);
    const int v = static_cast<int>(complex.vertices.size());
    if (static_cast<int>(complex.edges.size()) != v - 1)
        throw Error("InternalError", "tight span of a tree metric is not a tree");

    // Mutable copy for degree-2 contraction of synthetic nodes.
    std::vector<bool> alive(v, true);
    std::vector<std::vector<std::pair<int, Rat>>> adj(v); // neighbor, weight
    for (const auto& [a, b] : complex.edges) {
        Rat w = sup_distance(complex.vertices[a], complex.vertices[b]);
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
    }
    for (int i = 0; i < v; ++i) {
        if (complex.cone_point[i] >= 0 || adj[i].size() != 2)
            continue;
        auto [a, wa] = adj[i][0];
        auto [b, wb] = adj[i][1];
        alive[i] = false;
        auto drop = [&](int node, int neighbor) {
            auto& list = adj[node];
            list.erase(std::find_if(list.begin(), list.end(),
                                    [&](const auto& p) { return p.first == neighbor; }));
        };
        drop(a, i);
        drop(b, i);
        adj[a].emplace_back(b, wa + wb);
        adj[b].emplace_back(a, wa + wb);
        adj[i].clear();
    }

    // Surviving vertices keep lexicographic order; synthetic labels close up.
    std::vector<int> node_of(v, -1);
    std::vector<std::string> labels;
    std::vector<bool> is_point;
    int synthetic = 1;
    for (int i = 0; i < v; ++i) {
        if (!alive[i])
            continue;
        node_of[i] = static_cast<int>(labels.size());
        if (complex.cone_point[i] >= 0) {
            labels.push_back(space.labels[complex.cone_point[i]]);
            is_point.push_back(true);
        } else {
            std::string name;
            do {
                name = "s" + std::to_string(synthetic++);
            } while (space.find(name) != -1);
            labels.push_back(name);
            is_point.push_back(false);
        }
    }

    std::vector<WeightedTree::Edge> edges;
    for (int i = 0; i < v; ++i) {
        if (!alive[i])
            continue;
        for (const auto& [j, w] : adj[i])
            if (node_of[i] < node_of[j])
                edges.push_back({node_of[i], node_of[j], w});
    }
    WeightedTree tree = build_tree(std::move(labels), std::move(is_point), std::move(edges));

    for (int x = 0; x < space.size(); ++x) {
        std::vector<Rat> dist = node_distances(tree, tree.leaf_map.at(space.labels[x]));
        for (int y = 0; y < space.size(); ++y)
            if (dist[tree.leaf_map.at(space.labels[y])] != space.d(x, y))
                throw Error("InternalError", "tree realization does not reproduce the metric");
    }
    return tree;
}

TreePoint normalize_point(const WeightedTree& tree, const TreePoint& p) {
    if (p.is_node()) {
        if (p.node >= tree.node_count())
            throw Error("UnknownNode", "node index out of range");
        return p;
    }
    if (p.edge < 0 || p.edge >= static_cast<int>(tree.edges.size()))
        throw Error("UnknownEdge", "edge index out of range");
    const auto& e = tree.edges[p.edge];
    if (p.offset < 0 || p.offset > e.weight)
        throw Error("InvalidOffset", "offset outside the edge");
    if (p.offset == 0)
        return TreePoint::at_node(e.u);
    if (p.offset == e.weight)
        return TreePoint::at_node(e.v);
    return p;
}

Rat tree_distance(const WeightedTree& tree, const TreePoint& p_in, const TreePoint& q_in) {
    TreePoint p = normalize_point(tree, p_in);
    TreePoint q = normalize_point(tree, q_in);
    if (p.is_node())
        return node_to_point(tree, node_distances(tree, p.node), q);
    if (q.is_node())
        return node_to_point(tree, node_distances(tree, q.node), p);
    if (p.edge == q.edge)
        return abs(p.offset - q.offset);
    const auto& e = tree.edges[p.edge];
    std::vector<Rat> from_u = node_distances(tree, e.u);
    std::vector<Rat> from_v = node_distances(tree, e.v);
    return std::min(p.offset + node_to_point(tree, from_u, q),
                    (e.weight - p.offset) + node_to_point(tree, from_v, q));
}

TreePoint point_toward(const WeightedTree& tree, const TreePoint& p_in, const TreePoint& q_in,
                       const Rat& s) {
    TreePoint p = normalize_point(tree, p_in);
    TreePoint q = normalize_point(tree, q_in);
    if (s < 0 || s > tree_distance(tree, p, q))
        throw Error("InvalidOffset", "distance outside the path");
    if (s == 0)
        return p;

    if (!p.is_node()) {
        const auto& e = tree.edges[p.edge];
        if (!q.is_node() && q.edge == p.edge) {
            Rat t = q.offset > p.offset ? p.offset + s : p.offset - s;
            return normalize_point(tree, TreePoint::on_edge(p.edge, t));
        }
        // Leave via the endpoint on q's side of the edge.
        Rat via_u = p.offset + tree_distance(tree, TreePoint::at_node(e.u), q);
        Rat via_v = (e.weight - p.offset) + tree_distance(tree, TreePoint::at_node(e.v), q);
        int gate = via_u <= via_v ? e.u : e.v;
        Rat first_leg = gate == e.u ? p.offset : e.weight - p.offset;
        if (s < first_leg) {
            Rat t = gate == e.u ? p.offset - s : p.offset + s;
            return TreePoint::on_edge(p.edge, t);
        }
        return point_toward(tree, TreePoint::at_node(gate), q, s - first_leg);
    }

    if (!q.is_node()) {
        const auto& e = tree.edges[q.edge];
        std::vector<Rat> from_p = node_distances(tree, p.node);
        int gate = from_p[e.u] + q.offset <= from_p[e.v] + (e.weight - q.offset) ? e.u : e.v;
        if (s <= from_p[gate])
            return point_toward(tree, p, TreePoint::at_node(gate), s);
        Rat into = s - from_p[gate];
        Rat t = gate == e.u ? into : e.weight - into;
        return normalize_point(tree, TreePoint::on_edge(q.edge, t));
    }

    std::vector<int> path = node_path(tree, p.node, q.node);
    Rat covered = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        int e = edge_between(tree, path[i], path[i + 1]);
        const Rat& w = tree.edges[e].weight;
        if (covered + w >= s) {
            Rat into = s - covered;
            Rat t = tree.edges[e].u == path[i] ? into : tree.edges[e].weight - into;
            return normalize_point(tree, TreePoint::on_edge(e, t));
        }
        covered += w;
    }
    return q;
}

TreePoint tree_median(const WeightedTree& tree, const TreePoint& p, const TreePoint& q,
                      const TreePoint& r) {
    Rat pq = tree_distance(tree, p, q);
    Rat pr = tree_distance(tree, p, r);
    Rat qr = tree_distance(tree, q, r);
    return point_toward(tree, p, q, (pq + pr - qr) / 2);
}

std::optional<TreePoint> tree_ball_intersection(const WeightedTree& tree,
                                                const std::vector<TreeBall>& family) {
    std::vector<TreeBall> balls;
    balls.reserve(family.size());
    for (const auto& b : family) {
        if (b.radius < 0)
            throw Error("NegativeRadius", "ball radius must be nonnegative");
        balls.push_back({normalize_point(tree, b.center), b.radius});
    }
    if (balls.empty())
        return TreePoint::at_node(0);

    for (size_t i = 0; i < balls.size(); ++i)
        for (size_t j = i + 1; j < balls.size(); ++j)
            if (tree_distance(tree, balls[i].center, balls[j].center) >
                balls[i].radius + balls[j].radius)
                return std::nullopt;

    const int n = tree.node_count();
    std::vector<std::vector<Rat>> from_node(n);
    for (int u = 0; u < n; ++u)
        from_node[u] = node_distances(tree, u);

    auto phi_at_node = [&](int u) {
        Rat worst = node_to_point(tree, from_node[u], balls[0].center) - balls[0].radius;
        for (size_t i = 1; i < balls.size(); ++i) {
            Rat v = node_to_point(tree, from_node[u], balls[i].center) - balls[i].radius;
            if (v > worst)
                worst = v;
        }
        return worst;
    };

    Rat best_value = phi_at_node(0);
    TreePoint best = TreePoint::at_node(0);
    for (int u = 1; u < n; ++u) {
        Rat v = phi_at_node(u);
        if (v < best_value) {
            best_value = v;
            best = TreePoint::at_node(u);
        }
    }

    // Per edge, phi is a max of slope +-1 lines in the offset t; its exact
    // minimum sits at an endpoint or where a rising line meets a falling one.
    for (size_t e = 0; e < tree.edges.size(); ++e) {
        const auto& edge = tree.edges[e];
        std::vector<std::pair<Rat, Rat>> lines; // (slope, intercept): value = slope*t + intercept
        for (const auto& b : balls) {
            if (!b.center.is_node() && b.center.edge == static_cast<int>(e)) {
                lines.emplace_back(Rat(1), -b.center.offset - b.radius);
                lines.emplace_back(Rat(-1), b.center.offset - b.radius);
                continue;
            }
            Rat du = node_to_point(tree, from_node[edge.u], b.center);
            Rat dv = node_to_point(tree, from_node[edge.v], b.center);
            if (du + edge.weight == dv)
                lines.emplace_back(Rat(1), du - b.radius);
            else if (dv + edge.weight == du)
                lines.emplace_back(Rat(-1), edge.weight + dv - b.radius);
            else
                throw Error("InternalError", "ball center splits across an edge");
        }
        auto phi_line = [&](const Rat& t) {
            Rat worst = lines[0].first * t + lines[0].second;
            for (size_t i = 1; i < lines.size(); ++i) {
                Rat v = lines[i].first * t + lines[i].second;
                if (v > worst)
                    worst = v;
            }
            return worst;
        };
        std::vector<Rat> candidates{Rat(0), edge.weight};
        for (const auto& up : lines)
            for (const auto& down : lines)
                if (up.first == 1 && down.first == -1) {
                    Rat t = (down.second - up.second) / 2;
                    if (t > 0 && t < edge.weight)
                        candidates.push_back(t);
                }
        for (const Rat& t : candidates) {
            Rat v = phi_line(t);
            if (v < best_value) {
                best_value = v;
                best = normalize_point(tree, TreePoint::on_edge(static_cast<int>(e), t));
            }
        }
    }

    if (best_value > 0)
        throw Error("InternalError", "pairwise overlapping balls without a tree witness");
    return best;
}

namespace {

// Smallest leaf label in the component of `node` after removing `banned`.
std::string min_leaf_label(const WeightedTree& tree, int node, int banned) {
    std::string best;
    std::deque<int> queue{node};
    std::set<int> seen{node, banned};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (tree.degree(u) <= 1 && (best.empty() || tree.node_labels[u] < best))
            best = tree.node_labels[u];
        for (int e : tree.incident[u]) {
            int v = other_end(tree.edges[e], u);
            if (seen.insert(v).second)
                queue.push_back(v);
        }
    }
    return best;
}

void write_newick(const WeightedTree& tree, int node, int parent, std::string& out) {
    std::vector<std::pair<std::string, int>> children; // (sort key, edge)
    for (int e : tree.incident[node]) {
        int v = other_end(tree.edges[e], node);
        if (v != parent)
            children.emplace_back(min_leaf_label(tree, v, node), e);
    }
    std::sort(children.begin(), children.end());
    if (!children.empty()) {
        out += '(';
        for (size_t i = 0; i < children.size(); ++i) {
            if (i)
                out += ',';
            int e = children[i].second;
            write_newick(tree, other_end(tree.edges[e], node), node, out);
            out += ':';
            out += format_rational_decimal(tree.edges[e].weight);
        }
        out += ')';
    }
    if (tree.node_is_point[node])
        out += tree.node_labels[node];
}

} // namespace

std::string to_newick(const WeightedTree& tree) {
    int smallest_leaf = -1;
    for (int u = 0; u < tree.node_count(); ++u)
        if (tree.degree(u) <= 1 &&
            (smallest_leaf < 0 || tree.node_labels[u] < tree.node_labels[smallest_leaf]))
            smallest_leaf = u;

    int root = smallest_leaf;
    if (tree.node_count() > 2)
        root = other_end(tree.edges[tree.incident[smallest_leaf][0]], smallest_leaf);

    std::string out;
    write_newick(tree, root, -1, out);
    out += ';';
    return out;
}

std::string to_dot(const WeightedTree& tree) {
    std::ostringstream out;
    out << "graph tree {\n";
    for (int u = 0; u < tree.node_count(); ++u)
        out << "  \"" << tree.node_labels[u] << "\";\n";
    for (const auto& e : tree.edges)
        out << "  \"" << tree.node_labels[e.u] << "\" -- \"" << tree.node_labels[e.v]
            << "\" [label=\"" << format_rational_decimal(e.weight) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string describe_point(const WeightedTree& tree, const TreePoint& p_in) {
    TreePoint p = normalize_point(tree, p_in);
    if (p.is_node())
        return "node " + tree.node_labels[p.node];
    const auto& e = tree.edges[p.edge];
    return "edge " + tree.node_labels[e.u] + "-" + tree.node_labels[e.v] + " at " +
           format_rational(p.offset);
}

} // namespace mtk
