#include "mtk/tight_span.hpp"
#include "mtk/error.hpp"

#include <algorithm>
#include <bitset>
#include <cstdlib>
#include <numeric>

#ifdef MTK_HAVE_OPENMP
#include <omp.h>
#endif

namespace mtk {

namespace {

// ---------------------------------------------------------------------------
// Exact double description over the homogenized admissibility cone.
//
// Work in Q^{n+1} with coordinates (t, f_1..f_n). The cone is
//   t >= 0,  f_x >= 0,  f_x + f_y - d(x,y) t >= 0  (x < y).
// Generators with t > 0 scale to the extreme points of the admissibility
// polyhedron, which are exactly the vertices of the tight span: a point is
// extreme iff its tight rows have full rank, and full rank forces every
// point into a tight pair, which is minimality.
// ---------------------------------------------------------------------------

constexpr size_t kMaxConstraints = 256;
using TightSet = std::bitset<kMaxConstraints>;

struct Generator {
    std::vector<Rat> coords; // size n+1, all nonnegative
    TightSet tight;          // constraint rows satisfied with equality
};

// Scale so the first nonzero coordinate is 1; rays are scale-free and this
// keeps coefficients small and comparisons canonical.
void normalize(Generator& g) {
    for (const Rat& c : g.coords)
        if (c != 0) {
            if (c != 1) {
                Rat inv = 1 / c;
                for (Rat& x : g.coords)
                    x *= inv;
            }
            return;
        }
}

std::vector<Generator> enumerate_cone(const FiniteMetricSpace& space) {
    const int n = space.size();
    const int dim = n + 1;
    const size_t constraint_count = static_cast<size_t>(dim) + static_cast<size_t>(n) * (n - 1) / 2;
    if (constraint_count > kMaxConstraints)
        throw Error("TooLarge", "constraint capacity exceeded at n = " + std::to_string(n));

    // Rows 0..n are the orthant; they define the initial generators.
    std::vector<Generator> gens(dim);
    for (int i = 0; i < dim; ++i) {
        gens[i].coords.assign(dim, Rat(0));
        gens[i].coords[i] = 1;
        for (int j = 0; j < dim; ++j)
            if (j != i)
                gens[i].tight.set(j);
    }

    std::vector<Rat> row(dim);
    size_t row_index = dim;
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y, ++row_index) {
            std::fill(row.begin(), row.end(), Rat(0));
            row[0] = -space.d(x, y);
            row[x + 1] = 1;
            row[y + 1] = 1;

            std::vector<Rat> slack(gens.size());
            std::vector<size_t> plus, zero, minus;
            for (size_t g = 0; g < gens.size(); ++g) {
                slack[g] = std::inner_product(row.begin(), row.end(), gens[g].coords.begin(), Rat(0));
                if (slack[g] > 0)
                    plus.push_back(g);
                else if (slack[g] < 0)
                    minus.push_back(g);
                else
                    zero.push_back(g);
            }

            if (minus.empty()) {
                for (size_t g : zero)
                    gens[g].tight.set(row_index);
                continue;
            }

            // Combinatorial adjacency: p and m span an edge of the current
            // cone iff no third generator is tight on their common rows.
            const size_t min_common = static_cast<size_t>(dim) - 2;
            std::vector<Generator> created;
            for (size_t p : plus) {
                for (size_t m : minus) {
                    TightSet common = gens[p].tight & gens[m].tight;
                    if (common.count() < min_common)
                        continue;
                    bool adjacent = true;
                    for (size_t g = 0; g < gens.size(); ++g) {
                        if (g == p || g == m)
                            continue;
                        if ((common & ~gens[g].tight).none()) {
                            adjacent = false;
                            break;
                        }
                    }
                    if (!adjacent)
                        continue;

                    Generator child;
                    child.coords.resize(dim);
                    for (int c = 0; c < dim; ++c)
                        child.coords[c] = slack[p] * gens[m].coords[c] - slack[m] * gens[p].coords[c];
                    normalize(child);
                    child.tight = common;
                    child.tight.set(row_index);
                    created.push_back(std::move(child));
                }
            }

            std::vector<Generator> next;
            next.reserve(plus.size() + zero.size() + created.size());
            for (size_t g : plus)
                next.push_back(std::move(gens[g]));
            for (size_t g : zero) {
                gens[g].tight.set(row_index);
                next.push_back(std::move(gens[g]));
            }
            for (auto& g : created)
                next.push_back(std::move(g));
            gens = std::move(next);
        }
    }
    return gens;
}

// ---------------------------------------------------------------------------
// Structure probes
// ---------------------------------------------------------------------------

// Minimality without re-checking admissibility (probe points are convex
// combinations of vertices, hence admissible).
bool is_minimal_unchecked(const FiniteMetricSpace& space, const std::vector<Rat>& values) {
    const int n = space.size();
    for (int x = 0; x < n; ++x) {
        Rat sup = space.d(x, 0) - values[0];
        for (int w = 1; w < n; ++w) {
            Rat v = space.d(x, w) - values[w];
            if (v > sup)
                sup = v;
        }
        if (values[x] != sup)
            return false;
    }
    return true;
}

int rank_of_values(const FiniteMetricSpace& space, const std::vector<Rat>& values) {
    const int n = space.size();
    // Incidence rank of the equality graph: each component contributes
    // size - 1, plus 1 more when it carries a loop or an odd cycle.
    std::vector<int> color(n, -1);      // bipartition class, -1 = unvisited
    std::vector<bool> zero_at(n, false);
    for (int x = 0; x < n; ++x)
        zero_at[x] = values[x] == 0;

    auto tight = [&](int x, int y) { return values[x] + values[y] == space.d(x, y); };

    int rank = 0;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (color[start] != -1)
            continue;
        color[start] = 0;
        stack.assign(1, start);
        std::vector<int> component;
        bool odd = false;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            component.push_back(u);
            if (zero_at[u])
                odd = true;
            for (int v = 0; v < n; ++v) {
                if (v == u || !tight(u, v))
                    continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    odd = true;
                }
            }
        }
        rank += static_cast<int>(component.size()) - 1 + (odd ? 1 : 0);
    }
    return rank;
}

struct ProbeSample {
    int rank;
    bool minimal;
};

ProbeSample probe_point(const FiniteMetricSpace& space, const std::vector<Rat>& values) {
    if (!is_minimal_unchecked(space, values))
        return {0, false};
    return {rank_of_values(space, values), true};
}

std::vector<Rat> midpoint(const ExtremalFunction& a, const ExtremalFunction& b) {
    std::vector<Rat> m(a.values.size());
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = (a.values[i] + b.values[i]) / 2;
    return m;
}

std::vector<Rat> centroid3(const ExtremalFunction& a, const ExtremalFunction& b,
                           const ExtremalFunction& c) {
    std::vector<Rat> m(a.values.size());
    for (size_t i = 0; i < m.size(); ++i)
        m[i] = (a.values[i] + b.values[i] + c.values[i]) / 3;
    return m;
}

} // namespace

ComplexProbe probe_complex_structure_serial(const FiniteMetricSpace& space,
                                            const std::vector<ExtremalFunction>& vertices) {
    const int n = space.size();
    const int v = static_cast<int>(vertices.size());
    ComplexProbe probe;
    probe.min_rank = n; // vertices themselves have full-rank tight graphs

    for (int i = 0; i < v; ++i) {
        for (int j = i + 1; j < v; ++j) {
            ProbeSample s = probe_point(space, midpoint(vertices[i], vertices[j]));
            if (!s.minimal)
                continue;
            probe.min_rank = std::min(probe.min_rank, s.rank);
            if (s.rank >= n - 1)
                probe.edges.emplace_back(i, j);
        }
    }
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            for (int k = j + 1; k < v; ++k) {
                ProbeSample s =
                    probe_point(space, centroid3(vertices[i], vertices[j], vertices[k]));
                if (s.minimal)
                    probe.min_rank = std::min(probe.min_rank, s.rank);
            }
    return probe;
}

ComplexProbe probe_complex_structure_parallel(const FiniteMetricSpace& space,
                                              const std::vector<ExtremalFunction>& vertices) {
#ifdef MTK_HAVE_OPENMP
    const int n = space.size();
    const int v = static_cast<int>(vertices.size());
    ComplexProbe probe;
    probe.min_rank = n;

#pragma omp parallel
    {
        int local_min = n;
        std::vector<std::pair<int, int>> local_edges;

#pragma omp for schedule(dynamic, 1) nowait
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) {
                ProbeSample s = probe_point(space, midpoint(vertices[i], vertices[j]));
                if (!s.minimal)
                    continue;
                local_min = std::min(local_min, s.rank);
                if (s.rank >= n - 1)
                    local_edges.emplace_back(i, j);
            }

#pragma omp for schedule(dynamic, 1) nowait
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j)
                for (int k = j + 1; k < v; ++k) {
                    ProbeSample s =
                        probe_point(space, centroid3(vertices[i], vertices[j], vertices[k]));
                    if (s.minimal)
                        local_min = std::min(local_min, s.rank);
                }

#pragma omp critical(mtk_probe_merge)
        {
            probe.min_rank = std::min(probe.min_rank, local_min);
            probe.edges.insert(probe.edges.end(), local_edges.begin(), local_edges.end());
        }
    }
    std::sort(probe.edges.begin(), probe.edges.end());
    return probe;
#else
    return probe_complex_structure_serial(space, vertices);
#endif
}

int tight_span_point_bound() {
    if (const char* env = std::getenv("MTK_MAX_POINTS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<int>(v);
    }
    return 10;
}

int tight_graph_rank(const FiniteMetricSpace& space, const ExtremalFunction& f) {
    if (f.size() != space.size())
        throw Error("SizeMismatch", "function does not match the space");
    return rank_of_values(space, f.values);
}

TightSpanComplex enumerate_tight_span(const FiniteMetricSpace& space) {
    return enumerate_tight_span(space, tight_span_point_bound());
}

TightSpanComplex enumerate_tight_span(const FiniteMetricSpace& space, int max_points) {
    const int n = space.size();
    if (n > max_points)
        throw Error("TooLarge", "space has " + std::to_string(n) +
                                    " points, enumeration bound is " + std::to_string(max_points));

    std::vector<Generator> gens = enumerate_cone(space);

    TightSpanComplex complex;
    complex.space = space;
    for (const auto& g : gens) {
        if (g.coords[0] == 0)
            continue; // recession ray of the admissibility polyhedron
        ExtremalFunction f;
        f.values.assign(g.coords.begin() + 1, g.coords.end());
        if (g.coords[0] != 1)
            for (Rat& v : f.values)
                v /= g.coords[0];
        complex.vertices.push_back(std::move(f));
    }
    std::sort(complex.vertices.begin(), complex.vertices.end(),
              [](const ExtremalFunction& a, const ExtremalFunction& b) {
                  return a.values < b.values;
              });
    complex.vertices.erase(std::unique(complex.vertices.begin(), complex.vertices.end()),
                           complex.vertices.end());

    for (const auto& f : complex.vertices)
        if (!is_admissible(space, f) || !is_minimal(space, f))
            throw Error("InternalError", "enumeration produced a non-extremal vertex");

    // Identify distance cones (a zero at x pins f = h_x) and name the rest.
    std::vector<bool> cone_seen(n, false);
    for (const auto& f : complex.vertices) {
        int point = -1;
        for (int x = 0; x < n; ++x)
            if (f.values[x] == 0) {
                point = x;
                break;
            }
        complex.cone_point.push_back(point);
        if (point >= 0)
            cone_seen[point] = true;
    }
    for (int x = 0; x < n; ++x)
        if (!cone_seen[x])
            throw Error("InternalError", "distance cone missing from the vertex set");

    int synthetic = 1;
    for (size_t i = 0; i < complex.vertices.size(); ++i) {
        if (complex.cone_point[i] >= 0) {
            complex.vertex_labels.push_back(space.labels[complex.cone_point[i]]);
        } else {
            std::string name;
            do {
                name = "s" + std::to_string(synthetic++);
            } while (space.find(name) != -1);
            complex.vertex_labels.push_back(name);
        }
    }

    for (const auto& f : complex.vertices) {
        std::vector<std::pair<int, int>> graph;
        for (int x = 0; x < n; ++x)
            for (int y = x; y < n; ++y)
                if (f.values[x] + f.values[y] == space.d(x, y))
                    graph.emplace_back(x, y);
        complex.vertex_tight_graphs.push_back(std::move(graph));
    }

    ComplexProbe probe;
#ifdef MTK_HAVE_OPENMP
    if (complex.vertices.size() >= 24)
        probe = probe_complex_structure_parallel(space, complex.vertices);
    else
        probe = probe_complex_structure_serial(space, complex.vertices);
#else
    probe = probe_complex_structure_serial(space, complex.vertices);
#endif
    complex.dimension = n - probe.min_rank;
    complex.edges = std::move(probe.edges);
    return complex;
}

bool membership(const FiniteMetricSpace& space, const ExtremalFunction& f) {
    if (!is_admissible(space, f))
        return false;
    return is_minimal(space, f);
}

FiniteMetricSpace vertex_metric_space(const TightSpanComplex& complex) {
    if (complex.vertices.empty())
        throw Error("EmptySpace", "complex has no vertices");
    const int v = static_cast<int>(complex.vertices.size());
    std::vector<std::vector<Rat>> matrix(v, std::vector<Rat>(v, Rat(0)));
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) {
            Rat d = sup_distance(complex.vertices[i], complex.vertices[j]);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(complex.vertex_labels, matrix);
}

ExtremalFunction ball_intersection_witness(const FiniteMetricSpace& space,
                                           const BallFamily& family) {
    return minimize_to_extremal(space, extend_ball_family(space, family));
}

ExtremalFunction embed_point(const FiniteMetricSpace& space, int x) {
    return distance_cone(space, x);
}

} // namespace mtk
