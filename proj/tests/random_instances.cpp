#include "random_instances.hpp"

#include <algorithm>

namespace mtk::testgen {

Rat random_rat(std::mt19937_64& rng, int lo, int hi, int max_den) {
    std::uniform_int_distribution<int> den_dist(1, max_den);
    int den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(static_cast<long>(lo) * den,
                                                 static_cast<long>(hi) * den);
    return Rat(num_dist(rng), den);
}

FiniteMetricSpace random_metric(std::mt19937_64& rng, int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("p" + std::to_string(i));
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    std::uniform_int_distribution<int> num(0, 24);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat d = 1 + Rat(num(rng), 24);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(labels, matrix);
}

FiniteMetricSpace random_tree_metric(std::mt19937_64& rng, int n) {
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent_dist(0, i - 1);
        int parent = parent_dist(rng);
        Rat w = random_rat(rng, 1, 10);
        for (int j = 0; j < i; ++j) {
            Rat d = matrix[parent][j] + w;
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("p" + std::to_string(i));
    return validate_metric(labels, matrix);
}

LeafTree random_leaf_tree(std::mt19937_64& rng, int leaves) {
    std::vector<std::string> labels;
    std::vector<bool> is_point;
    for (int i = 0; i < leaves; ++i) {
        labels.push_back(std::string(1, static_cast<char>('a' + i)));
        is_point.push_back(true);
    }

    std::vector<WeightedTree::Edge> edges;
    std::vector<int> active(leaves);
    for (int i = 0; i < leaves; ++i)
        active[i] = i;
    int internal = 1;
    while (active.size() > 1) {
        std::uniform_int_distribution<size_t> pick(0, active.size() - 1);
        size_t ai = pick(rng);
        std::swap(active[ai], active.back());
        int x = active.back();
        active.pop_back();
        std::uniform_int_distribution<size_t> pick2(0, active.size() - 1);
        size_t bi = pick2(rng);
        std::swap(active[bi], active.back());
        int y = active.back();
        active.pop_back();

        int joint = static_cast<int>(labels.size());
        labels.push_back("i" + std::to_string(internal++));
        is_point.push_back(false);
        edges.push_back({joint, x, random_rat(rng, 1, 10)});
        edges.push_back({joint, y, random_rat(rng, 1, 10)});
        active.push_back(joint);
    }

    LeafTree out{build_tree(labels, is_point, edges), {}};
    std::vector<std::vector<Rat>> matrix(leaves, std::vector<Rat>(leaves, Rat(0)));
    for (int i = 0; i < leaves; ++i)
        for (int j = i + 1; j < leaves; ++j) {
            Rat d = tree_distance(out.tree, TreePoint::at_node(i), TreePoint::at_node(j));
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    std::vector<std::string> leaf_labels(labels.begin(), labels.begin() + leaves);
    out.leaf_space = validate_metric(leaf_labels, matrix);
    return out;
}

BallFamily random_overlapping_family(std::mt19937_64& rng, const FiniteMetricSpace& space,
                                     int size) {
    std::uniform_int_distribution<int> center_dist(0, space.size() - 1);
    std::uniform_int_distribution<int> num(1, 40);
    BallFamily family;
    for (int i = 0; i < size; ++i)
        family.balls.push_back({center_dist(rng), Rat(num(rng), 20)});

    Rat scale = 1;
    for (size_t i = 0; i < family.balls.size(); ++i)
        for (size_t j = i + 1; j < family.balls.size(); ++j) {
            const auto& a = family.balls[i];
            const auto& b = family.balls[j];
            Rat needed = space.d(a.center, b.center) / (a.radius + b.radius);
            if (needed > scale)
                scale = needed;
        }
    if (scale > 1)
        for (auto& ball : family.balls)
            ball.radius *= scale;
    return family;
}

} // namespace mtk::testgen
