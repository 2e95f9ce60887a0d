#include "mtk/io.hpp"
#include "mtk/error.hpp"
#include "mtk/extension.hpp"
#include "mtk/extremal.hpp"
#include "mtk/four_point.hpp"
#include "mtk/linking.hpp"
#include "mtk/tight_span.hpp"
#include "mtk/tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace mtk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    if (!current.empty())
        lines.push_back(current);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return "";
    size_t end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

Rat parse_entry(const std::string& text, size_t line, size_t field) {
    try {
        return parse_rational(text);
    } catch (const Error&) {
        throw Error("ParseError", "line " + std::to_string(line) + ", field " +
                                      std::to_string(field) + ": bad rational '" + text + "'");
    }
}

struct RawMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<Rat>> matrix;
};

RawMatrix parse_matrix_csv(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty())
        lines.pop_back();
    if (lines.size() < 2)
        throw Error("ParseError", "matrix csv needs a header and at least one row");

    std::vector<std::string> header = split_fields(lines[0], ',');
    RawMatrix raw;
    for (size_t i = 1; i < header.size(); ++i)
        raw.labels.push_back(trim(header[i]));
    const size_t n = raw.labels.size();
    if (lines.size() - 1 != n)
        throw Error("ParseError", "expected " + std::to_string(n) + " rows, found " +
                                      std::to_string(lines.size() - 1));

    for (size_t r = 0; r < n; ++r) {
        std::vector<std::string> fields = split_fields(lines[r + 1], ',');
        if (fields.size() != n + 1)
            throw Error("ParseError",
                        "line " + std::to_string(r + 2) + ": expected " + std::to_string(n + 1) +
                            " fields, found " + std::to_string(fields.size()));
        if (trim(fields[0]) != raw.labels[r])
            throw Error("ParseError", "line " + std::to_string(r + 2) + ": row label '" +
                                          trim(fields[0]) + "' does not match header order");
        std::vector<Rat> row;
        for (size_t c = 1; c < fields.size(); ++c)
            row.push_back(parse_entry(trim(fields[c]), r + 2, c + 1));
        raw.matrix.push_back(std::move(row));
    }
    return raw;
}

RawMatrix parse_matrix_phylip(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    size_t cursor = 0;
    while (cursor < lines.size() && trim(lines[cursor]).empty())
        ++cursor;
    if (cursor == lines.size())
        throw Error("ParseError", "empty phylip input");

    size_t n = 0;
    {
        std::istringstream head(lines[cursor]);
        long long count = 0;
        if (!(head >> count) || count <= 0)
            throw Error("ParseError", "first phylip line must be the point count");
        n = static_cast<size_t>(count);
    }
    ++cursor;

    RawMatrix raw;
    std::vector<std::vector<Rat>> rows;
    for (size_t r = 0; r < n; ++r, ++cursor) {
        while (cursor < lines.size() && trim(lines[cursor]).empty())
            ++cursor;
        if (cursor >= lines.size())
            throw Error("ParseError", "phylip input ends after " + std::to_string(r) + " rows");
        std::istringstream stream(lines[cursor]);
        std::string label;
        stream >> label;
        if (label.empty())
            throw Error("ParseError", "line " + std::to_string(cursor + 1) + ": missing label");
        raw.labels.push_back(label);
        std::vector<Rat> row;
        std::string token;
        while (stream >> token)
            row.push_back(parse_entry(token, cursor + 1, row.size() + 2));
        // Full square rows carry n entries; strict lower-triangle rows carry r.
        if (row.size() != n && row.size() != r)
            throw Error("ParseError", "line " + std::to_string(cursor + 1) + ": expected " +
                                          std::to_string(n) + " or " + std::to_string(r) +
                                          " distances, found " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }

    bool lower = n > 0 && rows[0].size() == 0 && (n < 2 || rows[1].size() == 1);
    raw.matrix.assign(n, std::vector<Rat>(n, Rat(0)));
    for (size_t r = 0; r < n; ++r) {
        if (rows[r].size() != (lower ? r : n))
            throw Error("ParseError", "phylip rows mix full and lower-triangle layout");
        for (size_t c = 0; c < rows[r].size(); ++c) {
            raw.matrix[r][c] = rows[r][c];
            if (lower)
                raw.matrix[c][r] = rows[r][c];
        }
    }
    return raw;
}

RawMatrix merge_zero_groups(RawMatrix raw) {
    const size_t n = raw.labels.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (raw.matrix[i].size() != n || raw.matrix[i][j] != raw.matrix[j][i])
                return raw; // let validate_metric report the shape/symmetry problem

    std::vector<size_t> keep;
    std::vector<long> merged_into(n, -1);
    for (size_t i = 0; i < n; ++i) {
        bool duplicate = false;
        for (size_t k : keep)
            if (raw.matrix[i][k] == 0) {
                // Consistency: the dropped row must agree with its survivor.
                for (size_t z = 0; z < n; ++z)
                    if (raw.matrix[i][z] != raw.matrix[k][z])
                        throw Error("TriangleViolation",
                                    "d(" + raw.labels[i] + "," + raw.labels[k] +
                                        ") = 0 but the rows differ at " + raw.labels[z]);
                duplicate = true;
                merged_into[i] = static_cast<long>(k);
                break;
            }
        if (!duplicate)
            keep.push_back(i);
    }
    if (keep.size() == n)
        return raw;

    RawMatrix out;
    for (size_t i : keep)
        out.labels.push_back(raw.labels[i]);
    out.matrix.assign(keep.size(), std::vector<Rat>(keep.size(), Rat(0)));
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = 0; b < keep.size(); ++b)
            out.matrix[a][b] = raw.matrix[keep[a]][keep[b]];
    return out;
}

} // namespace

FiniteMetricSpace parse_distance_input(std::string_view text, MatrixFormat format,
                                       bool merge_duplicates) {
    RawMatrix raw =
        format == MatrixFormat::csv ? parse_matrix_csv(text) : parse_matrix_phylip(text);
    if (merge_duplicates)
        raw = merge_zero_groups(std::move(raw));
    return validate_metric(std::move(raw.labels), raw.matrix);
}

PointSample parse_points_csv(std::string_view text) {
    std::vector<std::string> lines = split_lines(text);
    PointSample sample;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string line = trim(lines[i]);
        if (line.empty())
            continue;
        if (i == 0 && line == "label,x,y")
            continue;
        std::vector<std::string> fields = split_fields(line, ',');
        if (fields.size() != 3)
            throw Error("ParseError",
                        "line " + std::to_string(i + 1) + ": expected label,x,y");
        sample.labels.push_back(trim(fields[0]));
        sample.points.emplace_back(parse_entry(trim(fields[1]), i + 1, 2),
                                   parse_entry(trim(fields[2]), i + 1, 3));
    }
    if (sample.labels.empty())
        throw Error("ParseError", "no points in input");
    return sample;
}

std::string emit_matrix_csv(const FiniteMetricSpace& space) {
    std::string out = "labels";
    for (const auto& label : space.labels)
        out += "," + label;
    out += "\n";
    for (int i = 0; i < space.size(); ++i) {
        out += space.labels[i];
        for (int j = 0; j < space.size(); ++j)
            out += "," + format_rational(space.d(i, j));
        out += "\n";
    }
    return out;
}

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw Error("ParseError", "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

MatrixFormat format_from_name(const std::string& name) {
    if (name == "csv")
        return MatrixFormat::csv;
    if (name == "phylip")
        return MatrixFormat::phylip;
    throw Error("ParseError", "unknown format '" + name + "'");
}

ordered_json space_to_json(const FiniteMetricSpace& space) {
    ordered_json j;
    j["labels"] = space.labels;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < space.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < space.size(); ++k)
            row.push_back(format_rational(space.d(i, k)));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

ordered_json values_to_json(const std::vector<Rat>& values) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : values)
        arr.push_back(format_rational(v));
    return arr;
}

// Shared flags of every matrix-consuming subcommand.
struct MatrixInput {
    std::string path;
    std::string format = "csv";
    bool merge_duplicates = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--in", path, "distance matrix file, or - for stdin")->required();
        cmd->add_option("--format", format, "csv or phylip")
            ->check(CLI::IsMember({"csv", "phylip"}));
        cmd->add_flag("--merge-duplicates", merge_duplicates,
                      "collapse zero-distance duplicate points");
    }
    FiniteMetricSpace load() const {
        return parse_distance_input(read_input(path), format_from_name(format),
                                    merge_duplicates);
    }
};

BallFamily parse_ball_args(const FiniteMetricSpace& space,
                           const std::vector<std::string>& specs) {
    BallFamily family;
    for (const auto& spec : specs) {
        auto colon = spec.rfind(':');
        if (colon == std::string::npos)
            throw Error("ParseError", "ball '" + spec + "' is not label:radius");
        int center = space.find(spec.substr(0, colon));
        if (center < 0)
            throw Error("ParseError", "unknown ball center '" + spec.substr(0, colon) + "'");
        family.balls.push_back({center, parse_rational(spec.substr(colon + 1))});
    }
    return family;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact tight spans, tree metrics and extensions"};
    app.name("mtk");
    app.require_subcommand(1);

    MatrixInput validate_in, fourpoint_in, tightspan_in, tree_in, witness_in, extend_in;
    MatrixInput glue_base;

    auto* cmd_validate = app.add_subcommand("validate", "check the metric axioms");
    validate_in.attach(cmd_validate);

    auto* cmd_fourpoint = app.add_subcommand("fourpoint", "four-point condition report");
    fourpoint_in.attach(cmd_fourpoint);

    auto* cmd_tightspan = app.add_subcommand("tightspan", "enumerate the hyperconvex hull");
    tightspan_in.attach(cmd_tightspan);

    auto* cmd_tree = app.add_subcommand("tree", "realize a tree metric");
    tree_in.attach(cmd_tree);
    bool tree_dot = false, tree_newick = false;
    cmd_tree->add_flag("--dot", tree_dot, "emit DOT instead of Newick");
    cmd_tree->add_flag("--newick", tree_newick, "emit Newick (default; combine with --dot for both)");

    auto* cmd_witness = app.add_subcommand("witness", "hull point inside every ball");
    witness_in.attach(cmd_witness);
    std::vector<std::string> ball_specs;
    cmd_witness->add_option("--ball", ball_specs, "ball as label:radius (repeatable)")
        ->required();

    auto* cmd_glue = app.add_subcommand("glue", "link component spaces to a base space");
    glue_base.path = "";
    cmd_glue->add_option("--base", glue_base.path, "base space matrix file")->required();
    cmd_glue->add_option("--format", glue_base.format, "csv or phylip")
        ->check(CLI::IsMember({"csv", "phylip"}));
    std::vector<std::string> component_specs;
    cmd_glue->add_option("--component", component_specs,
                         "component as file:link_label:anchor_label (repeatable)");

    auto* cmd_river = app.add_subcommand("river", "river metric of a planar sample");
    std::string river_path;
    cmd_river->add_option("--in", river_path, "points csv (label,x,y), or - for stdin")
        ->required();

    auto* cmd_radial = app.add_subcommand("radial", "radial metric of a planar sample");
    std::string radial_path;
    bool radial_taxicab = false;
    cmd_radial->add_option("--in", radial_path, "points csv (label,x,y), or - for stdin")
        ->required();
    cmd_radial->add_flag("--taxicab", radial_taxicab, "taxicab norm instead of Euclidean");

    auto* cmd_extend = app.add_subcommand("extend", "extend a partial map with a modulus");
    extend_in.attach(cmd_extend);
    std::string map_path, lipschitz_text, modulus_text;
    cmd_extend->add_option("--map", map_path, "csv rows label,v1,...,vk for the mapped subset")
        ->required();
    cmd_extend->add_option("--lipschitz", lipschitz_text, "Lipschitz constant L");
    cmd_extend->add_option("--modulus", modulus_text,
                           "modulus pieces slope:intercept[,slope:intercept...]");

    std::vector<const char*> argv;
    argv.push_back("mtk");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_validate->parsed()) {
            FiniteMetricSpace space = validate_in.load();
            ordered_json j;
            j["ok"] = true;
            j["points"] = space.size();
            out << j.dump() << "\n";
        } else if (cmd_fourpoint->parsed()) {
            FiniteMetricSpace space = fourpoint_in.load();
            FourPointReport report = four_point_report(space);
            ordered_json j;
            j["holds"] = report.holds;
            j["excess"] = format_rational(report.excess);
            if (!report.holds) {
                ordered_json quad = ordered_json::array();
                for (int idx : report.worst_quadruple)
                    quad.push_back(space.labels[idx]);
                j["worst_quadruple"] = std::move(quad);
            }
            out << j.dump() << "\n";
        } else if (cmd_tightspan->parsed()) {
            FiniteMetricSpace space = tightspan_in.load();
            TightSpanComplex complex = enumerate_tight_span(space);
            ordered_json j;
            j["v"] = 1;
            j["space"] = space_to_json(space);
            ordered_json vertices = ordered_json::array();
            for (size_t i = 0; i < complex.vertices.size(); ++i) {
                ordered_json v;
                v["label"] = complex.vertex_labels[i];
                v["values"] = values_to_json(complex.vertices[i].values);
                vertices.push_back(std::move(v));
            }
            j["vertices"] = std::move(vertices);
            j["dimension"] = complex.dimension;
            ordered_json edges = ordered_json::array();
            for (const auto& [a, b] : complex.edges)
                edges.push_back(ordered_json::array({a, b}));
            j["edges"] = std::move(edges);
            out << j.dump() << "\n";
        } else if (cmd_tree->parsed()) {
            FiniteMetricSpace space = tree_in.load();
            WeightedTree tree = realize_tree(space);
            if (!tree_dot || tree_newick)
                out << to_newick(tree) << "\n";
            if (tree_dot)
                out << to_dot(tree);
        } else if (cmd_witness->parsed()) {
            FiniteMetricSpace space = witness_in.load();
            BallFamily family = parse_ball_args(space, ball_specs);
            ExtremalFunction g = ball_intersection_witness(space, family);
            ordered_json j;
            j["v"] = 1;
            j["values"] = values_to_json(g.values);
            out << j.dump() << "\n";
        } else if (cmd_glue->parsed()) {
            LinkSpec spec;
            spec.base = parse_distance_input(read_input(glue_base.path),
                                             format_from_name(glue_base.format), false);
            for (const auto& text : component_specs) {
                auto second = text.rfind(':');
                auto first = second == std::string::npos ? second : text.rfind(':', second - 1);
                if (first == std::string::npos || first == 0)
                    throw Error("ParseError",
                                "component '" + text + "' is not file:link:anchor");
                LinkSpec::Component comp;
                comp.space = parse_distance_input(read_input(text.substr(0, first)),
                                                  format_from_name(glue_base.format), false);
                std::string link_label = text.substr(first + 1, second - first - 1);
                std::string anchor_label = text.substr(second + 1);
                comp.link_point = comp.space.find(link_label);
                comp.anchor = spec.base.find(anchor_label);
                if (comp.link_point < 0)
                    throw Error("ParseError", "unknown link point '" + link_label + "'");
                if (comp.anchor < 0)
                    throw Error("ParseError", "unknown anchor '" + anchor_label + "'");
                spec.components.push_back(std::move(comp));
            }
            out << emit_matrix_csv(glue_spaces(spec));
        } else if (cmd_river->parsed()) {
            PointSample sample = parse_points_csv(read_input(river_path));
            out << emit_matrix_csv(river_metric(sample.points, sample.labels));
        } else if (cmd_radial->parsed()) {
            PointSample sample = parse_points_csv(read_input(radial_path));
            out << emit_matrix_csv(
                radial_metric(sample.points, sample.labels,
                              radial_taxicab ? RadialNorm::taxicab : RadialNorm::euclidean));
        } else if (cmd_extend->parsed()) {
            FiniteMetricSpace space = extend_in.load();
            if (lipschitz_text.empty() == modulus_text.empty())
                throw Error("ParseError", "give exactly one of --lipschitz or --modulus");

            Modulus modulus;
            if (!lipschitz_text.empty()) {
                modulus = Modulus::lipschitz(parse_rational(lipschitz_text));
            } else {
                for (const auto& piece : split_fields(modulus_text, ',')) {
                    auto colon = piece.find(':');
                    if (colon == std::string::npos)
                        throw Error("ParseError", "modulus piece '" + piece +
                                                      "' is not slope:intercept");
                    modulus.pieces.push_back({parse_rational(piece.substr(0, colon)),
                                              parse_rational(piece.substr(colon + 1))});
                }
            }

            PartialMap map;
            SupNormTarget target;
            for (const auto& line : split_lines(read_input(map_path))) {
                if (trim(line).empty())
                    continue;
                std::vector<std::string> fields = split_fields(line, ',');
                if (fields.size() < 2)
                    throw Error("ParseError", "map rows need label,v1,...");
                int point = space.find(trim(fields[0]));
                if (point < 0)
                    throw Error("ParseError", "unknown map label '" + trim(fields[0]) + "'");
                std::vector<Rat> row;
                for (size_t i = 1; i < fields.size(); ++i)
                    row.push_back(parse_rational(trim(fields[i])));
                if (target.rows.empty())
                    target.dims = static_cast<int>(row.size());
                else if (static_cast<int>(row.size()) != target.dims)
                    throw Error("ParseError", "map rows have inconsistent width");
                map.subset.push_back(point);
                target.rows.push_back(std::move(row));
            }
            map.target = std::move(target);

            auto table = extend_with_modulus(space, map, modulus);
            ordered_json j;
            j["v"] = 1;
            j["labels"] = space.labels;
            ordered_json rows = ordered_json::array();
            for (const auto& row : table)
                rows.push_back(values_to_json(row));
            j["values"] = std::move(rows);
            out << j.dump() << "\n";
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == "ParseError" ? 2 : 1;
    }
    return 0;
}

} // namespace mtk
