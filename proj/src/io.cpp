#include "cohirf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace cohirf {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw load_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

ColumnKind kind_from_string(const std::string& s, const std::string& where) {
    if (s == "continuous") return ColumnKind::continuous;
    if (s == "categorical") return ColumnKind::categorical;
    if (s == "label") return ColumnKind::label;
    if (s == "ignore") return ColumnKind::ignore;
    throw load_error(where + ": unknown column kind '" + s + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_node_json(const HierarchyTree& tree, int id, ordered_json& out) {
    const HierarchyNode& node = tree.nodes[id];
    out["id"] = node.id;
    out["step"] = node.step;
    out["medoid_sample"] = node.medoid_sample;
    out["member_count"] = node.member_count;
    out["children"] = ordered_json::array();
    for (int child : node.children) {
        ordered_json j;
        append_node_json(tree, child, j);
        out["children"].push_back(std::move(j));
    }
}

void collect_nodes(const ordered_json& j, int parent, std::vector<HierarchyNode>& nodes) {
    HierarchyNode node;
    node.id = j.at("id").get<int>();
    node.step = j.at("step").get<int>();
    node.medoid_sample = j.at("medoid_sample").get<int>();
    node.member_count = j.at("member_count").get<int>();
    node.parent = parent;
    for (const auto& child : j.at("children")) {
        node.children.push_back(child.at("id").get<int>());
    }
    nodes.push_back(node);
    for (const auto& child : j.at("children")) collect_nodes(child, node.id, nodes);
}

}  // namespace

DatasetSchema load_schema(const std::string& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw load_error(path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("columns") || !j["columns"].is_object()) {
        throw load_error(path + ": expected an object with a 'columns' object");
    }
    DatasetSchema schema;
    for (auto it = j["columns"].begin(); it != j["columns"].end(); ++it) {
        if (!it.value().is_string()) throw load_error(path + ": column kinds must be strings");
        schema.columns.emplace_back(it.key(), kind_from_string(it.value(), path));
    }
    return schema;
}

Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 const std::optional<std::string>& label_column) {
    std::string text = read_file(path);

    std::vector<std::vector<std::string>> rows;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string line = text.substr(start, pos == std::string::npos ? pos : pos - start);
        start = pos == std::string::npos ? text.size() : pos + 1;
        if (trim(line).empty()) continue;
        rows.push_back(split_fields(line));
    }
    if (rows.empty()) throw load_error(path + ": empty file");

    const std::vector<std::string> header = rows.front();
    const int ncols = static_cast<int>(header.size());
    const int nrows = static_cast<int>(rows.size()) - 1;
    if (nrows < 1) throw load_error(path + ": no data rows");
    for (int i = 0; i < nrows; ++i) {
        if (static_cast<int>(rows[i + 1].size()) != ncols) {
            throw load_error(path + ": row " + std::to_string(i + 2) + " has " +
                             std::to_string(rows[i + 1].size()) + " fields, expected " +
                             std::to_string(ncols));
        }
    }

    // resolve per-column kinds: explicit schema must cover the file exactly;
    // otherwise numeric-parse success means continuous
    std::vector<ColumnKind> kinds(ncols);
    if (!schema.empty()) {
        std::unordered_map<std::string, ColumnKind> by_name;
        for (const auto& [name, kind] : schema.columns) by_name[name] = kind;
        if (by_name.size() != schema.columns.size()) {
            throw load_error(path + ": schema repeats a column name");
        }
        for (int c = 0; c < ncols; ++c) {
            auto it = by_name.find(header[c]);
            if (it == by_name.end()) {
                throw load_error(path + ": column '" + header[c] + "' not in schema");
            }
            kinds[c] = it->second;
        }
        if (by_name.size() != static_cast<std::size_t>(ncols)) {
            throw load_error(path + ": schema names a column the file does not have");
        }
    } else {
        for (int c = 0; c < ncols; ++c) {
            bool numeric = true;
            for (int i = 0; i < nrows && numeric; ++i) {
                double v;
                numeric = parse_double(rows[i + 1][c], v) && std::isfinite(v);
            }
            kinds[c] = numeric ? ColumnKind::continuous : ColumnKind::categorical;
        }
    }

    if (label_column) {
        bool found = false;
        for (int c = 0; c < ncols; ++c) {
            if (header[c] == *label_column) {
                found = true;
                kinds[c] = ColumnKind::label;
            } else if (kinds[c] == ColumnKind::label) {
                kinds[c] = ColumnKind::ignore;  // the explicit choice wins
            }
        }
        if (!found) throw load_error(path + ": label column '" + *label_column + "' not found");
    }
    int label_cols = 0;
    for (int c = 0; c < ncols; ++c) label_cols += kinds[c] == ColumnKind::label ? 1 : 0;
    if (label_cols > 1) throw load_error(path + ": more than one label column");

    Dataset out;
    std::vector<int> col_of(ncols, -1);  // first output column of each input column
    int width = 0;

    // first-appearance category registry per categorical column
    std::vector<std::vector<std::string>> categories(ncols);
    std::vector<std::unordered_map<std::string, int>> cat_index(ncols);
    for (int c = 0; c < ncols; ++c) {
        if (kinds[c] == ColumnKind::categorical) {
            for (int i = 0; i < nrows; ++i) {
                const std::string& v = rows[i + 1][c];
                if (cat_index[c].emplace(v, static_cast<int>(categories[c].size())).second) {
                    categories[c].push_back(v);
                }
            }
        }
    }
    for (int c = 0; c < ncols; ++c) {
        col_of[c] = width;
        if (kinds[c] == ColumnKind::continuous) {
            out.feature_names.push_back(header[c]);
            out.continuous_mask.push_back(true);
            width += 1;
        } else if (kinds[c] == ColumnKind::categorical) {
            for (const std::string& v : categories[c]) {
                out.feature_names.push_back(header[c] + "=" + v);
                out.continuous_mask.push_back(false);
            }
            width += static_cast<int>(categories[c].size());
        }
    }
    if (width == 0) throw load_error(path + ": no feature columns");

    out.x = Matrix::Zero(nrows, width);
    for (int c = 0; c < ncols; ++c) {
        if (kinds[c] == ColumnKind::continuous) {
            for (int i = 0; i < nrows; ++i) {
                double v;
                if (!parse_double(rows[i + 1][c], v) || !std::isfinite(v)) {
                    throw load_error(path + ": row " + std::to_string(i + 2) + ", column '" +
                                     header[c] + "': cannot parse '" + rows[i + 1][c] +
                                     "' as a finite number");
                }
                out.x(i, col_of[c]) = v;
            }
        } else if (kinds[c] == ColumnKind::categorical) {
            for (int i = 0; i < nrows; ++i) {
                out.x(i, col_of[c] + cat_index[c][rows[i + 1][c]]) = 1.0;
            }
        } else if (kinds[c] == ColumnKind::label) {
            Partition labels(nrows);
            std::unordered_map<std::string, int> ids;
            for (int i = 0; i < nrows; ++i) {
                labels[i] = ids.emplace(rows[i + 1][c], static_cast<int>(ids.size())).first->second;
            }
            out.labels = std::move(labels);
        }
    }
    return out;
}

Matrix standardize(const Matrix& x) {
    return standardize(x, std::vector<bool>(static_cast<std::size_t>(x.cols()), true));
}

Matrix standardize(const Matrix& x, const std::vector<bool>& column_mask) {
    if (column_mask.size() != static_cast<std::size_t>(x.cols())) {
        throw std::invalid_argument("standardize: mask size does not match column count");
    }
    require_finite(x, "standardize");
    const double n = static_cast<double>(x.rows());
    Matrix out = x;
    for (int c = 0; c < x.cols(); ++c) {
        if (!column_mask[static_cast<std::size_t>(c)]) continue;
        double mean = x.col(c).mean();
        double sd = std::sqrt((x.col(c).array() - mean).square().sum() / n);
        if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
            out.col(c).setZero();  // zero-variance column
        } else {
            out.col(c) = (x.col(c).array() - mean) / sd;
        }
    }
    return out;
}

std::string export_hierarchy(const HierarchyTree& tree, HierarchyFormat format) {
    if (format == HierarchyFormat::dot) {
        std::ostringstream out;
        out << "digraph cohirf {\n  rankdir=BT;\n";
        for (const HierarchyNode& node : tree.nodes) {
            if (node.step == 0) {
                out << "  n" << node.id << " [label=\"sample " << node.medoid_sample
                    << "\", shape=point];\n";
            } else {
                out << "  n" << node.id << " [label=\"step " << node.step << "\\nsize "
                    << node.member_count << "\\nmedoid " << node.medoid_sample << "\"];\n";
            }
        }
        for (const HierarchyNode& node : tree.nodes) {
            if (node.parent >= 0) out << "  n" << node.id << " -> n" << node.parent << ";\n";
        }
        out << "}\n";
        return out.str();
    }
    ordered_json j;
    j["n_samples"] = tree.n_samples;
    j["roots"] = ordered_json::array();
    for (int root : tree.roots) {
        ordered_json node;
        append_node_json(tree, root, node);
        j["roots"].push_back(std::move(node));
    }
    return j.dump(2) + "\n";
}

HierarchyTree import_hierarchy_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw load_error(std::string("hierarchy json: ") + e.what());
    }
    HierarchyTree tree;
    std::vector<HierarchyNode> flat;
    try {
        tree.n_samples = j.at("n_samples").get<int>();
        for (const auto& root : j.at("roots")) {
            tree.roots.push_back(root.at("id").get<int>());
            collect_nodes(root, -1, flat);
        }
    } catch (const nlohmann::json::exception& e) {
        throw load_error(std::string("hierarchy json: ") + e.what());
    }
    tree.nodes.resize(flat.size());
    std::vector<char> filled(flat.size(), 0);
    for (HierarchyNode& node : flat) {
        if (node.id < 0 || node.id >= static_cast<int>(flat.size()) || filled[node.id]) {
            throw hierarchy_error("hierarchy json: node ids must be dense and unique");
        }
        filled[node.id] = 1;
        tree.nodes[node.id] = std::move(node);
    }
    return tree;
}

void write_labels_csv(const std::string& path, const Partition& labels) {
    std::ostringstream out;
    out << "sample_id,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << "," << labels[i] << "\n";
    write_text_file(path, out.str());
}

void write_dataset_csv(const std::string& path, const Matrix& x,
                       const std::optional<Partition>& labels) {
    if (labels && labels->size() != static_cast<std::size_t>(x.rows())) {
        throw std::invalid_argument("write_dataset_csv: label count does not match rows");
    }
    std::ostringstream out;
    for (int c = 0; c < x.cols(); ++c) out << (c ? "," : "") << "f" << c;
    out << (labels ? ",label\n" : "\n");
    for (int i = 0; i < x.rows(); ++i) {
        for (int c = 0; c < x.cols(); ++c) out << (c ? "," : "") << format_double(x(i, c));
        if (labels) out << "," << (*labels)[static_cast<std::size_t>(i)];
        out << "\n";
    }
    write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw load_error("cannot write " + path);
    out << content;
    if (!out) throw load_error("write failed for " + path);
}

}  // namespace cohirf
