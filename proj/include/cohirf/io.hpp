#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohirf/engine.hpp"
#include "cohirf/types.hpp"

namespace cohirf {

enum class ColumnKind { continuous, categorical, label, ignore };

/// Per-column roles of a CSV dataset. When `columns` is empty the loader
/// infers kinds (numeric-parse success means continuous); an explicit schema
/// wins and must cover every column of the file.
struct DatasetSchema {
    std::vector<std::pair<std::string, ColumnKind>> columns;

    bool empty() const { return columns.empty(); }
};

/// Parse a schema sidecar: JSON object {"columns": {"name": "kind", ...}}.
DatasetSchema load_schema(const std::string& path);

struct Dataset {
    Matrix x;
    std::optional<Partition> labels;
    std::vector<std::string> feature_names;
    /// Marks the columns of x that came from continuous CSV columns
    /// (one-hot indicator columns are not standardized).
    std::vector<bool> continuous_mask;
};

/// Load a comma-separated file (first row header, '.' decimal). Categorical
/// columns are one-hot expanded in first-appearance order; a label column is
/// mapped to integers by first appearance. `label_column` overrides the
/// schema's label designation.
Dataset load_csv(const std::string& path, const DatasetSchema& schema = {},
                 const std::optional<std::string>& label_column = {});

/// Center and scale every column to mean 0, population standard deviation 1.
/// Zero-variance columns map to all-zeros.
Matrix standardize(const Matrix& x);

/// Same, restricted to the masked columns.
Matrix standardize(const Matrix& x, const std::vector<bool>& column_mask);

enum class HierarchyFormat { dot, json };

/// Serialize the medoid-lineage forest. DOT draws edges child -> parent with
/// step / size / medoid annotations; JSON nests children and round-trips.
std::string export_hierarchy(const HierarchyTree& tree, HierarchyFormat format);

HierarchyTree import_hierarchy_json(const std::string& text);

void write_labels_csv(const std::string& path, const Partition& labels);

/// Emit a generated dataset in the load_csv dialect (f0..f{p-1}[, label]).
void write_dataset_csv(const std::string& path, const Matrix& x,
                       const std::optional<Partition>& labels);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cohirf
