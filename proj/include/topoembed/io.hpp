#pragma once

#include <string>
#include <vector>

#include "topoembed/model.hpp"

namespace topoembed {

enum class MatrixFormat { Csv, Npy, RawF32 };

// Pick a format from the file extension: .csv, .npy, .raw/.f32.
MatrixFormat format_from_path(const std::string& path);

// Load a dense matrix. With labels_last_col (CSV only) the final column is
// parsed as integer class labels. Parse failures throw FormatError with the
// offending row/column.
PointCloud load_matrix(const std::string& path, MatrixFormat format,
                       bool labels_last_col = false);
PointCloud load_matrix(const std::string& path, bool labels_last_col = false);

// Single-column integer file (CSV), one label per row.
std::vector<int> load_labels(const std::string& path);

void save_matrix(const std::string& path, MatrixFormat format, const Mat& m,
                 const std::vector<int>* labels = nullptr);
void save_matrix(const std::string& path, const Mat& m,
                 const std::vector<int>* labels = nullptr);

}  // namespace topoembed
