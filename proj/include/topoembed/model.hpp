#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace topoembed {

using Mat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IMat =
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

// Input or parameter problems; the CLI maps these to exit code 2.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File parsing problems, with a row/column location in the message.
struct FormatError : InvalidInput {
  using InvalidInput::InvalidInput;
};

// Runtime numerical failures (non-convergence, NaN mid-computation);
// the CLI maps these to exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PointCloud {
  Mat data;                 // N x D
  std::vector<int> labels;  // empty, or one class id per row

  Eigen::Index n() const { return data.rows(); }
  Eigen::Index dim() const { return data.cols(); }
  bool has_labels() const { return !labels.empty(); }

  // Throws InvalidInput on empty/non-finite data or label size mismatch.
  void validate() const;
};

struct Embedding {
  Mat coords;  // N x d

  Eigen::Index n() const { return coords.rows(); }
  Eigen::Index dim() const { return coords.cols(); }
};

// Mean-center, then divide by the global max absolute value of the centered
// data. All entries end up in [-1, 1]. If the centered data is identically
// zero the scaling step is skipped.
PointCloud normalize_input(const PointCloud& cloud);

// Dense Euclidean distance matrix: zero diagonal, exactly symmetric
// (each pair is computed once and mirrored).
Mat pairwise_distances(const PointCloud& cloud, unsigned n_threads = 1);
Mat pairwise_distances(const Mat& points, unsigned n_threads = 1);

}  // namespace topoembed
