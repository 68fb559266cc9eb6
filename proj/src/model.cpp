#include "topoembed/model.hpp"

#include <cmath>

#include "topoembed/parallel.hpp"

namespace topoembed {

void PointCloud::validate() const {
  if (data.rows() < 1 || data.cols() < 1)
    throw InvalidInput("point cloud must have at least one row and column");
  if (!data.allFinite())
    throw InvalidInput("point cloud contains non-finite entries");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != data.rows())
    throw InvalidInput("label count does not match row count");
}

PointCloud normalize_input(const PointCloud& cloud) {
  cloud.validate();
  PointCloud out;
  out.labels = cloud.labels;
  const Eigen::RowVectorXd means = cloud.data.colwise().mean();
  out.data = cloud.data.rowwise() - means;
  const double max_abs = out.data.cwiseAbs().maxCoeff();
  if (max_abs > 0.0) out.data /= max_abs;
  return out;
}

Mat pairwise_distances(const Mat& points, unsigned n_threads) {
  const Eigen::Index n = points.rows(), d = points.cols();
  Mat dist(n, n);
  parallel_for(static_cast<std::size_t>(n), n_threads, [&](std::size_t i) {
    dist(i, i) = 0.0;
    const double* xi = points.row(static_cast<Eigen::Index>(i)).data();
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(i); ++j) {
      const double* xj = points.row(j).data();
      double s = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const double diff = xi[c] - xj[c];
        s += diff * diff;
      }
      dist(i, j) = std::sqrt(s);
    }
  });
  // Mirror the strict lower triangle so the matrix is exactly symmetric.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) dist(i, j) = dist(j, i);
  return dist;
}

Mat pairwise_distances(const PointCloud& cloud, unsigned n_threads) {
  cloud.validate();
  if (cloud.n() < 2) throw InvalidInput("pairwise distances need N >= 2");
  return pairwise_distances(cloud.data, n_threads);
}

}  // namespace topoembed
