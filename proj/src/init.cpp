#include "topoembed/init.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "topoembed/rng.hpp"

namespace topoembed {

InitKind parse_init_kind(const std::string& name) {
  if (name == "pca") return InitKind::Pca;
  if (name == "spectral") return InitKind::Spectral;
  if (name == "diffusion") return InitKind::Diffusion;
  if (name == "jl") return InitKind::Jl;
  throw InvalidInput("unknown init method: " + name);
}

std::string init_kind_name(InitKind kind) {
  switch (kind) {
    case InitKind::Pca: return "pca";
    case InitKind::Spectral: return "spectral";
    case InitKind::Diffusion: return "diffusion";
    case InitKind::Jl: return "jl";
  }
  return "?";
}

Embedding init_pca(const PointCloud& cloud, int d) {
  cloud.validate();
  const Eigen::Index n = cloud.n(), dim = cloud.dim();
  if (d < 1 || d > std::min(n, dim))
    throw InvalidInput("init_pca: need 1 <= d <= min(N, D)");
  Mat centered = cloud.data.rowwise() - cloud.data.colwise().mean();
  Mat directions(dim, d);
  if (dim <= n) {
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / std::max<double>(1.0, double(n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    // Eigenvalues come out ascending; take the top d.
    for (int c = 0; c < d; ++c)
      directions.col(c) = eig.eigenvectors().col(dim - 1 - c);
  } else {
    // Wide data: go through the Gram matrix.
    const Eigen::MatrixXd gram =
        centered * centered.transpose() / std::max<double>(1.0, double(n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    for (int c = 0; c < d; ++c) {
      const Eigen::VectorXd u = eig.eigenvectors().col(n - 1 - c);
      Eigen::VectorXd v = centered.transpose() * u;
      const double norm = v.norm();
      if (norm > 0) v /= norm;
      directions.col(c) = v;
    }
  }
  // Deterministic orientation: largest-magnitude loading positive.
  for (int c = 0; c < d; ++c) {
    Eigen::Index at = 0;
    directions.col(c).cwiseAbs().maxCoeff(&at);
    if (directions(at, c) < 0) directions.col(c) = -directions.col(c);
  }
  return Embedding{centered * directions};
}

Embedding init_jl(const PointCloud& cloud, int d, uint64_t seed) {
  cloud.validate();
  if (d < 1) throw InvalidInput("init_jl: need d >= 1");
  Rng rng(seed);
  Mat gauss(cloud.dim(), d);
  for (Eigen::Index i = 0; i < gauss.rows(); ++i)
    for (Eigen::Index j = 0; j < gauss.cols(); ++j) gauss(i, j) = rng.normal();
  return Embedding{cloud.data * gauss / std::sqrt(static_cast<double>(d))};
}

namespace {

// Orthonormal basis of the columns of S, dropping directions that fall
// below a rank tolerance.
Mat orthonormalize(const Mat& S) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() *
                      Eigen::MatrixXd::Identity(S.rows(), rank);
  return q;
}

EigResult dense_smallest(const Eigen::SparseMatrix<double>& A, int n_pairs) {
  const Eigen::MatrixXd dense(A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  EigResult r;
  r.eigvals = eig.eigenvalues().head(n_pairs);
  r.eigvecs = eig.eigenvectors().leftCols(n_pairs);
  return r;
}

constexpr int kDenseFallbackCap = 2048;

}  // namespace

EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, int n_pairs,
                              double tol, int max_iter, uint64_t seed) {
  const Eigen::Index n = A.rows();
  if (n_pairs < 1 || n_pairs > n)
    throw InvalidInput("smallest_eigenpairs: bad pair count");
  // Small problems go straight to the dense solver.
  if (n <= 256 || n_pairs + 4 >= n) return dense_smallest(A, n_pairs);

  const int block = std::min<int>(n_pairs + 4, static_cast<int>(n));
  Rng rng(seed);
  Mat X(n, block);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < block; ++j) X(i, j) = rng.normal();
  X = orthonormalize(X);

  Mat P(n, 0);
  Vec theta = Vec::Zero(X.cols());
  double worst_residual = std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < max_iter; ++iter) {
    const Mat AX = A * X;
    // Ritz values for the current block.
    const Eigen::MatrixXd xtax = X.transpose() * AX;
    theta = xtax.diagonal();
    Mat R = AX - X * theta.asDiagonal();

    worst_residual = 0.0;
    for (int j = 0; j < std::min<int>(n_pairs, static_cast<int>(X.cols())); ++j)
      worst_residual = std::max(worst_residual, R.col(j).norm());
    if (worst_residual <= tol && static_cast<int>(X.cols()) >= n_pairs) {
      EigResult out;
      out.eigvals = theta.head(n_pairs);
      out.eigvecs = X.leftCols(n_pairs);
      return out;
    }

    Mat S(n, X.cols() + R.cols() + P.cols());
    S << X, R, P;
    const Mat Q = orthonormalize(S);
    const Eigen::MatrixXd T = Q.transpose() * (A * Q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(
        (T + T.transpose()) / 2.0);
    const int take = std::min<int>(block, static_cast<int>(Q.cols()));
    const Mat X_new = Q * small.eigenvectors().leftCols(take);
    // Difference direction doubles as the conjugate block.
    P = X_new.leftCols(std::min<int>(take, static_cast<int>(X.cols()))) -
        X.leftCols(std::min<int>(take, static_cast<int>(X.cols())));
    X = X_new;
  }

  if (n <= kDenseFallbackCap) return dense_smallest(A, n_pairs);
  throw NumericalError("eigensolver did not reach tol=" + std::to_string(tol) +
                       " in " + std::to_string(max_iter) +
                       " iterations (last residual " +
                       std::to_string(worst_residual) + ")");
}

namespace {

struct GraphMatrices {
  Eigen::SparseMatrix<double> sym_laplacian;  // I - D^{-1/2} W D^{-1/2}
  Vec degree;                                 // row sums of W
};

GraphMatrices normalized_laplacian(int n, const std::vector<Edge>& edges,
                                   const std::vector<double>& weights) {
  GraphMatrices g;
  g.degree = Vec::Zero(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    g.degree(edges[e].i) += weights[e];
    g.degree(edges[e].j) += weights[e];
  }
  Vec inv_sqrt = Vec::Zero(n);
  for (int v = 0; v < n; ++v)
    inv_sqrt(v) = g.degree(v) > 0 ? 1.0 / std::sqrt(g.degree(v)) : 0.0;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(edges.size() * 2 + static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) triplets.emplace_back(v, v, 1.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double w = -weights[e] * inv_sqrt(edges[e].i) * inv_sqrt(edges[e].j);
    triplets.emplace_back(edges[e].i, edges[e].j, w);
    triplets.emplace_back(edges[e].j, edges[e].i, w);
  }
  g.sym_laplacian.resize(n, n);
  g.sym_laplacian.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

// Shared eigenmap workhorse. Computes the d coordinate vectors beyond the
// constant one on a single connected component; diffusion mode conjugates
// back to the Markov eigenvectors and scales by lambda^t.
Mat component_eigenmap(int n, const std::vector<Edge>& edges,
                       const std::vector<double>& weights, int d, bool diffusion,
                       double diffusion_time, double tol, int max_iter) {
  Mat coords = Mat::Zero(n, d);
  if (n == 1) return coords;
  const GraphMatrices g = normalized_laplacian(n, edges, weights);
  const int want = std::min(d + 1, n);
  const EigResult eig =
      smallest_eigenpairs(g.sym_laplacian, want, tol, max_iter);
  for (int c = 1; c < want; ++c) {
    Vec v = eig.eigvecs.col(c);
    if (diffusion) {
      // Markov eigenvector psi = D^{-1/2} v, eigenvalue 1 - theta.
      for (int row = 0; row < n; ++row)
        v(row) *= g.degree(row) > 0 ? 1.0 / std::sqrt(g.degree(row)) : 0.0;
      const double lambda = 1.0 - eig.eigvals(c);
      // Signed power keeps fractional diffusion times finite when an
      // eigenvalue dips below zero.
      const double scale = lambda >= 0
                               ? std::pow(lambda, diffusion_time)
                               : -std::pow(-lambda, diffusion_time);
      v *= scale;
    }
    coords.col(c - 1) = v;
  }
  return coords;
}

Mat eigenmap_embedding(const NeighborGraph& graph, int d, bool diffusion,
                       double diffusion_time, double tol, int max_iter) {
  if (d < 1) throw InvalidInput("eigenmap: need d >= 1");
  const int n = static_cast<int>(graph.indices.rows());
  const auto edges = symmetrized_edges(graph);

  std::vector<double> weights(edges.size(), 1.0);
  if (diffusion) {
    // Gaussian kernel with bandwidth = median kNN distance.
    std::vector<double> all(graph.distances.data(),
                            graph.distances.data() + graph.distances.size());
    std::nth_element(all.begin(), all.begin() + all.size() / 2, all.end());
    const double bandwidth = std::max(all[all.size() / 2], 1e-12);
    for (std::size_t e = 0; e < edges.size(); ++e)
      weights[e] =
          std::exp(-edges[e].dist * edges[e].dist / (2.0 * bandwidth * bandwidth));
  }

  int n_components = 0;
  const auto comp = connected_components(n, edges, &n_components);
  if (n_components == 1)
    return component_eigenmap(n, edges, weights, d, diffusion, diffusion_time,
                              tol, max_iter);

  std::cerr << "warning: neighbor graph has " << n_components
            << " connected components; embedding each separately\n";
  // Embed each component on its own and spread them along the first axis,
  // each offset by 3x the previous component's diameter.
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n_components));
  for (int v = 0; v < n; ++v)
    members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])]
        .push_back(v);
  Mat coords = Mat::Zero(n, d);
  double cursor = 0.0;
  for (const auto& verts : members) {
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < verts.size(); ++i)
      local[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    std::vector<Edge> sub;
    std::vector<double> sub_w;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (local[static_cast<std::size_t>(edges[e].i)] >= 0 &&
          local[static_cast<std::size_t>(edges[e].j)] >= 0) {
        Edge copy = edges[e];
        copy.i = local[static_cast<std::size_t>(copy.i)];
        copy.j = local[static_cast<std::size_t>(copy.j)];
        sub.push_back(copy);
        sub_w.push_back(weights[e]);
      }
    }
    Mat sub_coords =
        component_eigenmap(static_cast<int>(verts.size()), sub, sub_w, d,
                           diffusion, diffusion_time, tol, max_iter);
    const double lo = sub_coords.col(0).minCoeff();
    const Eigen::RowVectorXd extent =
        sub_coords.colwise().maxCoeff() - sub_coords.colwise().minCoeff();
    const double diameter = std::max(extent.norm(), 1.0);
    sub_coords.col(0).array() += cursor - lo;
    cursor += 3.0 * diameter;
    for (std::size_t i = 0; i < verts.size(); ++i)
      coords.row(verts[i]) = sub_coords.row(static_cast<Eigen::Index>(i));
  }
  return coords;
}

Mat rescale_max_abs(Mat coords) {
  const double max_abs = coords.cwiseAbs().maxCoeff();
  if (max_abs > 0) coords /= max_abs;
  return coords;
}

}  // namespace

Embedding init_spectral(const NeighborGraph& graph, int d, double tol,
                        int max_iter) {
  return Embedding{
      rescale_max_abs(eigenmap_embedding(graph, d, false, 0.0, tol, max_iter))};
}

Embedding init_diffusion(const NeighborGraph& graph, int d, double t,
                         double tol, int max_iter) {
  return Embedding{eigenmap_embedding(graph, d, true, t, tol, max_iter)};
}

}  // namespace topoembed
