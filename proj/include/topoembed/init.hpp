#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <string>

#include "topoembed/knn.hpp"
#include "topoembed/model.hpp"

namespace topoembed {

enum class InitKind { Pca, Spectral, Diffusion, Jl };

InitKind parse_init_kind(const std::string& name);
std::string init_kind_name(InitKind kind);

// Projection onto the top-d principal directions of the centered data.
// Component signs are fixed so each direction's largest-magnitude loading
// is positive. Requires d <= min(N, D).
Embedding init_pca(const PointCloud& cloud, int d);

// Laplacian eigenmaps on the symmetric normalized Laplacian of the
// symmetrized kNN graph: coordinates are eigenvectors 2..d+1 (the constant
// vector is skipped), computed to residual ||Av - lambda v|| <= tol and
// rescaled to max-abs 1. A disconnected graph is embedded per component,
// with components spread along the first axis (a warning is printed).
Embedding init_spectral(const NeighborGraph& graph, int d, double tol = 1e-6,
                        int max_iter = 500);

// Diffusion maps: top-d nontrivial eigenpairs (lambda_i, psi_i) of the
// Markov transition matrix built from a Gaussian kernel on the kNN edges
// (bandwidth = median kNN distance); coordinates are lambda_i^t psi_i.
Embedding init_diffusion(const NeighborGraph& graph, int d, double t = 1.0,
                         double tol = 1e-6, int max_iter = 500);

// Johnson-Lindenstrauss random projection X G / sqrt(d) with iid standard
// normal G, seeded deterministically.
Embedding init_jl(const PointCloud& cloud, int d, uint64_t seed);

// Smallest eigenpairs of a sparse symmetric matrix by LOBPCG (difference-
// direction variant with full Rayleigh-Ritz on [X R P]). Falls back to a
// dense solve for small problems when the iteration stalls; otherwise
// throws NumericalError carrying the worst residual. eigvecs columns are
// the eigenvectors in ascending eigenvalue order.
struct EigResult {
  Vec eigvals;
  Mat eigvecs;
};
EigResult smallest_eigenpairs(const Eigen::SparseMatrix<double>& A, int n_pairs,
                              double tol, int max_iter, uint64_t seed = 0x5eed);

}  // namespace topoembed
