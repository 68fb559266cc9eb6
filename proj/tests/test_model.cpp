#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "topoembed/io.hpp"
#include "topoembed/model.hpp"
#include "topoembed/rng.hpp"

using namespace topoembed;

namespace {

PointCloud cloud_from(std::initializer_list<std::initializer_list<double>> rows) {
  PointCloud cloud;
  const auto n = rows.size();
  const auto d = rows.begin()->size();
  cloud.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const double v : row) cloud.data(i, j++) = v;
    ++i;
  }
  return cloud;
}

Mat random_mat(Rng& rng, int n, int d) {
  Mat m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal();
  return m;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/topoembed_test_") + name;
}

}  // namespace

TEST_CASE("normalize: symmetric two-point case") {
  const auto out = normalize_input(cloud_from({{0}, {2}}));
  CHECK(out.data(0, 0) == doctest::Approx(-1.0));
  CHECK(out.data(1, 0) == doctest::Approx(1.0));
}

TEST_CASE("normalize: constant matrix maps to zeros") {
  const auto out = normalize_input(cloud_from({{3, 3}, {3, 3}}));
  CHECK(out.data.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalize: hand-computed 3x2 case") {
  const auto out = normalize_input(cloud_from({{1, 0}, {3, 0}, {5, 0}}));
  CHECK(out.data(0, 0) == doctest::Approx(-1.0));
  CHECK(out.data(1, 0) == doctest::Approx(0.0));
  CHECK(out.data(2, 0) == doctest::Approx(1.0));
  CHECK(out.data.col(1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalize: range, centering, idempotence, permutation") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    PointCloud cloud;
    cloud.data = random_mat(rng, 40, 5);
    const auto once = normalize_input(cloud);
    CHECK(once.data.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
    CHECK(once.data.colwise().mean().cwiseAbs().maxCoeff() < 1e-9);
    const auto twice = normalize_input(once);
    CHECK((twice.data - once.data).cwiseAbs().maxCoeff() < 1e-9);

    // Row permutation commutes.
    PointCloud reversed;
    reversed.data = cloud.data.colwise().reverse();
    const auto norm_reversed = normalize_input(reversed);
    CHECK((norm_reversed.data - Mat(once.data.colwise().reverse()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("normalize: rejects non-finite input") {
  auto cloud = cloud_from({{1, 2}, {3, 4}});
  cloud.data(0, 1) = std::nan("");
  CHECK_THROWS_AS(normalize_input(cloud), InvalidInput);
}

TEST_CASE("pairwise distances: fixtures") {
  const auto d = pairwise_distances(cloud_from({{0, 0}, {3, 4}}));
  CHECK(d(0, 1) == doctest::Approx(5.0));
  CHECK(d(0, 0) == 0.0);

  const auto same = pairwise_distances(cloud_from({{1, 1}, {1, 1}}));
  CHECK(same(0, 1) == 0.0);

  const auto sq = pairwise_distances(cloud_from({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(sq(0, 1) == doctest::Approx(1.0));
  CHECK(sq(0, 2) == doctest::Approx(1.0));
  CHECK(sq(0, 3) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq(1, 2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("pairwise distances: symmetry, diagonal, triangle inequality") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    PointCloud cloud;
    cloud.data = random_mat(rng, 30, 4);
    const Mat d = pairwise_distances(cloud, /*n_threads=*/2);
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(d.diagonal().cwiseAbs().maxCoeff() == 0.0);
    const int n = static_cast<int>(d.rows());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          CHECK(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
  }
}

TEST_CASE("csv round trip with and without labels") {
  const std::string path = temp_path("roundtrip.csv");
  {
    std::ofstream out(path);
    out << "1,2\n3,4\n5,6\n";
  }
  const auto cloud = load_matrix(path, MatrixFormat::Csv);
  CHECK(cloud.n() == 3);
  CHECK(cloud.dim() == 2);
  CHECK(cloud.data(2, 1) == 6.0);

  {
    std::ofstream out(path);
    out << "1,2,0\n3,4,1\n";
  }
  const auto labeled = load_matrix(path, MatrixFormat::Csv, true);
  CHECK(labeled.dim() == 2);
  REQUIRE(labeled.labels.size() == 2);
  CHECK(labeled.labels[0] == 0);
  CHECK(labeled.labels[1] == 1);
}

TEST_CASE("csv: ragged and non-numeric rows carry locations") {
  const std::string path = temp_path("bad.csv");
  {
    std::ofstream out(path);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_WITH_AS(load_matrix(path, MatrixFormat::Csv),
                       doctest::Contains("row 2"), FormatError);
  {
    std::ofstream out(path);
    out << "1,2\n3,x\n";
  }
  CHECK_THROWS_WITH_AS(load_matrix(path, MatrixFormat::Csv),
                       doctest::Contains("column 2"), FormatError);
}

TEST_CASE("npy round trip preserves the matrix") {
  Rng rng(3);
  const Mat m = random_mat(rng, 7, 3);
  const std::string path = temp_path("roundtrip.npy");
  save_matrix(path, MatrixFormat::Npy, m);
  const auto cloud = load_matrix(path, MatrixFormat::Npy);
  CHECK((cloud.data - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("npy reader accepts float32 little-endian C-order") {
  const std::string path = temp_path("f32.npy");
  {
    std::ofstream out(path, std::ios::binary);
    std::string header =
        "{'descr': '<f4', 'fortran_order': False, 'shape': (2, 2), }";
    const std::size_t unpadded = 10 + header.size() + 1;
    header.append((unpadded + 63) / 64 * 64 - unpadded, ' ');
    header.push_back('\n');
    out.write("\x93NUMPY\x01\x00", 8);
    const uint16_t len = static_cast<uint16_t>(header.size());
    out.write(reinterpret_cast<const char*>(&len), 2);
    out << header;
    const float vals[4] = {1.5f, -2.0f, 0.25f, 8.0f};
    out.write(reinterpret_cast<const char*>(vals), sizeof vals);
  }
  const auto cloud = load_matrix(path, MatrixFormat::Npy);
  CHECK(cloud.data(0, 0) == 1.5);
  CHECK(cloud.data(0, 1) == -2.0);
  CHECK(cloud.data(1, 0) == 0.25);
  CHECK(cloud.data(1, 1) == 8.0);
}

TEST_CASE("raw f32 round trip") {
  Rng rng(5);
  Mat m = random_mat(rng, 5, 4);
  // Round to float precision so the round trip is exact.
  for (Eigen::Index i = 0; i < m.size(); ++i)
    m.data()[i] = static_cast<double>(static_cast<float>(m.data()[i]));
  const std::string path = temp_path("roundtrip.raw");
  save_matrix(path, MatrixFormat::RawF32, m);
  const auto cloud = load_matrix(path, MatrixFormat::RawF32);
  CHECK((cloud.data - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("missing file raises a format error") {
  CHECK_THROWS_AS(load_matrix("/nonexistent/nope.csv", MatrixFormat::Csv),
                  FormatError);
}
