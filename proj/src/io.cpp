#include "topoembed/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace topoembed {

namespace {

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(c));
  return ext;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw FormatError("csv: non-numeric cell at row " + std::to_string(row + 1) +
                      ", column " + std::to_string(col + 1) + ": '" + cell + "'");
  return v;
}

int parse_label(double v, std::size_t row, std::size_t col) {
  const double r = std::round(v);
  if (!std::isfinite(v) || std::abs(v - r) > 1e-9)
    throw FormatError("csv: label at row " + std::to_string(row + 1) +
                      ", column " + std::to_string(col + 1) +
                      " is not an integer");
  return static_cast<int>(r);
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      ++lineno;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      row.push_back(parse_cell(cell, lineno, col));
      ++col;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("csv: row " + std::to_string(lineno + 1) + " has " +
                        std::to_string(row.size()) + " cells, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
    ++lineno;
  }
  if (rows.empty()) throw FormatError("csv: no data rows in " + path);
  return rows;
}

PointCloud load_csv(const std::string& path, bool labels_last_col) {
  const auto rows = read_csv_rows(path);
  const std::size_t n = rows.size();
  std::size_t d = rows.front().size();
  if (labels_last_col) {
    if (d < 2)
      throw FormatError("csv: need at least 2 columns when labels are in the last column");
    --d;
  }
  PointCloud cloud;
  cloud.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  if (labels_last_col) cloud.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      cloud.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    if (labels_last_col) cloud.labels[i] = parse_label(rows[i][d], i, d);
  }
  return cloud;
}

// Minimal NPY v1.0 reader: little-endian float32/float64, C order, 2-D.
PointCloud load_npy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  char magic[6];
  in.read(magic, 6);
  if (!in || std::memcmp(magic, "\x93NUMPY", 6) != 0)
    throw FormatError("npy: bad magic in " + path);
  unsigned char ver[2];
  in.read(reinterpret_cast<char*>(ver), 2);
  if (!in || ver[0] != 1)
    throw FormatError("npy: unsupported version " + std::to_string(ver[0]) +
                      "." + std::to_string(ver[1]));
  unsigned char len_bytes[2];
  in.read(reinterpret_cast<char*>(len_bytes), 2);
  const std::size_t header_len = len_bytes[0] | (len_bytes[1] << 8);
  std::string header(header_len, '\0');
  in.read(header.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw FormatError("npy: truncated header");

  auto find_value = [&](const std::string& key) -> std::string {
    const auto pos = header.find("'" + key + "'");
    if (pos == std::string::npos)
      throw FormatError("npy: header missing key '" + key + "'");
    auto colon = header.find(':', pos);
    auto rest = header.substr(colon + 1);
    return rest;
  };

  const std::string descr = find_value("descr");
  bool is_f4;
  if (descr.find("'<f4'") != std::string::npos)
    is_f4 = true;
  else if (descr.find("'<f8'") != std::string::npos)
    is_f4 = false;
  else
    throw FormatError("npy: only little-endian float32/float64 supported");
  if (find_value("fortran_order").find("False") == std::string::npos)
    throw FormatError("npy: fortran_order arrays not supported");

  const std::string shape_str = find_value("shape");
  const auto open = shape_str.find('('), close = shape_str.find(')');
  if (open == std::string::npos || close == std::string::npos)
    throw FormatError("npy: malformed shape");
  std::stringstream ss(shape_str.substr(open + 1, close - open - 1));
  std::vector<std::size_t> shape;
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    shape.push_back(std::stoull(tok));
  }
  if (shape.size() != 2) throw FormatError("npy: expected a 2-D array");

  const std::size_t n = shape[0], d = shape[1];
  PointCloud cloud;
  cloud.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  const std::size_t count = n * d;
  if (is_f4) {
    std::vector<float> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(count * 4));
    if (!in) throw FormatError("npy: truncated data");
    for (std::size_t i = 0; i < count; ++i)
      cloud.data.data()[i] = static_cast<double>(buf[i]);
  } else {
    in.read(reinterpret_cast<char*>(cloud.data.data()),
            static_cast<std::streamsize>(count * 8));
    if (!in) throw FormatError("npy: truncated data");
  }
  return cloud;
}

// Raw format: u32 N, u32 D (little endian), then N*D float32 values.
PointCloud load_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  uint32_t n = 0, d = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&d), 4);
  if (!in) throw FormatError("raw: truncated header");
  if (n == 0 || d == 0) throw FormatError("raw: zero dimension in header");
  std::vector<float> buf(static_cast<std::size_t>(n) * d);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * 4));
  if (!in) throw FormatError("raw: truncated data");
  PointCloud cloud;
  cloud.data.resize(n, d);
  for (std::size_t i = 0; i < buf.size(); ++i)
    cloud.data.data()[i] = static_cast<double>(buf[i]);
  return cloud;
}

}  // namespace

MatrixFormat format_from_path(const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == "csv") return MatrixFormat::Csv;
  if (ext == "npy") return MatrixFormat::Npy;
  if (ext == "raw" || ext == "f32") return MatrixFormat::RawF32;
  throw InvalidInput("cannot infer matrix format from extension: " + path);
}

PointCloud load_matrix(const std::string& path, MatrixFormat format,
                       bool labels_last_col) {
  if (labels_last_col && format != MatrixFormat::Csv)
    throw InvalidInput("labels in the last column are only supported for csv");
  PointCloud cloud;
  switch (format) {
    case MatrixFormat::Csv: cloud = load_csv(path, labels_last_col); break;
    case MatrixFormat::Npy: cloud = load_npy(path); break;
    case MatrixFormat::RawF32: cloud = load_raw(path); break;
  }
  cloud.validate();
  return cloud;
}

PointCloud load_matrix(const std::string& path, bool labels_last_col) {
  return load_matrix(path, format_from_path(path), labels_last_col);
}

std::vector<int> load_labels(const std::string& path) {
  const auto rows = read_csv_rows(path);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1)
      throw FormatError("labels file must have exactly one column (row " +
                        std::to_string(i + 1) + ")");
    labels.push_back(parse_label(rows[i][0], i, 0));
  }
  return labels;
}

namespace {

void save_csv(const std::string& path, const Mat& m,
              const std::vector<int>* labels) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    if (labels) out << ',' << (*labels)[static_cast<std::size_t>(i)];
    out << '\n';
  }
}

void save_npy(const std::string& path, const Mat& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  std::string dict = "{'descr': '<f8', 'fortran_order': False, 'shape': (" +
                     std::to_string(m.rows()) + ", " + std::to_string(m.cols()) +
                     "), }";
  // Pad with spaces so magic + header is a multiple of 64 bytes.
  const std::size_t unpadded = 6 + 2 + 2 + dict.size() + 1;
  const std::size_t padded = (unpadded + 63) / 64 * 64;
  dict.append(padded - unpadded, ' ');
  dict.push_back('\n');
  out.write("\x93NUMPY\x01\x00", 8);
  const uint16_t len = static_cast<uint16_t>(dict.size());
  out.write(reinterpret_cast<const char*>(&len), 2);
  out.write(dict.data(), static_cast<std::streamsize>(dict.size()));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * m.size()));
}

void save_raw(const std::string& path, const Mat& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  const uint32_t n = static_cast<uint32_t>(m.rows());
  const uint32_t d = static_cast<uint32_t>(m.cols());
  out.write(reinterpret_cast<const char*>(&n), 4);
  out.write(reinterpret_cast<const char*>(&d), 4);
  std::vector<float> buf(static_cast<std::size_t>(m.size()));
  for (std::size_t i = 0; i < buf.size(); ++i)
    buf[i] = static_cast<float>(m.data()[i]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * 4));
}

}  // namespace

void save_matrix(const std::string& path, MatrixFormat format, const Mat& m,
                 const std::vector<int>* labels) {
  if (labels && format != MatrixFormat::Csv)
    throw InvalidInput("labels can only be written to csv");
  switch (format) {
    case MatrixFormat::Csv: save_csv(path, m, labels); break;
    case MatrixFormat::Npy: save_npy(path, m); break;
    case MatrixFormat::RawF32: save_raw(path, m); break;
  }
}

void save_matrix(const std::string& path, const Mat& m,
                 const std::vector<int>* labels) {
  save_matrix(path, format_from_path(path), m, labels);
}

}  // namespace topoembed
