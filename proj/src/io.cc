#include "spca/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace spca {

namespace {

double parse_cell(std::string_view text, std::size_t line) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) +
                                            ": not a finite number: '" +
                                            std::string(text) + "'");
  }
  return value;
}

}  // namespace

Matrix read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      data.push_back(parse_cell(rest.substr(0, comma), number));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) cols = count;
    if (count != cols) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(number) + ": expected " +
                      std::to_string(cols) + " values, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::kParseError, path + " has no data");
  return Matrix::from_row_major(rows, cols, std::move(data));
}

SymmetricMatrix covariance_from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kNotSquare, "covariance input is " +
                                           std::to_string(m.rows()) + " x " +
                                           std::to_string(m.cols()));
  }
  const double limit = 1e-9 * m.max_abs();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > limit) {
        std::ostringstream msg;
        msg << "entries (" << i + 1 << "," << j + 1 << ") and (" << j + 1 << ","
            << i + 1 << ") differ by " << std::abs(m(i, j) - m(j, i));
        throw Error(ErrorCode::kAsymmetryTooLarge, msg.str());
      }
    }
  }
  return SymmetricMatrix::symmetrize(m);
}

SymmetricMatrix covariance_from_samples(const Matrix& q) {
  const std::size_t m = q.cols();
  Matrix centred = q;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    double mean = 0.0;
    for (std::size_t c = 0; c < m; ++c) mean += q(i, c);
    mean /= static_cast<double>(m);
    for (std::size_t c = 0; c < m; ++c) centred(i, c) -= mean;
  }
  return SymmetricMatrix((1.0 / static_cast<double>(m)) * gram_rows(centred));
}

SymmetricMatrix ingest(const std::string& path, InputKind kind) {
  const Matrix m = read_csv(path);
  return kind == InputKind::kCovariance ? covariance_from_matrix(m)
                                        : covariance_from_samples(m);
}

}  // namespace spca
