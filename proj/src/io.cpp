#include "gmrf/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gmrf::io {

namespace {

[[noreturn]] void parse_error(const std::string& what, std::size_t line) {
  fail(ErrorCode::io, what + " (line " + std::to_string(line) + ")");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    parse_error("cannot parse number '" + std::string(token) + "'", line);
  }
  return value;
}

void format_double(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.write(buf, ptr - buf);
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void finish(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::io, "write failed for " + path.string());
}

struct Coordinate {
  Index rows = 0;
  Index cols = 0;
  bool pattern = false;
  bool symmetric = false;
  std::vector<Eigen::Triplet<double>> entries;  // 0-based, as stored
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Coordinate read_coordinate(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) fail(ErrorCode::io, "empty Matrix Market stream");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate") {
    parse_error("expected a '%%MatrixMarket matrix coordinate' header", lineno);
  }
  Coordinate c;
  field = lower(field);
  symmetry = lower(symmetry);
  if (field == "pattern") {
    c.pattern = true;
  } else if (field != "real" && field != "integer" && field != "double") {
    parse_error("unsupported field '" + field + "'", lineno);
  }
  if (symmetry == "symmetric") {
    c.symmetric = true;
  } else if (symmetry != "general") {
    parse_error("unsupported symmetry '" + symmetry + "'", lineno);
  }

  long long nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '%') continue;
    std::istringstream size_line{std::string(body)};
    long long r = 0, k = 0;
    if (!(size_line >> r >> k >> nnz) || r < 1 || k < 1 || nnz < 0) {
      parse_error("bad size line", lineno);
    }
    c.rows = r;
    c.cols = k;
    break;
  }
  if (nnz < 0) fail(ErrorCode::io, "missing Matrix Market size line");
  c.entries.reserve(static_cast<std::size_t>(nnz));
  while (static_cast<long long>(c.entries.size()) < nnz && std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty() || body.front() == '%') continue;
    std::istringstream entry{std::string(body)};
    long long i = 0, j = 0;
    std::string value_token;
    if (!(entry >> i >> j)) parse_error("bad entry", lineno);
    if (i < 1 || j < 1 || i > c.rows || j > c.cols) parse_error("entry index out of range", lineno);
    double value = 1.0;
    if (!c.pattern) {
      if (!(entry >> value_token)) parse_error("missing value", lineno);
      value = parse_double(value_token, lineno);
    }
    c.entries.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1), value);
  }
  if (static_cast<long long>(c.entries.size()) != nnz) {
    fail(ErrorCode::io, "Matrix Market stream ended after " + std::to_string(c.entries.size()) +
                            " of " + std::to_string(nnz) + " entries");
  }
  return c;
}

}  // namespace

Eigen::MatrixXd read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      row.push_back(parse_double(body.substr(start, comma - start), lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_error("ragged CSV: expected " + std::to_string(rows.front().size()) + " columns", lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::io, "CSV has no rows");
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Eigen::MatrixXd read_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

void write_csv(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXd>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      format_double(out, m(i, j));
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Eigen::Ref<const Eigen::MatrixXd>& m) {
  auto out = open_out(path);
  write_csv(out, m);
  finish(out, path);
}

SparsityPattern read_pattern(std::istream& in) {
  Coordinate c = read_coordinate(in);
  if (c.rows != c.cols) fail(ErrorCode::io, "graph matrix must be square");
  std::vector<std::pair<Index, Index>> edges;
  edges.reserve(c.entries.size());
  for (const auto& t : c.entries) {
    if (t.value() != 0.0) edges.emplace_back(t.row(), t.col());
  }
  return SparsityPattern::from_edges(c.rows, edges);
}

SparsityPattern read_pattern(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_pattern(in);
}

void write_pattern(std::ostream& out, const SparsityPattern& g) {
  const auto entries = g.lower_entries();
  out << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  out << g.size() << ' ' << g.size() << ' ' << entries.size() << '\n';
  for (auto [i, j] : entries) out << i + 1 << ' ' << j + 1 << '\n';
}

void write_pattern(const std::filesystem::path& path, const SparsityPattern& g) {
  auto out = open_out(path);
  write_pattern(out, g);
  finish(out, path);
}

Eigen::SparseMatrix<double> read_sparse(std::istream& in) {
  Coordinate c = read_coordinate(in);
  if (c.symmetric && c.rows != c.cols) fail(ErrorCode::io, "symmetric matrix must be square");
  std::vector<Eigen::Triplet<double>> triplets = c.entries;
  if (c.symmetric) {
    for (const auto& t : c.entries) {
      if (t.row() != t.col()) triplets.emplace_back(t.col(), t.row(), t.value());
    }
  }
  Eigen::SparseMatrix<double> m(c.rows, c.cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Eigen::SparseMatrix<double> read_sparse(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sparse(in);
}

void write_sparse(std::ostream& out, const Eigen::SparseMatrix<double>& m, bool symmetric) {
  std::vector<Eigen::Triplet<double>> entries;
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      if (!symmetric || it.row() >= it.col()) entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << entries.size() << '\n';
  for (const auto& t : entries) {
    out << t.row() + 1 << ' ' << t.col() + 1 << ' ';
    format_double(out, t.value());
    out << '\n';
  }
}

void write_sparse(const std::filesystem::path& path, const Eigen::SparseMatrix<double>& m,
                  bool symmetric) {
  auto out = open_out(path);
  write_sparse(out, m, symmetric);
  finish(out, path);
}

}  // namespace gmrf::io
