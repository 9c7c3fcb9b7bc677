#include <doctest.h>

#include "oracles.hpp"

#include <gmrf/errors.hpp>
#include <gmrf/graph.hpp>
#include <gmrf/io.hpp>

#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using gmrf::Index;

namespace {

gmrf::ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const gmrf::Error& e) {
    return e.code();
  }
  return gmrf::ErrorCode{};
}

Eigen::MatrixXd awkward_values(Index r, Index c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> ex(-300, 300);
  Eigen::MatrixXd m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = u(gen) * std::pow(10.0, ex(gen));
  m(0, 0) = 1.0 / 3.0;
  m(r - 1, c - 1) = std::numeric_limits<double>::denorm_min();
  return m;
}

}  // namespace

TEST_CASE("csv round trip is exact") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Eigen::MatrixXd m = awkward_values(7, 4, seed);
    std::stringstream ss;
    gmrf::io::write_csv(ss, m);
    CHECK(gmrf::io::read_csv(ss) == m);
  }
  fs::path p = fs::temp_directory_path() / "gmrf_io_test.csv";
  Eigen::MatrixXd m = oracle::standard_normal(10, 3, 1);
  gmrf::io::write_csv(p, m);
  CHECK(gmrf::io::read_csv(p) == m);
  fs::remove(p);
}

TEST_CASE("csv layout and parsing") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, -2, 3;
  std::stringstream ss;
  gmrf::io::write_csv(ss, m);
  CHECK(ss.str() == "1,0.5\n-2,3\n");

  std::istringstream crlf("1, 2\r\n3 ,4\r\n\n");
  Eigen::MatrixXd r = gmrf::io::read_csv(crlf);
  CHECK(r == Eigen::Matrix2d{{1, 2}, {3, 4}});

  std::istringstream ragged("1,2\n3\n");
  CHECK(code_of([&] { gmrf::io::read_csv(ragged); }) == gmrf::ErrorCode::io);
  std::istringstream junk("1,abc\n");
  CHECK(code_of([&] { gmrf::io::read_csv(junk); }) == gmrf::ErrorCode::io);
  std::istringstream empty("");
  CHECK(code_of([&] { gmrf::io::read_csv(empty); }) == gmrf::ErrorCode::io);
  CHECK(code_of([] { gmrf::io::read_csv(fs::path("/nonexistent/x.csv")); }) == gmrf::ErrorCode::io);
}

TEST_CASE("pattern round trip") {
  std::mt19937_64 gen(5);
  std::bernoulli_distribution coin(0.2);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<std::pair<Index, Index>> e;
    for (Index i = 0; i < 20; ++i)
      for (Index j = 0; j < i; ++j)
        if (coin(gen)) e.emplace_back(i, j);
    auto g = gmrf::SparsityPattern::from_edges(20, e);
    std::stringstream ss;
    gmrf::io::write_pattern(ss, g);
    CHECK(ss.str().rfind("%%MatrixMarket matrix coordinate pattern symmetric", 0) == 0);
    CHECK(gmrf::io::read_pattern(ss) == g);
  }
}

TEST_CASE("pattern reader accepts general and valued files") {
  std::istringstream general(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "3 3 2\n"
      "1 2 1.0\n"
      "3 3 5\n");
  auto g = gmrf::io::read_pattern(general);
  CHECK(g.size() == 3);
  CHECK(g.contains(0, 1));
  CHECK(g.contains(1, 0));
  CHECK(g.contains(1, 1));
  CHECK_FALSE(g.contains(0, 2));

  std::istringstream rect("%%MatrixMarket matrix coordinate pattern general\n2 3 1\n1 1\n");
  CHECK(code_of([&] { gmrf::io::read_pattern(rect); }) == gmrf::ErrorCode::io);
  std::istringstream shorter("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 1\n");
  CHECK(code_of([&] { gmrf::io::read_pattern(shorter); }) == gmrf::ErrorCode::io);
  std::istringstream outside("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n4 1\n");
  CHECK(code_of([&] { gmrf::io::read_pattern(outside); }) == gmrf::ErrorCode::io);
}

TEST_CASE("sparse matrix round trip") {
  Eigen::MatrixXd d = oracle::ar1_precision(0.8, 6);
  d(2, 2) = 1.0 / 7.0;
  Eigen::SparseMatrix<double> s = d.sparseView();
  std::stringstream sym;
  gmrf::io::write_sparse(sym, s, true);
  CHECK(sym.str().rfind("%%MatrixMarket matrix coordinate real symmetric", 0) == 0);
  CHECK(Eigen::MatrixXd(gmrf::io::read_sparse(sym)) == d);

  Eigen::MatrixXd a = awkward_values(5, 5, 3);
  a(1, 2) = 0;
  Eigen::SparseMatrix<double> as = a.sparseView();
  std::stringstream gen;
  gmrf::io::write_sparse(gen, as, false);
  CHECK(gen.str().rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  CHECK(Eigen::MatrixXd(gmrf::io::read_sparse(gen)) == a);

  fs::path p = fs::temp_directory_path() / "gmrf_io_test.mtx";
  gmrf::io::write_sparse(p, s, true);
  CHECK(Eigen::MatrixXd(gmrf::io::read_sparse(p)) == d);
  fs::remove(p);
}
