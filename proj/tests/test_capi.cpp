#include <doctest.h>

#include <gmrf/gmrf.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

gmrf_matrix* make(size_t r, size_t c, const std::vector<double>& v) {
  gmrf_matrix* m = nullptr;
  REQUIRE(gmrf_matrix_create(r, c, v.data(), &m) == GMRF_OK);
  return m;
}

gmrf_matrix* ar1_data(size_t n, size_t t, uint64_t seed) {
  const double phi = 0.8;
  gmrf_matrix* x = nullptr;
  REQUIRE(gmrf_simulate_ar(&phi, 1, 1.0, n, t, 1, seed, &x) == GMRF_OK);
  return x;
}

std::string tmp(const char* name) { return (fs::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("matrix handles") {
  gmrf_matrix* m = make(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK(gmrf_matrix_rows(m) == 2);
  CHECK(gmrf_matrix_cols(m) == 3);
  std::vector<double> back(6);
  CHECK(gmrf_matrix_copy(m, back.data(), back.size()) == GMRF_OK);
  CHECK(back == std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(gmrf_matrix_copy(m, back.data(), 5) == GMRF_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gmrf_last_error()).size() > 0);

  auto path = tmp("capi_matrix.csv");
  CHECK(gmrf_matrix_write_csv(m, path.c_str()) == GMRF_OK);
  gmrf_matrix* r = nullptr;
  CHECK(gmrf_matrix_read_csv(path.c_str(), &r) == GMRF_OK);
  std::vector<double> again(6);
  gmrf_matrix_copy(r, again.data(), again.size());
  CHECK(again == back);
  fs::remove(path);

  CHECK(gmrf_matrix_read_csv("/nonexistent/file.csv", &r) == GMRF_ERR_IO);
  CHECK(gmrf_matrix_create(2, 2, nullptr, &r) == GMRF_ERR_INVALID_ARGUMENT);
  gmrf_matrix_free(m);
  gmrf_matrix_free(r);
  gmrf_matrix_free(nullptr);
}

TEST_CASE("status strings") {
  CHECK(std::string(gmrf_status_string(GMRF_OK)) == "ok");
  CHECK(std::string(gmrf_status_string(GMRF_ERR_SINGULAR_BLOCK)) == "singular-block");
  CHECK(std::string(gmrf_status_string(GMRF_ERR_NON_STATIONARY)) == "non-stationary");
}

TEST_CASE("graph handles") {
  gmrf_graph* g = nullptr;
  REQUIRE(gmrf_graph_band(5, 1, &g) == GMRF_OK);
  CHECK(gmrf_graph_size(g) == 5);
  CHECK(gmrf_graph_edge_pairs(g) == 4);
  CHECK(gmrf_graph_contains(g, 1, 2) == 1);
  CHECK(gmrf_graph_contains(g, 0, 2) == 0);

  gmrf_graph* e = nullptr;
  REQUIRE(gmrf_graph_expand(g, 2, &e) == GMRF_OK);
  CHECK(gmrf_graph_contains(e, 0, 2) == 1);
  CHECK(gmrf_graph_edge_pairs(e) == 7);

  size_t rows[] = {0, 3};
  size_t cols[] = {4, 1};
  gmrf_graph* f = nullptr;
  REQUIRE(gmrf_graph_from_edges(5, rows, cols, 2, &f) == GMRF_OK);
  CHECK(gmrf_graph_contains(f, 4, 0) == 1);
  CHECK(gmrf_graph_edge_pairs(f) == 2);

  auto path = tmp("capi_graph.mtx");
  CHECK(gmrf_graph_write(e, path.c_str()) == GMRF_OK);
  gmrf_graph* r = nullptr;
  CHECK(gmrf_graph_read(path.c_str(), &r) == GMRF_OK);
  CHECK(gmrf_graph_edge_pairs(r) == 7);
  fs::remove(path);

  size_t bad[] = {7};
  gmrf_graph* b = nullptr;
  CHECK(gmrf_graph_from_edges(5, bad, cols, 1, &b) == GMRF_ERR_INVALID_ARGUMENT);
  CHECK(gmrf_graph_band(0, 1, &b) == GMRF_ERR_INVALID_ARGUMENT);
  for (auto* h : {g, e, f, r}) gmrf_graph_free(h);
}

TEST_CASE("simulation") {
  double phi = 1.2;
  gmrf_matrix* x = nullptr;
  CHECK(gmrf_simulate_ar(&phi, 1, 1.0, 10, 10, 1, 1, &x) == GMRF_ERR_NON_STATIONARY);
  x = ar1_data(20, 15, 3);
  CHECK(gmrf_matrix_rows(x) == 20);
  CHECK(gmrf_matrix_cols(x) == 15);
  gmrf_matrix_free(x);

  double psi[] = {1.0 / 3, 1.0 / 3, 1.0 - 2.0 / 3};
  gmrf_matrix* m = nullptr;
  CHECK(gmrf_simulate_mixed_ar(psi, 3, 10, 12, 4, &m) == GMRF_OK);
  CHECK(gmrf_matrix_cols(m) == 12);
  gmrf_matrix_free(m);
  double bad[] = {0.5, 0.2};
  CHECK(gmrf_simulate_mixed_ar(bad, 2, 10, 12, 4, &m) == GMRF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("shrinkage covariance") {
  gmrf_matrix* x = ar1_data(30, 6, 9);
  gmrf_matrix* c = nullptr;
  double lambda = -1, nu = 0;
  REQUIRE(gmrf_cov_shrink(x, GMRF_TARGET_DIAGONAL, &c, &lambda, &nu) == GMRF_OK);
  CHECK(lambda >= 0);
  CHECK(lambda <= 1);
  CHECK(std::isnan(nu));
  CHECK(gmrf_matrix_rows(c) == 6);
  gmrf_matrix_free(c);
  REQUIRE(gmrf_cov_shrink(x, GMRF_TARGET_IDENTITY, &c, &lambda, &nu) == GMRF_OK);
  CHECK(nu > 0);
  gmrf_matrix_free(c);
  gmrf_matrix_free(x);

  gmrf_matrix* tiny = make(3, 2, {1, 2, 3, 4, 5, 7});
  CHECK(gmrf_cov_shrink(tiny, GMRF_TARGET_DIAGONAL, &c, &lambda, nullptr) == GMRF_ERR_INSUFFICIENT_SAMPLES);
  gmrf_matrix_free(tiny);
}

TEST_CASE("precision pipeline") {
  gmrf_matrix* x = ar1_data(200, 20, 5);
  gmrf_graph* g = nullptr;
  gmrf_graph_band(20, 1, &g);
  gmrf_precision_options opts;
  gmrf_precision_options_default(&opts);
  CHECK(opts.markov_order == 1);
  CHECK(opts.shrinkage == 1);
  CHECK(opts.symmetrize == 1);

  gmrf_precision* p = nullptr;
  REQUIRE(gmrf_prec_sparse(x, g, &opts, &p) == GMRF_OK);
  CHECK(gmrf_precision_size(p) == 20);
  CHECK(gmrf_precision_is_symmetric(p) == 1);
  CHECK(gmrf_precision_is_spd(p) == 1);
  CHECK(gmrf_precision_nonzeros(p) == 20 + 2 * 19);
  CHECK(gmrf_precision_get(p, 3, 4) == gmrf_precision_get(p, 4, 3));
  CHECK(gmrf_precision_get(p, 0, 5) == 0.0);

  double nll = 0, aic = 0;
  CHECK(gmrf_prec_nll(x, p, &nll) == GMRF_OK);
  CHECK(gmrf_prec_aic(x, p, &aic) == GMRF_OK);
  CHECK(aic == doctest::Approx(nll + (58.0 + 20.0) / 400.0));

  std::vector<double> row(20, 0.0);
  row[4] = 1;
  row[6] = 1;
  double ce = 0;
  CHECK(gmrf_conditional_expectation(p, row.data(), row.size(), 5, &ce) == GMRF_OK);
  CHECK(ce == doctest::Approx(-(gmrf_precision_get(p, 4, 5) + gmrf_precision_get(p, 6, 5)) /
                               gmrf_precision_get(p, 5, 5)));
  CHECK(gmrf_conditional_expectation(p, row.data(), 3, 5, &ce) == GMRF_ERR_INVALID_ARGUMENT);

  auto path = tmp("capi_prec.mtx");
  CHECK(gmrf_precision_write(p, path.c_str()) == GMRF_OK);
  gmrf_precision* r = nullptr;
  CHECK(gmrf_precision_read(path.c_str(), &r) == GMRF_OK);
  for (size_t i = 0; i < 20; ++i)
    for (size_t j = 0; j < 20; ++j) REQUIRE(gmrf_precision_get(r, i, j) == gmrf_precision_get(p, i, j));
  fs::remove(path);

  opts.symmetrize = 0;
  gmrf_precision* raw = nullptr;
  REQUIRE(gmrf_prec_sparse(x, g, &opts, &raw) == GMRF_OK);
  CHECK(gmrf_precision_is_symmetric(raw) == 0);
  CHECK(gmrf_prec_nll(x, raw, &nll) == GMRF_ERR_INVALID_ARGUMENT);

  gmrf_graph* wrong = nullptr;
  gmrf_graph_band(19, 1, &wrong);
  gmrf_precision* w = nullptr;
  CHECK(gmrf_prec_sparse(x, wrong, nullptr, &w) == GMRF_ERR_INVALID_ARGUMENT);
  CHECK(w == nullptr);

  gmrf_precision_free(p);
  gmrf_precision_free(r);
  gmrf_precision_free(raw);
  gmrf_graph_free(g);
  gmrf_graph_free(wrong);
  gmrf_matrix_free(x);
}

TEST_CASE("singular block reports the column") {
  gmrf_matrix* x = ar1_data(5, 10, 2);
  gmrf_graph* g = nullptr;
  gmrf_graph_band(10, 1, &g);
  gmrf_precision_options opts{6, 0, 1};
  gmrf_precision* p = nullptr;
  CHECK(gmrf_prec_sparse(x, g, &opts, &p) == GMRF_ERR_SINGULAR_BLOCK);
  CHECK(gmrf_last_error_column() == 0);
  CHECK(std::string(gmrf_last_error()).find("column 0") != std::string::npos);

  gmrf_matrix_free(x);
  x = ar1_data(50, 10, 2);
  CHECK(gmrf_prec_sparse(x, g, &opts, &p) == GMRF_OK);
  CHECK(gmrf_last_error_column() == -1);
  gmrf_precision_free(p);
  gmrf_graph_free(g);
  gmrf_matrix_free(x);
}

TEST_CASE("order selection") {
  gmrf_matrix* x = ar1_data(100, 15, 8);
  gmrf_graph* g = nullptr;
  gmrf_graph_band(15, 1, &g);
  gmrf_order_trace* t = nullptr;
  REQUIRE(gmrf_select_order(x, g, 4, GMRF_RULE_EXHAUSTIVE, &t) == GMRF_OK);
  CHECK(gmrf_order_trace_size(t) == 5);
  int sel = gmrf_order_trace_selected(t);
  CHECK(sel >= 1);
  int order = -1, valid = 0;
  double nll = 0, aic = 0;
  CHECK(gmrf_order_trace_entry(t, 2, &order, &nll, &aic, &valid) == GMRF_OK);
  CHECK(order == 2);
  CHECK(valid == 1);
  CHECK(aic > nll);
  CHECK(gmrf_order_trace_entry(t, 5, &order, &nll, &aic, &valid) == GMRF_ERR_INVALID_ARGUMENT);
  gmrf_order_trace_free(t);
  CHECK(gmrf_select_order(x, g, -1, GMRF_RULE_FIRST_RISE, &t) == GMRF_ERR_INVALID_ARGUMENT);
  gmrf_graph_free(g);
  gmrf_matrix_free(x);
}

TEST_CASE("benchmark") {
  gmrf_benchmark* b = nullptr;
  REQUIRE(gmrf_benchmark_run(GMRF_EXPERIMENT_ARORDER, 2, 11, GMRF_SCALE_DESK, 1, &b) == GMRF_OK);
  CHECK(gmrf_benchmark_size(b) == 7 * 2 * 4);
  gmrf_estimator est;
  int v = -1, rep = -1, failed = -1;
  double fc = 0, fp = 0;
  CHECK(gmrf_benchmark_record(b, 5, &est, &v, &rep, &fc, &fp, &failed) == GMRF_OK);
  CHECK(est == GMRF_ESTIMATOR_LE);
  CHECK(v == 0);
  CHECK(rep == 1);
  CHECK(failed == 0);
  CHECK(fp > 0);
  auto path = tmp("capi_bench.csv");
  CHECK(gmrf_benchmark_write_csv(b, path.c_str()) == GMRF_OK);
  CHECK(fs::file_size(path) > 0);
  fs::remove(path);
  gmrf_benchmark_free(b);
  CHECK(gmrf_benchmark_run(GMRF_EXPERIMENT_ARORDER, 0, 11, GMRF_SCALE_DESK, 1, &b) ==
        GMRF_ERR_INVALID_ARGUMENT);
}
