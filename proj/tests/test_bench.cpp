#include <doctest.h>

#include <stdexcept>

#include <sstream>

#include "csr5/bench.hpp"
#include "csr5/synthetic.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace csr5;

TEST_CASE("iteration_speedup: worked examples") {
  CHECK(iteration_speedup(1.0, 0.0, 1.0, 1) == doctest::Approx(1.0));
  CHECK(iteration_speedup(1.0, 0.0, 1.0, 500) == doctest::Approx(1.0));
  CHECK(iteration_speedup(1.0, 5.0, 0.5, 50) == doctest::Approx(50.0 / 30.0));
  CHECK(iteration_speedup(1.0, 1e9, 0.5, 50) < 1e-6);
}

TEST_CASE("iteration_speedup: monotone in n when the new kernel is faster") {
  double prev = 0.0;
  for (index_t n = 1; n <= 500; ++n) {
    const double s = iteration_speedup(1.0, 5.0, 0.5, n);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("iteration_speedup: rejects non-positive inputs") {
  CHECK_THROWS_AS(iteration_speedup(0.0, 1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(iteration_speedup(1.0, -1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(iteration_speedup(1.0, 1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(iteration_speedup(1.0, 1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("kernel list parsing") {
  const auto kernels = parse_kernel_list("csr-scalar,csr5");
  REQUIRE(kernels.size() == 2);
  CHECK(kernels[0] == KernelKind::csr_scalar);
  CHECK(kernels[1] == KernelKind::csr5);
  CHECK_THROWS_AS(parse_kernel_list("fancy"), std::invalid_argument);
  CHECK_THROWS_AS(parse_kernel_list(""), std::invalid_argument);
}

TEST_CASE("run_benchmark collects the configured samples and picks the best") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::regular, 50, 50, 500, 1);
  BenchConfig cfg;
  cfg.runs = 4;
  cfg.inner_iters = 3;
  cfg.warmup = 1;
  const BenchReport report = run_benchmark(a, "regular-50", cfg);
  CHECK(report.nnz == 500);
  REQUIRE(report.kernels.size() == 3);
  for (const KernelResult& k : report.kernels) {
    CHECK(k.sample_ms.size() == 4);
    CHECK(k.best_ms <= k.avg_ms + 1e-12);
    CHECK(k.gflops > 0.0);
    CHECK(k.speedup_n50 > 0.0);
  }
  // Conversion cost is charged to the tiled kernel only.
  CHECK(report.kernels[0].conv_ms == 0.0);
  CHECK(report.kernels[2].conv_ms > 0.0);
}

TEST_CASE("run_benchmark aborts on an injected mismatch") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::regular, 20, 20, 100, 1);
  BenchConfig cfg;
  cfg.runs = 1;
  cfg.inner_iters = 1;
  cfg.warmup = 0;
  cfg.corrupt_for_test = KernelKind::csr_segsum;
  CHECK_THROWS_AS(run_benchmark(a, "bad", cfg), CorrectnessError);
}

TEST_CASE("deterministic results are identical across thread counts") {
  const CsrMatrix a = generate_synthetic(SyntheticKind::random_skew, 300, 100, 5000, 3);
  const Csr5Matrix a5 = csr_to_csr5(a, TuningParams{});
  DenseVector x(100, 1.0);
#ifdef _OPENMP
  omp_set_num_threads(1);
#endif
  const DenseVector y1 = spmv_csr5(a5, x);
#ifdef _OPENMP
  omp_set_num_threads(8);
#endif
  const DenseVector y8 = spmv_csr5(a5, x);
  CHECK(y1 == y8);
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif
}

TEST_CASE("emit_csv: header, rows, and parse-back") {
  BenchReport report;
  report.matrix = "toy";
  report.m = 4;
  report.n = 5;
  report.nnz = 9;
  report.threads = 2;

  SUBCASE("empty report is header-only") {
    std::ostringstream out;
    emit_csv(report, out);
    CHECK(out.str() ==
          "matrix,m,n,nnz,kernel,threads,best_ms,avg_ms,gflops,conv_ms,"
          "speedup_n50,speedup_n500\n");
  }

  SUBCASE("one kernel gives a two-line file that parses back") {
    KernelResult k;
    k.kernel = "csr5";
    k.best_ms = 0.125;
    k.avg_ms = 0.25;
    k.gflops = 1.5;
    k.conv_ms = 0.5;
    k.speedup_n50 = 1.25;
    k.speedup_n500 = 2.0;
    report.kernels.push_back(k);

    std::ostringstream out;
    emit_csv(report, out);
    std::istringstream in(out.str());
    std::string header, row, extra;
    REQUIRE(std::getline(in, header));
    REQUIRE(std::getline(in, row));
    CHECK_FALSE(std::getline(in, extra));

    std::stringstream fields(row);
    std::string field;
    std::vector<std::string> cols;
    while (std::getline(fields, field, ',')) cols.push_back(field);
    REQUIRE(cols.size() == 12);
    CHECK(cols[0] == "toy");
    CHECK(std::stoll(cols[1]) == 4);
    CHECK(std::stoll(cols[2]) == 5);
    CHECK(std::stoll(cols[3]) == 9);
    CHECK(cols[4] == "csr5");
    CHECK(std::stoi(cols[5]) == 2);
    CHECK(std::stod(cols[6]) == 0.125);
    CHECK(std::stod(cols[7]) == 0.25);
    CHECK(std::stod(cols[8]) == 1.5);
    CHECK(std::stod(cols[9]) == 0.5);
    CHECK(std::stod(cols[10]) == 1.25);
    CHECK(std::stod(cols[11]) == 2.0);
  }
}

TEST_CASE("relative_error falls back to absolute near zero") {
  CHECK(relative_error(2.0, 1.0) == 1.0);
  CHECK(relative_error(1e-13, 0.0) == doctest::Approx(1e-13));
  CHECK(relative_error(200.0, 100.0) == 1.0);
}
