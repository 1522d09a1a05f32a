// spmv-bench: loads or generates a sparse matrix, checks every requested
// kernel against the dense reference, times them with the repeat-and-best
// protocol and reports throughput plus iteration-scenario speedups.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 correctness failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csr5/bench.hpp"
#include "csr5/format.hpp"
#include "csr5/matrix_market.hpp"
#include "csr5/spmv.hpp"
#include "csr5/synthetic.hpp"
#include "csr5/tuning.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct Options {
  std::string matrix_path;
  std::string synthetic_kind;
  csr5::index_t rows = 10000;
  csr5::index_t cols = 10000;
  csr5::index_t nnz = 100000;
  std::uint64_t seed = 1;
  double long_row_fraction = 0.15;

  std::string kernels = "csr-scalar,csr-segsum,csr5";
  csr5::index_t omega = 4;
  std::string sigma = "16";
  std::string tune_bounds = "4,32,256,4";
  int runs = 10;
  int inner = 1000;
  int warmup = 10;
  int threads = 0;
  std::string mode = "deterministic";
  std::string csv_path;
  std::string dump_path;
  std::string corrupt_kernel;  // test hook
};

csr5::TuningParams parse_bounds(const std::string& text) {
  csr5::TuningParams params;
  if (std::sscanf(text.c_str(), "%ld,%ld,%ld,%ld", &params.r, &params.s, &params.t, &params.u) !=
      4)
    throw CLI::ValidationError("--tune-bounds", "expected r,s,t,u");
  return params;
}

void print_report(const csr5::BenchReport& report) {
  std::printf("matrix %s: %ld x %ld, %ld nonzeros, %d threads\n", report.matrix.c_str(),
              report.m, report.n, report.nnz, report.threads);
  std::printf("%-12s %12s %12s %10s %10s %12s %12s\n", "kernel", "best_ms", "avg_ms", "gflops",
              "conv_ms", "speedup_n50", "speedup_n500");
  for (const csr5::KernelResult& k : report.kernels) {
    std::printf("%-12s %12.4f %12.4f %10.3f %10.3f %12.3f %12.3f\n", k.kernel.c_str(), k.best_ms,
                k.avg_ms, k.gflops, k.conv_ms, k.speedup_n50, k.speedup_n500);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "SpMV benchmark over CSR and the tiled CSR5 format.\n"
      "Throughput is reported as 2*nnz/time GFlop/s (one multiply and one add\n"
      "per stored entry). Kernel outputs are validated against a sequential\n"
      "dense reference before any timing; a mismatch aborts with exit code 2."};
  app.set_help_flag("--help", "Print this help message");

  auto* matrix_opt =
      app.add_option("--matrix", opt.matrix_path, "Matrix Market coordinate file (.mtx)");
  auto* synth_opt = app.add_option("--synthetic", opt.synthetic_kind,
                                   "Generate a matrix: regular | one-long-row | random");
  matrix_opt->excludes(synth_opt);
  app.add_option("--rows", opt.rows, "Synthetic row count")->check(CLI::PositiveNumber);
  app.add_option("--cols", opt.cols, "Synthetic column count")->check(CLI::PositiveNumber);
  app.add_option("--nnz", opt.nnz, "Synthetic nonzero count")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "Synthetic generator seed");
  app.add_option("--long-row-fraction", opt.long_row_fraction,
                 "Fraction of nnz in the long row (one-long-row kind)");

  app.add_option("--kernels", opt.kernels, "Comma list: csr-scalar,csr-segsum,csr5");
  app.add_option("--omega", opt.omega, "Tile width")->check(CLI::PositiveNumber);
  app.add_option("--sigma", opt.sigma, "Tile height, or 'auto' for the nnz/row rule");
  app.add_option("--tune-bounds", opt.tune_bounds, "r,s,t,u bounds for --sigma auto");
  app.add_option("--runs", opt.runs, "Timing samples; the minimum is reported")
      ->check(CLI::PositiveNumber);
  app.add_option("--inner", opt.inner, "Kernel calls averaged per sample")
      ->check(CLI::PositiveNumber);
  app.add_option("--warmup", opt.warmup, "Untimed calls before sampling")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", opt.threads,
                 "Worker threads (overrides OMP_NUM_THREADS; 0 = library default)");
  app.add_option("--mode", opt.mode, "Cross-tile combine: deterministic | atomic")
      ->check(CLI::IsMember({"deterministic", "atomic"}));
  app.add_option("--csv", opt.csv_path, "Write the report as CSV");
  app.add_option("--dump-format", opt.dump_path,
                 "Write a text dump of the tile metadata and exit");
  app.add_option("--self-test-corrupt", opt.corrupt_kernel,
                 "Perturb this kernel's output to exercise the correctness guard")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (opt.matrix_path.empty() && opt.synthetic_kind.empty())
      throw std::runtime_error("one of --matrix or --synthetic is required");

#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#endif

    csr5::CsrMatrix a;
    std::string name;
    if (!opt.matrix_path.empty()) {
      a = csr5::load_matrix_market(opt.matrix_path);
      const auto slash = opt.matrix_path.find_last_of('/');
      name = slash == std::string::npos ? opt.matrix_path : opt.matrix_path.substr(slash + 1);
    } else {
      const auto kind = csr5::parse_synthetic_kind(opt.synthetic_kind);
      a = csr5::generate_synthetic(kind, opt.rows, opt.cols, opt.nnz, opt.seed,
                                   opt.long_row_fraction);
      name = opt.synthetic_kind;
    }

    csr5::TuningParams params = parse_bounds(opt.tune_bounds);
    params.omega = opt.omega;
    if (opt.sigma == "auto") {
      const double avg = a.m > 0 ? static_cast<double>(a.nnz()) / static_cast<double>(a.m) : 0.0;
      params.sigma = csr5::select_sigma(avg, params);
    } else {
      params.sigma = std::stoll(opt.sigma);
    }
    params.validate();

    if (!opt.dump_path.empty()) {
      const csr5::Csr5Matrix a5 = csr5::csr_to_csr5(a, params);
      std::ofstream out(opt.dump_path);
      if (!out) throw std::runtime_error("cannot open '" + opt.dump_path + "'");
      csr5::dump_format(a5, out);
      std::printf("wrote tile metadata for %s to %s\n", name.c_str(), opt.dump_path.c_str());
      return 0;
    }

    csr5::BenchConfig cfg;
    cfg.kernels = csr5::parse_kernel_list(opt.kernels);
    cfg.runs = opt.runs;
    cfg.inner_iters = opt.inner;
    cfg.warmup = opt.warmup;
    cfg.mode = opt.mode == "atomic" ? csr5::SpmvMode::atomic : csr5::SpmvMode::deterministic;
    cfg.params = params;
    if (!opt.corrupt_kernel.empty())
      cfg.corrupt_for_test = csr5::parse_kernel_list(opt.corrupt_kernel).front();

    const csr5::BenchReport report = csr5::run_benchmark(a, name, cfg);
    print_report(report);
    if (!opt.csv_path.empty()) {
      csr5::emit_csv(report, opt.csv_path);
      std::printf("wrote %s\n", opt.csv_path.c_str());
    }
    return 0;
  } catch (const csr5::CorrectnessError& e) {
    std::cerr << "correctness failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
