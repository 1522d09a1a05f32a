#include "csr5/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "csr5/format.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csr5 {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point t0, clock_type::time_point t1) {
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

int current_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

std::string kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::csr_scalar: return "csr-scalar";
    case KernelKind::csr_segsum: return "csr-segsum";
    case KernelKind::csr5: return "csr5";
  }
  return "?";
}

std::vector<KernelKind> parse_kernel_list(const std::string& list) {
  std::vector<KernelKind> kernels;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "csr-scalar") {
      kernels.push_back(KernelKind::csr_scalar);
    } else if (item == "csr-segsum") {
      kernels.push_back(KernelKind::csr_segsum);
    } else if (item == "csr5") {
      kernels.push_back(KernelKind::csr5);
    } else {
      throw std::invalid_argument("unknown kernel '" + item +
                                  "' (expected csr-scalar, csr-segsum or csr5)");
    }
  }
  if (kernels.empty()) throw std::invalid_argument("empty kernel list");
  return kernels;
}

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

double max_relative_error(const DenseVector& y, const DenseVector& reference) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    worst = std::max(worst, relative_error(y[i], reference[i]));
  return worst;
}

double iteration_speedup(double t_csr, double t_pre, double t_new, index_t n) {
  if (t_csr <= 0.0 || t_new <= 0.0 || t_pre < 0.0 || n < 1)
    throw std::invalid_argument("iteration_speedup: times must be positive (t_pre >= 0), n >= 1");
  return static_cast<double>(n) * t_csr / (t_pre + static_cast<double>(n) * t_new);
}

BenchReport run_benchmark(const CsrMatrix& a, const std::string& name, const BenchConfig& cfg) {
  if (cfg.runs < 1 || cfg.inner_iters < 1 || cfg.warmup < 0)
    throw std::invalid_argument("run_benchmark: runs and inner_iters must be >= 1");

  BenchReport report;
  report.matrix = name;
  report.m = a.m;
  report.n = a.n;
  report.nnz = a.nnz();
  report.threads = current_threads();

  std::mt19937_64 rng(cfg.x_seed);
  DenseVector x(static_cast<std::size_t>(a.n));
  for (double& v : x) v = 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const DenseVector y_ref = dense_spmv_oracle(a, x);
  DenseVector y(static_cast<std::size_t>(a.m), 0.0);

  // Conversion happens once, shared by every csr5 timing below.
  Csr5Matrix a5;
  double conv_ms = 0.0;
  const bool wants_csr5 = std::find(cfg.kernels.begin(), cfg.kernels.end(), KernelKind::csr5) !=
                          cfg.kernels.end();
  if (wants_csr5) {
    const auto t0 = clock_type::now();
    a5 = csr_to_csr5(a, cfg.params);
    conv_ms = elapsed_ms(t0, clock_type::now());
  }

  for (KernelKind kind : cfg.kernels) {
    std::function<void()> call;
    switch (kind) {
      case KernelKind::csr_scalar:
        call = [&] { spmv_csr_scalar(a, x, y); };
        break;
      case KernelKind::csr_segsum:
        call = [&] { spmv_csr_segsum(a, x, y); };
        break;
      case KernelKind::csr5:
        call = [&] { spmv_csr5(a5, x, y, cfg.mode); };
        break;
    }

    call();
    if (cfg.corrupt_for_test && *cfg.corrupt_for_test == kind && !y.empty())
      y[0] += 1.0 + std::abs(y[0]);
    const double err = max_relative_error(y, y_ref);
    if (err > cfg.oracle_tol)
      throw CorrectnessError("kernel " + kernel_name(kind) + " disagrees with the dense "
                             "reference on '" + name + "': max relative error " +
                             format_double(err) + " exceeds " + format_double(cfg.oracle_tol));

    KernelResult result;
    result.kernel = kernel_name(kind);
    result.conv_ms = kind == KernelKind::csr5 ? conv_ms : 0.0;

    for (int w = 0; w < cfg.warmup; ++w) call();
    result.sample_ms.reserve(static_cast<std::size_t>(cfg.runs));
    for (int r = 0; r < cfg.runs; ++r) {
      const auto t0 = clock_type::now();
      for (int it = 0; it < cfg.inner_iters; ++it) call();
      result.sample_ms.push_back(elapsed_ms(t0, clock_type::now()) /
                                 static_cast<double>(cfg.inner_iters));
    }
    result.best_ms = *std::min_element(result.sample_ms.begin(), result.sample_ms.end());
    result.avg_ms = std::accumulate(result.sample_ms.begin(), result.sample_ms.end(), 0.0) /
                    static_cast<double>(result.sample_ms.size());
    result.gflops = result.best_ms > 0.0
                        ? 2.0 * static_cast<double>(report.nnz) / (result.best_ms * 1e6)
                        : 0.0;
    report.kernels.push_back(std::move(result));
  }

  // Iteration-scenario speedups against the plain CSR kernel (the first
  // kernel stands in when csr-scalar was not requested).
  const KernelResult* baseline = nullptr;
  for (const KernelResult& k : report.kernels)
    if (k.kernel == "csr-scalar") baseline = &k;
  if (!baseline && !report.kernels.empty()) baseline = &report.kernels.front();
  for (KernelResult& k : report.kernels) {
    if (!baseline || baseline->best_ms <= 0.0 || k.best_ms <= 0.0) continue;
    k.speedup_n50 = iteration_speedup(baseline->best_ms, k.conv_ms, k.best_ms, 50);
    k.speedup_n500 = iteration_speedup(baseline->best_ms, k.conv_ms, k.best_ms, 500);
  }
  return report;
}

void emit_csv(const BenchReport& report, std::ostream& out) {
  out << "matrix,m,n,nnz,kernel,threads,best_ms,avg_ms,gflops,conv_ms,speedup_n50,speedup_n500\n";
  for (const KernelResult& k : report.kernels) {
    out << report.matrix << ',' << report.m << ',' << report.n << ',' << report.nnz << ','
        << k.kernel << ',' << report.threads << ',' << format_double(k.best_ms) << ','
        << format_double(k.avg_ms) << ',' << format_double(k.gflops) << ','
        << format_double(k.conv_ms) << ',' << format_double(k.speedup_n50) << ','
        << format_double(k.speedup_n500) << '\n';
  }
}

void emit_csv(const BenchReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "'");
  emit_csv(report, out);
  if (!out.flush()) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

}  // namespace csr5
