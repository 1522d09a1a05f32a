#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csr5/csr.hpp"
#include "csr5/spmv.hpp"
#include "csr5/tuning.hpp"

namespace csr5 {

enum class KernelKind { csr_scalar, csr_segsum, csr5 };

std::string kernel_name(KernelKind kind);
std::vector<KernelKind> parse_kernel_list(const std::string& list);

/// Raised when a kernel's output disagrees with the dense reference before
/// timing starts.
struct CorrectnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KernelResult {
  std::string kernel;
  std::vector<double> sample_ms;  // one averaged sample per outer run
  double best_ms = 0.0;
  double avg_ms = 0.0;
  double gflops = 0.0;   // 2 * nnz / best time
  double conv_ms = 0.0;  // format conversion time; zero for the CSR kernels
  double speedup_n50 = 0.0;
  double speedup_n500 = 0.0;
};

struct BenchReport {
  std::string matrix;
  index_t m = 0;
  index_t n = 0;
  index_t nnz = 0;
  int threads = 1;
  std::vector<KernelResult> kernels;
};

struct BenchConfig {
  std::vector<KernelKind> kernels{KernelKind::csr_scalar, KernelKind::csr_segsum,
                                  KernelKind::csr5};
  int runs = 10;         // outer samples; the minimum is reported
  int inner_iters = 1000;  // calls averaged inside each sample
  int warmup = 10;       // untimed calls before sampling
  SpmvMode mode = SpmvMode::deterministic;
  TuningParams params{};
  double oracle_tol = 1e-10;
  std::uint64_t x_seed = 1;
  /// Test hook: perturb this kernel's output before validation so the
  /// correctness guard trips.
  std::optional<KernelKind> corrupt_for_test;
};

/// |a - b| / max(1, |b|): relative error against the reference, falling
/// back to absolute near zero.
double relative_error(double value, double reference);

/// Largest per-element relative_error between y and the reference.
double max_relative_error(const DenseVector& y, const DenseVector& reference);

/// Times each requested kernel with the repeat-and-best protocol after
/// validating its output against dense_spmv_oracle. Throws
/// CorrectnessError (and emits no timing) when validation fails.
BenchReport run_benchmark(const CsrMatrix& a, const std::string& name, const BenchConfig& cfg);

/// Overall speedup of a converted format over plain CSR in a solver doing
/// n iterations: n * t_csr / (t_pre + n * t_new). Times in seconds;
/// t_pre may be zero.
double iteration_speedup(double t_csr, double t_pre, double t_new, index_t n);

/// CSV with the fixed header
/// matrix,m,n,nnz,kernel,threads,best_ms,avg_ms,gflops,conv_ms,speedup_n50,speedup_n500
/// and one row per kernel. Decimal points regardless of locale.
void emit_csv(const BenchReport& report, std::ostream& out);
void emit_csv(const BenchReport& report, const std::string& path);

}  // namespace csr5
