#include "csr5/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace csr5 {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("matrix market: line " + std::to_string(line) + ": " + what);
}

// Next non-comment, non-blank line; returns false at end of input.
bool next_data_line(std::istream& in, std::string& out, std::size_t& line) {
  while (std::getline(in, out)) {
    ++line;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    const auto pos = out.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (out[pos] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

MatrixMarketData read_matrix_market(std::istream& in) {
  std::size_t line_no = 0;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("matrix market: empty input");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") fail(line_no, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix") fail(line_no, "unsupported object '" + object + "'");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate")
    fail(line_no, "unsupported format '" + format + "' (only coordinate is supported)");
  if (field == "complex") fail(line_no, "complex field is not supported");
  if (field != "real" && field != "integer" && field != "pattern")
    fail(line_no, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    fail(line_no, "unsupported symmetry '" + symmetry + "'");

  if (!next_data_line(in, line, line_no))
    throw std::runtime_error("matrix market: missing size line");
  std::istringstream size_line(line);
  index_t m = 0, n = 0, declared = 0;
  if (!(size_line >> m >> n >> declared) || m < 0 || n < 0 || declared < 0)
    fail(line_no, "malformed size line '" + line + "'");

  const bool pattern = field == "pattern";
  const bool symmetric = symmetry == "symmetric";

  MatrixMarketData data;
  data.m = m;
  data.n = n;
  data.entries.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));

  for (index_t k = 0; k < declared; ++k) {
    if (!next_data_line(in, line, line_no))
      throw std::runtime_error("matrix market: expected " + std::to_string(declared) +
                               " entries, got " + std::to_string(k));
    std::istringstream entry(line);
    index_t r = 0, c = 0;
    double v = 1.0;
    if (!(entry >> r >> c)) fail(line_no, "malformed entry '" + line + "'");
    if (!pattern && !(entry >> v)) fail(line_no, "missing value in entry '" + line + "'");
    if (r < 1 || r > m || c < 1 || c > n)
      fail(line_no, "index (" + std::to_string(r) + ", " + std::to_string(c) +
                        ") outside " + std::to_string(m) + "x" + std::to_string(n));
    data.entries.push_back({r - 1, c - 1, v});
    if (symmetric && r != c) data.entries.push_back({c - 1, r - 1, v});
  }
  return data;
}

MatrixMarketData read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("matrix market: cannot open '" + path + "'");
  return read_matrix_market(in);
}

CsrMatrix load_matrix_market(const std::string& path) {
  MatrixMarketData data = read_matrix_market(path);
  return coo_to_csr(std::move(data.entries), data.m, data.n);
}

}  // namespace csr5
