#include "mtfa/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace mtfa {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw ParseError(os.str());
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& path, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) parse_fail(path, line, "trailing characters in number '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(path, line, "malformed number '" + s + "'");
  }
}

}  // namespace

void write_field_csv(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw ParseError(path + ": cannot open for writing");
  os << "# field vars=" << f.grid.vars << " N=" << f.grid.n << "\n";
  for (size_t k = 0; k < f.values.size(); ++k)
    os << k << "," << fmt(f.values[k].real()) << "," << fmt(f.values[k].imag()) << "\n";
}

Field read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path + ": cannot open");
  std::string line;
  int lineno = 1;
  if (!std::getline(is, line)) parse_fail(path, 1, "empty file");
  int vars = 0, n = 0;
  if (std::sscanf(line.c_str(), "# field vars=%d N=%d", &vars, &n) != 2)
    parse_fail(path, 1, "expected header '# field vars=<v> N=<N>'");
  if (vars != 1 && vars != 2) parse_fail(path, 1, "vars must be 1 or 2");
  Grid grid;
  try {
    grid = vars == 1 ? Grid::line(n) : Grid::plane(n);
  } catch (const std::exception& e) {
    parse_fail(path, 1, e.what());
  }
  Field f(grid);
  const size_t expected = f.values.size();
  size_t count = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto parts = split_commas(line);
    if (parts.size() != 3) parse_fail(path, lineno, "expected 'index,re,im'");
    double idx = to_double(parts[0], path, lineno);
    if (idx != double(count)) parse_fail(path, lineno, "indices must run 0..count-1 in order");
    if (count >= expected) parse_fail(path, lineno, "more samples than the header announces");
    f.values[count] = cplx(to_double(parts[1], path, lineno), to_double(parts[2], path, lineno));
    ++count;
  }
  if (count != expected)
    parse_fail(path, lineno, "expected " + std::to_string(expected) + " samples, got " +
                                 std::to_string(count));
  return f;
}

void write_matrix_csv(const std::string& path, const Mat& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DimensionError("write_matrix_csv: square even-sized matrix required");
  std::ofstream os(path);
  if (!os) throw ParseError(path + ": cannot open for writing");
  os << "# symplectic D=" << m.rows() / 2 << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ",";
      os << fmt(m(i, j));
    }
    os << "\n";
  }
}

Mat read_matrix_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path + ": cannot open");
  std::string line;
  if (!std::getline(is, line)) parse_fail(path, 1, "empty file");
  int d = 0;
  if (std::sscanf(line.c_str(), "# symplectic D=%d", &d) != 1)
    parse_fail(path, 1, "expected header '# symplectic D=<D>'");
  if (d < 1) parse_fail(path, 1, "D must be >= 1");
  const int size = 2 * d;
  Mat m(size, size);
  int lineno = 1, row = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (row >= size) parse_fail(path, lineno, "more rows than the header announces");
    auto parts = split_commas(line);
    if (int(parts.size()) != size)
      parse_fail(path, lineno, "expected " + std::to_string(size) + " entries per row");
    for (int j = 0; j < size; ++j) m(row, j) = to_double(parts[j], path, lineno);
    ++row;
  }
  if (row != size) parse_fail(path, lineno, "expected " + std::to_string(size) + " rows");
  return m;
}

void write_pgm(const std::string& path, const Field& f) {
  if (f.grid.vars != 2) throw DimensionError("write_pgm: 2-variable field required");
  const int n = f.grid.n;
  double peak = max_abs(f);
  std::ofstream os(path);
  if (!os) throw ParseError(path + ": cannot open for writing");
  os << "P2\n" << n << " " << n << "\n255\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int v = peak > 0.0 ? int(255.0 * std::abs(f.at(i, j)) / peak + 0.5) : 0;
      os << v << (j + 1 == n ? "" : " ");
    }
    os << "\n";
  }
}

json report_to_json(const CovarianceReport& rep, Mode mode, int grid_n, bool with_timestamp) {
  json j;
  j["tool"] = "mtfa";
  j["version"] = "0.1.0";
  j["grid"] = {{"n", grid_n}, {"vars", 1}};
  j["mode"] = mode == Mode::bilinear ? "bilinear" : "sesquilinear";
  if (with_timestamp) j["timestamp"] = long(std::time(nullptr));

  json phi;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> r(4);
    for (int k = 0; k < 4; ++k) r[k] = rep.phi.matrix(i, k);
    rows.push_back(r);
  }
  phi["matrix"] = rows;
  json cs = json::array();
  for (const cplx& c : rep.phi.c_samples) cs.push_back({{"re", c.real()}, {"im", c.imag()}});
  phi["c_samples"] = cs;
  phi["column_residuals"] = rep.phi.column_residuals;
  phi["probe_residuals"] = rep.phi.probe_residuals;
  phi["homogeneity_defect"] = rep.phi.homogeneity_defect;
  phi["additivity_defect"] = rep.phi.additivity_defect;
  phi["c_modulus_drift"] = rep.phi.c_modulus_drift;
  phi["symplectic_defect"] = rep.phi.symplectic_defect;
  phi["integer_defects"] = rep.phi.integer_defects;
  phi["probe_step"] = rep.phi.probe_step;
  j["phi"] = phi;

  std::vector<std::vector<double>> fm;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> r(4);
    for (int k = 0; k < 4; ++k) r[k] = rep.field_matrix(i, k);
    fm.push_back(r);
  }
  j["field_matrix"] = fm;
  j["snap_defect"] = rep.snap_defect;
  j["a"] = {{"re", rep.a.real()}, {"im", rep.a.imag()}, {"abs", std::abs(rep.a)}};
  j["match_residual"] = rep.match_residual;
  j["isometry_ratio_spread"] = rep.isometry_ratio_spread;
  j["nondegeneracy_min"] = rep.nondegeneracy_min;

  j["thresholds"] = {{"match", thresholds::kMatch},
                     {"symplectic", thresholds::kSymplectic},
                     {"nondegeneracy", thresholds::kNondegeneracy},
                     {"homogeneity", thresholds::kHomogeneity},
                     {"additivity", thresholds::kAdditivity},
                     {"integer", thresholds::kInteger},
                     {"probe_residual", thresholds::kProbeResidual},
                     {"c_modulus_drift", thresholds::kCModulusDrift}};
  j["verdict"] = {{"probes_ok", rep.verdict.probes_ok},
                  {"homogeneity_ok", rep.verdict.homogeneity_ok},
                  {"additivity_ok", rep.verdict.additivity_ok},
                  {"c_modulus_ok", rep.verdict.c_modulus_ok},
                  {"symplectic_ok", rep.verdict.symplectic_ok},
                  {"integer_ok", rep.verdict.integer_ok},
                  {"match_ok", rep.verdict.match_ok},
                  {"nondegenerate_ok", rep.verdict.nondegenerate_ok},
                  {"pass", rep.verdict.pass}};
  return j;
}

}  // namespace mtfa
