// mtfa - metaplectic time-frequency analysis CLI
//
// Subcommands:
//   compute  evaluate a representation on two signal files
//   verify   run an invariant suite, emit a JSON report
//   probe    recover and certify the covariance structure of a representation
//
// Exit codes: 0 pass, 1 verification failure, 2 parse error, 3 dimension
// mismatch, 4 inadmissible field.

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mtfa/covariance.hpp"
#include "mtfa/fft.hpp"
#include "mtfa/io.hpp"
#include "mtfa/metaplectic.hpp"
#include "mtfa/tfr.hpp"
#include "mtfa/verify.hpp"

namespace {

using namespace mtfa;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitDimension = 3;
constexpr int kExitAdmissibility = 4;

// Long-running child speaking the line protocol:
//   request:  "eval <f.csv> <g.csv> <out.csv>\n"
//   reply:    "ok\n"  or  "err <message>\n"
class ChildProcess {
 public:
  explicit ChildProcess(const std::string& command) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
      throw std::runtime_error("probe exec: pipe() failed");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("probe exec: fork() failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_ = fdopen(to_child[1], "w");
    out_ = fdopen(from_child[0], "r");
    if (!in_ || !out_) throw std::runtime_error("probe exec: fdopen() failed");
  }

  ~ChildProcess() {
    if (in_) fclose(in_);
    if (out_) fclose(out_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  std::string request(const std::string& line) {
    fprintf(in_, "%s\n", line.c_str());
    fflush(in_);
    char buf[4096];
    if (!fgets(buf, sizeof(buf), out_))
      throw std::runtime_error("probe exec: child closed its output");
    std::string reply(buf);
    while (!reply.empty() && (reply.back() == '\n' || reply.back() == '\r')) reply.pop_back();
    return reply;
  }

 private:
  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
};

BlackBoxTFR make_exec_box(const std::string& command, Mode mode) {
  auto child = std::make_shared<ChildProcess>(command);
  char tmpl[] = "/tmp/mtfa_probe_XXXXXX";
  if (!mkdtemp(tmpl)) throw std::runtime_error("probe exec: mkdtemp failed");
  auto dir = std::make_shared<std::string>(tmpl);
  return {[child, dir](const Field& f, const Field& g) {
            const std::string fp = *dir + "/f.csv", gp = *dir + "/g.csv",
                              op = *dir + "/out.csv";
            write_field_csv(fp, f);
            write_field_csv(gp, g);
            std::string reply = child->request("eval " + fp + " " + gp + " " + op);
            if (reply.rfind("ok", 0) != 0)
              throw AdmissibilityError("probe exec: child replied '" + reply + "'");
            return read_field_csv(op);
          },
          mode, true};
}

Mode parse_mode(const std::string& s, Mode fallback) {
  if (s == "bilinear") return Mode::bilinear;
  if (s == "sesquilinear") return Mode::sesquilinear;
  if (s.empty() || s == "default") return fallback;
  throw ParseError("unknown mode '" + s + "'");
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw ParseError(out_path + ": cannot open for writing");
    os << j.dump(2) << "\n";
  }
}

int cmd_compute(const std::string& kind, const std::string& f_path, const std::string& g_path,
                const std::string& matrix_path, const std::string& mode_str,
                const std::string& out_path, const std::string& pgm_path) {
  Field f = read_field_csv(f_path);
  Field g = read_field_csv(g_path);
  Field result;
  if (kind == "wigner") {
    result = wigner_fast(f, g);
  } else if (kind == "stft") {
    result = stft(f, g);
  } else if (kind == "a-wigner") {
    if (matrix_path.empty()) throw ParseError("a-wigner requires --matrix");
    Mode mode = parse_mode(mode_str, Mode::bilinear);
    result = a_wigner(SymplecticMatrix(read_matrix_csv(matrix_path)), f, g, mode);
  } else {
    throw ParseError("unknown compute kind '" + kind + "'");
  }
  write_field_csv(out_path, result);
  if (!pgm_path.empty()) write_pgm(pgm_path, result);
  return kExitPass;
}

int cmd_verify(const std::string& suite, int n, std::uint64_t seed, double tol_scale,
               bool inject_phase_error, bool no_timestamp, const std::string& out_path) {
  std::vector<Check> checks;
  auto run = [&](const std::string& name) {
    if (name == "shifts") {
      auto c = verify_shifts(n, seed, inject_phase_error);
      checks.insert(checks.end(), c.begin(), c.end());
    } else if (name == "metaplectic") {
      auto c = verify_metaplectic(n, seed);
      checks.insert(checks.end(), c.begin(), c.end());
    } else if (name == "wigner-covariance") {
      auto c = verify_wigner_covariance(n, seed);
      checks.insert(checks.end(), c.begin(), c.end());
    } else {
      throw ParseError("unknown suite '" + name + "'");
    }
  };
  if (suite == "all") {
    run("shifts");
    run("metaplectic");
    run("wigner-covariance");
  } else {
    run(suite);
  }
  for (auto& c : checks) c.threshold *= tol_scale;

  json j;
  j["tool"] = "mtfa";
  j["version"] = "0.1.0";
  j["suite"] = suite;
  j["grid"] = {{"n", n}};
  j["seed"] = seed;
  if (!no_timestamp) j["timestamp"] = long(std::time(nullptr));
  json arr = json::array();
  bool ok = true;
  for (const auto& c : checks) {
    arr.push_back({{"identity", c.name},
                   {"residual", c.residual},
                   {"threshold", c.threshold},
                   {"pass", c.pass()}});
    std::cerr << (c.pass() ? "[PASS] " : "[FAIL] ") << c.name << "  residual=" << c.residual
              << "  threshold=" << c.threshold << "\n";
    ok = ok && c.pass();
  }
  j["checks"] = arr;
  j["pass"] = ok;
  emit_json(j, out_path);
  return ok ? kExitPass : kExitFail;
}

int cmd_probe(const std::string& target, const std::string& mode_str, int n,
              bool no_timestamp, const std::string& out_path) {
  const Grid grid = Grid::line(n);
  BlackBoxTFR box;
  if (target == "wigner") {
    box = make_wigner_box();
  } else if (target == "stft") {
    box = make_stft_box();
  } else if (target.rfind("a-wigner:", 0) == 0) {
    Mode mode = parse_mode(mode_str, Mode::bilinear);
    box = make_awigner_box(SymplecticMatrix(read_matrix_csv(target.substr(9))), mode);
  } else if (target.rfind("exec:", 0) == 0) {
    Mode mode = parse_mode(mode_str, Mode::bilinear);
    box = make_exec_box(target.substr(5), mode);
  } else if (target.rfind("control:", 0) == 0) {  // test hook
    std::string kind = target.substr(8);
    ControlKind ck;
    if (kind == "broken-phase") ck = ControlKind::broken_phase;
    else if (kind == "nonlinear-phi") ck = ControlKind::nonlinear_phi;
    else if (kind == "degenerate") ck = ControlKind::degenerate;
    else throw ParseError("unknown control kind '" + kind + "'");
    box = negative_control(ck, grid);
  } else {
    throw ParseError("unknown probe target '" + target + "'");
  }
  if (!mode_str.empty() && mode_str != "default" && (target == "wigner" || target == "stft"))
    box.mode = parse_mode(mode_str, box.mode);

  CovarianceReport rep = probe_representation(box, grid);
  json j = report_to_json(rep, box.mode, n, !no_timestamp);
  emit_json(j, out_path);
  std::cerr << (rep.verdict.pass ? "[PASS]" : "[FAIL]") << " probe " << target
            << "  match_residual=" << rep.match_residual << "  |a|=" << std::abs(rep.a) << "\n";
  return rep.verdict.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metaplectic time-frequency analysis toolkit"};
  app.require_subcommand(1);

  std::string kind, f_path, g_path, matrix_path, mode_str, out_path, pgm_path;
  std::string suite = "all", target;
  int n = 128;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  bool inject_phase_error = false, no_timestamp = false;

  auto* compute = app.add_subcommand("compute", "evaluate a representation");
  compute->add_option("--kind", kind, "wigner|stft|a-wigner")->required();
  compute->add_option("--f", f_path, "first signal CSV")->required();
  compute->add_option("--g", g_path, "second signal CSV (window for stft)")->required();
  compute->add_option("--matrix", matrix_path, "Sp(4,R) matrix CSV for a-wigner");
  compute->add_option("--mode", mode_str, "bilinear|sesquilinear (a-wigner only)");
  compute->add_option("--out", out_path, "output field CSV")->required();
  compute->add_option("--pgm", pgm_path, "optional PGM magnitude map");

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "shifts|metaplectic|wigner-covariance|all");
  verify->add_option("--n", n, "grid size (even, 16..512)");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol-scale", tol_scale, "relax thresholds by this factor");
  verify->add_option("--out", out_path, "JSON report path (default stdout)");
  verify->add_flag("--inject-phase-error", inject_phase_error,
                   "test hook: tamper with the composition cocycle");
  verify->add_flag("--no-timestamp", no_timestamp, "omit timestamp from the report");

  auto* probe = app.add_subcommand("probe", "recover and certify a covariance structure");
  probe->add_option("--target", target,
                    "wigner|stft|a-wigner:<matrix.csv>|exec:<command>|control:<kind>")
      ->required();
  probe->add_option("--mode", mode_str, "bilinear|sesquilinear");
  probe->add_option("--n", n, "grid size (even, 16..512)");
  probe->add_option("--seed", seed, "random seed (recorded in the report)");
  probe->add_option("--out", out_path, "JSON report path (default stdout)");
  probe->add_flag("--no-timestamp", no_timestamp, "omit timestamp from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (n < 16 || n > 512 || n % 2 != 0)
      throw DimensionError("--n must be even and within 16..512");
    if (compute->parsed())
      return cmd_compute(kind, f_path, g_path, matrix_path, mode_str, out_path, pgm_path);
    if (verify->parsed())
      return cmd_verify(suite, n, seed, tol_scale, inject_phase_error, no_timestamp, out_path);
    if (probe->parsed()) return cmd_probe(target, mode_str, n, no_timestamp, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const AdmissibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAdmissibility;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitParse;
}
