// Command-line front end: numeration systems from expansions of 1, word
// binomial triangles, normalized residue plots, limit-set segment
// approximations, convergence diagnostics, and a self-verification suite.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bertrand/bertrand.hpp"

namespace {

using namespace bertrand;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Writes to the given path, or to standard output when the path is empty
/// or "-".  Data goes only here; diagnostics go to stderr.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!std::cout) throw IoError("write to standard output failed");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << content;
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

std::string display_word(const Word& w) { return w.empty() ? "eps" : word_to_string(w); }

std::string spec_text(const BetaExpansionSpec& spec) {
  if (spec.finite()) return word_to_string(spec.preperiod);
  return PeriodicWord{spec.preperiod, spec.period}.to_string();
}

std::int64_t parse_int(const std::string& text, const char* what) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad ") + what + ": '" + text + "'");
  }
}

/// "lo:hi" or a single depth.
std::pair<int, int> parse_range(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const int n = static_cast<int>(parse_int(text, "depth"));
    return {n, n};
  }
  return {static_cast<int>(parse_int(text.substr(0, colon), "depth range")),
          static_cast<int>(parse_int(text.substr(colon + 1), "depth range"))};
}

std::string describe_text(const NumerationSystem& sys) {
  std::ostringstream os;
  os << "spec:            " << spec_text(sys.spec()) << "\n";
  os << "quasi-greedy:    " << sys.quasi_greedy_expansion().to_string() << "\n";
  os << "beta:            " << detail::format_double(sys.beta(), "%.15g") << "\n";
  os << "alphabet:        0.." << sys.alphabet_size() - 1 << "\n";
  os << "zero-run bound:  " << sys.zero_run_bound() << "\n";
  os << "states:          " << sys.automaton().state_count << "\n";
  for (int s = 0; s < sys.automaton().state_count; ++s) {
    os << "  " << s << ":";
    for (int d = 0; d < sys.automaton().alphabet_size; ++d)
      if (sys.automaton().step(s, d) >= 0) os << " " << d << "->" << sys.automaton().step(s, d);
    os << "\n";
  }
  os << "U(0..14):       ";
  for (std::int64_t v : sys.u_prefix(15)) os << " " << v;
  os << "\n";
  os << "U(n)/beta^n:     " << detail::format_double(sys.growth_constant_estimate(40), "%.8f")
     << " (n=40)\n";
  os << "words(0..11):   ";
  for (const Word& w : sys.enumerate_language(12)) os << " " << display_word(w);
  os << "\n";
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "Bertrand numeration systems, binomial coefficients of words,\n"
      "generalized Pascal triangles, and their limit sets"};
  app.require_subcommand(1);

  std::string dbeta = "1,1";
  double tol = 1e-12;
  int threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  std::string format;
  std::int64_t mod = 2;
  std::int64_t residue = 1;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("--dbeta", dbeta,
                    "expansion of 1 as comma digits, 'pre;period' when eventually periodic")
        ->capture_default_str();
    sub->add_option("--tol", tol, "numeric tolerance for the base")->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out, "output file (default: standard output)");
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads")->capture_default_str();
  };
  auto add_residue = [&](CLI::App* sub) {
    sub->add_option("--mod", mod, "prime modulus")->capture_default_str();
    sub->add_option("--residue", residue, "residue class, 1 <= r < mod")->capture_default_str();
  };

  CLI::App* cmd_describe = app.add_subcommand("describe", "print a summary of the system");
  add_spec(cmd_describe);
  add_out(cmd_describe);

  CLI::App* cmd_convert =
      app.add_subcommand("convert", "convert integers to digit words and back");
  std::string convert_mode, convert_value;
  std::vector<std::int64_t> custom_coeffs, custom_init;
  add_spec(cmd_convert);
  add_out(cmd_convert);
  cmd_convert->add_option("mode", convert_mode, "rep (integer -> word) or val (word -> integer)")
      ->required()
      ->check(CLI::IsMember({"rep", "val"}));
  cmd_convert->add_option("value", convert_value, "integer for rep, digit word for val")
      ->required();
  cmd_convert
      ->add_option("--custom-coeffs", custom_coeffs,
                   "recurrence coefficients a_0,..,a_{k-1} of a custom linear system")
      ->delimiter(',');
  cmd_convert
      ->add_option("--custom-init", custom_init, "initial values U(0),..,U(k-1), U(0) = 1")
      ->delimiter(',');

  CLI::App* cmd_triangle = app.add_subcommand("triangle", "emit a triangle block as CSV");
  int rows = 8, cols = 0;
  std::int64_t triangle_mod = 0;
  add_spec(cmd_triangle);
  add_out(cmd_triangle);
  add_threads(cmd_triangle);
  cmd_triangle->add_option("--rows", rows, "row count")->capture_default_str();
  cmd_triangle->add_option("--cols", cols, "column count (default: rows)");
  cmd_triangle->add_option("--mod", triangle_mod, "reduce modulo this prime (default: exact)");
  cmd_triangle->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));

  CLI::App* cmd_uset = app.add_subcommand("uset", "emit a normalized residue square set as PBM");
  int level = 9, scale = 1;
  add_spec(cmd_uset);
  add_out(cmd_uset);
  add_threads(cmd_uset);
  add_residue(cmd_uset);
  cmd_uset->add_option("--n", level, "depth: words of length <= n")->capture_default_str();
  cmd_uset->add_option("--scale", scale, "pixels per cell")->capture_default_str();
  cmd_uset->add_option("--format", format, "pbm")->check(CLI::IsMember({"pbm"}));

  CLI::App* cmd_segments =
      app.add_subcommand("segments", "emit the segment approximation of the limit set");
  int maxlen = 10, iters = 4;
  double stroke = 0.002;
  add_spec(cmd_segments);
  add_out(cmd_segments);
  add_threads(cmd_segments);
  add_residue(cmd_segments);
  cmd_segments->add_option("--maxlen", maxlen, "max |u| for the base segments")
      ->capture_default_str();
  cmd_segments->add_option("--iters", iters, "contraction iterations")->capture_default_str();
  cmd_segments->add_option("--format", format, "svg or json (default: svg)")
      ->check(CLI::IsMember({"svg", "json"}));
  cmd_segments->add_option("--stroke-width", stroke, "SVG stroke width")->capture_default_str();

  CLI::App* cmd_converge =
      app.add_subcommand("converge", "Hausdorff distances from square sets to the segment set");
  std::string range_text = "4:9";
  int conv_maxlen = 10, conv_iters = 4;
  double spacing = 1e-3;
  add_spec(cmd_converge);
  add_out(cmd_converge);
  add_threads(cmd_converge);
  add_residue(cmd_converge);
  cmd_converge->add_option("--n", range_text, "depth or lo:hi range of depths")
      ->capture_default_str();
  cmd_converge->add_option("--maxlen", conv_maxlen, "max |u| for the base segments")
      ->capture_default_str();
  cmd_converge->add_option("--iters", conv_iters, "contraction iterations")
      ->capture_default_str();
  cmd_converge->add_option("--spacing", spacing, "segment sampling pitch")
      ->capture_default_str();
  cmd_converge->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the self-verification suite");
  int verify_maxlen = 6;
  add_spec(cmd_verify);
  add_out(cmd_verify);
  add_threads(cmd_verify);
  add_residue(cmd_verify);
  cmd_verify->add_option("--maxlen", verify_maxlen, "word-length budget for the checks")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (threads < 1) {
    std::cerr << "error: --threads must be at least 1\n";
    return 1;
  }

  try {
    if (*cmd_describe) {
      emit(out, describe_text(make_system(dbeta, tol)));
    } else if (*cmd_convert) {
      const bool custom = !custom_coeffs.empty() || !custom_init.empty();
      std::string line;
      if (custom) {
        const CustomLinearSystem sys(custom_coeffs, custom_init);
        line = convert_mode == "rep"
                   ? display_word(sys.rep(parse_int(convert_value, "integer")))
                   : std::to_string(sys.val(parse_word(convert_value)));
      } else {
        const NumerationSystem sys = make_system(dbeta, tol);
        line = convert_mode == "rep"
                   ? display_word(sys.rep(parse_int(convert_value, "integer")))
                   : std::to_string(sys.val(parse_word(convert_value)));
      }
      emit(out, line + "\n");
    } else if (*cmd_triangle) {
      const NumerationSystem sys = make_system(dbeta, tol);
      if (cols <= 0) cols = rows;
      if (triangle_mod != 0) make_residue_spec(triangle_mod, 1);  // prime check
      const TriangleBlock block = triangle_mod == 0
                                      ? triangle_block(sys, rows, cols, threads)
                                      : triangle_block_mod(sys, rows, cols, triangle_mod, threads);
      emit(out, triangle_csv(block));
    } else if (*cmd_uset) {
      const NumerationSystem sys = make_system(dbeta, tol);
      emit(out, render_pbm(u_set(sys, level, make_residue_spec(mod, residue), threads), scale));
    } else if (*cmd_segments) {
      const NumerationSystem sys = make_system(dbeta, tol);
      const SegmentSet set = an_approx(
          a0_approx(sys, maxlen, make_residue_spec(mod, residue), threads), iters, sys);
      emit(out, format == "json" ? segments_json(set) : render_svg(set, stroke));
    } else if (*cmd_converge) {
      const NumerationSystem sys = make_system(dbeta, tol);
      const auto [lo, hi] = parse_range(range_text);
      const std::vector<ConvergenceRow> rows_out =
          convergence_report(sys, make_residue_spec(mod, residue), lo, hi, conv_maxlen,
                             conv_iters, spacing, threads);
      emit(out, convergence_csv(rows_out, conv_maxlen, conv_iters));
    } else if (*cmd_verify) {
      const NumerationSystem sys = make_system(dbeta, tol);
      const std::vector<CheckResult> checks =
          run_selfchecks(sys, verify_maxlen, make_residue_spec(mod, residue), threads);
      std::ostringstream os;
      int failed = 0;
      for (const CheckResult& c : checks) {
        failed += c.pass ? 0 : 1;
        os << (c.pass ? "ok   " : "FAIL ") << std::left << std::setw(32) << c.name << ' '
           << c.detail << '\n';
      }
      os << checks.size() << " checks, " << failed << " failed\n";
      emit(out, os.str());
      if (failed != 0) return 1;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
