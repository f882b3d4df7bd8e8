// End-to-end acceptance checks.  Usage: acceptance <path-to-cli>
//
// Each numbered check prints exactly one PASS/FAIL line; the exit status is
// the number of failures.  Checks 1, 8 and 9 drive the installed CLI binary
// through std::system and parse the files it writes into the working
// directory; everything else uses the library directly.

#include <bertrand/bertrand.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace bertrand;

namespace {

std::string g_cli;

int run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// CSV with header i,j,word_i,word_j,value -> dense row-major block
std::vector<std::vector<std::int64_t>> parse_csv_block(const std::string& text, int rows,
                                                       int cols) {
  std::vector<std::vector<std::int64_t>> out(
      static_cast<std::size_t>(rows), std::vector<std::int64_t>(static_cast<std::size_t>(cols), -1));
  std::istringstream ss(text);
  std::string line;
  std::getline(ss, line);
  if (line != "i,j,word_i,word_j,value") throw std::runtime_error("bad csv header: " + line);
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fields.push_back(cur);
    if (fields.size() != 5) throw std::runtime_error("bad csv row: " + line);
    int i = std::stoi(fields[0]);
    int j = std::stoi(fields[1]);
    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::stoll(fields[4]);
  }
  for (const auto& row : out)
    for (auto v : row)
      if (v < 0) throw std::runtime_error("csv block has holes");
  return out;
}

struct Pbm {
  int width = 0;
  int height = 0;
  std::vector<int> bits;  // row-major
};

Pbm parse_pbm(const std::string& text) {
  std::istringstream ss(text);
  std::string magic;
  ss >> magic;
  if (magic != "P1") throw std::runtime_error("bad pbm magic: " + magic);
  Pbm pbm;
  ss >> pbm.width >> pbm.height;
  // bits are packed digit runs, whitespace only at line wraps
  char c = 0;
  while (ss.get(c)) {
    if (c == '0' || c == '1') pbm.bits.push_back(c - '0');
    else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
      throw std::runtime_error("bad pbm byte");
  }
  if (static_cast<int>(pbm.bits.size()) != pbm.width * pbm.height)
    throw std::runtime_error("pbm pixel count mismatch");
  return pbm;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// words accepted with leading zeros allowed (the 0*L family), length <= maxlen
std::vector<Word> padded_words(const NumerationSystem& sys, int maxlen) {
  std::vector<Word> out{Word{}};
  std::size_t start = 0;
  for (int len = 1; len <= maxlen; ++len) {
    const std::size_t stop = out.size();
    for (std::size_t k = start; k < stop; ++k)
      for (int a = 0; a < sys.alphabet_size(); ++a) {
        Word w = out[k];
        w.push_back(a);
        if (sys.is_in_language(w, true)) out.push_back(w);
      }
    start = stop;
  }
  return out;
}

struct Check {
  int number;
  std::string label;
  long budget_ms;
  std::function<std::optional<std::string>()> body;  // error text on failure
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
    return 64;
  }
  g_cli = argv[1];

  const std::int64_t golden[8][8] = {
      {1, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0, 0, 0},
      {1, 1, 2, 1, 0, 0, 0, 0}, {1, 2, 1, 0, 1, 0, 0, 0}, {1, 1, 3, 3, 0, 1, 0, 0},
      {1, 2, 2, 1, 2, 0, 1, 0}, {1, 2, 3, 1, 1, 0, 0, 1}};
  const std::int64_t base2[8][8] = {
      {1, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0, 0, 0},
      {1, 2, 0, 1, 0, 0, 0, 0}, {1, 1, 2, 0, 1, 0, 0, 0}, {1, 2, 1, 1, 0, 1, 0, 0},
      {1, 2, 2, 1, 0, 0, 1, 0}, {1, 3, 0, 3, 0, 0, 0, 1}};

  std::vector<Check> checks;

  checks.push_back({1, "8x8 triangle blocks via the CLI", 1000, [&]() -> std::optional<std::string> {
    struct Job {
      const char* spec;
      const char* out;
      const std::int64_t (*want)[8];
    };
    for (const Job& job : {Job{"1,1", "acc_block_phi.csv", golden}, Job{"2", "acc_block_2.csv", base2}}) {
      int rc = run_cli(std::string("triangle --dbeta ") + job.spec + " --rows 8 --cols 8 --out " + job.out);
      if (rc != 0) return "cli exit " + std::to_string(rc) + " for " + job.spec;
      auto got = parse_csv_block(read_file(job.out), 8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          if (got[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != job.want[i][j])
            return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") of " + job.spec;
    }
    return std::nullopt;
  }});

  checks.push_back({2, "numeration systems hit their landmark values", 1000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    const std::int64_t want_u[10] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
    for (int n = 0; n < 10; ++n)
      if (phi.u(n) != want_u[n]) return "U(" + std::to_string(n) + ")";

    auto quad = make_system("2,1,0,1");
    if (p_of(quad, parse_word("101"), parse_word("21")) != 2) return std::string("p(101,21)");

    auto quart = make_system("1,0,0,1");
    if (quart.zero_run_bound() != 3) return std::string("zero run bound");
    const char* want_words[7] = {"", "1", "10", "100", "1000", "10000", "10001"};
    auto words = quart.enumerate_language(200);
    for (int k = 0; k < 7; ++k)
      if (word_to_string(words[static_cast<std::size_t>(k)]) != want_words[k])
        return "word " + std::to_string(k);
    int run = 0, best = 0;
    for (const auto& w : words) {
      run = (!w.empty() && w.back() == 0) ? run + 1 : 0;
      best = std::max(best, run);
    }
    if (best != 4) return "zero-tail run " + std::to_string(best);
    return std::nullopt;
  }});

  checks.push_back({3, "appending zero is a two-way language move", 2000, [&]() -> std::optional<std::string> {
    for (const char* text : {"1,1", "2;1", "2,1,0,1", "1,0,0,1"}) {
      auto sys = make_system(text);
      auto words = sys.enumerate_language(500);
      for (std::size_t k = 1; k < words.size(); ++k) {
        if (!sys.is_in_language(padded(words[k], 1)))
          return std::string(text) + ": w0 missing for w=" + word_to_string(words[k]);
        if (words[k].back() == 0) {
          Word w = words[k];
          w.pop_back();
          if (!sys.is_in_language(w))
            return std::string(text) + ": parent missing for " + word_to_string(words[k]);
        }
      }
    }
    CustomLinearSystem fp({1, 1}, {1, 3});
    if (word_to_string(fp.rep(6)) != "102") return std::string("custom rep(6)");
    return std::nullopt;
  }});

  checks.push_back({4, "subword counting agrees with every oracle", 30000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    auto lang = phi.enumerate_language(phi.u(8));
    for (const auto& u : lang)
      for (const auto& v : lang)
        if (binom_words(u, v) != brute_force_count(u, v)) return std::string("language pair");

    std::vector<Word> binary{Word{}};
    for (std::size_t start = 0, len = 1; len <= 8; ++len) {
      const std::size_t stop = binary.size();
      for (std::size_t k = start; k < stop; ++k)
        for (int a = 0; a < 2; ++a) {
          Word w = binary[k];
          w.push_back(a);
          binary.push_back(w);
        }
      start = stop;
    }
    for (const auto& u : binary)
      for (const auto& v : binary) {
        if (v.size() > u.size()) continue;
        if (binom_words(u, v) != brute_force_count(u, v)) return std::string("binary pair");
      }

    for (const auto& u : binary)
      for (const auto& v : binary) {
        if (u.size() > 5 || v.size() > 5 || u.empty() || v.empty()) continue;
        for (int k = 0; k <= 4; ++k) {
          std::int64_t rhs = 0;
          for (int j = 0; j <= k; ++j)
            rhs += binomial_coefficient(k, j) * binom_words(u, padded(v, j));
          if (binom_words(padded(u, k), padded(v, k)) != rhs) return std::string("zero-block identity");
        }
      }

    for (int m = 0; m <= 12; ++m)
      for (int n = 0; n <= m; ++n)
        if (binom_words(Word(static_cast<std::size_t>(m), 1), Word(static_cast<std::size_t>(n), 1)) !=
            binomial_coefficient(m, n))
          return std::string("unary reduction");

    for (std::int64_t p : {2, 3, 5})
      for (std::int64_t m = 0; m < 64; ++m)
        for (std::int64_t n = 0; n < 64; ++n)
          if (lucas_binom_mod(m, n, p) != binomial_coefficient(m, n) % p)
            return std::string("base-p digit rule");
    return std::nullopt;
  }});

  checks.push_back({5, "star family is closed the way it should be", 60000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    auto odd = make_residue_spec(2, 1);
    auto lang = phi.enumerate_language(phi.u(6));
    for (const auto& w : lang)
      if (!star_check(phi, w, w, odd)) return "diagonal " + word_to_string(w);

    auto pairs = star_pairs(phi, 6, odd);
    bool seen_known = false;
    for (const auto& pr : pairs) {
      if (binom_words(pr.u, pr.v) % 2 != 1)
        return "even count at (" + word_to_string(pr.u) + "," + word_to_string(pr.v) + ")";
      seen_known |= (pr.u == parse_word("101") && pr.v == parse_word("10"));
    }
    if (!seen_known) return std::string("(101,10) missing");
    for (const auto& pr : pairs)
      if (pr.u == parse_word("1010") && pr.v == parse_word("101"))
        return std::string("(1010,101) should fail");

    for (const auto& pr : pairs) {
      if (pr.u.empty()) continue;
      for (int a = 0; a < phi.alphabet_size(); ++a) {
        Word ua = pr.u, va = pr.v;
        ua.push_back(a);
        va.push_back(a);
        if (!phi.is_in_language(ua) || va.front() == 0 || !phi.is_in_language(va)) continue;
        if (!star_check(phi, ua, va, odd))
          return "letter closure at (" + word_to_string(ua) + "," + word_to_string(va) + ")";
      }
    }

    auto tails = padded_words(phi, 4);
    for (const auto& pr : pairs) {
      if (pr.u.empty()) continue;
      const int p = p_of(phi, pr.u, pr.v);
      for (const auto& w : tails) {
        Word uw = padded(pr.u, p), vw = padded(pr.v, p);
        uw.insert(uw.end(), w.begin(), w.end());
        vw.insert(vw.end(), w.begin(), w.end());
        if (binom_words(uw, vw) % 2 != 1)
          return "propagation at (" + word_to_string(pr.u) + "," + word_to_string(pr.v) +
                 ") tail " + word_to_string(w);
      }
    }
    return std::nullopt;
  }});

  checks.push_back({6, "segment geometry and stabilization", 60000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    auto odd = make_residue_spec(2, 1);
    const double b = phi.beta();
    auto a0 = a0_approx(phi, 10, odd, 4);
    for (const auto& s : a0) {
      const double want = std::pow(b, -static_cast<double>(s.u.size()) - s.p);
      if (std::fabs((s.b.x - s.a.x) - want) > 1e-9 || std::fabs((s.b.y - s.a.y) - want) > 1e-9)
        return "extent at (" + word_to_string(s.u) + "," + word_to_string(s.v) + ")";
      if (!s.u.empty()) {
        if (s.a.x < -1e-9 || s.b.x > 1.0 + 1e-9) return std::string("x range");
        if (s.a.y < 1.0 / b - 1e-9 || s.b.y > 1.0 + 1e-9) return std::string("y band");
      }
    }
    const double cut = 1.0 / (b * b);
    auto a1 = clip_min_x(an_approx(a0, 1, phi), cut);
    auto a3 = clip_min_x(an_approx(a0, 3, phi), cut);
    if (!segment_sets_match(a1, a3, 1e-9)) return std::string("stabilization");
    return std::nullopt;
  }});

  checks.push_back({7, "square sets drift toward the segment family", 60000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    auto odd = make_residue_spec(2, 1);
    auto rows = convergence_report(phi, odd, 4, 9, 10, 4, 1e-3, 4);
    if (rows.size() != 6) return std::string("row count");
    const auto& first = rows.front();
    const auto& last = rows.back();
    if (!(last.distance < first.distance))
      return "no improvement: " + std::to_string(first.distance) + " -> " +
             std::to_string(last.distance);
    if (!(last.distance + last.error_bound < 0.25))
      return "final distance too large: " + std::to_string(last.distance + last.error_bound);
    return std::nullopt;
  }});

  checks.push_back({8, "bitmap and vector figures via the CLI", 30000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    int rc = run_cli("uset --dbeta 1,1 --n 9 --out acc_u9.pbm");
    if (rc != 0) return "uset exit " + std::to_string(rc);
    auto pbm = parse_pbm(read_file("acc_u9.pbm"));
    if (pbm.width != 89 || pbm.height != 89) return std::string("pbm is not 89x89");
    long black = 0;
    for (int v : pbm.bits) black += v;
    auto block = triangle_block_mod(phi, 89, 89, 2, 4);
    long odd_entries = 0;
    for (auto v : block.values) odd_entries += (v == 1);
    if (black != odd_entries)
      return "pbm density " + std::to_string(black) + " != " + std::to_string(odd_entries);

    rc = run_cli("segments --dbeta 1,1 --maxlen 10 --iters 4 --out acc_segs.svg");
    if (rc != 0) return "segments exit " + std::to_string(rc);
    auto svg = read_file("acc_segs.svg");
    if (svg.rfind("<?xml", 0) != 0 || svg.find("<svg") == std::string::npos ||
        svg.substr(svg.size() - 7) != "</svg>\n")
      return std::string("svg structure");
    const std::size_t base = star_pairs(phi, 10, make_residue_spec(2, 1), 4).size();
    if (base != 953) return "pair count " + std::to_string(base);
    const std::size_t lines = count_occurrences(svg, "<line");
    if (lines != base * 15)
      return "line count " + std::to_string(lines) + " != " + std::to_string(base * 15);
    return std::nullopt;
  }});

  checks.push_back({9, "mod-3 residue sets via the CLI", 30000, [&]() -> std::optional<std::string> {
    auto phi = make_system("1,1");
    int rc = run_cli("uset --dbeta 1,1 --n 9 --mod 3 --residue 2 --out acc_u9_m3.pbm");
    if (rc != 0) return "uset exit " + std::to_string(rc);
    auto pbm = parse_pbm(read_file("acc_u9_m3.pbm"));
    if (pbm.width != 89 || pbm.height != 89) return std::string("pbm is not 89x89");
    auto block = triangle_block_mod(phi, 89, 89, 3, 4);
    for (int i = 0; i < 89; ++i)
      for (int j = 0; j < 89; ++j) {
        const bool want = block.at(i, j) == 2;
        const bool got = pbm.bits[static_cast<std::size_t>(i) * 89 + static_cast<std::size_t>(j)] == 1;
        if (want != got)
          return "cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    return std::nullopt;
  }});

  int failures = 0;
  for (const auto& check : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> err;
    try {
      err = check.body();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (!err && ms > check.budget_ms)
      err = "over budget: " + std::to_string(ms) + " ms > " + std::to_string(check.budget_ms) + " ms";
    if (err) {
      ++failures;
      std::printf("FAIL %d %s: %s (%ld ms)\n", check.number, check.label.c_str(), err->c_str(),
                  static_cast<long>(ms));
    } else {
      std::printf("PASS %d %s (%ld ms)\n", check.number, check.label.c_str(),
                  static_cast<long>(ms));
    }
  }
  if (failures == 0) std::printf("all %zu acceptance checks passed\n", checks.size());
  return failures;
}
