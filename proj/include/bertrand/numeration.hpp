#pragma once

// Parry-Bertrand numeration systems built from the expansion of 1 in a real
// base beta > 1.
//
// A system is described by d_beta(1) as a preperiod t_1..t_m and an optional
// period t_{m+1}..t_{m+k}.  From it we derive
//   * the quasi-greedy expansion d*_beta(1),
//   * the canonical deterministic automaton accepting the numeration
//     language (all states final, words read most-significant digit first),
//   * the base beta itself as the root of 0.d*_beta(1) = 1,
//   * the sequence U(0) < U(1) < ... whose greedy representations the
//     automaton accepts.
//
// Words ending in zero behave like a shift: w in L iff w0 in L (the Bertrand
// property).  Custom linear recurrences without that property are supported
// separately (CustomLinearSystem) for comparison.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bertrand/checked.hpp"
#include "bertrand/words.hpp"

namespace bertrand {

// ---------------------------------------------------------------------------
// Expansion specs

/// d_beta(1) in normalized form.  `period` empty means the expansion is
/// finite (simple case, last preperiod digit nonzero).  `preperiod` empty
/// means purely periodic (integer bases: period is the single digit b-1).
struct BetaExpansionSpec {
  std::vector<int> preperiod;
  std::vector<int> period;

  bool finite() const { return period.empty(); }
  int preperiod_length() const { return static_cast<int>(preperiod.size()); }
  int period_length() const { return static_cast<int>(period.size()); }

  /// t_1, the first digit of the expansion; also the largest alphabet digit.
  int first_digit() const { return preperiod.empty() ? period.front() : preperiod.front(); }

  /// t_1..t_{m+k} as one list.
  std::vector<int> all_digits() const {
    std::vector<int> t = preperiod;
    t.insert(t.end(), period.begin(), period.end());
    return t;
  }

  bool operator==(const BetaExpansionSpec& o) const = default;
};

/// An eventually periodic infinite digit word `head (cycle)^omega`.
struct PeriodicWord {
  std::vector<int> head;
  std::vector<int> cycle;  // never empty

  int digit(std::size_t i) const {
    if (i < head.size()) return head[i];
    return cycle[(i - head.size()) % cycle.size()];
  }

  std::vector<int> window(std::size_t n) const {
    std::vector<int> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = digit(i);
    return w;
  }

  std::string to_string() const {
    std::string s = word_to_string(head);
    s += '(';
    s += word_to_string(cycle);
    s += ")^omega";
    return s;
  }
};

/// Quasi-greedy expansion d*_beta(1): for a finite expansion t_1..t_m it is
/// (t_1 .. t_{m-1} (t_m - 1))^omega, otherwise d_beta(1) itself.
inline PeriodicWord quasi_greedy(const BetaExpansionSpec& spec) {
  if (spec.finite()) {
    std::vector<int> cycle = spec.preperiod;
    cycle.back() -= 1;
    return {{}, cycle};
  }
  return {spec.preperiod, spec.period};
}

struct AdmissibilityResult {
  bool ok = false;
  std::string reason;  // empty when ok
};

/// Lexicographic-shift criterion on the quasi-greedy expansion: every left
/// shift of d*_beta(1) must be <= d*_beta(1).  Takes raw digit lists so that
/// rejected specs can be probed without constructing a value.
inline AdmissibilityResult validate_admissibility(const std::vector<int>& preperiod,
                                                  const std::vector<int>& period) {
  if (preperiod.empty() && period.empty()) return {false, "empty expansion"};
  PeriodicWord dstar;
  if (period.empty()) {
    if (preperiod.back() == 0) return {false, "finite expansion ends in zero"};
    std::vector<int> cycle = preperiod;
    cycle.back() -= 1;
    dstar = {{}, cycle};
  } else {
    dstar = {preperiod, period};
  }
  bool all_zero = true;
  for (std::size_t i = 0; i < dstar.head.size() + dstar.cycle.size(); ++i)
    if (dstar.digit(i) != 0) { all_zero = false; break; }
  if (all_zero) return {false, "quasi-greedy expansion is zero (beta would not exceed 1)"};

  // Two eventually periodic words with head <= M and cycle K agree iff they
  // agree on the first M + 2K digits, so that window decides every shift.
  const std::size_t M = dstar.head.size();
  const std::size_t K = dstar.cycle.size();
  const std::size_t window = M + 2 * K + 2;
  for (std::size_t shift = 1; shift <= M + K; ++shift) {
    for (std::size_t i = 0; i < window; ++i) {
      const int a = dstar.digit(shift + i);
      const int b = dstar.digit(i);
      if (a < b) break;
      if (a > b)
        return {false, "shift " + std::to_string(shift) +
                           " of the quasi-greedy expansion exceeds it"};
    }
  }
  return {true, ""};
}

namespace detail {

/// Shortest word z with w = z^r.
inline std::vector<int> primitive_root(const std::vector<int>& w) {
  const std::size_t n = w.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool ok = true;
    for (std::size_t i = len; i < n && ok; ++i) ok = w[i] == w[i % len];
    if (ok) return std::vector<int>(w.begin(), w.begin() + static_cast<long>(len));
  }
  return w;
}

}  // namespace detail

/// Builds a validated spec from raw digit lists.  Normalizes to the minimal
/// canonical (m, k): the period is reduced to its primitive root, the
/// preperiod is trimmed while its tail matches the rotated period, purely
/// periodic multi-digit expansions collapse to their finite form, and
/// single-digit finite expansions become the integer-base periodic form.
/// Throws std::invalid_argument on structural or admissibility violations.
inline BetaExpansionSpec make_beta_spec(std::vector<int> preperiod, std::vector<int> period) {
  for (int d : preperiod)
    if (d < 0) throw std::invalid_argument("negative digit in expansion");
  for (int d : period)
    if (d < 0) throw std::invalid_argument("negative digit in expansion");
  if (preperiod.empty() && period.empty()) throw std::invalid_argument("empty expansion");

  // An all-zero period is the finite expansion in disguise.
  if (!period.empty() && std::all_of(period.begin(), period.end(), [](int d) { return d == 0; }))
    period.clear();

  if (period.empty()) {
    while (!preperiod.empty() && preperiod.back() == 0) preperiod.pop_back();
    if (preperiod.empty()) throw std::invalid_argument("expansion has value zero");
  } else {
    period = detail::primitive_root(period);
    // Absorb a preperiod tail that merely repeats the period.
    while (!preperiod.empty() && preperiod.back() == period.back()) {
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
      preperiod.pop_back();
    }
    if (preperiod.empty() && period.size() >= 2) {
      // Purely periodic d with a multi-digit period is not a greedy
      // expansion; the canonical form is finite with the last digit bumped.
      preperiod = period;
      preperiod.back() += 1;
      period.clear();
    }
  }

  if (period.empty()) {
    // Reduce e.g. 1011 (whose quasi-greedy (1010)^omega is not primitive)
    // to the equivalent canonical finite expansion 11.
    std::vector<int> cyc = preperiod;
    cyc.back() -= 1;
    std::vector<int> root = detail::primitive_root(cyc);
    if (root.size() < preperiod.size()) {
      preperiod = root;
      preperiod.back() += 1;
    }
    if (preperiod.size() == 1) {
      if (preperiod[0] <= 1)
        throw std::invalid_argument("expansion describes a base not exceeding 1");
      period = {preperiod[0] - 1};  // integer base: d_b(1) = (b-1)^omega
      preperiod.clear();
    }
  }

  BetaExpansionSpec spec{std::move(preperiod), std::move(period)};
  const int t1 = spec.first_digit();
  if (t1 < 1) throw std::invalid_argument("leading digit of the expansion must be at least 1");
  for (int d : spec.all_digits())
    if (d > t1) throw std::invalid_argument("expansion digit exceeds the leading digit");
  AdmissibilityResult adm = validate_admissibility(spec.preperiod, spec.period);
  if (!adm.ok) throw std::invalid_argument("inadmissible expansion: " + adm.reason);
  return spec;
}

/// Parses "t1,t2,..." or "t1,..,tm;p1,..,pk" (comma-separated non-negative
/// integers, optional whitespace) and normalizes via make_beta_spec.
inline BetaExpansionSpec parse_beta_spec(const std::string& text) {
  auto parse_digits = [](const std::string& part, const char* what) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
      if (cur.empty()) throw std::invalid_argument(std::string("missing digit in ") + what);
      try {
        std::size_t pos = 0;
        long v = std::stol(cur, &pos);
        if (pos != cur.size() || v < 0 || v > 1'000'000)
          throw std::invalid_argument("");
        out.push_back(static_cast<int>(v));
      } catch (const std::exception&) {
        throw std::invalid_argument(std::string("bad digit '") + cur + "' in " + what);
      }
      cur.clear();
    };
    for (char c : part) {
      if (c == ',') {
        flush();
      } else if (c == ' ' || c == '\t') {
        continue;
      } else {
        cur += c;
      }
    }
    flush();
    return out;
  };

  const std::size_t semi = text.find(';');
  if (semi != std::string::npos && text.find(';', semi + 1) != std::string::npos)
    throw std::invalid_argument("more than one ';' in expansion");
  std::string pre_text = semi == std::string::npos ? text : text.substr(0, semi);
  if (pre_text.find_first_not_of(" \t") == std::string::npos)
    throw std::invalid_argument("empty preperiod in expansion");
  std::vector<int> pre = parse_digits(pre_text, "preperiod");
  std::vector<int> per;
  if (semi != std::string::npos) {
    std::string per_text = text.substr(semi + 1);
    if (per_text.find_first_not_of(" \t") == std::string::npos)
      throw std::invalid_argument("empty period after ';'");
    per = parse_digits(per_text, "period");
  }
  return make_beta_spec(std::move(pre), std::move(per));
}

// ---------------------------------------------------------------------------
// Automaton

/// Deterministic automaton accepting the numeration language (with leading
/// zeros).  State 0 is initial; every state is final; missing transitions
/// are -1.  Words with no leading zero form the language proper.
struct ParryAutomaton {
  int state_count = 0;
  int alphabet_size = 0;                // digits 0 .. alphabet_size-1
  std::vector<std::vector<int>> next;   // [state][digit] -> state or -1

  int step(int state, int digit) const {
    if (digit < 0 || digit >= alphabet_size) return -1;
    return next[static_cast<std::size_t>(state)][static_cast<std::size_t>(digit)];
  }

  /// Runs w from `from`; returns the final state or -1 if some transition is
  /// missing.  All states are final.
  int run(const Word& w, int from = 0) const {
    int s = from;
    for (int d : w) {
      s = step(s, d);
      if (s < 0) return -1;
    }
    return s;
  }
};

/// Canonical automaton of the expansion.  Finite case: states a_0..a_{m-1}
/// chained along t_1..t_{m-1}, digits below t_i returning to a_0.
/// Eventually periodic case: states a_0..a_{m+k-1} with the period closed by
/// a back edge a_{m+k-1} --t_{m+k}--> a_m.
inline ParryAutomaton build_automaton(const BetaExpansionSpec& spec) {
  const std::vector<int> t = spec.all_digits();
  const int m = spec.preperiod_length();
  const int k = spec.period_length();
  const int states = k == 0 ? m : m + k;
  ParryAutomaton a;
  a.state_count = states;
  a.alphabet_size = spec.first_digit() + 1;
  a.next.assign(static_cast<std::size_t>(states),
                std::vector<int>(static_cast<std::size_t>(a.alphabet_size), -1));
  for (int i = 1; i <= states; ++i) {
    const int ti = t[static_cast<std::size_t>(i - 1)];
    for (int d = 0; d < ti; ++d) a.next[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(d)] = 0;
    if (i < states)
      a.next[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(ti)] = i;
    else if (k > 0)
      a.next[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(ti)] = m;
    // Finite case: the last state has no advancing edge.
  }
  return a;
}

// ---------------------------------------------------------------------------
// Base value

namespace detail {

/// Value of 0.w at base x for the eventually periodic word w.
inline double eval_periodic(const PeriodicWord& w, double x) {
  double head = 0.0;
  for (auto it = w.head.rbegin(); it != w.head.rend(); ++it) head = (head + *it) / x;
  double cyc = 0.0;
  for (auto it = w.cycle.rbegin(); it != w.cycle.rend(); ++it) cyc = (cyc + *it) / x;
  const double damp = 1.0 - std::pow(x, -static_cast<double>(w.cycle.size()));
  return head + std::pow(x, -static_cast<double>(w.head.size())) * cyc / damp;
}

}  // namespace detail

/// The base beta: unique root > 1 of 0.d*_beta(1) = 1.  Bracketed in
/// (1, t_1 + 1] and bisected until |0.d*(beta) - 1| <= tol.  Integer bases
/// hit the upper bracket exactly.
inline double beta_value(const BetaExpansionSpec& spec, double tol = 1e-12) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  const PeriodicWord dstar = quasi_greedy(spec);
  double lo = 1.0 + 1e-9;
  double hi = static_cast<double>(spec.first_digit()) + 1.0;
  auto g = [&](double x) { return detail::eval_periodic(dstar, x) - 1.0; };
  if (std::abs(g(hi)) <= tol) return hi;
  if (g(lo) <= 0.0) throw std::runtime_error("failed to bracket the base");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::abs(gm) <= tol) return mid;
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  throw std::runtime_error("base bisection did not converge within 200 iterations");
}

// ---------------------------------------------------------------------------
// Numeration system

namespace detail {

struct SequenceCache {
  std::mutex mu;
  std::vector<std::int64_t> values{1};  // U(0) = 1
};

template <typename Extend>
std::int64_t sequence_at(SequenceCache& cache, int n, Extend&& extend) {
  if (n < 0) throw std::invalid_argument("sequence index is negative");
  std::lock_guard<std::mutex> lock(cache.mu);
  while (static_cast<int>(cache.values.size()) <= n) extend(cache.values);
  return cache.values[static_cast<std::size_t>(n)];
}

/// Largest index with U(index) <= x.  Overflow while extending means every
/// further value exceeds any int64, so the scan can stop there.
template <typename Extend>
int sequence_floor_index(SequenceCache& cache, std::int64_t x, Extend&& extend) {
  std::lock_guard<std::mutex> lock(cache.mu);
  while (cache.values.back() <= x) {
    try {
      extend(cache.values);
    } catch (const std::overflow_error&) {
      break;
    }
  }
  int i = static_cast<int>(cache.values.size()) - 1;
  while (i >= 0 && cache.values[static_cast<std::size_t>(i)] > x) --i;
  return i;
}

template <typename System>
Word greedy_rep(const System& sys, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("cannot represent a negative integer");
  if (n == 0) return {};
  const int top = sys.floor_index(n);
  Word w;
  w.reserve(static_cast<std::size_t>(top) + 1);
  std::int64_t rest = n;
  for (int j = top; j >= 0; --j) {
    const std::int64_t uj = sys.u(j);
    const std::int64_t d = rest / uj;
    rest -= d * uj;
    w.push_back(static_cast<int>(d));
  }
  return w;
}

template <typename System>
std::int64_t word_value(const System& sys, const Word& w) {
  std::int64_t total = 0;
  const int len = static_cast<int>(w.size());
  for (int i = 0; i < len; ++i) {
    if (w[static_cast<std::size_t>(i)] < 0)
      throw std::invalid_argument("word digit is negative");
    const std::int64_t term =
        checked_mul(w[static_cast<std::size_t>(i)], sys.u(len - 1 - i));
    total = checked_add(total, term);
  }
  return total;
}

}  // namespace detail

/// A Parry-Bertrand numeration system: spec, automaton, base, quasi-greedy
/// expansion, the sequence U, and greedy conversions.  Copies share the
/// (internally synchronized) sequence cache.
class NumerationSystem {
 public:
  explicit NumerationSystem(BetaExpansionSpec spec, double tol = 1e-12)
      : spec_(std::move(spec)),
        dstar_(quasi_greedy(spec_)),
        automaton_(build_automaton(spec_)),
        beta_(beta_value(spec_, tol)),
        tol_(tol),
        zero_run_(compute_zero_run(dstar_)),
        cache_(std::make_shared<detail::SequenceCache>()) {}

  const BetaExpansionSpec& spec() const { return spec_; }
  const ParryAutomaton& automaton() const { return automaton_; }
  const PeriodicWord& quasi_greedy_expansion() const { return dstar_; }
  double beta() const { return beta_; }
  double tolerance() const { return tol_; }
  int alphabet_size() const { return automaton_.alphabet_size; }

  /// C_beta: the longest run of zeros in d*_beta(1).  At most C_beta + 1
  /// consecutive words of the language end in 0.
  int zero_run_bound() const { return zero_run_; }

  /// U(n), extended on demand.  Throws std::overflow_error past int64.
  std::int64_t u(int n) const {
    return detail::sequence_at(*cache_, n, [this](std::vector<std::int64_t>& v) { extend(v); });
  }

  std::vector<std::int64_t> u_prefix(int count) const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(u(i));
    return out;
  }

  int floor_index(std::int64_t x) const {
    return detail::sequence_floor_index(*cache_, x,
                                        [this](std::vector<std::int64_t>& v) { extend(v); });
  }

  /// Greedy representation; rep(0) is the empty word.
  Word rep(std::int64_t n) const { return detail::greedy_rep(*this, n); }

  /// Numeric value of a digit word (need not be a normal representation).
  std::int64_t val(const Word& w) const { return detail::word_value(*this, w); }

  bool is_in_language(const Word& w, bool allow_leading_zeros = false) const {
    if (w.empty()) return true;
    if (!allow_leading_zeros && w.front() == 0) return false;
    return automaton_.run(w) >= 0;
  }

  /// The first `count` words of the language in genealogical order.
  std::vector<Word> enumerate_language(std::int64_t count) const {
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(rep(i));
    return out;
  }

  /// U(n) / beta^n, the classical normalized growth estimate.
  double growth_constant_estimate(int n) const {
    return static_cast<double>(u(n)) / std::pow(beta_, n);
  }

 private:
  static int compute_zero_run(const PeriodicWord& dstar) {
    // Head plus two cycles covers any run crossing the period seam.
    const std::size_t n = dstar.head.size() + 2 * dstar.cycle.size();
    int best = 0, run = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (dstar.digit(i) == 0)
        best = std::max(best, ++run);
      else
        run = 0;
    }
    return best;
  }

  // One more value of U.  Initial segment: U(i) = t_1 U(i-1)+..+t_i U(0)+1.
  // Finite tail: U(n) = sum t_j U(n-j).  Periodic tail adds the correction
  // U(n-k) - t_1 U(n-k-1) - .. - t_m U(n-m-k).
  void extend(std::vector<std::int64_t>& v) const {
    using detail::checked_add;
    using detail::checked_mul;
    using detail::checked_sub;
    const std::vector<int> t = spec_.all_digits();
    const int m = spec_.preperiod_length();
    const int k = spec_.period_length();
    const int order = m + k;
    const int n = static_cast<int>(v.size());
    auto at = [&](int i) { return v[static_cast<std::size_t>(i)]; };
    std::int64_t s = 0;
    if (n < order) {
      for (int j = 1; j <= n; ++j)
        s = checked_add(s, checked_mul(t[static_cast<std::size_t>(j - 1)], at(n - j)));
      s = checked_add(s, 1);
    } else {
      for (int j = 1; j <= order; ++j)
        s = checked_add(s, checked_mul(t[static_cast<std::size_t>(j - 1)], at(n - j)));
      if (k > 0) {
        s = checked_add(s, at(n - k));
        for (int j = 1; j <= m; ++j)
          s = checked_sub(s, checked_mul(t[static_cast<std::size_t>(j - 1)], at(n - k - j)));
      }
    }
    v.push_back(s);
  }

  BetaExpansionSpec spec_;
  PeriodicWord dstar_;
  ParryAutomaton automaton_;
  double beta_;
  double tol_;
  int zero_run_;
  std::shared_ptr<detail::SequenceCache> cache_;
};

inline NumerationSystem make_system(const std::string& dbeta_text, double tol = 1e-12) {
  return NumerationSystem(parse_beta_spec(dbeta_text), tol);
}

// ---------------------------------------------------------------------------
// Custom linear systems

/// A positional system over an arbitrary strictly increasing linear
/// recurrence U(n+k) = a_{k-1} U(n+k-1) + ... + a_0 U(n) with U(0) = 1.
/// Greedy rep/val work as usual, but normality of shifted words is not
/// guaranteed (no Bertrand property in general).
class CustomLinearSystem {
 public:
  CustomLinearSystem(std::vector<std::int64_t> coeffs, std::vector<std::int64_t> init)
      : coeffs_(std::move(coeffs)), cache_(std::make_shared<detail::SequenceCache>()) {
    if (coeffs_.empty()) throw std::invalid_argument("empty coefficient list");
    if (init.size() != coeffs_.size())
      throw std::invalid_argument("initial values must match the recurrence order");
    if (init.front() != 1) throw std::invalid_argument("U(0) must be 1");
    for (std::size_t i = 1; i < init.size(); ++i)
      if (init[i] <= init[i - 1])
        throw std::invalid_argument("initial values must be strictly increasing");
    cache_->values = std::move(init);
  }

  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  std::int64_t u(int n) const {
    return detail::sequence_at(*cache_, n, [this](std::vector<std::int64_t>& v) { extend(v); });
  }

  int floor_index(std::int64_t x) const {
    return detail::sequence_floor_index(*cache_, x,
                                        [this](std::vector<std::int64_t>& v) { extend(v); });
  }

  Word rep(std::int64_t n) const { return detail::greedy_rep(*this, n); }
  std::int64_t val(const Word& w) const { return detail::word_value(*this, w); }

  /// True iff w is the greedy representation of its own value.
  bool is_normal(const Word& w) const { return rep(val(w)) == w; }

 private:
  void extend(std::vector<std::int64_t>& v) const {
    using detail::checked_add;
    using detail::checked_mul;
    const int k = static_cast<int>(coeffs_.size());
    const int n = static_cast<int>(v.size());
    std::int64_t s = 0;
    for (int j = 0; j < k; ++j)
      s = checked_add(s, checked_mul(coeffs_[static_cast<std::size_t>(j)],
                                     v[static_cast<std::size_t>(n - k + j)]));
    if (s <= v.back())
      throw std::invalid_argument("recurrence values are not strictly increasing");
    v.push_back(s);
  }

  std::vector<std::int64_t> coeffs_;
  std::shared_ptr<detail::SequenceCache> cache_;
};

}  // namespace bertrand
