#pragma once

// Segment approximations of the limit set of normalized Pascal-triangle
// squares.
//
// A pair of language words (u, v) with |u| >= |v| satisfies the star
// condition for residue r mod q when, after padding both with the least p
// zeros returning the automaton to its initial state,
//   binom(u0^p, v0^p) = r  (mod q)   and   binom(u0^p, v0^p a) = 0
// for every alphabet letter a.  Each such pair contributes a slope-one
// segment from A = (0.0^{|u|-|v|} v, 0.u) of diagonal extent beta^{-|u|-p};
// the union over pairs is the base approximation A_0.  Applying the
// homothety c (ratio 1/beta about the origin) and the vertical stretch
// h (y -> beta y) as h^j c^i for 0 <= j <= i <= n yields A_n, which
// converges to the limit set in Hausdorff distance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bertrand/binomial.hpp"
#include "bertrand/numeration.hpp"
#include "bertrand/parallel.hpp"

namespace bertrand {

// ---------------------------------------------------------------------------
// Star condition

/// Least p >= 0 such that reading u0^p and v0^p both ends in the initial
/// state.  Both words must be accepted; p never exceeds the state count.
inline int p_of(const NumerationSystem& sys, const Word& u, const Word& v) {
  const ParryAutomaton& a = sys.automaton();
  int su = a.run(u);
  int sv = a.run(v);
  if (su < 0 || sv < 0) throw std::invalid_argument("word outside the numeration language");
  for (int p = 0; p <= a.state_count; ++p) {
    if (su == 0 && sv == 0) return p;
    su = a.step(su, 0);
    sv = a.step(sv, 0);
    if (su < 0 || sv < 0) throw std::runtime_error("zero transition missing in automaton");
  }
  throw std::runtime_error("no return to the initial state within the state bound");
}

/// The star condition for (u, v) and residue r mod q.  (eps, eps) passes
/// exactly when r = 1; a pair with exactly one empty word never passes.
inline bool star_check(const NumerationSystem& sys, const Word& u, const Word& v,
                       const ResidueSpec& res) {
  if (u.empty() && v.empty()) return res.r == 1;
  if (u.empty() || v.empty()) return false;
  if (u.size() < v.size()) return false;
  const int p = p_of(sys, u, v);
  const Word ub = padded(u, p);
  const Word vb = padded(v, p);
  std::vector<Word> targets;
  targets.reserve(static_cast<std::size_t>(sys.alphabet_size()) + 1);
  targets.push_back(vb);
  for (int a = 0; a < sys.alphabet_size(); ++a) targets.push_back(appended(vb, a));
  const std::vector<std::int64_t> row = binom_row(ub, targets);
  if (row[0] % res.q != res.r) return false;
  for (std::size_t t = 1; t < targets.size(); ++t)
    if (row[t] != 0) return false;  // exact zero: v0^p a must not occur in u0^p at all
  return true;
}

struct StarPair {
  Word u;
  Word v;
  bool operator==(const StarPair&) const = default;
};

/// All star pairs with |v| <= |u| <= maxlen, ordered genealogically by u
/// then v.
inline std::vector<StarPair> star_pairs(const NumerationSystem& sys, int maxlen,
                                        const ResidueSpec& res, int threads = 1) {
  if (maxlen < 0) throw std::invalid_argument("maxlen is negative");
  const std::vector<Word> words = sys.enumerate_language(sys.u(maxlen));
  std::vector<std::vector<StarPair>> per_u(words.size());
  detail::parallel_for(words.size(), threads, [&](std::size_t i) {
    const Word& u = words[i];
    for (const Word& v : words) {
      if (v.size() > u.size()) break;  // genealogical order: lengths ascend
      if (star_check(sys, u, v, res)) per_u[i].push_back({u, v});
    }
  });
  std::vector<StarPair> out;
  for (std::vector<StarPair>& part : per_u)
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

// ---------------------------------------------------------------------------
// Segments

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Value of 0.w in base beta (most-significant digit first).
inline double base_beta_value(const NumerationSystem& sys, const Word& w) {
  double s = 0.0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) s = (s + *it) / sys.beta();
  return s;
}

/// Value of 0.w followed by an eventually periodic tail.
inline double base_beta_value(const NumerationSystem& sys, const Word& w,
                              const PeriodicWord& tail) {
  return base_beta_value(sys, w) +
         std::pow(sys.beta(), -static_cast<double>(w.size())) *
             detail::eval_periodic(tail, sys.beta());
}

/// A slope-beta^j segment from a to b, remembering the star pair it came
/// from, its padding p, and the map h^j c^i applied to it ((0,0) = none).
struct Segment {
  Word u;
  Word v;
  int p = 0;
  Vec2 a;
  Vec2 b;
  int i = 0;
  int j = 0;
};

using SegmentSet = std::vector<Segment>;

/// Base segment of a star pair: A = (0.0^{|u|-|v|} v, 0.u) and
/// B = A + beta^{-|u|-p} (1, 1).  (eps, eps) yields the full diagonal.
/// The pair is trusted to satisfy the star condition.
inline Segment segment_for(const NumerationSystem& sys, const Word& u, const Word& v) {
  if (u.size() < v.size()) throw std::invalid_argument("star pair needs |u| >= |v|");
  Segment s;
  s.u = u;
  s.v = v;
  s.p = p_of(sys, u, v);
  const double pad = std::pow(sys.beta(), -static_cast<double>(u.size() - v.size()));
  s.a = {pad * base_beta_value(sys, v), base_beta_value(sys, u)};
  const double d = std::pow(sys.beta(), -static_cast<double>(u.size()) - s.p);
  s.b = {s.a.x + d, s.a.y + d};
  return s;
}

/// A_0: base segments of every star pair up to maxlen.
inline SegmentSet a0_approx(const NumerationSystem& sys, int maxlen, const ResidueSpec& res,
                            int threads = 1) {
  const std::vector<StarPair> pairs = star_pairs(sys, maxlen, res, threads);
  SegmentSet set;
  set.reserve(pairs.size());
  for (const StarPair& p : pairs) set.push_back(segment_for(sys, p.u, p.v));
  return set;
}

/// A_n: every image h^j c^i (0 <= j <= i <= n) of every base segment, in
/// (i, j)-major order.  n = 0 returns the base set unchanged.
inline SegmentSet an_approx(const SegmentSet& a0, int n, const NumerationSystem& sys) {
  if (n < 0) throw std::invalid_argument("iteration count is negative");
  const double beta = sys.beta();
  SegmentSet out;
  out.reserve(a0.size() * static_cast<std::size_t>((n + 1) * (n + 2) / 2));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double sx = std::pow(beta, -i);       // c^i on both axes ...
      const double sy = std::pow(beta, j - i);    // ... then h^j on y
      for (const Segment& s : a0) {
        Segment t = s;
        t.a = {s.a.x * sx, s.a.y * sy};
        t.b = {s.b.x * sx, s.b.y * sy};
        t.i = i;
        t.j = j;
        out.push_back(t);
      }
    }
  }
  return out;
}

/// Restriction of a segment set to the half plane x >= xmin.  Segments are
/// shortened to the boundary; pieces shorter than min_len are dropped.
/// Used for the stabilization identity: A_m and A_n agree on x >= 1/beta^{m+1}
/// for every n >= m.
inline SegmentSet clip_min_x(const SegmentSet& set, double xmin, double min_len = 1e-12) {
  SegmentSet out;
  for (const Segment& s : set) {
    if (s.b.x < xmin) continue;
    Segment t = s;
    if (t.a.x < xmin) {
      const double f = (xmin - t.a.x) / (t.b.x - t.a.x);
      t.a = {xmin, t.a.y + f * (t.b.y - t.a.y)};
    }
    const double dx = t.b.x - t.a.x;
    const double dy = t.b.y - t.a.y;
    if (std::sqrt(dx * dx + dy * dy) < min_len) continue;
    out.push_back(t);
  }
  return out;
}

/// Endpoint-set equality within a tolerance, after sorting and removing
/// duplicates (the approximation families repeat segments).  Diagnostic
/// helper for the stabilization identity.
inline bool segment_sets_match(const SegmentSet& lhs, const SegmentSet& rhs, double tol = 1e-9) {
  auto canonical = [tol](const SegmentSet& set) {
    std::vector<std::array<double, 4>> q;
    q.reserve(set.size());
    for (const Segment& s : set) q.push_back({s.a.x, s.a.y, s.b.x, s.b.y});
    std::sort(q.begin(), q.end());
    std::vector<std::array<double, 4>> out;
    for (const std::array<double, 4>& e : q) {
      bool dup = false;
      if (!out.empty()) {
        dup = true;
        for (int c = 0; c < 4; ++c)
          if (std::abs(e[static_cast<std::size_t>(c)] - out.back()[static_cast<std::size_t>(c)]) > tol) {
            dup = false;
            break;
          }
      }
      if (!dup) out.push_back(e);
    }
    return out;
  };
  const std::vector<std::array<double, 4>> a = canonical(lhs);
  const std::vector<std::array<double, 4>> b = canonical(rhs);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int c = 0; c < 4; ++c)
      if (std::abs(a[i][static_cast<std::size_t>(c)] - b[i][static_cast<std::size_t>(c)]) > tol)
        return false;
  return true;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string format_double(double v, const char* fmt = "%.9f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace detail

/// SVG 1.1 rendering in the unit viewBox.  The row coordinate 0.u is drawn
/// at y = value; since SVG's y axis points down, rows grow downward exactly
/// as in the triangle figures (no extra flip needed).
inline std::string render_svg(const SegmentSet& set, double stroke_width = 0.002) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "viewBox=\"0 0 1 1\" width=\"820\" height=\"820\">\n"
      "<!-- y axis points down: the row coordinate 0.u of each segment is its\n"
      "     rendered y, matching the downward row axis of the square sets -->\n"
      "<g fill=\"none\" stroke=\"#000\" stroke-width=\"" +
      detail::format_double(stroke_width, "%.6f") + "\" stroke-linecap=\"round\">\n";
  for (const Segment& s : set) {
    out += "<line x1=\"" + detail::format_double(s.a.x) + "\" y1=\"" +
           detail::format_double(s.a.y) + "\" x2=\"" + detail::format_double(s.b.x) +
           "\" y2=\"" + detail::format_double(s.b.y) + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

inline void write_svg(const SegmentSet& set, const std::string& path,
                      double stroke_width = 0.002) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << render_svg(set, stroke_width);
  if (!f) throw std::runtime_error("write failed: " + path);
}

/// JSON dump: an array of {u, v, p, ax, ay, bx, by, i, j} objects in set
/// order.  Doubles use %.17g so values round-trip exactly.
inline std::string segments_json(const SegmentSet& set) {
  std::string out = "[\n";
  for (std::size_t k = 0; k < set.size(); ++k) {
    const Segment& s = set[k];
    out += "{\"u\":\"" + word_to_string(s.u) + "\",\"v\":\"" + word_to_string(s.v) +
           "\",\"p\":" + std::to_string(s.p) + ",\"ax\":" + detail::format_double(s.a.x, "%.17g") +
           ",\"ay\":" + detail::format_double(s.a.y, "%.17g") +
           ",\"bx\":" + detail::format_double(s.b.x, "%.17g") +
           ",\"by\":" + detail::format_double(s.b.y, "%.17g") + ",\"i\":" + std::to_string(s.i) +
           ",\"j\":" + std::to_string(s.j) + "}";
    out += k + 1 < set.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

inline void write_segments_json(const SegmentSet& set, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << segments_json(set);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace bertrand
