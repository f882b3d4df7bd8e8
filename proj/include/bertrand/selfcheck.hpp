#pragma once

// Self-verification suite behind the `verify` CLI subcommand: every module
// invariant restated as an executable check at desk scales.  Each check
// returns pass/fail with a short detail line; the suite is deterministic.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bertrand/hausdorff.hpp"

namespace bertrand {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

/// Words accepted from the initial state, leading zeros allowed (the 0*L
/// closure of the language), of length <= maxlen, by breadth-first walk.
/// Stops after `cap` words so wide alphabets stay at desk scale.
inline std::vector<Word> padded_language(const NumerationSystem& sys, int maxlen,
                                         std::size_t cap = SIZE_MAX) {
  const ParryAutomaton& a = sys.automaton();
  std::vector<std::pair<Word, int>> frontier{{{}, 0}};
  std::vector<Word> out{{}};
  for (int len = 1; len <= maxlen && out.size() < cap; ++len) {
    std::vector<std::pair<Word, int>> next;
    for (const auto& [w, s] : frontier) {
      for (int d = 0; d < a.alphabet_size && out.size() < cap; ++d) {
        const int t = a.step(s, d);
        if (t < 0) continue;
        next.push_back({appended(w, d), t});
        out.push_back(next.back().first);
      }
      if (out.size() >= cap) break;
    }
    frontier.swap(next);
  }
  return out;
}

/// Largest n <= maxlen with U(n) <= budget: keeps quadratic word checks at
/// desk scale for systems whose language grows fast (wide alphabets).
inline int len_for_budget(const NumerationSystem& sys, int maxlen, std::int64_t budget) {
  int n = 0;
  while (n < maxlen && sys.u(n + 1) <= budget) ++n;
  return n;
}

inline std::string pass_count(std::size_t n) { return std::to_string(n) + " cases"; }

}  // namespace detail

/// Runs the whole suite.  maxlen bounds the word lengths of the
/// combinatorial checks; res drives the residue-dependent ones.
inline std::vector<CheckResult> run_selfchecks(const NumerationSystem& sys, int maxlen,
                                               const ResidueSpec& res, int threads = 1) {
  std::vector<CheckResult> results;
  auto check = [&results](const std::string& name, const std::function<std::string()>& body) {
    try {
      results.push_back({name, true, body()});
    } catch (const std::exception& e) {
      results.push_back({name, false, e.what()});
    }
  };
  auto fail = [](const std::string& msg) { throw std::runtime_error(msg); };

  const bool is_phi = sys.spec() == BetaExpansionSpec{{1, 1}, {}};

  // --- numeration ---------------------------------------------------------
  check("roundtrip-val-rep", [&] {
    for (std::int64_t n = 0; n < 1000; ++n) {
      const Word w = sys.rep(n);
      if (sys.val(w) != n) fail("val(rep(" + std::to_string(n) + ")) mismatch");
      if (!sys.is_in_language(w)) fail("rep(" + std::to_string(n) + ") outside language");
    }
    return detail::pass_count(1000);
  });

  check("bertrand-shift", [&] {
    // The shift property quantifies over non-empty words only.
    const std::vector<Word> words = sys.enumerate_language(501);
    for (const Word& w : words) {
      if (w.empty()) continue;
      if (!sys.is_in_language(padded(w, 1)))
        fail("w0 outside language for w=" + word_to_string(w));
      if (!w.empty() && w.back() == 0) {
        Word shorter(w.begin(), w.end() - 1);
        if (!sys.is_in_language(shorter))
          fail("w outside language though w0 accepted: " + word_to_string(shorter));
      }
    }
    return detail::pass_count(words.size());
  });

  check("automaton-greedy-agreement", [&] {
    const int len = detail::len_for_budget(sys, std::min(maxlen, 10), 2048);
    std::size_t count = 0;
    for (const Word& w : detail::padded_language(sys, len)) {
      if (!w.empty() && w.front() == 0) continue;  // language proper
      if (sys.rep(sys.val(w)) != w) fail("accepted word is not greedy: " + word_to_string(w));
      ++count;
    }
    if (static_cast<std::int64_t>(count) != sys.u(len))
      fail("language word count disagrees with U(" + std::to_string(len) + ")");
    return detail::pass_count(count);
  });

  check("trailing-zero-runs", [&] {
    int run = 0, best = 0;
    for (const Word& w : sys.enumerate_language(500)) {
      if (!w.empty() && w.back() == 0)
        best = std::max(best, ++run);
      else
        run = 0;
    }
    const int bound = sys.zero_run_bound() + 1;
    if (best > bound)
      fail("max run " + std::to_string(best) + " exceeds C_beta + 1 = " + std::to_string(bound));
    // The bound is attained exactly when the maximal zero run of d* starts
    // right after the first digit: then the maximal words 10^j chain up in
    // genealogical order.  Elsewhere the chain breaks (successor of a
    // maximal word w is 10^|w|, not the next d* prefix).
    const PeriodicWord& dstar = sys.quasi_greedy_expansion();
    int initial = 0;
    while (dstar.digit(static_cast<std::size_t>(initial) + 1) == 0) ++initial;
    if (initial == sys.zero_run_bound() && best != bound)
      fail("max run " + std::to_string(best) + " != attained bound " + std::to_string(bound));
    return "max run " + std::to_string(best) + ", bound " + std::to_string(bound);
  });

  check("numeric-consistency", [&] {
    const double err =
        std::abs(detail::eval_periodic(sys.quasi_greedy_expansion(), sys.beta()) - 1.0);
    if (err > 10 * sys.tolerance()) fail("0.d*(beta) misses 1 by " + std::to_string(err));
    return "residual " + detail::format_double(err, "%.3g");
  });

  check("custom-linear-shift-violation", [&] {
    // The classical counterexample sequence 1,3,4,7,11,...: "20" has value 6
    // but rep(6) = "102", so the shift-invariance of greedy reps fails.
    const CustomLinearSystem fp({1, 1}, {1, 3});
    if (fp.val(parse_word("20")) != 6) fail("val(20) != 6");
    if (word_to_string(fp.rep(6)) != "102") fail("rep(6) != 102");
    if (fp.is_normal(parse_word("20"))) fail("20 unexpectedly normal");
    if (!fp.is_normal(parse_word("2"))) fail("2 should be normal");
    for (std::int64_t n = 0; n < 200; ++n)
      if (fp.val(fp.rep(n)) != n) fail("custom roundtrip failed at " + std::to_string(n));
    return "rep(6) = 102";
  });

  // --- binomials -----------------------------------------------------------
  check("binomial-oracle-language", [&] {
    const std::vector<Word> words =
        sys.enumerate_language(sys.u(detail::len_for_budget(sys, std::min(maxlen, 7), 64)));
    std::size_t count = 0;
    for (const Word& u : words)
      for (const Word& v : words) {
        if (binom_words(u, v) != brute_force_count(u, v))
          fail("DP disagrees with enumeration on (" + word_to_string(u) + "," +
               word_to_string(v) + ")");
        ++count;
      }
    return detail::pass_count(count);
  });

  check("binomial-oracle-ternary", [&] {
    std::vector<Word> words{{}};
    for (std::size_t i = 0; i < words.size() && words[i].size() < 5; ++i)
      for (int d = 0; d < 3; ++d) words.push_back(appended(words[i], d));
    std::size_t count = 0;
    for (const Word& u : words)
      for (const Word& v : words) {
        if (v.size() > u.size()) continue;
        if (binom_words(u, v) != brute_force_count(u, v))
          fail("DP disagrees with enumeration on ternary pair");
        ++count;
      }
    return detail::pass_count(count);
  });

  check("zero-block-identity", [&] {
    const std::vector<Word> words =
        sys.enumerate_language(sys.u(detail::len_for_budget(sys, std::min(maxlen, 5), 32)));
    std::size_t count = 0;
    for (const Word& u : words)
      for (const Word& v : words) {
        if (u.empty() || v.empty()) continue;
        for (int k = 0; k <= 4; ++k) {
          std::int64_t rhs = 0;
          for (int j = 0; j <= k; ++j)
            rhs = detail::checked_add(
                rhs, detail::checked_mul(binomial_coefficient(k, j), binom_words(u, padded(v, j))));
          if (binom_words(padded(u, k), padded(v, k)) != rhs)
            fail("zero-block identity fails at (" + word_to_string(u) + "," + word_to_string(v) +
                 "), k=" + std::to_string(k));
          ++count;
        }
      }
    return detail::pass_count(count);
  });

  check("unary-reduction", [&] {
    for (int m = 0; m <= 12; ++m)
      for (int n = 0; n <= m; ++n) {
        const Word u(static_cast<std::size_t>(m), 1);
        const Word v(static_cast<std::size_t>(n), 1);
        if (binom_words(u, v) != binomial_coefficient(m, n)) fail("binom(1^m,1^n) != C(m,n)");
      }
    return "m <= 12";
  });

  check("lucas-consistency", [&] {
    for (std::int64_t p : {2, 3, 5})
      for (std::int64_t m = 0; m < 64; ++m)
        for (std::int64_t n = 0; n <= m; ++n)
          if (lucas_binom_mod(m, n, p) != binomial_coefficient(m, n) % p)
            fail("Lucas disagrees at C(" + std::to_string(m) + "," + std::to_string(n) +
                 ") mod " + std::to_string(p));
    return "m,n < 64, p in {2,3,5}";
  });

  check("modular-agreement", [&] {
    const std::vector<Word> words =
        sys.enumerate_language(sys.u(detail::len_for_budget(sys, std::min(maxlen, 7), 64)));
    for (std::int64_t q : {2, 3, 5, 7})
      for (const Word& u : words) {
        std::vector<std::int64_t> row = binom_row_mod(u, words, q);
        for (std::size_t j = 0; j < words.size(); ++j) {
          if (row[j] != binom_words(u, words[j]) % q) fail("row mod disagrees with exact mod");
          if (row[j] != binom_words_mod(u, words[j], q)) fail("row mod disagrees with pair mod");
        }
      }
    return "q in {2,3,5,7}";
  });

  // --- triangle ------------------------------------------------------------
  check("triangle-ones-and-zeros", [&] {
    const int size = static_cast<int>(std::min<std::int64_t>(sys.u(std::min(maxlen, 8)), 64));
    const TriangleBlock block = triangle_block(sys, size, size, threads);
    for (int i = 0; i < size; ++i) {
      if (block.at(i, i) != 1) fail("diagonal entry not 1");
      if (block.at(i, 0) != 1) fail("first column entry not 1");
      for (int j = i + 1; j < size; ++j)
        if (block.col_words[static_cast<std::size_t>(j)].size() >
                block.row_words[static_cast<std::size_t>(i)].size() &&
            block.at(i, j) != 0)
          fail("longer column word has nonzero entry");
    }
    return std::to_string(size) + "x" + std::to_string(size);
  });

  check("residue-partition", [&] {
    const int n = detail::len_for_budget(sys, std::min(maxlen, 6), 128);
    const std::int64_t grid = sys.u(n);
    const TriangleBlock block =
        triangle_block_mod(sys, static_cast<int>(grid), static_cast<int>(grid), res.q, threads);
    std::vector<std::size_t> class_count(static_cast<std::size_t>(res.q), 0);
    for (std::int64_t e : block.values) ++class_count[static_cast<std::size_t>(e)];
    std::size_t total = 0;
    for (std::int64_t r = 1; r < res.q; ++r) {
      const SquareSet set = u_set(sys, n, {res.q, r}, threads);
      if (set.cells.size() != class_count[static_cast<std::size_t>(r)])
        fail("residue class " + std::to_string(r) + " cell count mismatch");
      total += set.cells.size();
    }
    if (total + class_count[0] != static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid))
      fail("residue classes do not partition the grid");
    return "q = " + std::to_string(res.q) + ", grid " + std::to_string(grid);
  });

  check("classical-pascal-copy", [&] {
    // In an integer base the subgrid indexed by repdigit words carries the
    // classical triangle; checked on base 2 independently of `sys`.
    const NumerationSystem base2(make_beta_spec({1}, {1}));
    const TriangleBlock block = triangle_block(base2, 16, 16, threads);
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j) {
        const std::int64_t row = base2.val(Word(static_cast<std::size_t>(i), 1));
        const std::int64_t col = base2.val(Word(static_cast<std::size_t>(j), 1));
        if (block.at(static_cast<int>(row), static_cast<int>(col)) !=
            binomial_coefficient(i, j))
          fail("base-2 repunit subgrid is not the classical triangle");
      }
    return "base 2, C(i,j) for i,j <= 3";
  });

  check("pbm-self-consistency", [&] {
    const SquareSet set =
        u_set(sys, detail::len_for_budget(sys, std::min(maxlen, 6), 128), res, threads);
    for (int scale : {1, 2}) {
      const std::string pbm = render_pbm(set, scale);
      const std::size_t ones = static_cast<std::size_t>(
          std::count(pbm.begin() + static_cast<long>(pbm.find('\n', 3)), pbm.end(), '1'));
      if (ones != set.cells.size() * static_cast<std::size_t>(scale) *
                      static_cast<std::size_t>(scale))
        fail("black pixel count != cells * scale^2");
    }
    return std::to_string(set.cells.size()) + " cells";
  });

  // --- star geometry --------------------------------------------------------
  const int star_len = detail::len_for_budget(sys, std::min(maxlen, 6), 64);
  const std::vector<StarPair> pairs = star_pairs(sys, star_len, res, threads);

  check("star-diagonal", [&] {
    for (const Word& u : sys.enumerate_language(sys.u(star_len)))
      if (star_check(sys, u, u, res) != (res.r == 1))
        fail("(u,u) star status wrong for u=" + word_to_string(u));
    return detail::pass_count(static_cast<std::size_t>(sys.u(star_len)));
  });

  check("star-residue", [&] {
    for (const StarPair& pr : pairs) {
      const int p = p_of(sys, pr.u, pr.v);
      if (binom_words_mod(padded(pr.u, p), padded(pr.v, p), res.q) != res.r)
        fail("passing pair has wrong padded residue");
      // The padded binomial collapses to the bare one (all mixed terms of
      // the zero-block expansion vanish), so the bare pair inherits r.
      if (binom_words_mod(pr.u, pr.v, res.q) != res.r)
        fail("passing pair has wrong bare residue");
    }
    return detail::pass_count(pairs.size());
  });

  check("star-letter-closure", [&] {
    std::size_t count = 0;
    for (const StarPair& pr : pairs) {
      if (pr.u.empty()) continue;
      const int p = p_of(sys, pr.u, pr.v);
      for (int a = 0; a < sys.alphabet_size(); ++a) {
        if (!star_check(sys, appended(padded(pr.u, p), a), appended(padded(pr.v, p), a), res))
          fail("letter extension leaves the star family");
        ++count;
      }
    }
    return detail::pass_count(count);
  });

  check("star-propagation", [&] {
    const std::vector<Word> tails = detail::padded_language(sys, 4, 4096);
    std::size_t count = 0;
    for (const StarPair& pr : pairs) {
      if (pr.u.empty()) continue;
      const int p = p_of(sys, pr.u, pr.v);
      const Word ub = padded(pr.u, p), vb = padded(pr.v, p);
      for (const Word& w : tails) {
        Word uw = ub, vw = vb;
        uw.insert(uw.end(), w.begin(), w.end());
        vw.insert(vw.end(), w.begin(), w.end());
        if (binom_words_mod(uw, vw, res.q) != res.r)
          fail("residue does not propagate along " + word_to_string(w));
        ++count;
      }
    }
    return detail::pass_count(count);
  });

  if (is_phi) {
    check("star-known-pairs", [&] {
      if (!star_check(sys, parse_word("101"), parse_word("10"), make_residue_spec(2, 1)))
        fail("(101,10) should pass mod 2");
      if (star_check(sys, parse_word("1010"), parse_word("101"), make_residue_spec(2, 1)))
        fail("(1010,101) should fail mod 2");
      return std::string("(101,10) in, (1010,101) out");
    });
  }

  const SegmentSet a0 = a0_approx(sys, star_len, res, threads);

  check("segment-extent", [&] {
    for (const Segment& s : a0) {
      const double d = std::pow(sys.beta(), -static_cast<double>(s.u.size()) - s.p);
      if (std::abs((s.b.x - s.a.x) - d) > 1e-9 || std::abs((s.b.y - s.a.y) - d) > 1e-9)
        fail("B - A != beta^{-|u|-p} (1,1)");
    }
    return detail::pass_count(a0.size());
  });

  check("segment-band", [&] {
    const double lo = 1.0 / sys.beta() - 1e-9;
    for (const Segment& s : a0) {
      if (s.a.x < -1e-9 || s.b.x > 1 + 1e-9 || s.b.y > 1 + 1e-9) fail("segment leaves unit square");
      if (!(s.u.empty() && s.v.empty()) && s.a.y < lo) fail("segment below the 1/beta band");
    }
    return detail::pass_count(a0.size());
  });

  check("map-slopes", [&] {
    const SegmentSet a2 = an_approx(a0, 2, sys);
    for (const Segment& s : a2) {
      const double slope = (s.b.y - s.a.y) / (s.b.x - s.a.x);
      if (std::abs(slope - std::pow(sys.beta(), s.j)) > 1e-6)
        fail("post-map slope is not beta^j");
    }
    return detail::pass_count(a0.size() * 6);
  });

  check("stabilization", [&] {
    const double xmin = std::pow(sys.beta(), -2);
    if (!segment_sets_match(clip_min_x(an_approx(a0, 1, sys), xmin),
                            clip_min_x(an_approx(a0, 3, sys), xmin), 1e-9))
      fail("A_1 and A_3 disagree on x >= 1/beta^2");
    return std::string("A_1 = A_3 on x >= 1/beta^2");
  });

  if (is_phi) {
    check("endpoint-convergence", [&] {
      const Segment s = segment_for(sys, parse_word("101"), parse_word("10"));
      const Word un = padded(parse_word("101"), s.p + 20);
      const Word vn = padded(parse_word("10"), s.p + 20);
      const double den = static_cast<double>(sys.u(static_cast<int>(un.size())));
      const double ex = std::abs(static_cast<double>(sys.val(vn)) / den - s.a.x);
      const double ey = std::abs(static_cast<double>(sys.val(un)) / den - s.a.y);
      if (ex > 0.01 || ey > 0.01) fail("scaled corner has not converged to A by n=20");
      return "error " + detail::format_double(std::max(ex, ey), "%.2e");
    });
  }

  // --- hausdorff -------------------------------------------------------------
  const int level_a = detail::len_for_budget(sys, std::min(maxlen, 4), 16);
  const int level_b = detail::len_for_budget(sys, std::min(maxlen, 5), 40);
  const int level_c = detail::len_for_budget(sys, std::min(maxlen, 6), 96);

  check("hausdorff-metric", [&] {
    const SquareSet s2 = u_set(sys, level_a, res, threads);
    const SquareSet s3 = u_set(sys, level_b, res, threads);
    const SquareSet s4 = u_set(sys, level_c, res, threads);
    if (s2.cells.empty() || s3.cells.empty() || s4.cells.empty())
      return std::string("skipped: empty residue class at this scale");
    const PointCloud a = sample_square_set(s2, s2.unit());
    const PointCloud b = sample_square_set(s3, s3.unit());
    const PointCloud c = sample_square_set(s4, s4.unit());
    const double ab = hausdorff_distance(a, b, threads).distance;
    const double ba = hausdorff_distance(b, a, threads).distance;
    const double aa = hausdorff_distance(a, a, threads).distance;
    const double ac = hausdorff_distance(a, c, threads).distance;
    const double bc = hausdorff_distance(b, c, threads).distance;
    if (std::abs(ab - ba) > 1e-12) fail("distance is not symmetric");
    if (aa != 0.0) fail("distance of a cloud to itself is nonzero");
    if (ac > ab + bc + 1e-12) fail("triangle inequality violated");
    return "d(a,b)=" + detail::format_double(ab, "%.4f");
  });

  check("hausdorff-corner-case", [&] {
    PointCloud sq;
    sq.spacing = 1.0;
    sq.points = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    PointCloud pt;
    pt.spacing = 1.0;
    pt.points = {{0, 0}};
    const double d = hausdorff_distance(sq, pt).distance;
    if (std::abs(d - std::sqrt(2.0)) > 1e-12) fail("corner grid vs origin should be sqrt(2)");
    return std::string("sqrt(2)");
  });

  check("hausdorff-fattening", [&] {
    const SquareSet s3 = u_set(sys, level_a, res, threads);
    const SquareSet s5 = u_set(sys, level_c, res, threads);
    if (s3.cells.empty() || s5.cells.empty())
      return std::string("skipped: empty residue class at this scale");
    const PointCloud a = sample_square_set(s3, s3.unit());
    const PointCloud b = sample_square_set(s5, s5.unit());
    const double d = hausdorff_distance(a, b, threads).distance;
    const detail::BucketGrid gb(b.points, std::max(a.spacing, b.spacing));
    for (const Vec2& p : a.points)
      if (gb.nearest_distance(p) > d + 1e-12) fail("point escapes the d-fattening");
    return "eps = " + detail::format_double(d, "%.4f");
  });

  check("hausdorff-refinement", [&] {
    const SquareSet s3 = u_set(sys, level_a, res, threads);
    const SquareSet s5 = u_set(sys, level_c, res, threads);
    if (s3.cells.empty() || s5.cells.empty())
      return std::string("skipped: empty residue class at this scale");
    const PointCloud a1 = sample_square_set(s3, s3.unit());
    const PointCloud a2 = sample_square_set(s3, s3.unit() / 2);
    const PointCloud b = sample_square_set(s5, s5.unit());
    const HausdorffResult coarse = hausdorff_distance(a1, b, threads);
    const HausdorffResult fine = hausdorff_distance(a2, b, threads);
    if (fine.distance > coarse.distance + coarse.error_bound)
      fail("refined sampling increased the distance beyond the error bound");
    return detail::format_double(coarse.distance, "%.4f") + " -> " +
           detail::format_double(fine.distance, "%.4f");
  });

  return results;
}

}  // namespace bertrand
