#pragma once

// Generalized Pascal triangles.  Rows and columns are indexed by the first
// words of a numeration language in genealogical order; the entry at (i, j)
// is binom(rep(i), rep(j)), exactly or as a residue mod a prime q.  The
// normalized square sets collect the cells of one residue class in the
// U(n) x U(n) block, scaled by 1/U(n).

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bertrand/binomial.hpp"
#include "bertrand/numeration.hpp"
#include "bertrand/parallel.hpp"

namespace bertrand {

struct TriangleBlock {
  int rows = 0;
  int cols = 0;
  bool modular = false;
  std::int64_t modulus = 0;  // q when modular
  std::vector<Word> row_words;
  std::vector<Word> col_words;
  std::vector<std::int64_t> values;  // row-major

  std::int64_t at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(j)];
  }
};

namespace detail {

template <typename Add>
TriangleBlock triangle_block_impl(const NumerationSystem& sys, int rows, int cols,
                                  std::int64_t one, Add&& add, int threads) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("triangle block must be non-empty");
  const std::vector<Word> words = sys.enumerate_language(std::max(rows, cols));
  TriangleBlock block;
  block.rows = rows;
  block.cols = cols;
  block.row_words.assign(words.begin(), words.begin() + rows);
  block.col_words.assign(words.begin(), words.begin() + cols);
  block.values.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  const PrefixTrie trie(block.col_words);
  parallel_for(static_cast<std::size_t>(rows), threads, [&](std::size_t i) {
    const std::vector<std::int64_t> acc =
        trie.counts<std::int64_t>(block.row_words[i], 0, one, add);
    for (int j = 0; j < cols; ++j)
      block.values[i * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)] =
          acc[static_cast<std::size_t>(trie.terminal[static_cast<std::size_t>(j)])];
  });
  return block;
}

}  // namespace detail

/// Exact block of word binomials over the first rows x cols language words.
inline TriangleBlock triangle_block(const NumerationSystem& sys, int rows, int cols,
                                    int threads = 1) {
  try {
    return detail::triangle_block_impl(
        sys, rows, cols, 1,
        [](std::int64_t a, std::int64_t b) { return detail::checked_add(a, b); }, threads);
  } catch (const std::overflow_error&) {
    throw std::overflow_error("exact triangle entry exceeds 64 bits; compute modulo a prime");
  }
}

/// Same block with entries reduced mod prime q.
inline TriangleBlock triangle_block_mod(const NumerationSystem& sys, int rows, int cols,
                                        std::int64_t q, int threads = 1) {
  if (!detail::is_prime(q)) throw std::invalid_argument("modulus must be prime");
  TriangleBlock block = detail::triangle_block_impl(
      sys, rows, cols, 1 % q,
      [q](std::int64_t a, std::int64_t b) {
        const std::int64_t s = a + b;
        return s >= q ? s - q : s;
      },
      threads);
  block.modular = true;
  block.modulus = q;
  return block;
}

// ---------------------------------------------------------------------------
// Normalized square sets

/// Cells of one residue class in the U(n) x U(n) triangle block, in abstract
/// integer grid coordinates: col = val(v), row = val(u), row 0 meaning the
/// empty word.  Renderers map rows downward (image convention).
struct SquareSet {
  struct Cell {
    std::int64_t col = 0;
    std::int64_t row = 0;
    bool operator==(const Cell&) const = default;
  };

  int n = 0;
  std::int64_t grid = 1;  // U(n)
  ResidueSpec residue;
  std::vector<Cell> cells;  // sorted by (row, col)

  double unit() const { return 1.0 / static_cast<double>(grid); }
};

/// The square set U_{n,r}: cells (val(v), val(u)) over the first U(n) words
/// with binom(u, v) = r mod q.
inline SquareSet u_set(const NumerationSystem& sys, int n, const ResidueSpec& res,
                       int threads = 1) {
  if (n < 0) throw std::invalid_argument("square set depth is negative");
  const std::int64_t grid = sys.u(n);
  if (grid > 1'000'000) throw std::invalid_argument("square set grid too large");
  const int size = static_cast<int>(grid);
  const TriangleBlock block = triangle_block_mod(sys, size, size, res.q, threads);
  SquareSet set;
  set.n = n;
  set.grid = grid;
  set.residue = res;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (block.at(i, j) == res.r) set.cells.push_back({j, i});
  return set;
}

// ---------------------------------------------------------------------------
// Output

/// PBM (P1) rendering: one black pixel block of scale x scale per cell, row
/// index increasing downward, lines at most 70 characters.
inline std::string render_pbm(const SquareSet& set, int scale = 1) {
  if (scale < 1) throw std::invalid_argument("scale must be at least 1");
  const std::int64_t side64 = set.grid * scale;
  if (side64 > 10000) throw std::invalid_argument("bitmap too large");
  const int side = static_cast<int>(side64);
  const int grid = static_cast<int>(set.grid);
  std::vector<std::uint8_t> base(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid), 0);
  for (const SquareSet::Cell& c : set.cells)
    base[static_cast<std::size_t>(c.row) * static_cast<std::size_t>(grid) +
         static_cast<std::size_t>(c.col)] = 1;
  std::string out = "P1\n" + std::to_string(side) + " " + std::to_string(side) + "\n";
  std::string line;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const std::uint8_t bit = base[static_cast<std::size_t>(y / scale) * static_cast<std::size_t>(grid) +
                                    static_cast<std::size_t>(x / scale)];
      const std::size_t need = line.empty() ? 1 : 2;
      if (line.size() + need > 70) {
        out += line;
        out += '\n';
        line.clear();
      }
      if (!line.empty()) line += ' ';
      line += bit ? '1' : '0';
    }
    out += line;
    out += '\n';
    line.clear();
  }
  return out;
}

inline void write_pbm(const SquareSet& set, const std::string& path, int scale = 1) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << render_pbm(set, scale);
  if (!f) throw std::runtime_error("write failed: " + path);
}

/// CSV dump, header i,j,word_i,word_j,value, rows in row-major order.
inline std::string triangle_csv(const TriangleBlock& block) {
  std::string out = "i,j,word_i,word_j,value\n";
  for (int i = 0; i < block.rows; ++i)
    for (int j = 0; j < block.cols; ++j) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += word_to_string(block.row_words[static_cast<std::size_t>(i)]);
      out += ',';
      out += word_to_string(block.col_words[static_cast<std::size_t>(j)]);
      out += ',';
      out += std::to_string(block.at(i, j));
      out += '\n';
    }
  return out;
}

inline void write_triangle_csv(const TriangleBlock& block, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << triangle_csv(block);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace bertrand
