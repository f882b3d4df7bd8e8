#pragma once

// Binomial coefficients of words: binom(u, v) counts the occurrences of v as
// a scattered subword of u.  They satisfy
//   binom(ua, vb) = binom(u, vb) + [a == b] binom(u, v),
// generalize the classical binomials (binom(a^m, a^n) = C(m, n)), and are
// the entries of the generalized Pascal triangles built elsewhere.
//
// The exact path computes in checked int64 and falls back to an add-only
// big integer before reporting overflow.  Row computations share work
// across column words through a prefix trie.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bertrand/checked.hpp"
#include "bertrand/words.hpp"

namespace bertrand {

// ---------------------------------------------------------------------------
// Moduli

namespace detail {

inline bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  if (q > 1'000'000'000'000LL)
    throw std::invalid_argument("modulus too large for trial division");
  for (std::int64_t i = 2; i * i <= q; ++i)
    if (q % i == 0) return false;
  return true;
}

inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = mod_mul(r, base, q);
    base = mod_mul(base, base, q);
    exp >>= 1;
  }
  return r;
}

// Fermat inverse, q prime.
inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t q) {
  return mod_pow(a, q - 2, q);
}

}  // namespace detail

/// Residue class r mod q with q prime and 1 <= r < q.
struct ResidueSpec {
  std::int64_t q = 2;
  std::int64_t r = 1;
};

inline ResidueSpec make_residue_spec(std::int64_t q, std::int64_t r) {
  if (!detail::is_prime(q)) throw std::invalid_argument("modulus must be prime");
  if (r < 1 || r >= q) throw std::invalid_argument("residue must satisfy 1 <= r < q");
  return {q, r};
}

// ---------------------------------------------------------------------------
// Plain integer binomials

/// C(n, k) in checked 64-bit arithmetic.  The running product stays exact in
/// 128 bits before each division, so any C(n, k) that fits in int64 is
/// computed without a spurious intermediate overflow.
inline std::int64_t binomial_coefficient(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw std::invalid_argument("negative binomial argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // product of i consecutive integers is divisible by i!
    if (r > INT64_MAX)
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::int64_t>(r);
}

// ---------------------------------------------------------------------------
// Big integer fallback (addition only; that is all the DP needs)

namespace detail {

class BigUint {
 public:
  BigUint() : limbs_{0} {}
  explicit BigUint(std::uint64_t v) : limbs_{v} {}

  BigUint& operator+=(const BigUint& o) {
    if (o.limbs_.size() > limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      carry += limbs_[i];
      if (i < o.limbs_.size()) carry += o.limbs_[i];
      limbs_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
    return *this;
  }

  bool fits_int64() const {
    for (std::size_t i = 1; i < limbs_.size(); ++i)
      if (limbs_[i] != 0) return false;
    return limbs_[0] <= static_cast<std::uint64_t>(INT64_MAX);
  }

  std::int64_t to_int64() const { return static_cast<std::int64_t>(limbs_[0]); }

 private:
  std::vector<std::uint64_t> limbs_;  // little-endian
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-pair binomials

namespace detail {

template <typename Value, typename Add>
Value binom_dp(const Word& u, const Word& v, Value zero, Value one, Add&& add) {
  const std::size_t m = v.size();
  std::vector<Value> row(m + 1, zero);
  row[0] = one;
  for (int a : u) {
    for (std::size_t j = m; j >= 1; --j) {
      if (v[j - 1] == a) row[j] = add(row[j], row[j - 1]);
      if (j == 1) break;
    }
  }
  return row[m];
}

}  // namespace detail

/// binom(u, v) exactly.  Falls back to arbitrary precision internally and
/// throws std::overflow_error only if the value itself exceeds 64 bits.
inline std::int64_t binom_words(const Word& u, const Word& v) {
  try {
    return detail::binom_dp<std::int64_t>(
        u, v, 0, 1, [](std::int64_t a, std::int64_t b) { return detail::checked_add(a, b); });
  } catch (const std::overflow_error&) {
    detail::BigUint r = detail::binom_dp<detail::BigUint>(
        u, v, detail::BigUint(0), detail::BigUint(1),
        [](detail::BigUint a, const detail::BigUint& b) {
          a += b;
          return a;
        });
    if (!r.fits_int64()) throw std::overflow_error("word binomial exceeds 64 bits");
    return r.to_int64();
  }
}

/// binom(u, v) mod q, q prime.
inline std::int64_t binom_words_mod(const Word& u, const Word& v, std::int64_t q) {
  if (!detail::is_prime(q)) throw std::invalid_argument("modulus must be prime");
  return detail::binom_dp<std::int64_t>(u, v, 0, 1 % q, [q](std::int64_t a, std::int64_t b) {
    std::int64_t s = a + b;
    return s >= q ? s - q : s;
  });
}

// ---------------------------------------------------------------------------
// Shared-prefix rows

namespace detail {

/// Trie over a fixed list of column words.  The subword-count DP walks it
/// once per row word: counts over all column-word prefixes are maintained
/// simultaneously, so shared prefixes are paid for once.
struct PrefixTrie {
  struct Node {
    int parent = -1;
    int letter = -1;
    int depth = 0;
  };

  std::vector<Node> nodes;
  std::vector<int> terminal;                  // column index -> node id
  std::vector<std::vector<int>> by_letter;    // letter -> nodes, deepest first
  int alphabet = 0;

  explicit PrefixTrie(const std::vector<Word>& words) {
    for (const Word& w : words)
      for (int d : w) {
        if (d < 0) throw std::invalid_argument("word digit is negative");
        alphabet = std::max(alphabet, d + 1);
      }
    nodes.push_back({});
    std::vector<std::vector<int>> children;  // node -> letter -> child
    children.emplace_back(static_cast<std::size_t>(alphabet), -1);
    terminal.reserve(words.size());
    for (const Word& w : words) {
      int cur = 0;
      for (int d : w) {
        int& slot = children[static_cast<std::size_t>(cur)][static_cast<std::size_t>(d)];
        if (slot < 0) {
          slot = static_cast<int>(nodes.size());
          nodes.push_back({cur, d, nodes[static_cast<std::size_t>(cur)].depth + 1});
          children.emplace_back(static_cast<std::size_t>(alphabet), -1);
        }
        cur = slot;
      }
      terminal.push_back(cur);
    }
    by_letter.assign(static_cast<std::size_t>(alphabet), {});
    // Deepest nodes first so each update reads its parent's value from
    // before the current row letter was applied.
    std::vector<int> order(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [this](int a, int b) {
      return nodes[static_cast<std::size_t>(a)].depth > nodes[static_cast<std::size_t>(b)].depth;
    });
    for (int id : order)
      if (id != 0)
        by_letter[static_cast<std::size_t>(nodes[static_cast<std::size_t>(id)].letter)].push_back(id);
  }

  template <typename Value, typename Add>
  std::vector<Value> counts(const Word& u, Value zero, Value one, Add&& add) const {
    std::vector<Value> acc(nodes.size(), zero);
    acc[0] = one;
    for (int a : u) {
      if (a < 0 || a >= alphabet) continue;  // letter absent from every column word
      for (int id : by_letter[static_cast<std::size_t>(a)]) {
        const int parent = nodes[static_cast<std::size_t>(id)].parent;
        acc[static_cast<std::size_t>(id)] =
            add(acc[static_cast<std::size_t>(id)], acc[static_cast<std::size_t>(parent)]);
      }
    }
    return acc;
  }
};

}  // namespace detail

/// binom(u, vs[j]) for every j, exactly.  Throws std::overflow_error if any
/// intermediate prefix count exceeds 64 bits.
inline std::vector<std::int64_t> binom_row(const Word& u, const std::vector<Word>& vs) {
  detail::PrefixTrie trie(vs);
  std::vector<std::int64_t> acc = trie.counts<std::int64_t>(
      u, 0, 1, [](std::int64_t a, std::int64_t b) { return detail::checked_add(a, b); });
  std::vector<std::int64_t> out;
  out.reserve(vs.size());
  for (int id : trie.terminal) out.push_back(acc[static_cast<std::size_t>(id)]);
  return out;
}

/// binom(u, vs[j]) mod q for every j, q prime.
inline std::vector<std::int64_t> binom_row_mod(const Word& u, const std::vector<Word>& vs,
                                               std::int64_t q) {
  if (!detail::is_prime(q)) throw std::invalid_argument("modulus must be prime");
  detail::PrefixTrie trie(vs);
  std::vector<std::int64_t> acc =
      trie.counts<std::int64_t>(u, 0, 1 % q, [q](std::int64_t a, std::int64_t b) {
        std::int64_t s = a + b;
        return s >= q ? s - q : s;
      });
  std::vector<std::int64_t> out;
  out.reserve(vs.size());
  for (int id : trie.terminal) out.push_back(acc[static_cast<std::size_t>(id)]);
  return out;
}

// ---------------------------------------------------------------------------
// Lucas

namespace detail {

// C(a, b) mod q for 0 <= a, b < q, q prime.
inline std::uint64_t small_binom_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num = mod_mul(num, (a - b + i) % q, q);
    den = mod_mul(den, i % q, q);
  }
  return mod_mul(num, mod_inv(den, q), q);
}

}  // namespace detail

/// C(m, n) mod p by Lucas' theorem: the digitwise product of the base-p
/// digit binomials.
inline std::int64_t lucas_binom_mod(std::int64_t m, std::int64_t n, std::int64_t p) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative binomial argument");
  if (!detail::is_prime(p)) throw std::invalid_argument("modulus must be prime");
  const std::uint64_t q = static_cast<std::uint64_t>(p);
  std::uint64_t mm = static_cast<std::uint64_t>(m);
  std::uint64_t nn = static_cast<std::uint64_t>(n);
  std::uint64_t r = 1 % q;
  while (mm > 0 || nn > 0) {
    const std::uint64_t md = mm % q, nd = nn % q;
    if (nd > md) return 0;
    r = detail::mod_mul(r, detail::small_binom_mod(md, nd, q), q);
    mm /= q;
    nn /= q;
  }
  return static_cast<std::int64_t>(r);
}

// ---------------------------------------------------------------------------
// Independent oracle

/// Counts occurrences of v as a scattered subword of u by explicit
/// enumeration of embeddings.  Deliberately shares no structure with the DP;
/// guarded to |u| <= 20.
inline std::int64_t brute_force_count(const Word& u, const Word& v) {
  if (u.size() > 20) throw std::invalid_argument("brute_force_count is guarded to |u| <= 20");
  const std::size_t n = u.size(), m = v.size();
  std::int64_t count = 0;
  // DFS over increasing position tuples.
  std::vector<std::size_t> stack;
  stack.reserve(m);
  std::size_t from = 0;
  for (;;) {
    if (stack.size() == m) {
      ++count;
      if (m == 0) return 1;
      from = stack.back() + 1;
      stack.pop_back();
      continue;
    }
    bool advanced = false;
    for (std::size_t t = from; t < n; ++t) {
      if (u[t] == v[stack.size()]) {
        stack.push_back(t);
        from = t + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      if (stack.empty()) return count;
      from = stack.back() + 1;
      stack.pop_back();
    }
  }
}

}  // namespace bertrand
