#pragma once

// Finite digit words, most-significant digit first.  The empty word is the
// empty vector.  Genealogical (radix) order sorts first by length, then
// lexicographically by digit value; it is the order in which numeration
// languages are enumerated.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bertrand {

using Word = std::vector<int>;

inline bool genealogical_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Word followed by `zeros` trailing zero digits.
inline Word padded(Word w, int zeros) {
  w.insert(w.end(), static_cast<std::size_t>(zeros), 0);
  return w;
}

inline Word appended(Word w, int digit) {
  w.push_back(digit);
  return w;
}

/// Renders a word as text.  Single-character digits are concatenated
/// ("1010"); anything wider is dot-separated ("10.3.0").  The empty word
/// renders as the empty string.
inline std::string word_to_string(const Word& w) {
  bool wide = false;
  for (int d : w) {
    if (d < 0) throw std::invalid_argument("word digit is negative");
    if (d > 9) wide = true;
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i > 0) out += '.';
    out += std::to_string(w[i]);
  }
  return out;
}

/// Inverse of word_to_string.  Accepts plain digit strings ("1010"),
/// dot- or comma-separated digit lists ("10.3.0"), and "" or "eps" for the
/// empty word.
inline Word parse_word(const std::string& text) {
  if (text.empty() || text == "eps") return {};
  Word w;
  if (text.find('.') != std::string::npos || text.find(',') != std::string::npos) {
    std::string cur;
    for (char c : text) {
      if (c == '.' || c == ',') {
        if (cur.empty()) throw std::invalid_argument("empty digit in word: " + text);
        w.push_back(std::stoi(cur));
        cur.clear();
      } else if (c >= '0' && c <= '9') {
        cur += c;
      } else if (c != ' ') {
        throw std::invalid_argument("bad character in word: " + text);
      }
    }
    if (cur.empty()) throw std::invalid_argument("trailing separator in word: " + text);
    w.push_back(std::stoi(cur));
    return w;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad character in word: " + text);
    w.push_back(c - '0');
  }
  return w;
}

}  // namespace bertrand
