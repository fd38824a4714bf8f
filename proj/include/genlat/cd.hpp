#pragma once

#include "genlat/poset.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace genlat {

using Rational = boost::multiprecision::cpp_rational;

// Homogeneous noncommutative polynomial in a, b (both of degree 1) with exact
// integer coefficients, keyed by word.
struct AbPoly {
  std::map<std::string, BigInt> t;

  static AbPoly zero() { return {}; }
  static AbPoly one() { return term("", 1); }
  static AbPoly term(std::string w, BigInt c) {
    AbPoly p;
    if (c != 0) p.t.emplace(std::move(w), std::move(c));
    return p;
  }

  bool is_zero() const { return t.empty(); }

  void add_term(const std::string& w, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }

  AbPoly& operator+=(const AbPoly& o) {
    for (const auto& [w, c] : o.t) add_term(w, c);
    return *this;
  }
  AbPoly& operator-=(const AbPoly& o) {
    for (const auto& [w, c] : o.t) add_term(w, -c);
    return *this;
  }
  friend AbPoly operator+(AbPoly x, const AbPoly& y) { return x += y; }
  friend AbPoly operator-(AbPoly x, const AbPoly& y) { return x -= y; }
  friend AbPoly operator*(const AbPoly& x, const AbPoly& y) {
    AbPoly r;
    for (const auto& [w1, c1] : x.t)
      for (const auto& [w2, c2] : y.t) r.add_term(w1 + w2, c1 * c2);
    return r;
  }
  friend bool operator==(const AbPoly& x, const AbPoly& y) { return x.t == y.t; }
  friend bool operator!=(const AbPoly& x, const AbPoly& y) { return !(x == y); }

  // Degree of the (homogeneous) polynomial; -1 when zero.
  int degree() const {
    int d = -1;
    for (const auto& [w, c] : t) {
      int wd = static_cast<int>(w.size());
      if (d >= 0 && wd != d) fail(ErrorCode::Internal, "inhomogeneous word polynomial");
      d = wd;
    }
    return d;
  }

  // Substitute numeric values for a and b.
  BigInt eval(const BigInt& a, const BigInt& b) const {
    BigInt total = 0;
    for (const auto& [w, c] : t) {
      BigInt prod = c;
      for (char ch : w) prod *= (ch == 'a' ? a : b);
      total += prod;
    }
    return total;
  }

  std::string str() const;
};

// Polynomial in c (degree 1) and d (degree 2), keyed by word; map order is
// the canonical print order since words compare with c before d.
struct CdPoly {
  std::map<std::string, BigInt> t;

  static CdPoly zero() { return {}; }
  static CdPoly one() { return term("", 1); }
  static CdPoly term(std::string w, BigInt c) {
    CdPoly p;
    if (c != 0) p.t.emplace(std::move(w), std::move(c));
    return p;
  }

  bool is_zero() const { return t.empty(); }

  static int word_degree(const std::string& w) {
    int d = 0;
    for (char ch : w) d += (ch == 'd' ? 2 : 1);
    return d;
  }

  int degree() const {
    int d = -1;
    for (const auto& [w, c] : t) {
      int wd = word_degree(w);
      if (d >= 0 && wd != d) fail(ErrorCode::Internal, "inhomogeneous word polynomial");
      d = wd;
    }
    return d;
  }

  void add_term(const std::string& w, const BigInt& c) {
    if (c == 0) return;
    auto [it, fresh] = t.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }

  CdPoly& operator+=(const CdPoly& o) {
    for (const auto& [w, c] : o.t) add_term(w, c);
    return *this;
  }
  CdPoly& operator-=(const CdPoly& o) {
    for (const auto& [w, c] : o.t) add_term(w, -c);
    return *this;
  }
  friend CdPoly operator+(CdPoly x, const CdPoly& y) { return x += y; }
  friend CdPoly operator-(CdPoly x, const CdPoly& y) { return x -= y; }
  friend CdPoly operator*(const CdPoly& x, const CdPoly& y) {
    CdPoly r;
    for (const auto& [w1, c1] : x.t)
      for (const auto& [w2, c2] : y.t) r.add_term(w1 + w2, c1 * c2);
    return r;
  }
  friend bool operator==(const CdPoly& x, const CdPoly& y) { return x.t == y.t; }
  friend bool operator!=(const CdPoly& x, const CdPoly& y) { return !(x == y); }

  std::string str() const;
};

namespace detail {

// Render a word with runs collapsed to powers: "ccc" -> "c^3", "dcc" -> "dc^2".
inline std::string collapse_runs(const std::string& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out += w[i];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

inline std::string word_poly_str(const std::map<std::string, BigInt>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string word = collapse_runs(w);
    if (word.empty())
      out += mag.str();
    else {
      if (mag != 1) out += mag.str();
      out += word;
    }
  }
  return out;
}

}  // namespace detail

inline std::string AbPoly::str() const { return detail::word_poly_str(t); }
inline std::string CdPoly::str() const { return detail::word_poly_str(t); }

// Expansion of a cd-word under c = a+b, d = ab+ba.
inline AbPoly expand_cd_word(const std::string& w) {
  static const AbPoly c_exp = AbPoly::term("a", 1) + AbPoly::term("b", 1);
  static const AbPoly d_exp = AbPoly::term("ab", 1) + AbPoly::term("ba", 1);
  AbPoly r = AbPoly::one();
  for (char ch : w) r = r * (ch == 'c' ? c_exp : d_exp);
  return r;
}

inline AbPoly expand_cd(const CdPoly& p) {
  AbPoly r;
  for (const auto& [w, c] : p.t) {
    AbPoly e = expand_cd_word(w);
    for (auto& [ew, ec] : e.t) r.add_term(ew, ec * c);
  }
  return r;
}

// All words in c, d of a given degree, in map order.
inline std::vector<std::string> cd_words_of_degree(int degree) {
  std::vector<std::string> out;
  std::string cur;
  auto rec = [&](auto&& self, int rem) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    cur += 'c';
    self(self, rem - 1);
    cur.pop_back();
    if (rem >= 2) {
      cur += 'd';
      self(self, rem - 2);
      cur.pop_back();
    }
  };
  rec(rec, degree);
  std::sort(out.begin(), out.end());
  return out;
}

// The chain-weight polynomial: over all chains of the open interval, position
// i contributes b when some chain element has rank i and a-b otherwise.
inline AbPoly ab_index(const FinitePoset& P) {
  auto mins = P.minimal_elements();
  auto maxs = P.maximal_elements();
  if (mins.size() != 1 || maxs.size() != 1)
    fail(ErrorCode::NoBounds, "poset does not have unique minimum and maximum");
  int bot = mins[0], top = maxs[0];
  if (bot == top) return AbPoly::one();

  auto h = P.heights();
  for (int x = 0; x < P.size(); ++x)
    for (int y : P.upper_covers(x))
      if (h[y] != h[x] + 1)
        fail(ErrorCode::NotGraded, "cover " + P.label(x) + " < " + P.label(y) +
                                       " skips a rank level");
  const int n = h[top] - 1;  // ab-index degree
  if (n == 0) return AbPoly::one();

  std::vector<AbPoly> ab_pow(n + 1);  // (a-b)^k
  ab_pow[0] = AbPoly::one();
  AbPoly amb = AbPoly::term("a", 1) + AbPoly::term("b", -1);
  for (int k = 1; k <= n; ++k) ab_pow[k] = ab_pow[k - 1] * amb;
  const AbPoly bvar = AbPoly::term("b", 1);

  // suffix[x]: weights of positions rank(x)+1..n over all chains upward from x
  std::vector<int> proper;
  for (int x = 0; x < P.size(); ++x)
    if (x != bot && x != top) proper.push_back(x);
  std::sort(proper.begin(), proper.end(), [&](int x, int y) { return h[x] > h[y]; });

  std::vector<AbPoly> suffix(P.size());
  for (int x : proper) {
    AbPoly acc = ab_pow[n - h[x]];
    for (int y : proper) {
      if (h[y] <= h[x] || !P.lt(x, y)) continue;
      acc += ab_pow[h[y] - h[x] - 1] * bvar * suffix[y];
    }
    suffix[x] = std::move(acc);
  }

  AbPoly psi = ab_pow[n];
  for (int x : proper) psi += ab_pow[h[x] - 1] * bvar * suffix[x];
  return psi;
}

// Express an ab-polynomial in c and d by solving the linear system over the
// expansions of all cd-words of its degree; the expansions are linearly
// independent, so a solution is unique when it exists.
inline CdPoly cd_index(const AbPoly& psi) {
  int n = psi.degree();
  if (n <= 0) return psi.is_zero() ? CdPoly::zero() : CdPoly::term("", psi.t.begin()->second);

  std::vector<std::string> words = cd_words_of_degree(n);
  std::vector<AbPoly> expansions;
  expansions.reserve(words.size());
  std::map<std::string, std::size_t> row_of;
  for (const auto& w : words) {
    expansions.push_back(expand_cd_word(w));
    for (const auto& [aw, c] : expansions.back().t) row_of.emplace(aw, row_of.size());
  }
  for (const auto& [aw, c] : psi.t)
    if (!row_of.count(aw))
      fail(ErrorCode::NotCd, "no cd-expression exists: stray word " + aw);

  const std::size_t rows = row_of.size(), cols = words.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [aw, c] : expansions[j].t) m[row_of[aw]][j] = Rational(c);
  for (const auto& [aw, c] : psi.t) m[row_of[aw]][cols] = Rational(c);

  std::vector<std::size_t> pivot_row(cols, SIZE_MAX);
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    std::size_t p = r;
    while (p < rows && m[p][j] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = m[r][j];
    for (std::size_t k = j; k <= cols; ++k) m[r][k] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][j] == 0) continue;
      Rational f = m[i][j];
      for (std::size_t k = j; k <= cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_row[j] = r++;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0)
      fail(ErrorCode::NotCd, "no cd-expression exists for " + psi.str());

  CdPoly out;
  for (std::size_t j = 0; j < cols; ++j) {
    if (pivot_row[j] == SIZE_MAX) continue;
    const Rational& v = m[pivot_row[j]][cols];
    if (denominator(v) != 1)
      fail(ErrorCode::Internal, "cd-coefficient is not an integer");
    out.add_term(words[j], BigInt(numerator(v)));
  }
  if (expand_cd(out) != psi) fail(ErrorCode::NotCd, "no cd-expression exists for " + psi.str());
  return out;
}

inline CdPoly cd_index(const FinitePoset& P) { return cd_index(ab_index(P)); }

struct CdCompareResult {
  bool leq;
  std::string witness;  // violating word when leq is false
};

// Coefficientwise comparison of p1 * c^pad against p2.
inline CdCompareResult cd_compare(const CdPoly& p1, const CdPoly& p2, int pad) {
  CdPoly lhs = p1 * CdPoly::term(std::string(pad, 'c'), 1);
  int d1 = lhs.degree(), d2 = p2.degree();
  if (d1 >= 0 && d2 >= 0 && d1 != d2)
    fail(ErrorCode::DegreeMismatch, "comparing degree " + std::to_string(d1) +
                                        " against degree " + std::to_string(d2));
  std::map<std::string, BigInt> diff;
  for (const auto& [w, c] : p2.t) diff[w] += c;
  for (const auto& [w, c] : lhs.t) diff[w] -= c;
  for (const auto& [w, c] : diff)
    if (c < 0) return {false, w.empty() ? "1" : w};
  return {true, ""};
}

// Parse the canonical print form, e.g. "c^3 + 2cd + 3dc" or "1".
inline CdPoly parse_cd(const std::string& text) {
  CdPoly out;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && text[i] == ' ') ++i; };
  int sign = 1;
  skip_ws();
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    sign = text[i] == '-' ? -1 : 1;
    ++i;
  }
  while (true) {
    skip_ws();
    if (i >= text.size()) fail(ErrorCode::ParseError, "expected a term in: " + text);
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    std::string word;
    while (i < text.size() && (text[i] == 'c' || text[i] == 'd')) {
      char ch = text[i++];
      int rep = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::string exp;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) exp += text[i++];
        if (exp.empty()) fail(ErrorCode::ParseError, "missing exponent in: " + text);
        rep = std::stoi(exp);
      }
      word.append(static_cast<std::size_t>(rep), ch);
    }
    if (digits.empty() && word.empty())
      fail(ErrorCode::ParseError, "unreadable term at position " + std::to_string(i) + " in: " + text);
    BigInt coeff = digits.empty() ? BigInt(1) : BigInt(digits);
    out.add_term(word, sign * coeff);
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == '+') sign = 1;
    else if (text[i] == '-') sign = -1;
    else fail(ErrorCode::ParseError, "expected + or - at position " + std::to_string(i) + " in: " + text);
    ++i;
  }
  return out;
}

}  // namespace genlat
