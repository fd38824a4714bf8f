#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace genlat {

using BigInt = boost::multiprecision::cpp_int;

enum class ErrorCode {
  NonClosure,
  GeneratorIsBottom,
  DuplicateGenerator,
  TooLarge,
  NotAbove,
  BadIndex,
  HostMismatch,
  BudgetExceeded,
  ParseError,
  NotALattice,
  DisconnectedGeneratorLabel,
  NotJoinPreserving,
  GeneratorImageViolation,
  NotSurjective,
  NotAZipper,
  ZipperNotFound,
  MethodInapplicable,
  NotAnOrderMinor,
  NotGraded,
  NoBounds,
  DegreeMismatch,
  NoJoin,
  HasParallel,
  NotCd,
  Internal,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonClosure: return "NonClosure";
    case ErrorCode::GeneratorIsBottom: return "GeneratorIsBottom";
    case ErrorCode::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotAbove: return "NotAbove";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::HostMismatch: return "HostMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::DisconnectedGeneratorLabel: return "DisconnectedGeneratorLabel";
    case ErrorCode::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorCode::GeneratorImageViolation: return "GeneratorImageViolation";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotAZipper: return "NotAZipper";
    case ErrorCode::ZipperNotFound: return "ZipperNotFound";
    case ErrorCode::MethodInapplicable: return "MethodInapplicable";
    case ErrorCode::NotAnOrderMinor: return "NotAnOrderMinor";
    case ErrorCode::NotGraded: return "NotGraded";
    case ErrorCode::NoBounds: return "NoBounds";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::NoJoin: return "NoJoin";
    case ErrorCode::HasParallel: return "HasParallel";
    case ErrorCode::NotCd: return "NotCd";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code), detail_(detail) {}
  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

// Dense polynomial in one variable q with exact integer coefficients.
struct QPoly {
  std::vector<BigInt> c;

  QPoly() = default;
  explicit QPoly(BigInt constant) : c{std::move(constant)} { trim(); }

  static QPoly zero() { return QPoly{}; }
  static QPoly one() { return QPoly(BigInt(1)); }
  static QPoly q() {
    QPoly p;
    p.c = {BigInt(0), BigInt(1)};
    return p;
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const BigInt& coeff(std::size_t k) const {
    static const BigInt z = 0;
    return k < c.size() ? c[k] : z;
  }

  QPoly& operator+=(const QPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  QPoly& operator-=(const QPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    QPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  QPoly pow(std::uint64_t e) const {
    QPoly r = one(), base = *this;
    while (e) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  BigInt eval(const BigInt& x) const {
    BigInt r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  // Canonical ascending form, e.g. "1 + 4q + 4q^2 + q^3".
  std::string str() const {
    if (c.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      BigInt a = c[k];
      bool neg = a < 0;
      if (neg) a = -a;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      bool unit = (a == 1) && k > 0;
      if (!unit) out += a.str();
      if (k >= 1) {
        out += "q";
        if (k >= 2) out += "^" + std::to_string(k);
      }
    }
    if (first) return "0";
    return out;
  }
};

// (1+q)^k helper, ubiquitous in rank generating functions.
inline QPoly one_plus_q_pow(std::uint64_t k) {
  QPoly b;
  b.c = {BigInt(1), BigInt(1)};
  return b.pow(k);
}

}  // namespace genlat
