#ifndef MPGCORE_RATIONAL_HPP
#define MPGCORE_RATIONAL_HPP

#include <gmpxx.h>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpgcore {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3", "-2" or "num/den" literals.
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rat q(s);
      q.canonicalize();
      return q;
    }
    Rat q(s.substr(0, slash) + "/" + s.substr(slash + 1));
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("bad rational literal: '" + s + "'");
  }
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline std::string vec_str(const RatVec& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool leq_componentwise(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool lt_strict_all(const RatVec& a, const RatVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] < b[i])) return false;
  return true;
}

/// Raised when a configurable enumeration budget is exhausted.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mpgcore

#endif
