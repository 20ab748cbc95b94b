#pragma once

#include <gmpxx.h>

#include <string>

#include "aifm/error.hpp"

namespace aifm {

// All arithmetic in the library is exact. mpq_class keeps values in
// canonical reduced form with a positive denominator.
using Rat = mpq_class;

// mpq_class(p, q) does not reduce; use this for fractions built from
// runtime values.
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p" with optional leading '-'. Anything else (floats in
// particular) is rejected.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw Error("BadRational", "empty rational literal");
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '/' || c == '-';
    if (!ok) throw Error("BadRational", "invalid rational literal '" + s + "'");
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw Error("BadRational", "invalid rational literal '" + s + "'");
  if (q.get_den() == 0)
    throw Error("BadRational", "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// "p" when the denominator is 1, "p/q" otherwise.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline bool rat_is_nonneg_integer(const Rat& r) {
  return r.get_den() == 1 && r.get_num() >= 0;
}

// Requires an integer rational that fits in a long.
inline long rat_to_long(const Rat& r) {
  if (!rat_is_integer(r) || !r.get_num().fits_slong_p())
    throw Error("BadRational", "expected small integer, got " + rat_to_string(r));
  return r.get_num().get_si();
}

}  // namespace aifm
