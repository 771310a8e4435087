#pragma once

// Shared vocabulary: exact rationals, ids, and the exception hierarchy.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dhs {

using Rational = mpq_class;
using VertexId = int;
using EdgeId = int;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// The short-cycle parameter of the sparsity machinery. The solver only
// supports this value; the cactus bound and the basic row accept others.
inline constexpr int kShortCycleLength = 5;

// An invariant of the algorithm was violated: always a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// The caller handed in something outside an operation's domain.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exhaustive routines refuse inputs beyond their guarded size.
struct SizeLimitError : std::length_error {
  using std::length_error::length_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define DHS_ENSURE(cond, msg)                                              \
  do {                                                                     \
    if (!(cond)) throw ::dhs::InternalError(std::string("invariant: ") + \
                                            (msg));                        \
  } while (false)

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Canonical lowest-terms text, denominator 1 omitted.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw ParseError("bad rational '" + std::string(text) + "'");
  }
  Rational r;
  if (r.set_str(std::string(text), 10) != 0)
    throw ParseError("bad rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator");
  r.canonicalize();
  return r;
}

inline double log_base(double x, double base) {
  return std::log(x) / std::log(base);
}

// Size guarantee for the small-diamond search on an n-vertex graph.
inline double small_diamond_bound(std::size_t n) {
  if (n < 2) return 8.0;
  return 6.0 * log_base(static_cast<double>(n), 1.5) + 8.0;
}

// Per-row ratio guaranteed by the O(log n) primal-dual algorithm.
inline double logn_row_bound(std::size_t n) {
  if (n < 2) return 16.0;
  return 12.0 * log_base(static_cast<double>(n), 1.5) + 16.0;
}

inline constexpr int kNineRowBound = 9;

// Compares an exact rational against a real bound. The bounds in play are
// far from any rational of small height, so a relative epsilon is enough.
inline bool rational_le_real(const Rational& lhs, double rhs) {
  return lhs.get_d() <= rhs * (1.0 + 1e-12) + 1e-12;
}

}  // namespace dhs
