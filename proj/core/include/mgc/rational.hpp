#ifndef MGC_RATIONAL_HPP
#define MGC_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mgc {

/// Exact arbitrary-precision rational used for every coefficient in the library.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace mgc

#endif  // MGC_RATIONAL_HPP
