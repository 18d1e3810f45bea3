#pragma once

#include <string>
#include <vector>

#include "bsgen/bsgen.hpp"

namespace bsgen::testing {

inline QInstance instance(const std::vector<std::string>& xs, const std::vector<std::string>& fs,
                          const std::vector<std::string>& params = {}, std::vector<int> v = {}) {
  return parse_instance(xs, fs, params, std::move(v));
}

/// Equality of polynomials that may live in different rings with shared names.
inline bool same(const QPoly& a, const QPoly& b) { return (a.map_to(b.ring()) - b).is_zero(); }

/// Parses `text` in the ring of `like`.
inline QPoly poly_in(const std::string& text, const QPoly& like) { return parse_poly(text, like.ring()); }

inline QPoly poly_in(const std::string& text, const QRingPtr& ring) { return parse_poly(text, ring); }

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace bsgen::testing
