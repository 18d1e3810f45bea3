#pragma once

#include <string>
#include <vector>

#include "bsgen/instance.hpp"

namespace bsgen {

inline std::vector<std::string> default_x_names(std::size_t n) {
  if (n == 1) return {"x"};
  std::vector<std::string> r;
  for (std::size_t i = 1; i <= n; ++i) r.push_back("x" + std::to_string(i));
  return r;
}

/// Name of the coefficient of x^α in f_j: "a_j_α1_…_αn".
inline std::string family_param_name(std::size_t j, const std::vector<int>& alpha) {
  std::string s = "a_" + std::to_string(j);
  for (int e : alpha) s += "_" + std::to_string(e);
  return s;
}

/// f_j = Σ_{|α| ≤ d} a_{α,j} x^α with independent parameters, m = p·C(n+d, d).
inline QInstance generic_family(std::size_t n, std::size_t p, int d, std::vector<int> v = {}) {
  if (n < 1 || p < 1 || d < 0) fail(ErrorCode::InvalidInput, "generic_family needs n, p ≥ 1 and d ≥ 0");
  auto xs = default_x_names(n);
  auto alphas = exponents_up_to(n, d);
  std::vector<std::string> as;
  for (std::size_t j = 1; j <= p; ++j)
    for (const auto& al : alphas) as.push_back(family_param_name(j, al));
  auto vars = VarRegistry::make(xs, p, as);
  auto ring = instance_ring(RationalField{}, vars, true);
  std::vector<QPoly> fs;
  std::size_t k = 0;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<QPoly::Term> ts;
    for (const auto& al : alphas) {
      Monomial m(ring->nvars());
      for (std::size_t i = 0; i < n; ++i) m[i] = al[i];
      m[n + p + k++] = 1;
      ts.push_back({std::move(m), Rational(1)});
    }
    fs.push_back(QPoly::from_terms(ring, std::move(ts)));
  }
  return make_instance(RationalField{}, vars, fs, std::move(v), true);
}

}  // namespace bsgen
