#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bsgen/groebner.hpp"

namespace bsgen {

// ---------------------------------------------------------------------------
// Recursive (univariate-in-one-variable) views of multivariate polynomials.

/// Coefficients of p viewed as a polynomial in `var`: degree → coefficient.
inline std::map<int, QPoly> coefficients_in(const QPoly& p, int var) {
  std::map<int, std::vector<QPoly::Term>> buckets;
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    int e = m[var];
    m[var] = 0;
    buckets[e].push_back({std::move(m), t.coeff});
  }
  std::map<int, QPoly> out;
  for (auto& [e, ts] : buckets) out.emplace(e, QPoly::from_terms(p.ring(), std::move(ts)));
  return out;
}

inline QPoly leading_coeff_in(const QPoly& p, int var) {
  if (p.is_zero()) return p;
  return coefficients_in(p, var).rbegin()->second;
}

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<QPoly> exact_quotient(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::InvalidInput, "division by the zero polynomial");
  auto d = divide(a, std::vector<QPoly>{b.with_ring(a.ring())});
  if (!d.remainder.is_zero()) return std::nullopt;
  return d.quotients[0];
}

inline QPoly exact_div(const QPoly& a, const QPoly& b) {
  auto q = exact_quotient(a, b);
  if (!q) fail(ErrorCode::InvalidInput, "inexact division " + a.to_string() + " / " + b.to_string());
  return *q;
}

/// Pseudo-remainder of a by b in `var`.
inline QPoly pseudo_remainder(QPoly a, const QPoly& b, int var) {
  const int db = b.degree_in(var);
  const QPoly lb = leading_coeff_in(b, var);
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    QPoly la = leading_coeff_in(a, var);
    Monomial shift(a.ring()->nvars());
    shift[var] = da - db;
    a = lb * a - (la * b).mul_term(Rational(1), shift);
  }
  return a;
}

inline QPoly poly_gcd(const QPoly& a, const QPoly& b);

/// Scales p to coprime integer coefficients with a positive leading coefficient.
inline QPoly integer_primitive(const QPoly& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational k(den, num);
  k.canonicalize();
  if (sgn(p.lc()) < 0) k = -k;
  return k == 1 ? p : p.scale(k);
}

/// gcd of the coefficients of p as a polynomial in `var`.
inline QPoly content_in(const QPoly& p, int var) {
  QPoly g(p.ring());
  for (const auto& [e, c] : coefficients_in(p, var)) {
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

inline QPoly primitive_part_in(const QPoly& p, int var) {
  if (p.is_zero()) return p;
  return exact_div(p, content_in(p, var));
}

/// Monic gcd over ℚ, by primitive remainder sequences on a recursive view.
inline QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return QPoly::one(a.ring());
  int var = -1;
  for (std::size_t i = 0; i < a.ring()->nvars() && var < 0; ++i)
    if (a.involves(static_cast<int>(i)) || b.involves(static_cast<int>(i))) var = static_cast<int>(i);
  if (!a.involves(var)) return poly_gcd(a, content_in(b, var));
  if (!b.involves(var)) return poly_gcd(content_in(a, var), b);
  QPoly ca = content_in(a, var), cb = content_in(b, var);
  QPoly c = poly_gcd(ca, cb);
  QPoly p = integer_primitive(exact_div(a, ca)), q = integer_primitive(exact_div(b, cb));
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
  while (true) {
    QPoly r = pseudo_remainder(p, q, var);
    if (r.is_zero()) break;
    if (!r.involves(var)) {
      q = QPoly::one(a.ring());
      break;
    }
    p = std::move(q);
    q = integer_primitive(primitive_part_in(r, var));
  }
  return (c * primitive_part_in(q, var)).monic();
}

inline QPoly poly_lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly(a.ring());
  return exact_div(a * b, poly_gcd(a, b)).monic();
}

// ---------------------------------------------------------------------------
// Factorization.

struct Factorization {
  Rational unit{1};
  std::vector<std::pair<QPoly, int>> factors;  // monic factors with multiplicities
  bool complete = true;                        // every factor certified irreducible

  QPoly expand(const QRingPtr& ring) const {
    QPoly r = QPoly::rational(ring, unit);
    for (const auto& [f, e] : factors) r *= f.pow(static_cast<unsigned>(e));
    return r;
  }
};

namespace detail {

inline std::vector<int> variables_of(const QPoly& p) {
  std::vector<int> vs;
  for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
    if (p.involves(static_cast<int>(i))) vs.push_back(static_cast<int>(i));
  return vs;
}

/// Integer coefficient list (index = degree) of a univariate polynomial, scaled to be primitive.
inline std::vector<Integer> integer_coeffs(const QPoly& p, int var) {
  int d = p.degree_in(var);
  std::vector<Rational> qs(d + 1, Rational(0));
  for (const auto& t : p.terms()) qs[t.mono[var]] = t.coeff;
  Integer l = 1;
  for (const auto& q : qs) {
    Integer den = q.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : qs) {
    Rational s = q * Rational(l);
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& c : out) c /= g;
  return out;
}

/// Positive divisors of n by trial division; nullopt when n is too large to enumerate.
inline std::optional<std::vector<Integer>> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> ds;
  if (n == 0) return ds;
  if (n > Integer("1000000000000")) return std::nullopt;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d * d != n) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline QPoly linear_factor(const QRingPtr& ring, int var, const Rational& root) {
  return QPoly::variable(ring, var) - QPoly::rational(ring, root);
}

/// Rational roots of a univariate polynomial by the rational root test. Sets
/// `exhaustive` to false when the candidate set was too large to enumerate.
inline std::vector<Rational> rational_roots(const QPoly& p, int var, bool* exhaustive = nullptr) {
  if (exhaustive) *exhaustive = true;
  auto c = integer_coeffs(p, var);
  std::vector<Rational> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low + 1 >= c.size()) return roots;
  auto ps = positive_divisors(c[low]);
  auto qs = positive_divisors(c.back());
  if (!ps || !qs) {
    if (exhaustive) *exhaustive = false;
    return roots;
  }
  std::set<Rational> found;
  for (const auto& pn : *ps)
    for (const auto& qd : *qs)
      for (int sign : {1, -1}) {
        Rational r(pn * sign, qd);
        r.canonicalize();
        if (found.count(r)) continue;
        Rational v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * r + Rational(c[i]);
        if (v == 0) found.insert(r);
      }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

/// Searches a monic quadratic factor of a univariate polynomial without rational
/// roots (Kronecker's method at the points 0, 1, −1).
inline std::optional<QPoly> quadratic_factor(const QPoly& p, int var, bool& exhaustive) {
  auto c = integer_coeffs(p, var);
  auto value = [&](long x) {
    Integer v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  };
  Integer v0 = value(0), v1 = value(1), vm = value(-1);
  auto d0 = positive_divisors(v0), d1 = positive_divisors(v1), dm = positive_divisors(vm);
  exhaustive = d0 && d1 && dm;
  if (!exhaustive) return std::nullopt;
  const auto& ring = p.ring();
  for (const auto& a : *d0)
    for (int sa : {1, -1})
      for (const auto& b : *d1)
        for (int sb : {1, -1})
          for (const auto& e : *dm)
            for (int se : {1, -1}) {
              // q(0) = A, q(1) = B, q(−1) = E  →  q = αx² + βx + A
              Rational A(a * sa), B(b * sb), E(e * se);
              Rational alpha = (B + E) / 2 - A;
              Rational beta = (B - E) / 2;
              if (sgn(alpha) <= 0) continue;
              QPoly q = QPoly::variable(ring, var, 2).scale(alpha) + QPoly::variable(ring, var).scale(beta) +
                        QPoly::rational(ring, A);
              if (exact_quotient(p, q)) return q.monic();
            }
  return std::nullopt;
}

/// Factors a squarefree univariate polynomial; returns (factors, all certified irreducible).
inline std::pair<std::vector<QPoly>, bool> factor_univariate_squarefree(const QPoly& p, int var) {
  std::vector<QPoly> out;
  QPoly rest = p.monic();
  bool certified = true;
  for (const auto& r : rational_roots(rest, var, &certified)) {
    QPoly lin = linear_factor(p.ring(), var, r);
    out.push_back(lin);
    rest = exact_div(rest, lin);
  }
  // Without linear factors, degree 4 and 5 are reducible iff a quadratic factor exists.
  while (certified && rest.degree_in(var) >= 4 && rest.degree_in(var) <= 5) {
    auto q = quadratic_factor(rest, var, certified);
    if (!q) break;
    out.push_back(*q);
    rest = exact_div(rest, *q).monic();
  }
  if (rest.degree_in(var) > 0) {
    if (rest.degree_in(var) > 5) certified = false;
    out.push_back(rest.monic());
  }
  return {out, certified};
}

/// Yun's squarefree decomposition of a polynomial primitive in `var`.
inline std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p, int var) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly dp = p.derivative(var);
  QPoly a = poly_gcd(p, dp);
  QPoly b = exact_div(p, a);
  QPoly c = exact_div(dp, a);
  QPoly d = c - b.derivative(var);
  int i = 1;
  while (!b.is_constant()) {
    QPoly g = poly_gcd(b, d);
    if (!g.is_constant()) out.emplace_back(g.monic(), i);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative(var);
    ++i;
  }
  return out;
}

/// Certified irreducibility for multivariate primitive squarefree pieces.
inline bool certified_irreducible(const QPoly& p) {
  if (p.total_degree() <= 1) return true;
  auto vs = variables_of(p);
  for (int v : vs) {
    if (p.degree_in(v) != 1) continue;
    // Linear in v and primitive with respect to v.
    if (content_in(p, v).is_constant()) return true;
  }
  return false;
}

inline void split_contents(const QPoly& p, std::vector<QPoly>& pieces) {
  if (p.is_constant()) return;
  for (int v : variables_of(p)) {
    QPoly c = content_in(p, v);
    if (!c.is_constant()) {
      split_contents(c, pieces);
      split_contents(exact_div(p, c), pieces);
      return;
    }
  }
  pieces.push_back(p.monic());
}

}  // namespace detail

/// Factorization over ℚ. Univariate inputs are factored completely up to degree 5
/// (rational roots plus Kronecker quadratic search); multivariate inputs are split by
/// contents and squarefree decomposition, and `complete` records whether every
/// factor is certified irreducible.
inline Factorization factor(const QPoly& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroInput, "factor of the zero polynomial");
  Factorization out;
  std::vector<QPoly> pieces;
  detail::split_contents(f.monic(), pieces);
  std::map<std::string, std::pair<QPoly, int>> merged;
  auto add = [&](const QPoly& g, int e) {
    auto key = g.to_string();
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, std::make_pair(g, e));
    else
      it->second.second += e;
  };
  for (const auto& piece : pieces) {
    auto vs = detail::variables_of(piece);
    int var = vs.front();
    for (const auto& [sq, mult] : detail::squarefree_decomposition(piece, var)) {
      if (detail::variables_of(sq).size() == 1) {
        auto [fs, certified] = detail::factor_univariate_squarefree(sq, detail::variables_of(sq).front());
        out.complete = out.complete && certified;
        for (const auto& g : fs) add(g, mult);
      } else {
        out.complete = out.complete && detail::certified_irreducible(sq);
        add(sq, mult);
      }
    }
  }
  for (auto& [key, fe] : merged) out.factors.push_back(fe);
  const auto& order = f.ring()->order;
  std::stable_sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) {
    if (a.first.total_degree() != b.first.total_degree()) return a.first.total_degree() < b.first.total_degree();
    return order.compare(a.first.lm(), b.first.lm()) < 0 ||
           (a.first.lm() == b.first.lm() && a.first.to_string() < b.first.to_string());
  });
  // Fix the unit so that unit·Π factors^e reproduces f exactly.
  out.unit = f.lc() / out.expand(f.ring()).lc();
  return out;
}

/// Product of the distinct irreducible factors.
inline QPoly squarefree_part(const QPoly& f) {
  auto fz = factor(f);
  QPoly r = QPoly::one(f.ring());
  for (const auto& [g, e] : fz.factors) r *= g;
  return r;
}

}  // namespace bsgen
