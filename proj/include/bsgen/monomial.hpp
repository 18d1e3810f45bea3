#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "bsgen/error.hpp"

namespace bsgen {

/// Dense exponent vector. All monomials of one ring have the same length.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
    for (int e : exps_)
      if (e < 0) fail(ErrorCode::InvalidInput, "negative exponent in monomial");
  }

  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  std::span<const int> exponents() const { return exps_; }

  int degree() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
  }

  int degree_in(std::span<const int> vars) const {
    int d = 0;
    for (int v : vars) d += exps_[v];
    return d;
  }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0 && other.exps_[i] > 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
    return r;
  }

  /// Quotient; caller guarantees `other` divides `*this`.
  Monomial operator/(const Monomial& other) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    return r;
  }

  bool operator==(const Monomial&) const = default;
  /// Lexicographic on the raw vector; only used for containers, never as a term order.
  auto operator<=>(const Monomial&) const = default;

  std::size_t hash() const {
    std::size_t h = exps_.size();
    for (int e : exps_) h = h * 1000003u ^ static_cast<std::size_t>(e);
    return h;
  }

 private:
  std::vector<int> exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All exponent vectors of length n with total degree ≤ d, in graded order.
inline std::vector<std::vector<int>> exponents_up_to(std::size_t n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, d);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    return da < db;
  });
  return out;
}

}  // namespace bsgen
