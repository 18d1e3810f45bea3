#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "bsgen/monomial.hpp"

namespace bsgen {

/// A monomial order. Block orders compare the front block by
/// degree-reverse-lex first and fall through to the back order on ties.
class TermOrder {
 public:
  enum class Kind { Lex, DegRevLex, Block, Weighted };

  static TermOrder lex() { return TermOrder(Kind::Lex); }
  static TermOrder degrevlex() { return TermOrder(Kind::DegRevLex); }

  static TermOrder block(std::vector<int> front, TermOrder back) {
    TermOrder o(Kind::Block);
    o.vars_ = std::move(front);
    o.next_ = std::make_shared<const TermOrder>(std::move(back));
    return o;
  }

  /// Weight vector compared first, ties broken by `tie`. Weights must be
  /// non-negative so the order stays a well-order.
  static TermOrder weighted(std::vector<long> weights, TermOrder tie) {
    for (long w : weights)
      if (w < 0) fail(ErrorCode::InvalidInput, "weighted term order needs non-negative weights");
    TermOrder o(Kind::Weighted);
    o.weights_ = std::move(weights);
    o.next_ = std::make_shared<const TermOrder>(std::move(tie));
    return o;
  }

  Kind kind() const { return kind_; }
  const std::vector<int>& front_block() const { return vars_; }
  const TermOrder* next() const { return next_.get(); }

  /// Negative if a < b, zero if equal, positive if a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::DegRevLex: {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = a.size(); i-- > 0;)
          if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
      }
      case Kind::Block: {
        int da = a.degree_in(vars_), db = b.degree_in(vars_);
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t k = vars_.size(); k-- > 0;) {
          int v = vars_[k];
          if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
        }
        return next_->compare(a, b);
      }
      case Kind::Weighted: {
        long wa = 0, wb = 0;
        for (std::size_t i = 0; i < weights_.size() && i < a.size(); ++i) {
          wa += weights_[i] * a[i];
          wb += weights_[i] * b[i];
        }
        if (wa != wb) return wa > wb ? 1 : -1;
        return next_->compare(a, b);
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// True when the outermost block consists exactly of (a superset of) `vars`,
  /// i.e. basis elements free of `vars` generate the elimination ideal.
  bool eliminates(const std::vector<int>& vars) const {
    if (kind_ != Kind::Block) return vars.empty();
    return std::all_of(vars.begin(), vars.end(), [&](int v) {
      return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
    });
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Lex: return "lex";
      case Kind::DegRevLex: return "degrevlex";
      case Kind::Block: {
        std::string s = "block([";
        for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + std::to_string(vars_[i]);
        return s + "]," + next_->describe() + ")";
      }
      case Kind::Weighted: {
        std::string s = "weighted([";
        for (std::size_t i = 0; i < weights_.size(); ++i) s += (i ? "," : "") + std::to_string(weights_[i]);
        return s + "]," + next_->describe() + ")";
      }
    }
    return "";
  }

 private:
  explicit TermOrder(Kind k) : kind_(k) {}

  Kind kind_;
  std::vector<int> vars_;
  std::vector<long> weights_;
  std::shared_ptr<const TermOrder> next_;
};

}  // namespace bsgen
