#pragma once

#include <compare>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "carleson/rational.hpp"

namespace carleson {

// Exponent vector in Z_{>=0}^k.  Indexes monomials, sigma powers and
// derivative orders.  Comparison is lexicographic so that std::map keyed by
// MultiIndex iterates in canonical term order.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int k) : e_(k, 0) {
    if (k < 0) throw std::invalid_argument("MultiIndex: negative length");
  }
  MultiIndex(std::initializer_list<int> init) : e_(init) { validate(); }
  explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) { validate(); }

  static MultiIndex unit(int k, int i, int value = 1) {
    MultiIndex a(k);
    a.e_.at(i) = value;
    return a;
  }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[i]; }
  int& operator[](int i) { return e_[i]; }
  const std::vector<int>& exps() const { return e_; }

  // |alpha|
  int order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

  // entrywise partial order
  bool leq(const MultiIndex& b) const {
    for (int i = 0; i < size(); ++i)
      if (e_[i] > b.e_[i]) return false;
    return true;
  }

  MultiIndex plus(const MultiIndex& b) const {
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }
  MultiIndex minus(const MultiIndex& b) const {
    MultiIndex r = *this;
    for (int i = 0; i < size(); ++i) {
      r.e_[i] -= b.e_[i];
      if (r.e_[i] < 0) throw std::invalid_argument("MultiIndex: negative difference");
    }
    return r;
  }

  // alpha! = prod alpha_i!
  Rational fact() const {
    Rational f(1);
    for (int a : e_) f *= factorial(a);
    return f;
  }

  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) = default;

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

 private:
  void validate() const {
    for (int a : e_)
      if (a < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }
  std::vector<int> e_;
};

// All multi-indices of the given length with |alpha| == order, in
// lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int length, int order);

// All alpha <= gamma entrywise, in lexicographic order.
std::vector<MultiIndex> multi_indices_below(const MultiIndex& gamma);

}  // namespace carleson
