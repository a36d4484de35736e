#include "carleson/poly.hpp"

#include <algorithm>

namespace carleson {

std::vector<MultiIndex> multi_indices_of_order(int length, int order) {
  std::vector<MultiIndex> out;
  if (length == 0) {
    if (order == 0) out.emplace_back(0);
    return out;
  }
  MultiIndex cur(length);
  // lexicographic = first coordinate varies slowest, ascending
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == length - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, order);
  return out;
}

std::vector<MultiIndex> multi_indices_below(const MultiIndex& gamma) {
  std::vector<MultiIndex> out;
  MultiIndex cur(gamma.size());
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == gamma.size()) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= gamma[pos]; ++v) {
      cur[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Poly Poly::variable(int nvars, int i) {
  Poly p(nvars);
  p.add_term(MultiIndex::unit(nvars, i), Rational(1));
  return p;
}

Poly Poly::monomial(const MultiIndex& a, const Rational& c) {
  Poly p(a.size());
  p.add_term(a, c);
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a.order());
  return d;
}

int Poly::degree_in(int i) const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a[i]);
  return d;
}

bool Poly::is_homogeneous(int j) const {
  for (const auto& [a, c] : terms_)
    if (a.order() != j) return false;
  return true;
}

void Poly::add_term(const MultiIndex& a, const Rational& c) {
  if (a.size() != nvars_)
    throw std::invalid_argument("Poly::add_term: index length mismatch");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational Poly::coefficient(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<MultiIndex> Poly::leading_monomial() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& b) {
  check_var_count(b);
  for (const auto& [a, c] : b.terms_) add_term(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& b) {
  check_var_count(b);
  for (const auto& [a, c] : b.terms_) add_term(a, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_var_count(b);
  Poly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea.plus(eb), ca * cb);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(nvars_);
  if (sgn(c) == 0) return r;
  for (const auto& [a, q] : terms_) r.terms_.emplace(a, q * c);
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly r = Poly::constant(nvars_, Rational(1));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Poly Poly::derivative(const MultiIndex& alpha) const {
  if (alpha.size() != nvars_)
    throw std::invalid_argument("Poly::derivative: index length mismatch");
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) {
    if (!alpha.leq(a)) continue;
    Rational f = c;
    MultiIndex b = a;
    for (int i = 0; i < nvars_; ++i) {
      for (int k = 0; k < alpha[i]; ++k) f *= (a[i] - k);
      b[i] = a[i] - alpha[i];
    }
    r.add_term(b, f);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("Poly::eval: point length mismatch");
  // cache powers per variable
  std::vector<std::vector<Rational>> pows(nvars_);
  for (int i = 0; i < nvars_; ++i) pows[i].push_back(Rational(1));
  Rational sum(0);
  for (const auto& [a, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i) {
      auto& pi = pows[i];
      while (static_cast<int>(pi.size()) <= a[i]) pi.push_back(pi.back() * point[i]);
      if (a[i] > 0) t *= pi[a[i]];
    }
    sum += t;
  }
  return sum;
}

double Poly::eval_double(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("Poly::eval_double: point length mismatch");
  double sum = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < a[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Poly Poly::substitute(int i, const Rational& value) const {
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) {
    Rational t = c;
    for (int k = 0; k < a[i]; ++k) t *= value;
    MultiIndex b = a;
    b[i] = 0;
    r.add_term(b, t);
  }
  return r;
}

Poly Poly::twist_vars(std::span<const int> theta) const {
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) {
    int s = 1;
    for (size_t i = 0; i < theta.size(); ++i)
      if (theta[i] < 0 && (a[static_cast<int>(i)] & 1)) s = -s;
    r.add_term(a, s < 0 ? Rational(-c) : c);
  }
  return r;
}

Poly Poly::embed(int new_nvars, std::span<const int> var_map) const {
  if (static_cast<int>(var_map.size()) != nvars_)
    throw std::invalid_argument("Poly::embed: map length mismatch");
  Poly r(new_nvars);
  for (const auto& [a, c] : terms_) {
    MultiIndex b(new_nvars);
    for (int i = 0; i < nvars_; ++i) b[var_map[i]] = a[i];
    r.add_term(b, c);
  }
  return r;
}

Poly Poly::drop_vars(std::span<const int> keep_map, int new_nvars) const {
  Poly r(new_nvars);
  for (const auto& [a, c] : terms_) {
    MultiIndex b(new_nvars);
    for (int i = 0; i < nvars_; ++i) {
      if (keep_map[i] >= 0) {
        b[keep_map[i]] = a[i];
      } else if (a[i] != 0) {
        throw std::invalid_argument("Poly::drop_vars: dropped variable occurs");
      }
    }
    r.add_term(b, c);
  }
  return r;
}

Poly Poly::coefficient_of(int i, int k) const {
  Poly r(nvars_);
  for (const auto& [a, c] : terms_) {
    if (a[i] != k) continue;
    MultiIndex b = a;
    b[i] = 0;
    r.add_term(b, c);
  }
  return r;
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  throw std::logic_error("poly_arith: bad op");
}

Poly poly_at_polys(const Poly& p, const std::vector<Poly>& args) {
  if (static_cast<int>(args.size()) != p.nvars())
    throw std::invalid_argument("poly_at_polys: argument count mismatch");
  if (args.empty()) throw std::invalid_argument("poly_at_polys: needs arguments");
  const int nv = args[0].nvars();
  std::vector<std::vector<Poly>> pows(args.size());
  for (size_t i = 0; i < args.size(); ++i)
    pows[i].push_back(Poly::constant(nv, Rational(1)));
  Poly sum(nv);
  for (const auto& [a, c] : p.terms()) {
    Poly t = Poly::constant(nv, c);
    for (int i = 0; i < p.nvars(); ++i) {
      auto& pi = pows[i];
      while (static_cast<int>(pi.size()) <= a[i]) pi.push_back(pi.back() * args[i]);
      if (a[i] > 0) t = t * pi[a[i]];
    }
    sum += t;
  }
  return sum;
}

std::optional<std::vector<Rational>> find_nonvanishing_witness(const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  const int n = p.nvars();
  const int d = p.total_degree();
  if (n == 0) return std::vector<Rational>{};
  // value sequence 0, 1, -1, 2, -2, ... up to +-(ceil(D/2)+1)
  const int half = d / 2 + (d % 2) + 1;
  std::vector<Rational> values;
  values.emplace_back(0);
  for (int v = 1; v <= half; ++v) {
    values.emplace_back(v);
    values.emplace_back(-v);
  }
  std::vector<int> idx(n, 0);
  std::vector<Rational> point(n, Rational(0));
  while (true) {
    for (int i = 0; i < n; ++i) point[i] = values[idx[i]];
    if (sgn(p.eval(point)) != 0) return point;
    int pos = n - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(values.size())) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  // the grid has at least d+2 distinct values per coordinate, so a nonzero
  // polynomial cannot have vanished everywhere; reaching this point means
  // p == 0, contradicting the early return
  throw std::logic_error("find_nonvanishing_witness: grid exhausted on nonzero input");
}

}  // namespace carleson
