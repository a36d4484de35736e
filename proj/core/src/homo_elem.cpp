#include "carleson/homo_elem.hpp"

#include <algorithm>

namespace carleson {

Poly homo_reduce_body(const Poly& body, int n) {
  const int svar = n + 1;
  if (body.degree_in(svar) <= 1) return body;
  Poly usq(body.nvars());
  for (int i = 0; i < n; ++i)
    usq.add_term(MultiIndex::unit(body.nvars(), i, 2), Rational(1));
  Poly out(body.nvars());
  for (const auto& [a, c] : body.terms()) {
    const int e = a[svar];
    if (e <= 1) {
      out.add_term(a, c);
      continue;
    }
    MultiIndex b = a;
    b[svar] = e % 2;
    out += Poly::monomial(b, c) * usq.pow(e / 2);
  }
  return out;
}

HomoElem::HomoElem(int n, Poly body, int spow)
    : n_(n), body_(std::move(body)), spow_(spow) {
  if (spow < 0) throw std::invalid_argument("HomoElem: negative s power");
  if (body_.nvars() < n + 2)
    throw std::invalid_argument("HomoElem: body needs at least n+2 variables");
  normalize();
}

void HomoElem::normalize() {
  body_ = homo_reduce_body(body_, n_);
  if (body_.is_zero()) {
    spow_ = 0;
    return;
  }
  // cancel a common factor of s against the denominator
  while (spow_ > 0) {
    bool all = true;
    for (const auto& [a, c] : body_.terms())
      if (a[s_index()] == 0) { all = false; break; }
    if (!all) break;
    Poly shifted(body_.nvars());
    for (const auto& [a, c] : body_.terms()) {
      MultiIndex b = a;
      b[s_index()] -= 1;
      shifted.add_term(b, c);
    }
    body_ = std::move(shifted);
    --spow_;
  }
}

static void check_compatible(const HomoElem& a, const HomoElem& b) {
  if (a.uvars() != b.uvars() || a.nvars() != b.nvars())
    throw std::invalid_argument("HomoElem: layout mismatch");
}

HomoElem operator+(const HomoElem& a, const HomoElem& b) {
  check_compatible(a, b);
  const int m = std::max(a.spow(), b.spow());
  auto lift = [&](const HomoElem& x) {
    Poly s = Poly::monomial(MultiIndex::unit(x.nvars(), x.s_index(), m - x.spow()),
                            Rational(1));
    return x.body() * s;
  };
  return HomoElem(a.uvars(), lift(a) + lift(b), m);
}

HomoElem operator-(const HomoElem& a, const HomoElem& b) { return a + (-b); }

HomoElem operator*(const HomoElem& a, const HomoElem& b) {
  check_compatible(a, b);
  return HomoElem(a.uvars(), a.body() * b.body(), a.spow() + b.spow());
}

HomoElem HomoElem::pow(int k) const {
  if (k < 0) throw std::invalid_argument("HomoElem::pow: negative exponent");
  HomoElem r(n_, Poly::constant(body_.nvars(), Rational(1)), 0);
  HomoElem base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

bool operator==(const HomoElem& a, const HomoElem& b) {
  check_compatible(a, b);
  auto cross = [&](const HomoElem& x, int extra) {
    Poly s = Poly::monomial(MultiIndex::unit(x.nvars(), x.s_index(), extra),
                            Rational(1));
    return homo_reduce_body(x.body() * s, x.uvars());
  };
  return cross(a, b.spow()) == cross(b, a.spow());
}

HomoElem HomoElem::tau_coefficient(int k) const {
  return HomoElem(n_, body_.coefficient_of(tau_index(), k), spow_);
}

int HomoElem::min_tau_degree() const {
  int m = -1;
  for (const auto& [a, c] : body_.terms())
    m = (m < 0) ? a[tau_index()] : std::min(m, a[tau_index()]);
  return m;
}

int HomoElem::max_tau_degree() const { return body_.degree_in(tau_index()); }

HomoElem HomoElem::substitute(int var, const Rational& value) const {
  if (var < n_ + 2)
    throw std::invalid_argument("HomoElem::substitute: only parameter vars");
  return HomoElem(n_, body_.substitute(var, value), spow_);
}

Rational HomoElem::eval_at(std::span<const Rational> uref, const Rational& s0) const {
  // uref covers (u_1..u_n, tau, extras...) in layout order, skipping s
  if (static_cast<int>(uref.size()) != nvars() - 1)
    throw std::invalid_argument("HomoElem::eval_at: point length mismatch");
  if (sgn(s0) <= 0)
    throw std::invalid_argument("HomoElem::eval_at: s must be positive");
  std::vector<Rational> point(nvars());
  for (int i = 0; i < s_index(); ++i) point[i] = uref[i];
  point[s_index()] = s0;
  for (int i = s_index() + 1; i < nvars(); ++i) point[i] = uref[i - 1];
  Rational num = body_.eval(point);
  Rational den(1);
  for (int k = 0; k < spow_; ++k) den *= s0;
  return num / den;
}

std::map<MultiIndex, HomoElem> taylor_shift(const Poly& p,
                                            const std::vector<HomoElem>& point) {
  if (static_cast<int>(point.size()) != p.nvars())
    throw std::invalid_argument("taylor_shift: point length mismatch");
  std::map<MultiIndex, HomoElem> out;
  const int d = p.total_degree();
  for (int k = 0; k <= std::max(d, 0); ++k) {
    for (const MultiIndex& alpha : multi_indices_of_order(p.nvars(), k)) {
      Poly dp = p.derivative(alpha);
      if (dp.is_zero()) continue;
      HomoElem v = poly_at(dp, point);
      if (v.is_zero()) continue;
      out.emplace(alpha, v.scaled(Rational(1) / alpha.fact()));
    }
  }
  return out;
}

HomoElem poly_at(const Poly& p, const std::vector<HomoElem>& args) {
  if (static_cast<int>(args.size()) != p.nvars())
    throw std::invalid_argument("poly_at: argument count mismatch");
  if (args.empty()) throw std::invalid_argument("poly_at: needs arguments");
  const int n = args[0].uvars();
  const int nv = args[0].nvars();
  // power cache per argument
  std::vector<std::vector<HomoElem>> pows(args.size());
  HomoElem one(n, Poly::constant(nv, Rational(1)), 0);
  for (size_t i = 0; i < args.size(); ++i) pows[i].push_back(one);
  HomoElem sum = HomoElem::zero(n, nv);
  for (const auto& [a, c] : p.terms()) {
    HomoElem t = one.scaled(c);
    for (int i = 0; i < p.nvars(); ++i) {
      auto& pi = pows[i];
      while (static_cast<int>(pi.size()) <= a[i]) pi.push_back(pi.back() * args[i]);
      if (a[i] > 0) t = t * pi[a[i]];
    }
    sum += t;
  }
  return sum;
}

}  // namespace carleson
