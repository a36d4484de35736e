#include "carleson/poly_io.hpp"

#include <cctype>
#include <sstream>

namespace carleson {

std::string poly_to_text(const Poly& p, const std::string& var_prefix) {
  std::vector<std::string> names;
  for (int i = 0; i < p.nvars(); ++i)
    names.push_back(var_prefix + std::to_string(i + 1));
  return poly_to_text(p, names);
}

std::string poly_to_text(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  if (static_cast<int>(names.size()) != p.nvars())
    throw std::invalid_argument("poly_to_text: name count mismatch");
  std::string out;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c);
    bool any = false;
    std::string vars;
    for (int i = 0; i < p.nvars(); ++i) {
      if (a[i] == 0) continue;
      vars += any ? " " : "";
      any = true;
      vars += names[i];
      if (a[i] > 1) vars += "^" + std::to_string(a[i]);
    }
    if (any) out += " * " + vars;
  }
  return out;
}

namespace {

struct TermLexer {
  std::string s;
  size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
};

}  // namespace

Poly poly_from_text(const std::string& text, int nvars, const std::string& var_prefix) {
  Poly p(nvars);
  // split on '+' at top level; minus signs belong to coefficients
  std::vector<std::string> chunks;
  std::string cur;
  for (char ch : text) {
    if (ch == '+') {
      chunks.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  chunks.push_back(cur);
  for (const std::string& chunk : chunks) {
    TermLexer lx{chunk};
    if (lx.done()) throw std::invalid_argument("polynomial text: empty term");
    // coefficient: signs, digits, '/'
    size_t start = lx.pos;
    if (lx.s[lx.pos] == '-' || lx.s[lx.pos] == '+') ++lx.pos;
    while (lx.pos < lx.s.size() &&
           (std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '/'))
      ++lx.pos;
    Rational coeff(1);
    bool have_coeff = lx.pos > start && lx.pos - start > (lx.s[start] == '-' || lx.s[start] == '+' ? 1u : 0u);
    if (have_coeff) {
      coeff = rational_from_string(lx.s.substr(start, lx.pos - start));
    } else {
      lx.pos = start;
      if (lx.s[lx.pos] == '-') { coeff = -1; ++lx.pos; }
    }
    lx.skip_ws();
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == '*') {
      ++lx.pos;
      lx.skip_ws();
    }
    MultiIndex a(nvars);
    while (!lx.done()) {
      // variable factor: <prefix><index>[^exp]
      size_t vstart = lx.pos;
      while (lx.pos < lx.s.size() && std::isalpha(static_cast<unsigned char>(lx.s[lx.pos])))
        ++lx.pos;
      std::string name = lx.s.substr(vstart, lx.pos - vstart);
      if (name.empty())
        throw std::invalid_argument("polynomial text: expected variable in '" + chunk + "'");
      if (name != var_prefix && name != "u" && name != "x" && name != "y")
        throw std::invalid_argument("polynomial text: unknown variable '" + name + "'");
      size_t istart = lx.pos;
      while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
        ++lx.pos;
      if (lx.pos == istart)
        throw std::invalid_argument("polynomial text: variable needs an index in '" + chunk + "'");
      int vi = std::stoi(lx.s.substr(istart, lx.pos - istart));
      if (vi < 1 || vi > nvars)
        throw std::invalid_argument("polynomial text: variable index out of range in '" + chunk + "'");
      int exp = 1;
      if (lx.pos < lx.s.size() && lx.s[lx.pos] == '^') {
        ++lx.pos;
        size_t estart = lx.pos;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
          ++lx.pos;
        if (lx.pos == estart)
          throw std::invalid_argument("polynomial text: '^' needs an exponent in '" + chunk + "'");
        exp = std::stoi(lx.s.substr(estart, lx.pos - estart));
      }
      a[vi - 1] += exp;
    }
    p.add_term(a, coeff);
  }
  return p;
}

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [a, c] : p.terms()) j[a.str()] = to_string(c);
  return j;
}

Poly poly_from_json(const nlohmann::json& j, int nvars) {
  Poly p(nvars);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    if (key.size() < 2 || key.front() != '(' || key.back() != ')')
      throw std::invalid_argument("poly json: bad exponent key '" + key + "'");
    std::vector<int> exps;
    std::stringstream ss(key.substr(1, key.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) exps.push_back(std::stoi(part));
    if (static_cast<int>(exps.size()) != nvars)
      throw std::invalid_argument("poly json: exponent length mismatch in '" + key + "'");
    p.add_term(MultiIndex(exps), rational_from_string(it.value().get<std::string>()));
  }
  return p;
}

std::vector<std::string> homo_var_names(int n, const std::vector<std::string>& extras) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("u" + std::to_string(i + 1));
  names.push_back("tau");
  names.push_back("s");
  for (const auto& e : extras) names.push_back(e);
  return names;
}

std::string homo_to_text(const HomoElem& e, const std::vector<std::string>& names) {
  if (e.is_zero()) return "0";
  std::string body = poly_to_text(e.body(), names);
  if (e.spow() == 0) return body;
  return "(" + body + ") / s^" + std::to_string(e.spow());
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace carleson
