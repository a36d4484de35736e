#include "carleson/phase_family.hpp"

#include "carleson/poly_io.hpp"

namespace carleson {

PhaseFamily::PhaseFamily(QuadForm q_, std::map<int, Poly> phases_)
    : n(q_.n), q(std::move(q_)) {
  for (auto& [j, p] : phases_) {
    if (p.nvars() != n)
      throw std::invalid_argument("PhaseFamily: phase variable count mismatch");
    if (p.is_zero()) continue;
    phases.emplace(j, std::move(p));
  }
  if (phases.empty())
    throw std::invalid_argument("PhaseFamily: needs at least one nonzero phase");
  d = phases.rbegin()->first;
}

std::vector<int> PhaseFamily::lambda() const {
  std::vector<int> out;
  for (const auto& [j, p] : phases) out.push_back(j);
  return out;
}

const Poly& PhaseFamily::phase(int j) const {
  auto it = phases.find(j);
  if (it == phases.end()) throw std::invalid_argument("PhaseFamily: no phase of that degree");
  return it->second;
}

std::string PhaseFamily::canonical_text() const {
  std::string s = "n=" + std::to_string(n) + ";theta=";
  for (int t : q.theta) s += (t > 0 ? "+" : "-");
  for (const auto& [j, p] : phases)
    s += ";p" + std::to_string(j) + "=" + poly_to_text(p);
  return s;
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::LinearPhase: return "LinearPhase";
    case RejectReason::QuadraticIsQ: return "QuadraticIsQ";
    case RejectReason::DimensionTooSmall: return "DimensionTooSmall";
    case RejectReason::NotHomogeneous: return "NotHomogeneous";
  }
  return "?";
}

Admissibility check_admissibility(const PhaseFamily& f) {
  Admissibility out;
  if (f.n < 2) {
    out.reason = RejectReason::DimensionTooSmall;
    out.detail = "n = " + std::to_string(f.n) + " but the kernel reduction needs n >= 2";
    return out;
  }
  for (const auto& [j, p] : f.phases) {
    if (j < 2) {
      out.reason = RejectReason::LinearPhase;
      out.detail = "degree-" + std::to_string(j) + " phase present";
      return out;
    }
    if (!p.is_homogeneous(j)) {
      out.reason = RejectReason::NotHomogeneous;
      out.detail = "p_" + std::to_string(j) + " is not homogeneous of degree " + std::to_string(j);
      return out;
    }
  }
  auto it = f.phases.find(2);
  if (it != f.phases.end()) {
    PhaseClassification cls = classify_phase(it->second, 2, f.q);
    if (cls.qtype) {
      out.reason = RejectReason::QuadraticIsQ;
      out.detail = "p_2 is a nonzero multiple of Q";
      return out;
    }
  }
  out.ok = true;
  return out;
}

void require_admissible(const PhaseFamily& f) {
  Admissibility a = check_admissibility(f);
  if (!a.ok) throw GateRejection(*a.reason, to_string(*a.reason) + ": " + a.detail);
}

Rational StoppingValue::norm1() const {
  Rational s(0);
  for (const auto& [j, v] : nu) s += abs(v);
  return s;
}

void StoppingValue::validate(const std::vector<int>& lambda) const {
  if (sgn(r) <= 0) throw std::invalid_argument("StoppingValue: r must be positive");
  for (const auto& [j, v] : nu) {
    bool found = false;
    for (int l : lambda) found |= (l == j);
    if (!found)
      throw std::invalid_argument("StoppingValue: nu index " + std::to_string(j) +
                                  " not in Lambda");
  }
  Rational norm = norm1();
  if (norm < r || norm > 2 * r)
    throw std::invalid_argument("StoppingValue: need r <= |nu|_1 <= 2r, got |nu|_1 = " +
                                to_string(norm) + " with r = " + to_string(r));
}

}  // namespace carleson
