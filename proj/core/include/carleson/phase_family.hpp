#pragma once

#include <map>
#include <optional>
#include <string>

#include "carleson/quadform.hpp"

namespace carleson {

// Problem instance: dimension, signs of Q, and the homogeneous phases p_j for
// j in Lambda = {2 <= j <= d : p_j != 0}.  Degree-1 entries and other invalid
// shapes can be stored so that the admissibility gate can reject them with a
// structured reason.
struct PhaseFamily {
  int n = 0;
  int d = 0;
  QuadForm q;
  std::map<int, Poly> phases;  // j -> p_j, nonzero entries only

  PhaseFamily() = default;
  PhaseFamily(QuadForm q_, std::map<int, Poly> phases_);

  std::vector<int> lambda() const;  // stored degrees, ascending
  int L() const { return static_cast<int>(phases.size()); }
  const Poly& phase(int j) const;

  // canonical serialization used for provenance hashes
  std::string canonical_text() const;
};

enum class RejectReason {
  LinearPhase,
  QuadraticIsQ,
  DimensionTooSmall,
  NotHomogeneous,
};

std::string to_string(RejectReason r);

struct Admissibility {
  bool ok = false;
  std::optional<RejectReason> reason;
  std::string detail;
};

// Admissibility gate: n >= 2, every p_j homogeneous of degree j in [2,d],
// and p_2 not a nonzero multiple of Q.  Hard gate: certification and kernel
// work refuse inadmissible families.
Admissibility check_admissibility(const PhaseFamily& f);

struct GateRejection : std::runtime_error {
  RejectReason reason;
  GateRejection(RejectReason r, const std::string& what)
      : std::runtime_error(what), reason(r) {}
};

void require_admissible(const PhaseFamily& f);

// Stopping value: scale r > 0 and modulation coefficients nu_j for j in
// Lambda, constrained by r <= sum |nu_j| <= 2r.
struct StoppingValue {
  Rational r;
  std::map<int, Rational> nu;

  Rational norm1() const;
  void validate(const std::vector<int>& lambda) const;
};

}  // namespace carleson
