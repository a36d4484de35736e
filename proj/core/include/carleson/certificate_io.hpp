#pragma once

#include "carleson/matrixcert.hpp"

namespace carleson {

// Deterministic structured-text document for a certificate.  Stable across
// runs for identical input: every field is derived from the (deterministic)
// certification algorithm and printed in canonical order.
std::string certificate_to_text(const Certificate& cert, const PhaseFamily& f);

// Independent re-check pass: every certified field is re-derived from the
// family and compared.  The matrix identity check goes through the direct
// substitution oracle, not through the decomposition that produced the
// certificate.
struct RecheckReport {
  struct Item {
    std::string name;
    bool ok;
    std::string detail;
  };
  std::vector<Item> items;

  bool ok() const;
  std::string to_text() const;
  std::string digest() const;
};

RecheckReport recheck_certificate(const Certificate& cert, const PhaseFamily& f);

}  // namespace carleson
