#pragma once
// Named generators of the one-cohomology of the contact algebra with values in
// the operator modules D_{lam,mu}, one entry per (weight, shift) slot where a
// class exists.  Entries are explicit constant-coefficient tables, frozen
// after being checked against the kernel computation at their slot; symbolic
// entries are families in lam, fixed entries live at one special weight, and
// one entry is only defined on the residue locus of a quadratic in lam.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superdeform/cohomology.hpp"

namespace superdeform {

struct CatalogEntry {
  std::string name;
  Cochain1 cocycle;
  std::optional<LamPoly> modulus;  // set when the class only exists mod this
  std::string note;

  Rational shift() const { return half(cocycle.two_shift()); }
};

struct UnknownCocycle : std::runtime_error {
  explicit UnknownCocycle(const std::string& id)
      : std::runtime_error("unknown cocycle id: " + id) {}
};

const std::vector<CatalogEntry>& cocycle_catalog();
const CatalogEntry& catalog_entry(const std::string& name);  // UnknownCocycle

// The same class family started at another weight on the lam line; symbolic
// entries shift their coefficients, fixed entries only admit their own weight.
Cochain1 rebase(const CatalogEntry& e, const Weight& src);

struct CatalogVerification {
  NontrivialityReport report;      // closedness and the coboundary decision
  std::vector<LamPoly> slot_record;  // divisors recorded by the slot analysis
  std::string summary;
};

// Full check of one entry: delta1(g) = 0 and the system g = delta0(A) is
// inconsistent (in the residue field when the entry carries a modulus).  The
// slot record lists every polynomial the generic kernel analysis at this
// (weight, shift) divided by; verdicts over Q(lam) are guaranteed off its
// roots, and the entry-specific detail narrows which roots really matter.
CatalogVerification verify_catalog_entry(const CatalogEntry& e);

}  // namespace superdeform
