#pragma once
// Formal deformation of the contact action on a graded symbol module: the
// infinitesimal term spanned by the class families, order-by-order obstruction
// analysis through the quartic bracket, and the polynomial relations the
// analysis accumulates on the parameter space.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superdeform/families.hpp"
#include "superdeform/params.hpp"

namespace superdeform {

// Density components delta - i/2 for 0 <= i <= n, listed top weight first.
struct SymbolModule {
  Weight delta;
  int n = 0;
  std::vector<Weight> components() const;
};

enum class BuildMode { Generic, Full };

// One transvectant summand of the quadratic term: factor * mono tensor the
// block witness of shift s at src.  Later orders bracket against these.
struct WitnessPart {
  ParamMono mono;
  RatFunc factor;
  Rational s;
  Weight src;
};

struct DeformationState {
  SymbolModule module;
  BuildMode mode = BuildMode::Generic;
  std::map<ParamName, Cochain1> l1;
  std::map<ParamMono, Cochain1, MonoLess> l2;
  std::vector<WitnessPart> l2_parts;
  RelationIdeal relations;
  int order_closed = 1;
};

struct ObstructionReport {
  Weight base;
  Rational shift = 0;
  int order = 2;
  std::vector<RatFunc> residue_class;  // direction in the decomposition basis
  ParamPoly relation;                  // nonzero iff the block obstructs
  std::optional<Cochain1> witness;     // next-order part solving the block
  std::vector<LamPoly> loci;
  std::string summary;
};

DeformationState build_infinitesimal(const SymbolModule& m,
                                     BuildMode mode = BuildMode::Generic);

// Each order assembles its bracket, decomposes every weight block, turns
// independent residue directions into relations, and stores the parts of the
// next term of the homomorphism; order_closed advances when the order leaves
// no unresolved block.
std::vector<ObstructionReport> second_order(DeformationState& st);
std::vector<ObstructionReport> third_order(DeformationState& st);
std::vector<ObstructionReport> fourth_order(DeformationState& st);

// The accumulated relations with each translation class re-anchored at a
// symbolic base, one generator per class, windowed by the doubled depth range
// in which the block fits inside the module.
RelationIdeal emit_ideal(const DeformationState& st);

// Order-2 homomorphism defect delta(L2) - [[L1, L1]] contracted on contact
// basis pairs up to the degree cap and on component generators, parameter
// coefficients reduced mod the relation ideal.  True when every coefficient
// vanishes identically.
bool check_order2_closure(const DeformationState& st, int cap,
                          std::string* report = nullptr);

std::string obstruction_report_str(const ObstructionReport& r);

}  // namespace superdeform
