#ifndef BRDG_FILTERS_HPP
#define BRDG_FILTERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "brdg/structure.hpp"

namespace brdg {

using FilterFamily = std::vector<Mask>;

/// Clause f∋a & g∋b => h∋c of the accessibility relation.
struct Triple {
  int a, b, c;
  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

/// Everything the filter-elimination fixpoint needs to know about a
/// presentation: accessibility clauses and the entries demanding witnesses.
/// Elements are bit positions, at most 64 of them.
struct FilterSystem {
  int size = 0;
  std::vector<Triple> access;
  std::vector<Entry> prod;   // a * b = c
  std::vector<Entry> under;  // a \ b = c
  std::vector<Entry> over;   // a / b = c
  int unit = -1;             // witnesses for the unit condition when >= 0

  /// Assembles the clause set selected by `props` from the operation entries.
  static FilterSystem build(int size, PropertySet props, std::vector<Entry> prod,
                            std::vector<Entry> under, std::vector<Entry> over, int one,
                            int unit);
  static FilterSystem from_structure(const PartialStructure& b, PropertySet props);

  bool related(Mask f, Mask g, Mask h) const;
};

enum class WitnessKind { Prod, Under, Over, UnitRight, UnitLeft };
std::string_view to_string(WitnessKind k);

/// For filter `filter` (family index) and entry `entry` of the respective
/// list, the family indices of the two witnesses, in (f,g), (f,h), (g,h),
/// (g,-) or (h,-) order depending on the kind.
struct Witness {
  WitnessKind kind;
  int filter;
  int entry;
  int first;
  int second;
  bool operator==(const Witness&) const = default;
};

struct RefineOptions {
  int jobs = 1;
};

/// Greatest subfamily closed under the witness conditions. Eliminations are
/// applied at the end of each pass; the result is sorted ascending.
FilterFamily refine(const FilterSystem& sys, FilterFamily family, const RefineOptions& opt = {});

/// First witnesses in canonical order for every demand of every filter.
/// Returns nullopt if some demand has no witness inside `family`.
std::optional<std::vector<Witness>> collect_witnesses(const FilterSystem& sys,
                                                      const FilterFamily& family);

/// Prime filters of the lattice part (plus the square-increasing closure
/// conditions under P3), ascending.
FilterFamily prime_filters(const PartialStructure& b, PropertySet props);

bool accessibility(const PartialStructure& b, Mask f, Mask g, Mask h, PropertySet props);

inline FilterFamily refine_filters(const PartialStructure& b, FilterFamily f0, PropertySet props,
                                   const RefineOptions& opt = {}) {
  return refine(FilterSystem::from_structure(b, props), std::move(f0), opt);
}

struct SeparationResult {
  bool ok = true;
  int a = -1;
  int b = -1;
  explicit operator bool() const { return ok; }
};

SeparationResult separation_check(const PartialStructure& b, const FilterFamily& family);

struct Certificate {
  AlgebraClass cls = AlgebraClass::Brdg;
  PropertySet props;
  FilterFamily family;
  std::vector<Witness> witnesses;
  bool degenerate = false;  // one-element structure, empty family
};

enum class RefusalStage { Lattice, Degenerate, Elimination, Separation };
std::string_view to_string(RefusalStage s);

struct Refusal {
  RefusalStage stage;
  std::string reason;
};

struct CertifyResult {
  std::optional<Certificate> certificate;
  std::optional<Refusal> refusal;
  explicit operator bool() const { return certificate.has_value(); }
};

struct CertifyOptions {
  int jobs = 1;
};

/// Uses the class and properties of the structure's signature. bdo entries
/// <>a = c are read as a * 1 = c.
CertifyResult certify(const PartialStructure& b, const CertifyOptions& opt = {});

/// The filter system a structure is certified against (bdo translated).
FilterSystem certification_system(const PartialStructure& b);

/// All related triples (f,g,h) of family indices.
std::vector<Triple> accessibility_table(const PartialStructure& b, const FilterFamily& family);

/// Greedily drops filters while the remaining family stays closed under the
/// witness conditions and still separates; witnesses are recomputed.
Certificate minimize_certificate(const PartialStructure& b, const Certificate& cert);

/// Re-checks a certificate against the structure from scratch.
bool check_certificate(const PartialStructure& b, const Certificate& cert, std::string* why = nullptr);

}  // namespace brdg

#endif  // BRDG_FILTERS_HPP
