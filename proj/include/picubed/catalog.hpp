#pragma once

#include <string>
#include <vector>

#include "picubed/series.hpp"
#include "picubed/verify.hpp"

namespace picubed {

/// Static description of one catalog entry.
struct CatalogRow {
  std::string kind;  // "series" or "identity"
  std::string name;
  std::string tag;
  std::string convergence;
  bool uses_reference_pi = false;
};

inline constexpr const char* kBilateral = "bilateral O(N^-3)";
inline constexpr const char* kAlternating = "alternating O(N^-3)";
inline constexpr const char* kGeometric = "geometric-ratio";
inline constexpr const char* kExponential = "exponential";
inline constexpr const char* kClosedForm = "closed-form";

inline CatalogRow catalog_row(SeriesKind kind) {
  const std::string name = kind == SeriesKind::EulerBilateral ? "euler:p/q" : kind_name(kind);
  switch (kind) {
    case SeriesKind::EulerBilateral: return {"series", name, "Eq. (10)", kBilateral, true};
    case SeriesKind::GoldenFifth: return {"series", name, "Eq. (16)", kBilateral, false};
    case SeriesKind::GoldenTenth: return {"series", name, "Eq. (21)", kBilateral, false};
    case SeriesKind::Quarter: return {"series", name, "x=1/4 footnote", kBilateral, false};
    case SeriesKind::AltOddCubesCorrected: return {"series", name, "Eq. (1) k>=0", kAlternating, false};
    case SeriesKind::AltOddCubesAsPrinted: return {"series", name, "Eq. (1) k>=1", kAlternating, false};
    case SeriesKind::CentralBinomial: return {"series", name, "Eq. (2)", kGeometric, false};
    case SeriesKind::PilehroodApery: return {"series", name, "Eq. (3)", kGeometric, false};
    case SeriesKind::SunHarmonic: return {"series", name, "Eq. (4)", kGeometric, false};
  }
  return {};
}

inline CatalogRow catalog_row(IdentityKind kind) {
  const std::string name = kind == IdentityKind::GuptaFamily ? "gupta-k" : IdentityId::of(kind).name();
  const bool ref = IdentityId{kind, 0}.uses_reference_pi();
  switch (kind) {
    case IdentityKind::Eq2CentralBinomial: return {"identity", name, "Eq. (2)", kGeometric, ref};
    case IdentityKind::Eq4SunHarmonic: return {"identity", name, "Eq. (4)", kGeometric, ref};
    case IdentityKind::GuptaFamily: return {"identity", name, "Eq. (6)", kAlternating, ref};
    case IdentityKind::PlouffePi: return {"identity", name, "Eq. (8)", kExponential, ref};
    case IdentityKind::PlouffePi3: return {"identity", name, "Eq. (9)", kExponential, ref};
    case IdentityKind::Eq1AsPrinted: return {"identity", name, "Eq. (1) k>=1", kAlternating, ref};
    case IdentityKind::Eq1Corrected: return {"identity", name, "Eq. (1) k>=0", kAlternating, ref};
    case IdentityKind::CoeffFifth: return {"identity", name, "Eq. (16)", kClosedForm, ref};
    case IdentityKind::CoeffTenth: return {"identity", name, "Eq. (21)", kClosedForm, ref};
  }
  return {};
}

/// One row per SeriesKind, then one per IdentityKind, in declaration order.
inline std::vector<CatalogRow> catalog() {
  std::vector<CatalogRow> rows;
  for (SeriesKind k : kAllSeriesKinds) rows.push_back(catalog_row(k));
  for (IdentityKind k : kAllIdentityKinds) rows.push_back(catalog_row(k));
  return rows;
}

}  // namespace picubed
