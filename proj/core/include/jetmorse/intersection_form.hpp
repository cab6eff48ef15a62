#pragma once

#include <optional>
#include <string>

#include "jetmorse/multipoly.hpp"

namespace jetmorse {

/// (a_1 u_1 + ... + a_k u_k)^{k+2} = F(a) c_1^2 - G(a) c_2, with F and G over
/// the context a1..a_k.
struct IntersectionForm {
  int k = 0;
  MultiPoly F;
  MultiPoly G;

  friend bool operator==(const IntersectionForm& l, const IntersectionForm& r) {
    return l.k == r.k && l.F == r.F && l.G == r.G;
  }
};

/// Context a1..a_k shared by every IntersectionForm of order k.
[[nodiscard]] ContextPtr weight_context(int k);

/// Human-readable description of the first term where two forms differ, or
/// nullopt when they are equal.
[[nodiscard]] std::optional<std::string> first_difference(const IntersectionForm& l, const IntersectionForm& r);

}  // namespace jetmorse
