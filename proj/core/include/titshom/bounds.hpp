#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace titshom {

enum class RootFamily { A, B, C, BC, D, G, F, E };

struct RootFactor {
  RootFamily family = RootFamily::A;
  int rank = 1;
  friend bool operator==(const RootFactor&, const RootFactor&) = default;
};

// A product of irreducible (relative) root systems, e.g. "A1xA1", "B3 x D4",
// "E8"; "" or "empty" is the empty system.  D_3 is read as A_3.
struct RootSystemDescriptor {
  std::vector<RootFactor> factors;

  // Throws InvalidDescriptor.
  static RootSystemDescriptor parse(const std::string& text);
  void validate() const;
  std::string to_string() const;
};

std::string to_string(const RootFactor& f);

enum class BoundMode { Field, Integral };

// b of an irreducible factor.
int irreducible_bound(const RootFactor& f);
// (m-1) + Σ b(Φ_j) in field mode; (m-1) + Σ ⌊(n_j-1)/3⌋ in integral mode,
// which only accepts type A (IntegralModeNonTypeA otherwise).
int vanishing_bound(const RootSystemDescriptor& d, BoundMode mode = BoundMode::Field);

// 1 + ⌊a/d⌋ + ⌊b/d⌋ >= ⌊(a+b+1)/d⌋ for d >= 2.
bool floor_inequality_holds(long a, long b, long d);

struct FloorSweep {
  size_t checked = 0;
  size_t failures = 0;
};
FloorSweep floor_inequality_sweep(long lo = -20, long hi = 20, long dmin = 2, long dmax = 5);

}  // namespace titshom
