#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abcover/chargroup.hpp"
#include "abcover/cover.hpp"
#include "abcover/picard.hpp"

namespace abcover {

/// f^*|K_Y + L_chi| + sum of R_sigma over sigma with chi(sigma) = +1.
struct CanonicalGenerator {
  Character chi;
  DivClass base_class;  // K_Y + L_chi
  int base_h0 = 0;
  std::vector<NamedCurve> branch_part;
};

struct CanonicalReport {
  std::vector<Character> J;
  std::vector<CanonicalGenerator> generators;
  int pg = 0;
  std::vector<NamedCurve> fixed_part;
  std::optional<int> M2;
  std::optional<int> degree;
  bool bpf = false;
  bool composed_with_pencil = false;
  /// Why the degree is undetermined, when it is.
  std::string note;
};

/// Fills J, generators and pg. Throws unsupported_error when J is empty.
CanonicalReport generator_set(const BuildingData& data);

/// Labels common to every generator. Requires every base class to have
/// h0 = 1; throws unsupported_error otherwise.
std::vector<NamedCurve> fixed_part(const CanonicalReport& report);

/// (1/denominator) f^*(numerator) on the cover. R_sigma is {D_sigma, 2}.
struct HalfPullback {
  DivClass numerator;
  int denominator = 1;
};

/// Uses f^*A . f^*B = 8 A.B; throws corrupt_data_error if the result is
/// not an integer.
int half_pullback_pairing(const HalfPullback& a, const HalfPullback& b);

/// K_X = (1/2) f^*(2K_Y + B).
HalfPullback canonical_divisor(const BuildingData& data);

/// Full report: fixed part, moving part M, base-point freeness under the
/// generic-position model and the degree M^2 when it is determined.
CanonicalReport canonical_degree(const BuildingData& data, const IncidenceSpec& inc);

/// True iff h0(K_Y + L_chi) = 0 for every nontrivial chi outside perp(H).
bool factors_through_quotient(const BuildingData& data, const Subgroup& h);

struct FiberGenus {
  int components = 0;
  int genus = 0;
  /// Subgroup generated by the sigma whose curves meet the fibre.
  Subgroup inertia;
  /// Sum of 2g-2 over the components of the pulled-back fibre.
  int total_euler = 0;
};

/// Genus of the fibration on X induced by the pencil |p| on Y (p^2 = 0,
/// h0(p) = 2).
FiberGenus fiber_genus(const BuildingData& data, const DivClass& p);

}  // namespace abcover
