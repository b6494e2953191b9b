#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcover/canonical.hpp"
#include "abcover/cover.hpp"
#include "abcover/picard.hpp"

namespace abcover {

struct SearchTargets {
  std::optional<int> pg;
  std::optional<int> q;
  std::optional<int> d;
  std::optional<int> KX2;
};

/// Parses "pg=3,q=0,d=14". Throws parse_error.
SearchTargets parse_targets(const std::string& text);

struct SearchOptions {
  int max_per_slot = 2;
  SearchTargets targets;
  /// Emit at most this many (deduplicated) candidates.
  std::optional<std::size_t> limit;
  /// Nonzero: cross-check the h0 values of every emitted candidate against
  /// the interpolation oracle with this seed.
  std::uint64_t seed = 0;
  /// Refuse pools whose assignment space is larger than this.
  std::uint64_t max_candidates = 20'000'000;
};

/// Bounds exceed what the exhaustive search can cover.
class infeasible_search : public unsupported_error {
 public:
  using unsupported_error::unsupported_error;
};

struct SearchHit {
  std::uint64_t index = 0;  // position in the enumeration order
  BuildingData data;
  CoverInvariants invariants;
  CanonicalReport canonical;
  std::string canonical_form;
  bool quotient_candidate = false;
};

struct SearchStats {
  std::uint64_t candidates = 0;
  std::uint64_t parity_ok = 0;
  std::uint64_t valid = 0;
  std::uint64_t smooth = 0;
  std::uint64_t nef_big = 0;
  std::uint64_t matched = 0;
  std::uint64_t emitted = 0;
  std::uint64_t oracle_checks = 0;

  bool operator==(const SearchStats&) const = default;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  SearchStats stats;
};

/// Size of the assignment space: every pool curve goes to one of the seven
/// slots or is unused, members of one pencil being interchangeable.
std::uint64_t search_space_size(const std::vector<NamedCurve>& pool);

/// Exhaustive enumeration with OpenMP; hits are emitted in enumeration
/// order, one per GL(3, F_2) orbit.
SearchResult enumerate(const SurfaceContext& ctx, const std::vector<NamedCurve>& pool, const SearchOptions& options);
/// Single-threaded reference with identical output.
SearchResult enumerate_serial(const SurfaceContext& ctx, const std::vector<NamedCurve>& pool,
                              const SearchOptions& options);

/// Slot-wise sorted classes, minimised over all 168 relabelings; labels and
/// line bundles are ignored.
std::string canonical_form(const BuildingData& data);

/// True iff the canonical map factors through X/H for some H of order 2.
bool canonical_candidate_filter(const BuildingData& data);

}  // namespace abcover
