#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abcover/errors.hpp"

namespace abcover {

/// Divisor class d*l - sum_i m_i*e_i in Pic of the blow-up of P^2 at k <= 4
/// general points. Basis is fixed as (l, e_1, ..., e_k).
class DivClass {
 public:
  static constexpr int kMaxPoints = 4;

  DivClass() = default;
  /// `m` lists the subtracted coefficients m_1..m_j (j <= k, rest zero).
  DivClass(int k, int d, std::initializer_list<int> m = {});
  DivClass(int k, int d, std::span<const int> m);

  static DivClass zero(int k) { return DivClass(k, 0); }
  static DivClass line(int k) { return DivClass(k, 1); }
  /// e_i, 1-based.
  static DivClass exceptional(int k, int i);
  /// f_i = l - e_i, strict transform of a general line through P_i.
  static DivClass fiber(int k, int i);
  /// h_ij = l - e_i - e_j, strict transform of the line P_i P_j.
  static DivClass line_through(int k, int i, int j);

  int k() const noexcept { return k_; }
  int d() const noexcept { return d_; }
  /// Subtracted coefficient of e_i, 1-based.
  int m(int i) const;
  bool is_zero() const noexcept;

  DivClass& operator+=(const DivClass& o);
  DivClass& operator-=(const DivClass& o);
  DivClass& operator*=(int s) noexcept;
  friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
  friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
  friend DivClass operator*(int s, DivClass a) { return a *= s; }
  friend DivClass operator*(DivClass a, int s) { return a *= s; }
  DivClass operator-() const { return *this * -1; }

  bool operator==(const DivClass&) const = default;
  auto operator<=>(const DivClass&) const = default;

  /// Same class viewed in a lattice with more exceptional curves (pullback).
  DivClass pulled_back(int new_k) const;
  /// Drops e_{new_k+1}..e_k (pushforward under the blow-down).
  DivClass pushed_forward(int new_k) const;
  /// D/2 when every coefficient is even.
  std::optional<DivClass> halved() const;
  /// All coefficients reduced mod 2, packed one bit per coefficient.
  std::uint8_t parity_bits() const noexcept;

 private:
  int k_ = 0;
  int d_ = 0;
  std::array<int, kMaxPoints> m_{};
};

/// Intersection pairing, signature (1, -1, ..., -1).
int pairing(const DivClass& a, const DivClass& b);

/// "2l-e1-e3", "0".
std::string format_class(const DivClass& c);
/// "(2; 1, 0, 1)".
std::string tuple_string(const DivClass& c);
/// Parses sums of integer multiples of l, K, e<i>, f<i>, h<ij>,
/// e.g. "2f1 + l - e4" or "-K".
DivClass parse_class(int k, std::string_view text);

struct DictionaryEntry {
  std::string name;  // template name, e.g. "f1+h34"
  DivClass cls;
  bool moving;  // false for rigid curves (e_i, h_ij)
};

/// The ambient surface Y_k: P^2 blown up at k <= 4 points in general
/// position. Cheap value type; the per-k tables are shared.
class SurfaceContext {
 public:
  explicit SurfaceContext(int k = 0);

  int k() const noexcept { return k_; }
  /// del Pezzo degree K^2 = 9 - k.
  int degree() const noexcept { return 9 - k_; }
  DivClass canonical() const;
  /// Extremal curves used by the nef test and the fixed-part reduction.
  std::span<const DivClass> negative_curves() const;
  /// Curated classes represented by smooth irreducible curves.
  std::span<const DictionaryEntry> curve_dictionary() const;
  const DictionaryEntry* find_curated(const DivClass& c) const;
  bool is_curated(const DivClass& c) const { return find_curated(c) != nullptr; }

  bool operator==(const SurfaceContext&) const = default;

 private:
  int k_;
};

/// A specific curve. Equal classes with distinct labels are distinct curves
/// (e.g. three members f_21, f_22, f_23 of |f_2|).
struct NamedCurve {
  std::string label;
  DivClass cls;
  std::optional<int> member;

  bool operator==(const NamedCurve&) const = default;
};

DivClass canonical_class(const SurfaceContext& ctx);
bool is_nef(const SurfaceContext& ctx, const DivClass& d);
/// 1 + D.(D-K)/2.
int euler_characteristic(const SurfaceContext& ctx, const DivClass& d);
/// h^0(O(D)) by removing negative fixed curves then Riemann-Roch.
int h0(const SurfaceContext& ctx, DivClass d);

/// Independent h^0 via the rank of the interpolation conditions imposed by
/// random rational points (exact arithmetic). Requires d <= 12. Throws
/// degenerate_configuration when two configurations disagree.
int h0_oracle(const SurfaceContext& ctx, const DivClass& d, std::uint64_t seed);

struct OracleMismatch {
  DivClass cls;
  int fast = 0;
  int oracle = 0;
  std::uint64_t seed = 0;
};

/// Compares h0 against h0_oracle for every class and seed (OpenMP).
std::vector<OracleMismatch> h0_oracle_sweep(const SurfaceContext& ctx,
                                            std::span<const DivClass> classes,
                                            std::span<const std::uint64_t> seeds);
/// Single-threaded reference for h0_oracle_sweep; same output order.
std::vector<OracleMismatch> h0_oracle_sweep_serial(const SurfaceContext& ctx,
                                                   std::span<const DivClass> classes,
                                                   std::span<const std::uint64_t> seeds);

}  // namespace abcover
