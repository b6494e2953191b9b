#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace abcover {

/// Element (a_1, ..., a_n) of Z_2^n. Written as the bit string "a_1...a_n".
class GroupElement {
 public:
  static constexpr int kMaxRank = 8;

  GroupElement() = default;
  GroupElement(int n, std::uint8_t mask);
  static GroupElement parse(std::string_view bits);
  static GroupElement identity(int n) { return GroupElement(n, 0); }

  int rank() const noexcept { return n_; }
  /// a_{i+1}, 0-based position from the left.
  int bit(int i) const noexcept { return (mask_ >> (n_ - 1 - i)) & 1; }
  std::uint8_t mask() const noexcept { return mask_; }
  bool is_identity() const noexcept { return mask_ == 0; }
  std::string to_string() const;

  friend GroupElement operator+(GroupElement a, GroupElement b);
  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;

 private:
  int n_ = 0;
  std::uint8_t mask_ = 0;
};

/// chi_{j_1...j_n}; chi(a) = (-1)^{sum j_i a_i}. Real-valued, kept as bits.
class Character {
 public:
  Character() = default;
  Character(int n, std::uint8_t mask);
  static Character parse(std::string_view bits);
  static Character trivial(int n) { return Character(n, 0); }

  int rank() const noexcept { return n_; }
  std::uint8_t mask() const noexcept { return mask_; }
  bool is_trivial() const noexcept { return mask_ == 0; }
  std::string to_string() const;

  friend Character operator+(Character a, Character b);
  bool operator==(const Character&) const = default;
  auto operator<=>(const Character&) const = default;

 private:
  int n_ = 0;
  std::uint8_t mask_ = 0;
};

/// +1 or -1.
int chi_value(const Character& chi, const GroupElement& sigma);
/// The sigma with chi(sigma) = -1. Throws on the trivial character.
std::vector<GroupElement> negative_set(const Character& chi);

std::vector<GroupElement> all_elements(int n);
std::vector<Character> all_characters(int n);

class Subgroup {
 public:
  /// Closure of the generators under addition.
  static Subgroup generated(int n, const std::vector<GroupElement>& generators);

  int rank() const noexcept { return n_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  /// Sorted by mask.
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(const GroupElement& g) const;

  bool operator==(const Subgroup& o) const { return n_ == o.n_ && elements_ == o.elements_; }

 private:
  int n_ = 0;
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
};

/// Characters trivial on H, sorted by mask.
std::vector<Character> perp(const Subgroup& h);
/// Elements on which every given character is trivial.
Subgroup annihilator(int n, const std::vector<Character>& chars);
std::vector<Subgroup> all_subgroups(int n);

/// Invertible linear map of Z_2^n; column i is the image of the i-th basis
/// vector (bit a_{i+1}).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int n, std::array<std::uint8_t, 3> columns) : n_(n), columns_(columns) {}
  static BitMatrix identity(int n);

  int rank() const noexcept { return n_; }
  GroupElement apply(const GroupElement& g) const;
  BitMatrix inverse() const;
  /// chi o phi^{-1}, the character transported along this automorphism.
  Character transport(const Character& chi) const;

  bool operator==(const BitMatrix&) const = default;

 private:
  int n_ = 0;
  std::array<std::uint8_t, 3> columns_{};
};

/// All of GL(n, F_2), n <= 3, in a fixed enumeration order.
std::vector<BitMatrix> automorphisms(int n);

}  // namespace abcover
