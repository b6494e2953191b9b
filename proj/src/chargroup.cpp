#include "abcover/chargroup.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "abcover/errors.hpp"

namespace abcover {

namespace {

void check_rank(int n) {
  if (n < 0 || n > GroupElement::kMaxRank) {
    throw std::invalid_argument("group rank must lie in 0..8");
  }
}

std::uint8_t parse_bits(std::string_view bits) {
  if (bits.empty() || bits.size() > GroupElement::kMaxRank) {
    throw parse_error("'" + std::string(bits) + "'", "expected a bit string of length 1..8");
  }
  std::uint8_t mask = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw parse_error("'" + std::string(bits) + "'", "expected only '0' and '1'");
    }
    mask = static_cast<std::uint8_t>((mask << 1) | (c - '0'));
  }
  return mask;
}

std::string bits_string(int n, std::uint8_t mask) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((mask >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

void same_rank(int a, int b) {
  if (a != b) throw dimension_error("elements of Z_2^" + std::to_string(a) + " and Z_2^" + std::to_string(b));
}

}  // namespace

GroupElement::GroupElement(int n, std::uint8_t mask) : n_(n), mask_(mask) {
  check_rank(n);
  if (n < 8 && (mask >> n) != 0) throw std::invalid_argument("mask has bits beyond the rank");
}

GroupElement GroupElement::parse(std::string_view bits) {
  return GroupElement(static_cast<int>(bits.size()), parse_bits(bits));
}

std::string GroupElement::to_string() const { return bits_string(n_, mask_); }

GroupElement operator+(GroupElement a, GroupElement b) {
  same_rank(a.n_, b.n_);
  return GroupElement(a.n_, static_cast<std::uint8_t>(a.mask_ ^ b.mask_));
}

Character::Character(int n, std::uint8_t mask) : n_(n), mask_(mask) {
  check_rank(n);
  if (n < 8 && (mask >> n) != 0) throw std::invalid_argument("mask has bits beyond the rank");
}

Character Character::parse(std::string_view bits) {
  return Character(static_cast<int>(bits.size()), parse_bits(bits));
}

std::string Character::to_string() const { return bits_string(n_, mask_); }

Character operator+(Character a, Character b) {
  same_rank(a.n_, b.n_);
  return Character(a.n_, static_cast<std::uint8_t>(a.mask_ ^ b.mask_));
}

int chi_value(const Character& chi, const GroupElement& sigma) {
  same_rank(chi.rank(), sigma.rank());
  return std::popcount(static_cast<unsigned>(chi.mask() & sigma.mask())) % 2 == 0 ? 1 : -1;
}

std::vector<GroupElement> negative_set(const Character& chi) {
  if (chi.is_trivial()) {
    throw std::invalid_argument("the trivial character has an empty negative set");
  }
  std::vector<GroupElement> out;
  for (const auto& g : all_elements(chi.rank()))
    if (chi_value(chi, g) == -1) out.push_back(g);
  return out;
}

std::vector<GroupElement> all_elements(int n) {
  check_rank(n);
  std::vector<GroupElement> out;
  for (unsigned m = 0; m < (1u << n); ++m) out.emplace_back(n, static_cast<std::uint8_t>(m));
  return out;
}

std::vector<Character> all_characters(int n) {
  check_rank(n);
  std::vector<Character> out;
  for (unsigned m = 0; m < (1u << n); ++m) out.emplace_back(n, static_cast<std::uint8_t>(m));
  return out;
}

Subgroup Subgroup::generated(int n, const std::vector<GroupElement>& generators) {
  Subgroup h;
  h.n_ = n;
  h.generators_ = generators;
  h.elements_.push_back(GroupElement::identity(n));
  for (const auto& g : generators) {
    same_rank(n, g.rank());
    if (std::find(h.elements_.begin(), h.elements_.end(), g) != h.elements_.end()) continue;
    const auto current = h.elements_;
    for (const auto& e : current) h.elements_.push_back(e + g);
  }
  std::sort(h.elements_.begin(), h.elements_.end());
  return h;
}

bool Subgroup::contains(const GroupElement& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::vector<Character> perp(const Subgroup& h) {
  std::vector<Character> out;
  for (const auto& chi : all_characters(h.rank())) {
    const bool trivial_on_h = std::all_of(h.elements().begin(), h.elements().end(),
                                          [&chi](const GroupElement& g) { return chi_value(chi, g) == 1; });
    if (trivial_on_h) out.push_back(chi);
  }
  return out;
}

Subgroup annihilator(int n, const std::vector<Character>& chars) {
  std::vector<GroupElement> gens;
  for (const auto& g : all_elements(n)) {
    const bool killed = std::all_of(chars.begin(), chars.end(),
                                    [&g](const Character& c) { return chi_value(c, g) == 1; });
    if (killed) gens.push_back(g);
  }
  return Subgroup::generated(n, gens);
}

std::vector<Subgroup> all_subgroups(int n) {
  // Every subset generates some subgroup; dedupe by element set.
  std::vector<Subgroup> out;
  const auto elems = all_elements(n);
  for (unsigned subset = 0; subset < (1u << elems.size()); ++subset) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if ((subset >> i) & 1) gens.push_back(elems[i]);
    Subgroup h = Subgroup::generated(n, gens);
    if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
  }
  return out;
}

BitMatrix BitMatrix::identity(int n) {
  std::array<std::uint8_t, 3> cols{};
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(1u << (n - 1 - i));
  return BitMatrix(n, cols);
}

GroupElement BitMatrix::apply(const GroupElement& g) const {
  same_rank(n_, g.rank());
  std::uint8_t out = 0;
  for (int i = 0; i < n_; ++i)
    if (g.bit(i)) out ^= columns_[static_cast<std::size_t>(i)];
  return GroupElement(n_, out);
}

BitMatrix BitMatrix::inverse() const {
  for (const auto& candidate : automorphisms(n_)) {
    bool ok = true;
    for (const auto& g : all_elements(n_)) ok = ok && candidate.apply(apply(g)) == g;
    if (ok) return candidate;
  }
  throw std::logic_error("bit matrix is not invertible");
}

Character BitMatrix::transport(const Character& chi) const {
  const BitMatrix inv = inverse();
  for (const auto& candidate : all_characters(n_)) {
    bool ok = true;
    for (const auto& g : all_elements(n_)) ok = ok && chi_value(candidate, g) == chi_value(chi, inv.apply(g));
    if (ok) return candidate;
  }
  throw std::logic_error("no transported character");
}

std::vector<BitMatrix> automorphisms(int n) {
  if (n < 0 || n > 3) throw std::invalid_argument("automorphisms are enumerated for n <= 3 only");
  std::vector<BitMatrix> out;
  const unsigned size = 1u << n;
  const unsigned total = n == 0 ? 1 : size * (n > 1 ? size : 1) * (n > 2 ? size : 1);
  for (unsigned code = 0; code < total; ++code) {
    std::array<std::uint8_t, 3> cols{};
    unsigned c = code;
    for (int i = 0; i < n; ++i) {
      cols[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c % size);
      c /= size;
    }
    BitMatrix m(n, cols);
    // Injective on Z_2^n iff only 0 maps to 0.
    bool injective = true;
    for (unsigned g = 1; g < size && injective; ++g)
      injective = !m.apply(GroupElement(n, static_cast<std::uint8_t>(g))).is_identity();
    if (injective) out.push_back(m);
  }
  return out;
}

}  // namespace abcover
