#include "abcover/picard.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace abcover {

namespace {

void require_same_k(const DivClass& a, const DivClass& b) {
  if (a.k() != b.k()) {
    throw dimension_error("divisor classes live on Y_" + std::to_string(a.k()) + " and Y_" +
                          std::to_string(b.k()));
  }
}

void require_point_index(int k, int i) {
  if (i < 1 || i > k) {
    throw dimension_error("point index " + std::to_string(i) + " out of range 1.." +
                          std::to_string(k));
  }
}

}  // namespace

DivClass::DivClass(int k, int d, std::initializer_list<int> m)
    : DivClass(k, d, std::span<const int>(m.begin(), m.size())) {}

DivClass::DivClass(int k, int d, std::span<const int> m) : k_(k), d_(d) {
  if (k < 0 || k > kMaxPoints) {
    throw unsupported_error("blow-ups of more than 4 points are not supported (k=" +
                            std::to_string(k) + ")");
  }
  if (static_cast<int>(m.size()) > k) {
    throw dimension_error("too many exceptional coefficients for k=" + std::to_string(k));
  }
  std::copy(m.begin(), m.end(), m_.begin());
}

DivClass DivClass::exceptional(int k, int i) {
  require_point_index(k, i);
  DivClass c(k, 0);
  c.m_[i - 1] = -1;
  return c;
}

DivClass DivClass::fiber(int k, int i) {
  require_point_index(k, i);
  DivClass c(k, 1);
  c.m_[i - 1] = 1;
  return c;
}

DivClass DivClass::line_through(int k, int i, int j) {
  require_point_index(k, i);
  require_point_index(k, j);
  if (i == j) throw dimension_error("h_ij needs two distinct points");
  DivClass c(k, 1);
  c.m_[i - 1] = 1;
  c.m_[j - 1] = 1;
  return c;
}

int DivClass::m(int i) const {
  require_point_index(k_, i);
  return m_[i - 1];
}

bool DivClass::is_zero() const noexcept {
  return d_ == 0 && std::all_of(m_.begin(), m_.end(), [](int x) { return x == 0; });
}

DivClass& DivClass::operator+=(const DivClass& o) {
  require_same_k(*this, o);
  d_ += o.d_;
  for (int i = 0; i < kMaxPoints; ++i) m_[i] += o.m_[i];
  return *this;
}

DivClass& DivClass::operator-=(const DivClass& o) {
  require_same_k(*this, o);
  d_ -= o.d_;
  for (int i = 0; i < kMaxPoints; ++i) m_[i] -= o.m_[i];
  return *this;
}

DivClass& DivClass::operator*=(int s) noexcept {
  d_ *= s;
  for (int& x : m_) x *= s;
  return *this;
}

DivClass DivClass::pulled_back(int new_k) const {
  if (new_k < k_ || new_k > kMaxPoints) {
    throw dimension_error("cannot pull back from Y_" + std::to_string(k_) + " to Y_" +
                          std::to_string(new_k));
  }
  DivClass c = *this;
  c.k_ = new_k;
  return c;
}

DivClass DivClass::pushed_forward(int new_k) const {
  if (new_k > k_ || new_k < 0) {
    throw dimension_error("cannot push forward from Y_" + std::to_string(k_) + " to Y_" +
                          std::to_string(new_k));
  }
  DivClass c = *this;
  c.k_ = new_k;
  for (int i = new_k; i < kMaxPoints; ++i) c.m_[i] = 0;
  return c;
}

std::optional<DivClass> DivClass::halved() const {
  if (d_ % 2 != 0) return std::nullopt;
  DivClass c = *this;
  c.d_ /= 2;
  for (int& x : c.m_) {
    if (x % 2 != 0) return std::nullopt;
    x /= 2;
  }
  return c;
}

std::uint8_t DivClass::parity_bits() const noexcept {
  std::uint8_t bits = static_cast<std::uint8_t>(d_ & 1);
  for (int i = 0; i < kMaxPoints; ++i) bits |= static_cast<std::uint8_t>((m_[i] & 1) << (i + 1));
  return bits;
}

int pairing(const DivClass& a, const DivClass& b) {
  require_same_k(a, b);
  int s = a.d() * b.d();
  for (int i = 1; i <= a.k(); ++i) s -= a.m(i) * b.m(i);
  return s;
}

std::string format_class(const DivClass& c) {
  std::string out;
  auto term = [&out](int coef, const std::string& sym) {
    if (coef == 0) return;
    if (coef < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    if (coef != 1 && coef != -1) out += std::to_string(coef < 0 ? -coef : coef);
    out += sym;
  };
  term(c.d(), "l");
  for (int i = 1; i <= c.k(); ++i) term(-c.m(i), "e" + std::to_string(i));
  return out.empty() ? "0" : out;
}

std::string tuple_string(const DivClass& c) {
  std::string out = "(" + std::to_string(c.d());
  for (int i = 1; i <= c.k(); ++i) out += (i == 1 ? "; " : ", ") + std::to_string(c.m(i));
  return out + ")";
}

DivClass parse_class(int k, std::string_view text) {
  const std::string quoted = "class expression '" + std::string(text) + "'";
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> DivClass {
    throw parse_error(quoted, msg + " at offset " + std::to_string(pos));
  };
  auto read_digit = [&]() -> int {
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      fail("expected a point index");
    }
    return text[pos++] - '0';
  };

  DivClass acc = DivClass::zero(k);
  bool first = true;
  skip_ws();
  if (pos == text.size()) fail("empty expression");
  while (true) {
    skip_ws();
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    int coef = 1;
    bool has_coef = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const char* begin = text.data() + pos;
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(begin, end, coef);
      if (ec != std::errc()) fail("bad coefficient");
      pos += static_cast<std::size_t>(ptr - begin);
      has_coef = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }

    DivClass sym = DivClass::zero(k);
    const bool symbol_follows =
        pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]));
    if (!symbol_follows) {
      // A bare integer is only meaningful as the zero class.
      if (!has_coef || coef != 0) fail("missing symbol");
    } else {
      const char c = text[pos++];
      try {
        switch (c) {
          case 'l':
            sym = DivClass::line(k);
            break;
          case 'K':
            sym = canonical_class(SurfaceContext(k));
            break;
          case 'e':
            sym = DivClass::exceptional(k, read_digit());
            break;
          case 'f':
            sym = DivClass::fiber(k, read_digit());
            break;
          case 'h': {
            const int i = read_digit();
            const int j = read_digit();
            sym = DivClass::line_through(k, i, j);
            break;
          }
          default:
            fail(std::string("unknown symbol '") + c + "'");
        }
      } catch (const dimension_error& e) {
        throw parse_error(quoted, e.what());
      }
    }
    acc += sign * coef * sym;
    skip_ws();
    if (pos == text.size()) break;
  }
  return acc;
}

// Per-k tables --------------------------------------------------------------

namespace {

struct SurfaceTables {
  std::vector<DivClass> negative;
  std::vector<DictionaryEntry> dictionary;
};

SurfaceTables build_tables(int k) {
  SurfaceTables t;
  if (k == 0) {
    t.negative.push_back(DivClass::line(0));
  } else if (k == 1) {
    t.negative.push_back(DivClass::exceptional(1, 1));
    t.negative.push_back(DivClass::fiber(1, 1));
  } else {
    for (int i = 1; i <= k; ++i) t.negative.push_back(DivClass::exceptional(k, i));
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) t.negative.push_back(DivClass::line_through(k, i, j));
  }

  auto add = [&t](std::string name, DivClass c, bool moving) {
    t.dictionary.push_back({std::move(name), c, moving});
  };
  const auto idx = [](int i) { return std::to_string(i); };
  add("l", DivClass::line(k), true);
  for (int i = 1; i <= k; ++i) add("e" + idx(i), DivClass::exceptional(k, i), false);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      add("h" + idx(i) + idx(j), DivClass::line_through(k, i, j), false);
  for (int i = 1; i <= k; ++i) add("f" + idx(i), DivClass::fiber(k, i), true);
  for (int i = 1; i <= k; ++i) add("l+f" + idx(i), DivClass::line(k) + DivClass::fiber(k, i), true);
  if (k >= 3) {
    for (int i = 1; i <= k; ++i)
      for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
          if (a == i || b == i) continue;
          add("f" + idx(i) + "+h" + idx(a) + idx(b),
              DivClass::fiber(k, i) + DivClass::line_through(k, a, b), true);
        }
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        add("f" + idx(i) + "+f" + idx(j), DivClass::fiber(k, i) + DivClass::fiber(k, j), true);
  }
  return t;
}

const SurfaceTables& tables(int k) {
  static const std::array<SurfaceTables, DivClass::kMaxPoints + 1> all = [] {
    std::array<SurfaceTables, DivClass::kMaxPoints + 1> a;
    for (int k = 0; k <= DivClass::kMaxPoints; ++k) a[k] = build_tables(k);
    return a;
  }();
  return all[k];
}

}  // namespace

SurfaceContext::SurfaceContext(int k) : k_(k) {
  if (k < 0 || k > DivClass::kMaxPoints) {
    throw unsupported_error("only blow-ups of P^2 at k <= 4 general points are supported (k=" +
                            std::to_string(k) + ")");
  }
}

DivClass SurfaceContext::canonical() const {
  DivClass c(k_, -3);
  for (int i = 1; i <= k_; ++i) c += DivClass::exceptional(k_, i);
  return c;
}

std::span<const DivClass> SurfaceContext::negative_curves() const { return tables(k_).negative; }

std::span<const DictionaryEntry> SurfaceContext::curve_dictionary() const {
  return tables(k_).dictionary;
}

const DictionaryEntry* SurfaceContext::find_curated(const DivClass& c) const {
  if (c.k() != k_) return nullptr;
  for (const auto& e : tables(k_).dictionary)
    if (e.cls == c) return &e;
  return nullptr;
}

DivClass canonical_class(const SurfaceContext& ctx) { return ctx.canonical(); }

bool is_nef(const SurfaceContext& ctx, const DivClass& d) {
  return std::all_of(ctx.negative_curves().begin(), ctx.negative_curves().end(),
                     [&d](const DivClass& c) { return pairing(d, c) >= 0; });
}

int euler_characteristic(const SurfaceContext& ctx, const DivClass& d) {
  return 1 + pairing(d, d - ctx.canonical()) / 2;
}

int h0(const SurfaceContext& ctx, DivClass d) {
  if (d.k() != ctx.k()) throw dimension_error("class does not live on Y_" + std::to_string(ctx.k()));
  const DivClass anti = -ctx.canonical();
  // Every step lowers D.(-K) by C.(-K) >= 1, so this terminates.
  while (true) {
    if (d.is_zero()) return 1;
    if (pairing(d, anti) < 0) return 0;
    const auto negatives = ctx.negative_curves();
    auto it = std::find_if(negatives.begin(), negatives.end(),
                           [&d](const DivClass& c) { return pairing(d, c) < 0; });
    if (it == negatives.end()) break;
    d -= *it;
  }
  return euler_characteristic(ctx, d);
}

}  // namespace abcover
