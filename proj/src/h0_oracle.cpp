#include <gmpxx.h>

#include <algorithm>
#include <exception>
#include <random>
#include <utility>
#include <vector>

#include "abcover/picard.hpp"

namespace abcover {

namespace {

constexpr int kMaxOracleDegree = 12;

struct Point {
  mpq_class x, y;
};

mpq_class random_coordinate(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-24, 24);
  std::uniform_int_distribution<int> den(1, 11);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

bool collinear(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) == 0;
}

// k distinct affine points, no three on a line. For k <= 4 any such
// configuration is projectively equivalent to any other.
std::vector<Point> general_points(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < k) {
    Point p{random_coordinate(rng), random_coordinate(rng)};
    bool ok = true;
    for (const auto& q : pts) ok = ok && !(q.x == p.x && q.y == p.y);
    for (std::size_t i = 0; ok && i < pts.size(); ++i)
      for (std::size_t j = i + 1; ok && j < pts.size(); ++j) ok = !collinear(pts[i], pts[j], p);
    if (ok) pts.push_back(std::move(p));
  }
  return pts;
}

mpq_class power(const mpq_class& base, int e) {
  mpq_class r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

long falling(int n, int r) {
  long v = 1;
  for (int i = 0; i < r; ++i) v *= n - i;
  return v;
}

int rank(std::vector<std::vector<mpq_class>> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = row + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const mpq_class factor = a[r][col] / a[row][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[row][c];
    }
    ++row;
  }
  return static_cast<int>(row);
}

// Rank of the conditions "all partials of order < m_i vanish at P_i" on the
// space of plane curves of degree d.
int condition_rank(const DivClass& cls, const std::vector<Point>& pts) {
  const int d = cls.d();
  std::vector<std::pair<int, int>> monomials;
  for (int u = 0; u <= d; ++u)
    for (int v = 0; u + v <= d; ++v) monomials.emplace_back(u, v);

  std::vector<std::vector<mpq_class>> rows;
  for (int i = 1; i <= cls.k(); ++i) {
    const int mult = cls.m(i);
    const Point& p = pts[i - 1];
    for (int a = 0; a < mult; ++a)
      for (int b = 0; a + b < mult; ++b) {
        std::vector<mpq_class> row;
        row.reserve(monomials.size());
        for (auto [u, v] : monomials) {
          if (u < a || v < b) {
            row.emplace_back(0);
          } else {
            row.push_back(mpq_class(falling(u, a) * falling(v, b)) * power(p.x, u - a) *
                          power(p.y, v - b));
          }
        }
        rows.push_back(std::move(row));
      }
  }
  return rank(std::move(rows));
}

std::uint64_t companion_seed(std::uint64_t seed) {
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

int h0_oracle(const SurfaceContext& ctx, const DivClass& cls, std::uint64_t seed) {
  if (cls.k() != ctx.k()) throw dimension_error("class does not live on Y_" + std::to_string(ctx.k()));
  if (cls.d() > kMaxOracleDegree) {
    throw unsupported_error("interpolation oracle is limited to degree <= 12");
  }
  if (cls.d() < 0) return 0;
  const int d = cls.d();
  const int monomials = (d + 1) * (d + 2) / 2;
  const int r1 = condition_rank(cls, general_points(ctx.k(), seed));
  const int r2 = condition_rank(cls, general_points(ctx.k(), companion_seed(seed)));
  if (r1 != r2) {
    throw degenerate_configuration("interpolation rank differs between point configurations for " +
                                   tuple_string(cls) + "; retry with another seed");
  }
  return std::max(0, monomials - r1);
}

namespace {

std::vector<OracleMismatch> collect(std::vector<std::vector<OracleMismatch>>& per_class) {
  std::vector<OracleMismatch> out;
  for (auto& v : per_class)
    for (auto& m : v) out.push_back(std::move(m));
  return out;
}

std::vector<OracleMismatch> check_class(const SurfaceContext& ctx, const DivClass& cls,
                                        std::span<const std::uint64_t> seeds) {
  std::vector<OracleMismatch> out;
  const int fast = h0(ctx, cls);
  for (auto seed : seeds) {
    const int slow = h0_oracle(ctx, cls, seed);
    if (slow != fast) out.push_back({cls, fast, slow, seed});
  }
  return out;
}

}  // namespace

std::vector<OracleMismatch> h0_oracle_sweep_serial(const SurfaceContext& ctx,
                                                   std::span<const DivClass> classes,
                                                   std::span<const std::uint64_t> seeds) {
  std::vector<std::vector<OracleMismatch>> per_class(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) per_class[i] = check_class(ctx, classes[i], seeds);
  return collect(per_class);
}

std::vector<OracleMismatch> h0_oracle_sweep(const SurfaceContext& ctx,
                                            std::span<const DivClass> classes,
                                            std::span<const std::uint64_t> seeds) {
  std::vector<std::vector<OracleMismatch>> per_class(classes.size());
  const long n = static_cast<long>(classes.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      per_class[i] = check_class(ctx, classes[i], seeds);
    } catch (...) {
#pragma omp critical(abcover_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return collect(per_class);
}

}  // namespace abcover
