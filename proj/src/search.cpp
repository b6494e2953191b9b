#include "abcover/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <exception>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace abcover {

namespace {

constexpr int kMaxPool = 24;
constexpr int kMaxPerSlotBound = 3;

struct CurveGroup {
  DivClass cls;
  std::vector<std::size_t> members;  // indices into the pool
  std::vector<std::array<std::uint8_t, kGroupOrder>> distributions;
};

// All ways to split n interchangeable curves over {unused, 001, ..., 111}.
void distribute(int remaining, int slot, std::array<std::uint8_t, kGroupOrder>& cur,
                std::vector<std::array<std::uint8_t, kGroupOrder>>& out) {
  if (slot == kGroupOrder - 1) {
    cur[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    cur[static_cast<std::size_t>(slot)] = static_cast<std::uint8_t>(c);
    distribute(remaining - c, slot + 1, cur, out);
  }
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::vector<CurveGroup> group_pool(const std::vector<NamedCurve>& pool) {
  std::vector<CurveGroup> groups;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const CurveGroup& g) { return g.cls == pool[i].cls; });
    if (it == groups.end()) {
      groups.push_back({pool[i].cls, {i}, {}});
    } else {
      it->members.push_back(i);
    }
  }
  return groups;
}

std::uint8_t negative_mask(std::uint8_t chi) {
  std::uint8_t mask = 0;
  for (unsigned sigma = 1; sigma < kGroupOrder; ++sigma)
    if (std::popcount(static_cast<unsigned>(chi) & sigma) % 2 == 1) mask |= static_cast<std::uint8_t>(1u << sigma);
  return mask;
}

bool matches(const std::optional<int>& target, int value) { return !target || *target == value; }

class Enumerator {
 public:
  Enumerator(const SurfaceContext& ctx, const std::vector<NamedCurve>& pool, const SearchOptions& options)
      : ctx_(ctx), pool_(pool), options_(options), groups_(group_pool(pool)) {
    if (static_cast<int>(pool.size()) > kMaxPool) {
      throw infeasible_search("pool of " + std::to_string(pool.size()) + " curves exceeds the limit of " +
                              std::to_string(kMaxPool));
    }
    if (options.max_per_slot < 1 || options.max_per_slot > kMaxPerSlotBound) {
      throw infeasible_search("max curves per slot must lie in 1.." + std::to_string(kMaxPerSlotBound));
    }
    std::set<std::string> labels;
    for (const auto& c : pool) {
      if (c.cls.k() != ctx.k()) throw dimension_error("pool curve " + c.label + " lives on a different surface");
      if (!ctx.is_curated(c.cls)) {
        throw unsupported_error("pool curve " + c.label + " of class " + format_class(c.cls) + " is not curated");
      }
      if (!labels.insert(c.label).second) throw std::invalid_argument("pool label " + c.label + " is repeated");
    }
    total_ = search_space_size(pool);
    if (total_ > options.max_candidates) {
      throw infeasible_search("search space of " + std::to_string(total_) + " assignments exceeds the limit of " +
                              std::to_string(options.max_candidates));
    }
    for (auto& g : groups_) {
      std::array<std::uint8_t, kGroupOrder> cur{};
      distribute(static_cast<int>(g.members.size()), 0, cur, g.distributions);
    }
    for (unsigned chi = 1; chi < kGroupOrder; ++chi) negative_[chi] = negative_mask(static_cast<std::uint8_t>(chi));
  }

  std::uint64_t total() const { return total_; }

  std::optional<SearchHit> evaluate(std::uint64_t index, SearchStats& stats) const {
    ++stats.candidates;
    std::array<std::size_t, kMaxPool> choice{};
    std::uint64_t rest = index;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const std::size_t n = groups_[g].distributions.size();
      choice[g] = static_cast<std::size_t>(rest % n);
      rest /= n;
    }

    std::array<int, kGroupOrder> count{};
    std::array<DivClass, kGroupOrder> sum;
    sum.fill(DivClass::zero(ctx_.k()));
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto& dist = groups_[g].distributions[choice[g]];
      for (std::size_t s = 1; s < kGroupOrder; ++s) {
        if (dist[s] == 0) continue;
        count[s] += dist[s];
        sum[s] += dist[s] * groups_[g].cls;
      }
    }
    for (std::size_t s = 1; s < kGroupOrder; ++s)
      if (count[s] > options_.max_per_slot) return std::nullopt;
    for (unsigned chi = 1; chi < kGroupOrder; ++chi) {
      std::uint8_t parity = 0;
      for (unsigned s = 1; s < kGroupOrder; ++s)
        if ((negative_[chi] >> s) & 1) parity ^= sum[s].parity_bits();
      if (parity != 0) return std::nullopt;
    }
    ++stats.parity_ok;

    BuildingData data(ctx_);
    std::vector<int> slot_of(pool_.size(), 0);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const auto& dist = groups_[g].distributions[choice[g]];
      std::size_t next = 0;
      for (std::size_t s = 0; s < kGroupOrder; ++s)
        for (int c = 0; c < dist[s]; ++c) slot_of[groups_[g].members[next++]] = static_cast<int>(s);
    }
    for (std::size_t i = 0; i < pool_.size(); ++i)
      if (slot_of[i] != 0) data.branch[static_cast<std::size_t>(slot_of[i])].push_back(pool_[i]);
    data.L = solve_line_bundles(data);

    if (!validate(data).ok()) return std::nullopt;
    ++stats.valid;
    if (!smoothness_check(data, {}).smooth) return std::nullopt;
    ++stats.smooth;
    const CoverInvariants inv = invariants(data);
    if (!nef_big_check(ctx_, inv.half_2KX)) return std::nullopt;
    ++stats.nef_big;

    const SearchTargets& t = options_.targets;
    if (!matches(t.pg, inv.pg) || !matches(t.q, inv.q) || !matches(t.KX2, inv.KX2)) return std::nullopt;
    if (inv.pg == 0) return std::nullopt;
    CanonicalReport canon = canonical_degree(data, {});
    if (t.d && canon.degree != t.d) return std::nullopt;
    ++stats.matched;

    SearchHit hit;
    hit.index = index;
    hit.canonical_form = canonical_form(data);
    hit.quotient_candidate = canonical_candidate_filter(data);
    hit.invariants = inv;
    hit.canonical = std::move(canon);
    hit.data = std::move(data);
    return hit;
  }

  SearchResult finish(std::vector<SearchHit> hits, SearchStats stats) const {
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) { return a.index < b.index; });
    SearchResult out;
    out.stats = stats;
    std::set<std::string> seen;
    const std::size_t limit = options_.limit.value_or(std::numeric_limits<std::size_t>::max());
    for (auto& h : hits) {
      if (out.hits.size() >= limit) break;
      if (!seen.insert(h.canonical_form).second) continue;
      out.hits.push_back(std::move(h));
    }
    out.stats.emitted = out.hits.size();
    if (options_.seed != 0) spot_check(out);
    return out;
  }

 private:
  void spot_check(SearchResult& result) const {
    const DivClass K = ctx_.canonical();
    for (const auto& h : result.hits)
      for (const auto& chi : all_characters(kGroupRank)) {
        if (chi.is_trivial()) continue;
        const DivClass c = K + h.data.line_bundle(chi);
        if (c.d() > 12) continue;
        const int oracle = h0_oracle(ctx_, c, options_.seed);
        const int fast = h0(ctx_, c);
        if (oracle != fast) {
          throw std::logic_error("h0(" + format_class(c) + ") = " + std::to_string(fast) + " but the oracle gives " +
                                 std::to_string(oracle));
        }
        ++result.stats.oracle_checks;
      }
  }

  SurfaceContext ctx_;
  const std::vector<NamedCurve>& pool_;
  SearchOptions options_;
  std::vector<CurveGroup> groups_;
  std::uint64_t total_ = 0;
  std::array<std::uint8_t, kGroupOrder> negative_{};
};

void add_stats(SearchStats& into, const SearchStats& s) {
  into.candidates += s.candidates;
  into.parity_ok += s.parity_ok;
  into.valid += s.valid;
  into.smooth += s.smooth;
  into.nef_big += s.nef_big;
  into.matched += s.matched;
}

}  // namespace

SearchTargets parse_targets(const std::string& text) {
  SearchTargets t;
  std::stringstream ss(text);
  std::string item;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
  };
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw parse_error("--targets", "expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw parse_error("--targets", "value of " + key + " is not an integer");
    }
    if (key == "pg") {
      t.pg = v;
    } else if (key == "q") {
      t.q = v;
    } else if (key == "d") {
      t.d = v;
    } else if (key == "KX2") {
      t.KX2 = v;
    } else {
      throw parse_error("--targets", "unknown target '" + key + "' (use pg, q, d, KX2)");
    }
  }
  return t;
}

std::uint64_t search_space_size(const std::vector<NamedCurve>& pool) {
  std::uint64_t total = 1;
  for (const auto& g : group_pool(pool)) {
    const int n = static_cast<int>(g.members.size());
    const std::uint64_t ways = binomial(n + kGroupOrder - 1, kGroupOrder - 1);
    if (total > std::numeric_limits<std::uint64_t>::max() / ways) return std::numeric_limits<std::uint64_t>::max();
    total *= ways;
  }
  return total;
}

SearchResult enumerate_serial(const SurfaceContext& ctx, const std::vector<NamedCurve>& pool,
                              const SearchOptions& options) {
  const Enumerator e(ctx, pool, options);
  if (options.limit && *options.limit == 0) return {};
  SearchStats stats;
  std::vector<SearchHit> hits;
  for (std::uint64_t i = 0; i < e.total(); ++i)
    if (auto hit = e.evaluate(i, stats)) hits.push_back(std::move(*hit));
  return e.finish(std::move(hits), stats);
}

SearchResult enumerate(const SurfaceContext& ctx, const std::vector<NamedCurve>& pool, const SearchOptions& options) {
  const Enumerator e(ctx, pool, options);
  if (options.limit && *options.limit == 0) return {};
  SearchStats stats;
  std::vector<SearchHit> hits;
  std::exception_ptr failure;
  const auto total = static_cast<std::int64_t>(e.total());

#pragma omp parallel
  {
    SearchStats local_stats;
    std::vector<SearchHit> local_hits;
#pragma omp for schedule(dynamic, 4096) nowait
    for (std::int64_t i = 0; i < total; ++i) {
      try {
        if (auto hit = e.evaluate(static_cast<std::uint64_t>(i), local_stats)) local_hits.push_back(std::move(*hit));
      } catch (...) {
#pragma omp critical(abcover_search_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(abcover_search_merge)
    {
      add_stats(stats, local_stats);
      for (auto& h : local_hits) hits.push_back(std::move(h));
    }
  }
  if (failure) std::rethrow_exception(failure);
  return e.finish(std::move(hits), stats);
}

std::string canonical_form(const BuildingData& data) {
  using Slots = std::array<std::vector<DivClass>, kGroupOrder>;
  std::optional<Slots> best;
  for (const auto& phi : automorphisms(kGroupRank)) {
    Slots slots;
    for (const auto& sigma : all_elements(kGroupRank)) {
      if (sigma.is_identity()) continue;
      auto& target = slots[phi.apply(sigma).mask()];
      for (const auto& c : data.D(sigma)) target.push_back(c.cls);
      std::sort(target.begin(), target.end());
    }
    if (!best || slots < *best) best = std::move(slots);
  }
  std::string out;
  for (unsigned s = 1; s < kGroupOrder; ++s) {
    if (s > 1) out += ' ';
    out += GroupElement(kGroupRank, static_cast<std::uint8_t>(s)).to_string() + ":[";
    const auto& v = (*best)[s];
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_class(v[i]);
    out += ']';
  }
  return out;
}

bool canonical_candidate_filter(const BuildingData& data) {
  for (const auto& g : all_elements(kGroupRank)) {
    if (g.is_identity()) continue;
    if (factors_through_quotient(data, Subgroup::generated(kGroupRank, {g}))) return true;
  }
  return false;
}

}  // namespace abcover
