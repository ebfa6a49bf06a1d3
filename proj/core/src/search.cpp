#include "uset/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/universal.hpp"

namespace uset {

namespace {

using Pt = std::pair<long, long>;

bool rectangular(const Field& f) { return f.is_imaginary() && !f.half_integral_basis(); }

long to_long(const Integer& x) {
  if (!x.fits_slong_p()) throw InputError("coordinate " + x.get_str() + " too large for collapsing");
  return x.get_si();
}

long pack_offset(std::size_t i) {
  // 0, +1, -1, +2, -2, ...
  const long k = static_cast<long>((i + 1) / 2);
  return (i % 2 == 1) ? k : -k;
}

std::vector<Pt> normal_form(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  const Pt o = pts.front();
  for (auto& p : pts) p = {p.first - o.first, p.second - o.second};
  return pts;
}

bool fits(const std::vector<Pt>& nf, const SearchBox& box) {
  long bmin = 0, bmax = 0;
  for (const auto& [a, b] : nf) {
    if (a > box.width - 1) return false;
    bmin = std::min(bmin, b);
    bmax = std::max(bmax, b);
  }
  return bmax - bmin <= box.height - 1;
}

Pt mul(const Field& f, const Pt& x, const Pt& u) {
  const QuadInt r = QuadInt(f, x.first, x.second) * QuadInt(f, u.first, u.second);
  return {r.a().get_si(), r.b().get_si()};
}

Pt conj(const Field& f, const Pt& x) {
  const QuadInt r = QuadInt(f, x.first, x.second).conj();
  return {r.a().get_si(), r.b().get_si()};
}

std::vector<Pt> units(const Field& f) {
  std::vector<Pt> out;
  for (long a = -1; a <= 1; ++a)
    for (long b = -1; b <= 1; ++b)
      if (QuadInt(f, a, b).norm() == 1) out.emplace_back(a, b);
  return out;
}

/// Per difference vector: whether every prime dividing it has norm <= n, and
/// its valuations at those primes.
struct DiffInfo {
  bool clean = false;
  std::vector<std::int32_t> val;
};

class Searcher {
 public:
  Searcher(const Field& f, std::size_t n, const SearchBox& box, const SearchOptions& opt)
      : f_(f), n_(n), box_(box), opt_(opt) {
    primes_ = primes_up_to_norm(f, n);
    for (const auto& P : primes_) {
      std::int64_t t = 0;
      for (std::size_t k = 1; k <= n; ++k) t += w_ring(P, k);
      target_.push_back(static_cast<std::int32_t>(t));
    }
    const Integer limit(static_cast<unsigned long>(n));
    da_ = box.width - 1;
    db_ = 2 * (box.height - 1);
    table_.resize(static_cast<std::size_t>((2 * da_ + 1) * (2 * db_ + 1)));
    for (long a = -da_; a <= da_; ++a) {
      for (long b = -db_; b <= db_; ++b) {
        if (a == 0 && b == 0) continue;
        if (f.is_rational() && b != 0) continue;
        DiffInfo& d = table_[index(a, b)];
        const QuadInt x(f, a, b);
        const FactoredIdeal fx = factor_element(x);
        d.clean = true;
        for (const auto& [P, e] : fx)
          if (P.residue_norm() > limit) d.clean = false;
        for (const auto& P : primes_) d.val.push_back(static_cast<std::int32_t>(fx.exponent(P)));
      }
    }
    for (long a = 0; a < box.width; ++a)
      for (long b = -(box.height - 1); b <= box.height - 1; ++b)
        if ((a > 0 || b > 0) && (!f.is_rational() || b == 0)) cand_.emplace_back(a, b);
    std::sort(cand_.begin(), cand_.end());
    if (!opt_.unit_reduction) units_ = {{1, 0}};
    else units_ = units(f);
  }

  SearchResult run() {
    SearchResult res;
    res.n = n_;
    res.box = box_;
    if (n_ == 0) {
      res.sets.push_back(PointSet::from_coords(f_, {{0, 0}}));
      return res;
    }
    std::vector<std::vector<std::vector<Pt>>> per_stratum(cand_.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto worker = [&] {
      try {
        for (;;) {
          const std::size_t s = next.fetch_add(1);
          if (s >= cand_.size() || over_.load()) break;
          nodes_.fetch_add(1, std::memory_order_relaxed);
          std::vector<Pt> chosen{{0, 0}, cand_[s]};
          std::vector<std::int32_t> sums(primes_.size(), 0);
          bool ok = true;
          if (!add_point(chosen, sums, ok)) continue;
          dfs(chosen, sums, ok, s + 1, per_stratum[s]);
        }
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    };
    unsigned threads = opt_.threads ? opt_.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cand_.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    res.nodes = nodes_.load();
    if (over_.load())
      throw BudgetExceeded("search node budget " + std::to_string(opt_.node_budget) +
                           " exceeded after " + std::to_string(res.nodes) + " nodes");
    for (auto& stratum : per_stratum)
      for (auto& pts : stratum) {
        PointSet S(f_);
        for (const auto& [a, b] : pts) S.insert(QuadInt(f_, a, b));
        ensure(is_n_optimal(S), "search produced a non-optimal set " + S.to_string());
        res.sets.push_back(std::move(S));
      }
    return res;
  }

 private:
  std::size_t index(long a, long b) const {
    return static_cast<std::size_t>((a + da_) * (2 * db_ + 1) + (b + db_));
  }

  /// Accounts for the differences between chosen.back() and the points
  /// before it. Returns false when pruning cuts the node.
  bool add_point(const std::vector<Pt>& chosen, std::vector<std::int32_t>& sums,
                 bool& clean) const {
    const Pt& p = chosen.back();
    for (std::size_t i = 0; i + 1 < chosen.size(); ++i) {
      const DiffInfo& d = table_[index(p.first - chosen[i].first, p.second - chosen[i].second)];
      if (!d.clean) {
        if (opt_.prune) return false;
        clean = false;
        continue;
      }
      for (std::size_t k = 0; k < sums.size(); ++k) {
        sums[k] += d.val[k];
        if (opt_.prune && sums[k] > target_[k]) return false;
      }
    }
    return true;
  }

  void dfs(std::vector<Pt>& chosen, const std::vector<std::int32_t>& sums, bool clean,
           std::size_t from, std::vector<std::vector<Pt>>& out) {
    if (chosen.size() == n_ + 1) {
      if (clean && sums == target_ && canonical(chosen)) out.push_back(chosen);
      return;
    }
    long bmin = 0, bmax = 0;
    for (const auto& q : chosen) {
      bmin = std::min(bmin, q.second);
      bmax = std::max(bmax, q.second);
    }
    for (std::size_t c = from; c < cand_.size(); ++c) {
      const Pt& p = cand_[c];
      if (std::max(bmax, p.second) - std::min(bmin, p.second) > box_.height - 1) continue;
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= opt_.node_budget) {
        over_.store(true);
        return;
      }
      chosen.push_back(p);
      std::vector<std::int32_t> next = sums;
      bool next_clean = clean;
      if (add_point(chosen, next, next_clean)) dfs(chosen, next, next_clean, c + 1, out);
      chosen.pop_back();
      if (over_.load(std::memory_order_relaxed)) return;
    }
  }

  /// Under the requested symmetry reductions, keep only the smallest normal
  /// form among the images that still fit the box.
  bool canonical(const std::vector<Pt>& pts) const {
    if (!opt_.unit_reduction && !opt_.conjugation_reduction) return true;
    const std::vector<Pt> self = normal_form(pts);
    for (int c = 0; c < (opt_.conjugation_reduction ? 2 : 1); ++c) {
      for (const auto& u : units_) {
        std::vector<Pt> img;
        for (const auto& p : pts) img.push_back(mul(f_, c ? conj(f_, p) : p, u));
        img = normal_form(std::move(img));
        if (fits(img, box_) && img < self) return false;
      }
    }
    return true;
  }

  Field f_;
  std::size_t n_;
  SearchBox box_;
  SearchOptions opt_;
  std::vector<PrimeIdeal> primes_;
  std::vector<std::int32_t> target_;
  long da_ = 0, db_ = 0;
  std::vector<DiffInfo> table_;
  std::vector<Pt> cand_;
  std::vector<Pt> units_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> over_{false};
};

}  // namespace

PointSet collapse_about(const PointSet& S, CollapseDirection direction, long axis) {
  if (!rectangular(S.field()))
    throw InputError("collapsing needs a rectangular lattice (imaginary field with d = 2, 3 mod 4), got " +
                     S.field().to_string());
  const bool vertical = direction == CollapseDirection::Vertical;
  // Perpendicular line coordinate -> number of points on it.
  std::map<long, std::size_t> lines;
  for (const auto& x : S) ++lines[vertical ? to_long(x.a()) : to_long(x.b())];
  std::vector<Pt> pts;
  for (const auto& [line, count] : lines)
    for (std::size_t i = 0; i < count; ++i) {
      const long t = axis + pack_offset(i);
      pts.push_back(vertical ? Pt{line, t} : Pt{t, line});
    }
  std::sort(pts.begin(), pts.end());
  PointSet out(S.field());
  for (const auto& [a, b] : pts) out.insert(QuadInt(S.field(), a, b));
  return out;
}

PointSet collapse_axis(const PointSet& S, CollapseDirection direction) {
  if (S.empty()) return S;
  const bool vertical = direction == CollapseDirection::Vertical;
  std::map<long, std::size_t> along;
  for (const auto& x : S) ++along[vertical ? to_long(x.b()) : to_long(x.a())];
  std::size_t best = 0;
  for (const auto& [coord, count] : along) best = std::max(best, count);
  std::vector<long> tied;
  for (const auto& [coord, count] : along)
    if (count == best) tied.push_back(coord);
  // In a collapsed set the tied lines are an interval whose lower median is
  // the axis, which makes collapsing idempotent.
  return collapse_about(S, direction, tied[(tied.size() - 1) / 2]);
}

bool is_collapsed(const PointSet& S, CollapseDirection direction) {
  return collapse_axis(S, direction).same_elements(S);
}

SearchBox default_search_box(const Field& field, std::size_t n) {
  (void)field;
  const long side = std::max<long>(7, static_cast<long>(n) + 1);
  return {side, side,
          "Collapsing never increases |N(Vol)|, and Vol of any (n+1)-set is divisible by the "
          "optimal volume, so collapsing an n-optimal set (vertically, then horizontally) gives an "
          "n-optimal set inside an (n+1)x(n+1) box. A box of side >= n+1 therefore decides "
          "existence up to translation on rectangular lattices."};
}

SearchResult search_optimal(const Field& field, std::size_t n, const SearchBox& box,
                            const SearchOptions& options) {
  if (!field.is_rational() && !field.is_imaginary())
    throw InputError("search_optimal supports Q and imaginary quadratic fields only");
  if (box.width < 1 || box.height < 1) throw InputError("search box must be at least 1x1");
  Searcher s(field, n, box, options);
  SearchResult res = s.run();
  const bool decisive = rectangular(field) && box.width >= static_cast<long>(n) + 1 &&
                        box.height >= static_cast<long>(n) + 1;
  res.scope = "within box " + std::to_string(box.width) + "x" + std::to_string(box.height) +
              " up to translation" +
              (options.unit_reduction ? ", units" : "") +
              (options.conjugation_reduction ? ", conjugation" : "") +
              (res.sets.empty()
                   ? (decisive ? "; empty result is decisive by the collapsing argument"
                               : "; empty result is relative to this box only")
                   : "; every set listed is n-optimal in the whole ring");
  return res;
}

}  // namespace uset
