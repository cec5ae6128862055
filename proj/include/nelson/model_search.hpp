#pragma once

// Enumeration of finite algebras up to isomorphism and countermodel search.
//
// Lattice skeletons are generated once per size: every labeled partial order
// whose labeling is a linear extension (so 0 is the bottom and n-1 the top),
// kept when all meets and joins exist, then deduplicated canonically. For
// each skeleton the commutative integral fusions are filled in by
// backtracking with monotonicity pruning; residuals are computed from the
// finished table, which forces the residuation law. Weak-arrow lattices run
// the same pipeline over distributive skeletons with an involutive negation,
// pruning the arrow table through the diagonal-fixpoint set.
//
// Canonical form: lexicographically least relabeling over the bijections
// that fix the bounds and respect order-theoretic height. Results of one
// enumeration are sorted by that key, so serial and partitioned runs agree.

#include <algorithm>
#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "algebraizer.hpp"
#include "n4.hpp"
#include "term.hpp"

namespace nelson {

enum class AlgClass { Cibrl, Cibrl3Potent, SPrime, SDef34, N4Lattice, N3Lattice };

inline const char* alg_class_name(AlgClass k) {
  switch (k) {
    case AlgClass::Cibrl: return "cibrl";
    case AlgClass::Cibrl3Potent: return "cibrl-3potent";
    case AlgClass::SPrime: return "sprime";
    case AlgClass::SDef34: return "s-def34";
    case AlgClass::N4Lattice: return "n4";
    case AlgClass::N3Lattice: return "n3";
  }
  return "?";
}

inline std::optional<AlgClass> alg_class_from_string(const std::string& s) {
  if (s == "cibrl") return AlgClass::Cibrl;
  if (s == "cibrl-3potent" || s == "cibrl3") return AlgClass::Cibrl3Potent;
  if (s == "sprime" || s == "s-prime") return AlgClass::SPrime;
  if (s == "s-def34" || s == "sdef34") return AlgClass::SDef34;
  if (s == "n4") return AlgClass::N4Lattice;
  if (s == "n3") return AlgClass::N3Lattice;
  return std::nullopt;
}

inline bool is_weak_arrow_class(AlgClass k) {
  return k == AlgClass::N4Lattice || k == AlgClass::N3Lattice;
}

namespace search_detail {

struct Skeleton {
  int n = 0;
  std::vector<int> meet, join;
  bool leq(int a, int b) const { return meet[static_cast<std::size_t>(a) * n + b] == a; }
  int meet_at(int a, int b) const { return meet[static_cast<std::size_t>(a) * n + b]; }
  int join_at(int a, int b) const { return join[static_cast<std::size_t>(a) * n + b]; }
};

inline std::vector<int> heights(const Skeleton& s) {
  std::vector<int> h(static_cast<std::size_t>(s.n), 0);
  // fixpoint pass; labels need not be a linear extension here
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < s.n; ++x)
      for (int y = 0; y < s.n; ++y)
        if (y != x && s.leq(y, x) && h[static_cast<std::size_t>(x)] < h[static_cast<std::size_t>(y)] + 1) {
          h[static_cast<std::size_t>(x)] = h[static_cast<std::size_t>(y)] + 1;
          changed = true;
        }
  }
  return h;
}

// All bijections old->new that keep the height profile; elements are listed
// by height class, and classes permute internally.
inline std::vector<std::vector<int>> height_perms(const std::vector<int>& h) {
  int n = static_cast<int>(h.size());
  int maxh = 0;
  for (int v : h) maxh = std::max(maxh, v);
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(maxh) + 1);
  for (int x = 0; x < n; ++x) classes[static_cast<std::size_t>(h[static_cast<std::size_t>(x)])].push_back(x);
  std::vector<std::vector<int>> out;
  // odometer over per-class permutations
  std::vector<std::vector<int>> idx;
  for (const auto& cls : classes) {
    std::vector<int> ord(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) ord[i] = static_cast<int>(i);
    idx.push_back(ord);
  }
  std::vector<std::vector<std::vector<int>>> perms_per_class;
  for (auto& ord : idx) {
    std::vector<std::vector<int>> ps;
    std::sort(ord.begin(), ord.end());
    do {
      ps.push_back(ord);
    } while (std::next_permutation(ord.begin(), ord.end()));
    perms_per_class.push_back(std::move(ps));
  }
  std::vector<std::size_t> pick(perms_per_class.size(), 0);
  while (true) {
    std::vector<int> pi(static_cast<std::size_t>(n));
    int offset = 0;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      const auto& cls = classes[ci];
      const auto& pm = perms_per_class[ci][pick[ci]];
      for (std::size_t i = 0; i < cls.size(); ++i)
        pi[static_cast<std::size_t>(cls[i])] = offset + pm[i];
      offset += static_cast<int>(cls.size());
    }
    out.push_back(std::move(pi));
    std::size_t c = 0;
    for (; c < pick.size(); ++c) {
      if (++pick[c] < perms_per_class[c].size()) break;
      pick[c] = 0;
    }
    if (c == pick.size()) break;
  }
  return out;
}

inline std::vector<int> relabel_table(const std::vector<int>& t, const std::vector<int>& pi,
                                      int n) {
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out[static_cast<std::size_t>(pi[static_cast<std::size_t>(a)]) * n +
          pi[static_cast<std::size_t>(b)]] =
          pi[static_cast<std::size_t>(t[static_cast<std::size_t>(a) * n + b])];
  return out;
}

inline std::vector<std::string> generic_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  return names;
}

// key = the concatenated relabeled tables; the least key wins
inline std::pair<std::vector<int>, FiniteAlgebra> canonical_with_key(const FiniteAlgebra& a) {
  Skeleton s{a.size, a.meet, a.join};
  auto h = heights(s);
  std::optional<std::vector<int>> best;
  FiniteAlgebra best_alg;
  for (const auto& pi : height_perms(h)) {
    std::vector<int> key = relabel_table(a.meet, pi, a.size);
    auto append = [&](const std::vector<int>& t) {
      auto r = relabel_table(t, pi, a.size);
      key.insert(key.end(), r.begin(), r.end());
    };
    append(a.join);
    append(a.imp);
    bool has_fuse = a.fuse.has_value();
    if (has_fuse) append(*a.fuse);
    if (!best || key < *best) {
      FiniteAlgebra c;
      c.size = a.size;
      c.names = generic_names(a.size);
      auto it = key.begin();
      auto take = [&]() {
        std::vector<int> t(it, it + a.size * a.size);
        it += a.size * a.size;
        return t;
      };
      c.meet = take();
      c.join = take();
      c.imp = take();
      if (has_fuse) c.fuse = take();
      c.bot = pi[static_cast<std::size_t>(a.bot)];
      c.top = pi[static_cast<std::size_t>(a.top)];
      best = std::move(key);
      best_alg = std::move(c);
    }
  }
  return {*best, best_alg};
}

inline std::pair<std::vector<int>, N4Algebra> canonical_with_key_n4(const N4Algebra& a) {
  Skeleton s{a.size, a.meet, a.join};
  auto h = heights(s);
  std::optional<std::vector<int>> best;
  N4Algebra best_alg;
  for (const auto& pi : height_perms(h)) {
    std::vector<int> key = relabel_table(a.meet, pi, a.size);
    auto join_r = relabel_table(a.join, pi, a.size);
    auto wimp_r = relabel_table(a.wimp, pi, a.size);
    key.insert(key.end(), join_r.begin(), join_r.end());
    key.insert(key.end(), wimp_r.begin(), wimp_r.end());
    std::vector<int> neg_r(static_cast<std::size_t>(a.size));
    for (int x = 0; x < a.size; ++x)
      neg_r[static_cast<std::size_t>(pi[static_cast<std::size_t>(x)])] =
          pi[static_cast<std::size_t>(a.neg_at(x))];
    key.insert(key.end(), neg_r.begin(), neg_r.end());
    if (!best || key < *best) {
      N4Algebra c;
      c.size = a.size;
      c.names = generic_names(a.size);
      c.meet = std::vector<int>(key.begin(), key.begin() + a.size * a.size);
      c.join = join_r;
      c.wimp = wimp_r;
      c.neg = neg_r;
      best = std::move(key);
      best_alg = std::move(c);
    }
  }
  return {*best, best_alg};
}

// Every bounded lattice on 0..n-1 whose labeling is a linear extension,
// deduplicated up to isomorphism.
inline std::vector<Skeleton> lattice_skeletons(int n) {
  std::vector<Skeleton> out;
  if (n == 1) {
    out.push_back(Skeleton{1, {0}, {0}});
    return out;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const std::size_t P = pairs.size();
  std::vector<std::vector<int>> seen_keys;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << P); ++mask) {
    std::vector<char> leq(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i) * n + i] = 1;
    for (std::size_t k = 0; k < P; ++k)
      if (mask >> k & 1)
        leq[static_cast<std::size_t>(pairs[k].first) * n + pairs[k].second] = 1;
    auto le = [&](int a, int b) { return leq[static_cast<std::size_t>(a) * n + b] != 0; };
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (a != b && le(a, b))
          for (int c = 0; c < n; ++c)
            if (b != c && le(b, c) && !le(a, c)) {
              ok = false;
              break;
            }
    if (!ok) continue;
    // bounds come free from the labeling, but meets and joins must exist
    Skeleton s;
    s.n = n;
    s.meet.assign(static_cast<std::size_t>(n) * n, -1);
    s.join.assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        int m = -1, j = -1;
        for (int c = 0; c < n; ++c) {
          if (le(c, a) && le(c, b)) {
            bool maximal = true;
            for (int d = 0; d < n; ++d)
              if (le(d, a) && le(d, b) && !le(d, c)) {
                maximal = false;
                break;
              }
            if (maximal) m = c;
          }
          if (le(a, c) && le(b, c)) {
            bool minimal = true;
            for (int d = 0; d < n; ++d)
              if (le(a, d) && le(b, d) && !le(c, d)) {
                minimal = false;
                break;
              }
            if (minimal) j = c;
          }
        }
        if (m < 0 || j < 0) {
          ok = false;
          break;
        }
        s.meet[static_cast<std::size_t>(a) * n + b] = m;
        s.join[static_cast<std::size_t>(a) * n + b] = j;
      }
    if (!ok) continue;
    if (!std::all_of(s.meet.begin(), s.meet.end(), [](int v) { return v >= 0; })) continue;
    // dedupe by the canonical lattice key
    FiniteAlgebra probe;
    probe.size = n;
    probe.names = generic_names(n);
    probe.meet = s.meet;
    probe.join = s.join;
    probe.imp.assign(static_cast<std::size_t>(n) * n, 0);
    probe.bot = 0;
    probe.top = n - 1;
    auto [key, canon] = canonical_with_key(probe);
    (void)canon;
    if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end()) continue;
    seen_keys.push_back(key);
    out.push_back(std::move(s));
  }
  return out;
}

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool enabled = false;
  bool expired() const { return enabled && std::chrono::steady_clock::now() > at; }
};

// All residuated commutative integral fusions on one skeleton, as complete
// algebras with the computed residual.
inline void fusions_on_skeleton(const Skeleton& s, const std::function<void(FiniteAlgebra&&)>& sink,
                                const Deadline& dl, bool* hit_budget) {
  const int n = s.n;
  const int bot = 0, top = n - 1;
  std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
  auto at = [&](int a, int b) -> int& { return table[static_cast<std::size_t>(a) * n + b]; };
  for (int x = 0; x < n; ++x) {
    at(x, top) = x;
    at(top, x) = x;
    at(x, bot) = bot;
    at(bot, x) = bot;
  }
  std::vector<std::pair<int, int>> free_entries;
  for (int a = 1; a < n - 1; ++a)
    for (int b = a; b < n - 1; ++b) free_entries.emplace_back(a, b);

  auto monotone_ok = [&](int a, int b, int v) {
    // against every already assigned cell, in both directions
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        int w = at(c, d);
        if (w < 0) continue;
        if (s.leq(c, a) && s.leq(d, b) && !s.leq(w, v)) return false;
        if (s.leq(a, c) && s.leq(b, d) && !s.leq(v, w)) return false;
      }
    return true;
  };

  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (dl.expired()) {
      *hit_budget = true;
      return;
    }
    if (k == free_entries.size()) {
      // full associativity, then residuals
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (at(at(a, b), c) != at(a, at(b, c))) return;
      FiniteAlgebra alg;
      alg.size = n;
      alg.names = generic_names(n);
      alg.meet = s.meet;
      alg.join = s.join;
      alg.fuse = table;
      alg.bot = bot;
      alg.top = top;
      alg.imp.assign(static_cast<std::size_t>(n) * n, -1);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          int best = -1;
          for (int b = 0; b < n; ++b) {
            if (!s.leq(at(a, b), c)) continue;
            if (best < 0 || s.leq(best, b)) {
              // candidate maximum; must dominate every member
              best = b;
            }
          }
          if (best < 0) return;
          for (int b = 0; b < n; ++b)
            if (s.leq(at(a, b), c) && !s.leq(b, best)) return;
          alg.imp[static_cast<std::size_t>(a) * n + c] = best;
        }
      sink(std::move(alg));
      return;
    }
    auto [a, b] = free_entries[k];
    int bound = s.meet_at(a, b);
    for (int v = 0; v < n; ++v) {
      if (!s.leq(v, bound)) continue;
      if (!monotone_ok(a, b, v)) continue;
      at(a, b) = v;
      at(b, a) = v;
      go(k + 1);
      at(a, b) = -1;
      at(b, a) = -1;
      if (*hit_budget) return;
    }
  };
  go(0);
}

inline bool involutive(const FiniteAlgebra& a) {
  for (int x = 0; x < a.size; ++x)
    if (a.neg_at(a.neg_at(x)) != x) return false;
  return true;
}

inline bool three_potent(const FiniteAlgebra& a) {
  for (int x = 0; x < a.size; ++x)
    if (!a.leq(a.power(x, 2), a.power(x, 3))) return false;
  return true;
}

// All involutive antitone negations satisfying both De Morgan laws.
inline std::vector<std::vector<int>> de_morgan_negations(const Skeleton& s) {
  std::vector<std::vector<int>> out;
  const int n = s.n;
  std::vector<int> neg(static_cast<std::size_t>(n), 0);
  std::function<void(int)> go = [&](int x) {
    if (x == n) {
      for (int a = 0; a < n; ++a) {
        if (neg[static_cast<std::size_t>(neg[static_cast<std::size_t>(a)])] != a) return;
        for (int b = 0; b < n; ++b) {
          if (neg[static_cast<std::size_t>(s.meet_at(a, b))] !=
              s.join_at(neg[static_cast<std::size_t>(a)], neg[static_cast<std::size_t>(b)]))
            return;
          if (neg[static_cast<std::size_t>(s.join_at(a, b))] !=
              s.meet_at(neg[static_cast<std::size_t>(a)], neg[static_cast<std::size_t>(b)]))
            return;
        }
      }
      out.push_back(neg);
      return;
    }
    for (int v = 0; v < n; ++v) {
      neg[static_cast<std::size_t>(x)] = v;
      go(x + 1);
    }
  };
  go(0);
  return out;
}

// Weak-arrow tables on a De Morgan skeleton. The diagonal goes first and
// fixes the set D of arrow fixpoints; comparable cells must then land in D
// outright, and each cell is checked against its contraposed partner as soon
// as both are known. Surviving tables get the full class check, with the
// arrow-independent De Morgan part hoisted out of the loop.
inline void arrows_on_skeleton(const Skeleton& s, const std::vector<int>& neg, bool want_n3,
                               const std::function<void(N4Algebra&&)>& sink, const Deadline& dl,
                               bool* hit_budget) {
  const int n = s.n;
  auto ng = [&](int x) { return neg[static_cast<std::size_t>(x)]; };
  {
    N4Algebra probe;
    probe.size = n;
    probe.names = generic_names(n);
    probe.meet = s.meet;
    probe.join = s.join;
    probe.neg = neg;
    probe.wimp.assign(static_cast<std::size_t>(n) * n, 0);
    if (!check_de_morgan(probe).passed()) return;
  }

  std::vector<int> t(static_cast<std::size_t>(n) * n, -1);
  auto at = [&](int a, int b) -> int& { return t[static_cast<std::size_t>(a) * n + b]; };
  std::vector<char> in_d(static_cast<std::size_t>(n), 0);

  // couple every off-diagonal cell with its contraposed partner, strictly
  // comparable couples first
  std::vector<std::pair<int, int>> off;
  {
    std::vector<char> scheduled(static_cast<std::size_t>(n) * n, 0);
    auto push_couple = [&](int a, int b) {
      if (scheduled[static_cast<std::size_t>(a) * n + b]) return;
      scheduled[static_cast<std::size_t>(a) * n + b] = 1;
      off.emplace_back(a, b);
      int ma = ng(b), mb = ng(a);
      if (!(ma == a && mb == b) && !scheduled[static_cast<std::size_t>(ma) * n + mb]) {
        scheduled[static_cast<std::size_t>(ma) * n + mb] = 1;
        off.emplace_back(ma, mb);
      }
    };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && s.leq(a, b)) push_couple(a, b);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) push_couple(a, b);
  }

  auto cell_ok = [&](int x, int y) {
    int v = at(x, y);
    bool le = s.leq(x, y);
    if (le && !in_d[static_cast<std::size_t>(v)]) return false;
    int w = at(ng(y), ng(x));
    if (w >= 0) {
      bool both = in_d[static_cast<std::size_t>(v)] && in_d[static_cast<std::size_t>(w)];
      if (le ? !both : both) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> fill = [&](std::size_t k) {
    if (dl.expired()) {
      *hit_budget = true;
      return;
    }
    if (k == off.size()) {
      N4Algebra alg;
      alg.size = n;
      alg.names = generic_names(n);
      alg.meet = s.meet;
      alg.join = s.join;
      alg.wimp = t;
      alg.neg = neg;
      if (!n4_conditions_quick(alg)) return;
      if (want_n3 && !n13_valid_quick(alg)) return;
      sink(std::move(alg));
      return;
    }
    auto [a, b] = off[k];
    for (int v = 0; v < n; ++v) {
      at(a, b) = v;
      if (cell_ok(a, b)) fill(k + 1);
      at(a, b) = -1;
      if (*hit_budget) return;
    }
  };

  // diagonal first; it fixes the fixpoint set
  std::vector<int> diag(static_cast<std::size_t>(n), -1);
  std::function<void(int)> diag_go = [&](int x) {
    if (x == n) {
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        int d = diag[static_cast<std::size_t>(a)];
        ok = diag[static_cast<std::size_t>(d)] == d;
      }
      if (!ok) return;
      for (int a = 0; a < n; ++a) {
        at(a, a) = diag[static_cast<std::size_t>(a)];
        in_d[static_cast<std::size_t>(a)] = diag[static_cast<std::size_t>(a)] == a ? 1 : 0;
      }
      fill(0);
      for (int a = 0; a < n; ++a) at(a, a) = -1;
      return;
    }
    for (int v = 0; v < n; ++v) {
      diag[static_cast<std::size_t>(x)] = v;
      diag_go(x + 1);
      if (*hit_budget) return;
    }
  };
  diag_go(0);
}

}  // namespace search_detail

// ---------------------------------------------------------------------------

struct EnumerationResult {
  AlgClass klass = AlgClass::Cibrl;
  int size = 0;
  std::vector<FiniteAlgebra> algebras;
  std::vector<N4Algebra> n4algebras;
  bool partial = false;

  int count() const {
    return static_cast<int>(is_weak(klass) ? n4algebras.size() : algebras.size());
  }

 private:
  static bool is_weak(AlgClass k) { return is_weak_arrow_class(k); }
};

struct SearchSpec {
  AlgClass klass = AlgClass::SPrime;
  int max_size = 4;
  std::optional<Quasiequation> statement;
  long budget_ms = 0;
  int jobs = 1;
};

inline bool check_distributivity(const FiniteAlgebra& a) {
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      for (int z = 0; z < a.size; ++z)
        if (a.meet_at(x, a.join_at(y, z)) != a.join_at(a.meet_at(x, y), a.meet_at(x, z)))
          return false;
  return true;
}

inline EnumerationResult enumerate_class(AlgClass k, int size, int jobs = 1, long budget_ms = 0,
                                         int ceiling = 6) {
  if (size < 1) throw AlgebraError("size must be positive");
  if (size > ceiling) throw AlgebraError("size exceeds the enumeration ceiling");
  if (jobs < 1) jobs = 1;
  EnumerationResult res;
  res.klass = k;
  res.size = size;
  search_detail::Deadline dl;
  if (budget_ms > 0) {
    dl.enabled = true;
    dl.at = std::chrono::steady_clock::now() + std::chrono::milliseconds(budget_ms);
  }
  auto skeletons = search_detail::lattice_skeletons(size);

  if (!is_weak_arrow_class(k)) {
    auto run_chunk = [&](std::size_t begin, std::size_t stride) {
      std::vector<std::pair<std::vector<int>, FiniteAlgebra>> found;
      bool hit = false;
      for (std::size_t i = begin; i < skeletons.size(); i += stride) {
        search_detail::fusions_on_skeleton(
            skeletons[i],
            [&](FiniteAlgebra&& alg) {
              bool keep = true;
              switch (k) {
                case AlgClass::Cibrl: keep = true; break;
                case AlgClass::Cibrl3Potent: keep = search_detail::three_potent(alg); break;
                case AlgClass::SPrime:
                  keep = search_detail::involutive(alg) && search_detail::three_potent(alg);
                  break;
                case AlgClass::SDef34: {
                  FiniteAlgebra plain = to_s_algebra(alg);
                  keep = check_s_def34(plain, 2).passed();
                  if (keep) alg = plain;
                  break;
                }
                default: keep = false;
              }
              if (keep) found.push_back(search_detail::canonical_with_key(alg));
            },
            dl, &hit);
      }
      return std::make_pair(std::move(found), hit);
    };
    std::vector<std::pair<std::vector<int>, FiniteAlgebra>> all;
    if (jobs == 1) {
      auto [found, hit] = run_chunk(0, 1);
      all = std::move(found);
      res.partial = hit;
    } else {
      std::vector<std::future<std::pair<std::vector<std::pair<std::vector<int>, FiniteAlgebra>>, bool>>> futs;
      for (int j = 0; j < jobs; ++j)
        futs.push_back(std::async(std::launch::async, run_chunk, static_cast<std::size_t>(j),
                                  static_cast<std::size_t>(jobs)));
      for (auto& f : futs) {
        auto [found, hit] = f.get();
        res.partial = res.partial || hit;
        for (auto& x : found) all.push_back(std::move(x));
      }
    }
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const auto& x, const auto& y) { return x.first == y.first; }),
              all.end());
    for (auto& [key, alg] : all) res.algebras.push_back(std::move(alg));
    return res;
  }

  // weak-arrow classes: distributive skeletons with a De Morgan negation
  struct Task {
    const search_detail::Skeleton* s;
    std::vector<int> neg;
  };
  std::vector<Task> tasks;
  for (const auto& s : skeletons) {
    FiniteAlgebra probe;
    probe.size = s.n;
    probe.meet = s.meet;
    probe.join = s.join;
    probe.imp.assign(static_cast<std::size_t>(s.n) * s.n, 0);
    probe.names = search_detail::generic_names(s.n);
    probe.bot = 0;
    probe.top = s.n - 1;
    if (!check_distributivity(probe)) continue;
    for (auto& neg : search_detail::de_morgan_negations(s)) tasks.push_back({&s, std::move(neg)});
  }
  auto run_chunk = [&](std::size_t begin, std::size_t stride) {
    std::vector<std::pair<std::vector<int>, N4Algebra>> found;
    bool hit = false;
    for (std::size_t i = begin; i < tasks.size(); i += stride)
      search_detail::arrows_on_skeleton(
          *tasks[i].s, tasks[i].neg, k == AlgClass::N3Lattice,
          [&](N4Algebra&& alg) { found.push_back(search_detail::canonical_with_key_n4(alg)); },
          dl, &hit);
    return std::make_pair(std::move(found), hit);
  };
  std::vector<std::pair<std::vector<int>, N4Algebra>> all;
  if (jobs == 1) {
    auto [found, hit] = run_chunk(0, 1);
    all = std::move(found);
    res.partial = hit;
  } else {
    std::vector<std::future<std::pair<std::vector<std::pair<std::vector<int>, N4Algebra>>, bool>>> futs;
    for (int j = 0; j < jobs; ++j)
      futs.push_back(std::async(std::launch::async, run_chunk, static_cast<std::size_t>(j),
                                static_cast<std::size_t>(jobs)));
    for (auto& f : futs) {
      auto [found, hit] = f.get();
      res.partial = res.partial || hit;
      for (auto& x : found) all.push_back(std::move(x));
    }
  }
  std::sort(all.begin(), all.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const auto& x, const auto& y) { return x.first == y.first; }),
            all.end());
  for (auto& [key, alg] : all) res.n4algebras.push_back(std::move(alg));
  return res;
}

// Bijection preserving all tables and constants, by backtracking over the
// height-respecting relabelings.
inline bool isomorphic(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.size != b.size) return false;
  return search_detail::canonical_with_key(a).first == search_detail::canonical_with_key(b).first;
}

inline bool isomorphic(const N4Algebra& a, const N4Algebra& b) {
  if (a.size != b.size) return false;
  return search_detail::canonical_with_key_n4(a).first ==
         search_detail::canonical_with_key_n4(b).first;
}

struct Countermodel {
  std::optional<FiniteAlgebra> algebra;
  std::optional<N4Algebra> n4algebra;
  Valuation valuation;
  int lhs_value = 0, rhs_value = 0;
};

// Smallest witness in the canonical sweep order: size, then canonical list
// position, then lexicographic valuation order.
inline std::optional<Countermodel> find_countermodel(const Quasiequation& st, AlgClass k,
                                                     int max_size, int jobs = 1,
                                                     int ceiling = 6) {
  for (int n = 1; n <= max_size; ++n) {
    EnumerationResult res = enumerate_class(k, n, jobs, 0, ceiling);
    if (!is_weak_arrow_class(k)) {
      for (const auto& alg : res.algebras) {
        auto w = find_statement_witness(alg, st);
        if (w) {
          Countermodel cm;
          cm.algebra = alg;
          cm.valuation = *w;
          cm.lhs_value = eval_term(alg, st.conclusion.lhs, *w);
          cm.rhs_value = eval_term(alg, st.conclusion.rhs, *w);
          return cm;
        }
      }
    } else {
      for (const auto& alg : res.n4algebras) {
        auto w = find_statement_witness_n4(alg, st);
        if (w) {
          Countermodel cm;
          cm.n4algebra = alg;
          cm.valuation = *w;
          cm.lhs_value = eval_term_n4(alg, st.conclusion.lhs, *w);
          cm.rhs_value = eval_term_n4(alg, st.conclusion.rhs, *w);
          return cm;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace nelson
