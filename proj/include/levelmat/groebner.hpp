#ifndef LEVELMAT_GROEBNER_HPP
#define LEVELMAT_GROEBNER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "levelmat/matrix.hpp"
#include "levelmat/polynomial.hpp"

namespace levelmat {

enum class MonomialOrder { degrevlex, lex, deglex };

inline const char* to_string(MonomialOrder o) {
  switch (o) {
    case MonomialOrder::degrevlex: return "degrevlex";
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::deglex: return "deglex";
  }
  return "?";
}

inline MonomialOrder parse_order(const std::string& s) {
  if (s == "degrevlex") return MonomialOrder::degrevlex;
  if (s == "lex") return MonomialOrder::lex;
  if (s == "deglex" || s == "degree-then-lex") return MonomialOrder::deglex;
  throw std::invalid_argument("unknown monomial order '" + s + "'");
}

struct GroebnerLimits {
  int max_degree = 60;
  std::size_t max_pairs = 200000;
};

struct GroebnerStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_processed = 0;
  std::size_t zero_reductions = 0;
  int max_degree_reached = 0;
};

/// A degree or pair cap was hit; the computation stopped without an answer.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  ResourceLimitExceeded(const std::string& what, GroebnerStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const GroebnerStats& stats() const { return stats_; }

 private:
  GroebnerStats stats_;
};

namespace detail {

/// Term order on R^r. Components below `elim` dominate every other component,
/// which is what syzygy extraction relies on; then graded orders compare
/// degree (monomial degree plus the component shift), then monomials, then
/// components (lower index larger).
struct ModuleOrder {
  MonomialOrder kind = MonomialOrder::degrevlex;
  std::vector<int> shifts{0};
  std::size_t elim = 0;

  std::size_t rank() const { return shifts.size(); }

  int degree(const Monomial& m, std::uint32_t comp) const { return m.degree() + shifts[comp]; }

  int compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    if (elim) {
      bool ea = ca < elim, eb = cb < elim;
      if (ea != eb) return ea ? 1 : -1;
    }
    int c = 0;
    switch (kind) {
      case MonomialOrder::degrevlex:
      case MonomialOrder::deglex: {
        int da = degree(a, ca), db = degree(b, cb);
        if (da != db) return da < db ? -1 : 1;
        c = kind == MonomialOrder::degrevlex ? compare_degrevlex(a, b) : compare_deglex(a, b);
        break;
      }
      case MonomialOrder::lex:
        c = compare_lex(a, b);
        break;
    }
    if (c != 0) return c;
    if (ca != cb) return ca < cb ? 1 : -1;
    return 0;
  }
};

template <class F>
struct MTerm {
  Monomial m;
  std::uint32_t comp;
  typename F::Elem c;
};

/// Vector of polynomials as one sorted list of (monomial, component) terms.
template <class F>
using MVec = std::vector<MTerm<F>>;

template <class F>
void sort_mvec(MVec<F>& v, const ModuleOrder& ord) {
  std::sort(v.begin(), v.end(),
            [&](const MTerm<F>& a, const MTerm<F>& b) { return ord.compare(a.m, a.comp, b.m, b.comp) > 0; });
}

template <class F>
MVec<F> to_mvec(const std::vector<Polynomial<F>>& comps, const ModuleOrder& ord, std::uint32_t offset = 0) {
  MVec<F> v;
  for (std::uint32_t i = 0; i < comps.size(); ++i)
    for (const auto& t : comps[i].terms()) v.push_back({t.mono, i + offset, t.coeff});
  sort_mvec<F>(v, ord);
  return v;
}

template <class F>
std::vector<Polynomial<F>> from_mvec(const RingPtr<F>& ring, const MVec<F>& v, std::size_t rank,
                                     std::uint32_t offset = 0) {
  std::vector<std::vector<Term<F>>> parts(rank);
  for (const auto& t : v) {
    if (t.comp < offset || t.comp - offset >= rank) continue;
    parts[t.comp - offset].push_back({t.m, t.c});
  }
  std::vector<Polynomial<F>> out;
  out.reserve(rank);
  for (auto& p : parts) out.push_back(Polynomial<F>::from_terms(ring, std::move(p)));
  return out;
}

/// Buchberger's algorithm for submodules of a free module, with the
/// Gebauer-Moeller criteria and the normal selection strategy (smallest lcm
/// degree first, ties broken by pair index). Inputs are queued by degree with
/// the pairs, so `complete(D)` yields a D-truncated basis for graded inputs.
template <class F>
class ModuleBuchberger {
 public:
  using Elem = typename F::Elem;

  ModuleBuchberger(RingPtr<F> ring, ModuleOrder order, GroebnerLimits limits)
      : ring_(std::move(ring)), k_(ring_->field()), ord_(std::move(order)), limits_(limits) {}

  const ModuleOrder& order() const { return ord_; }
  const GroebnerStats& stats() const { return stats_; }
  const RingPtr<F>& ring() const { return ring_; }

  void add_generator(MVec<F> v) {
    if (v.empty()) return;
    int deg = ord_.degree(v.front().m, v.front().comp);
    gens_.push_back(std::move(v));
    queue_.insert(Pair{deg, 0, gens_.size() - 1, 0, Monomial{}, 0});
  }

  /// Inserts an element that is already reduced with respect to the current basis.
  void add_reduced(MVec<F> v) {
    if (v.empty()) return;
    make_monic(v);
    insert(std::move(v));
  }

  /// Processes queued pairs and inputs, optionally only up to degree `bound`.
  void complete(std::optional<int> bound = std::nullopt) {
    while (!queue_.empty()) {
      Pair top = *queue_.begin();
      if (bound && top.deg > *bound) break;
      if (top.deg > limits_.max_degree)
        throw ResourceLimitExceeded("Groebner computation needs degree " + std::to_string(top.deg) +
                                        " > max-degree " + std::to_string(limits_.max_degree),
                                    stats_);
      if (++stats_.pairs_processed > limits_.max_pairs)
        throw ResourceLimitExceeded("Groebner computation exceeded max-pairs " + std::to_string(limits_.max_pairs),
                                    stats_);
      queue_.erase(queue_.begin());
      stats_.max_degree_reached = std::max(stats_.max_degree_reached, top.deg);
      MVec<F> s = top.kind == 0 ? std::move(gens_[top.i]) : spoly(top.i, top.j, top.lcm);
      s = reduce(std::move(s));
      if (s.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      make_monic(s);
      insert(std::move(s));
    }
  }

  /// Full normal form with respect to the active basis elements.
  MVec<F> reduce(MVec<F> f, std::optional<std::size_t> skip = std::nullopt) const {
    MVec<F> result;
    while (!f.empty()) {
      const auto& lt = f.front();
      std::size_t r = find_reducer(lt.m, lt.comp, skip);
      if (r == kNone) {
        result.push_back(f.front());
        f.erase(f.begin());
        continue;
      }
      const MVec<F>& g = elts_[r].v;
      Monomial t = g.front().m.quotient_of(lt.m);
      Elem c = lt.c;  // g is monic
      f = sub_scaled_tail(f, 1, g, 1, t, c);
    }
    return result;
  }

  /// Interreduced, monic basis sorted by increasing leading term.
  std::vector<MVec<F>> reduced_basis() const {
    std::vector<MVec<F>> out;
    for (std::size_t i = 0; i < elts_.size(); ++i) {
      if (!elts_[i].active) continue;
      MVec<F> tail(elts_[i].v.begin() + 1, elts_[i].v.end());
      MVec<F> red = reduce(std::move(tail), i);
      red.insert(red.begin(), elts_[i].v.front());
      out.push_back(std::move(red));
    }
    std::sort(out.begin(), out.end(), [&](const MVec<F>& a, const MVec<F>& b) {
      return ord_.compare(a.front().m, a.front().comp, b.front().m, b.front().comp) < 0;
    });
    return out;
  }

  bool has_pending() const { return !queue_.empty(); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Elt {
    MVec<F> v;
    std::uint32_t mask;
    bool active;
  };

  // kind 0: queued input generator (index i); kind 1: S-pair (i, j).
  struct Pair {
    int deg;
    int kind;
    std::size_t i;
    std::size_t j;
    Monomial lcm;
    std::uint32_t comp;
    bool operator<(const Pair& o) const {
      return std::tie(deg, kind, i, j) < std::tie(o.deg, o.kind, o.i, o.j);
    }
  };

  void make_monic(MVec<F>& v) const {
    if (k_.is_one(v.front().c)) return;
    Elem inv = k_.inv(v.front().c);
    for (auto& t : v) t.c = k_.mul(t.c, inv);
  }

  std::size_t find_reducer(const Monomial& m, std::uint32_t comp, std::optional<std::size_t> skip) const {
    std::uint32_t mmask = m.support();
    std::size_t best = kNone;
    for (std::size_t i = 0; i < elts_.size(); ++i) {
      const auto& e = elts_[i];
      if (!e.active || (skip && *skip == i)) continue;
      const auto& lt = e.v.front();
      if (lt.comp != comp || (e.mask & ~mmask) != 0 || !lt.m.divides(m)) continue;
      if (best == kNone || e.v.size() < elts_[best].v.size()) best = i;
    }
    return best;
  }

  // (a_coef * f[from_f..]) - c * t * g[1..]; leading terms of f and t*g cancel.
  MVec<F> sub_scaled_tail(const MVec<F>& f, std::size_t from_f, const MVec<F>& g, std::size_t from_g,
                          const Monomial& t, const Elem& c) const {
    MVec<F> out;
    out.reserve(f.size() + g.size());
    std::size_t i = from_f, j = from_g;
    while (i < f.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(f[i++]);
        continue;
      }
      Monomial gm = g[j].m * t;
      int cmp = i == f.size() ? -1 : ord_.compare(f[i].m, f[i].comp, gm, g[j].comp);
      if (cmp > 0) {
        out.push_back(f[i++]);
      } else if (cmp < 0) {
        out.push_back({gm, g[j].comp, k_.neg(k_.mul(c, g[j].c))});
        ++j;
      } else {
        Elem s = k_.sub(f[i].c, k_.mul(c, g[j].c));
        if (!k_.is_zero(s)) out.push_back({f[i].m, f[i].comp, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  MVec<F> spoly(std::size_t a, std::size_t b, const Monomial& lcm) const {
    const MVec<F>& f = elts_[a].v;
    const MVec<F>& g = elts_[b].v;
    Monomial tf = f.front().m.quotient_of(lcm);
    Monomial tg = g.front().m.quotient_of(lcm);
    MVec<F> left;
    left.reserve(f.size());
    for (const auto& term : f) left.push_back({term.m * tf, term.comp, term.c});
    return sub_scaled_tail(left, 1, g, 1, tg, k_.one());
  }

  bool product_criterion_applies() const { return ord_.rank() == 1; }

  void insert(MVec<F> h) {
    const std::size_t hi = elts_.size();
    const Monomial hm = h.front().m;
    const std::uint32_t hc = h.front().comp;
    elts_.push_back(Elt{std::move(h), hm.support(), true});

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!elts_[g].active || elts_[g].v.front().comp != hc) continue;
      const Monomial& gm = elts_[g].v.front().m;
      c.push_back({g, hm.lcm(gm), product_criterion_applies() && hm.coprime(gm)});
    }
    // chain criterion among the new pairs
    std::vector<Cand> d;
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      const Cand& p = c[idx];
      bool keep = p.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t o = idx + 1; o < c.size() && keep; ++o)
          if (c[o].lcm.divides(p.lcm)) keep = false;
        for (std::size_t o = 0; o < d.size() && keep; ++o)
          if (d[o].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    // prune old pairs made redundant by h
    for (auto it = queue_.begin(); it != queue_.end();) {
      const Pair& p = *it;
      if (p.kind == 1 && p.comp == hc && hm.divides(p.lcm)) {
        Monomial l1 = elts_[p.i].v.front().m.lcm(hm);
        Monomial l2 = elts_[p.j].v.front().m.lcm(hm);
        if (l1 != p.lcm && l2 != p.lcm) {
          it = queue_.erase(it);
          continue;
        }
      }
      ++it;
    }
    for (const auto& p : d) {
      if (p.coprime) continue;
      queue_.insert(Pair{ord_.degree(p.lcm, hc), 1, p.g, hi, p.lcm, hc});
      ++stats_.pairs_created;
    }
    for (std::size_t g = 0; g < hi; ++g)
      if (elts_[g].active && elts_[g].v.front().comp == hc && hm.divides(elts_[g].v.front().m))
        elts_[g].active = false;
  }

  RingPtr<F> ring_;
  const F& k_;
  ModuleOrder ord_;
  GroebnerLimits limits_;
  GroebnerStats stats_;
  std::vector<Elt> elts_;
  std::vector<MVec<F>> gens_;
  std::set<Pair> queue_;
};

}  // namespace detail

/// Reduced Groebner basis of an ideal together with its inputs and statistics.
template <class F>
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr<F> ring, std::vector<Polynomial<F>> gens, MonomialOrder order,
                std::vector<detail::MVec<F>> basis, GroebnerStats stats)
      : ring_(std::move(ring)), gens_(std::move(gens)), order_(order), basis_(std::move(basis)), stats_(stats) {
    ord_.kind = order_;
    for (const auto& b : basis_) elements_.push_back(detail::from_mvec(ring_, b, 1).front());
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& generators() const { return gens_; }
  const std::vector<Polynomial<F>>& elements() const { return elements_; }
  MonomialOrder order() const { return order_; }
  const GroebnerStats& stats() const { return stats_; }

  /// Leading monomials with respect to the basis order.
  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& b : basis_) out.push_back(b.front().m);
    return out;
  }

  bool is_unit() const {
    return std::any_of(basis_.begin(), basis_.end(), [](const auto& b) { return b.front().m.is_one(); });
  }

  Polynomial<F> normal_form(const Polynomial<F>& f) const {
    f.check_ring(ring_->zero());
    auto v = detail::to_mvec<F>({f}, ord_);
    const F& k = ring_->field();
    detail::MVec<F> result;
    while (!v.empty()) {
      const auto& lt = v.front();
      const detail::MVec<F>* red = nullptr;
      for (const auto& b : basis_)
        if (b.front().m.divides(lt.m)) {
          red = &b;
          break;
        }
      if (!red) {
        result.push_back(v.front());
        v.erase(v.begin());
        continue;
      }
      Monomial t = red->front().m.quotient_of(lt.m);
      auto c = lt.c;
      detail::MVec<F> next;
      next.reserve(v.size() + red->size());
      std::size_t i = 1, j = 1;
      while (i < v.size() || j < red->size()) {
        if (j == red->size()) {
          next.push_back(v[i++]);
          continue;
        }
        Monomial gm = (*red)[j].m * t;
        int cmp = i == v.size() ? -1 : ord_.compare(v[i].m, 0, gm, 0);
        if (cmp > 0) {
          next.push_back(v[i++]);
        } else if (cmp < 0) {
          next.push_back({gm, 0, k.neg(k.mul(c, (*red)[j].c))});
          ++j;
        } else {
          auto s = k.sub(v[i].c, k.mul(c, (*red)[j].c));
          if (!k.is_zero(s)) next.push_back({v[i].m, 0, std::move(s)});
          ++i;
          ++j;
        }
      }
      v = std::move(next);
    }
    return detail::from_mvec(ring_, result, 1).front();
  }

  bool contains(const Polynomial<F>& f) const { return normal_form(f).is_zero(); }

 private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> gens_;
  MonomialOrder order_;
  detail::ModuleOrder ord_;
  std::vector<detail::MVec<F>> basis_;
  std::vector<Polynomial<F>> elements_;
  GroebnerStats stats_;
};

template <class F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& gens, MonomialOrder order = MonomialOrder::degrevlex,
                            const GroebnerLimits& limits = {}) {
  if (gens.empty()) throw std::invalid_argument("buchberger needs at least one generator");
  const RingPtr<F>& ring = gens.front().ring();
  for (const auto& g : gens) g.check_ring(gens.front());
  detail::ModuleOrder ord;
  ord.kind = order;
  detail::ModuleBuchberger<F> engine(ring, ord, limits);
  for (const auto& g : gens) engine.add_generator(detail::to_mvec<F>({g}, ord));
  engine.complete();
  return GroebnerBasis<F>(ring, gens, order, engine.reduced_basis(), engine.stats());
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
  return gb.normal_form(f);
}

/// Two-way membership test.
template <class F>
bool ideal_equal(const std::vector<Polynomial<F>>& a, const std::vector<Polynomial<F>>& b,
                 const GroebnerLimits& limits = {}) {
  auto nonzero = [](const std::vector<Polynomial<F>>& v) {
    return std::any_of(v.begin(), v.end(), [](const auto& p) { return !p.is_zero(); });
  };
  if (!nonzero(a) || !nonzero(b)) return !nonzero(a) && !nonzero(b);
  auto ga = buchberger(a, MonomialOrder::degrevlex, limits);
  auto gb = buchberger(b, MonomialOrder::degrevlex, limits);
  for (const auto& f : b)
    if (!ga.contains(f)) return false;
  for (const auto& f : a)
    if (!gb.contains(f)) return false;
  return true;
}

/// Krull dimension of R/I from a set of leading monomials: n minus the
/// smallest set of variables meeting the support of every leading monomial.
inline int dimension_from_leading_monomials(const std::vector<Monomial>& lms, std::size_t nvars) {
  std::vector<std::uint32_t> supports;
  for (const auto& m : lms) {
    if (m.is_one()) return -1;
    supports.push_back(m.support());
  }
  if (supports.empty()) return static_cast<int>(nvars);
  int best = static_cast<int>(nvars);
  const std::uint32_t full = nvars >= 32 ? 0xFFFFFFFFu : ((1u << nvars) - 1);
  for (std::uint32_t t = 0; t <= full; ++t) {
    int size = __builtin_popcount(t);
    if (size >= best) continue;
    bool hits = true;
    for (auto s : supports)
      if ((s & t) == 0) {
        hits = false;
        break;
      }
    if (hits) best = size;
    if (t == full) break;
  }
  return static_cast<int>(nvars) - best;
}

template <class F>
void require_homogeneous(const std::vector<Polynomial<F>>& gens) {
  for (const auto& g : gens)
    if (!g.homogeneity().homogeneous)
      throw std::invalid_argument("dimension/height need homogeneous generators; got " + g.to_string());
}

/// dim R/I for a homogeneous ideal; -1 for the unit ideal.
/// claim: height-conditions
template <class F>
int dimension(const std::vector<Polynomial<F>>& gens, const GroebnerLimits& limits = {}) {
  if (gens.empty()) throw std::invalid_argument("dimension needs a ring; pass at least one generator");
  require_homogeneous(gens);
  std::vector<Polynomial<F>> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  const std::size_t n = gens.front().ring()->nvars();
  if (nz.empty()) return static_cast<int>(n);
  auto gb = buchberger(nz, MonomialOrder::degrevlex, limits);
  return dimension_from_leading_monomials(gb.leading_monomials(), n);
}

/// Height n - dim R/I; the unit ideal gets n + 1, above every proper ideal.
/// claim: height-conditions
template <class F>
int height(const std::vector<Polynomial<F>>& gens, const GroebnerLimits& limits = {}) {
  return static_cast<int>(gens.front().ring()->nvars()) - dimension(gens, limits);
}

/// Graded presentation of first syzygies: columns of `matrix` are syzygies,
/// `source_shifts` their degrees, `target_shifts` the degrees of the inputs.
template <class F>
struct SyzygyModule {
  PolyMatrix<F> matrix;
  std::vector<int> target_shifts;
  std::vector<int> source_shifts;
  std::size_t count() const { return source_shifts.size(); }
};

namespace detail {

/// Indices of a minimal generating subset of homogeneous vectors in R^k
/// (graded by `shifts`), scanning by increasing degree.
template <class F>
std::vector<std::size_t> minimal_subset(const RingPtr<F>& ring, const std::vector<MVec<F>>& cands,
                                        const std::vector<int>& shifts, const GroebnerLimits& limits) {
  ModuleOrder ord;
  ord.shifts = shifts;
  std::vector<std::size_t> idx;
  std::vector<int> deg(cands.size(), 0);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].empty()) continue;
    deg[i] = ord.degree(cands[i].front().m, cands[i].front().comp);
    idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });
  ModuleBuchberger<F> gb(ring, ord, limits);
  std::vector<std::size_t> kept;
  for (std::size_t pos = 0; pos < idx.size();) {
    int d = deg[idx[pos]];
    gb.complete(d);
    for (; pos < idx.size() && deg[idx[pos]] == d; ++pos) {
      MVec<F> v = cands[idx[pos]];
      sort_mvec<F>(v, ord);
      auto nf = gb.reduce(std::move(v));
      if (nf.empty()) continue;
      kept.push_back(idx[pos]);
      gb.add_reduced(std::move(nf));
    }
  }
  return kept;
}

}  // namespace detail

/// Syzygies of the columns of a graded map R^k -> R^r. With `minimal`, the
/// result is a minimal homogeneous generating set ordered by degree.
template <class F>
SyzygyModule<F> module_syzygies(const GradedMap<F>& map, const GroebnerLimits& limits = {}, bool minimal = true) {
  const auto& M = map.matrix;
  const std::size_t r = M.rows(), k = M.cols();
  if (!map.is_graded()) throw std::invalid_argument("syzygies need a homogeneous (graded) map");
  const RingPtr<F>& ring = M.ring();

  detail::ModuleOrder ord;
  ord.shifts = map.target_shifts;
  ord.shifts.insert(ord.shifts.end(), map.source_shifts.begin(), map.source_shifts.end());
  ord.elim = r;
  detail::ModuleBuchberger<F> engine(ring, ord, limits);
  for (std::size_t j = 0; j < k; ++j) {
    auto v = detail::to_mvec<F>(M.column(j), ord);
    v.push_back({Monomial{}, static_cast<std::uint32_t>(r + j), ring->field().one()});
    detail::sort_mvec<F>(v, ord);
    engine.add_generator(std::move(v));
  }
  engine.complete();

  detail::ModuleOrder sord;
  sord.shifts = map.source_shifts;
  std::vector<detail::MVec<F>> syz;
  for (auto& b : engine.reduced_basis()) {
    if (b.front().comp < r) continue;
    detail::MVec<F> s;
    for (auto& t : b) s.push_back({t.m, static_cast<std::uint32_t>(t.comp - r), t.c});
    detail::sort_mvec<F>(s, sord);
    syz.push_back(std::move(s));
  }

  std::vector<std::size_t> chosen;
  if (minimal) {
    chosen = detail::minimal_subset(ring, syz, map.source_shifts, limits);
  } else {
    for (std::size_t i = 0; i < syz.size(); ++i) chosen.push_back(i);
  }

  SyzygyModule<F> out;
  out.target_shifts = map.source_shifts;
  out.matrix = PolyMatrix<F>(ring, k, std::max<std::size_t>(chosen.size(), 1));
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    const auto& s = syz[chosen[c]];
    out.source_shifts.push_back(sord.degree(s.front().m, s.front().comp));
    auto col = detail::from_mvec(ring, s, k);
    for (std::size_t i = 0; i < k; ++i) out.matrix(i, c) = col[i];
  }
  if (chosen.empty()) out.matrix = PolyMatrix<F>(ring, k, 1);  // placeholder; count() == 0

  // hard postcondition: every column is a syzygy
  for (std::size_t c = 0; c < chosen.size(); ++c)
    for (std::size_t i = 0; i < r; ++i) {
      auto acc = ring->zero();
      for (std::size_t j = 0; j < k; ++j) acc += M(i, j) * out.matrix(j, c);
      if (!acc.is_zero()) throw ContractViolation("computed syzygy does not annihilate the generators");
    }
  return out;
}

/// First syzygies of an ordered list of homogeneous polynomials.
template <class F>
SyzygyModule<F> syzygies(const std::vector<Polynomial<F>>& gens, const GroebnerLimits& limits = {},
                         bool minimal = true) {
  if (gens.empty()) throw std::invalid_argument("syzygies need at least one generator");
  GradedMap<F> map{PolyMatrix<F>(gens.front().ring(), 1, gens.size()), {0}, {}};
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto h = gens[j].homogeneity();
    if (!h.homogeneous || !h.degree) throw std::invalid_argument("syzygies need nonzero homogeneous generators");
    map.matrix(0, j) = gens[j];
    map.source_shifts.push_back(*h.degree);
  }
  return module_syzygies(map, limits, minimal);
}

/// How heights used for certification are computed. By default rational
/// inputs are reduced to GF(modulus) first; `authoritative` keeps them exact.
struct HeightOptions {
  bool authoritative = false;
  std::uint32_t modulus = PrimeField::kDefaultModulus;
  GroebnerLimits limits;
  bool parallel = true;
};

/// Field the height computation for `F` actually runs over.
template <class F>
std::string height_field_name(const F& k, const HeightOptions& opts) {
  if constexpr (std::is_same_v<F, Rationals>) {
    (void)k;
    return opts.authoritative ? "QQ" : "GF(" + std::to_string(opts.modulus) + ")";
  } else {
    return "GF(" + std::to_string(k.characteristic()) + ")";
  }
}

/// Height of a homogeneous ideal under `opts`. An ideal with no nonzero
/// generator has height 0. Rational generators whose denominators vanish mod p
/// are handled exactly.
template <class F>
int certification_height(const std::vector<Polynomial<F>>& gens, const RingPtr<F>& ring, const HeightOptions& opts) {
  std::vector<Polynomial<F>> nz;
  for (const auto& g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return 0;
  if constexpr (std::is_same_v<F, Rationals>) {
    if (!opts.authoritative) {
      auto target = make_ring<PrimeField>(ring->variables(), PrimeField(opts.modulus));
      std::vector<Polynomial<PrimeField>> mod;
      bool ok = true;
      try {
        for (const auto& g : nz) mod.push_back(change_ring<PrimeField>(g, target));
      } catch (const DivisionByNonUnit&) {
        ok = false;
      }
      if (ok) {
        std::vector<Polynomial<PrimeField>> nzm;
        for (auto& g : mod)
          if (!g.is_zero()) nzm.push_back(std::move(g));
        if (nzm.empty()) return 0;
        return height(nzm, opts.limits);
      }
    }
  }
  return height(nz, opts.limits);
}

}  // namespace levelmat

#endif  // LEVELMAT_GROEBNER_HPP
