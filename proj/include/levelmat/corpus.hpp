#ifndef LEVELMAT_CORPUS_HPP
#define LEVELMAT_CORPUS_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "levelmat/json_io.hpp"
#include "levelmat/level.hpp"
#include "levelmat/resolution.hpp"
#include "levelmat/rim.hpp"
#include "levelmat/template.hpp"

#ifndef LEVELMAT_DEFAULT_CORPUS_DIR
#define LEVELMAT_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace levelmat {

/// The field characteristic divides a quantity the example must invert.
class CharacteristicError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline std::filesystem::path corpus_dir() {
  if (const char* env = std::getenv("LEVELMAT_CORPUS_DIR"); env && *env) return env;
  return LEVELMAT_DEFAULT_CORPUS_DIR;
}

inline std::vector<std::string> list_records() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir(), ec))
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

/// A corpus example as stored on disk, with its parameter ranges.
struct ExampleRecord {
  std::string name;
  json data;

  std::string title() const { return data.value("title", name); }
  std::string kind() const { return data.at("level").value("kind", ""); }

  /// Defaults filled in and ranges enforced.
  Params resolve_params(const Params& given) const {
    Params out;
    const json& declared = data.contains("params") ? data.at("params") : json::object();
    for (const auto& [key, p] : given)
      if (!declared.contains(key)) throw std::invalid_argument("example '" + name + "' has no parameter '" + key + "'");
    for (auto it = declared.begin(); it != declared.end(); ++it) {
      long long v = given.count(it.key()) ? given.at(it.key()) : it.value().at("default").get<long long>();
      long long lo = it.value().value("min", v), hi = it.value().value("max", v);
      if (v < lo || v > hi)
        throw std::invalid_argument("parameter " + it.key() + " = " + std::to_string(v) + " outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
      out[it.key()] = v;
    }
    return out;
  }
};

inline ExampleRecord load_record(const std::string& name) {
  auto path = corpus_dir() / (name + ".json");
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("unknown example '" + name + "' (looked in " + corpus_dir().string() + ")");
  try {
    return ExampleRecord{name, json::parse(in)};
  } catch (const json::parse_error& e) {
    throw InputError("corpus record " + path.string() + ": " + e.what());
  }
}

/// Expands templates in a JSON value: strings get "{expr}" replaced, numbers pass through.
inline json expand_json(const json& j, const Params& params) {
  if (j.is_string()) return expand_template(j.get<std::string>(), params);
  if (j.is_array() || j.is_object()) {
    json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = expand_json(*it, params);
    return out;
  }
  return j;
}

inline int json_to_int(const json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw InputError("expected an integer, got '" + s + "'");
    return v;
  }
  throw InputError("expected an integer");
}

inline LatentData latent_from_template(const json& j, const Params& params) {
  auto e = expand_json(j, params);
  LatentData c;
  c.d = json_to_int(e.at("d"));
  c.m = json_to_int(e.at("m"));
  for (const auto& v : e.at("delta")) c.delta.push_back(json_to_int(v));
  for (const auto& v : e.at("epsilon")) c.epsilon.push_back(json_to_int(v));
  return c;
}

inline std::vector<std::vector<int>> shifts_from_template(const json& j, const Params& params) {
  std::vector<std::vector<int>> out;
  for (const auto& mod : expand_json(j, params)) {
    out.emplace_back();
    for (const auto& v : mod) out.back().push_back(json_to_int(v));
  }
  return out;
}

/// (f_x, f_y, f_z, ...): all partial derivatives of a form. `nondivisors`
/// are integers the characteristic must not divide.
/// claim: jacobian-ideal
template <class F>
std::vector<Polynomial<F>> jacobian_ideal(const Polynomial<F>& f, const std::vector<long long>& nondivisors = {}) {
  auto h = f.homogeneity();
  if (f.is_zero() || !h.homogeneous) throw std::invalid_argument("jacobian_ideal needs a nonzero form");
  const auto p = static_cast<long long>(f.field().characteristic());
  for (long long v : nondivisors)
    if (v == 0 || (p != 0 && v % p == 0))
      throw CharacteristicError("characteristic " + std::to_string(p) + " divides " + std::to_string(v));
  std::vector<Polynomial<F>> out;
  for (std::size_t i = 0; i < f.ring()->nvars(); ++i) out.push_back(f.derivative(i));
  return out;
}

/// p = c q for a nonzero constant c (both zero also counts).
template <class F>
bool proportional(const Polynomial<F>& p, const Polynomial<F>& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  if (p.size() != q.size()) return false;
  const F& k = p.field();
  auto c = k.div(p.leading_term().coeff, q.leading_term().coeff);
  return p == q.scale(c);
}

/// One line of an example or acceptance report.
struct CheckLine {
  std::string check;
  std::string claim;  // identifier in the claim index; empty for bookkeeping lines
  bool passed = true;
  json detail = json::object();
  bool informational = false;  // reported, never counted as a failure
};

struct ExampleReport {
  std::string name;
  Params params;
  std::vector<CheckLine> lines;

  bool ok() const {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed || l.informational; });
  }
  const CheckLine* find(const std::string& check) const {
    for (const auto& l : lines)
      if (l.check == check) return &l;
    return nullptr;
  }
};

inline json check_to_json(const std::string& example, const CheckLine& l) {
  json j{{"example", example}, {"check", l.check}};
  if (!l.claim.empty()) j["claim"] = l.claim;
  j["status"] = l.informational ? "info" : (l.passed ? "pass" : "fail");
  if (l.informational) j["holds"] = l.passed;
  if (!l.detail.empty()) j["detail"] = l.detail;
  return j;
}

/// Everything an example produces along the way, kept for callers that want
/// more than the report (tests, the acceptance runner).
template <class F>
struct ExampleRun {
  ExampleReport report;
  RingPtr<F> ring;
  std::optional<Polynomial<F>> form;
  std::vector<Polynomial<F>> generators;
  std::optional<Resolve3Result<F>> resolution;
  std::optional<LevelMatrix<F>> level;
  std::optional<GradedComplex<F>> built;
};

struct ExampleOptions {
  HeightOptions heights;
  std::optional<std::uint64_t> seed;  // overrides the record's seed list
  bool round_trip = true;
};

namespace detail {

/// Replaces D(v) by the partial derivative of `form` in v, and whole-word
/// symbols by parenthesized text.
template <class F>
std::string substitute_symbols(std::string text, const std::optional<Polynomial<F>>& form,
                               const std::map<std::string, std::string>& symbols) {
  if (form) {
    static const std::regex partial(R"(D\(([A-Za-z][A-Za-z0-9_]*)\))");
    std::string out;
    auto begin = std::sregex_iterator(text.begin(), text.end(), partial);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      out += text.substr(last, static_cast<std::size_t>(it->position()) - last);
      out += "(" + form->derivative((*it)[1].str()).to_string() + ")";
      last = static_cast<std::size_t>(it->position() + it->length());
    }
    text = out + text.substr(last);
  }
  for (const auto& [sym, value] : symbols) text = std::regex_replace(text, std::regex("\\b" + sym + "\\b"), "(" + value + ")");
  return text;
}

template <class F>
Polynomial<F> dense_random_form(const RingPtr<F>& ring, int degree, std::mt19937_64& rng) {
  std::vector<Term<F>> terms;
  for (const auto& m : monomials_of_degree(ring->nvars(), degree))
    terms.push_back({m, ring->field().random_nonzero(rng)});
  return Polynomial<F>::from_terms(ring, std::move(terms));
}

template <class F>
Polynomial<F> random_form(const RingPtr<F>& ring, int degree, std::mt19937_64& rng) {
  if (degree < 0) return ring->zero();
  return dense_random_form(ring, degree, rng);
}

}  // namespace detail

/// Arrangement data for general forms f_1..f_{m-2}: B = [B' | Jacobian],
/// the identity block sits on the last three columns.
template <class F>
struct ArrangementData {
  std::vector<Polynomial<F>> forms;
  Polynomial<F> product;
  PolyMatrix<F> B;
  PolyMatrix<F> B_prime;
  LatentData latent;
  std::vector<std::vector<int>> expected_shifts;
};

template <class F>
ArrangementData<F> make_arrangement(const RingPtr<F>& ring, const std::vector<int>& degrees, std::uint64_t seed) {
  const std::size_t r = degrees.size();
  if (r < 4) throw std::invalid_argument("arrangement needs at least four forms (m >= 6)");
  if (!std::is_sorted(degrees.begin(), degrees.end()) || degrees.front() < 2)
    throw std::invalid_argument("form degrees must be nondecreasing and at least 2");
  std::mt19937_64 rng(seed);
  ArrangementData<F> a{{}, ring->one(), PolyMatrix<F>(ring, r, r + 2), PolyMatrix<F>(ring, r, r - 1), {}, {}};
  for (int deg : degrees) {
    a.forms.push_back(detail::dense_random_form(ring, deg, rng));
    a.product *= a.forms.back();
  }
  for (std::size_t i = 0; i + 1 < r; ++i) a.B_prime(i, i) = -a.forms[i];
  for (std::size_t j = 0; j + 1 < r; ++j) a.B_prime(r - 1, j) = a.forms[r - 1];
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j + 1 < r; ++j) a.B(i, j) = a.B_prime(i, j);
    for (std::size_t v = 0; v < 3; ++v) a.B(i, r - 1 + v) = a.forms[i].derivative(v);
  }
  const int m = static_cast<int>(r) + 2;
  const int d = a.product.degree() - 1;
  a.latent.d = d;
  a.latent.m = m;
  for (int j = 0; j < m - 3; ++j) a.latent.delta.push_back(d - 1);
  for (int j = 0; j < 3; ++j) a.latent.delta.push_back(d);
  for (int i = 0; i < m - 2; ++i) a.latent.epsilon.push_back(i < m - 5 ? degrees[i] : degrees[i] - 1);
  a.expected_shifts = {{0}, {d, d, d}, {}, {}};
  for (int j = 0; j < m - 3; ++j) a.expected_shifts[2].push_back(2 * d - 1);
  for (int j = 0; j < 3; ++j) a.expected_shifts[2].push_back(2 * d);
  for (int j = 0; j < m - 2; ++j) a.expected_shifts[3].push_back(2 * d + degrees[j] - 1);
  std::sort(a.expected_shifts[3].begin(), a.expected_shifts[3].end());
  return a;
}

namespace detail {

inline void push(ExampleReport& rep, std::string check, std::string claim, bool passed, json detail = json::object(),
          bool informational = false) {
  rep.lines.push_back({std::move(check), std::move(claim), passed, std::move(detail), informational});
}

/// Tries orderings of psi within blocks of equal degree until the stacked
/// matrix is level and its fixed-block minors generate `gens`.
template <class F>
std::optional<LevelMatrix<F>> stack_over_psi(const LatentData& latent, const PolyMatrix<F>& A,
                                             const GradedComplex<F>& cx, const std::vector<Polynomial<F>>& gens,
                                             const HeightOptions& opts, std::vector<std::size_t>& order_out) {
  const auto& psi = cx.maps[2].matrix;
  const auto& f2 = cx.modules[2];
  const std::size_t m = psi.rows();
  if (psi.cols() != 1) return std::nullopt;
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  do {
    bool respects = true;
    for (std::size_t i = 0; i < m; ++i)
      if (f2[order[i]] != f2[i]) respects = false;
    if (!respects) continue;
    PolyMatrix<F> B(A.ring(), 1, m);
    for (std::size_t j = 0; j < m; ++j) B(0, j) = psi(order[j], 0);
    auto eta = certify_level(latent, A, B, opts);
    if (eta.certified() && ideal_equal(minors_fixing_lower_block(eta), gens, opts.limits)) {
      order_out = order;
      return eta;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

/// Entries of the forced format filled with seeded random forms of the right degrees.
template <class F>
std::pair<PolyMatrix<F>, PolyMatrix<F>> forced_format(const RingPtr<F>& ring, const LatentData& L, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto m = static_cast<std::size_t>(L.m);
  PolyMatrix<F> A(ring, 3, m), B(ring, m - 2, m);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < m; ++j) A(i, j) = random_form(ring, L.a_degree(j), rng);
  for (std::size_t i = 0; i + 2 < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (L.b_degree(i, j) > 0) B(i, j) = random_form(ring, L.b_degree(i, j), rng);
  return {A, B};
}

}  // namespace detail

/// Runs the full pipeline for one record: generators, resolution from
/// scratch, the level matrix the record describes, the complex it induces,
/// and the comparisons against the stored expectations.
/// claim: worked-examples
template <class F>
ExampleRun<F> run_example(const ExampleRecord& rec, const Params& given, const F& field = F{},
                          const ExampleOptions& opts = {}) {
  using detail::push;
  ExampleRun<F> run;
  auto& rep = run.report;
  rep.name = rec.name;
  rep.params = rec.resolve_params(given);
  const Params& params = rep.params;
  const json& data = rec.data;
  const json& level = data.at("level");
  const json expected = data.contains("expected") ? data.at("expected") : json::object();
  const HeightOptions& hopts = opts.heights;
  const std::string kind = rec.kind();

  run.ring = make_ring<F>(data.value("ring", std::vector<std::string>{"x", "y", "z"}), field);
  const auto& ring = run.ring;
  auto P = [&](const std::string& text) { return parse_poly(ring, expand_template(text, params)); };

  std::vector<long long> nondivisors;
  if (data.contains("char_nondivisors"))
    for (const auto& v : data.at("char_nondivisors")) nondivisors.push_back(json_to_int(expand_json(v, params)));
  {
    const auto p = static_cast<long long>(field.characteristic());
    for (long long v : nondivisors)
      if (v == 0 || (p != 0 && v % p == 0))
        throw CharacteristicError("example '" + rec.name + "' needs the characteristic not to divide " +
                                  std::to_string(v));
  }

  std::optional<ArrangementData<F>> arrangement;
  std::uint64_t seed_used = 0;
  if (kind == "rty") {
    auto degrees = level.at("degrees").get<std::vector<int>>();
    std::vector<std::uint64_t> seeds = level.at("seeds").get<std::vector<std::uint64_t>>();
    if (opts.seed) seeds = {*opts.seed};
    for (auto s : seeds) {
      auto a = make_arrangement(ring, degrees, s);
      const auto m = static_cast<std::size_t>(a.latent.m);
      int hB = certification_height(maximal_minors(a.B), ring, hopts);
      int hBp = certification_height(minors_ideal(a.B_prime, m - 3), ring, hopts);
      bool ok = hB >= 3 && hBp >= 2;
      push(rep, "arrangement-hypotheses", "identity-block-embedding", ok,
              {{"seed", s}, {"ht_I(B)", hB}, {"ht_I(B')", hBp}}, !ok && s != seeds.back());
      if (ok) {
        arrangement = std::move(a);
        seed_used = s;
        break;
      }
    }
    if (!arrangement) return run;
    run.form = arrangement->product;
    rep.params["seed"] = static_cast<long long>(seed_used);
  } else if (data.contains("form")) {
    run.form = P(data.at("form").get<std::string>());
  }

  if (run.form) {
    run.generators = jacobian_ideal(*run.form, nondivisors);
    const auto& f = *run.form;
    const auto deg = f.degree();
    auto euler = ring->zero();
    for (std::size_t v = 0; v < ring->nvars(); ++v) euler += ring->var(v) * run.generators[v];
    bool euler_ok = euler == f.scale(field.from_int(deg));
    push(rep, "euler-relation", "jacobian-ideal", euler_ok, {{"degree", deg}});
  }

  // resolution of the generators from scratch
  if (!run.generators.empty()) {
    run.resolution = resolve_3generated(run.generators, hopts);
    const auto& r = *run.resolution;
    json detail{{"height", r.height}, {"homological_dimension", r.homological_dimension}};
    if (r.complex) detail["shifts"] = r.complex->modules;
    if (!r.ok()) detail["failure"] = r.failure;
    push(rep, "resolution-from-scratch", "three-generated-resolution-shape", r.ok(), detail);

    std::optional<std::vector<std::vector<int>>> want;
    if (expected.contains("shifts")) want = shifts_from_template(expected.at("shifts"), params);
    if (arrangement) want = arrangement->expected_shifts;
    if (want && r.complex) {
      bool match = r.complex->modules == *want;
      json d{{"expected", *want}, {"computed", r.complex->modules}};
      if (expected.contains("display")) d["display"] = expected.at("display");
      push(rep, "shifts-match-display", "level-minors-resolution", match, d);
      if (!match && expected.contains("consistent_shifts")) {
        auto alt = shifts_from_template(expected.at("consistent_shifts"), params);
        push(rep, "shifts-match-consistent-reading", "level-minors-resolution", r.complex->modules == alt,
                {{"expected", alt}, {"computed", r.complex->modules}}, true);
      }
    }
    if (r.ok()) {
      const auto& lat = *r.latent->latent;
      push(rep, "latent-from-shifts", "latent-data-conditions", r.latent->ok(), {{"latent", latent_to_json(lat)}});
      auto h = hilbert_numerator(*r.complex);
      bool good = h.value == 0 && h.first == 0 && h.multiplicity >= 1;
      push(rep, "hilbert-numerator", "hilbert-multiplicity", good, hilbert_to_json(h));
    }
    if (expected.contains("psi") && r.ok()) {
      auto want_psi = poly_list_from_json(ring, expand_json(expected.at("psi"), params));
      const auto& psi = r.complex->maps[2].matrix;
      bool match = psi.cols() == 1 && psi.rows() == want_psi.size();
      // equal up to one common unit, allowing reordering inside blocks of equal degree
      std::vector<std::string> computed;
      if (match) {
        std::vector<std::size_t> order(want_psi.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        bool found = false;
        do {
          bool same_degrees = true;
          for (std::size_t i = 0; i < order.size(); ++i)
            if (r.complex->modules[2][order[i]] != r.complex->modules[2][i]) same_degrees = false;
          if (!same_degrees) continue;
          std::optional<typename F::Elem> unit;
          bool ok = true;
          for (std::size_t i = 0; i < order.size() && ok; ++i) {
            const auto& got = psi(order[i], 0);
            if (!proportional(got, want_psi[i])) {
              ok = false;
              break;
            }
            if (got.is_zero()) continue;
            auto c = field.div(got.leading_term().coeff, want_psi[i].leading_term().coeff);
            if (unit && !field.equal(*unit, c)) ok = false;
            unit = c;
          }
          if (ok) found = true;
        } while (!found && std::next_permutation(order.begin(), order.end()));
        match = found;
      }
      for (std::size_t i = 0; i < psi.rows(); ++i) computed.push_back(psi(i, 0).to_string());
      push(rep, "psi-up-to-unit", "three-generated-resolution-shape", match,
              {{"expected", expand_json(expected.at("psi"), params)}, {"computed", computed}});
    }
  }

  // the level matrix described by the record
  std::optional<LatentData> latent;
  if (level.contains("latent")) latent = latent_from_template(level.at("latent"), params);
  std::optional<LevelMatrix<F>> eta;
  std::string construction = kind;
  try {
    if (kind == "explicit") {
      auto A = matrix_from_json(ring, expand_json(level.at("A"), params));
      auto B = matrix_from_json(ring, expand_json(level.at("B"), params));
      eta = certify_level(*latent, A, B, hopts);
    } else if (kind == "embed") {
      auto B = matrix_from_json(ring, expand_json(level.at("B"), params));
      eta = embed_identity_level(B, *latent, level.at("u").get<std::size_t>(), hopts);
      if (level.contains("displayed_epsilon")) {
        LatentData shown = *latent;
        shown.epsilon.clear();
        for (const auto& v : expand_json(level.at("displayed_epsilon"), params)) shown.epsilon.push_back(json_to_int(v));
        bool same = shown == *latent;
        auto shape = check_degree_shape(shown, eta->A, eta->B);
        push(rep, "displayed-epsilon-fits-shape", "level-matrix-definition", shape.ok(),
                {{"epsilon", shown.epsilon}, {"same_as_used", same}, {"failures", shape.failures.size()}}, true);
      }
    } else if (kind == "upper-with-psi") {
      auto A = matrix_from_json(ring, expand_json(level.at("A"), params));
      if (run.resolution && run.resolution->ok()) {
        std::vector<std::size_t> order;
        eta = detail::stack_over_psi(*latent, A, *run.resolution->complex, run.generators, hopts, order);
        push(rep, "displayed-block-over-psi", "level-matrix-definition", eta.has_value(),
                {{"psi_order", order}});
      } else {
        push(rep, "displayed-block-over-psi", "level-matrix-definition", false,
             {{"error", "no resolution to read psi from"}});
      }
    } else if (kind == "monomial") {
      eta = monomial_level<F>(*latent, field, hopts);
    } else if (kind == "rty") {
      latent = arrangement->latent;
      eta = embed_identity_level(arrangement->B, *latent, static_cast<std::size_t>(latent->m - 2), hopts);
    } else if (kind == "forced-format") {
      std::uint64_t seed = opts.seed ? *opts.seed : static_cast<std::uint64_t>(params.at("seed"));
      auto [A, B] = detail::forced_format(ring, *latent, seed);
      auto cand = certify_level(*latent, A, B, hopts);
      push(rep, "latent-valid", "latent-data-conditions", validate_latent(*latent).valid(),
              latent_to_json(*latent));
      push(rep, "forced-format-shape", "level-matrix-definition", cand.shape.ok());
      // only b_{2,4} survives in the last column
      const auto m = static_cast<std::size_t>(latent->m);
      bool pattern = true;
      for (std::size_t i = 0; i < 3; ++i) pattern = pattern && A(i, m - 1).is_zero();
      for (std::size_t i = 0; i + 3 < m; ++i) pattern = pattern && B(i, m - 1).is_zero();
      pattern = pattern && !B(m - 3, m - 1).is_zero();
      push(rep, "forced-zero-pattern", "level-matrix-definition", pattern);
      bool divisible = true;
      for (const auto& q : signed_maximal_minors(cand.eta())) {
        try {
          (void)divide_exact(q, B(m - 3, m - 1));
        } catch (const InexactDivision&) {
          divisible = false;
        }
      }
      push(rep, "minors-in-principal-ideal", "no-level-matrix-for-latent-data", divisible,
              {{"generator", B(m - 3, m - 1).to_string()}});
      bool fails = cand.certification.shape && cand.certification.ht_eta.value_or(0) <= 1 && !cand.certified();
      push(rep, "not-level", "no-level-matrix-for-latent-data", fails, certification_to_json(cand.certification));
      auto he = height_equivalences(cand, hopts);
      push(rep, "height-conditions-fail-together", "ideal-identities",
              !he.first() && !he.second() && !he.third(),
              {{"ht_I2(AK)", he.ht_AK2}, {"ht_p", he.ht_p}, {"ht_eta", he.ht_eta}});
      if (expected.contains("shifts")) {
        auto h = hilbert_numerator(shifts_from_template(expected.at("shifts"), params));
        push(rep, "hypothetical-multiplicity", "no-level-matrix-for-latent-data",
                h.multiplicity == expected.value("multiplicity", 0), hilbert_to_json(h));
      }
      return run;
    } else {
      throw InputError("unknown level construction '" + kind + "'");
    }
  } catch (const LevelError& e) {
    push(rep, "level-certified", "level-matrix-definition", false, {{"construction", construction}, {"error", e.what()}});
    return run;
  }
  if (!eta) return run;
  run.level = eta;
  push(rep, "level-certified", "level-matrix-definition", eta->certified(),
          {{"construction", construction}, {"certification", certification_to_json(eta->certification)}});
  if (!eta->certified()) return run;

  auto p = minors_fixing_lower_block(*eta);
  push(rep, "minor-degrees", "level-minors-resolution",
          std::all_of(p.begin(), p.end(), [&](const auto& q) { return q.is_homogeneous_of(eta->latent.d) && !q.is_zero(); }),
          {{"minors", poly_list_to_json(p)}});
  push(rep, "minors-split-identity", "level-minors-resolution", minors_split_identity(*eta));

  std::vector<Polynomial<F>> target = run.generators;
  std::string target_name = "jacobian";
  if (expected.contains("minors")) {
    const json& mj = expected.at("minors");
    if (mj.is_string() && mj.get<std::string>() == "displayed_partials") {
      target = poly_list_from_json(ring, expand_json(data.at("displayed_partials"), params));
      target_name = "displayed partial derivatives";
    } else if (mj.is_array()) {
      std::vector<Polynomial<F>> want;
      for (const auto& t : mj) want.push_back(P(detail::substitute_symbols<F>(t.get<std::string>(), run.form, {})));
      bool each = want.size() == p.size();
      for (std::size_t i = 0; each && i < p.size(); ++i) each = proportional(p[i], want[i]);
      push(rep, "minors-match-displayed", "level-minors-resolution", each,
              {{"expected", poly_list_to_json(want)}, {"computed", poly_list_to_json(p)}});
      if (run.generators.empty()) target = want;
    }
  }
  if (!target.empty()) {
    bool same = ideal_equal(p, target, hopts.limits);
    push(rep, "minors-regenerate-ideal", "level-minors-resolution", same, {{"target", target_name}});
  }
  if (data.contains("displayed_partials_form") && data.contains("displayed_partials")) {
    auto g = P(data.at("displayed_partials_form").get<std::string>());
    auto shown = poly_list_from_json(ring, expand_json(data.at("displayed_partials"), params));
    bool exact = shown.size() == ring->nvars();
    for (std::size_t v = 0; exact && v < shown.size(); ++v) exact = shown[v] == g.derivative(v);
    bool of_form = run.form && ideal_equal(shown, run.generators, hopts.limits);
    push(rep, "displayed-partials-source", "", exact,
            {{"form", g.to_string()}, {"same_ideal_as_form_jacobian", of_form}}, true);
  }
  if (expected.contains("K_rows")) {
    std::map<std::string, std::string> symbols;
    if (expected.contains("K_symbols"))
      for (auto it = expected.at("K_symbols").begin(); it != expected.at("K_symbols").end(); ++it)
        symbols[it.key()] = expand_template(it.value().get<std::string>(), params);
    auto K = build_K(eta->B).K;
    // entrywise up to sign: the shown rows are not consistent with one global unit
    bool match = true;
    json flips = json::array();
    const json& rows = expected.at("K_rows");
    const auto minus_one = field.neg(field.one());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        auto want = P(detail::substitute_symbols<F>(rows[i][j].get<std::string>(), run.form, symbols));
        const auto& got = K(i, j);
        if (got == want) continue;
        if (got == want.scale(minus_one))
          flips.push_back(json::array({i + 1, j + 1}));
        else
          match = false;
      }
    push(rep, "K-rows-match-displayed", "buchsbaum-rim-syzygy", match, {{"sign_flips", flips}});
    PolyMatrix<F> top(ring, 3, K.cols());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < K.cols(); ++j) top(i, j) = K(i, j);
    bool is_syz = (PolyMatrix<F>::from_rows(ring, {p}) * top).is_zero();
    push(rep, "K-rows-are-syzygies", "identity-block-embedding", is_syz);
  }

  run.built = build_resolution(*eta);
  const auto& cx = *run.built;
  auto vr = verify_complex(cx);
  push(rep, "complex-verified", "level-minors-resolution", vr.ok(), {{"problems", vr.problems}});
  if (run.resolution && run.resolution->complex && run.resolution->ok())
    push(rep, "built-shifts-equal-computed", "level-minors-resolution",
            cx.modules == run.resolution->complex->modules,
            {{"built", cx.modules}, {"computed", run.resolution->complex->modules}});
  else
    push(rep, "built-shifts", "level-minors-resolution", true, {{"built", cx.modules}}, true);
  auto be = buchsbaum_eisenbud_check(cx, hopts);
  push(rep, "acyclicity", "acyclicity-criterion", be.acyclic(),
          {{"ranks", be.ranks}, {"heights", be.heights}, {"diagnostics", be.diagnostics}});
  auto h = hilbert_numerator(cx);
  push(rep, "built-hilbert-numerator", "hilbert-multiplicity", h.value == 0 && h.first == 0 && h.multiplicity >= 1,
          hilbert_to_json(h));

  if (opts.round_trip) {
    auto rec1 = recover_level_matrix(cx, p, hopts);
    push(rep, "round-trip-build-recover", "level-resolution-round-trip", rec1.eta.certified() && rec1.regenerates);
    if (run.resolution && run.resolution->ok()) {
      auto rec2 = recover_level_matrix(*run.resolution->complex, run.generators, hopts);
      push(rep, "round-trip-resolve-recover", "level-resolution-round-trip", rec2.eta.certified() && rec2.regenerates,
              {{"A", matrix_to_json(rec2.eta.A)}});
    }
  }
  return run;
}

/// The shown 3 x 3 block for x y z (x^d + x y^(d-1) + y z^(d-1)) stacked
/// over psi from the computed resolution, certified level and checked to
/// regenerate the Jacobian ideal.
/// claim: worked-examples
template <class F>
LevelMatrix<F> xyz_special_eta(int d, const F& field = F{}, const HeightOptions& opts = {}) {
  ExampleOptions eo;
  eo.heights = opts;
  eo.round_trip = false;
  auto run = run_example<F>(load_record("xyz-special"), {{"d", d}}, field, eo);
  const auto* regen = run.report.find("minors-regenerate-ideal");
  if (!run.level || !run.level->certified() || !regen || !regen->passed)
    throw LevelError("shown block over psi is not a level matrix for d = " + std::to_string(d));
  return *run.level;
}

/// Every certified level matrix the corpus builds at default parameters,
/// labelled by record name.
template <class F>
std::vector<std::pair<std::string, LevelMatrix<F>>> corpus_levels(const F& field = F{}, const HeightOptions& opts = {}) {
  std::vector<std::pair<std::string, LevelMatrix<F>>> out;
  ExampleOptions eo;
  eo.heights = opts;
  eo.round_trip = false;
  for (const auto& name : list_records()) {
    auto run = run_example<F>(load_record(name), {}, field, eo);
    if (run.level && run.level->certified()) out.emplace_back(name, *run.level);
  }
  return out;
}

}  // namespace levelmat

#endif  // LEVELMAT_CORPUS_HPP
