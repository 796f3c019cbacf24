// levelmat: command-line front end. Every command prints JSON lines (or an
// indented rendering with --pretty) and exits 0 on success, 1 when a
// mathematical check fails, 2 on usage or input errors, 3 on resource limits.

#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levelmat/corpus.hpp"
#include "levelmat/groebner.hpp"
#include "levelmat/json_io.hpp"
#include "levelmat/level.hpp"
#include "levelmat/resolution.hpp"
#include "levelmat/rim.hpp"
#include "levelmat/selftest.hpp"

namespace {

using namespace levelmat;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kResourceLimit = 3;

struct Options {
  std::string verb;
  std::string input;
  std::string field = "qq";
  bool field_given = false;
  std::uint32_t modulus = PrimeField::kDefaultModulus;
  std::string order = "degrevlex";
  std::uint64_t seed = 1;
  bool seed_given = false;
  int max_degree = GroebnerLimits{}.max_degree;
  std::size_t max_pairs = GroebnerLimits{}.max_pairs;
  bool authoritative = false;
  bool serial = false;
  bool pretty = false;
  std::optional<long long> d;
  std::string example;
  bool list = false;
  bool minimal = true;
  bool inject_sign_bug = false;

  HeightOptions heights() const {
    HeightOptions h;
    h.authoritative = authoritative;
    h.modulus = modulus;
    h.limits = {max_degree, max_pairs};
    h.parallel = !serial;
    return h;
  }
};

class Emitter {
 public:
  explicit Emitter(bool pretty) : pretty_(pretty) {}

  void operator()(const json& j) const {
    if (!pretty_) {
      std::cout << j.dump() << '\n';
      return;
    }
    if (j.contains("status") && j.contains("check")) {
      std::string status = j.at("status").get<std::string>();
      for (auto& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      std::cout << '[' << status << "] " << j.value("example", "") << ' ' << j.at("check").get<std::string>();
      if (j.contains("claim")) std::cout << "  (" << j.at("claim").get<std::string>() << ')';
      std::cout << '\n';
      if (j.contains("detail")) std::cout << "    " << j.at("detail").dump() << '\n';
      return;
    }
    std::cout << j.dump(2) << '\n';
  }

 private:
  bool pretty_;
};

std::string read_all_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

json read_input(const Options& o) {
  std::string text = o.input;
  if (text.empty() || text == "-") text = read_all_stdin();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(text.begin());
  if (text.empty()) throw InputError("no input: pass JSON inline, as @file, or on stdin");
  return read_json_argument(text);
}

template <class F>
RingPtr<F> ring_for(const json& j, const F& field) {
  return make_ring<F>(ring_variables(j), field);
}

json violations_json(const LatentReport& rep) { return latent_report_to_json(rep).at("violations"); }

// ---------------------------------------------------------------- commands

int cmd_validate_latent(const Options& o, const Emitter& emit) {
  auto latent = latent_from_json(read_input(o));
  auto rep = validate_latent(latent);
  json out{{"command", "validate-latent"}, {"claim", "latent-data-conditions"},
           {"status", rep.valid() ? "valid" : "invalid"}, {"latent", latent_to_json(latent)},
           {"violations", violations_json(rep)}};
  if (latent.delta.size() >= 2) out["nonperfect_shifts"] = check_nonperfect_shifts(latent.d, latent.delta);
  emit(out);
  return rep.valid() ? kPass : kCheckFailed;
}

template <class F>
json level_lines(const LevelMatrix<F>& eta, const std::string& claim) {
  json out = level_to_json(eta);
  out["claim"] = claim;
  out["shape"] = shape_report_to_json(eta.shape);
  if (!eta.certified()) out["failure"] = eta.failure();
  return out;
}

template <class F>
int cmd_make_level(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  const std::string kind = in.value("construction", "monomial");
  auto latent = latent_from_json(require(in, "latent"));
  try {
    if (kind == "monomial") {
      auto eta = monomial_level<F>(latent, field, o.heights());
      emit(level_lines(eta, "monomial-level-matrix"));
      return eta.certified() ? kPass : kCheckFailed;
    }
    if (kind == "embed") {
      auto ring = ring_for(in, field);
      auto B = matrix_from_json(ring, require(in, "B"));
      auto eta = embed_identity_level(B, latent, require(in, "u").get<std::size_t>(), o.heights());
      emit(level_lines(eta, "identity-block-embedding"));
      return kPass;
    }
  } catch (const LevelError& e) {
    emit(json{{"command", "make-level"}, {"construction", kind}, {"status", "fail"}, {"error", e.what()}});
    return kCheckFailed;
  }
  throw InputError("unknown construction '" + kind + "' (expected monomial or embed)");
}

template <class F>
LevelMatrix<F> level_from_input(const json& in, const F& field, const HeightOptions& opts) {
  auto ring = ring_for(in, field);
  auto latent = latent_from_json(require(in, "latent"));
  auto A = matrix_from_json(ring, require(in, "A"));
  auto B = matrix_from_json(ring, require(in, "B"));
  return certify_level(latent, A, B, opts);
}

template <class F>
int cmd_check_level(const Options& o, const F& field, const Emitter& emit) {
  const auto opts = o.heights();
  auto eta = level_from_input(read_input(o), field, opts);
  emit(level_lines(eta, "level-matrix-definition"));
  if (!eta.certified()) return kCheckFailed;
  bool ok = true;
  auto sides = vasconcelos_identity_a(eta);
  bool a = ideal_equal(sides.lhs, sides.rhs, opts.limits);
  emit(json{{"check", "I2(AK) = <p> I(B)"}, {"claim", "ideal-identities"}, {"status", a ? "pass" : "fail"}});
  auto b = vasconcelos_identity_b(eta, opts.limits);
  emit(json{{"check", "I(B) I(eta) in <p>"},
            {"claim", "ideal-identities"},
            {"status", b.ok() ? "pass" : "fail"},
            {"detail", {{"checked", b.checked}, {"failures", b.failures.size()}}}});
  auto h = height_equivalences(eta, opts);
  emit(json{{"check", "height equivalences"},
            {"claim", "ideal-identities"},
            {"status", h.consistent() && h.third() ? "pass" : "fail"},
            {"detail", {{"ht_I2(AK)", h.ht_AK2}, {"ht_p", h.ht_p}, {"ht_eta", h.ht_eta}}}});
  ok = a && b.ok() && h.consistent() && h.third();
  return ok ? kPass : kCheckFailed;
}

template <class F>
int cmd_minors(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto ring = ring_for(in, field);
  PolyMatrix<F> eta;
  if (in.contains("matrix")) {
    eta = matrix_from_json(ring, in.at("matrix"));
  } else {
    eta = matrix_from_json(ring, require(in, "A")).vstack(matrix_from_json(ring, require(in, "B")));
  }
  if (eta.rows() != eta.cols() + 1)
    throw InputError("minors need an (m+1) x m matrix, got " + std::to_string(eta.rows()) + " x " +
                     std::to_string(eta.cols()));
  auto q = signed_maximal_minors(eta);
  json out{{"command", "minors"}, {"claim", "level-minors-resolution"}};
  if (eta.rows() >= 4) out["fixed_block_minors"] = poly_list_to_json(std::vector<Polynomial<F>>(q.begin(), q.begin() + 3));
  out["signed_maximal_minors"] = poly_list_to_json(q);
  emit(out);
  return kPass;
}

template <class F>
int cmd_build_resolution(const Options& o, const F& field, const Emitter& emit) {
  auto eta = level_from_input(read_input(o), field, o.heights());
  if (!eta.certified()) {
    emit(level_lines(eta, "level-matrix-definition"));
    return kCheckFailed;
  }
  auto cx = build_resolution(eta);
  auto rep = verify_complex(cx);
  json out = complex_to_json(cx);
  out["certified"] = {{"compositions_zero", rep.compositions_zero}, {"graded", rep.graded}, {"minimal", rep.minimal}};
  out["claim"] = "level-minors-resolution";
  emit(out);
  return rep.ok() ? kPass : kCheckFailed;
}

template <class F>
int cmd_verify_resolution(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto cx = complex_from_json(ring_for(in, field), in.contains("complex") ? in.at("complex") : in);
  auto rep = verify_complex(cx);
  emit(json{{"check", "complex"},
            {"claim", "level-minors-resolution"},
            {"status", rep.ok() ? "pass" : "fail"},
            {"detail",
             {{"compositions_zero", rep.compositions_zero},
              {"graded", rep.graded},
              {"minimal", rep.minimal},
              {"problems", rep.problems}}}});
  bool ok = rep.ok();
  if (cx.maps.size() == 3) {
    auto be = buchsbaum_eisenbud_check(cx, o.heights());
    emit(json{{"check", "acyclicity"},
              {"claim", "acyclicity-criterion"},
              {"status", be.acyclic() ? "pass" : "fail"},
              {"detail", {{"ranks", be.ranks}, {"expected_ranks", be.expected}, {"heights", be.heights},
                          {"diagnostics", be.diagnostics}}}});
    ok = ok && be.acyclic();
  }
  auto h = hilbert_numerator(cx);
  bool hok = h.value == 0 && h.first == 0;
  emit(json{{"check", "hilbert numerator"}, {"claim", "hilbert-multiplicity"}, {"status", hok ? "pass" : "fail"},
            {"detail", hilbert_to_json(h)}});
  return ok && hok ? kPass : kCheckFailed;
}

int cmd_hilbert(const Options& o, const Emitter& emit) {
  json in = read_input(o);
  const json& src = in.contains("complex") ? in.at("complex") : in;
  auto modules = require(src, "modules").get<std::vector<std::vector<int>>>();
  auto h = hilbert_numerator(modules);
  json out = hilbert_to_json(h);
  out["claim"] = "hilbert-multiplicity";
  std::string reason;
  if (h.value != 0)
    reason = "N(1) = " + std::to_string(h.value);
  else if (h.first != 0)
    reason = "N'(1) = " + std::to_string(h.first);
  else if (h.multiplicity == 0)
    reason = "multiplicity 0";
  out["status"] = reason.empty() ? "pass" : "fail";
  if (!reason.empty()) out["reason"] = reason;
  emit(out);
  return reason.empty() ? kPass : kCheckFailed;
}

template <class F>
std::vector<Polynomial<F>> ideal_from_input(const json& in, const F& field) {
  auto gens = poly_list_from_json(ring_for(in, field), require(in, "gens"));
  if (gens.empty()) throw InputError("'gens' must not be empty");
  return gens;
}

template <class F>
int cmd_height(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto gens = ideal_from_input(in, field);
  const auto opts = o.heights();
  const auto& ring = gens.front().ring();
  int h = certification_height(gens, ring, opts);
  emit(json{{"command", "height"},
            {"height", h},
            {"dimension", h < 0 ? -1 : static_cast<int>(ring->nvars()) - h},
            {"field", height_field_name(field, opts)}});
  return kPass;
}

template <class F>
int cmd_groebner(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto gens = ideal_from_input(in, field);
  auto gb = buchberger(gens, parse_order(o.order), GroebnerLimits{o.max_degree, o.max_pairs});
  json lms = json::array();
  for (const auto& m : gb.leading_monomials()) lms.push_back(detail::monomial_string(*gb.ring(), m));
  const auto& st = gb.stats();
  emit(json{{"command", "groebner"},
            {"order", to_string(gb.order())},
            {"basis", poly_list_to_json(gb.elements())},
            {"leading_monomials", lms},
            {"stats",
             {{"pairs_created", st.pairs_created},
              {"pairs_processed", st.pairs_processed},
              {"zero_reductions", st.zero_reductions},
              {"max_degree_reached", st.max_degree_reached}}}});
  return kPass;
}

template <class F>
int cmd_syzygy(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto gens = ideal_from_input(in, field);
  GroebnerLimits limits{o.max_degree, o.max_pairs};
  SyzygyModule<F> s;
  if (in.contains("shifts")) {
    GradedMap<F> map{PolyMatrix<F>::from_rows(gens.front().ring(), {gens}), {0},
                     in.at("shifts").get<std::vector<int>>()};
    if (!map.is_graded()) throw InputError("generators do not match the declared shifts");
    s = module_syzygies(map, limits, o.minimal);
  } else {
    s = syzygies(gens, limits, o.minimal);
  }
  json out = matrix_to_json(s.matrix);
  out["target_shifts"] = s.target_shifts;
  out["source_shifts"] = s.source_shifts;
  emit(json{{"command", "syzygy"}, {"count", s.count()}, {"minimal", o.minimal}, {"syzygies", out}});
  return kPass;
}

template <class F>
int cmd_recover_level(const Options& o, const F& field, const Emitter& emit) {
  json in = read_input(o);
  auto ring = ring_for(in, field);
  auto cx = complex_from_json(ring, in.contains("complex") ? in.at("complex") : in);
  std::vector<Polynomial<F>> gens;
  if (in.contains("gens"))
    gens = poly_list_from_json(ring, in.at("gens"));
  else if (!cx.maps.empty())
    gens = cx.maps[0].matrix.row(0);
  auto rec = recover_level_matrix(cx, gens, o.heights());
  json out = level_lines(rec.eta, "level-resolution-round-trip");
  out["regenerates"] = rec.regenerates;
  emit(out);
  return rec.eta.certified() && rec.regenerates ? kPass : kCheckFailed;
}

template <class F>
int cmd_example(const Options& o, const F& field, const Emitter& emit) {
  if (o.list || o.example.empty()) {
    json names = json::array();
    for (const auto& n : list_records()) names.push_back({{"name", n}, {"title", load_record(n).title()}});
    emit(json{{"command", "example"}, {"records", names}});
    return o.example.empty() && !o.list ? kUsage : kPass;
  }
  auto rec = load_record(o.example);
  Params params;
  if (o.d) params["d"] = *o.d;
  ExampleOptions eo;
  eo.heights = o.heights();
  if (o.seed_given) {
    if (rec.data.contains("params") && rec.data.at("params").contains("seed"))
      params["seed"] = static_cast<long long>(o.seed);
    else
      eo.seed = o.seed;
  }
  auto run = run_example<F>(rec, params, field, eo);
  for (const auto& line : run.report.lines) emit(check_to_json(rec.name, line));
  json summary{{"example", rec.name}, {"params", run.report.params}, {"field", field.name()}};
  if (field.characteristic() != 0) summary["modulus"] = field.characteristic();
  if (run.resolution && run.resolution->complex) summary["shifts"] = run.resolution->complex->modules;
  else if (run.built) summary["shifts"] = run.built->modules;
  summary["status"] = run.report.ok() ? "pass" : "fail";
  emit(summary);
  return run.report.ok() ? kPass : kCheckFailed;
}

int cmd_selftest(const Options& o, const Emitter& emit) {
  const auto seed = o.seed;
  const auto opts = o.heights();
  const KSignRule rule = o.inject_sign_bug ? KSignRule::symmetric : KSignRule::skew;
  auto levels = corpus_levels<Rationals>(Rationals{}, opts);
  for (const auto& L : monomial_latents()) levels.emplace_back("monomial " + latent_to_json(L).dump(), monomial_level<Rationals>(L, {}, opts));
  std::vector<PolyMatrix<Rationals>> corpus_B;
  for (const auto& [name, eta] : levels) corpus_B.push_back(eta.B);

  std::vector<SuiteResult> results;
  results.push_back(cauchy_binet_suite(Rationals{}, seed));
  results.push_back(cauchy_binet_suite(PrimeField(o.modulus), seed));
  results.push_back(rank2_compound_suite(seed));
  results.push_back(k_contract_suite(Rationals{}, seed, corpus_B, 50, rule));
  results.push_back(round_trip_suite(levels, opts));

  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.ok();
    json line{{"suite", r.suite}, {"claim", r.claim}, {"seed", seed}, {"cases", r.cases},
              {"failures", r.failures}, {"status", r.ok() ? "pass" : "fail"}};
    if (!r.notes.empty()) {
      std::vector<std::string> head(r.notes.begin(), r.notes.begin() + std::min<std::size_t>(r.notes.size(), 5));
      line["first_failures"] = head;
    }
    if (!o.pretty) emit(line);
  }
  if (o.pretty) {
    std::cout << "\n  suite                      cases  failures  status\n";
    for (const auto& r : results) {
      std::string name = r.suite;
      name.resize(26, ' ');
      std::string cases = std::to_string(r.cases), fails = std::to_string(r.failures);
      std::cout << "  " << name << ' ' << std::string(5 - std::min<std::size_t>(5, cases.size()), ' ') << cases
                << std::string(10 - std::min<std::size_t>(10, fails.size()), ' ') << fails << "  "
                << (r.ok() ? "pass" : "FAIL") << '\n';
      for (std::size_t i = 0; i < std::min<std::size_t>(r.notes.size(), 3); ++i) std::cout << "      " << r.notes[i] << '\n';
    }
  } else {
    emit(json{{"command", "selftest"}, {"seed", seed}, {"suites", results.size()}, {"status", ok ? "pass" : "fail"}});
  }
  return ok ? kPass : kCheckFailed;
}

template <class F>
int dispatch(const Options& o, const F& field, const Emitter& emit) {
  const std::string& v = o.verb;
  if (v == "make-level") return cmd_make_level(o, field, emit);
  if (v == "check-level") return cmd_check_level(o, field, emit);
  if (v == "minors") return cmd_minors(o, field, emit);
  if (v == "build-resolution") return cmd_build_resolution(o, field, emit);
  if (v == "verify-resolution") return cmd_verify_resolution(o, field, emit);
  if (v == "height") return cmd_height(o, field, emit);
  if (v == "groebner") return cmd_groebner(o, field, emit);
  if (v == "syzygy") return cmd_syzygy(o, field, emit);
  if (v == "recover-level") return cmd_recover_level(o, field, emit);
  if (v == "example") return cmd_example(o, field, emit);
  throw InputError("unknown command '" + v + "'");
}

int run(Options o) {
  Emitter emit(o.pretty);
  if (o.verb == "validate-latent") return cmd_validate_latent(o, emit);
  if (o.verb == "hilbert") return cmd_hilbert(o, emit);
  if (o.verb == "selftest") return cmd_selftest(o, emit);

  // an ideal or matrix document may name its own field; explicit flags win
  if (!o.field_given && o.verb != "example" && o.verb != "selftest") {
    json in = read_input(o);
    if (in.is_object() && in.contains("ring") && in.at("ring").is_object()) {
      const json& r = in.at("ring");
      if (r.contains("field")) o.field = r.at("field").get<std::string>();
      if (r.contains("modulus")) o.modulus = r.at("modulus").get<std::uint32_t>();
    }
    o.input = in.dump();
  }
  if (o.field == "qq") return dispatch(o, Rationals{}, emit);
  if (o.field == "fp") return dispatch(o, PrimeField(o.modulus), emit);
  throw InputError("unknown field '" + o.field + "' (expected qq or fp)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levelmat: level matrices, their minors and the resolutions they induce"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  auto* field = app.add_option("--field", o.field, "coefficient field: qq or fp")->check(CLI::IsMember({"qq", "fp"}));
  app.add_option("--modulus", o.modulus, "prime modulus for --field fp and for certification heights");
  app.add_option("--order", o.order, "monomial order: degrevlex, lex or deglex");
  auto* seed = app.add_option("--seed", o.seed, "seed for randomized steps");
  app.add_option("--max-degree", o.max_degree, "Groebner degree cap");
  app.add_option("--max-pairs", o.max_pairs, "Groebner S-pair cap");
  app.add_flag("--authoritative", o.authoritative, "compute certification heights over QQ");
  app.add_flag("--serial", o.serial, "run height computations on one thread");
  app.add_flag("--pretty", o.pretty, "human-readable output");

  struct Verb {
    const char* name;
    const char* help;
  };
  const std::vector<Verb> verbs = {
      {"validate-latent", "check latent data {d, m, delta, epsilon}"},
      {"make-level", "construct a level matrix (monomial or identity-block embedding)"},
      {"check-level", "certify {latent, A, B} and check the determinantal identities"},
      {"minors", "signed maximal minors of [A over B] or of {\"matrix\": ...}"},
      {"build-resolution", "resolution induced by a level matrix"},
      {"verify-resolution", "check a complex: compositions, grading, minimality, acyclicity"},
      {"hilbert", "Hilbert numerator, codimension and multiplicity from module shifts"},
      {"height", "height of a homogeneous ideal {ring, gens}"},
      {"groebner", "reduced Groebner basis of {ring, gens}"},
      {"syzygy", "first syzygies of {ring, gens[, shifts]}"},
      {"recover-level", "level matrix from a resolution {complex, gens}"},
      {"example", "run a corpus example"},
      {"selftest", "seeded invariant suites"},
  };
  for (const auto& v : verbs) {
    auto* sub = app.add_subcommand(v.name, v.help);
    const std::string name = v.name;
    if (name == "example") {
      sub->add_option("name", o.example, "record name");
      sub->add_option("--d", o.d, "value of the parameter d");
      sub->add_flag("--list", o.list, "list records");
    } else if (name == "selftest") {
      sub->add_flag("--inject-sign-bug", o.inject_sign_bug, "use a symmetric K (fault injection)")->group("");
    } else {
      sub->add_option("input", o.input, "inline JSON, @file, or - for stdin");
      if (name == "syzygy") sub->add_flag("!--non-minimal", o.minimal, "keep every syzygy found");
    }
    sub->callback([&o, name] { o.verb = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  o.field_given = field->count() > 0;
  o.seed_given = seed->count() > 0;

  try {
    return run(o);
  } catch (const ResourceLimitExceeded& e) {
    std::cout << json{{"status", "resource-limit"}, {"error", e.what()},
                      {"stats", {{"pairs_processed", e.stats().pairs_processed},
                                 {"max_degree_reached", e.stats().max_degree_reached}}}}
                     .dump()
              << '\n';
    return kResourceLimit;
  } catch (const LevelError& e) {
    std::cout << json{{"status", "fail"}, {"error", e.what()}}.dump() << '\n';
    return kCheckFailed;
  } catch (const ResolutionError& e) {
    std::cout << json{{"status", "fail"}, {"error", e.what()}}.dump() << '\n';
    return kCheckFailed;
  } catch (const ContractViolation& e) {
    std::cout << json{{"status", "fail"}, {"error", e.what()}}.dump() << '\n';
    return kCheckFailed;
  } catch (const json::exception& e) {
    std::cerr << "levelmat: malformed input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "levelmat: " << e.what() << '\n';
    return kUsage;
  }
}
