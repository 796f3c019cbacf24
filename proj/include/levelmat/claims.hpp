#ifndef LEVELMAT_CLAIMS_HPP
#define LEVELMAT_CLAIMS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

/// Consistency checks between the claim index (docs/claims.json), the claim
/// tags on operation definitions in the headers, the test sources and the
/// claim slugs that report lines cite.
namespace levelmat::claims {

struct Row {
  std::string id;
  std::string statement;
  std::string anchor;
  std::vector<std::string> operations;
  std::vector<std::string> tests;
};

/// A tagged definition: the operation named on the first signature line
/// after a `claim:` doc line.
struct Tag {
  std::string op;
  std::string slug;
  std::string where;
};

/// A claim slug cited by code that emits report lines.
struct Use {
  std::string slug;
  std::string where;
};

struct Sources {
  std::vector<Tag> tags;
  std::set<std::string> tests;  // "Suite.Name"
  std::vector<Use> uses;
};

inline std::vector<Row> parse_index(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("claims") || !j.at("claims").is_array())
    throw std::invalid_argument("claim index must be an object with a \"claims\" array");
  std::vector<Row> rows;
  for (const auto& r : j.at("claims")) {
    for (const char* key : {"id", "statement", "anchor", "operations", "tests"})
      if (!r.contains(key)) throw std::invalid_argument(std::string("claim row is missing \"") + key + "\"");
    rows.push_back({r.at("id").get<std::string>(), r.at("statement").get<std::string>(),
                    r.at("anchor").get<std::string>(), r.at("operations").get<std::vector<std::string>>(),
                    r.at("tests").get<std::vector<std::string>>()});
  }
  return rows;
}

inline std::size_t line_of(const std::string& text, std::size_t pos) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

inline std::vector<Tag> scan_tags(const std::string& text, const std::string& file) {
  static const std::regex tag_line(R"(^\s*/// claim: ([a-z0-9-]+)\s*$)");
  static const std::regex callee(R"(([A-Za-z_][A-Za-z0-9_]*)\s*\()");
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  std::vector<Tag> tags;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::smatch m;
    if (!std::regex_match(lines[i], m, tag_line)) continue;
    Tag t{"", m[1], file + ":" + std::to_string(i + 1)};
    for (std::size_t k = i + 1; k < lines.size() && t.op.empty(); ++k) {
      const auto& l = lines[k];
      auto first = l.find_first_not_of(" \t");
      if (first == std::string::npos || l.compare(first, 2, "//") == 0 || l.compare(first, 8, "template") == 0)
        continue;
      std::smatch c;
      if (std::regex_search(l, c, callee)) t.op = c[1];
      break;
    }
    tags.push_back(t);
  }
  return tags;
}

inline std::set<std::string> scan_tests(const std::string& text) {
  static const std::regex test(R"(\bTEST(?:_F|_P)?\(\s*(\w+)\s*,\s*(\w+)\s*\))");
  std::set<std::string> out;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), test); it != std::sregex_iterator(); ++it)
    out.insert((*it)[1].str() + "." + (*it)[2].str());
  return out;
}

/// Slugs passed as string literals to report-line builders: the third
/// argument of push, json "claim" members and SuiteResult initializers.
inline std::vector<Use> scan_uses(const std::string& text, const std::string& file) {
  static const std::vector<std::regex> patterns{
      std::regex(R"re(push\(\s*\w+,\s*"[^"]*",\s*"([^"]*)")re"),
      std::regex(R"re(\{\s*"claim"\s*,\s*"([^"]*)"\s*\})re"),
      std::regex(R"re(\["claim"\]\s*=\s*"([^"]*)")re"),
      std::regex(R"re(SuiteResult\s+\w+\{[^,]*,\s*"([^"]*)")re"),
      std::regex(R"re(level_lines\([^,()]*,\s*"([^"]*)")re"),
  };
  std::vector<Use> out;
  for (const auto& re : patterns)
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it)
      if ((*it)[1].length() > 0)
        out.push_back({(*it)[1], file + ":" + std::to_string(line_of(text, static_cast<std::size_t>(it->position(1))))});
  return out;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Headers under include/levelmat and tools/*.cpp supply tags and uses;
/// tests/*.cpp supply test names.
inline Sources scan_tree(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  Sources src;
  auto sorted = [](const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> files;
    if (fs::exists(dir))
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ext) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
  };
  for (const auto& f : sorted(root / "include" / "levelmat", ".hpp")) {
    auto text = read_file(f);
    auto rel = fs::relative(f, root).string();
    for (auto& t : scan_tags(text, rel)) src.tags.push_back(t);
    for (auto& u : scan_uses(text, rel)) src.uses.push_back(u);
  }
  for (const auto& f : sorted(root / "tools", ".cpp"))
    for (auto& u : scan_uses(read_file(f), fs::relative(f, root).string())) src.uses.push_back(u);
  for (const auto& f : sorted(root / "tests", ".cpp")) {
    auto names = scan_tests(read_file(f));
    src.tests.insert(names.begin(), names.end());
  }
  return src;
}

/// Every problem found, one message each; empty means consistent.
inline std::vector<std::string> check(const std::vector<Row>& rows, const Sources& src) {
  std::vector<std::string> problems;
  std::map<std::string, std::vector<std::string>> rows_of_op;  // op -> row ids listing it
  std::set<std::string> ids;
  for (const auto& r : rows) {
    if (!ids.insert(r.id).second) problems.push_back("duplicate claim id '" + r.id + "'");
    if (r.statement.empty()) problems.push_back("claim '" + r.id + "' has an empty statement");
    if (r.tests.empty()) problems.push_back("claim '" + r.id + "' lists no tests");
    for (const auto& op : r.operations) rows_of_op[op].push_back(r.id);
    for (const auto& t : r.tests)
      if (!src.tests.count(t)) problems.push_back("stale test '" + t + "' in claim '" + r.id + "'");
  }
  std::map<std::string, std::vector<const Tag*>> tags_of_op;
  for (const auto& t : src.tags) {
    if (t.op.empty()) {
      problems.push_back("claim tag at " + t.where + " is not followed by a definition");
      continue;
    }
    tags_of_op[t.op].push_back(&t);
    if (!ids.count(t.slug)) problems.push_back("tag at " + t.where + " names unknown claim '" + t.slug + "'");
  }
  for (const auto& [op, tags] : tags_of_op) {
    std::set<std::string> slugs;
    for (const auto* t : tags) slugs.insert(t->slug);
    if (slugs.size() > 1) problems.push_back("operation '" + op + "' carries tags for different claims");
    auto it = rows_of_op.find(op);
    if (it == rows_of_op.end()) {
      problems.push_back("operation '" + op + "' (" + tags.front()->where + ") is tagged '" + tags.front()->slug +
                         "' but missing from the claim index");
    } else if (it->second.size() > 1) {
      problems.push_back("operation '" + op + "' is listed in " + std::to_string(it->second.size()) + " claims");
    } else if (it->second.front() != tags.front()->slug) {
      problems.push_back("operation '" + op + "' is listed under '" + it->second.front() + "' but tagged '" +
                         tags.front()->slug + "'");
    }
  }
  for (const auto& [op, ids_listing] : rows_of_op)
    if (!tags_of_op.count(op))
      problems.push_back("stale operation '" + op + "' in claim '" + ids_listing.front() + "' has no tagged definition");
  for (const auto& u : src.uses)
    if (!ids.count(u.slug)) problems.push_back("report line at " + u.where + " cites unknown claim '" + u.slug + "'");
  return problems;
}

inline std::string render_markdown(const std::vector<Row>& rows) {
  std::ostringstream out;
  out << "# Claim index\n\n"
      << "Generated from `docs/claims.json` by `check_claims --render`. Each entry names the operations that\n"
      << "implement it (tagged in the headers) and the tests that exercise it. Report lines printed by the\n"
      << "CLI carry the same identifiers in their `claim` field.\n";
  for (const auto& r : rows) {
    out << "\n## " << r.id << "\n\n" << r.statement << "\n\n";
    out << "- Context: " << r.anchor << "\n";
    out << "- Operations: ";
    if (r.operations.empty()) out << "none (exercised through the example runner)";
    for (std::size_t i = 0; i < r.operations.size(); ++i) out << (i ? ", " : "") << '`' << r.operations[i] << '`';
    out << "\n- Tests: ";
    for (std::size_t i = 0; i < r.tests.size(); ++i) out << (i ? ", " : "") << '`' << r.tests[i] << '`';
    out << "\n";
  }
  return out.str();
}

}  // namespace levelmat::claims

#endif
