// Checks the claim index against the sources; --render regenerates docs/claims.md.
#include <iostream>

#include <CLI11.hpp>

#include "levelmat/claims.hpp"

int main(int argc, char** argv) {
  CLI::App app{"claim index checker"};
  std::string root = ".";
  bool render = false;
  app.add_option("--root", root, "repository root")->check(CLI::ExistingDirectory);
  app.add_flag("--render", render, "write docs/claims.md from docs/claims.json");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  using namespace levelmat::claims;
  try {
    auto rows = parse_index(nlohmann::json::parse(read_file(fs::path(root) / "docs" / "claims.json")));
    auto md_path = fs::path(root) / "docs" / "claims.md";
    auto md = render_markdown(rows);
    if (render) {
      std::ofstream(md_path) << md;
      std::cout << "wrote " << md_path.string() << '\n';
    }
    auto src = scan_tree(root);
    auto problems = check(rows, src);
    if (!fs::exists(md_path) || read_file(md_path) != md)
      problems.push_back("docs/claims.md is out of date (run check_claims --render)");
    for (const auto& p : problems) std::cout << "problem: " << p << '\n';
    std::cout << rows.size() << " claims, " << src.tags.size() << " tagged operations, " << src.tests.size()
              << " tests, " << src.uses.size() << " cited slugs: " << (problems.empty() ? "consistent" : "inconsistent")
              << '\n';
    return problems.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
