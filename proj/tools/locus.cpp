// Command-line driver for .locus documents and one-off queries.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "locus/dsl.hpp"
#include "locus/dsl_run.hpp"

namespace {

using namespace locus;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Error::Kind::Usage, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Output {
  std::string json_path;
  bool timing = true;
  bool parallel = false;
};

int emit(const dsl::Report& r, const Output& out) {
  if (out.json_path.empty()) {
    std::cout << dsl::to_text(r);
  } else {
    std::string text = dsl::to_json(r, out.timing).dump(2) + "\n";
    if (out.json_path == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out.json_path);
      if (!f) fail(Error::Kind::Usage, "cannot write '" + out.json_path + "'");
      f << text;
      std::cout << dsl::to_text(r);
    }
  }
  return r.exit_code();
}

int run_text(const std::string& text, const Output& out, const VerifyOptions& verify = {}) {
  dsl::RunOptions o;
  o.parallel = out.parallel;
  o.verify = verify;
  return emit(dsl::run(dsl::parse(text), o), out);
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--json", out.json_path, "write a JSON report to this file ('-' for stdout)");
  cmd->add_flag("--no-timing", [&out](std::int64_t) { out.timing = false; }, "omit elapsed_ms from JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locus: verification kernel for locally small spaces"};
  app.require_subcommand(1);

  Output out;
  VerifyOptions verify;
  std::string file, id, kind, space, set, backend = "finite";
  int iters = 100;
  std::uint64_t seed = 1;

  auto* run = app.add_subcommand("run", "execute the queries of a document");
  run->add_option("file", file, "document")->required();
  run->add_flag("--parallel", out.parallel, "run queries concurrently");
  run->add_option("--iters", verify.iters, "iterations for verify queries");
  run->add_option("--samples", verify.samples, "samples for verify and map queries");
  run->add_option("--seed", verify.seed, "seed for verify and map queries");
  add_output(run, out);

  auto* fmt = app.add_subcommand("fmt", "print a document in canonical form");
  fmt->add_option("file", file, "document")->required();
  bool check = false;
  fmt->add_flag("--check", check, "exit 1 if the file is not canonical");

  auto* ver = app.add_subcommand("verify", "check a theorem id, or all of them");
  ver->add_option("id", id, "theorem id or 'all'")->required();
  ver->add_option("--iters", verify.iters, "random instances per theorem");
  ver->add_option("--samples", verify.samples, "sampled sets per instance");
  ver->add_option("--seed", verify.seed, "seed");
  add_output(ver, out);

  auto* der = app.add_subcommand("derive", "derive a family, membership, or a weak closure");
  der->add_option("kind", kind, "Lo, Ls, Lwo, Lswo, wcl or closedsets")->required();
  der->add_option("--space", space, "builtin line space")->required();
  der->add_option("--set", set, "set literal");
  add_output(der, out);

  auto* cls = app.add_subcommand("classify", "classify a builtin space, or a set in it");
  cls->add_option("space", space, "builtin line space")->required();
  cls->add_option("--set", set, "set literal");
  add_output(cls, out);

  auto* gts = app.add_subcommand("gts-check", "check the axioms of every gts in a document");
  gts->add_option("file", file, "document")->required();
  add_output(gts, out);

  auto* suite = app.add_subcommand("random-suite", "seeded random property checks");
  suite->add_option("--backend", backend, "finite or interval")->check(CLI::IsMember({"finite", "interval"}));
  suite->add_option("--iters", iters, "iterations")->check(CLI::PositiveNumber);
  suite->add_option("--seed", seed, "seed");
  add_output(suite, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_text(slurp(file), out, verify);
    if (*fmt) {
      std::string text = slurp(file);
      std::string canon = dsl::print(dsl::parse(text));
      if (check) return canon == text ? 0 : 1;
      std::cout << canon;
      return 0;
    }
    if (*ver) return run_text("verify " + id, out, verify);
    if (*der) {
      std::string q = "derive " + kind + " in " + space + (set.empty() ? "" : " of " + set);
      if (!out.json_path.empty()) return run_text(q, out);
      dsl::Report r = dsl::run(dsl::parse(q));
      const auto& res = r.results.front();
      if (res.status == dsl::Status::Error) {
        std::cerr << "error: " << res.result["error"].get<std::string>() << "\n";
      } else if (res.result.contains("value")) {
        std::cout << res.result["value"].get<std::string>() << "\n";
      } else {
        std::cout << (res.result["member"].get<bool>() ? "yes" : "no") << "\n";
      }
      return r.exit_code();
    }
    if (*cls) return run_text(set.empty() ? "classify space " + space : "classify set " + set + " in " + space, out);
    if (*gts) {
      dsl::Document d = dsl::parse(slurp(file));
      d.queries.clear();
      for (const auto& decl : d.declarations)
        if (decl.kind == dsl::DeclKind::Gts) d.queries.push_back({dsl::GtsCheck{decl.name}, 0});
      if (d.queries.empty()) fail(Error::Kind::Usage, "no gts declarations in '" + file + "'");
      return emit(dsl::run(d), out);
    }
    if (*suite) {
      std::ostringstream q;
      q << "random-suite --backend " << backend << " --iters " << iters << " --seed " << seed;
      return run_text(q.str(), out);
    }
  } catch (const dsl::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::Internal ? 1 : 2;
  }
  return 2;
}
