#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qsl/job_spec.hpp"
#include "qsl/runner.hpp"

namespace {

struct Options {
  std::string spec;
  std::string cache_dir;
  std::string format;
  bool no_timings = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--spec", o.spec, "Job spec file")->required()->check(CLI::ExistingFile);
  sub->add_option("--cache-dir", o.cache_dir, "Cache directory (overrides QHAT_CACHE_DIR)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  sub->add_flag("--no-timings", o.no_timings, "Emit null for every elapsed field");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsl-cli: generalized q-Schur algebra engine"};
  app.require_subcommand(1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"run", "Run every task of the spec"},
      {"build", "Build S(pi) for every pi"},
      {"verify", "Check the defining relations on every S(pi)"},
      {"dims", "Compare dimensions with the Weyl formula"},
      {"maps", "Check truncation maps between nested pi"},
      {"limit", "Check limit identities at every pi"},
      {"probe", "Separation or kernel probe"},
      {"specialize", "Specialize at the ring of the spec"},
  };
  for (const auto& [name, help] : subs) add_common(app.add_subcommand(name, help), opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qsl::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(opt.spec);
  std::stringstream text;
  text << in.rdbuf();
  qsl::JobSpec spec;
  try {
    spec = qsl::parse_spec(text.str());
  } catch (const qsl::ParseError& e) {
    std::cerr << opt.spec << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return qsl::kExitUsage;
  }

  if (command != "run") {
    auto kind = *qsl::task_from_name(command);
    std::vector<qsl::Task> picked;
    for (const auto& t : spec.tasks) {
      if (t.kind == kind) picked.push_back(t);
    }
    if (picked.empty()) picked.push_back({kind, {}});
    if (kind == qsl::TaskKind::Specialize && !spec.ring) {
      std::cerr << opt.spec << ": specialize needs a ring line\n";
      return qsl::kExitUsage;
    }
    if (kind != qsl::TaskKind::Probe && spec.pis.empty()) {
      std::cerr << opt.spec << ": " << command << " needs at least one pi line\n";
      return qsl::kExitUsage;
    }
    spec.tasks = std::move(picked);
  }

  qsl::RunOptions ro;
  if (!opt.cache_dir.empty()) {
    ro.cache_dir = opt.cache_dir;
  } else if (const char* env = std::getenv("QHAT_CACHE_DIR"); env && *env) {
    ro.cache_dir = env;
  }
  ro.timings = !opt.no_timings;
  ro.log = [](const std::string& m) { std::cerr << "qsl: " << m << "\n"; };

  qsl::RunResult res;
  try {
    res = qsl::run(spec, ro);
  } catch (const std::exception& e) {
    std::cerr << "qsl: " << e.what() << "\n";
    return qsl::kExitInternal;
  }

  qsl::Format fmt = spec.format.value_or(qsl::Format::Human);
  if (!opt.format.empty()) fmt = opt.format == "json" ? qsl::Format::Json : qsl::Format::Human;
  if (fmt == qsl::Format::Json) {
    std::cout << res.report.dump(2) << "\n";
  } else {
    std::cout << qsl::render_human(res.report);
  }
  return res.exit_code;
}
