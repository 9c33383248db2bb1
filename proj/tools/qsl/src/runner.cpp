#include "qsl/runner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <sstream>

#include "qhat/errors.hpp"
#include "qhat/limit.hpp"
#include "qhat/oracles.hpp"
#include "qhat/specialize.hpp"
#include "qsl/cache.hpp"

namespace qsl {

using json = nlohmann::ordered_json;

namespace {

enum class Status { Done, Pass, Fail, Error };

const char* status_name(Status s) {
  switch (s) {
    case Status::Done: return "done";
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "?";
}

qhat::RingPoint ring_point(const RingSpec& r) {
  if (r.kind == RingSpec::Kind::Cyclotomic) return qhat::RingPoint::cyclotomic(r.order);
  return qhat::RingPoint::rational(r.xi);
}

struct TaskOutput {
  json result = json::object();
  json witnesses = json::array();
  bool pass = true;
  bool check = true;
};

json rows_json(const qhat::Report& rep, const std::string& where, TaskOutput& out) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"relation", r.name}, {"pass", r.pass}, {"witness", r.witness}});
    if (!r.pass) {
      out.pass = false;
      out.witnesses.push_back(where + ": " + r.name + ": " + r.witness);
    }
  }
  return rows;
}

class Runner {
 public:
  Runner(const JobSpec& spec, const RunOptions& opt)
      : spec_(spec), opt_(opt), datum_(spec.datum()), modules_(datum_) {
    if (opt_.cache_dir) {
      cache_ = std::make_unique<AlgebraCache>(*opt_.cache_dir, [this](const std::string& m) { log(m); });
    }
    for (const auto& gens : spec_.pis) {
      auto pi = qhat::saturate(datum_, gens);
      if (std::none_of(pis_.begin(), pis_.end(), [&](const auto& p) { return p == pi; })) pis_.push_back(pi);
    }
  }

  json header() const {
    json d = {{"name", datum_->name()}, {"cartan", datum_->cartan().form},
              {"hash", sha256_hex(datum_->serialize()).substr(0, 16)}};
    json pis = json::array();
    for (const auto& p : pis_) pis.push_back(p.key());
    return {{"datum", d}, {"pi", pis}};
  }

  TaskOutput execute(const Task& t) {
    switch (t.kind) {
      case TaskKind::Build: return build();
      case TaskKind::Dims: return dims();
      case TaskKind::Verify: return verify();
      case TaskKind::Maps: return maps();
      case TaskKind::Limit: return limit();
      case TaskKind::Probe: return probe(t);
      case TaskKind::Specialize: return specialize();
    }
    throw qhat::InternalError("unknown task");
  }

 private:
  void log(const std::string& m) const {
    if (opt_.log) opt_.log(m);
  }

  qhat::SchurPtr algebra(const qhat::SaturatedSet& pi) {
    auto it = algebras_.find(pi.key());
    if (it != algebras_.end()) return it->second;
    qhat::SchurPtr s;
    if (cache_) s = cache_->load(datum_, pi);
    if (s) {
      log("cache hit {" + pi.key() + "}");
    } else {
      s = qhat::SchurAlgebra::build(pi, modules_);
      s->dimension();
      if (cache_) {
        try {
          cache_->store(*s);
          log("cache store {" + pi.key() + "}");
        } catch (const std::exception& e) {
          log(std::string("cache store failed: ") + e.what());
        }
      }
    }
    algebras_.emplace(pi.key(), s);
    return s;
  }

  /// Distinct pi pairs (small, large) with small strictly inside large.
  std::vector<std::pair<std::size_t, std::size_t>> nested_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < pis_.size(); ++a) {
      for (std::size_t b = 0; b < pis_.size(); ++b) {
        if (a != b && pis_[a].is_subset_of(pis_[b])) out.emplace_back(a, b);
      }
    }
    return out;
  }

  TaskOutput build() {
    TaskOutput out;
    out.check = false;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      json blocks = json::array();
      for (const auto& m : s->modules()) {
        blocks.push_back({{"lambda", qhat::weight_str(m->highest_weight())}, {"dim", m->dim()}});
      }
      list.push_back({{"pi", pi.key()}, {"blocks", blocks}, {"dimension", s->dimension()}});
    }
    out.result["algebras"] = list;
    return out;
  }

  TaskOutput dims() {
    TaskOutput out;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      json blocks = json::array();
      mpz_class formula = 0;
      for (const auto& m : s->modules()) {
        mpz_class w = qhat::weyl_dim_oracle(*datum_, m->highest_weight());
        formula += w * w;
        blocks.push_back({{"lambda", qhat::weight_str(m->highest_weight())}, {"module_dim", m->dim()},
                          {"weyl_dim", w.get_str()}});
        if (w != static_cast<unsigned long>(m->dim())) {
          out.pass = false;
          out.witnesses.push_back(pi.key() + ": Delta" + qhat::weight_str(m->highest_weight()) + " has dim " +
                                  std::to_string(m->dim()) + ", Weyl formula " + w.get_str());
        }
      }
      const std::size_t dim = s->dimension();
      if (formula != static_cast<unsigned long>(dim)) {
        out.pass = false;
        out.witnesses.push_back(pi.key() + ": dimension " + std::to_string(dim) + " != " + formula.get_str());
      }
      list.push_back({{"pi", pi.key()}, {"dimension", dim}, {"weyl_formula", formula.get_str()}, {"blocks", blocks}});
    }
    out.result["algebras"] = list;
    return out;
  }

  TaskOutput verify() {
    TaskOutput out;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      list.push_back({{"pi", pi.key()}, {"rows", rows_json(s->verify_presentation(), pi.key(), out)}});
    }
    out.result["algebras"] = list;
    return out;
  }

  TaskOutput maps() {
    TaskOutput out;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      qhat::TruncationMap f(s, s);
      list.push_back({{"source", pi.key()}, {"target", pi.key()},
                      {"rows", rows_json(f.verify(), pi.key() + " -> " + pi.key(), out)}});
    }
    const auto pairs = nested_pairs();
    for (const auto& [a, b] : pairs) {
      qhat::TruncationMap f(algebra(pis_[b]), algebra(pis_[a]));
      const std::string where = pis_[b].key() + " -> " + pis_[a].key();
      list.push_back({{"source", pis_[b].key()}, {"target", pis_[a].key()}, {"rows", rows_json(f.verify(), where, out)}});
    }
    json chains = json::array();
    for (const auto& [a, b] : pairs) {
      for (const auto& [b2, c] : pairs) {
        if (b2 != b) continue;
        const std::string where = pis_[a].key() + " < " + pis_[b].key() + " < " + pis_[c].key();
        auto rep = qhat::verify_chain(algebra(pis_[a]), algebra(pis_[b]), algebra(pis_[c]));
        chains.push_back({{"chain", {pis_[a].key(), pis_[b].key(), pis_[c].key()}}, {"rows", rows_json(rep, where, out)}});
      }
    }
    out.result["maps"] = list;
    out.result["chains"] = chains;
    return out;
  }

  TaskOutput limit() {
    TaskOutput out;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      json suites = json::object();
      suites["K_h"] = rows_json(qhat::check_prop_Kh(*s), pi.key() + " K_h", out);
      suites["uhat"] = rows_json(qhat::check_uhat_relations(*s), pi.key() + " uhat", out);
      suites["u"] = rows_json(qhat::check_u_relations(*s), pi.key() + " u", out);
      list.push_back({{"pi", pi.key()}, {"suites", suites}});
    }
    out.result["algebras"] = list;
    return out;
  }

  TaskOutput probe(const Task& t) {
    TaskOutput out;
    out.check = false;
    auto param = [&](const std::string& k, const std::string& dflt) {
      auto it = t.params.find(k);
      return it == t.params.end() ? dflt : it->second;
    };
    const std::string mode = param("mode", t.params.count("expr") ? "separation" : "kernel");
    const int height = std::stoi(param("height", "4"));
    out.result["mode"] = mode;
    out.result["height"] = height;
    if (mode == "separation") {
      auto u = qhat::parse_expr(param("expr", "0"), *datum_);
      qhat::Tower tower(datum_);
      auto hit = qhat::separation_probe(u, height, tower);
      out.result["expr"] = u.str();
      out.result["found"] = hit.has_value();
      out.result["pi"] = hit ? json(hit->key()) : json(nullptr);
    } else {
      const int degree = std::stoi(param("degree", "2"));
      const bool with_k = param("k", "no") == "yes";
      const auto p = ring_point(spec_.ring.value_or(RingSpec{}));
      auto rep = qhat::kernel_probe_RU(datum_, degree, height, p, with_k);
      out.result["ring"] = p.describe();
      out.result["degree"] = degree;
      out.result["include_k"] = with_k;
      out.result["words"] = rep.words.size();
      out.result["pis"] = rep.pis;
      out.result["kernel_dims"] = rep.kernel_dims;
    }
    return out;
  }

  TaskOutput specialize() {
    TaskOutput out;
    const auto p = ring_point(*spec_.ring);
    qhat::LatticeCache lattices(datum_);
    std::vector<qhat::SpecializedPtr> rs;
    json list = json::array();
    for (const auto& pi : pis_) {
      auto s = algebra(pi);
      for (const auto& m : s->modules()) lattices.modules().put(m);
      auto r = qhat::SpecializedSchur::build(pi, p, lattices);
      rs.push_back(r);
      list.push_back({{"pi", pi.key()}, {"generic_dimension", r->generic_dimension()},
                      {"dimension", r->dimension()},
                      {"rows", rows_json(r->verify_relations(), pi.key(), out)}});
    }
    json maps = json::array();
    for (const auto& [a, b] : nested_pairs()) {
      const std::string where = pis_[b].key() + " -> " + pis_[a].key();
      qhat::RTruncationMap f(rs[b], rs[a]);
      qhat::Report rep = f.verify();
      for (const auto& row : qhat::verify_specialize_commutes(algebra(pis_[b]), algebra(pis_[a]), rs[b], rs[a]).rows) {
        rep.rows.push_back(row);
      }
      maps.push_back({{"source", pis_[b].key()}, {"target", pis_[a].key()}, {"rows", rows_json(rep, where, out)}});
    }
    out.result["ring"] = p.describe();
    out.result["algebras"] = list;
    out.result["maps"] = maps;
    return out;
  }

  const JobSpec& spec_;
  const RunOptions& opt_;
  qhat::DatumPtr datum_;
  qhat::ModuleCache modules_;
  std::unique_ptr<AlgebraCache> cache_;
  std::vector<qhat::SaturatedSet> pis_;
  std::map<std::string, qhat::SchurPtr> algebras_;
};

}  // namespace

RunResult run(const JobSpec& spec, const RunOptions& options) {
  RunResult res;
  json& doc = res.report;
  const auto start = std::chrono::steady_clock::now();
  auto seconds = [&](std::chrono::steady_clock::time_point t0) -> json {
    if (!options.timings) return nullptr;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  if (spec.preset.empty() && spec.form.empty()) {
    doc = {{"datum", nullptr}, {"pi", json::array()}, {"ring", nullptr}, {"tasks", json::array()},
           {"status", "pass"}, {"elapsed", seconds(start)}};
    return res;
  }

  Runner runner(spec, options);
  doc = runner.header();
  doc["ring"] = spec.ring ? json(ring_point(*spec.ring).describe()) : json(nullptr);
  json tasks = json::array();
  bool failed = false;
  bool errored = false;
  for (const auto& t : ordered_tasks(spec)) {
    const auto t0 = std::chrono::steady_clock::now();
    json params = json::object();
    for (const auto& [k, v] : t.params) params[k] = v;
    json entry = {{"task", task_name(t.kind)}, {"params", params}};
    try {
      TaskOutput out = runner.execute(t);
      Status st = !out.check ? Status::Done : out.pass ? Status::Pass : Status::Fail;
      failed = failed || st == Status::Fail;
      entry["status"] = status_name(st);
      entry["result"] = std::move(out.result);
      entry["witnesses"] = std::move(out.witnesses);
    } catch (const std::exception& e) {
      errored = true;
      std::string kind = "error";
      if (dynamic_cast<const qhat::InternalError*>(&e)) kind = "internal";
      if (dynamic_cast<const qhat::InvalidArgument*>(&e)) kind = "invalid argument";
      if (dynamic_cast<const qhat::PoleError*>(&e)) kind = "pole";
      if (dynamic_cast<const qhat::UnsupportedLattice*>(&e)) kind = "unsupported lattice";
      entry["status"] = status_name(Status::Error);
      entry["result"] = nullptr;
      entry["witnesses"] = json::array({kind + ": " + e.what()});
    }
    entry["elapsed"] = seconds(t0);
    tasks.push_back(std::move(entry));
  }
  doc["tasks"] = std::move(tasks);
  doc["status"] = errored ? "error" : failed ? "fail" : "pass";
  doc["elapsed"] = seconds(start);
  res.exit_code = errored ? kExitInternal : failed ? kExitCheckFailure : kExitPass;
  return res;
}

namespace {

void render(std::ostringstream& os, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_structured() && !x.empty()) {
        os << pad << k << ":\n";
        render(os, x, indent + 1);
      } else {
        os << pad << k << ": " << scalar(x) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_structured() && !x.empty()) {
        os << pad << "-\n";
        render(os, x, indent + 1);
      } else {
        os << pad << "- " << scalar(x) << "\n";
      }
    }
  } else {
    os << pad << scalar(v) << "\n";
  }
}

void strip(json& v) {
  if (v.is_object()) {
    v.erase("elapsed");
    for (auto& [k, x] : v.items()) strip(x);
  } else if (v.is_array()) {
    for (auto& x : v) strip(x);
  }
}

}  // namespace

std::string render_human(const json& report) {
  std::ostringstream os;
  render(os, report, 0);
  return os.str();
}

json strip_timings(json report) {
  strip(report);
  return report;
}

}  // namespace qsl
