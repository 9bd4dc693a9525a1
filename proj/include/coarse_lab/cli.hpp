#pragma once

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coarse_lab/coarse_cover.hpp"
#include "coarse_lab/errors.hpp"
#include "coarse_lab/generators.hpp"
#include "coarse_lab/ghost.hpp"
#include "coarse_lab/io.hpp"
#include "coarse_lab/orientation.hpp"
#include "coarse_lab/partial_action.hpp"
#include "coarse_lab/spectral.hpp"

namespace coarse_lab::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// Reports

enum class CheckVerdict { Pass, Fail, ExpectedFail };

inline const char* to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::Pass: return "PASS";
    case CheckVerdict::Fail: return "FAIL";
    case CheckVerdict::ExpectedFail: return "EXPECTED_FAIL";
  }
  return "?";
}

struct Check {
  std::string name;
  CheckVerdict verdict = CheckVerdict::Pass;
  json data = json::object();
  json witness;  // null unless the check failed or carries a witness
};

/// Machine-readable run report. Keys are emitted sorted, so identical inputs
/// give byte-identical output once the timestamp is suppressed.
class RunReport {
public:
  explicit RunReport(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  json& parameters() { return parameters_; }
  void add_input(const std::string& path, const std::string& bytes) { inputs_[path] = io::digest(bytes); }

  void add(Check c) {
    if (c.verdict == CheckVerdict::Fail && c.witness.is_null()) c.witness = {{"note", "no witness recorded"}};
    checks_.push_back(std::move(c));
  }

  bool any_fail() const {
    for (const auto& c : checks_) {
      if (c.verdict == CheckVerdict::Fail) return true;
    }
    return false;
  }

  const std::vector<Check>& checks() const noexcept { return checks_; }

  json to_json(std::optional<double> wall_ms) const {
    json checks = json::array();
    for (const auto& c : checks_) {
      checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"data", c.data}, {"witness", c.witness}});
    }
    json j = {{"v", 1},
              {"tool", "coarse-lab"},
              {"version", kVersion},
              {"subcommand", subcommand_},
              {"parameters", parameters_},
              {"inputs", inputs_},
              {"checks", std::move(checks)},
              {"all_pass", !any_fail()}};
    if (wall_ms) j["wall_time_ms"] = *wall_ms;
    return j;
  }

  void summary(std::ostream& out) const {
    for (const auto& c : checks_) out << "  [" << to_string(c.verdict) << "] " << c.name << "\n";
    out << subcommand_ << ": " << (any_fail() ? "FAIL" : "PASS") << " (" << checks_.size() << " checks)\n";
  }

private:
  std::string subcommand_;
  json parameters_ = json::object();
  json inputs_ = json::object();
  std::vector<Check> checks_;
};

inline json point_json(Point p) { return {{"c", p.component}, {"v", p.vertex}}; }

inline CheckVerdict verdict_of(bool ok) { return ok ? CheckVerdict::Pass : CheckVerdict::Fail; }

// ---------------------------------------------------------------------------
// Parameter parsing

/// "a..b" (inclusive range), "x:y:z" (list) or a single integer.
inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  auto to_int = [&](const std::string& s) -> std::int64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used != s.size()) throw InputDomainError("");
      return v;
    } catch (const std::exception&) {
      throw InputDomainError("'" + text + "' is not an integer, range a..b or list x:y:z");
    }
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = to_int(text.substr(0, dots));
    const auto hi = to_int(text.substr(dots + 2));
    if (hi < lo) throw InputDomainError("empty range '" + text + "'");
    std::vector<std::int64_t> out;
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) out.push_back(to_int(item));
  if (out.empty()) throw InputDomainError("empty integer list");
  return out;
}

/// "k=v,k=v" into a map.
inline std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputDomainError("parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

struct FamilyRequest {
  std::string family;  // cycles | sl2 | random | wang
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
};

inline FamilySpec family_spec(const std::string& family, const std::map<std::string, std::string>& params) {
  FamilySpec spec;
  if (family == "cycles") {
    spec.kind = FamilyKind::Cycles;
  } else if (family == "sl2") {
    spec.kind = FamilyKind::Sl2;
  } else if (family == "random") {
    spec.kind = FamilyKind::RandomRegular;
  } else {
    throw InputDomainError("unknown family '" + family + "'");
  }
  for (const auto& [k, v] : params) {
    if (k == "base" || k == "columns") continue;
    spec.parameters[k] = parse_int_list(v);
  }
  return spec;
}

struct Generated {
  SpaceOfGraphs space;
  std::optional<WangSpace> wang;
};

inline Generated generate_family(const FamilyRequest& req) {
  if (req.family != "wang") return {generate(family_spec(req.family, req.params), req.seed), std::nullopt};
  const auto base_it = req.params.find("base");
  const std::string base = base_it == req.params.end() ? "sl2" : base_it->second;
  if (base == "wang") throw InputDomainError("wang base must be a plain family");
  const auto cols_it = req.params.find("columns");
  const auto columns = cols_it == req.params.end() ? std::vector<std::int64_t>{4} : parse_int_list(cols_it->second);
  if (columns.size() != 1 || columns.front() < 1) throw InputDomainError("columns must be a positive integer");
  auto y = wang_space(generate(family_spec(base, req.params), req.seed), static_cast<std::size_t>(columns.front()));
  auto space = y.space;
  return {std::move(space), std::move(y)};
}

// ---------------------------------------------------------------------------
// Checks shared by subcommands and the suite

inline void spectrum_checks(const SpaceOfGraphs& x, RunReport& report) {
  Check c{"spectrum", CheckVerdict::Pass, json::object(), nullptr};
  json comps = json::array();
  std::vector<json> rows(x.component_count());
  std::vector<std::string> errors(x.component_count());
  parallel_for(x.component_count(), [&](std::size_t i) {
    try {
      const auto ev = laplacian_spectrum(laplacian(x, i));
      const auto kernel = kernel_dimension(ev);
      rows[i] = {{"component", i},
                 {"size", x.component(i).vertex_count()},
                 {"kernel_dimension", kernel},
                 {"min_eigenvalue", ev.minCoeff()},
                 {"max_eigenvalue", ev.maxCoeff()},
                 {"gap", kernel == 1 && ev.size() > 1 ? json(ev[1]) : json(nullptr)}};
    } catch (const StructuralError& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) throw StructuralError(errors[i]);
    comps.push_back(rows[i]);
    const bool ok = rows[i]["kernel_dimension"] == 1 && rows[i]["min_eigenvalue"].get<double>() >= -1e-9 &&
                    rows[i]["max_eigenvalue"].get<double>() <= 1 + 1e-9;
    if (!ok && c.verdict == CheckVerdict::Pass) {
      c.verdict = CheckVerdict::Fail;
      c.witness = rows[i];
    }
  }
  c.data = {{"normalisation", "(I - A/d)/2"}, {"components", std::move(comps)}};
  report.add(std::move(c));
}

inline json certificate_json(const ExpanderCertificate& cert) {
  json j = {{"degree_bound", cert.degree_bound},
            {"sizes", cert.sizes},
            {"gaps", cert.gaps},
            {"c", cert.c},
            {"c_min", cert.c_min},
            {"verdict", to_string(cert.verdict)},
            {"reason", cert.reason},
            {"normalisation", cert.normalisation}};
  return j;
}

inline void expander_check(const SpaceOfGraphs& x, double c_min, bool expect_nonexpander, RunReport& report) {
  const auto cert = certify_expander(x, c_min);
  Check c{"expander", CheckVerdict::Pass, certificate_json(cert), nullptr};
  if (cert.verdict == Verdict::Fail) {
    c.verdict = expect_nonexpander ? CheckVerdict::ExpectedFail : CheckVerdict::Fail;
    c.witness = {{"reason", cert.reason}};
    if (cert.witness_component) {
      const auto i = *cert.witness_component;
      c.witness["component"] = i;
      c.witness["size"] = cert.sizes[i];
      c.witness["gap"] = cert.gaps[i];
    }
  } else if (expect_nonexpander) {
    c.verdict = CheckVerdict::Fail;
    c.witness = {{"reason", "expected a non-expander but every clause held"}};
  }
  report.add(std::move(c));
}

inline json ghost_json(const GhostReport& r) {
  json witness = nullptr;
  if (r.witness) {
    witness = {{"block", r.witness->block}, {"x", r.witness->x}, {"y", r.witness->y}, {"value", r.witness->value}};
    if (r.witness->column_i) {
      witness["column_i"] = *r.witness->column_i;
      witness["unbounded_direction"] = r.witness->unbounded_direction;
    }
  }
  return {{"verdict", to_string(r.verdict)},
          {"tag", to_string(r.tag)},
          {"epsilon", r.epsilon},
          {"offending", r.offending_blocks},
          {"witness", std::move(witness)},
          {"per_block_max", r.per_block_max}};
}

/// expect: "GHOST" / "NOT_GHOST" / empty (no expectation).
inline void ghost_check(const std::string& name, const BlockOperator& op, double eps, const std::string& expect,
                        RunReport& report) {
  const auto r = classify_ghost(op, eps);
  Check c{name, CheckVerdict::Pass, ghost_json(r), nullptr};
  if (!expect.empty() && expect != to_string(r.verdict)) {
    c.verdict = CheckVerdict::Fail;
    c.witness = {{"expected", expect}, {"got", to_string(r.verdict)}};
  }
  report.add(std::move(c));
}

inline void labelling_check(const EdgeLabelling& l, RunReport& report) {
  const auto v = validate_labelling(l);
  Check c{"labelling", verdict_of(v.pass), {{"k", l.k}, {"edges", l.edges.size()}}, nullptr};
  if (!v.pass) {
    c.witness = {{"component", v.violation->component},
                 {"vertex", v.violation->vertex},
                 {"gen", v.violation->gen},
                 {"reason", v.violation->reason}};
  }
  report.add(std::move(c));
}

inline void action_checks(const ThetaAction& action, std::size_t max_length, std::size_t horizon,
                          std::uint64_t seed, RunReport& report) {
  const SpaceOfGraphs& x = action.space();
  const auto words = enumerate_reduced_words(action.k(), max_length);
  const auto girths = component_girths(x);

  {
    const auto r = check_dual_prehom(action, max_length);
    Check c{"dual_prehomomorphism", verdict_of(r.pass()),
            {{"max_length", r.max_length}, {"pairs_checked", r.pairs_checked}, {"violations", r.violations.size()}},
            nullptr};
    if (!r.pass()) {
      const auto& v = r.violations.front();
      c.witness = {{"g", v.g.to_string()}, {"h", v.h.to_string()}, {"point", point_json(v.point)}, {"detail", v.detail}};
    }
    report.add(std::move(c));
  }
  {
    Check c{"freeness_below_girth", CheckVerdict::Pass, json::object(), nullptr};
    std::size_t checked = 0;
    for (const auto& w : words) {
      if (w.empty()) continue;
      for (std::size_t i = 0; i < x.component_count(); ++i) {
        if (girths[i] != kInfinite && w.length() >= girths[i]) continue;
        ++checked;
        const auto fps = fixed_points(action, w, i);
        if (!fps.empty() && c.verdict == CheckVerdict::Pass) {
          c.verdict = CheckVerdict::Fail;
          c.witness = {{"word", w.to_string()}, {"component", i}, {"point", point_json(fps.front())}};
        }
      }
    }
    json g = json::array();
    for (auto v : girths) g.push_back(v == kInfinite ? json("inf") : json(v));
    c.data = {{"instances", checked}, {"girths", std::move(g)}};
    report.add(std::move(c));
  }
  {
    Check c{"three_colouring", CheckVerdict::Pass, json::object(), nullptr};
    std::size_t coloured = 0;
    for (const auto& w : words) {
      if (w.empty()) continue;
      std::size_t start = x.component_count();
      while (start > 0 && fixed_points(action, w, start - 1).empty()) --start;
      if (start == x.component_count()) continue;
      const auto col = three_coloring(action, w, start);
      ++coloured;
      if (!verify_three_coloring(action, w, col) && c.verdict == CheckVerdict::Pass) {
        c.verdict = CheckVerdict::Fail;
        c.witness = {{"word", w.to_string()}, {"i_start", start}};
      }
    }
    c.data = {{"words_coloured", coloured}};
    report.add(std::move(c));
  }
  {
    Check c{"translation_length", CheckVerdict::Pass, json::object(), nullptr};
    for (const auto& w : words) {
      const auto& t = action.theta(w);
      const auto len = translation_length(x, t);
      const bool inverse_ok = action.theta(w.inverse()) == t.inverse();
      if ((len > w.length() || !inverse_ok) && c.verdict == CheckVerdict::Pass) {
        c.verdict = CheckVerdict::Fail;
        c.witness = {{"word", w.to_string()}, {"length", len}, {"inverse_ok", inverse_ok}};
      }
    }
    c.data = {{"words", words.size()}};
    report.add(std::move(c));
  }
  {
    const auto r = check_monoid_structure(action, max_length, horizon, 200, seed);
    auto clause = [](const ClauseResult& cr) {
      return json{{"pass", cr.pass}, {"checked", cr.checked}, {"skipped", cr.skipped}};
    };
    Check c{"monoid_structure", verdict_of(r.pass()),
            {{"max_length", r.max_length},
             {"horizon", r.horizon},
             {"not_idempotent", clause(r.not_idempotent)},
             {"unique_maximal", clause(r.unique_maximal)},
             {"zero_e_unitary", clause(r.zero_e_unitary)}},
            nullptr};
    if (!r.pass()) {
      json w = json::object();
      if (!r.not_idempotent.pass) w["not_idempotent"] = r.not_idempotent.witnesses.front();
      if (!r.unique_maximal.pass) w["unique_maximal"] = r.unique_maximal.witnesses.front();
      if (!r.zero_e_unitary.pass) w["zero_e_unitary"] = r.zero_e_unitary.witnesses.front();
      c.witness = std::move(w);
    }
    report.add(std::move(c));
  }
  {
    const auto r = check_phi(action, max_length, horizon);
    Check c{"phi", verdict_of(r.pass()),
            {{"words_checked", r.words_checked}, {"products_checked", r.products_checked}}, nullptr};
    if (!r.pass()) c.witness = {{"failure", r.failures.front()}};
    report.add(std::move(c));
  }
}

inline void cover_check(const ThetaAction& action, std::size_t radius, std::size_t i0, RunReport& report) {
  const auto r = cover_at_infinity(action, radius, i0);
  bool words_bounded = true;
  json used = json::array();
  for (const auto& w : r.words_used) {
    used.push_back(w.to_string());
    if (w.length() > radius) words_bounded = false;
  }
  const bool ok = r.pass() && words_bounded;
  Check c{"cover_at_infinity", verdict_of(ok),
          {{"R", r.radius},
           {"i0", r.i0},
           {"total_pairs", r.total_pairs},
           {"diagonal", r.diagonal},
           {"covered", r.covered},
           {"exceptional", r.exceptional.size()},
           {"cross_component", r.cross_component},
           {"words_used", std::move(used)}},
          nullptr};
  if (!r.pass()) c.witness = {{"failure", r.failures.front()}};
  else if (!words_bounded) c.witness = {{"failure", "a covering word is longer than R"}};
  report.add(std::move(c));
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  // shared
  std::string in, out, json_out, graphs, labelling_path;
  std::string family, params, lengths, primes, base, operator_name, expect;
  std::uint64_t seed = 0;
  double eps = 0.25;
  double cmin = 0.05;
  std::size_t maxlen = 3;
  std::size_t horizon = 0;
  std::size_t radius = 3;
  std::size_t i0 = 1;
  std::size_t columns = 4;
  std::uint32_t k = 0;
  bool expect_nonexpander = false;
  bool no_timestamp = false;
};

struct LoadedGraphs {
  io::GraphFile file;
  std::string bytes;
};

inline LoadedGraphs load_graphs(const std::string& path) {
  LoadedGraphs g;
  g.bytes = io::read_file(path);
  g.file = io::space_from_json(io::parse_json(g.bytes, path));
  return g;
}

inline FamilyRequest request_from(const Options& o) {
  FamilyRequest req{o.family, parse_params(o.params), o.seed};
  if (!o.lengths.empty()) req.params["lengths"] = o.lengths;
  if (!o.primes.empty()) req.params["primes"] = o.primes;
  if (!o.base.empty()) req.params["base"] = o.base;
  if (o.family == "wang" && !req.params.contains("columns")) req.params["columns"] = std::to_string(o.columns);
  return req;
}

class Runner {
public:
  explicit Runner(std::ostream& out) : out_(out) {}

  int finish(RunReport& report, const Options& o) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    const auto j = report.to_json(o.no_timestamp ? std::nullopt : std::optional<double>(ms));
    if (!o.json_out.empty()) io::write_file(o.json_out, j.dump(2) + "\n");
    report.summary(out_);
    return report.any_fail() ? kExitFail : kExitPass;
  }

  int gen(const Options& o) {
    RunReport report("gen");
    const auto req = request_from(o);
    report.parameters() = {{"family", req.family}, {"params", req.params}, {"seed", o.seed}};
    const auto g = generate_family(req);
    const auto j = g.wang ? io::wang_to_json(*g.wang) : io::space_to_json(g.space);
    if (o.out.empty()) throw InputDomainError("--out is required");
    io::write_file(o.out, j.dump() + "\n");
    json sizes = json::array();
    for (const auto& comp : g.space.components()) sizes.push_back(comp.vertex_count());
    report.add({"generated", CheckVerdict::Pass, {{"components", g.space.component_count()}, {"sizes", sizes}}, nullptr});
    return finish(report, o);
  }

  int spectrum(const Options& o) {
    RunReport report("spectrum");
    const auto g = load_graphs(o.in);
    report.add_input(o.in, g.bytes);
    spectrum_checks(g.file.space, report);
    return finish(report, o);
  }

  int expander(const Options& o) {
    RunReport report("expander");
    const auto g = load_graphs(o.in);
    report.add_input(o.in, g.bytes);
    report.parameters() = {{"cmin", o.cmin}, {"expect_nonexpander", o.expect_nonexpander}};
    expander_check(g.file.space, o.cmin, o.expect_nonexpander, report);
    return finish(report, o);
  }

  int ghost(const Options& o) {
    RunReport report("ghost");
    const auto g = load_graphs(o.in);
    report.add_input(o.in, g.bytes);
    std::string op = o.operator_name;
    if (op.empty()) op = g.file.wang ? "q" : "p";
    report.parameters() = {{"eps", o.eps}, {"operator", op}, {"expect", o.expect}};
    if (op == "q") {
      if (!g.file.wang) throw InputDomainError("operator q needs a file with a layout");
      ghost_check("ghost_q", wang_projection(*g.file.wang), o.eps, o.expect, report);
    } else if (op == "p") {
      ghost_check("ghost_p", ghost_projection(g.file.wang ? g.file.wang->base : g.file.space), o.eps, o.expect, report);
    } else {
      throw InputDomainError("--operator must be p or q");
    }
    return finish(report, o);
  }

  int orient(const Options& o) {
    RunReport report("orient");
    const auto g = load_graphs(o.in);
    report.add_input(o.in, g.bytes);
    auto space = std::make_shared<const SpaceOfGraphs>(g.file.space);
    const auto l = o.k == 0 ? orient_labelling(space) : orient_labelling(space, o.k);
    report.parameters() = {{"k", l.k}};
    labelling_check(l, report);
    if (o.out.empty()) throw InputDomainError("--out is required");
    io::write_file(o.out, io::labelling_to_json(l).dump() + "\n");
    return finish(report, o);
  }

  /// Empty when the labelling does not even define partial bijections; the
  /// labelling check then carries the failure.
  std::optional<ThetaAction> load_action(const Options& o, RunReport& report) {
    const auto g = load_graphs(o.graphs);
    report.add_input(o.graphs, g.bytes);
    const auto bytes = io::read_file(o.labelling_path);
    report.add_input(o.labelling_path, bytes);
    auto space = std::make_shared<const SpaceOfGraphs>(g.file.space);
    auto l = io::labelling_from_json(io::parse_json(bytes, o.labelling_path), space);
    labelling_check(l, report);
    if (!report.any_fail()) return ThetaAction(std::move(l));
    try {
      return ThetaAction::unchecked(std::move(l));
    } catch (const InputDomainError&) {
      return std::nullopt;
    }
  }

  int action(const Options& o) {
    RunReport report("action");
    report.parameters() = {{"maxlen", o.maxlen}, {"horizon", o.horizon}, {"seed", o.seed}};
    if (const auto a = load_action(o, report)) action_checks(*a, o.maxlen, o.horizon, o.seed, report);
    return finish(report, o);
  }

  int cover(const Options& o) {
    RunReport report("cover");
    report.parameters() = {{"R", o.radius}, {"i0", o.i0}};
    if (const auto a = load_action(o, report)) cover_check(*a, o.radius, o.i0, report);
    return finish(report, o);
  }

  int wang(const Options& o) {
    RunReport report("wang");
    const auto g = load_graphs(o.in);
    report.add_input(o.in, g.bytes);
    report.parameters() = {{"columns", o.columns}, {"eps", o.eps}};
    const auto y = wang_space(g.file.wang ? g.file.wang->base : g.file.space, o.columns);
    if (!o.out.empty()) io::write_file(o.out, io::wang_to_json(y).dump() + "\n");
    ghost_check("ghost_p", ghost_projection(y.base), o.eps, "GHOST", report);
    ghost_check("ghost_q", wang_projection(y), o.eps, "NOT_GHOST", report);
    return finish(report, o);
  }

  /// gen -> orient -> action -> cover -> spectrum / expander / ghost. Check
  /// failures are recorded and the pipeline continues.
  int suite(const Options& o) {
    RunReport report("suite");
    const auto req = request_from(o);
    report.parameters() = {{"family", req.family}, {"params", req.params},   {"seed", o.seed},
                           {"maxlen", o.maxlen},   {"horizon", o.horizon},   {"R", o.radius},
                           {"i0", o.i0},           {"cmin", o.cmin},         {"eps", o.eps},
                           {"expect_nonexpander", o.expect_nonexpander}};
    const auto g = generate_family(req);
    // The partial action and covering live on the base sequence.
    const SpaceOfGraphs& base = g.wang ? g.wang->base : g.space;
    json sizes = json::array();
    for (const auto& comp : base.components()) sizes.push_back(comp.vertex_count());
    report.add({"generated", CheckVerdict::Pass, {{"components", base.component_count()}, {"sizes", sizes}}, nullptr});

    auto space = std::make_shared<const SpaceOfGraphs>(base);
    auto l = orient_labelling(space);
    labelling_check(l, report);
    const ThetaAction a(std::move(l));
    action_checks(a, o.maxlen, o.horizon, o.seed, report);
    cover_check(a, o.radius, o.i0, report);
    spectrum_checks(base, report);
    expander_check(base, o.cmin, o.expect_nonexpander, report);
    ghost_check("ghost_p", ghost_projection(base), o.eps, "GHOST", report);
    if (g.wang) ghost_check("ghost_q", wang_projection(*g.wang), o.eps, "NOT_GHOST", report);
    return finish(report, o);
  }

private:
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Entry point. Exit codes: 0 all checks PASS, 1 some check FAIL (the report
/// is still written), 2 usage or input error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"coarse-lab: spaces of graphs, partial translations and ghost projections"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto add_report_flags = [&](CLI::App* sub) {
    sub->add_option("--json", o.json_out, "Write the JSON report here");
    sub->add_flag("--no-timestamp", o.no_timestamp, "Omit wall time from the report");
  };
  auto add_family_flags = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "cycles | sl2 | random | wang")
        ->required()
        ->check(CLI::IsMember({"cycles", "sl2", "random", "wang"}));
    sub->add_option("--params", o.params, "k=v,... (lists as a..b or x:y:z)");
    sub->add_option("--lengths", o.lengths, "Cycle lengths, e.g. 5..14");
    sub->add_option("--primes", o.primes, "Primes, e.g. 3:5:7");
    sub->add_option("--base", o.base, "Base family of a wang space");
    sub->add_option("--columns", o.columns, "Columns of a wang space");
    sub->add_option("--seed", o.seed, "Random seed");
  };

  auto* gen = app.add_subcommand("gen", "Generate a family of graphs");
  add_family_flags(gen);
  gen->add_option("--out", o.out, "Graph file to write")->required();
  add_report_flags(gen);

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectra per component");
  spectrum->add_option("--in", o.in)->required();
  add_report_flags(spectrum);

  auto* expander = app.add_subcommand("expander", "Certify an expander sequence");
  expander->add_option("--in", o.in)->required();
  expander->add_option("--cmin", o.cmin, "Required spectral gap");
  expander->add_flag("--expect-nonexpander", o.expect_nonexpander);
  add_report_flags(expander);

  auto* ghost = app.add_subcommand("ghost", "Classify a ghost projection");
  ghost->add_option("--in", o.in)->required();
  ghost->add_option("--eps", o.eps, "Ghost threshold epsilon");
  ghost->add_option("--operator", o.operator_name, "p (ghost projection) or q (doubled space)");
  ghost->add_option("--expect", o.expect)->check(CLI::IsMember({"GHOST", "NOT_GHOST", "UNDECIDED_AT_TRUNCATION"}));
  add_report_flags(ghost);

  auto* orient = app.add_subcommand("orient", "Almost k-orient a graph file");
  orient->add_option("--in", o.in)->required();
  orient->add_option("--out", o.out, "Labelling file to write")->required();
  orient->add_option("--k", o.k, "Generator count (default: minimal)");
  add_report_flags(orient);

  auto* action = app.add_subcommand("action", "Check the partial action of F_k");
  action->add_option("--graphs", o.graphs)->required();
  action->add_option("--labelling", o.labelling_path)->required();
  action->add_option("--maxlen", o.maxlen, "Longest word checked")->check(CLI::Range(1, 8));
  action->add_option("--horizon", o.horizon, "Components in the truncation (0 = all)");
  action->add_option("--seed", o.seed);
  add_report_flags(action);

  auto* cover = app.add_subcommand("cover", "Check covering of the entourages");
  cover->add_option("--graphs", o.graphs)->required();
  cover->add_option("--labelling", o.labelling_path)->required();
  cover->add_option("-R", o.radius, "Entourage radius")->check(CLI::Range(1, 64));
  cover->add_option("--i0", o.i0, "First component that must be covered (1-based)")->check(CLI::Range(1, 1 << 20));
  add_report_flags(cover);

  auto* wang = app.add_subcommand("wang", "Doubled space and its projections");
  wang->add_option("--in", o.in)->required();
  wang->add_option("--columns", o.columns)->check(CLI::Range(1, 1 << 16));
  wang->add_option("--eps", o.eps, "Ghost threshold epsilon");
  wang->add_option("--out", o.out, "Write the doubled graph file");
  add_report_flags(wang);

  auto* suite = app.add_subcommand("suite", "Full pipeline on a generated family");
  add_family_flags(suite);
  suite->add_option("--maxlen", o.maxlen, "Longest word checked")->check(CLI::Range(1, 8));
  suite->add_option("--horizon", o.horizon, "Components in the truncation (0 = all)");
  suite->add_option("-R", o.radius, "Entourage radius")->check(CLI::Range(1, 64));
  suite->add_option("--i0", o.i0, "First component that must be covered (1-based)")->check(CLI::Range(1, 1 << 20));
  suite->add_option("--cmin", o.cmin, "Required spectral gap");
  suite->add_option("--eps", o.eps, "Ghost threshold epsilon");
  auto* suite_expect = suite->add_flag("--expect-nonexpander", o.expect_nonexpander,
                                       "Record an expander FAIL as EXPECTED_FAIL (default for cycles)");
  add_report_flags(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  // Cycles are the standard non-expander, so their suite runs treat the
  // expander check as a negative control unless told otherwise.
  if (*suite && o.family == "cycles" && suite_expect->count() == 0) o.expect_nonexpander = true;

  Runner r(out);
  try {
    if (*gen) return r.gen(o);
    if (*spectrum) return r.spectrum(o);
    if (*expander) return r.expander(o);
    if (*ghost) return r.ghost(o);
    if (*orient) return r.orient(o);
    if (*action) return r.action(o);
    if (*cover) return r.cover(o);
    if (*wang) return r.wang(o);
    if (*suite) return r.suite(o);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputDomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace coarse_lab::cli
