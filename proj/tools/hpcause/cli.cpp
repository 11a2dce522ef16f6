#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hpcause/cause.hpp"
#include "hpcause/error.hpp"
#include "hpcause/qbf.hpp"
#include "hpcause/responsibility.hpp"
#include "hpcause/text_format.hpp"
#include "selftest.hpp"

namespace hpcause::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read " + path.string()};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kUsage, "cannot write " + path.string()};
}

// Runs `fn`, reporting ParseError at `where:line:col`.
template <typename Fn>
auto in_file(const fs::path& where, std::string_view text, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    auto [line, col] = line_column(text, e.offset());
    throw Failure{kParse, where.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                              ": parse error at offset " + std::to_string(e.offset()) + ": " + e.detail()};
  }
}

// Same for a command-line value.
template <typename Fn>
auto in_flag(std::string_view flag, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw Failure{kParse, std::string(flag) + ": parse error at offset " + std::to_string(e.offset()) + ": " +
                              e.detail()};
  }
}

CausalModel load_model(const fs::path& path) {
  std::string text = read_file(path);
  CausalModel model = in_file(path, text, [&] { return parse_model(text); });
  ValidationReport report = validate_model(model);
  for (const auto& v : report.violations)
    if (v.kind != ViolationKind::kRangeCheckSkipped)
      throw Failure{kInvalidModel, path.string() + ": invalid model: " + v.message};
  return model;
}

struct Common {
  std::string variant;
  bool json = false;
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;

  std::optional<Variant> variant_override() const {
    if (variant.empty()) return std::nullopt;
    return in_flag("--variant", [&] { return parse_variant(variant); });
  }
  Variant variant_or_default() const { return variant_override().value_or(Variant::kUpdated); }
  SearchOptions options() const { return SearchOptions{budget, std::max(1u, threads)}; }
};

void add_common(CLI::App* cmd, Common& c, bool variant = true) {
  if (variant)
    cmd->add_option("--variant", c.variant, "updated (default) or original")
        ->check(CLI::IsMember({"updated", "original"}));
  cmd->add_flag("--json", c.json, "Machine-readable output");
  cmd->add_option("--budget", c.budget, "Solver calls allowed per search")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
}

CauseQuery load_query(const fs::path& query_path, const std::string& model_override,
                      std::optional<Variant> variant, std::string* model_shown) {
  std::string text = read_file(query_path);
  QueryFile qf = in_file(query_path, text, [&] { return parse_query_file(text); });
  fs::path model_path = model_override.empty() ? query_path.parent_path() / qf.model_path.text : fs::path(model_override);
  *model_shown = model_override.empty() ? qf.model_path.text : model_override;
  CausalModel model = load_model(model_path);
  return in_file(query_path, text, [&] { return bind_query(qf, model, variant); });
}

// ---- rendering ----

Json assignment_json(const Signature& sig, const Assignment& a) {
  Json o = Json::object();
  for (const auto& s : a) o[sig.name(s.var)] = s.value;
  return o;
}

Json witness_json(const Signature& sig, const std::optional<Witness>& w) {
  if (!w) return nullptr;
  Json names = Json::array();
  for (const auto& s : w->contingency) names.push_back(sig.name(s.var));
  return Json{{"W", names}, {"w", assignment_json(sig, w->contingency)}, {"x_prime", assignment_json(sig, w->alternative)}};
}

std::string witness_text(const Signature& sig, const Witness& w) {
  std::string names;
  for (const auto& s : w.contingency) names += (names.empty() ? "" : ", ") + sig.name(s.var);
  return "W={" + names + "}, w=(" + to_string(sig, w.contingency) + "), x'=(" + to_string(sig, w.alternative) + ")";
}

Json stats_json(const SearchStats& s) { return Json{{"solver_calls", s.solver_calls}, {"memo_hits", s.memo_hits}}; }

Json query_json(const std::string& model, const CauseQuery& q) {
  const Signature& sig = q.model().signature();
  return Json{{"model", model},
              {"context", assignment_json(sig, q.context().values())},
              {"cause", assignment_json(sig, q.candidate())},
              {"effect", q.effect().to_string(sig)},
              {"variant", to_string(q.variant())}};
}

Json verdict_json(const Signature& sig, const CauseVerdict& v) {
  return Json{{"is_cause", v.is_cause},
              {"ac1", v.ac1},
              {"ac2_witness", witness_json(sig, v.ac2_witness)},
              {"ac3_violator", v.ac3_violator ? assignment_json(sig, *v.ac3_violator) : Json(nullptr)}};
}

void print_verdict_text(std::ostream& out, const Signature& sig, const CauseVerdict& v) {
  out << "AC1: " << (v.ac1 ? "holds" : "fails") << "\n";
  if (v.ac2_witness)
    out << "AC2: holds with " << witness_text(sig, *v.ac2_witness) << "\n";
  else
    out << "AC2: no witness\n";
  if (v.ac3_violator)
    out << "AC3: fails, " << to_string(sig, *v.ac3_violator) << " already satisfies AC1 and AC2\n";
  else
    out << "AC3: holds\n";
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void print_footer(std::ostream& out, const SearchStats& stats, const Timer& t) {
  out << "solver calls: " << stats.solver_calls << " (memo hits " << stats.memo_hits << ")\n";
  out << "time: " << static_cast<long long>(t.ms()) << " ms\n";
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---- commands ----

struct QueryArgs {
  Common common;
  std::string query;
  std::string model;
};

void add_query_args(CLI::App* cmd, QueryArgs& a) {
  cmd->add_option("query", a.query, "Query file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a.model, "Model file (overrides the query's model: line)")->check(CLI::ExistingFile);
  add_common(cmd, a.common);
}

int check_cause(const QueryArgs& a, std::ostream& out) {
  Timer t;
  std::string model_shown;
  CauseQuery q = load_query(a.query, a.model, a.common.variant_override(), &model_shown);
  SearchStats stats;
  CauseVerdict v = is_cause(q, a.common.options(), &stats);
  const Signature& sig = q.model().signature();
  if (a.common.json) {
    emit(out, Json{{"command", "check-cause"},
                   {"query", query_json(model_shown, q)},
                   {"verdict", verdict_json(sig, v)},
                   {"stats", stats_json(stats)}});
    return kOk;
  }
  out << to_string(sig, q.candidate()) << " for " << q.effect().to_string(sig) << " (" << to_string(q.variant())
      << "): " << (v.is_cause ? "cause" : "not a cause") << "\n";
  print_verdict_text(out, sig, v);
  print_footer(out, stats, t);
  return kOk;
}

int responsibility(const QueryArgs& a, std::ostream& out) {
  Timer t;
  std::string model_shown;
  CauseQuery q = load_query(a.query, a.model, a.common.variant_override(), &model_shown);
  SearchStats stats;
  ResponsibilityResult r = degree_of_responsibility(q, a.common.options(), &stats);
  const Signature& sig = q.model().signature();
  if (a.common.json) {
    emit(out, Json{{"command", "responsibility"},
                   {"query", query_json(model_shown, q)},
                   {"degree", to_string(r.degree)},
                   {"min_changes", r.min_changes ? Json(*r.min_changes) : Json(nullptr)},
                   {"witness", witness_json(sig, r.witness)},
                   {"verdict", verdict_json(sig, r.verdict)},
                   {"stats", stats_json(stats)}});
    return kOk;
  }
  out << "responsibility of " << to_string(sig, q.candidate()) << " for " << q.effect().to_string(sig) << ": "
      << to_string(r.degree) << "\n";
  if (r.witness)
    out << "changes: " << *r.min_changes << " with " << witness_text(sig, *r.witness) << "\n";
  else
    out << "not a cause\n";
  print_footer(out, stats, t);
  return kOk;
}

struct BlameArgs {
  Common common;
  std::string state;
  std::string setting;
  std::string effect;
};

int blame(const BlameArgs& a, std::ostream& out) {
  Timer t;
  const fs::path state_path = a.state;
  std::string text = read_file(state_path);
  std::vector<StateRecord> records = in_file(state_path, text, [&] { return parse_state_file(text); });
  if (records.empty()) throw Failure{kInvalidQuery, state_path.string() + ": no situations"};

  std::map<std::string, CausalModel> models;
  std::vector<Situation> situations;
  std::vector<Rational> probabilities;
  for (const auto& r : records) {
    auto it = models.find(r.model_path.text);
    if (it == models.end())
      it = models.emplace(r.model_path.text, load_model(state_path.parent_path() / r.model_path.text)).first;
    const CausalModel& m = it->second;
    Assignment ctx = in_file(state_path, text, [&] {
      try {
        return parse_assignment(r.context.text, m.signature(), VarKind::kExogenous);
      } catch (const ParseError& e) {
        throw e.shifted(r.context.offset);
      }
    });
    situations.push_back(Situation{m, Context(m.signature(), std::move(ctx))});
    probabilities.push_back(r.probability);
  }
  EpistemicState state(std::move(situations), std::move(probabilities));
  const Signature& sig = state.signature();
  Assignment setting = in_flag("--setting", [&] { return parse_assignment(a.setting, sig); });
  EventFormula effect = in_flag("--effect", [&] { return parse_event_formula(a.effect, sig); });
  SearchStats stats;
  Rational b = degree_of_blame(state, setting, effect, a.common.variant_or_default(), a.common.options(), &stats);
  if (a.common.json) {
    emit(out, Json{{"command", "blame"},
                   {"state", a.state},
                   {"situations", state.situations().size()},
                   {"setting", assignment_json(sig, setting)},
                   {"effect", effect.to_string(sig)},
                   {"variant", to_string(a.common.variant_or_default())},
                   {"blame", to_string(b)},
                   {"stats", stats_json(stats)}});
    return kOk;
  }
  out << "blame of " << to_string(sig, setting) << " for " << effect.to_string(sig) << " over "
      << state.situations().size() << " situations: " << to_string(b) << "\n";
  print_footer(out, stats, t);
  return kOk;
}

struct EnumerateArgs {
  Common common;
  std::string model;
  std::string context;
  std::string effect;
  std::size_t max_size = 1;
};

int enumerate(const EnumerateArgs& a, std::ostream& out) {
  Timer t;
  CausalModel model = load_model(a.model);
  const Signature& sig = model.signature();
  Context ctx = in_flag("--context", [&] { return parse_context(a.context, sig); });
  EventFormula effect = in_flag("--effect", [&] { return parse_event_formula(a.effect, sig); });
  SearchStats stats;
  auto causes = enumerate_causes(model, ctx, effect, a.common.variant_or_default(), a.max_size, a.common.options(),
                                 &stats);
  if (a.common.json) {
    Json list = Json::array();
    for (const auto& c : causes)
      list.push_back(Json{{"cause", assignment_json(sig, c.cause)}, {"witness", witness_json(sig, c.witness)}});
    emit(out, Json{{"command", "enumerate"},
                   {"model", a.model},
                   {"context", assignment_json(sig, ctx.values())},
                   {"effect", effect.to_string(sig)},
                   {"variant", to_string(a.common.variant_or_default())},
                   {"max_size", a.max_size},
                   {"causes", list},
                   {"stats", stats_json(stats)}});
    return kOk;
  }
  out << causes.size() << " cause(s) of " << effect.to_string(sig) << " (" << to_string(a.common.variant_or_default())
      << ", at most " << a.max_size << " conjunct(s))\n";
  for (const auto& c : causes) out << "  " << to_string(sig, c.cause) << "  " << witness_text(sig, c.witness) << "\n";
  print_footer(out, stats, t);
  return kOk;
}

struct GenArgs {
  bool sigma2 = false;
  bool pi2 = false;
  std::string cqbf;
  std::string out_dir;
  bool json = false;
};

int gen_instance(const GenArgs& a, std::ostream& out) {
  const fs::path path = a.cqbf;
  std::string text = read_file(path);
  Cqbf2 f = in_file(path, text, [&] { return parse_cqbf(text); });
  LabeledInstance inst = a.sigma2 ? build_sigma2_instance(f) : build_pi2_instance(f);

  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (ec) throw Failure{kUsage, "cannot create " + a.out_dir + ": " + ec.message()};
  const std::string stem = path.stem().string();
  const fs::path model_file = fs::path(a.out_dir) / (stem + ".scm");
  const fs::path query_file = fs::path(a.out_dir) / (stem + ".query");
  const fs::path label_file = fs::path(a.out_dir) / (stem + ".expected");
  write_file(model_file, "# generated from " + f.to_string() + "\n" + format_model(inst.query.model()));
  write_file(query_file, format_query(model_file.filename().string(), inst.query));
  std::string label = std::string("language: ") + to_string(inst.language) +
                      "\nexpected: " + (inst.expected_in_language ? "true" : "false") + "\n";
  write_file(label_file, label);

  if (a.json) {
    emit(out, Json{{"command", "gen-instance"},
                   {"cqbf", f.to_string()},
                   {"language", to_string(inst.language)},
                   {"expected", inst.expected_in_language},
                   {"files", {model_file.string(), query_file.string(), label_file.string()}}});
    return kOk;
  }
  out << f.to_string() << " is " << (inst.expected_in_language ? "true" : "false") << "\n";
  out << "wrote " << model_file.string() << ", " << query_file.string() << ", " << label_file.string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Actual causality, responsibility and blame in finite structural causal models", "hpcause"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hpcause 0.1.0");

  QueryArgs check_args;
  auto* check_cmd = app.add_subcommand("check-cause", "Decide whether the query's cause is an actual cause");
  add_query_args(check_cmd, check_args);

  QueryArgs resp_args;
  auto* resp_cmd = app.add_subcommand("responsibility", "Degree of responsibility of the query's cause");
  add_query_args(resp_cmd, resp_args);

  BlameArgs blame_args;
  auto* blame_cmd = app.add_subcommand("blame", "Degree of blame over an epistemic state");
  blame_cmd->add_option("state", blame_args.state, "Epistemic-state file")->required()->check(CLI::ExistingFile);
  blame_cmd->add_option("--setting", blame_args.setting, "Setting X=x, e.g. S1=1")->required();
  blame_cmd->add_option("--effect", blame_args.effect, "Effect formula, e.g. D=1")->required();
  add_common(blame_cmd, blame_args.common);

  EnumerateArgs enum_args;
  auto* enum_cmd = app.add_subcommand("enumerate", "List every cause of an effect up to a size");
  enum_cmd->add_option("model", enum_args.model, "Model file")->required()->check(CLI::ExistingFile);
  enum_cmd->add_option("--context", enum_args.context, "Context, e.g. U=1")->required();
  enum_cmd->add_option("--effect", enum_args.effect, "Effect formula")->required();
  enum_cmd->add_option("--max-size", enum_args.max_size, "Most conjuncts per cause")->check(CLI::PositiveNumber);
  add_common(enum_cmd, enum_args.common);

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen-instance", "Turn a CQBF into a labelled causality instance");
  auto* s2 = gen_cmd->add_flag("--sigma2", gen_args.sigma2, "exists-forall input, singleton AC1+AC2 instance");
  auto* p2 = gen_cmd->add_flag("--pi2", gen_args.pi2, "forall-exists input, AC1+AC3 instance");
  s2->excludes(p2);
  gen_cmd->add_option("cqbf", gen_args.cqbf, "CQBF file")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("out_dir", gen_args.out_dir, "Output directory")->required();
  gen_cmd->add_flag("--json", gen_args.json, "Machine-readable output");

  SelftestOptions st;
  bool st_json = false;
  auto* st_cmd = app.add_subcommand("selftest", "Cross-check the engine against brute force on random instances");
  st_cmd->add_option("--scale", st.scale, "Instances per suite, in units of 10")->check(CLI::Range(1, 10000));
  st_cmd->add_option("--seed", st.seed, "Random seed");
  st_cmd->add_flag("--json", st_json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) return check_cause(check_args, out);
    if (*resp_cmd) return responsibility(resp_args, out);
    if (*blame_cmd) return blame(blame_args, out);
    if (*enum_cmd) return enumerate(enum_args, out);
    if (*gen_cmd) {
      if (!gen_args.sigma2 && !gen_args.pi2) throw Failure{kUsage, "gen-instance needs --sigma2 or --pi2"};
      return gen_instance(gen_args, out);
    }
    if (*st_cmd) {
      SelftestReport r = run_selftest(st);
      if (st_json) {
        Json suites = Json::array();
        for (const auto& s : r.suites)
          suites.push_back(Json{{"name", s.name}, {"checked", s.checked}, {"agreed", s.agreed}});
        emit(out, Json{{"command", "selftest"}, {"scale", st.scale}, {"seed", st.seed}, {"suites", suites},
                       {"passed", r.passed()}});
      } else {
        for (const auto& s : r.suites)
          out << (s.agreed == s.checked ? "PASS " : "FAIL ") << s.name << ": " << s.agreed << "/" << s.checked
              << " agree\n";
        for (const auto& m : r.mismatches) out << "  mismatch: " << m << "\n";
      }
      return r.passed() ? kOk : kUsage;
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidModel;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const QueryError& e) {
    err << "error: invalid query: " << e.what() << "\n";
    return kInvalidQuery;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidQuery;
  }
  return kUsage;
}

}  // namespace hpcause::cli
