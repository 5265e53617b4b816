#include "finmok/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <optional>

#include "finmok/frameclass.hpp"
#include "finmok/json_io.hpp"

namespace finmok {

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;
constexpr int kExitInternal = 70;

DomainMode parse_domain_mode(const std::string& s) {
  if (s == "expanding") return DomainMode::expanding;
  if (s == "constant" || s == "locally_constant") return DomainMode::locally_constant;
  throw LoadError("unknown domain mode \"" + s + "\"");
}

EqualityMode parse_equality_mode(const std::string& s) {
  if (s == "congruence") return EqualityMode::congruence;
  if (s == "identity") return EqualityMode::identity;
  if (s == "none") return EqualityMode::none;
  throw LoadError("unknown equality mode \"" + s + "\"");
}

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw LoadError("malformed assignment entry '" + item + "'");
    a[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  return a;
}

int default_jobs() {
  if (const char* env = std::getenv("FINMOK_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

struct CorpusEntry {
  std::string name;
  json spec;
};

int run_corpus(const std::string& path, std::ostream& out) {
  json doc = load_json_file(path);
  if (!doc.contains("entries") || !doc["entries"].is_array())
    throw LoadError("corpus: missing \"entries\" array");

  int passed = 0;
  json first_mismatch;
  for (const auto& e : doc["entries"]) {
    std::string name = e.value("name", "<unnamed>");
    int n = e.value("n", 1);
    Formula f = parse_formula(e.at("formula").get<std::string>(), n);
    Modes modes{parse_domain_mode(e.value("domains", "expanding")),
                parse_equality_mode(e.value("equality", "congruence"))};
    std::string expect = e.at("expect").get<std::string>();
    std::string mode = e.value("mode", "decide");
    int max_size = e.value("max_size", 2);

    std::string got;
    bool cert_ok = true;
    if (mode == "class") {
      FrameClassSpec spec = FrameClassSpec::parse(e.value("class", ""), n);
      ClassVerdict v = class_refute(spec, f, modes, e.value("max_worlds", 2), max_size);
      got = to_string(v.status);
      if (v.certificate) cert_ok = verify_certificate(*v.certificate, *v.frame, f, modes) &&
                                   check_predicates(*v.frame, spec);
    } else {
      KripkeFrame frame = frame_from_json(e.at("frame"));
      Verdict v;
      if (mode == "refute") {
        v = refute(frame, f, modes, max_size);
      } else {
        std::optional<std::int64_t> bound;
        if (e.contains("bound")) bound = e["bound"].get<std::int64_t>();
        v = decide_validity(frame, f, modes, bound);
      }
      got = to_string(v.status);
      if (v.certificate) cert_ok = verify_certificate(*v.certificate, frame, f, modes);
    }

    if (got == expect && cert_ok) {
      ++passed;
    } else if (first_mismatch.is_null()) {
      first_mismatch = {{"name", name}, {"expected", expect}, {"got", got},
                        {"certificate_verified", cert_ok}};
    }
  }

  int total = static_cast<int>(doc["entries"].size());
  json report = {{"schema", 1}, {"total", total}, {"passed", passed},
                 {"failed", total - passed}};
  if (!first_mismatch.is_null()) report["first_mismatch"] = first_mismatch;
  out << report.dump(2) << "\n";
  return passed == total ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finmok: monadic multimodal predicate logic over finite Kripke frames"};
  app.require_subcommand(1);

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print its AST");
  std::string formula_text;
  int n = 1;
  cmd_parse->add_option("--formula", formula_text, "formula text")->required();
  cmd_parse->add_option("--n", n, "modal count");

  // check
  auto* cmd_check = app.add_subcommand("check", "evaluate a formula in a model");
  std::string model_path, world_name, assign_text;
  cmd_check->add_option("--model", model_path, "model JSON file")->required();
  cmd_check->add_option("--formula", formula_text, "formula text")->required();
  cmd_check->add_option("--world", world_name, "evaluate at this world only");
  cmd_check->add_option("--assign", assign_text, "assignment, e.g. x=0,y=1");

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "validate a frame or model file");
  std::string frame_path;
  cmd_validate->add_option("--model", model_path, "model JSON file");
  cmd_validate->add_option("--frame", frame_path, "frame JSON file");

  // decide
  auto* cmd_decide = app.add_subcommand("decide", "decide validity on a fixed frame");
  std::string domains = "expanding", equality = "congruence";
  std::optional<int> max_size_opt;
  std::optional<std::int64_t> bound_opt;
  bool uncertified = false, fast = false;
  int jobs = default_jobs();
  cmd_decide->add_option("--frame", frame_path, "frame JSON file")->required();
  cmd_decide->add_option("--formula", formula_text, "formula text")->required();
  cmd_decide->add_option("--domains", domains, "expanding|constant");
  cmd_decide->add_option("--equality", equality, "congruence|identity|none");
  cmd_decide->add_option("--max-size", max_size_opt,
                         "refute only: per-world domain cap (unknown on exhaustion)");
  cmd_decide->add_option("--bound", bound_opt, "override the default domain bound");
  cmd_decide->add_flag("--uncertified", uncertified, "never mark the verdict certified");
  cmd_decide->add_flag("--fast", fast, "allow any countermodel, not the canonical least");
  cmd_decide->add_option("--jobs", jobs, "parallelism cap");

  // class-search
  auto* cmd_class = app.add_subcommand("class-search", "refute over a class of frames");
  std::string class_text;
  int max_worlds = 2, cs_max_size = 2;
  cmd_class->add_option("--class", class_text, "e.g. reflexive(1),branching<=2(1)");
  cmd_class->add_option("--n", n, "modal count");
  cmd_class->add_option("--formula", formula_text, "formula text")->required();
  cmd_class->add_option("--max-worlds", max_worlds, "frame size budget");
  cmd_class->add_option("--max-size", cs_max_size, "per-world domain cap");
  cmd_class->add_option("--domains", domains, "expanding|constant");
  cmd_class->add_option("--equality", equality, "congruence|identity|none");
  cmd_class->add_flag("--fast", fast, "allow any countermodel");
  cmd_class->add_option("--jobs", jobs, "parallelism cap");

  // corpus
  auto* cmd_corpus = app.add_subcommand("corpus", "run a regression corpus file");
  std::string corpus_path;
  cmd_corpus->add_option("--file", corpus_path, "corpus JSON file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_parse) {
      Formula f = parse_formula(formula_text, n);
      const char* cls = nullptr;
      switch (check_monadic(f)) {
        case MonadicClass::monadic_with_equality: cls = "monadic_with_equality"; break;
        case MonadicClass::monadic_without_equality: cls = "monadic_without_equality"; break;
        default: cls = "non_monadic";
      }
      Metrics mt = metrics(f);
      json j = {{"schema", 1},
                {"ast", formula_to_json(f)},
                {"printed", print_formula(f)},
                {"classification", cls},
                {"metrics",
                 {{"letters", mt.letters},
                  {"variables", mt.variables},
                  {"modal_depth", mt.modal_depth},
                  {"quantifier_rank", mt.quantifier_rank},
                  {"modal_indices_used", mt.modal_indices_used}}}};
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*cmd_check) {
      AugmentedModel m = model_from_json(load_json_file(model_path));
      auto violations = validate_model(m);
      if (!validate_frame(m.frame).empty() || !violations.empty())
        throw LoadError("model fails validation; run `validate` for details");
      Formula f = parse_formula(formula_text, m.frame.n);
      json j = {{"schema", 1}};
      bool result;
      if (!world_name.empty()) {
        int w = m.frame.world_index(world_name);
        if (w < 0) throw LoadError("unknown world " + world_name);
        if (!assign_text.empty())
          result = satisfies(m, w, f, parse_assignment(assign_text));
        else
          result = true_at(m, w, f);
        j["failing_world"] = result ? json() : json(world_name);
      } else {
        auto failure = find_failure(m, f);
        result = !failure.has_value();
        j["failing_world"] = failure ? json(m.frame.worlds[*failure]) : json();
      }
      j["result"] = result;
      out << j.dump(2) << "\n";
      return result ? 0 : 1;
    }

    if (*cmd_validate) {
      std::vector<Violation> violations;
      if (!model_path.empty()) {
        AugmentedModel m = model_from_json(load_json_file(model_path));
        violations = validate_frame(m.frame);
        if (violations.empty()) violations = validate_model(m);
      } else if (!frame_path.empty()) {
        violations = validate_frame(frame_from_json(load_json_file(frame_path)));
      } else {
        err << "validate: pass --model or --frame\n";
        return kExitUsage;
      }
      json j = {{"schema", 1}, {"violations", violations_to_json(violations)}};
      out << j.dump(2) << "\n";
      return violations.empty() ? 0 : 1;
    }

    if (*cmd_decide) {
      KripkeFrame frame = frame_from_json(load_json_file(frame_path));
      Formula f = parse_formula(formula_text, frame.n);
      Modes modes{parse_domain_mode(domains), parse_equality_mode(equality)};
      Verdict v;
      if (max_size_opt) {
        v = refute(frame, f, modes, *max_size_opt);
      } else {
        v = decide_validity(frame, f, modes, bound_opt, uncertified);
      }
      out << verdict_to_json(v, frame).dump(2) << "\n";
      switch (v.status) {
        case VerdictStatus::valid: return 0;
        case VerdictStatus::countermodel: return 1;
        default: return 2;
      }
    }

    if (*cmd_class) {
      FrameClassSpec spec = FrameClassSpec::parse(class_text, n);
      Formula f = parse_formula(formula_text, n);
      Modes modes{parse_domain_mode(domains), parse_equality_mode(equality)};
      ClassVerdict v = class_refute(spec, f, modes, max_worlds, cs_max_size);
      json j = {{"schema", 1},
                {"status", to_string(v.status)},
                {"frames_checked", v.frames_checked},
                {"budget",
                 {{"max_worlds", v.max_worlds},
                  {"max_size", v.budget.max_size},
                  {"models_checked", v.budget.models_checked}}}};
      if (v.certificate) {
        j["frame"] = frame_to_json(*v.frame);
        j["certificate"] = {{"model", model_to_json(v.certificate->model)},
                            {"failing_world",
                             v.frame->worlds[v.certificate->failing_world]}};
      }
      out << j.dump(2) << "\n";
      return v.status == VerdictStatus::countermodel ? 1 : 2;
    }

    if (*cmd_corpus) return run_corpus(corpus_path, out);
  } catch (const ParseError& e) {
    json j = {{"error", e.what()}, {"position", e.position}};
    out << j.dump(2) << "\n";
    err << "parse error at " << e.position << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NonMonadicError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace finmok
