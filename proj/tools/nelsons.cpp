// Command-line surface of the workbench. Exit codes: 0 when the requested
// check passes, 1 on a logical failure (rejected proof, failed class check,
// countermodel found), 2 on usage or input errors.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nelson/algebra.hpp"
#include "nelson/algebraizer.hpp"
#include "nelson/calculus_s.hpp"
#include "nelson/calculus_s_prime.hpp"
#include "nelson/demos.hpp"
#include "nelson/model_search.hpp"
#include "nelson/n4.hpp"
#include "nelson/proof.hpp"

using nlohmann::json;
using namespace nelson;

namespace {

std::string fixture_dir() {
  if (const char* env = std::getenv("NELSON_FIXTURES")) return env;
#ifdef NELSON_FIXTURE_DIR
  return NELSON_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

json check_report_json(const CheckReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back({{"ok", s.ok}, {"note", s.note}});
  return {{"accepted", r.accepted()}, {"goal_ok", r.goal_ok}, {"steps", steps}};
}

json class_report_json(const ClassReport& r) {
  json laws = json::array();
  for (const auto& l : r.laws) {
    json j = {{"law", l.law}, {"ok", l.ok}, {"violations", l.violations}};
    if (l.witness) j["witness"] = l.witness->text;
    laws.push_back(j);
  }
  return {{"class", r.klass}, {"passed", r.passed()}, {"laws", laws}};
}

void print_class_report(const ClassReport& r) {
  for (const auto& l : r.laws) {
    std::cout << (l.ok ? "  ok   " : "  FAIL ") << l.law;
    if (!l.ok && l.witness)
      std::cout << "  [witness " << l.witness->text << ", violations " << l.violations << "]";
    std::cout << "\n";
  }
  std::cout << (r.passed() ? "PASS" : "FAIL") << " " << r.klass << "\n";
}

Lang lang_from_string(const std::string& s) {
  if (s == "s") return Lang::S;
  if (s == "sprime") return Lang::SPrime;
  if (s == "n4") return Lang::N4;
  throw std::runtime_error("unknown calculus '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof checking and finite-model tooling for Nelson's logic S"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  std::function<int()> action;

  // check-proof
  {
    auto* cmd = app.add_subcommand("check-proof", "check a derivation file");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto calc = std::make_shared<std::string>("s");
    auto mode = std::make_shared<std::string>("standard");
    cmd->add_option("file", *file, "proof file")->required();
    cmd->add_option("--calculus", *calc, "s | sprime | n4")
        ->check(CLI::IsMember({"s", "sprime", "n4"}));
    cmd->add_option("--mode", *mode, "standard | historical")
        ->check(CLI::IsMember({"standard", "historical"}));
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        Lang lang = lang_from_string(*calc);
        Proof p = parse_proof(read_text_file(*file), lang);
        CheckReport rep;
        if (lang == Lang::S)
          rep = check_proof(p, *mode == "historical" ? Mode::Historical : Mode::Standard);
        else
          rep = check_hilbert(p, lang == Lang::SPrime ? s_prime() : n4_system());
        if (as_json) {
          std::cout << check_report_json(rep).dump(2) << "\n";
        } else {
          for (std::size_t i = 0; i < rep.steps.size(); ++i)
            if (!rep.steps[i].ok)
              std::cout << "  step " << i + 1 << " rejected: " << rep.steps[i].note << "\n";
          if (!rep.goal_ok) std::cout << "  " << rep.note << "\n";
          std::cout << (rep.accepted() ? "ACCEPTED" : "REJECTED") << "\n";
        }
        return rep.accepted() ? 0 : 1;
      };
    });
  }

  // check-algebra
  {
    auto* cmd = app.add_subcommand("check-algebra", "check an algebra file against a class");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto klass = std::make_shared<std::string>("cibrl");
    auto bound = std::make_shared<int>(2);
    cmd->add_option("file", *file, "algebra file")->required();
    cmd->add_option("--class", *klass, "cibrl | sprime | s-def34 | n4 | n3")
        ->check(CLI::IsMember({"cibrl", "sprime", "s-def34", "n4", "n3"}));
    cmd->add_option("--gamma-bound", *bound, "context bound for the compiled conditions");
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        ClassReport rep;
        if (*klass == "n4" || *klass == "n3") {
          N4Algebra a = parse_n4_algebra(read_text_file(*file));
          rep = *klass == "n4" ? check_n4_lattice(a) : check_n3(a);
        } else {
          FiniteAlgebra a = parse_algebra(read_text_file(*file));
          if (*klass == "cibrl")
            rep = check_cibrl(a);
          else if (*klass == "sprime")
            rep = check_s_prime_algebra(a);
          else
            rep = check_s_def34(a, *bound);
        }
        if (as_json)
          std::cout << class_report_json(rep).dump(2) << "\n";
        else
          print_class_report(rep);
        return rep.passed() ? 0 : 1;
      };
    });
  }

  // eval
  {
    auto* cmd = app.add_subcommand("eval", "evaluate a term in an algebra");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto term_text = std::make_shared<std::string>();
    auto val_text = std::make_shared<std::string>();
    cmd->add_option("file", *file, "algebra file")->required();
    cmd->add_option("term", *term_text, "term, e.g. \"x => (y & z)\"")->required();
    cmd->add_option("valuation", *val_text, "comma list, e.g. \"x=0,y=h,z=1\"");
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        FiniteAlgebra a = parse_algebra(read_text_file(*file));
        Term t = parse_term(*term_text);
        Valuation v;
        for (const auto& item : detail::split_top(*val_text, ',')) {
          std::string it = detail::strip(item);
          if (it.empty()) continue;
          auto eq = it.find('=');
          if (eq == std::string::npos) throw std::runtime_error("valuation needs name=element");
          v[detail::strip(it.substr(0, eq))] = a.index_of(detail::strip(it.substr(eq + 1)));
        }
        int r = eval_term(a, t, v);
        if (as_json)
          std::cout << json{{"value", a.name_of(r)}}.dump() << "\n";
        else
          std::cout << a.name_of(r) << "\n";
        return 0;
      };
    });
  }

  // enumerate
  {
    auto* cmd = app.add_subcommand("enumerate", "list algebras of a class up to isomorphism");
    cmd->fallthrough();
    auto klass = std::make_shared<std::string>("sprime");
    auto size = std::make_shared<int>(3);
    auto jobs = std::make_shared<int>(1);
    auto ceiling = std::make_shared<int>(6);
    auto budget = std::make_shared<long>(0);
    auto quiet = std::make_shared<bool>(false);
    cmd->add_option("--class", *klass, "cibrl | cibrl-3potent | sprime | s-def34 | n4 | n3");
    cmd->add_option("--size", *size, "carrier size")->required();
    cmd->add_option("--jobs", *jobs, "worker count (results are order-independent)");
    cmd->add_option("--ceiling", *ceiling, "raise the size ceiling (default 6)");
    cmd->add_option("--budget-ms", *budget, "time budget; partial results are flagged");
    cmd->add_flag("--counts-only", *quiet, "omit the algebra tables");
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        auto k = alg_class_from_string(*klass);
        if (!k) throw std::runtime_error("unknown class '" + *klass + "'");
        EnumerationResult res = enumerate_class(*k, *size, *jobs, *budget, *ceiling);
        if (as_json) {
          json out = {{"class", alg_class_name(*k)},
                      {"size", res.size},
                      {"count", res.count()},
                      {"partial", res.partial}};
          json dumps = json::array();
          for (const auto& a : res.algebras) dumps.push_back(print_algebra(a));
          for (const auto& a : res.n4algebras) dumps.push_back(print_n4_algebra(a));
          if (!*quiet) out["algebras"] = dumps;
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "class " << alg_class_name(*k) << " size " << res.size << ": "
                    << res.count() << (res.partial ? " (partial)" : "") << "\n";
          if (!*quiet) {
            for (const auto& a : res.algebras) std::cout << "\n" << print_algebra(a);
            for (const auto& a : res.n4algebras) std::cout << "\n" << print_n4_algebra(a);
          }
        }
        return res.partial ? 1 : 0;
      };
    });
  }

  // countermodel
  {
    auto* cmd = app.add_subcommand("countermodel", "search enumerated algebras for a witness");
    cmd->fallthrough();
    auto stmt = std::make_shared<std::string>();
    auto klass = std::make_shared<std::string>("sprime");
    auto max_size = std::make_shared<int>(4);
    auto jobs = std::make_shared<int>(1);
    auto ceiling = std::make_shared<int>(6);
    cmd->add_option("--statement", *stmt,
                    "equation \"lhs = rhs\" or quasiequation \"e1, e2 ==> e\"")
        ->required();
    cmd->add_option("--class", *klass, "algebra class");
    cmd->add_option("--max-size", *max_size, "largest carrier to search");
    cmd->add_option("--jobs", *jobs, "worker count");
    cmd->add_option("--ceiling", *ceiling, "raise the size ceiling");
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        auto k = alg_class_from_string(*klass);
        if (!k) throw std::runtime_error("unknown class '" + *klass + "'");
        Quasiequation q = parse_statement(*stmt);
        auto cm = find_countermodel(q, *k, *max_size, *jobs, *ceiling);
        if (!cm) {
          if (as_json)
            std::cout << json{{"found", false}, {"max_size", *max_size}}.dump(2) << "\n";
          else
            std::cout << "no countermodel up to size " << *max_size << "\n";
          return 0;
        }
        auto name_of = [&](int v) {
          return cm->algebra ? cm->algebra->name_of(v) : cm->n4algebra->name_of(v);
        };
        json val = json::object();
        std::string val_text;
        for (const auto& [k2, v2] : cm->valuation) {
          val[k2] = name_of(v2);
          if (!val_text.empty()) val_text += ", ";
          val_text += k2 + " = " + name_of(v2);
        }
        std::string dump =
            cm->algebra ? print_algebra(*cm->algebra) : print_n4_algebra(*cm->n4algebra);
        if (as_json) {
          std::cout << json{{"found", true},
                            {"algebra", dump},
                            {"valuation", val},
                            {"lhs", name_of(cm->lhs_value)},
                            {"rhs", name_of(cm->rhs_value)}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << "countermodel found:\n"
                    << dump << "valuation: " << val_text << "\n"
                    << "lhs = " << name_of(cm->lhs_value) << ", rhs = " << name_of(cm->rhs_value)
                    << "\n";
        }
        return 1;
      };
    });
  }

  // compile-calculus
  {
    auto* cmd = app.add_subcommand("compile-calculus",
                                   "translate a calculus file into equational conditions");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto bound = std::make_shared<int>(2);
    auto lang = std::make_shared<std::string>("s");
    auto weak = std::make_shared<bool>(false);
    cmd->add_option("file", *file, "calculus description file")->required();
    cmd->add_option("--gamma-bound", *bound, "context instantiation bound");
    cmd->add_option("--lang", *lang, "s | sprime | n4");
    cmd->add_flag("--weak", *weak, "use the weak-implication transforms, unnormalized");
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        CalculusPresentation cal =
            parse_calculus(read_text_file(*file), lang_from_string(*lang));
        auto conds =
            compile_calculus(cal, *bound, *weak ? weak_imp_config() : strong_imp_config());
        if (as_json) {
          json out = json::array();
          for (const auto& c : conds) out.push_back({{"name", c.name}, {"statement", print_statement(c.q)}});
          std::cout << out.dump(2) << "\n";
        } else {
          for (const auto& c : conds) std::cout << c.name << ": " << print_statement(c.q) << "\n";
        }
        return 0;
      };
    });
  }

  // dmt
  {
    auto* cmd = app.add_subcommand("dmt", "discharge an assumption of a derivation");
    cmd->fallthrough();
    auto file = std::make_shared<std::string>();
    auto discharge = std::make_shared<std::string>();
    cmd->add_option("file", *file, "derivation in the finite calculus")->required();
    cmd->add_option("--discharge", *discharge, "assumption formula to discharge")->required();
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        Proof p = parse_proof(read_text_file(*file), Lang::SPrime);
        Formula phi = parse_formula(*discharge, Lang::SPrime);
        Proof out = deduction_transform(p, phi);
        bool ok = check_proof_sp(out).accepted();
        if (as_json)
          std::cout << json{{"accepted", ok}, {"proof", print_proof(out)}}.dump(2) << "\n";
        else
          std::cout << print_proof(out);
        return ok ? 0 : 1;
      };
    });
  }

  // demo
  {
    auto* cmd = app.add_subcommand("demo", "run a bundled replication pipeline");
    cmd->fallthrough();
    auto item = std::make_shared<std::string>();
    cmd->add_option("item", *item, "one of: inconsistency mv3 prop2.1 thm3.1 lemma3.9 prop5.3 prop5.5 dmt")
        ->required();
    cmd->callback([=, &action, &as_json] {
      action = [=, &as_json] {
        DemoResult r = run_demo(*item, fixture_dir());
        if (as_json)
          std::cout << json{{"item", r.item}, {"pass", r.pass}, {"transcript", r.transcript}}.dump(2)
                    << "\n";
        else
          std::cout << r.transcript;
        return r.pass ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
