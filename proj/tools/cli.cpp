#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sumfree/constructions.hpp"
#include "sumfree/error.hpp"
#include "sumfree/proof.hpp"
#include "sumfree/search.hpp"
#include "sumfree/solver.hpp"

namespace sumfree::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kTheorem2Optimum = 11;
constexpr std::size_t kTheorem2Size = 12;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

NumSet read_set(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read set file " + arg.substr(1));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_set(text.str());
  }
  return parse_set(arg);
}

json elements(const NumSet& s) { return json(std::vector<Element>(s.begin(), s.end())); }

json to_json(const SolveReport& r) {
  json j{{"method", to_string(r.method)},
         {"optimum", r.optimum},
         {"witness", elements(r.witness)},
         {"work", r.work},
         {"wall_time_ms", r.wall_time.count() * 1e3}};
  if (r.capped) j["capped"] = true;
  if (!r.tallies.empty()) {
    j["tally"] = json::array();
    for (const SizeTally& t : r.tallies) {
      j["tally"].push_back({{"size", t.size}, {"examined", t.examined}, {"sum_free", t.sum_free}});
    }
  }
  return j;
}

json to_json(const proof::CheckReport& r) {
  json j{{"verdict", r.verdict == proof::Verdict::Verified ? "Verified" : "Rejected"},
         {"branches_closed", r.branches_closed},
         {"note", r.notes},
         {"failure", json::array()}};
  for (const proof::Failure& f : r.failures) {
    j["failure"].push_back({{"script", f.script},
                            {"path", f.path},
                            {"line", f.loc.line},
                            {"column", f.loc.column},
                            {"rule", f.rule},
                            {"explanation", f.explanation}});
  }
  return j;
}

json to_json(const SearchReport& r) {
  json j{{"mode", to_string(r.config.mode)},
         {"set_size", r.config.set_size},
         {"max_element", r.config.max_element},
         {"seed", r.config.seed},
         {"iterations", r.config.iterations},
         {"evaluated", r.evaluated},
         {"best_delta", to_string(r.best_delta)},
         {"best_set", json::array()}};
  if (r.best_count) j["best_count"] = *r.best_count;
  for (const NumSet& s : r.best_sets) j["best_set"].push_back(elements(s));
  return j;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::span<const std::string> args);

 private:
  void emit(const std::string& text, const json& j) {
    if (json_) {
      out_ << j.dump(2) << '\n';
    } else {
      out_ << text;
    }
  }

  int solve();
  int delta_verb();
  int triples();
  int check();
  int verify_theorem2();
  int prove();
  int search();
  int named();
  int dilate_verb();

  std::ostream& out_;
  std::ostream& err_;
  bool json_ = false;

  std::string set_arg_;
  std::string method_ = "bnb";
  std::optional<std::size_t> size_cap_;
  bool early_exit_ = false;
  bool force_ = false;
  std::string dir_;
  SearchConfig search_{7, 10, SearchMode::Stochastic, 0, 100'000, 1};
  std::string mode_ = "stochastic";
  std::string report_path_;
  std::string named_action_;
  std::string named_key_;
  Element factor_ = 1;
};

int Runner::solve() {
  const NumSet set = read_set(set_arg_);
  SolveReport r;
  if (method_ == "exhaustive") {
    ExhaustiveOptions opts;
    opts.size_cap = size_cap_;
    opts.early_exit = early_exit_;
    opts.force = force_;
    r = max_sum_free_exhaustive(set, opts);
  } else {
    r = max_sum_free_branch_bound(set);
  }
  emit(format_report(r), to_json(r));
  return kExitOk;
}

int Runner::delta_verb() {
  const ExactRatio d = delta(read_set(set_arg_));
  emit(to_string(d) + "\n", json{{"delta", to_string(d)}});
  return kExitOk;
}

int Runner::triples() {
  const auto ts = enumerate_triples(read_set(set_arg_));
  std::string text;
  json list = json::array();
  for (const SumTriple& t : ts) {
    text += format_triple(t) + "\n";
    list.push_back(format_triple(t));
  }
  text += "count: " + std::to_string(ts.size()) + "\n";
  emit(text, json{{"triples", list}, {"count", ts.size()}});
  return kExitOk;
}

int Runner::check() {
  const auto t = first_triple(read_set(set_arg_));
  if (!t) {
    emit("sum-free\n", json{{"sum_free", true}});
    return kExitOk;
  }
  emit("not sum-free: " + format_triple(*t) + "\n", json{{"sum_free", false}, {"triple", format_triple(*t)}});
  return kExitFailed;
}

int Runner::verify_theorem2() {
  const NumSet a = record_set();
  std::vector<SolveReport> reports;
  if (method_ == "bnb" || method_ == "both") reports.push_back(max_sum_free_branch_bound(a));
  if (method_ == "exhaustive" || method_ == "both") {
    ExhaustiveOptions opts;
    opts.size_cap = kTheorem2Size;
    reports.push_back(max_sum_free_exhaustive(a, opts));
  }
  const std::uint64_t subsets = count_k_subsets(static_cast<unsigned>(a.size()), kTheorem2Size);
  bool ok = true;
  std::string text;
  json j{{"set", elements(a)}, {"expected_optimum", kTheorem2Optimum}, {"reports", json::array()}};
  for (const SolveReport& r : reports) {
    ok = ok && r.optimum == kTheorem2Optimum && is_sum_free(r.witness) && r.witness.size() == kTheorem2Optimum;
    if (r.method == Method::Exhaustive) {
      const SizeTally& top = r.tallies.front();
      ok = ok && top.size == kTheorem2Size && top.examined == subsets && top.sum_free == 0;
    }
    text += format_report(r);
    j["reports"].push_back(to_json(r));
  }
  text += "subsets_of_size_12: " + std::to_string(subsets) + "\n";
  text += std::string("verdict: ") + (ok ? "Verified" : "Rejected") + "\n";
  j["subsets_of_size_12"] = subsets;
  j["verdict"] = ok ? "Verified" : "Rejected";
  emit(text, j);
  return ok ? kExitOk : kExitFailed;
}

int Runner::prove() {
  const proof::CheckReport r = proof::check_theorem2_bundle(std::filesystem::path(dir_));
  emit(proof::format_report(r), to_json(r));
  return r.verdict == proof::Verdict::Verified ? kExitOk : kExitFailed;
}

int Runner::search() {
  search_.mode = mode_ == "exhaustive" ? SearchMode::Exhaustive : SearchMode::Stochastic;
  const SearchReport r = run_search(search_);
  const std::string text = format_report(r);
  if (!report_path_.empty()) {
    std::ofstream file(report_path_);
    if (!file) throw UsageError("cannot write report to " + report_path_);
    file << text;
  }
  emit(text, to_json(r));
  return kExitOk;
}

int Runner::named() {
  if (named_action_ == "list") {
    std::string text;
    json list = json::array();
    for (const NamedSet& n : named_sets()) {
      text += n.key + ": " + format_set(n.set) + " delta " + to_string(n.expected_delta) + "\n";
      list.push_back({{"key", n.key}, {"set", elements(n.set)}, {"expected_delta", to_string(n.expected_delta)}});
    }
    emit(text, list);
    return kExitOk;
  }
  if (named_key_.empty()) throw UsageError("named show needs a KEY");
  const NamedSet* entry = nullptr;
  try {
    entry = &named_set(named_key_);
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  const ExactRatio d = delta(entry->set);
  const bool ok = d.same_representation(entry->expected_delta);
  std::ostringstream text;
  text << "key: " << entry->key << '\n'
       << "set: " << format_set(entry->set) << '\n'
       << "size: " << entry->set.size() << '\n'
       << "expected_delta: " << to_string(entry->expected_delta) << '\n'
       << "delta: " << to_string(d) << '\n'
       << "citation: " << entry->citation << '\n';
  emit(text.str(), json{{"key", entry->key},
                        {"set", elements(entry->set)},
                        {"size", entry->set.size()},
                        {"expected_delta", to_string(entry->expected_delta)},
                        {"delta", to_string(d)},
                        {"citation", entry->citation}});
  return ok ? kExitOk : kExitFailed;
}

int Runner::dilate_verb() {
  const NumSet d = dilate(read_set(set_arg_), factor_);
  emit(format_set(d) + "\n", json{{"set", elements(d)}});
  return kExitOk;
}

int Runner::run(std::span<const std::string> args) {
  CLI::App app{"Sum-free subsets: exact solvers, constructions, proof checking and search", "sumfree"};
  app.require_subcommand(1, 1);

  std::function<int()> action;
  auto verb = [&](const std::string& name, const std::string& help, int (Runner::*fn)()) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_flag("--json", json_, "Emit a JSON document");
    sub->callback([this, &action, fn] { action = [this, fn] { return (this->*fn)(); }; });
    return sub;
  };

  auto* solve = verb("solve", "Largest sum-free subset", &Runner::solve);
  solve->add_option("SET", set_arg_, "Set literal or @file")->required();
  solve->add_option("--method", method_, "exhaustive or bnb")->check(CLI::IsMember({"exhaustive", "bnb"}));
  solve->add_option("--size-cap", size_cap_, "Exhaustive: largest size to scan");
  solve->add_flag("--early-exit", early_exit_, "Exhaustive: stop each size at its first sum-free subset");
  solve->add_flag("--force", force_, "Exhaustive: lift the size guard");

  verb("delta", "Sum-free subset constant", &Runner::delta_verb)
      ->add_option("SET", set_arg_, "Set literal or @file")
      ->required();
  verb("triples", "All x+y=z inside the set", &Runner::triples)
      ->add_option("SET", set_arg_, "Set literal or @file")
      ->required();
  verb("check", "Whether the set is sum-free", &Runner::check)
      ->add_option("SET", set_arg_, "Set literal or @file")
      ->required();

  verb("verify-theorem2", "Largest sum-free subset of the 28-element set is 11", &Runner::verify_theorem2)
      ->add_option("--method", method_, "bnb, exhaustive or both")
      ->check(CLI::IsMember({"exhaustive", "bnb", "both"}));

  verb("prove", "Check a directory of proof scripts", &Runner::prove)
      ->add_option("SCRIPTS_DIR", dir_, "Directory of .sfp files")
      ->required();

  auto* search = verb("search", "Search for sets with a small constant", &Runner::search);
  search->add_option("--size", search_.set_size, "Set size")->required();
  search->add_option("--max", search_.max_element, "Largest element")->required();
  search->add_option("--mode", mode_, "exhaustive or stochastic")
      ->check(CLI::IsMember({"exhaustive", "stochastic"}));
  search->add_option("--seed", search_.seed, "Seed");
  search->add_option("--iters", search_.iterations, "Step budget");
  search->add_option("--workers", search_.workers, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--report", report_path_, "Also write the report here");

  auto* named = verb("named", "Registered sets", &Runner::named);
  named->add_option("ACTION", named_action_, "list or show")->required()->check(CLI::IsMember({"list", "show"}));
  named->add_option("KEY", named_key_, "Key for show");

  auto* dil = verb("dilate", "Multiply every element by D", &Runner::dilate_verb);
  dil->add_option("SET", set_arg_, "Set literal or @file")->required();
  dil->add_option("D", factor_, "Factor")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const LimitError& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const UndefinedConstant& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err_ << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err_ << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Runner runner(out, err);
  return runner.run(args);
}

}  // namespace sumfree::cli
