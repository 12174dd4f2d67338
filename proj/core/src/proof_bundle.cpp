#include <algorithm>
#include <bit>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sumfree/error.hpp"
#include "sumfree/proof.hpp"

namespace sumfree::proof {

namespace {

constexpr int kTargetSize = 12;
constexpr int kTailColumns = 10;  // columns 4-13, at most one element each
constexpr int kMinCase = 2;
constexpr int kMaxCase = 6;

bool satisfies(const std::vector<Literal>& hypothesis, const NumSet& in, const NumSet& out) {
  return std::all_of(hypothesis.begin(), hypothesis.end(), [&](const Literal& l) {
    return l.in ? in.contains(l.element) : out.contains(l.element);
  });
}

}  // namespace

CoverageResult check_case_coverage(int k, std::span<const std::vector<Literal>> hypotheses) {
  const NumSet head = record_column_table().head();
  std::vector<Element> extra;
  for (const auto& h : hypotheses) {
    for (const Literal& l : h) {
      if (!head.contains(l.element)) extra.push_back(l.element);
    }
  }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  if (extra.size() > 16) throw std::invalid_argument("coverage check: too many non-head literals");

  const auto head_elems = head.elements();
  for (std::uint32_t pick = 0; pick < (1U << head_elems.size()); ++pick) {
    if (std::popcount(pick) != k) continue;
    std::vector<Element> c;
    std::vector<Element> not_c;
    for (std::size_t i = 0; i < head_elems.size(); ++i) (pick >> i & 1U ? c : not_c).push_back(head_elems[i]);
    if (!is_sum_free(NumSet::from(c))) continue;

    for (std::uint32_t ext = 0; ext < (1U << extra.size()); ++ext) {
      std::vector<Element> in = c;
      std::vector<Element> out = not_c;
      for (std::size_t i = 0; i < extra.size(); ++i) (ext >> i & 1U ? in : out).push_back(extra[i]);
      const NumSet in_set = NumSet::from(in);
      if (!is_sum_free(in_set)) continue;
      const NumSet out_set = NumSet::from(out);
      const bool covered = std::any_of(hypotheses.begin(), hypotheses.end(),
                                       [&](const auto& h) { return satisfies(h, in_set, out_set); });
      if (!covered) return {false, Assignment{in_set, out_set}};
    }
  }
  return {true, std::nullopt};
}

CheckReport check_theorem2_bundle(std::span<const ScriptSource> sources) {
  CheckReport bundle;

  std::vector<ScriptSource> ordered(sources.begin(), sources.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const ScriptSource& a, const ScriptSource& b) { return a.file_name < b.file_name; });

  struct Parsed {
    std::string file;
    std::optional<ProofScript> script;
    std::optional<Failure> parse_failure;
  };
  std::vector<Parsed> parsed;
  for (const ScriptSource& src : ordered) {
    Parsed p{src.file_name, std::nullopt, std::nullopt};
    try {
      p.script = parse_script(src.text);
    } catch (const ParseError& e) {
      p.parse_failure = Failure{src.file_name, src.file_name, {e.line(), e.column()}, "parse", e.what()};
    }
    parsed.push_back(std::move(p));
  }

  std::vector<std::future<CheckReport>> pending;
  for (const Parsed& p : parsed) {
    if (p.script) {
      pending.push_back(std::async(std::launch::async, [&script = *p.script] { return check_script(script); }));
    }
  }

  if (!verify_column_lemmas(record_column_table())) {
    bundle.failures.push_back({"bundle", "bundle", {}, "lemma", "column lemmas do not hold"});
  }
  for (int k = 0; k < kMinCase; ++k) {
    if (k + kTailColumns >= kTargetSize) {
      bundle.failures.push_back({"bundle", "bundle", {}, "counting", "|C| = " + std::to_string(k) + " is not excluded by counting"});
    } else {
      bundle.notes.push_back("|C| = " + std::to_string(k) + " excluded: at most " + std::to_string(k + kTailColumns) +
                             " < 12 elements");
    }
  }
  int head_room = 0;
  for (int c = 1; c <= 3; ++c) {
    std::size_t best = 0;
    for (const NumSet& s : column_sum_free_subsets(record_column_table().column(c))) best = std::max(best, s.size());
    head_room += static_cast<int>(best);
  }
  if (head_room > kMaxCase) {
    bundle.failures.push_back({"bundle", "bundle", {}, "counting", "columns 1-3 can hold more than 6 elements"});
  } else {
    bundle.notes.push_back("|C| >= 7 excluded: columns 1-3 hold at most " + std::to_string(head_room));
  }

  std::map<int, std::vector<std::vector<Literal>>> hypotheses;
  std::size_t next = 0;
  for (const Parsed& p : parsed) {
    if (p.parse_failure) {
      bundle.failures.push_back(*p.parse_failure);
      continue;
    }
    CheckReport r = pending[next++].get();
    bundle.branches_closed += r.branches_closed;
    for (Failure& f : r.failures) {
      f.script = p.file;
      bundle.failures.push_back(std::move(f));
    }
    if (r.verdict != Verdict::Verified && r.failures.empty()) {
      bundle.failures.push_back({p.file, p.script->name, {}, "structure", "script closes no branch"});
    }
    const int k = p.script->c_size;
    if (k < kMinCase || k > kMaxCase) {
      bundle.failures.push_back({p.file, p.script->name, {}, "structure",
                                 "c-size " + std::to_string(k) + " is outside the cases 2-6"});
      continue;
    }
    hypotheses[k].push_back(p.script->hypothesis);
  }

  for (int k = kMinCase; k <= kMaxCase; ++k) {
    const auto it = hypotheses.find(k);
    if (it == hypotheses.end()) {
      bundle.failures.push_back({"bundle", "bundle", {}, "coverage", "missing case: no script for |C| = " + std::to_string(k)});
      continue;
    }
    const CoverageResult cov = check_case_coverage(k, it->second);
    if (!cov.covered) {
      bundle.failures.push_back({"bundle", "bundle", {}, "coverage",
                                 "gap at |C| = " + std::to_string(k) + ": " + format_assignment(*cov.counterexample)});
    } else {
      bundle.notes.push_back("|C| = " + std::to_string(k) + " covered by " + std::to_string(it->second.size()) +
                             " script(s)");
    }
  }

  bundle.verdict = bundle.failures.empty() ? Verdict::Verified : Verdict::Rejected;
  return bundle;
}

std::vector<ScriptSource> load_bundle(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<ScriptSource> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".sfp") continue;
    std::ifstream in(entry.path());
    if (!in) throw std::runtime_error("cannot read " + entry.path().string());
    std::ostringstream text;
    text << in.rdbuf();
    out.push_back({entry.path().filename().string(), text.str()});
  }
  std::sort(out.begin(), out.end(), [](const ScriptSource& a, const ScriptSource& b) { return a.file_name < b.file_name; });
  return out;
}

CheckReport check_theorem2_bundle(const std::filesystem::path& dir) {
  const auto sources = load_bundle(dir);
  return check_theorem2_bundle(std::span<const ScriptSource>(sources));
}

}  // namespace sumfree::proof
