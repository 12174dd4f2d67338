#include <doctest.h>

#include <random>
#include <string>

#include "mutation.hpp"
#include "oracles.hpp"
#include "sumfree/error.hpp"
#include "sumfree/proof.hpp"

using namespace sumfree;
using namespace sumfree::proof;

namespace {

std::string script(int c_size, const std::string& body) {
  return "case t\nc-size " + std::to_string(c_size) + "\n" + body;
}

// Plays the hypothesis and steps of a flat script; stops at the first step
// that closes the branch or breaks a rule.
StepOutcome play(int c_size, const std::string& body) {
  const ProofScript ps = parse_script(script(c_size, body));
  StepOutcome cur = KnowledgeState(c_size);
  for (const Literal& l : ps.hypothesis) {
    ProofStep s;
    if (l.in) {
      s.body = AssumeIn{l.element};
    } else {
      s.body = AssumeOut{l.element};
    }
    cur = apply_step(std::get<KnowledgeState>(cur), s);
    if (!std::holds_alternative<KnowledgeState>(cur)) return cur;
  }
  for (const ProofStep& s : ps.steps) {
    cur = apply_step(std::get<KnowledgeState>(cur), s);
    if (!std::holds_alternative<KnowledgeState>(cur)) return cur;
  }
  return cur;
}

std::string violated(const StepOutcome& o) {
  const auto* v = std::get_if<Violation>(&o);
  return v ? v->rule : "";
}

bool closed(const StepOutcome& o) { return std::holds_alternative<Closed>(o); }

const KnowledgeState& state(const StepOutcome& o) { return std::get<KnowledgeState>(o); }

std::vector<ScriptSource> shipped() { return load_bundle(SUMFREE_PROOF_DIR); }

std::vector<ScriptSource> without(std::vector<ScriptSource> b, const std::string& name) {
  std::erase_if(b, [&](const ScriptSource& s) { return s.file_name == name; });
  return b;
}

}  // namespace

TEST_CASE("parser") {
  const ProofScript ps = parse_script(
      "# comment\ncase demo\nc-size 4\nassume-in 1 # trailing\nassume-out 24\nexclude 2 by 1+1=2\n"
      "mutex-dead columns {7,8} min 1 by 22+4=26; columns {9,11} min 1 by 20+30=50, 30+24=54\n"
      "split\nbranch left side\nbegin\nassume-in 3\ncontradiction by 1+3=4\nend\n");
  CHECK(ps.name == "demo");
  CHECK(ps.c_size == 4);
  REQUIRE(ps.hypothesis.size() == 2);
  CHECK(ps.hypothesis[1] == Literal{24, false});
  REQUIRE(ps.steps.size() == 3);
  CHECK(ps.steps[0].kind() == StepKind::ExcludeBySum);
  CHECK(ps.steps[0].loc.line == 6);
  const auto& mutex = std::get<MutexDead>(ps.steps[1].body);
  REQUIRE(mutex.groups.size() == 2);
  CHECK(mutex.groups[1].justification.size() == 2);
  const auto& split = std::get<Split>(ps.steps[2].body);
  REQUIRE(split.branches.size() == 1);
  CHECK(split.branches[0].label == "left side");
  CHECK(split.branches[0].hypothesis == std::vector<Literal>{{3, true}});
}

TEST_CASE("parse errors carry a location") {
  auto where = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_script(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(where(script(2, "exclude 2 by 1+1=3\n")).first == 3);
  CHECK(where(script(2, "exclude 19 by 1+18=19\n")).first == 3);
  CHECK(where(script(2, "force-in 1 column 14\n")).first == 3);
  CHECK(where(script(2, "frobnicate 3\n")) == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(where(script(2, "exclude 2 by 1+1=2\nassume-in 5\n")).first == 4);
  CHECK(where(script(2, "split\nbranch a\nbegin\ncontradiction\nend\ndead column 4\n")).first == 8);
  CHECK(where(script(2, "split\nbranch a\nbegin\ncontradiction\n")).first != 0);
  CHECK(where(script(2, "end\n")).first == 3);
  CHECK(where("c-size 2\n").first == 1);
  CHECK(where("case a\nc-size 12\n").first == 2);
}

TEST_CASE("R1 and R2: exclusion by a sum") {
  CHECK(state(play(2, "assume-in 1\nexclude 2 by 1+1=2\n")).is_out(2));
  CHECK(state(play(2, "assume-in 2\nexclude 1 by 1+1=2\n")).is_out(1));
  CHECK(state(play(2, "assume-in 3\nassume-in 4\nexclude 7 by 3+4=7\n")).is_out(7));
  CHECK(violated(play(2, "exclude 2 by 1+1=2\n")) == "R1");
  CHECK(violated(play(2, "assume-in 1\nexclude 3 by 1+2=3\n")) == "R1");
  CHECK(violated(play(2, "assume-in 4\nexclude 3 by 1+4=5\n")) == "R2");
  CHECK(violated(play(2, "assume-in 1\nassume-out 2\nexclude 2 by 1+1=2\n")) == "R1");
}

TEST_CASE("R3: forcing a column") {
  CHECK(state(play(2, "force-in 24 column 13\n")).is_in(24));
  CHECK(violated(play(3, "force-in 24 column 13\n")) == "R3");
  CHECK(state(play(3, "assume-out 24\nassume-out 7\ndead column 13\nforce-in 14 column 4\n")).is_in(14));
  CHECK(violated(play(3, "assume-out 24\ndead column 13\nforce-in 14 column 4\n")) == "R3");
  CHECK(violated(play(2, "force-in 7 column 5\n")) == "R3");
  CHECK(state(play(6, "force-in 1 column 1\n")).is_in(1));
  CHECK(violated(play(5, "force-in 1 column 1\n")) == "R3");
  CHECK(violated(play(6, "force-in 2 column 1\n")) == "R3");
}

TEST_CASE("R4: dead columns") {
  const StepOutcome ok = play(3, "assume-out 24\ndead column 13\n");
  CHECK(state(ok).is_dead(13));
  CHECK(state(ok).slack() == 0);
  CHECK(closed(play(2, "assume-out 24\ndead column 13\n")));
  CHECK(violated(play(3, "dead column 13\n")) == "R4");
  CHECK(violated(play(3, "assume-out 1\nassume-out 2\nassume-out 4\ndead column 1\n")) == "R4");
}

TEST_CASE("R5: mutex groups") {
  const std::string prefix = "assume-in 3\nassume-in 4\nassume-in 5\nassume-in 12\nassume-in 20\n"
                             "exclude 24 by 12+12=24\ndead column 13\nexclude 7 by 3+4=7\nexclude 8 by 3+5=8\n"
                             "exclude 16 by 4+12=16\nexclude 9 by 9+3=12\nexclude 15 by 3+12=15\n"
                             "exclude 17 by 5+12=17\nexclude 25 by 5+20=25\ndead column 5\n";
  const StepOutcome one = play(5, prefix + "mutex-dead columns {4,6} min 1 by 4+14=18\n");
  CHECK(state(one).dead_lower_bound() == 3);
  CHECK(state(one).slack() == 0);
  CHECK(closed(play(5, prefix + "mutex-dead columns {4,6} min 1 by 4+14=18; columns {9,10} min 1 by 4+30=34\n")));
  CHECK(violated(play(5, prefix + "mutex-dead columns {4,6} min 1 by 4+18=22\n")) == "R5");
  CHECK(violated(play(5, prefix + "mutex-dead columns {4,6} min 2 by 4+14=18\n")) == "R5");
  CHECK(violated(play(5, prefix + "mutex-dead columns {4,13} min 1 by 4+14=18\n")) == "R5");
  CHECK(violated(play(5, prefix + "mutex-dead columns {4,6} min 1 by 4+14=18; columns {6,9} min 1 by 18+12=30\n")) ==
        "R5");
}

TEST_CASE("R7: contradictions") {
  CHECK(closed(play(2, "assume-in 1\nassume-in 2\ncontradiction by 1+1=2\n")));
  CHECK(violated(play(2, "assume-in 1\ncontradiction by 1+1=2\n")) == "R7");
  CHECK(violated(play(2, "contradiction\n")) == "R7");
  // Columns 1-3 cannot reach |C| = 5 once 2, 4 and 12 are gone.
  CHECK(closed(play(5, "assume-out 2\nassume-out 4\nassume-out 12\ncontradiction\n")));
  CHECK(violated(play(5, "assume-out 2\nassume-out 4\ncontradiction\n")) == "R7");
  CHECK(violated(play(2, "assume-in 1\nassume-in 2\nexclude 4 by 2+2=4\n")) == "structure");
  CHECK(violated(play(2, "assume-in 3\nassume-in 3\n")) == "hypothesis");
}

TEST_CASE("R6: splits must cover") {
  const CheckReport gap = check_script(parse_script(script(
      2, "force-in 24 column 13\nsplit\nbranch a\nbegin\nassume-in 11\ncontradiction\nend\n")));
  REQUIRE(gap.verdict == Verdict::Rejected);
  CHECK(gap.failures.front().rule == "R6");

  const ProofScript both = parse_script(script(
      5, "assume-out 2\nassume-out 4\nassume-out 12\nsplit\nbranch a\nbegin\nassume-in 11\ncontradiction\nend\n"
         "branch b\nbegin\nassume-out 11\ncontradiction\nend\n"));
  const CheckReport ok = check_script(both);
  CHECK(ok.verdict == Verdict::Verified);
  CHECK(ok.branches_closed == 2);
}

TEST_CASE("unclosed branches are rejected") {
  const CheckReport r = check_script(parse_script(script(6, "force-in 1 column 1\nforce-in 4 column 1\n")));
  CHECK(r.verdict == Verdict::Rejected);
  CHECK(r.branches_closed == 0);
  CHECK(check_script(parse_script(script(6, "force-in 1 column 1\nforce-in 4 column 1\nforce-in 5 column 3\n"
                                            "contradiction by 1+4=5\n")))
            .verdict == Verdict::Verified);
}

TEST_CASE("coverage against the 512-subset oracle") {
  const NumSet head = record_column_table().head();
  const std::vector<std::size_t> expected_counts{1, 9, 30, 39, 18, 2, 0, 0, 0, 0};
  for (int k = 0; k <= 9; ++k) {
    std::vector<std::vector<Literal>> exact;
    for (std::uint32_t m = 0; m < 512; ++m) {
      if (std::popcount(m) != k) continue;
      std::vector<Element> c;
      std::vector<Literal> lits;
      for (std::size_t i = 0; i < 9; ++i) {
        if (m >> i & 1U) c.push_back(head[i]);
        lits.push_back({head[i], (m >> i & 1U) != 0});
      }
      if (oracle::sum_free(c)) exact.push_back(lits);
    }
    CHECK(exact.size() == expected_counts[static_cast<std::size_t>(k)]);
    CHECK(check_case_coverage(k, exact).covered);
    if (!exact.empty()) {
      const std::vector<Literal> dropped = exact.back();
      exact.pop_back();
      const CoverageResult r = check_case_coverage(k, exact);
      REQUIRE_FALSE(r.covered);
      for (const Literal& l : dropped) CHECK(r.counterexample->in.contains(l.element) == l.in);
    }
  }
  CHECK(check_case_coverage(2, std::vector<std::vector<Literal>>{{}}).covered);
  const std::vector<std::vector<Literal>> only24{{{24, true}}};
  const CoverageResult half = check_case_coverage(3, only24);
  REQUIRE_FALSE(half.covered);
  CHECK(half.counterexample->out.contains(24));
}

TEST_CASE("shipped bundle") {
  const auto bundle = shipped();
  const CheckReport r = check_theorem2_bundle(std::span<const ScriptSource>(bundle));
  CHECK(r.verdict == Verdict::Verified);
  CHECK(r.failures.empty());
  CHECK(r.branches_closed >= 40);
  CHECK(format_report(r) == format_report(check_theorem2_bundle(SUMFREE_PROOF_DIR)));
}

TEST_CASE("bundle gaps") {
  const auto bundle = shipped();
  const CheckReport no_c6 = check_theorem2_bundle(std::span<const ScriptSource>(without(bundle, "s2-c6.sfp")));
  CHECK(no_c6.verdict == Verdict::Rejected);
  CHECK(format_report(no_c6).find("no script for |C| = 6") != std::string::npos);

  const CheckReport no_s6 =
      check_theorem2_bundle(std::span<const ScriptSource>(without(bundle, "s6-c3-no24.sfp")));
  CHECK(no_s6.verdict == Verdict::Rejected);
  CHECK(format_report(no_s6).find("gap at |C| = 3") != std::string::npos);

  std::vector<ScriptSource> broken = bundle;
  broken.push_back({"zz-bad.sfp", "case bad\nc-size 3\nexclude 3 by 1+1=3\n"});
  const CheckReport bad = check_theorem2_bundle(std::span<const ScriptSource>(broken));
  CHECK(bad.verdict == Verdict::Rejected);
  CHECK(bad.failures.back().rule == "parse");

  std::vector<ScriptSource> odd = bundle;
  odd.push_back({"zz-c7.sfp", "case c7\nc-size 7\ncontradiction\n"});
  CHECK(check_theorem2_bundle(std::span<const ScriptSource>(odd)).verdict == Verdict::Rejected);

  CHECK_THROWS_AS(load_bundle("/nonexistent/dir"), std::runtime_error);
}

TEST_CASE("seeded mutations are rejected") {
  const auto bundle = shipped();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const mutation::Mutant m = mutation::mutate(bundle, rng);
    INFO(m.description);
    CHECK(check_theorem2_bundle(std::span<const ScriptSource>(m.bundle)).verdict == Verdict::Rejected);
  }
}
