// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mutation.hpp"
#include "oracles.hpp"
#include "sumfree/constructions.hpp"
#include "sumfree/proof.hpp"
#include "sumfree/search.hpp"
#include "sumfree/solver.hpp"

using namespace sumfree;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      failed += " [failed: " + what + "]";
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void theorem2(Outcome& o) {
  const NumSet a = record_set();
  auto t0 = Clock::now();
  const SolveReport bnb = max_sum_free_branch_bound(a);
  const double bnb_s = seconds_since(t0);
  o.require(bnb.optimum == 11 && is_sum_free(bnb.witness) && bnb.witness.size() == 11, "branch and bound optimum 11");
  o.require(bnb_s < 10.0, "branch and bound under 10 s");

  ExhaustiveOptions opts;
  opts.size_cap = 12;
  t0 = Clock::now();
  const SolveReport ex = max_sum_free_exhaustive(a, opts);
  const double ex_s = seconds_since(t0);
  o.require(ex.optimum == 11 && is_sum_free(ex.witness), "exhaustive optimum 11");
  o.require(ex_s < 600.0, "exhaustive under 10 min");
  const SizeTally& top = ex.tallies.front();
  o.require(top.size == 12 && top.examined == 30421755 && top.sum_free == 0, "30421755 12-subsets, none sum-free");
  o.require(count_k_subsets(28, 12) == 30421755, "C(28,12)");
  o.detail << "bnb " << bnb_s << " s, exhaustive " << ex_s << " s, 12-subsets examined " << top.examined;
}

void constants(Outcome& o) {
  const ExactRatio erdos = delta(NumSet{2, 3, 4, 5, 6, 8, 10});
  const ExactRatio malouf = delta(NumSet{1, 2, 3, 4, 5, 6, 8, 9, 10, 18});
  const ExactRatio record = delta(record_set());
  const ExactRatio ak(kAlonKleitmanNumerator, kAlonKleitmanDenominator);
  o.require(erdos.same_representation(ExactRatio(3, 7)), "3/7");
  o.require(malouf.same_representation(ExactRatio(4, 10)), "4/10");
  o.require(record.same_representation(ExactRatio(11, 28)), "11/28");
  o.require(record < malouf && malouf < ak && ak < erdos, "11/28 < 4/10 < 12/29 < 3/7");
  o.detail << to_string(record) << " < " << to_string(malouf) << " < " << to_string(ak) << " < " << to_string(erdos);
}

void odd_witness(Outcome& o) {
  const NumSet odd{1, 3, 5, 7, 9, 11, 13, 15, 17, 25, 27};
  o.require(is_sum_free(odd), "sum-free");
  o.require(odd.size() == 11, "size 11");
  o.require(odd.is_subset_of(record_set()), "inside the 28-element set");
  o.detail << format_set(odd);
}

void equivalence(Outcome& o) {
  std::mt19937_64 rng(20240401);
  int n = 0;
  for (; n < 200; ++n) {
    const NumSet s = oracle::random_set(rng, 14, 60);
    const SolveReport e = max_sum_free_exhaustive(s);
    const SolveReport b = max_sum_free_branch_bound(s);
    o.require(e.optimum == b.optimum, "optima agree on " + format_set(s));
    o.require(is_sum_free(e.witness) && is_sum_free(b.witness), "witnesses sum-free on " + format_set(s));
    if (!o.pass) break;
  }
  o.detail << n << " random sets";
}

void bourgain(Outcome& o) {
  std::mt19937_64 rng(1997);
  int violations = 0;
  int doubling_pairs = 0;
  std::string first;
  for (int n = 0; n < 200; ++n) {
    const NumSet s = oracle::random_set(rng, 12, 60);
    const std::size_t bound = (s.size() + 2 + 2) / 3;
    if (max_sum_free_branch_bound(s).optimum < bound) {
      ++violations;
      if (s.size() == 2 && s[1] == 2 * s[0]) ++doubling_pairs;
      if (first.empty()) first = format_set(s);
    }
  }
  o.require(violations == 0, "optimum >= ceil((|A|+2)/3) on every set");
  o.detail << "200 random sets, " << violations << " below the bound";
  if (violations > 0) {
    o.detail << " (first " << first << "; " << doubling_pairs << " of them are {a, 2a}, where a+a=2a leaves optimum 1)";
  }
}

void dilation(Outcome& o) {
  std::mt19937_64 rng(31337);
  int unions = 0;
  for (int i = 0; i < 50; ++i) {
    const NumSet a = oracle::random_set(rng, 8, 60);
    const std::size_t l = max_sum_free_branch_bound(a).optimum;
    for (Element d : {2u, 3u, 5u}) {
      const NumSet da = dilate(a, d);
      o.require(max_sum_free_branch_bound(da).optimum == l, "optimum of dilation of " + format_set(a));
      if (set_intersection(a, da).empty()) {
        ++unions;
        o.require(delta(disjoint_union(a, da)) <= delta(a), "union bound on " + format_set(a));
      }
    }
  }
  o.detail << "50 sets, " << unions << " disjoint unions";
}

void proof_bundle(Outcome& o) {
  using namespace sumfree::proof;
  const auto bundle = load_bundle(SUMFREE_PROOF_DIR);
  const CheckReport r = check_theorem2_bundle(std::span<const ScriptSource>(bundle));
  o.require(r.verdict == Verdict::Verified, "bundle verified");
  if (r.verdict != Verdict::Verified) o.detail << '\n' << format_report(r);

  bool c6 = false;
  for (const ScriptSource& s : bundle) c6 = c6 || parse_script(s.text).c_size == 6;
  o.require(c6, "|C| = 6 script present");
  const std::string text = format_report(r);
  for (int k = 0; k <= 1; ++k) {
    o.require(text.find("|C| = " + std::to_string(k) + " excluded") != std::string::npos, "counting note for small |C|");
  }
  for (int k = 2; k <= 6; ++k) {
    o.require(text.find("|C| = " + std::to_string(k) + " covered") != std::string::npos, "coverage for each k");
  }

  std::mt19937_64 rng(100);
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    const mutation::Mutant m = mutation::mutate(bundle, rng);
    if (check_theorem2_bundle(std::span<const ScriptSource>(m.bundle)).verdict == Verdict::Rejected) {
      ++rejected;
    } else {
      o.require(false, "mutation accepted: " + m.description);
    }
  }
  o.detail << r.branches_closed << " branches closed, " << rejected << "/100 mutations rejected";
}

void column_lemmas(Outcome& o) {
  const ColumnTable& t = record_column_table();
  o.require(verify_column_lemmas(t), "verify_column_lemmas");
  for (int c = 1; c <= 3; ++c) {
    const auto& chain = t.column(c).chain;
    int pairs = 0;
    for (const NumSet& s : column_sum_free_subsets(t.column(c))) {
      if (s.size() == 2) {
        ++pairs;
        o.require(s == NumSet{chain.front(), chain.back()}, "column pair is first and last");
      }
      o.require(s.size() <= 2, "no sum-free triple in a column");
    }
    o.require(pairs == 1, "unique sum-free pair in column " + std::to_string(c));
  }
  o.detail << "13 columns";
}

void search(Outcome& o) {
  const SearchReport ex = exhaustive_search(7, 10);
  o.require(ex.best_delta <= ExactRatio(3, 7), "best_delta <= 3/7");
  o.require(delta(NumSet{2, 3, 4, 5, 6, 8, 10}).same_representation(ExactRatio(3, 7)), "3/7 set");
  o.require(std::find(ex.best_sets.begin(), ex.best_sets.end(), NumSet{2, 3, 4, 5, 6, 8, 10}) != ex.best_sets.end(),
            "3/7 set among best");
  for (std::uint64_t seed : {1ULL, 77ULL, 9001ULL}) {
    SearchConfig c;
    c.set_size = 10;
    c.max_element = 18;
    c.seed = seed;
    c.iterations = 60'000;
    c.workers = 1;
    const std::string one = format_report(stochastic_search(c));
    c.workers = 2;
    const std::string two = format_report(stochastic_search(c));
    c.workers = 8;
    const std::string eight = format_report(stochastic_search(c));
    o.require(one == two && two == eight, "identical across workers for seed " + std::to_string(seed));
  }
  o.detail << "exhaustive (7,10) best " << to_string(ex.best_delta) << " over " << ex.evaluated << " sets";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"Theorem 2 reproduction", theorem2},
      {"historical constants", constants},
      {"odd witness", odd_witness},
      {"oracle equivalence", equivalence},
      {"Bourgain property", bourgain},
      {"dilation and union", dilation},
      {"proof bundle", proof_bundle},
      {"column lemmas", column_lemmas},
      {"search", search},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s: %s%s\n", index++, o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(),
                o.failed.c_str());
    std::fflush(stdout);
  }
  return failures;
}
