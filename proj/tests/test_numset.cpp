#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sumfree/error.hpp"
#include "sumfree/numset.hpp"

using namespace sumfree;

TEST_CASE("parse and format round trip") {
  CHECK(format_set(parse_set("{2,3,4,5,6,8,10}")) == "{2, 3, 4, 5, 6, 8, 10}");
  CHECK(parse_set("10 8 6\n5, 4 3 2") == NumSet{2, 3, 4, 5, 6, 8, 10});
  CHECK(parse_set("{}").empty());
  CHECK(parse_set(" { 7 } ") == NumSet{7});

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const NumSet s = oracle::random_set(rng, 20, 500);
    CHECK(parse_set(format_set(s)) == s);
  }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_set("{1,0,3}"), ParseError);
  CHECK_THROWS_AS(parse_set("{1,x}"), ParseError);
  CHECK_THROWS_AS(parse_set("{1,2"), ParseError);
  CHECK_THROWS_AS(parse_set("   "), ParseError);
  CHECK_THROWS_AS(parse_set("-3"), ParseError);
  CHECK_THROWS_AS(parse_set("5000"), ParseError);
  CHECK(parse_set("5000", 5000).max_value() == 5000u);
  try {
    parse_set("{4, 9q}");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.token() == "9q");
  }
}

TEST_CASE("construction invariants") {
  const NumSet s{9, 3, 3, 1};
  CHECK(s.size() == 3);
  CHECK(s[0] == 1);
  CHECK(s.max_value() == 9u);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(2));
  CHECK_FALSE(s.contains(100000));
  CHECK_FALSE(NumSet{}.max_value().has_value());
  const std::vector<Element> zero{0, 1};
  CHECK_THROWS_AS(NumSet::from(zero), std::invalid_argument);
  const std::vector<Element> big{2000};
  CHECK_THROWS_AS(NumSet::from(big), LimitError);
}

TEST_CASE("set algebra") {
  const NumSet a{1, 2, 3, 4};
  const NumSet b{3, 4, 5};
  CHECK(set_union(a, b) == NumSet{1, 2, 3, 4, 5});
  CHECK(set_intersection(a, b) == NumSet{3, 4});
  CHECK(set_difference(a, b) == NumSet{1, 2});
  CHECK(NumSet{3, 4}.is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  CHECK(NumSet{1, 9} < NumSet{2});
}

TEST_CASE("triples match the pair-scan oracle") {
  CHECK(enumerate_triples(NumSet{1, 2, 3}).size() == 2);
  CHECK(format_triple(*first_triple(NumSet{1, 2, 3})) == "1+1=2");
  CHECK(format_triple(*first_triple(NumSet{3, 5, 8})) == "3+5=8");
  CHECK_FALSE(first_triple(NumSet{1, 3, 5}).has_value());

  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const NumSet s = oracle::random_set(rng, 15, 40);
    const auto got = enumerate_triples(s);
    CHECK(got == oracle::triples(s));
    CHECK(is_sum_free(s) == got.empty());
    for (const SumTriple& t : got) {
      CHECK(t.x <= t.y);
      CHECK(t.x + t.y == t.z);
    }
  }
}

TEST_CASE("odd sets are sum-free") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Element> half(0, 300);
  for (int i = 0; i < 100; ++i) {
    std::vector<Element> v;
    for (int j = 0; j < 12; ++j) v.push_back(2 * half(rng) + 1);
    CHECK(is_sum_free(NumSet::from(v)));
  }
  CHECK(is_sum_free(NumSet{}));
  CHECK(is_sum_free(NumSet{7}));
  CHECK_FALSE(is_sum_free(NumSet{7, 14}));
}

TEST_CASE("column table") {
  const ColumnTable& t = record_column_table();
  CHECK(t.universe() == record_set());
  CHECK(record_set().size() == 28);
  CHECK(t.head() == NumSet{1, 2, 3, 4, 5, 6, 10, 12, 20});
  CHECK(t.column_of(24) == 13);
  CHECK(t.column_of(20) == 3);
  CHECK(t.column_of(54) == 12);
  CHECK(t.column_of(19) == 0);
  CHECK(verify_column_lemmas(t));

  for (int c = 1; c <= 3; ++c) {
    const auto& chain = t.column(c).chain;
    std::size_t pairs = 0;
    for (const NumSet& s : column_sum_free_subsets(t.column(c))) {
      CHECK(s.size() <= 2);
      if (s.size() == 2) {
        ++pairs;
        CHECK(s == NumSet{chain.front(), chain.back()});
      }
    }
    CHECK(pairs == 1);
  }
  for (int c = 4; c <= 13; ++c) {
    for (const NumSet& s : column_sum_free_subsets(t.column(c))) CHECK(s.size() <= 1);
  }

  std::array<Column, 13> broken{};
  for (int c = 1; c <= 13; ++c) broken[c - 1] = t.column(c);
  broken[3].chain = {7, 15};
  CHECK_THROWS_AS(ColumnTable{broken}, std::invalid_argument);
}
