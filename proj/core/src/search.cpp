#include "sumfree/search.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sumfree/error.hpp"
#include "sumfree/solver.hpp"

namespace sumfree {

std::string to_string(SearchMode mode) {
  return mode == SearchMode::Exhaustive ? "exhaustive" : "stochastic";
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Best {
  std::optional<ExactRatio> delta;
  std::vector<NumSet> sets;
  std::uint64_t count = 0;
  std::uint64_t evaluated = 0;

  void offer(const ExactRatio& d, const NumSet& set) {
    if (delta && d > *delta) return;
    if (!delta || d < *delta) {
      delta = d;
      sets.clear();
      count = 0;
    }
    ++count;
    const auto pos = std::lower_bound(sets.begin(), sets.end(), set);
    if (pos != sets.end() && *pos == set) return;
    sets.insert(pos, set);
    if (sets.size() > kMaxReportedSets) sets.pop_back();
  }

  void merge(const Best& other) {
    evaluated += other.evaluated;
    if (!other.delta) return;
    if (delta && *other.delta > *delta) return;
    if (!delta || *other.delta < *delta) {
      *this = Best{other.delta, other.sets, other.count, evaluated};
      return;
    }
    for (const NumSet& s : other.sets) {
      const auto pos = std::lower_bound(sets.begin(), sets.end(), s);
      if (pos != sets.end() && *pos == s) continue;
      sets.insert(pos, s);
    }
    if (sets.size() > kMaxReportedSets) sets.resize(kMaxReportedSets);
  }
};

SearchReport to_report(const SearchConfig& config, const Best& best) {
  SearchReport r;
  r.config = config;
  r.best_delta = best.delta.value_or(ExactRatio(0, 1));
  r.best_sets = best.sets;
  r.evaluated = best.evaluated;
  return r;
}

Best run_slot(const SearchConfig& config, std::uint64_t slot, std::uint64_t steps) {
  Best best;
  std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(slot)));
  std::vector<Element> universe(config.max_element);
  std::iota(universe.begin(), universe.end(), Element{1});
  const std::size_t k = config.set_size;

  auto evaluate = [&](const std::vector<Element>& inside) {
    const NumSet set = NumSet::from(inside, std::max(config.max_element, kDefaultValueCap));
    const ExactRatio d = delta(set);
    ++best.evaluated;
    best.offer(d, set);
    return d;
  };

  std::vector<Element> pool;
  ExactRatio current;
  std::uint64_t since_improvement = 0;
  bool need_restart = true;
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (need_restart) {
      pool = universe;
      std::shuffle(pool.begin(), pool.end(), rng);
      current = evaluate({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)});
      since_improvement = 0;
      need_restart = false;
      continue;
    }
    if (pool.size() == k) {
      need_restart = true;
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick_in(0, k - 1);
    std::uniform_int_distribution<std::size_t> pick_out(k, pool.size() - 1);
    const std::size_t i = pick_in(rng);
    const std::size_t j = pick_out(rng);
    std::swap(pool[i], pool[j]);
    const ExactRatio d = evaluate({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)});
    if (d <= current) {
      since_improvement = d < current ? 0 : since_improvement + 1;
      current = d;
    } else {
      std::swap(pool[i], pool[j]);
      ++since_improvement;
    }
    if (since_improvement >= kStagnationWindow) need_restart = true;
  }
  return best;
}

}  // namespace

SearchReport exhaustive_search(std::size_t set_size, Element max_element, std::uint64_t ceiling) {
  if (set_size == 0 || set_size > max_element) {
    throw std::invalid_argument("no " + std::to_string(set_size) + "-subsets of {1.." + std::to_string(max_element) +
                                "} to search");
  }
  if (max_element > 64) throw LimitError("exhaustive search supports max_element <= 64");
  const std::uint64_t count = count_k_subsets(max_element, static_cast<unsigned>(set_size));
  if (count > ceiling) {
    throw LimitError("exhaustive search over " + std::to_string(count) + " subsets exceeds the ceiling of " +
                     std::to_string(ceiling));
  }
  Best best;
  std::vector<Element> current(set_size);
  std::iota(current.begin(), current.end(), Element{1});
  while (true) {
    const NumSet set = NumSet::from(current, std::max(max_element, kDefaultValueCap));
    best.offer(delta(set), set);
    ++best.evaluated;
    std::size_t i = set_size;
    while (i > 0 && current[i - 1] == max_element - (set_size - i)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < set_size; ++j) current[j] = current[j - 1] + 1;
  }
  SearchConfig config;
  config.set_size = set_size;
  config.max_element = max_element;
  config.mode = SearchMode::Exhaustive;
  config.iterations = count;
  SearchReport report = to_report(config, best);
  report.best_count = best.count;
  return report;
}

SearchReport stochastic_search(const SearchConfig& config) {
  if (config.set_size < 3) throw std::invalid_argument("search needs set_size >= 3");
  if (config.max_element < config.set_size) throw std::invalid_argument("search needs max_element >= set_size");
  if (config.iterations < 1) throw std::invalid_argument("search needs iterations >= 1");
  if (config.max_element > kDefaultValueCap) throw LimitError("max_element above the value cap");

  const std::uint64_t slots = (config.iterations + kStepsPerSlot - 1) / kStepsPerSlot;
  std::vector<Best> results(slots);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s = next++; s < slots; s = next++) {
      const std::uint64_t steps = std::min(kStepsPerSlot, config.iterations - s * kStepsPerSlot);
      results[s] = run_slot(config, s, steps);
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(config.workers, static_cast<unsigned>(slots)));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();

  Best merged;
  for (const Best& b : results) merged.merge(b);
  return to_report(config, merged);
}

SearchReport run_search(const SearchConfig& config) {
  if (config.mode == SearchMode::Exhaustive) {
    SearchReport r = exhaustive_search(config.set_size, config.max_element);
    r.config.seed = config.seed;
    r.config.workers = config.workers;
    return r;
  }
  return stochastic_search(config);
}

std::string format_report(const SearchReport& report) {
  std::ostringstream out;
  out << "mode: " << to_string(report.config.mode) << '\n'
      << "set_size: " << report.config.set_size << '\n'
      << "max_element: " << report.config.max_element << '\n'
      << "seed: " << report.config.seed << '\n'
      << "iterations: " << report.config.iterations << '\n'
      << "evaluated: " << report.evaluated << '\n'
      << "best_delta: " << to_string(report.best_delta) << '\n';
  if (report.best_count) out << "best_count: " << *report.best_count << '\n';
  for (const NumSet& s : report.best_sets) out << "best_set: " << format_set(s) << '\n';
  return out.str();
}

}  // namespace sumfree
