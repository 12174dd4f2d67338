#include "sumfree/numset.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "sumfree/error.hpp"

namespace sumfree {

namespace {

std::vector<std::uint64_t> make_bits(std::span<const Element> sorted) {
  if (sorted.empty()) return {};
  std::vector<std::uint64_t> bits(sorted.back() / 64 + 1, 0);
  for (Element v : sorted) bits[v / 64] |= std::uint64_t{1} << (v % 64);
  return bits;
}

}  // namespace

NumSet::NumSet(std::initializer_list<Element> elements)
    : NumSet(from(std::span<const Element>(elements.begin(), elements.size()))) {}

NumSet NumSet::from(std::span<const Element> elements, Element value_cap) {
  NumSet out;
  out.elements_.assign(elements.begin(), elements.end());
  std::sort(out.elements_.begin(), out.elements_.end());
  out.elements_.erase(std::unique(out.elements_.begin(), out.elements_.end()), out.elements_.end());
  if (!out.elements_.empty()) {
    if (out.elements_.front() == 0) throw std::invalid_argument("set elements must be positive");
    if (out.elements_.back() > value_cap) {
      throw LimitError("element " + std::to_string(out.elements_.back()) + " exceeds value cap " +
                       std::to_string(value_cap));
    }
  }
  out.bits_ = make_bits(out.elements_);
  return out;
}

std::optional<Element> NumSet::max_value() const noexcept {
  if (elements_.empty()) return std::nullopt;
  return elements_.back();
}

bool NumSet::is_subset_of(const NumSet& other) const noexcept {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](Element v) { return other.contains(v); });
}

NumSet set_union(const NumSet& a, const NumSet& b) {
  std::vector<Element> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NumSet::from(out, std::max(a.max_value().value_or(0), b.max_value().value_or(0)));
}

NumSet set_intersection(const NumSet& a, const NumSet& b) {
  std::vector<Element> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NumSet::from(out, a.max_value().value_or(0));
}

NumSet set_difference(const NumSet& a, const NumSet& b) {
  std::vector<Element> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NumSet::from(out, a.max_value().value_or(0));
}

NumSet parse_set(std::string_view text, Element value_cap) {
  std::string_view body = text;
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return std::string_view{};
    return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
  };
  body = trim(body);
  const bool braced = !body.empty() && body.front() == '{';
  if (braced) {
    if (body.back() != '}') throw ParseError("unterminated '{' in set", std::string(body));
    body = trim(body.substr(1, body.size() - 2));
  }

  std::vector<Element> values;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const char c = body[pos];
    if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
      continue;
    }
    const auto end = body.find_first_of(", \t\r\n", pos);
    const std::string_view token = body.substr(pos, end == std::string_view::npos ? body.size() - pos : end - pos);
    pos += token.size();

    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw ParseError("value out of range: '" + std::string(token) + "'", std::string(token));
    }
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError("not a positive integer: '" + std::string(token) + "'", std::string(token));
    }
    if (value == 0) throw ParseError("zero is not a natural number here: '0'", std::string(token));
    if (value > value_cap) {
      throw ParseError("value " + std::string(token) + " exceeds value cap " + std::to_string(value_cap),
                       std::string(token));
    }
    values.push_back(static_cast<Element>(value));
  }
  if (values.empty() && !braced) throw ParseError("empty set text", std::string(text));
  return NumSet::from(values, value_cap);
}

std::string format_set(const NumSet& set) {
  std::string out = "{";
  bool first = true;
  for (Element v : set) {
    if (!first) out += ", ";
    out += std::to_string(v);
    first = false;
  }
  out += '}';
  return out;
}

std::string format_triple(const SumTriple& t) {
  return std::to_string(t.x) + "+" + std::to_string(t.y) + "=" + std::to_string(t.z);
}

std::vector<SumTriple> enumerate_triples(const NumSet& set) {
  std::vector<SumTriple> out;
  const auto elems = set.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      const Element z = elems[i] + elems[j];
      if (set.contains(z)) out.push_back({elems[i], elems[j], z});
    }
  }
  return out;
}

std::optional<SumTriple> first_triple(const NumSet& set) {
  const auto elems = set.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i; j < elems.size(); ++j) {
      const Element z = elems[i] + elems[j];
      if (set.contains(z)) return SumTriple{elems[i], elems[j], z};
    }
  }
  return std::nullopt;
}

bool is_sum_free(const NumSet& set) { return !first_triple(set).has_value(); }

// --- columns ---------------------------------------------------------------

ColumnTable::ColumnTable(std::array<Column, kColumnCount> columns) : columns_(std::move(columns)) {
  std::vector<Element> seen;
  for (int i = 0; i < kColumnCount; ++i) {
    const Column& col = columns_[static_cast<std::size_t>(i)];
    if (col.index != i + 1) throw std::invalid_argument("column indices must run 1..13 in order");
    if (col.chain.empty()) throw std::invalid_argument("empty column");
    for (std::size_t k = 1; k < col.chain.size(); ++k) {
      if (col.chain[k] != 2 * col.chain[k - 1]) {
        throw std::invalid_argument("column " + std::to_string(col.index) + " is not a doubling chain");
      }
    }
    seen.insert(seen.end(), col.chain.begin(), col.chain.end());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("columns overlap");
  }
}

int ColumnTable::column_of(Element value) const noexcept {
  for (const Column& col : columns_) {
    if (std::find(col.chain.begin(), col.chain.end(), value) != col.chain.end()) return col.index;
  }
  return 0;
}

NumSet ColumnTable::universe() const {
  std::vector<Element> all;
  for (const Column& col : columns_) all.insert(all.end(), col.chain.begin(), col.chain.end());
  return NumSet::from(all);
}

NumSet ColumnTable::head() const {
  std::vector<Element> all;
  for (int i = 0; i < 3; ++i) {
    const auto& chain = columns_[static_cast<std::size_t>(i)].chain;
    all.insert(all.end(), chain.begin(), chain.end());
  }
  return NumSet::from(all);
}

NumSet record_set() {
  return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 20, 22, 24, 25, 26, 27, 30, 34, 50, 54};
}

const ColumnTable& record_column_table() {
  static const ColumnTable table({
      Column{1, {1, 2, 4}},   Column{2, {3, 6, 12}},  Column{3, {5, 10, 20}}, Column{4, {7, 14}},
      Column{5, {8, 16}},     Column{6, {9, 18}},     Column{7, {11, 22}},    Column{8, {13, 26}},
      Column{9, {15, 30}},    Column{10, {17, 34}},   Column{11, {25, 50}},   Column{12, {27, 54}},
      Column{13, {24}},
  });
  return table;
}

std::vector<NumSet> column_sum_free_subsets(const Column& column) {
  const auto n = column.chain.size();
  std::vector<NumSet> out;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<Element> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) pick.push_back(column.chain[i]);
    }
    NumSet s = NumSet::from(pick);
    if (is_sum_free(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const NumSet& a, const NumSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool verify_column_lemmas(const ColumnTable& table) {
  for (const Column& col : table.columns()) {
    const auto subsets = column_sum_free_subsets(col);
    std::size_t largest = 0;
    for (const NumSet& s : subsets) largest = std::max(largest, s.size());
    switch (col.chain.size()) {
      case 1:
        if (largest != 1) return false;
        break;
      case 2:
        if (largest != 1) return false;
        break;
      case 3: {
        if (largest != 2) return false;
        const NumSet ends{col.chain.front(), col.chain.back()};
        for (const NumSet& s : subsets) {
          if (s.size() == 2 && s != ends) return false;
        }
        break;
      }
      default:
        return false;
    }
  }
  return true;
}

}  // namespace sumfree
