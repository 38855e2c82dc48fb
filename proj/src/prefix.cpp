#include "omegalab/prefix.hpp"

#include <algorithm>
#include <stdexcept>

namespace omegalab {

std::string self_delimit_unary(const BitString& x) {
  if (!is_bit_string(x)) throw std::invalid_argument("self_delimit_unary: not a bit string");
  std::string out(x.size(), '0');
  out.push_back('1');
  out += x;
  return out;
}

std::string self_delimit_log(const BitString& x) {
  if (!is_bit_string(x)) throw std::invalid_argument("self_delimit_log: not a bit string");
  return self_delimit_unary(numeral(x.size())) + x;
}

std::optional<BitString> read_self_delimit_unary(const std::string& bits, size_t* pos) {
  size_t p = *pos;
  size_t zeros = 0;
  while (p < bits.size() && bits[p] == '0') {
    ++zeros;
    ++p;
  }
  if (p >= bits.size() || bits[p] != '1') return std::nullopt;
  ++p;
  if (bits.size() - p < zeros) return std::nullopt;
  BitString x = bits.substr(p, zeros);
  if (!is_bit_string(x)) return std::nullopt;
  *pos = p + zeros;
  return x;
}

std::optional<BitString> read_self_delimit_log(const std::string& bits, size_t* pos) {
  size_t p = *pos;
  auto len_field = read_self_delimit_unary(bits, &p);
  if (!len_field) return std::nullopt;
  auto len = numeral_value(*len_field);  // canonical numerals only
  if (!len) return std::nullopt;
  if (bits.size() - p < *len) return std::nullopt;
  BitString x = bits.substr(p, *len);
  if (!is_bit_string(x)) return std::nullopt;
  *pos = p + *len;
  return x;
}

std::optional<PrefixWitness> prefix_violation(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  // After sorting, any prefix relation shows up between adjacent elements:
  // everything between a prefix and its extension also extends the prefix.
  for (size_t i = 0; i + 1 < items.size(); ++i) {
    const std::string& a = items[i];
    const std::string& b = items[i + 1];
    if (a.size() < b.size() && b.compare(0, a.size(), a) == 0)
      return PrefixWitness{a, b};
  }
  return std::nullopt;
}

Expected<PrefixFreeSet, PrefixWitness> PrefixFreeSet::make(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  if (auto w = prefix_violation(items)) return *w;
  return PrefixFreeSet(std::move(items));
}

Dyadic kraft_sum(const std::vector<std::string>& items) {
  std::vector<std::string> distinct = items;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Dyadic sum;
  for (const auto& x : distinct) sum += Dyadic::pow2_neg(x.size());
  return sum;
}

Dyadic kraft_sum_lengths(const std::vector<uint64_t>& lengths) {
  Dyadic sum;
  for (uint64_t len : lengths) sum += Dyadic::pow2_neg(len);
  return sum;
}

}  // namespace omegalab
