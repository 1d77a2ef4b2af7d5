#include "hurwitz/permgroup/cycle_type.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

CycleType::CycleType(std::vector<std::size_t> lengths) : lengths_(std::move(lengths)) {
  for (auto l : lengths_)
    if (l == 0)
      throw InvalidArgument("cycle length must be positive");
  std::sort(lengths_.begin(), lengths_.end(), std::greater<>());
}

CycleType CycleType::of(const Permutation &p) {
  std::vector<std::size_t> lengths;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return CycleType(std::move(lengths));
}

CycleType CycleType::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')')
      s.push_back(c);
  if (s.empty())
    throw InvalidArgument("empty cycle type");
  std::vector<std::size_t> lengths;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find_first_of(".,", pos);
    if (end == std::string::npos)
      end = s.size();
    std::string tok = s.substr(pos, end - pos);
    if (tok.empty())
      throw InvalidArgument("malformed cycle type '" + std::string(text) + "'");
    std::size_t caret = tok.find('^');
    auto to_num = [&](const std::string &v) -> std::size_t {
      if (v.empty() || !std::all_of(v.begin(), v.end(),
                                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw InvalidArgument("malformed cycle type '" + std::string(text) + "'");
      return std::stoul(v);
    };
    std::size_t len = to_num(tok.substr(0, caret));
    std::size_t mult = caret == std::string::npos ? 1 : to_num(tok.substr(caret + 1));
    if (len == 0)
      throw InvalidArgument("cycle length must be positive");
    lengths.insert(lengths.end(), mult, len);
    pos = end + 1;
  }
  return CycleType(std::move(lengths));
}

std::size_t CycleType::degree() const {
  return std::accumulate(lengths_.begin(), lengths_.end(), std::size_t{0});
}

std::uint64_t CycleType::element_order() const {
  std::uint64_t r = 1;
  for (auto l : lengths_)
    r = std::lcm(r, static_cast<std::uint64_t>(l));
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> CycleType::grouped() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto l : lengths_) {
    if (!out.empty() && out.back().first == l)
      ++out.back().second;
    else
      out.emplace_back(l, 1);
  }
  return out;
}

std::string CycleType::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto [len, mult] : grouped()) {
    os << (first ? "" : ".") << len;
    if (mult > 1)
      os << '^' << mult;
    first = false;
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const CycleType &c) { return os << c.to_string(); }

} // namespace hurwitz
