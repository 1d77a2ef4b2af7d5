#include "hurwitz/nielsen/braid.hpp"

#include <algorithm>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

void check_index(std::size_t i, std::size_t r) {
  if (i < 1 || i + 1 > r)
    throw InvalidArgument("braid generator Q" + std::to_string(i) + " out of range for r = " +
                          std::to_string(r));
}

} // namespace

std::vector<Permutation> braid_generator(std::size_t i, const std::vector<Permutation> &t) {
  check_index(i, t.size());
  auto out = t;
  out[i - 1] = conjugate(t[i], t[i - 1]);
  out[i] = t[i - 1];
  return out;
}

GeneratingTuple braid_generator(std::size_t i, const GeneratingTuple &t) {
  return GeneratingTuple::unchecked(t.group(), braid_generator(i, t.entries()));
}

std::vector<Permutation> braid_generator_inverse(std::size_t i, const std::vector<Permutation> &t) {
  check_index(i, t.size());
  auto out = t;
  out[i - 1] = t[i];
  out[i] = conjugate(t[i - 1], t[i].inverse());
  return out;
}

BraidWord BraidWord::parse(std::string_view text) {
  BraidWord w;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) {
    if (tok == "id" || tok == "1")
      continue;
    if (tok.size() < 2 || (tok[0] != 'Q' && tok[0] != 'q'))
      throw InvalidArgument("bad braid letter '" + tok + "'");
    std::size_t pos = 1;
    std::size_t idx = 0;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos])))
      idx = idx * 10 + static_cast<std::size_t>(tok[pos++] - '0');
    if (idx == 0)
      throw InvalidArgument("bad braid letter '" + tok + "'");
    long exp = 1;
    if (pos < tok.size()) {
      if (tok[pos] != '^')
        throw InvalidArgument("bad braid letter '" + tok + "'");
      try {
        std::size_t used = 0;
        exp = std::stol(tok.substr(pos + 1), &used);
        if (used != tok.size() - pos - 1)
          throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw InvalidArgument("bad exponent in braid letter '" + tok + "'");
      }
    }
    int letter = exp < 0 ? -static_cast<int>(idx) : static_cast<int>(idx);
    for (long k = 0; k < std::labs(exp); ++k)
      w.letters.push_back(letter);
  }
  return w;
}

std::string BraidWord::to_string() const {
  if (letters.empty())
    return "id";
  std::string out;
  for (std::size_t k = 0; k < letters.size();) {
    std::size_t j = k;
    while (j < letters.size() && letters[j] == letters[k])
      ++j;
    long e = static_cast<long>(j - k) * (letters[k] < 0 ? -1 : 1);
    out += (out.empty() ? "Q" : " Q") + std::to_string(std::abs(letters[k]));
    if (e != 1)
      out += "^" + std::to_string(e);
    k = j;
  }
  return out;
}

BraidWord BraidWord::inverse() const {
  BraidWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    w.letters.push_back(-*it);
  return w;
}

std::size_t BraidWord::max_index() const {
  std::size_t m = 0;
  for (int l : letters)
    m = std::max<std::size_t>(m, static_cast<std::size_t>(std::abs(l)));
  return m;
}

std::vector<Permutation> apply_braid_word(const BraidWord &w, std::vector<Permutation> t) {
  for (int l : w.letters)
    t = l > 0 ? braid_generator(static_cast<std::size_t>(l), t)
              : braid_generator_inverse(static_cast<std::size_t>(-l), t);
  return t;
}

BraidOrbit braid_orbit(const GeneratingTuple &seed, TupleCanonicalizer &canon, std::size_t budget) {
  const std::size_t r = seed.size();
  if (r < 2)
    throw InvalidArgument("braid orbit needs r >= 2");
  BraidOrbit orbit;
  std::unordered_map<std::vector<Permutation>, std::size_t, TupleHash> full_index;
  auto &full = orbit.full_members;
  full.push_back(canon.canonical(seed.entries()));
  full_index.emplace(full.back(), 0);
  std::vector<std::vector<std::size_t>> images(r - 1);
  for (std::size_t k = 0; k < full.size(); ++k) {
    for (std::size_t i = 1; i < r; ++i) {
      for (int sign : {1, -1}) {
        auto next = canon.canonical(sign > 0 ? braid_generator(i, full[k])
                                             : braid_generator_inverse(i, full[k]));
        auto [it, inserted] = full_index.emplace(std::move(next), full.size());
        if (inserted) {
          if (full.size() >= budget)
            throw BudgetExceeded("braid orbit exceeds " + std::to_string(budget) + " tuples");
          full.push_back(it->first);
        }
        if (sign > 0)
          images[i - 1].push_back(it->second);
      }
    }
  }
  orbit.full_size = full.size();
  for (auto &img : images) {
    std::vector<Permutation::Point> pts(img.begin(), img.end());
    if (full.size() > Permutation::kMaxDegree)
      throw BudgetExceeded("braid orbit too large for a permutation action");
    orbit.generator_actions.push_back(Permutation(std::move(pts)));
  }
  const auto seed_classes = canon.class_vector(full.front());
  for (const auto &t : full)
    if (canon.class_vector(t) == seed_classes)
      orbit.members.push_back(t);
  std::sort(orbit.members.begin(), orbit.members.end());
  for (std::size_t k = 0; k < orbit.members.size(); ++k)
    orbit.index.emplace(orbit.members[k], k);
  return orbit;
}

Permutation word_action(const BraidOrbit &orbit, const BraidWord &w, TupleCanonicalizer &canon) {
  if (orbit.members.empty())
    throw InvalidArgument("empty braid orbit");
  const std::size_t r = orbit.members.front().size();
  if (w.max_index() >= r)
    throw InvalidArgument("braid word " + w.to_string() + " uses a generator beyond Q" +
                          std::to_string(r - 1));
  std::vector<Permutation::Point> img;
  for (const auto &t : orbit.members) {
    auto it = orbit.index.find(canon.canonical(apply_braid_word(w, t)));
    if (it == orbit.index.end())
      throw InvalidArgument("braid word " + w.to_string() +
                            " does not preserve the class vector of the orbit");
    img.push_back(static_cast<Permutation::Point>(it->second));
  }
  return Permutation(std::move(img));
}

std::vector<CycleType> hurwitz_curve_braid_types(const BraidOrbit &orbit,
                                                 const std::vector<BraidWord> &words,
                                                 TupleCanonicalizer &canon) {
  std::vector<CycleType> out;
  for (const auto &w : words)
    out.push_back(CycleType::of(word_action(orbit, w, canon)));
  return out;
}

} // namespace hurwitz
