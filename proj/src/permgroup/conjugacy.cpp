#include "hurwitz/permgroup/conjugacy.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "hurwitz/error.hpp"

namespace hurwitz {

using Point = Permutation::Point;

struct ConjugacyClass::CentralizerCache {
  std::once_flag once;
  std::vector<Permutation> generators;
};

ConjugacyClass::ConjugacyClass(const PermGroup &group, const Permutation &representative)
    : group_(group), centralizer_(std::make_shared<CentralizerCache>()) {
  if (!group.contains(representative))
    throw InvalidArgument("class representative " + representative.to_string() +
                          " is not in the group");
  const auto &gens = group.generators();
  const std::size_t n = group.degree();
  const std::uint64_t cap = group.limits().class_cap;
  elements_.push_back(representative);
  parent_.push_back(0);
  via_.push_back(0);
  index_.emplace(representative, 0);
  std::vector<Point> img(n);
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const auto &s = gens[gi];
      const auto &x = elements_[k];
      for (std::size_t i = 0; i < n; ++i)
        img[s[i]] = s[x[i]];
      auto y = Permutation::from_images_unchecked(img);
      if (index_.count(y))
        continue;
      if (elements_.size() >= cap)
        throw BudgetExceeded("conjugacy class of " + representative.to_string() +
                             " exceeds class cap " + std::to_string(cap));
      index_.emplace(y, static_cast<std::uint32_t>(elements_.size()));
      elements_.push_back(std::move(y));
      parent_.push_back(static_cast<std::uint32_t>(k));
      via_.push_back(static_cast<std::uint16_t>(gi));
    }
  }
  min_index_ = static_cast<std::size_t>(
      std::min_element(elements_.begin(), elements_.end()) - elements_.begin());
}

std::optional<std::size_t> ConjugacyClass::index_of(const Permutation &g) const {
  auto it = index_.find(g);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

Permutation ConjugacyClass::conjugator(std::size_t i) const {
  Permutation result(group_.degree());
  while (i != 0) {
    result = compose(result, group_.generators()[via_[i]]);
    i = parent_[i];
  }
  return result;
}

std::vector<Permutation> ConjugacyClass::sorted_elements() const {
  auto out = elements_;
  std::sort(out.begin(), out.end());
  return out;
}

bool ConjugacyClass::is_rational() const {
  const auto &rep = representative();
  std::uint64_t ord = rep.order();
  for (std::uint64_t k = 2; k < ord; ++k)
    if (std::gcd(k, ord) == 1 && !contains(power(rep, static_cast<long long>(k))))
      return false;
  return true;
}

const std::vector<Permutation> &ConjugacyClass::centralizer_generators() const {
  std::call_once(centralizer_->once, [&] {
    auto &out = centralizer_->generators;
    const mpz_class target = group_.order() / static_cast<unsigned long>(size());
    if (size() == 1) {
      out = group_.generators();
      return;
    }
    const auto &gens = group_.generators();
    const std::size_t n = group_.degree();
    Bsgs chain = schreier_sims(n, {});
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(0x5eed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i : order) {
      if (chain.order() == target)
        break;
      Permutation ui = conjugator(i);
      for (const auto &s : gens) {
        auto j = *index_of(conjugate(elements_[i], s));
        Permutation g = compose(conjugator(j).inverse(), compose(s, ui));
        if (g.is_identity() || chain.contains(g))
          continue;
        out.push_back(std::move(g));
        chain = schreier_sims(n, out);
        if (chain.order() == target)
          break;
      }
    }
    if (chain.order() != target)
      throw Error("centralizer construction did not reach the expected order");
  });
  return centralizer_->generators;
}

PermGroup ConjugacyClass::centralizer() const {
  return PermGroup(group_.degree(), centralizer_generators(), group_.limits());
}

bool ClassDescriptor::matches(const ConjugacyClass &c) const {
  if (c.cycle_type() != cycle_type)
    return false;
  if (class_size && *class_size != static_cast<unsigned long>(c.size()))
    return false;
  if (element_order && *element_order != c.representative().order())
    return false;
  return true;
}

std::string ClassDescriptor::to_string() const {
  std::ostringstream os;
  os << cycle_type;
  if (class_size)
    os << " size=" << class_size->get_str();
  if (element_order)
    os << " order=" << *element_order;
  return os.str();
}

namespace {

void sort_classes(std::vector<ConjugacyClass> &classes) {
  std::sort(classes.begin(), classes.end(), [](const ConjugacyClass &a, const ConjugacyClass &b) {
    auto ta = a.cycle_type(), tb = b.cycle_type();
    if (ta != tb)
      return ta > tb;
    if (a.size() != b.size())
      return a.size() < b.size();
    return a.min_element() < b.min_element();
  });
}

} // namespace

std::vector<ConjugacyClass> conjugacy_classes(const PermGroup &group) {
  std::vector<ConjugacyClass> classes;
  group.for_each_element([&](const Permutation &g) {
    auto type = CycleType::of(g);
    for (const auto &c : classes)
      if (c.cycle_type() == type && c.contains(g))
        return true;
    classes.emplace_back(group, g);
    return true;
  });
  sort_classes(classes);
  return classes;
}

std::vector<ConjugacyClass> classes_with_cycle_types(const PermGroup &group,
                                                     const std::vector<CycleType> &types) {
  for (const auto &type : types)
    if (type.degree() != group.degree())
      throw InvalidArgument("cycle type " + type.to_string() + " has degree " +
                            std::to_string(type.degree()) + ", group has degree " +
                            std::to_string(group.degree()));
  std::vector<ConjugacyClass> classes;
  group.for_each_element([&](const Permutation &g) {
    std::size_t nc = g.num_cycles();
    if (std::none_of(types.begin(), types.end(),
                     [&](const CycleType &t) { return t.num_cycles() == nc; }))
      return true;
    auto type = CycleType::of(g);
    if (std::find(types.begin(), types.end(), type) == types.end())
      return true;
    for (const auto &c : classes)
      if (c.contains(g))
        return true;
    classes.emplace_back(group, g);
    return true;
  });
  sort_classes(classes);
  return classes;
}

std::vector<ConjugacyClass> classes_with_cycle_type(const PermGroup &group, const CycleType &type) {
  return classes_with_cycle_types(group, {type});
}

const ConjugacyClass &select_class(const std::vector<ConjugacyClass> &classes,
                                   const ClassDescriptor &d) {
  std::vector<const ConjugacyClass *> hits;
  for (const auto &c : classes)
    if (d.matches(c))
      hits.push_back(&c);
  if (hits.empty())
    throw InvalidArgument("no conjugacy class matches " + d.to_string());
  if (hits.size() > 1) {
    std::ostringstream os;
    os << hits.size() << " conjugacy classes match " << d.to_string() << " (sizes";
    for (auto *c : hits)
      os << ' ' << c->size();
    os << "); add size= or order= to the descriptor";
    throw InvalidArgument(os.str());
  }
  return *hits.front();
}

Permutation resolve_class(const PermGroup &group, const ClassDescriptor &d) {
  auto classes = classes_with_cycle_type(group, d.cycle_type);
  return select_class(classes, d).min_element();
}

std::vector<Permutation> conjugacy_class(const PermGroup &group, const Permutation &rep) {
  return ConjugacyClass(group, rep).sorted_elements();
}

std::vector<Permutation> cyclic_normalizer_generators(const PermGroup &group,
                                                      const Permutation &s) {
  if (s.is_identity())
    throw InvalidArgument("normalizer of the trivial subgroup requested");
  ConjugacyClass cls(group, s);
  std::vector<Permutation> gens = cls.centralizer_generators();
  std::uint64_t ord = s.order();
  for (std::uint64_t k = 2; k < ord; ++k) {
    if (std::gcd(k, ord) != 1)
      continue;
    if (auto idx = cls.index_of(power(s, static_cast<long long>(k))))
      gens.push_back(cls.conjugator(*idx));
  }
  return gens;
}

bool cyclic_normalizer_fixes_cycle(const PermGroup &group, const Permutation &s) {
  auto gens = cyclic_normalizer_generators(group, s);
  auto cycles = s.cycles();
  std::vector<std::size_t> cycle_of(s.degree());
  for (std::size_t c = 0; c < cycles.size(); ++c)
    for (Point p : cycles[c])
      cycle_of[p] = c;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    Point p = cycles[c].front();
    bool fixed = std::all_of(gens.begin(), gens.end(),
                             [&](const Permutation &g) { return cycle_of[g[p]] == c; });
    if (fixed)
      return true;
  }
  return false;
}

} // namespace hurwitz
