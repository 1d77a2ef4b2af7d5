#include "hurwitz/nielsen/canonical.hpp"

#include "hurwitz/error.hpp"

namespace hurwitz {

std::size_t TupleHash::operator()(const std::vector<Permutation> &t) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto &p : t)
    h = (h ^ p.hash()) * 0x100000001b3ULL;
  return h;
}

struct TupleCanonicalizer::Entry {
  ConjugacyClass cls;
  bool ready = false;
  std::vector<Permutation> cent;
  std::vector<Permutation> cent_inv;
};

TupleCanonicalizer::TupleCanonicalizer(PermGroup group) : group_(std::move(group)) {}
TupleCanonicalizer::~TupleCanonicalizer() = default;

std::size_t TupleCanonicalizer::class_id(const Permutation &g) {
  std::lock_guard lock(mutex_);
  auto type_cycles = g.num_cycles();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto &c = entries_[i]->cls;
    if (c.representative().num_cycles() == type_cycles && c.contains(g))
      return i;
  }
  ConjugacyClass probe(group_, g);
  Permutation m = probe.min_element();
  entries_.push_back(std::make_unique<Entry>(Entry{ConjugacyClass(group_, m), false, {}, {}}));
  return entries_.size() - 1;
}

std::vector<std::size_t> TupleCanonicalizer::class_vector(const std::vector<Permutation> &tuple) {
  std::vector<std::size_t> out;
  for (const auto &e : tuple)
    out.push_back(class_id(e));
  return out;
}

const ConjugacyClass &TupleCanonicalizer::class_at(std::size_t id) {
  std::lock_guard lock(mutex_);
  return entries_.at(id)->cls;
}

TupleCanonicalizer::Entry &TupleCanonicalizer::entry(std::size_t id) {
  std::lock_guard lock(mutex_);
  Entry &e = *entries_.at(id);
  if (!e.ready) {
    PermGroup cent(group_.degree(), e.cls.centralizer_generators(), group_.limits());
    e.cent = cent.elements();
    for (const auto &c : e.cent)
      e.cent_inv.push_back(c.inverse());
    e.ready = true;
  }
  return e;
}

std::vector<Permutation> TupleCanonicalizer::canonical(const std::vector<Permutation> &tuple) {
  if (tuple.empty())
    return {};
  Entry &e = entry(class_id(tuple[0]));
  const std::size_t n = group_.degree();
  Permutation h = e.cls.conjugator(*e.cls.index_of(tuple[0])).inverse();
  std::vector<Permutation> rest;
  for (std::size_t k = 1; k < tuple.size(); ++k)
    rest.push_back(conjugate(tuple[k], h));

  // Best candidate so far, as concatenated images.
  std::vector<Permutation::Point> best;
  std::vector<Permutation::Point> cand(n * rest.size());
  for (std::size_t ci = 0; ci < e.cent.size(); ++ci) {
    const auto &c = e.cent[ci];
    const auto &cinv = e.cent_inv[ci];
    if (best.empty()) {
      for (std::size_t k = 0; k < rest.size(); ++k)
        for (std::size_t j = 0; j < n; ++j)
          cand[k * n + j] = c[rest[k][cinv[j]]];
      best = cand;
      continue;
    }
    // Compare lazily; stop at the first differing position.
    bool smaller = false;
    std::size_t pos = 0;
    for (; pos < best.size(); ++pos) {
      std::size_t k = pos / n, j = pos % n;
      auto v = c[rest[k][cinv[j]]];
      if (v != best[pos]) {
        smaller = v < best[pos];
        break;
      }
    }
    if (!smaller)
      continue;
    for (std::size_t k = 0; k < rest.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        best[k * n + j] = c[rest[k][cinv[j]]];
  }
  std::vector<Permutation> out{e.cls.representative()};
  for (std::size_t k = 0; k < rest.size(); ++k)
    out.push_back(Permutation::from_images_unchecked(
        std::vector<Permutation::Point>(best.begin() + static_cast<long>(k * n),
                                        best.begin() + static_cast<long>((k + 1) * n))));
  return out;
}

} // namespace hurwitz
