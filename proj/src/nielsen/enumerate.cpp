#include "hurwitz/nielsen/enumerate.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

using Point = Permutation::Point;

/// Scans candidate indices [begin, end) and records those whose solved last
/// entry lies in the last class.
void scan_candidates(const Permutation &s1, const std::vector<const ConjugacyClass *> &free,
                     const ConjugacyClass &last, std::uint64_t begin, std::uint64_t end,
                     std::vector<std::uint64_t> &hits) {
  const std::size_t n = s1.degree();
  const std::size_t m = free.size();
  const std::size_t last_cycles = last.representative().num_cycles();
  std::vector<std::size_t> digits(m);
  {
    std::uint64_t rem = begin;
    for (std::size_t k = m; k-- > 0;) {
      digits[k] = rem % free[k]->size();
      rem /= free[k]->size();
    }
  }
  // prefix[k] = s1 ∘ s_2 ∘ ... ∘ s_{k+1} (images).
  std::vector<std::vector<Point>> prefix(m + 1, std::vector<Point>(n));
  for (std::size_t i = 0; i < n; ++i)
    prefix[0][i] = s1[i];
  std::size_t dirty = 0;
  std::vector<Point> inv(n);
  std::vector<bool> seen(n);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (std::size_t k = dirty; k < m; ++k) {
      const auto &e = free[k]->elements()[digits[k]];
      for (std::size_t i = 0; i < n; ++i)
        prefix[k + 1][i] = prefix[k][e[i]];
    }
    // Last entry is the inverse of the product; it has the same cycles.
    const auto &p = prefix[m];
    std::size_t cycles = 0;
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i])
        continue;
      ++cycles;
      for (std::size_t j = i; !seen[j]; j = p[j])
        seen[j] = true;
    }
    if (cycles == last_cycles) {
      for (std::size_t i = 0; i < n; ++i)
        inv[p[i]] = static_cast<Point>(i);
      if (last.contains(Permutation::from_images_unchecked(inv)))
        hits.push_back(idx);
    }
    // Advance the mixed-radix counter.
    std::size_t k = m;
    while (k-- > 0) {
      if (++digits[k] < free[k]->size())
        break;
      digits[k] = 0;
    }
    dirty = k == static_cast<std::size_t>(-1) ? 0 : k;
  }
}

} // namespace

NielsenResult enumerate_straight_nielsen(const RamificationType &type,
                                         const NielsenOptions &options) {
  const std::size_t r = type.length();
  if (r < 3)
    throw InvalidArgument("Nielsen enumeration needs r >= 3");
  const PermGroup &G = type.group();
  if (!G.has_trivial_center())
    throw InvalidArgument("Nielsen enumeration requires a group with trivial centre");
  const auto &classes = type.classes();
  const Permutation s1 = classes[0].representative();
  std::vector<const ConjugacyClass *> free;
  std::uint64_t total = 1;
  for (std::size_t k = 1; k + 1 < r; ++k) {
    free.push_back(&classes[k]);
    if (total > options.candidate_budget / classes[k].size() + 1)
      throw BudgetExceeded("candidate count exceeds budget " +
                           std::to_string(options.candidate_budget));
    total *= classes[k].size();
  }
  if (total > options.candidate_budget)
    throw BudgetExceeded("candidate count " + std::to_string(total) + " exceeds budget " +
                         std::to_string(options.candidate_budget));
  const ConjugacyClass &last = classes[r - 1];

  NielsenResult result;
  result.candidates = total;

  // Phase 1: candidate scan, optionally split over threads.
  std::vector<std::uint64_t> hits;
  unsigned threads = std::max(1u, std::min<unsigned>(options.threads, 64));
  if (threads == 1 || total < 4096) {
    scan_candidates(s1, free, last, 0, total, hits);
  } else {
    std::vector<std::vector<std::uint64_t>> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t b = total * t / threads, e = total * (t + 1) / threads;
      pool.emplace_back([&, t, b, e] { scan_candidates(s1, free, last, b, e, parts[t]); });
    }
    for (auto &th : pool)
      th.join();
    for (auto &p : parts)
      hits.insert(hits.end(), p.begin(), p.end());
  }
  result.product_hits = hits.size();

  // Phase 2: expand each new hit to its orbit under C_G(s1).
  const auto &cent = classes[0].centralizer_generators();
  std::vector<bool> visited(total, false);
  TupleCanonicalizer canon(G);
  std::uint64_t fixed_first = 0;
  auto decode = [&](std::uint64_t idx) {
    std::vector<std::size_t> d(free.size());
    for (std::size_t k = free.size(); k-- > 0;) {
      d[k] = idx % free[k]->size();
      idx /= free[k]->size();
    }
    return d;
  };
  for (std::uint64_t idx : hits) {
    if (visited[idx])
      continue;
    visited[idx] = true;
    std::vector<std::vector<std::size_t>> orbit{decode(idx)};
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      for (const auto &c : cent) {
        std::uint64_t lin = 0;
        std::vector<std::size_t> img(free.size());
        for (std::size_t k = 0; k < free.size(); ++k) {
          img[k] = *free[k]->index_of(conjugate(free[k]->elements()[orbit[q][k]], c));
          lin = lin * free[k]->size() + img[k];
        }
        if (!visited[lin]) {
          visited[lin] = true;
          orbit.push_back(std::move(img));
        }
      }
    }
    std::vector<Permutation> tuple{s1};
    for (std::size_t k = 0; k < free.size(); ++k)
      tuple.push_back(free[k]->elements()[orbit[0][k]]);
    tuple.push_back(tuple_product(tuple).inverse());
    ++result.generation_tests;
    if (!generates(tuple, G))
      continue;
    fixed_first += orbit.size();
    result.classes.push_back(GeneratingTuple::unchecked(G, canon.canonical(tuple)));
  }
  std::sort(result.classes.begin(), result.classes.end(),
            [](const GeneratingTuple &a, const GeneratingTuple &b) {
              return a.entries() < b.entries();
            });
  result.straight_count = mpz_class(static_cast<unsigned long>(classes[0].size())) *
                          static_cast<unsigned long>(fixed_first);
  if (result.straight_count !=
      G.order() * static_cast<unsigned long>(result.classes.size()))
    throw Error("straight Nielsen count is not |G| times the inner count");
  return result;
}

RigidityReport rigidity_check(const RamificationType &type, const NielsenOptions &options) {
  RigidityReport rep;
  rep.inner_classes = enumerate_straight_nielsen(type, options).classes.size();
  rep.rigid = rep.inner_classes == 1;
  rep.all_rational = true;
  for (const auto &c : type.classes()) {
    rep.rational.push_back(c.is_rational());
    rep.all_rational = rep.all_rational && rep.rational.back();
  }
  return rep;
}

std::optional<GeneratingTuple> exists_symmetric_tuple(const std::vector<GeneratingTuple> &tuples) {
  for (const auto &t : tuples) {
    if (t.size() != 4)
      throw InvalidArgument("symmetric tuple test needs 4-tuples");
    if (conjugate(t[3], t[2]) == t[3].inverse())
      return t;
  }
  return std::nullopt;
}

GeneratingTuple find_tuple(const RamificationType &type, std::uint64_t seed,
                           std::uint64_t attempts) {
  const std::size_t r = type.length();
  if (r < 3)
    throw InvalidArgument("tuple search needs r >= 3");
  const PermGroup &G = type.group();
  const auto &classes = type.classes();
  std::mt19937_64 rng(seed);
  for (std::uint64_t a = 0; a < attempts; ++a) {
    std::vector<Permutation> t{classes[0].representative()};
    for (std::size_t k = 1; k + 1 < r; ++k)
      t.push_back(conjugate(classes[k].representative(), G.random_element(rng)));
    t.push_back(tuple_product(t).inverse());
    if (classes[r - 1].contains(t.back()) && generates(t, G))
      return GeneratingTuple::unchecked(G, std::move(t));
  }
  throw BudgetExceeded("no tuple found in " + std::to_string(attempts) + " attempts");
}

} // namespace hurwitz
