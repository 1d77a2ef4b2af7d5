#include "hurwitz/nielsen/wreath.hpp"

#include "hurwitz/error.hpp"

namespace hurwitz {

using Point = Permutation::Point;

BelyiTriple wreath_belyi_triple(const std::vector<Permutation> &t) {
  const std::size_t r = t.size();
  if (r < 3)
    throw InvalidArgument("wreath triple needs r >= 3");
  if (!is_product_one(t))
    throw InvalidArgument("tuple entries do not have product one");
  const std::size_t n = t[0].degree(), k = r - 2;
  if (n * k > Permutation::kMaxDegree)
    throw InvalidArgument("wreath triple degree too large");
  std::vector<Point> rho(n * k), b(n * k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      rho[j * n + i] = static_cast<Point>(j + 1 < k ? (j + 1) * n + i : t[0][i]);
      b[j * n + i] = static_cast<Point>(j * n + t[r - 2 - j][i]);
    }
  BelyiTriple out{Permutation(std::move(rho)), Permutation(std::move(b)), {}};
  out.sinf = compose(out.s0, out.s1).inverse();
  return out;
}

BelyiTriple wreath_belyi_triple(const GeneratingTuple &t) {
  return wreath_belyi_triple(t.entries());
}

FiberTuple extract_fiber_tuple(const BelyiTriple &triple, const BlockSystem &blocks) {
  const std::size_t N = triple.s0.degree();
  if (triple.s1.degree() != N || triple.sinf.degree() != N)
    throw InvalidArgument("triple entries have different degrees");
  if (!is_product_one(triple.entries()))
    throw InvalidArgument("triple does not have product one");
  const std::size_t k = blocks.size();
  if (k < 1 || N % k != 0)
    throw InvalidArgument("block system does not divide the degree");
  const std::size_t n = N / k;
  std::vector<std::size_t> block_of(N, SIZE_MAX);
  for (std::size_t b = 0; b < k; ++b) {
    if (blocks[b].size() != n)
      throw InvalidArgument("blocks have unequal sizes");
    for (Point p : blocks[b]) {
      if (p >= N || block_of[p] != SIZE_MAX)
        throw InvalidArgument("blocks do not partition the points");
      block_of[p] = b;
    }
  }
  for (std::size_t p = 0; p < N; ++p) {
    if (block_of[triple.s1[p]] != block_of[p])
      throw InvalidArgument("s_1 does not fix every block");
    for (std::size_t q : blocks[block_of[p]])
      if (block_of[triple.s0[q]] != block_of[triple.s0[p]])
        throw InvalidArgument("s_0 does not permute the blocks");
  }
  // Labels: point (j, i) = s_0^j(p_i).
  const auto &b0 = blocks[block_of[0]];
  std::vector<Point> phi(N);
  std::vector<std::size_t> label(N, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    Point p = b0[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0 && block_of[p] == block_of[0])
        throw InvalidArgument("s_0 does not permute the blocks in one cycle");
      phi[j * n + i] = p;
      label[p] = j * n + i;
      p = triple.s0[p];
    }
  }
  std::vector<Permutation> entries;
  {
    std::vector<Point> tau(n);
    for (std::size_t i = 0; i < n; ++i) {
      Point p = b0[i];
      for (std::size_t j = 0; j < k; ++j)
        p = triple.s0[p];
      if (label[p] >= n)
        throw InvalidArgument("s_0 does not permute the blocks in one cycle");
      tau[i] = static_cast<Point>(label[p]);
    }
    entries.emplace_back(std::move(tau));
  }
  for (std::size_t jj = k; jj-- > 0;) {
    std::vector<Point> a(n);
    for (std::size_t i = 0; i < n; ++i)
      a[i] = static_cast<Point>(label[triple.s1[phi[jj * n + i]]] - jj * n);
    entries.emplace_back(std::move(a));
  }
  entries.push_back(tuple_product(entries).inverse());
  PermGroup group(n, entries);
  if (!group.is_transitive())
    throw InvalidArgument("extracted tuple is not transitive");
  for (const auto &e : entries)
    if (e.is_identity())
      throw InvalidArgument("extracted tuple has an identity entry");
  return {GeneratingTuple::unchecked(group, std::move(entries)), Permutation(std::move(phi))};
}

} // namespace hurwitz
