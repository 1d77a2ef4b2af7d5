#include "hurwitz/permgroup/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hurwitz/error.hpp"

namespace hurwitz {

using Point = Permutation::Point;

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (a > b)
      std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

} // namespace

BlockSystem block_system_joining(const PermGroup &group, Point a, Point b) {
  const std::size_t n = group.degree();
  if (a >= n || b >= n)
    throw InvalidArgument("point out of range");
  UnionFind uf(n);
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  if (uf.unite(a, b))
    queue.emplace_back(a, b);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [x, y] = queue[k];
    for (const auto &g : group.generators()) {
      std::size_t gx = uf.find(g[x]), gy = uf.find(g[y]);
      if (uf.unite(gx, gy))
        queue.emplace_back(gx, gy);
    }
  }
  std::vector<std::vector<Point>> by_root(n);
  for (std::size_t i = 0; i < n; ++i)
    by_root[uf.find(i)].push_back(static_cast<Point>(i));
  BlockSystem out;
  for (auto &blk : by_root)
    if (!blk.empty())
      out.push_back(std::move(blk));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlockSystem> block_systems(const PermGroup &group) {
  if (!group.is_transitive())
    throw InvalidArgument("block systems requested for an intransitive group");
  const std::size_t n = group.degree();
  // Block containing 0 for each pair {0, b}.
  std::vector<std::vector<Point>> block0(n);
  std::vector<BlockSystem> systems(n);
  for (std::size_t b = 1; b < n; ++b) {
    systems[b] = block_system_joining(group, 0, static_cast<Point>(b));
    block0[b] = systems[b].front();
  }
  std::set<BlockSystem> found;
  for (std::size_t b = 1; b < n; ++b) {
    if (block0[b].size() == n)
      continue;
    bool minimal = std::all_of(block0[b].begin(), block0[b].end(),
                               [&](Point c) { return c == 0 || block0[c] == block0[b]; });
    if (minimal)
      found.insert(systems[b]);
  }
  std::vector<BlockSystem> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const BlockSystem &x, const BlockSystem &y) {
    return x.front().size() < y.front().size();
  });
  return out;
}

bool is_block_system(const PermGroup &group, const BlockSystem &blocks) {
  const std::size_t n = group.degree();
  if (blocks.empty())
    return false;
  std::vector<std::size_t> block_of(n, SIZE_MAX);
  const std::size_t size = blocks.front().size();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() != size)
      return false;
    for (Point p : blocks[i]) {
      if (p >= n || block_of[p] != SIZE_MAX)
        return false;
      block_of[p] = i;
    }
  }
  if (std::find(block_of.begin(), block_of.end(), SIZE_MAX) != block_of.end())
    return false;
  for (const auto &g : group.generators())
    for (const auto &blk : blocks) {
      std::size_t target = block_of[g[blk.front()]];
      for (Point p : blk)
        if (block_of[g[p]] != target)
          return false;
    }
  return true;
}

} // namespace hurwitz
