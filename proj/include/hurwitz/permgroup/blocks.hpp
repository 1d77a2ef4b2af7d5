#pragma once

#include <vector>

#include "hurwitz/permgroup/perm_group.hpp"

namespace hurwitz {

/// A partition of the points into blocks; blocks and their points sorted.
using BlockSystem = std::vector<std::vector<Permutation::Point>>;

/// Finest block system in which a and b share a block (union-find closure
/// under the generators).
BlockSystem block_system_joining(const PermGroup &group, Permutation::Point a,
                                 Permutation::Point b);

/// All minimal nontrivial block systems of a transitive group, sorted by
/// block size and then lexicographically. Empty for primitive groups.
/// Throws InvalidArgument for intransitive groups.
std::vector<BlockSystem> block_systems(const PermGroup &group);

/// Blocks of equal size partitioning all points and permuted by every generator.
bool is_block_system(const PermGroup &group, const BlockSystem &blocks);

} // namespace hurwitz
