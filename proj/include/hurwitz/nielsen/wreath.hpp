#pragma once

#include "hurwitz/nielsen/tuple.hpp"
#include "hurwitz/permgroup/blocks.hpp"

namespace hurwitz {

/// (s_0, s_1, s_inf) with s_0 s_1 s_inf = 1.
struct BelyiTriple {
  Permutation s0, s1, sinf;
  std::vector<Permutation> entries() const { return {s0, s1, sinf}; }
};

/// Monodromy of f(x^k), k = r-2, for the cover f with monodromy t. Point
/// (j, i) of block j is j*n + i. s_0 shifts the blocks cyclically and applies
/// t_1 on the way back to block 0, so s_0^k acts as t_1 on every block; s_1
/// acts on block j as t_{r-1-j} (1-based entries); s_inf closes the product.
BelyiTriple wreath_belyi_triple(const std::vector<Permutation> &t);
BelyiTriple wreath_belyi_triple(const GeneratingTuple &t);

struct FiberTuple {
  GeneratingTuple tuple;
  /// Maps the point j*n + i of the standard labelling to the triple's point,
  /// so that wreath_belyi_triple(tuple) conjugated by it is the input triple.
  Permutation labelling;
};

/// Inverse of wreath_belyi_triple. The blocks must be permuted as one cycle
/// by s_0 and fixed by s_1. Block 0 is the block of point 1 with its points
/// in increasing order; block j is its image under s_0^j. The tuple's group
/// is the one it generates, which must be transitive.
FiberTuple extract_fiber_tuple(const BelyiTriple &triple, const BlockSystem &blocks);

} // namespace hurwitz
