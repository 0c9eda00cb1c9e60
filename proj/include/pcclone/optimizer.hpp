#ifndef PCCLONE_OPTIMIZER_HPP_INCLUDED
#define PCCLONE_OPTIMIZER_HPP_INCLUDED

#include <cstddef>
#include <vector>

#include "pcclone/symspace.hpp"

namespace pcc {

enum class Merit { single, global };

/// Scores of one irreducible block {m_j} at weight p = 1.
struct BlockScore {
    Occupation block;
    double f_single_block;
    double f_global_block;    // full double sum, cross terms included
    double f_global_diagonal; // diagonal-only sum, kept as a diagnostic
};

struct BlockSearchResult {
    Merit merit;
    std::vector<BlockScore> scores;        // canonical block order
    std::vector<std::size_t> argmax;       // indices into scores
    bool is_uniform_singleton;             // argmax == { (k,...,k) }
};

/// All output classes {m_j} with total M-N, canonical order.
std::vector<Occupation> enumerate_blocks(int d, int excess);

/// Single-qudit fidelity of block {m_j} at p = 1: the diagonal occupation sum
/// (which is m-independent and equals 1/d) plus the off-diagonal pair sum.
double block_single_fidelity(const Occupation& block, int d, int n_in, int m_out);

/// Global fidelity of block {m_j} at p = 1: squared modulus of the full
/// summed overlap amplitude, cross terms included.
double block_global_fidelity(const Occupation& block, int d, int n_in, int m_out);

/// Diagonal-only variant of the global sum (drops the cross terms). Retained
/// for comparison; the argmax agrees with the full sum on all tested grids.
double block_global_fidelity_diagonal(const Occupation& block, int d, int n_in,
                                      int m_out);

/// Exhaustive search over all blocks. Ties are detected with relative
/// tolerance 1e-9 and all tied blocks are reported; when M = kd+N the result
/// is the singleton uniform block under both merits.
BlockSearchResult find_optimal_blocks(int d, int n_in, int m_out, Merit merit);

} // namespace pcc

#endif // PCCLONE_OPTIMIZER_HPP_INCLUDED
