#ifndef PCCLONE_CLONER_HPP_INCLUDED
#define PCCLONE_CLONER_HPP_INCLUDED

#include <map>
#include <vector>

#include "pcclone/states.hpp"
#include "pcclone/symspace.hpp"
#include "pcclone/types.hpp"

namespace pcc {

/// One economical N -> M = N + k*d cloning machine. k = 0 is the identity.
struct ClonerSpec {
    int d;
    int n_in;
    int k;

    ClonerSpec(int d_, int n_in_, int k_);
    int m_out() const { return n_in + k * d; }
};

/// Side of the Choi matrix, sym_dim(M,d) * sym_dim(N,d), is capped here;
/// larger blocks are never needed at desk scale.
inline constexpr std::int64_t kMaxChoiSide = 20000;

using BlockWeightMap = std::map<Occupation, double>;

/// Positive operator on H_+^{(x)M} (x) H_+^{(x)N} encoding the cloning channel.
/// Composite index is i_M * sym_dim(N,d) + i_N in occupation rank order.
/// Immutable once built; satisfies trace preservation and phase covariance
/// by construction.
struct ChoiOperator {
    int d;
    int n_in;
    int m_out;
    CMat matrix;
    std::vector<std::pair<Occupation, double>> block_weights; // canonical rank order
};

/// The shift isometry: |{n_i}> -> |{n_i + k}>. One exact unit entry per
/// column, so V^dag V is the identity with no rounding at all.
CMat shift_isometry(const ClonerSpec& spec);

/// V applied to the embedded N-fold equatorial input; unit norm.
SymVector clone(const ClonerSpec& spec, const PhaseVector& phases);

/// |r_{m}> = sum_{n} |{m}+{n}> (x) |{n}>, the unnormalized rank-one block
/// vector for output class {m} (total M-N). Squared norm is sym_dim(N,d).
CVec choi_block_vector(int d, int n_in, int m_out, const Occupation& m);

/// R = sum_m p_m |r_m><r_m| for non-negative weights summing to one.
ChoiOperator choi_operator(int d, int n_in, int m_out, const BlockWeightMap& weights);

/// All weight on the uniform block m_i = k: the optimal machine for M = N+kd.
ChoiOperator optimal_choi(const ClonerSpec& spec);

/// Channel action C(O) = Tr_N[(1_M (x) O^T) R]. Transposition is taken in
/// the canonical occupation basis (it matters: O^T is basis-dependent).
CMat apply_choi(const ChoiOperator& R, const CMat& rho_in);

/// Gram-Schmidt completion of an isometry to a unitary whose first columns
/// equal V. Candidate columns are canonical basis vectors in rank order with
/// a re-orthogonalization pass, so the result is deterministic.
CMat extend_to_unitary(const CMat& V);

} // namespace pcc

#endif // PCCLONE_CLONER_HPP_INCLUDED
