#ifndef PCCLONE_STATES_HPP_INCLUDED
#define PCCLONE_STATES_HPP_INCLUDED

#include <vector>

#include "pcclone/symspace.hpp"
#include "pcclone/types.hpp"

namespace pcc {

/// The d-1 free phases of an equatorial qudit state, stored in radians and
/// reduced into [0, 2pi) on construction. The phase on level 0 is fixed to
/// zero (a global phase carries no information).
class PhaseVector {
public:
    explicit PhaseVector(std::vector<double> phases);

    static PhaseVector zeros(int d);

    int levels() const { return static_cast<int>(phases_.size()) + 1; } // d
    /// Phase on basis level `level`; level 0 always returns 0.
    double angle(int level) const;
    const std::vector<double>& angles() const { return phases_; }

private:
    std::vector<double> phases_;
};

/// A pure qudit state; unit norm within 1e-12 is enforced at construction.
struct QuditState {
    int d;
    CVec amps;

    QuditState(int d_, CVec amps_);
};

/// (|0> + e^{i phi_1}|1> + ... + e^{i phi_{d-1}}|d-1>) / sqrt(d)
QuditState make_equatorial(const PhaseVector& phases);

/// |psi>^{(x) n} written in the symmetric basis: amplitude on {n_i} is
/// sqrt(n!/prod n_i!) * prod_i c_i^{n_i}. Isometric on pure product inputs.
SymVector embed_product(const QuditState& state, int n);

/// Diagonal action of the phase rotation on every qudit: amplitude on {n_i}
/// is multiplied by exp(i sum_{j>=1} n_j phi_j). Norm preserving.
SymVector apply_phases_sym(const PhaseVector& phases, const SymVector& v);

} // namespace pcc

#endif // PCCLONE_STATES_HPP_INCLUDED
