#ifndef PCCLONE_SYMSPACE_HPP_INCLUDED
#define PCCLONE_SYMSPACE_HPP_INCLUDED

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcclone/types.hpp"

namespace pcc {

/// Occupation numbers {n_i}: how many qudits sit in each of the d levels.
/// Labels one basis state of the symmetric subspace of total()-qudit states.
class Occupation {
public:
    explicit Occupation(std::vector<int> counts);

    int levels() const { return static_cast<int>(counts_.size()); } // d
    int total() const { return total_; }                            // particle number
    int operator[](int i) const { return counts_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& counts() const { return counts_; }

    /// Copy with count at `level` changed by `delta` (throws if it would go negative).
    Occupation shifted(int level, int delta) const;

    bool operator==(const Occupation& other) const { return counts_ == other.counts_; }
    auto operator<=>(const Occupation& other) const { return counts_ <=> other.counts_; }

    std::string to_string() const; // "(n_0,n_1,...)"

private:
    std::vector<int> counts_;
    int total_;
};

/// All occupation vectors with `n` particles in `d` levels, in canonical order.
/// Canonical order is lexicographically descending: (n,0,...,0) first,
/// (0,...,0,n) last. Ranks and file outputs follow this order everywhere.
std::vector<Occupation> enumerate_occupations(int n, int d);

/// Dimension of the symmetric subspace: C(n+d-1, d-1).
std::int64_t sym_dim(int n, int d);

/// total! / prod(counts_i!), exact. Throws std::overflow_error past 2^64-1.
std::uint64_t multinomial(const Occupation& occ);

/// log(total! / prod(counts_i!)), for weights too large for exact arithmetic.
double multinomial_ln(const Occupation& occ);

/// Multinomial as a double: exact integer arithmetic while total <= 20 (where
/// the value always fits 64 bits), the log route beyond.
double multinomial_as_double(const Occupation& occ);

/// Position of `occ` in the canonical enumeration.
std::int64_t occupation_rank(const Occupation& occ);

/// Inverse of occupation_rank. Throws on rank outside [0, sym_dim(n,d)).
Occupation occupation_unrank(std::int64_t rank, int n, int d);

/// Amplitudes over the symmetric basis of n qudits in dimension d,
/// indexed by occupation_rank.
struct SymVector {
    int n = 0;
    int d = 2;
    CVec amps;

    SymVector() = default;
    SymVector(int n_, int d_, CVec amps_);

    static SymVector zero(int n, int d);
    /// Basis vector |{occ}>.
    static SymVector basis(const Occupation& occ);

    std::int64_t dim() const { return amps.size(); }
    double norm() const { return amps.norm(); }
    bool is_normalized(double tol = 1e-12) const;
};

inline constexpr std::size_t kDefaultOracleCap = 4096;

/// Expansion into the full d^n tensor-product space, for brute-force checks.
/// Basis label {n_i} spreads amplitude sqrt(prod n_i!/n!) over each of the
/// n!/prod n_i! distinct letter arrangements, so the embedding is isometric.
/// Site s of string index t is digit (t / d^s) mod d.
/// Throws resource_error when d^n exceeds `cap` amplitudes.
CVec expand_to_full(const SymVector& v, std::size_t cap = kDefaultOracleCap);

} // namespace pcc

#endif // PCCLONE_SYMSPACE_HPP_INCLUDED
