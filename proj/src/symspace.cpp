#include "pcclone/symspace.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pcc {

namespace {

void check_domain(int n, int d) {
    if (d < 2) throw std::invalid_argument("symspace: dimension d must be >= 2");
    if (n < 0) throw std::invalid_argument("symspace: particle number n must be >= 0");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("symspace: integer overflow in combinatorial product");
    return r;
}

// C(n, k), exact. The running value after step j is C(n-k+j, j), always integral.
std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (std::uint64_t j = 1; j <= k; ++j) {
        c = checked_mul(c, n - k + j) / j;
    }
    return c;
}

// Compositions of n into `parts` non-negative parts; parts >= 1 (internal use).
std::int64_t compositions(int n, int parts) {
    std::uint64_t c = checked_binomial(static_cast<std::uint64_t>(n + parts - 1),
                                       static_cast<std::uint64_t>(parts - 1));
    if (c > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        throw std::overflow_error("symspace: symmetric dimension exceeds int64 range");
    return static_cast<std::int64_t>(c);
}

void emit_compositions(int n, int parts, std::vector<int>& prefix,
                       std::vector<Occupation>& out) {
    if (parts == 1) {
        prefix.push_back(n);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int c = n; c >= 0; --c) {
        prefix.push_back(c);
        emit_compositions(n - c, parts - 1, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)), total_(0) {
    if (counts_.size() < 2)
        throw std::invalid_argument("Occupation: needs at least 2 levels");
    for (int c : counts_) {
        if (c < 0) throw std::invalid_argument("Occupation: counts must be non-negative");
        total_ += c;
    }
}

Occupation Occupation::shifted(int level, int delta) const {
    std::vector<int> c = counts_;
    c[static_cast<std::size_t>(level)] += delta;
    return Occupation(std::move(c));
}

std::string Occupation::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) os << ',';
        os << counts_[i];
    }
    os << ')';
    return os.str();
}

std::vector<Occupation> enumerate_occupations(int n, int d) {
    check_domain(n, d);
    std::vector<Occupation> out;
    out.reserve(static_cast<std::size_t>(sym_dim(n, d)));
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(d));
    emit_compositions(n, d, prefix, out);
    return out;
}

std::int64_t sym_dim(int n, int d) {
    check_domain(n, d);
    return compositions(n, d);
}

std::uint64_t multinomial(const Occupation& occ) {
    // total! / prod n_i! = prod_i C(n_0+...+n_i, n_i)
    std::uint64_t result = 1;
    std::uint64_t seen = 0;
    for (int i = 0; i < occ.levels(); ++i) {
        seen += static_cast<std::uint64_t>(occ[i]);
        result = checked_mul(result, checked_binomial(seen, static_cast<std::uint64_t>(occ[i])));
    }
    return result;
}

double multinomial_ln(const Occupation& occ) {
    double v = std::lgamma(static_cast<double>(occ.total()) + 1.0);
    for (int i = 0; i < occ.levels(); ++i)
        v -= std::lgamma(static_cast<double>(occ[i]) + 1.0);
    return v;
}

double multinomial_as_double(const Occupation& occ) {
    if (occ.total() <= 20) return static_cast<double>(multinomial(occ));
    return std::exp(multinomial_ln(occ));
}

std::int64_t occupation_rank(const Occupation& occ) {
    const int d = occ.levels();
    std::int64_t rank = 0;
    int rem = occ.total();
    for (int i = 0; i + 1 < d; ++i) {
        // every vector with a larger count at slot i precedes occ
        for (int c = rem; c > occ[i]; --c)
            rank += compositions(rem - c, d - i - 1);
        rem -= occ[i];
    }
    return rank;
}

Occupation occupation_unrank(std::int64_t rank, int n, int d) {
    check_domain(n, d);
    if (rank < 0 || rank >= sym_dim(n, d))
        throw std::invalid_argument("occupation_unrank: rank out of range");
    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    int rem = n;
    for (int i = 0; i + 1 < d; ++i) {
        for (int c = rem; c >= 0; --c) {
            std::int64_t cnt = compositions(rem - c, d - i - 1);
            if (rank < cnt) {
                counts[static_cast<std::size_t>(i)] = c;
                rem -= c;
                break;
            }
            rank -= cnt;
        }
    }
    counts[static_cast<std::size_t>(d - 1)] = rem;
    return Occupation(std::move(counts));
}

SymVector::SymVector(int n_, int d_, CVec amps_) : n(n_), d(d_), amps(std::move(amps_)) {
    check_domain(n, d);
    if (amps.size() != sym_dim(n, d))
        throw std::invalid_argument("SymVector: amplitude count does not match sym_dim(n,d)");
}

SymVector SymVector::zero(int n, int d) {
    return SymVector(n, d, CVec::Zero(sym_dim(n, d)));
}

SymVector SymVector::basis(const Occupation& occ) {
    SymVector v = zero(occ.total(), occ.levels());
    v.amps(occupation_rank(occ)) = cplx(1.0, 0.0);
    return v;
}

bool SymVector::is_normalized(double tol) const {
    return std::abs(amps.squaredNorm() - 1.0) <= tol;
}

CVec expand_to_full(const SymVector& v, std::size_t cap) {
    const int n = v.n;
    const int d = v.d;
    double full_size = std::pow(static_cast<double>(d), n);
    if (full_size > static_cast<double>(cap))
        throw resource_error("expand_to_full: d^n exceeds the configured oracle cap");
    const std::size_t total = static_cast<std::size_t>(full_size + 0.5);

    // per-basis-state arrangement amplitude sqrt(prod n_i!/n!) = 1/sqrt(multinomial)
    const auto occs = enumerate_occupations(n, d);
    std::vector<double> weight(occs.size());
    for (std::size_t r = 0; r < occs.size(); ++r)
        weight[r] = 1.0 / std::sqrt(static_cast<double>(multinomial(occs[r])));

    CVec full = CVec::Zero(static_cast<Eigen::Index>(total));
    std::vector<int> counts(static_cast<std::size_t>(d));
    for (std::size_t t = 0; t < total; ++t) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rest = t;
        for (int s = 0; s < n; ++s) {
            counts[rest % static_cast<std::size_t>(d)]++;
            rest /= static_cast<std::size_t>(d);
        }
        const std::int64_t r = occupation_rank(Occupation(counts));
        full(static_cast<Eigen::Index>(t)) =
            v.amps(r) * weight[static_cast<std::size_t>(r)];
    }
    return full;
}

} // namespace pcc
