#include "pcclone/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pcc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// c^e by repeated multiplication; std::pow on complex goes through polar form
// and is not reproducible across libms.
cplx ipow(cplx c, int e) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= c;
    return r;
}

} // namespace

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
    if (phases_.empty())
        throw std::invalid_argument("PhaseVector: needs d-1 >= 1 phases");
    for (double& p : phases_) {
        if (!std::isfinite(p))
            throw std::invalid_argument("PhaseVector: phases must be finite");
        p = std::fmod(p, kTwoPi);
        if (p < 0.0) p += kTwoPi;
    }
}

PhaseVector PhaseVector::zeros(int d) {
    if (d < 2) throw std::invalid_argument("PhaseVector: dimension must be >= 2");
    return PhaseVector(std::vector<double>(static_cast<std::size_t>(d - 1), 0.0));
}

double PhaseVector::angle(int level) const {
    if (level < 0 || level >= levels())
        throw std::invalid_argument("PhaseVector: level out of range");
    return level == 0 ? 0.0 : phases_[static_cast<std::size_t>(level - 1)];
}

QuditState::QuditState(int d_, CVec amps_) : d(d_), amps(std::move(amps_)) {
    if (d < 2) throw std::invalid_argument("QuditState: dimension must be >= 2");
    if (amps.size() != d)
        throw std::invalid_argument("QuditState: amplitude count must equal d");
    if (std::abs(amps.squaredNorm() - 1.0) > 1e-12)
        throw std::invalid_argument("QuditState: state must have unit norm");
}

QuditState make_equatorial(const PhaseVector& phases) {
    const int d = phases.levels();
    CVec amps(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i)
        amps(i) = std::polar(scale, phases.angle(i));
    return QuditState(d, std::move(amps));
}

SymVector embed_product(const QuditState& state, int n) {
    if (n < 1) throw std::invalid_argument("embed_product: n must be >= 1");
    const int d = state.d;
    const auto occs = enumerate_occupations(n, d);
    SymVector out = SymVector::zero(n, d);
    for (std::size_t r = 0; r < occs.size(); ++r) {
        const Occupation& occ = occs[r];
        cplx a(std::sqrt(static_cast<double>(multinomial(occ))), 0.0);
        for (int i = 0; i < d; ++i)
            a *= ipow(state.amps(i), occ[i]);
        out.amps(static_cast<Eigen::Index>(r)) = a;
    }
    return out;
}

SymVector apply_phases_sym(const PhaseVector& phases, const SymVector& v) {
    if (phases.levels() != v.d)
        throw std::invalid_argument("apply_phases_sym: dimension mismatch");
    const auto occs = enumerate_occupations(v.n, v.d);
    SymVector out = v;
    for (std::size_t r = 0; r < occs.size(); ++r) {
        double total = 0.0;
        for (int j = 1; j < v.d; ++j)
            total += occs[r][j] * phases.angle(j);
        out.amps(static_cast<Eigen::Index>(r)) *= std::polar(1.0, total);
    }
    return out;
}

} // namespace pcc
