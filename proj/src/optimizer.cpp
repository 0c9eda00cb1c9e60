#include "pcclone/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pcc {

namespace {

void check_block(const Occupation& block, int d, int n_in, int m_out) {
    if (d < 2 || n_in < 1 || m_out < n_in)
        throw std::invalid_argument("optimizer: need M >= N >= 1 and d >= 2");
    if (block.levels() != d || block.total() != m_out - n_in)
        throw std::invalid_argument("optimizer: block total must be M-N");
}

double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

// Log-space overlap weight of one (block, occupation) pair in the global sum.
double global_log_term(const Occupation& block, const Occupation& n, int m_out,
                       int n_in, int d) {
    Occupation out = n;
    for (int i = 0; i < d; ++i) out = out.shifted(i, block[i]);
    return multinomial_ln(out) + multinomial_ln(n) -
           (m_out + n_in) * std::log(static_cast<double>(d));
}

} // namespace

std::vector<Occupation> enumerate_blocks(int d, int excess) {
    return enumerate_occupations(excess, d);
}

double block_single_fidelity(const Occupation& block, int d, int n_in, int m_out) {
    check_block(block, d, n_in, m_out);
    const double m = static_cast<double>(m_out);
    const double dim_scale = std::pow(static_cast<double>(d), n_in + 1);

    // Diagonal contributions: one per N-particle occupation, independent of
    // the block because the output-overlap factorials cancel exactly.
    std::vector<double> diag;
    for (const Occupation& n : enumerate_occupations(n_in, d))
        diag.push_back(multinomial_as_double(n) / dim_scale);
    double fidelity = sorted_sum(diag);

    // Off-diagonal contributions, one per (occupation of N-1, ordered pair).
    std::vector<double> off;
    for (const Occupation& n : enumerate_occupations(n_in - 1, d)) {
        const double weight =
            static_cast<double>(n_in) * multinomial_as_double(n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                const double num =
                    (block[i] + n[i] + 1.0) * (block[j] + n[j] + 1.0);
                const double den = (n[i] + 1.0) * (n[j] + 1.0);
                off.push_back(weight * std::sqrt(num / den));
            }
    }
    fidelity += sorted_sum(off) / (m * dim_scale);
    return fidelity;
}

double block_global_fidelity(const Occupation& block, int d, int n_in, int m_out) {
    check_block(block, d, n_in, m_out);
    std::vector<double> terms;
    for (const Occupation& n : enumerate_occupations(n_in, d))
        terms.push_back(std::exp(0.5 * global_log_term(block, n, m_out, n_in, d)));
    const double amplitude = sorted_sum(terms);
    return amplitude * amplitude;
}

double block_global_fidelity_diagonal(const Occupation& block, int d, int n_in,
                                      int m_out) {
    check_block(block, d, n_in, m_out);
    std::vector<double> terms;
    for (const Occupation& n : enumerate_occupations(n_in, d))
        terms.push_back(std::exp(global_log_term(block, n, m_out, n_in, d)));
    return sorted_sum(terms);
}

BlockSearchResult find_optimal_blocks(int d, int n_in, int m_out, Merit merit) {
    if (d < 2 || n_in < 1 || m_out < n_in)
        throw std::invalid_argument("find_optimal_blocks: need M >= N >= 1 and d >= 2");

    BlockSearchResult result{merit, {}, {}, false};
    for (const Occupation& block : enumerate_blocks(d, m_out - n_in)) {
        result.scores.push_back(
            {block, block_single_fidelity(block, d, n_in, m_out),
             block_global_fidelity(block, d, n_in, m_out),
             block_global_fidelity_diagonal(block, d, n_in, m_out)});
    }

    auto score_of = [merit](const BlockScore& s) {
        return merit == Merit::single ? s.f_single_block : s.f_global_block;
    };
    double best = 0.0;
    for (const BlockScore& s : result.scores) best = std::max(best, score_of(s));
    const double threshold = best - 1e-9 * std::abs(best);
    for (std::size_t i = 0; i < result.scores.size(); ++i)
        if (score_of(result.scores[i]) >= threshold) result.argmax.push_back(i);

    if (result.argmax.size() == 1) {
        const Occupation& winner = result.scores[result.argmax.front()].block;
        const int excess = m_out - n_in;
        result.is_uniform_singleton =
            excess % d == 0 &&
            std::all_of(winner.counts().begin(), winner.counts().end(),
                        [&](int c) { return c == excess / d; });
    }
    return result;
}

} // namespace pcc
