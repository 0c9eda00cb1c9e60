#include "pcclone/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcc {

namespace {

// All fidelity sums have positive terms; adding them smallest-first keeps the
// accumulation error at the few-ulp level.
double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

} // namespace

CMat reduced_onebody(const SymVector& v) {
    if (!v.is_normalized(1e-9))
        throw std::invalid_argument("reduced_onebody: state must be normalized");
    const int d = v.d;
    const int m = v.n;
    const auto occs = enumerate_occupations(m, d);

    // counts -> amplitude index, keyed as raw bytes (counts never exceed 255)
    auto key_of = [](const std::vector<int>& counts) {
        std::string key(counts.size(), '\0');
        for (std::size_t i = 0; i < counts.size(); ++i)
            key[i] = static_cast<char>(counts[i]);
        return key;
    };
    std::unordered_map<std::string, Eigen::Index> index;
    index.reserve(occs.size() * 2);
    for (std::size_t r = 0; r < occs.size(); ++r)
        index.emplace(key_of(occs[r].counts()), static_cast<Eigen::Index>(r));

    CMat rho = CMat::Zero(d, d);
    std::vector<int> counts;
    for (std::size_t r = 0; r < occs.size(); ++r) {
        const cplx amp = v.amps(static_cast<Eigen::Index>(r));
        if (amp == cplx(0.0, 0.0)) continue;
        counts = occs[r].counts();
        for (int a = 0; a < d; ++a) {
            if (counts[static_cast<std::size_t>(a)] == 0) continue;
            counts[static_cast<std::size_t>(a)]--; // move one particle from a ...
            for (int b = 0; b < d; ++b) {
                const double factor =
                    std::sqrt((counts[static_cast<std::size_t>(a)] + 1.0) *
                              (counts[static_cast<std::size_t>(b)] + 1.0));
                counts[static_cast<std::size_t>(b)]++; // ... to b
                const Eigen::Index target = index.at(key_of(counts));
                counts[static_cast<std::size_t>(b)]--;
                rho(a, b) += std::conj(v.amps(target)) * amp * factor;
            }
            counts[static_cast<std::size_t>(a)]++;
        }
    }
    rho /= static_cast<double>(m);
    return rho;
}

double single_fidelity_sim(const ClonerSpec& spec, const PhaseVector& phases) {
    const QuditState psi = make_equatorial(phases);
    const CMat rho1 = reduced_onebody(clone(spec, phases));
    return (psi.amps.adjoint() * rho1 * psi.amps)(0, 0).real();
}

double global_fidelity_sim(const ClonerSpec& spec, const PhaseVector& phases) {
    const SymVector ideal = embed_product(make_equatorial(phases), spec.m_out());
    const cplx overlap = (ideal.amps.adjoint() * clone(spec, phases).amps)(0, 0);
    return std::norm(overlap);
}

double closed_single_1M(int d, int k) {
    if (d < 2) throw std::invalid_argument("closed_single_1M: d must be >= 2");
    if (k < 0) throw std::invalid_argument("closed_single_1M: k must be >= 0");
    const double m = static_cast<double>(k) * d + 1.0;
    return 1.0 / d + (d - 1.0) * (m + d - 1.0) / (m * d * d);
}

double closed_single_NM(int d, int n_in, int k) {
    if (d < 2) throw std::invalid_argument("closed_single_NM: d must be >= 2");
    if (n_in < 1) throw std::invalid_argument("closed_single_NM: n_in must be >= 1");
    if (k < 0) throw std::invalid_argument("closed_single_NM: k must be >= 0");
    const double m = static_cast<double>(n_in) + static_cast<double>(k) * d;

    std::vector<double> terms;
    for (const Occupation& n : enumerate_occupations(n_in - 1, d)) {
        const double weight =
            static_cast<double>(n_in) * multinomial_as_double(n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                const double num = (n[i] + k + 1.0) * (n[j] + k + 1.0);
                const double den = (n[i] + 1.0) * (n[j] + 1.0);
                terms.push_back(weight * std::sqrt(num / den));
            }
    }
    const double off_diag = sorted_sum(terms);
    return 1.0 / d + off_diag / (m * std::pow(static_cast<double>(d), n_in + 1));
}

double closed_global_NM(int d, int n_in, int k) {
    if (d < 2) throw std::invalid_argument("closed_global_NM: d must be >= 2");
    if (n_in < 1) throw std::invalid_argument("closed_global_NM: n_in must be >= 1");
    if (k < 0) throw std::invalid_argument("closed_global_NM: k must be >= 0");
    const int m_out = n_in + k * d;
    const double log_d = std::log(static_cast<double>(d));

    std::vector<double> terms;
    for (const Occupation& n : enumerate_occupations(n_in, d)) {
        Occupation out = n;
        for (int i = 0; i < d; ++i) out = out.shifted(i, k);
        const double log_term = 0.5 * (multinomial_ln(out) + multinomial_ln(n)) -
                                0.5 * (m_out + n_in) * log_d;
        terms.push_back(std::exp(log_term));
    }
    const double amplitude = sorted_sum(terms);
    return amplitude * amplitude;
}

double phase_estimation_fidelity(int d, int n_in) {
    if (d < 2) throw std::invalid_argument("phase_estimation_fidelity: d must be >= 2");
    if (n_in < 1) throw std::invalid_argument("phase_estimation_fidelity: n_in must be >= 1");

    std::vector<double> terms;
    for (const Occupation& n : enumerate_occupations(n_in - 1, d)) {
        const double weight =
            static_cast<double>(n_in) * multinomial_as_double(n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                terms.push_back(weight / std::sqrt((n[i] + 1.0) * (n[j] + 1.0)));
            }
    }
    const double off_diag = sorted_sum(terms);
    return 1.0 / d + off_diag / std::pow(static_cast<double>(d), n_in + 2);
}

double universal_fidelity(int d, int n_in, int m_out) {
    if (d < 2) throw std::invalid_argument("universal_fidelity: d must be >= 2");
    if (n_in < 1 || m_out < n_in)
        throw std::invalid_argument("universal_fidelity: need M >= N >= 1");
    const double n = n_in;
    const double m = m_out;
    return n / m + (m - n) * (n + 1.0) / (m * (n + d));
}

FidelityReport fidelity_report(const ClonerSpec& spec, const PhaseVector& phases,
                               FidelityMethod method) {
    const double closed_single = closed_single_NM(spec.d, spec.n_in, spec.k);
    const double closed_global = closed_global_NM(spec.d, spec.n_in, spec.k);
    FidelityReport report{spec.d,        spec.n_in,     spec.m_out(),
                          spec.k,        closed_single, closed_global,
                          phase_estimation_fidelity(spec.d, spec.n_in),
                          method};
    if (method == FidelityMethod::simulation) {
        const double sim_single = single_fidelity_sim(spec, phases);
        const double sim_global = global_fidelity_sim(spec, phases);
        if (std::abs(sim_single - closed_single) > 1e-10 ||
            std::abs(sim_global - closed_global) > 1e-10)
            throw std::runtime_error(
                "fidelity_report: simulation and closed form disagree beyond 1e-10");
        report.f_single = sim_single;
        report.f_global = sim_global;
    }
    return report;
}

} // namespace pcc
