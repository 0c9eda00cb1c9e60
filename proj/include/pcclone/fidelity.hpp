#ifndef PCCLONE_FIDELITY_HPP_INCLUDED
#define PCCLONE_FIDELITY_HPP_INCLUDED

#include "pcclone/cloner.hpp"
#include "pcclone/states.hpp"
#include "pcclone/symspace.hpp"
#include "pcclone/types.hpp"

namespace pcc {

enum class FidelityMethod { simulation, closed_form };

struct FidelityReport {
    int d;
    int n_in;
    int m_out;
    int k;
    double f_single; // one output clone against the input state
    double f_global; // full M-clone output against the ideal product
    double f_limit;  // phase-estimation asymptote (k -> infinity)
    FidelityMethod method;
};

/// One-body reduced density matrix of a symmetric M-qudit state, computed in
/// occupation algebra without expanding the tensor product:
///   rho1[a,b] = (1/M) sum_n conj(psi_{n-e_a+e_b}) psi_n sqrt(n_a ((n-e_a)_b + 1))
/// The index convention (which side carries the conjugate) is locked by the
/// brute-force partial-trace oracle in the verify module.
CMat reduced_onebody(const SymVector& v);

/// <psi(phi)| rho_1 |psi(phi)> for the machine's output. Phase independent.
double single_fidelity_sim(const ClonerSpec& spec, const PhaseVector& phases);

/// |<psi(phi)^{(x)M} | output>|^2. Phase independent.
double global_fidelity_sim(const ClonerSpec& spec, const PhaseVector& phases);

/// Closed form for 1 -> M = kd+1: 1/d + (d-1)(M+d-1)/(M d^2).
double closed_single_1M(int d, int k);

/// Closed form for N -> M = N+kd: 1/d plus the exact combinatorial sum over
/// occupation vectors with N-1 particles and ordered level pairs. No sampling.
double closed_single_NM(int d, int n_in, int k);

/// Exact global fidelity of the optimal machine (uniform block), evaluated in
/// log space so large M stays finite: the squared total overlap amplitude
/// sum_n sqrt(mult(M; n+k) mult(N; n)) / d^{(M+N)/2}.
double closed_global_NM(int d, int n_in, int k);

/// Fidelity of optimal multi-phase estimation: the k -> infinity limit of
/// closed_single_NM at fixed d and N.
double phase_estimation_fidelity(int d, int n_in);

/// Literature comparison curve for the SU(d)-covariant (universal) cloner:
/// N/M + (M-N)(N+1)/(M(N+d)). Not derived here; plumbing for figure output.
double universal_fidelity(int d, int n_in, int m_out);

/// Assembles a report via the requested route. The simulation route also
/// evaluates the closed forms and throws if they disagree beyond 1e-10;
/// a silent discrepancy would invalidate every downstream number.
FidelityReport fidelity_report(const ClonerSpec& spec, const PhaseVector& phases,
                               FidelityMethod method);

} // namespace pcc

#endif // PCCLONE_FIDELITY_HPP_INCLUDED
