#include "pcclone/cloner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pcc {

namespace {

void check_choi_shape(int d, int n_in, int m_out) {
    if (d < 2) throw std::invalid_argument("cloner: dimension d must be >= 2");
    if (n_in < 1) throw std::invalid_argument("cloner: n_in must be >= 1");
    if (m_out < n_in) throw std::invalid_argument("cloner: m_out must be >= n_in");
    const std::int64_t side = sym_dim(m_out, d) * sym_dim(n_in, d);
    if (side > kMaxChoiSide)
        throw resource_error("cloner: Choi side " + std::to_string(side) +
                             " exceeds the desk-scale cap");
}

} // namespace

ClonerSpec::ClonerSpec(int d_, int n_in_, int k_) : d(d_), n_in(n_in_), k(k_) {
    if (d < 2) throw std::invalid_argument("ClonerSpec: dimension d must be >= 2");
    if (n_in < 1) throw std::invalid_argument("ClonerSpec: n_in must be >= 1");
    if (k < 0) throw std::invalid_argument("ClonerSpec: k must be >= 0");
}

CMat shift_isometry(const ClonerSpec& spec) {
    const int d = spec.d;
    const int n = spec.n_in;
    const int m = spec.m_out();
    const auto in_basis = enumerate_occupations(n, d);
    CMat v = CMat::Zero(sym_dim(m, d), sym_dim(n, d));
    for (std::size_t col = 0; col < in_basis.size(); ++col) {
        Occupation shifted = in_basis[col];
        for (int i = 0; i < d; ++i) shifted = shifted.shifted(i, spec.k);
        v(occupation_rank(shifted), static_cast<Eigen::Index>(col)) = cplx(1.0, 0.0);
    }
    return v;
}

SymVector clone(const ClonerSpec& spec, const PhaseVector& phases) {
    if (phases.levels() != spec.d)
        throw std::invalid_argument("clone: phase vector dimension mismatch");
    const SymVector in = embed_product(make_equatorial(phases), spec.n_in);
    CVec out = shift_isometry(spec) * in.amps;
    return SymVector(spec.m_out(), spec.d, std::move(out));
}

CVec choi_block_vector(int d, int n_in, int m_out, const Occupation& m) {
    check_choi_shape(d, n_in, m_out);
    if (m.levels() != d || m.total() != m_out - n_in)
        throw std::invalid_argument("choi_block_vector: block total must be M-N");
    const std::int64_t dim_n = sym_dim(n_in, d);
    const std::int64_t dim_m = sym_dim(m_out, d);
    CVec r = CVec::Zero(dim_m * dim_n);
    const auto in_basis = enumerate_occupations(n_in, d);
    for (std::size_t i = 0; i < in_basis.size(); ++i) {
        Occupation out_occ = in_basis[i];
        for (int lvl = 0; lvl < d; ++lvl) out_occ = out_occ.shifted(lvl, m[lvl]);
        const std::int64_t row = occupation_rank(out_occ) * dim_n +
                                 static_cast<std::int64_t>(i);
        r(row) = cplx(1.0, 0.0);
    }
    return r;
}

ChoiOperator choi_operator(int d, int n_in, int m_out, const BlockWeightMap& weights) {
    check_choi_shape(d, n_in, m_out);
    if (weights.empty())
        throw std::invalid_argument("choi_operator: no block weights given");
    double total = 0.0;
    for (const auto& [block, p] : weights) {
        if (block.levels() != d || block.total() != m_out - n_in)
            throw std::invalid_argument("choi_operator: block total must be M-N");
        if (p < 0.0)
            throw std::invalid_argument("choi_operator: weights must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("choi_operator: weights must sum to 1");

    const std::int64_t side = sym_dim(m_out, d) * sym_dim(n_in, d);
    ChoiOperator R{d, n_in, m_out, CMat::Zero(side, side), {}};
    for (const auto& [block, p] : weights) {
        R.block_weights.emplace_back(block, p);
        if (p == 0.0) continue;
        const CVec r = choi_block_vector(d, n_in, m_out, block);
        R.matrix.noalias() += p * (r * r.adjoint());
    }
    std::sort(R.block_weights.begin(), R.block_weights.end(),
              [](const auto& a, const auto& b) {
                  return occupation_rank(a.first) < occupation_rank(b.first);
              });
    return R;
}

ChoiOperator optimal_choi(const ClonerSpec& spec) {
    Occupation uniform(std::vector<int>(static_cast<std::size_t>(spec.d), spec.k));
    BlockWeightMap weights;
    weights.emplace(std::move(uniform), 1.0);
    return choi_operator(spec.d, spec.n_in, spec.m_out(), weights);
}

CMat apply_choi(const ChoiOperator& R, const CMat& rho_in) {
    const std::int64_t dim_n = sym_dim(R.n_in, R.d);
    const std::int64_t dim_m = sym_dim(R.m_out, R.d);
    if (rho_in.rows() != dim_n || rho_in.cols() != dim_n)
        throw std::invalid_argument("apply_choi: input dimension mismatch");
    if ((rho_in - rho_in.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("apply_choi: input must be Hermitian");
    if (std::abs(rho_in.trace().real() - 1.0) > 1e-10)
        throw std::invalid_argument("apply_choi: input must have unit trace");
    Eigen::SelfAdjointEigenSolver<CMat> es(rho_in, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("apply_choi: input must be positive");

    // C(O)[a,b] = sum_{n,n1} O[n,n1] R[(a,n),(b,n1)]
    CMat out = CMat::Zero(dim_m, dim_m);
    for (std::int64_t a = 0; a < dim_m; ++a)
        for (std::int64_t b = 0; b < dim_m; ++b) {
            cplx acc(0.0, 0.0);
            for (std::int64_t n = 0; n < dim_n; ++n)
                for (std::int64_t n1 = 0; n1 < dim_n; ++n1)
                    acc += rho_in(n, n1) * R.matrix(a * dim_n + n, b * dim_n + n1);
            out(a, b) = acc;
        }
    return out;
}

CMat extend_to_unitary(const CMat& V) {
    const Eigen::Index rows = V.rows();
    const Eigen::Index cols = V.cols();
    if (rows < cols)
        throw std::invalid_argument("extend_to_unitary: V must be tall or square");
    CMat gram = V.adjoint() * V;
    if ((gram - CMat::Identity(cols, cols)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("extend_to_unitary: input is not an isometry");

    CMat U(rows, rows);
    U.leftCols(cols) = V;
    Eigen::Index filled = cols;
    for (Eigen::Index cand = 0; cand < rows && filled < rows; ++cand) {
        CVec w = CVec::Zero(rows);
        w(cand) = cplx(1.0, 0.0);
        // two projection passes keep the completion orthonormal to machine precision
        for (int pass = 0; pass < 2; ++pass)
            w -= U.leftCols(filled) * (U.leftCols(filled).adjoint() * w);
        const double norm = w.norm();
        if (norm > 1e-6) {
            U.col(filled) = w / norm;
            ++filled;
        }
    }
    if (filled < rows)
        throw std::runtime_error("extend_to_unitary: completion failed");
    return U;
}

} // namespace pcc
