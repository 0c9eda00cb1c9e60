#ifndef PCCLONE_TYPES_HPP_INCLUDED
#define PCCLONE_TYPES_HPP_INCLUDED

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pcc {

using cplx = std::complex<double>;

// Dense linear algebra objects; Eigen is the only math dependency.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1>;

// Thrown when a computation would exceed a configured desk-scale cap
// (full tensor-product expansions, dense Choi operators).
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pcc

#endif // PCCLONE_TYPES_HPP_INCLUDED
