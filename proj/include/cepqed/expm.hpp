#ifndef CEPQED_EXPM_HPP
#define CEPQED_EXPM_HPP

#include <Eigen/Dense>

namespace cepqed {

// Dense matrix exponential, Pade scaling-and-squaring (Higham 2005, [13/13]).
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A);

} // namespace cepqed

#endif
