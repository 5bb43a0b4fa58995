#include "cepqed/expm.hpp"

#include <array>
#include <cmath>

namespace cepqed {

namespace {

Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& A)
{
    static const std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0};
    const Eigen::Index n = A.rows();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd A2 = A * A;
    const Eigen::MatrixXcd A4 = A2 * A2;
    const Eigen::MatrixXcd A6 = A2 * A4;
    Eigen::MatrixXcd U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) +
                              b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    Eigen::MatrixXcd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                         b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
    return (V - U).partialPivLu().solve(V + U);
}

} // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& A)
{
    const double theta13 = 5.371920351148152; // Higham's [13/13] threshold
    const double nrm = A.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    int squarings = 0;
    Eigen::MatrixXcd As = A;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        As /= std::pow(2.0, squarings);
    }
    Eigen::MatrixXcd E = pade13(As);
    for (int i = 0; i < squarings; ++i) {
        E = E * E;
    }
    return E;
}

} // namespace cepqed
