#include "schurlab/schatten.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace schurlab {

PNorm PNorm::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return PNorm::infinity();
    // Accept small rationals like 4/3.
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            double num = std::stod(text.substr(0, slash));
            double den = std::stod(text.substr(slash + 1));
            return PNorm(num / den);
        }
        return PNorm(std::stod(text));
    } catch (const std::exception&) {
        throw SchattenError("cannot parse exponent '" + text + "'");
    }
}

std::string PNorm::str() const {
    if (inf_) return "inf";
    std::string s = std::to_string(value_);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

void require_finite(const Matrix& A, const char* what) {
    if (!A.allFinite()) throw SchattenError(std::string(what) + " has NaN or infinite entries");
}

namespace {

bool is_hermitian(const Matrix& A, double tol = 1e-13) {
    if (A.rows() != A.cols()) return false;
    double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace

Eigen::VectorXd singular_values(const Matrix& A) {
    require_finite(A);
    if (A.rows() == 0 || A.cols() == 0) return Eigen::VectorXd();
    if (is_hermitian(A)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(A, Eigen::EigenvaluesOnly);
        Eigen::VectorXd sv = es.eigenvalues().cwiseAbs();
        std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
        return sv;
    }
    if (A.rows() >= 96 || A.cols() >= 96) {
        Eigen::BDCSVD<Matrix> svd(A);
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Matrix> svd(A);
    return svd.singularValues();
}

double schatten_norm(const Matrix& A, const PNorm& p) {
    Eigen::VectorXd sv = singular_values(A);
    if (sv.size() == 0) return 0.0;
    if (p.is_inf()) return sv.maxCoeff();
    const double pe = p.value();
    const double top = sv.maxCoeff();
    if (top == 0.0) return 0.0;
    // Factor out the top singular value for a stable power sum.
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i] / top, pe);
    return top * std::pow(acc, 1.0 / pe);
}

double schatten_norm_even_trace(const Matrix& A, int p_even) {
    require_finite(A);
    if (p_even < 2 || p_even % 2 != 0) throw SchattenError("exponent must be a positive even integer");
    Matrix M = A.adjoint() * A;  // positive semidefinite
    Matrix P = Matrix::Identity(M.rows(), M.cols());
    for (int i = 0; i < p_even / 2; ++i) P = P * M;
    double tr = P.trace().real();
    tr = std::max(tr, 0.0);
    return std::pow(tr, 1.0 / p_even);
}

Complex trace_pairing(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows() || A.rows() != B.cols())
        throw SchattenError("trace_pairing: dimensions do not form a square product");
    Complex acc = 0.0;
    for (Eigen::Index s = 0; s < A.rows(); ++s)
        for (Eigen::Index t = 0; t < A.cols(); ++t) acc += A(s, t) * B(t, s);
    return acc;
}

Matrix schur_product(const Matrix& S, const Matrix& A) {
    if (S.rows() != A.rows() || S.cols() != A.cols())
        throw SchattenError("schur_product: shape mismatch");
    return S.cwiseProduct(A);
}

double holder_gap(const Matrix& A, const Matrix& B, const PNorm& p) {
    return schatten_norm(A, p) * schatten_norm(B, p.conjugate()) - std::abs(trace_pairing(A, B));
}

Matrix singular_power(const Matrix& A, double r) {
    require_finite(A);
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd sv = svd.singularValues();
    Eigen::VectorXd pw(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) pw[i] = sv[i] > 0.0 ? std::pow(sv[i], r) : 0.0;
    return svd.matrixU() * pw.asDiagonal() * svd.matrixV().adjoint();
}

Matrix norming_element(const Matrix& A, const PNorm& p) {
    require_finite(A);
    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv.size() == 0 || sv.maxCoeff() == 0.0)
        throw SchattenError("norming_element of the zero matrix");
    if (p.is_inf()) {
        // Top singular dyad, trace-norm one.
        return svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
    }
    if (p.value() == 1.0) {
        // Polar part restricted to the support.
        Eigen::VectorXd mask(sv.size());
        for (Eigen::Index i = 0; i < sv.size(); ++i) mask[i] = sv[i] > 0.0 ? 1.0 : 0.0;
        return svd.matrixU() * mask.asDiagonal() * svd.matrixV().adjoint();
    }
    const double pe = p.value();
    const double norm = schatten_norm(A, p);
    Eigen::VectorXd pw(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        pw[i] = sv[i] > 0.0 ? std::pow(sv[i] / norm, pe - 1.0) : 0.0;
    return svd.matrixU() * pw.asDiagonal() * svd.matrixV().adjoint();
}

}  // namespace schurlab
