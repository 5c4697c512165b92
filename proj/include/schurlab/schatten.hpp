#ifndef SCHURLAB_SCHATTEN_HPP
#define SCHURLAB_SCHATTEN_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace schurlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

class SchattenError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An exponent in [1, infinity]. Infinity is a distinguished tag, never a
// large float.
class PNorm {
  public:
    PNorm() : value_(2.0), inf_(false) {}
    explicit PNorm(double p) : value_(p), inf_(false) {
        if (!(p >= 1.0) || !std::isfinite(p)) throw SchattenError("p must be in [1, inf)");
    }
    static PNorm infinity() {
        PNorm p;
        p.inf_ = true;
        p.value_ = 0.0;
        return p;
    }
    static PNorm parse(const std::string& text);

    bool is_inf() const { return inf_; }
    double value() const {
        if (inf_) throw SchattenError("value() of the infinity exponent");
        return value_;
    }
    // Conjugate exponent: 1/p + 1/q = 1, with 1 <-> infinity.
    PNorm conjugate() const {
        if (inf_) return PNorm(1.0);
        if (value_ == 1.0) return infinity();
        return PNorm(value_ / (value_ - 1.0));
    }
    double reciprocal() const { return inf_ ? 0.0 : 1.0 / value_; }
    std::string str() const;

    bool operator==(const PNorm& o) const { return inf_ == o.inf_ && value_ == o.value_; }

  private:
    double value_;
    bool inf_;
};

// Throws if any entry is NaN or infinite.
void require_finite(const Matrix& A, const char* what = "matrix");

// Singular values in decreasing order. Hermitian matrices go through a
// self-adjoint eigensolver, everything else through an SVD.
Eigen::VectorXd singular_values(const Matrix& A);

// (sum sigma_i^p)^{1/p}, resp. max sigma_i for p = infinity.
double schatten_norm(const Matrix& A, const PNorm& p);

// For even integer p: Tr((A*A)^{p/2})^{1/p} computed by matrix powers,
// without an SVD. Cross-check path for schatten_norm.
double schatten_norm_even_trace(const Matrix& A, int p_even);

// Sum_{s,t} A_{s,t} B_{t,s} = Tr(AB). Inner dimensions must match and the
// product must be square.
Complex trace_pairing(const Matrix& A, const Matrix& B);

// Entrywise product; shapes must agree.
Matrix schur_product(const Matrix& S, const Matrix& A);

// ||A||_p ||B||_q - |Tr(AB)|; nonnegative by Hoelder up to roundoff.
double holder_gap(const Matrix& A, const Matrix& B, const PNorm& p);

// U diag(sigma^r) V* from the SVD of A (entrywise power of the singular
// values, keeping the singular vectors). r > 0; zero singular values map
// to zero.
Matrix singular_power(const Matrix& A, double r);

// The norming element for the Schatten p-norm under the sesquilinear
// Hilbert-Schmidt pairing: G with ||G||_q = 1 and Re Tr(G* A) = ||A||_p.
Matrix norming_element(const Matrix& A, const PNorm& p);

}  // namespace schurlab

#endif
