#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace linent {

using cxd = std::complex<double>;

// Dense row-major complex matrix. Sized for few-qudit work (d up to a few
// dozen); all operations are plain loops, no blocking or expression
// templates.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<cxd>& data() { return data_; }
    const std::vector<cxd>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cxd scale, const ComplexMatrix& a);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
cxd trace(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
// Largest entry modulus.
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_ij |a(i,j) - conj(a(j,i))|
double hermiticity_defect(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

}  // namespace linent
