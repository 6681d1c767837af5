#pragma once

#include "toroidalg/cycfield.hpp"

#include <optional>
#include <vector>

namespace toroidalg {

using Vec = std::vector<CycScalar>;
using Mat = std::vector<Vec>; // row-major

Vec zero_vec(size_t n);
Vec unit_vec(size_t n, size_t k);
bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const CycScalar& s, const Vec& a);
void axpy(Vec& y, const CycScalar& s, const Vec& x); // y += s*x

Mat zero_mat(size_t rows, size_t cols);
Mat identity_mat(size_t n);
Mat matmul(const Mat& a, const Mat& b);
Vec matvec(const Mat& a, const Vec& x);
Mat transpose(const Mat& a);
Mat mat_pow(const Mat& a, long e);

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(Mat& a);
size_t rank(Mat a);
// Basis of {x : a x = 0}, one vector per free column.
std::vector<Vec> nullspace(const Mat& a, size_t cols);
std::optional<Vec> solve(const Mat& a, const Vec& b);
Mat inverse(const Mat& a);

// Coordinates of v in the span of the given basis vectors, if it lies there.
std::optional<Vec> coordinates(const std::vector<Vec>& basis, const Vec& v);
// Basis of the intersection-free span (rows that are independent).
std::vector<Vec> span_basis(const std::vector<Vec>& vs);

} // namespace toroidalg
