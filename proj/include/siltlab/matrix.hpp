#pragma once

#include <vector>

#include "siltlab/field.hpp"

namespace siltlab {

// Dense exact matrix. Linear maps between row spaces are stored so that a
// row vector v maps to v*M; a map V -> W with dim V = r, dim W = c is an
// r x c matrix.
class Matrix {
  public:
    Matrix() : field_(Field::rationals()), rows_(0), cols_(0) {}
    Matrix(Field f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), e_(size_t(rows) * cols, f.zero()) {}

    static Matrix identity(Field f, int n);
    static Matrix zero(Field f, int rows, int cols) { return Matrix(f, rows, cols); }

    const Field& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int r, int c) const { return e_[size_t(r) * cols_ + c]; }
    void set(int r, int c, const Scalar& v) { e_[size_t(r) * cols_ + c] = field_.norm(v); }

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    Matrix pow(unsigned long k) const;

    // Block composition helpers.
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    Matrix submatrix(int r0, int c0, int nrows, int ncols) const;
    Matrix row(int r) const { return submatrix(r, 0, 1, cols_); }
    Matrix cols_selected(const std::vector<int>& idx) const;
    Matrix rows_selected(const std::vector<int>& idx) const;

    std::string str() const;

  private:
    Field field_;
    int rows_, cols_;
    std::vector<Scalar> e_;
};

struct Rref {
    Matrix r;
    std::vector<int> pivots; // pivot column per nonzero row
    int rank = 0;
};

Rref rref(const Matrix& m);
int rank(const Matrix& m);

// Basis of {v column : m v = 0}, returned as the columns of one matrix.
Matrix kernel_basis(const Matrix& m);
// Basis of {v row : v m = 0}, returned as the rows of one matrix.
Matrix left_kernel(const Matrix& m);

// Row-space basis (rows of the returned matrix, in rref form).
Matrix row_space(const Matrix& m);

bool invertible(const Matrix& m);
Matrix inverse(const Matrix& m);

// Solve X * a = b row-wise (each row of b expressed over the rows of a);
// returns false if some row of b is outside the row space of a.
bool solve_left(const Matrix& a, const Matrix& b, Matrix& x);

// Quotient of the full row space K^n by the row space of w: returns the
// n x q projection matrix (rows of w map to zero, q = n - rank w).
Matrix quotient_projection(const Matrix& w, int n);

// Coordinates of v (rows) with respect to basis rows of `basis`
// (basis rows need not be in rref). Throws if not representable.
Matrix coordinates(const Matrix& basis, const Matrix& v);

Matrix random_matrix(Field f, int rows, int cols, Rng& rng);

} // namespace siltlab
