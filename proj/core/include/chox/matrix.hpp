#pragma once

#include <vector>

#include "chox/exact.hpp"

namespace chox {

// Dense matrix over arbitrary-precision integers. Sizes here stay small;
// sparsity lives one level up, in the block structure of graded maps.
class IntMat {
  public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

    static IntMat identity(long n);

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long r, long c) { return a_[r * cols_ + c]; }
    const Int& at(long r, long c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator-() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator*(const Int& k) const;
    IntMat transpose() const;

    void swap_rows(long i, long j);
    void swap_cols(long i, long j);
    void negate_row(long i);
    void negate_col(long i);
    void add_row(long src, long dst, const Int& k);  // row dst += k * row src
    void add_col(long src, long dst, const Int& k);

  private:
    long rows_, cols_;
    std::vector<Int> a_;
};

// S * A * T = D with S, T unimodular; inverses tracked.
struct SmithForm {
    IntMat d, s, t, s_inv, t_inv;
    long rank = 0;
    std::vector<Int> invariants;  // nonzero diagonal, each dividing the next
};

SmithForm smith_normal_form(const IntMat& a);

// Particular integer solution of A x = b, if one exists.
std::optional<std::vector<Int>> solve(const IntMat& a, const std::vector<Int>& b);

// Columns spanning ker(A) over the integers.
IntMat kernel_basis(const IntMat& a);

struct HomologySummary {
    long betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1
    bool trivial() const { return betti == 0 && torsion.empty(); }
};

// Homology at the middle of  C2 --d2--> C1 --d1--> C0  (ker d1 / im d2),
// with an optional representative cycle of some nonzero class.
HomologySummary homology(const IntMat& d1, const IntMat& d2, std::vector<Int>* witness = nullptr);

std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x);

}  // namespace chox
