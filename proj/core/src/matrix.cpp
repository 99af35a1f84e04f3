#include "chox/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace chox {

IntMat IntMat::identity(long n) {
    IntMat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

IntMat IntMat::operator+(const IntMat& o) const {
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

IntMat IntMat::operator-(const IntMat& o) const {
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

IntMat IntMat::operator-() const {
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
    IntMat m(rows_, o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (long j = 0; j < o.cols_; ++j) {
                const Int& w = o.at(k, j);
                if (w != 0) m.at(i, j) += v * w;
            }
        }
    return m;
}

IntMat IntMat::operator*(const Int& k) const {
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * k;
    return m;
}

IntMat IntMat::transpose() const {
    IntMat m(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

void IntMat::swap_rows(long i, long j) {
    if (i == j) return;
    for (long c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(long i, long j) {
    if (i == j) return;
    for (long r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMat::negate_row(long i) {
    for (long c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMat::negate_col(long i) {
    for (long r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

void IntMat::add_row(long src, long dst, const Int& k) {
    if (k == 0) return;
    for (long c = 0; c < cols_; ++c) at(dst, c) += k * at(src, c);
}

void IntMat::add_col(long src, long dst, const Int& k) {
    if (k == 0) return;
    for (long r = 0; r < rows_; ++r) at(r, dst) += k * at(r, src);
}

namespace {

struct SnfWorker {
    IntMat d, s, t, s_inv, t_inv;

    explicit SnfWorker(const IntMat& a)
        : d(a),
          s(IntMat::identity(a.rows())),
          t(IntMat::identity(a.cols())),
          s_inv(IntMat::identity(a.rows())),
          t_inv(IntMat::identity(a.cols())) {}

    // row dst += k*src on d and s; s_inv absorbs the inverse as a column op
    void row_op(long src, long dst, const Int& k) {
        d.add_row(src, dst, k);
        s.add_row(src, dst, k);
        s_inv.add_col(dst, src, -k);
    }
    void col_op(long src, long dst, const Int& k) {
        d.add_col(src, dst, k);
        t.add_col(src, dst, k);
        t_inv.add_row(dst, src, -k);
    }
    void row_swap(long i, long j) {
        d.swap_rows(i, j);
        s.swap_rows(i, j);
        s_inv.swap_cols(i, j);
    }
    void col_swap(long i, long j) {
        d.swap_cols(i, j);
        t.swap_cols(i, j);
        t_inv.swap_rows(i, j);
    }
    void row_neg(long i) {
        d.negate_row(i);
        s.negate_row(i);
        s_inv.negate_col(i);
    }

    void step(long k) {
        while (true) {
            long pr = -1, pc = -1;
            Int best;
            for (long i = k; i < d.rows(); ++i)
                for (long j = k; j < d.cols(); ++j) {
                    if (d.at(i, j) == 0) continue;
                    Int v = abs(d.at(i, j));
                    if (pr < 0 || v < best) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0) return;
            row_swap(k, pr);
            col_swap(k, pc);
            bool again = false;
            for (long i = k + 1; i < d.rows(); ++i) {
                if (d.at(i, k) == 0) continue;
                Int q = d.at(i, k) / d.at(k, k);
                row_op(k, i, -q);
                if (d.at(i, k) != 0) again = true;
            }
            for (long j = k + 1; j < d.cols(); ++j) {
                if (d.at(k, j) == 0) continue;
                Int q = d.at(k, j) / d.at(k, k);
                col_op(k, j, -q);
                if (d.at(k, j) != 0) again = true;
            }
            if (again) continue;
            // divisibility sweep: pivot must divide the rest of the block
            bool fixed = true;
            for (long i = k + 1; i < d.rows() && fixed; ++i)
                for (long j = k + 1; j < d.cols() && fixed; ++j)
                    if (d.at(i, j) % d.at(k, k) != 0) {
                        row_op(i, k, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d.at(k, k) < 0) row_neg(k);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& a) {
    SnfWorker w(a);
    long n = std::min(a.rows(), a.cols());
    for (long k = 0; k < n; ++k) w.step(k);
    SmithForm out;
    out.d = w.d;
    out.s = w.s;
    out.t = w.t;
    out.s_inv = w.s_inv;
    out.t_inv = w.t_inv;
    for (long k = 0; k < n; ++k) {
        if (w.d.at(k, k) == 0) break;
        out.invariants.push_back(w.d.at(k, k));
        ++out.rank;
    }
    return out;
}

std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& x) {
    std::vector<Int> y(a.rows(), Int(0));
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) y[i] += a.at(i, j) * x[j];
    return y;
}

std::optional<std::vector<Int>> solve(const IntMat& a, const std::vector<Int>& b) {
    SmithForm f = smith_normal_form(a);
    std::vector<Int> c = mat_apply(f.s, b);
    std::vector<Int> y(a.cols(), Int(0));
    for (long i = 0; i < a.rows(); ++i) {
        if (i < f.rank) {
            if (c[i] % f.d.at(i, i) != 0) return std::nullopt;
            y[i] = c[i] / f.d.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return mat_apply(f.t, y);
}

IntMat kernel_basis(const IntMat& a) {
    SmithForm f = smith_normal_form(a);
    long k = a.cols() - f.rank;
    IntMat out(a.cols(), k);
    for (long j = 0; j < k; ++j)
        for (long i = 0; i < a.cols(); ++i) out.at(i, j) = f.t.at(i, f.rank + j);
    return out;
}

HomologySummary homology(const IntMat& d1, const IntMat& d2, std::vector<Int>* witness) {
    IntMat k = kernel_basis(d1);
    // express columns of d2 in the kernel basis: k * y = d2
    long dim_ker = k.cols();
    IntMat y(dim_ker, d2.cols());
    for (long j = 0; j < d2.cols(); ++j) {
        std::vector<Int> col(d2.rows());
        for (long i = 0; i < d2.rows(); ++i) col[i] = d2.at(i, j);
        auto sol = solve(k, col);
        if (!sol) throw std::logic_error("image not contained in kernel: d^2 != 0");
        for (long i = 0; i < dim_ker; ++i) y.at(i, j) = (*sol)[i];
    }
    SmithForm f = smith_normal_form(y);
    HomologySummary h;
    h.betti = dim_ker - f.rank;
    long witness_idx = -1;
    for (long i = 0; i < f.rank; ++i)
        if (!(f.invariants[i] == 1)) {
            h.torsion.push_back(f.invariants[i]);
            if (witness_idx < 0) witness_idx = i;
        }
    if (witness_idx < 0 && h.betti > 0) witness_idx = f.rank;
    if (witness && witness_idx >= 0) {
        // class of k * s_inv * e_witness generates a nonzero summand
        std::vector<Int> e(dim_ker, Int(0));
        e[witness_idx] = 1;
        *witness = mat_apply(k, mat_apply(f.s_inv, e));
    }
    return h;
}

}  // namespace chox
