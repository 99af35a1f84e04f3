#include "chox/exact.hpp"

namespace chox {

Interval::Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
}

Interval Interval::operator*(const Interval& o) const {
    // nonnegative quantities only
    return Interval(lo * o.lo, hi * o.hi);
}

Interval Interval::max(const Interval& o) const {
    return Interval(lo > o.lo ? lo : o.lo, hi > o.hi ? hi : o.hi);
}

Interval sqrt_enclosure(const Rat& x, unsigned prec_bits) {
    if (x < 0) throw std::domain_error("sqrt of negative rational");
    if (x == 0) return Interval::point(Rat(0));
    Int scale = Int(1) << prec_bits;
    Int scale_sq = scale * scale;
    // floor(sqrt(floor(x * 4^prec))) / 2^prec is a lower bound
    Int num = x.get_num() * scale_sq;
    Int flo_arg = num / x.get_den();
    Int root_lo = sqrt(flo_arg);
    Rat lo(root_lo, scale);
    lo.canonicalize();
    Int root_hi = root_lo + 1;
    Rat hi(root_hi, scale);
    hi.canonicalize();
    // tighten: if root_lo^2 * den == num exactly, sqrt is rational at this scale
    if (root_lo * root_lo * x.get_den() == num) hi = lo;
    return Interval(lo, hi);
}

Interval log_enclosure(const Rat& x, unsigned prec_bits) {
    if (x <= 0) throw std::domain_error("log of nonpositive rational");
    // atanh series: ln(x) = 2 atanh((x-1)/(x+1)), enclosed with explicit tail bound
    Rat z = (x - 1) / (x + 1);
    bool neg = z < 0;
    Rat a = neg ? Rat(-z) : z;  // 0 <= a < 1
    if (a == 0) return Interval::point(Rat(0));
    Rat a2 = a * a;
    Rat term = a, sum = 0;
    unsigned k = 0;
    Rat tail;
    while (true) {
        sum += term / Rat(2 * k + 1);
        term *= a2;
        ++k;
        // tail <= term/(2k+1) * 1/(1-a2)
        tail = (term / Rat(2 * k + 1)) / (1 - a2);
        if (tail.get_num() == 0) break;
        Rat eps(Int(1), Int(1) << prec_bits);
        if (tail < eps) break;
        if (k > 4096) break;
    }
    Rat lo = 2 * sum, hi = 2 * (sum + tail);
    if (neg) return Interval(-hi, -lo);
    return Interval(lo, hi);
}

Length Length::from_sq(const Rat& s) {
    if (s < 0) throw std::domain_error("negative squared length");
    Length v;
    v.sq = s;
    v.box = sqrt_enclosure(s);
    return v;
}

Length Length::operator+(const Length& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Length v;
    v.sq.reset();
    v.box = box + o.box;
    return v;
}

Length Length::max(const Length& o) const {
    if (sq && o.sq) return (*sq >= *o.sq) ? *this : o;
    if (box.definitely_leq(o.box)) return o;
    if (o.box.definitely_leq(box)) return *this;
    // overlapping enclosures of distinct path sums: keep the outer hull
    Length v;
    v.sq.reset();
    v.box = box.max(o.box);
    return v;
}

bool Length::leq_sqrt(const Rat& t) const {
    if (sq) return *sq <= t;
    Interval rt = sqrt_enclosure(t);
    if (box.hi <= rt.lo) return true;
    if (box.lo > rt.hi) return false;
    throw indeterminate_comparison("length vs sqrt comparison undecided at current precision");
}

bool Length::less_sqrt(const Rat& t) const {
    if (sq) return *sq < t;
    Interval rt = sqrt_enclosure(t);
    if (box.hi < rt.lo) return true;
    if (box.lo >= rt.hi) return false;
    throw indeterminate_comparison("length vs sqrt comparison undecided at current precision");
}

bool Length::geq_sqrt(const Rat& t) const {
    if (sq) return *sq >= t;
    Interval rt = sqrt_enclosure(t);
    if (box.lo >= rt.hi) return true;
    if (box.hi < rt.lo) return false;
    throw indeterminate_comparison("length vs sqrt comparison undecided at current precision");
}

bool Length::definitely_less(const Length& o) const {
    if (sq && o.sq) return *sq < *o.sq;
    return box.definitely_less(o.box);
}

bool Length::definitely_leq(const Length& o) const {
    if (sq && o.sq) return *sq <= *o.sq;
    return box.definitely_leq(o.box);
}

std::string rat_string(const Rat& v) {
    return v.get_str();
}

Rat rat_from_string(const std::string& s) {
    Rat v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    v.canonicalize();
    return v;
}

Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out(1);
    Rat b = base;
    unsigned long k = e;
    while (k) {
        if (k & 1) out *= b;
        b *= b;
        k >>= 1;
    }
    return out;
}

}  // namespace chox
