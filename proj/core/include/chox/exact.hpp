#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>

namespace chox {

using Int = mpz_class;
using Rat = mpq_class;

// Enclosure of a nonnegative real by rational endpoints, rounded outward.
struct Interval {
    Rat lo, hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rat l, Rat h);
    static Interval point(const Rat& v) { return Interval(v, v); }

    Interval operator+(const Interval& o) const { return Interval(lo + o.lo, hi + o.hi); }
    Interval operator*(const Interval& o) const;
    Interval max(const Interval& o) const;

    bool definitely_less(const Interval& o) const { return hi < o.lo; }
    bool definitely_leq(const Interval& o) const { return hi <= o.lo; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    double mid() const { return (lo.get_d() + hi.get_d()) / 2.0; }
};

// Outward enclosure of sqrt(x) for rational x >= 0.
Interval sqrt_enclosure(const Rat& x, unsigned prec_bits = 256);

// Outward enclosure of ln(x) for rational x > 0.
Interval log_enclosure(const Rat& x, unsigned prec_bits = 128);

// A nonnegative length. Keeps the exact square when the value is the square
// root of a rational (single segment); otherwise only the enclosure.
struct Length {
    std::optional<Rat> sq;
    Interval box;

    Length() : sq(Rat(0)), box() {}
    static Length from_sq(const Rat& s);
    static Length zero() { return Length(); }

    Length operator+(const Length& o) const;
    Length max(const Length& o) const;

    bool is_zero() const { return sq && *sq == 0; }

    // value <= sqrt(t), exactly when both squares are known
    bool leq_sqrt(const Rat& t) const;
    bool less_sqrt(const Rat& t) const;
    bool geq_sqrt(const Rat& t) const;

    bool definitely_less(const Length& o) const;
    bool definitely_leq(const Length& o) const;

    double approx() const { return box.mid(); }
};

struct indeterminate_comparison : std::runtime_error {
    explicit indeterminate_comparison(const std::string& m) : std::runtime_error(m) {}
};

std::string rat_string(const Rat& v);
Rat rat_from_string(const std::string& s);
Rat rat_pow(const Rat& base, unsigned long e);

}  // namespace chox
