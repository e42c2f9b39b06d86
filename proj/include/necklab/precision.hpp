// precision.hpp — scalar precision policy: hardware doubles, extended
// precision reals (MPFR) and intervals with certified outward rounding.
//
// The interval type is the backbone of every certification in this
// project: an Interval never reports a sign it cannot guarantee.  All
// endpoint arithmetic is performed with directed rounding (RNDD for the
// lower end, RNDU for the upper end), so a result interval always
// encloses the exact value.  Transcendentals (exp) are enclosed the same
// way; there is no exact rational shortcut for e^{beta L}.

#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace necklab::num {

// Which scalar backend a numeric kernel should run on.
struct ScalarPolicy {
    enum class Kind { Double, Extended, CertifiedInterval };
    Kind kind = Kind::Double;
    int bits = 128;  // mantissa bits for Extended / CertifiedInterval

    static ScalarPolicy hardware() { return {Kind::Double, 53}; }
    static ScalarPolicy extended(int bits) { return {Kind::Extended, bits}; }
    static ScalarPolicy interval(int bits) { return {Kind::CertifiedInterval, bits}; }
};

// ── Real ─────────────────────────────────────────────────────────────────
// RAII wrapper around a single mpfr_t with round-to-nearest semantics.
// Used for extended-precision (non-certified) evaluation, e.g. the Jacobi
// eigenvalue oracle.  The precision travels with the value; binary
// operations produce results at the larger operand precision.
class Real {
  public:
    explicit Real(int bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    Real(double x, int bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x, int bits) { mpfr_init2(v_, bits); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log(|x|) as a double; useful when the value itself overflows double.
    double log_abs() const;
    bool is_positive() const { return mpfr_sgn(v_) > 0; }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }
    bool is_zero() const { return mpfr_zero_p(v_); }
    std::string str(int digits = 20) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend Real operator+(const Real& a, const Real& b) { return bin(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return bin(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return bin(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return bin(a, b, mpfr_div); }
    friend Real operator-(const Real& a) {
        Real r(a.bits());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend Real exp(const Real& a) {
        Real r(a.bits());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.bits());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.bits());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

  private:
    using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(const Real& a, const Real& b, BinOp op) {
        Real r(a.bits() > b.bits() ? a.bits() : b.bits());
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

// ── Interval ─────────────────────────────────────────────────────────────
// [lo, hi] with mpfr endpoints and outward rounding on every operation.
class Interval {
  public:
    explicit Interval(int bits = 128) {
        mpfr_init2(lo_, bits);
        mpfr_init2(hi_, bits);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    // A double converts exactly: degenerate interval.
    Interval(double x, int bits) {
        mpfr_init2(lo_, bits);
        mpfr_init2(hi_, bits);
        mpfr_set_d(lo_, x, MPFR_RNDD);
        mpfr_set_d(hi_, x, MPFR_RNDU);
    }
    Interval(long x, int bits) {
        mpfr_init2(lo_, bits);
        mpfr_init2(hi_, bits);
        mpfr_set_si(lo_, x, MPFR_RNDD);
        mpfr_set_si(hi_, x, MPFR_RNDU);
    }
    Interval(const Interval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(const Interval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
            mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    Interval& operator=(Interval&& o) noexcept {
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    int bits() const { return static_cast<int>(mpfr_get_prec(lo_)); }

    bool definitely_positive() const { return mpfr_sgn(lo_) > 0; }
    bool definitely_negative() const { return mpfr_sgn(hi_) < 0; }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

    double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_double() const;
    // log of the lower endpoint (requires lo > 0); stays finite when the
    // value itself exceeds double range.
    double log_lower() const;
    Real lower_real() const;
    Real upper_real() const;
    double width_double() const;
    std::string str(int digits = 17) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    // Divisor must not contain zero.
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);
    // Monotone enclosure of exp.
    friend Interval exp(const Interval& a);
    // Requires lo >= 0.
    friend Interval sqrt(const Interval& a);

  private:
    mpfr_t lo_, hi_;
};

// Convenience: e^{x} enclosure for an exact double argument.
Interval exp_interval(double x, int bits);

}  // namespace necklab::num
