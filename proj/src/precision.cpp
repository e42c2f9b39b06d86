#include "necklab/precision.hpp"

#include <algorithm>
#include <cmath>

namespace necklab::num {

double Real::log_abs() const {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_log(t, v_, MPFR_RNDN);  // mpfr_log of negative -> NaN; caller guards
    mpfr_t a;
    mpfr_init2(a, mpfr_get_prec(v_));
    mpfr_abs(a, v_, MPFR_RNDN);
    mpfr_log(t, a, MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    mpfr_clear(a);
    return r;
}

std::string Real::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

double Interval::mid_double() const {
    mpfr_t m;
    mpfr_init2(m, mpfr_get_prec(lo_));
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double r = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return r;
}

double Interval::log_lower() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("Interval::log_lower: lower endpoint <= 0");
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_log(t, lo_, MPFR_RNDD);
    double r = mpfr_get_d(t, MPFR_RNDD);
    mpfr_clear(t);
    return r;
}

Real Interval::lower_real() const {
    Real r(bits());
    mpfr_set(r.raw(), lo_, MPFR_RNDD);
    return r;
}

Real Interval::upper_real() const {
    Real r(bits());
    mpfr_set(r.raw(), hi_, MPFR_RNDU);
    return r;
}

double Interval::width_double() const {
    mpfr_t w;
    mpfr_init2(w, mpfr_get_prec(lo_));
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
}

std::string Interval::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "[%.*Rg, %.*Rg]", digits, lo_, digits, hi_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.bits(), b.bits()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.bits(), b.bits()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.bits());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const int bits = std::max(a.bits(), b.bits());
    Interval r(bits);
    // min over the four endpoint products rounded down, max rounded up
    mpfr_t p, best;
    mpfr_init2(p, bits);
    mpfr_init2(best, bits);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(p, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(p, best) < 0) mpfr_set(best, p, MPFR_RNDD);
            first = false;
        }
    mpfr_set(r.lo_, best, MPFR_RNDD);
    first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(p, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(p, best) > 0) mpfr_set(best, p, MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.hi_, best, MPFR_RNDU);
    mpfr_clear(p);
    mpfr_clear(best);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("Interval division by interval containing zero");
    const int bits = std::max(a.bits(), b.bits());
    Interval r(bits);
    mpfr_t p, best;
    mpfr_init2(p, bits);
    mpfr_init2(best, bits);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(p, as[i], bs[j], MPFR_RNDD);
            if (first || mpfr_cmp(p, best) < 0) mpfr_set(best, p, MPFR_RNDD);
            first = false;
        }
    mpfr_set(r.lo_, best, MPFR_RNDD);
    first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(p, as[i], bs[j], MPFR_RNDU);
            if (first || mpfr_cmp(p, best) > 0) mpfr_set(best, p, MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.hi_, best, MPFR_RNDU);
    mpfr_clear(p);
    mpfr_clear(best);
    return r;
}

Interval exp(const Interval& a) {
    Interval r(a.bits());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& a) {
    if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("Interval sqrt of interval with negative lower end");
    Interval r(a.bits());
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval exp_interval(double x, int bits) { return exp(Interval(x, bits)); }

}  // namespace necklab::num
