#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <utility>

namespace quatlat {

/* Closed real interval [lo, hi] with outward MPFR rounding. Every operation
 * yields an interval guaranteed to contain the exact result. */
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Interval(const Interval& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Interval(Interval&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    Interval& operator=(Interval o) noexcept {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~Interval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Interval from_mpq(const mpq_class& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_long(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_, v, MPFR_RNDD);
        mpfr_set_si(r.hi_, v, MPFR_RNDU);
        return r;
    }
    static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t precision() const { return prec_; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(a.prec_);
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(a.prec_);
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a) {
        Interval r(a.prec_);
        mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        Interval r(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        /* lo: min of the four endpoint products rounded down */
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        /* hi: max of the four rounded up */
        mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero())
            throw std::domain_error("interval division by an interval containing zero");
        Interval r(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
        mpfr_div(t, a.lo_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_div(t, a.hi_, b.hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    /* Square root; requires lo >= 0. */
    Interval sqrt() const {
        if (mpfr_sgn(lo_) < 0)
            throw std::domain_error("interval sqrt of a possibly negative interval");
        Interval r(prec_);
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /* Degenerate intervals at the endpoints. */
    Interval lo_point() const {
        Interval r(prec_);
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, lo_, MPFR_RNDU);
        return r;
    }
    Interval hi_point() const {
        Interval r(prec_);
        mpfr_set(r.lo_, hi_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    /* True iff this interval lies strictly left of the other. */
    bool strictly_below(const Interval& o) const {
        return mpfr_cmp(hi_, o.lo_) < 0;
    }

    /* Enclosure padded by 2^-k on both sides. */
    Interval widened(long k) const {
        Interval r(prec_);
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_set_ui_2exp(t, 1, -k, MPFR_RNDU);
        mpfr_sub(r.lo_, lo_, t, MPFR_RNDD);
        mpfr_add(r.hi_, hi_, t, MPFR_RNDU);
        mpfr_clear(t);
        return r;
    }

    Interval abs() const {
        Interval r(prec_);
        if (mpfr_sgn(lo_) >= 0) return *this;
        if (mpfr_sgn(hi_) <= 0) return -*this;
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
        return r;
    }

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    /* +1 certainly positive, -1 certainly negative, 0 undecided */
    int sign() const {
        if (mpfr_sgn(lo_) > 0) return 1;
        if (mpfr_sgn(hi_) < 0) return -1;
        return 0;
    }

    double mid() const {
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_add(t, lo_, hi_, MPFR_RNDN);
        mpfr_div_ui(t, t, 2, MPFR_RNDN);
        double d = mpfr_get_d(t, MPFR_RNDN);
        mpfr_clear(t);
        return d;
    }
    double width() const {
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_sub(t, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(t, MPFR_RNDU);
        mpfr_clear(t);
        return d;
    }
    double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

} // namespace quatlat
