#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace zxh {

using cd = std::complex<double>;

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_pow(int64_t base, int64_t exp);
// Non-negative remainder.
int64_t mod(int64_t t, int64_t m);
int64_t gcd64(int64_t a, int64_t b);
// Inverse of a modulo m, error when it does not exist.
int64_t inverse_mod(int64_t a, int64_t m);

class Context {
public:
    explicit Context(int64_t dim);
    Context(int64_t dim, double nu);

    int64_t dim() const { return dim_; }
    double nu() const { return nu_; }
    int64_t lo() const { return lo_; }
    int64_t hi() const { return hi_; }
    int64_t sigma() const { return hi_ + lo_; }
    double total_measure() const { return dim_ * nu_ * nu_; }
    // D * nu^4; equals 1 in the well-tempered case.
    double dnu4() const { return dim_ * nu_ * nu_ * nu_ * nu_; }
    cd omega() const { return omega_pow(1); }
    cd tau() const { return tau_pow(1); }
    bool well_tempered() const { return well_tempered_; }
    static double default_nu(int64_t dim);

    int64_t residue(int64_t t) const;
    int64_t negate(int64_t x) const;
    bool contains(int64_t t) const { return t >= lo_ && t <= hi_; }
    int64_t label(int64_t index) const { return lo_ + index; }
    int64_t index(int64_t label) const { return label - lo_; }

    cd integrate(const std::function<cd(int64_t)>& f) const;
    cd exp_integral(int64_t e) const;
    cd omega_pow(int64_t e) const;
    cd tau_pow(int64_t e) const;
    double nu_pow(int64_t k) const;

private:
    int64_t dim_;
    double nu_;
    int64_t lo_;
    int64_t hi_;
    bool well_tempered_;
};

}  // namespace zxh
