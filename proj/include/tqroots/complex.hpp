#pragma once

#include "tqroots/precision.hpp"

#include <ostream>

namespace tqroots {

/// Complex number over Real.
struct Complex {
    Real re;
    Real im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by intent
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int r) : re(r), im(0) {}  // NOLINT
    Complex(double r, double i) : re(r), im(i) {}

    static Complex i_times(const Real& y) { return Complex(Real(0), y); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator/=(const Complex& o);
    Complex& operator/=(const Real& s) {
        re /= s;
        im /= s;
        return *this;
    }

    bool is_zero() const { return re == 0 && im == 0; }
};

inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator/(Complex a, const Real& s) { return a /= s; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z);

/// Principal square root (branch cut on the negative real axis, Re >= 0).
Complex sqrt(const Complex& z);

/// z^k for k >= 0 by repeated squaring.
Complex ipow(Complex z, unsigned k);

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace tqroots
