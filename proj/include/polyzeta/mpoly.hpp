#pragma once

#include "polyzeta/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyzeta {

/// Sparse multivariate polynomial over the rationals. Terms map exponent
/// vectors (length = arity) to nonzero coefficients.
class MPoly {
public:
    using Expo = std::vector<int>;

    explicit MPoly(int arity = 1) : arity_(arity) {
        if (arity < 1) throw std::invalid_argument("MPoly: arity must be >= 1");
    }

    static MPoly constant(int arity, const Rational& c) {
        MPoly p(arity);
        if (c != 0) p.terms_[Expo(static_cast<std::size_t>(arity), 0)] = c;
        return p;
    }

    static MPoly variable(int arity, int index, const Rational& scale = Rational(1)) {
        if (index < 0 || index >= arity) throw std::invalid_argument("MPoly: bad variable index");
        MPoly p(arity);
        Expo e(static_cast<std::size_t>(arity), 0);
        e[static_cast<std::size_t>(index)] = 1;
        if (scale != 0) p.terms_[e] = scale;
        return p;
    }

    /// c0 + sum_i c_i X_i.
    static MPoly linear(int arity, const std::vector<Rational>& coeffs, const Rational& c0) {
        if (static_cast<int>(coeffs.size()) != arity) throw std::invalid_argument("MPoly::linear: size mismatch");
        MPoly p = constant(arity, c0);
        for (int i = 0; i < arity; ++i) p += variable(arity, i, coeffs[static_cast<std::size_t>(i)]);
        return p;
    }

    int arity() const { return arity_; }
    const std::map<Expo, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Expo& e, const Rational& c) {
        if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("MPoly: exponent arity mismatch");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.check_same(b);
        MPoly r(a.arity_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Expo e(ea);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly operator*(const Rational& c) const {
        MPoly r(arity_);
        if (c == 0) return r;
        for (const auto& [e, coef] : terms_) r.terms_[e] = coef * c;
        return r;
    }
    MPoly operator-() const { return *this * Rational(-1); }

    bool operator==(const MPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }

    int degree_in(int var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(var)]);
        return d;  // -1 for the zero polynomial
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    Rational eval(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != arity_) throw std::invalid_argument("MPoly::eval: arity mismatch");
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t *= rat_pow(x[i], static_cast<unsigned long>(e[i]));
            acc += t;
        }
        return acc;
    }

    /// Substitutes X_var -> a*X_var + b exactly.
    MPoly substitute_affine(int var, const Rational& a, const Rational& b) const {
        MPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            int d = e[static_cast<std::size_t>(var)];
            // (a X + b)^d expanded by the binomial theorem
            for (int m = 0; m <= d; ++m) {
                Rational coef = c * rat_of(binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(m))) *
                                rat_pow(a, static_cast<unsigned long>(m)) *
                                rat_pow(b, static_cast<unsigned long>(d - m));
                Expo en(e);
                en[static_cast<std::size_t>(var)] = m;
                r.add_term(en, coef);
            }
        }
        return r;
    }

    /// Relabels variables: result(X_1,...,Xp) = this(X_{perm[0]+1}, ..., X_{perm[p-1]+1}).
    MPoly permute_variables(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != arity_) throw std::invalid_argument("MPoly::permute_variables: size");
        MPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            Expo en(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) en[i] = e[static_cast<std::size_t>(perm[i])];
            r.add_term(en, c);
        }
        return r;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += rat_str(c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                std::string nm = i < names.size() ? names[i] : ("X" + std::to_string(i + 1));
                out += "*" + nm;
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
            }
        }
        return out;
    }

private:
    void check_same(const MPoly& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("MPoly: arity mismatch");
    }

    int arity_;
    std::map<Expo, Rational> terms_;
};

/// Rising factorial (X + a)(X + a + 1)...(X + a + L - 1) as a univariate
/// polynomial; the constant 1 when L = 0.
inline MPoly pochhammer(const Rational& offset, long length) {
    if (length < 0) throw std::invalid_argument("pochhammer: length must be >= 0");
    MPoly r = MPoly::constant(1, Rational(1));
    for (long i = 0; i < length; ++i) {
        r *= MPoly::linear(1, {Rational(1)}, offset + Rational(static_cast<long>(i)));
    }
    return r;
}

/// (form + a)(form + a + 1)...(form + a + L - 1) for a linear form in p variables.
inline MPoly pochhammer_linear(const MPoly& form, const Rational& offset, long length) {
    if (length < 0) throw std::invalid_argument("pochhammer_linear: length must be >= 0");
    MPoly r = MPoly::constant(form.arity(), Rational(1));
    for (long i = 0; i < length; ++i) {
        MPoly f = form + MPoly::constant(form.arity(), offset + Rational(static_cast<long>(i)));
        r *= f;
    }
    return r;
}

}  // namespace polyzeta
