#pragma once

#include "polyzeta/mzv.hpp"

#include <vector>

namespace polyzeta {

/// Polynomial in the symbol H (the harmonic number H_N) with ZCombo
/// coefficients. Represents a sequence f(N) with
///     f(N) = sum_d coeff[d](values) * H_N^d + O(N^{-1+eps})  for all eps > 0.
/// Sums and products stay in the class because H^d * O(N^{-1+eps}) is
/// absorbed into O(N^{-1+eps'}); that absorption is this type's contract.
class AsymExp {
public:
    AsymExp() = default;
    explicit AsymExp(ZCombo constant) { set_coeff(0, std::move(constant)); }

    static AsymExp zero() { return AsymExp(); }
    static AsymExp one() { return AsymExp(ZCombo::one()); }
    static AsymExp h_power(int d, const ZCombo& c) {
        AsymExp e;
        e.set_coeff(d, c);
        return e;
    }

    int degree() const { return static_cast<int>(coeff_.size()) - 1; }

    const ZCombo& coeff(int d) const {
        static const ZCombo kZero;
        if (d < 0 || d >= static_cast<int>(coeff_.size())) return kZero;
        return coeff_[static_cast<std::size_t>(d)];
    }

    ZCombo constant_term() const { return coeff(0); }

    void set_coeff(int d, ZCombo c) {
        if (d < 0) throw std::invalid_argument("AsymExp: negative degree");
        if (static_cast<int>(coeff_.size()) <= d) coeff_.resize(static_cast<std::size_t>(d) + 1);
        coeff_[static_cast<std::size_t>(d)] = std::move(c);
        trim();
    }

    bool is_zero() const { return coeff_.empty(); }
    bool is_constant() const { return coeff_.size() <= 1; }

    AsymExp& operator+=(const AsymExp& o) {
        if (coeff_.size() < o.coeff_.size()) coeff_.resize(o.coeff_.size());
        for (std::size_t d = 0; d < o.coeff_.size(); ++d) coeff_[d] += o.coeff_[d];
        trim();
        return *this;
    }
    AsymExp& operator-=(const AsymExp& o) {
        if (coeff_.size() < o.coeff_.size()) coeff_.resize(o.coeff_.size());
        for (std::size_t d = 0; d < o.coeff_.size(); ++d) coeff_[d] -= o.coeff_[d];
        trim();
        return *this;
    }
    friend AsymExp operator+(AsymExp a, const AsymExp& b) { return a += b; }
    friend AsymExp operator-(AsymExp a, const AsymExp& b) { return a -= b; }

    AsymExp operator*(const Rational& c) const {
        AsymExp r;
        if (c == 0) return r;
        r.coeff_.resize(coeff_.size());
        for (std::size_t d = 0; d < coeff_.size(); ++d) r.coeff_[d] = coeff_[d] * c;
        r.trim();
        return r;
    }
    AsymExp operator-() const { return *this * Rational(-1); }

    friend AsymExp operator*(const AsymExp& a, const AsymExp& b) {
        AsymExp r;
        if (a.is_zero() || b.is_zero()) return r;
        r.coeff_.resize(a.coeff_.size() + b.coeff_.size() - 1);
        for (std::size_t i = 0; i < a.coeff_.size(); ++i)
            for (std::size_t j = 0; j < b.coeff_.size(); ++j) r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
        r.trim();
        return r;
    }

    /// Multiplies by the symbol H (degree shift).
    AsymExp shifted_by_h() const {
        AsymExp r;
        if (is_zero()) return r;
        r.coeff_.resize(coeff_.size() + 1);
        for (std::size_t d = 0; d < coeff_.size(); ++d) r.coeff_[d + 1] = coeff_[d];
        return r;
    }

    bool operator==(const AsymExp& o) const { return coeff_ == o.coeff_; }

    AsymExp normalized() const {
        AsymExp r;
        r.coeff_.resize(coeff_.size());
        for (std::size_t d = 0; d < coeff_.size(); ++d) r.coeff_[d] = normalize(coeff_[d]);
        r.trim();
        return r;
    }

    /// Exact value of the H-polynomial at a rational point, with the given
    /// word values substituted; used by finite-N oracles where everything
    /// stays rational.
    std::string str() const {
        if (coeff_.empty()) return "0";
        std::string out;
        for (std::size_t d = coeff_.size(); d-- > 0;) {
            if (coeff_[d].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeff_[d].str() + ")";
            if (d == 1) out += "*H";
            if (d > 1) out += "*H^" + std::to_string(d);
        }
        return out.empty() ? "0" : out;
    }

private:
    void trim() {
        while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
    }

    std::vector<ZCombo> coeff_;
};

}  // namespace polyzeta
