// Weight vectors for the counting problem: exact surd representation
// (sum of rational multiples of square roots) with a numeric mirror at the
// configured precision, named presets, parsing, normalization and inclines.
#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sxc/real.hpp"
#include "sxc/surd.hpp"
#include "sxc/util.hpp"

namespace sxc {

class Weights {
  public:
    static Weights from_surds(std::vector<Surd> w, prec_t prec = kDefaultPrecBits) {
        Weights out;
        out.prec_ = prec;
        for (const Surd& s : w)
            if (s.sign() <= 0) throw Error("weights must be positive");
        out.surd_ = std::move(w);
        for (const Surd& s : out.surd_) out.numeric_.push_back(s.to_real(prec));
        return out;
    }

    /// Raw numeric weights: exact boundary decisions unavailable.
    static Weights from_reals(std::vector<Real> w) {
        Weights out;
        out.prec_ = w.empty() ? kDefaultPrecBits : w[0].prec();
        for (const Real& x : w)
            if (x.sign() <= 0) throw Error("weights must be positive");
        out.numeric_ = std::move(w);
        return out;
    }

    /// Named presets with algebraic, Q-linearly-independent entries.
    static Weights preset(const std::string& name, prec_t prec = kDefaultPrecBits) {
        auto phi = [] { return Surd(mpq_class(1, 2)) + Surd::radical(mpq_class(1, 2), 5); };
        if (name == "sqrt2") return from_surds({Surd(1), Surd::sqrt_of(2)}, prec);
        if (name == "golden" || name == "phi") return from_surds({Surd(1), phi()}, prec);
        if (name == "sqrt23")
            return from_surds({Surd(1), Surd::sqrt_of(2), Surd::sqrt_of(3)}, prec);
        if (name == "sqrt235")
            return from_surds({Surd::sqrt_of(2), Surd::sqrt_of(3), Surd::sqrt_of(5)}, prec);
        if (name == "sqrt1235")
            return from_surds(
                {Surd(1), Surd::sqrt_of(2), Surd::sqrt_of(3), Surd::sqrt_of(5)}, prec);
        throw ConfigError("unknown preset '" + name +
                          "' (known: sqrt2, golden, sqrt23, sqrt235, sqrt1235)");
    }

    /// Parses "1,sqrt2,sqrt3", "1,phi", "3/2,2*sqrt5", "1+sqrt2,2", "1.25,2".
    static Weights parse(const std::string& spec, prec_t prec = kDefaultPrecBits) {
        std::vector<Surd> w;
        size_t pos = 0;
        while (pos <= spec.size()) {
            size_t comma = spec.find(',', pos);
            std::string tok =
                spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (!tok.empty()) w.push_back(parse_component(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (w.empty()) throw ConfigError("empty weight list '" + spec + "'");
        return from_surds(std::move(w), prec);
    }

    unsigned dim() const { return static_cast<unsigned>(numeric_.size()); }
    bool exact() const { return !surd_.empty(); }
    prec_t prec() const { return prec_; }

    const Surd& surd(unsigned j) const {
        require_exact();
        return surd_[j];
    }
    const std::vector<Surd>& surds() const {
        require_exact();
        return surd_;
    }
    const Real& real(unsigned j) const { return numeric_[j]; }
    const std::vector<Real>& reals() const { return numeric_; }

    /// All weights rational => all inclines rational (degenerate for the
    /// Diophantine machinery).
    bool rational() const {
        if (!exact()) return false;
        for (const Surd& s : surd_)
            if (!s.is_rational()) return false;
        return true;
    }

    Real norm2() const {
        Real acc = Real::with_prec(prec_);
        for (const Real& x : numeric_) acc += x * x;
        return sqrt(acc);
    }

    /// Unit normalization w / |w|_2 at working precision.
    std::vector<Real> unit() const {
        Real n = norm2();
        std::vector<Real> out;
        out.reserve(numeric_.size());
        for (const Real& x : numeric_) out.push_back(x / n);
        return out;
    }

    /// Incline theta_{j,l} = w_l / w_j, exact.
    Surd incline_surd(unsigned j, unsigned l) const {
        require_exact();
        return surd_[l] / surd_[j];
    }
    Real incline_real(unsigned j, unsigned l) const { return numeric_[l] / numeric_[j]; }

    /// w . m for an integer vector m (exact when weights are exact).
    Surd dot_surd(const std::vector<long>& m) const {
        require_exact();
        Surd acc;
        for (size_t j = 0; j < surd_.size(); ++j) acc += surd_[j] * Surd(m[j]);
        return acc;
    }
    Real dot_real(const std::vector<Real>& x) const {
        Real acc = Real::with_prec(prec_);
        for (size_t j = 0; j < numeric_.size(); ++j) acc += numeric_[j] * x[j];
        return acc;
    }

    /// w . e_1 = sum of weights.
    Surd sum_surd() const {
        require_exact();
        Surd acc;
        for (const Surd& s : surd_) acc += s;
        return acc;
    }
    Real sum_real() const {
        Real acc = Real::with_prec(prec_);
        for (const Real& x : numeric_) acc += x;
        return acc;
    }
    Real prod_real() const {
        Real acc = Real(1, prec_);
        for (const Real& x : numeric_) acc *= x;
        return acc;
    }

    std::string str() const {
        std::string out;
        for (unsigned j = 0; j < dim(); ++j) {
            if (j) out += ",";
            out += exact() ? surd_[j].str() : numeric_[j].str(8);
        }
        return out;
    }

  private:
    void require_exact() const {
        if (!exact())
            throw UnsupportedRepresentation("operation requires exact (surd) weights");
    }

    // one component: '+'-joined parts, each  rational | rational*sqrtN | sqrtN | phi
    static Surd parse_component(const std::string& tok) {
        Surd acc;
        size_t pos = 0;
        while (pos <= tok.size()) {
            size_t plus = tok.find('+', pos);
            std::string part =
                tok.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
            acc += parse_part(part);
            if (plus == std::string::npos) break;
            pos = plus + 1;
        }
        return acc;
    }

    static Surd parse_part(std::string part) {
        // strip spaces
        std::string s;
        for (char c : part)
            if (!isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw ConfigError("empty weight token");
        if (s == "phi") return Surd(mpq_class(1, 2)) + Surd::radical(mpq_class(1, 2), 5);
        mpq_class coef = 1;
        size_t star = s.find('*');
        if (star != std::string::npos) {
            coef = parse_rational(s.substr(0, star));
            s = s.substr(star + 1);
        }
        if (s.rfind("sqrt", 0) == 0) {
            long n = std::stol(s.substr(4));
            if (n <= 0) throw ConfigError("sqrt radicand must be positive");
            return Surd::radical(coef, n);
        }
        return Surd(coef * parse_rational(s));
    }

    static mpq_class parse_rational(const std::string& s) {
        size_t slash = s.find('/');
        if (slash != std::string::npos) {
            mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
            q.canonicalize();
            return q;
        }
        size_t dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            size_t frac_len = s.size() - dot - 1;
            mpz_class den = 1;
            for (size_t i = 0; i < frac_len; ++i) den *= 10;
            mpq_class q(mpz_class(digits), den);
            q.canonicalize();
            return q;
        }
        return mpq_class(mpz_class(s));
    }

    std::vector<Surd> surd_;
    std::vector<Real> numeric_;
    prec_t prec_ = kDefaultPrecBits;
};

/// Shift vector u with its margin delta; exact rational coordinates.
struct ShiftVector {
    std::vector<mpq_class> u;
    mpq_class delta = mpq_class(1, 10);

    static ShiftVector from_doubles(const std::vector<double>& v,
                                    const mpq_class& delta = mpq_class(1, 10)) {
        ShiftVector s;
        s.delta = delta;
        for (double x : v) s.u.emplace_back(x);
        for (auto& q : s.u) q.canonicalize();
        return s;
    }

    /// Fractional parts {u_j}, exact.
    std::vector<mpq_class> frac() const {
        std::vector<mpq_class> out;
        out.reserve(u.size());
        for (const mpq_class& q : u) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            mpq_class r = q - mpq_class(f);
            r.canonicalize();
            out.push_back(r);
        }
        return out;
    }

    /// Every coordinate at distance >= delta from the integers.
    bool in_margin_set() const {
        for (const mpq_class& q : u) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            mpq_class fr = q - mpq_class(f);
            mpq_class dist = fr <= mpq_class(1, 2) ? fr : mpq_class(1) - fr;
            if (dist < delta) return false;
        }
        return true;
    }
};

}  // namespace sxc
