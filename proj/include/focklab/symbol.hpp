#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "focklab/errors.hpp"

namespace focklab {

using cplx = std::complex<double>;

// One monomial-with-envelope term: coef * z^a * zbar^b * e^{-s|z|^2}.
struct SymbolTerm {
    cplx coef{1.0, 0.0};
    int z_pow = 0;
    int zb_pow = 0;
    double gauss_rate = 0.0;
};

enum class Builtin { none, inv_z_outside_unit, conj_inv_z_outside_unit };

// Symbol f on C: a finite sum of SymbolTerms plus at most one piecewise-radial
// builtin (invz: 1/z for |z| >= 1, else 0). Conjugation and scaling are exact
// structural operations. The textual grammar round-trips bit-exactly:
//   sum of terms "C * z^A * zb^B * gauss(S)", builtin "invz", wrapper "conj(...)".
class SymbolFunction {
public:
    SymbolFunction() = default;
    explicit SymbolFunction(std::vector<SymbolTerm> terms, Builtin b = Builtin::none,
                            cplx builtin_coef = {1.0, 0.0});

    static SymbolFunction parse(std::string_view text);
    std::string print() const;

    cplx operator()(cplx z) const;

    SymbolFunction conjugate() const;
    SymbolFunction scaled(cplx c) const;

    const std::vector<SymbolTerm>& terms() const { return terms_; }
    Builtin builtin() const { return builtin_; }
    cplx builtin_coef() const { return builtin_coef_; }

    bool has_builtin() const { return builtin_ != Builtin::none; }
    bool is_zero() const;
    // Entire holomorphic symbols: pure z-polynomials, no envelope, no builtin.
    bool is_entire_holomorphic() const;

    int max_total_degree() const;
    int max_zb_degree() const;
    // Weakest Gaussian envelope across terms; 0 if any term (or builtin) lacks one.
    double min_gauss_rate() const;

private:
    std::vector<SymbolTerm> terms_;
    Builtin builtin_ = Builtin::none;
    cplx builtin_coef_{1.0, 0.0};
};

namespace grammar {
// %.17g formatting, the round-trip-safe float form used everywhere in the grammar.
std::string format_double(double v);
std::string format_complex(cplx v);
} // namespace grammar

} // namespace focklab
