#include "focklab/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace focklab {

namespace {

bool finite_cplx(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Split at top-level occurrences of `sep`, ignoring separators inside parens
// and a '+' that continues a float exponent (1e+3).
std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    char prev_nonspace = '\0';
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        if (depth < 0) throw config_error("symbol parse: unbalanced ')' in '" + std::string(s) + "'");
        if (c == sep && depth == 0) {
            bool exponent_sign = (sep == '+') && (prev_nonspace == 'e' || prev_nonspace == 'E');
            if (!exponent_sign) {
                out.push_back(s.substr(start, i - start));
                start = i + 1;
                prev_nonspace = '\0';
                continue;
            }
        }
        if (!std::isspace(static_cast<unsigned char>(c))) prev_nonspace = c;
    }
    if (depth != 0) throw config_error("symbol parse: unbalanced '(' in '" + std::string(s) + "'");
    out.push_back(s.substr(start));
    return out;
}

double parse_double(std::string_view s, const char* what) {
    std::string buf(trim(s));
    if (buf.empty()) throw config_error(std::string("symbol parse: empty ") + what);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw config_error(std::string("symbol parse: bad ") + what + " '" + buf + "'");
    return v;
}

int parse_nonneg_int(std::string_view s, const char* what) {
    std::string buf(trim(s));
    if (buf.empty()) throw config_error(std::string("symbol parse: empty ") + what);
    char* end = nullptr;
    long v = std::strtol(buf.c_str(), &end, 10);
    if (end != buf.c_str() + buf.size() || v < 0 || v > 1000)
        throw config_error(std::string("symbol parse: bad ") + what + " '" + buf + "' (want integer in [0,1000])");
    return static_cast<int>(v);
}

// number | number'i' | '(' number sign number 'i' ')'
cplx parse_complex(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw config_error("symbol parse: empty coefficient");
    if (s.front() == '(') {
        if (s.back() != ')') throw config_error("symbol parse: bad complex literal '" + std::string(s) + "'");
        std::string inner(trim(s.substr(1, s.size() - 2)));
        if (inner.empty() || inner.back() != 'i')
            throw config_error("symbol parse: complex literal must end in 'i': '" + std::string(s) + "'");
        inner.pop_back();
        // find the sign splitting re and im: last +/- not part of an exponent, not leading
        std::size_t split = std::string::npos;
        for (std::size_t i = inner.size(); i-- > 1;) {
            char c = inner[i];
            if ((c == '+' || c == '-') && inner[i - 1] != 'e' && inner[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos)
            throw config_error("symbol parse: bad complex literal '" + std::string(s) + "'");
        double re = parse_double(std::string_view(inner).substr(0, split), "real part");
        double im = parse_double(std::string_view(inner).substr(split), "imaginary part");
        return {re, im};
    }
    if (s.back() == 'i') {
        double im = parse_double(s.substr(0, s.size() - 1), "imaginary coefficient");
        return {0.0, im};
    }
    return {parse_double(s, "coefficient"), 0.0};
}

} // namespace

namespace grammar {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(cplx v) {
    if (v.imag() == 0.0) return format_double(v.real());
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", v.real(), v.imag());
    return buf;
}

} // namespace grammar

SymbolFunction::SymbolFunction(std::vector<SymbolTerm> terms, Builtin b, cplx builtin_coef)
    : terms_(std::move(terms)), builtin_(b), builtin_coef_(builtin_coef) {
    for (const auto& t : terms_) {
        if (!finite_cplx(t.coef)) throw config_error("symbol: non-finite coefficient");
        if (t.z_pow < 0 || t.zb_pow < 0) throw config_error("symbol: negative power");
        if (!(t.gauss_rate >= 0.0) || !std::isfinite(t.gauss_rate))
            throw config_error("symbol: gauss rate must be a nonnegative finite real");
    }
    if (!finite_cplx(builtin_coef_)) throw config_error("symbol: non-finite builtin coefficient");
}

cplx SymbolFunction::operator()(cplx z) const {
    cplx acc{0.0, 0.0};
    const cplx zb = std::conj(z);
    const double n2 = std::norm(z);
    for (const auto& t : terms_) {
        cplx v = t.coef;
        for (int k = 0; k < t.z_pow; ++k) v *= z;
        for (int k = 0; k < t.zb_pow; ++k) v *= zb;
        if (t.gauss_rate > 0.0) v *= std::exp(-t.gauss_rate * n2);
        acc += v;
    }
    if (builtin_ != Builtin::none && n2 >= 1.0) {
        if (builtin_ == Builtin::inv_z_outside_unit) acc += builtin_coef_ / z;
        else acc += builtin_coef_ / zb;
    }
    return acc;
}

SymbolFunction SymbolFunction::conjugate() const {
    std::vector<SymbolTerm> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({std::conj(t.coef), t.zb_pow, t.z_pow, t.gauss_rate});
    Builtin b = builtin_;
    if (b == Builtin::inv_z_outside_unit) b = Builtin::conj_inv_z_outside_unit;
    else if (b == Builtin::conj_inv_z_outside_unit) b = Builtin::inv_z_outside_unit;
    return SymbolFunction(std::move(ts), b, std::conj(builtin_coef_));
}

SymbolFunction SymbolFunction::scaled(cplx c) const {
    std::vector<SymbolTerm> ts = terms_;
    for (auto& t : ts) t.coef *= c;
    return SymbolFunction(std::move(ts), builtin_, builtin_coef_ * c);
}

bool SymbolFunction::is_zero() const {
    if (builtin_ != Builtin::none && builtin_coef_ != cplx{0.0, 0.0}) return false;
    for (const auto& t : terms_)
        if (t.coef != cplx{0.0, 0.0}) return false;
    return true;
}

bool SymbolFunction::is_entire_holomorphic() const {
    if (builtin_ != Builtin::none && builtin_coef_ != cplx{0.0, 0.0}) return false;
    for (const auto& t : terms_)
        if (t.coef != cplx{0.0, 0.0} && (t.zb_pow > 0 || t.gauss_rate > 0.0)) return false;
    return true;
}

int SymbolFunction::max_total_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.z_pow + t.zb_pow);
    return d;
}

int SymbolFunction::max_zb_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.zb_pow);
    return d;
}

double SymbolFunction::min_gauss_rate() const {
    if (terms_.empty() && builtin_ == Builtin::none) return 0.0;
    double s = builtin_ != Builtin::none ? 0.0 : std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) s = std::min(s, t.gauss_rate);
    return std::isfinite(s) ? s : 0.0;
}

SymbolFunction SymbolFunction::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw config_error("symbol parse: empty input");

    std::vector<SymbolTerm> terms;
    Builtin builtin = Builtin::none;
    cplx builtin_coef{1.0, 0.0};

    auto add_builtin = [&](Builtin b, cplx coef) {
        if (builtin != Builtin::none)
            throw config_error("symbol parse: at most one builtin per symbol");
        builtin = b;
        builtin_coef = coef;
    };

    for (std::string_view addend_raw : split_top_level(text, '+')) {
        std::string_view addend = trim(addend_raw);
        if (addend.empty()) throw config_error("symbol parse: empty addend in '" + std::string(text) + "'");

        if (addend.substr(0, 5) == "conj(" && addend.back() == ')') {
            SymbolFunction inner = parse(addend.substr(5, addend.size() - 6)).conjugate();
            for (const auto& t : inner.terms_) terms.push_back(t);
            if (inner.builtin_ != Builtin::none) add_builtin(inner.builtin_, inner.builtin_coef_);
            continue;
        }

        cplx coef{1.0, 0.0};
        bool saw_coef = false, saw_z = false, saw_zb = false, saw_gauss = false, saw_builtin = false;
        Builtin addend_builtin = Builtin::none;
        SymbolTerm term;

        for (std::string_view factor_raw : split_top_level(addend, '*')) {
            std::string_view f = trim(factor_raw);
            if (f.empty()) throw config_error("symbol parse: empty factor in '" + std::string(addend) + "'");
            if (f == "invz") {
                if (saw_builtin) throw config_error("symbol parse: repeated builtin factor");
                saw_builtin = true;
                addend_builtin = Builtin::inv_z_outside_unit;
            } else if (f == "z" || f.substr(0, 2) == "z^") {
                if (saw_z) throw config_error("symbol parse: repeated z^ factor");
                saw_z = true;
                term.z_pow = (f == "z") ? 1 : parse_nonneg_int(f.substr(2), "z power");
            } else if (f == "zb" || f.substr(0, 3) == "zb^") {
                if (saw_zb) throw config_error("symbol parse: repeated zb^ factor");
                saw_zb = true;
                term.zb_pow = (f == "zb") ? 1 : parse_nonneg_int(f.substr(3), "zb power");
            } else if (f.substr(0, 6) == "gauss(" && f.back() == ')') {
                if (saw_gauss) throw config_error("symbol parse: repeated gauss factor");
                saw_gauss = true;
                term.gauss_rate = parse_double(f.substr(6, f.size() - 7), "gauss rate");
                if (term.gauss_rate < 0.0)
                    throw config_error("symbol parse: gauss rate must be nonnegative");
            } else {
                if (saw_coef) throw config_error("symbol parse: repeated coefficient in '" + std::string(addend) + "'");
                saw_coef = true;
                coef = parse_complex(f);
            }
        }

        if (saw_builtin) {
            if (saw_z || saw_zb || saw_gauss)
                throw config_error("symbol parse: builtin cannot carry z/zb/gauss factors");
            add_builtin(addend_builtin, coef);
        } else {
            term.coef = coef;
            terms.push_back(term);
        }
    }
    return SymbolFunction(std::move(terms), builtin, builtin_coef);
}

std::string SymbolFunction::print() const {
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty()) out += " + ";
        out += s;
    };
    for (const auto& t : terms_) {
        std::string s = grammar::format_complex(t.coef);
        if (t.z_pow > 0) s += " * z^" + std::to_string(t.z_pow);
        if (t.zb_pow > 0) s += " * zb^" + std::to_string(t.zb_pow);
        if (t.gauss_rate != 0.0) s += " * gauss(" + grammar::format_double(t.gauss_rate) + ")";
        append(s);
    }
    if (builtin_ != Builtin::none) {
        const bool wrapped = builtin_ == Builtin::conj_inv_z_outside_unit;
        // conj(...) conjugates what it wraps, so print the pre-conjugation coefficient.
        const cplx printed_coef = wrapped ? std::conj(builtin_coef_) : builtin_coef_;
        std::string s;
        if (printed_coef != cplx{1.0, 0.0}) s = grammar::format_complex(printed_coef) + " * ";
        s += "invz";
        if (wrapped) s = "conj(" + s + ")";
        append(s);
    }
    return out.empty() ? "0" : out;
}

} // namespace focklab
