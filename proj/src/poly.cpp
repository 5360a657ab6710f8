#include "lct/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "lct/errors.hpp"

namespace lct {

Monomial Monomial::variable(std::size_t i) {
    Monomial m;
    m.e[i] = 1;
    return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + other.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - other.e[i];
    return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(e[i], other.e[i]);
    return r;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) {
        if (kind_ == OrderKind::GlobalDegRevLex) return da <=> db;
        return db <=> da;
    }
    // Reverse lexicographic tie break: the monomial with the smaller exponent in the
    // last differing variable is larger.
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.e[i] != b.e[i]) return b.e[i] <=> a.e[i];
    }
    return std::strong_ordering::equal;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars > kMaxVars) throw PreconditionError("at most 8 variables are supported");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial::one(), c);
    return p;
}

Polynomial Polynomial::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw PreconditionError("variable index out of range");
    return monomial(nvars, Monomial::variable(i));
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

int Polynomial::m_adic_order() const {
    int d = kInfiniteOrder;
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
}

Polynomial Polynomial::truncated(int bound) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_)
        if (m.degree() < bound) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

Polynomial Polynomial::derivative(std::size_t i) const {
    if (i >= nvars_) throw PreconditionError("derivative index out of range");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Monomial d = m;
        d.e[i] -= 1;
        r.add_term(d, c * m.e[i]);
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
    Polynomial r(nvars_);
    if (sgn(c) == 0) return r;
    for (const auto& [t, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, v * c);
    return r;
}

Monomial Polynomial::leading_monomial(const MonomialOrder& order) const {
    if (terms_.empty()) throw PreconditionError("leading monomial of zero polynomial");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || order.greater(m, *best)) best = &m;
    return *best;
}

Rational Polynomial::leading_coefficient(const MonomialOrder& order) const {
    return coefficient(leading_monomial(order));
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();  // "p/q", q omitted when 1
}

Rational parse_rational(std::string_view text) {
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) throw PreconditionError("bad rational: " + std::string(text));
    q.canonicalize();
    if (sgn(q.get_den()) == 0) throw PreconditionError("zero denominator");
    return q;
}

std::string Polynomial::to_string(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
    MonomialOrder dp(OrderKind::GlobalDegRevLex);
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& a, const auto& b) { return dp.greater(a.first, b.first); });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : sorted) {
        Rational mag = abs(c);
        if (sgn(c) < 0)
            out += "-";
        else if (!first)
            out += "+";
        first = false;
        bool need_star = false;
        if (m.is_one() || mag != 1) {
            out += rational_to_string(mag);
            need_star = true;
        }
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            if (need_star) out += "*";
            out += i < vars.size() ? vars[i] : "x" + std::to_string(i);
            if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
            need_star = true;
        }
    }
    return out;
}

Polynomial ring_arithmetic(const Polynomial& a, const Polynomial& b, RingOp op) {
    if (a.nvars() != b.nvars()) throw PreconditionError("variable-count mismatch");
    switch (op) {
        case RingOp::Add: return a + b;
        case RingOp::Sub: return a - b;
        case RingOp::Mul: return a * b;
    }
    return {};
}

Polynomial partial_derivative(const Polynomial& p, std::size_t i) { return p.derivative(i); }

int m_adic_order(const Polynomial& p) { return p.m_adic_order(); }

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    Polynomial run() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Polynomial term() {
        Polynomial p = unary();
        for (;;) {
            if (accept('*')) {
                p = p * unary();
            } else if (accept('/')) {
                skip();
                const std::size_t at = pos_;
                Polynomial d = unary();
                if (d.degree() > 0) throw ParseError("division by a non-constant", at);
                Rational c = d.constant_term();
                if (sgn(c) == 0) throw ParseError("division by zero", at);
                p *= Rational(1) / c;
            } else {
                return p;
            }
        }
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (!accept('^')) return base;
        skip();
        const std::size_t at = pos_;
        bool negative = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected integer exponent", pos_);
        if (negative) throw ParseError("negative exponent", at);
        unsigned long e = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + (s_[pos_] - '0');
            if (e > 1000) throw ParseError("exponent too large", at);
            ++pos_;
        }
        Polynomial r = Polynomial::constant(vars_.size(), 1);
        for (unsigned long i = 0; i < e; ++i) r = r * base;
        for (const auto& [m, c] : r.terms())
            for (auto v : m.e)
                if (v > 255) throw ParseError("exponent too large", at);
        return r;
    }

    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Integer z(std::string(s_.substr(start, pos_ - start)));
            return Polynomial::constant(vars_.size(), Rational(z));
        }
        if (is_ident_start(c)) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
            throw ParseError("unknown variable '" + name + "'", start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
    if (vars.empty() || vars.size() > kMaxVars) throw PreconditionError("need between 1 and 8 variables");
    return Parser(text, vars).run();
}

std::vector<std::string> parse_variable_list(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw PreconditionError("empty variable name in list");
        if (!is_ident_start(cur[0])) throw PreconditionError("bad variable name: " + cur);
        for (char ch : cur)
            if (!is_ident_char(ch)) throw PreconditionError("bad variable name: " + cur);
        if (std::find(out.begin(), out.end(), cur) != out.end())
            throw PreconditionError("duplicate variable: " + cur);
        out.push_back(cur);
        cur.clear();
    };
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == ',')
            flush();
        else
            cur += ch;
    }
    flush();
    if (out.size() > kMaxVars) throw PreconditionError("at most 8 variables are supported");
    return out;
}

}  // namespace lct
