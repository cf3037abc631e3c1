#include "hilbq/partition_expr.hpp"

#include <cctype>

#include "hilbq/hilbop.hpp"

namespace hilbq {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
    bool try_consume(const std::string& word) {
        skip_ws();
        if (s.compare(pos, word.size(), word) == 0) {
            size_t end = pos + word.size();
            // keyword must not continue as an identifier
            if (end >= s.size() || !(std::isalnum(static_cast<unsigned char>(s[end])) ||
                                     s[end] == '_' || s[end] == '\''))
                return (pos = end, true);
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_' || s[pos] == '\''))
            ++pos;
        if (pos == start) throw ParseError("expected identifier", pos);
        return s.substr(start, pos - start);
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return std::stol(s.substr(start, pos - start));
    }
};

SurfaceClass named_class(const SurfaceModel& s, const std::string& name, size_t pos) {
    try {
        return s.cls(name);
    } catch (const std::exception&) {
        throw ParseError("unknown class '" + name + "'", pos);
    }
}

FockVector parse_expr(const SurfaceModel& s, int n, Cursor& c);

FockVector macro_W(const SurfaceModel& s, int n, size_t pos) {
    if (n != 2) throw ParseError("macro 'W' is defined for n = 2 only", pos);
    // q1(sigma)q1(1) v + q1(a)q1(b) v: the fiber of the sum map on P^1 x E
    FockVector v;
    FockVector t1 = nakajima_apply(s, 1, s.cls("sigma"),
                                   nakajima_apply(s, 1, s.cls("one"), FockVector::vacuum()));
    v += t1;
    // odd part exists only when the model carries the E-factor odd classes
    try {
        SurfaceClass a = s.cls("a");
        SurfaceClass b = s.cls("b");
        v += nakajima_apply(s, 1, a, nakajima_apply(s, 1, b, FockVector::vacuum()));
    } catch (const std::exception&) {
        throw ParseError("macro 'W' needs odd classes named a, b", pos);
    }
    return v;
}

FockVector macro_delta(const SurfaceModel& s, int n) {
    // delta = -1/2 * 1/(n-2)! q2(1) q1(1)^{n-2} v
    FockVector v = FockVector::vacuum();
    SurfaceClass one = s.cls("one");
    for (int i = 0; i < n - 2; ++i) v = nakajima_apply(s, 1, one, v);
    v = nakajima_apply(s, 2, one, v);
    return TScalar(Rational(-1, 2) / Rational(factorial(n - 2))) * v;
}

FockVector macro_divisor(const SurfaceModel& s, int n, const SurfaceClass& x) {
    // D(x) = 1/(n-1)! q1(x) q1(1)^{n-1} v
    FockVector v = FockVector::vacuum();
    SurfaceClass one = s.cls("one");
    for (int i = 0; i < n - 1; ++i) v = nakajima_apply(s, 1, one, v);
    v = nakajima_apply(s, 1, x, v);
    return TScalar(Rational(1) / Rational(factorial(n - 1))) * v;
}

FockVector apply_fock_matrix(const SurfaceModel& s, int n, const FockMatrix& m,
                             const FockVector& v) {
    auto basis = fock_basis(s, n);
    std::map<FockMonomial, int> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    FockVector out;
    for (const auto& [key, c] : m) {
        auto [row, col] = key;
        TScalar x = v.coeff(basis[col]);
        if (!x.is_zero()) out.add(basis[row], c * x);
    }
    return out;
}

FockVector parse_atom(const SurfaceModel& s, int n, Cursor& c) {
    size_t pos = c.pos;
    if (c.try_consume("cup")) {
        c.expect('(');
        // first argument: a divisor-type expression
        size_t dpos = c.pos;
        bool is_delta = c.try_consume("delta");
        SurfaceClass x;
        if (!is_delta) {
            if (!c.try_consume("D"))
                throw ParseError("cup: first argument must be D(class) or delta", dpos);
            c.expect('(');
            size_t npos = c.pos;
            x = named_class(s, c.ident(), npos);
            c.expect(')');
        }
        c.expect(',');
        FockVector rhs = parse_expr(s, n, c);
        c.expect(')');
        FockMatrix m = is_delta ? lehn_delta(s, n) : lehn_divisor(s, x, n);
        return apply_fock_matrix(s, n, m, rhs);
    }
    if (c.try_consume("unit")) return hilb_unit(s, n);
    if (c.try_consume("pointclass")) {
        WeightedPartition wp;
        for (int i = 0; i < n; ++i) wp.push_back({1, s.cls("point")});
        return partition_class(s, wp);
    }
    if (c.try_consume("W")) return macro_W(s, n, pos);
    if (c.try_consume("delta")) {
        if (n < 2) throw ParseError("macro 'delta' needs n >= 2", pos);
        return macro_delta(s, n);
    }
    if (c.try_consume("D")) {
        c.expect('(');
        size_t npos = c.pos;
        SurfaceClass x = named_class(s, c.ident(), npos);
        c.expect(')');
        return macro_divisor(s, n, x);
    }
    if (c.peek() == '(') {
        // weighted partition: sequence of (part, class) pairs
        WeightedPartition wp;
        while (c.peek() == '(') {
            c.expect('(');
            size_t ppos = c.pos;
            long part = c.integer();
            if (part < 1) throw ParseError("parts must be >= 1", ppos);
            c.expect(',');
            size_t npos = c.pos;
            SurfaceClass x = named_class(s, c.ident(), npos);
            c.expect(')');
            wp.push_back({static_cast<int>(part), x});
        }
        FockVector v = partition_class(s, wp);
        int lvl = 0;
        for (const auto& [p, cls] : wp) lvl += p;
        if (lvl != n)
            throw ParseError("partition has size " + std::to_string(lvl) +
                                 ", expected " + std::to_string(n),
                             pos);
        return v;
    }
    throw ParseError("expected expression", c.pos);
}

FockVector parse_expr(const SurfaceModel& s, int n, Cursor& c) {
    return parse_atom(s, n, c);
}

}  // namespace

FockVector parse_partition_expr(const SurfaceModel& s, int n, const std::string& text) {
    Cursor c{text};
    FockVector v = parse_expr(s, n, c);
    if (!c.eof()) throw ParseError("trailing input", c.pos);
    return v;
}

}  // namespace hilbq
