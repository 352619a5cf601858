#include "parampac/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "parampac/error.hpp"

namespace parampac {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        std::size_t j = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = src.substr(i, j - i);
        } else if (is_digit(c) || (c == '.' && j + 1 < src.size() && is_digit(src[j + 1]))) {
            while (j < src.size() && is_digit(src[j])) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && is_digit(src[j])) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && is_digit(src[k])) {
                    while (k < src.size() && is_digit(src[k])) ++k;
                    j = k;
                }
            }
            t.kind = Tok::Number;
            t.text = src.substr(i, j - i);
        } else if (c == '"') {
            ++j;
            std::string value;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') {
                if (src[j] == '\\' && j + 1 < src.size()) ++j;
                value += src[j++];
            }
            if (j >= src.size() || src[j] != '"') {
                throw ParseError(Errc::Parse, line, col, "closing '\"'", std::string(src.substr(i, j - i)));
            }
            ++j;
            t.kind = Tok::String;
            t.text = std::move(value);
        } else {
            static constexpr std::string_view two[] = {"->", "<=", ">="};
            t.kind = Tok::Punct;
            std::size_t len = 1;
            for (auto s : two) {
                if (src.substr(i, 2) == s) len = 2;
            }
            if (std::string_view("[](){};,:+-*/^=!&|<>?").find(c) == std::string_view::npos) {
                throw ParseError(Errc::Parse, line, col, "a token", std::string(1, c));
            }
            t.text = src.substr(i, len);
            j = i + len;
        }
        advance(j - i);
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
    bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }
    bool at_end() const { return peek().kind == Tok::End; }

    [[noreturn]] void fail(const Token& t, const std::string& expected, Errc code = Errc::Parse) const {
        std::string found = t.kind == Tok::String ? "\"" + t.text + "\"" : t.text;
        throw ParseError(code, t.line, t.col, expected, found);
    }
    [[noreturn]] void fail(const std::string& expected) const { fail(peek(), expected); }

    const Token& expect_punct(std::string_view p) {
        if (!at_punct(p)) fail("'" + std::string(p) + "'");
        return take();
    }
    const Token& expect_word(std::string_view w) {
        if (!at_word(w)) fail("'" + std::string(w) + "'");
        return take();
    }
    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail(what);
        return take();
    }
    void expect_end() {
        if (!at_end()) fail("end of input");
    }

    // Arithmetic over parameter names.
    Expr expr(std::span<const std::string> names) {
        Expr e = term(names);
        while (at_punct("+") || at_punct("-")) {
            const bool plus = take().text == "+";
            Expr r = term(names);
            e = plus ? Expr::add(std::move(e), std::move(r)) : Expr::sub(std::move(e), std::move(r));
        }
        return e;
    }

    Rational number(const Token& t) {
        try {
            return rational_from_decimal(t.text);
        } catch (const Error&) {
            fail(t, "a decimal number");
        }
    }

    double real(const Token& t) { return to_double(number(t)); }

    unsigned integer(const Token& t) {
        unsigned v = 0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (t.kind != Tok::Number || ec != std::errc() || p != e) fail(t, "a non-negative integer");
        return v;
    }

    // Formula grammar.
    Formula state_or() {
        Formula f = state_and();
        while (at_punct("|")) {
            take();
            f = formula::disjunction(std::move(f), state_and());
        }
        return f;
    }

    Formula state_and() {
        Formula f = state_unary();
        while (at_punct("&")) {
            take();
            f = formula::conjunction(std::move(f), state_unary());
        }
        return f;
    }

    Formula state_unary() {
        if (at_punct("!")) {
            take();
            return formula::negation(state_unary());
        }
        if (at_punct("(")) {
            take();
            Formula f = state_or();
            expect_punct(")");
            return f;
        }
        if (peek().kind == Tok::String) return formula::atom(take().text);
        if (at_word("true")) {
            take();
            return formula::tt();
        }
        if (at_word("false")) {
            take();
            return formula::ff();
        }
        if (at_word("P")) {
            take();
            std::optional<Bound> b = bound();
            expect_punct("[");
            PathPtr p = path();
            expect_punct("]");
            return formula::prob(std::move(p), b);
        }
        if (at_word("E")) {
            take();
            std::string name;
            if (at_punct("{")) {
                take();
                name = expect(Tok::String, "a reward name").text;
                expect_punct("}");
            }
            std::optional<Bound> b = bound();
            expect_punct("[");
            expect_word("F");
            Formula target = state_or();
            expect_punct("]");
            return formula::reward(std::move(target), b, std::move(name));
        }
        fail("a state formula");
    }

    std::optional<Bound> bound() {
        if (at_punct("=")) {
            take();
            expect_punct("?");
            return std::nullopt;
        }
        Cmp cmp;
        if (at_punct("<")) cmp = Cmp::Less;
        else if (at_punct("<=")) cmp = Cmp::LessEq;
        else if (at_punct(">=")) cmp = Cmp::GreaterEq;
        else if (at_punct(">")) cmp = Cmp::Greater;
        else fail("'=?' or a comparison");
        take();
        bool negative = false;
        if (at_punct("-")) {
            take();
            negative = true;
        }
        const double v = real(expect(Tok::Number, "a bound"));
        return Bound{cmp, negative ? -v : v};
    }

    PathPtr path() {
        if (at_word("X")) {
            take();
            return formula::next(state_or());
        }
        if (at_word("F")) {
            take();
            return formula::eventually(state_or());
        }
        Formula left = state_or();
        expect_word("U");
        if (at_punct("<=")) {
            take();
            const unsigned k = integer(take());
            return formula::bounded_until(std::move(left), state_or(), k);
        }
        return formula::until(std::move(left), state_or());
    }

private:
    Expr term(std::span<const std::string> names) {
        Expr e = unary(names);
        while (at_punct("*") || at_punct("/")) {
            const bool mul = take().text == "*";
            const Token& at = peek();
            Expr r = unary(names);
            if (mul) {
                e = Expr::mul(std::move(e), std::move(r));
            } else {
                if (r.is_constant_zero()) fail(at, "a non-zero divisor", Errc::Semantic);
                e = Expr::div(std::move(e), std::move(r));
            }
        }
        return e;
    }

    Expr unary(std::span<const std::string> names) {
        if (at_punct("-")) {
            take();
            return Expr::neg(unary(names));
        }
        Expr base = primary(names);
        if (at_punct("^")) {
            take();
            return Expr::pow(std::move(base), integer(take()));
        }
        return base;
    }

    Expr primary(std::span<const std::string> names) {
        if (peek().kind == Tok::Number) return Expr::constant(number(take()));
        if (peek().kind == Tok::Ident) {
            const Token& t = take();
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == t.text) return Expr::param(i);
            }
            fail(t, "a declared parameter", Errc::Semantic);
        }
        if (at_punct("(")) {
            take();
            Expr e = expr(names);
            expect_punct(")");
            return e;
        }
        fail("an expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct PendingEdgeReward {
    Token at;
    std::string reward;
    std::size_t from;
    std::size_t to;
};

}  // namespace

PDtmrm parse_model(std::string_view text) {
    Parser ps(text);

    std::vector<Parameter> params;
    std::vector<std::string> names;
    while (ps.at_word("param")) {
        ps.take();
        const Token name = ps.expect(Tok::Ident, "a parameter name");
        for (const auto& n : names) {
            if (n == name.text) ps.fail(name, "a fresh parameter name", Errc::Semantic);
        }
        ps.expect_word("in");
        ps.expect_punct("[");
        auto signed_number = [&] {
            bool neg = false;
            if (ps.at_punct("-")) {
                ps.take();
                neg = true;
            }
            Rational v = ps.number(ps.expect(Tok::Number, "a number"));
            return neg ? Rational(-v) : v;
        };
        const Token lo_at = ps.peek();
        Rational lo = signed_number();
        ps.expect_punct(",");
        Rational hi = signed_number();
        ps.expect_punct("]");
        ps.expect_punct(";");
        if (!(lo < hi)) ps.fail(lo_at, "lower bound below upper bound", Errc::Semantic);
        names.push_back(name.text);
        params.push_back({name.text, lo, hi});
    }

    const Token states_at = ps.peek();
    ps.expect_word("states");
    std::vector<std::string> states;
    std::optional<std::size_t> init;
    do {
        const Token s = ps.expect(Tok::Ident, "a state name");
        if (std::find(states.begin(), states.end(), s.text) != states.end()) {
            ps.fail(s, "a fresh state name", Errc::Semantic);
        }
        states.push_back(s.text);
        if (ps.at_word("init")) {
            const Token& it = ps.take();
            if (init) ps.fail(it, "a single initial state", Errc::Semantic);
            init = states.size() - 1;
        }
    } while (ps.at_punct(",") && (ps.take(), true));
    ps.expect_punct(";");
    if (!init) ps.fail(states_at, "exactly one state marked init", Errc::Semantic);

    const std::size_t n = states.size();
    auto state_ref = [&]() {
        const Token t = ps.expect(Tok::Ident, "a state name");
        for (std::size_t i = 0; i < n; ++i) {
            if (states[i] == t.text) return i;
        }
        ps.fail(t, "a declared state", Errc::Semantic);
    };

    Labels labels;
    std::vector<PDtmc::Row> rows(n);
    std::vector<bool> has_row(n, false);
    RewardMap rewards;
    std::vector<PendingEdgeReward> pending;

    while (!ps.at_end()) {
        if (ps.at_word("label")) {
            ps.take();
            const Token name = ps.expect(Tok::String, "a label name");
            if (labels.count(name.text)) ps.fail(name, "a fresh label name", Errc::Semantic);
            ps.expect_punct("=");
            StateSet set(n, false);
            if (!ps.at_punct(";")) {
                do {
                    set[state_ref()] = true;
                } while (ps.at_punct(",") && (ps.take(), true));
            }
            ps.expect_punct(";");
            labels.emplace(name.text, std::move(set));
        } else if (ps.at_word("trans")) {
            ps.take();
            const Token from_at = ps.peek();
            const std::size_t from = state_ref();
            if (has_row[from]) ps.fail(from_at, "one trans declaration per state", Errc::Semantic);
            has_row[from] = true;
            ps.expect_punct("->");
            do {
                const Token to_at = ps.peek();
                const std::size_t to = state_ref();
                for (const auto& t : rows[from]) {
                    if (t.target == to) ps.fail(to_at, "a target without a duplicate edge", Errc::Semantic);
                }
                ps.expect_punct(":");
                rows[from].push_back({to, ps.expr(names)});
            } while (ps.at_punct(",") && (ps.take(), true));
            ps.expect_punct(";");
        } else if (ps.at_word("reward")) {
            ps.take();
            const Token name = ps.expect(Tok::String, "a reward name");
            if (rewards.count(name.text)) ps.fail(name, "a fresh reward name", Errc::Semantic);
            RewardStructure rs;
            rs.state.assign(n, 0.0);
            std::vector<bool> state_set(n, false);
            ps.expect_punct("{");
            while (!ps.at_punct("}")) {
                if (ps.at_word("state")) {
                    ps.take();
                    const Token s_at = ps.peek();
                    const std::size_t s = state_ref();
                    if (state_set[s]) ps.fail(s_at, "one reward per state", Errc::Semantic);
                    state_set[s] = true;
                    ps.expect_punct(":");
                    rs.state[s] = ps.real(ps.expect(Tok::Number, "a non-negative reward"));
                } else if (ps.at_word("edge")) {
                    const Token at = ps.take();
                    const std::size_t from = state_ref();
                    ps.expect_punct("->");
                    const std::size_t to = state_ref();
                    if (rs.edge.count({from, to})) ps.fail(at, "one reward per edge", Errc::Semantic);
                    ps.expect_punct(":");
                    rs.edge[{from, to}] = ps.real(ps.expect(Tok::Number, "a non-negative reward"));
                    pending.push_back({at, name.text, from, to});
                } else {
                    ps.fail("'state', 'edge' or '}'");
                }
                ps.expect_punct(";");
            }
            ps.take();
            rewards.emplace(name.text, std::move(rs));
        } else {
            ps.fail("'label', 'trans' or 'reward'");
        }
    }

    for (std::size_t s = 0; s < n; ++s) {
        if (!has_row[s]) ps.fail(states_at, "transitions for state " + states[s], Errc::Semantic);
    }
    for (const auto& pe : pending) {
        bool present = false;
        for (const auto& t : rows[pe.from]) present = present || t.target == pe.to;
        if (!present) ps.fail(pe.at, "an edge reward on an existing edge", Errc::Semantic);
    }

    try {
        PDtmc chain(ParamSpace(std::move(params)), std::move(states), *init, std::move(rows),
                    std::move(labels));
        return PDtmrm(std::move(chain), std::move(rewards));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.code(), states_at.line, states_at.col, "a valid model", e.what());
    }
}

PDtmrm load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Io, "cannot read model file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

Formula parse_formula(std::string_view text) {
    Parser ps(text);
    Formula f = ps.state_or();
    ps.expect_end();
    return f;
}

Expr parse_expr(std::string_view text, std::span<const std::string> param_names) {
    Parser ps(text);
    Expr e = ps.expr(param_names);
    ps.expect_end();
    return e;
}

std::vector<double> parse_point(std::span<const std::string> assignments, const ParamSpace& space) {
    std::vector<double> point(space.dim(), 0.0);
    std::vector<bool> seen(space.dim(), false);
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::InvalidArgument, "expected name=value, found '" + a + "'");
        }
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        const std::string_view name = trim(std::string_view(a).substr(0, eq));
        const std::string_view value = trim(std::string_view(a).substr(eq + 1));
        const std::size_t i = space.index_of(name);
        if (i == space.dim()) throw Error(Errc::UnknownParam, "unknown parameter '" + std::string(name) + "'");
        if (seen[i]) throw Error(Errc::InvalidArgument, "parameter '" + std::string(name) + "' given twice");
        double v = 0.0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || p != value.data() + value.size()) {
            throw Error(Errc::InvalidArgument, "malformed value '" + std::string(value) + "'");
        }
        point[i] = v;
        seen[i] = true;
    }
    for (std::size_t i = 0; i < space.dim(); ++i) {
        if (!seen[i]) throw Error(Errc::MissingParam, "missing value for parameter '" + space.names()[i] + "'");
    }
    if (!space.contains(point)) throw Error(Errc::OutOfBox, "point lies outside the parameter box");
    return point;
}

std::string to_string(const PDtmrm& model) {
    const PDtmc& m = model.chain();
    const auto& names = m.space().names();
    const auto& states = m.state_names();
    std::ostringstream out;
    for (const Parameter& p : m.space().params()) {
        out << "param " << p.name << " in [" << to_decimal_string(p.lo) << ", "
            << to_decimal_string(p.hi) << "];\n";
    }
    out << "states ";
    for (std::size_t s = 0; s < states.size(); ++s) {
        out << (s ? ", " : "") << states[s] << (s == m.init() ? " init" : "");
    }
    out << ";\n";
    auto quoted = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    for (const auto& [label, set] : m.labels()) {
        out << "label " << quoted(label) << " =";
        bool first = true;
        for (std::size_t s = 0; s < set.size(); ++s) {
            if (!set[s]) continue;
            out << (first ? " " : ", ") << states[s];
            first = false;
        }
        out << ";\n";
    }
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        out << "trans " << states[s] << " ->";
        for (std::size_t k = 0; k < m.row(s).size(); ++k) {
            const auto& t = m.row(s)[k];
            out << (k ? ", " : " ") << states[t.target] << " : " << to_string(t.weight, names);
        }
        out << ";\n";
    }
    for (const auto& [name, rs] : model.rewards()) {
        out << "reward " << quoted(name) << " {\n";
        for (std::size_t s = 0; s < rs.state.size(); ++s) {
            if (rs.state[s] != 0.0) out << "  state " << states[s] << " : " << format_double(rs.state[s]) << ";\n";
        }
        for (const auto& [e, r] : rs.edge) {
            out << "  edge " << states[e.first] << " -> " << states[e.second] << " : " << format_double(r)
                << ";\n";
        }
        out << "}\n";
    }
    return out.str();
}

}  // namespace parampac
