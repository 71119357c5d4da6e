#include "glv/network.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>

#include "glv/errors.hpp"

namespace glv {
namespace {

struct Lexer {
    const std::string& text;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("parse error at " + std::to_string(line) + ":" +
                              std::to_string(col) + ": " + msg);
    }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }

    void skip_ws() {
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    bool try_consume(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    std::string identifier() {
        skip_ws();
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string id;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            id += peek();
            advance();
        }
        return id;
    }

    double number() {
        skip_ws();
        size_t start = pos;
        if (!eof() && (peek() == '+' || peek() == '-')) advance();
        bool digits = false;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            advance();
            digits = true;
        }
        if (!eof() && peek() == '.') {
            advance();
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
                digits = true;
            }
        }
        if (!digits) fail("expected number");
        if (!eof() && (peek() == 'e' || peek() == 'E')) {
            advance();
            if (!eof() && (peek() == '+' || peek() == '-')) advance();
            bool exp_digits = false;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                advance();
                exp_digits = true;
            }
            if (!exp_digits) fail("malformed exponent in number");
        }
        double value = 0.0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc{}) fail("malformed number");
        return value;
    }
};

struct Order {
    double x = 0.0, y = 0.0;
};

// Zero or more "X^e" / "Y^e" terms, each species at most once.
Order parse_order(Lexer& lex) {
    Order ord;
    bool saw_x = false, saw_y = false;
    for (;;) {
        lex.skip_ws();
        if (lex.eof() || (lex.peek() != 'X' && lex.peek() != 'Y')) break;
        char species = lex.peek();
        lex.advance();
        lex.expect('^');
        double e = lex.number();
        if (species == 'X') {
            if (saw_x) lex.fail("species X appears twice in one order");
            saw_x = true;
            ord.x = e;
        } else {
            if (saw_y) lex.fail("species Y appears twice in one order");
            saw_y = true;
            ord.y = e;
        }
    }
    return ord;
}

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_order(double x, double y) {
    if (x == 0.0 && y == 0.0) return "X^0";
    std::string s;
    if (x != 0.0) s += "X^" + fmt_real(x);
    if (y != 0.0) {
        if (!s.empty()) s += " ";
        s += "Y^" + fmt_real(y);
    }
    return s;
}

} // namespace

ReactionNetwork parse_network(const std::string& text) {
    Lexer lex(text);
    if (lex.identifier() != "cycle") lex.fail("expected 'cycle'");
    lex.expect('{');

    ReactionNetwork net;
    std::map<std::string, bool> seen;
    bool saw_order3 = false;

    for (;;) {
        lex.skip_ws();
        if (lex.try_consume('}')) break;
        if (lex.eof()) lex.fail("unexpected end of input, expected '}'");

        int key_line = lex.line, key_col = lex.col;
        std::string key = lex.identifier();
        if (seen[key]) {
            throw ValidationError("parse error at " + std::to_string(key_line) + ":" +
                                  std::to_string(key_col) + ": duplicate key '" + key + "'");
        }
        seen[key] = true;
        lex.expect('=');

        if (key == "n") {
            net.n = lex.number();
        } else if (key == "k12") {
            net.rate12 = lex.number();
        } else if (key == "k23") {
            net.rate23 = lex.number();
        } else if (key == "k31") {
            net.rate31 = lex.number();
        } else if (key == "order1") {
            Order o = parse_order(lex);
            net.order1_x = o.x;
            net.order1_y = o.y;
        } else if (key == "order2") {
            Order o = parse_order(lex);
            net.order2_x = o.x;
            net.order2_y = o.y;
        } else if (key == "order3") {
            Order o = parse_order(lex);
            net.order3_x = o.x;
            net.order3_y = o.y;
            saw_order3 = true;
        } else {
            throw ValidationError("parse error at " + std::to_string(key_line) + ":" +
                                  std::to_string(key_col) + ": unknown key '" + key + "'");
        }
        lex.expect(';');
    }
    lex.skip_ws();
    if (!lex.eof()) lex.fail("trailing input after '}'");

    for (const char* required : {"n", "k12", "k23", "k31", "order1", "order2"}) {
        if (!seen[required])
            throw ValidationError(std::string("missing required key '") + required + "'");
    }
    (void)saw_order3; // order3 defaults to the stoichiometric complex (0, 1)

    if (!(net.n > 0.0)) throw ValidationError("n must be positive");
    if (!(net.rate12 > 0.0)) throw ValidationError("k12 must be positive");
    if (!(net.rate23 > 0.0)) throw ValidationError("k23 must be positive");
    if (!(net.rate31 > 0.0)) throw ValidationError("k31 must be positive");
    return net;
}

std::string render(const ReactionNetwork& net) {
    std::string out = "cycle {\n";
    out += "  n = " + fmt_real(net.n) + ";\n";
    out += "  k12 = " + fmt_real(net.rate12) + ";\n";
    out += "  k23 = " + fmt_real(net.rate23) + ";\n";
    out += "  k31 = " + fmt_real(net.rate31) + ";\n";
    out += "  order1 = " + fmt_order(net.order1_x, net.order1_y) + ";\n";
    out += "  order2 = " + fmt_order(net.order2_x, net.order2_y) + ";\n";
    out += "  order3 = " + fmt_order(net.order3_x, net.order3_y) + ";\n";
    out += "}\n";
    return out;
}

GlvSystem lower(const ReactionNetwork& net) {
    GlvSystem sys;
    sys.alpha1 = net.order1_x;
    sys.beta1 = net.order1_y;
    sys.alpha2 = net.order2_x;
    sys.beta2 = net.order2_y;
    sys.alpha3 = net.order3_x;
    sys.beta3 = net.order3_y;
    sys.k1 = net.n * net.rate12;
    sys.k2 = net.n * net.rate23;
    sys.k3 = net.rate23;
    sys.k4 = net.rate31;
    return sys;
}

} // namespace glv
