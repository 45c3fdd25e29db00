#include "lpdmt/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace lpdmt {

namespace {

using nlohmann::json;

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line = 1;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    char take() {
        const char c = text[pos++];
        if (c == '\n') ++line;
        return c;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error("toml parse error (line " + std::to_string(line) + "): " + msg);
    }

    void skip_ws(bool cross_lines) {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                take();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') take();
            } else if (c == '\n' && cross_lines) {
                take();
            } else {
                break;
            }
        }
    }
};

std::string parse_bare_key(Cursor& c) {
    std::string key;
    while (!c.eof()) {
        const char ch = c.peek();
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.') {
            key.push_back(c.take());
        } else {
            break;
        }
    }
    if (key.empty()) c.fail("expected key");
    return key;
}

std::string parse_string(Cursor& c) {
    c.take();  // opening quote
    std::string out;
    while (!c.eof()) {
        const char ch = c.take();
        if (ch == '"') return out;
        if (ch == '\\') {
            if (c.eof()) break;
            const char esc = c.take();
            switch (esc) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: c.fail(std::string("unsupported escape \\") + esc);
            }
        } else if (ch == '\n') {
            c.fail("newline inside string");
        } else {
            out.push_back(ch);
        }
    }
    c.fail("unterminated string");
}

json parse_value(Cursor& c);

json parse_array(Cursor& c) {
    c.take();  // '['
    json arr = json::array();
    for (;;) {
        c.skip_ws(true);
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ']') {
            c.take();
            return arr;
        }
        arr.push_back(parse_value(c));
        c.skip_ws(true);
        if (c.eof()) c.fail("unterminated array");
        if (c.peek() == ',') {
            c.take();
        } else if (c.peek() != ']') {
            c.fail("expected ',' or ']' in array");
        }
    }
}

json parse_inline_table(Cursor& c) {
    c.take();  // '{'
    json obj = json::object();
    c.skip_ws(false);
    if (!c.eof() && c.peek() == '}') {
        c.take();
        return obj;
    }
    for (;;) {
        c.skip_ws(false);
        const std::string key = parse_bare_key(c);
        c.skip_ws(false);
        if (c.eof() || c.peek() != '=') c.fail("expected '=' in inline table");
        c.take();
        c.skip_ws(false);
        obj[key] = parse_value(c);
        c.skip_ws(false);
        if (c.eof()) c.fail("unterminated inline table");
        if (c.peek() == ',') {
            c.take();
        } else if (c.peek() == '}') {
            c.take();
            return obj;
        } else {
            c.fail("expected ',' or '}' in inline table");
        }
    }
}

json parse_scalar(Cursor& c) {
    std::string tok;
    while (!c.eof()) {
        const char ch = c.peek();
        if (ch == ',' || ch == ']' || ch == '}' || ch == '\n' || ch == '#' || ch == ' ' || ch == '\t' ||
            ch == '\r')
            break;
        tok.push_back(c.take());
    }
    if (tok.empty()) c.fail("expected value");
    if (tok == "true") return json(true);
    if (tok == "false") return json(false);
    if (tok == "inf" || tok == "+inf") return json(std::numeric_limits<double>::infinity());
    if (tok == "-inf") return json(-std::numeric_limits<double>::infinity());

    // integer first so whole numbers stay integral in the tree
    if (tok.find_first_of(".eE") == std::string::npos) {
        long long iv = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
        if (ec == std::errc() && p == tok.data() + tok.size()) return json(iv);
    }
    try {
        std::size_t used = 0;
        const double dv = std::stod(tok, &used);
        if (used == tok.size()) return json(dv);
    } catch (const std::exception&) {
    }
    c.fail("cannot parse value '" + tok + "'");
}

json parse_value(Cursor& c) {
    if (c.eof()) c.fail("expected value");
    const char ch = c.peek();
    if (ch == '"') return json(parse_string(c));
    if (ch == '[') return parse_array(c);
    if (ch == '{') return parse_inline_table(c);
    return parse_scalar(c);
}

}  // namespace

nlohmann::json parse_toml_lite(const std::string& text) {
    Cursor c{text};
    json root = json::object();
    json* table = &root;

    for (;;) {
        c.skip_ws(true);
        if (c.eof()) break;
        if (c.peek() == '[') {
            c.take();
            c.skip_ws(false);
            const std::string name = parse_bare_key(c);
            c.skip_ws(false);
            if (c.eof() || c.peek() != ']') c.fail("expected ']' after table name");
            c.take();
            root[name] = root.value(name, json::object());
            table = &root[name];
        } else {
            const std::string key = parse_bare_key(c);
            c.skip_ws(false);
            if (c.eof() || c.peek() != '=') c.fail("expected '=' after key '" + key + "'");
            c.take();
            c.skip_ws(false);
            (*table)[key] = parse_value(c);
        }
        c.skip_ws(false);
        if (!c.eof() && c.peek() != '\n') c.fail("unexpected trailing content");
    }
    return root;
}

}  // namespace lpdmt
