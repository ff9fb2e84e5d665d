#include "sql_checker.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace sql_checker {

namespace {

enum class TokenKind { Word, Number, String, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text; // uppercased for words
    std::size_t offset = 0;
};

struct ParseFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < n && text[i + 1] == '-') {
            while (i < n && text[i] != '\n')
                ++i;
            continue;
        }
        Token token;
        token.offset = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                token.text.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text[i++]))));
            token.kind = TokenKind::Word;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < n && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
                token.text.push_back(text[i++]);
            token.kind = TokenKind::Number;
        } else if (c == '\'') {
            ++i;
            while (i < n && text[i] != '\'')
                token.text.push_back(text[i++]);
            if (i == n)
                throw ParseFail("unterminated string literal");
            ++i;
            token.kind = TokenKind::String;
        } else if (c == '!' && i + 1 < n && text[i + 1] == '=') {
            token.text = "!=";
            token.kind = TokenKind::Punct;
            i += 2;
        } else if ((c == '<' || c == '>') && i + 1 < n && text[i + 1] == '=') {
            token.text = std::string(1, c) + "=";
            token.kind = TokenKind::Punct;
            i += 2;
        } else if (std::string_view("(),.*=<>+-/").find(c) != std::string_view::npos) {
            token.text = std::string(1, c);
            token.kind = TokenKind::Punct;
            ++i;
        } else {
            throw ParseFail("unexpected character '" + std::string(1, c) + "' at offset " +
                            std::to_string(i));
        }
        tokens.push_back(std::move(token));
    }
    tokens.push_back(Token{});
    return tokens;
}

bool is_keyword(const Token& token, std::string_view keyword) {
    return token.kind == TokenKind::Word && token.text == keyword;
}

constexpr std::string_view kReserved[] = {"SELECT", "FROM",  "WHERE", "GROUP", "BY",
                                          "HAVING", "UNION", "AND",   "OR",    "NOT",
                                          "EXISTS", "ALL",   "AS",    "LIKE"};

bool is_reserved(const Token& token) {
    if (token.kind != TokenKind::Word)
        return false;
    for (auto keyword : kReserved) {
        if (token.text == keyword)
            return true;
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    void parse_query_expression() {
        parse_query();
        while (is_keyword(peek(), "UNION")) {
            advance();
            parse_query();
        }
        expect_end();
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t idx = pos_ + ahead;
        return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
    }
    const Token& advance() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseFail(message + " near offset " + std::to_string(peek().offset) + " ('" +
                        peek().text + "')");
    }

    void expect_punct(std::string_view punct) {
        if (peek().kind != TokenKind::Punct || peek().text != punct)
            fail("expected '" + std::string(punct) + "'");
        advance();
    }
    void expect_keyword(std::string_view keyword) {
        if (!is_keyword(peek(), keyword))
            fail("expected " + std::string(keyword));
        advance();
    }
    void expect_end() {
        if (peek().kind != TokenKind::End)
            fail("trailing tokens after query");
    }

    bool at_punct(std::string_view punct) const {
        return peek().kind == TokenKind::Punct && peek().text == punct;
    }

    void parse_identifier() {
        if (peek().kind != TokenKind::Word || is_reserved(peek()))
            fail("expected identifier");
        advance();
    }

    // name or qualifier.name; the part after '.' may collide with a keyword.
    void parse_column_ref() {
        parse_identifier();
        if (at_punct(".")) {
            advance();
            if (peek().kind != TokenKind::Word)
                fail("expected column name after '.'");
            advance();
        }
    }

    void parse_select_item() {
        if (at_punct("*")) {
            advance();
            return;
        }
        parse_expr();
        if (is_keyword(peek(), "AS")) {
            advance();
            parse_identifier();
        }
    }

    void parse_query() {
        expect_keyword("SELECT");
        parse_select_item();
        while (at_punct(",")) {
            advance();
            parse_select_item();
        }
        expect_keyword("FROM");
        parse_table_ref();
        while (at_punct(",")) {
            advance();
            parse_table_ref();
        }
        if (is_keyword(peek(), "WHERE")) {
            advance();
            parse_expr();
        }
        if (is_keyword(peek(), "GROUP")) {
            advance();
            expect_keyword("BY");
            parse_column_ref();
            while (at_punct(",")) {
                advance();
                parse_column_ref();
            }
        }
        if (is_keyword(peek(), "HAVING")) {
            advance();
            parse_expr();
        }
    }

    void parse_table_ref() {
        if (at_punct("(")) {
            advance();
            parse_query();
            expect_punct(")");
        } else {
            parse_identifier();
        }
        if (peek().kind == TokenKind::Word && !is_reserved(peek()))
            advance(); // alias
    }

    void parse_expr() { parse_or(); }

    void parse_or() {
        parse_and();
        while (is_keyword(peek(), "OR")) {
            advance();
            parse_and();
        }
    }

    void parse_and() {
        parse_predicate();
        while (is_keyword(peek(), "AND")) {
            advance();
            parse_predicate();
        }
    }

    void parse_predicate() {
        if (is_keyword(peek(), "NOT")) {
            advance();
            parse_predicate();
            return;
        }
        if (is_keyword(peek(), "EXISTS")) {
            advance();
            expect_punct("(");
            parse_query();
            expect_punct(")");
            return;
        }
        parse_comparison();
    }

    void parse_comparison() {
        parse_sum();
        const Token& token = peek();
        const bool comp_punct = token.kind == TokenKind::Punct &&
                                (token.text == "=" || token.text == "!=" || token.text == "<" ||
                                 token.text == ">" || token.text == "<=" || token.text == ">=");
        if (comp_punct || is_keyword(token, "LIKE")) {
            advance();
            if (is_keyword(peek(), "ALL")) {
                advance();
                expect_punct("(");
                parse_query();
                expect_punct(")");
            } else {
                parse_sum();
            }
        }
    }

    void parse_sum() {
        parse_term();
        while (at_punct("+") || at_punct("-")) {
            advance();
            parse_term();
        }
    }

    void parse_term() {
        parse_factor();
        while (at_punct("*") || at_punct("/")) {
            advance();
            parse_factor();
        }
    }

    void parse_factor() {
        const Token& token = peek();
        if (token.kind == TokenKind::Number || token.kind == TokenKind::String) {
            advance();
            return;
        }
        if (is_keyword(token, "CAST")) {
            advance();
            expect_punct("(");
            parse_expr();
            expect_keyword("AS");
            parse_identifier(); // type name
            expect_punct(")");
            return;
        }
        if (is_keyword(token, "COUNT")) {
            advance();
            expect_punct("(");
            if (at_punct("*"))
                advance();
            else
                parse_expr();
            expect_punct(")");
            return;
        }
        if (at_punct("(")) {
            advance();
            if (is_keyword(peek(), "SELECT"))
                parse_query(); // scalar subquery
            else
                parse_expr();
            expect_punct(")");
            return;
        }
        if (token.kind == TokenKind::Word && !is_reserved(token)) {
            parse_column_ref();
            return;
        }
        fail("expected expression");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

CheckResult check_sql(std::string_view text) {
    try {
        Parser parser(tokenize(text));
        parser.parse_query_expression();
        return {true, ""};
    } catch (const ParseFail& e) {
        return {false, e.what()};
    }
}

} // namespace sql_checker
