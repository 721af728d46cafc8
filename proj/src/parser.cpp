#include "mitl/parser.hpp"

#include <cctype>
#include <charconv>

namespace mitl {

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parseAll() {
    Formula f = parseTemporal();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, pos_, msg); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skipSpace();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool identChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string_view peekIdent() {
    skipSpace();
    std::size_t end = pos_;
    if (end < text_.size() && identStart(text_[end])) {
      while (end < text_.size() && identChar(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  static bool isKeyword(std::string_view id) {
    return id == "F" || id == "G" || id == "P" || id == "U" || id == "S" || id == "true" || id == "false" ||
           id == "inf";
  }

  Formula parseTemporal() {
    Formula left = parseIff();
    auto id = peekIdent();
    if (id == "U" || id == "S") {
      pos_ += 1;
      TimeInterval i = parseInterval();
      Formula right = parseTemporal();
      return id == "U" ? until(left, right, i) : since(left, right, i);
    }
    return left;
  }

  Formula parseIff() {
    Formula left = parseImplies();
    if (accept("<->")) return iff(left, parseIff());
    return left;
  }

  Formula parseImplies() {
    Formula left = parseOr();
    if (accept("->")) return implies(left, parseImplies());
    return left;
  }

  Formula parseOr() {
    Formula left = parseAnd();
    while (accept("|")) left = lor(left, parseAnd());
    return left;
  }

  Formula parseAnd() {
    Formula left = parseUnary();
    while (accept("&")) left = land(left, parseUnary());
    return left;
  }

  Formula parseUnary() {
    skipSpace();
    if (accept("!")) return lnot(parseUnary());
    auto id = peekIdent();
    if (id == "F" || id == "G" || id == "P") {
      pos_ += 1;
      TimeInterval i = parseInterval();
      Formula arg = parseUnary();
      if (id == "F") return eventually(arg, i);
      if (id == "G") return globally(arg, i);
      return past(arg, i);
    }
    return parsePrimary();
  }

  Formula parsePrimary() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    if (accept("(")) {
      Formula f = parseTemporal();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    auto id = peekIdent();
    if (id.empty()) fail("expected a formula");
    if (id == "true" || id == "false") {
      pos_ += id.size();
      return id == "true" ? top() : bottom();
    }
    if (isKeyword(id)) fail("operator '" + std::string(id) + "' used as a proposition");
    pos_ += id.size();
    return prop(std::string(id));
  }

  std::uint64_t parseNatural() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail("number out of range");
    return v;
  }

  TimeInterval parseInterval() {
    skipSpace();
    std::size_t start = pos_;
    bool lowerOpen;
    if (accept("(")) lowerOpen = true;
    else if (accept("[")) lowerOpen = false;
    else fail("expected an interval");
    std::uint64_t lower = parseNatural();
    if (!accept(",")) fail("expected ','");
    std::optional<std::uint64_t> upper;
    if (peekIdent() == "inf") pos_ += 3;
    else upper = parseNatural();
    bool upperOpen;
    if (accept(")")) upperOpen = true;
    else if (accept("]")) upperOpen = false;
    else fail("expected ')' or ']'");
    try {
      return TimeInterval::make(lower, upper, lowerOpen, upperOpen);
    } catch (const IntervalError& e) {
      throw ParseError(ParseError::Kind::Interval, start, e.what());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_mitl(std::string_view text) { return Parser(text).parseAll(); }

} // namespace mitl
