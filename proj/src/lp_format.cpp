// CPLEX-LP reader and writer for linear integer programs.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "acp/instance_io.hpp"

namespace acp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_name_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '!': case '"': case '#': case '$': case '%': case '&': case '(': case ')': case '/':
    case ',': case '.': case ';': case '?': case '@': case '_': case '`': case '\'': case '{':
    case '}': case '|': case '~':
      return true;
    default:
      return false;
  }
}

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

// Returns the section a keyword opens and how many tokens it spans.
struct KeywordMatch {
  Section section = Section::None;
  bool maximize = false;
  int width = 0;
};

bool is_infinity_word(std::string_view w) {
  const auto l = lower_case(w);
  return l == "inf" || l == "infinity";
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct Token {
  enum class Kind { Name, Number, Plus, Minus, Colon, Cmp };
  Kind kind;
  std::string text;
  double number = 0.0;
  Comparator cmp = Comparator::LessEqual;
  int line = 0;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw FormatError("lp line " + std::to_string(line) + ": " + msg);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\\') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '+' || c == '-') {
      out.push_back({c == '+' ? Token::Kind::Plus : Token::Kind::Minus, std::string(1, c), 0, {}, line});
      ++i;
      continue;
    }
    if (c == ':') {
      out.push_back({Token::Kind::Colon, ":", 0, {}, line});
      ++i;
      continue;
    }
    if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i;
      while (j < text.size() && (text[j] == '<' || text[j] == '>' || text[j] == '=')) ++j;
      const std::string op(text.substr(i, j - i));
      Comparator cmp;
      if (op == "<=" || op == "=<" || op == "<")
        cmp = Comparator::LessEqual;
      else if (op == ">=" || op == "=>" || op == ">")
        cmp = Comparator::GreaterEqual;
      else if (op == "=")
        cmp = Comparator::Equal;
      else
        fail("unknown comparator '" + op + "'");
      out.push_back({Token::Kind::Cmp, op, 0, cmp, line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      const std::string num(text.substr(i, j - i));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
      if (ec != std::errc() || ptr != num.data() + num.size()) fail("bad number '" + num + "'");
      out.push_back({Token::Kind::Number, num, v, {}, line});
      i = j;
      continue;
    }
    if (is_name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      out.push_back({Token::Kind::Name, std::string(text.substr(i, j - i)), 0, {}, line});
      i = j;
      continue;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
  return out;
}

class LpParser {
 public:
  explicit LpParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  IntegerProgram parse(std::string name) {
    KeywordMatch first = keyword_at(pos_);
    if (first.section != Section::Objective) fail("expected Maximize or Minimize");
    sense_ = first.maximize ? Sense::Maximize : Sense::Minimize;
    pos_ += first.width;
    parse_objective();

    while (pos_ < tokens_.size()) {
      KeywordMatch kw = keyword_at(pos_);
      if (kw.section == Section::None) fail("expected a section keyword, got '" + tokens_[pos_].text + "'");
      pos_ += kw.width;
      switch (kw.section) {
        case Section::Constraints: parse_constraints(); break;
        case Section::Bounds: parse_bounds(); break;
        case Section::Binaries: parse_type_list(true); break;
        case Section::Generals: parse_type_list(false); break;
        case Section::End: pos_ = tokens_.size(); break;
        default: fail("unexpected section");
      }
    }

    try {
      return IntegerProgram(std::move(name), sense_, std::move(vars_), std::move(objective_),
                            std::move(rows_));
    } catch (const ContractError& e) {
      throw FormatError(std::string("lp: ") + e.what());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const int line = pos_ < tokens_.size() ? tokens_[pos_].line : (tokens_.empty() ? 0 : tokens_.back().line);
    throw FormatError("lp line " + std::to_string(line) + ": " + msg);
  }

  bool name_is(std::size_t at, std::initializer_list<const char*> words) const {
    if (at >= tokens_.size() || tokens_[at].kind != Token::Kind::Name) return false;
    const auto l = lower_case(tokens_[at].text);
    return std::any_of(words.begin(), words.end(), [&](const char* w) { return l == w; });
  }

  KeywordMatch keyword_at(std::size_t at) const {
    if (name_is(at, {"maximize", "maximise", "maximum", "max"})) return {Section::Objective, true, 1};
    if (name_is(at, {"minimize", "minimise", "minimum", "min"})) return {Section::Objective, false, 1};
    if (name_is(at, {"subject"}) && name_is(at + 1, {"to"})) return {Section::Constraints, false, 2};
    if (name_is(at, {"such"}) && name_is(at + 1, {"that"})) return {Section::Constraints, false, 2};
    if (name_is(at, {"st", "s.t."})) return {Section::Constraints, false, 1};
    if (name_is(at, {"bounds", "bound"})) return {Section::Bounds, false, 1};
    if (name_is(at, {"binaries", "binary", "bin"})) return {Section::Binaries, false, 1};
    if (name_is(at, {"generals", "general", "gen", "integers", "integer"})) return {Section::Generals, false, 1};
    if (name_is(at, {"end"})) return {Section::End, false, 1};
    return {};
  }

  bool at_statement_end() const { return pos_ >= tokens_.size() || keyword_at(pos_).section != Section::None; }

  std::size_t var_index(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const std::size_t j = vars_.size();
    vars_.push_back({name, 0.0, kInf, false});
    index_.emplace(name, j);
    return j;
  }

  void skip_label() {
    if (pos_ + 1 < tokens_.size() && tokens_[pos_].kind == Token::Kind::Name &&
        tokens_[pos_ + 1].kind == Token::Kind::Colon && keyword_at(pos_).section == Section::None)
      pos_ += 2;
  }

  // Linear expression up to a comparator or the next section keyword.
  std::vector<Term> parse_expression(bool allow_constant_only) {
    std::vector<Term> terms;
    std::unordered_map<std::size_t, std::size_t> slot;
    while (pos_ < tokens_.size()) {
      if (tokens_[pos_].kind == Token::Kind::Cmp || at_statement_end()) break;
      double sign = 1.0;
      bool saw_sign = false;
      while (pos_ < tokens_.size() &&
             (tokens_[pos_].kind == Token::Kind::Plus || tokens_[pos_].kind == Token::Kind::Minus)) {
        if (tokens_[pos_].kind == Token::Kind::Minus) sign = -sign;
        saw_sign = true;
        ++pos_;
      }
      double coef = 1.0;
      bool saw_coef = false;
      if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::Kind::Number) {
        coef = tokens_[pos_].number;
        saw_coef = true;
        ++pos_;
      }
      if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::Kind::Name && !at_statement_end()) {
        const std::size_t j = var_index(tokens_[pos_].text);
        ++pos_;
        auto [it, fresh] = slot.emplace(j, terms.size());
        if (fresh)
          terms.push_back({j, sign * coef});
        else
          terms[it->second].coef += sign * coef;
        continue;
      }
      if (saw_coef && allow_constant_only) continue;  // objective constant: ignored
      if (saw_sign || saw_coef) fail("expected a variable name");
      fail("unexpected token '" + (pos_ < tokens_.size() ? tokens_[pos_].text : std::string("EOF")) + "'");
    }
    return terms;
  }

  void parse_objective() {
    skip_label();
    objective_ = parse_expression(true);
  }

  double parse_value() {
    double sign = 1.0;
    while (pos_ < tokens_.size() &&
           (tokens_[pos_].kind == Token::Kind::Plus || tokens_[pos_].kind == Token::Kind::Minus)) {
      if (tokens_[pos_].kind == Token::Kind::Minus) sign = -sign;
      ++pos_;
    }
    if (pos_ >= tokens_.size()) fail("expected a number");
    const Token& t = tokens_[pos_];
    if (t.kind == Token::Kind::Number) {
      ++pos_;
      return sign * t.number;
    }
    if (t.kind == Token::Kind::Name && is_infinity_word(t.text)) {
      ++pos_;
      return sign * kInf;
    }
    fail("expected a number, got '" + t.text + "'");
  }

  bool value_ahead() const {
    std::size_t at = pos_;
    while (at < tokens_.size() && (tokens_[at].kind == Token::Kind::Plus || tokens_[at].kind == Token::Kind::Minus))
      ++at;
    if (at >= tokens_.size()) return false;
    return tokens_[at].kind == Token::Kind::Number ||
           (tokens_[at].kind == Token::Kind::Name && is_infinity_word(tokens_[at].text));
  }

  Comparator expect_cmp() {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::Kind::Cmp) fail("expected a comparator");
    return tokens_[pos_++].cmp;
  }

  void parse_constraints() {
    while (!at_statement_end()) {
      skip_label();
      LinearConstraint row;
      row.terms = parse_expression(false);
      if (row.terms.empty()) fail("constraint without variables");
      row.cmp = expect_cmp();
      row.rhs = parse_value();
      rows_.push_back(std::move(row));
    }
  }

  std::size_t expect_var() {
    if (pos_ >= tokens_.size() || tokens_[pos_].kind != Token::Kind::Name || at_statement_end())
      fail("expected a variable name");
    return var_index(tokens_[pos_++].text);
  }

  static void apply_bound(VariableDef& v, Comparator cmp, double value, bool var_on_left) {
    if (cmp == Comparator::Equal) {
      v.lower = v.upper = value;
      return;
    }
    const bool is_upper = (cmp == Comparator::LessEqual) == var_on_left;
    (is_upper ? v.upper : v.lower) = value;
  }

  void parse_bounds() {
    while (!at_statement_end()) {
      if (value_ahead()) {
        const double lhs = parse_value();
        const Comparator c1 = expect_cmp();
        const std::size_t j = expect_var();
        apply_bound(vars_[j], c1, lhs, false);
        if (pos_ < tokens_.size() && tokens_[pos_].kind == Token::Kind::Cmp) {
          const Comparator c2 = expect_cmp();
          apply_bound(vars_[j], c2, parse_value(), true);
        }
        continue;
      }
      const std::size_t j = expect_var();
      if (name_is(pos_, {"free"})) {
        ++pos_;
        vars_[j].lower = -kInf;
        vars_[j].upper = kInf;
        continue;
      }
      const Comparator c = expect_cmp();
      apply_bound(vars_[j], c, parse_value(), true);
    }
  }

  void parse_type_list(bool binary) {
    while (!at_statement_end()) {
      VariableDef& v = vars_[expect_var()];
      v.integral = true;
      if (binary) {
        v.lower = 0.0;
        v.upper = 1.0;
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Sense sense_ = Sense::Maximize;
  std::vector<VariableDef> vars_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Term> objective_;
  std::vector<LinearConstraint> rows_;
};

const char* cmp_text(Comparator c) {
  switch (c) {
    case Comparator::LessEqual: return "<=";
    case Comparator::GreaterEqual: return ">=";
    case Comparator::Equal: return "=";
  }
  return "=";
}

void write_terms(std::ostream& out, const std::vector<Term>& terms, const IntegerProgram& p) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Term& t = terms[k];
    if (k > 0 && k % 8 == 0) out << "\n   ";
    const bool neg = std::signbit(t.coef);
    out << (k == 0 ? (neg ? "-" : "") : (neg ? " - " : " + ")) << format_number(std::abs(t.coef)) << ' '
        << p.variable(t.var).name;
  }
}

}  // namespace

bool is_valid_lp_name(std::string_view name) {
  if (name.empty() || name.size() > 255) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0])) || name[0] == '.') return false;
  if ((name[0] == 'e' || name[0] == 'E') && name.size() > 1 &&
      (std::isdigit(static_cast<unsigned char>(name[1])) || name[1] == 'e' || name[1] == 'E'))
    return false;
  if (!std::all_of(name.begin(), name.end(), is_name_char)) return false;
  static const char* const reserved[] = {"maximize", "maximise", "maximum", "max", "minimize", "minimise",
                                         "minimum", "min", "subject", "such", "st", "s.t.", "bounds", "bound",
                                         "binaries", "binary", "bin", "generals", "general", "gen", "integers",
                                         "integer", "end", "free", "inf", "infinity"};
  const auto l = lower_case(name);
  return std::none_of(std::begin(reserved), std::end(reserved), [&](const char* r) { return l == r; });
}

std::string write_lp(const IntegerProgram& p) {
  for (const VariableDef& v : p.variables())
    if (!is_valid_lp_name(v.name)) throw ContractError("write_lp: '" + v.name + "' is not a valid LP name");

  std::ostringstream out;
  out << "\\ " << p.name() << "\n";
  out << (p.sense() == Sense::Maximize ? "Maximize" : "Minimize") << "\n obj: ";
  std::vector<Term> full_objective;
  full_objective.reserve(p.num_variables());
  for (std::size_t j = 0; j < p.num_variables(); ++j) full_objective.push_back({j, p.objective_coef(j)});
  write_terms(out, full_objective, p);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < p.num_constraints(); ++i) {
    const LinearConstraint& c = p.constraint(i);
    out << " c" << i << ": ";
    write_terms(out, c.terms, p);
    out << ' ' << cmp_text(c.cmp) << ' ' << format_number(c.rhs) << "\n";
  }

  std::vector<std::size_t> binaries, generals;
  std::ostringstream bounds;
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    const VariableDef& v = p.variable(j);
    if (v.is_binary()) {
      binaries.push_back(j);
      continue;
    }
    if (v.integral) generals.push_back(j);
    if (v.lower == -kInf && v.upper == kInf)
      bounds << ' ' << v.name << " free\n";
    else
      bounds << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << "\n";
  }
  const std::string bounds_text = bounds.str();
  if (!bounds_text.empty()) out << "Bounds\n" << bounds_text;

  auto write_list = [&](const char* header, const std::vector<std::size_t>& list) {
    if (list.empty()) return;
    out << header << "\n";
    for (std::size_t k = 0; k < list.size(); ++k)
      out << ' ' << p.variable(list[k]).name << (k % 10 == 9 || k + 1 == list.size() ? "\n" : "");
  };
  write_list("Binaries", binaries);
  write_list("Generals", generals);
  out << "End\n";
  return out.str();
}

IntegerProgram read_lp(std::string_view text, std::string name) {
  return LpParser(lex(text)).parse(std::move(name));
}

void write_lp_file(const std::filesystem::path& path, const IntegerProgram& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << write_lp(p);
}

IntegerProgram read_lp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_lp(buf.str(), path.stem().string());
}

}  // namespace acp
