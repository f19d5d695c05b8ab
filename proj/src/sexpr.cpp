#include "gamesem/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace gamesem {

const GeneratorRegistry& default_generators() {
  static const GeneratorRegistry registry = {
      {"true", [](Nat i) { return Formula::leaf(true, "t" + std::to_string(i)); }},
      {"false", [](Nat i) { return Formula::leaf(false, "f" + std::to_string(i)); }},
      {"even", [](Nat i) { return Formula::leaf(i % 2 == 0, "even(" + std::to_string(i) + ")"); }},
      {"odd", [](Nat i) { return Formula::leaf(i % 2 == 1, "odd(" + std::to_string(i) + ")"); }},
  };
  return registry;
}

namespace {

class Reader {
public:
  Reader(const std::string& text, const GeneratorRegistry& registry)
      : text_(text), registry_(registry) {}

  Formula parse() {
    Formula f = formula();
    skip();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return f;
  }

private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string atom() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"')
      ++pos_;
    if (start == pos_) throw ParseError("expected a symbol", pos_);
    return text_.substr(start, pos_ - start);
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) throw ParseError("unterminated string", pos_);
    ++pos_;
    return out;
  }

  Formula formula() {
    expect('(');
    const std::size_t at = pos_;
    const std::string head = atom();
    if (head == "leaf") {
      const std::string v = atom();
      if (v != "0" && v != "1") throw ParseError("leaf value must be 0 or 1", at);
      std::string label, neg;
      if (peek('"')) label = quoted();
      if (peek('"')) neg = quoted();
      expect(')');
      return Formula::leaf(v == "1", label, neg);
    }
    Connective conn;
    if (head == "and")
      conn = Connective::And;
    else if (head == "or")
      conn = Connective::Or;
    else
      throw ParseError("unknown form '" + head + "'", at);

    std::vector<Segment> segs;
    std::vector<Formula> run;
    auto flush = [&] {
      if (!run.empty()) segs.push_back(Segment::list(std::move(run)));
      run.clear();
    };
    while (!peek(')')) {
      if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
      const std::size_t save = pos_;
      expect('(');
      const std::string inner = atom();
      if (inner != "gen") {
        pos_ = save;
        run.push_back(formula());
        continue;
      }
      const std::string bound = atom();
      const std::string name = quoted();
      expect(')');
      flush();
      segs.push_back(generator(name, bound, save));
    }
    expect(')');
    flush();
    return Formula::node(conn, std::move(segs));
  }

  Segment generator(const std::string& name, const std::string& bound, std::size_t at) {
    const bool negated = !name.empty() && name[0] == '~';
    const std::string base = negated ? name.substr(1) : name;
    auto it = registry_.find(base);
    if (it == registry_.end()) throw ParseError("unknown generator '" + base + "'", at);
    std::optional<Nat> b;
    if (bound != "inf") {
      try {
        b = std::stoull(bound);
      } catch (const std::exception&) {
        throw ParseError("bad generator bound '" + bound + "'", at);
      }
    }
    auto gen = it->second;
    Segment s = negated ? Segment::naturals("i", [gen](Nat i) { return negate(gen(i)); }, b)
                        : Segment::naturals("i", gen, b);
    s.source = name;
    return s;
  }

  const std::string& text_;
  const GeneratorRegistry& registry_;
  std::size_t pos_ = 0;
};

void write_quoted(std::ostream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out << '\\';
    out << c;
  }
  out << '"';
}

void write(std::ostream& out, const Formula& a) {
  if (a.is_leaf()) {
    out << "(leaf " << (a.value() ? '1' : '0');
    if (!a.label().empty()) {
      out << ' ';
      write_quoted(out, a.label());
      if (a.negated_label() != "not(" + a.label() + ")") {
        out << ' ';
        write_quoted(out, a.negated_label());
      }
    }
    out << ')';
    return;
  }
  out << (a.connective() == Connective::And ? "(and" : "(or");
  for (const auto& s : a.segments()) {
    if (s.is_list()) {
      for (const auto& c : *s.items) {
        out << ' ';
        write(out, c);
      }
      continue;
    }
    if (s.source.empty() || s.kind != IndexKind::Natural)
      throw std::invalid_argument("family '" + s.binder + "' has no serializable source");
    out << " (gen " << (s.bound ? std::to_string(*s.bound) : std::string("inf")) << ' ';
    write_quoted(out, s.source);
    out << ')';
  }
  out << ')';
}

}  // namespace

Formula read_formula(const std::string& text, const GeneratorRegistry& registry) {
  return Reader(text, registry).parse();
}

std::string write_formula(const Formula& a) {
  std::ostringstream out;
  write(out, a);
  return out.str();
}

}  // namespace gamesem
