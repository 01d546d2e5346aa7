#include <mgc/jet.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mgc {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] == '/' && !seen_slash && i > start && i + 1 < s.size()) {
      seen_slash = true;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw std::invalid_argument(fmt::format("malformed rational '{}'", s));
    }
  }
  if (start == s.size()) throw std::invalid_argument(fmt::format("malformed rational '{}'", s));
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// JetVar

JetVar::JetVar(Symbol symbol, int label) {
  if (label < 0 || label > 15) throw std::invalid_argument("jet variable label out of range");
  bits_ = (static_cast<std::uint64_t>(symbol) << 60) | (static_cast<std::uint64_t>(label) << 56);
}

JetVar::JetVar(Symbol symbol, int label, std::initializer_list<int> coords) : JetVar(symbol, label) {
  for (int c : coords) *this = derived(c);
}

int JetVar::order() const {
  int total = 0;
  for (int c = 0; c < kMaxDim; ++c) total += count(c);
  return total;
}

JetVar JetVar::derived(int coord) const {
  if (coord < 0 || coord >= kMaxDim) throw std::out_of_range("coordinate index out of range");
  if (symbol() == Symbol::coord) throw std::logic_error("coordinate functions are not jet variables");
  return with_count(coord, count(coord) + 1);
}

JetVar JetVar::with_count(int coord, int value) const {
  if (value > 0x7F) throw std::overflow_error("derivative order exceeds 127");
  JetVar r = *this;
  r.bits_ &= ~(std::uint64_t{0x7F} << shift(coord));
  r.bits_ |= static_cast<std::uint64_t>(value) << shift(coord);
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ m.size();
  for (const JetVar& v : m) {
    h ^= v.bits() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.resize(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), r.begin());
  return r;
}

namespace {

int merged_dim(int a, int b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw std::invalid_argument(fmt::format("dimension mismatch: {} vs {}", a, b));
}

bool monomial_less(const Term& a, const Term& b) { return a.monomial < b.monomial; }

}  // namespace

// ---------------------------------------------------------------------------
// DiffPoly

DiffPoly::DiffPoly(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("dimension out of range");
}

DiffPoly DiffPoly::constant(int dim, const Rational& c) {
  DiffPoly p(dim);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

DiffPoly DiffPoly::variable(int dim, JetVar v) {
  DiffPoly p(dim);
  p.terms_.push_back({Monomial{v}, Rational(1)});
  return p;
}

DiffPoly DiffPoly::from_terms(int dim, std::vector<Term> terms) {
  DiffPoly p(dim);
  for (Term& t : terms) std::sort(t.monomial.begin(), t.monomial.end());
  std::sort(terms.begin(), terms.end(), monomial_less);
  for (Term& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
  return p;
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  if (it != terms_.end() && it->monomial == m) return it->coefficient;
  return 0;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  dim_ = merged_dim(dim_, other.dim_);
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->monomial < a->monomial) {
      out.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (c != 0) out.push_back({std::move(a->monomial), std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) { return *this += -other; }

DiffPoly& DiffPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (Term& t : terms_) t.coefficient *= c;
  }
  return *this;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r = *this;
  for (Term& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  PolyBuilder builder(merged_dim(a.dim_, b.dim_));
  builder.add_product(a, b);
  return std::move(builder).build();
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial ||
        a.terms_[i].coefficient != b.terms_[i].coefficient)
      return false;
  }
  return true;
}

void PolyBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void PolyBuilder::add(const DiffPoly& p, const Rational& scale) {
  dim_ = merged_dim(dim_, p.dim());
  for (const Term& t : p.terms()) add(t.monomial, t.coefficient * scale);
}

void PolyBuilder::add_product(const DiffPoly& a, const DiffPoly& b, const Rational& scale) {
  dim_ = merged_dim(dim_, merged_dim(a.dim(), b.dim()));
  for (const Term& ta : a.terms()) {
    Rational ca = ta.coefficient * scale;
    for (const Term& tb : b.terms()) add(monomial_product(ta.monomial, tb.monomial), ca * tb.coefficient);
  }
}

DiffPoly PolyBuilder::build() && {
  DiffPoly p(dim_);
  p.terms_.reserve(acc_.size());
  for (auto& [m, c] : acc_) {
    if (c != 0) p.terms_.push_back({m, std::move(c)});
  }
  acc_.clear();
  std::sort(p.terms_.begin(), p.terms_.end(), monomial_less);
  return p;
}

DiffPoly dp_add(const DiffPoly& p, const DiffPoly& q) { return p + q; }
DiffPoly dp_mul(const DiffPoly& p, const DiffPoly& q) { return p * q; }
DiffPoly dp_scale(const DiffPoly& p, const Rational& c) { return p * c; }

DiffPoly dp_partial(const DiffPoly& p, int coord) {
  if (p.dim() != 0 && (coord < 0 || coord >= p.dim()))
    throw std::out_of_range(fmt::format("coordinate {} out of range for dimension {}", coord, p.dim()));
  if (coord < 0 || coord >= kMaxDim) throw std::out_of_range("coordinate index out of range");
  PolyBuilder builder(p.dim());
  for (const Term& t : p.terms()) {
    for (std::size_t k = 0; k < t.monomial.size(); ++k) {
      // Repeated factors: differentiate only the first copy and multiply by multiplicity.
      if (k > 0 && t.monomial[k] == t.monomial[k - 1]) continue;
      std::size_t mult = 1;
      while (k + mult < t.monomial.size() && t.monomial[k + mult] == t.monomial[k]) ++mult;
      const JetVar v = t.monomial[k];
      Monomial m = t.monomial;
      m.erase(m.begin() + static_cast<std::ptrdiff_t>(k));
      if (v.symbol() == Symbol::coord) {
        if (v.label() != coord) continue;
      } else {
        m.insert(std::upper_bound(m.begin(), m.end(), v.derived(coord)), v.derived(coord));
      }
      builder.add(m, t.coefficient * static_cast<long>(mult));
    }
  }
  return std::move(builder).build();
}

DiffPoly dp_partial(const DiffPoly& p, const std::array<int, kMaxDim>& counts) {
  DiffPoly r = p;
  for (int c = 0; c < kMaxDim; ++c)
    for (int k = 0; k < counts[c]; ++k) r = dp_partial(r, c);
  return r;
}

DiffPoly dp_substitute_reduction(const DiffPoly& p) {
  const int d = p.dim();
  if (d < 3) throw std::invalid_argument("dimensional reduction needs dimension >= 3");
  const int last = d - 1;
  const int last_casimir = d - 2;
  std::vector<Term> out;
  for (const Term& t : p.terms()) {
    Monomial m;
    bool vanishes = false;
    for (const JetVar& v : t.monomial) {
      if (v.symbol() == Symbol::coord) {
        if (v.label() == last) throw std::invalid_argument("reduction: explicit dependence on x^d");
        m.push_back(v);
        continue;
      }
      if (v.symbol() == Symbol::casimir && v.label() == last_casimir) {
        if (v.underived()) throw std::invalid_argument("reduction: underived last Casimir");
        if (v.order() == 1 && v.count(last) == 1) continue;  // a_{x^d} = 1
        vanishes = true;
        break;
      }
      if (v.count(last) > 0) {
        vanishes = true;
        break;
      }
      m.push_back(v);
    }
    if (!vanishes) out.push_back({std::move(m), t.coefficient});
  }
  return DiffPoly::from_terms(d - 1, std::move(out));
}

Rational dp_evaluate(const DiffPoly& p, const std::function<Rational(JetVar)>& value) {
  Rational sum = 0;
  for (const Term& t : p.terms()) {
    Rational prod = t.coefficient;
    for (const JetVar& v : t.monomial) prod *= value(v);
    sum += prod;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Text form

std::string coordinate_name(int dim, int coord) {
  if (dim <= 3) return std::string(1, "xyz"[coord]);
  return fmt::format("x{}", coord + 1);
}

std::string to_string(JetVar v, int dim) {
  std::string s;
  switch (v.symbol()) {
    case Symbol::rho: s = "rho"; break;
    case Symbol::casimir: s = fmt::format("a{}", v.label()); break;
    case Symbol::u: s = "u"; break;
    case Symbol::sink: s = v.label() < 3 ? std::string(1, "fgh"[v.label()]) : fmt::format("s{}", v.label()); break;
    case Symbol::coord: return coordinate_name(dim == 0 ? kMaxDim : dim, v.label());
  }
  if (!v.underived()) {
    s += '_';
    const int d = dim == 0 ? kMaxDim : dim;
    for (int c = 0; c < kMaxDim; ++c)
      for (int k = 0; k < v.count(c); ++k) s += coordinate_name(d, c);
  }
  return s;
}

std::string to_string(const Monomial& m, int dim) {
  if (m.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < m.size();) {
    std::size_t mult = 1;
    while (k + mult < m.size() && m[k + mult] == m[k]) ++mult;
    if (!s.empty()) s += '*';
    s += to_string(m[k], dim);
    if (mult > 1) s += fmt::format("^{}", mult);
    k += mult;
  }
  return s;
}

std::string to_string(const DiffPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const Term& t : p.terms()) {
    Rational c = t.coefficient;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (s.empty()) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    if (t.monomial.empty()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += to_string(t.monomial, p.dim());
    }
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  DiffPoly parse() {
    std::vector<Term> terms;
    skip_space();
    bool first = true;
    while (true) {
      skip_space();
      if (at_end()) break;
      int sign = 1;
      if (accept_minus()) {
        sign = -1;
      } else if (peek() == '+') {
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip_space();
      Term t = parse_term();
      if (sign < 0) t.coefficient = -t.coefficient;
      terms.push_back(std::move(t));
    }
    if (first) fail("empty polynomial");
    return DiffPoly::from_terms(dim_, std::move(terms));
  }

 private:
  Term parse_term() {
    Term t{Monomial{}, Rational(1)};
    bool expect_factor = true;
    while (expect_factor) {
      skip_space();
      if (at_end()) fail("expected factor");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coefficient *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
        auto [v, power] = parse_factor();
        for (int k = 0; k < power; ++k) t.monomial.push_back(v);
      } else {
        fail("expected factor");
      }
      skip_space();
      expect_factor = !at_end() && peek() == '*';
      if (expect_factor) ++pos_;
    }
    std::sort(t.monomial.begin(), t.monomial.end());
    return t;
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (den_start == pos_) fail("malformed fraction");
    }
    return parse_rational(text_.substr(start, pos_ - start));
  }

  std::pair<JetVar, int> parse_factor() {
    std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    int number = -1;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      number = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) number = number * 10 + (text_[pos_++] - '0');
    }
    JetVar v;
    bool is_coordinate = false;
    if (name == "rho" && number < 0) {
      v = JetVar::rho();
    } else if (name == "u" && number < 0) {
      v = JetVar::u();
    } else if (name == "a") {
      int label = number < 0 ? 1 : number;
      if (label < 1 || label > 9) fail("Casimir label must be in 1..9");
      v = JetVar::casimir(label);
    } else if ((name == "f" || name == "g" || name == "h") && number < 0) {
      v = JetVar::sink(name == "f" ? 0 : name == "g" ? 1 : 2);
    } else if (name == "s" && number >= 0) {
      v = JetVar::sink(number);
    } else {
      int coord = coordinate_index(name, number);
      if (coord < 0) fail(fmt::format("unknown symbol '{}'", name));
      v = JetVar::coordinate(coord);
      is_coordinate = true;
    }
    if (!at_end() && peek() == '_') {
      if (is_coordinate) fail("coordinates cannot carry derivatives");
      ++pos_;
      bool any = false;
      while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
        int c = parse_coordinate_letter();
        if (c < 0) break;
        v = v.derived(c);
        any = true;
      }
      if (!any) fail("expected derivative coordinates after '_'");
    }
    int power = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      std::size_t s = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (s == pos_) fail("expected exponent");
      power = std::stoi(std::string(text_.substr(s, pos_ - s)));
    }
    return {v, power};
  }

  int coordinate_index(const std::string& name, int number) const {
    if (dim_ <= 3) {
      if (number >= 0 || name.size() != 1) return -1;
      auto p = std::string_view("xyz").find(name[0]);
      if (p == std::string_view::npos || static_cast<int>(p) >= dim_) return -1;
      return static_cast<int>(p);
    }
    if (name != "x" || number < 1 || number > dim_) return -1;
    return number - 1;
  }

  int parse_coordinate_letter() {
    char c = peek();
    if (dim_ <= 3) {
      auto p = std::string_view("xyz").find(c);
      if (p == std::string_view::npos) return -1;
      if (static_cast<int>(p) >= dim_) fail("derivative coordinate exceeds dimension");
      ++pos_;
      return static_cast<int>(p);
    }
    if (c != 'x') return -1;
    ++pos_;
    int n = 0;
    std::size_t s = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      n = n * 10 + (text_[pos_++] - '0');
      // x1..x9 are single digit; stop once the index is complete for dim < 10.
      if (dim_ < 10) break;
    }
    if (s == pos_ || n < 1 || n > dim_) fail("malformed coordinate index");
    return n - 1;
  }

  bool accept_minus() {
    if (peek() == '-') {
      ++pos_;
      return true;
    }
    // U+2212 MINUS SIGN
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(fmt::format("polynomial parse error at {}: {}", pos_, what));
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffPoly parse_diffpoly(std::string_view text, int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dimension out of range");
  return PolyParser(text, dim).parse();
}

}  // namespace mgc
