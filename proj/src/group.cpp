#include "roundness/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>

#include "roundness/error.hpp"

namespace roundness {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, std::string_view context) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::ParseError, "expected integer in " + std::string(context) + ", got '" +
                                           std::string(s) + "'");
  }
  return v;
}

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

bool has_parens(std::string_view s) {
  return s.size() >= 2 && s.front() == '(' && s.back() == ')';
}

std::vector<std::string> split_on(std::string_view text, std::string_view sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text.compare(i, sep.size(), sep) == 0) {
      out.emplace_back(text.substr(start, i - start));
      start = i + sep.size();
      i = start - 1;
    }
  }
  out.emplace_back(text.substr(start));
  return out;
}

GroupSpec parse_factor(std::string_view f) {
  f = trim(f);
  if (has_parens(f)) return parse_group_spec(f.substr(1, f.size() - 2));
  if (f.find('*') != std::string_view::npos) {
    std::vector<long long> orders;
    for (const auto& part : split_on(f, "*")) {
      auto p = trim(part);
      if (p == "Z") {
        orders.push_back(0);
      } else if (p.substr(0, 2) == "Z/") {
        orders.push_back(parse_int(p.substr(2), "free product factor"));
      } else {
        throw Error(ErrorCode::ParseError, "bad free product factor '" + std::string(p) + "'");
      }
    }
    return GroupSpec::free_product(std::move(orders));
  }
  if (f == "Z") return GroupSpec::free_abelian(1);
  if (f.substr(0, 2) == "Z^") return GroupSpec::free_abelian(static_cast<int>(parse_int(f.substr(2), "rank")));
  if (f.substr(0, 2) == "Z/") return GroupSpec::cyclic(parse_int(f.substr(2), "modulus"));
  if (f.substr(0, 2) == "F_") return GroupSpec::free(static_cast<int>(parse_int(f.substr(2), "rank")));
  if (f.substr(0, 2) == "D_") return GroupSpec::dihedral(parse_int(f.substr(2), "dihedral parameter"));
  throw Error(ErrorCode::ParseError, "unknown group '" + std::string(f) + "'");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

long long factor_order(const GroupSpec& spec, int letter) {
  return spec.kind == GroupSpec::Kind::Free ? 0 : spec.orders[static_cast<std::size_t>(letter)];
}

int letter_count(const GroupSpec& spec) {
  return spec.kind == GroupSpec::Kind::Free ? static_cast<int>(spec.param)
                                            : static_cast<int>(spec.orders.size());
}

void push_syllable(const GroupSpec& spec, std::vector<Syllable>& w, Syllable s) {
  long long m = factor_order(spec, s.letter);
  if (m > 0) s.exp = mod(s.exp, m);
  if (s.exp == 0) return;
  if (!w.empty() && w.back().letter == s.letter) {
    long long e = w.back().exp + s.exp;
    if (m > 0) e = mod(e, m);
    if (e == 0) {
      w.pop_back();
    } else {
      w.back().exp = e;
    }
    return;
  }
  w.push_back(s);
}

}  // namespace

GroupSpec GroupSpec::free_abelian(int rank) {
  require(rank >= 1, "free abelian rank must be >= 1");
  GroupSpec s;
  s.kind = Kind::FreeAbelian;
  s.param = rank;
  return s;
}

GroupSpec GroupSpec::cyclic(long long modulus) {
  require(modulus >= 2, "cyclic modulus must be >= 2");
  GroupSpec s;
  s.kind = Kind::Cyclic;
  s.param = modulus;
  return s;
}

GroupSpec GroupSpec::free(int rank) {
  require(rank >= 1, "free rank must be >= 1");
  GroupSpec s;
  s.kind = Kind::Free;
  s.param = rank;
  return s;
}

GroupSpec GroupSpec::free_product(std::vector<long long> orders) {
  require(!orders.empty(), "free product needs at least one factor");
  for (long long o : orders) require(o == 0 || o >= 2, "free product factor orders must be 0 or >= 2");
  GroupSpec s;
  s.kind = Kind::FreeProduct;
  s.param = static_cast<long long>(orders.size());
  s.orders = std::move(orders);
  return s;
}

GroupSpec GroupSpec::direct_product(std::vector<GroupSpec> factors) {
  require(!factors.empty(), "direct product needs at least one factor");
  GroupSpec s;
  s.kind = Kind::DirectProduct;
  s.param = static_cast<long long>(factors.size());
  s.factors = std::move(factors);
  return s;
}

GroupSpec GroupSpec::dihedral(long long m) {
  require(m >= 2, "dihedral parameter must be >= 2");
  GroupSpec s;
  s.kind = Kind::Dihedral;
  s.param = m;
  return s;
}

GroupSpec parse_group_spec(std::string_view text) {
  auto parts = split_on(trim(text), " x ");
  if (parts.size() == 1) return parse_factor(parts[0]);
  std::vector<GroupSpec> factors;
  for (const auto& p : parts) factors.push_back(parse_factor(p));
  return GroupSpec::direct_product(std::move(factors));
}

std::string to_string(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupSpec::Kind::FreeAbelian: return "Z^" + std::to_string(spec.param);
    case GroupSpec::Kind::Cyclic: return "Z/" + std::to_string(spec.param);
    case GroupSpec::Kind::Free: return "F_" + std::to_string(spec.param);
    case GroupSpec::Kind::Dihedral: return "D_" + std::to_string(spec.param);
    case GroupSpec::Kind::FreeProduct: {
      std::string out;
      for (std::size_t i = 0; i < spec.orders.size(); ++i) {
        if (i) out += " * ";
        out += spec.orders[i] == 0 ? std::string("Z") : "Z/" + std::to_string(spec.orders[i]);
      }
      return out;
    }
    case GroupSpec::Kind::DirectProduct: {
      std::string out;
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) out += " x ";
        const auto& f = spec.factors[i];
        bool wrap = f.kind == GroupSpec::Kind::DirectProduct ||
                    (f.kind == GroupSpec::Kind::FreeProduct && f.orders.size() > 1);
        out += wrap ? "(" + to_string(f) + ")" : to_string(f);
      }
      return out;
    }
  }
  return "?";
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.coords <=> b.coords; c != 0) return c;
  if (auto c = a.word <=> b.word; c != 0) return c;
  return std::lexicographical_compare_three_way(a.parts.begin(), a.parts.end(), b.parts.begin(),
                                                b.parts.end());
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (long long c : g.coords) mix(static_cast<std::uint64_t>(c));
  mix(0xabcdef);
  for (const auto& s : g.word) {
    mix(static_cast<std::uint64_t>(s.letter));
    mix(static_cast<std::uint64_t>(s.exp));
  }
  mix(0x123457);
  for (const auto& p : g.parts) mix((*this)(p));
  return h;
}

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  for (const auto& f : spec_.factors) factor_groups_.emplace_back(f);
}

GroupElement Group::identity() const {
  GroupElement e;
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian: e.coords.assign(static_cast<std::size_t>(spec_.param), 0); break;
    case GroupSpec::Kind::Cyclic: e.coords = {0}; break;
    case GroupSpec::Kind::Dihedral: e.coords = {0, 0}; break;
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct: break;
    case GroupSpec::Kind::DirectProduct:
      for (const auto& f : factor_groups_) e.parts.push_back(f.identity());
      break;
  }
  return e;
}

void Group::check(const GroupElement& g) const {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::SpecMismatch, "element does not belong to " + to_string(spec_) + ": " + why);
  };
  const std::size_t n = static_cast<std::size_t>(spec_.param);
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
      if (g.coords.size() != n || !g.word.empty() || !g.parts.empty()) fail("expected integer vector of length " + std::to_string(n));
      return;
    case GroupSpec::Kind::Cyclic:
      if (g.coords.size() != 1 || !g.word.empty() || !g.parts.empty() || g.coords[0] < 0 ||
          g.coords[0] >= spec_.param)
        fail("expected residue");
      return;
    case GroupSpec::Kind::Dihedral:
      if (g.coords.size() != 2 || !g.word.empty() || !g.parts.empty() || g.coords[0] < 0 ||
          g.coords[0] >= spec_.param || (g.coords[1] != 0 && g.coords[1] != 1))
        fail("expected rotation/reflection pair");
      return;
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct: {
      if (!g.coords.empty() || !g.parts.empty()) fail("expected reduced word");
      const int letters = letter_count(spec_);
      for (std::size_t i = 0; i < g.word.size(); ++i) {
        const auto& s = g.word[i];
        if (s.letter < 0 || s.letter >= letters) fail("letter out of range");
        long long m = factor_order(spec_, s.letter);
        if (s.exp == 0 || (m > 0 && (s.exp < 0 || s.exp >= m))) fail("exponent not normalized");
        if (i > 0 && g.word[i - 1].letter == s.letter) fail("word not reduced");
      }
      return;
    }
    case GroupSpec::Kind::DirectProduct:
      if (!g.coords.empty() || !g.word.empty() || g.parts.size() != factor_groups_.size()) fail("expected tuple");
      for (std::size_t i = 0; i < g.parts.size(); ++i) factor_groups_[i].check(g.parts[i]);
      return;
  }
}

GroupElement Group::multiply(const GroupElement& g, const GroupElement& h) const {
  check(g);
  check(h);
  GroupElement out;
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
      out.coords.resize(g.coords.size());
      for (std::size_t i = 0; i < g.coords.size(); ++i) out.coords[i] = g.coords[i] + h.coords[i];
      break;
    case GroupSpec::Kind::Cyclic:
      out.coords = {mod(g.coords[0] + h.coords[0], spec_.param)};
      break;
    case GroupSpec::Kind::Dihedral: {
      long long k = g.coords[1] ? g.coords[0] - h.coords[0] : g.coords[0] + h.coords[0];
      out.coords = {mod(k, spec_.param), g.coords[1] ^ h.coords[1]};
      break;
    }
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct:
      out.word = g.word;
      for (const auto& s : h.word) push_syllable(spec_, out.word, s);
      break;
    case GroupSpec::Kind::DirectProduct:
      for (std::size_t i = 0; i < factor_groups_.size(); ++i)
        out.parts.push_back(factor_groups_[i].multiply(g.parts[i], h.parts[i]));
      break;
  }
  return out;
}

GroupElement Group::inverse(const GroupElement& g) const {
  check(g);
  GroupElement out;
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
      for (long long c : g.coords) out.coords.push_back(-c);
      break;
    case GroupSpec::Kind::Cyclic:
      out.coords = {mod(-g.coords[0], spec_.param)};
      break;
    case GroupSpec::Kind::Dihedral:
      out.coords = g.coords[1] ? g.coords : std::vector<long long>{mod(-g.coords[0], spec_.param), 0};
      break;
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct:
      for (auto it = g.word.rbegin(); it != g.word.rend(); ++it)
        push_syllable(spec_, out.word, Syllable{it->letter, -it->exp});
      break;
    case GroupSpec::Kind::DirectProduct:
      for (std::size_t i = 0; i < factor_groups_.size(); ++i)
        out.parts.push_back(factor_groups_[i].inverse(g.parts[i]));
      break;
  }
  return out;
}

GroupElement Group::power(const GroupElement& g, long long k) const {
  GroupElement base = k < 0 ? inverse(g) : g;
  unsigned long long e = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  GroupElement acc = identity();
  while (e) {
    if (e & 1ULL) acc = multiply(acc, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return acc;
}

std::optional<long long> Group::order(const GroupElement& g) const {
  check(g);
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
      if (std::all_of(g.coords.begin(), g.coords.end(), [](long long c) { return c == 0; })) return 1;
      return std::nullopt;
    case GroupSpec::Kind::Cyclic:
      return spec_.param / std::gcd(g.coords[0], spec_.param);
    case GroupSpec::Kind::Dihedral:
      if (g.coords[1]) return 2;
      return spec_.param / std::gcd(g.coords[0], spec_.param);
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct: {
      // Conjugate to a cyclically reduced word; only a single syllable from a
      // finite factor has finite order.
      GroupElement w = g;
      while (w.word.size() >= 2 && w.word.front().letter == w.word.back().letter) {
        GroupElement head;
        head.word = {w.word.front()};
        w = multiply(multiply(inverse(head), w), head);
      }
      if (w.word.empty()) return 1;
      if (w.word.size() == 1) {
        long long m = factor_order(spec_, w.word[0].letter);
        if (m > 0) return m / std::gcd(w.word[0].exp, m);
      }
      return std::nullopt;
    }
    case GroupSpec::Kind::DirectProduct: {
      long long acc = 1;
      for (std::size_t i = 0; i < factor_groups_.size(); ++i) {
        auto o = factor_groups_[i].order(g.parts[i]);
        if (!o) return std::nullopt;
        acc = std::lcm(acc, *o);
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::optional<long long> Group::size() const {
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
    case GroupSpec::Kind::Free: return std::nullopt;
    case GroupSpec::Kind::Cyclic: return spec_.param;
    case GroupSpec::Kind::Dihedral: return 2 * spec_.param;
    case GroupSpec::Kind::FreeProduct:
      if (spec_.orders.size() == 1 && spec_.orders[0] > 0) return spec_.orders[0];
      return std::nullopt;
    case GroupSpec::Kind::DirectProduct: {
      long long acc = 1;
      for (const auto& f : factor_groups_) {
        auto s = f.size();
        if (!s) return std::nullopt;
        acc *= *s;
      }
      return acc;
    }
  }
  return std::nullopt;
}

std::string Group::letter_name(int k, int letters) {
  static constexpr std::string_view kNames = "xyzwuv";
  if (letters <= static_cast<int>(kNames.size())) return std::string(1, kNames[static_cast<std::size_t>(k)]);
  return "x" + std::to_string(k + 1);
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  for (auto& s : split_on(text, std::string_view(&sep, 1))) {
    auto t = trim(s);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

GroupElement Group::parse(std::string_view literal) const {
  auto s = trim(literal);
  const bool word_group = spec_.kind == GroupSpec::Kind::Free || spec_.kind == GroupSpec::Kind::FreeProduct ||
                          spec_.kind == GroupSpec::Kind::Dihedral;
  if (s == "e" || (s == "1" && word_group))
    return identity();
  GroupElement g;
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian: {
      std::vector<std::string> items;
      if (has_parens(s)) {
        items = split_top_level(s.substr(1, s.size() - 2));
      } else {
        items.emplace_back(s);
      }
      if (items.size() != static_cast<std::size_t>(spec_.param))
        throw Error(ErrorCode::SpecMismatch, "'" + std::string(s) + "' has wrong dimension for " + to_string(spec_));
      for (const auto& it : items) g.coords.push_back(parse_int(it, "vector"));
      return g;
    }
    case GroupSpec::Kind::Cyclic:
      g.coords = {mod(parse_int(s, "residue"), spec_.param)};
      return g;
    case GroupSpec::Kind::DirectProduct: {
      if (!has_parens(s)) throw Error(ErrorCode::ParseError, "direct product element must look like (a;b)");
      auto items = split_on(s.substr(1, s.size() - 2), ";");
      if (items.size() != factor_groups_.size())
        throw Error(ErrorCode::SpecMismatch, "'" + std::string(s) + "' has wrong number of components");
      for (std::size_t i = 0; i < items.size(); ++i) g.parts.push_back(factor_groups_[i].parse(items[i]));
      return g;
    }
    case GroupSpec::Kind::Dihedral:
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct: {
      const int letters = spec_.kind == GroupSpec::Kind::Dihedral ? 2 : letter_count(spec_);
      GroupElement acc = identity();
      for (const auto& tok : split_on(s, "*")) {
        auto t = trim(tok);
        auto caret = t.find('^');
        auto name = trim(t.substr(0, caret));
        long long e = caret == std::string_view::npos ? 1 : parse_int(t.substr(caret + 1), "exponent");
        int letter = -1;
        for (int k = 0; k < letters; ++k) {
          std::string candidate = spec_.kind == GroupSpec::Kind::Dihedral ? std::string(k == 0 ? "r" : "s")
                                                                          : letter_name(k, letters);
          if (name == candidate) letter = k;
        }
        if (letter < 0) throw Error(ErrorCode::ParseError, "unknown generator '" + std::string(name) + "'");
        GroupElement atom;
        if (spec_.kind == GroupSpec::Kind::Dihedral) {
          atom.coords = letter == 0 ? std::vector<long long>{1, 0} : std::vector<long long>{0, 1};
        } else {
          atom.word = {Syllable{letter, 1}};
        }
        acc = multiply(acc, power(atom, e));
      }
      return acc;
    }
  }
  return g;
}

std::string Group::format(const GroupElement& g) const {
  check(g);
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian: {
      if (g.coords.size() == 1) return std::to_string(g.coords[0]);
      std::string out = "(";
      for (std::size_t i = 0; i < g.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(g.coords[i]);
      }
      return out + ")";
    }
    case GroupSpec::Kind::Cyclic: return std::to_string(g.coords[0]);
    case GroupSpec::Kind::Dihedral: {
      std::string out;
      if (g.coords[0] == 1) out = "r";
      else if (g.coords[0] > 1) out = "r^" + std::to_string(g.coords[0]);
      if (g.coords[1]) out += out.empty() ? "s" : "*s";
      return out.empty() ? "e" : out;
    }
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct: {
      if (g.word.empty()) return "e";
      std::string out;
      const int letters = letter_count(spec_);
      for (const auto& s : g.word) {
        if (!out.empty()) out += "*";
        out += letter_name(s.letter, letters);
        if (s.exp != 1) out += "^" + std::to_string(s.exp);
      }
      return out;
    }
    case GroupSpec::Kind::DirectProduct: {
      std::string out = "(";
      for (std::size_t i = 0; i < g.parts.size(); ++i) {
        if (i) out += ";";
        out += factor_groups_[i].format(g.parts[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

std::vector<GroupElement> Group::standard_generators() const {
  std::vector<GroupElement> out;
  switch (spec_.kind) {
    case GroupSpec::Kind::FreeAbelian:
      for (long long i = 0; i < spec_.param; ++i) {
        GroupElement g = identity();
        g.coords[static_cast<std::size_t>(i)] = 1;
        out.push_back(g);
      }
      break;
    case GroupSpec::Kind::Cyclic: {
      GroupElement g;
      g.coords = {1};
      out.push_back(g);
      break;
    }
    case GroupSpec::Kind::Dihedral: {
      GroupElement r, s;
      r.coords = {1, 0};
      s.coords = {0, 1};
      out = {r, s};
      break;
    }
    case GroupSpec::Kind::Free:
    case GroupSpec::Kind::FreeProduct:
      for (int k = 0; k < letter_count(spec_); ++k) {
        GroupElement g;
        g.word = {Syllable{k, 1}};
        out.push_back(g);
      }
      break;
    case GroupSpec::Kind::DirectProduct:
      for (std::size_t i = 0; i < factor_groups_.size(); ++i) {
        for (const auto& f : factor_groups_[i].standard_generators()) {
          GroupElement g = identity();
          g.parts[i] = f;
          out.push_back(g);
        }
      }
      break;
  }
  return out;
}

}  // namespace roundness
