#include "latticelab/order_type.hpp"

#include <algorithm>
#include <numeric>

#include "latticelab/error.hpp"

namespace latticelab {

OrderType OrderType::fin(std::size_t n) { return OrderType(Kind::Fin, n, {}); }
OrderType OrderType::omega() { return OrderType(Kind::Omega, 0, {}); }
OrderType OrderType::omega_star() { return OrderType(Kind::OmegaStar, 0, {}); }
OrderType OrderType::eta() { return OrderType(Kind::Eta, 0, {}); }

OrderType OrderType::sum(std::vector<OrderType> parts) {
  if (parts.empty()) throw InvalidOrder("empty sum of order types");
  return OrderType(Kind::Sum, 0, std::move(parts));
}

OrderType OrderType::omega_dot(OrderType inner) { return OrderType(Kind::OmegaDot, 0, {std::move(inner)}); }

bool OrderType::is_ordinal() const {
  if (kind_ == Kind::OmegaStar || kind_ == Kind::Eta) return false;
  return std::all_of(children_.begin(), children_.end(), [](const OrderType& c) { return c.is_ordinal(); });
}

bool OrderType::contains_eta() const {
  if (kind_ == Kind::Eta) return true;
  return std::any_of(children_.begin(), children_.end(), [](const OrderType& c) { return c.contains_eta(); });
}

bool OrderType::is_finite() const {
  switch (kind_) {
    case Kind::Fin: return true;
    case Kind::Sum:
      return std::all_of(children_.begin(), children_.end(), [](const OrderType& c) { return c.is_finite(); });
    case Kind::OmegaDot: return normalize(inner()) == fin(0);
    default: return false;
  }
}

std::size_t OrderType::depth() const {
  std::size_t d = 0;
  for (const auto& c : children_) d = std::max(d, c.depth());
  return d + 1;
}

std::string OrderType::to_string() const {
  switch (kind_) {
    case Kind::Fin: return std::to_string(count_);
    case Kind::Omega: return "w";
    case Kind::OmegaStar: return "w*";
    case Kind::Eta: return "eta";
    case Kind::OmegaDot: return "w.(" + inner().to_string() + ")";
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += "+";
        const auto& c = children_[i];
        out += c.kind() == Kind::Sum ? "(" + c.to_string() + ")" : c.to_string();
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  OrderType parse() {
    OrderType out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  OrderType expr() {
    std::vector<OrderType> parts{term()};
    while (accept("+")) parts.push_back(term());
    return parts.size() == 1 ? std::move(parts.front()) : OrderType::sum(std::move(parts));
  }

  OrderType term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c >= '0' && c <= '9') {
      std::size_t n = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        if (n > (std::size_t{1} << 40)) fail("integer too large");
        n = n * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        ++pos_;
      }
      return OrderType::fin(n);
    }
    if (accept("eta")) return OrderType::eta();
    if (accept("(")) {
      OrderType inner = expr();
      expect(")");
      return inner;
    }
    if (accept("w")) {
      if (accept("*")) return OrderType::omega_star();
      if (accept(".")) {
        expect("(");
        OrderType inner = expr();
        expect(")");
        return OrderType::omega_dot(std::move(inner));
      }
      return OrderType::omega();
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OrderType parse_order_type(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------- normalisation

OrderType normalize(const OrderType& a) {
  using K = OrderType::Kind;
  switch (a.kind()) {
    case K::OmegaDot: {
      OrderType inner = normalize(a.inner());
      if (inner == OrderType::fin(0)) return inner;
      if (inner == OrderType::fin(1)) return OrderType::omega();
      return OrderType::omega_dot(std::move(inner));
    }
    case K::Sum: {
      std::vector<OrderType> flat;
      for (const auto& c : a.children()) {
        OrderType n = normalize(c);
        if (n.kind() == K::Sum)
          flat.insert(flat.end(), n.children().begin(), n.children().end());
        else
          flat.push_back(std::move(n));
      }
      std::vector<OrderType> merged;
      for (auto& f : flat) {
        if (f.kind() == K::Fin) {
          if (f.count() == 0) continue;
          if (!merged.empty() && merged.back().kind() == K::Fin) {
            merged.back() = OrderType::fin(merged.back().count() + f.count());
            continue;
          }
        }
        merged.push_back(std::move(f));
      }
      if (merged.empty()) return OrderType::fin(0);
      if (merged.size() == 1) return std::move(merged.front());
      return OrderType::sum(std::move(merged));
    }
    default: return a;
  }
}

std::vector<OrderType> atoms(const OrderType& a) {
  OrderType n = normalize(a);
  if (n == OrderType::fin(0)) return {};
  if (n.kind() == OrderType::Kind::Sum) return n.children();
  return {n};
}

bool has_first_element(const OrderType& a) {
  using K = OrderType::Kind;
  const auto parts = atoms(a);
  if (parts.empty()) return false;
  const OrderType& head = parts.front();
  switch (head.kind()) {
    case K::Fin:
    case K::Omega: return true;
    case K::OmegaDot: return has_first_element(head.inner());
    default: return false;
  }
}

// ------------------------------------------------------------ enumeration

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string label_to_string(const Label& l) {
  std::string out;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ":";
    out += l[i].to_string();
  }
  return out;
}

namespace {

Rational integer(std::int64_t v) { return Rational{v, 1}; }

Label prefixed(std::int64_t head, const Label& tail) {
  Label out;
  out.reserve(tail.size() + 1);
  out.push_back(integer(head));
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

}  // namespace

std::vector<GridPoint> grid_enumeration(const OrderType& a, std::size_t count) {
  const std::vector<Label> columns = enumerate(a, count);
  std::vector<GridPoint> out;
  out.reserve(count);
  for (std::size_t d = 0; out.size() < count && !columns.empty(); ++d) {
    const std::size_t last = std::min(d, columns.size() - 1);
    for (std::size_t r = 0; r <= last && out.size() < count; ++r) out.push_back(GridPoint{d - r, r, columns[r]});
  }
  return out;
}

std::vector<Label> enumerate(const OrderType& a, std::size_t count) {
  using K = OrderType::Kind;
  std::vector<Label> out;
  switch (a.kind()) {
    case K::Fin:
      for (std::size_t j = 0; j < std::min(count, a.count()); ++j) out.push_back(Label{integer(static_cast<std::int64_t>(j))});
      break;
    case K::Omega:
      for (std::size_t j = 0; j < count; ++j) out.push_back(Label{integer(static_cast<std::int64_t>(j))});
      break;
    case K::OmegaStar:
      for (std::size_t j = 0; j < count; ++j) out.push_back(Label{integer(-static_cast<std::int64_t>(j))});
      break;
    case K::Eta:
      // breadth-first dyadics in (0,1): 1/2, 1/4, 3/4, 1/8, ...
      for (std::int64_t den = 2; out.size() < count; den *= 2)
        for (std::int64_t num = 1; num < den && out.size() < count; num += 2) out.push_back(Label{Rational{num, den}});
      break;
    case K::Sum: {
      std::vector<std::vector<Label>> parts;
      for (const auto& c : a.children()) parts.push_back(enumerate(c, count));
      // one element per non-exhausted summand per round
      for (std::size_t round = 0; out.size() < count; ++round) {
        bool any = false;
        for (std::size_t i = 0; i < parts.size() && out.size() < count; ++i) {
          if (round >= parts[i].size()) continue;
          any = true;
          out.push_back(prefixed(static_cast<std::int64_t>(i), parts[i][round]));
        }
        if (!any) break;
      }
      break;
    }
    case K::OmegaDot:
      for (auto& g : grid_enumeration(a.inner(), count)) {
        Label l = std::move(g.column);
        l.push_back(integer(static_cast<std::int64_t>(g.row)));
        out.push_back(std::move(l));
      }
      break;
  }
  return out;
}

TruncatedChain truncate(const OrderType& a, std::size_t n) {
  TruncatedChain out;
  out.stage = n;
  std::vector<Label> enumerated = enumerate(a, n);
  const std::size_t m = enumerated.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return enumerated[x] < enumerated[y]; });
  out.position_of.assign(m, 0);
  for (std::size_t p = 0; p < m; ++p) {
    out.position_of[order[p]] = p;
    if (p > 0 && !(enumerated[order[p - 1]] < enumerated[order[p]]))
      throw InvalidOrder("enumeration of " + a.to_string() + " repeats a point");
    out.labels.push_back(enumerated[order[p]]);
  }
  std::vector<std::string> names;
  for (const auto& l : out.labels) names.push_back(label_to_string(l));
  out.chain = chain(m).with_labels(std::move(names));
  return out;
}

// ---------------------------------------------------------- decompositions

std::variant<OmegaSplit, FiniteCase> decompose_omega(const OrderType& a) {
  using K = OrderType::Kind;
  if (!a.is_ordinal()) throw NotOrdinal(a.to_string() + " is not an ordinal");
  std::vector<OrderType> parts = atoms(a);
  std::size_t remainder = 0;
  if (!parts.empty() && parts.back().kind() == K::Fin) {
    remainder = parts.back().count();
    parts.pop_back();
  }
  if (parts.empty()) return FiniteCase{remainder};
  // a finite summand followed by an infinite ordinal is absorbed by it
  std::vector<OrderType> multiplier;
  for (const auto& p : parts) {
    switch (p.kind()) {
      case K::Fin: break;
      case K::Omega: multiplier.push_back(OrderType::fin(1)); break;
      case K::OmegaDot: multiplier.push_back(p.inner()); break;
      default: throw NotOrdinal(a.to_string() + " is not an ordinal");
    }
  }
  return OmegaSplit{normalize(OrderType::sum(std::move(multiplier))), remainder};
}

namespace {

bool plain_atom(const OrderType& a) {
  using K = OrderType::Kind;
  return a.kind() == K::Fin || a.kind() == K::Omega || a.kind() == K::OmegaStar;
}

// 1 + w.(g) embeds in w.(g)
bool absorbs_point(const OrderType& g) { return has_first_element(g) || g.contains_eta(); }

OrderType sum_of(std::vector<OrderType> parts) {
  if (parts.empty()) return OrderType::fin(0);
  return normalize(OrderType::sum(std::move(parts)));
}

}  // namespace

PCase classify_for_p(const OrderType& a) {
  using K = OrderType::Kind;
  const std::vector<OrderType> parts = atoms(a);
  if (parts.empty()) throw Unclassifiable("the empty order type has no case");
  std::size_t n = 0;
  std::size_t start = 0;
  if (parts.front().kind() == K::Fin) {
    n = parts.front().count();
    start = 1;
  }
  if (start == parts.size()) return PCase{PCase::Tag::FirstBlocked, n, OrderType::fin(0)};

  const OrderType& head = parts[start];
  std::vector<OrderType> rest(parts.begin() + static_cast<std::ptrdiff_t>(start), parts.end());
  std::vector<OrderType> tail(parts.begin() + static_cast<std::ptrdiff_t>(start) + 1, parts.end());

  if (head.kind() == K::Omega) return PCase{PCase::Tag::OmegaHead, 0, sum_of(tail)};
  if (head.kind() == K::Eta) return PCase{PCase::Tag::OmegaHead, 0, sum_of(rest)};
  if (head.kind() == K::OmegaDot) {
    const auto inner = atoms(head.inner());
    if (inner.front().kind() == K::Fin) {
      // w.(k + g) = w + w.(k - 1 + g)
      std::vector<OrderType> shifted{OrderType::fin(inner.front().count() - 1)};
      shifted.insert(shifted.end(), inner.begin() + 1, inner.end());
      std::vector<OrderType> next{normalize(OrderType::omega_dot(sum_of(shifted)))};
      next.insert(next.end(), tail.begin(), tail.end());
      return PCase{PCase::Tag::OmegaHead, 0, sum_of(next)};
    }
    if (absorbs_point(head.inner())) return PCase{PCase::Tag::OmegaHead, 0, sum_of(rest)};
  }

  // the head has no first element
  if (a.contains_eta()) return PCase{PCase::Tag::OmegaHead, 0, normalize(a)};
  bool plain = true;
  for (std::size_t i = start; i < parts.size(); ++i) {
    const bool blocked_head = i == start && parts[i].kind() == K::OmegaDot;
    plain = plain && (plain_atom(parts[i]) || blocked_head);
  }
  if (plain) return PCase{PCase::Tag::FirstBlocked, n, sum_of(rest)};
  throw Unclassifiable("cannot decide whether 1 + " + a.to_string() + " embeds in " + a.to_string());
}

std::string to_string(PCase::Tag tag) {
  switch (tag) {
    case PCase::Tag::FirstBlocked: return "first-blocked";
    case PCase::Tag::OmegaHead: return "omega-head";
    case PCase::Tag::Plain: return "plain";
  }
  return {};
}

}  // namespace latticelab
