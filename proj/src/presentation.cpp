#include "biq/presentation.hpp"

#include <algorithm>

namespace biq {

struct BiquasileWord::Node {
  WordOp op = WordOp::generator;
  int symbol = -1;
  BiquasileWord lhs{nullptr};
  BiquasileWord rhs{nullptr};
};

BiquasileWord BiquasileWord::gen(int symbol) {
  auto node = std::make_shared<Node>();
  node->symbol = symbol;
  return BiquasileWord(std::move(node));
}

BiquasileWord BiquasileWord::apply(WordOp op, BiquasileWord lhs, BiquasileWord rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return BiquasileWord(std::move(node));
}

WordOp BiquasileWord::op() const noexcept { return node_->op; }
int BiquasileWord::symbol() const noexcept { return node_->symbol; }
const BiquasileWord& BiquasileWord::lhs() const { return node_->lhs; }
const BiquasileWord& BiquasileWord::rhs() const { return node_->rhs; }

int BiquasileWord::occurrences(int symbol) const {
  if (is_generator()) return node_->symbol == symbol ? 1 : 0;
  return lhs().occurrences(symbol) + rhs().occurrences(symbol);
}

void BiquasileWord::collect_symbols(std::vector<int>& out) const {
  if (is_generator()) {
    out.push_back(node_->symbol);
    return;
  }
  lhs().collect_symbols(out);
  rhs().collect_symbols(out);
}

BiquasileWord BiquasileWord::substitute(int symbol, const BiquasileWord& replacement) const {
  if (is_generator()) return node_->symbol == symbol ? replacement : *this;
  if (occurrences(symbol) == 0) return *this;
  return apply(op(), lhs().substitute(symbol, replacement), rhs().substitute(symbol, replacement));
}

int BiquasileWord::evaluate(const FiniteBiquasile& x, const Divisions& div,
                            std::span<const int> assignment) const {
  if (is_generator()) return assignment[static_cast<std::size_t>(node_->symbol)];
  const int l = lhs().evaluate(x, div, assignment);
  const int r = rhs().evaluate(x, div, assignment);
  switch (op()) {
    case WordOp::star: return x.star()(l, r);
    case WordOp::dot: return x.dot()(l, r);
    case WordOp::star_right: return div.star_right(l, r);
    case WordOp::star_left: return div.star_left(l, r);
    case WordOp::dot_right: return div.dot_right(l, r);
    case WordOp::dot_left: return div.dot_left(l, r);
    case WordOp::generator: break;
  }
  return -1;
}

namespace {

const char* op_text(WordOp op) {
  switch (op) {
    case WordOp::star: return "*";
    case WordOp::dot: return ".";
    case WordOp::star_right: return "/*";
    case WordOp::star_left: return "\\*";
    case WordOp::dot_right: return "/";
    case WordOp::dot_left: return "\\";
    case WordOp::generator: break;
  }
  return "?";
}

}  // namespace

std::string BiquasileWord::to_string(const std::vector<std::string>& names) const {
  if (is_generator()) return names.at(static_cast<std::size_t>(node_->symbol));
  auto side = [&](const BiquasileWord& w) {
    return w.is_generator() ? w.to_string(names) : "(" + w.to_string(names) + ")";
  };
  return side(lhs()) + op_text(op()) + side(rhs());
}

bool operator==(const BiquasileWord& a, const BiquasileWord& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if (a.is_generator()) return a.symbol() == b.symbol();
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

BiquasileWord operator*(BiquasileWord a, BiquasileWord b) {
  return BiquasileWord::apply(WordOp::star, std::move(a), std::move(b));
}

BiquasileWord dot(BiquasileWord a, BiquasileWord b) {
  return BiquasileWord::apply(WordOp::dot, std::move(a), std::move(b));
}

std::string Presentation::to_string() const {
  std::string out = "< ";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ", ";
    out += symbols.at(static_cast<std::size_t>(generators[i]));
  }
  out += " |";
  for (std::size_t i = 0; i < relations.size(); ++i) {
    out += i ? ", " : " ";
    out += relations[i].lhs.to_string(symbols) + " = " + relations[i].rhs.to_string(symbols);
  }
  out += " >";
  return out;
}

std::optional<BiquasileWord> isolate(const Relation& relation, int symbol) {
  const int in_lhs = relation.lhs.occurrences(symbol);
  const int in_rhs = relation.rhs.occurrences(symbol);
  if (in_lhs + in_rhs != 1) return std::nullopt;
  BiquasileWord side = in_lhs ? relation.lhs : relation.rhs;
  BiquasileWord value = in_lhs ? relation.rhs : relation.lhs;
  using W = BiquasileWord;
  while (!side.is_generator()) {
    const W& l = side.lhs();
    const W& r = side.rhs();
    if (l.occurrences(symbol)) {
      switch (side.op()) {
        case WordOp::star: value = W::apply(WordOp::star_right, value, r); break;
        case WordOp::dot: value = W::apply(WordOp::dot_right, value, r); break;
        case WordOp::star_right: value = W::apply(WordOp::star, value, r); break;
        case WordOp::star_left: value = W::apply(WordOp::star_right, r, value); break;
        case WordOp::dot_right: value = W::apply(WordOp::dot, value, r); break;
        case WordOp::dot_left: value = W::apply(WordOp::dot_right, r, value); break;
        case WordOp::generator: break;
      }
      side = l;
    } else {
      switch (side.op()) {
        case WordOp::star: value = W::apply(WordOp::star_left, l, value); break;
        case WordOp::dot: value = W::apply(WordOp::dot_left, l, value); break;
        case WordOp::star_right: value = W::apply(WordOp::star_left, value, l); break;
        case WordOp::star_left: value = W::apply(WordOp::star, l, value); break;
        case WordOp::dot_right: value = W::apply(WordOp::dot_left, value, l); break;
        case WordOp::dot_left: value = W::apply(WordOp::dot, l, value); break;
        case WordOp::generator: break;
      }
      side = r;
    }
  }
  return value;
}

namespace {

std::optional<Presentation> eliminate(const Presentation& p, int symbol, bool allow_isolation) {
  if (!std::binary_search(p.generators.begin(), p.generators.end(), symbol)) return std::nullopt;
  std::optional<std::size_t> chosen;
  std::optional<BiquasileWord> value;
  for (std::size_t i = 0; i < p.relations.size() && !chosen; ++i) {
    const auto& rel = p.relations[i];
    if (rel.lhs.is_generator() && rel.lhs.symbol() == symbol && rel.rhs.occurrences(symbol) == 0) {
      chosen = i;
      value = rel.rhs;
    } else if (rel.rhs.is_generator() && rel.rhs.symbol() == symbol &&
               rel.lhs.occurrences(symbol) == 0) {
      chosen = i;
      value = rel.lhs;
    }
  }
  for (std::size_t i = 0; allow_isolation && i < p.relations.size() && !chosen; ++i) {
    if (auto w = isolate(p.relations[i], symbol)) {
      chosen = i;
      value = std::move(w);
    }
  }
  if (!chosen) return std::nullopt;

  Presentation out;
  out.symbols = p.symbols;
  for (int g : p.generators)
    if (g != symbol) out.generators.push_back(g);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (i == *chosen) continue;
    out.relations.push_back({p.relations[i].lhs.substitute(symbol, *value),
                             p.relations[i].rhs.substitute(symbol, *value)});
  }
  return out;
}

}  // namespace

std::optional<Presentation> tietze_eliminate(const Presentation& p, int symbol) {
  if (auto direct = eliminate(p, symbol, false)) return direct;
  return eliminate(p, symbol, true);
}

Presentation simplify(const Presentation& p) {
  Presentation cur = p;
  for (bool progress = true; progress;) {
    progress = false;
    for (bool allow_isolation : {false, true}) {
      for (int g : cur.generators) {
        if (auto next = eliminate(cur, g, allow_isolation)) {
          cur = std::move(*next);
          progress = true;
          break;
        }
      }
      if (progress) break;
    }
  }
  return cur;
}

}  // namespace biq
