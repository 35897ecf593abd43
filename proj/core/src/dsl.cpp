#include "stablerank/dsl.hpp"

#include <cctype>
#include <charconv>

namespace stablerank {

namespace {

constexpr std::uint64_t kMaxNat = 1'000'000'000;
constexpr int kMaxDepth = 200;

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  ParseResult run() {
    AlgRef e = algebra();
    if (e) {
      skip_ws();
      if (pos_ < src_.size()) {
        fail("end of input");
        e = nullptr;
      }
    }
    if (!e) return {nullptr, err_};
    return {e, std::nullopt};
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::optional<ParseError> err_;

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  // Records the first failure only; offsets are 1-based.
  std::nullptr_t fail(std::string expected) {
    if (!err_) {
      err_ = ParseError{pos_ + 1,
                        {expected},
                        "expected " + expected + " at offset " +
                            std::to_string(pos_ + 1)};
    } else if (err_->offset == pos_ + 1) {
      err_->expected.push_back(expected);
    }
    return nullptr;
  }

  bool lit(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    fail(std::string("'") + c + "'");
    return false;
  }

  bool try_lit(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool try_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_, w.size()) != w) return false;
    // a word must not continue into a longer identifier
    std::size_t end = pos_ + w.size();
    if (end < src_.size()) {
      char c = src_[end];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        if (std::isalpha(static_cast<unsigned char>(w.back())) ||
            w.back() == '_')
          return false;
    }
    pos_ = end;
    return true;
  }

  std::optional<std::uint64_t> nat() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ == start) {
      fail("natural number");
      return std::nullopt;
    }
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || v > kMaxNat) {
      pos_ = start;
      fail("natural number <= 1000000000");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::uint64_t> nat_at_least(std::uint64_t min,
                                            const char* what) {
    skip_ws();
    std::size_t start = pos_;
    auto v = nat();
    if (!v) return std::nullopt;
    if (*v < min) {
      pos_ = start;
      fail(what);
      return std::nullopt;
    }
    return v;
  }

  struct DepthGuard {
    Parser& p;
    bool ok;
    explicit DepthGuard(Parser& parser) : p(parser), ok(++p.depth_ <= kMaxDepth) {
      if (!ok) p.fail("shallower nesting");
    }
    ~DepthGuard() { --p.depth_; }
  };

  SpaceRef space_expr() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;
    if (try_word("pt")) return space::point();
    if (try_word("S")) {
      if (!lit('(')) return nullptr;
      auto d = nat();
      if (!d || !lit(')')) return nullptr;
      return space::sphere(*d);
    }
    if (try_word("T")) {
      if (!lit('(')) return nullptr;
      auto d = nat_at_least(1, "natural number >= 1");
      if (!d || !lit(')')) return nullptr;
      return space::torus(*d);
    }
    if (try_word("D")) {
      if (!lit('(')) return nullptr;
      auto d = nat_at_least(1, "natural number >= 1");
      if (!d || !lit(')')) return nullptr;
      return space::disk(*d);
    }
    if (try_word("I")) {
      if (!lit('(')) return nullptr;
      auto d = nat_at_least(1, "natural number >= 1");
      if (!d || !lit(')')) return nullptr;
      return space::cube(*d);
    }
    bool is_prod = try_word("prod");
    if (is_prod || try_word("wedge")) {
      if (!lit('(')) return nullptr;
      SpaceRef a = space_expr();
      if (!a || !lit(',')) return nullptr;
      SpaceRef b = space_expr();
      if (!b || !lit(')')) return nullptr;
      return is_prod ? space::prod(a, b) : space::wedge(a, b);
    }
    if (try_word("susp")) {
      if (!lit('(')) return nullptr;
      SpaceRef a = space_expr();
      if (!a || !lit(')')) return nullptr;
      return space::susp(a);
    }
    if (try_word("cw")) {
      if (!lit('(')) return nullptr;
      auto n = nat();
      if (!n || !lit(')')) return nullptr;
      return space::cw(*n);
    }
    fail("space expression");
    return nullptr;
  }

  std::optional<std::vector<std::uint64_t>> block_list() {
    if (!try_word("F")) {
      fail("'F'");
      return std::nullopt;
    }
    if (!lit('(')) return std::nullopt;
    std::vector<std::uint64_t> blocks;
    do {
      auto b = nat_at_least(1, "block size >= 1");
      if (!b) return std::nullopt;
      blocks.push_back(*b);
    } while (try_lit(','));
    if (!lit(')')) return std::nullopt;
    return blocks;
  }

  AlgRef nccw_expr() {
    NccwComplex complex;
    auto base = block_list();
    if (!base) return nullptr;
    complex.base_blocks = std::move(*base);
    while (try_lit(';')) {
      NccwComplex::Stage stage;
      auto k = nat_at_least(1, "stage dimension >= 1");
      if (!k || !lit(':')) return nullptr;
      stage.k = *k;
      auto blocks = block_list();
      if (!blocks) return nullptr;
      stage.blocks = std::move(*blocks);
      complex.stages.push_back(std::move(stage));
    }
    return alg::nccw(std::move(complex));
  }

  AlgRef primary() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;
    skip_ws();
    if (try_word("Cx")) {
      if (!lit('(')) return nullptr;
      SpaceRef x = space_expr();
      if (!x || !lit(')')) return nullptr;
      AlgRef a = alg::scalars();
      if (try_lit('*')) {
        a = primary();
        if (!a) return nullptr;
      }
      return alg::tensor(x, a);
    }
    if (try_word("C")) return alg::scalars();
    if (try_word("F")) {
      if (!lit('(')) return nullptr;
      std::vector<std::uint64_t> blocks;
      do {
        auto b = nat_at_least(1, "block size >= 1");
        if (!b) return nullptr;
        blocks.push_back(*b);
      } while (try_lit(','));
      if (!lit(')')) return nullptr;
      return alg::finite_dim(std::move(blocks));
    }
    if (try_word("M")) {
      if (!lit('(')) return nullptr;
      auto n = nat_at_least(1, "matrix size >= 1");
      if (!n || !lit(',')) return nullptr;
      AlgRef a = algebra();
      if (!a || !lit(')')) return nullptr;
      return alg::matrix(*n, a);
    }
    if (try_word("pullback")) {
      if (!lit('(')) return nullptr;
      AlgRef b = algebra();
      if (!b || !lit(',')) return nullptr;
      AlgRef c = algebra();
      if (!c || !lit(';')) return nullptr;
      AlgRef d = algebra();
      if (!d || !lit(')')) return nullptr;
      return alg::pullback(b, c, d);
    }
    if (try_word("ext")) {
      if (!lit('(')) return nullptr;
      AlgRef j = algebra();
      if (!j || !lit(',')) return nullptr;
      AlgRef b = algebra();
      if (!b || !lit(')')) return nullptr;
      return alg::extension(j, b);
    }
    if (try_word("limit")) {
      if (!lit('(')) return nullptr;
      std::vector<AlgRef> entries;
      do {
        AlgRef a = algebra();
        if (!a) return nullptr;
        entries.push_back(a);
      } while (try_lit(','));
      if (!lit(')')) return nullptr;
      return alg::limit(std::move(entries));
    }
    if (try_word("nccw")) {
      if (!lit('(')) return nullptr;
      AlgRef a = nccw_expr();
      if (!a || !lit(')')) return nullptr;
      return a;
    }
    if (try_word("AF")) return alg::simple_af();
    if (try_word("rot")) return alg::rotation();
    if (try_word("cuntz")) {
      if (!lit('(')) return nullptr;
      auto n = nat_at_least(2, "Cuntz index >= 2");
      if (!n || !lit(')')) return nullptr;
      return alg::cuntz(*n);
    }
    if (try_word("Oinf")) return alg::cuntz_inf();
    if (try_word("kirchberg_ibn")) return alg::kirchberg_ibn();
    if (try_word("pisc")) return alg::pis_corner();
    if (try_word("zstable")) {
      if (!lit('(')) return nullptr;
      AlgRef a = algebra();
      if (!a || !lit(')')) return nullptr;
      return alg::jiang_su(a);
    }
    if (try_word("rr0")) {
      if (!lit('(')) return nullptr;
      AlgRef a = algebra();
      if (!a || !lit(')')) return nullptr;
      return alg::real_rank_zero(a);
    }
    fail("algebra expression");
    return nullptr;
  }

  bool try_plus() {
    skip_ws();
    if (src_.substr(pos_, 3) == "(+)") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  AlgRef algebra() {
    DepthGuard guard(*this);
    if (!guard.ok) return nullptr;
    AlgRef acc = primary();
    if (!acc) return nullptr;
    while (try_plus()) {
      AlgRef rhs = primary();
      if (!rhs) return nullptr;
      acc = alg::direct_sum(acc, rhs);
    }
    return acc;
  }
};

std::string join_blocks(const std::vector<std::uint64_t>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(blocks[i]);
  }
  return out;
}

std::string print(const AlgRef& e) {
  switch (e->kind) {
    case AlgKind::Scalars: return "C";
    case AlgKind::FiniteDim: return "F(" + join_blocks(e->blocks) + ")";
    case AlgKind::MatrixOver:
      return "M(" + std::to_string(e->n) + ", " + print(e->kids[0]) + ")";
    case AlgKind::DirectSum:
      return print(e->kids[0]) + " (+) " + print(e->kids[1]);
    case AlgKind::CommTensor: {
      std::string out = "Cx(" + format_space(e->space) + ")";
      if (e->kids[0]->kind != AlgKind::Scalars)
        out += "*" + print(e->kids[0]);
      return out;
    }
    case AlgKind::Pullback:
      return "pullback(" + print(e->kids[0]) + ", " + print(e->kids[1]) +
             "; " + print(e->kids[2]) + ")";
    case AlgKind::Extension:
      return "ext(" + print(e->kids[0]) + ", " + print(e->kids[1]) + ")";
    case AlgKind::Limit: {
      std::string out = "limit(";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) out += ", ";
        out += print(e->kids[i]);
      }
      return out + ")";
    }
    case AlgKind::Nccw: {
      std::string out = "nccw(F(" + join_blocks(e->nccw->base_blocks) + ")";
      for (const auto& s : e->nccw->stages)
        out += "; " + std::to_string(s.k) + ":F(" + join_blocks(s.blocks) + ")";
      return out + ")";
    }
    case AlgKind::JiangSu: return "zstable(" + print(e->kids[0]) + ")";
    case AlgKind::RealRankZero: return "rr0(" + print(e->kids[0]) + ")";
    case AlgKind::Rotation: return "rot";
    case AlgKind::Cuntz: return "cuntz(" + std::to_string(e->n) + ")";
    case AlgKind::CuntzInf: return "Oinf";
    case AlgKind::KirchbergIbn: return "kirchberg_ibn";
    case AlgKind::SimpleAf: return "AF";
    case AlgKind::PisCorner: return "pisc";
  }
  return "?";
}

}  // namespace

ParseResult parse(std::string_view src) { return Parser(src).run(); }

std::string format(const AlgRef& expr) { return print(canon(expr)); }

}  // namespace stablerank
