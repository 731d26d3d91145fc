#include "bigrass/tower.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

#include "bigrass/linalg.hpp"

namespace bigrass {

// ---------------------------------------------------------------------------
// FieldTower construction
// ---------------------------------------------------------------------------

namespace {

bool valid_symbol(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_string(std::uint64_t h, const std::string& s) {
  for (char c : s) h = mix(h, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return h;
}

}  // namespace

TowerPtr FieldTower::rationals() {
  static TowerPtr q = [] {
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->dims_ = {1};
    MatQ one(1, 1);
    one(0, 0) = Rat(1);
    t->mult_by_basis_ = {one};
    t->hash_ = 0x5158a3u;
    return TowerPtr(t);
  }();
  return q;
}

TowerPtr FieldTower::make(std::vector<Level> levels, int base_marker) {
  if (base_marker < 0 || base_marker > static_cast<int>(levels.size()))
    throw std::invalid_argument("FieldTower: base_marker out of range");
  if (levels.empty() && base_marker == 0) {
    return rationals();
  }

  TowerPtr cur = rationals();
  std::vector<TowerPtr> prefixes;
  for (std::size_t t = 0; t < levels.size(); ++t) {
    const Level& lv = levels[t];
    const int dp = cur->degree();
    const int d = static_cast<int>(lv.minpoly_low.rows());
    if (!valid_symbol(lv.symbol))
      throw std::invalid_argument("FieldTower: invalid generator symbol '" + lv.symbol + "'");
    if (cur->find_symbol(lv.symbol) >= 0)
      throw std::invalid_argument("FieldTower: duplicate generator symbol '" + lv.symbol + "'");
    if (d < 2) throw std::invalid_argument("FieldTower: minimal polynomial degree must be >= 2");
    if (lv.minpoly_low.cols() != dp)
      throw std::invalid_argument("FieldTower: minpoly coefficients do not match lower level");

    const int dn = dp * d;
    auto next = std::shared_ptr<FieldTower>(new FieldTower());
    next->levels_.assign(levels.begin(), levels.begin() + static_cast<long>(t) + 1);
    next->base_levels_ = std::min<int>(base_marker, static_cast<int>(t) + 1);
    next->dims_ = cur->dims_;
    next->dims_.push_back(dn);
    prefixes.push_back(cur);
    next->prefixes_ = prefixes;

    // Powers of the new generator g: g^e for e in [0, 2d-2], reduced into the
    // new basis. Blocks are contiguous runs of length dp.
    auto block = [dp](VecQ& v, int q) { return v.segment(q * dp, dp); };
    auto scalar_block_mul = [&](const VecQ& s, const VecQ& y) {
      VecQ out(dn);
      out.setZero();
      for (int q = 0; q < d; ++q) {
        VecQ yq = y.segment(q * dp, dp);
        out.segment(q * dp, dp) = cur->mul(s, yq);
      }
      return out;
    };

    std::vector<VecQ> pw(static_cast<std::size_t>(2 * d - 1), VecQ());
    for (int e = 0; e < d; ++e) {
      VecQ v(dn);
      v.setZero();
      v(e * dp) = Rat(1);
      pw[static_cast<std::size_t>(e)] = std::move(v);
    }
    {
      VecQ v(dn);
      v.setZero();
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < dp; ++i) v(j * dp + i) = -lv.minpoly_low(j, i);
      pw[static_cast<std::size_t>(d)] = std::move(v);
    }
    for (int e = d + 1; e <= 2 * d - 2; ++e) {
      VecQ prev_pow = pw[static_cast<std::size_t>(e - 1)];
      VecQ shifted(dn);
      shifted.setZero();
      for (int q = d - 1; q >= 1; --q) block(shifted, q) = prev_pow.segment((q - 1) * dp, dp);
      VecQ top = prev_pow.segment((d - 1) * dp, dp);
      pw[static_cast<std::size_t>(e)] = shifted + scalar_block_mul(top, pw[static_cast<std::size_t>(d)]);
    }

    // Full basis product table. Basis index i = i0 + dp*i1 stands for
    // (lower basis monomial i0) * g^i1.
    next->mult_by_basis_.assign(static_cast<std::size_t>(dn), MatQ());
    for (int j = 0; j < dn; ++j) {
      MatQ mj(dn, dn);
      mj.setZero();
      const int j0 = j % dp, j1 = j / dp;
      for (int i = 0; i < dn; ++i) {
        const int i0 = i % dp, i1 = i / dp;
        VecQ w = cur->mult_by_basis_[static_cast<std::size_t>(j0)].col(i0);
        const int e = i1 + j1;
        VecQ prod(dn);
        prod.setZero();
        if (e < d) {
          prod.segment(e * dp, dp) = w;
        } else {
          prod = scalar_block_mul(w, pw[static_cast<std::size_t>(e)]);
        }
        mj.col(i) = prod;
      }
      next->mult_by_basis_[static_cast<std::size_t>(j)] = std::move(mj);
    }

    std::uint64_t h = mix(cur->hash_, static_cast<std::uint64_t>(d));
    h = hash_string(h, lv.symbol);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < dp; ++i) h = hash_string(h, lv.minpoly_low(j, i).str());
    next->hash_ = h;

    cur = TowerPtr(next);
  }

  // The loop builds prefixes with clamped markers; the full tower carries the
  // requested one.
  const_cast<FieldTower*>(cur.get())->base_levels_ = base_marker;
  return cur;
}

TowerPtr FieldTower::prefix(int t) const {
  if (t < 0 || t > level_count()) throw std::invalid_argument("FieldTower::prefix: bad level");
  if (t == level_count()) return shared_from_this();
  if (t == 0) return rationals();
  return prefixes_.at(static_cast<std::size_t>(t));
}

bool FieldTower::same_structure(const FieldTower& other) const {
  if (this == &other) return true;
  if (hash_ != other.hash_) return false;
  if (levels_.size() != other.levels_.size()) return false;
  for (std::size_t t = 0; t < levels_.size(); ++t) {
    if (levels_[t].symbol != other.levels_[t].symbol) return false;
    if (levels_[t].minpoly_low.rows() != other.levels_[t].minpoly_low.rows()) return false;
    if (!mats_equal(levels_[t].minpoly_low, other.levels_[t].minpoly_low)) return false;
  }
  return true;
}

int FieldTower::find_symbol(std::string_view symbol) const {
  for (std::size_t t = 0; t < levels_.size(); ++t)
    if (levels_[t].symbol == symbol) return static_cast<int>(t);
  return -1;
}

std::vector<int> FieldTower::exponents_of(int basis_index) const {
  std::vector<int> exps(levels_.size(), 0);
  int idx = basis_index;
  for (std::size_t t = 0; t < levels_.size(); ++t) {
    const int d = level_degree(static_cast<int>(t));
    exps[t] = idx % d;
    idx /= d;
  }
  return exps;
}

std::string FieldTower::monomial_string(int basis_index) const {
  std::vector<int> exps = exponents_of(basis_index);
  std::string out;
  for (std::size_t t = 0; t < exps.size(); ++t) {
    if (exps[t] == 0) continue;
    if (!out.empty()) out += "*";
    out += levels_[t].symbol;
    if (exps[t] > 1) out += "^" + std::to_string(exps[t]);
  }
  return out;
}

VecQ FieldTower::mul(const VecQ& a, const VecQ& b) const {
  const int d = degree();
  VecQ out(d);
  out.setZero();
  for (int j = 0; j < d; ++j) {
    if (b(j).is_zero()) continue;
    out += b(j) * (mult_by_basis_[static_cast<std::size_t>(j)] * a);
  }
  return out;
}

VecQ FieldTower::inv(const VecQ& a) const {
  const int d = degree();
  Mat<Rat> aug(d, d + 1);
  for (int j = 0; j < d; ++j) aug.col(j) = mult_by_basis_[static_cast<std::size_t>(j)] * a;
  aug.col(d).setZero();
  aug(0, d) = Rat(1);
  Echelon<Rat> e = rref<Rat>(aug);
  if (e.rank < d)
    throw std::domain_error("FieldTower: non-invertible element (is every minimal polynomial irreducible?)");
  VecQ x(d);
  for (int i = 0; i < d; ++i) x(e.pivots[static_cast<std::size_t>(i)]) = e.mat(i, d);
  return x;
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "Q";
  for (const auto& lv : levels_) os << "(" << lv.symbol << ")";
  os << " [degree " << degree() << ", base levels " << base_levels_ << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// FieldElem
// ---------------------------------------------------------------------------

FieldElem::FieldElem(TowerPtr tower, VecQ coeffs) : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  if (!tower_) throw std::invalid_argument("FieldElem: null tower");
  if (coeffs_.size() != tower_->degree())
    throw std::invalid_argument("FieldElem: coefficient vector has wrong length");
}

FieldElem FieldElem::generator(const TowerPtr& t, int level) {
  if (!t || level < 0 || level >= t->level_count())
    throw std::invalid_argument("FieldElem::generator: bad level");
  return monomial(t, t->dim_at(level), Rat(1));
}

FieldElem FieldElem::monomial(const TowerPtr& t, int basis_index, Rat coefficient) {
  if (!t || basis_index < 0 || basis_index >= t->degree())
    throw std::invalid_argument("FieldElem::monomial: bad index");
  VecQ v(t->degree());
  v.setZero();
  v(basis_index) = std::move(coefficient);
  return FieldElem(t, std::move(v));
}

bool FieldElem::is_zero() const {
  if (!tower_) return constant_.is_zero();
  for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_(i).is_zero()) return false;
  return true;
}

VecQ FieldElem::coeffs_in(const TowerPtr& t) const {
  if (!t) throw std::invalid_argument("FieldElem::coeffs_in: null tower");
  if (!tower_) {
    VecQ v(t->degree());
    v.setZero();
    v(0) = constant_;
    return v;
  }
  if (tower_.get() == t.get() || tower_->same_structure(*t)) return coeffs_;
  throw std::invalid_argument("FieldElem: tower mismatch (" + tower_->describe() + " vs " + t->describe() + ")");
}

std::optional<Rat> FieldElem::as_rational() const {
  if (!tower_) return constant_;
  for (Eigen::Index i = 1; i < coeffs_.size(); ++i)
    if (!coeffs_(i).is_zero()) return std::nullopt;
  return coeffs_(0);
}

namespace {
const TowerPtr& resolve_tower(const FieldElem& a, const FieldElem& b) {
  static const TowerPtr none;
  if (a.tower() && b.tower()) {
    if (a.tower().get() == b.tower().get() || a.tower()->same_structure(*b.tower())) return a.tower();
    throw std::invalid_argument("FieldElem: tower mismatch (" + a.tower()->describe() + " vs " +
                                b.tower()->describe() + ")");
  }
  if (a.tower()) return a.tower();
  if (b.tower()) return b.tower();
  return none;
}
}  // namespace

FieldElem FieldElem::operator-() const {
  if (!tower_) return FieldElem(-constant_);
  VecQ v = coeffs_;
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = -v(i);
  return FieldElem(tower_, std::move(v));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  const TowerPtr& t = resolve_tower(*this, o);
  if (!t) return FieldElem(constant_ + o.constant_);
  return FieldElem(t, VecQ(coeffs_in(t) + o.coeffs_in(t)));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  const TowerPtr& t = resolve_tower(*this, o);
  if (!t) return FieldElem(constant_ - o.constant_);
  return FieldElem(t, VecQ(coeffs_in(t) - o.coeffs_in(t)));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  const TowerPtr& t = resolve_tower(*this, o);
  if (!t) return FieldElem(constant_ * o.constant_);
  // Constant factors scale coefficientwise; the table product is reserved
  // for genuinely algebraic operands.
  if (!tower_) return FieldElem(t, VecQ(constant_ * o.coeffs_));
  if (!o.tower_) return FieldElem(t, VecQ(o.constant_ * coeffs_));
  return FieldElem(t, t->mul(coeffs_, o.coeffs_));
}

FieldElem FieldElem::inverse() const {
  if (!tower_) {
    if (constant_.is_zero()) throw std::domain_error("FieldElem: division by zero");
    return FieldElem(Rat(1) / constant_);
  }
  if (is_zero()) throw std::domain_error("FieldElem: division by zero");
  return FieldElem(tower_, tower_->inv(coeffs_));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  if (o.is_zero()) throw std::domain_error("FieldElem: division by zero");
  return *this * o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  const TowerPtr& t = resolve_tower(*this, o);
  if (!t) return constant_ == o.constant_;
  VecQ a = coeffs_in(t), b = o.coeffs_in(t);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

std::string FieldElem::str() const {
  if (!tower_) return constant_.str();
  std::string out;
  bool first = true;
  for (Eigen::Index i = coeffs_.size(); i-- > 0;) {
    const Rat& c = coeffs_(i);
    if (c.is_zero()) continue;
    std::string mono = tower_->monomial_string(static_cast<int>(i));
    Rat a = c;
    if (first) {
      if (a.sign() < 0) {
        out += "-";
        a = -a;
      }
      first = false;
    } else {
      out += a.sign() < 0 ? " - " : " + ";
      if (a.sign() < 0) a = -a;
    }
    if (mono.empty()) {
      out += a.str();
    } else if (a == Rat(1)) {
      out += mono;
    } else {
      out += a.str() + "*" + mono;
    }
  }
  return first ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.str(); }

FieldElem lift_to(const FieldElem& x, const TowerPtr& bigger) {
  if (!bigger) throw std::invalid_argument("lift_to: null tower");
  if (!x.tower()) return FieldElem(bigger, x.coeffs_in(bigger));
  const int sl = x.tower()->level_count();
  if (sl > bigger->level_count() || !x.tower()->same_structure(*bigger->prefix(sl)))
    throw std::invalid_argument("lift_to: source field is not a prefix of the target");
  VecQ v(bigger->degree());
  v.setZero();
  v.head(x.tower()->degree()) = x.raw_coeffs();
  return FieldElem(bigger, std::move(v));
}

std::optional<FieldElem> restrict_to(const FieldElem& x, const TowerPtr& smaller) {
  if (!smaller) throw std::invalid_argument("restrict_to: null tower");
  if (!x.tower()) return FieldElem(smaller, x.coeffs_in(smaller));
  const int sl = smaller->level_count();
  if (sl > x.tower()->level_count() || !smaller->same_structure(*x.tower()->prefix(sl)))
    throw std::invalid_argument("restrict_to: target field is not a prefix of the source");
  const int ds = smaller->degree();
  for (Eigen::Index i = ds; i < x.raw_coeffs().size(); ++i)
    if (!x.raw_coeffs()(i).is_zero()) return std::nullopt;
  return FieldElem(smaller, VecQ(x.raw_coeffs().head(ds)));
}

std::vector<FieldElem> blocks_over_prefix(const FieldElem& x, int sub_levels) {
  if (!x.tower()) throw std::invalid_argument("blocks_over_prefix: element carries no tower");
  const TowerPtr& t = x.tower();
  TowerPtr sub = t->prefix(sub_levels);
  const int ds = sub->degree();
  const int rel = t->degree() / ds;
  std::vector<FieldElem> out;
  out.reserve(static_cast<std::size_t>(rel));
  for (int q = 0; q < rel; ++q) out.emplace_back(sub, VecQ(x.raw_coeffs().segment(q * ds, ds)));
  return out;
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

Embedding::Embedding(TowerPtr source, TowerPtr target, std::vector<FieldElem> generator_images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(generator_images)) {
  if (!source_ || !target_) throw std::invalid_argument("Embedding: null tower");
  if (static_cast<int>(images_.size()) != source_->level_count())
    throw std::invalid_argument("Embedding: one image per source generator required");
  for (auto& img : images_) img = lift_to(img, target_);
  basis_images_.reserve(static_cast<std::size_t>(source_->degree()));
  for (int i = 0; i < source_->degree(); ++i) {
    std::vector<int> exps = source_->exponents_of(i);
    FieldElem acc = FieldElem::one(target_);
    for (std::size_t t = 0; t < exps.size(); ++t)
      for (int e = 0; e < exps[t]; ++e) acc = acc * images_[t];
    basis_images_.push_back(std::move(acc));
  }
}

Embedding Embedding::inclusion(const TowerPtr& source, const TowerPtr& target) {
  if (!source || !target) throw std::invalid_argument("Embedding::inclusion: null tower");
  const int sl = source->level_count();
  if (sl > target->level_count() || !source->same_structure(*target->prefix(sl)))
    throw std::invalid_argument("Embedding::inclusion: source is not a prefix of the target");
  std::vector<FieldElem> imgs;
  for (int t = 0; t < sl; ++t) imgs.push_back(FieldElem::generator(target, t));
  return Embedding(source, target, std::move(imgs));
}

FieldElem Embedding::apply(const FieldElem& x) const {
  if (!x.tower()) return FieldElem(target_, x.coeffs_in(target_));
  if (!(x.tower().get() == source_.get() || x.tower()->same_structure(*source_)))
    throw std::invalid_argument("Embedding::apply: element is not in the source field");
  FieldElem acc = FieldElem::zero(target_);
  const VecQ& c = x.raw_coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i).is_zero()) continue;
    acc = acc + FieldElem(c(i)) * basis_images_[static_cast<std::size_t>(i)];
  }
  return acc;
}

bool Embedding::same_images(const Embedding& other) const {
  if (images_.size() != other.images_.size()) return false;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != other.images_[i]) return false;
  return true;
}

ValidationReport validate_embedding(const Embedding& e) {
  ValidationReport rep;
  const TowerPtr& src = e.source();
  for (int t = 0; t < src->level_count(); ++t) {
    const auto& lv = src->level(t);
    const int d = static_cast<int>(lv.minpoly_low.rows());
    FieldElem img = e.generator_image(t);
    FieldElem acc = FieldElem::one(e.target());
    FieldElem residual = FieldElem::zero(e.target());
    for (int j = 0; j < d; ++j) {
      VecQ cj(src->degree());
      cj.setZero();
      cj.head(lv.minpoly_low.cols()) = lv.minpoly_low.row(j).transpose();
      residual = residual + e.apply(FieldElem(src, std::move(cj))) * acc;
      acc = acc * img;
    }
    residual = residual + acc;  // monic leading term img^d
    if (!residual.is_zero()) {
      rep.ok = false;
      rep.failures.push_back("generator '" + lv.symbol + "': minimal polynomial not satisfied, residual " +
                             residual.str());
    }
  }
  for (int t = 0; t < src->base_levels(); ++t) {
    bool fixed = true;
    if (t >= e.target()->level_count() || !src->prefix(t + 1)->same_structure(*e.target()->prefix(t + 1)))
      fixed = false;
    else if (e.generator_image(t) != FieldElem::generator(e.target(), t))
      fixed = false;
    if (!fixed) {
      rep.ok = false;
      rep.failures.push_back("base generator '" + src->level(t).symbol + "' is not fixed");
    }
  }
  return rep;
}

std::vector<FieldElem> minpoly_over(const FieldElem& x, int sub_levels) {
  if (!x.tower()) {
    return {-x, FieldElem(1)};
  }
  const TowerPtr& t = x.tower();
  TowerPtr sub = t->prefix(sub_levels);
  const int rel = t->degree() / sub->degree();

  Mat<FieldElem> rows(0, rel);
  FieldElem cur = FieldElem::one(t);
  for (int j = 0;; ++j) {
    std::vector<FieldElem> blocks = blocks_over_prefix(cur, sub_levels);
    RowVec<FieldElem> row(rel);
    for (int q = 0; q < rel; ++q) row(q) = blocks[static_cast<std::size_t>(q)];
    Mat<FieldElem> stacked(rows.rows() + 1, rel);
    stacked.topRows(rows.rows()) = rows;
    stacked.row(rows.rows()) = row;
    if (rank_of<FieldElem>(stacked) < j + 1) {
      auto sol = solve_left<FieldElem>(rows, Mat<FieldElem>(row));
      std::vector<FieldElem> mp;
      mp.reserve(static_cast<std::size_t>(j) + 1);
      for (int i = 0; i < j; ++i) mp.push_back(-(*sol)(0, i));
      mp.push_back(FieldElem(1));
      return mp;
    }
    rows = std::move(stacked);
    cur = cur * x;
    if (j > rel) throw std::logic_error("minpoly_over: no dependency found");  // unreachable
  }
}

// ---------------------------------------------------------------------------
// literal parsing
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + " in '" +
                                std::string(text) + "': " + why);
  }
  std::string read_digits() {
    std::string out;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) out += text[pos++];
    if (out.empty()) fail("expected digits");
    return out;
  }
  Rat read_rational() {
    std::string num = read_digits();
    if (pos < text.size() && text[pos] == '/') {
      std::size_t save = pos;
      ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string den = read_digits();
        return Rat::parse(num + "/" + den);
      }
      pos = save;
    }
    return Rat::parse(num);
  }
  std::string read_ident() {
    std::string out;
    if (pos >= text.size() ||
        !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      fail("expected identifier");
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      out += text[pos++];
    return out;
  }
};

struct TermValue {
  FieldElem elem;
  int var_power = 0;
};

TermValue parse_term(Lexer& lx, const TowerPtr& tower, std::string_view variable) {
  TermValue tv{FieldElem::one(tower), 0};
  bool first = true;
  for (;;) {
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tv.elem = tv.elem * FieldElem(lx.read_rational());
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id = lx.read_ident();
      int power = 1;
      if (lx.peek() == '^') {
        ++lx.pos;
        lx.skip_ws();
        power = static_cast<int>(std::stol(lx.read_digits()));
      }
      if (!variable.empty() && id == variable) {
        tv.var_power += power;
      } else {
        int level = tower->find_symbol(id);
        if (level < 0) lx.fail("unknown symbol '" + id + "'");
        FieldElem g = FieldElem::generator(tower, level);
        for (int e = 0; e < power; ++e) tv.elem = tv.elem * g;
      }
    } else if (first) {
      lx.fail("expected a number or symbol");
    }
    first = false;
    if (lx.peek() == '*') {
      ++lx.pos;
      continue;
    }
    break;
  }
  return tv;
}

std::vector<FieldElem> parse_sum(std::string_view text, std::string_view variable, const TowerPtr& tower) {
  Lexer lx{text, 0};
  std::vector<FieldElem> coeffs;
  auto bump = [&](int power, const FieldElem& v) {
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(static_cast<std::size_t>(power) + 1, FieldElem::zero(tower));
    coeffs[static_cast<std::size_t>(power)] = coeffs[static_cast<std::size_t>(power)] + v;
  };
  bool negative = false;
  char c = lx.peek();
  if (c == '+' || c == '-') {
    negative = c == '-';
    ++lx.pos;
  }
  for (;;) {
    TermValue tv = parse_term(lx, tower, variable);
    bump(tv.var_power, negative ? -tv.elem : tv.elem);
    if (lx.eof()) break;
    char op = lx.peek();
    if (op != '+' && op != '-') lx.fail("expected '+' or '-'");
    negative = op == '-';
    ++lx.pos;
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

}  // namespace

FieldElem parse_element(std::string_view text, const TowerPtr& tower) {
  std::vector<FieldElem> coeffs = parse_sum(text, "", tower);
  if (coeffs.empty()) return FieldElem::zero(tower);
  return coeffs[0];
}

std::vector<FieldElem> parse_polynomial(std::string_view text, std::string_view variable,
                                        const TowerPtr& coefficient_tower) {
  if (variable.empty()) throw std::invalid_argument("parse_polynomial: empty variable name");
  if (coefficient_tower->find_symbol(variable) >= 0)
    throw std::invalid_argument("parse_polynomial: variable collides with a generator symbol");
  return parse_sum(text, variable, coefficient_tower);
}

TowerPtr make_tower(const std::vector<std::pair<std::string, std::string>>& levels, int base_marker) {
  if (base_marker < 0 || base_marker > static_cast<int>(levels.size()))
    throw std::invalid_argument("make_tower: base_marker out of range");
  std::vector<FieldTower::Level> built;
  TowerPtr cur = FieldTower::rationals();
  for (const auto& [symbol, text] : levels) {
    std::vector<FieldElem> coeffs = parse_polynomial(text, "x", cur);
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 2) throw std::invalid_argument("make_tower: '" + text + "' must have degree >= 2");
    if (!(coeffs.back() == FieldElem(1)))
      throw std::invalid_argument("make_tower: '" + text + "' is not monic");
    MatQ low(d, cur->degree());
    for (int j = 0; j < d; ++j) low.row(j) = coeffs[static_cast<std::size_t>(j)].coeffs_in(cur).transpose();
    built.push_back({symbol, std::move(low)});
    cur = FieldTower::make(built, std::min<int>(base_marker, static_cast<int>(built.size())));
  }
  return FieldTower::make(built, base_marker);
}

std::string polynomial_string(const std::vector<FieldElem>& poly, std::string_view variable) {
  if (poly.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = poly.size(); i-- > 0;) {
    if (poly[i].is_zero()) continue;
    std::string cs = poly[i].str();
    bool neg = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    bool composite = cs.find(' ') != std::string::npos;
    std::string var_part;
    if (i > 0) {
      var_part = std::string(variable);
      if (i > 1) var_part += "^" + std::to_string(i);
    }
    std::string piece;
    if (var_part.empty()) {
      piece = composite ? "(" + cs + ")" : cs;
    } else if (!composite && cs == "1") {
      piece = var_part;
    } else {
      piece = (composite ? "(" + cs + ")" : cs) + "*" + var_part;
    }
    if (first) {
      out += (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return first ? "0" : out;
}

}  // namespace bigrass
