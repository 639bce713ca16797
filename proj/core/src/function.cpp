#include "certlab/function.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace certlab {

namespace {

int popcount64(std::uint64_t x) { return std::popcount(x); }

std::uint64_t ipow_checked(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > (~0ull) / base) throw std::overflow_error("alphabet^n overflows");
    r *= base;
  }
  return r;
}

int ceil_sqrt(int n) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

}  // namespace

Function Function::dense(int n, std::vector<Val> table, int alphabet) {
  if (n < 0 || alphabet < 2) throw std::invalid_argument("dense: bad parameters");
  std::uint64_t want = ipow_checked(alphabet, n);
  if (table.size() != want) throw std::invalid_argument("dense: table length != alphabet^n");
  Function f;
  f.n_ = n;
  f.alphabet_ = alphabet;
  f.kind_ = Kind::dense;
  f.total_ = std::none_of(table.begin(), table.end(), [](Val v) { return v == Val::undef; });
  f.table_ = std::make_shared<std::vector<Val>>(std::move(table));
  return f;
}

Function Function::from_truth_table(int n, std::string_view tt) {
  std::vector<Val> table;
  table.reserve(tt.size());
  for (char c : tt) {
    if (c == '0') table.push_back(Val::zero);
    else if (c == '1') table.push_back(Val::one);
    else if (c == '*') table.push_back(Val::undef);
    else throw std::invalid_argument("truth table must be over 0/1/*");
  }
  return dense(n, std::move(table));
}

Function Function::symmetric(int n, std::vector<Val> profile) {
  if (n < 0 || profile.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("symmetric: profile length must be n+1");
  Function f;
  f.n_ = n;
  f.kind_ = Kind::symmetric;
  f.total_ = std::none_of(profile.begin(), profile.end(), [](Val v) { return v == Val::undef; });
  f.profile_ = std::make_shared<std::vector<Val>>(std::move(profile));
  return f;
}

Function Function::composed(Function outer, std::vector<Function> children) {
  if (!outer.boolean() || !outer.total())
    throw std::invalid_argument("composed: outer must be total Boolean");
  if (outer.n() != static_cast<int>(children.size()))
    throw std::invalid_argument("composed: child count must equal outer arity");
  long long total_n = 0;
  for (const auto& c : children) {
    if (!c.boolean()) throw std::invalid_argument("composed: children must be Boolean");
    total_n += c.n();
  }
  if (total_n > (1 << 26)) throw std::invalid_argument("composed: too many variables");
  Function f;
  f.n_ = static_cast<int>(total_n);
  f.kind_ = Kind::composed;
  f.total_ = std::all_of(children.begin(), children.end(),
                         [](const Function& c) { return c.total(); });
  f.outer_ = std::make_shared<Function>(std::move(outer));
  f.children_ = std::make_shared<std::vector<Function>>(std::move(children));
  return f;
}

Function Function::lattice(int side, int square) {
  if (square < 1 || side < square) throw std::invalid_argument("lattice: need side >= square >= 1");
  if (side > 8) throw std::invalid_argument("lattice: side*side must stay <= 64 input bits");
  Function f;
  f.n_ = side * side;
  f.kind_ = Kind::lattice;
  f.side_ = side;
  f.square_ = square;
  f.ctor_ = "lattice(" + std::to_string(side) + "," + std::to_string(square) + ")";
  return f;
}

Function Function::promise(int n, int alphabet, std::function<Val(const Input&)> eval,
                           std::vector<std::pair<std::uint64_t, Val>> enumerated) {
  Function f;
  f.n_ = n;
  f.alphabet_ = alphabet;
  f.kind_ = Kind::promise;
  f.total_ = false;
  f.eval_ = std::make_shared<std::function<Val(const Input&)>>(std::move(eval));
  if (!enumerated.empty()) {
    std::sort(enumerated.begin(), enumerated.end());
    f.enumerated_ = std::make_shared<std::vector<std::pair<std::uint64_t, Val>>>(std::move(enumerated));
  }
  return f;
}

Function Function::constant(int n, Val v) {
  return symmetric(n, std::vector<Val>(n + 1, v));
}

Function Function::or_fn(int n) {
  std::vector<Val> p(n + 1, Val::one);
  p[0] = Val::zero;
  Function f = symmetric(n, std::move(p));
  f.ctor_ = "or(" + std::to_string(n) + ")";
  return f;
}

Function Function::and_fn(int n) {
  std::vector<Val> p(n + 1, Val::zero);
  p[n] = Val::one;
  Function f = symmetric(n, std::move(p));
  f.ctor_ = "and(" + std::to_string(n) + ")";
  return f;
}

Function Function::parity(int n) {
  std::vector<Val> p(n + 1);
  for (int w = 0; w <= n; ++w) p[w] = to_val(w & 1);
  Function f = symmetric(n, std::move(p));
  f.ctor_ = "parity(" + std::to_string(n) + ")";
  return f;
}

Function Function::weight_window(int n, int a, int b) {
  if (!(0 <= a && a <= b && b <= n)) throw std::invalid_argument("weight_window: need 0<=a<=b<=n");
  std::vector<Val> p(n + 1);
  for (int w = 0; w <= n; ++w) p[w] = to_val(a <= w && w <= b);
  Function f = symmetric(n, std::move(p));
  f.ctor_ = "window(" + std::to_string(n) + "," + std::to_string(a) + "," + std::to_string(b) + ")";
  return f;
}

Function Function::threshold_sqrt(int n) {
  if (n < 1) throw std::invalid_argument("threshold: n >= 1");
  int t = ceil_sqrt(n);
  std::vector<Val> p(n + 1);
  for (int w = 0; w <= n; ++w) p[w] = to_val(w >= t);
  Function f = symmetric(n, std::move(p));
  f.ctor_ = "threshold(" + std::to_string(n) + ")";
  return f;
}

namespace {

// one-to-one -> 0, two-to-one -> 1, else undef
Val collision_value(const Input& y, int n, int alphabet) {
  std::map<std::uint32_t, int> counts;
  for (int i = 0; i < n; ++i) {
    if (y[i] >= static_cast<std::uint32_t>(alphabet))
      throw std::invalid_argument("collision: symbol out of range");
    counts[y[i]]++;
  }
  bool one_to_one = true, two_to_one = true;
  for (auto& [sym, c] : counts) {
    if (c != 1) one_to_one = false;
    if (c != 2) two_to_one = false;
  }
  if (one_to_one) return Val::zero;
  if (two_to_one) return Val::one;
  return Val::undef;
}

}  // namespace

Function Function::collision(int n) {
  if (n < 2 || (n & 1)) throw std::invalid_argument("collision: n must be even and >= 2");
  int alphabet = n * n;
  auto eval = [n, alphabet](const Input& y) -> Val {
    if (y.size() != n) throw std::invalid_argument("collision: wrong input length");
    return collision_value(y, n, alphabet);
  };
  std::vector<std::pair<std::uint64_t, Val>> dom;
  // Enumerate the promise domain when the whole space is small enough.
  double space = std::pow(static_cast<double>(alphabet), n);
  if (space <= static_cast<double>(kDenseCap)) {
    std::uint64_t total = ipow_checked(alphabet, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Input y = Input::from_packed(idx, n, alphabet);
      Val v = collision_value(y, n, alphabet);
      if (v != Val::undef) dom.emplace_back(idx, v);
    }
  }
  Function f = promise(n, alphabet, std::move(eval), std::move(dom));
  f.collision_n_ = n;
  f.ctor_ = "collision(" + std::to_string(n) + ")";
  return f;
}

Function Function::compose_levels(const Function& outer, const Function& inner, int levels) {
  if (levels < 1) throw std::invalid_argument("compose_levels: levels >= 1");
  if (!outer.total() || !outer.boolean())
    throw std::invalid_argument("compose_levels: outer must be total Boolean");
  if (!inner.boolean()) throw std::invalid_argument("compose_levels: inner must be Boolean");
  Function cur = inner;
  for (int t = 2; t <= levels; ++t) {
    cur = composed(outer, std::vector<Function>(outer.n(), cur));
  }
  if (levels > 1 && !inner.ctor_tag().empty() && outer.ctor_tag() == inner.ctor_tag()) {
    cur.ctor_ = "compose(" + inner.ctor_tag() + "," + std::to_string(levels) + ")";
  }
  return cur;
}

Val Function::evaluate(const Input& x) const {
  if (x.size() != n_) throw std::invalid_argument("evaluate: wrong input length");
  switch (kind_) {
    case Kind::dense: {
      for (int i = 0; i < n_; ++i)
        if (x[i] >= static_cast<std::uint32_t>(alphabet_))
          throw std::invalid_argument("evaluate: symbol out of range");
      return (*table_)[x.packed(alphabet_)];
    }
    case Kind::symmetric: {
      int w = 0;
      for (int i = 0; i < n_; ++i) {
        if (x[i] > 1) throw std::invalid_argument("evaluate: non-Boolean symbol");
        w += x[i];
      }
      return (*profile_)[w];
    }
    case Kind::composed: {
      Input ov = Input::zeros(static_cast<int>(children_->size()));
      int off = 0;
      for (int c = 0; c < static_cast<int>(children_->size()); ++c) {
        const Function& ch = (*children_)[c];
        std::vector<std::uint32_t> block(x.values().begin() + off,
                                         x.values().begin() + off + ch.n());
        Val v = ch.evaluate(Input(std::move(block)));
        if (v == Val::undef) return Val::undef;
        ov[c] = static_cast<std::uint32_t>(v);
        off += ch.n();
      }
      return outer_->evaluate(ov);
    }
    case Kind::lattice:
      return value_at(x.index());
    case Kind::promise:
      return (*eval_)(x);
  }
  return Val::undef;
}

Val Function::value_at(std::uint64_t index) const {
  switch (kind_) {
    case Kind::dense:
      if (alphabet_ != 2) throw std::invalid_argument("value_at: Boolean only");
      return (*table_)[index];
    case Kind::symmetric:
      return (*profile_)[popcount64(index & ((n_ >= 64 ? ~0ull : (1ull << n_) - 1)))];
    case Kind::composed: {
      if (n_ > 63) {
        return evaluate(Input::from_index(index, n_));  // unreachable for packed callers
      }
      std::uint64_t oidx = 0;
      int off = 0;
      for (int c = 0; c < static_cast<int>(children_->size()); ++c) {
        const Function& ch = (*children_)[c];
        std::uint64_t block = (index >> off) & ((ch.n() >= 64 ? ~0ull : (1ull << ch.n()) - 1));
        Val v = ch.value_at(block);
        if (v == Val::undef) return Val::undef;
        oidx |= static_cast<std::uint64_t>(v) << c;
        off += ch.n();
      }
      return outer_->value_at(oidx);
    }
    case Kind::lattice: {
      int s = side_, m = square_;
      auto bit = [&](int r, int c) -> int {
        return (index >> (r * s + c)) & 1;
      };
      for (int r0 = 0; r0 < s; ++r0) {
        for (int c0 = 0; c0 < s; ++c0) {
          bool ok = true;
          for (int i = 0; ok && i < m; ++i) {
            for (int j = 0; ok && j < m; ++j) {
              if (i != 0 && i != m - 1 && j != 0 && j != m - 1) continue;  // interior free
              if (!bit((r0 + i) % s, (c0 + j) % s)) ok = false;
            }
          }
          if (ok) return Val::one;
        }
      }
      return Val::zero;
    }
    case Kind::promise:
      return (*eval_)(Input::from_packed(index, n_, alphabet_));
  }
  return Val::undef;
}

Function Function::restrict(const std::vector<std::pair<int, std::uint32_t>>& assignment) const {
  std::vector<int> assigned_pos;
  for (auto& [p, v] : assignment) {
    if (p < 0 || p >= n_) throw std::invalid_argument("restrict: position out of range");
    if (v >= static_cast<std::uint32_t>(alphabet_))
      throw std::invalid_argument("restrict: symbol out of range");
    assigned_pos.push_back(p);
  }
  std::sort(assigned_pos.begin(), assigned_pos.end());
  if (std::adjacent_find(assigned_pos.begin(), assigned_pos.end()) != assigned_pos.end())
    throw std::invalid_argument("restrict: duplicate position");

  int k = static_cast<int>(assignment.size());
  int nn = n_ - k;

  if (kind_ == Kind::symmetric) {
    int ones = 0;
    for (auto& [p, v] : assignment) ones += (v != 0);
    std::vector<Val> np(nn + 1);
    for (int w = 0; w <= nn; ++w) np[w] = (*profile_)[w + ones];
    return symmetric(nn, std::move(np));
  }

  // free positions in ascending order
  std::vector<int> free_pos;
  std::vector<std::int64_t> fixed(n_, -1);
  for (auto& [p, v] : assignment) fixed[p] = v;
  for (int i = 0; i < n_; ++i)
    if (fixed[i] < 0) free_pos.push_back(i);

  auto splice = [&](const Input& sub) {
    Input full = Input::zeros(n_);
    for (int i = 0; i < n_; ++i)
      if (fixed[i] >= 0) full[i] = static_cast<std::uint32_t>(fixed[i]);
    for (int j = 0; j < nn; ++j) full[free_pos[j]] = sub[j];
    return full;
  };

  if (kind_ == Kind::promise) {
    auto base = *this;
    auto eval = [base, splice](const Input& sub) { return base.evaluate(splice(sub)); };
    std::vector<std::pair<std::uint64_t, Val>> dom;
    if (enumerated_) {
      for (auto& [idx, v] : *enumerated_) {
        Input full = Input::from_packed(idx, n_, alphabet_);
        bool consistent = true;
        for (auto& [p, a] : assignment)
          if (full[p] != a) { consistent = false; break; }
        if (!consistent) continue;
        std::vector<std::uint32_t> sub;
        for (int p : free_pos) sub.push_back(full[p]);
        dom.emplace_back(Input(std::move(sub)).packed(alphabet_), v);
      }
    }
    return promise(nn, alphabet_, std::move(eval), std::move(dom));
  }

  // dense / composed / lattice: materialize the restricted table
  std::uint64_t size = ipow_checked(alphabet_, nn);
  if (size > kDenseCap) throw std::invalid_argument("restrict: result exceeds dense cap");
  std::vector<Val> table(size);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    table[idx] = evaluate(splice(Input::from_packed(idx, nn, alphabet_)));
  }
  return dense(nn, std::move(table), alphabet_);
}

std::uint64_t Function::space_size() const { return ipow_checked(alphabet_, n_); }

bool Function::dense_expandable(std::uint64_t cap) const {
  double space = std::pow(static_cast<double>(alphabet_), n_);
  return space <= static_cast<double>(cap);
}

std::vector<Val> Function::dense_expansion(std::uint64_t cap) const {
  if (!dense_expandable(cap)) throw std::invalid_argument("dense_expansion: exceeds cap");
  std::uint64_t size = space_size();
  std::vector<Val> table(size);
  if (kind_ == Kind::dense) return *table_;
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    table[idx] = (alphabet_ == 2) ? value_at(idx) : evaluate(Input::from_packed(idx, n_, alphabet_));
  }
  return table;
}

bool Function::domain_enumerable() const {
  if (kind_ == Kind::promise) return enumerated_ != nullptr;
  return dense_expandable(kDenseCap);
}

void Function::for_each_defined(const std::function<void(std::uint64_t, Val)>& fn) const {
  if (kind_ == Kind::promise) {
    if (!enumerated_) throw std::invalid_argument("for_each_defined: domain not enumerated");
    for (auto& [idx, v] : *enumerated_) fn(idx, v);
    return;
  }
  if (!dense_expandable(kDenseCap))
    throw std::invalid_argument("for_each_defined: space exceeds dense cap");
  std::uint64_t size = space_size();
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    Val v = (alphabet_ == 2) ? value_at(idx) : evaluate(Input::from_packed(idx, n_, alphabet_));
    if (v != Val::undef) fn(idx, v);
  }
}

const std::vector<Val>& Function::profile() const {
  if (kind_ != Kind::symmetric) throw std::logic_error("profile(): not symmetric");
  return *profile_;
}
const Function& Function::outer() const {
  if (kind_ != Kind::composed) throw std::logic_error("outer(): not composed");
  return *outer_;
}
const std::vector<Function>& Function::children() const {
  if (kind_ != Kind::composed) throw std::logic_error("children(): not composed");
  return *children_;
}
int Function::lattice_side() const {
  if (kind_ != Kind::lattice) throw std::logic_error("lattice_side(): not lattice");
  return side_;
}
int Function::lattice_square() const {
  if (kind_ != Kind::lattice) throw std::logic_error("lattice_square(): not lattice");
  return square_;
}

std::string Function::serialize() const {
  std::string out = "n=" + std::to_string(n_) + "\n";
  if (!ctor_.empty()) return out + "ctor=" + ctor_ + "\n";
  if (kind_ == Kind::dense) {
    if (alphabet_ != 2) out += "alpha=" + std::to_string(alphabet_) + "\n";
    std::string tt;
    tt.reserve(table_->size());
    for (Val v : *table_) tt.push_back(val_char(v));
    return out + "tt=" + tt + "\n";
  }
  // untagged structured kinds round-trip through a dense table when small
  if (dense_expandable(kDenseCap) && alphabet_ == 2) {
    std::string tt;
    for (Val v : dense_expansion()) tt.push_back(val_char(v));
    return out + "tt=" + tt + "\n";
  }
  throw std::invalid_argument("serialize: no text form for this function");
}

namespace {

struct CtorParser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw std::invalid_argument(std::string("ctor parse: expected '") + c + "'");
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (start == pos) throw std::invalid_argument("ctor parse: expected name");
    return std::string(s.substr(start, pos - start));
  }
  long number() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("ctor parse: expected number");
    return std::stol(std::string(s.substr(start, pos - start)));
  }

  Function parse_ctor() {
    std::string name = ident();
    expect('(');
    Function f;
    if (name == "window") {
      long n = number(); expect(','); long a = number(); expect(','); long b = number();
      f = Function::weight_window(static_cast<int>(n), static_cast<int>(a), static_cast<int>(b));
    } else if (name == "threshold") {
      f = Function::threshold_sqrt(static_cast<int>(number()));
    } else if (name == "lattice") {
      long s0 = number(); expect(','); long m = number();
      f = Function::lattice(static_cast<int>(s0), static_cast<int>(m));
    } else if (name == "or") {
      f = Function::or_fn(static_cast<int>(number()));
    } else if (name == "and") {
      f = Function::and_fn(static_cast<int>(number()));
    } else if (name == "parity") {
      f = Function::parity(static_cast<int>(number()));
    } else if (name == "collision") {
      f = Function::collision(static_cast<int>(number()));
    } else if (name == "compose") {
      Function base = parse_ctor();
      expect(',');
      long t = number();
      f = Function::compose_levels(base, base, static_cast<int>(t));
    } else {
      throw std::invalid_argument("ctor parse: unknown constructor '" + name + "'");
    }
    expect(')');
    return f;
  }
};

}  // namespace

Function Function::parse(std::string_view text) {
  long n = -1, alpha = 2;
  std::string tt, ctor;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                             : end - start);
    start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("parse: expected key=value");
    std::string_view key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "n") n = std::stol(std::string(val));
    else if (key == "alpha") alpha = std::stol(std::string(val));
    else if (key == "tt") tt = std::string(val);
    else if (key == "ctor") ctor = std::string(val);
    else throw std::invalid_argument("parse: unknown key '" + std::string(key) + "'");
  }
  if (!ctor.empty()) {
    CtorParser p{ctor};
    Function f = p.parse_ctor();
    p.skip_ws();
    if (p.pos != ctor.size()) throw std::invalid_argument("parse: trailing ctor text");
    if (n >= 0 && f.n() != n) throw std::invalid_argument("parse: n does not match constructor");
    return f;
  }
  if (tt.empty()) throw std::invalid_argument("parse: need tt= or ctor=");
  if (n < 0) throw std::invalid_argument("parse: need n=");
  if (n > 20) throw std::invalid_argument("parse: n out of supported range for tt");
  std::uint64_t want = ipow_checked(alpha, static_cast<int>(n));
  if (tt.size() != want) throw std::invalid_argument("parse: tt length != alphabet^n");
  if (alpha == 2) return from_truth_table(static_cast<int>(n), tt);
  std::vector<Val> table;
  for (char c : tt) {
    if (c == '0') table.push_back(Val::zero);
    else if (c == '1') table.push_back(Val::one);
    else if (c == '*') table.push_back(Val::undef);
    else throw std::invalid_argument("parse: illegal tt character");
  }
  return dense(static_cast<int>(n), std::move(table), static_cast<int>(alpha));
}

Function attach_design(Function f, std::shared_ptr<const SetDesign> d, std::vector<int> labels) {
  f.design_ = std::move(d);
  f.design_labels_ = std::move(labels);
  return f;
}

}  // namespace certlab
