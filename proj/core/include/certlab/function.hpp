#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certlab/input.hpp"

namespace certlab {

struct SetDesign;

enum class Val : std::uint8_t { zero = 0, one = 1, undef = 2 };

inline Val to_val(int b) { return b ? Val::one : Val::zero; }
inline bool defined(Val v) { return v != Val::undef; }
inline char val_char(Val v) { return v == Val::undef ? '*' : (v == Val::one ? '1' : '0'); }

// A total or partial function on n variables over a finite alphabet.
// Immutable after construction; cheap to copy (shared internals) and safe
// to share across worker threads.
class Function {
 public:
  enum class Kind { dense, symmetric, composed, lattice, promise };

  // How many dense-table entries we are willing to materialize. Structured
  // kinds evaluate lazily beyond this.
  static constexpr std::uint64_t kDenseCap = 1ull << 20;

  Function() = default;

  static Function dense(int n, std::vector<Val> table, int alphabet = 2);
  static Function from_truth_table(int n, std::string_view tt);  // chars over 0/1/*
  static Function symmetric(int n, std::vector<Val> profile);
  static Function composed(Function outer, std::vector<Function> children);
  static Function lattice(int side, int square);
  // Promise kind: eval must return undef outside the domain. The enumerated
  // domain (packed indices, see Input::packed) is optional.
  static Function promise(int n, int alphabet, std::function<Val(const Input&)> eval,
                          std::vector<std::pair<std::uint64_t, Val>> enumerated = {});

  // Families used by the gap constructions.
  static Function constant(int n, Val v);
  static Function or_fn(int n);
  static Function and_fn(int n);
  static Function parity(int n);
  static Function weight_window(int n, int a, int b);
  static Function threshold_sqrt(int n);  // 1 iff weight >= ceil(sqrt(n))
  static Function collision(int n);       // promise over alphabet n^2
  // levels=1 returns inner; levels=t returns outer[... t-1 levels ...] on
  // outer.n()^(t-1) * inner.n() variables split into consecutive blocks.
  static Function compose_levels(const Function& outer, const Function& inner, int levels);

  int n() const { return n_; }
  int alphabet() const { return alphabet_; }
  Kind kind() const { return kind_; }
  bool boolean() const { return alphabet_ == 2; }
  bool total() const { return total_; }

  Val evaluate(const Input& x) const;
  // Boolean fast path, index bit p = position p.
  Val value_at(std::uint64_t index) const;

  // Restriction to the free positions (those not assigned). Assignment pairs
  // are (0-based position, symbol). Free positions keep their relative order.
  Function restrict(const std::vector<std::pair<int, std::uint32_t>>& assignment) const;

  std::uint64_t space_size() const;  // alphabet^n, throws on overflow
  bool dense_expandable(std::uint64_t cap = kDenseCap) const;
  std::vector<Val> dense_expansion(std::uint64_t cap = kDenseCap) const;

  // Domain iteration. For dense/symmetric/lattice kinds this walks the whole
  // space (defined points only); for promise kinds it requires an enumerated
  // domain.
  bool domain_enumerable() const;
  void for_each_defined(const std::function<void(std::uint64_t packed, Val v)>& fn) const;

  // Structure accessors (throw on kind mismatch).
  const std::vector<Val>& profile() const;
  const Function& outer() const;
  const std::vector<Function>& children() const;
  int lattice_side() const;
  int lattice_square() const;

  // Structural metadata for promise fast paths.
  int collision_n() const { return collision_n_; }  // -1 unless built by collision()
  std::shared_ptr<const SetDesign> design() const { return design_; }
  const std::vector<int>& design_labels() const { return design_labels_; }

  std::string serialize() const;
  static Function parse(std::string_view text);

  // Non-empty for constructor-built functions, e.g. "window(29,13,16)".
  const std::string& ctor_tag() const { return ctor_; }

 private:
  friend Function attach_design(Function f, std::shared_ptr<const SetDesign> d,
                                std::vector<int> labels);

  int n_ = 0;
  int alphabet_ = 2;
  Kind kind_ = Kind::dense;
  bool total_ = true;
  std::string ctor_;

  std::shared_ptr<const std::vector<Val>> table_;    // dense
  std::shared_ptr<const std::vector<Val>> profile_;  // symmetric
  std::shared_ptr<const Function> outer_;            // composed
  std::shared_ptr<const std::vector<Function>> children_;
  int side_ = 0, square_ = 0;                        // lattice
  std::shared_ptr<const std::function<Val(const Input&)>> eval_;  // promise
  std::shared_ptr<const std::vector<std::pair<std::uint64_t, Val>>> enumerated_;

  int collision_n_ = -1;
  std::shared_ptr<const SetDesign> design_;
  std::vector<int> design_labels_;
};

// Internal hook used by the designs module to tag promise functions.
Function attach_design(Function f, std::shared_ptr<const SetDesign> d, std::vector<int> labels);

}  // namespace certlab
