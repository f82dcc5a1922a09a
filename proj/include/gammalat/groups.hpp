#pragma once

// Finite permutation groups: the finite quotient through which every lattice
// action factors.  Elements are enumerated once, sorted lexicographically by
// their image arrays (so the identity is element 0), and all later queries go
// through the multiplication table.

#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gammalat/errors.hpp"

namespace gammalat {

using Permutation = std::vector<int>;

struct GroupLimits {
  std::size_t max_order = 384;
  std::size_t max_subgroups = 10000;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(GroupPtr parent, std::vector<int> members, bool class_representative);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  // Greedy generating set: members in index order that are not yet in the
  // closure of the previously chosen ones.
  const std::vector<int>& generators() const { return generators_; }
  std::size_t order() const { return members_.size(); }
  bool contains(int g) const;
  bool is_class_representative() const { return class_representative_; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_cyclic() const;
  // Position of element g inside members(), or -1.
  int position(int g) const;

  std::string label() const;
  bool operator==(const Subgroup& o) const { return members_ == o.members_; }

 private:
  friend class FiniteGroup;
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<int> generators_;
  std::vector<int> position_;
  bool class_representative_ = false;
};

class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  // Use group_from_generators.
  FiniteGroup(std::size_t degree, std::vector<Permutation> generators, const GroupLimits& limits);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generator_perms() const { return generators_; }
  // Element index of each generator.
  const std::vector<int>& generator_indices() const { return generator_indices_; }
  const Permutation& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::vector<Permutation>& elements() const { return elements_; }

  int identity() const { return 0; }
  // (a*b)(x) = a(b(x))
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int conjugate(int g, int h) const { return multiply(multiply(g, h), inverse(g)); }  // g h g^-1
  int index_of(const Permutation& p) const;  // -1 if not an element
  int element_order(int a) const;

  // Breadth-first spanning tree over the generators: element i equals
  // multiply(tree_parent(i), generator tree_generator(i)); the identity has
  // parent -1.  Elements are listed in BFS order by bfs_order().
  int tree_parent(int i) const { return tree_parent_[static_cast<std::size_t>(i)]; }
  int tree_generator(int i) const { return tree_generator_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& bfs_order() const { return bfs_order_; }

  const GroupLimits& limits() const { return limits_; }

  // Closure of a set of elements under multiplication, sorted.
  std::vector<int> closure(const std::vector<int>& seeds) const;

  // Subgroup classes in enumeration order: by order, then by the
  // lexicographically least member set (which is also the representative).
  std::vector<Subgroup> subgroup_classes() const;
  Subgroup whole() const;
  Subgroup trivial_subgroup() const;
  Subgroup make_subgroup(const std::vector<int>& members) const;
  // Index into subgroup_classes() of the class containing this subgroup.
  std::size_t class_index(const Subgroup& h) const;

  std::string describe() const;

 private:
  void enumerate_subgroups() const;
  // Cached classes hold a non-owning parent pointer; the group would
  // otherwise own itself through them.
  const std::vector<Subgroup>& cached_classes() const;

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<int> generator_indices_;
  std::vector<Permutation> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> tree_parent_;
  std::vector<int> tree_generator_;
  std::vector<int> bfs_order_;
  GroupLimits limits_;

  mutable std::once_flag subgroups_once_;
  mutable std::vector<Subgroup> classes_;
  mutable std::exception_ptr subgroups_error_;
};

// Throws InputError on a non-bijective generator and CapExceeded
// when the closure outgrows limits.max_order.
GroupPtr group_from_generators(std::size_t degree, const std::vector<Permutation>& generators,
                               const GroupLimits& limits = {});

std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g);
std::vector<Subgroup> cyclic_subgroups_up_to_conjugacy(const GroupPtr& g);
Subgroup sylow_subgroup(const GroupPtr& g, int p);
// Classes whose order is a prime power (the trivial subgroup included).
std::vector<Subgroup> prime_power_subgroup_classes(const GroupPtr& g);

bool is_prime(long p);
std::vector<long> prime_divisors(long n);

// Structural check used by tests: closed under products and inverses,
// contains the identity.
bool satisfies_subgroup_axioms(const FiniteGroup& g, const std::vector<int>& members);

}  // namespace gammalat
