#include "gammalat/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace gammalat {

namespace {

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[static_cast<std::size_t>(b[x])];
  return r;
}

void check_bijection(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) throw InputError("generator has wrong length");
  std::vector<char> seen(degree, 0);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= degree || seen[static_cast<std::size_t>(x)])
      throw InputError("generator is not a bijection on 0..degree-1");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

std::vector<int> greedy_generators(const FiniteGroup& g, const std::vector<int>& members) {
  std::vector<int> gens;
  std::vector<int> current{g.identity()};
  for (int x : members) {
    if (std::binary_search(current.begin(), current.end(), x)) continue;
    gens.push_back(x);
    current = g.closure(gens);
  }
  return gens;
}

}  // namespace

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    ps.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members, bool class_representative)
    : parent_(std::move(parent)), members_(std::move(members)), class_representative_(class_representative) {
  std::sort(members_.begin(), members_.end());
  position_.assign(parent_->order(), -1);
  for (std::size_t i = 0; i < members_.size(); ++i) position_[static_cast<std::size_t>(members_[i])] = static_cast<int>(i);
  generators_ = greedy_generators(*parent_, members_);
}

bool Subgroup::contains(int g) const { return position_[static_cast<std::size_t>(g)] >= 0; }

int Subgroup::position(int g) const { return position_[static_cast<std::size_t>(g)]; }

bool Subgroup::is_cyclic() const {
  return std::any_of(members_.begin(), members_.end(), [&](int g) {
    return static_cast<std::size_t>(parent_->element_order(g)) == members_.size();
  });
}

std::string Subgroup::label() const {
  std::ostringstream os;
  os << "order" << members_.size() << "{";
  for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << members_[i];
  os << "}";
  return os.str();
}

FiniteGroup::FiniteGroup(std::size_t degree, std::vector<Permutation> generators, const GroupLimits& limits)
    : degree_(degree), generators_(std::move(generators)), limits_(limits) {
  Permutation id(degree);
  for (std::size_t x = 0; x < degree; ++x) id[x] = static_cast<int>(x);
  for (const auto& p : generators_) check_bijection(p, degree);

  std::set<Permutation> found{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    for (const auto& s : generators_) {
      Permutation nxt = compose(cur, s);
      if (found.insert(nxt).second) {
        if (found.size() > limits_.max_order)
          throw CapExceeded("group order exceeds cap " + std::to_string(limits_.max_order));
        queue.push_back(std::move(nxt));
      }
    }
  }
  elements_.assign(found.begin(), found.end());
  const std::size_t n = elements_.size();
  std::map<Permutation, int> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elements_[i], static_cast<int>(i));
  table_.resize(n * n);
  inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int c = index.at(compose(elements_[a], elements_[b]));
      table_[a * n + b] = c;
      if (c == 0) inverse_[a] = static_cast<int>(b);
    }
  for (const auto& s : generators_) generator_indices_.push_back(index.at(s));

  tree_parent_.assign(n, -2);
  tree_generator_.assign(n, -1);
  tree_parent_[0] = -1;
  bfs_order_.push_back(0);
  for (std::size_t k = 0; k < bfs_order_.size(); ++k) {
    int cur = bfs_order_[k];
    for (std::size_t j = 0; j < generator_indices_.size(); ++j) {
      int nxt = multiply(cur, generator_indices_[j]);
      if (tree_parent_[static_cast<std::size_t>(nxt)] != -2) continue;
      tree_parent_[static_cast<std::size_t>(nxt)] = cur;
      tree_generator_[static_cast<std::size_t>(nxt)] = static_cast<int>(j);
      bfs_order_.push_back(nxt);
    }
  }
}

int FiniteGroup::index_of(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return -1;
  return static_cast<int>(it - elements_.begin());
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity(); x = multiply(x, a)) ++k;
  return k;
}

std::vector<int> FiniteGroup::closure(const std::vector<int>& seeds) const {
  std::vector<char> in(order(), 0);
  std::vector<int> members{identity()};
  in[0] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (int s : seeds) {
      int nxt = multiply(members[k], s);
      if (!in[static_cast<std::size_t>(nxt)]) {
        in[static_cast<std::size_t>(nxt)] = 1;
        members.push_back(nxt);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

Subgroup FiniteGroup::whole() const {
  std::vector<int> all(order());
  for (std::size_t i = 0; i < order(); ++i) all[i] = static_cast<int>(i);
  return Subgroup(shared_from_this(), all, true);
}

Subgroup FiniteGroup::trivial_subgroup() const { return Subgroup(shared_from_this(), {identity()}, true); }

Subgroup FiniteGroup::make_subgroup(const std::vector<int>& members) const {
  std::vector<int> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (!satisfies_subgroup_axioms(*this, sorted)) throw InputError("element set is not a subgroup");
  bool rep = false;
  for (const auto& c : subgroup_classes())
    if (c.members() == sorted) rep = true;
  return Subgroup(shared_from_this(), sorted, rep);
}

void FiniteGroup::enumerate_subgroups() const {
  const std::size_t n = order();
  auto canonical = [&](const std::vector<int>& members) {
    std::vector<int> best = members;
    std::vector<int> conj(members.size());
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t i = 0; i < members.size(); ++i) conj[i] = conjugate(static_cast<int>(g), members[i]);
      std::sort(conj.begin(), conj.end());
      if (conj < best) best = conj;
    }
    return best;
  };

  std::vector<std::vector<int>> cyclic;
  {
    std::set<std::vector<int>> seen;
    for (std::size_t g = 0; g < n; ++g) {
      auto c = closure({static_cast<int>(g)});
      if (seen.insert(c).second) cyclic.push_back(std::move(c));
    }
  }

  std::set<std::vector<int>> reps;
  std::deque<std::vector<int>> work;
  for (const auto& c : cyclic) {
    auto r = canonical(c);
    if (reps.insert(r).second) work.push_back(r);
  }
  while (!work.empty()) {
    std::vector<int> s = work.front();
    work.pop_front();
    if (s.size() == n) continue;
    for (const auto& c : cyclic) {
      int gen = c.size() > 1 ? c[1] : c[0];
      if (std::binary_search(s.begin(), s.end(), gen) &&
          std::includes(s.begin(), s.end(), c.begin(), c.end()))
        continue;
      std::vector<int> seeds = s;
      seeds.insert(seeds.end(), c.begin(), c.end());
      auto r = canonical(closure(seeds));
      if (reps.insert(r).second) {
        if (reps.size() > limits_.max_subgroups)
          throw CapExceeded("subgroup classes exceed cap " + std::to_string(limits_.max_subgroups));
        work.push_back(r);
      }
    }
  }
  std::vector<std::vector<int>> sorted(reps.begin(), reps.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  GroupPtr unowned(GroupPtr{}, this);
  for (auto& m : sorted) classes_.emplace_back(unowned, std::move(m), true);
}

const std::vector<Subgroup>& FiniteGroup::cached_classes() const {
  std::call_once(subgroups_once_, [this] {
    try {
      enumerate_subgroups();
    } catch (...) {
      subgroups_error_ = std::current_exception();
    }
  });
  if (subgroups_error_) std::rethrow_exception(subgroups_error_);
  return classes_;
}

std::vector<Subgroup> FiniteGroup::subgroup_classes() const {
  std::vector<Subgroup> out = cached_classes();
  auto self = shared_from_this();
  for (auto& s : out) s.parent_ = self;
  return out;
}

std::size_t FiniteGroup::class_index(const Subgroup& h) const {
  const auto& classes = cached_classes();
  for (std::size_t g = 0; g < order(); ++g) {
    std::vector<int> conj;
    for (int x : h.members()) conj.push_back(conjugate(static_cast<int>(g), x));
    std::sort(conj.begin(), conj.end());
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (classes[c].members() == conj) return c;
  }
  throw std::logic_error("subgroup not found among classes");
}

std::string FiniteGroup::describe() const {
  std::ostringstream os;
  os << "degree " << degree_ << ", order " << order() << ", " << generators_.size() << " generators";
  return os.str();
}

GroupPtr group_from_generators(std::size_t degree, const std::vector<Permutation>& generators,
                               const GroupLimits& limits) {
  return std::make_shared<const FiniteGroup>(degree, generators, limits);
}

std::vector<Subgroup> subgroups_up_to_conjugacy(const GroupPtr& g) { return g->subgroup_classes(); }

std::vector<Subgroup> cyclic_subgroups_up_to_conjugacy(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (const auto& s : g->subgroup_classes())
    if (s.is_cyclic()) out.push_back(s);
  return out;
}

Subgroup sylow_subgroup(const GroupPtr& g, int p) {
  if (!is_prime(p)) throw std::invalid_argument("sylow_subgroup: p must be prime");
  std::size_t part = 1;
  std::size_t n = g->order();
  while (n % static_cast<std::size_t>(p) == 0) {
    n /= static_cast<std::size_t>(p);
    part *= static_cast<std::size_t>(p);
  }
  for (const auto& s : g->subgroup_classes())
    if (s.order() == part) return s;
  throw std::logic_error("no Sylow subgroup found");
}

std::vector<Subgroup> prime_power_subgroup_classes(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (const auto& s : g->subgroup_classes())
    if (prime_divisors(static_cast<long>(s.order())).size() <= 1) out.push_back(s);
  return out;
}

bool satisfies_subgroup_axioms(const FiniteGroup& g, const std::vector<int>& members) {
  std::vector<char> in(g.order(), 0);
  for (int x : members) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.order()) return false;
    in[static_cast<std::size_t>(x)] = 1;
  }
  if (!in[0]) return false;
  for (int a : members) {
    if (!in[static_cast<std::size_t>(g.inverse(a))]) return false;
    for (int b : members)
      if (!in[static_cast<std::size_t>(g.multiply(a, b))]) return false;
  }
  return true;
}

}  // namespace gammalat
