#pragma once

// Workspace files: one permutation group and a map of named lattice specs.
//
//   {"group": {"degree": 4, "generators": [[1,2,3,0], [1,0,2,3]]},
//    "lattices": {"R": "regular", "Z": {"trivial": 1}, "P": {"cosets": ["g0^2", "g1"]},
//                 "S": {"matrices": [[[-1]], [[1]]]}, "D": {"dual": "P"},
//                 "A": {"sum": ["R", "Z"]}, "H": {"hom": ["R", "Z"]},
//                 "J": {"quotient": ["R", [[1,1,1,1]]]}}}
//
// Words are products of g<i>^<k> separated by '*', or "e".  Everything a
// file can say has one canonical spelling, and to_json emits it.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gammalat/groups.hpp"
#include "gammalat/lattices.hpp"

namespace gammalat::cli {

using Json = nlohmann::json;

// (generator index, exponent) factors; empty is the identity.
using Word = std::vector<std::pair<std::size_t, long>>;
std::string to_string(const Word& w);
// Throws InputError.
Word parse_word(const std::string& text);
int evaluate(const Word& w, const FiniteGroup& g);
// A word for element x along the group's BFS tree.
Word word_of(int x, const FiniteGroup& g);

namespace spec {
struct Trivial {
  std::size_t rank = 0;
};
struct Regular {};
struct Cosets {
  std::vector<Word> generators;
};
struct Matrices {
  std::size_t rank = 0;
  std::vector<IntMatrix> generator_matrices;
};
struct Dual {
  std::string of;
};
struct Sum {
  std::string first, second;
};
struct Hom {
  std::string source, target;
};
// M / span(rows), rows in the coordinates of M.
struct Quotient {
  std::string of;
  std::vector<IntVector> rows;
};
}  // namespace spec

using Spec = std::variant<spec::Trivial, spec::Regular, spec::Cosets, spec::Matrices, spec::Dual, spec::Sum,
                          spec::Hom, spec::Quotient>;

struct Workspace {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::map<std::string, Spec> lattices;
};

// Throws InputError with a line:column (syntax) or JSON-pointer (structure)
// position in the message.
Workspace parse_workspace(const std::string& text);
Json to_json(const Workspace& w);

struct BuiltWorkspace {
  GroupPtr group;
  std::map<std::string, LatticePtr> lattices;
};
// Resolves references in dependency order; cycles and dangling names are
// InputErrors naming the path.
BuiltWorkspace build_workspace(const Workspace& w, const GroupLimits& limits = {});

// Subgroup generated by comma-separated words.
Subgroup parse_subgroup(const std::string& text, const GroupPtr& g);

std::string read_file(const std::string& path);

}  // namespace gammalat::cli
