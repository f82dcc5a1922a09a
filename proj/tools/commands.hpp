#pragma once

// Subcommands.  Each returns the "result" member of the report; errors
// propagate as the library's exception types and main maps them to exit
// codes.

#include <optional>
#include <string>

#include "gammalat/cohomology.hpp"
#include "gammalat/resolutions.hpp"
#include "report.hpp"
#include "workspace.hpp"

namespace gammalat::cli {

struct Limits {
  GroupLimits group;
  CohomologyLimits cohomology;
  SearchLimits search;
};

struct Loaded {
  std::string text;
  Workspace workspace;
  BuiltWorkspace built;
};
Loaded load(const std::string& path, const Limits& limits);
// Throws InputError naming the known lattices.
const LatticePtr& lattice_named(const Loaded& w, const std::string& name);

Json classify_command(const Loaded& w, const std::string& name, const Limits& limits);

struct CohomologyRequest {
  std::string lattice;
  std::optional<std::string> subgroup;  // words; whole group when absent
  bool all = false;
  int degree = 1;
};
Json cohomology_command(const Loaded& w, const CohomologyRequest& r, const Limits& limits);

struct ResolveRequest {
  std::string lattice;
  std::string kind;  // coflasque | flasque
  int type = 1;
  std::string strategy = "descending";
  bool verify = false;
};
Json resolve_command(const Loaded& w, const ResolveRequest& r);

struct ShaRequest {
  std::string lattice;
  int degree = 1;
  std::string locals = "cyclic";  // cyclic | all | "w,w;w"
};
Json sha_command(const Loaded& w, const ShaRequest& r, const Limits& limits);

Json torus_command(const Loaded& w, const std::string& name, const std::string& field_model, const Limits& limits);

// Sets `passed`; main exits 1 when it is false.
Json verify_command(const Loaded& w);

// Tab-separated, one row per lattice in name order, newline-terminated.
std::string census_header();
std::string census_table(const BuiltWorkspace& built, const Limits& limits);
Json census_command(const Loaded& w, const std::string& out, const Limits& limits);

}  // namespace gammalat::cli
