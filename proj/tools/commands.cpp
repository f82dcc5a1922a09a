#include "commands.hpp"

#include <exception>
#include <fstream>
#include <sstream>

#include <omp.h>

#include "gammalat/torus.hpp"
#include "lemmas.hpp"

namespace gammalat::cli {

namespace {

Json subgroup_json(const Subgroup& h) {
  const auto& g = h.parent();
  return Json{{"class", g->class_index(h)}, {"order", h.order()}, {"subgroup", h.label()}};
}

Json class_json(const GroupPtr& g, std::size_t k) { return subgroup_json(g->subgroup_classes()[k]); }

Json verdict_json(const PredicateVerdict& v, const GroupPtr& g, const char* group_name) {
  Json out{{"holds", v.holds}};
  if (!v.holds) {
    Json w = class_json(g, static_cast<std::size_t>(v.failing_class));
    w[group_name] = to_json(v.witness);
    out["witness"] = w;
  }
  return out;
}

Json vectors_json(const std::vector<IntVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json fingerprint_json(const CohFingerprint& f, const GroupPtr& g) {
  Json out = Json::array();
  for (std::size_t k = 0; k < f.entries.size(); ++k) {
    Json e = class_json(g, k);
    e["fixed_rank"] = f.entries[k].fixed_rank;
    e["h1"] = to_json(f.entries[k].h1);
    e["tate_minus1"] = to_json(f.entries[k].tate_minus1);
    out.push_back(e);
  }
  return out;
}

Json permutation_json(const PermutationResult& p, const GroupPtr& g) {
  Json out{{"verdict", to_string(p.verdict)}};
  if (p.verdict == Verdict::yes) {
    out["basis"] = to_json(p.basis);
    Json orbits = Json::array();
    for (auto k : p.orbit_classes) orbits.push_back(class_json(g, k));
    out["orbits"] = orbits;
  }
  if (!p.obstruction.empty()) out["obstruction"] = p.obstruction;
  if (!p.note.empty()) out["note"] = p.note;
  return out;
}

Json stably_json(const StablyPermutationResult& s) {
  Json out{{"verdict", to_string(s.verdict)}};
  if (s.verdict == Verdict::yes) {
    out["route"] = s.route;
    out["p1_rank"] = s.p1->rank();
    out["p2_rank"] = s.p2->rank();
    out["iso"] = to_json(s.iso);
  }
  if (!s.obstruction.empty()) out["obstruction"] = s.obstruction;
  if (!s.note.empty()) out["note"] = s.note;
  return out;
}

Json matrices_json(const std::vector<IntMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

Json sha_json(const ShaResult& s, const GroupPtr& g) {
  Json locals = Json::array();
  for (auto k : s.locals) locals.push_back(class_json(g, k));
  return Json{{"degree", s.degree},
              {"invariants", to_json(s.structure)},
              {"generators", vectors_json(s.generators)},
              {"locals", locals},
              {"label", s.label}};
}

GeneratorStrategy parse_strategy(const std::string& s) {
  for (auto x : {GeneratorStrategy::descending, GeneratorStrategy::ascending, GeneratorStrategy::full})
    if (s == to_string(x)) return x;
  throw InputError("unknown strategy '" + s + "' (descending, ascending or full)");
}

ResolutionKind parse_kind(const std::string& s) {
  if (s == "coflasque") return ResolutionKind::coflasque;
  if (s == "flasque") return ResolutionKind::flasque;
  throw InputError("unknown kind '" + s + "' (coflasque or flasque)");
}

void check_degree(int d) {
  if (d != 1 && d != 2) throw InputError("degree must be 1 or 2, got " + std::to_string(d));
}

// "cyclic", "all", or subgroups separated by ';', each a comma-separated
// list of generator words.
struct Locals {
  LocalsChoice choice = LocalsChoice::cyclic;
  std::vector<Subgroup> listed;
};
Locals parse_locals(const std::string& s, const GroupPtr& g) {
  if (s == "cyclic") return {};
  if (s == "all") return {LocalsChoice::all, {}};
  Locals out{LocalsChoice::listed, {}};
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) out.listed.push_back(parse_subgroup(part, g));
  if (out.listed.empty()) throw InputError("--locals lists no subgroups");
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Loaded load(const std::string& path, const Limits& limits) {
  Loaded w;
  w.text = read_file(path);
  w.workspace = parse_workspace(w.text);
  w.built = build_workspace(w.workspace, limits.group);
  return w;
}

const LatticePtr& lattice_named(const Loaded& w, const std::string& name) {
  auto it = w.built.lattices.find(name);
  if (it != w.built.lattices.end()) return it->second;
  std::string known;
  for (const auto& [n, l] : w.built.lattices) known += (known.empty() ? "" : ", ") + n;
  throw InputError("no lattice named '" + name + "' (known: " + (known.empty() ? "none" : known) + ")");
}

Json classify_command(const Loaded& w, const std::string& name, const Limits& limits) {
  const auto& m = lattice_named(w, name);
  const auto& g = w.built.group;
  auto fp = fingerprint(m);
  auto inv = is_invertible(m);
  Json invertible{{"holds", inv.holds}};
  if (!inv.holds) invertible["refutation"] = inv.refutation;
  return Json{{"lattice", name},
              {"rank", m->rank()},
              {"permutation", permutation_json(is_permutation(m, limits.search), g)},
              {"coflasque", verdict_json(is_coflasque(m), g, "h1")},
              {"flasque", verdict_json(is_flasque(m), g, "h1_of_dual")},
              {"invertible", invertible},
              {"stably_permutation", stably_json(is_stably_permutation(m, limits.search))},
              {"fingerprint", fingerprint_json(fp, g)},
              {"fingerprint_sha256", fingerprint_digest(fp)}};
}

Json cohomology_command(const Loaded& w, const CohomologyRequest& r, const Limits& limits) {
  check_degree(r.degree);
  if (r.all && r.subgroup) throw InputError("--subgroup and --all are exclusive");
  const auto& m = lattice_named(w, r.lattice);
  const auto& g = w.built.group;
  std::vector<Subgroup> hs;
  if (r.all) hs = g->subgroup_classes();
  else if (r.subgroup) hs.push_back(parse_subgroup(*r.subgroup, g));
  else hs.push_back(g->whole());
  Json rows = Json::array();
  for (const auto& h : hs) {
    auto c = r.degree == 1 ? h1(h, m) : h2(h, m, limits.cohomology);
    Json row = subgroup_json(h);
    row["members"] = h.members();
    row["invariants"] = to_json(c.structure());
    row["generators"] = vectors_json(c.torsion_generators());
    row["tate_minus1"] = to_json(tate_minus1(h, m));
    row["tate_zero"] = to_json(tate_zero(h, m));
    rows.push_back(row);
  }
  return Json{{"lattice", r.lattice}, {"degree", r.degree}, {"subgroups", rows}};
}

Json resolve_command(const Loaded& w, const ResolveRequest& r) {
  const auto& m = lattice_named(w, r.lattice);
  if (r.type != 1 && r.type != 2) throw InputError("type must be 1 or 2, got " + std::to_string(r.type));
  const auto& g = w.built.group;
  ResolutionOptions o;
  o.strategy = parse_strategy(r.strategy);
  o.verify = r.verify;
  auto c = build_resolution(m, parse_kind(r.kind), r.type, o);
  if (r.verify && !c.verified) throw PropertyViolation("certificate does not verify: " + c.failure);
  Json summands = Json::array();
  for (auto k : c.permutation_summands) summands.push_back(class_json(g, k));
  Json evidence = Json::array();
  for (std::size_t k = 0; k < c.evidence.size(); ++k) {
    Json e = class_json(g, k);
    e["h1"] = to_json(c.evidence[k]);
    evidence.push_back(e);
  }
  const auto& s = c.sequence;
  Json out{{"lattice", r.lattice},
           {"kind", to_string(c.kind)},
           {"type", c.type},
           {"strategy", to_string(o.strategy)},
           {"ranks", Json::array({s.sub()->rank(), s.mid()->rank(), s.quot()->rank()})},
           {"inj", to_json(s.inj.matrix)},
           {"surj", to_json(s.surj.matrix)},
           {"permutation_summands", summands},
           {"designated_term", Json{{"rank", c.designated_term->rank()},
                                    {"generator_matrices", matrices_json(c.designated_term->generator_matrices())}}},
           {"evidence", evidence},
           {"verified", c.verified}};
  if (!c.failure.empty()) out["failure"] = c.failure;
  return out;
}

Json sha_command(const Loaded& w, const ShaRequest& r, const Limits& limits) {
  check_degree(r.degree);
  const auto& m = lattice_named(w, r.lattice);
  auto locals = parse_locals(r.locals, w.built.group);
  auto s = sha_kernel(Torus{m, r.lattice}, r.degree, locals.choice, locals.listed, limits.cohomology);
  Json out = sha_json(s, w.built.group);
  out["lattice"] = r.lattice;
  return out;
}

Json torus_command(const Loaded& w, const std::string& name, const std::string& field_model, const Limits& limits) {
  const auto& m = lattice_named(w, name);
  const auto& g = w.built.group;
  TorusOptions o;
  o.search = limits.search;
  o.cohomology = limits.cohomology;
  auto t = zhe_report(Torus{m, name}, parse_field_model(field_model), o);
  Json out{{"lattice", name},
           {"field_model", to_string(t.model)},
           {"flags", Json{{"quasi_trivial", t.flags.quasi_trivial},
                          {"coflasque", t.flags.coflasque},
                          {"flasque", t.flags.flasque},
                          {"special", t.flags.special}}},
           {"retract_rational", t.retract_rational},
           {"stably_rational", to_string(t.stably_rational)},
           {"zhe_trivial", t.zhe_trivial},
           {"provenance", t.provenance}};
  out["zhe"] = t.zhe_group ? to_json(*t.zhe_group) : Json(nullptr);
  out["sha1"] = t.sha1 ? sha_json(*t.sha1, g) : Json(nullptr);
  out["sha2"] = t.sha2 ? sha_json(*t.sha2, g) : Json(nullptr);
  return out;
}

Json verify_command(const Loaded& w) {
  auto results = run_lemma_suite(w.built.group, w.built.lattices);
  Json lemmas = Json::array();
  bool passed = true;
  for (const auto& r : results) {
    lemmas.push_back(Json{{"lemma", r.lemma},
                          {"instances", r.instances},
                          {"failures", r.failures},
                          {"notes", r.failure_notes},
                          {"passed", r.passed()}});
    passed = passed && r.passed();
  }
  return Json{{"lemmas", lemmas}, {"passed", passed}};
}

std::string census_header() {
  return "lattice\trank\tpermutation\tcoflasque\tflasque\tinvertible\tstably_permutation\tfingerprint_sha256\t"
         "retract_rational\tzhe_trivial\tstably_rational\tsha1\tsha2\n";
}

namespace {

constexpr const char* skipped = "skipped: cap";

std::string census_row(const std::string& name, const LatticePtr& m, const Limits& limits) {
  std::ostringstream os;
  os << name << '\t' << m->rank() << '\t' << to_string(is_permutation(m, limits.search).verdict) << '\t'
     << yes_no(is_coflasque(m).holds) << '\t' << yes_no(is_flasque(m).holds) << '\t';
  try {
    os << yes_no(is_invertible(m).holds);
  } catch (const CapExceeded&) {
    os << skipped;
  }
  os << '\t' << to_string(is_stably_permutation(m, limits.search).verdict) << '\t' << fingerprint_digest(fingerprint(m))
     << '\t';
  Torus t{m, name};
  try {
    auto z = zhe_trivial(t);
    // Route A is the retract-rationality criterion itself.
    os << yes_no(z.route_a) << '\t' << yes_no(z.trivial);
  } catch (const CapExceeded&) {
    os << skipped << '\t' << skipped;
  }
  os << '\t';
  try {
    os << to_string(stably_rational_partial(t, limits.search).verdict);
  } catch (const CapExceeded&) {
    os << skipped;
  }
  for (int d : {1, 2}) {
    os << '\t';
    try {
      os << sha_kernel(t, d, LocalsChoice::cyclic, {}, limits.cohomology).structure.to_string();
    } catch (const CapExceeded&) {
      os << skipped;
    }
  }
  os << '\n';
  return os.str();
}

}  // namespace

std::string census_table(const BuiltWorkspace& built, const Limits& limits) {
  std::vector<std::pair<std::string, LatticePtr>> items(built.lattices.begin(), built.lattices.end());
  std::vector<std::string> rows(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  // Rows are independent; assembly below is in name order.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      rows[i] = census_row(items[i].first, items[i].second, limits);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  std::string out = census_header();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out += rows[i];
  }
  return out;
}

Json census_command(const Loaded& w, const std::string& out, const Limits& limits) {
  std::string table = census_table(w.built, limits);
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + out);
  f << table;
  f.close();
  if (!f) throw InputError("cannot write " + out);
  return Json{{"rows", w.built.lattices.size()}, {"sha256", sha256_hex(table)}};
}

}  // namespace gammalat::cli
