#include "run.hpp"

#include <functional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace gammalat::cli {

namespace {

enum Exit { ok = 0, property_violation = 1, input_error = 2, cap_exceeded = 3 };

Json error_json(const char* kind, const std::string& message) { return Json{{"kind", kind}, {"message", message}}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with lattices over finite groups and their tori", tool_name};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tool_version);

  Limits limits;
  app.add_option("--group-cap", limits.group.max_order, "largest group order")->envname("GROUP_CAP");
  app.add_option("--h2-cap", limits.cohomology.h2_max_order, "largest subgroup order for degree 2")
      ->envname("H2_CAP");
  app.add_option("--search-bound", limits.search.norm_bound, "max-norm of basis vectors in permutation searches")
      ->envname("SEARCH_BOUND")
      ->check(CLI::PositiveNumber);

  std::string file, lattice;
  Json request;
  std::function<Json(const Loaded&)> action;
  bool check_passed = false;

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "workspace file")->required(); };
  auto with_lattice = [&](CLI::App* sub) { sub->add_option("--lattice", lattice, "lattice name")->required(); };

  auto* classify = app.add_subcommand("classify", "predicates, fingerprint and witnesses");
  with_file(classify);
  with_lattice(classify);
  classify->callback([&] {
    request = Json{{"lattice", lattice}};
    action = [&](const Loaded& w) { return classify_command(w, lattice, limits); };
  });

  CohomologyRequest coh;
  std::string coh_subgroup;
  auto* cohomology = app.add_subcommand("cohomology", "H^1 or H^2 with Tate groups");
  with_file(cohomology);
  with_lattice(cohomology);
  auto* sub_opt = cohomology->add_option("--subgroup", coh_subgroup, "generator words, e.g. g0,g1^2");
  cohomology->add_flag("--all", coh.all, "every subgroup class")->excludes(sub_opt);
  cohomology->add_option("--degree", coh.degree, "1 or 2")->check(CLI::IsMember({1, 2}));
  cohomology->callback([&] {
    coh.lattice = lattice;
    if (!coh_subgroup.empty()) coh.subgroup = coh_subgroup;
    request = Json{{"lattice", lattice}, {"degree", coh.degree}, {"all", coh.all}};
    request["subgroup"] = coh.subgroup ? Json(*coh.subgroup) : Json(nullptr);
    action = [&](const Loaded& w) { return cohomology_command(w, coh, limits); };
  });

  ResolveRequest res;
  auto* resolve = app.add_subcommand("resolve", "flasque or coflasque resolution with certificate");
  with_file(resolve);
  with_lattice(resolve);
  resolve->add_option("--kind", res.kind, "coflasque or flasque")
      ->required()
      ->check(CLI::IsMember({"coflasque", "flasque"}));
  resolve->add_option("--type", res.type, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  resolve->add_option("--strategy", res.strategy, "descending, ascending or full")
      ->check(CLI::IsMember({"descending", "ascending", "full"}));
  resolve->add_flag("--verify", res.verify, "re-derive and require the certificate");
  resolve->callback([&] {
    res.lattice = lattice;
    request = Json{{"lattice", lattice}, {"kind", res.kind}, {"type", res.type}, {"strategy", res.strategy},
                   {"verify", res.verify}};
    action = [&](const Loaded& w) { return resolve_command(w, res); };
  });

  ShaRequest sha;
  auto* sha_cmd = app.add_subcommand("sha", "kernel of restriction to local subgroups");
  with_file(sha_cmd);
  with_lattice(sha_cmd);
  sha_cmd->add_option("--degree", sha.degree, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  sha_cmd->add_option("--locals", sha.locals, "cyclic, all, or subgroups as w,w;w");
  sha_cmd->callback([&] {
    sha.lattice = lattice;
    request = Json{{"lattice", lattice}, {"degree", sha.degree}, {"locals", sha.locals}};
    action = [&](const Loaded& w) { return sha_command(w, sha, limits); };
  });

  std::string field_model;
  auto* torus = app.add_subcommand("torus", "rationality and Zhe report for the dual torus");
  with_file(torus);
  with_lattice(torus);
  torus->add_option("--field-model", field_model,
                    "number_field, local_nonarchimedean, finite, cohomological_dim_le_1 or general")
      ->required();
  torus->callback([&] {
    request = Json{{"lattice", lattice}, {"field_model", field_model}};
    action = [&](const Loaded& w) { return torus_command(w, lattice, field_model, limits); };
  });

  auto* verify = app.add_subcommand("verify", "lemma suite on the workspace");
  with_file(verify);
  verify->callback([&] {
    request = Json::object();
    check_passed = true;
    action = [&](const Loaded& w) { return verify_command(w); };
  });

  std::string census_out;
  auto* census = app.add_subcommand("census", "tab-separated classification of every lattice");
  with_file(census);
  census->add_option("--out", census_out, "output path")->required();
  census->callback([&] {
    request = Json{{"out", census_out}};
    action = [&](const Loaded& w) { return census_command(w, census_out, limits); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  request["limits"] = Json{{"group_cap", limits.group.max_order},
                           {"h2_cap", limits.cohomology.h2_max_order},
                           {"search_bound", limits.search.norm_bound}};
  Json report{{"tool", Json{{"name", tool_name}, {"version", tool_version}}},
              {"command", app.get_subcommands().front()->get_name()},
              {"request", request}};
  int status = ok;
  std::string text;
  try {
    text = read_file(file);
    report["input_sha256"] = sha256_hex(text);
    Loaded w;
    w.text = text;
    w.workspace = parse_workspace(text);
    w.built = build_workspace(w.workspace, limits.group);
    report["result"] = action(w);
    if (check_passed && !report["result"]["passed"].get<bool>()) {
      status = property_violation;
      report["error"] = error_json("property_violation", "lemma suite failed");
    }
  } catch (const InputError& e) {
    status = input_error;
    report["error"] = error_json("input_error", e.what());
  } catch (const CapExceeded& e) {
    status = cap_exceeded;
    report["error"] = error_json("cap_exceeded", e.what());
  } catch (const PropertyViolation& e) {
    status = property_violation;
    report["error"] = error_json("property_violation", e.what());
  } catch (const std::exception& e) {
    status = property_violation;
    report["error"] = error_json("internal", e.what());
  }
  if (!report.contains("input_sha256")) report["input_sha256"] = nullptr;
  if (!report.contains("result")) report["result"] = nullptr;
  report["exit_status"] = status;
  if (report.contains("error")) err << file << ": " << report["error"]["message"].get<std::string>() << "\n";
  out << canonical(report);
  return status;
}

}  // namespace gammalat::cli
