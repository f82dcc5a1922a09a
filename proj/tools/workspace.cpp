#include "workspace.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gammalat/errors.hpp"

namespace gammalat::cli {

namespace {

// Structural errors carry the JSON pointer of the offending node.
[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

std::string child(const std::string& where, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return where + "/" + escaped;
}
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& field(const Json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing key \"" + key + "\"");
  return *it;
}

void only_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(child(where, it.key()), "unexpected key");
}

std::size_t as_size(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

const std::string& as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get_ref<const std::string&>();
}

const Json& as_array(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

// Integers are JSON numbers when they fit in 64 bits, decimal strings
// otherwise.
Integer as_integer(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    Integer out;
    if (s.empty() || out.set_str(s, 10) != 0) fail(where, "expected an integer");
    if (out.fits_slong_p()) fail(where, "integer within 64 bits must be written as a number");
    return out;
  }
  fail(where, "expected an integer");
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

IntVector as_row(const Json& v, const std::string& where) {
  IntVector out;
  for (std::size_t i = 0; i < as_array(v, where).size(); ++i) out.push_back(as_integer(v[i], child(where, i)));
  return out;
}

IntMatrix as_matrix(const Json& v, const std::string& where) {
  as_array(v, where);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(as_row(v[i], child(where, i)));
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].size() != n) fail(child(where, i), "matrix is not square");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

Json row_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(row_json(m.row(i)));
  return out;
}

std::pair<std::string, std::string> name_pair(const Json& v, const std::string& where) {
  as_array(v, where);
  if (v.size() != 2) fail(where, "expected two lattice names");
  return {as_string(v[0], child(where, 0)), as_string(v[1], child(where, 1))};
}

Spec parse_spec(const Json& v, const std::string& where) {
  if (v.is_string()) {
    if (v.get_ref<const std::string&>() == "regular") return spec::Regular{};
    fail(where, "unknown lattice spec \"" + v.get<std::string>() + "\"");
  }
  if (!v.is_object()) fail(where, "expected a lattice spec");
  if (v.contains("matrices")) {
    only_keys(v, where, {"matrices", "rank"});
    const std::string at = child(where, "matrices");
    spec::Matrices m;
    for (std::size_t i = 0; i < as_array(v["matrices"], at).size(); ++i)
      m.generator_matrices.push_back(as_matrix(v["matrices"][i], child(at, i)));
    if (v.contains("rank")) {
      if (!m.generator_matrices.empty()) fail(child(where, "rank"), "rank is only given when there are no generators");
      m.rank = as_size(v["rank"], child(where, "rank"));
    } else if (m.generator_matrices.empty()) {
      fail(where, "a group without generators needs an explicit \"rank\"");
    } else {
      m.rank = m.generator_matrices.front().rows();
    }
    return m;
  }
  if (v.size() != 1) fail(where, "a lattice spec has exactly one key");
  const std::string key = v.begin().key();
  const Json& arg = v.begin().value();
  const std::string at = child(where, key);
  if (key == "trivial") return spec::Trivial{as_size(arg, at)};
  if (key == "cosets") {
    spec::Cosets c;
    for (std::size_t i = 0; i < as_array(arg, at).size(); ++i) {
      try {
        c.generators.push_back(parse_word(as_string(arg[i], child(at, i))));
      } catch (const InputError& e) {
        fail(child(at, i), e.what());
      }
    }
    return c;
  }
  if (key == "dual") return spec::Dual{as_string(arg, at)};
  if (key == "sum") {
    auto [a, b] = name_pair(arg, at);
    return spec::Sum{a, b};
  }
  if (key == "hom") {
    auto [a, b] = name_pair(arg, at);
    return spec::Hom{a, b};
  }
  if (key == "quotient") {
    as_array(arg, at);
    if (arg.size() != 2) fail(at, "expected [NAME, rows]");
    spec::Quotient q;
    q.of = as_string(arg[0], child(at, 0));
    const std::string rows_at = child(at, 1);
    for (std::size_t i = 0; i < as_array(arg[1], rows_at).size(); ++i) q.rows.push_back(as_row(arg[1][i], child(rows_at, i)));
    return q;
  }
  fail(where, "unknown lattice spec \"" + key + "\"");
}

Json spec_json(const Spec& s) {
  return std::visit(
      [](const auto& sp) -> Json {
        using S = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<S, spec::Trivial>) {
          return {{"trivial", sp.rank}};
        } else if constexpr (std::is_same_v<S, spec::Regular>) {
          return "regular";
        } else if constexpr (std::is_same_v<S, spec::Cosets>) {
          Json words = Json::array();
          for (const auto& w : sp.generators) words.push_back(to_string(w));
          return {{"cosets", words}};
        } else if constexpr (std::is_same_v<S, spec::Matrices>) {
          Json mats = Json::array();
          for (const auto& m : sp.generator_matrices) mats.push_back(matrix_json(m));
          Json out = {{"matrices", mats}};
          if (sp.generator_matrices.empty()) out["rank"] = sp.rank;
          return out;
        } else if constexpr (std::is_same_v<S, spec::Dual>) {
          return {{"dual", sp.of}};
        } else if constexpr (std::is_same_v<S, spec::Sum>) {
          return {{"sum", {sp.first, sp.second}}};
        } else if constexpr (std::is_same_v<S, spec::Hom>) {
          return {{"hom", {sp.source, sp.target}}};
        } else {
          Json rows = Json::array();
          for (const auto& r : sp.rows) rows.push_back(row_json(r));
          return {{"quotient", {sp.of, rows}}};
        }
      },
      s);
}

// Names a spec refers to.
std::vector<std::string> references(const Spec& s) {
  if (auto d = std::get_if<spec::Dual>(&s)) return {d->of};
  if (auto a = std::get_if<spec::Sum>(&s)) return {a->first, a->second};
  if (auto h = std::get_if<spec::Hom>(&s)) return {h->source, h->target};
  if (auto q = std::get_if<spec::Quotient>(&s)) return {q->of};
  return {};
}

}  // namespace

std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += "g" + std::to_string(w[i].first);
    if (w[i].second != 1) out += "^" + std::to_string(w[i].second);
  }
  return out;
}

Word parse_word(const std::string& text) {
  if (text == "e") return {};
  Word out;
  std::size_t i = 0;
  auto number = [&](bool allow_sign) {
    std::size_t start = i;
    if (allow_sign && i < text.size() && text[i] == '-') ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) throw InputError("malformed word \"" + text + "\" at offset " + std::to_string(start));
    return std::stol(text.substr(start, i - start));
  };
  while (true) {
    if (i >= text.size() || text[i] != 'g') throw InputError("malformed word \"" + text + "\" at offset " + std::to_string(i));
    ++i;
    long gen = number(false);
    long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      exp = number(true);
    }
    out.emplace_back(static_cast<std::size_t>(gen), exp);
    if (i == text.size()) break;
    if (text[i] != '*') throw InputError("malformed word \"" + text + "\" at offset " + std::to_string(i));
    ++i;
  }
  return out;
}

int evaluate(const Word& w, const FiniteGroup& g) {
  int x = g.identity();
  for (const auto& [gen, exp] : w) {
    if (gen >= g.generator_indices().size())
      throw InputError("word uses g" + std::to_string(gen) + " but the group has " +
                       std::to_string(g.generator_indices().size()) + " generators");
    int s = g.generator_indices()[gen];
    if (exp < 0) s = g.inverse(s);
    for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) x = g.multiply(x, s);
  }
  return x;
}

Word word_of(int x, const FiniteGroup& g) {
  Word rev;
  for (int y = x; g.tree_parent(y) >= 0; y = g.tree_parent(y)) rev.emplace_back(static_cast<std::size_t>(g.tree_generator(y)), 1);
  Word out;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
    if (!out.empty() && out.back().first == it->first) ++out.back().second;
    else out.push_back(*it);
  }
  return out;
}

Workspace parse_workspace(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offset → line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // what() reads "[json.exception...] parse error at line L, column C: detail".
    std::string msg = e.what();
    auto pos = msg.find(": ", msg.find("parse error"));
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": parse error: " +
                     (pos == std::string::npos ? msg : msg.substr(pos + 2)));
  }
  if (!doc.is_object()) fail("", "expected an object with \"group\" and \"lattices\"");
  only_keys(doc, "", {"group", "lattices"});
  Workspace w;
  const Json& group = field(doc, "", "group");
  if (!group.is_object()) fail("/group", "expected an object");
  only_keys(group, "/group", {"degree", "generators"});
  w.degree = as_size(field(group, "/group", "degree"), "/group/degree");
  const Json& gens = as_array(field(group, "/group", "generators"), "/group/generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = child("/group/generators", i);
    Permutation p;
    for (std::size_t j = 0; j < as_array(gens[i], at).size(); ++j) {
      const Json& x = gens[i][j];
      if (!x.is_number_integer()) fail(child(at, j), "expected a point index");
      p.push_back(x.get<int>());
    }
    if (p.size() != w.degree) fail(at, "expected " + std::to_string(w.degree) + " images");
    std::vector<char> hit(w.degree, 0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] < 0 || static_cast<std::size_t>(p[j]) >= w.degree || hit[static_cast<std::size_t>(p[j])])
        fail(child(at, j), "not a permutation of 0.." + std::to_string(w.degree ? w.degree - 1 : 0));
      hit[static_cast<std::size_t>(p[j])] = 1;
    }
    w.generators.push_back(std::move(p));
  }
  const Json& lats = field(doc, "", "lattices");
  if (!lats.is_object()) fail("/lattices", "expected an object");
  for (auto it = lats.begin(); it != lats.end(); ++it) {
    if (it.key().empty()) fail("/lattices", "empty lattice name");
    w.lattices.emplace(it.key(), parse_spec(it.value(), child("/lattices", it.key())));
  }
  return w;
}

Json to_json(const Workspace& w) {
  Json gens = Json::array();
  for (const auto& p : w.generators) gens.push_back(p);
  Json lats = Json::object();
  for (const auto& [name, s] : w.lattices) lats[name] = spec_json(s);
  return {{"group", {{"degree", w.degree}, {"generators", gens}}}, {"lattices", lats}};
}

Subgroup parse_subgroup(const std::string& text, const GroupPtr& g) {
  std::vector<int> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) seeds.push_back(evaluate(parse_word(item), *g));
  if (seeds.empty()) throw InputError("empty subgroup spec");
  return g->make_subgroup(g->closure(seeds));
}

BuiltWorkspace build_workspace(const Workspace& w, const GroupLimits& limits) {
  BuiltWorkspace out;
  try {
    out.group = group_from_generators(w.degree, w.generators, limits);
  } catch (const InputError& e) {
    fail("/group", e.what());
  }
  const GroupPtr& g = out.group;
  std::map<std::string, int> state;  // 1 = in progress, 2 = done
  std::function<void(const std::string&, const std::string&)> build = [&](const std::string& name,
                                                                          const std::string& from) {
    auto it = w.lattices.find(name);
    if (it == w.lattices.end()) fail(from, "unknown lattice \"" + name + "\"");
    const std::string where = child("/lattices", name);
    if (state[name] == 2) return;
    if (state[name] == 1) fail(where, "reference cycle through \"" + name + "\"");
    state[name] = 1;
    for (const auto& ref : references(it->second)) build(ref, where);
    const auto get = [&](const std::string& n) { return out.lattices.at(n); };
    try {
      LatticePtr l = std::visit(
          [&](const auto& sp) -> LatticePtr {
            using S = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<S, spec::Trivial>) {
              return build_lattice(g, TrivialSpec{sp.rank}, name);
            } else if constexpr (std::is_same_v<S, spec::Regular>) {
              return build_lattice(g, RegularSpec{}, name);
            } else if constexpr (std::is_same_v<S, spec::Cosets>) {
              std::vector<int> seeds;
              for (const auto& word : sp.generators) seeds.push_back(evaluate(word, *g));
              return build_lattice(g, CosetsSpec{g->make_subgroup(g->closure(seeds))}, name);
            } else if constexpr (std::is_same_v<S, spec::Matrices>) {
              return build_lattice(g, MatricesSpec{sp.rank, sp.generator_matrices}, name);
            } else if constexpr (std::is_same_v<S, spec::Dual>) {
              return build_lattice(g, DualSpec{get(sp.of)}, name);
            } else if constexpr (std::is_same_v<S, spec::Sum>) {
              return build_lattice(g, SumSpec{get(sp.first), get(sp.second)}, name);
            } else if constexpr (std::is_same_v<S, spec::Hom>) {
              return build_lattice(g, HomSpec{get(sp.source), get(sp.target)}, name);
            } else {
              auto m = get(sp.of);
              IntMatrix basis(m->rank(), sp.rows.size());
              for (std::size_t j = 0; j < sp.rows.size(); ++j) {
                if (sp.rows[j].size() != m->rank())
                  throw InputError("row " + std::to_string(j) + " has " + std::to_string(sp.rows[j].size()) +
                                   " entries, expected " + std::to_string(m->rank()));
                basis.set_column(j, sp.rows[j]);
              }
              for (const auto& d : smith_invariants(basis))
                if (d != 0 && d != 1) throw InputError("rows do not span a saturated sublattice");
              auto q = quotient_lattice(sublattice(m, saturation_basis(basis)));
              return renamed_lattice(q.lattice, name);
            }
          },
          it->second);
      out.lattices[name] = l;
    } catch (const InputError& e) {
      fail(where, e.what());
    }
    state[name] = 2;
  };
  for (const auto& [name, s] : w.lattices) build(name, "/lattices");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gammalat::cli
