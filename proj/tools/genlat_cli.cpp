#include "CLI11.hpp"
#include "genlat/genlat.hpp"

#include <iostream>
#include <sstream>
#include <string>

using namespace genlat;

namespace {

struct InputOpts {
  std::string path;     // file path, or "-" / empty for stdin
  std::string builtin;  // builtin name, used when non-empty
  int n = 0;
  int k = 2;
  long long budget = 1000000;
  int jobs = 1;
};

void add_input_flags(CLI::App* cmd, InputOpts& in, bool positional = true) {
  if (positional) cmd->add_option("input", in.path, "lattice JSON file ('-' for stdin)");
  cmd->add_option("--builtin", in.builtin, "built-in family: boolean|chain|partition|uniform");
  cmd->add_option("--n", in.n, "size parameter for --builtin");
  cmd->add_option("--k", in.k, "rank parameter for --builtin uniform");
  cmd->add_option("--budget", in.budget, "maximum number of minors to materialize")
      ->default_val(1000000);
}

LoadedLattice load_input(const InputOpts& in) {
  if (!in.builtin.empty()) {
    Json j;
    j["kind"] = "builtin";
    j["name"] = in.builtin;
    j["n"] = in.n;
    if (in.builtin == "uniform") j["k"] = in.k;
    return load_lattice(j);
  }
  if (in.path.empty() || in.path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return load_lattice_text(ss.str());
  }
  return load_lattice_file(in.path);
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

int run_show(const InputOpts& in) {
  auto loaded = load_input(in);
  const GenLattice& L = loaded.lattice;
  std::cout << "elements: " << L.size() << "\n";
  std::cout << "generators: " << L.gen_count() << "\n";
  std::cout << "join-irreducibles: " << L.irreducibles().size() << "\n";
  std::cout << "minimally generated: " << yesno(L.minimally_generated()) << "\n";
  std::cout << "minors: " << minor_count(L).str() << "\n";
  std::cout << "no parallels: " << yesno(has_no_parallels(L).verdict) << "\n";
  std::cout << "lifts join-irreducibles: " << yesno(lifts_join_irreducibles(L).verdict) << "\n";
  std::cout << "geometric: " << yesno(is_geometric(L).verdict) << "\n";
  std::cout << "diagram equals Hasse: " << yesno(diagram_equals_hasse(L).verdict) << "\n";
  return 0;
}

int run_minors(const InputOpts& in, bool list) {
  auto loaded = load_input(in);
  const GenLattice& L = loaded.lattice;
  std::cout << "count: " << minor_count(L).str() << "\n";
  if (list) {
    for (const Minor& m : enumerate_minors(L, BigInt(in.budget))) std::cout << m.str() << "\n";
  }
  return 0;
}

int run_poset(const InputOpts& in) {
  auto loaded = load_input(in);
  MinorPoset mp = MinorPoset::build(loaded.lattice, BigInt(in.budget));
  std::cout << poset_to_json(mp.to_finite_poset(in.jobs)).dump(2) << "\n";
  return 0;
}

int run_rankgen(const InputOpts& in, const std::string& method) {
  auto loaded = load_input(in);
  const GenLattice& L = loaded.lattice;
  auto one = [&](const char* name, RankGenMethod m) {
    std::string line;
    try {
      line = rank_gen(L, m).str();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MethodInapplicable) throw;
      line = "inapplicable (" + e.detail() + ")";
    }
    std::cout << name << ": " << line << "\n";
  };
  if (method == "direct" || method == "all") one("direct", RankGenMethod::Direct);
  if (method == "geometric" || method == "all") one("geometric", RankGenMethod::Geometric);
  if (method == "no-parallels" || method == "all") one("no-parallels", RankGenMethod::NoParallels);
  return 0;
}

int run_cdindex(const InputOpts& in) {
  auto loaded = load_input(in);
  MinorPoset mp = MinorPoset::build(loaded.lattice, BigInt(in.budget));
  std::cout << cd_index(mp.to_finite_poset(in.jobs)).str() << "\n";
  return 0;
}

int run_check(const InputOpts& in, const std::string& property) {
  auto loaded = load_input(in);
  const GenLattice& L = loaded.lattice;
  bool all_hold = true;
  auto one = [&](const char* name, const PropertyReport& r) {
    std::cout << name << ": " << (r.verdict ? "true" : "false");
    if (!r.verdict && !r.witness.empty()) std::cout << " (" << r.witness << ")";
    std::cout << "\n";
    all_hold = all_hold && r.verdict;
  };
  if (property == "no-parallels" || property == "all") one("no-parallels", has_no_parallels(L));
  if (property == "jilp" || property == "all") one("jilp", lifts_join_irreducibles(L));
  if (property == "geometric" || property == "all") one("geometric", is_geometric(L));
  if (property == "lattice" || property == "all")
    one("lattice", minor_poset_is_lattice(L, BigInt(in.budget)));
  return all_hold ? 0 : 1;
}

int run_zip_trace(const InputOpts& in, const std::string& map_path) {
  std::unique_ptr<GenLattice> src, dst;
  std::unique_ptr<StrongMap> f;
  if (!map_path.empty()) {
    std::ifstream mf(map_path);
    if (!mf) fail(ErrorCode::ParseError, "cannot open " + map_path);
    Json j = Json::parse(mf, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::ParseError, "map file is not valid JSON");
    if (!j.contains("source") || !j.contains("target") || !j.contains("values"))
      fail(ErrorCode::ParseError, "map file needs \"source\", \"target\", and \"values\"");
    src = std::make_unique<GenLattice>(load_lattice(j["source"]).lattice);
    dst = std::make_unique<GenLattice>(load_lattice(j["target"]).lattice);
    std::vector<ElementId> values;
    for (const auto& v : j["values"]) {
      if (!v.is_number_unsigned()) fail(ErrorCode::ParseError, "\"values\" must be element ids");
      values.push_back(v.get<ElementId>());
    }
    f = std::make_unique<StrongMap>(StrongMap::make(*src, *dst, values));
  } else {
    auto loaded = load_input(in);
    dst = std::make_unique<GenLattice>(std::move(loaded.lattice));
    src = std::make_unique<GenLattice>(GenLattice::boolean_lattice(dst->gen_count()));
    f = std::make_unique<StrongMap>(canonical_strong_map(*src, *dst));
  }
  ZipTrace tr = zipping_sequence(*f, BigInt(in.budget));
  Json out;
  out["stages"] = tr.factorization.maps.size();
  out["start"] = {{"size", tr.start.size()}, {"psi", tr.psi_start.str()}};
  Json steps = Json::array();
  for (const auto& st : tr.steps) {
    Json s;
    s["stage"] = st.stage;
    s["zipper"] = {{"x", st.x_label}, {"y", st.y_label}, {"z", st.z_label}};
    s["size"] = st.after.size();
    s["psi"] = st.psi_after.str();
    steps.push_back(s);
  }
  out["steps"] = steps;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_product(const InputOpts& in, const std::string& second, const std::string& kind) {
  auto loaded = load_input(in);
  const GenLattice& L = loaded.lattice;
  BigInt budget(in.budget);
  if (kind == "cartesian") {
    if (second.empty()) fail(ErrorCode::ParseError, "cartesian needs a second lattice file");
    InputOpts in2;
    in2.path = second;
    auto loaded2 = load_input(in2);
    GenLattice P = GenLattice::cartesian_product(L, loaded2.lattice);
    auto MP = MinorPoset::build(P, budget).to_finite_poset(in.jobs);
    auto D = poset_diamond(MinorPoset::build(L, budget).to_finite_poset(in.jobs),
                           MinorPoset::build(loaded2.lattice, budget).to_finite_poset(in.jobs));
    if (!poset_isomorphic(MP, D))
      fail(ErrorCode::Internal, "product minor poset differs from the diamond product");
    std::cout << "product elements: " << P.size() << "\nminor poset size: " << MP.size()
              << "\ndiamond product verified\n";
    return 0;
  }
  if (kind == "adjoin-max") {
    GenLattice A = GenLattice::adjoin_max(L);
    auto MA = MinorPoset::build(A, budget).to_finite_poset(in.jobs);
    auto PM = poset_pyr(MinorPoset::build(L, budget).to_finite_poset(in.jobs));
    if (!poset_isomorphic(MA, PM))
      fail(ErrorCode::Internal, "adjoined-maximum minor poset differs from the pyramid");
    std::cout << "extended elements: " << A.size() << "\nminor poset size: " << MA.size()
              << "\npyramid verified\n";
    return 0;
  }
  if (kind == "pyr") {
    GenLattice P = GenLattice::pyr(L);
    auto MP = MinorPoset::build(P, budget).to_finite_poset(in.jobs);
    auto PR = poset_prism(MinorPoset::build(L, budget).to_finite_poset(in.jobs));
    if (!poset_isomorphic(MP, PR))
      fail(ErrorCode::Internal, "pyramid minor poset differs from the prism");
    std::cout << "pyramid elements: " << P.size() << "\nminor poset size: " << MP.size()
              << "\nprism verified\n";
    return 0;
  }
  fail(ErrorCode::ParseError, "unknown product kind \"" + kind + "\"");
}

int run_dot(const InputOpts& in, const std::string& mode, bool poset) {
  auto loaded = load_input(in);
  if (poset) {
    MinorPoset mp = MinorPoset::build(loaded.lattice, BigInt(in.budget));
    std::cout << emit_poset_dot(mp.to_finite_poset(in.jobs));
  } else {
    std::cout << emit_dot(loaded.lattice, mode, loaded.gen_names);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generator-enriched lattices: minor posets, rank generating functions, cd-indices"};
  app.require_subcommand(1);

  InputOpts in;
  bool list_minors = false;
  std::string method = "all";
  std::string property = "all";
  std::string map_path;
  std::string second;
  std::string kind = "cartesian";
  std::string dot_mode = "diagram";
  bool dot_poset = false;

  auto* show = app.add_subcommand("show", "summarize a lattice and its flags");
  add_input_flags(show, in);

  auto* minors = app.add_subcommand("minors", "count (and optionally list) all minors");
  add_input_flags(minors, in);
  minors->add_flag("--list", list_minors, "list every minor");

  auto* poset = app.add_subcommand("poset", "serialize the minor poset as JSON");
  add_input_flags(poset, in);
  poset->add_option("--jobs", in.jobs, "worker threads for cover generation")->default_val(1);

  auto* rankgen = app.add_subcommand("rankgen", "rank generating function of the minor poset");
  add_input_flags(rankgen, in);
  rankgen->add_option("--method", method, "direct|geometric|no-parallels|all")
      ->check(CLI::IsMember({"direct", "geometric", "no-parallels", "all"}))
      ->default_val("all");

  auto* cdindex = app.add_subcommand("cdindex", "cd-index of the minor poset");
  add_input_flags(cdindex, in);
  cdindex->add_option("--jobs", in.jobs, "worker threads for cover generation")->default_val(1);

  auto* check = app.add_subcommand("check", "verify structural properties");
  add_input_flags(check, in);
  check->add_option("--property", property, "all|no-parallels|jilp|geometric|lattice")
      ->check(CLI::IsMember({"all", "no-parallels", "jilp", "geometric", "lattice"}))
      ->default_val("all");

  auto* zip = app.add_subcommand("zip-trace",
                                 "zipping sequence realizing the minor poset from a cube");
  add_input_flags(zip, in);
  zip->add_option("--map", map_path, "JSON strong-map file {source, target, values}");

  auto* product = app.add_subcommand("product", "build products and verify their minor posets");
  add_input_flags(product, in);
  product->add_option("--with", second, "second lattice file (cartesian)");
  product->add_option("--kind", kind, "cartesian|adjoin-max|pyr")
      ->check(CLI::IsMember({"cartesian", "adjoin-max", "pyr"}))
      ->default_val("cartesian");

  auto* dot = app.add_subcommand("dot", "emit Graphviz DOT");
  add_input_flags(dot, in);
  dot->add_option("--mode", dot_mode, "diagram|hasse")
      ->check(CLI::IsMember({"diagram", "hasse"}))
      ->default_val("diagram");
  dot->add_flag("--poset", dot_poset, "emit the minor poset instead of the lattice");

  CLI11_PARSE(app, argc, argv);

  try {
    if (show->parsed()) return run_show(in);
    if (minors->parsed()) return run_minors(in, list_minors);
    if (poset->parsed()) return run_poset(in);
    if (rankgen->parsed()) return run_rankgen(in, method);
    if (cdindex->parsed()) return run_cdindex(in);
    if (check->parsed()) return run_check(in, property);
    if (zip->parsed()) return run_zip_trace(in, map_path);
    if (product->parsed()) return run_product(in, second, kind);
    if (dot->parsed()) return run_dot(in, dot_mode, dot_poset);
  } catch (const Error& e) {
    Json err;
    err["error"] = error_name(e.code());
    err["detail"] = e.detail();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Internal";
    err["detail"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 2;
}
