#include "nilmod/cli.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nilmod/diffop.hpp"
#include "nilmod/embed.hpp"
#include "nilmod/error.hpp"
#include "nilmod/json_io.hpp"
#include "nilmod/modcore.hpp"

namespace nilmod::cli {

namespace {

struct Options {
  std::string input = "-";
  std::string second_input;
  std::string descriptor;
  std::size_t n = 0;
  std::size_t gen_n = 1;
  std::size_t trunc = 0;
  std::uint64_t seed = 0;
  std::uint32_t degree_bound = 2;
  std::size_t max_dim = kBruteForceMaxDim;
  bool oracle = false;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  Json read(const std::string& path) {
    try {
      if (path == "-") return Json::parse(in_);
      std::ifstream f(path);
      if (!f) throw ParseError("cannot open '" + path + "'");
      return Json::parse(f);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
  }

  void emit(const Json& j) { out_ << j.dump(2) << '\n'; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

void cmd_validate(Runner& io, const Options& o) {
  const FDModule v = module_from_json(io.read(o.input));
  const bool nil = is_nilpotent(v);
  Json socle_dim = nullptr;
  if (nil) {
    socle_dim = socle(v).dim();
  } else if (v.dim() > 0) {
    try {
      socle_dim = socle(twist(v, socle_eigenvalues(v))).dim();
    } catch (const Error&) {
      // Several or irrational eigenvalues: no single twist makes it nilpotent.
    }
  }
  io.emit(Json{{"valid", true}, {"nilpotent", nil}, {"socle_dim", socle_dim}});
}

void cmd_socle(Runner& io, const Options& o) { io.emit(to_json(socle(module_from_json(io.read(o.input))))); }

void cmd_embed(Runner& io, const Options& o) { io.emit(to_json(embed_nilpotent(module_from_json(io.read(o.input))))); }

void cmd_canonical(Runner& io, const Options& o) {
  io.emit(to_json(canonical_form(module_from_json(io.read(o.input)))));
}

void cmd_isomorphic(Runner& io, const Options& o) {
  const FDModule a = module_from_json(io.read(o.input));
  const FDModule b = module_from_json(io.read(o.second_input));
  const bool iso = o.oracle ? brute_force_isomorphic(a, b, o.max_dim) : is_isomorphic(a, b);
  io.emit(Json{{"isomorphic", iso}});
}

void cmd_embed_general(Runner& io, const Options& o) {
  io.emit(to_json(embed_general(module_from_json(io.read(o.input)))));
}

void cmd_extract_endo(Runner& io, const Options& o) {
  const Json j = io.read(o.input);
  const std::size_t n = o.n ? o.n : count_from_json(j, "n");
  const std::size_t trunc = o.trunc ? o.trunc : count_from_json(j, "trunc");
  const MonomialTable table = monomial_table_from_json(j, n);
  io.emit(to_json(extract_coeffs(table, n, static_cast<std::uint32_t>(trunc))));
}

void cmd_aut(Runner& io, const Options& o) {
  const Json j = io.read(o.input);
  if (j.is_object() && j.contains("basis")) {
    const PolySubmodule m = poly_submodule_from_json(j);
    const EndomorphismReport r = analyze_endomorphisms(m);
    io.emit(Json{{"dim", m.dim()},
                 {"closure_size", r.closure_size},
                 {"endomorphism_dim", r.endomorphism_dim},
                 {"restriction_rank", r.restriction_rank},
                 {"restriction_kernel_dim", r.kernel_dim},
                 {"restrictions_exhaust", r.restrictions_exhaust}});
    return;
  }
  const AutStructure aut = aut_structure(monomial_submodule_from_json(j));
  if (!o.descriptor.empty()) {
    const AutDescriptor d = descriptor_from_json(io.read(o.descriptor), aut.module().n());
    io.emit(Json{{"descriptor", to_json(d)}, {"matrix", to_json(aut.parametrize(d))}});
    return;
  }
  Json additive = Json::array();
  for (const auto& a : aut.module().indices())
    if (!a.is_zero()) additive.push_back(to_json(a));
  io.emit(Json{{"module", to_json(aut.module())},
               {"m", aut.module().m()},
               {"unit_factors", 1},
               {"additive_dim", aut.additive_dim()},
               {"additive_coordinates", std::move(additive)}});
}

void cmd_extend_iso(Runner& io, const Options& o) {
  const Json j = io.read(o.input);
  const std::size_t n = count_from_json(j, "n");
  std::vector<Poly> domain, images;
  for (const auto& p : j.at("domain")) domain.push_back(poly_from_json(p, n));
  for (const auto& p : j.at("images")) images.push_back(poly_from_json(p, n));
  if (domain.size() != images.size()) throw ParseError("'domain' and 'images' differ in length");
  const PolySubmodule source = PolySubmodule::from_spanning_set(n, domain);
  if (source.dim() != domain.size()) throw Error(ErrorKind::IncompatibleMap, "domain polynomials are linearly dependent");
  const PolySubmodule target = PolySubmodule::from_spanning_set(n, images);
  ModuleMap phi{n, {}};
  const ModuleMap given{n, images};
  for (const auto& b : source.basis()) phi.images.push_back(given.apply(*express_in(domain, b)));

  std::set<MultiIndex> box_idx;
  if (j.contains("target")) {
    for (const auto& a : j.at("target")) box_idx.insert(multi_index_from_json(a, n));
  } else {
    box_idx = lower_set_closure({source.support().begin(), source.support().end()});
  }
  const MonomialSubmodule box(n, box_idx);
  for (const auto& a : source.support())
    if (!box.contains(a)) throw Error(ErrorKind::NothingToExtend, "source is not contained in the span of the target");

  check_isomorphism(source, target, phi);
  IsoExtension cur{source, target, phi};
  Json steps = Json::array();
  while (cur.source.dim() < box.m()) {
    ExtensionStep s = extend_iso_step(cur.source, cur.target, cur.map, &box);
    steps.push_back(Json{{"adjoined", to_json(s.adjoined)}, {"image", to_json(s.adjoined_image)}});
    cur = std::move(static_cast<IsoExtension&>(s));
  }
  Json map = Json::array();
  for (const auto& p : cur.map.images) map.push_back(to_json(p));
  io.emit(Json{{"source", to_json(cur.source)}, {"target", to_json(cur.target)}, {"map", std::move(map)},
               {"steps", std::move(steps)}});
}

void cmd_gen(Runner& io, const Options& o) {
  io.emit(to_json(random_nilpotent_module(o.gen_n, o.degree_bound, o.seed)));
}

Json error_json(std::string_view kind, const std::string& detail) {
  return Json{{"error", Json{{"kind", kind}, {"detail", detail}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modules over polynomial rings as commuting matrices: embeddings into T_n, "
               "canonical forms and differential-operator automorphisms.",
               "nilmod"};
  app.require_subcommand(1);
  Options o;
  using Handler = void (*)(Runner&, const Options&);
  std::vector<std::pair<CLI::App*, Handler>> handlers;

  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    handlers.emplace_back(sub, h);
    return sub;
  };
  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "JSON input file, '-' for stdin"); };

  input(add("validate", "check commutativity, nilpotency and socle dimension", cmd_validate));
  input(add("socle", "socle of a nilpotent module", cmd_socle));
  input(add("embed", "embed a nilpotent module with one-dimensional socle into T_n", cmd_embed));
  input(add("canonical", "canonical submodule of T_n", cmd_canonical));
  {
    CLI::App* sub = add("isomorphic", "decide isomorphism of two modules", cmd_isomorphic);
    sub->add_option("first", o.input, "first module")->required();
    sub->add_option("second", o.second_input, "second module")->required();
    sub->add_flag("--oracle", o.oracle, "use the brute-force intertwiner search");
    sub->add_option("--max-dim", o.max_dim, "dimension limit for --oracle");
  }
  input(add("embed-general", "embed a module with one-dimensional socle into D_a", cmd_embed_general));
  {
    CLI::App* sub = add("extract-endo", "differential-operator coefficients of an endomorphism table", cmd_extract_endo);
    input(sub);
    sub->add_option("--n", o.n, "variable count (overrides the input)");
    sub->add_option("--trunc", o.trunc, "truncation degree (overrides the input)");
  }
  {
    CLI::App* sub = add("aut", "automorphism group structure of a monomial submodule", cmd_aut);
    input(sub);
    sub->add_option("--descriptor", o.descriptor, "descriptor JSON to turn into a matrix");
  }
  input(add("extend-iso", "extend an isomorphism between submodules of T_n", cmd_extend_iso));
  {
    CLI::App* sub = add("gen", "random nilpotent module with one-dimensional socle", cmd_gen);
    sub->add_option("--n", o.gen_n, "variable count")->default_val(1);
    sub->add_option("--degree-bound", o.degree_bound, "degree bound of the generating polynomial")->default_val(2);
    sub->add_option("--seed", o.seed, "random seed")->default_val(0);
  }

  std::vector<std::string> argv_store{"nilmod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    out << error_json("Usage", e.what()).dump(2) << '\n';
    return kExitUsageError;
  }

  Runner io(in, out);
  try {
    for (const auto& [sub, handler] : handlers)
      if (sub->parsed()) handler(io, o);
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    out << error_json("Parse", e.what()).dump(2) << '\n';
    return kExitUsageError;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << '\n';
    out << error_json("Parse", e.what()).dump(2) << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << e.what() << '\n';
    out << error_json(to_string(e.kind()), e.detail()).dump(2) << '\n';
    return kExitDomainError;
  }
}

}  // namespace nilmod::cli
