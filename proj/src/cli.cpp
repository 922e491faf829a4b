#include "latticelab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>

#include "latticelab/constructions.hpp"
#include "latticelab/dimension.hpp"
#include "latticelab/embeddings.hpp"
#include "latticelab/error.hpp"
#include "latticelab/ideals.hpp"
#include "latticelab/io.hpp"
#include "latticelab/order_type.hpp"
#include "latticelab/parallel.hpp"
#include "latticelab/probes.hpp"

namespace latticelab {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

struct Options {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::size_t threads = 1;
  std::string output;

  // gen
  std::string generator;
  std::size_t n = 4, k = 3, stage = 4;
  std::string alpha = "w";
  std::string phi = "identity";
  bool dot = false;

  // files
  std::string file, file2;
  std::string kind = "all";
  std::string labels = "bits";
  std::string mode = "order";
  std::size_t bound = 0;  // 0: config tuple bound
  std::string chain_file;

  // probe
  std::string family, probe;
  std::size_t budget = 0;  // 0: the probe default
  std::string target;

  // dim
  std::size_t kmax = 4;
  std::optional<std::size_t> exact_k;
};

void check_size(const Poset& p, const Config& c) {
  if (p.size() > c.max_elements)
    throw SizeLimit("poset with " + std::to_string(p.size()) + " elements", c.max_elements);
}

Poset load(const std::string& path, const Config& c) {
  Poset p = read_poset(path);
  check_size(p, c);
  return p;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InvalidOrder("cannot write " + o.output);
  f << text;
}

Poset generate(const Options& o, const Config& c) {
  const std::string& g = o.generator;
  if (g == "omega-star-fig") return figure1(o.n);
  if (g == "eta-fig") return figure2(o.n);
  if (g == "powerset") return powerset_semilattice(o.k, c.max_elements);
  if (g == "chain") return chain(o.n);
  if (g == "antichain") return antichain(o.n);
  const OrderType a = parse_order_type(o.alpha);
  if (g == "sierp") {
    SierpinskisationSpec spec;
    spec.alpha = a;
    spec.stage = o.stage;
    spec.strategy = parse_phi(o.phi);
    spec.seed = c.seed;
    return sierpinskisation(spec);
  }
  if (g == "mono-sierp") return monotonic_sierp(a, o.stage);
  if (g == "lattice-sierp") return lattice_sierp(a, o.stage);
  if (g == "S-alpha") return build_S_alpha(a, o.stage);
  if (g == "P-alpha") return build_P_alpha(a, o.stage);
  if (g == "Q-alpha") return build_Q_alpha(a, o.stage, c.max_downsets).order(DownsetLabels::Members);
  throw InvalidOrder("unknown generator '" + g + "'");
}

int cmd_gen(const Options& o, const Config& c, std::ostream& out) {
  const Poset p = generate(o, c);
  check_size(p, c);
  if (o.dot && o.output.empty()) {
    out << to_dot(p);
    return kOk;
  }
  emit(render(p, c.format), o, out);
  if (o.dot) {
    std::filesystem::path dot_path(o.output);
    dot_path.replace_extension(".dot");
    std::ofstream f(dot_path, std::ios::binary);
    if (!f) throw InvalidOrder("cannot write " + dot_path.string());
    f << to_dot(p);
  }
  return kOk;
}

DownsetKind parse_kind(const std::string& s) {
  if (s == "all") return DownsetKind::All;
  if (s == "ideals") return DownsetKind::Ideals;
  if (s == "fingen") return DownsetKind::FinGen;
  throw InvalidOrder("unknown downset kind '" + s + "'");
}

int cmd_ideals(const Options& o, const Config& c, std::ostream& out) {
  const Poset p = load(o.file, c);
  DownsetLattice l;
  switch (parse_kind(o.kind)) {
    case DownsetKind::All: l = all_downsets(p, c.max_downsets); break;
    case DownsetKind::Ideals: l = ideals_of(p, c.max_downsets); break;
    case DownsetKind::FinGen: l = fin_gen_downsets(p, c.max_downsets); break;
  }
  if (o.labels != "bits" && o.labels != "members") throw InvalidOrder("labels must be bits or members");
  const Poset lattice = l.order(o.labels == "bits" ? DownsetLabels::Bits : DownsetLabels::Members);
  emit(render(lattice, c.format), o, out);
  return kOk;
}

int cmd_embed(const Options& o, const Config& c, std::ostream& out) {
  const Poset q = load(o.file, c);
  const Poset p = load(o.file2, c);
  const EmbedMode mode = parse_mode(o.mode);
  if (auto w = find_embedding(q, p, mode)) {
    emit(dump(witness_to_json(*w)), o, out);
    return kOk;
  }
  Json j;
  j["mode"] = to_string(mode);
  j["map"] = nullptr;
  j["verified"] = false;
  emit(dump(j), o, out);
  return kNegative;
}

int cmd_pipeline(const Options& o, const Config& c, std::ostream& out) {
  const Poset r = load(o.file, c);
  const JoinSemilattice p = JoinSemilattice::from(load(o.file2, c));
  const auto ctx = RepresentationContext::make(r, p);
  const std::size_t bound = o.bound ? o.bound : c.tuple_bound;
  auto rt = round_trip(ctx, bound);
  Json j;
  j["tuple_bound"] = bound;
  j["downsets"] = ctx.downsets_r.size();
  j["ideals"] = ctx.ideals_p.size();
  if (!rt) {
    j["round_trip"] = nullptr;
    emit(dump(j), o, out);
    return kNegative;
  }
  j["round_trip"] = round_trip_to_json(*rt);
  emit(dump(j), o, out);
  return kOk;
}

std::vector<Bitset> read_chain(const std::string& path, std::size_t n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidOrder("cannot read " + path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("chain file: ") + e.what(), 1, 1);
  }
  if (!j.is_array()) throw ParseError("chain file must hold an array of element lists", 1, 1);
  std::vector<Bitset> chain;
  for (const auto& member : j) {
    if (!member.is_array()) throw ParseError("each chain member must be an array of element indices", 1, 1);
    Bitset b(n);
    for (const auto& x : member) {
      if (!x.is_number_unsigned() || x.get<std::size_t>() >= n)
        throw ParseError("chain member index out of range", 1, 1);
      b.set(x.get<std::size_t>());
    }
    chain.push_back(std::move(b));
  }
  return chain;
}

int cmd_extract(const Options& o, const Config& c, std::ostream& out) {
  const JoinSemilattice p = JoinSemilattice::from(load(o.file, c));
  std::vector<Bitset> chain;
  if (!o.chain_file.empty()) {
    chain = read_chain(o.chain_file, p.size());
  } else {
    // first maximal chain of ideals
    const DownsetLattice ideals = ideals_of(p.order, c.max_downsets);
    const MaximalChains mc = maximal_chains(ideals, 1);
    for (std::size_t i : mc.chains.front()) chain.push_back(ideals.downsets[i]);
  }
  emit(dump(extraction_to_json(extract_sierp(p, chain))), o, out);
  return kOk;
}

TruncationFamily family_by_name(const Options& o, const Config& c) {
  const std::string& f = o.family;
  if (f == "powerset") return powerset_family(std::max<std::size_t>(c.max_elements, 1));
  if (f == "figure1") return figure1_family();
  if (f == "figure2") return figure2_family();
  const OrderType a = parse_order_type(o.alpha);
  if (f == "chain") return chain_family(a);
  if (f == "sierp") return sierp_family(a, parse_phi(o.phi), c.seed);
  if (f == "mono-sierp") return mono_sierp_family(a);
  if (f == "lattice-sierp") return lattice_sierp_family(a);
  if (f == "P-alpha") return p_alpha_family(a);
  if (f == "Q-alpha") return q_alpha_family(a);
  if (f == "fingen-sierp") return fingen_family(sierp_family(a, parse_phi(o.phi), c.seed));
  if (f == "fingen-mono-sierp") return fingen_family(mono_sierp_family(a));
  throw InvalidOrder("unknown family '" + f + "'");
}

int cmd_probe(const Options& o, const Config& c, std::ostream& out) {
  if (o.probe == "width") {
    const std::size_t budget = o.budget ? o.budget : 8;
    emit(dump(width_to_json(width_growth(family_by_name(o, c), budget), budget, c.seed)), o, out);
    return kOk;
  }
  if (o.probe == "dichotomy") {
    const std::size_t budget = o.budget ? o.budget : 8;
    emit(dump(dichotomy_to_json(dichotomy_probe(family_by_name(o, c), budget), budget, c.seed)), o, out);
    return kOk;
  }
  if (o.probe == "scan") {
    if (o.target.empty()) throw InvalidOrder("scan needs --target");
    const JoinSemilattice p = JoinSemilattice::from(load(o.target, c));
    const std::size_t budget = o.budget ? o.budget : 5;
    const std::vector<TruncationFamily> families =
        o.family == "obstructions" ? obstruction_set(parse_order_type(o.alpha))
                                   : std::vector<TruncationFamily>{family_by_name(o, c)};
    emit(dump(scan_to_json(obstruction_scan(p, families, budget), c.seed)), o, out);
    return kOk;
  }
  throw InvalidOrder("unknown probe '" + o.probe + "'");
}

int cmd_dim(const Options& o, const Config& c, std::ostream& out) {
  const Poset p = load(o.file, c);
  if (o.exact_k) {
    auto r = order_dimension(p, *o.exact_k, c.max_elements);
    Json j;
    j["name"] = "realizer";
    j["k"] = *o.exact_k;
    j["realizer"] = r ? Json(r->extensions) : Json(nullptr);
    emit(dump(j), o, out);
    return r ? kOk : kNegative;
  }
  const DimensionResult d = dimension_exact(p, o.kmax, c.max_elements);
  emit(dump(dimension_to_json(d, o.kmax)), o, out);
  return d.dimension ? kOk : kNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite order-theory lab: posets, downset lattices, embeddings and truncation probes", "latticelab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "seed for randomised choices");
  app.add_option("--format", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--threads", o.threads, "worker threads (0: all cores)");
  app.add_option("-o,--output", o.output, "write to a file instead of stdout");

  auto* gen = app.add_subcommand("gen", "generate a poset");
  gen->add_option("name", o.generator, "generator")
      ->required()
      ->check(CLI::IsMember({"omega-star-fig", "eta-fig", "sierp", "mono-sierp", "lattice-sierp", "powerset", "S-alpha",
                             "P-alpha", "Q-alpha", "chain", "antichain"}));
  gen->add_option("--n", o.n, "size parameter");
  gen->add_option("--k", o.k, "ground set size for powerset");
  gen->add_option("--alpha", o.alpha, "order type");
  gen->add_option("--stage", o.stage, "truncation stage");
  gen->add_option("--phi", o.phi, "identity, reverse, diagonal or seeded-random");
  gen->add_flag("--dot", o.dot, "also write a DOT Hasse diagram");

  auto* analyze = app.add_subcommand("analyze", "summarise a poset file");
  analyze->add_option("file", o.file)->required()->check(CLI::ExistingFile);

  auto* ideals = app.add_subcommand("ideals", "downset lattice of a poset file");
  ideals->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  ideals->add_option("--kind", o.kind, "all, ideals or fingen")->check(CLI::IsMember({"all", "ideals", "fingen"}));
  ideals->add_option("--labels", o.labels, "bits or members")->check(CLI::IsMember({"bits", "members"}));

  auto* embed = app.add_subcommand("embed", "least embedding of one poset into another");
  embed->add_option("source", o.file)->required()->check(CLI::ExistingFile);
  embed->add_option("target", o.file2)->required()->check(CLI::ExistingFile);
  embed->add_option("--mode", o.mode, "order, join or join-bottom")
      ->check(CLI::IsMember({"order", "join", "join-bottom"}));

  auto* pipeline = app.add_subcommand("pipeline", "f -> g -> h -> f' between downsets of R and ideals of P");
  pipeline->add_option("r", o.file)->required()->check(CLI::ExistingFile);
  pipeline->add_option("p", o.file2)->required()->check(CLI::ExistingFile);
  pipeline->add_option("--bound", o.bound, "tuple bound for the separation conditions");

  auto* extract = app.add_subcommand("extract-sierp", "sierpinskisation from a chain of ideals");
  extract->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  extract->add_option("--chain", o.chain_file, "JSON array of ideals, each a list of elements")
      ->check(CLI::ExistingFile);

  auto* probe = app.add_subcommand("probe", "run a probe over a truncation family");
  probe->add_option("family", o.family)->required();
  probe->add_option("probe", o.probe, "width, dichotomy or scan")
      ->required()
      ->check(CLI::IsMember({"width", "dichotomy", "scan"}));
  probe->add_option("--budget", o.budget, "number of stages");
  probe->add_option("--alpha", o.alpha, "order type");
  probe->add_option("--phi", o.phi, "phi strategy for sierp families");
  probe->add_option("--target", o.target, "semilattice file for scan")->check(CLI::ExistingFile);

  auto* dim = app.add_subcommand("dim", "order dimension");
  dim->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  dim->add_option("--kmax", o.kmax, "largest dimension tried");
  dim->add_option("--k", o.exact_k, "only decide whether a realizer of this size exists");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    Config c;
    if (!o.config_file.empty()) c = load_config(o.config_file);
    apply_environment(c);
    if (o.seed) c.seed = *o.seed;
    if (!o.format.empty()) c.format = parse_format(o.format);
    set_thread_count(o.threads);

    if (gen->parsed()) return cmd_gen(o, c, out);
    if (analyze->parsed()) {
      emit(dump(analysis_to_json(load(o.file, c), c)), o, out);
      return kOk;
    }
    if (ideals->parsed()) return cmd_ideals(o, c, out);
    if (embed->parsed()) return cmd_embed(o, c, out);
    if (pipeline->parsed()) return cmd_pipeline(o, c, out);
    if (extract->parsed()) return cmd_extract(o, c, out);
    if (probe->parsed()) return cmd_probe(o, c, out);
    if (dim->parsed()) return cmd_dim(o, c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace latticelab
