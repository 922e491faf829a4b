#include "latticelab/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "latticelab/error.hpp"

namespace latticelab {

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "dot") return Format::Dot;
  if (name == "text") return Format::Text;
  throw InvalidOrder("unknown format '" + std::string(name) + "'");
}

namespace {

struct Position {
  std::size_t line = 1, column = 1;
};

Position position_at(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Schema problems name the offending key; the text layer turns that into a
// position.
struct SchemaError {
  std::string key;
  std::string what;
};

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character
    const Position p = position_at(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    if (auto at = what.find("syntax error"); at != std::string::npos) what = what.substr(at);
    throw ParseError(what, p.line, p.column);
  }
}

ParseError located(std::string_view text, const SchemaError& e) {
  std::size_t offset = 0;
  if (!e.key.empty()) {
    const auto at = text.find("\"" + e.key + "\"");
    if (at != std::string_view::npos) offset = at;
  }
  const Position p = position_at(text, offset);
  return ParseError(e.what, p.line, p.column);
}

std::size_t positive(const Json& j, const std::string& key) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw SchemaError{key, "'" + key + "' must be a positive integer"};
  return j.get<std::size_t>();
}

Poset poset_from_json_checked(const Json& j) {
  if (!j.is_object()) throw SchemaError{"", "a poset must be a JSON object"};
  for (const auto& [key, value] : j.items())
    if (key != "size" && key != "covers" && key != "labels") throw SchemaError{key, "unknown key '" + key + "'"};
  if (!j.contains("size") || !j["size"].is_number_unsigned()) throw SchemaError{"size", "'size' must be a count"};
  const std::size_t n = j["size"].get<std::size_t>();
  std::vector<Pair> covers;
  if (j.contains("covers")) {
    const Json& c = j["covers"];
    if (!c.is_array()) throw SchemaError{"covers", "'covers' must be an array of pairs"};
    for (const auto& e : c) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
        throw SchemaError{"covers", "each cover must be a pair of element indices"};
      const std::size_t lo = e[0].get<std::size_t>(), hi = e[1].get<std::size_t>();
      if (lo >= n || hi >= n) throw SchemaError{"covers", "cover index out of range"};
      covers.emplace_back(lo, hi);
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const Json& l = j["labels"];
    if (!l.is_array() || l.size() != n) throw SchemaError{"labels", "'labels' must list one string per element"};
    for (const auto& s : l) {
      if (!s.is_string()) throw SchemaError{"labels", "labels must be strings"};
      labels.push_back(s.get<std::string>());
    }
  }
  return Poset::from_covers(n, covers, std::move(labels));
}

}  // namespace

Config parse_config(std::string_view text) {
  const Json j = parse_json(text);
  Config c;
  try {
    if (!j.is_object()) throw SchemaError{"", "a config must be a JSON object"};
    for (const auto& [key, value] : j.items()) {
      if (key == "max_elements") c.max_elements = positive(value, key);
      else if (key == "max_downsets") c.max_downsets = positive(value, key);
      else if (key == "tuple_bound") c.tuple_bound = positive(value, key);
      else if (key == "seed") {
        if (!value.is_number_unsigned()) throw SchemaError{key, "'seed' must be an unsigned integer"};
        c.seed = value.get<std::uint64_t>();
      } else if (key == "format") {
        if (!value.is_string()) throw SchemaError{key, "'format' must be a string"};
        try {
          c.format = parse_format(value.get<std::string>());
        } catch (const InvalidOrder& e) {
          throw SchemaError{key, e.what()};
        }
      } else {
        throw SchemaError{key, "unknown key '" + key + "'"};
      }
    }
  } catch (const SchemaError& e) {
    throw located(text, e);
  }
  return c;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidOrder("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

Config load_config(const std::filesystem::path& path) { return parse_config(slurp(path)); }

void apply_environment(Config& c) {
  const char* env = std::getenv("LATTICELAB_MAX_ELEMENTS");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw ParseError("LATTICELAB_MAX_ELEMENTS must be a positive integer", 1, 1);
  c.max_elements = static_cast<std::size_t>(v);
}

Json poset_to_json(const Poset& p) {
  Json j;
  j["size"] = p.size();
  Json covers = Json::array();
  for (const auto& [lo, hi] : p.covers()) covers.push_back({lo, hi});
  j["covers"] = std::move(covers);
  if (p.has_labels()) j["labels"] = p.labels();
  return j;
}

Poset poset_from_json(const Json& j) {
  try {
    return poset_from_json_checked(j);
  } catch (const SchemaError& e) {
    throw ParseError(e.what, 1, 1);
  }
}

Poset parse_poset(std::string_view text) {
  const Json j = parse_json(text);
  try {
    return poset_from_json_checked(j);
  } catch (const SchemaError& e) {
    throw located(text, e);
  }
}

Poset read_poset(const std::filesystem::path& path) { return parse_poset(slurp(path)); }

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Poset& p) {
  std::string out = "digraph poset {\n  rankdir=BT;\n";
  for (std::size_t x = 0; x < p.size(); ++x) out += "  " + quoted(p.name(x)) + ";\n";
  for (const auto& [lo, hi] : p.covers()) out += "  " + quoted(p.name(lo)) + " -> " + quoted(p.name(hi)) + ";\n";
  return out + "}\n";
}

std::string to_text(const Poset& p) {
  std::string out = "size " + std::to_string(p.size()) + "\n";
  for (const auto& [lo, hi] : p.covers()) out += p.name(lo) + " < " + p.name(hi) + "\n";
  return out;
}

std::string render(const Poset& p, Format f) {
  switch (f) {
    case Format::Json: return dump(poset_to_json(p));
    case Format::Dot: return to_dot(p);
    case Format::Text: return to_text(p);
  }
  return {};
}

Json witness_to_json(const EmbeddingWitness& w) {
  Json j;
  j["mode"] = to_string(w.mode);
  j["map"] = w.map;
  j["verified"] = w.verified;
  return j;
}

Json verdict_to_json(const ConditionVerdict& v) {
  Json j;
  j["pass"] = v.pass;
  j["tuples_checked"] = v.tuples_checked;
  if (v.violation) {
    j["violation"]["x"] = v.violation->x;
    j["violation"]["ys"] = v.violation->ys;
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

namespace {

Json optional_index(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json downset_count(const Poset& p, std::size_t bound, DownsetKind kind) {
  try {
    switch (kind) {
      case DownsetKind::All: return all_downsets(p, bound).size();
      case DownsetKind::Ideals: return ideals_of(p, bound).size();
      case DownsetKind::FinGen: return fin_gen_downsets(p, bound).size();
    }
  } catch (const SizeLimit&) {
  }
  return nullptr;  // more than the bound
}

}  // namespace

Json analysis_to_json(const Poset& p, const Config& c) {
  Json j;
  j["size"] = p.size();
  j["covers"] = p.covers().size();
  const HeightWidth hw = height_width(p);
  j["height"] = hw.height;
  j["width"] = hw.width;
  j["longest_chain"] = hw.longest_chain;
  j["largest_antichain"] = hw.largest_antichain;
  j["bottom"] = optional_index(p.bottom());
  j["top"] = optional_index(p.top());
  const auto js = as_join_semilattice(p);
  if (const auto* f = std::get_if<JoinFailure>(&js)) {
    j["join_semilattice"] = false;
    j["join_failure"] = {f->x, f->y};
  } else {
    j["join_semilattice"] = true;
  }
  j["lattice"] = std::holds_alternative<JoinTable>(js) && p.has_bottom();
  j["downsets"] = downset_count(p, c.max_downsets, DownsetKind::All);
  j["ideals"] = downset_count(p, c.max_downsets, DownsetKind::Ideals);
  const LinearExtensions le = linear_extensions(p, 1000);
  j["linear_extensions"] = le.count();
  j["linear_extensions_complete"] = le.complete;
  return j;
}

Json round_trip_to_json(const RoundTrip& r) {
  Json j;
  j["f"] = witness_to_json(r.f);
  j["g"] = r.g;
  j["g_check"] = verdict_to_json(r.g_check);
  j["h"] = r.h;
  j["h_check"] = verdict_to_json(r.h_check);
  j["rebuilt"] = witness_to_json(r.rebuilt);
  return j;
}

Json extraction_to_json(const SierpExtraction& e) {
  Json j;
  j["ground"] = e.ground;
  j["set_rep"] = e.set_rep;
  j["picked"] = e.picked;
  j["witness_sets"] = e.witness_sets;
  Json rho = Json::array();
  for (const auto& [a, b] : e.rho) rho.push_back({a, b});
  j["rho"] = std::move(rho);
  j["r"] = poset_to_json(e.r);
  j["extension"] = e.extension;
  j["s"] = poset_to_json(e.s);
  j["checks"] = e.checks;
  return j;
}

namespace {

std::string evidence(const std::vector<std::size_t>& stages) {
  if (stages.empty()) return "EVIDENCE: no stages";
  return "EVIDENCE: stages " + std::to_string(stages.front()) + ".." + std::to_string(stages.back()) + " only";
}

}  // namespace

Json width_to_json(const WidthProfile& w, std::size_t budget, std::uint64_t seed) {
  Json j;
  j["name"] = "width";
  j["family"] = w.family;
  j["stages"] = w.stages;
  j["widths"] = w.widths;
  j["verdict"] = w.verdict;
  j["evidence"] = evidence(w.stages);
  j["seed"] = seed;
  j["budget"] = budget;
  return j;
}

Json scan_to_json(const ObstructionReport& r, std::uint64_t seed) {
  Json j;
  j["name"] = "scan";
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["family"] = e.family;
    x["stages"] = e.stages;
    x["embeds"] = e.embeds;
    x["max_stage"] = optional_index(e.max_stage);
    x["witness"] = e.witness ? witness_to_json(*e.witness) : Json(nullptr);
    entries.push_back(std::move(x));
  }
  j["families"] = std::move(entries);
  j["evidence"] = "EVIDENCE: stages up to the budget only";
  j["seed"] = seed;
  j["budget"] = r.budget;
  return j;
}

Json dichotomy_to_json(const DichotomyReport& d, std::size_t budget, std::uint64_t seed) {
  Json j;
  j["name"] = "dichotomy";
  j["family"] = d.family;
  j["stages"] = d.stages;
  j["widths"] = d.widths;
  j["powerset_max"] = d.powerset_max;
  j["representation_ground"] = d.representation_ground;
  j["verdict"] = d.verdict;
  j["evidence"] = evidence(d.stages);
  j["seed"] = seed;
  j["budget"] = budget;
  return j;
}

Json dimension_to_json(const DimensionResult& d, std::size_t kmax) {
  Json j;
  j["name"] = "dimension";
  j["kmax"] = kmax;
  j["dimension"] = d.dimension ? Json(*d.dimension) : Json("unknown");
  j["realizer"] = d.realizer ? Json(d.realizer->extensions) : Json(nullptr);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace latticelab
