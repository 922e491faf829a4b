#pragma once

// JSON, DOT and text forms of posets, witnesses and probe reports, plus the
// run configuration.  JSON keys keep insertion order so output is stable.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "latticelab/dimension.hpp"
#include "latticelab/embeddings.hpp"
#include "latticelab/ideals.hpp"
#include "latticelab/poset.hpp"
#include "latticelab/probes.hpp"

namespace latticelab {

using Json = nlohmann::ordered_json;

enum class Format { Json, Dot, Text };
Format parse_format(std::string_view name);

struct Config {
  std::size_t max_elements = 64;
  std::size_t max_downsets = std::size_t{1} << 20;
  std::size_t tuple_bound = 3;
  std::uint64_t seed = 0;
  Format format = Format::Json;
};

/// Reads a JSON object with any of the Config keys ("max_elements",
/// "max_downsets", "tuple_bound", "seed", "format").  Unknown keys and
/// non-positive bounds throw ParseError.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path& path);
/// LATTICELAB_MAX_ELEMENTS, when set, replaces max_elements.
void apply_environment(Config& c);

/// {"size": n, "covers": [[lo, hi], ...], "labels": [...]}; labels only when present.
Json poset_to_json(const Poset& p);
/// Throws ParseError (with the line and column of the value where known),
/// CycleError or InvalidOrder.
Poset poset_from_json(const Json& j);
Poset parse_poset(std::string_view text);
Poset read_poset(const std::filesystem::path& path);

/// Hasse diagram, covers drawn upward, nodes in index order.
std::string to_dot(const Poset& p);
std::string to_text(const Poset& p);
std::string render(const Poset& p, Format f);

Json witness_to_json(const EmbeddingWitness& w);
Json verdict_to_json(const ConditionVerdict& v);
Json analysis_to_json(const Poset& p, const Config& c);
Json round_trip_to_json(const RoundTrip& r);
Json extraction_to_json(const SierpExtraction& e);
Json width_to_json(const WidthProfile& w, std::size_t budget, std::uint64_t seed);
Json scan_to_json(const ObstructionReport& r, std::uint64_t seed);
Json dichotomy_to_json(const DichotomyReport& d, std::size_t budget, std::uint64_t seed);
Json dimension_to_json(const DimensionResult& d, std::size_t kmax);

/// Two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace latticelab
