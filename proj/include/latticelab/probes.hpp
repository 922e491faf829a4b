#pragma once

// Families of finite truncations and the probes run over them: width
// profiles, obstruction scans against a fixed semilattice, and the
// powerset/wqo dichotomy.  Verdicts are evidence from finitely many stages.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "latticelab/constructions.hpp"
#include "latticelab/embeddings.hpp"
#include "latticelab/order_type.hpp"
#include "latticelab/poset.hpp"

namespace latticelab {

struct TruncationFamily {
  std::string name;
  std::size_t first_stage = 1;
  EmbedMode mode = EmbedMode::Order;  // Order, or JoinBottom when stages are semilattices
  std::function<Poset(std::size_t)> generator;
  // stage element -> subset of a finite ground set, when the stage comes
  // with one (powersets, downset lattices)
  std::function<std::vector<std::uint64_t>(std::size_t)> set_representation;

  Poset stage(std::size_t s) const { return generator(s); }
};

/// The map from stage s into stage s+1: elements with equal labels when the
/// labels match up, otherwise the least embedding.  Verified in the family
/// mode; throws ConstructionInvariantViolated when no inclusion exists.
std::vector<std::size_t> stage_inclusion(const TruncationFamily& f, const Poset& lower, const Poset& upper);

// Standard families.  Stages are 0-based for powersets, 2-based for figure1
// and 1-based otherwise.
TruncationFamily powerset_family(std::size_t max_elements = std::size_t{1} << 12);
TruncationFamily figure1_family();
TruncationFamily figure2_family();
TruncationFamily chain_family(const OrderType& a);
TruncationFamily sierp_family(const OrderType& a, PhiStrategy strategy = PhiStrategy::Identity, std::uint64_t seed = 0);
TruncationFamily mono_sierp_family(const OrderType& a);
TruncationFamily lattice_sierp_family(const OrderType& a);
TruncationFamily p_alpha_family(const OrderType& a);
TruncationFamily q_alpha_family(const OrderType& a);
/// Finitely generated downsets of the stages of another family.
TruncationFamily fingen_family(const TruncationFamily& base);

/// The obstruction candidates for a: its truncated chains, P_a, Q_a,
/// powersets and figure1.
std::vector<TruncationFamily> obstruction_set(const OrderType& a);

struct WidthProfile {
  std::string family;
  std::vector<std::size_t> stages;
  std::vector<std::size_t> widths;
  std::string verdict;  // "growth", "plateau" or "inconclusive", read off the last three stages
};

/// Widths of `count` consecutive stages from the first.  Asserts that widths
/// never drop, since each stage embeds in the next.
WidthProfile width_growth(const TruncationFamily& f, std::size_t count);

struct ScanEntry {
  std::string family;
  std::vector<std::size_t> stages;
  std::vector<bool> embeds;
  std::optional<std::size_t> max_stage;  // largest embedding stage scanned
  std::optional<EmbeddingWitness> witness;
};

struct ObstructionReport {
  std::size_t budget = 0;
  std::vector<ScanEntry> entries;
};

/// For each family, complete JoinBottom searches of stages first..first+budget-1
/// into p.  Throws ConstructionInvariantViolated when a stage fails although
/// a later one embeds, or when a composed inclusion does not verify.
ObstructionReport obstruction_scan(const JoinSemilattice& p, const std::vector<TruncationFamily>& families,
                                   std::size_t budget);

/// Largest k with a JoinBottom embedding of the powerset of k points into p.
std::size_t powerset_max(const Poset& p);

struct DichotomyReport {
  std::string family;
  std::vector<std::size_t> stages;
  std::vector<std::size_t> widths;
  std::vector<std::size_t> powerset_max;
  std::size_t representation_ground = 0;  // largest ground set used to certify the stages
  std::string verdict;                    // "powerset-horn", "wqo-horn" or "inconclusive"
};

/// Checks every stage against its set representation, then reads the verdict
/// from the powerset maxima of the last three stages.
DichotomyReport dichotomy_probe(const TruncationFamily& f, std::size_t count);

// ------------------------------------------------------------- shadows

/// An enumeration of the truncation of w.a that visits the columns in rounds
/// (each column with points left once per round, in random order), climbing
/// each column.  Returns phi for the truncated chain of w.a at `stage`.
std::vector<std::size_t> admissible_random_phi(const OrderType& a, std::size_t stage, std::mt19937_64& rng);

struct TailSplit {
  std::vector<std::size_t> head;  // the chain F
  std::vector<std::size_t> rest;  // later elements incomparable to all of F
};

/// Least n-chain F (in lexicographic order of index tuples) whose later
/// elements incomparable to F have width at least `min_width`, so that
/// rest u F induces the direct sum of the two parts.
std::optional<TailSplit> tail_split(const Poset& p, std::size_t n, std::size_t min_width);

}  // namespace latticelab
