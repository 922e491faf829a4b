#pragma once

// Embedding searches between finite posets and semilattices, the
// representation maps between downset lattices and ideal lattices, and the
// extraction of a sierpinskisation from a chain of ideals.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latticelab/ideals.hpp"
#include "latticelab/poset.hpp"

namespace latticelab {

/// Order: x <= y iff f(x) <= f(y).  Join: additionally f(x v y) = f(x) v f(y).
/// JoinBottom: additionally f(bottom) = bottom, so all finite joins are kept.
enum class EmbedMode { Order, Join, JoinBottom };
EmbedMode parse_mode(std::string_view name);
const char* to_string(EmbedMode mode);

struct EmbeddingWitness {
  Poset source;
  Poset target;
  std::vector<std::size_t> map;
  EmbedMode mode = EmbedMode::Order;
  bool verified = false;
};

/// Checks every condition of `mode` directly.  Join modes on a poset without
/// binary joins throw ModeUnsupported.
bool verify_embedding(const Poset& q, const Poset& p, std::span<const std::size_t> map, EmbedMode mode);

/// Lexicographically least embedding (elements of q assigned in index order,
/// candidates in increasing target index), or nullopt when none exists.
std::optional<EmbeddingWitness> find_embedding(const Poset& q, const Poset& p, EmbedMode mode);

// ------------------------------------------------- downset representations

/// Lattices shared by the maps below: all downsets of R, the finitely
/// generated ones, and the ideals of the semilattice P.
struct RepresentationContext {
  Poset r;
  JoinSemilattice p;
  DownsetLattice downsets_r;
  DownsetLattice fingen_r;
  DownsetLattice ideals_p;
  Poset downsets_r_order;
  Poset ideals_p_order;

  /// Throws PreconditionFailed when P has no least element.
  static RepresentationContext make(const Poset& r, const JoinSemilattice& p);
  std::size_t principal(std::size_t x) const;  // index of the downset of x in fingen_r
};

struct TupleViolation {
  std::size_t x = 0;
  std::vector<std::size_t> ys;  // non-decreasing
};

struct ConditionVerdict {
  bool pass = true;
  std::optional<TupleViolation> violation;  // first in (length, x, ys) order
  std::size_t tuples_checked = 0;
};

/// X not inside Y1 u ... u Yn implies g(X) not below g(Y1) v ... v g(Yn), for
/// all tuples with n <= bound (n = 0 compares against the bottom).  g is
/// indexed by ctx.fingen_r.
ConditionVerdict check_condition_4(const RepresentationContext& ctx, std::span<const std::size_t> g,
                                   std::size_t bound = 3);
/// x not below any yi implies h(x) not below h(y1) v ... v h(yn).
ConditionVerdict check_condition_5(const RepresentationContext& ctx, std::span<const std::size_t> h,
                                   std::size_t bound = 3);

/// Lexicographically least maps passing the condition, by backtracking.
std::optional<std::vector<std::size_t>> find_condition_4_map(const RepresentationContext& ctx, std::size_t bound = 3);
std::optional<std::vector<std::size_t>> find_condition_5_map(const RepresentationContext& ctx, std::size_t bound = 3);

/// f maps ctx.downsets_r to ctx.ideals_p.  g(X) is the least element of
/// f(X) minus the union of f(R \ up(a)) over the maximal a of X.  Throws
/// ClaimViolation when that difference is empty.
std::vector<std::size_t> derive_g_from_f(const RepresentationContext& ctx, std::span<const std::size_t> f);
/// h(x) = g(down x).  Throws PreconditionFailed when g fails condition 4.
std::vector<std::size_t> derive_h_from_g(const RepresentationContext& ctx, std::span<const std::size_t> g,
                                         std::size_t bound = 3);
/// f'(I) = ideal generated by h(I).  Throws PreconditionFailed when h fails
/// condition 5; the result is verified as a JoinBottom embedding of the
/// downset lattice into the ideal lattice.
EmbeddingWitness build_f_from_h(const RepresentationContext& ctx, std::span<const std::size_t> h,
                                std::size_t bound = 3);

struct RoundTrip {
  EmbeddingWitness f;
  std::vector<std::size_t> g;
  ConditionVerdict g_check;
  std::vector<std::size_t> h;
  ConditionVerdict h_check;
  EmbeddingWitness rebuilt;
};

/// f -> g -> h -> f'.  nullopt when the downset lattice of R does not embed.
std::optional<RoundTrip> round_trip(const RepresentationContext& ctx, std::size_t bound = 3);

/// g extended to ideals: gbar(I) = join of g(I).  Checks g keeps finite joins
/// (NotJoinPreserving otherwise), then that gbar keeps joins of ideal
/// families and that gbar(I) is the join of g over any generating set of I.
/// Indexed by ideals_of(q.order).
std::vector<std::size_t> extend_to_ideals(const JoinSemilattice& q, const JoinSemilattice& l,
                                          std::span<const std::size_t> g);

struct Subsemilattice {
  std::vector<std::size_t> elements;  // sorted indices of P
  Poset order;                        // induced order, element k = elements[k]
};

/// Closure of A under binary joins, plus the bottom when `with_bottom`.
Subsemilattice generated_subsemilattice(const JoinSemilattice& p, const Bitset& a, bool with_bottom = false);

/// A join-preserving map with bottom sent to bottom.  Throws
/// NotJoinPreserving when f is not join-preserving.
std::vector<std::size_t> repair_bottom(const JoinSemilattice& q, const JoinSemilattice& p,
                                       std::span<const std::size_t> f);
/// I -> down f(I), from ideals_of(q) to ideals_of(p).
std::vector<std::size_t> lift_to_ideals(const JoinSemilattice& q, const JoinSemilattice& p,
                                        std::span<const std::size_t> f);
/// For an order embedding f of fin_gen_downsets(r) into p: g(empty) = bottom
/// and g(I) = join of f(down x) over x in I.  The witness is verified in
/// JoinBottom mode.
EmbeddingWitness fingen_join_repair(const DownsetLattice& fingen, const JoinSemilattice& p,
                                    std::span<const std::size_t> f);

// ---------------------------------------------------------- extraction

struct SierpExtraction {
  std::size_t ground = 0;                  // k of the powerset used
  std::vector<std::uint64_t> set_rep;      // element of P -> subset of {0..k-1}
  std::vector<std::size_t> picked;         // x_b: least new ground element at step b
  std::vector<std::uint64_t> witness_sets; // F_b
  std::vector<Pair> rho;                   // (b', b'') with b' < b'' and x_b' in F_b''
  Poset r;                                 // closure of rho on steps 0..m-1
  std::vector<std::size_t> extension;      // steps ranked by the union map of their downsets
  Poset s;                                 // index order intersected with the extension
  std::vector<std::string> checks;         // names of the checks that passed
};

/// Smallest k <= max_ground with a JoinBottom embedding into the powerset of
/// k points; the lexicographically least map.  Throws NotPowersetEmbeddable.
std::pair<std::size_t, std::vector<std::uint64_t>> powerset_representation(const JoinSemilattice& p,
                                                                           std::size_t max_ground = 6);

/// Runs the extraction on a strictly increasing chain of ideals of P.
/// Throws ChainNotStrict, PreconditionFailed when a member is not an ideal,
/// NotPowersetEmbeddable, or ConstructionInvariantViolated naming the check.
SierpExtraction extract_sierp(const JoinSemilattice& p, std::span<const Bitset> ideal_chain);

}  // namespace latticelab
