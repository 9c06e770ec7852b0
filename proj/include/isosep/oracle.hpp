#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isosep/rng.hpp"
#include "isosep/separation.hpp"

namespace isosep {

/// Ground truth for a separation instance, by exhaustive search.
struct OracleVerdict {
  /// One word per distinct image of P (BFS-first word), ratio >= 1/3.
  std::vector<IsometryWord> valid_words;
  std::vector<PointSet> valid_images;
  IsometryWord best_word;
  ExtRational best_ratio = ExtRational::infinity();
  std::size_t states = 0;  // distinct images of P visited
};

/// Breadth-first search over images of the whole tuple P under all words of
/// length <= max_word_length, deduplicated by image. Every state's ratio
/// min_p d(g p, Q) / eps_p is recomputed with plain pairwise distances.
OracleVerdict brute_force_separate(const GeneratedAction& action, const WeightedPointSet& P,
                                   const PointSet& Q, std::size_t max_word_length);

/// True if word maps P onto one of the oracle's valid images.
bool oracle_accepts(const OracleVerdict& verdict, const GeneratedAction& action,
                    const WeightedPointSet& P, const IsometryWord& word);

/// Bounds for random instances. Caps: p_max <= 6, q_max <= 10,
/// coord_max <= 32, eps_max <= 8, word_len_max <= 6.
struct InstanceSizes {
  std::size_t p_max = 4;
  std::size_t q_max = 5;
  std::int64_t coord_max = 8;
  std::int64_t eps_max = 4;
  std::size_t word_len_max = 6;

  void validate() const;
};

/// A reproducible instance. Separation kinds fill P and Q; "compact1" fills
/// C (weights are the deltas) and D.
struct InstanceSpec {
  std::string kind;
  std::uint64_t seed = 0;
  InstanceSizes sizes;
  GeneratedAction action;
  WeightedPointSet P;
  PointSet Q;
  WeightedPointSet C;
  PointSet D;

  bool is_compact() const { return kind == "compact1"; }
};

/// Known kinds: zd2 (Z^2, l-inf, unit translations), zd2l1 (same, l1),
/// free2 (F_2 by left multiplication, points are reduced words of length
/// <= word_len_max), shift (Z, discrete metric, weights 1), compact1 (Z with
/// C, deltas in {3,6,9}, D), c4 (rotation of the 4-point discrete space,
/// P = Q = everything; the seed is ignored).
InstanceSpec random_instance(std::string_view kind, std::uint64_t seed,
                             const InstanceSizes& sizes = {});

const std::vector<std::string>& instance_kinds();

/// A random point of the space: lattice coordinates in [-32, 32], free words
/// of length <= 6, shift integers in [-32, 32], any graph vertex.
Point sample_point(const MetricSpace& space, SplitMix64& rng);

enum class DifferentialStatus : std::uint8_t { agree, mismatch, exhausted };

const char* to_string(DifferentialStatus s);

struct DifferentialReport {
  DifferentialStatus status = DifferentialStatus::agree;
  std::vector<std::string> mismatches;
  std::optional<SeparationCertificate> certificate;
  OracleVerdict verdict;
  std::size_t explored = 0;

  bool ok() const { return status == DifferentialStatus::agree; }
};

/// Checks a certificate against the instance and the oracle:
/// (a) recomputing distances reproduces `achieved` and `ratio`,
/// (b) ratio >= 1/3,
/// (c) if the word has length <= oracle_bound, the oracle lists its image,
/// (d) the recursion trace replays to the same word.
DifferentialReport audit_certificate(const GeneratedAction& action, const WeightedPointSet& P,
                                     const PointSet& Q, const SeparationCertificate& cert,
                                     const OracleVerdict& verdict, std::size_t oracle_bound,
                                     const OrbitBudget& budget);

/// Runs separate_points and the oracle on a separation instance (for compact
/// instances, on the nets chosen by separate_compact) and audits the result.
DifferentialReport differential_check(const InstanceSpec& instance, const OrbitBudget& budget,
                                      std::size_t oracle_bound);

struct ExperimentRow {
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t p_size = 0;
  std::size_t q_size = 0;
  std::optional<ExtRational> cert_ratio;
  ExtRational oracle_best_ratio = ExtRational::infinity();
  std::optional<std::size_t> word_len;
  std::size_t explored = 0;
  std::string status;  // "ok" | "budget-exhausted" | "mismatch"
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::optional<ExtRational> min_cert_ratio;

  /// Header: kind,seed,p_size,q_size,cert_ratio,oracle_best_ratio,word_len,explored,status
  std::string to_csv() const;
};

/// n instances per kind with seeds seed, seed+1, ..., seed+n-1. Exhaustion
/// becomes a row status, not an error.
ExperimentResult ratio_experiment(const std::vector<std::string>& kinds, std::size_t n,
                                  std::uint64_t seed, const OrbitBudget& budget,
                                  std::size_t oracle_bound, const InstanceSizes& sizes = {});

}  // namespace isosep
