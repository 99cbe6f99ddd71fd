// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Counting engines: the (s, pi, L, U) class census, the feasible-basis census
// of a small digraph, and the random-graph ratio experiment.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hamwedge/exactnum.hpp"
#include "hamwedge/graph.hpp"
#include "hamwedge/hamclass.hpp"
#include "hamwedge/polytope.hpp"

namespace hamwedge {

// (l1, ..., lt): l1 is the cycle through node 1, the rest non-increasing.
struct CycleType {
  std::vector<int> lengths;
  auto operator<=>(const CycleType&) const = default;
  bool operator==(const CycleType&) const = default;
};

CycleType cycle_type(const Permutation& pi);
std::string to_string(const CycleType& t);  // "l1-l2-...-lt"
CycleType parse_cycle_type(std::string_view text);
// Table row order: fewer cycles first. Two cycles: longer l1 first. Three or
// more: grouped by the multiset of lengths (decreasing), then longer l1 first.
bool row_order_less(const CycleType& a, const CycleType& b);

using Count = std::uint64_t;

struct CensusTable {
  int n = 0;
  std::map<std::pair<CycleType, int>, Count> cells;

  Count count(const CycleType& t, int s) const;
  std::vector<CycleType> rows() const;  // types with a nonzero total, in row order
  std::vector<int> columns() const;     // values of s with a nonzero total
  Count total_for_s(int s) const;
  Count total_for_type(const CycleType& t) const;
  Count a() const;  // single n-cycle row
  Count b() const;
  void add(const CensusTable& other);
  friend bool operator==(const CensusTable&, const CensusTable&) = default;
};

// n * a / b rounded half-up to 4 decimals; "undefined" when b = 0.
std::string format_ratio4(int n, Count a, Count b);

enum class CensusPredicate { Parity, General, Oracle };

struct CensusOptions {
  int threads = 1;
  // Skip branches that violate necessary conditions of the parity test.
  bool prune = true;
  CensusPredicate predicate = CensusPredicate::Parity;
  // n >= 11 takes hours; refused unless set.
  bool allow_large = false;
};

CensusTable census_class(int n, const CensusOptions& options = {});
// The counted quadruples themselves, in enumeration order (single-threaded).
std::vector<Quadruple> counted_quadruples(int n, const CensusOptions& options = {});

std::string write_census_csv(const CensusTable& t);
CensusTable read_census_csv(std::string_view text);

enum class GraphCensusMode { Oracle, Pruned };

struct GraphCensusOptions {
  GraphCensusMode mode = GraphCensusMode::Pruned;
  int max_n = 7;
  int max_n_oracle = 4;
};

struct GraphCensusEntry {
  Basis basis;
  bool quasi_hamiltonian = false;
  StructureReport structure;
};

struct GraphCensus {
  Digraph graph;
  std::vector<GraphCensusEntry> feasible;  // sorted by basis
  std::size_t candidates = 0;              // distinct (A, Y) pairs solved
  std::size_t singular = 0;

  std::size_t quasi_hamiltonian_count() const;
  // QH / feasible, nullopt when there are no feasible bases.
  std::optional<Rational> ratio() const;
};

class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GraphCensus census_graph(const Digraph& g, const GraphCensusOptions& options = {});
std::string write_graph_census_csv(const GraphCensus& c);

// Parsed form of write_graph_census_csv output.
struct GraphCensusRow {
  Basis basis;
  bool quasi_hamiltonian = false;
  bool structure_ok = false;
  friend bool operator==(const GraphCensusRow&, const GraphCensusRow&) = default;
};
struct GraphCensusRecord {
  std::vector<GraphCensusRow> rows;
  int n = 0;
  std::size_t arcs = 0;
  std::size_t candidates = 0;
  std::size_t singular = 0;
  std::size_t quasi_hamiltonian = 0;
  std::optional<Rational> ratio;
};
GraphCensusRecord read_graph_census_csv(std::string_view text);

struct ConjectureSample {
  std::uint64_t seed = 0;
  std::size_t arcs = 0;
  std::size_t feasible = 0;
  std::size_t quasi_hamiltonian = 0;
  std::optional<Rational> ratio;
};

struct ConjectureSummary {
  int n = 0;
  Rational p;
  std::uint64_t seed = 0;
  std::vector<ConjectureSample> samples;
  std::size_t defined = 0;
  std::optional<Rational> mean;
  std::optional<Rational> variance;  // sample variance, needs two defined ratios

  std::optional<double> stddev() const;
};

// Sample k uses the k-th output of std::mt19937_64(seed) as its graph seed.
ConjectureSummary conjecture_experiment(int n, const Rational& p, int samples, std::uint64_t seed,
                                        int threads = 1, const GraphCensusOptions& options = {});
std::string write_conjecture_csv(const ConjectureSummary& s);
ConjectureSummary read_conjecture_csv(std::string_view text);

}  // namespace hamwedge
