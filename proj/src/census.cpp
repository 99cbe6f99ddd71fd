// Copyright 2026 The hamwedge Authors
// SPDX-License-Identifier: Apache-2.0

#include "hamwedge/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <iomanip>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace hamwedge {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

Count parse_count(const std::string& s) {
  std::size_t p = 0;
  const unsigned long long v = std::stoull(s, &p);
  if (p != s.size()) throw std::invalid_argument("bad count '" + s + "'");
  return v;
}

// Runs fn(k) for k in [0, jobs) on `threads` workers pulling from a shared counter.
void parallel_for(std::size_t jobs, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, static_cast<std::size_t>(std::max(1, threads))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (std::size_t k = next++; k < jobs; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

CycleType cycle_type(const Permutation& pi) {
  auto cycles = cycles_of(pi);
  CycleType t;
  t.lengths.push_back(static_cast<int>(cycles.front().size()));
  std::vector<int> rest;
  for (std::size_t k = 1; k < cycles.size(); ++k) rest.push_back(static_cast<int>(cycles[k].size()));
  std::sort(rest.begin(), rest.end(), std::greater<>());
  t.lengths.insert(t.lengths.end(), rest.begin(), rest.end());
  return t;
}

std::string to_string(const CycleType& t) {
  std::string s;
  for (std::size_t k = 0; k < t.lengths.size(); ++k) s += (k ? "-" : "") + std::to_string(t.lengths[k]);
  return s;
}

CycleType parse_cycle_type(std::string_view text) {
  CycleType t;
  for (const auto& part : split(std::string(text), '-')) {
    std::size_t p = 0;
    const int v = std::stoi(part, &p);
    if (p != part.size() || v < 1) throw std::invalid_argument("bad cycle type '" + std::string(text) + "'");
    t.lengths.push_back(v);
  }
  if (t.lengths.empty()) throw std::invalid_argument("empty cycle type");
  return t;
}

bool row_order_less(const CycleType& a, const CycleType& b) {
  if (a.lengths.size() != b.lengths.size()) return a.lengths.size() < b.lengths.size();
  if (a.lengths.size() == 2) return a.lengths > b.lengths;
  auto pa = a.lengths, pb = b.lengths;
  std::sort(pa.begin(), pa.end(), std::greater<>());
  std::sort(pb.begin(), pb.end(), std::greater<>());
  if (pa != pb) return pa > pb;
  return a.lengths > b.lengths;
}

Count CensusTable::count(const CycleType& t, int s) const {
  const auto it = cells.find({t, s});
  return it == cells.end() ? 0 : it->second;
}

std::vector<CycleType> CensusTable::rows() const {
  std::vector<CycleType> out;
  for (const auto& [key, c] : cells) {
    if (c > 0 && (out.empty() || out.back() != key.first)) out.push_back(key.first);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::sort(out.begin(), out.end(), row_order_less);
  return out;
}

std::vector<int> CensusTable::columns() const {
  std::set<int> s;
  for (const auto& [key, c] : cells) {
    if (c > 0) s.insert(key.second);
  }
  return {s.begin(), s.end()};
}

Count CensusTable::total_for_s(int s) const {
  Count t = 0;
  for (const auto& [key, c] : cells) {
    if (key.second == s) t += c;
  }
  return t;
}

Count CensusTable::total_for_type(const CycleType& type) const {
  Count t = 0;
  for (const auto& [key, c] : cells) {
    if (key.first == type) t += c;
  }
  return t;
}

Count CensusTable::a() const { return total_for_type(CycleType{{n}}); }

Count CensusTable::b() const {
  Count t = 0;
  for (const auto& [key, c] : cells) t += c;
  return t;
}

void CensusTable::add(const CensusTable& other) {
  for (const auto& [key, c] : other.cells) cells[key] += c;
}

std::string format_ratio4(int n, Count a, Count b) {
  if (b == 0) return "undefined";
  // round(n * a * 10^4 / b) half-up, exactly.
  Integer num = Integer(static_cast<unsigned long>(n)) * Integer(std::to_string(a)) * 10000;
  Integer den(std::to_string(b));
  Integer q = (2 * num + den) / (2 * den);
  Integer whole = q / 10000;
  Integer frac = q % 10000;
  std::string f = frac.get_str();
  return whole.get_str() + "." + std::string(4 - f.size(), '0') + f;
}

namespace {

struct ClassTask {
  int s;
  int first;
  int second;
};

class ClassEngine {
 public:
  ClassEngine(int n, const CensusOptions& o) : n_(n), opt_(o) {}

  std::vector<ClassTask> tasks() const {
    std::vector<ClassTask> out;
    for (int s = 2; s <= n_; ++s) {
      if (opt_.prune && n_ % 2 == 1 && s != 2) continue;
      for (int a = 1; a <= n_; ++a) {
        if (!allowed(s, 1, a)) continue;
        for (int b = 1; b <= n_; ++b) {
          if (b != a && allowed(s, 2, b)) out.push_back({s, a, b});
        }
      }
    }
    return out;
  }

  // Counts hits of one task into `table`; appends quadruples when `collect` is set.
  void run(const ClassTask& t, CensusTable& table, std::vector<Quadruple>* collect) {
    s_ = t.s;
    pred_s_ = cyc_prev(s_, n_);
    pi_.assign(at(n_) + 1, 0);
    used_.assign(at(n_) + 1, false);
    pi_[1] = t.first;
    pi_[2] = t.second;
    used_[at(t.first)] = used_[at(t.second)] = true;
    table_ = &table;
    collect_ = collect;
    fill(3);
  }

 private:
  bool allowed(int s, int i, int j) const {
    if (j == i) return false;
    if ((j == cyc_next(i, n_)) != (i == cyc_prev(s, n_))) return false;
    if (opt_.prune && i == s && j == 1) return false;
    return true;
  }

  void fill(int i) {
    if (i > n_) {
      leaf();
      return;
    }
    for (int j = 1; j <= n_; ++j) {
      if (used_[at(j)] || !allowed(s_, i, j)) continue;
      used_[at(j)] = true;
      pi_[at(i)] = j;
      fill(i + 1);
      used_[at(j)] = false;
    }
    pi_[at(i)] = 0;
  }

  bool accept() {
    switch (opt_.predicate) {
      case CensusPredicate::Parity:
        return check_char_parity_raw(n_, s_, pi_, inv_, label_);
      case CensusPredicate::General:
        return check_char_general(quadruple());
      case CensusPredicate::Oracle:
        if (!oracle_) oracle_.emplace(n_);
        return oracle_->feasible(quadruple());
    }
    return false;
  }

  Quadruple quadruple() const {
    Quadruple q{n_, s_, pi_, {}, {}};
    for (int v = 2; v <= n_; ++v) {
      if (label_[at(v)] == Label::L) q.L.push_back(v);
      if (label_[at(v)] == Label::U) q.U.push_back(v);
    }
    return q;
  }

  void leaf() {
    inv_ = inverse(pi_);
    label_.assign(at(n_) + 1, Label::L);
    label_[1] = Label::R;
    label_[at(s_)] = Label::S;
    std::vector<int> free;
    for (int v = 2; v <= n_; ++v) {
      if (v != s_) free.push_back(v);
    }
    Count hits = 0;
    auto visit = [&] {
      if (accept()) {
        ++hits;
        if (collect_) collect_->push_back(quadruple());
      }
    };
    if (!opt_.prune) {
      const std::uint64_t total = std::uint64_t{1} << free.size();
      for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t k = 0; k < free.size(); ++k) label_[at(free[k])] = (mask >> k) & 1U ? Label::U : Label::L;
        visit();
      }
    } else {
      // |U| is fixed; pi(s) is in U; for even n a non-root s-1 is in U.
      const int want = (n_ - 2) / 2;
      std::vector<int> forced{pi_[at(s_)]};
      if (n_ % 2 == 0 && pred_s_ != 1 && pred_s_ != forced[0]) forced.push_back(pred_s_);
      if (n_ % 2 == 1 && pred_s_ != 1) return;
      if (static_cast<int>(forced.size()) <= want) {
        std::vector<int> rest;
        for (int v : free) {
          if (std::find(forced.begin(), forced.end(), v) == forced.end()) rest.push_back(v);
        }
        for (int v : forced) label_[at(v)] = Label::U;
        const int pick = want - static_cast<int>(forced.size());
        std::function<void(std::size_t, int)> choose = [&](std::size_t from, int left) {
          if (left == 0) {
            visit();
            return;
          }
          for (std::size_t k = from; k + static_cast<std::size_t>(left) <= rest.size(); ++k) {
            label_[at(rest[k])] = Label::U;
            choose(k + 1, left - 1);
            label_[at(rest[k])] = Label::L;
          }
        };
        choose(0, pick);
      }
    }
    if (hits > 0) table_->cells[{cycle_type(pi_), s_}] += hits;
  }

  int n_;
  CensusOptions opt_;
  int s_ = 0;
  int pred_s_ = 0;
  Permutation pi_, inv_;
  std::vector<bool> used_;
  std::vector<Label> label_;
  CensusTable* table_ = nullptr;
  std::vector<Quadruple>* collect_ = nullptr;
  std::optional<ClassOracle> oracle_;
};

void check_class_size(int n, const CensusOptions& o) {
  if (n < 5) throw std::invalid_argument("class census needs n >= 5");
  if (n >= 11 && !o.allow_large) throw std::invalid_argument("n >= 11 requires the large-run flag");
  if (n > 16) throw std::invalid_argument("n too large");
}

}  // namespace

CensusTable census_class(int n, const CensusOptions& options) {
  check_class_size(n, options);
  const auto tasks = ClassEngine(n, options).tasks();
  std::vector<CensusTable> parts(tasks.size());
  parallel_for(tasks.size(), options.threads, [&](std::size_t k) {
    ClassEngine local(n, options);
    parts[k].n = n;
    local.run(tasks[k], parts[k], nullptr);
  });
  CensusTable out;
  out.n = n;
  for (const auto& p : parts) out.add(p);
  return out;
}

std::vector<Quadruple> counted_quadruples(int n, const CensusOptions& options) {
  check_class_size(n, options);
  ClassEngine engine(n, options);
  std::vector<Quadruple> out;
  CensusTable scratch;
  for (const auto& t : engine.tasks()) engine.run(t, scratch, &out);
  return out;
}

std::string write_census_csv(const CensusTable& t) {
  std::ostringstream os;
  os << "cycle_type,s,count\n";
  const auto cols = t.columns();
  for (const auto& row : t.rows()) {
    for (int s : cols) os << to_string(row) << "," << s << "," << t.count(row, s) << "\n";
  }
  os << "n,a_n,b_n,n*a_n/b_n\n";
  os << t.n << "," << t.a() << "," << t.b() << "," << format_ratio4(t.n, t.a(), t.b()) << "\n";
  return os.str();
}

CensusTable read_census_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "cycle_type,s,count") throw std::invalid_argument("missing census header");
  CensusTable t;
  std::size_t k = 1;
  for (; k < lines.size() && lines[k] != "n,a_n,b_n,n*a_n/b_n"; ++k) {
    const auto f = split(lines[k], ',');
    if (f.size() != 3) throw std::invalid_argument("bad census row '" + lines[k] + "'");
    const Count c = parse_count(f[2]);
    if (c > 0) t.cells[{parse_cycle_type(f[0]), std::stoi(f[1])}] += c;
  }
  if (k + 1 >= lines.size()) throw std::invalid_argument("missing census summary");
  const auto f = split(lines[k + 1], ',');
  if (f.size() != 4) throw std::invalid_argument("bad census summary");
  t.n = std::stoi(f[0]);
  if (parse_count(f[1]) != t.a() || parse_count(f[2]) != t.b() || f[3] != format_ratio4(t.n, t.a(), t.b())) {
    throw std::invalid_argument("census summary does not match its rows");
  }
  return t;
}

std::size_t GraphCensus::quasi_hamiltonian_count() const {
  return static_cast<std::size_t>(std::count_if(feasible.begin(), feasible.end(),
                                                [](const GraphCensusEntry& e) { return e.quasi_hamiltonian; }));
}

std::optional<Rational> GraphCensus::ratio() const {
  if (feasible.empty()) return std::nullopt;
  return make_rational(Integer(static_cast<unsigned long>(quasi_hamiltonian_count())),
                       Integer(static_cast<unsigned long>(feasible.size())));
}

namespace {

// Union-find with undo, for growing arc sets.
class UndoUnionFind {
 public:
  explicit UndoUnionFind(int n) : parent_(at(n)), size_(at(n), 1), components_(n) {
    for (int i = 0; i < n; ++i) parent_[at(i)] = i;
  }
  int find(int x) const {
    while (parent_[at(x)] != x) x = parent_[at(x)];
    return x;
  }
  // Returns false when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      history_.push_back(-1);
      return false;
    }
    if (size_[at(a)] < size_[at(b)]) std::swap(a, b);
    parent_[at(b)] = a;
    size_[at(a)] += size_[at(b)];
    history_.push_back(b);
    --components_;
    return true;
  }
  void undo() {
    const int b = history_.back();
    history_.pop_back();
    if (b < 0) return;
    const int a = parent_[at(b)];
    size_[at(a)] -= size_[at(b)];
    parent_[at(b)] = b;
    ++components_;
  }
  int components() const { return components_; }

 private:
  std::vector<int> parent_, size_;
  std::vector<int> history_;
  int components_;
};

using BasicSet = std::pair<std::vector<Arc>, std::vector<int>>;

void collect_pruned(const Digraph& g, std::set<BasicSet>& out) {
  const int n = g.node_count();
  for_each_cycle_cover(g, [&](const CycleCover& cc) {
    std::vector<SplitArc> base, cand;
    for (int i = 1; i <= n; ++i) base.push_back(SplitArc::transit(i, cc.pi[at(i)]));
    for (const Arc& a : g.arcs()) {
      if (cc.pi[at(a.from)] != a.to) cand.push_back(SplitArc::transit(a.from, a.to));
    }
    for (int i = 2; i <= n; ++i) cand.push_back(SplitArc::internal(i));
    UndoUnionFind uf(2 * n);
    for (const auto& a : base) uf.unite(a.tail(), a.head());
    std::vector<SplitArc> chosen;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int cycles) {
      if (static_cast<int>(chosen.size()) == n) {
        if (uf.components() != 1) return;
        SplitSubgraph h{n, base};
        h.arcs.insert(h.arcs.end(), chosen.begin(), chosen.end());
        if (!is_good_spanning_augmented_tree(h)) return;
        BasicSet bs;
        for (const auto& a : h.arcs) {
          if (a.kind == SplitArcKind::Transit) {
            bs.first.push_back({a.i, a.j});
          } else {
            bs.second.push_back(a.i);
          }
        }
        std::sort(bs.first.begin(), bs.first.end());
        std::sort(bs.second.begin(), bs.second.end());
        out.insert(std::move(bs));
        return;
      }
      const std::size_t need = at(n) - chosen.size();
      for (std::size_t k = from; k + need <= cand.size(); ++k) {
        const bool merged = uf.unite(cand[k].tail(), cand[k].head());
        const int c = cycles + (merged ? 0 : 1);
        if (c <= 1) {
          chosen.push_back(cand[k]);
          rec(k + 1, c);
          chosen.pop_back();
        }
        uf.undo();
      }
    };
    rec(0, 0);
  });
}

void collect_all(const Digraph& g, std::set<BasicSet>& out) {
  const int n = g.node_count();
  const auto arcs = g.arcs();
  for (std::uint64_t ymask = 0; ymask < (std::uint64_t{1} << (n - 1)); ++ymask) {
    std::vector<int> Y;
    for (int i = 2; i <= n; ++i) {
      if ((ymask >> (i - 2)) & 1U) Y.push_back(i);
    }
    const std::size_t want = at(2 * n) - Y.size();
    if (want > arcs.size()) continue;
    std::vector<Arc> A;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (A.size() == want) {
        out.insert({A, Y});
        return;
      }
      for (std::size_t k = from; k + (want - A.size()) <= arcs.size(); ++k) {
        A.push_back(arcs[k]);
        rec(k + 1);
        A.pop_back();
      }
    };
    rec(0);
  }
}

}  // namespace

GraphCensus census_graph(const Digraph& g, const GraphCensusOptions& options) {
  const int n = g.node_count();
  const int bound = options.mode == GraphCensusMode::Oracle ? options.max_n_oracle : options.max_n;
  if (n > bound) {
    throw SizeGuardExceeded("graph census limited to n <= " + std::to_string(bound) + " in this mode (got n = " +
                            std::to_string(n) + ")");
  }
  std::set<BasicSet> sets;
  if (options.mode == GraphCensusMode::Pruned) {
    collect_pruned(g, sets);
  } else {
    collect_all(g, sets);
  }
  GraphCensus out;
  out.graph = g;
  const ConstraintSystem sys = build_system(g);
  for (const auto& [A, Y] : sets) {
    ++out.candidates;
    const auto fam = BasisFamily::solve(sys, A, Y);
    if (!fam) {
      ++out.singular;
      continue;
    }
    for (std::uint64_t mask = 0; mask < fam->split_count(); ++mask) {
      if (!fam->is_feasible(mask)) continue;
      const BasicSolution sol = fam->solution(mask);
      GraphCensusEntry e;
      e.basis = sol.basis;
      e.quasi_hamiltonian = is_quasi_hamiltonian(g, sol);
      e.structure = verify_structure(g, sol.basis, sol);
      out.feasible.push_back(std::move(e));
    }
  }
  std::sort(out.feasible.begin(), out.feasible.end(),
            [](const GraphCensusEntry& a, const GraphCensusEntry& b) { return a.basis < b.basis; });
  return out;
}

std::string write_graph_census_csv(const GraphCensus& c) {
  std::ostringstream os;
  os << "basis,quasi_hamiltonian,structure_ok\n";
  for (const auto& e : c.feasible) {
    os << "\"" << format_basis(e.basis) << "\"," << (e.quasi_hamiltonian ? "true" : "false") << ","
       << (e.structure.all() ? "true" : "false") << "\n";
  }
  os << "n,arcs,candidates,singular,feasible,quasi_hamiltonian,ratio\n";
  const auto r = c.ratio();
  os << c.graph.node_count() << "," << c.graph.arc_count() << "," << c.candidates << "," << c.singular << ","
     << c.feasible.size() << "," << c.quasi_hamiltonian_count() << "," << (r ? r->get_str() : "undefined") << "\n";
  return os.str();
}

GraphCensusRecord read_graph_census_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "basis,quasi_hamiltonian,structure_ok") {
    throw std::invalid_argument("missing graph census header");
  }
  auto parse_bool = [](const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw std::invalid_argument("expected true or false, got '" + v + "'");
  };
  GraphCensusRecord r;
  std::size_t k = 1;
  for (; k < lines.size() && lines[k] != "n,arcs,candidates,singular,feasible,quasi_hamiltonian,ratio"; ++k) {
    const std::string& line = lines[k];
    const auto close = line.find('"', 1);
    if (line.empty() || line[0] != '"' || close == std::string::npos || close + 1 >= line.size() ||
        line[close + 1] != ',') {
      throw std::invalid_argument("bad graph census row");
    }
    const auto f = split(line.substr(close + 2), ',');
    if (f.size() != 2) throw std::invalid_argument("bad graph census row");
    r.rows.push_back({parse_basis(line.substr(1, close - 1)), parse_bool(f[0]), parse_bool(f[1])});
  }
  if (k + 1 >= lines.size()) throw std::invalid_argument("missing graph census summary");
  const auto f = split(lines[k + 1], ',');
  if (f.size() != 7) throw std::invalid_argument("bad graph census summary");
  r.n = std::stoi(f[0]);
  r.arcs = parse_count(f[1]);
  r.candidates = parse_count(f[2]);
  r.singular = parse_count(f[3]);
  r.quasi_hamiltonian = parse_count(f[5]);
  if (f[6] != "undefined") r.ratio = parse_rational(f[6]);
  std::size_t qh = 0;
  for (const auto& row : r.rows) qh += row.quasi_hamiltonian ? 1 : 0;
  if (parse_count(f[4]) != r.rows.size() || qh != r.quasi_hamiltonian) {
    throw std::invalid_argument("graph census summary does not match its rows");
  }
  const std::optional<Rational> ratio =
      r.rows.empty() ? std::nullopt
                     : std::optional<Rational>(make_rational(static_cast<unsigned long>(qh),
                                                             static_cast<unsigned long>(r.rows.size())));
  if (ratio != r.ratio) throw std::invalid_argument("graph census ratio does not match its rows");
  return r;
}

std::optional<double> ConjectureSummary::stddev() const {
  if (!variance) return std::nullopt;
  return std::sqrt(variance->get_d());
}

ConjectureSummary conjecture_experiment(int n, const Rational& p, int samples, std::uint64_t seed, int threads,
                                        const GraphCensusOptions& options) {
  if (samples < 0) throw std::invalid_argument("negative sample count");
  if (n > options.max_n) {
    throw SizeGuardExceeded("graph census limited to n <= " + std::to_string(options.max_n));
  }
  ConjectureSummary out;
  out.n = n;
  out.p = p;
  out.seed = seed;
  std::mt19937_64 master(seed);
  std::vector<std::uint64_t> seeds(at(samples));
  for (auto& s : seeds) s = master();
  out.samples.resize(at(samples));
  parallel_for(seeds.size(), threads, [&](std::size_t k) {
    const Digraph g = random_graph(n, p, seeds[k]);
    const GraphCensus c = census_graph(g, options);
    ConjectureSample& s = out.samples[k];
    s.seed = seeds[k];
    s.arcs = g.arc_count();
    s.feasible = c.feasible.size();
    s.quasi_hamiltonian = c.quasi_hamiltonian_count();
    s.ratio = c.ratio();
  });
  Rational sum = 0;
  for (const auto& s : out.samples) {
    if (s.ratio) {
      ++out.defined;
      sum += *s.ratio;
    }
  }
  if (out.defined > 0) {
    out.mean = sum / Rational(static_cast<unsigned long>(out.defined));
    if (out.defined > 1) {
      Rational sq = 0;
      for (const auto& s : out.samples) {
        if (s.ratio) sq += (*s.ratio - *out.mean) * (*s.ratio - *out.mean);
      }
      out.variance = sq / Rational(static_cast<unsigned long>(out.defined - 1));
    }
  }
  return out;
}

namespace {

std::string fixed6(const std::optional<Rational>& r) {
  if (!r) return "undefined";
  // Exact half-up rounding to 6 decimals.
  const Rational scaled = *r * 1000000;
  Integer q = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  const bool neg = q < 0;
  if (neg) q = -q;
  const std::string digits = q.get_str();
  const std::string padded = std::string(digits.size() < 7 ? 7 - digits.size() : 0, '0') + digits;
  return (neg ? "-" : "") + padded.substr(0, padded.size() - 6) + "." + padded.substr(padded.size() - 6);
}

std::string fixed6(const std::optional<double>& d) {
  if (!d) return "undefined";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << *d;
  return os.str();
}

}  // namespace

std::string write_conjecture_csv(const ConjectureSummary& s) {
  std::ostringstream os;
  os << "sample,seed,arcs,feasible_bases,quasi_hamiltonian_bases,ratio\n";
  for (std::size_t k = 0; k < s.samples.size(); ++k) {
    const auto& x = s.samples[k];
    os << k << "," << x.seed << "," << x.arcs << "," << x.feasible << "," << x.quasi_hamiltonian << ","
       << (x.ratio ? x.ratio->get_str() : "undefined") << "\n";
  }
  os << "n,p,seed,samples,defined,mean_ratio,stddev_ratio\n";
  os << s.n << "," << s.p.get_str() << "," << s.seed << "," << s.samples.size() << "," << s.defined << ","
     << fixed6(s.mean) << "," << fixed6(s.stddev()) << "\n";
  return os.str();
}

ConjectureSummary read_conjecture_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "sample,seed,arcs,feasible_bases,quasi_hamiltonian_bases,ratio") {
    throw std::invalid_argument("missing conjecture header");
  }
  ConjectureSummary s;
  std::size_t k = 1;
  for (; k < lines.size() && lines[k] != "n,p,seed,samples,defined,mean_ratio,stddev_ratio"; ++k) {
    const auto f = split(lines[k], ',');
    if (f.size() != 6 || parse_count(f[0]) != s.samples.size()) throw std::invalid_argument("bad sample row");
    ConjectureSample x;
    x.seed = parse_count(f[1]);
    x.arcs = parse_count(f[2]);
    x.feasible = parse_count(f[3]);
    x.quasi_hamiltonian = parse_count(f[4]);
    if (f[5] != "undefined") x.ratio = parse_rational(f[5]);
    s.samples.push_back(x);
  }
  if (k + 1 >= lines.size()) throw std::invalid_argument("missing conjecture summary");
  const auto f = split(lines[k + 1], ',');
  if (f.size() != 7) throw std::invalid_argument("bad conjecture summary");
  s.n = std::stoi(f[0]);
  s.p = parse_rational(f[1]);
  s.seed = parse_count(f[2]);
  if (parse_count(f[3]) != s.samples.size()) throw std::invalid_argument("sample count mismatch");
  Rational sum = 0;
  for (const auto& x : s.samples) {
    if (x.ratio) {
      ++s.defined;
      sum += *x.ratio;
    }
  }
  if (parse_count(f[4]) != s.defined) throw std::invalid_argument("defined count mismatch");
  if (s.defined > 0) {
    s.mean = sum / Rational(static_cast<unsigned long>(s.defined));
    if (s.defined > 1) {
      Rational sq = 0;
      for (const auto& x : s.samples) {
        if (x.ratio) sq += (*x.ratio - *s.mean) * (*x.ratio - *s.mean);
      }
      s.variance = sq / Rational(static_cast<unsigned long>(s.defined - 1));
    }
  }
  if (f[5] != fixed6(s.mean) || f[6] != fixed6(s.stddev())) {
    throw std::invalid_argument("conjecture summary does not match its rows");
  }
  return s;
}

}  // namespace hamwedge
