#pragma once

// Symbolic simulator for the circle of reduced spaces of an S^1 action whose
// fixed points have weights (p, q, -1) or (-p, -q, 1).
//
// Time runs on an absolute axis tau: tau = 0 at the base level lambda0 and
// every full loop adds 1, so a level at circle offset f (from lambda0) is
// crossed at tau = n - 1 + f in loop n. Crossing a +1 level installs a
// weighted blowup configuration; crossing a -1 level removes the matched one
// by weighted blowdown.
//
// Area of each E~ (per unit of slope/(pq)):
//   ordinary config   tent: min(tau - born, dies - tau)
//   partner stand-in  decreasing only: dies - tau
//   tracked class     increasing only: tau - born (independent mode)
// Chain classes carry a constant delta.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hjtoric/weighted_blowup.hpp"

namespace hjtoric {

struct FixedPointDatum {
  Rational level{0};
  int sign{1};
  Integer p{1};
  Integer q{1};
  /// Index (0-based) of the opposite-sign datum this one is paired with.
  std::optional<std::size_t> match;
  /// Order of the point the blowup is centered at; anything but 1 is unsupported.
  Integer center_order{1};
};

class ValidationError : public DomainError {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : DomainError(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& ps) {
    std::string out = "invalid fixed point data";
    for (const auto& p : ps) out += "; " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

enum class ValidationOutcome { ok, no_obstruction };

struct ValidationReport {
  ValidationOutcome outcome{ValidationOutcome::ok};
  /// partner[i] is the index of the datum matched with datum i.
  std::vector<std::size_t> partner;
};

namespace detail {

inline Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) q -= 1;
  return q;
}

/// x - floor(x), in [0, 1).
inline Rational frac(const Rational& x) {
  Integer f = floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
  return x - Rational(f);
}

inline std::string datum_name(std::size_t i, const FixedPointDatum& d) {
  return "#" + std::to_string(i) + " (" + to_string(d.level) + ", " + (d.sign > 0 ? "+" : "-") + ", " + d.p.str() +
         ", " + d.q.str() + ")";
}

}  // namespace detail

inline ValidationReport validate(const std::vector<FixedPointDatum>& data) {
  ValidationReport report;
  if (data.empty()) {
    report.outcome = ValidationOutcome::no_obstruction;
    return report;
  }
  std::vector<std::string> problems;
  const std::size_t n = data.size();

  bool has_plus = false, has_minus = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = data[i];
    const std::string name = detail::datum_name(i, d);
    if (d.sign != 1 && d.sign != -1) problems.push_back(name + ": sign must be +1 or -1");
    has_plus = has_plus || d.sign == 1;
    has_minus = has_minus || d.sign == -1;
    if (d.level < 0 || d.level >= 1) problems.push_back(name + ": level must lie in [0, 1)");
    try {
      validate_weights(d.p, d.q);
    } catch (const DomainError& e) {
      problems.push_back(name + ": " + e.what());
    }
    if (d.center_order < 1) problems.push_back(name + ": center order must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (data[j].level == d.level) problems.push_back("duplicate level " + to_string(d.level) + " at #" +
                                                       std::to_string(j) + " and #" + std::to_string(i));
    }
  }
  if (!has_plus || !has_minus) problems.push_back("need at least one +1 and one -1 fixed point");
  if (!problems.empty()) throw ValidationError(problems);

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  report.partner.assign(n, none);
  auto compatible = [&](std::size_t i, std::size_t j) {
    return data[i].sign == -data[j].sign && data[i].p == data[j].p && data[i].q == data[j].q;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!data[i].match) continue;
    const std::size_t j = *data[i].match;
    const std::string name = detail::datum_name(i, data[i]);
    if (j >= n) {
      problems.push_back(name + ": match index " + std::to_string(j) + " out of range");
    } else if (!compatible(i, j)) {
      problems.push_back("unmatched weights: " + name + " paired with " + detail::datum_name(j, data[j]));
    } else if (data[j].match && *data[j].match != i) {
      problems.push_back(name + ": pairing is not symmetric");
    } else if ((report.partner[i] != none && report.partner[i] != j) ||
               (report.partner[j] != none && report.partner[j] != i)) {
      problems.push_back(name + ": level paired twice");
    } else {
      report.partner[i] = j;
      report.partner[j] = i;
    }
  }
  if (!problems.empty()) throw ValidationError(problems);

  // FIFO among equal weights: k-th free + level with the k-th free - level.
  std::vector<std::size_t> by_level(n);
  for (std::size_t i = 0; i < n; ++i) by_level[i] = i;
  std::sort(by_level.begin(), by_level.end(), [&](auto a, auto b) { return data[a].level < data[b].level; });
  std::map<std::pair<Integer, Integer>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> free;
  for (std::size_t i : by_level) {
    if (report.partner[i] != none) continue;
    auto& slot = free[{data[i].p, data[i].q}];
    (data[i].sign > 0 ? slot.first : slot.second).push_back(i);
  }
  for (auto& [w, lists] : free) {
    auto& [plus, minus] = lists;
    const std::size_t m = std::min(plus.size(), minus.size());
    for (std::size_t k = 0; k < m; ++k) {
      report.partner[plus[k]] = minus[k];
      report.partner[minus[k]] = plus[k];
    }
    for (std::size_t k = m; k < plus.size(); ++k)
      problems.push_back("unmatched weights: " + detail::datum_name(plus[k], data[plus[k]]) + " has no -1 partner");
    for (std::size_t k = m; k < minus.size(); ++k)
      problems.push_back("unmatched weights: " + detail::datum_name(minus[k], data[minus[k]]) + " has no +1 partner");
  }
  if (!problems.empty()) throw ValidationError(problems);
  return report;
}

struct CoverInterval {
  std::string name;
  Rational lo;
  Rational hi;  // may exceed 1 for the interval that wraps

  bool contains(const Rational& x) const {
    const Rational y = lo + detail::frac(x - lo);
    return y > lo && y < hi;
  }
};

struct GeneralizedCover {
  Rational eps;
  std::vector<Rational> levels;  // sorted
  std::vector<CoverInterval> U;  // U[i] = (levels[i], levels[i+1])
  std::vector<CoverInterval> I;  // I[i] = (levels[i] - eps, levels[i] + eps)
  /// (I_name, U_name) for every relation I < U.
  std::vector<std::pair<std::string, std::string>> order;

  std::size_t multiplicity(const Rational& x) const {
    std::size_t m = 0;
    for (const auto& u : U) m += u.contains(x);
    for (const auto& i : I) m += i.contains(x);
    return m;
  }

  /// Largest number of sets over a point of the circle.
  std::size_t max_multiplicity() const {
    std::vector<Rational> cuts;
    for (const auto* set : {&U, &I}) {
      for (const auto& s : *set) {
        cuts.push_back(detail::frac(s.lo));
        cuts.push_back(detail::frac(s.hi));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::size_t best = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const Rational next = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + 1;
      best = std::max({best, multiplicity(cuts[i]), multiplicity((cuts[i] + next) / 2)});
    }
    return best;
  }
};

inline Rational min_level_gap(std::vector<Rational> levels) {
  if (levels.empty()) throw DomainError("no levels");
  std::sort(levels.begin(), levels.end());
  Rational gap = levels.front() + 1 - levels.back();
  for (std::size_t i = 1; i < levels.size(); ++i) gap = std::min(gap, levels[i] - levels[i - 1]);
  return gap;
}

inline GeneralizedCover build_cover(const std::vector<FixedPointDatum>& data, const Rational& eps) {
  if (data.empty()) throw DomainError("cover needs at least one level");
  if (eps <= 0) throw DomainError("eps must be positive");
  std::vector<Rational> levels;
  for (const auto& d : data) levels.push_back(d.level);
  std::sort(levels.begin(), levels.end());
  const Rational bound = min_level_gap(levels) / 2;
  if (eps >= bound) {
    throw DomainError("eps = " + to_string(eps) + " too large: triple intersections need eps < " + to_string(bound));
  }

  GeneralizedCover c;
  c.eps = eps;
  c.levels = levels;
  const std::size_t n = levels.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string k = std::to_string(i + 1);
    const Rational hi = i + 1 < n ? levels[i + 1] : levels[0] + 1;
    c.U.push_back({"U" + k, levels[i], hi});
    c.I.push_back({"I" + k, levels[i] - eps, levels[i] + eps});
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u : {i, (i + n - 1) % n}) {
      std::pair<std::string, std::string> rel{c.I[i].name, c.U[u].name};
      if (seen.insert(rel).second) c.order.push_back(rel);
    }
  }
  return c;
}

struct LiveConfig {
  std::size_t id{0};
  /// Index of the +1 datum that created (or would have created) it.
  std::size_t source{0};
  BlowupConfig config;
  /// nullopt for a stand-in that exists from the start on its decreasing branch.
  std::optional<Rational> born;
  /// nullopt for the independent tracked class.
  std::optional<Rational> dies;
  bool tracked{false};
  Rational slope{1};
};

struct OrbifoldBook {
  CyclicSingularity point;
  std::vector<std::string> labels;
  std::size_t config_id{0};
};

struct ReducedSpaceState {
  IntersectionLattice lattice;
  std::vector<OrbifoldBook> books;
  std::vector<LiveConfig> configs;
  Rational delta{1, 1000};
  std::size_t next_id{1};
};

struct SimulationSetup {
  std::vector<FixedPointDatum> data;
  std::vector<std::size_t> partner;
  Rational base{0};
  Rational slope{1};
  Rational delta{1, 1000};
  bool independent_tracked{true};

  /// Offset of a level from the base, in (0, 1).
  Rational offset(const Rational& level) const { return detail::frac(level - base); }
  /// Length of the counterclockwise arc from datum i to its partner.
  Rational arc_to_partner(std::size_t i) const { return detail::frac(data[partner[i]].level - data[i].level); }
};

inline Rational area_of_exceptional(const LiveConfig& c, const Rational& tau) {
  const Rational k = c.slope / Rational(c.config.p * c.config.q);
  if (c.born && tau < *c.born) throw DomainError("class " + c.config.exceptional + " absent before its creation");
  if (c.dies && tau > *c.dies) throw DomainError("class " + c.config.exceptional + " absent after its blowdown");
  if (c.born && c.dies) return k * std::min(tau - *c.born, *c.dies - tau);
  if (c.dies) return k * (*c.dies - tau);
  if (c.born) return k * (tau - *c.born);
  throw StructuralError("configuration without creation or blowdown time");
}

inline const LiveConfig* config_of(const ReducedSpaceState& s, const std::string& label) {
  for (const auto& c : s.configs) {
    const auto ls = c.config.labels();
    if (std::find(ls.begin(), ls.end(), label) != ls.end()) return &c;
  }
  return nullptr;
}

inline Rational area(const ReducedSpaceState& s, const std::string& label, const Rational& tau) {
  const LiveConfig* c = config_of(s, label);
  if (!c || !s.lattice.find(label)) throw DomainError("class " + label + " absent");
  if (label == c->config.exceptional) return area_of_exceptional(*c, tau);
  return s.delta;
}

inline std::size_t exceptional_count(const IntersectionLattice& lat) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < lat.size(); ++i) n += lat.is_exceptional(i);
  return n;
}

namespace detail {

inline ReducedSpaceState install(ReducedSpaceState s, const SimulationSetup& setup, std::size_t source,
                                 std::optional<Rational> born, std::optional<Rational> dies, bool tracked) {
  const FixedPointDatum& d = setup.data[source];
  const std::size_t id = s.next_id++;
  BlowupConfig cfg = fulton_config_at({d.center_order, 1, 1}, d.p, d.q, setup.slope / Rational(d.p * d.q),
                                      "c" + std::to_string(id) + ":");
  s.lattice = install_config(s.lattice, cfg);
  if (cfg.p > 1) s.books.push_back({{cfg.p, 1, cfg.p - cfg.q}, cfg.chain_p.labels, id});
  if (cfg.q > 1) s.books.push_back({{cfg.q, 1, mod(cfg.q - cfg.p, cfg.q)}, cfg.chain_q.labels, id});
  s.configs.push_back({id, source, std::move(cfg), std::move(born), std::move(dies), tracked, setup.slope});
  return s;
}

}  // namespace detail

/// Checks every book entry against the lattice: the stored classes must form
/// the resolution chain of the point (in either direction).
inline void check_books(const ReducedSpaceState& s) {
  for (const auto& b : s.books) {
    const Chain expected = resolve_cyclic(b.point).chain;
    if (expected.size() != b.labels.size()) throw ModelInconsistency("orbifold book size mismatch");
    std::vector<std::size_t> idx;
    for (const auto& l : b.labels) {
      auto i = s.lattice.find(l);
      if (!i) throw ModelInconsistency("orbifold book class " + l + " missing from lattice");
      idx.push_back(*i);
    }
    auto matches = [&](bool rev) {
      const std::size_t n = idx.size();
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t c = 0; c < n; ++c) {
          const std::size_t ea = rev ? n - 1 - a : a, ec = rev ? n - 1 - c : c;
          if (s.lattice.pairing(idx[a], idx[c]) != expected.pairing(ea, ec)) return false;
        }
      }
      return true;
    };
    if (!matches(false) && !matches(true)) {
      throw ModelInconsistency("orbifold point of order " + b.point.order.str() + " does not match its chain");
    }
  }
}

/// Every present class has positive area at a regular time.
inline void check_areas(const ReducedSpaceState& s, const Rational& tau) {
  if (s.delta <= 0) throw ModelInconsistency("chain class area must be positive");
  for (const auto& c : s.configs) {
    if (area_of_exceptional(c, tau) <= 0) {
      throw ModelInconsistency("class " + c.config.exceptional + " has nonpositive area at tau = " + to_string(tau));
    }
  }
}

/// Crosses the critical level of datum `index` at time tau, counterclockwise.
inline ReducedSpaceState cross_level(const ReducedSpaceState& state, const SimulationSetup& setup, std::size_t index,
                                     const Rational& tau, bool create_tracked = false) {
  const FixedPointDatum& d = setup.data.at(index);
  if (d.sign > 0) {
    std::optional<Rational> dies = tau + setup.arc_to_partner(index);
    if (create_tracked && setup.independent_tracked) dies.reset();
    return detail::install(state, setup, index, tau, dies, create_tracked);
  }

  const std::size_t source = setup.partner.at(index);
  auto it = std::find_if(state.configs.begin(), state.configs.end(),
                         [&](const LiveConfig& c) { return c.source == source && c.dies && *c.dies == tau; });
  if (it == state.configs.end()) {
    throw ModelInconsistency("no configuration of vanishing area to blow down at level " + to_string(d.level));
  }
  if (it->tracked) {
    throw ModelInconsistency("tracked class destroyed at level " + to_string(d.level) +
                             ": its creation level is paired with this blowdown");
  }
  if (area_of_exceptional(*it, tau) != 0) throw ModelInconsistency("blowdown of a class with nonzero area");

  ReducedSpaceState next = state;
  const std::size_t id = it->id;
  next.lattice = weighted_blowdown(state.lattice, it->config).lattice;
  std::erase_if(next.configs, [&](const LiveConfig& c) { return c.id == id; });
  std::erase_if(next.books, [&](const OrbifoldBook& b) { return b.config_id == id; });
  return next;
}

/// Midpoint of the longest critical-free arc; ties go to an arc that ends at
/// a +1 level, then to the lowest start.
inline Rational default_base(const std::vector<FixedPointDatum>& data) {
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return data[a].level < data[b].level; });
  std::optional<Rational> best_len, best_mid;
  bool best_plus = false;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const FixedPointDatum& a = data[order[k]];
    const FixedPointDatum& b = data[order[(k + 1) % order.size()]];
    const Rational len = order.size() == 1 ? Rational(1) : detail::frac(b.level - a.level);
    const bool plus = b.sign > 0;
    if (!best_len || len > *best_len || (len == *best_len && plus && !best_plus)) {
      best_len = len;
      best_mid = detail::frac(a.level + len / 2);
      best_plus = plus;
    }
  }
  return *best_mid;
}

/// Configurations alive at tau = 0, and the +1 datum whose first crossing
/// creates the tracked class.
inline std::pair<ReducedSpaceState, std::size_t> initial_state(const SimulationSetup& setup) {
  ReducedSpaceState s;
  s.delta = setup.delta;
  std::optional<std::size_t> tracked;
  for (std::size_t i = 0; i < setup.data.size(); ++i) {
    if (setup.data[i].sign < 0) continue;
    if (!tracked || setup.offset(setup.data[i].level) < setup.offset(setup.data[*tracked].level)) tracked = i;
  }
  if (!tracked) throw DomainError("no +1 level to track");

  for (std::size_t i = 0; i < setup.data.size(); ++i) {
    if (setup.data[i].sign < 0) continue;
    const Rational c = setup.offset(setup.data[i].level);
    const Rational d = setup.offset(setup.data[setup.partner[i]].level);
    if (d < c) s = detail::install(std::move(s), setup, i, c - 1, d, false);
  }
  if (setup.independent_tracked) {
    const Rational t = setup.offset(setup.data[*tracked].level);
    s = detail::install(std::move(s), setup, *tracked, std::nullopt, t + setup.arc_to_partner(*tracked), false);
  }
  return {s, *tracked};
}

enum class Verdict { hamiltonian, no_obstruction, inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::hamiltonian: return "HAMILTONIAN";
    case Verdict::no_obstruction: return "NO_OBSTRUCTION";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "";
}

struct SimulationOptions {
  std::size_t loops{5};
  std::optional<Integer> bound;
  std::optional<Rational> eps;
  std::optional<Rational> base;
  Rational slope{1};
  std::optional<Rational> delta;
  bool independent_tracked{true};
};

struct SimulationResult {
  Verdict verdict{Verdict::no_obstruction};
  std::string message;
  std::vector<Rational> ledger;
  std::optional<std::size_t> loop_of_contradiction;
  Integer bound{0};
  Rational base{0};
  Rational eps{0};
  GeneralizedCover cover;
  std::string tracked_class;
  std::vector<std::string> events;
  /// Lattice at tau = 0, 1, 2, ...
  std::vector<IntersectionLattice> loop_lattices;
  IntersectionLattice final_lattice;
};

inline SimulationResult run_loop(const std::vector<FixedPointDatum>& data, const SimulationOptions& opt = {}) {
  SimulationResult out;
  const ValidationReport report = validate(data);
  if (report.outcome == ValidationOutcome::no_obstruction) {
    out.message = "NO OBSTRUCTION: empty fixed point set";
    return out;
  }
  if (opt.loops < 1) throw DomainError("loops must be positive");
  if (opt.slope <= 0) throw DomainError("slope must be positive");

  std::vector<Rational> levels;
  for (const auto& d : data) levels.push_back(d.level);
  const Rational gap = min_level_gap(levels);
  out.eps = opt.eps.value_or(gap / 4);
  out.cover = build_cover(data, out.eps);

  SimulationSetup setup{data, report.partner, opt.base.value_or(default_base(data)), opt.slope,
                        opt.delta.value_or(gap / 1000), opt.independent_tracked};
  if (setup.base < 0 || setup.base >= 1) throw DomainError("base level must lie in [0, 1)");
  for (const auto& d : data) {
    if (d.level == setup.base) throw DomainError("base level must not be critical");
  }
  out.base = setup.base;

  auto [state, tracked_source] = initial_state(setup);
  check_books(state);
  check_areas(state, 0);
  out.bound = opt.bound.value_or(Integer(std::max<std::size_t>(1, exceptional_count(state.lattice))));
  if (out.bound < 1) throw DomainError("bound must be positive");
  out.loop_lattices.push_back(state.lattice);

  std::vector<std::size_t> events(data.size());
  for (std::size_t i = 0; i < events.size(); ++i) events[i] = i;
  std::sort(events.begin(), events.end(),
            [&](auto a, auto b) { return setup.offset(data[a].level) < setup.offset(data[b].level); });

  std::optional<std::size_t> tracked_id;
  std::set<Rational> distinct;
  for (std::size_t loop = 1; loop <= opt.loops; ++loop) {
    for (std::size_t k = 0; k < events.size(); ++k) {
      const std::size_t i = events[k];
      const Rational tau = Rational(loop - 1) + setup.offset(data[i].level);
      const bool make_tracked = loop == 1 && i == tracked_source;
      state = cross_level(state, setup, i, tau, make_tracked);
      if (make_tracked) {
        tracked_id = state.configs.back().id;
        out.tracked_class = state.configs.back().config.exceptional;
      }
      out.events.push_back("loop " + std::to_string(loop) + " " + detail::datum_name(i, data[i]) + " at tau " +
                           to_string(tau) + ": " + std::to_string(state.lattice.size()) + " classes");
      const Rational next = k + 1 < events.size() ? Rational(loop - 1) + setup.offset(data[events[k + 1]].level)
                                                  : Rational(loop);
      check_areas(state, (tau + next) / 2);
      check_books(state);
    }
    out.loop_lattices.push_back(state.lattice);
    auto tracked = std::find_if(state.configs.begin(), state.configs.end(),
                                [&](const LiveConfig& c) { return tracked_id && c.id == *tracked_id; });
    if (tracked == state.configs.end()) throw ModelInconsistency("tracked class destroyed");
    out.ledger.push_back(area_of_exceptional(*tracked, Rational(loop)));
    distinct.insert(out.ledger.back());
    if (Integer(distinct.size()) > out.bound) {
      out.verdict = Verdict::hamiltonian;
      out.loop_of_contradiction = loop;
      out.message = "HAMILTONIAN (contradiction at loop " + std::to_string(loop) + "): " +
                    std::to_string(distinct.size()) + " distinct areas of the tracked exceptional class exceed the bound " +
                    out.bound.str() + " on exceptional classes when b2+ > 1, so b2+ = 1 at a regular level";
      break;
    }
  }
  if (out.verdict != Verdict::hamiltonian) {
    out.verdict = Verdict::inconclusive;
    out.message = "INCONCLUSIVE: bound " + out.bound.str() + " not exceeded after " + std::to_string(opt.loops) + " loops";
  }
  out.final_lattice = state.lattice;
  return out;
}

}  // namespace hjtoric
