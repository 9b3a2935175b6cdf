#pragma once

// Command-line front end. Exit codes: 0 success, 2 domain or validation
// error, 1 internal inconsistency.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "hjtoric/io.hpp"
#include "hjtoric/svg.hpp"

namespace hjtoric {

namespace detail {

/// HJTORIC_LOG: 0/quiet (default), 1/info, 2/debug.
inline int log_level() {
  const char* v = std::getenv("HJTORIC_LOG");
  if (!v) return 0;
  const std::string s(v);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path);
  buf << f.rdbuf();
  return buf.str();
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  f << text;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  const int verbosity = detail::log_level();
  auto log = [&](int level, const std::string& msg) {
    if (verbosity >= level) err << "[hjtoric] " << msg << '\n';
  };

  CLI::App app{"Hirzebruch-Jung resolutions, weighted blowups and the circle of reduced spaces", "hjtoric"};
  app.require_subcommand(1, 1);

  std::string r = "1", p = "1", q = "1", q1, q2, p1 = "1", p2 = "1", m, k, size = "1";
  std::string format = "json", input, out_path;
  unsigned scale = 40;
  bool oriented = false;

  auto* resolve = app.add_subcommand("resolve", "resolution chain of C^2/Z_r of type (p, q)");
  resolve->add_option("--r", r, "order")->required();
  resolve->add_option("--p", p, "first weight")->required();
  resolve->add_option("--q", q, "second weight")->required();

  auto* blowup = app.add_subcommand("blowup", "(p, q)-weighted blowup: chains, McDuff sequence, cross-check");
  blowup->add_option("--p", p)->required();
  blowup->add_option("--q", q)->required();
  blowup->add_option("--size", size, "blowup size, n/d");
  blowup->add_option("--format", format)->check(CLI::IsMember({"json", "svg"}));
  blowup->add_option("--scale", scale, "SVG units per lattice step")->check(CLI::PositiveNumber);
  blowup->add_option("--out", out_path);

  auto* equiv = app.add_subcommand("equiv", "compare two singularity types of the same order");
  equiv->add_option("--r", r)->required();
  equiv->add_option("--q1", q1)->required();
  equiv->add_option("--q2", q2)->required();
  equiv->add_option("--p1", p1);
  equiv->add_option("--p2", p2);
  equiv->add_flag("--oriented", oriented);

  auto* sig = app.add_subcommand("signature", "signature (b+, b-, b0) of a lattice JSON");
  sig->add_option("--input", input, "file or - for stdin")->required();

  auto* sim = app.add_subcommand("simulate", "run the circle simulator on a JSON input");
  sim->add_option("input", input, "file or - for stdin")->required();
  sim->add_option("--out", out_path);

  auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung expansion of m/k");
  hj->add_option("--m", m)->required();
  hj->add_option("--k", k)->required();

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (resolve->parsed()) {
      const CyclicSingularity s{parse_integer(r), parse_integer(p), parse_integer(q)};
      out << resolve_json(s, resolve_cyclic(s)).dump(2) << '\n';
    } else if (blowup->parsed()) {
      const Integer pi = parse_integer(p), qi = parse_integer(q);
      const Rational sz = parse_rational(size);
      CrossCheckReport rep = cross_check_report(pi, qi);
      rep.config = fulton_config(pi, qi, sz);
      log(1, "blowup: " + std::to_string(rep.sequence.cuts.size()) + " corner cuts");
      if (!rep.ok()) {
        err << "hjtoric: error: toric and iterated resolutions disagree for (" << p << ", " << q << ")\n";
        out << blowup_json(rep).dump(2) << '\n';
        return 1;
      }
      detail::write_output(out_path,
                           format == "svg" ? cut_diagram_svg(rep.sequence, scale) : blowup_json(rep).dump(2) + "\n",
                           out);
    } else if (equiv->parsed()) {
      const Integer ri = parse_integer(r);
      const CyclicSingularity a{ri, parse_integer(p1), parse_integer(q1)};
      const CyclicSingularity b{ri, parse_integer(p2), parse_integer(q2)};
      const json j = {{"r", integer_json(ri)},
                      {"oriented", oriented},
                      {"type_equivalent", type_equivalent(a, b, oriented)},
                      {"same_resolution", same_resolution(a, b)}};
      out << j.dump(2) << '\n';
    } else if (sig->parsed()) {
      const IntersectionLattice lat = lattice_from_json(parse_json(detail::read_input(input, in)));
      out << to_json(signature(lat)).dump(2) << '\n';
    } else if (sim->parsed()) {
      const SimulationInput si = simulation_from_json(parse_json(detail::read_input(input, in)));
      const SimulationResult res = run_loop(si.data, si.options);
      if (verbosity >= 2) {
        for (const auto& e : res.events) log(2, e);
      }
      log(1, res.message);
      detail::write_output(out_path, to_json(res).dump(2) + "\n", out);
    } else if (hj->parsed()) {
      out << hj_json(parse_integer(m), parse_integer(k)).dump(2) << '\n';
    }
  } catch (const ValidationError& e) {
    const json j = {{"error", "validation"}, {"problems", e.problems()}};
    err << j.dump(2) << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "hjtoric: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "hjtoric: internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), std::cin, std::cout, std::cerr);
}

}  // namespace hjtoric
