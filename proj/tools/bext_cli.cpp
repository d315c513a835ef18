/* SPDX-License-Identifier: Apache-2.0 */

// bext: generate harness inputs, run the boundary-extension algorithms, verify
// configurations and render SVG diagnostics.

#include "bext/errors.hpp"
#include "bext/harness.hpp"
#include "bext/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace {

using namespace bext;
namespace fs = std::filesystem;

enum Exit { ok = 0, schema = 1, capability = 2, inconsistency = 3 };

struct InputPaths {
  std::string dir;
  std::string phi, boundary, ulac;

  void add(CLI::App* cmd) {
    cmd->add_option("--in", dir, "Directory holding phi.approx, boundary.approx and ulac.approx");
    cmd->add_option("--phi", phi, "Function approximation file (overrides --in)");
    cmd->add_option("--boundary", boundary, "Boundary cover file (overrides --in)");
    cmd->add_option("--ulac", ulac, "ULAC approximation file (overrides --in)");
  }

  std::string resolve(const std::string& explicit_path, const char* name) const {
    if (!explicit_path.empty()) return explicit_path;
    if (dir.empty()) throw SchemaError(std::string("no path for ") + name + " (use --in or an explicit flag)");
    return (fs::path(dir) / name).string();
  }

  AlgorithmInputs load() const {
    return AlgorithmInputs{io::read_phi(io::read_file(resolve(phi, "phi.approx"))),
                           io::read_boundary(io::read_file(resolve(boundary, "boundary.approx"))),
                           io::read_ulac(io::read_file(resolve(ulac, "ulac.approx")))};
  }
};

std::string exact_rect(const RationalRect& r) {
  return "[" + r.x_lo().str() + ", " + r.x_hi().str() + "] x [" + r.y_lo().str() + ", " + r.y_hi().str() + "]";
}

Integer parse_integer(const std::string& s) {
  const Rational q = Rational::parse(s);
  if (q.den() != 1) throw SchemaError("expected an integer, got " + s);
  return q.num();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_file(out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous enclosures of boundary-extension values of conformal maps"};
  app.require_subcommand(1);

  // gen
  std::string map_name = "identity", out;
  long resolution = 4, ulac_length = 16;
  auto* gen = app.add_subcommand("gen", "Write phi.approx, boundary.approx and ulac.approx for a test map");
  gen->add_option("--map", map_name, "identity | quad:NUM/DEN")->required();
  gen->add_option("--resolution", resolution, "Resolution n >= 1")->check(CLI::PositiveNumber);
  gen->add_option("--ulac-length", ulac_length, "Number of ULAC values")->check(CLI::PositiveNumber);
  gen->add_option("--out", out, "Output directory")->required();

  // point
  std::string px = "1", py = "0";
  long point_res = 4;
  auto* point = app.add_subcommand("point", "Write a point.approx: a square of side 2^-n centred at (x, y)");
  point->add_option("--x", px, "Rational x coordinate");
  point->add_option("--y", py, "Rational y coordinate");
  point->add_option("--resolution", point_res, "Side exponent n")->check(CLI::PositiveNumber);
  point->add_option("--out", out, "Output file (default stdout)");

  // build-config
  InputPaths inputs;
  std::string k1s = "2", k2s = "4";
  auto* build = app.add_subcommand("build-config", "Assemble the guided configuration for (k1, k2) from a test map");
  build->add_option("--map", map_name, "Map the inputs were generated from")->required();
  inputs.add(build);
  build->add_option("--k1", k1s, "s0 = 1/k1");
  build->add_option("--k2", k2s, "r0 = 1 - 1/k2");
  build->add_option("--out", out, "Output file (default stdout)");

  // run
  std::string point_file, config_file, mode = "guided";
  long max_chain_len = 6, precision = 20;
  bool run_has_map = false;
  auto* run = app.add_subcommand("run", "Run Algorithm 3 and print the output rectangle and report");
  inputs.add(run);
  run->add_option("--point", point_file, "point.approx file")->required();
  run->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"guided", "exhaustive"}));
  run->add_option("--map", map_name, "Test map used to guide candidate construction (guided mode)");
  run->add_option("--config", config_file, "Explicit candidate configuration");
  run->add_option("--max-chain-len", max_chain_len, "Witnessing chains per arc chain")->check(CLI::PositiveNumber);
  run->add_option("--precision", precision, "Enclosure parameter k")->check(CLI::PositiveNumber);
  run->add_option("--out", out, "Write the JSON report here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a configuration clause by clause; exit 0 iff all pass");
  inputs.add(verify);
  verify->add_option("--config", config_file, "Configuration file")->required();
  verify->add_option("--precision", precision, "Enclosure parameter k")->check(CLI::PositiveNumber);

  // plot
  std::string output_file;
  auto* plot = app.add_subcommand("plot", "Render covers, chains and an output rectangle to SVG");
  inputs.add(plot);
  plot->add_option("--config", config_file, "Optional configuration file");
  plot->add_option("--report", output_file, "Optional run.report whose output rectangle is drawn");
  plot->add_option("--out", out, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : schema;
  }
  run_has_map = run->count("--map") > 0;

  try {
    if (*gen) {
      const GroundTruth gt(AnalyticTestMap::parse(map_name), resolution);
      const AlgorithmInputs in = generate_inputs(gt, ulac_length);
      fs::create_directories(out);
      io::write_file((fs::path(out) / "phi.approx").string(), io::write_phi(in.phi));
      io::write_file((fs::path(out) / "boundary.approx").string(), io::write_boundary(in.bd));
      io::write_file((fs::path(out) / "ulac.approx").string(), io::write_ulac(in.g));
      std::cout << "wrote " << in.phi.pairs.size() << " pairs, " << in.bd.rects.size() << " boundary rects, "
                << in.g.values.size() << " ULAC values to " << out << "\n";
    } else if (*point) {
      const Rational x = Rational::parse(px), y = Rational::parse(py), h = Rational::pow2(-point_res - 1);
      emit(out, io::write_point(PointApprox{RationalRect(x - h, x + h, y - h, y + h)}));
    } else if (*build) {
      const AnalyticTestMap map = AnalyticTestMap::parse(map_name);
      const GuidedResult r = build_guided_configuration(map, inputs.load(), parse_integer(k1s), parse_integer(k2s));
      for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
      for (const auto& c : r.clauses) std::cerr << (c.passed ? "ok   " : "FAIL ") << c.name << " " << c.detail << "\n";
      if (!r.attempt) throw CapabilityError("no configuration could be assembled");
      emit(out, io::write_config(*r.attempt));
      return r.config ? ok : capability;
    } else if (*run) {
      const AlgorithmInputs in = inputs.load();
      const PointApprox p = io::read_point(io::read_file(point_file));
      SearchBudget budget;
      budget.mode = mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::guided;
      budget.max_chain_length = max_chain_len;
      if (!config_file.empty()) budget.candidates.push_back(io::read_config(io::read_file(config_file)));
      if (budget.mode == SearchMode::guided && run_has_map) budget.guide = make_guide(AnalyticTestMap::parse(map_name));
      AlgorithmOptions opt;
      opt.precision = precision;
      const auto t0 = std::chrono::steady_clock::now();
      const RunReport rep = algorithm3(in, p, budget, opt);
      const long ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "output (exact):   " << exact_rect(rep.output_rect) << "\n"
                << "output (decimal): " << io::decimal_rect(rep.output_rect) << "  (not authoritative)\n"
                << "configurations found: " << rep.configurations_found << (rep.fallback ? "  [fallback]" : "")
                << (rep.fast_path ? "  [fast path]" : "") << "\n";
      emit(out, io::write_report(rep, ms));
    } else if (*verify) {
      const AlgorithmInputs in = inputs.load();
      const Configuration c = io::read_config(io::read_file(config_file));
      const Constants k = derive_constants(in);
      ClauseLog log;
      const bool all = check_configuration(in, k.k0, k.N0, c, &log, precision);
      for (const auto& cl : log) std::cout << (cl.passed ? "PASS " : "FAIL ") << cl.name << " " << cl.detail << "\n";
      std::cout << (all ? "configuration verified\n" : "configuration rejected\n");
      return all ? ok : capability;
    } else if (*plot) {
      const AlgorithmInputs in = inputs.load();
      std::optional<Configuration> c;
      if (!config_file.empty()) c = io::read_config(io::read_file(config_file));
      std::optional<RationalRect> o;
      if (!output_file.empty()) o = io::read_report_output(io::read_file(output_file));
      io::PlotScene scene{&in.phi, &in.bd, c ? &*c : nullptr, o ? &*o : nullptr};
      io::write_file(out, io::render_svg(scene));
    }
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return schema;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return inconsistency;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return capability;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return capability;
  }
  return ok;
}
