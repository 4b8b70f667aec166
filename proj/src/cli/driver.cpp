#include "fpsynt/driver.hpp"

#include "fpsynt/codegen.hpp"
#include "fpsynt/error.hpp"
#include "fpsynt/frontend.hpp"
#include "fpsynt/report.hpp"
#include "fpsynt/simulator.hpp"

#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

namespace fpsynt {

namespace fs = std::filesystem;

namespace {

// Failure carrying its exit code up to the command boundary.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitIo, "cannot read " + path.string()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Exit{kExitIo, "cannot write " + path.string()};
  out << text;
  if (!out) throw Exit{kExitIo, "error writing " + path.string()};
}

struct Synthesized {
  ParsedSpec spec;
  SynthesisPlan plan;
};

Synthesized synthesize(const fs::path& path, const RunConfig& config) {
  const int w = config.optimizer.width;
  if (w < kMinWidth || w > kMaxWidth) {
    throw Exit{kExitInvalid, "--width must be between " + std::to_string(kMinWidth) + " and " +
                                 std::to_string(kMaxWidth) + ", got " + std::to_string(w)};
  }
  const std::string source = read_file(path);
  Synthesized s;
  try {
    s.spec = parse_spec(source);
  } catch (const ParseError& e) {
    throw Exit{kExitInvalid, path.string() + ":" + e.what()};
  }
  if (auto diags = validate_formats(s.spec.bindings, kMaxWidth); !diags.empty()) {
    std::string msg;
    for (const Diagnostic& d : diags) {
      if (!msg.empty()) msg += "\n";
      msg += path.string() + ":" + std::to_string(d.line) + ": " + d.message;
    }
    throw Exit{kExitInvalid, msg};
  }
  spdlog::info("parsed {}: {} nodes", path.filename().string(), s.spec.dfg.size());
  try {
    s.plan = optimize(s.spec.dfg, s.spec.bindings, config.optimizer);
  } catch (const CannotFitError& e) {
    throw Exit{kExitCannotFit, std::string("cannot fit: ") + e.what()};
  }
  for (const std::string& warning : s.plan.warnings) spdlog::warn("{}", warning);
  spdlog::info("topology {} with bound {:.6e}", s.plan.topology.description, to_double(s.plan.output_bound));
  return s;
}

ReportContext report_context(const fs::path& spec, const RunConfig& config) {
  ReportContext ctx;
  ctx.spec_name = spec.filename().string();
  ctx.config = config.optimizer;
  if (config.emit_c) ctx.emit.push_back("c");
  if (config.emit_vhdl) ctx.emit.push_back("vhdl");
  return ctx;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Exit{kExitIo, "cannot create output directory " + dir.string()};
}

template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const Exit& e) {
    err << "fpsynt: " << e.message << "\n";
    return e.code;
  } catch (const EmitError& e) {
    err << "fpsynt: cannot fit: " << e.what() << "\n";
    return kExitCannotFit;
  } catch (const std::exception& e) {
    err << "fpsynt: internal error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int cmd_synth(const fs::path& spec, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Synthesized s = synthesize(spec, config);
    const std::string stem = spec.filename().string();
    std::optional<EmittedArtifact> c_src, vhdl_src;
    if (config.emit_c) c_src = emit_c(s.plan, s.spec.bindings, spec.stem().string());
    if (config.emit_vhdl) vhdl_src = emit_vhdl(s.plan, s.spec.bindings, spec.stem().string());
    const std::string report = make_report(s.plan, report_context(spec, config)).dump(2) + "\n";

    ensure_dir(config.output_dir);
    if (c_src) write_file(config.output_dir / (stem + ".c"), c_src->text);
    if (vhdl_src) write_file(config.output_dir / (stem + ".vhd"), vhdl_src->text);
    write_file(config.output_dir / "report.json", report);
    out << render_table(s.plan);
    return int{kExitOk};
  });
}

int cmd_simulate(const fs::path& spec, const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Synthesized s = synthesize(spec, config);
    std::vector<TestVector> vectors;
    std::string source;
    if (config.vectors) {
      std::ifstream in(*config.vectors);
      if (!in) throw Exit{kExitIo, "cannot read " + config.vectors->string()};
      try {
        vectors = read_vectors(in, s.spec.bindings);
      } catch (const VectorFileError& e) {
        throw Exit{kExitBadVectors, config.vectors->filename().string() + ": " + e.what()};
      }
      source = "file " + config.vectors->filename().string();
    } else {
      vectors = generate_vectors(s.spec.bindings, config.random_vectors, config.seed);
      source = "random " + std::to_string(config.random_vectors) + " seed " + std::to_string(config.seed);
    }
    const ErrorStats stats = compare(s.plan.graph, s.spec.bindings, s.spec.dfg, vectors);

    ReportContext ctx = report_context(spec, config);
    ctx.stats = stats;
    ctx.vector_source = source;
    ensure_dir(config.output_dir);
    write_file(config.output_dir / "report.json", make_report(s.plan, ctx).dump(2) + "\n");
    out << stats_json(stats).dump(2) << "\n";
    return int{kExitOk};
  });
}

}  // namespace fpsynt
