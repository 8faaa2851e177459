// Command-line front end for the plan generators and the verifier.

#include "haken/io.hpp"
#include "haken/verify.hpp"

#include "CLI11.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace haken;

namespace {

struct Options {
  std::string out;
  std::string format = "json";
  std::string chart = "lantern3";
  bool strict = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

// A built-in chart name or the path of a chart file.
ChartPtr load_chart(const std::string& name_or_path, ChartRegistry& registry) {
  if (ChartRegistry::is_builtin_name(name_or_path)) return registry.resolve(name_or_path);
  ChartPtr chart = read_chart(read_file(name_or_path));
  registry.add(chart);
  return chart;
}

bool looks_like_matrix(const std::string& text) {
  return text.find_first_of(" \t") != std::string::npos &&
         text.find_first_not_of("0123456789-+ \t") == std::string::npos;
}

std::string join_labels(const Plan& plan) {
  std::string out;
  for (std::size_t i = 0; i < plan.target.size(); ++i) {
    if (i) out += ",";
    out += to_string(plan.target[i]);
  }
  return out.empty() ? "none" : out;
}

std::string status_word(const VerificationReport& r, bool strict) {
  if (!r.passed(strict)) return strict && r.status == Status::PassNecessaryOnly ? "pass-necessary-only" : "fail";
  return "pass";
}

int emit_plan(const Plan& plan, const Options& opt) {
  if (!opt.out.empty()) write_file(opt.out, opt.format == "dot" ? plan_to_dot(plan) : write_plan(plan));
  const VerificationReport report = verify(plan);
  std::cout << "blocks=" << plan.flat_block_count() << " gluings=" << plan.gluings.size()
            << " residual=" << join_labels(plan) << " verify=" << status_word(report, opt.strict) << "\n";
  if (!report.passed(opt.strict)) {
    std::cerr << report.str(plan);
    return 1;
  }
  return 0;
}

int cmd_factor(const std::string& text) {
  const Mat2 m = parse_matrix<Integer>(text);
  const TorusTwistWord w = factor(m);
  const bool ok = eval_torus_word(w) == m;
  std::cout << w.str() << "\n" << "round-trip " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_reduce(const std::string& word, const Options& opt) {
  ChartRegistry registry;
  const ChartPtr chart = load_chart(opt.chart, registry);
  std::cout << reduce(*chart, TwistWord::parse(word)).str() << "\n";
  return 0;
}

int cmd_plan_torus(const std::string& arg, const Options& opt) {
  const TorusTwistWord w = looks_like_matrix(arg) ? factor(parse_matrix<Integer>(arg)) : TorusTwistWord::parse(arg);
  return emit_plan(plan_torus_bundle(w), opt);
}

int cmd_plan_surface(const std::string& word, const Options& opt) {
  ChartRegistry registry;
  const ChartPtr chart = load_chart(opt.chart, registry);
  return emit_plan(plan_surface_bundle(chart, TwistWord::parse(word)), opt);
}

int cmd_plan_cobordism(const std::string& first, const std::string& second, const Options& opt) {
  ChartRegistry registry;
  if (opt.chart != "lantern3") load_chart(opt.chart, registry);
  const MoveSequence seq = read_move_sequence(read_file(first), &registry);
  std::optional<MoveSequence> other;
  if (!second.empty()) other = read_move_sequence(read_file(second), &registry);
  return emit_plan(plan_cobordism(seq, other, registry), opt);
}

int cmd_verify(const std::string& path, const Options& opt) {
  ChartRegistry registry;
  if (opt.chart != "lantern3") load_chart(opt.chart, registry);
  const Plan plan = read_plan(read_file(path), registry);
  const VerificationReport report = verify(plan);
  std::cout << report.str(plan);
  if (!report.passed(opt.strict)) {
    std::cerr << "verify: " << status_word(report, opt.strict) << "\n";
    for (const auto& d : report.diagnostics) std::cerr << "  " << d << "\n";
    return 1;
  }
  return 0;
}

int cmd_export_dot(const std::string& path, const Options& opt) {
  ChartRegistry registry;
  if (opt.chart != "lantern3") load_chart(opt.chart, registry);
  const std::string dot = plan_to_dot(read_plan(read_file(path), registry));
  if (opt.out.empty()) {
    std::cout << dot;
  } else {
    write_file(opt.out, dot);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haken cobordism plans: build, verify and export assembly certificates"};
  app.require_subcommand(1, 1);

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Output file");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    sub->add_option("--chart", opt.chart, "Built-in chart name or chart file");
    sub->add_flag("--strict", opt.strict, "Treat necessary-only witnesses as failures");
  };

  std::string arg1, arg2;
  auto* factor_cmd = app.add_subcommand("factor", "Factor a matrix 'a b c d' into L/R letters");
  factor_cmd->add_option("matrix", arg1)->required();
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a Dehn twist word on a chart");
  reduce_cmd->add_option("word", arg1)->required();
  auto* torus_cmd = app.add_subcommand("plan-torus", "Plan bounding a torus bundle (word or matrix)");
  torus_cmd->add_option("monodromy", arg1)->required();
  auto* surface_cmd = app.add_subcommand("plan-surface", "Plan bounding a surface bundle");
  surface_cmd->add_option("word", arg1)->required();
  auto* cob_cmd = app.add_subcommand("plan-cobordism", "Plan from one or two move-sequence files");
  cob_cmd->add_option("sequence", arg1)->required();
  cob_cmd->add_option("other", arg2);
  auto* verify_cmd = app.add_subcommand("verify", "Verify a plan file");
  verify_cmd->add_option("plan", arg1)->required();
  auto* dot_cmd = app.add_subcommand("export-dot", "Write a plan file as a DOT graph");
  dot_cmd->add_option("plan", arg1)->required();
  for (auto* sub : {factor_cmd, reduce_cmd, torus_cmd, surface_cmd, cob_cmd, verify_cmd, dot_cmd}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*factor_cmd) return cmd_factor(arg1);
    if (*reduce_cmd) return cmd_reduce(arg1, opt);
    if (*torus_cmd) return cmd_plan_torus(arg1, opt);
    if (*surface_cmd) return cmd_plan_surface(arg1, opt);
    if (*cob_cmd) return cmd_plan_cobordism(arg1, arg2, opt);
    if (*verify_cmd) return cmd_verify(arg1, opt);
    if (*dot_cmd) return cmd_export_dot(arg1, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
