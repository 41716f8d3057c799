#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chlang/desugar.hpp"
#include "chlang/engine.hpp"
#include "chlang/parser.hpp"
#include "chlang/report.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDepthExceeded = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report_parse_error(const std::string& path, const chlang::ParseError& e) {
  std::cerr << path << ":" << e.pos.line << ":" << e.pos.column << ": error: "
            << e.message << "\n";
}

nlohmann::json trace_event_json(const chlang::TraceEvent& ev) {
  nlohmann::json j;
  j["kind"] = ev.kind == chlang::TraceEvent::Kind::Enter ? "enter" : "exit";
  j["rule"] = ev.rule;
  j["stmt"] = ev.stmt;
  j["depth"] = ev.depth;
  if (ev.outcome) j["outcome"] = *ev.outcome;
  return j;
}

struct RunOutput {
  chlang::RunReport report;
  bool aborted = false;
};

std::optional<RunOutput> run_goal(chlang::Program program,
                                  const std::string& goal_text,
                                  int max_depth, std::ostream* trace_out) {
  auto goal = chlang::parse_goal(goal_text);
  if (auto* err = std::get_if<chlang::ParseError>(&goal)) {
    report_parse_error("<goal>", *err);
    return std::nullopt;
  }
  chlang::ExecConfig cfg;
  cfg.max_depth = max_depth;
  if (trace_out) {
    cfg.trace_sink = [trace_out](const chlang::TraceEvent& ev,
                                 const chlang::State&) {
      *trace_out << trace_event_json(ev).dump() << "\n";
    };
  }
  chlang::RunResult r =
      chlang::run(program, std::get<chlang::StmtPtr>(goal), cfg);
  RunOutput out;
  out.report = chlang::make_report(r.outcome, program.state, r.steps);
  out.aborted = r.outcome.aborted;
  return out;
}

int cmd_run(const std::string& file, const std::string& goal_text,
            const std::string& state_text, const std::string& trace_path,
            int max_depth) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << "error: cannot read " << file << "\n";
    return kExitParseError;
  }
  auto parsed = chlang::parse_program(*text);
  if (auto* err = std::get_if<chlang::ParseError>(&parsed)) {
    report_parse_error(file, *err);
    return kExitParseError;
  }
  chlang::Program program = std::move(std::get<chlang::Program>(parsed));

  if (!state_text.empty()) {
    auto bindings = chlang::parse_state_bindings(state_text);
    if (auto* err = std::get_if<chlang::ParseError>(&bindings)) {
      report_parse_error("<state>", *err);
      return kExitParseError;
    }
    for (auto& [name, value] :
         std::get<std::vector<std::pair<std::string, chlang::Value>>>(bindings)) {
      program.state.set(name, value);
    }
  }

  std::ofstream trace_file;
  std::ostream* trace_out = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path, std::ios::binary);
    if (!trace_file) {
      std::cerr << "error: cannot write " << trace_path << "\n";
      return kExitParseError;
    }
    trace_out = &trace_file;
  }

  auto out = run_goal(std::move(program), goal_text, max_depth, trace_out);
  if (!out) return kExitParseError;
  std::cout << chlang::render_report(out->report);
  if (out->report.success) return kExitSuccess;
  return out->aborted ? kExitDepthExceeded : kExitFailure;
}

int cmd_translate(const std::string& input, const std::string& output) {
  auto text = read_file(input);
  if (!text) {
    std::cerr << "error: cannot read " << input << "\n";
    return kExitParseError;
  }
  auto parsed = chlang::parse_sugar_program(*text);
  if (auto* err = std::get_if<chlang::ParseError>(&parsed)) {
    report_parse_error(input, *err);
    return kExitParseError;
  }
  chlang::Program program =
      chlang::desugar_program(std::get<std::vector<chlang::SugarDefn>>(parsed));
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output << "\n";
    return kExitParseError;
  }
  out << chlang::print_program(program);
  return kExitSuccess;
}

int cmd_check(const std::string& file_a, const std::string& file_b,
              const std::vector<std::string>& goals, int max_depth) {
  chlang::Program programs[2];
  const std::string* paths[2] = {&file_a, &file_b};
  for (int i = 0; i < 2; ++i) {
    auto text = read_file(*paths[i]);
    if (!text) {
      std::cerr << "error: cannot read " << *paths[i] << "\n";
      return kExitParseError;
    }
    auto parsed = chlang::parse_program(*text);
    if (auto* err = std::get_if<chlang::ParseError>(&parsed)) {
      report_parse_error(*paths[i], *err);
      return kExitParseError;
    }
    programs[i] = std::move(std::get<chlang::Program>(parsed));
  }

  for (const std::string& goal : goals) {
    RunOutput outs[2];
    for (int i = 0; i < 2; ++i) {
      auto out = run_goal(programs[i], goal, max_depth, nullptr);
      if (!out) return kExitParseError;
      outs[i] = std::move(*out);
    }
    bool agree = outs[0].report.success == outs[1].report.success &&
                 outs[0].report.final_state == outs[1].report.final_state;
    if (!agree) {
      std::cout << "DIVERGE on goal: " << goal << "\n";
      std::cout << "--- " << file_a << "\n" << chlang::render_report(outs[0].report);
      std::cout << "--- " << file_b << "\n" << chlang::render_report(outs[1].report);
      return kExitFailure;
    }
  }
  std::cout << "OK: " << goals.size() << " goal(s) agree\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chi - interpreter and translator for the choose language"};
  app.require_subcommand(1);

  std::string run_file, run_goal_text = "main()", run_state, run_trace;
  int run_max_depth = 10000;
  auto* run = app.add_subcommand("run", "Run a goal against a .ch program");
  run->add_option("file", run_file, "program file (.ch)")->required();
  run->add_option("--goal", run_goal_text, "goal statement (default: main())");
  run->add_option("--state", run_state,
                  "initial bindings, e.g. 'x=1,s=\"hi\"'");
  run->add_option("--trace", run_trace, "write a JSONL derivation trace here");
  run->add_option("--max-depth", run_max_depth, "call/choose nesting budget")
      ->check(CLI::PositiveNumber);

  std::string tr_input, tr_output;
  auto* translate = app.add_subcommand(
      "translate", "Lower mini-Java selection constructs (.mj) to choose form (.ch)");
  translate->add_option("input", tr_input, "input file (.mj)")->required();
  translate->add_option("output", tr_output, "output file (.ch)")->required();

  std::string chk_a, chk_b;
  std::vector<std::string> chk_goals;
  int chk_max_depth = 10000;
  auto* check = app.add_subcommand(
      "check", "Run goals against two programs and compare outcome and state");
  check->add_option("fileA", chk_a, "first program")->required();
  check->add_option("fileB", chk_b, "second program")->required();
  check->add_option("--goal", chk_goals, "goal to compare (repeatable)");
  check->add_option("--max-depth", chk_max_depth, "call/choose nesting budget")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParseError;
  }

  if (run->parsed()) {
    return cmd_run(run_file, run_goal_text, run_state, run_trace, run_max_depth);
  }
  if (translate->parsed()) {
    return cmd_translate(tr_input, tr_output);
  }
  return cmd_check(chk_a, chk_b, chk_goals, chk_max_depth);
}
