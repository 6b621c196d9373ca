/*
 * Copyright 2026 The pacr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
//
// Command-line front end.  Exit codes: 0 = success / positive verdict,
// 1 = negative verdict (not confluent, not bisimilar, ...), 2 = usage or
// parse error, 3 = resource cap exceeded.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pacr/bisim.hpp"
#include "pacr/confluence.hpp"
#include "pacr/gen.hpp"
#include "pacr/lppe.hpp"
#include "pacr/pa.hpp"
#include "pacr/reduce.hpp"
#include "pacr/symdetect.hpp"

namespace {

using namespace pacr;

// Comma-separated list of non-negative integers.
std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(pos, comma - pos);
    if (item.empty()) throw CLI::ValidationError("empty entry in index list");
    std::size_t used = 0;
    unsigned long v = std::stoul(item, &used);
    if (used != item.size())
      throw CLI::ValidationError("bad index: " + item);
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::size_t state_cap_default() {
  if (const char* env = std::getenv("PACR_STATE_CAP")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed PACR_STATE_CAP\n";
  }
  return GenOptions{}.state_cap;
}

void write_file(const std::string& path, const std::string& what,
                const std::function<void(std::ostream&)>& emit) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + what + " output file: " + path);
  emit(out);
}

const char* method_name(DischargeMethod m) {
  switch (m) {
    case DischargeMethod::GuardContradiction: return "guard contradiction";
    case DischargeMethod::VariableDisjointness: return "variable disjointness";
    case DischargeMethod::SelfCommutation: return "self-commutation";
  }
  return "?";
}

void print_stats_text(const GenStats& s) {
  std::cout << "states: " << s.states << "\n"
            << "transitions: " << s.transitions << "\n"
            << "visited states: " << s.visited_states << "\n"
            << "visited transitions: " << s.visited_transitions << "\n";
}

void print_stats_csv(const std::string& model, const GenStats& s) {
  std::cout << "model,states,transitions,visited_states,visited_transitions\n"
            << model << "," << s.states << "," << s.transitions << ","
            << s.visited_states << "," << s.visited_transitions << "\n";
}

int cmd_parse(const std::string& file) {
  LppeSpec spec = parse_lppe_file(file);
  std::cout << pretty_print(spec);
  return 0;
}

int cmd_generate(const std::string& file, bool reduce,
                 const std::string& confluent_arg, bool json, bool csv,
                 const std::string& dot_path, const std::string& out_path,
                 std::size_t state_cap) {
  LppeSpec spec = parse_lppe_file(file);
  GenOptions opt;
  opt.state_cap = state_cap;
  GenResult res;
  if (reduce) {
    std::vector<std::size_t> designated;
    if (!confluent_arg.empty()) {
      for (std::size_t i : parse_index_list(confluent_arg)) {
        if (i == 0 || i > spec.summands.size())
          throw CLI::ValidationError("summand index out of range: " +
                                     std::to_string(i));
        designated.push_back(i - 1);
      }
    } else {
      designated = detect_confluent_summands(spec);
    }
    res = explore_reduced(spec, designated, opt);
  } else {
    res = explore(spec, opt);
  }
  if (json)
    std::cout << stats_json(res.stats) << "\n";
  else if (csv)
    print_stats_csv(std::filesystem::path(file).stem().string(), res.stats);
  else
    print_stats_text(res.stats);
  if (!dot_path.empty())
    write_file(dot_path, "dot", [&](std::ostream& o) { res.pa.write_dot(o); });
  if (!out_path.empty())
    write_file(out_path, "automaton",
               [&](std::ostream& o) { res.pa.print(o); });
  return 0;
}

int cmd_detect(const std::string& file) {
  LppeSpec spec = parse_lppe_file(file);
  std::vector<std::size_t> detected = detect_confluent_summands(spec);
  std::cout << "confluent summands:";
  for (std::size_t i : detected) std::cout << " " << (i + 1);
  if (detected.empty()) std::cout << " none";
  std::cout << "\n";
  for (const PairReport& r : detection_report(spec)) {
    std::cout << "summand " << (r.i + 1) << " vs " << (r.j + 1) << ": ";
    if (r.result.proven)
      std::cout << method_name(*r.result.method) << "\n";
    else
      std::cout << "unproven\n";
  }
  return 0;
}

ConfluentSet set_from_arg(const PA& pa, const std::string& arg) {
  std::vector<TransId> members;
  for (std::size_t i : parse_index_list(arg)) {
    if (i >= pa.num_transitions())
      throw CLI::ValidationError("transition index out of range: " +
                                 std::to_string(i));
    members.push_back(static_cast<TransId>(i));
  }
  return ConfluentSet::create(pa, members);
}

int cmd_check(const std::string& file, const std::string& set_arg,
              const std::string& notion) {
  PA pa = PA::parse_file(file);
  ConfluentSet c = set_from_arg(pa, set_arg);
  ConfluenceVerdict v;
  if (notion == "strong")
    v = check_strongly_confluent(pa, c);
  else if (notion == "prob")
    v = check_confluent(pa, c);
  else
    v = check_weakly_confluent(pa, c);
  if (v.ok) {
    std::cout << "confluent (" << notion << ")\n";
    return 0;
  }
  std::cout << "not confluent (" << notion << ")\n";
  if (v.unjoinable) {
    std::cout << "unjoinable states: " << pa.state_name(v.unjoinable->a)
              << " and " << pa.state_name(v.unjoinable->b) << "\n";
  }
  if (v.counterexample) {
    std::cout << "path:";
    for (StateId s : v.counterexample->path)
      std::cout << " " << pa.state_name(s);
    const Transition& t = pa.transition(v.counterexample->unmatched);
    std::cout << "\nunanswered transition: " << pa.state_name(t.source) << " "
              << t.label << "\n";
  }
  return 1;
}

int cmd_bisim(const std::string& file_a, const std::string& file_b) {
  PA a = PA::parse_file(file_a);
  PA b = PA::parse_file(file_b);
  if (pa_bisimilar(a, b)) {
    std::cout << "bisimilar\n";
    return 0;
  }
  std::cout << "not bisimilar\n";
  return 1;
}

int cmd_quotient(const std::string& file, const std::string& set_arg,
                 bool by_joinability, bool by_representatives) {
  PA pa = PA::parse_file(file);
  ConfluentSet c = set_from_arg(pa, set_arg);
  if (by_representatives) {
    try {
      quotient_by_representatives(pa, c).print(std::cout);
    } catch (const NoRepresentationMapError& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
    return 0;
  }
  (void)by_joinability;  // the default mode
  JoinabilityResult j = joinability(pa, c);
  if (const auto* cex = std::get_if<JoinabilityCounterexample>(&j)) {
    std::cerr << "designated steps are not joinable: "
              << pa.state_name(cex->a) << " and " << pa.state_name(cex->b)
              << "\n";
    return 1;
  }
  quotient(pa, std::get<EquivRel>(j)).print(std::cout);
  return 0;
}

int cmd_bench(const std::string& dir, std::size_t state_cap) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".lppe") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error("no .lppe files in " + dir);
  std::cout << "model,original_states,original_transitions,reduced_states,"
               "reduced_transitions,visited_states,visited_transitions,"
               "runtime_before_ms,runtime_after_ms\n";
  GenOptions opt;
  opt.state_cap = state_cap;
  for (const auto& f : files) {
    LppeSpec spec = parse_lppe_file(f.string());
    GenResult full = explore(spec, opt);
    GenResult red = explore_reduced(spec, detect_confluent_summands(spec), opt);
    std::cout << f.stem().string() << "," << full.stats.states << ","
              << full.stats.transitions << "," << red.stats.states << ","
              << red.stats.transitions << "," << red.stats.visited_states
              << "," << red.stats.visited_transitions << ","
              << full.stats.wall_time_ms << "," << red.stats.wall_time_ms
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confluence reduction for probabilistic automata"};
  app.require_subcommand(1);

  std::string file, file_b, set_arg, confluent_arg, notion = "weak";
  std::string dot_path, out_path;
  bool reduce = false, json = false, csv = false;
  bool by_joinability = false, by_representatives = false;
  std::size_t state_cap = state_cap_default();

  auto* parse_cmd = app.add_subcommand(
      "parse", "Validate a process description and pretty-print it");
  parse_cmd->add_option("file", file, "process description (.lppe)")
      ->required();

  auto* gen_cmd =
      app.add_subcommand("generate", "Generate the state space of a process");
  gen_cmd->add_option("file", file, "process description (.lppe)")->required();
  gen_cmd->add_flag("--reduce", reduce,
                    "generate the confluence-reduced state space");
  gen_cmd->add_option("--confluent", confluent_arg,
                      "designated summands, 1-based (default: detect)");
  gen_cmd->add_flag("--json", json, "print statistics as JSON");
  gen_cmd->add_flag("--csv", csv, "print statistics as CSV");
  gen_cmd->add_option("--dot", dot_path, "also write a Graphviz file");
  gen_cmd->add_option("--out", out_path, "also write the automaton as text");
  gen_cmd->add_option("--state-cap", state_cap, "stored-state limit");

  auto* detect_cmd = app.add_subcommand(
      "detect", "Detect confluent summands of a process description");
  detect_cmd->add_option("file", file, "process description (.lppe)")
      ->required();

  auto* check_cmd = app.add_subcommand(
      "check", "Check a designated transition set for confluence");
  check_cmd->add_option("file", file, "automaton fixture (.pa)")->required();
  check_cmd->add_option("--set", set_arg, "transition indices, 0-based")
      ->required();
  check_cmd
      ->add_option("--notion", notion, "strong, prob, or weak (default weak)")
      ->check(CLI::IsMember({"strong", "prob", "weak"}));

  auto* bisim_cmd = app.add_subcommand(
      "bisim", "Decide branching bisimilarity of two automata");
  bisim_cmd->add_option("a", file, "first automaton (.pa)")->required();
  bisim_cmd->add_option("b", file_b, "second automaton (.pa)")->required();

  auto* quot_cmd =
      app.add_subcommand("quotient", "Quotient an automaton by joinability");
  quot_cmd->add_option("file", file, "automaton fixture (.pa)")->required();
  quot_cmd->add_option("--set", set_arg, "transition indices, 0-based")
      ->required();
  quot_cmd->add_flag("--by-joinability", by_joinability,
                     "merge joinability classes (default)");
  quot_cmd->add_flag("--representatives", by_representatives,
                     "re-root at terminal representatives instead");

  auto* bench_cmd = app.add_subcommand(
      "bench", "Run every process in a directory and emit a CSV table");
  bench_cmd->add_option("dir", file, "directory with .lppe files")->required();
  bench_cmd->add_option("--state-cap", state_cap, "stored-state limit");

  try {
    app.parse(argc, argv);
    if (parse_cmd->parsed()) return cmd_parse(file);
    if (gen_cmd->parsed())
      return cmd_generate(file, reduce, confluent_arg, json, csv, dot_path,
                          out_path, state_cap);
    if (detect_cmd->parsed()) return cmd_detect(file);
    if (check_cmd->parsed()) return cmd_check(file, set_arg, notion);
    if (bisim_cmd->parsed()) return cmd_bisim(file, file_b);
    if (quot_cmd->parsed())
      return cmd_quotient(file, set_arg, by_joinability, by_representatives);
    if (bench_cmd->parsed()) return cmd_bench(file, state_cap);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ResourceCapError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
