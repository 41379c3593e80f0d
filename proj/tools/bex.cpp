#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bex/although.hpp"
#include "bex/blocksworld.hpp"
#include "bex/pipeline.hpp"
#include "bex/principles_io.hpp"
#include "bex/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_generate(const std::string& domain, const std::string& inject,
                 std::uint64_t seed, const std::string& out_path) {
  bex::Corpus corpus;
  if (domain == "blocksworld") {
    bex::InjectionScenario scenario;
    scenario.seed = seed;
    if (inject.empty())
      scenario.kind = bex::InjectionKind::None;
    else if (inject == "prevention-a")
      scenario.kind = bex::InjectionKind::PreventionA;
    else if (inject == "prevention-b")
      scenario.kind = bex::InjectionKind::PreventionB;
    else if (inject == "stacked")
      scenario.kind = bex::InjectionKind::Stacked;
    else
      throw std::runtime_error("unknown injection: " + inject);
    corpus = bex::generate_corpus(scenario);
  } else if (domain == "microblock") {
    if (!inject.empty()) throw std::runtime_error("microblock takes no injection");
    corpus = bex::micro_domain_corpus();
  } else if (domain == "figure2") {
    if (!inject.empty()) throw std::runtime_error("figure2 takes no injection");
    corpus.class_id = "bw";
    corpus.instances.push_back(bex::figure2_instance());
  } else {
    throw std::runtime_error("unknown domain: " + domain);
  }
  write_file(out_path, bex::serialize_corpus(corpus));
  return 0;
}

int cmd_learn(const std::vector<std::string>& corpus_paths,
              const std::vector<std::string>& goal_atoms,
              std::optional<int> plan_bound, const std::string& out_path) {
  std::vector<bex::Corpus> parts;
  for (const auto& p : corpus_paths) parts.push_back(bex::parse_corpus(read_file(p)));
  bex::Corpus corpus = bex::merge_corpora(parts);
  bex::LearnOptions opts;
  opts.plan_bound = plan_bound;
  if (!goal_atoms.empty()) {
    std::set<bex::Atom> goal;
    for (const auto& g : goal_atoms) goal.insert(bex::parse_term(g));
    opts.goal = std::move(goal);
  }
  write_file(out_path, bex::serialize_kb(bex::learn_kb(corpus, opts)));
  return 0;
}

int cmd_explain(const std::string& corpus_path, const std::string& kb_path,
                const std::string& principles_path, const std::string& instance_id,
                const std::string& render, const std::string& out_path) {
  bex::Corpus corpus = bex::parse_corpus(read_file(corpus_path));
  bex::KnowledgeBase kb = bex::parse_kb(read_file(kb_path));
  bex::PrinciplesConfig cfg = bex::parse_principles(read_file(principles_path));
  const bex::BehaviorInstance* inst = nullptr;
  for (const auto& i : corpus.instances)
    if (i.id == instance_id) inst = &i;
  if (!inst) throw std::runtime_error("unknown instance id: " + instance_id);
  bex::RenderMode mode;
  if (render == "text")
    mode = bex::RenderMode::Text;
  else if (render == "json")
    mode = bex::RenderMode::Json;
  else
    throw std::runtime_error("unknown render mode: " + render);
  std::string out;
  for (const auto& fact :
       bex::derive_although(*inst, cfg.principles, cfg.order, kb))
    out += bex::render_explanation(fact, mode, kb) + "\n";
  write_file(out_path, out);
  return 0;
}

int cmd_report(const std::string& kb_path, const std::string& format) {
  std::string text = read_file(kb_path);
  if (format == "json") {
    std::cout << text;
  } else if (format == "text") {
    std::cout << bex::render_report(bex::parse_kb(text));
  } else {
    throw std::runtime_error("unknown format: " + format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"behavior-trace symbolic learner and explainer"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write a synthetic corpus");
  std::string domain, inject, gen_out;
  std::uint64_t seed = 0;
  gen->add_option("--domain", domain, "blocksworld|microblock|figure2")->required();
  gen->add_option("--inject", inject, "prevention-a|prevention-b|stacked");
  gen->add_option("--seed", seed, "injection RNG seed");
  gen->add_option("--out", gen_out, "output path ('-' for stdout)")->required();

  auto* learn = app.add_subcommand("learn", "learn a knowledge base from corpora");
  std::vector<std::string> corpus_paths, goal_atoms;
  std::string learn_out;
  std::optional<int> plan_bound;
  learn->add_option("--corpus", corpus_paths, "corpus file (repeatable)")->required();
  learn->add_option("--goal", goal_atoms, "override goal atom (repeatable)");
  learn->add_option("--plan-bound", plan_bound, "prevention-search plan bound");
  learn->add_option("--out", learn_out, "output path")->required();

  auto* explain = app.add_subcommand("explain", "derive Although explanations");
  std::string ex_corpus, ex_kb, ex_principles, ex_instance, ex_out;
  std::string render = "json";
  explain->add_option("--corpus", ex_corpus)->required();
  explain->add_option("--kb", ex_kb)->required();
  explain->add_option("--principles", ex_principles)->required();
  explain->add_option("--instance", ex_instance)->required();
  explain->add_option("--render", render, "text|json");
  explain->add_option("--out", ex_out, "output path")->required();

  auto* report = app.add_subcommand("report", "summarize a knowledge base");
  std::string rep_kb, rep_format = "text";
  report->add_option("--kb", rep_kb)->required();
  report->add_option("--format", rep_format, "text|json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(domain, inject, seed, gen_out);
    if (learn->parsed()) return cmd_learn(corpus_paths, goal_atoms, plan_bound, learn_out);
    if (explain->parsed())
      return cmd_explain(ex_corpus, ex_kb, ex_principles, ex_instance, render, ex_out);
    if (report->parsed()) return cmd_report(rep_kb, rep_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
