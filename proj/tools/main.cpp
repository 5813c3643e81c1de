#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ckalg/report.hpp"

namespace fs = std::filesystem;
using namespace ckalg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& bytes, const std::string& path) {
  Json j = Json::parse(bytes, nullptr, false);
  if (j.is_discarded()) throw input_error("invalid JSON in " + path);
  return j;
}

DirectedGraph load_graph(const std::string& path, std::string* raw = nullptr) {
  std::string bytes = slurp(path);
  if (raw) *raw = bytes;
  return DirectedGraph::from_json(parse_json(bytes, path));
}

PartialSystem load_psys(const std::string& path, std::string* raw = nullptr) {
  std::string bytes = slurp(path);
  if (raw) *raw = bytes;
  return PartialSystem::from_json(parse_json(bytes, path));
}

void emit(const Json& body, const std::string& input_bytes, bool json_mode) {
  Json out = report_header(input_bytes);
  out["report"] = body;
  if (json_mode) {
    std::cout << out.dump() << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "elapsed: " << ms << " ms\n";
  }
};

struct CorpusEntry {
  std::string name;
  std::string kind;  // "graph" | "psys"
  fs::path path;
};

std::vector<CorpusEntry> scan_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw input_error("corpus directory not found: " + dir.string());
  std::vector<CorpusEntry> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    Json j = parse_json(slurp(e.path().string()), e.path().string());
    CorpusEntry c;
    c.name = e.path().stem().string();
    c.kind = j.contains("points") ? "psys" : "graph";
    c.path = e.path();
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

int run_corpus(const fs::path& dir, int depth, int max_power) {
  int failures = 0;
  for (const auto& c : scan_corpus(dir)) {
    try {
      if (c.kind == "graph") {
        DirectedGraph g = load_graph(c.path.string());
        graph_analyze_report(g);
        graph_af_report(g, depth);
        graph_interaction_report(g, depth);
        graph_stochastic_report(g, max_power);
        graph_markov_report(g, depth);
      } else {
        PartialSystem s = load_psys(c.path.string());
        psys_analyze_report(s);
        if (s.well_positioned()) {
          psys_extension_report(s, depth);
          psys_ypairs_report(s);
        }
      }
      std::cout << "OK   " << c.kind << " " << c.name << "\n";
    } catch (const std::exception& ex) {
      std::cout << "FAIL " << c.kind << " " << c.name << ": " << ex.what() << "\n";
      ++failures;
    }
  }
  return failures ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-graph algebra and partial-system analyzer"};
  app.require_subcommand(1);

  int depth = 3;
  int max_power = 8;
  int periodic_n = 4;
  bool json_mode = false;
  bool dot_mode = false;
  std::string file;
  std::string corpus_dir = "corpus";

  auto add_common = [&](CLI::App* c, bool with_file = true) {
    if (with_file) c->add_option("file", file, "input JSON file")->required();
    c->add_flag("--json", json_mode, "compact single-line JSON output");
  };

  auto* graph = app.add_subcommand("graph", "directed graph analyses");
  graph->require_subcommand(1);
  auto* g_analyze = graph->add_subcommand("analyze", "structure, loops, ideals");
  add_common(g_analyze);
  g_analyze->add_flag("--dot", dot_mode, "emit graphviz instead of a report");
  auto* g_af = graph->add_subcommand("af", "finite-dimensional tower");
  add_common(g_af);
  g_af->add_option("--depth", depth, "tower depth")->check(CLI::NonNegativeNumber);
  g_af->add_flag("--dot", dot_mode, "emit the level diagram as graphviz");
  auto* g_inter = graph->add_subcommand("interaction", "transfer/endomorphism pair");
  add_common(g_inter);
  g_inter->add_option("--depth", depth, "verification depth")->check(CLI::NonNegativeNumber);
  auto* g_stoch = graph->add_subcommand("stochastic", "quasi-stochastic matrix powers");
  add_common(g_stoch);
  g_stoch->add_option("--max-power", max_power, "largest power checked")
      ->check(CLI::PositiveNumber);
  auto* g_markov = graph->add_subcommand("markov", "path-space shift analysis");
  add_common(g_markov);
  g_markov->add_option("--depth", periodic_n, "periodic point search bound")
      ->check(CLI::PositiveNumber);

  auto* psys = app.add_subcommand("psys", "partial dynamical systems");
  psys->require_subcommand(1);
  auto* p_analyze = psys->add_subcommand("analyze", "invariance, freeness, simplicity");
  add_common(p_analyze);
  auto* p_ext = psys->add_subcommand("extension", "smallest reversible extension");
  add_common(p_ext);
  p_ext->add_option("--depth", depth, "finite-orbit enumeration depth")
      ->check(CLI::NonNegativeNumber);
  p_ext->add_flag("--dot", dot_mode, "emit the extension map as graphviz");
  auto* p_ypairs = psys->add_subcommand("ypairs", "invariant pair lattice");
  add_common(p_ypairs);

  auto* corpus = app.add_subcommand("corpus", "bundled example inputs");
  corpus->require_subcommand(1);
  auto* c_list = corpus->add_subcommand("list", "list bundled inputs");
  c_list->add_option("--dir", corpus_dir, "corpus directory");
  auto* c_run = corpus->add_subcommand("run", "run every analysis on every input");
  c_run->add_option("--dir", corpus_dir, "corpus directory");
  c_run->add_option("--depth", depth, "analysis depth")->check(CLI::NonNegativeNumber);
  c_run->add_option("--max-power", max_power, "largest power checked")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  Timer timer;
  try {
    std::string raw;
    if (g_analyze->parsed()) {
      DirectedGraph g = load_graph(file, &raw);
      if (dot_mode) {
        std::cout << g.to_dot();
      } else {
        emit(graph_analyze_report(g), raw, json_mode);
      }
    } else if (g_af->parsed()) {
      DirectedGraph g = load_graph(file, &raw);
      g.require_nondegenerate();
      if (dot_mode) {
        std::cout << bratteli_to_dot(g, bratteli_diagram(g, depth));
      } else {
        emit(graph_af_report(g, depth), raw, json_mode);
      }
    } else if (g_inter->parsed()) {
      DirectedGraph g = load_graph(file, &raw);
      g.require_nondegenerate();
      emit(graph_interaction_report(g, depth), raw, json_mode);
    } else if (g_stoch->parsed()) {
      DirectedGraph g = load_graph(file, &raw);
      g.require_nondegenerate();
      emit(graph_stochastic_report(g, max_power), raw, json_mode);
    } else if (g_markov->parsed()) {
      DirectedGraph g = load_graph(file, &raw);
      g.require_nondegenerate();
      emit(graph_markov_report(g, periodic_n), raw, json_mode);
    } else if (p_analyze->parsed()) {
      PartialSystem s = load_psys(file, &raw);
      emit(psys_analyze_report(s), raw, json_mode);
    } else if (p_ext->parsed()) {
      PartialSystem s = load_psys(file, &raw);
      s.require_well_positioned();
      if (dot_mode) {
        std::cout << psys_extension_dot(s, depth);
      } else {
        emit(psys_extension_report(s, depth), raw, json_mode);
      }
    } else if (p_ypairs->parsed()) {
      PartialSystem s = load_psys(file, &raw);
      s.require_well_positioned();
      emit(psys_ypairs_report(s), raw, json_mode);
    } else if (c_list->parsed()) {
      for (const auto& c : scan_corpus(corpus_dir)) {
        std::cout << c.kind << " " << c.name << " " << c.path.string() << "\n";
      }
    } else if (c_run->parsed()) {
      return run_corpus(corpus_dir, depth, max_power);
    }
  } catch (const input_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const consistency_error& ex) {
    std::cerr << "internal inconsistency: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
