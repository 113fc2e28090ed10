// Command-line front end: synthesize embedding sets, estimate the ball
// radius, run selection strategies, and score selections. Every command is
// deterministic given its full flag set; outputs are written atomically.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probcover/probcover.hpp"

namespace pc = probcover;

namespace {

struct CommonOpts {
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format = "binary";
  bool csv_header = false;
};

void add_common(CLI::App* sub, CommonOpts& common) {
  sub->add_option("--seed", common.seed, "Seed for any randomized step");
  sub->add_option("--threads", common.threads,
                  "Worker threads for internal loops (0 = auto)");
  sub->add_option("--format", common.format, "Input file format")
      ->check(CLI::IsMember({"binary", "csv"}));
  sub->add_flag("--csv-header", common.csv_header,
                "Skip the first line of csv inputs");
}

std::uint64_t require_seed(const CommonOpts& common, const std::string& why) {
  if (!common.seed)
    throw pc::validation_error("--seed is required: " + why);
  return *common.seed;
}

pc::EmbeddingSet load_input(const std::string& path, const CommonOpts& common,
                            bool normalize) {
  const auto format = common.format == "csv" ? pc::FileFormat::csv
                                             : pc::FileFormat::binary;
  pc::EmbeddingSet es = pc::load_embeddings(path, format, common.csv_header);
  return normalize ? pc::normalize_l2(es) : es;
}

std::string fmt(double v) { return pc::detail::fmt_double(v); }

std::string join_indices(const std::vector<std::uint32_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += fmt(v[i]);
  }
  return out;
}

std::size_t distinct_labels(const pc::EmbeddingSet& es) {
  const std::set<std::uint32_t> s(es.labels->begin(), es.labels->end());
  return s.size();
}

// Regular simplex with side `sep`: each vertex is placed on a fresh axis at
// the height that keeps it equidistant from all previous vertices.
std::vector<std::vector<double>> simplex_means(std::size_t components,
                                               std::size_t dim, double sep) {
  if (components >= 2 && dim < components - 1)
    throw pc::validation_error("--dim must be at least components-1 to place " +
                               std::to_string(components) +
                               " equidistant means");
  std::vector<std::vector<double>> means;
  means.emplace_back(dim, 0.0);
  for (std::size_t i = 1; i < components; ++i) {
    std::vector<double> centroid(dim, 0.0);
    for (const auto& m : means) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += m[k];
    }
    for (std::size_t k = 0; k < dim; ++k)
      centroid[k] /= static_cast<double>(means.size());
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double diff = means.front()[k] - centroid[k];
      r2 += diff * diff;
    }
    std::vector<double> v = centroid;
    v[i - 1] = std::sqrt(sep * sep - r2);
    means.push_back(std::move(v));
  }
  return means;
}

int run_synth(const CommonOpts& common, std::size_t components, double sep,
              double stddev, std::size_t n, std::size_t dim,
              const std::vector<double>& weights, const std::string& output) {
  const std::uint64_t seed =
      require_seed(common, "synthetic generation must be reproducible");
  if (components == 0)
    throw pc::validation_error("--components must be positive");
  if (dim == 0) dim = std::max<std::size_t>(2, components - 1);
  if (!weights.empty() && weights.size() != components)
    throw pc::validation_error("--weights must list one weight per component");

  const auto means = simplex_means(components, dim, sep);
  pc::MixtureSpec spec;
  spec.samples = n;
  spec.seed = seed;
  for (std::size_t c = 0; c < components; ++c) {
    pc::MixtureComponent comp;
    comp.mean = means[c];
    comp.stddev = stddev;
    comp.weight = weights.empty() ? 1.0 : weights[c];
    comp.label = static_cast<std::uint32_t>(c);
    spec.components.push_back(std::move(comp));
  }
  const pc::EmbeddingSet es = pc::generate_mixture(spec);
  pc::save_embeddings_binary(es, output);
  std::cout << "wrote " << es.n << "x" << es.d << " labeled embedding set to "
            << output << "\n";
  return 0;
}

struct DeltaGridSpec {
  bool automatic = true;
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
};

DeltaGridSpec parse_grid_spec(const std::string& text) {
  DeltaGridSpec spec;
  if (text == "auto") return spec;
  spec.automatic = false;
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  if (!(in >> spec.lo >> c1 >> spec.hi >> c2 >> spec.count) || c1 != ':' ||
      c2 != ':' || !(in >> std::ws).eof())
    throw pc::validation_error("--grid expects 'auto' or lo:hi:count, got '" +
                               text + "'");
  if (!(spec.lo > 0.0) || !(spec.hi > spec.lo) || spec.count < 2)
    throw pc::validation_error("--grid needs 0 < lo < hi and count >= 2");
  return spec;
}

std::vector<double> resolve_grid(const DeltaGridSpec& spec,
                                 const pc::EmbeddingSet& es, std::uint64_t seed) {
  if (spec.automatic) return pc::default_delta_grid(es, seed);
  std::vector<double> grid;
  grid.reserve(spec.count);
  const double step = (spec.hi - spec.lo) / static_cast<double>(spec.count - 1);
  for (std::size_t i = 0; i < spec.count; ++i)
    grid.push_back(spec.lo + static_cast<double>(i) * step);
  grid.back() = spec.hi;
  return grid;
}

std::size_t resolve_k(const std::optional<std::size_t>& k_flag,
                      const pc::EmbeddingSet& es) {
  if (k_flag) return *k_flag;
  if (es.has_labels()) return distinct_labels(es);
  throw pc::validation_error(
      "--k is required when the dataset carries no labels");
}

pc::PurityCurve run_delta_estimation(const pc::EmbeddingSet& es,
                                     const std::optional<std::size_t>& k_flag,
                                     double alpha, const DeltaGridSpec& grid_spec,
                                     std::uint64_t seed, std::size_t max_iters,
                                     std::size_t restarts,
                                     std::size_t purity_sample) {
  const std::size_t k = resolve_k(k_flag, es);
  const auto grid = resolve_grid(grid_spec, es, seed);
  pc::PurityCurve curve = pc::estimate_delta(es, k, alpha, grid, seed, max_iters,
                                             restarts, purity_sample);
  if (curve.fallback) {
    std::cerr << "warning: no grid delta reached alpha=" << fmt(alpha)
              << "; falling back to the smallest grid delta "
              << fmt(curve.delta_star) << "\n";
  }
  return curve;
}

int run_estimate_delta(const CommonOpts& common, const std::string& input,
                       bool normalize, const std::optional<std::size_t>& k_flag,
                       double alpha, const std::string& grid_text,
                       std::size_t max_iters, std::size_t restarts,
                       std::size_t purity_sample, const std::string& output) {
  const std::uint64_t seed = require_seed(common, "k-means clustering is seeded");
  const pc::EmbeddingSet es = load_input(input, common, normalize);
  const auto curve = run_delta_estimation(es, k_flag, alpha,
                                          parse_grid_spec(grid_text), seed,
                                          max_iters, restarts, purity_sample);
  if (!output.empty()) {
    std::ostringstream body;
    pc::write_purity_csv(curve, body);
    pc::detail::atomic_write(output, body.str());
  }
  std::cout << "delta_star=" << fmt(curve.delta_star) << "\n";
  // With true labels on hand, surface the pseudo-label vs true-label gap.
  if (es.has_labels())
    std::cout << "true_label_purity=" << fmt(pc::purity(es, *es.labels, curve.delta_star))
              << "\n";
  return 0;
}

struct SelectConfig {
  std::string input;
  std::string strategy;
  std::size_t b = 0;
  std::size_t rounds = 1;
  std::string delta_text;
  double alpha = 0.95;
  std::optional<std::size_t> k;
  std::vector<std::uint32_t> pool;
  bool normalize = false;
  std::string accel = "grid";
  std::string output;
};

pc::GraphAccel parse_accel(const std::string& s) {
  return s == "naive" ? pc::GraphAccel::naive : pc::GraphAccel::grid;
}

int run_select(const CommonOpts& common, const SelectConfig& cfg) {
  if (cfg.b == 0) throw pc::validation_error("--b must be positive");
  if (cfg.rounds == 0) throw pc::validation_error("--rounds must be positive");
  const pc::EmbeddingSet es = load_input(cfg.input, common, cfg.normalize);
  const pc::GraphAccel accel = parse_accel(cfg.accel);

  const bool needs_delta =
      cfg.strategy == "probcover" || cfg.strategy == "probcover-pairs";
  const bool randomized = cfg.strategy == "coreset" || cfg.strategy == "random";

  pc::LabeledPool pool{cfg.pool};
  const auto pool_idx = pc::detail::normalized_pool(pool, es.n);
  const std::size_t available = es.n - pool_idx.size();
  if (cfg.rounds * cfg.b > available) {
    const std::size_t failing_round = available / cfg.b + 1;
    throw pc::validation_error(
        "round " + std::to_string(failing_round) + " would exhaust the dataset (" +
        std::to_string(cfg.rounds * cfg.b) + " queries requested, " +
        std::to_string(available) + " unlabeled points)");
  }

  std::optional<double> delta;
  if (!cfg.delta_text.empty()) {
    if (cfg.delta_text == "auto") {
      const std::uint64_t seed =
          require_seed(common, "delta estimation clusters with k-means");
      const auto curve = run_delta_estimation(es, cfg.k, cfg.alpha,
                                              DeltaGridSpec{}, seed, 100, 1, 0);
      delta = curve.delta_star;
    } else {
      try {
        delta = std::stod(cfg.delta_text);
      } catch (const std::exception&) {
        throw pc::validation_error("--delta expects a number or 'auto', got '" +
                                   cfg.delta_text + "'");
      }
      if (!(*delta > 0.0)) throw pc::validation_error("--delta must be positive");
    }
  }
  if (needs_delta && !delta)
    throw pc::validation_error("--delta is required for strategy " + cfg.strategy);
  std::optional<std::uint64_t> seed;
  if (randomized)
    seed = require_seed(common, "strategy " + cfg.strategy + " draws random picks");

  // The coverage/purity columns all share one radius, so one graph serves
  // every round.
  std::optional<pc::CoverGraph> graph;
  std::optional<double> purity_true;
  if (delta) {
    graph = pc::build_graph(es, *delta, accel);
    if (es.has_labels()) purity_true = pc::purity(es, *es.labels, *delta);
  }

  std::string record;
  record += "strategy=" + cfg.strategy + "\n";
  record += "n=" + std::to_string(es.n) + "\n";
  record += "d=" + std::to_string(es.d) + "\n";
  record += "b=" + std::to_string(cfg.b) + "\n";
  record += "rounds=" + std::to_string(cfg.rounds) + "\n";
  if (delta) record += "delta=" + fmt(*delta) + "\n";
  if (seed) record += "seed=" + std::to_string(*seed) + "\n";
  record += "pool=" + join_indices(pool_idx) + "\n";

  std::vector<std::uint32_t> accumulated = pool_idx;
  for (std::size_t round = 1; round <= cfg.rounds; ++round) {
    pc::LabeledPool round_pool{accumulated};
    pc::Selection sel;
    if (cfg.strategy == "probcover") {
      sel = pc::select_probcover(es, round_pool, cfg.b, *delta, accel);
    } else if (cfg.strategy == "probcover-pairs") {
      sel = pc::select_probcover_pairs(es, round_pool, cfg.b, *delta, accel);
    } else if (cfg.strategy == "coreset") {
      sel = pc::select_coreset(es, round_pool, cfg.b, *seed + round - 1);
    } else if (cfg.strategy == "random") {
      sel = pc::select_random(es, round_pool, cfg.b, *seed + round - 1);
    } else {
      throw pc::validation_error("unknown strategy " + cfg.strategy);
    }
    accumulated.insert(accumulated.end(), sel.queried.begin(), sel.queried.end());

    record += "\n";
    record += "round=" + std::to_string(round) + "\n";
    record += "labeled=" + std::to_string(accumulated.size()) + "\n";
    record += "queried=" + join_indices(sel.queried) + "\n";
    if (!sel.coverage_trace.empty())
      record += "coverage_trace=" + join_doubles(sel.coverage_trace) + "\n";
    if (!sel.radius_trace.empty())
      record += "radius_trace=" + join_doubles(sel.radius_trace) + "\n";
    if (graph) {
      const double cov = graph->coverage(accumulated);
      record += "coverage=" + fmt(cov) + "\n";
      if (purity_true) {
        record += "purity=" + fmt(*purity_true) + "\n";
        record += "bound=" + fmt(pc::compute_bound(cov, *purity_true)) + "\n";
      }
    }
  }
  pc::detail::atomic_write(cfg.output, record);
  std::cout << "wrote " << cfg.rounds << " round(s) to " << cfg.output << "\n";
  return 0;
}

struct SelectionRecord {
  std::string strategy;
  std::vector<std::uint32_t> pool;
  std::optional<double> delta;
  std::vector<std::vector<std::uint32_t>> round_queried;
};

std::vector<std::uint32_t> parse_index_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::istringstream in(text);
  std::uint64_t v = 0;
  while (in >> v) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

SelectionRecord parse_selection_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pc::io_error("cannot open " + path);
  SelectionRecord rec;
  std::string line;
  bool saw_round = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw pc::io_error(path + ": malformed line '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "strategy") {
      rec.strategy = value;
    } else if (key == "pool") {
      rec.pool = parse_index_list(value);
    } else if (key == "delta") {
      rec.delta = std::stod(value);
    } else if (key == "round") {
      rec.round_queried.emplace_back();
      saw_round = true;
    } else if (key == "queried") {
      if (!saw_round) throw pc::io_error(path + ": queried before any round");
      rec.round_queried.back() = parse_index_list(value);
    }
  }
  if (rec.round_queried.empty())
    throw pc::io_error(path + ": no rounds found");
  return rec;
}

int run_evaluate(const CommonOpts& common, const std::string& input,
                 const std::string& selection_path, const std::string& test_path,
                 const std::string& delta_text, bool normalize,
                 const std::string& accel, const std::string& output) {
  const pc::EmbeddingSet es = load_input(input, common, normalize);
  const pc::EmbeddingSet test = load_input(test_path, common, normalize);
  const SelectionRecord rec = parse_selection_file(selection_path);

  std::optional<double> delta;
  if (!delta_text.empty()) {
    delta = std::stod(delta_text);
  } else if (rec.delta) {
    delta = rec.delta;
  }
  if (!delta)
    throw pc::validation_error(
        "selection file records no delta; pass --delta explicitly");

  std::string body = "round,labeled," + pc::report_csv_header() + "\n";
  pc::LabeledPool pool{rec.pool};
  pc::Selection cumulative;
  cumulative.strategy = rec.strategy;
  for (std::size_t r = 0; r < rec.round_queried.size(); ++r) {
    cumulative.queried.insert(cumulative.queried.end(),
                              rec.round_queried[r].begin(),
                              rec.round_queried[r].end());
    const pc::EvalReport report =
        pc::evaluate(es, cumulative, pool, *delta, test, parse_accel(accel));
    body += std::to_string(r + 1) + "," +
            std::to_string(rec.pool.size() + cumulative.queried.size()) + "," +
            pc::report_csv_row(report) + "\n";
  }
  pc::detail::atomic_write(output, body);
  std::cout << "wrote " << rec.round_queried.size() << " evaluation row(s) to "
            << output << "\n";
  return 0;
}

int run_oracle(const CommonOpts& common, const std::string& input,
               const std::string& op, std::size_t b, const std::string& delta_text,
               const std::vector<std::uint32_t>& pool_arg, bool normalize,
               const std::string& output) {
  const pc::EmbeddingSet es = load_input(input, common, normalize);
  pc::LabeledPool pool{pool_arg};
  std::string body;
  if (op == "coverage") {
    if (delta_text.empty())
      throw pc::validation_error("oracle coverage needs --delta");
    const auto sol = pc::optimal_coverage(es, pool, b, std::stod(delta_text));
    body = "value=" + fmt(sol.coverage) + "\nsubset=" + join_indices(sol.subset) +
           "\n";
  } else if (op == "kcenter") {
    const auto sol = pc::optimal_kcenter(es, pool, b);
    body = "value=" + fmt(sol.radius) + "\nsubset=" + join_indices(sol.subset) +
           "\n";
  } else {
    throw pc::validation_error("oracle --op must be coverage or kcenter");
  }
  if (!output.empty()) pc::detail::atomic_write(output, body);
  std::cout << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset selection for low-budget active learning over embeddings"};
  app.require_subcommand(1);

  CommonOpts common;
  int rc = 0;

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a Gaussian-mixture embedding file");
  add_common(synth, common);
  struct {
    std::size_t components = 0;
    double sep = 10.0;
    double stddev = 1.0;
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> weights;
    std::string output;
  } synth_cfg;
  synth->add_option("--components", synth_cfg.components, "Mixture component count")
      ->required();
  synth->add_option("--sep", synth_cfg.sep, "Pairwise distance between component means");
  synth->add_option("--std", synth_cfg.stddev, "Component standard deviation")->required();
  synth->add_option("--n", synth_cfg.n, "Sample count")->required();
  synth->add_option("--dim", synth_cfg.dim, "Embedding dimension (default max(2, components-1))");
  synth->add_option("--weights", synth_cfg.weights, "Per-component weights")
      ->delimiter(',');
  synth->add_option("-o,--output", synth_cfg.output, "Output file (CVS1 binary)")
      ->required();
  synth->callback([&] {
    pc::set_thread_count(common.threads);
    rc = run_synth(common, synth_cfg.components, synth_cfg.sep, synth_cfg.stddev,
                   synth_cfg.n, synth_cfg.dim, synth_cfg.weights, synth_cfg.output);
  });

  // estimate-delta
  auto* est = app.add_subcommand("estimate-delta",
                                 "Estimate the ball radius from unlabeled data");
  add_common(est, common);
  struct {
    std::string input;
    bool normalize = false;
    std::optional<std::size_t> k;
    double alpha = 0.95;
    std::string grid = "auto";
    std::size_t max_iters = 100;
    std::size_t restarts = 1;
    std::size_t purity_sample = 0;
    std::string output;
  } est_cfg;
  est->add_option("-i,--input", est_cfg.input, "Embedding file")->required();
  est->add_flag("--normalize", est_cfg.normalize, "L2-normalize rows after loading");
  est->add_option("--k", est_cfg.k, "Cluster count (default: distinct labels)");
  est->add_option("--alpha", est_cfg.alpha, "Purity threshold");
  est->add_option("--grid", est_cfg.grid, "'auto' or lo:hi:count");
  est->add_option("--max-iters", est_cfg.max_iters, "k-means iteration cap");
  est->add_option("--restarts", est_cfg.restarts,
                  "k-means restarts, lowest inertia kept");
  est->add_option("--purity-sample", est_cfg.purity_sample,
                  "Evaluate purity on this many sampled centers (0 = all)");
  est->add_option("-o,--output", est_cfg.output, "Purity curve CSV");
  est->callback([&] {
    pc::set_thread_count(common.threads);
    rc = run_estimate_delta(common, est_cfg.input, est_cfg.normalize, est_cfg.k,
                            est_cfg.alpha, est_cfg.grid, est_cfg.max_iters,
                            est_cfg.restarts, est_cfg.purity_sample,
                            est_cfg.output);
  });

  // select
  auto* sel = app.add_subcommand("select", "Run a selection strategy");
  add_common(sel, common);
  SelectConfig sel_cfg;
  sel->add_option("-i,--input", sel_cfg.input, "Embedding file")->required();
  sel->add_option("--strategy", sel_cfg.strategy, "Selection strategy")
      ->required()
      ->check(CLI::IsMember({"probcover", "probcover-pairs", "coreset", "random"}));
  sel->add_option("--b", sel_cfg.b, "Budget per round")->required();
  sel->add_option("--rounds", sel_cfg.rounds, "Active learning rounds");
  sel->add_option("--delta", sel_cfg.delta_text, "Ball radius or 'auto'");
  sel->add_option("--alpha", sel_cfg.alpha, "Purity threshold for --delta auto");
  sel->add_option("--k", sel_cfg.k, "Cluster count for --delta auto");
  sel->add_option("--pool", sel_cfg.pool, "Initial labeled pool indices")
      ->delimiter(',');
  sel->add_flag("--normalize", sel_cfg.normalize, "L2-normalize rows after loading");
  sel->add_option("--accel", sel_cfg.accel, "Graph build acceleration")
      ->check(CLI::IsMember({"naive", "grid"}));
  sel->add_option("-o,--output", sel_cfg.output, "Selection record file")->required();
  sel->callback([&] {
    pc::set_thread_count(common.threads);
    rc = run_select(common, sel_cfg);
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score a selection record");
  add_common(ev, common);
  struct {
    std::string input;
    std::string selection;
    std::string test;
    std::string delta;
    bool normalize = false;
    std::string accel = "grid";
    std::string output;
  } ev_cfg;
  ev->add_option("-i,--input", ev_cfg.input, "Embedding file the selection ran on")
      ->required();
  ev->add_option("--selection", ev_cfg.selection, "Selection record file")->required();
  ev->add_option("--test", ev_cfg.test, "Held-out labeled embedding file")->required();
  ev->add_option("--delta", ev_cfg.delta, "Radius override");
  ev->add_flag("--normalize", ev_cfg.normalize,
               "L2-normalize rows of both files after loading");
  ev->add_option("--accel", ev_cfg.accel, "Graph build acceleration")
      ->check(CLI::IsMember({"naive", "grid"}));
  ev->add_option("-o,--output", ev_cfg.output, "Evaluation CSV")->required();
  ev->callback([&] {
    pc::set_thread_count(common.threads);
    rc = run_evaluate(common, ev_cfg.input, ev_cfg.selection, ev_cfg.test,
                      ev_cfg.delta, ev_cfg.normalize, ev_cfg.accel, ev_cfg.output);
  });

  // oracle (development helper, hidden from help)
  auto* orc = app.add_subcommand("oracle", "Exact brute-force solvers");
  orc->group("");
  add_common(orc, common);
  struct {
    std::string input;
    std::string op;
    std::size_t b = 0;
    std::string delta;
    std::vector<std::uint32_t> pool;
    bool normalize = false;
    std::string output;
  } orc_cfg;
  orc->add_option("-i,--input", orc_cfg.input, "Embedding file")->required();
  orc->add_option("--op", orc_cfg.op, "coverage or kcenter")->required();
  orc->add_option("--b", orc_cfg.b, "Budget")->required();
  orc->add_option("--delta", orc_cfg.delta, "Ball radius (coverage only)");
  orc->add_option("--pool", orc_cfg.pool, "Initial labeled pool indices")
      ->delimiter(',');
  orc->add_flag("--normalize", orc_cfg.normalize, "L2-normalize rows after loading");
  orc->add_option("-o,--output", orc_cfg.output, "Optional output file");
  orc->callback([&] {
    pc::set_thread_count(common.threads);
    rc = run_oracle(common, orc_cfg.input, orc_cfg.op, orc_cfg.b, orc_cfg.delta,
                    orc_cfg.pool, orc_cfg.normalize, orc_cfg.output);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const pc::capacity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pc::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
