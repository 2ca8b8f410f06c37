#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "burn/chains.hpp"
#include "burn/double_spider.hpp"
#include "burn/errors.hpp"
#include "burn/graph.hpp"
#include "burn/path_forest.hpp"
#include "burn/report.hpp"
#include "burn/simulate.hpp"
#include "burn/solver.hpp"

namespace {

using namespace burn;

constexpr int kExitVerdict = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;

std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_lls(const std::vector<long long>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

void emit(const RunConfig& cfg, const Json& result, const std::string& text,
          const std::string& csv) {
  if (cfg.format == "json")
    std::cout << make_report(cfg, result).dump(2) << "\n";
  else if (cfg.format == "csv")
    std::cout << csv;
  else
    std::cout << text;
}

struct CommonFlags {
  int jobs = 1;
  std::uint64_t budget_nodes = 0;  // 0 keeps the module default
  double budget_secs = 0.0;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string cache_path;
  std::string evidence_path;
};

void add_common(CLI::App* cmd, CommonFlags* f, bool with_cache, bool with_evidence) {
  cmd->add_option("--jobs", f->jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--budget-nodes", f->budget_nodes, "search node budget");
  cmd->add_option("--budget-secs", f->budget_secs, "wall clock budget in seconds");
  cmd->add_option("--seed", f->seed, "random seed (recorded in reports)");
  cmd->add_option("--format", f->format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  if (with_cache) cmd->add_option("--cache", f->cache_path, "verdict cache file");
  if (with_evidence)
    cmd->add_option("--evidence", f->evidence_path, "write certification evidence JSON here");
}

RunConfig base_config(const std::string& command, const std::string& target,
                      const std::string& m_arg, const CommonFlags& f) {
  RunConfig cfg;
  cfg.command = command;
  cfg.target = target;
  cfg.m_arg = m_arg;
  cfg.jobs = f.jobs;
  cfg.budget_nodes = f.budget_nodes;
  cfg.budget_secs = f.budget_secs;
  cfg.seed = f.seed;
  cfg.format = f.format;
  cfg.cache_path = f.cache_path;
  cfg.evidence_path = f.evidence_path;
  return cfg;
}

int cmd_burn(const std::string& target, int m, bool has_m, const CommonFlags& flags) {
  RunConfig cfg = base_config("burn", target, has_m ? std::to_string(m) : "", flags);
  Graph g = parse_graph_spec(target);
  SolveOptions opts;
  if (flags.budget_nodes > 0) opts.node_budget = flags.budget_nodes;
  opts.time_budget_secs = flags.budget_secs;

  Json result;
  result["target"] = target;
  result["vertices"] = g.n;
  std::ostringstream text;
  std::ostringstream csv;
  csv << "target,vertices,m,verdict,value,witness\n";
  text << "target: " << target << " (" << g.n << " vertices)\n";

  if (has_m) {
    SolveResult r = is_m_burnable(g, m, opts);
    result["m"] = m;
    result["verdict"] = to_string(r.verdict);
    if (r.verdict == Verdict::Yes) result["witness"] = r.witness.sources;
    result["nodes"] = r.nodes;
    text << "burnable within m=" << m << ": "
         << (r.verdict == Verdict::Yes ? "true"
                                       : r.verdict == Verdict::No ? "false" : "budget")
         << "\n";
    if (r.verdict == Verdict::Yes) text << "witness: " << join_ints(r.witness.sources) << "\n";
    csv << csv_escape(target) << ',' << g.n << ',' << m << ',' << to_string(r.verdict) << ",,"
        << csv_escape(join_ints(r.witness.sources)) << "\n";
    emit(cfg, result, text.str(), csv.str());
    return r.verdict == Verdict::Budget ? kExitBudget : kExitVerdict;
  }

  BurningNumberResult r = burning_number(g, opts);
  result["verdict"] = to_string(r.verdict);
  if (r.verdict == Verdict::Yes) {
    result["burning_number"] = r.value;
    result["witness"] = r.witness.sources;
  } else {
    result["lower_bound"] = r.value;  // least m not yet excluded
  }
  result["nodes"] = r.nodes;
  if (r.verdict == Verdict::Yes) {
    text << "b = " << r.value << "\n";
    text << "witness: " << join_ints(r.witness.sources) << "\n";
  } else {
    text << "budget exhausted after " << r.nodes << " nodes; b >= " << r.value << "\n";
  }
  csv << csv_escape(target) << ',' << g.n << ",," << to_string(r.verdict) << ',' << r.value
      << ',' << csv_escape(join_ints(r.witness.sources)) << "\n";
  emit(cfg, result, text.str(), csv.str());
  return r.verdict == Verdict::Budget ? kExitBudget : kExitVerdict;
}

int cmd_pf_decide(const std::string& lengths, int m, const CommonFlags& flags) {
  RunConfig cfg = base_config("pf", lengths, std::to_string(m), flags);
  PathForest t = parse_forest(lengths);
  DecideOptions opts;
  if (flags.budget_nodes > 0) opts.node_budget = flags.budget_nodes;
  PartitionDecision d = decide(t, m, opts);

  ExceptionalClause clause = exceptional_clause(t, m);
  auto rule = theorem_predict(t, m);

  Json result;
  result["lengths"] = t.lengths;
  result["m"] = m;
  result["verdict"] = to_string(d.verdict);
  if (clause != ExceptionalClause::None) result["clause"] = to_string(clause);
  if (rule) result["rule"] = to_string(*rule);
  std::string seq_text;
  if (d.verdict == Verdict::Yes) {
    Json sets = Json::array();
    for (const auto& s : d.assignment->sets) sets.push_back(s);
    result["sets"] = sets;
    BurningSequence seq = assignment_to_sequence(t, *d.assignment);
    result["sequence"] = seq.sources;
    seq_text = join_ints(seq.sources);
  }
  result["nodes"] = d.nodes;

  std::ostringstream text;
  text << "forest: " << t.to_string() << "\nm = " << m << "\n";
  if (d.verdict == Verdict::Yes) {
    text << "true\n";
    text << "sets:";
    for (std::size_t i = 0; i < d.assignment->sets.size(); ++i)
      text << " [" << t.lengths[i] << "]={" << join_lls(d.assignment->sets[i]) << "}";
    text << "\nsequence: " << seq_text << "\n";
  } else if (d.verdict == Verdict::No) {
    text << "false";
    if (clause != ExceptionalClause::None) text << ", clause " << to_string(clause);
    text << "\n";
  } else {
    text << "budget\n";
  }

  std::ostringstream csv;
  csv << "lengths,m,verdict,clause,sequence\n";
  csv << csv_escape(t.to_string()) << ',' << m << ',' << to_string(d.verdict) << ','
      << (clause != ExceptionalClause::None ? to_string(clause) : "") << ','
      << csv_escape(seq_text) << "\n";
  emit(cfg, result, text.str(), csv.str());
  return d.verdict == Verdict::Budget ? kExitBudget : kExitVerdict;
}

int cmd_pf_verify(int n, const std::string& m_range, const CommonFlags& flags) {
  RunConfig cfg = base_config("pf-verify", std::to_string(n), m_range, flags);
  int m_lo = 0, m_hi = 0;
  if (!parse_range(m_range, m_lo, m_hi)) {
    std::cerr << "bad --m range: " << m_range << "\n";
    return kExitUsage;
  }
  ForestBoundsReport rep = verify_forest_bounds(n, m_lo, m_hi, flags.jobs);

  Json result;
  result["n"] = rep.n;
  result["m"] = m_range;
  result["checked"] = rep.checked;
  Json violations = Json::array();
  for (const auto& v : rep.violations) {
    Json jv;
    jv["forest"] = v.forest.to_string();
    jv["m"] = v.m;
    jv["predicted_burnable"] = v.predicted_burnable;
    jv["actually_burnable"] = v.actually_burnable;
    violations.push_back(jv);
  }
  result["violations"] = violations;

  std::ostringstream text;
  text << "n=" << n << " m=" << m_range << ": checked " << rep.checked << " forests, "
       << rep.violations.size() << " violations\n";
  for (const auto& v : rep.violations)
    text << "  " << v.forest.to_string() << " m=" << v.m << " predicted="
         << (v.predicted_burnable ? "burnable" : "not") << " actual="
         << (v.actually_burnable ? "burnable" : "not") << "\n";

  std::ostringstream csv;
  csv << "forest,m,predicted_burnable,actually_burnable\n";
  for (const auto& v : rep.violations)
    csv << csv_escape(v.forest.to_string()) << ',' << v.m << ','
        << (v.predicted_burnable ? "true" : "false") << ','
        << (v.actually_burnable ? "true" : "false") << "\n";
  emit(cfg, result, text.str(), csv.str());
  return kExitVerdict;
}

int cmd_chain(const std::string& lengths, const CommonFlags& flags) {
  RunConfig cfg = base_config("chain", lengths, "", flags);
  SquareForest root{parse_forest(lengths)};
  ChainBudgets budgets;
  if (flags.budget_nodes > 0) budgets.node_budget = flags.budget_nodes;
  budgets.time_budget_secs = flags.budget_secs;
  DeficiencyCache cache(flags.cache_path);
  ExtensionNode tree = expand_extension_tree(root, budgets, &cache);

  bool open_budget = false;
  Json nodes = Json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "forest,m,status,depth\n";
  text << "root: " << root.forest.to_string() << " (m=" << root.m << ")\n";
  text << "tree size: " << tree.subtree_size() << "\n";
  text << "all leaves closed: " << (tree.all_leaves_closed() ? "true" : "false") << "\n";

  // depth-first listing, children in their stored (sorted) order
  std::vector<std::pair<const ExtensionNode*, int>> stack{{&tree, 0}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    if (node->status == NodeStatus::OpenBudget) open_budget = true;
    Json jn;
    jn["forest"] = node->forest.forest.to_string();
    jn["m"] = node->forest.m;
    jn["status"] = to_string(node->status);
    jn["depth"] = depth;
    nodes.push_back(jn);
    text << std::string(2 * (depth + 1), ' ') << node->forest.forest.to_string() << "@"
         << node->forest.m << " " << to_string(node->status) << "\n";
    csv << csv_escape(node->forest.forest.to_string()) << ',' << node->forest.m << ','
        << to_string(node->status) << ',' << depth << "\n";
    for (auto it = node->children.rbegin(); it != node->children.rend(); ++it)
      stack.push_back({&*it, depth + 1});
  }

  Json result;
  result["forest"] = root.forest.to_string();
  result["m"] = root.m;
  result["tree_size"] = tree.subtree_size();
  result["all_leaves_closed"] = tree.all_leaves_closed();
  result["tree"] = nodes;
  emit(cfg, result, text.str(), csv.str());
  return open_budget ? kExitBudget : kExitVerdict;
}

Json evidence_json(const CertifyResult& r) {
  Json j;
  j["n"] = r.n;
  j["L"] = r.min_len;
  j["threshold_m"] = r.threshold_m;
  Json seeds = Json::array();
  for (const auto& s : r.seeds) seeds.push_back(s.forest.to_string());
  j["seeds"] = seeds;
  j["tree_sizes"] = r.tree_sizes;
  j["max_m_reached"] = r.max_m_reached;
  j["verdict"] = to_string(r.status);
  return j;
}

int cmd_ln(int n, const CommonFlags& flags) {
  RunConfig cfg = base_config("ln", std::to_string(n), "", flags);
  ChainBudgets budgets;
  if (flags.budget_nodes > 0) budgets.node_budget = flags.budget_nodes;
  budgets.time_budget_secs = flags.budget_secs;
  DeficiencyCache cache(flags.cache_path);
  ThresholdResult r = compute_threshold(n, budgets, &cache);

  Json result;
  result["n"] = n;
  result["status"] = to_string(r.status);
  std::ostringstream text;
  std::ostringstream csv;
  csv << "n,status,L,threshold_m,max_m_reached\n";
  if (r.status == CertifyStatus::Certified) {
    result["L"] = r.value;
    if (r.witness_below)
      result["witness_below"] = r.witness_below->forest.to_string();
    result["evidence"] = evidence_json(r.certified);
    text << "n=" << n << ": L = " << r.value << "\n";
    if (r.witness_below)
      text << "witness below: " << r.witness_below->forest.to_string() << " (m="
           << r.witness_below->m << ")\n";
    csv << n << ',' << to_string(r.status) << ',' << r.value << ','
        << r.certified.threshold_m << ',' << r.certified.max_m_reached << "\n";
    if (!flags.evidence_path.empty()) {
      std::ofstream out(flags.evidence_path);
      if (!out) {
        std::cerr << "cannot write evidence file: " << flags.evidence_path << "\n";
        return kExitUsage;
      }
      out << evidence_json(r.certified).dump(2) << "\n";
      text << "evidence written to " << flags.evidence_path << "\n";
    }
  } else {
    result["frontier"] = r.frontier;
    text << "inconclusive: " << r.frontier << "\n";
    csv << n << ',' << to_string(r.status) << ",,,\n";
  }
  emit(cfg, result, text.str(), csv.str());
  return r.status == CertifyStatus::Certified ? kExitVerdict : kExitBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact graph burning toolkit"};
  app.require_subcommand(1);

  std::string burn_target;
  int burn_m = -1;
  CommonFlags burn_flags;
  CLI::App* burn_cmd = app.add_subcommand("burn", "burning number or m-burnability of a graph");
  burn_cmd->add_option("target", burn_target,
                       "graph file, path:N, spider:a,b,..., or dspider:a,../b,..")
      ->required();
  CLI::Option* burn_m_opt = burn_cmd->add_option("--m", burn_m, "rounds to test");
  add_common(burn_cmd, &burn_flags, false, false);

  std::string pf_lengths;
  int pf_m = -1;
  CommonFlags pf_flags;
  CLI::App* pf_cmd = app.add_subcommand("pf", "path forest m-burnability");
  pf_cmd->add_option("lengths", pf_lengths, "component orders, e.g. 17,15,4");
  CLI::Option* pf_m_opt = pf_cmd->add_option("--m", pf_m, "rounds to test");

  int pfv_n = 0;
  std::string pfv_m_range;
  CommonFlags pfv_flags;
  CLI::App* pfv_cmd = pf_cmd->add_subcommand("verify", "check the order bounds exhaustively");
  pfv_cmd->add_option("--n", pfv_n, "number of components")->required()->check(CLI::PositiveNumber);
  pfv_cmd->add_option("--m", pfv_m_range, "m or inclusive range a..b")->required();
  add_common(pfv_cmd, &pfv_flags, false, false);
  add_common(pf_cmd, &pf_flags, false, false);

  std::string chain_lengths;
  CommonFlags chain_flags;
  CLI::App* chain_cmd = app.add_subcommand("chain", "expand the extension tree of a deficient forest");
  chain_cmd->add_option("lengths", chain_lengths, "square-order forest, e.g. 17,15,4")->required();
  add_common(chain_cmd, &chain_flags, true, false);

  int ln_n = 0;
  CommonFlags ln_flags;
  CLI::App* ln_cmd = app.add_subcommand("ln", "least burnable-threshold L for n components");
  ln_cmd->add_option("--n", ln_n, "number of components")->required()->check(CLI::PositiveNumber);
  add_common(ln_cmd, &ln_flags, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (burn_cmd->parsed())
      return cmd_burn(burn_target, burn_m, burn_m_opt->count() > 0, burn_flags);
    if (pf_cmd->parsed()) {
      if (pfv_cmd->parsed()) return cmd_pf_verify(pfv_n, pfv_m_range, pfv_flags);
      if (pf_lengths.empty() || pf_m_opt->count() == 0) {
        std::cerr << "pf needs lengths and --m (or the verify subcommand)\n";
        return kExitUsage;
      }
      return cmd_pf_decide(pf_lengths, pf_m, pf_flags);
    }
    if (chain_cmd->parsed()) return cmd_chain(chain_lengths, chain_flags);
    if (ln_cmd->parsed()) return cmd_ln(ln_n, ln_flags);
  } catch (const burn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const burn::GuardExhausted& e) {
    std::cerr << "gave up: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitUsage;
}
