#include "genreach_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "genreach/errors.hpp"
#include "genreach/fpt.hpp"
#include "genreach/game_format.hpp"
#include "genreach/generators.hpp"
#include "genreach/json_io.hpp"
#include "genreach/qbf.hpp"
#include "genreach/reach.hpp"
#include "genreach/strategy_lab.hpp"
#include "genreach/subclasses.hpp"
#include "genreach/two_sat.hpp"

namespace genreach::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

namespace {

// Thrown for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t)
      .count();
}

// Default budget, overridable through GENREACH_BUDGET.
std::size_t default_budget(std::size_t fallback) {
  if (const char* env = std::getenv("GENREACH_BUDGET")) {
    char* end = nullptr;
    auto value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return fallback;
}

json report(const std::string& command, const std::string& input_path,
            std::string_view input, json payload, double ms) {
  json r = {{"command", command},
            {"tool_version", kVersion},
            {"timing_ms", ms},
            {"result", std::move(payload)}};
  if (!input_path.empty()) {
    r["input"] = {{"file", input_path}, {"digest", "fnv1a64:" + fnv1a_hex(input)}};
  }
  return r;
}

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const ParseError*>(&e)) return kParse;
  if (dynamic_cast<const BudgetExceeded*>(&e)) return kBudget;
  if (dynamic_cast<const InternalError*>(&e)) return kDisagree;
  if (dynamic_cast<const Error*>(&e)) return kInvalid;
  if (dynamic_cast<const json::exception*>(&e)) return kParse;
  return kInvalid;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string path;
  std::string method = "auto";
  bool json = false;
  bool dot = false;
  bool strategies = false;
  int color_cap = kDefaultColorCap;
  std::size_t budget = 0;
};

std::string pick_method(const Game& game) {
  const auto& sets = game.objective().color_sets();
  auto all_size = [&](std::size_t lo, std::size_t hi) {
    return std::all_of(sets.begin(), sets.end(), [&](const auto& s) {
      return s.size() >= lo && s.size() <= hi;
    });
  };
  if (game.k() > 0 && all_size(1, 1)) return "singleton";
  if (game.arena().all_owned_by(Player::Adam)) return "opponent";
  if (game.arena().all_owned_by(Player::Eve) && all_size(0, 2)) {
    return "oneplayer2";
  }
  return "fpt";
}

SolveResult solve_with(const Game& game, const std::string& method,
                       const SolveOptions& o) {
  if (method == "fpt") {
    FptOptions fo;
    fo.color_cap = o.color_cap;
    return solve_fpt(game, fo);
  }
  if (method == "singleton") return solve_singleton(game);
  if (method == "oneplayer2") return solve_oneplayer_size2(game);
  if (method == "opponent") return solve_opponent_player(game);
  // minimax: exact per vertex, no strategies.
  auto start = std::chrono::steady_clock::now();
  MinimaxOptions mo;
  mo.node_budget = o.budget;
  SolveResult r;
  r.method = Method::Minimax;
  r.winner.resize(game.n());
  for (Vertex v = 0; v < game.n(); ++v) r.winner[v] = minimax_from(game, v, mo);
  r.stats.wall_ms = ms_since(start);
  return r;
}

std::string text_result(const Game& game, const SolveResult& r) {
  const auto& arena = game.arena();
  std::ostringstream s;
  s << "method: " << to_string(r.method) << '\n';
  if (game.init()) {
    s << "winner from " << arena.name(*game.init()) << ": "
      << to_string(r.winner[*game.init()]) << '\n';
  }
  for (Player p : {Player::Eve, Player::Adam}) {
    s << to_string(p) << " region:";
    for (Vertex v : r.region_list(p)) s << ' ' << arena.name(v);
    s << '\n';
  }
  if (!r.witness.empty()) {
    s << "witness:";
    for (Vertex v : r.witness) s << ' ' << arena.name(v);
    s << '\n';
  }
  return s.str();
}

struct FileOutcome {
  int code = kOk;
  json payload;
  std::string text;
};

FileOutcome solve_file(const std::string& path, const SolveOptions& o,
                       std::ostream& err) {
  FileOutcome fo;
  auto start = std::chrono::steady_clock::now();
  std::string input;
  try {
    input = read_file(path);
    Game game = parse_game(input);
    std::string method = o.method == "auto" ? pick_method(game) : o.method;
    auto result = solve_with(game, method, o);
    fo.payload = report("solve", path, input,
                        result_to_json(game, result, o.strategies),
                        ms_since(start));
    if (o.dot) {
      DotAnnotations notes;
      notes.winner = result.winner;
      for (const auto* strat : {result.eve_strategy ? &*result.eve_strategy : nullptr,
                                result.adam_strategy ? &*result.adam_strategy : nullptr}) {
        if (!strat || strat->state_count() != 1) continue;
        for (Vertex v = 0; v < game.n(); ++v) {
          if (auto w = strat->move(v, 0)) notes.highlighted.push_back({v, *w});
        }
      }
      fo.text = export_dot(game, notes);
    } else {
      fo.text = text_result(game, result);
    }
    err << path << ": " << to_string(result.method);
    if (game.init()) {
      err << ", " << to_string(result.winner[*game.init()]) << " wins from "
          << game.arena().name(*game.init());
    }
    err << " (" << std::fixed << std::setprecision(2) << ms_since(start)
        << " ms)\n";
  } catch (const std::exception& e) {
    fo.code = exit_code_of(e);
    fo.payload = report("solve", path, input,
                        {{"error", e.what()}, {"exit_code", fo.code}},
                        ms_since(start));
    err << path << ": error: " << e.what() << '\n';
  }
  return fo;
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  if (o.json && o.dot) throw UsageError("--json and --dot are exclusive");
  std::vector<std::string> files;
  const bool batch = fs::is_directory(o.path);
  if (batch) {
    for (const auto& entry : fs::directory_iterator(o.path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".gr") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
    if (o.dot) throw UsageError("--dot takes a single game file");
  } else {
    files.push_back(o.path);
  }

  int code = kOk;
  json all = json::array();
  for (const auto& f : files) {
    auto fo = solve_file(f, o, err);
    code = std::max(code, fo.code);
    if (o.json) {
      all.push_back(std::move(fo.payload));
    } else if (fo.code == kOk) {
      if (batch) out << "== " << f << '\n';
      out << fo.text;
    }
  }
  if (o.json) out << (batch ? json{{"files", all}} : all.at(0)).dump(2) << '\n';
  return code;
}

// ---------------------------------------------------------------------------
// qbf

int cmd_qbf(const std::string& path, const std::string& via, bool as_json,
            std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  auto input = read_file(path);
  std::vector<std::string> warnings;
  auto formula = parse_qdimacs(input, &warnings);
  for (const auto& w : warnings) err << path << ": warning: " << w << '\n';

  json payload = {{"variables", formula.variables},
                  {"clauses", formula.clauses.size()},
                  {"warnings", warnings}};
  std::optional<bool> by_game, by_brute;
  if (via == "game" || via == "both") {
    Game game = qbf_to_game(formula);
    by_game = solve_fpt(game).winner[*game.init()] == Player::Eve;
    payload["game"] = *by_game;
    payload["game_vertices"] = game.n();
  }
  if (via == "brute" || via == "both") {
    by_brute = eval_qbf_bruteforce(formula);
    payload["brute"] = *by_brute;
  }
  bool value = by_game ? *by_game : *by_brute;
  payload["value"] = value;
  int code = kOk;
  if (by_game && by_brute) {
    payload["agree"] = *by_game == *by_brute;
    if (*by_game != *by_brute) code = kDisagree;
  }
  if (as_json) {
    out << report("qbf", path, input, payload, ms_since(start)).dump(2) << '\n';
  } else {
    out << (value ? "true" : "false") << '\n';
  }
  err << path << ": " << (value ? "true" : "false") << " via " << via
      << (code == kDisagree ? " (ROUTES DISAGREE)" : "") << '\n';
  return code;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string family;
  int k = 2;
  RandomParams random;
  std::optional<std::uint64_t> seed;
  std::string output;
};

int cmd_gen(GenOptions o, std::ostream& out, std::ostream& err) {
  std::optional<Game> game;
  if (o.family == "flower") {
    game = gen_flower(o.k);
  } else if (o.family == "picker") {
    game = gen_picker(o.k);
  } else if (o.family == "fig4") {
    game = gen_fig4(o.k);
  } else if (o.family == "fig5") {
    game = gen_fig5();
  } else {
    if (!o.seed) throw UsageError("gen random needs --seed");
    o.random.seed = *o.seed;
    o.random.k = o.k;
    game = gen_random(o.random);
  }
  auto doc = serialize_game(*game);
  if (o.output.empty() || o.output == "-") {
    out << doc;
  } else {
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw UsageError("cannot write " + o.output);
    f << doc;
  }
  err << "generated " << o.family << ": " << game->n() << " vertices, "
      << game->m() << " edges, k=" << game->k() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& game_path, const std::string& strat_path,
               const std::string& region, bool as_json, std::ostream& out,
               std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  auto input = read_file(game_path);
  Game game = parse_game(input);
  auto strategy = strategy_from_json(game.arena(), json::parse(read_file(strat_path)));

  std::vector<Vertex> claimed;
  if (region == "init") {
    if (!game.init()) throw PreconditionFailed("game has no init vertex");
    claimed.push_back(*game.init());
  } else {
    claimed = solve_fpt(game).region_list(strategy.player());
  }
  auto verdict = verify_strategy(game, strategy, claimed);
  json payload = verdict_to_json(game.arena(), verdict);
  payload["player"] = to_string(strategy.player());
  payload["states"] = strategy.state_count();
  payload["claimed"] = names_json(game.arena(), claimed);
  if (as_json) {
    out << report("verify", game_path, input, payload, ms_since(start)).dump(2)
        << '\n';
  } else {
    out << (verdict.winning ? "winning" : "refuted") << '\n';
    if (verdict.counterexample) {
      const auto& arena = game.arena();
      out << "prefix:";
      for (Vertex v : verdict.counterexample->prefix) out << ' ' << arena.name(v);
      out << "\ncycle:";
      for (Vertex v : verdict.counterexample->cycle) out << ' ' << arena.name(v);
      out << '\n';
    }
  }
  err << game_path << ": " << to_string(strategy.player()) << " strategy with "
      << strategy.state_count() << " states is "
      << (verdict.winning ? "winning" : "refuted") << " on " << claimed.size()
      << " claimed vertices\n";
  return verdict.winning ? kOk : kRefuted;
}

// ---------------------------------------------------------------------------
// minmem

int cmd_minmem(const std::string& path, const std::string& player,
               std::size_t bound, const std::string& cls, std::size_t budget,
               bool as_json, std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  auto input = read_file(path);
  Game game = parse_game(input);
  Player p = player == "eve" ? Player::Eve : Player::Adam;
  MachineClass mc = cls == "full" ? MachineClass::Full : MachineClass::ColorObs;
  MinMemoryOptions mo;
  mo.node_budget = budget;
  auto r = min_memory_search(game, p, bound, mc, mo);

  json sizes = json::array();
  for (const auto& s : r.per_size) {
    sizes.push_back({{"states", s.states},
                     {"found", s.found},
                     {"refuted", s.refuted},
                     {"search_nodes", s.search_nodes}});
  }
  json payload = {{"player", player},
                  {"bound", bound},
                  {"class", to_string(mc)},
                  {"class_restricted", mc == MachineClass::ColorObs},
                  {"refuted", r.refuted},
                  {"search_nodes", r.search_nodes},
                  {"per_size", sizes}};
  if (r.machine) {
    payload["minimum"] = r.states;
    payload["machine"] = strategy_to_json(game.arena(), *r.machine);
  } else {
    payload["minimum"] = nullptr;
  }
  if (as_json) {
    out << report("minmem", path, input, payload, ms_since(start)).dump(2) << '\n';
  } else if (r.machine) {
    out << "minimum " << r.states << '\n';
  } else {
    out << "none\n";
  }
  err << path << ": " << player << ", class " << to_string(mc)
      << (mc == MachineClass::ColorObs ? " (class-restricted)" : "") << ": "
      << (r.machine ? "minimum " + std::to_string(r.states)
                    : "no machine with at most " + std::to_string(bound) +
                          " states")
      << ", " << r.refuted << " partial machines refuted\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// twosat

int cmd_twosat(const std::string& path, bool as_json, std::ostream& out,
               std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  auto input = read_file(path);
  auto formula = parse_dimacs_2cnf(input);
  auto r = two_sat_solve(formula);
  json payload = {{"satisfiable", r.satisfiable}};
  if (r.satisfiable) {
    json lits = json::array();
    for (std::size_t v = 0; v < r.assignment.size(); ++v) {
      lits.push_back(r.assignment[v] ? static_cast<long>(v + 1)
                                     : -static_cast<long>(v + 1));
    }
    payload["assignment"] = lits;
  } else {
    payload["conflict_variable"] = *r.conflict + 1;
  }
  if (as_json) {
    out << report("twosat", path, input, payload, ms_since(start)).dump(2) << '\n';
  } else {
    out << (r.satisfiable ? "SAT" : "UNSAT") << '\n';
    if (r.satisfiable) {
      for (std::size_t v = 0; v < r.assignment.size(); ++v) {
        out << (r.assignment[v] ? "" : "-") << v + 1 << ' ';
      }
      out << "0\n";
    }
  }
  err << path << ": " << (r.satisfiable ? "SAT" : "UNSAT") << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// flower-adversary

int cmd_flower(int k, const std::string& strat_path, bool as_json,
               std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  Game game = gen_flower(k);
  auto input = read_file(strat_path);
  auto machine = strategy_from_json(game.arena(), json::parse(input));
  auto r = flower_adversary(k, machine);
  auto to_petals = [k](ColorMask s) {
    json out = json::array();
    for (int i = 0; i < k; ++i) {
      if ((s >> i) & 1) out.push_back(i + 1);
    }
    return out;
  };
  json stopping = json::array();
  for (auto s : r.stopping_sets) stopping.push_back(to_petals(s));
  json payload = {{"k", k},
                  {"states", machine.state_count()},
                  {"stopping_sets", stopping},
                  {"X", to_petals(r.missing)},
                  {"moves", r.adam_moves},
                  {"play", names_json(game.arena(), r.outcome.play.vertices)},
                  {"winner", to_string(r.outcome.winner)}};
  if (as_json) {
    out << report("flower-adversary", strat_path, input, payload,
                  ms_since(start))
               .dump(2)
        << '\n';
  } else {
    out << "refuted: X = " << payload["X"].dump() << ", Adam plays petals "
        << payload["moves"].dump() << '\n';
  }
  err << "flower(" << k << "): " << machine.state_count()
      << "-state machine refuted in " << r.outcome.steps << " steps\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Solver suite for generalized reachability games", "genreach"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  const std::size_t budget_default = default_budget(20'000'000);
  const std::size_t search_default = default_budget(50'000'000);

  SolveOptions so;
  so.budget = budget_default;
  auto* solve = app.add_subcommand("solve", "Solve a game file or a directory of *.gr files");
  solve->add_option("path", so.path, "Game file or directory")->required();
  solve->add_option("--method", so.method, "Solver")
      ->check(CLI::IsMember({"auto", "fpt", "singleton", "oneplayer2", "opponent", "minimax"}));
  solve->add_flag("--json", so.json, "JSON report on stdout");
  solve->add_flag("--dot", so.dot, "DOT rendering on stdout");
  solve->add_flag("--strategies", so.strategies, "Include strategies in the JSON report");
  solve->add_option("--color-cap", so.color_cap, "Refuse games with more colors");
  solve->add_option("--budget", so.budget, "Node budget of the minimax method");

  std::string qbf_path, via = "both";
  bool qbf_json = false;
  auto* qbf = app.add_subcommand("qbf", "Decide a QDIMACS formula");
  qbf->add_option("file", qbf_path, "QDIMACS file")->required();
  qbf->add_option("--via", via, "Route")->check(CLI::IsMember({"game", "brute", "both"}));
  qbf->add_flag("--json", qbf_json, "JSON report on stdout");

  GenOptions go;
  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a game");
  gen->add_option("family", go.family, "Family")
      ->required()
      ->check(CLI::IsMember({"flower", "picker", "fig4", "fig5", "random"}));
  gen->add_option("--k", go.k, "Number of colors");
  gen->add_option("--n", go.random.n, "Vertices (random)");
  gen->add_option("--p", go.random.edge_probability, "Edge probability (random)");
  gen->add_option("--out-degree", go.random.out_degree, "Fixed out-degree (random)");
  gen->add_option("--eve-ratio", go.random.eve_ratio, "Share of Eve vertices (random)");
  gen->add_option("--min-size", go.random.min_color_size, "Smallest color set (random)");
  gen->add_option("--max-size", go.random.max_color_size, "Largest color set (random)");
  auto* seed_opt = gen->add_option("--seed", seed, "Seed (random)");
  gen->add_flag("--one-player", go.random.one_player, "Every vertex Eve's");
  gen->add_flag("--opponent", go.random.opponent_player, "Every vertex Adam's");
  gen->add_flag("--singleton", go.random.singleton, "Singleton colors");
  bool no_init = false;
  gen->add_flag("--no-init", no_init, "Omit the init vertex");
  gen->add_option("-o,--output", go.output, "Output file (default stdout)");

  std::string game_path, strat_path, region = "all";
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Check a strategy against every opponent");
  verify->add_option("game", game_path, "Game file")->required();
  verify->add_option("strategy", strat_path, "Strategy JSON")->required();
  verify->add_option("--region", region, "Claimed region: the player's winning region or init")
      ->check(CLI::IsMember({"all", "init"}));
  verify->add_flag("--json", verify_json, "JSON report on stdout");

  std::string mm_path, mm_player = "eve", mm_class = "color-obs";
  std::size_t mm_bound = 3, mm_budget = search_default;
  bool mm_json = false;
  auto* minmem = app.add_subcommand("minmem", "Smallest winning machine from init");
  minmem->add_option("game", mm_path, "Game file")->required();
  minmem->add_option("--player", mm_player, "Player")->check(CLI::IsMember({"eve", "adam"}));
  minmem->add_option("--bound", mm_bound, "Largest state count tried")->check(CLI::PositiveNumber);
  minmem->add_option("--class", mm_class, "Machine class")->check(CLI::IsMember({"full", "color-obs"}));
  minmem->add_option("--budget", mm_budget, "Search node budget");
  minmem->add_flag("--json", mm_json, "JSON report on stdout");

  std::string sat_path;
  bool sat_json = false;
  auto* twosat = app.add_subcommand("twosat", "Solve a DIMACS CNF with clauses of width <= 2");
  twosat->add_option("file", sat_path, "DIMACS file")->required();
  twosat->add_flag("--json", sat_json, "JSON report on stdout");

  int fl_k = 2;
  std::string fl_path;
  bool fl_json = false;
  auto* flower = app.add_subcommand("flower-adversary", "Refute a small Eve machine on the flower");
  flower->add_option("--k", fl_k, "Petals")->check(CLI::Range(1, 19));
  flower->add_option("strategy", fl_path, "Eve strategy JSON for gen flower --k K")->required();
  flower->add_flag("--json", fl_json, "JSON report on stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(so, out, err);
    if (*qbf) return cmd_qbf(qbf_path, via, qbf_json, out, err);
    if (*gen) {
      if (*seed_opt) go.seed = seed;
      go.random.with_init = !no_init;
      return cmd_gen(go, out, err);
    }
    if (*verify) return cmd_verify(game_path, strat_path, region, verify_json, out, err);
    if (*minmem) {
      return cmd_minmem(mm_path, mm_player, mm_bound, mm_class, mm_budget,
                        mm_json, out, err);
    }
    if (*twosat) return cmd_twosat(sat_path, sat_json, out, err);
    if (*flower) return cmd_flower(fl_k, fl_path, fl_json, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_of(e);
  }
  return kUsage;
}

}  // namespace genreach::cli
