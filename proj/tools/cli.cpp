#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include <CLI11.hpp>

#include "lensclass/classify.hpp"
#include "lensclass/formulas.hpp"
#include "lensclass/serialize.hpp"
#include "lensclass/slp.hpp"

namespace lensclass::cli {

using nlohmann::json;

namespace {

std::string join(const std::vector<Int>& w, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? sep : "") + std::to_string(w[i]);
  return s;
}

void write_csv(std::ostream& out, const IntMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << "\n";
  }
}

Int budget_for(const RunConfig& cfg, Int r) { return cfg.budget < 0 ? 4 * r : cfg.budget; }

}  // namespace

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LENSCLASS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int cmd_adjacency(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const LensParams p = LensParams::make(cfg.r, cfg.weights);
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    if (cfg.method == "formula") {
      const FormulaMatrix f = adjacency_formula(p);
      if (format == "json")
        out << to_json(f, p).dump() << "\n";
      else if (format == "csv")
        write_csv(out, f.matrix);
      else {
        std::vector<VertexId> order;
        for (Index i = 0; i < f.matrix.rows(); ++i) order.push_back({0, static_cast<long>(i)});
        out << to_dot(graph_from_matrix(f.matrix, order), "formula");
      }
      return Ok;
    }
    const ModifiedLensGraph g = modified_graph(p);
    if (format == "json")
      out << to_json(g).dump() << "\n";
    else if (format == "csv")
      write_csv(out, g.matrix);
    else
      out << to_dot(g.graph(), "lens");
    return Ok;
  } catch (const Error& e) {
    err << "adjacency: " << e.what() << "\n";
    return Invalid;
  }
}

int cmd_isomorphic(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  LensParams p, q;
  try {
    p = LensParams::make(cfg.r, cfg.weights);
    q = LensParams::make(cfg.r, cfg.weights2);
  } catch (const Error& e) {
    err << "isomorphic: " << e.what() << "\n";
    return Invalid;
  }
  json doc = {{"schema", kSchema}, {"r", cfg.r}, {"weights", cfg.weights}, {"weights2", cfg.weights2}};
  if (p.weights.size() != q.weights.size() || gcd_profile(p) != gcd_profile(q)) {
    // different ideal structure: the graphs have different component posets
    doc["invariant"] = false;
    doc["search"] = "skipped";
    doc["witness"] = nullptr;
    doc["reason"] = "gcd patterns differ";
    out << doc.dump() << "\n";
    err << "isomorphic: gcd patterns differ (" << join(gcd_profile(p), ",") << " vs " << join(gcd_profile(q), ",")
        << "); not isomorphic\n";
    return Invalid;
  }

  std::optional<bool> inv;
  const auto pattern = gcd_pattern(p);
  if (pattern && pattern->dim <= 7) inv = invariant(cfg.r, *pattern, p.weights, q.weights);
  doc["invariant"] = inv ? json(*inv) : json(nullptr);

  const Int budget = budget_for(cfg, cfg.r);
  std::optional<SearchResult> res;
  if (budget > 0) {
    const auto g1 = modified_graph(p), g2 = modified_graph(q);
    const Poset poset = reachability_poset(g1.matrix);
    if (poset == reachability_poset(g2.matrix))
      res = equivalent_bounded(b_matrix(g1.matrix), b_matrix(g2.matrix), poset, BigInt(budget));
    else
      res = SearchResult{};
  }
  doc["search"] = !res ? "skipped" : res->found() ? "found" : "exhausted";
  doc["witness"] = res && res->witness ? to_json(*res->witness) : json(nullptr);
  if (res && !res->found()) {
    doc["search_infeasible"] = res->infeasible;
    if (res->best_multiplicity) doc["best_multiplicity"] = to_json(*res->best_multiplicity);
  }
  out << doc.dump() << "\n";

  if (inv) {
    if (res && res->found() && !*inv) err << "isomorphic: witness found although the invariant differs\n";
    return *inv ? Ok : No;
  }
  if (res && res->found()) return Ok;
  err << "isomorphic: no invariant for this pattern and the search was inconclusive\n";
  return Inconclusive;
}

// ---------------------------------------------------------------- verify

namespace {

struct Row {
  std::string check;
  Int r = 0;
  int dim = 0, ell = 0;
  Int K = 1;
  long cases = 0;
  std::string status = "pass";
  json failure;  // first failing case
};

using Task = std::function<Row()>;

Row start_row(const char* check, Int r, const GcdPattern& pat) {
  Row row;
  row.check = check;
  row.r = r;
  row.dim = pat.dim;
  row.ell = pat.ell;
  row.K = pat.K;
  return row;
}

void fail(Row& row, json detail) {
  if (row.status != "fail") row.failure = std::move(detail);
  row.status = "fail";
}

std::vector<std::vector<Int>> sweep_weights(Int r, const GcdPattern& pat, std::uint64_t seed) {
  auto all = pattern_weights(r, pat);
  if (pat.dim < 7 || r <= 16 || all.size() <= 500) return all;
  std::mt19937_64 rng(seed * 1000003u + static_cast<std::uint64_t>(r * 1009 + pat.K * 31 + pat.ell));
  for (std::size_t i = all.size() - 1; i > 0; --i) std::swap(all[i], all[rng() % (i + 1)]);
  all.resize(500);
  std::sort(all.begin(), all.end());
  return all;
}

Row check_formula(Int r, GcdPattern pat, std::uint64_t seed) {
  Row row = start_row("formula", r, pat);
  for (const auto& w : sweep_weights(r, pat, seed)) {
    ++row.cases;
    const LensParams p = LensParams::make(r, w);
    if (!adjacency_formula(p).agrees_with(modified_graph(p).matrix)) fail(row, {{"weights", w}});
  }
  return row;
}

Row check_signature(Int r, GcdPattern pat) {
  Row row = start_row("signature", r, pat);
  const auto all = pattern_weights(r, pat);
  std::vector<InvariantSignature> sig;
  for (const auto& w : all) sig.push_back(signature(r, pat.dim, pat.ell, pat.K, w));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      ++row.cases;
      if ((sig[i] == sig[j]) != invariant(r, pat, all[i], all[j]))
        fail(row, {{"weights", all[i]}, {"weights2", all[j]}});
    }
  return row;
}

Row check_table(Int r, GcdPattern pat) {
  Row row = start_row("table", r, pat);
  row.cases = 1;
  const Int got = count_classes(r, pat.dim, pat.ell, pat.K), want = table_count(r, pat.dim, pat.ell, pat.K);
  if (got != want) fail(row, {{"count", got}, {"expected", want}});
  return row;
}

Row check_coprime(Int r) {
  Row row = start_row("coprime", r, {7, 0, 1});
  row.cases = 1;
  const Int want = r % 3 == 0 ? 2 : 1;
  const Int got = count_classes(r, 7, 0, 1);
  if (got != want) fail(row, {{"count", got}, {"expected", want}});
  if (r % 3 == 0 && invariant_coprime7(r, {1, 1, 1, 1}, {1, 1, r - 1, 1}))
    fail(row, {{"weights", {1, 1, 1, 1}}, {"weights2", {1, 1, r - 1, 1}}});
  return row;
}

Row check_search(Int r, GcdPattern pat, Int budget) {
  Row row = start_row("search", r, pat);
  if (budget <= 0) {
    row.status = "skipped";
    return row;
  }
  // weights with identical matrices need no search; compare one representative per matrix
  struct Group {
    std::vector<Int> rep;
    IntMatrix B;
    InvariantSignature sig;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  Poset poset;
  for (const auto& w : pattern_weights(r, pat)) {
    const auto g = modified_graph(LensParams::make(r, w));
    std::ostringstream key;
    key << g.matrix;
    const auto sig = signature(r, pat.dim, pat.ell, pat.K, w);
    auto [it, fresh] = index.try_emplace(key.str(), groups.size());
    if (fresh) {
      if (groups.empty()) poset = reachability_poset(g.matrix);
      groups.push_back({w, b_matrix(g.matrix), sig});
    } else if (groups[it->second].sig != sig) {
      fail(row, {{"weights", groups[it->second].rep}, {"weights2", w}, {"reason", "equal matrices, different signature"}});
    }
  }
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      ++row.cases;
      const bool inv = invariant(r, pat, groups[i].rep, groups[j].rep);
      const auto res = equivalent_bounded(groups[i].B, groups[j].B, poset, BigInt(budget));
      json detail = {{"weights", groups[i].rep}, {"weights2", groups[j].rep}, {"invariant", inv}};
      if (res.found()) {
        if (!inv) fail(row, detail);
        if (!verify_witness(res.witness->U, res.witness->V, groups[i].B, groups[j].B)) fail(row, detail);
      } else if (inv) {
        detail["infeasible"] = res.infeasible;
        fail(row, detail);
      }
    }
  return row;
}

std::vector<GcdPattern> patterns(Int r, int dim) {
  std::vector<GcdPattern> out;
  const int n = (dim - 1) / 2;
  for (Int K = 1; K <= r; ++K) {
    if (r % K) continue;
    for (int ell = 0; ell <= (K == 1 ? 0 : n); ++ell) out.push_back({dim, ell, K});
  }
  return out;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.max_r < 2) {
    err << "verify: --max-r must be at least 2\n";
    return Invalid;
  }
  std::vector<Task> tasks;
  for (Int r = 2; r <= cfg.max_r; ++r) {
    for (int dim : {3, 5, 7})
      for (const auto& pat : patterns(r, dim)) {
        tasks.push_back([=] { return check_formula(r, pat, cfg.seed); });
        tasks.push_back([=] { return check_table(r, pat); });
        if (dim > 3) {
          tasks.push_back([=] { return check_signature(r, pat); });
          tasks.push_back([=, b = budget_for(cfg, r)] { return check_search(r, pat, b); });
        }
      }
    tasks.push_back([=] { return check_coprime(r); });
  }

  std::vector<Row> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        rows[i] = tasks[i]();
      } catch (const std::exception& e) {
        rows[i].check = "error";
        fail(rows[i], {{"error", e.what()}});
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(worker_count(), tasks.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const std::vector<std::string> order = {"formula", "table", "signature", "search", "coprime", "error"};
  auto rank = [&](const Row& x) { return std::find(order.begin(), order.end(), x.check) - order.begin(); };
  std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    return std::tuple(rank(a), a.r, a.dim, a.ell, a.K) < std::tuple(rank(b), b.r, b.dim, b.ell, b.K);
  });

  out << "check,r,dim,ell,K,cases,status\n";
  const Row* first = nullptr;
  for (const auto& row : rows) {
    out << row.check << "," << row.r << "," << row.dim << "," << row.ell << "," << row.K << "," << row.cases << ","
        << row.status << "\n";
    if (row.status == "fail" && !first) first = &row;
  }
  if (!first) return Ok;
  json detail = {{"check", first->check}, {"r", first->r}, {"dim", first->dim},
                 {"ell", first->ell},     {"K", first->K}, {"case", first->failure}};
  err << "verify: first failure " << detail.dump() << "\n";
  return No;
}

int cmd_classes(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.r < 2) throw Error(ErrorCode::InvalidParams, "r must be at least 2");
    const auto report = class_report(cfg.r, cfg.dim, cfg.ell, cfg.K);
    if (cfg.format == "json") {
      json rows = json::array();
      for (const auto& c : report)
        rows.push_back({{"signature", to_json(c.signature)},
                        {"canonical", c.canonical},
                        {"representative", c.representative},
                        {"size", c.size}});
      out << json{{"schema", kSchema}, {"r", cfg.r}, {"dim", cfg.dim}, {"ell", cfg.ell}, {"K", cfg.K},
                  {"table_count", table_count(cfg.r, cfg.dim, cfg.ell, cfg.K)}, {"classes", rows}}
                 .dump()
          << "\n";
      return Ok;
    }
    out << "signature,canonical,representative,size\n";
    for (const auto& c : report)
      out << '"' << c.signature.to_string() << "\"," << join(c.canonical) << "," << join(c.representative) << ","
          << c.size << "\n";
    return Ok;
  } catch (const Error& e) {
    err << "classes: " << e.what() << "\n";
    return Invalid;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lens space graph classification toolkit", "lensclass"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* adj = app.add_subcommand("adjacency", "adjacency matrix of the modified lens graph");
  adj->add_option("--r", cfg.r, "order of the cyclic group")->required();
  adj->add_option("--weights", cfg.weights, "m_0,...,m_n")->delimiter(',')->required();
  adj->add_option("--method", cfg.method)->check(CLI::IsMember({"brute", "formula"}));
  adj->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "dot", "csv"}));

  auto* iso = app.add_subcommand("isomorphic", "compare two weight vectors");
  iso->add_option("--r", cfg.r)->required();
  iso->add_option("--weights", cfg.weights)->delimiter(',')->required();
  iso->add_option("--weights2", cfg.weights2)->delimiter(',')->required();
  iso->add_option("--budget", cfg.budget, "total witness multiplicity (default 4r, 0 skips the search)");

  auto* ver = app.add_subcommand("verify", "sweep every check up to max r");
  ver->add_option("--max-r", cfg.max_r)->required();
  ver->add_option("--budget", cfg.budget);
  ver->add_option("--seed", cfg.seed);
  ver->add_option("--format", cfg.format)->check(CLI::IsMember({"csv"}));

  auto* cls = app.add_subcommand("classes", "isomorphism classes for one gcd pattern");
  cls->add_option("--r", cfg.r)->required();
  cls->add_option("--dim", cfg.dim)->check(CLI::IsMember({3, 5, 7}));
  cls->add_option("--ell", cfg.ell);
  cls->add_option("--K", cfg.K);
  cls->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return Invalid;
  }

  if (adj->parsed()) return cmd_adjacency(cfg, out, err);
  if (iso->parsed()) return cmd_isomorphic(cfg, out, err);
  if (ver->parsed()) return cmd_verify(cfg, out, err);
  return cmd_classes(cfg, out, err);
}

}  // namespace lensclass::cli
