#include "pforge/cli/config.hpp"

#include <cmath>
#include <set>
#include <string>

namespace pforge::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Reads fields out of one JSON object and remembers which keys were touched, so that
// anything left over can be reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "/" : path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  std::string at(const std::string& key) const { return path_ + "/" + key; }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(at(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(at(key), "must be finite");
    }
  }
  void number(const std::string& key, double& out, double lo, double hi) {
    number(key, out);
    if (out < lo || out > hi)
      fail(at(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  template <class Int>
  void integer(const std::string& key, Int& out, long long lo) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(at(key), "expected an integer");
      const long long x = v->get<long long>();
      if (x < lo) fail(at(key), "must be >= " + std::to_string(lo));
      out = static_cast<Int>(x);
    }
  }
  void seed(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() || (!v->is_number_unsigned() && v->get<std::int64_t>() < 0))
        fail(at(key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }
  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(at(key), "expected true or false");
      out = v->get<bool>();
    }
  }
  void string(const std::string& key, std::string& out, const std::set<std::string>& allowed) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(at(key), "expected a string");
      out = v->get<std::string>();
      if (!allowed.empty() && !allowed.count(out)) fail(at(key), "unsupported value '" + out + "'");
    }
  }
  void vec(const std::string& key, Vec& out, std::size_t size) {
    if (const json* v = find(key)) out = read_vec(*v, at(key), size);
  }
  static Vec read_vec(const json& v, const std::string& path, std::size_t size) {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    if (size && v.size() != size) fail(path, "expected " + std::to_string(size) + " entries");
    Vec out;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_number()) fail(path + "/" + std::to_string(j), "expected a number");
      out.push_back(v[j].get<double>());
      if (!std::isfinite(out.back())) fail(path + "/" + std::to_string(j), "must be finite");
    }
    return out;
  }

  void done() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) fail(at(key), "unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_rp(Section& s, rp::AuditOptions& o) {
  s.number("alpha", o.alpha);
  s.number("tol_r", o.tol_r);
  s.number("tol_f", o.tol_f);
  s.number("tol_e", o.tol_e);
  if (!(o.alpha > 0)) fail(s.at("alpha"), "must be > 0");
  if (!(o.tol_r > 0)) fail(s.at("tol_r"), "must be > 0");
  if (!(o.tol_f > 0)) fail(s.at("tol_f"), "must be > 0");
  if (!(o.tol_e > 0 && o.tol_e < 1)) fail(s.at("tol_e"), "must lie in (0, 1)");
  s.done();
}

void read_game(Section& s, GameSection& g) {
  s.number("d1", g.river.d1);
  if (const json* v = s.find("delta")) {
    if (!v->is_array() || v->size() != 3) fail(s.at("delta"), "expected 3 rows of 2 numbers");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string row = s.at("delta") + "/" + std::to_string(i);
      const Vec r = Section::read_vec((*v)[i], row, 2);
      for (std::size_t l = 0; l < 2; ++l) {
        if (!(r[l] > 0 && r[l] <= 1)) fail(row + "/" + std::to_string(l), "must lie in (0, 1]");
        g.river.delta[i][l] = r[l];
      }
    }
  }
  s.number("cap", g.river.cap);
  if (!(g.river.cap > 0)) fail(s.at("cap"), "must be > 0");
  s.vec("theta0", g.theta0, game::RiverPollutionGame::kThetaDim);
  s.number("jitter", g.jitter);
  if (!(g.jitter >= 0)) fail(s.at("jitter"), "must be >= 0");
  s.integer("N", g.N, 1);
  s.integer("T", g.T, 1);
  if (const json* v = s.find("nash")) {
    Section n(*v, s.at("nash"));
    std::string schedule(game::to_string(g.nash.schedule));
    n.string("schedule", schedule, {"harmonic", "constant", "line_search"});
    g.nash.schedule = game::schedule_from_string(schedule);
    n.number("constant_step", g.nash.constant_step);
    if (!(g.nash.constant_step > 0 && g.nash.constant_step <= 1))
      fail(n.at("constant_step"), "must lie in (0, 1]");
    n.integer("max_iters", g.nash.max_iters, 1);
    n.number("tol_ne", g.nash.tol_ne);
    if (!(g.nash.tol_ne > 0)) fail(n.at("tol_ne"), "must be > 0");
    n.done();
  }
  s.done();
}

void read_spsa(Section& s, spsa::SPSAConfig& c) {
  s.number("a", c.a);
  s.number("c", c.c);
  s.number("q", c.q);
  s.number("eta", c.eta);
  s.vec("box_lo", c.box_lo, 0);
  s.vec("box_hi", c.box_hi, 0);
  s.vec("init_lo", c.init_lo, 0);
  s.vec("init_hi", c.init_hi, 0);
  if (const json* v = s.find("theta0"); v && !v->is_null())
    c.theta0 = Section::read_vec(*v, s.at("theta0"), 0);
  s.integer("max_iters", c.max_iters, 0);
  s.number("stop_tol", c.stop_tol);
  s.boolean("parallel_pair", c.parallel_pair);
  s.done();
  if (c.dim() != game::RiverPollutionGame::kThetaDim)
    fail(s.at("box_lo"), "the river mechanism has 7 parameters");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    fail("/spsa", e.what());
  }
}

void read_dro(Section& s, DROSection& d) {
  s.number("delta", d.delta);
  if (!(d.delta > 0)) fail(s.at("delta"), "must be > 0");
  if (const json* v = s.find("epsilons")) {
    d.epsilons = Section::read_vec(*v, s.at("epsilons"), 0);
    if (d.epsilons.empty()) fail(s.at("epsilons"), "needs at least one radius");
    for (std::size_t j = 0; j < d.epsilons.size(); ++j)
      if (!(d.epsilons[j] >= 0)) fail(s.at("epsilons") + "/" + std::to_string(j), "must be >= 0");
  }
  auto& c = d.solver;
  s.number("lambda_hat", c.lambda_hat);
  if (!(c.lambda_hat > 0 && c.lambda_hat < 1)) fail(s.at("lambda_hat"), "must lie in (0, 1)");
  std::string box = d.scaled_box ? "scaled" : "standard";
  s.string("box", box, {"standard", "scaled"});
  d.scaled_box = box == "scaled";
  c.box = d.scaled_box ? dro::PsiBox::scaled(c.lambda_hat) : dro::PsiBox::standard(c.lambda_hat);
  s.boolean("printed_v_bound", c.printed_v_bound);
  s.integer("max_iters", c.max_iters, 1);
  s.integer("v_grid", c.v_grid, 2);
  s.integer("v_refine", c.v_refine, 0);
  s.integer("inner_iters", c.inner_iters, 1);
  s.integer("master_starts", c.master_starts, 1);
  s.number("spread_tol", c.spread_tol);
  if (!(c.spread_tol >= 0)) fail(s.at("spread_tol"), "must be >= 0");
  s.integer("cv_grid_steps", c.cv_grid_steps, 1);
  s.integer("cv_starts", c.cv_starts, 1);
  if (const json* v = s.find("instance")) {
    Section in(*v, s.at("instance"));
    in.integer("T", d.instance.T, 1);
    in.integer("N", d.instance.N, 1);
    in.number("jitter", d.instance.jitter);
    if (!(d.instance.jitter >= 0)) fail(in.at("jitter"), "must be >= 0");
    in.done();
  }
  s.done();
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    fail("/dro", e.what());
  }
}

void read_mc(Section& s, MonteCarloSection& m) {
  s.integer("replications", m.replications, 1);
  s.seed("base_seed", m.base_seed);
  s.integer("parallelism", m.parallelism, 1);
  s.string("command", m.command, {"spsa", "dro"});
  s.done();
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig c;
  const std::size_t p = game::RiverPollutionGame::kThetaDim;
  c.spsa.box_lo.assign(p, 0.0);
  c.spsa.box_hi.assign(p, 1.0);
  c.spsa.init_lo.assign(p, 0.0);
  c.spsa.init_hi.assign(p, 0.5);
  c.dro.solver.box = dro::PsiBox::scaled(c.dro.solver.lambda_hat);
  return c;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c = default_config();
  Section top(j, "");
  top.seed("seed", c.seed);
  if (const json* v = top.find("rp")) {
    Section s(*v, "/rp");
    read_rp(s, c.rp);
  }
  if (const json* v = top.find("game")) {
    Section s(*v, "/game");
    read_game(s, c.game);
  }
  if (const json* v = top.find("spsa")) {
    Section s(*v, "/spsa");
    read_spsa(s, c.spsa);
  }
  if (const json* v = top.find("dro")) {
    Section s(*v, "/dro");
    read_dro(s, c.dro);
  }
  if (const json* v = top.find("monte_carlo")) {
    Section s(*v, "/monte_carlo");
    read_mc(s, c.monte_carlo);
  }
  if (const json* v = top.find("output")) {
    Section s(*v, "/output");
    s.string("dir", c.out_dir, {});
    s.done();
  }
  top.done();
  c.spsa.T = c.game.T;
  c.spsa.alpha = c.rp.alpha;
  c.spsa.seed = c.seed;
  c.dro.solver.seed = c.seed;
  c.dro.instance.seed = c.seed;
  return c;
}

json to_json(const ExperimentConfig& c) {
  json delta = json::array();
  for (const auto& row : c.game.river.delta) delta.push_back({row[0], row[1]});
  json spsa = {{"a", c.spsa.a},
               {"c", c.spsa.c},
               {"q", c.spsa.q},
               {"eta", c.spsa.eta},
               {"box_lo", c.spsa.box_lo},
               {"box_hi", c.spsa.box_hi},
               {"init_lo", c.spsa.init_lo},
               {"init_hi", c.spsa.init_hi},
               {"theta0", c.spsa.theta0 ? json(*c.spsa.theta0) : json(nullptr)},
               {"max_iters", c.spsa.max_iters},
               {"stop_tol", c.spsa.stop_tol},
               {"parallel_pair", c.spsa.parallel_pair}};
  const auto& s = c.dro.solver;
  return {
      {"seed", c.seed},
      {"rp", {{"alpha", c.rp.alpha}, {"tol_r", c.rp.tol_r}, {"tol_f", c.rp.tol_f}, {"tol_e", c.rp.tol_e}}},
      {"game",
       {{"d1", c.game.river.d1},
        {"delta", delta},
        {"cap", c.game.river.cap},
        {"theta0", c.game.theta0},
        {"jitter", c.game.jitter},
        {"N", c.game.N},
        {"T", c.game.T},
        {"nash",
         {{"schedule", std::string(game::to_string(c.game.nash.schedule))},
          {"constant_step", c.game.nash.constant_step},
          {"max_iters", c.game.nash.max_iters},
          {"tol_ne", c.game.nash.tol_ne}}}}},
      {"spsa", spsa},
      {"dro",
       {{"delta", c.dro.delta},
        {"epsilons", c.dro.epsilons},
        {"lambda_hat", s.lambda_hat},
        {"box", c.dro.scaled_box ? "scaled" : "standard"},
        {"printed_v_bound", s.printed_v_bound},
        {"max_iters", s.max_iters},
        {"v_grid", s.v_grid},
        {"v_refine", s.v_refine},
        {"inner_iters", s.inner_iters},
        {"master_starts", s.master_starts},
        {"spread_tol", s.spread_tol},
        {"cv_grid_steps", s.cv_grid_steps},
        {"cv_starts", s.cv_starts},
        {"instance", {{"T", c.dro.instance.T}, {"N", c.dro.instance.N}, {"jitter", c.dro.instance.jitter}}}}},
      {"monte_carlo",
       {{"replications", c.monte_carlo.replications},
        {"base_seed", c.monte_carlo.base_seed},
        {"parallelism", c.monte_carlo.parallelism},
        {"command", c.monte_carlo.command}}},
      {"output", {{"dir", c.out_dir}}},
  };
}

}  // namespace pforge::cli
