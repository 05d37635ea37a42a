#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "latdec/analysis.hpp"
#include "latdec/errors.hpp"
#include "latdec/io.hpp"
#include "latdec/registry.hpp"
#include "latdec/sim.hpp"

#ifndef LATDEC_GIT_DESCRIBE
#define LATDEC_GIT_DESCRIBE "unknown"
#endif

using namespace latdec;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t budget = 0;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

EnumBudget make_budget(const Globals& g) {
  EnumBudget b;
  if (g.budget) b.max_nodes = g.budget;
  return b;
}

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return *g.seed;
  if (const char* env = std::getenv("SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw ValidationError(std::string("SEED must be an unsigned integer, got '") + env + "'");
    }
  }
  return 1;
}

int resolve_threads(const Globals& g) {
  if (g.threads > 0) return g.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_csv_numbers(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell.substr(first), &pos));
    } catch (const std::exception&) {
      throw ValidationError("bad number '" + cell + "'");
    }
  }
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  // "a,b,c" or "from:to:step"
  if (spec.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ':')) parts.push_back(std::stod(cell));
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) throw ValidationError("grid must be from:to:step");
    std::vector<double> out;
    for (int i = 0;; ++i) {
      const double v = parts[0] + i * parts[2];
      if (v > parts[1] + 1e-9) break;
      out.push_back(std::round(v * 1e6) / 1e6);
    }
    return out;
  }
  return parse_csv_numbers(spec);
}

std::map<double, std::size_t> parse_aleph(const std::string& spec) {
  std::map<double, std::size_t> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("aleph entries are radius=cap");
    try {
      const double r = std::stod(item.substr(0, eq));
      const long cap = std::stol(item.substr(eq + 1));
      if (cap < 1) throw ValidationError("aleph caps must be >= 1");
      out[r] = static_cast<std::size_t>(cap);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("bad aleph entry '" + item + "'");
    }
  }
  return out;
}

struct LoadedLattice {
  LatticeBasis lattice;
  json meta;
  std::string sha256;
};

LoadedLattice load_lattice(const std::string& path) {
  LoadedLattice l;
  const std::string text = read_text_file(path);
  l.sha256 = sha256_hex(text);
  l.lattice = read_lattice_file(path);
  const std::string side = path + ".json";
  std::ifstream in(side);
  if (in) {
    try {
      l.meta = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError("cannot parse " + side + ": " + e.what());
    }
  }
  return l;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::size_t n = 0;
  std::string out;
  bool enumerate = false;
  bool decide_minimum = false;
  std::string leech_basis;
  std::string base;
  std::string theta = "phi";
  std::size_t k = 2;
  std::size_t depth = 1;
};

int cmd_construct(const ConstructArgs& a, const Globals& g) {
  BuildOptions opt;
  opt.budget = make_budget(g);
  opt.enumerate = a.enumerate;
  opt.decide_minimum = a.decide_minimum;
  opt.theta = a.theta;
  opt.k = a.k;
  opt.depth = a.depth;
  std::string input_hash = "none";
  if (!a.leech_basis.empty()) {
    const std::string text = read_text_file(a.leech_basis);
    input_hash = sha256_hex(text);
    const LatticeBasis l = parse_lattice(text);
    if (!l.complex_basis() || l.complex_basis()->ring != RingTag::Lambda) {
      throw ValidationError("the Lambda24 basis must be a ring lambda lattice file");
    }
    opt.nebe_basis = *l.complex_basis();
  }
  if (!a.base.empty()) {
    input_hash = sha256_hex(read_text_file(a.base));
    opt.parity_base = read_lattice_file(a.base);
  }
  const BuiltLattice b = build_lattice(a.family, a.n, opt);
  json meta = lattice_metadata(b.lattice);
  meta["construction"] = b.construction;
  write_text_file(a.out, format_lattice(b.lattice));
  write_text_file(a.out + ".json", meta.dump(2) + "\n");
  json report = meta;
  report["file"] = a.out;
  report["file_sha256"] = sha256_hex(format_lattice(b.lattice));
  report["input_sha256"] = input_hash;
  std::cout << report.dump() << "\n";
  return 0;
}

int cmd_inspect(const std::string& path, bool no_enumerate, const Globals& g) {
  const LoadedLattice l = load_lattice(path);
  const LatticeBasis& lat = l.lattice;
  json j;
  j["file"] = path;
  j["input_sha256"] = l.sha256;
  j["name"] = lat.name();
  j["dim"] = lat.dim();
  j["volume"] = lat.volume();
  j["volume_sq"] = lat.volume_sq().str();
  j["integral"] = lat.is_integral();
  j["even"] = lat.is_even();
  std::optional<Known<QSqrt7>> d = lat.min_sq_norm();
  std::optional<Known<std::uint64_t>> tau = lat.kissing();
  std::string note;
  const EnumBudget budget = make_budget(g);
  if (!no_enumerate) {
    try {
      if (!d || d->provenance != Provenance::Exact) d = Known<QSqrt7>{min_distance(lat, budget), Provenance::Exact};
      if ((!tau || tau->provenance != Provenance::Exact) && lat.dim() <= budget.max_kissing_dim) {
        tau = Known<std::uint64_t>{kissing(lat, budget), Provenance::Exact};
      }
    } catch (const BudgetExceeded& e) {
      note = std::string("enumeration skipped: ") + e.what();
    }
  }
  if (d) {
    j["min_sq_norm"] = {{"value", d->value.str()}, {"provenance", std::string(provenance_name(d->provenance))}};
    const double gamma = d->value.to_double() / std::pow(lat.volume_sq().to_double(), 1.0 / lat.dim());
    j["coding_gain"] = gamma;
    j["coding_gain_db"] = 10.0 * std::log10(gamma);
  } else {
    j["min_sq_norm"] = nullptr;
    j["coding_gain_db"] = nullptr;
  }
  if (tau) {
    j["kissing"] = {{"value", tau->value}, {"provenance", std::string(provenance_name(tau->provenance))}};
  } else {
    j["kissing"] = nullptr;
  }
  if (!note.empty()) j["note"] = note;
  if (l.meta.contains("construction")) j["construction"] = l.meta["construction"];
  std::cout << j.dump() << "\n";
  return 0;
}

struct DecodeArgs {
  std::string lattice;
  std::string strategy = "SphereEnum";
  double delta = 0.5;
  bool no_removing = false;
  bool split1 = false;
  bool split2 = false;
  std::string aleph;
  std::string point = "-";
  std::string nebe_child = "qmld";
  bool bdd_floor = false;
};

ListConfig list_config(double delta, bool no_removing, bool split1, bool split2, const std::string& aleph,
                       bool bdd_floor) {
  ListConfig c;
  c.delta = delta;
  c.removing_step = !no_removing;
  c.split1 = split1 || split2;
  c.split2 = split2;
  c.aleph = parse_aleph(aleph);
  c.bdd_floor = bdd_floor;
  c.validate();
  return c;
}

int cmd_decode(const DecodeArgs& a, const Globals& g) {
  const LoadedLattice l = load_lattice(a.lattice);
  const ListConfig cfg = list_config(a.delta, a.no_removing, a.split1, a.split2, a.aleph, a.bdd_floor);
  const json construction = l.meta.contains("construction") ? l.meta["construction"] : json();
  const DecoderHandle h =
      make_decoder(l.lattice, construction, parse_strategy(a.strategy), cfg, make_budget(g), a.nebe_child);
  std::istream* in = &std::cin;
  std::ifstream file;
  if (a.point != "-") {
    file.open(a.point);
    if (!file) throw ValidationError("cannot open " + a.point);
    in = &file;
  }
  std::string line;
  std::size_t count = 0;
  while (std::getline(*in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const auto y = parse_csv_numbers(line);
    if (y.size() != l.lattice.dim()) {
      throw ValidationError("point has " + std::to_string(y.size()) + " coordinates, lattice dimension is " +
                            std::to_string(l.lattice.dim()));
    }
    json j = decode_json(h, y);
    j["input_sha256"] = l.sha256;
    std::cout << j.dump() << "\n";
    ++count;
  }
  if (count == 0) throw ValidationError("no query points given");
  return 0;
}

struct PredictArgs {
  std::string family = "parity";
  int k = 2;
  int depth = 1;
  std::string base = "chi:2,1,1";
  std::string bdd_curves;
  double bdd_below = -1.0;
  double delta = 0.5;
  std::string grid = "0:8:0.5";
  bool delta_star = false;
  double target = 1e-5;
  double eta = 0.5;
  double vnr = 0;
};

int cmd_predict(const PredictArgs& a) {
  PredictorSpec spec;
  if (a.family == "parity") {
    spec.family = PredictorFamily::GenericParity;
  } else if (a.family == "split-k2") {
    spec.family = PredictorFamily::SplitK2;
  } else if (a.family == "leech") {
    spec.family = PredictorFamily::Leech;
  } else if (a.family == "nebe") {
    spec.family = PredictorFamily::Nebe;
  } else {
    throw ValidationError("family must be parity, split-k2, leech or nebe");
  }
  spec.k = a.k;
  spec.depth = a.depth;
  std::string hash = "none";
  if (a.base.rfind("chi:", 0) == 0) {
    const auto v = parse_csv_numbers(a.base.substr(4));
    if (v.size() != 3) throw ValidationError("chi base is chi:c,d,vol_2c");
    spec.base = BaseCondition::chi_square(static_cast<int>(v[0]), v[1], v[2]);
  } else {
    const std::string text = read_text_file(a.base);
    hash = sha256_hex(text);
    spec.base = BaseCondition::tabulated(TabulatedCurve::read_csv(a.base));
  }
  if (!a.bdd_curves.empty()) {
    // dim=file,dim=file
    std::stringstream ss(a.bdd_curves);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ValidationError("bdd curves are dim=file");
      spec.bdd_curves[std::stoi(item.substr(0, eq))] = TabulatedCurve::read_csv(item.substr(eq + 1));
    }
    spec.bdd_below = a.bdd_below < 0 ? 0.25 : a.bdd_below;
  }
  std::printf("# input_sha256=%s\n", hash.c_str());
  if (a.delta_star) {
    const auto r = delta_star_modified(spec, a.vnr, a.target, a.eta);
    std::printf("vnr_db,delta_star,value,predictor_id\n%.4f,%.6f,%.6e,%s\n", a.vnr, r.delta, r.value,
                a.family.c_str());
    return 0;
  }
  std::printf("vnr_db,value,predictor_id\n");
  for (double db : parse_grid(a.grid)) {
    std::printf("%.4f,%.6e,%s\n", db, u_recursion(spec, a.delta, db), a.family.c_str());
  }
  return 0;
}

struct SimulateArgs {
  std::string plan;
  std::string lattice;
  std::string strategy = "ParityBDD";
  std::string grid;
  std::uint64_t min_errors = 100;
  std::uint64_t max_trials = 1'000'000;
  std::uint64_t batch = 1000;
  std::string event = "point";
  double delta = 0.5;
  bool no_removing = false;
  bool split1 = false;
  bool split2 = false;
  bool bdd_floor = false;
  std::string aleph;
  std::string out = "-";
  std::string meta;
  std::string nebe_child = "qmld";
};

int cmd_simulate(SimulateArgs a, const Globals& g) {
  if (!a.plan.empty()) {
    json p;
    try {
      p = json::parse(read_text_file(a.plan));
      a.lattice = p.value("lattice", a.lattice);
      a.strategy = p.value("strategy", a.strategy);
      if (p.contains("vnr_grid_db")) {
        std::string s;
        for (double v : p["vnr_grid_db"]) s += (s.empty() ? "" : ",") + std::to_string(v);
        a.grid = s;
      }
      a.min_errors = p.value("min_errors", a.min_errors);
      a.max_trials = p.value("max_trials", a.max_trials);
      a.batch = p.value("batch", a.batch);
      a.event = p.value("event", a.event);
      a.delta = p.value("delta", a.delta);
      a.no_removing = !p.value("removing_step", !a.no_removing);
      a.split1 = p.value("split1", a.split1);
      a.split2 = p.value("split2", a.split2);
      a.bdd_floor = p.value("bdd_floor", a.bdd_floor);
      a.aleph = p.value("aleph", a.aleph);
      a.nebe_child = p.value("nebe_child", a.nebe_child);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("bad plan: ") + e.what());
    }
  }
  if (a.lattice.empty()) throw ValidationError("simulate needs --lattice or a plan");
  if (a.grid.empty()) throw ValidationError("simulate needs a VNR grid");
  const LoadedLattice l = load_lattice(a.lattice);
  const ListConfig cfg = list_config(a.delta, a.no_removing, a.split1, a.split2, a.aleph, a.bdd_floor);
  const json construction = l.meta.contains("construction") ? l.meta["construction"] : json();
  const DecoderHandle h =
      make_decoder(l.lattice, construction, parse_strategy(a.strategy), cfg, make_budget(g), a.nebe_child);
  SimPlan plan;
  plan.decoder = h.decoder;
  plan.vol_2n = std::pow(l.lattice.volume_sq().to_double(), 1.0 / l.lattice.dim());
  plan.vnr_grid_db = parse_grid(a.grid);
  plan.min_errors = a.min_errors;
  plan.max_trials = a.max_trials;
  plan.batch = a.batch;
  plan.seed = resolve_seed(g);
  plan.threads = resolve_threads(g);
  plan.decode = h.list_mode ? SimDecode::List : SimDecode::Nearest;
  plan.list = h.config;
  if (a.event == "point") {
    plan.event = SimEvent::PointError;
  } else if (a.event == "list") {
    plan.event = SimEvent::NotInList;
  } else {
    throw ValidationError("event must be point or list");
  }
  const SimResult r = run(plan);
  const std::string csv = to_csv(r);
  json meta;
  meta["seed"] = plan.seed;
  meta["git_describe"] = LATDEC_GIT_DESCRIBE;
  meta["lattice"] = a.lattice;
  meta["lattice_sha256"] = l.sha256;
  meta["dim"] = l.lattice.dim();
  meta["scheme"] = l.lattice.name() + " " + h.strategy;
  meta["strategy"] = h.strategy;
  meta["event"] = a.event;
  meta["delta"] = h.config.delta;
  meta["removing_step"] = h.config.removing_step;
  meta["csv_sha256"] = sha256_hex(csv);
  if (a.out == "-") {
    std::cout << csv;
    std::cerr << meta.dump() << "\n";
  } else {
    write_text_file(a.out, csv);
    write_text_file(a.meta.empty() ? a.out + ".json" : a.meta, meta.dump(2) + "\n");
  }
  return 0;
}

int cmd_benchmark(const std::string& data_dir, double target) {
  std::printf("# input_sha256=none\n");
  std::printf("scheme,n,pe_norm,vnr_db,source\n");
  for (const auto& r : reference_points()) {
    std::printf("%s,%zu,%.0e,%.2f,%s\n", r.scheme.c_str(), r.n, r.pe_norm, r.vnr_db, r.source.c_str());
  }
  // Simulated curves: data/<name>.csv with a sidecar giving the dimension.
  namespace fs = std::filesystem;
  if (data_dir.empty() || !fs::exists(data_dir)) return 0;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(data_dir)) {
    if (e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const std::string side = f.string() + ".json";
    if (!fs::exists(side)) continue;
    const json meta = json::parse(read_text_file(side));
    if (!meta.contains("dim")) continue;
    const double n = meta["dim"].get<double>();
    const TabulatedCurve c = TabulatedCurve::read_csv(f.string());
    std::vector<std::pair<double, double>> norm;
    for (const auto& [x, p] : c.points()) norm.emplace_back(x, p / n);
    const auto x = crossing_db(norm, target);
    if (!x) continue;
    std::printf("%s (simulated),%zu,%.0e,%.2f,%s sha256=%s\n", meta.value("scheme", f.stem().string()).c_str(),
                static_cast<std::size_t>(n), target, *x, f.filename().string().c_str(),
                sha256_hex(read_text_file(f.string())).substr(0, 16).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice construction, decoding, prediction and simulation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--budget", g.budget, "Enumeration node cap");
  app.add_option("--threads", g.threads, "Worker threads (default: available cores)");
  app.add_option("--seed", g.seed, "Random seed (overrides SEED)");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a lattice and write it with a JSON sidecar");
  construct->add_option("--family", ca.family, "Z, D, BW, E8, Leech, L3x24, N72 or parity")->required();
  construct->add_option("--n", ca.n, "Dimension for Z, D and BW");
  construct->add_option("--out", ca.out, "Output lattice file")->required();
  construct->add_flag("--enumerate", ca.enumerate, "Compute minimum and kissing number by enumeration");
  construct->add_flag("--decide-minimum", ca.decide_minimum, "N72: decide exactly whether norm 6 occurs");
  construct->add_option("--leech-basis", ca.leech_basis, "N72: Z[lambda] basis of Lambda24 (ring lambda file)");
  construct->add_option("--base", ca.base, "parity: base lattice file with a complex basis");
  construct->add_option("--theta", ca.theta, "parity: phi or lambda");
  construct->add_option("--k", ca.k, "parity: arity");
  construct->add_option("--depth", ca.depth, "parity: depth");

  std::string inspect_path;
  bool no_enumerate = false;
  auto* inspect = app.add_subcommand("inspect", "Report figures of merit of a lattice file");
  inspect->add_option("lattice", inspect_path, "Lattice file")->required();
  inspect->add_flag("--no-enumerate", no_enumerate, "Use recorded figures only");

  DecodeArgs da;
  auto* decode = app.add_subcommand("decode", "Decode query points");
  decode->add_option("--lattice", da.lattice, "Lattice file")->required();
  decode->add_option("--strategy", da.strategy, "Decoder strategy tag");
  decode->add_option("--delta", da.delta, "Relative radius");
  decode->add_flag("--no-removing-step", da.no_removing, "Modified list decoding");
  decode->add_flag("--split1", da.split1, "First splitting strategy");
  decode->add_flag("--split2", da.split2, "Second splitting strategy (implies --split1)");
  decode->add_flag("--bdd-floor", da.bdd_floor, "Use BDD for child radii <= 1/4");
  decode->add_option("--aleph", da.aleph, "Bounded list caps radius=cap,...");
  decode->add_option("--point", da.point, "CSV file of points, one per line, or - for stdin");
  decode->add_option("--nebe-child", da.nebe_child, "N72 Lambda24 child: qmld or cvp");

  PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "Evaluate error-probability predictors");
  predict->add_option("--family", pa.family, "parity, split-k2, leech or nebe");
  predict->add_option("--k", pa.k, "Arity");
  predict->add_option("--depth", pa.depth, "Recursion depth");
  predict->add_option("--base", pa.base, "chi:c,d,vol_2c or a curve CSV (vnr_db,pe)");
  predict->add_option("--bdd-curves", pa.bdd_curves, "BDD floor curves dim=file,...");
  predict->add_option("--bdd-below", pa.bdd_below, "BDD floor relative radius (default 1/4)");
  predict->add_option("--delta", pa.delta, "Relative radius");
  predict->add_option("--grid", pa.grid, "VNR grid from:to:step or a,b,c (dB)");
  predict->add_flag("--delta-star", pa.delta_star, "Solve for the smallest adequate radius");
  predict->add_option("--target", pa.target, "Target error probability for --delta-star");
  predict->add_option("--eta", pa.eta, "Safety factor for --delta-star");
  predict->add_option("--vnr", pa.vnr, "VNR (dB) for --delta-star");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo error rates on the Gaussian channel");
  simulate->add_option("--plan", sa.plan, "JSON plan file");
  simulate->add_option("--lattice", sa.lattice, "Lattice file");
  simulate->add_option("--strategy", sa.strategy, "Decoder strategy tag");
  simulate->add_option("--vnr", sa.grid, "VNR grid from:to:step or a,b,c (dB)");
  simulate->add_option("--min-errors", sa.min_errors, "Stop after this many errors");
  simulate->add_option("--max-trials", sa.max_trials, "Trial cap per grid point");
  simulate->add_option("--batch", sa.batch, "Trials per stopping check");
  simulate->add_option("--event", sa.event, "point or list");
  simulate->add_option("--delta", sa.delta, "Relative radius for list strategies");
  simulate->add_flag("--no-removing-step", sa.no_removing, "Modified list decoding");
  simulate->add_flag("--split1", sa.split1, "First splitting strategy");
  simulate->add_flag("--split2", sa.split2, "Second splitting strategy");
  simulate->add_flag("--bdd-floor", sa.bdd_floor, "Use BDD for child radii <= 1/4");
  simulate->add_option("--aleph", sa.aleph, "Bounded list caps radius=cap,...");
  simulate->add_option("--out", sa.out, "CSV output file or - for stdout");
  simulate->add_option("--meta", sa.meta, "JSON metadata file (default <out>.json)");
  simulate->add_option("--nebe-child", sa.nebe_child, "N72 Lambda24 child: qmld or cvp");

  std::string data_dir = "data";
  double bench_target = 1e-5;
  auto* benchmark = app.add_subcommand("benchmark", "Operating points at a normalized error probability");
  benchmark->add_option("--data", data_dir, "Directory of simulated curves");
  benchmark->add_option("--target", bench_target, "Normalized error probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*construct) return cmd_construct(ca, g);
    if (*inspect) return cmd_inspect(inspect_path, no_enumerate, g);
    if (*decode) return cmd_decode(da, g);
    if (*predict) return cmd_predict(pa);
    if (*simulate) return cmd_simulate(sa, g);
    if (*benchmark) return cmd_benchmark(data_dir, bench_target);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
