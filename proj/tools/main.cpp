#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"
#include "ringbif/bifurcation.hpp"
#include "ringbif/charges.hpp"
#include "ringbif/errors.hpp"
#include "ringbif/oracle.hpp"
#include "ringbif/polygonal.hpp"
#include "ringbif/resonance.hpp"
#include "ringbif/spectrum.hpp"
#include "ringbif/stability.hpp"
#include "ringbif/symmetry.hpp"

#ifndef RINGBIF_VERSION
#define RINGBIF_VERSION "0.0.0"
#endif

namespace {

using namespace ringbif;
using cli::Cell;
using cli::Column;
using cli::Document;
using cli::json;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 6;
  double mu = 1.0;
  double q = std::numeric_limits<double>::quiet_NaN();
  double alpha = 2.0;
  int k = 0;
  std::string sector = "planar";
  double nu = 0.0;
  bool normalized = false;
  double nu_min = -3.0, nu_max = 3.0;
  double mu_min = 0.0, mu_max = 50.0;
  int samples = 200;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out, output, format, manifest, config;
  std::string suite = "all";
  std::string general;
  bool scan = false, saturn = false, neutral_limit = false;
  int n_min = 3, n_max = 20;
  bool include_silent = false, no_resonance = false;
  double exclusion_radius = 1e-3;
};

// ---------------------------------------------------------------- columns

const std::vector<Column> kSumsCols = {
    {"k", "index 0..n"},
    {"s_k", "2^-alpha sum_j sin^2(pi k j/n) / sin^(alpha+1)(pi j/n); dimensionless"},
    {"sbar_k", "2^(2-alpha) sum_j sin^2(pi k j/n) / sin^(alpha-1)(pi j/n); stored as 0 at k = n"},
};

const std::vector<Column> kBlockCols = {
    {"row", "matrix row, 0-based"},
    {"col", "matrix column, 0-based"},
    {"re", "real part of the entry"},
    {"im", "imaginary part of the entry"},
    {"nu", "frequency at which the block was evaluated"},
    {"nu_kind", "raw (time frequency) or normalized (raw / sqrt(omega))"},
};

const std::vector<Column> kDiagramCols = {
    {"mu", "central mass on the sampled grid"},
    {"nu", "real root of the block determinant"},
    {"nu_kind", "normalized for planar blocks (raw / sqrt(mu + s_1)), raw for spatial blocks"},
    {"multiplicity", "algebraic multiplicity of the root"},
    {"branch", "mu_plus | mu_minus | mu_zero_k1 | structural | k_n | spatial | numeric"},
};

const std::vector<Column> kBifCols = {
    {"sector", "planar or spatial"},
    {"k", "Fourier block index 1..n (0 for a configuration without ring symmetry)"},
    {"nu", "bifurcation frequency, raw"},
    {"nu_normalized", "nu / sqrt(omega)"},
    {"eta", "orientation-weighted jump of the Morse number across nu"},
    {"multiplicity", "algebraic multiplicity of the root"},
    {"silent", "true for roots with eta = 0 (listed only with --include-silent)"},
    {"group", "isotropy group of the branch"},
    {"h", "gcd(n, k)"},
    {"truly_spatial", "yes | no | marginal | empty when not checked"},
    {"near_mu_k", "mu inside the exclusion neighbourhood of mu_k"},
    {"near_threshold", "mu within 1e-6 (relative) of a critical mass of the block"},
    {"resonance_suspect", "truly-spatial check did not return yes"},
    {"kernel_degenerate", "multiple root or kernel of dimension > 1"},
};

const std::vector<Column> kSymCols = {
    {"field", "descriptor field"},
    {"value", "value as text"},
};

const std::vector<Column> kResCols = {
    {"k", "spatial block index"},
    {"nu_k", "spatial bifurcation frequency, raw"},
    {"l", "harmonic index; the planar block is tested at 2 l nu_k"},
    {"nu", "2 l nu_k, raw"},
    {"det", "determinant of the planar block at nu"},
    {"rcond", "smallest over largest |eigenvalue| of the planar block at nu"},
    {"invertible", "yes | no | marginal"},
    {"truly_spatial", "overall verdict for k"},
    {"in_exclusion", "mu within the exclusion radius of mu_k"},
};

const std::vector<Column> kStabCols = {
    {"sector", "planar or spatial"},
    {"k", "block index"},
    {"real_roots", "real roots of the block determinant, with multiplicity (normalized nu)"},
    {"degree", "degree of the block determinant in nu"},
};

const std::vector<Column> kScanCols = {
    {"n", "number of ring bodies"},
    {"m_star", "central mass above which the ring is spectrally stable (empty if undefined)"},
    {"k", "block attaining m_star"},
    {"branch", "plus or minus threshold of that block"},
    {"stable_above", "whether masses above m_star give spectral stability"},
};

const std::vector<Column> kSaturnCols = {
    {"quantity", "m_plus/n^3 | a/n^6 | b/n^3 for k = n/2"},
    {"value", "computed at the requested n"},
    {"target", "large-n limit"},
    {"relative_gap", "|value / target - 1|"},
};

const std::vector<Column> kNeutralCols = {
    {"n_max", "largest n with s_1 < n"},
};

const std::vector<Column> kVerifyCols = {
    {"suite", "sums | hessian | blocks | crossings"},
    {"case", "fingerprint of the check and its parameters"},
    {"residual", "measured residual"},
    {"tolerance", "pass threshold"},
    {"pass", "residual <= tolerance"},
};

std::string column_help(const std::vector<std::vector<Column>>& groups) {
  std::string s = "\nColumns:\n";
  for (const auto& g : groups) {
    for (const auto& c : g) s += "  " + c.name + std::string(c.name.size() < 18 ? 18 - c.name.size() : 1, ' ') + c.doc + "\n";
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------- helpers

template <class F>
auto parallel_map(std::size_t count, unsigned threads, F f) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < t; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  // merged by index, so the output does not depend on scheduling
  std::vector<R> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

Cell num(int v) { return static_cast<long long>(v); }

std::string nu_kind_for(Sector s) { return s == Sector::planar ? "normalized" : "raw"; }

void require_k(const Options& o, int lo, int hi) {
  if (o.k < lo || o.k > hi) throw DomainError("--k must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void add_points(Document& d, const std::vector<BifurcationPoint>& pts, bool silent) {
  for (const auto& p : pts) {
    Cell ts;
    if (p.truly_spatial) ts = to_string(*p.truly_spatial);
    d.table.add({to_string(p.sector), num(p.k), p.nu, p.nu_normalized, num(p.eta), num(p.multiplicity), silent,
                 p.isotropy ? Cell(p.isotropy->group) : Cell(), p.isotropy ? num(p.isotropy->h) : Cell(), ts,
                 p.flags.near_mu_k, p.flags.near_threshold, p.flags.resonance_suspect, p.flags.kernel_degenerate});
  }
}

GeneralConfig read_general(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read configuration file " + path);
  const json j = json::parse(in);
  GeneralConfig c;
  c.masses = j.at("masses").get<std::vector<double>>();
  for (const auto& p : j.at("positions")) {
    if (!p.is_array() || p.size() != 2) throw DomainError("each position must be [x, y]");
    c.positions.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  c.omega = j.at("omega").get<double>();
  c.alpha = j.value("alpha", 2.0);
  for (double m : c.masses)
    if (!(m > 0.0)) throw DomainError("masses must be positive");
  if (!(c.omega > 0.0)) throw DomainError("omega must be positive");
  if (!(c.alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  check_config(c);
  return c;
}

// ---------------------------------------------------------------- commands

Document cmd_sums(const Options& o) {
  Document d{"sums", "", {kSumsCols, {}}, {}, json::object()};
  const SumTable t = make_sum_table(o.n, o.alpha);
  for (int k = 0; k <= o.n; ++k) d.table.add({num(k), t.s[k], t.s_bar[k]});
  if (o.n >= 3) {
    const double r = verify_recurrences(o.n, o.alpha).max_residual();
    d.annotations.push_back("recurrence residual " + cli::format_double(r));
    d.extra["recurrence_residual"] = r;
  }
  return d;
}

Document cmd_blocks(const Options& o) {
  const Sector s = sector_from_string(o.sector);
  require_k(o, 1, o.n);
  const RingConfig ring = make_ring(o.n, o.mu, o.alpha);
  CMat m;
  std::string kind = "raw";
  if (s == Sector::planar) {
    if (o.n == 2 && o.k == 1)
      m = o.normalized ? n2_block_m0(o.mu, std::sqrt(ring.omega()) * o.nu) : n2_block_m0(o.mu, o.nu);
    else
      m = o.normalized ? block_m0_normalized(ring, o.k, o.nu) : block_m0(ring, o.k, o.nu);
    if (o.normalized) kind = "normalized";
  } else {
    if (o.normalized) throw DomainError("spatial blocks are evaluated at the raw frequency");
    m = block_m1(ring, o.k, o.nu).cast<cplx>();
  }
  Document d{"blocks", kind, {kBlockCols, {}}, {}, json::object()};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      d.table.add({num(static_cast<int>(i)), num(static_cast<int>(j)), m(i, j).real(), m(i, j).imag(), o.nu, kind});
  d.extra["omega"] = ring.omega();
  return d;
}

Document cmd_diagram(const Options& o) {
  const Sector s = sector_from_string(o.sector);
  require_k(o, 1, o.n);
  if (o.samples < 1) throw DomainError("--samples must be >= 1");
  if (!(o.mu_min <= o.mu_max)) throw DomainError("--mu-min must not exceed --mu-max");
  if (!(o.nu_min < o.nu_max)) throw DomainError("--nu-min must be below --nu-max");
  (void)make_sum_table(o.n, o.alpha);  // domain check before spawning work
  const int N = o.samples;
  auto rows = parallel_map(static_cast<std::size_t>(N), o.threads, [&](std::size_t i) {
    const double mu = N == 1 ? o.mu_min : o.mu_min + (o.mu_max - o.mu_min) * static_cast<double>(i) / (N - 1);
    return zero_locus(o.n, o.alpha, o.k, s, mu, mu, 1, o.nu_min, o.nu_max);
  });
  Document d{"diagram", nu_kind_for(s), {kDiagramCols, {}}, {}, json::object()};
  for (const auto& chunk : rows)
    for (const auto& p : chunk) d.table.add({p.mu, p.nu, nu_kind_for(s), num(p.multiplicity), p.branch});
  if (s == Sector::planar && o.alpha == 2.0 && o.k >= 2 && o.k <= o.n - 2)
    d.annotations.push_back("mu_plus tends to -s_1 = " + cli::format_double(-make_sum_table(o.n, 2.0).s[1]) +
                            " as |nu| grows");
  return d;
}

Document cmd_bifurcate(const Options& o) {
  Document d{"bifurcate", "raw", {kBifCols, {}}, {}, json::object()};
  Enumeration e;
  if (!o.general.empty()) {
    e = enumerate_general(read_general(o.general));
  } else {
    e = enumerate_bifurcations(make_ring(o.n, o.mu, o.alpha), !o.no_resonance);
    d.extra["omega"] = make_ring(o.n, o.mu, o.alpha).omega();
  }
  add_points(d, e.points, false);
  if (o.include_silent) add_points(d, e.silent, true);
  d.annotations = e.annotations;
  d.extra["sigma"] = e.sigma;
  d.extra["equilibrium_residual"] = e.equilibrium_residual;
  return d;
}

Document cmd_symmetry(const Options& o) {
  const Sector s = sector_from_string(o.sector);
  require_k(o, 1, o.n);
  const auto x = describe(o.n, o.k, s);
  Document d{"symmetry", "", {kSymCols, {}}, x.annotations, json::object()};
  auto row = [&](const std::string& f, const std::string& v) { d.table.add({f, v}); };
  row("n", std::to_string(x.n));
  row("k", std::to_string(x.k));
  row("sector", to_string(x.sector));
  row("group", x.group);
  row("h", std::to_string(x.h));
  row("n_bar", std::to_string(x.n_bar));
  row("k_bar", std::to_string(x.k_bar));
  row("k_prime", x.k_prime ? std::to_string(*x.k_prime) : "");
  row("central_body", to_string(x.central_body));
  row("rotation_step", cli::format_double(x.rotation_step));
  row("time_shift", cli::format_double(x.time_shift));
  row("ring_relation", x.ring_relation);
  row("central_relation", x.central_relation);
  row("reflection_relation", x.reflection_relation);
  row("choreography_relation", x.choreography_relation);
  std::string special;
  for (const auto& t : x.special) special += (special.empty() ? "" : " ") + t;
  row("special", special);
  row("reversal_partner", std::to_string(x.reversal_partner));
  return d;
}

Document cmd_resonances(const Options& o) {
  const RingConfig ring = make_ring(o.n, o.mu, o.alpha);
  Document d{"resonances", "raw", {kResCols, {}}, {}, json::object()};
  std::vector<int> ks;
  if (o.k == 0) {
    for (int k = 1; k <= o.n; ++k) ks.push_back(k);
  } else {
    require_k(o, 1, o.n);
    ks.push_back(o.k);
  }
  json cands = json::array();
  for (int k : ks) {
    const auto rep = is_truly_spatial(ring, k, o.exclusion_radius);
    for (const auto& m : rep.checked_modes)
      d.table.add({num(k), rep.nu_k, num(m.l), m.nu, m.det, m.rcond, to_string(m.invertible), to_string(rep.truly_spatial),
                   rep.in_exclusion});
    for (const auto& c : rep.spatial_spatial_candidates)
      cands.push_back({{"k1", c.k1}, {"k2", c.k2}, {"l", c.l}, {"mu", std::isfinite(c.mu) ? json(c.mu) : json(nullptr)}, {"kind", c.kind}});
    for (const auto& note : rep.notes) d.annotations.push_back("k=" + std::to_string(k) + ": " + note);
  }
  d.extra["spatial_spatial_candidates"] = cands;
  if (o.alpha == 2.0 && o.n >= 4) {
    json bounds = json::array();
    for (int k1 = 1; 2 * k1 <= o.n; ++k1)
      for (int k2 = k1 + 1; 2 * k2 <= o.n; ++k2) {
        const auto b = subharmonic_bound(ring.sums, k1, k2);
        bounds.push_back({{"k1", k1}, {"k2", k2}, {"ratio", b.ratio}, {"bound", b.bound}, {"holds", b.bound_holds}, {"l_max", b.l_max}});
      }
    d.extra["subharmonic_bounds"] = bounds;
  }
  return d;
}

Document cmd_stability(const Options& o) {
  if (o.saturn) {
    const auto s = saturn_limit(o.n);
    Document d{"stability", "", {kSaturnCols, {}}, {}, json::object()};
    auto gap = [](double v, double t) { return std::abs(v / t - 1.0); };
    d.table.add({std::string("m_plus/n^3"), s.ratio, s.target, s.relative_gap});
    d.table.add({std::string("a/n^6"), s.a_ratio, s.a_target, gap(s.a_ratio, s.a_target)});
    d.table.add({std::string("b/n^3"), s.b_ratio, s.b_target, gap(s.b_ratio, s.b_target)});
    d.extra["n"] = s.n;
    d.extra["m_plus"] = s.m_plus;
    return d;
  }
  if (o.scan) {
    if (o.n_min < 2 || o.n_max < o.n_min) throw DomainError("need 2 <= --n-min <= --n-max");
    const auto rows = parallel_map(static_cast<std::size_t>(o.n_max - o.n_min + 1), o.threads,
                                   [&](std::size_t i) { return stability_scan(o.n_min + static_cast<int>(i), o.n_min + static_cast<int>(i)).at(0); });
    Document d{"stability", "", {kScanCols, {}}, {}, json::object()};
    for (const auto& r : rows)
      d.table.add({num(r.n), r.m_star.defined ? Cell(r.m_star.value) : Cell(), r.m_star.defined ? num(r.m_star.k) : Cell(),
                   r.m_star.defined ? Cell(std::string(r.m_star.from_plus ? "plus" : "minus")) : Cell(), r.stable_above});
    return d;
  }
  const auto v = spectral_stability(make_ring(o.n, o.mu, o.alpha));
  Document d{"stability", "normalized", {kStabCols, {}}, v.kernel_annotations, json::object()};
  for (const auto& b : v.blocks) d.table.add({to_string(b.sector), num(b.k), num(b.real_roots), num(b.degree)});
  d.extra["planar_real_roots"] = v.planar_real_roots;
  d.extra["spatial_real_roots"] = v.spatial_real_roots;
  d.extra["required_planar"] = v.required_planar;
  d.extra["required_spatial"] = v.required_spatial;
  d.extra["spectrally_stable"] = v.spectrally_stable;
  d.extra["exponential_instability"] = v.exponential_instability;
  d.extra["m_star"] = v.m_star.defined ? json(v.m_star.value) : json(nullptr);
  return d;
}

Document cmd_charges(const Options& o) {
  if (o.neutral_limit) {
    Document d{"charges", "", {kNeutralCols, {}}, {}, json::object()};
    d.table.add({num(neutral_atom_limit())});
    return d;
  }
  if (std::isnan(o.q)) throw DomainError("--q is required");
  const ChargeConfig c = make_charge(o.n, o.q, o.alpha);
  const auto e = charge_bifurcations(c);
  Document d{"charges", "raw", {kBifCols, {}}, e.annotations, json::object()};
  add_points(d, e.points, false);
  if (o.include_silent) add_points(d, e.silent, true);
  d.extra["sigma"] = e.sigma;
  d.extra["omega"] = c.omega();
  d.extra["planar_crossings"] = e.planar_crossings;
  return d;
}

Document cmd_verify(const Options& o, bool& failed) {
  Document d{"verify", "", {kVerifyCols, {}}, {}, json::object()};
  failed = false;
  for (const auto& s : run_verification(o.suite, o.n, o.mu, o.alpha))
    for (const auto& c : s.cases) {
      d.table.add({s.suite, c.fingerprint, c.residual, c.tolerance, c.pass});
      failed = failed || !c.pass;
    }
  return d;
}

// ---------------------------------------------------------------- plumbing

std::string single_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// Flags named in a JSON object are appended unless already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  const json j = json::parse(in);
  if (!j.is_object()) throw DomainError("config file must hold a JSON object");
  auto present = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  std::vector<std::string> extra;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (key == "config" || present(flag)) continue;
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
    } else if (v.is_number_integer()) {
      extra.insert(extra.end(), {flag, std::to_string(v.get<long long>())});
    } else if (v.is_number()) {
      extra.insert(extra.end(), {flag, cli::format_double(v.get<double>())});
    } else if (v.is_string()) {
      extra.insert(extra.end(), {flag, v.get<std::string>()});
    } else {
      throw DomainError("config key '" + it.key() + "' must be a number, string or boolean");
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::string resolve_path(const std::string& p) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  const char* dir = std::getenv("RINGBIF_OUTPUT_DIR");
  if (path.is_relative() && dir && *dir) return (std::filesystem::path(dir) / path).string();
  return p;
}

json parameters(const CLI::App* sub) {
  json j = json::object();
  std::vector<std::pair<std::string, json>> items;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->get_expected_min() == 0) {
      items.emplace_back(name, opt->count() > 0);
    } else {
      const auto res = opt->results();
      items.emplace_back(name, res.empty() ? (opt->get_default_str().empty() ? json(nullptr) : json(opt->get_default_str()))
                                           : json(res.back()));
    }
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, v] : items) j[k] = v;
  return j;
}

json tolerances(const std::string& cmd) {
  json t = json::object();
  t["root_imag_tol"] = 1e-8;
  t["root_cluster_tol"] = 1e-6;
  t["inertia_zero_tol"] = 1e-9;
  if (cmd == "resonances" || cmd == "bifurcate") t["rcond_singular"] = 1e-12;
  if (cmd == "verify") t["dense_crossing_bisection"] = 1e-10;
  return t;
}

void add_common(CLI::App* s, Options& o, bool threads) {
  s->add_option("--out", o.out, "csv | json (stdout in that format), or an output file path");
  s->add_option("--output", o.output, "output file path; relative paths resolve against $RINGBIF_OUTPUT_DIR");
  s->add_option("--format", o.format, "csv | json (default csv; json when the output path ends in .json)")
      ->check(CLI::IsMember({"csv", "json"}));
  s->add_option("--manifest", o.manifest, "run manifest path (default: <output>.manifest.json when writing a file)");
  s->add_option("--config", o.config, "JSON object whose keys mirror the long flags (command line wins)");
  if (threads) s->add_option("--threads", o.threads, "worker threads for the sweep (default: hardware concurrency)");
}

void add_ring(CLI::App* s, Options& o) {
  s->add_option("--n", o.n, "number of ring bodies")->capture_default_str();
  s->add_option("--mu", o.mu, "central mass")->capture_default_str();
  s->add_option("--alpha", o.alpha, "force exponent, phi'(x) = -1/x^alpha")->capture_default_str();
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"Bifurcation and stability analysis of the polygonal (n+1)-body ring"};
  app.set_version_flag("--version", std::string(RINGBIF_VERSION));
  app.require_subcommand(1);
  app.footer(
      "\nExit codes: 0 success, 1 usage or domain error, 2 verification failure.\n"
      "Diagnostics are single lines on stderr: 'error: <kind>: <message>'.");

  auto* sums = app.add_subcommand("sums", "lattice sums s_k and sbar_k");
  sums->add_option("--n", o.n, "number of ring bodies")->capture_default_str();
  sums->add_option("--alpha", o.alpha, "force exponent")->capture_default_str();
  add_common(sums, o, false);
  sums->footer(column_help({kSumsCols}));

  auto* blocks = app.add_subcommand("blocks", "one Fourier block of the linearisation at a single frequency");
  add_ring(blocks, o);
  blocks->add_option("--k", o.k, "block index 1..n")->required();
  blocks->add_option("--sector", o.sector, "planar | spatial")->capture_default_str()->check(CLI::IsMember({"planar", "spatial"}));
  blocks->add_option("--nu", o.nu, "frequency")->capture_default_str();
  blocks->add_flag("--normalized", o.normalized, "interpret --nu as raw / sqrt(omega) (planar only)");
  add_common(blocks, o, false);
  blocks->footer(column_help({kBlockCols}));

  auto* diagram = app.add_subcommand("diagram", "zero set of a block determinant in the (mu, nu) plane");
  diagram->add_option("--n", o.n, "number of ring bodies")->capture_default_str();
  diagram->add_option("--alpha", o.alpha, "force exponent")->capture_default_str();
  diagram->add_option("--k", o.k, "block index 1..n")->required();
  diagram->add_option("--sector", o.sector, "planar | spatial")->capture_default_str()->check(CLI::IsMember({"planar", "spatial"}));
  diagram->add_option("--mu-min", o.mu_min, "first mu of the grid")->capture_default_str();
  diagram->add_option("--mu-max", o.mu_max, "last mu of the grid")->capture_default_str();
  diagram->add_option("--samples", o.samples, "number of mu grid points")->capture_default_str();
  diagram->add_option("--nu-min", o.nu_min, "lower end of the nu window (normalized planar, raw spatial)")->capture_default_str();
  diagram->add_option("--nu-max", o.nu_max, "upper end of the nu window")->capture_default_str();
  add_common(diagram, o, true);
  diagram->footer(column_help({kDiagramCols}));

  auto* bif = app.add_subcommand("bifurcate", "bifurcation points with Morse jumps and isotropy");
  add_ring(bif, o);
  bif->add_flag("--no-resonance", o.no_resonance, "skip the truly-spatial check on spatial branches");
  bif->add_flag("--include-silent", o.include_silent, "also list roots where the Morse number does not change");
  bif->add_option("--general", o.general, "JSON file {masses, positions, omega, alpha} instead of a ring");
  add_common(bif, o, false);
  bif->footer(column_help({kBifCols}));

  auto* sym = app.add_subcommand("symmetry", "isotropy descriptor of the (n, k) branch");
  sym->add_option("--n", o.n, "number of ring bodies")->capture_default_str();
  sym->add_option("--k", o.k, "block index 1..n")->required();
  sym->add_option("--sector", o.sector, "planar | spatial")->capture_default_str()->check(CLI::IsMember({"planar", "spatial"}));
  add_common(sym, o, false);
  sym->footer(column_help({kSymCols}));

  auto* res = app.add_subcommand("resonances", "planar invertibility at the harmonics of spatial branches");
  add_ring(res, o);
  res->add_option("--k", o.k, "spatial block 1..n (0: all)")->capture_default_str();
  res->add_option("--exclusion-radius", o.exclusion_radius, "neighbourhood of mu_k where verdicts are marginal")->capture_default_str();
  add_common(res, o, false);
  res->footer(column_help({kResCols}) + "JSON output adds spatial_spatial_candidates and subharmonic_bounds.\n");

  auto* stab = app.add_subcommand("stability", "spectral stability, threshold scans and the large-n limit");
  add_ring(stab, o);
  stab->add_flag("--scan", o.scan, "tabulate m_star for n in [--n-min, --n-max]");
  stab->add_option("--n-min", o.n_min, "first n of the scan")->capture_default_str();
  stab->add_option("--n-max", o.n_max, "last n of the scan")->capture_default_str();
  stab->add_flag("--saturn", o.saturn, "large-n ratios for even --n");
  add_common(stab, o, true);
  stab->footer(column_help({kStabCols, kScanCols, kSaturnCols}) +
               "The default table counts roots per block; --scan and --saturn select the other two tables.\n");

  auto* chg = app.add_subcommand("charges", "n unit charges around a nucleus of charge q");
  chg->add_option("--n", o.n, "number of ring charges")->capture_default_str();
  chg->add_option("--q", o.q, "nucleus charge, must exceed s_1");
  chg->add_option("--alpha", o.alpha, "force exponent")->capture_default_str();
  chg->add_flag("--include-silent", o.include_silent, "also list roots where the Morse number does not change");
  chg->add_flag("--neutral-limit", o.neutral_limit, "largest n for which q = n exceeds s_1");
  add_common(chg, o, false);
  chg->footer(column_help({kBifCols, kNeutralCols}));

  auto* ver = app.add_subcommand("verify", "independent numerical cross-checks");
  add_ring(ver, o);
  ver->add_option("--suite", o.suite, "sums | hessian | blocks | crossings | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"sums", "hessian", "blocks", "crossings", "all"}));
  add_common(ver, o, false);
  ver->footer(column_help({kVerifyCols}));

  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << RINGBIF_VERSION << "\n";
    return 0;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  bool verify_failed = false;
  Document doc;
  if (name == "sums") doc = cmd_sums(o);
  else if (name == "blocks") doc = cmd_blocks(o);
  else if (name == "diagram") doc = cmd_diagram(o);
  else if (name == "bifurcate") doc = cmd_bifurcate(o);
  else if (name == "symmetry") doc = cmd_symmetry(o);
  else if (name == "resonances") doc = cmd_resonances(o);
  else if (name == "stability") doc = cmd_stability(o);
  else if (name == "charges") doc = cmd_charges(o);
  else doc = cmd_verify(o, verify_failed);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string path = o.output;
  std::string fmt = o.format;
  if (o.out == "csv" || o.out == "json") {
    if (fmt.empty()) fmt = o.out;
  } else if (!o.out.empty()) {
    if (!path.empty()) throw DomainError("--out names a file and --output is also set");
    path = o.out;
  }
  path = resolve_path(path);
  if (fmt.empty()) fmt = path.size() >= 5 && path.substr(path.size() - 5) == ".json" ? "json" : "csv";
  const std::string bytes = cli::render(doc, fmt == "json" ? cli::Format::json : cli::Format::csv);

  if (path.empty())
    std::cout << bytes << std::flush;
  else
    cli::write_atomic(path, bytes);

  std::string manifest = resolve_path(o.manifest);
  if (manifest.empty() && !path.empty()) manifest = path + ".manifest.json";
  if (!manifest.empty()) {
    json m;
    m["command"] = name;
    m["parameters"] = parameters(sub);
    m["tool_version"] = RINGBIF_VERSION;
    m["tolerances"] = tolerances(name);
    m["wall_time_seconds"] = wall;
    m["input_fingerprint"] = cli::hex64(cli::fnv1a(name + m["parameters"].dump()));
    m["output_fingerprint"] = cli::hex64(cli::fnv1a(bytes));
    m["output"] = path.empty() ? json("stdout") : json(path);
    m["format"] = fmt;
    cli::write_atomic(manifest, m.dump(2) + "\n");
  }
  if (verify_failed) throw VerificationFailure("one or more verification cases failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const VerificationFailure& e) {
    std::cerr << "error: verification: " << single_line(e.what()) << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const ringbif::DomainError& e) {
    std::cerr << "error: domain: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const ringbif::CollisionError& e) {
    std::cerr << "error: collision: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const ringbif::DegenerateError& e) {
    std::cerr << "error: degenerate: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const ringbif::NumericalError& e) {
    std::cerr << "error: numerical: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << single_line(e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: io: " << single_line(e.what()) << "\n";
    return 1;
  }
}
