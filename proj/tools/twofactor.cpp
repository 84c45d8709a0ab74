// twofactor: counts, series, digraph statistics and reference verification.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "twofactor/enumerate.hpp"
#include "twofactor/io.hpp"
#include "twofactor/oracle.hpp"
#include "twofactor/recurrence.hpp"
#include "twofactor/reference.hpp"
#include "twofactor/transfer.hpp"
#include "twofactor/verify.hpp"

namespace tf = twofactor;

namespace {

struct SpecArgs {
  std::string family;
  int m = 0;
  int p = 0;
  CLI::Option* p_opt = nullptr;
};

void add_spec_args(CLI::App* cmd, SpecArgs& a) {
  cmd->add_option("family", a.family, "tnc, tg or kb")->required()->check(CLI::IsMember({"tnc", "tg", "kb"}));
  cmd->add_option("m", a.m, "grid width (rows)")->required();
  a.p_opt = cmd->add_option("--p", a.p, "twist, reduced mod m (tg and kb)");
}

tf::GridSpec make_spec(const SpecArgs& a, long long n) {
  const tf::Family f = tf::parse_family(a.family);
  if (f == tf::Family::kTnC && a.p_opt->count() > 0 && a.p != 0) {
    throw std::invalid_argument("--p does not apply to tnc");
  }
  tf::GridSpec spec{f, a.m, a.p, n};
  if (spec.m < 2) throw std::invalid_argument("m must be >= 2");
  return spec.normalized();
}

template <typename Vertex>
void print_census(const tf::Digraph<Vertex>& d, bool json) {
  const tf::ComponentCensus c = tf::components(d);
  // Named components first: N, then A when different, then the rest.
  std::vector<std::size_t> order;
  if (c.n_component) order.push_back(*c.n_component);
  if (c.a_component && c.a_component != c.n_component) order.push_back(*c.a_component);
  for (auto id : c.b_components) order.push_back(id);
  std::vector<std::size_t> sizes;
  for (auto id : order) sizes.push_back(c.sizes[id]);

  if (json) {
    tf::Json out{{"kind", tf::to_string(d.kind())},
                 {"m", d.width()},
                 {"vertices", d.order()},
                 {"arcs", d.arc_count()},
                 {"distinct_arcs", d.distinct_arc_count()},
                 {"symmetric", d.is_symmetric()},
                 {"components", c.count()},
                 {"component_sizes", sizes}};
    if (c.n_component) out["n_component_size"] = c.sizes[*c.n_component];
    if (c.a_component) out["a_component_size"] = c.sizes[*c.a_component];
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "kind " << tf::to_string(d.kind()) << "\n"
            << "m " << d.width() << "\n"
            << "vertices " << d.order() << "\n"
            << "arcs " << d.arc_count() << "\n"
            << "distinct_arcs " << d.distinct_arc_count() << "\n"
            << "symmetric " << (d.is_symmetric() ? "yes" : "no") << "\n"
            << "components " << c.count() << "\n"
            << "component_sizes ";
  for (std::size_t i = 0; i < sizes.size(); ++i) std::cout << (i ? "," : "") << sizes[i];
  std::cout << "\n";
  if (c.n_component) std::cout << "n_component_size " << c.sizes[*c.n_component] << "\n";
  if (c.a_component) std::cout << "a_component_size " << c.sizes[*c.a_component] << "\n";
}

void print_spectra(const tf::ReducedDigraph& d) {
  const tf::ComponentCensus c = tf::components(d);
  const auto thetas = tf::component_spectra(d, c);
  double top = 0.0;
  for (double t : thetas) top = std::max(top, t);
  std::printf("theta_n_component %.15g\n", thetas.at(*c.n_component));
  if (c.a_component) std::printf("theta_a_component %.15g\n", thetas.at(*c.a_component));
  std::printf("theta_max %.15g\n", top);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 2-factor counts on thin cylinders, tori and Klein bottles"};
  app.require_subcommand(1);

  // count
  SpecArgs count_args;
  long long count_n = 1;
  std::string count_method = "reduced";
  bool count_json = false;
  auto* count_cmd = app.add_subcommand("count", "number of 2-factors for one grid");
  add_spec_args(count_cmd, count_args);
  count_cmd->add_option("--n", count_n, "grid length")->default_val(1);
  count_cmd->add_option("--method", count_method, "full, reduced or glued")
      ->check(CLI::IsMember({"full", "reduced", "glued"}));
  count_cmd->add_flag("--json", count_json, "JSON output");

  // series
  SpecArgs series_args;
  long long terms = 10;
  std::string series_method = "reduced";
  std::string format = "bfile";
  auto* series_cmd = app.add_subcommand("series", "f(1), ..., f(N)");
  add_spec_args(series_cmd, series_args);
  series_cmd->add_option("--terms", terms, "number of terms N")->default_val(10)->check(CLI::NonNegativeNumber);
  series_cmd->add_option("--method", series_method, "full, reduced or glued")
      ->check(CLI::IsMember({"full", "reduced", "glued"}));
  series_cmd->add_option("--format", format, "json, bfile or csv")->check(CLI::IsMember({"json", "bfile", "csv"}));

  // recurrence
  SpecArgs rec_args;
  std::size_t max_terms = 1024;
  auto* rec_cmd = app.add_subcommand("recurrence", "minimal recurrence and generating function");
  add_spec_args(rec_cmd, rec_args);
  rec_cmd->add_option("--max-terms", max_terms, "give up beyond this many terms")->default_val(1024);

  // oracle
  SpecArgs oracle_args;
  long long oracle_n = 2;
  bool oracle_edges = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force count on the explicit grid graph");
  add_spec_args(oracle_cmd, oracle_args);
  oracle_cmd->add_option("--n", oracle_n, "grid length")->default_val(2);
  oracle_cmd->add_flag("--edges", oracle_edges, "print the edge list instead of counting");

  // digraph
  int dm = 2;
  std::string kind = "reduced";
  bool stats = false, dump = false, spectra = false, stats_json = false;
  auto* dg_cmd = app.add_subcommand("digraph", "transfer digraph statistics or dump");
  dg_cmd->add_option("m", dm, "width")->required();
  dg_cmd->add_option("--kind", kind, "full, reduced or glued")->check(CLI::IsMember({"full", "reduced", "glued"}));
  auto* stats_flag = dg_cmd->add_flag("--stats", stats, "vertex, arc and component counts");
  auto* dump_flag = dg_cmd->add_flag("--dump", dump, "the digraph as JSON");
  stats_flag->excludes(dump_flag);
  dg_cmd->add_flag("--spectra", spectra, "with --stats on a reduced digraph: dominant eigenvalues");
  dg_cmd->add_flag("--json", stats_json, "with --stats: JSON output");

  // verify
  std::string suite = "all";
  std::string data_dir = TWOFACTOR_DATA_DIR;
  bool verify_quiet = false;
  auto* verify_cmd = app.add_subcommand("verify", "check against the reference dataset");
  verify_cmd->add_option("--suite", suite, "series, digraph, orders, spectral, oracle, symmetry or all")
      ->check(CLI::IsMember(tf::suite_names()));
  verify_cmd->add_option("--data", data_dir, "reference data directory");
  verify_cmd->add_flag("--quiet", verify_quiet, "summary only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count_cmd) {
      const tf::GridSpec spec = make_spec(count_args, count_n);
      const tf::BigInt value = tf::count(spec, tf::parse_method(count_method));
      if (count_json) {
        tf::Json out{{"family", tf::to_string(spec.family)}, {"m", spec.m}, {"p", spec.p},
                     {"n", spec.n}, {"method", count_method}, {"count", value.get_str()}};
        std::cout << out.dump() << "\n";
      } else {
        std::cout << value << "\n";
      }
    } else if (*series_cmd) {
      const tf::GridSpec spec = make_spec(series_args, 1);
      const tf::Series s = tf::series(spec.family, spec.m, spec.p, terms, tf::parse_method(series_method));
      if (s.values.empty()) return 0;
      if (format == "json") {
        std::cout << tf::to_json(s).dump() << "\n";
      } else if (format == "csv") {
        std::cout << tf::to_csv(s);
      } else {
        std::cout << tf::to_bfile(s);
      }
    } else if (*rec_cmd) {
      const tf::GridSpec spec = make_spec(rec_args, 1);
      const tf::OrderReport r = tf::order_report(spec.family, spec.m, spec.p, max_terms);
      const tf::Series s = tf::series(spec.family, spec.m, spec.p, static_cast<long long>(r.terms));
      tf::Json out = tf::to_json(r.recurrence, tf::to_generating_function(s.values, r.recurrence));
      out["family"] = tf::to_string(spec.family);
      out["m"] = spec.m;
      out["p"] = spec.p;
      std::cout << out.dump(2) << "\n";
    } else if (*oracle_cmd) {
      const tf::GridSpec spec = make_spec(oracle_args, oracle_n);
      const tf::Multigraph g = tf::build_grid(spec);
      if (oracle_edges) {
        std::cout << g.to_edge_list();
      } else {
        std::cout << tf::count_two_factors(g) << "\n";
      }
    } else if (*dg_cmd) {
      if (!stats && !dump) stats = true;
      if (kind == "full") {
        const tf::FullDigraph d = tf::build_full(dm);
        if (dump) std::cout << tf::to_json(d).dump() << "\n";
        else print_census(d, stats_json);
      } else {
        const tf::ReducedDigraph d = kind == "reduced" ? tf::build_reduced(dm) : tf::build_glued(dm);
        if (dump) {
          std::cout << tf::to_json(d).dump() << "\n";
        } else {
          print_census(d, stats_json);
          if (spectra && kind == "reduced") print_spectra(d);
        }
      }
    } else if (*verify_cmd) {
      const tf::ReferenceDataset ref = tf::ReferenceDataset::load(data_dir);
      const tf::RunReport report = tf::run_suite(suite, ref);
      if (!verify_quiet) std::cout << tf::to_json(report).dump(2) << "\n";
      std::cerr << "verify " << suite << ": " << report.passed() << "/" << report.checks.size() << " checks passed\n";
      for (const tf::Check& c : report.failures()) {
        std::cerr << "  FAIL " << c.name << ": expected " << c.expected << ", got " << c.actual << "\n";
      }
      return report.ok() ? 0 : 1;
    }
  } catch (const tf::LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
