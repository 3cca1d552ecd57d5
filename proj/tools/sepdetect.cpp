// sepdetect: command-line front end for the separability criteria.
//
// Exit codes: detect returns 0 for Entangled, 1 for Inconclusive; selftest
// returns 0 when every acceptance item passes, 1 otherwise; every command
// returns 2 on a usage, parse or validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>

#include "sepdetect/acceptance.hpp"
#include "sepdetect/sepdetect.hpp"

namespace {

using namespace sepdetect;

constexpr int kExitEntangled = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitError = 2;

std::optional<Dims> dims_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_dims(text);
}

void report_warnings(const DensityMatrix& rho) {
  for (const auto& w : rho.warnings()) std::cerr << "warning: " << w << '\n';
}

std::string format_complex(Complex z) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << z.real() << (std::signbit(z.imag()) ? '-' : '+')
      << std::abs(z.imag()) << 'i';
  return out.str();
}

std::ostream& classic(std::ostream& out) {
  out.imbue(std::locale::classic());
  return out << std::setprecision(12);
}

struct DetectArgs {
  std::string state;
  std::string criterion;
  std::string dims;
  bool json = false;
};

int run_detect(const DetectArgs& args) {
  const auto rho = make_state(args.state, dims_option(args.dims));
  report_warnings(rho);
  const auto spec = parse_criterion(args.criterion);
  const auto v = evaluate(rho, spec);
  if (args.json) {
    nlohmann::json j{{"lhs", v.lhs}, {"bound", v.bound}, {"violation", v.violation},
                     {"entangled", v.entangled()}};
    std::cout << j.dump() << '\n';
  } else {
    classic(std::cout) << "state:     " << args.state << '\n'
                       << "criterion: " << describe(spec) << '\n'
                       << "lhs:       " << v.lhs << '\n'
                       << "bound:     " << v.bound << '\n'
                       << "violation: " << v.violation << '\n'
                       << "decision:  " << to_string(v.decision) << '\n';
  }
  return v.entangled() ? kExitEntangled : kExitInconclusive;
}

struct ScanArgs {
  std::string family;
  std::string param;
  std::string criterion;
  double from = 0.0;
  double to = 1.0;
  std::size_t steps = 101;
  std::size_t workers = 0;
  double tol = kDefaultThresholdTol;
};

int run_scan(const ScanArgs& args) {
  const auto family = make_family(args.family, args.param);
  const auto result = sweep(family, parse_criterion(args.criterion), args.from, args.to,
                            args.steps, args.workers);
  write_csv(std::cout, result);
  return 0;
}

int run_threshold(const ScanArgs& args) {
  const auto family = make_family(args.family, args.param);
  const auto t = threshold(family, parse_criterion(args.criterion), args.from, args.to, args.tol);
  classic(std::cout) << t.parameter << '=' << t.value << " tolerance=" << t.tolerance
                     << " direction=" << to_string(t.direction) << " iterations=" << t.iterations
                     << '\n';
  return 0;
}

int run_decompose(const std::string& state, const std::string& dims) {
  const auto rho = make_state(state, dims_option(dims));
  report_warnings(rho);
  const auto bd = decompose(rho);
  const auto& gm = *generators(bd.dims.M);
  const auto& gn = *generators(bd.dims.N);
  auto& out = classic(std::cout);
  out << "# Bloch decomposition of " << state << " (M=" << bd.dims.M << ", N=" << bd.dims.N
      << ")\n# first-factor generator order:";
  for (const auto& l : gm.labels) out << ' ' << l;
  out << "\n# second-factor generator order:";
  for (const auto& l : gn.labels) out << ' ' << l;
  out << "\nr:";
  for (Eigen::Index i = 0; i < bd.r.size(); ++i) out << ' ' << bd.r(i);
  out << "\ns:";
  for (Eigen::Index i = 0; i < bd.s.size(); ++i) out << ' ' << bd.s(i);
  out << "\nT:\n";
  for (Eigen::Index i = 0; i < bd.T.rows(); ++i) {
    for (Eigen::Index j = 0; j < bd.T.cols(); ++j) out << (j ? " " : "") << bd.T(i, j);
    out << '\n';
  }
  return 0;
}

int run_generators(std::size_t d) {
  const auto& g = *generators(d);
  for (std::size_t k = 0; k < g.size(); ++k) {
    std::cout << "# " << k << ' ' << g.labels[k] << '\n';
    for (Eigen::Index i = 0; i < g[k].rows(); ++i) {
      for (Eigen::Index j = 0; j < g[k].cols(); ++j)
        std::cout << (j ? " " : "") << format_complex(g[k](i, j));
      std::cout << '\n';
    }
  }
  return 0;
}

int run_selftest(int item) {
  bool all = true;
  if (item > 0) {
    const auto r = acceptance::run(item);
    acceptance::print(std::cout, r);
    return r.passed ? 0 : 1;
  }
  int passed = 0;
  const auto results = acceptance::run_all();
  for (const auto& r : results) {
    acceptance::print(std::cout, r);
    all = all && r.passed;
    passed += r.passed ? 1 : 0;
  }
  std::cout << passed << "/" << results.size() << " acceptance items passed\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloch-representation entanglement detection for bipartite density matrices"};
  app.require_subcommand(1);
  app.footer(
      "State specs: isotropic:d1=,d2=,p=  horodecki:x=,q=(1)  bound2x4:d=,x=(0)  ex2:p=\n"
      "             ex4:a1=,a2=,a3=  random:M=,N=,rank=(MN),seed=  separable:M=,N=,terms=(4),seed=\n"
      "             file:<path> (with --dims M,N; rows of re+imi entries)\n"
      "Criterion specs: devicente  enhanced  ppt  realignment  shen:m=(1),a=,b=\n"
      "             theorem1:alpha=[..],beta=[..]  corollary2:a=,b=  theorem2:a=\n"
      "             theorem3:a=,b=,alpha=[..],beta=[..]\n"
      "Random seeds default to $SEPDETECT_SEED, else 0.\n"
      "Exit codes: detect 0=Entangled 1=Inconclusive; selftest 0=all pass 1=some fail; 2=error.");

  DetectArgs detect_args;
  auto* detect = app.add_subcommand("detect", "Evaluate one criterion on one state");
  detect->add_option("--state", detect_args.state, "State spec")->required();
  detect->add_option("--criterion", detect_args.criterion, "Criterion spec")->required();
  detect->add_option("--dims", detect_args.dims, "Bipartition M,N for file: states");
  detect->add_flag("--json", detect_args.json, "Print {lhs, bound, violation, entangled} as JSON");

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Sweep a family parameter and print CSV");
  scan->add_option("--family", scan_args.family, "State spec with one parameter left out")->required();
  scan->add_option("--param", scan_args.param, "Name of the free parameter")->required();
  scan->add_option("--criterion", scan_args.criterion, "Criterion spec")->required();
  scan->add_option("--from", scan_args.from, "Start of the grid")->capture_default_str();
  scan->add_option("--to", scan_args.to, "End of the grid")->capture_default_str();
  scan->add_option("--steps", scan_args.steps, "Grid points, endpoints included")->capture_default_str();
  scan->add_option("--workers", scan_args.workers, "Worker threads (0 = all cores)")->capture_default_str();

  ScanArgs thr_args;
  auto* thr = app.add_subcommand("threshold", "Bisect for the parameter where detection starts");
  thr->add_option("--family", thr_args.family, "State spec with one parameter left out")->required();
  thr->add_option("--param", thr_args.param, "Name of the free parameter")->required();
  thr->add_option("--criterion", thr_args.criterion, "Criterion spec")->required();
  thr->add_option("--from", thr_args.from, "Bracket start")->capture_default_str();
  thr->add_option("--to", thr_args.to, "Bracket end")->capture_default_str();
  thr->add_option("--tol", thr_args.tol, "Final bracket width")->capture_default_str();

  std::string dec_state, dec_dims;
  auto* dec = app.add_subcommand("decompose", "Print Bloch vectors r, s and correlation matrix T");
  dec->add_option("--state", dec_state, "State spec")->required();
  dec->add_option("--dims", dec_dims, "Bipartition M,N for file: states");

  std::size_t gen_d = 2;
  auto* gen = app.add_subcommand("generators", "Print the SU(d) generators in canonical order");
  gen->add_option("--d", gen_d, "Dimension")->required();

  int self_item = 0;
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("--item", self_item, "Run only this item (1-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitError;
  }

  try {
    if (*detect) return run_detect(detect_args);
    if (*scan) return run_scan(scan_args);
    if (*thr) return run_threshold(thr_args);
    if (*dec) return run_decompose(dec_state, dec_dims);
    if (*gen) return run_generators(gen_d);
    if (*self) return run_selftest(self_item);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
