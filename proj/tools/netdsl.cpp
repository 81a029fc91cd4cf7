// netdsl: run networks, composition-order campaigns, the broadcast witness,
// and fixed-point inspection.
//
// Exit codes: 0 ok, 2 violations found, 1 errors ("<Code>: message" on stderr).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sysalg/causal.hpp"
#include "sysalg/dsl.hpp"
#include "sysalg/kahn.hpp"
#include "sysalg/port_graph.hpp"
#include "sysalg/presets.hpp"
#include "sysalg/trace.hpp"

using namespace sysalg;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kViolations = 2;

constexpr std::size_t kShownViolations = 5;

dsl::BuiltNet load_net(const std::string& path) {
  const std::filesystem::path p(path);
  try {
    return dsl::parse(dsl::read_file(p), p.parent_path());
  } catch (const dsl::ParseError& e) {
    fail(ErrorCode::kParseError, path + ":" + e.what());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kValidationError) throw;
    fail(ErrorCode::kValidationError, path + ": " + e.what());
  }
}

void write_out(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) fail(ErrorCode::kIoError, "cannot write " + out);
}

// ---------------------------------------------------------------------------

struct RunArgs {
  std::string net, inputs, out;
  std::size_t fuel = 10000;
};

int cmd_run(const RunArgs& a) {
  dsl::BuiltNet net = load_net(a.net);
  if (!a.inputs.empty()) {
    for (const auto& in : dsl::parse_inputs(dsl::read_file(a.inputs))) {
      const Label l = in.port.label();
      if (!net.network.free_inputs().count(l)) {
        fail(ErrorCode::kValidationError, a.inputs + ": unknown input port " + l.name());
      }
      net.inputs[l] = dsl::literal_value(net, in.value);
    }
  }
  const Fuel fuel{a.fuel, 0};
  std::vector<TraceRecord> records;
  std::vector<std::pair<std::string, std::string>> header;

  switch (net.kind) {
    case dsl::DomainDecl::Kind::kKahn: {
      std::map<Label, TokenSeq> ext;
      for (const auto& [l, v] : net.inputs) ext.emplace(l, v.as_seq());
      const NetworkRun run = run_network(net.network, ext, fuel);
      header = {{"status", to_string(run.status)}, {"steps", std::to_string(run.steps)}};
      for (const auto& [l, h] : run.histories) {
        records.push_back({l, Value(net.domain->id(), h), run.truncated.count(l) > 0});
      }
      break;
    }
    case dsl::DomainDecl::Kind::kCausal: {
      std::map<Label, EventHistory> ext;
      for (const auto& [l, v] : net.inputs) ext.emplace(l, v.as_events());
      const CausalRun run = run_causal_network(net.network, ext, fuel);
      header = {{"status", to_string(run.status)}, {"steps", std::to_string(run.steps)}};
      for (const auto& [l, h] : run.histories) {
        records.push_back({l, Value(net.domain->id(), h), false});
      }
      break;
    }
    case dsl::DomainDecl::Kind::kFinite: {
      const FunctionalSystem s = network_system(net.network, Chooser::brute_force_least());
      Tuple x;
      for (const auto& l : s.signature().inputs) {
        auto it = net.inputs.find(l);
        if (it == net.inputs.end()) fail(ErrorCode::kValidationError, "input " + l.name() + " is unbound");
        x.emplace(l, it->second);
      }
      for (const auto& [l, v] : x) records.push_back({l, v, false});
      for (const auto& [l, v] : s(x)) records.push_back({l, v, false});
      header = {{"status", "Converged"}};
      break;
    }
    case dsl::DomainDecl::Kind::kGraph:
      fail(ErrorCode::kValidationError, "graph nets describe structure only and cannot run");
  }
  write_out(format_trace(std::move(records), header), a.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct CoiArgs {
  std::string target;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
};

template <class S>
int report_coi(const std::string& name, const SystemAlgebra<S>& alg,
               const std::function<Diagram<S>(std::mt19937_64&)>& gen, const CoiArgs& a) {
  CoiOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  const CoiReport r = check_composition_order_invariance(alg, gen, opt);
  std::cout << "check-coi " << name << " (" << alg.name << "): trials " << r.trials
            << ", comparisons " << r.comparisons << ", skipped " << r.skipped
            << ", violations " << r.violations.size() << "\n";
  if (r.skipped) std::cout << "first skipped trial: " << r.first_skip_reason << "\n";
  for (std::size_t k = 0; k < r.violations.size() && k < kShownViolations; ++k) {
    const auto& v = r.violations[k];
    std::cout << "violation in trial " << v.trial << ":\n"
              << "  " << v.expr_a << " = " << v.value_a << "\n"
              << "  " << v.expr_b << " = " << v.value_b << "\n";
  }
  if (r.violations.size() > kShownViolations) {
    std::cout << "... " << r.violations.size() - kShownViolations << " more\n";
  }
  if (!r.violations.empty()) return kViolations;
  if (r.trials > 0 && r.skipped == r.trials) {
    fail(ErrorCode::kInvalidArgument, "every trial failed; first: " + r.first_skip_reason);
  }
  std::cout << "composition-order invariance holds on every trial\n";
  return kOk;
}

template <class S>
std::function<Diagram<S>(std::mt19937_64&)> fixed(Diagram<S> d) {
  return [d](std::mt19937_64&) { return d; };
}

int cmd_check_coi(const CoiArgs& a) {
  if (a.target == "port-graph") {
    return report_coi<PortGraph>(a.target, port_graph_algebra(),
                                 presets::random_port_graph_diagram, a);
  }
  if (a.target == "kahn") {
    const auto d = presets::campaign_seq_domain();
    return report_coi<FunctionalSystem>(
        a.target, kahn_algebra(d, Flavor::kContinuous),
        [d](std::mt19937_64& rng) { return presets::random_kahn_diagram(d, rng); }, a);
  }
  if (a.target == "causal") {
    const auto d = presets::campaign_event_domain();
    return report_coi<FunctionalSystem>(
        a.target, causal_algebra(d),
        [d](std::mt19937_64& rng) { return presets::random_causal_diagram(d, rng); }, a);
  }
  if (a.target == "prefer-zero-counterexample") {
    return report_coi<FunctionalSystem>(a.target, presets::prefer_zero_algebra(),
                                        fixed(presets::prefer_zero_diagram()), a);
  }
  if (!std::filesystem::exists(a.target)) {
    std::string known;
    for (const auto& n : presets::names()) known += (known.empty() ? "" : ", ") + n;
    fail(ErrorCode::kIoError, a.target + " is neither a net file nor a preset (" + known + ")");
  }
  const dsl::BuiltNet net = load_net(a.target);
  switch (net.kind) {
    case dsl::DomainDecl::Kind::kGraph:
      return report_coi<PortGraph>(a.target, port_graph_algebra(), fixed(net.graph_diagram), a);
    case dsl::DomainDecl::Kind::kKahn:
      return report_coi<FunctionalSystem>(
          a.target,
          kahn_algebra(std::dynamic_pointer_cast<const SeqDomain>(net.domain), Flavor::kContinuous),
          fixed<FunctionalSystem>(dsl::functional_diagram(net)), a);
    case dsl::DomainDecl::Kind::kCausal:
      return report_coi<FunctionalSystem>(
          a.target, causal_algebra(std::dynamic_pointer_cast<const EventDomain>(net.domain)),
          fixed<FunctionalSystem>(dsl::functional_diagram(net)), a);
    case dsl::DomainDecl::Kind::kFinite:
      return report_coi<FunctionalSystem>(
          a.target, functional_algebra("least", Chooser::brute_force_least()),
          fixed<FunctionalSystem>(dsl::functional_diagram(net)), a);
  }
  return kError;
}

// ---------------------------------------------------------------------------

int cmd_broadcast(const std::string& mutation) {
  PortGraphMutation m = PortGraphMutation::kNone;
  if (mutation == "drop-wire") m = PortGraphMutation::kDropWire;
  else if (mutation == "swap-labels") m = PortGraphMutation::kSwapLabels;
  else if (mutation != "none") fail(ErrorCode::kInvalidArgument, "unknown mutation " + mutation);

  const WitnessReport r = broadcast_witness_report(port_graph_algebra(m), broadcast_parties());
  std::cout << "t = " << r.t << "\n";
  for (const auto& c : r.checks) {
    std::cout << (c.holds ? "verified: " : "FAILED: ") << c.name << "\n";
    if (!c.holds) std::cout << "  got " << c.actual << "\n";
  }
  if (!r.all_hold()) {
    std::cerr << code_name(ErrorCode::kWitnessFailed) << ": " << (r.checks.size())
              << " decompositions checked, not all equal t\n";
    return kViolations;
  }
  std::cout << "all " << r.checks.size() << " decompositions equal t\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct FixArgs {
  std::string net;
  std::vector<std::string> connect;
};

int cmd_fixed_points(const FixArgs& a) {
  const dsl::BuiltNet net = load_net(a.net);
  Chooser chooser;
  switch (net.kind) {
    case dsl::DomainDecl::Kind::kKahn: chooser = Chooser::least_kleene(); break;
    case dsl::DomainDecl::Kind::kCausal: chooser = Chooser::unique_causal(); break;
    case dsl::DomainDecl::Kind::kFinite: chooser = Chooser::brute_force_least(); break;
    case dsl::DomainDecl::Kind::kGraph:
      fail(ErrorCode::kValidationError, "graph nets have no fixed points");
  }
  const FunctionalSystem s = network_system(net.network, chooser);
  const Label i(a.connect.at(0)), o(a.connect.at(1));
  if (!s.signature().inputs.count(i)) fail(ErrorCode::kNotConnectable, i.name() + " is not a free input");
  if (!s.signature().outputs.count(o)) fail(ErrorCode::kNotConnectable, o.name() + " is not a free output");

  LabelSet rest = s.signature().inputs;
  rest.erase(i);
  std::vector<Tuple> contexts;
  if (std::all_of(rest.begin(), rest.end(), [&](const Label& l) { return net.inputs.count(l) > 0; })) {
    Tuple x;
    for (const auto& l : rest) x.emplace(l, net.inputs.at(l));
    contexts.push_back(std::move(x));
  } else {
    contexts = all_tuples(rest, net.domain->members());
  }
  std::cout << "fixed points of " << i.name() << " <- " << o.name() << "\n";
  for (const auto& x : contexts) {
    const auto phi = fixed_point_set(s, i, o, x);
    std::cout << to_string(x) << ": {";
    for (std::size_t k = 0; k < phi.size(); ++k) std::cout << (k ? ", " : "") << to_string(phi[k]);
    std::cout << "}";
    if (phi.empty()) {
      std::cout << " none\n";
      continue;
    }
    std::string choice;
    try {
      choice = "chosen " + to_string(chooser.choose(s, i, o, x));
    } catch (const Error& e) {
      choice = "no choice (" + std::string(code_name(e.code())) + ")";
    }
    std::cout << " " << choice << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composable system networks: run, check composition order, inspect fixed points"};
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Run a network and write its channel trace");
  c_run->add_option("net", run.net, "network file")->required();
  c_run->add_option("--inputs", run.inputs, "input bindings file");
  c_run->add_option("--fuel", run.fuel, "iteration budget");
  c_run->add_option("--out", run.out, "trace file (default: stdout)");

  CoiArgs coi;
  auto* c_coi = app.add_subcommand("check-coi", "Composition-order invariance campaign");
  c_coi->add_option("target", coi.target, "network file or preset")->required();
  c_coi->add_option("--trials", coi.trials, "number of trials");
  c_coi->add_option("--seed", coi.seed, "random seed");

  std::string mutation = "none";
  auto* c_bc = app.add_subcommand("broadcast-demo", "Verify the broadcast impossibility decompositions");
  c_bc->add_option("--mutation", mutation, "none, drop-wire or swap-labels");

  FixArgs fix;
  auto* c_fix = app.add_subcommand("fixed-points", "List fixed points of one connection");
  c_fix->add_option("net", fix.net, "network file")->required();
  c_fix->add_option("--connect", fix.connect, "input and output label")->expected(2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << code_name(ErrorCode::kInvalidArgument) << ": " << e.what() << "\n";
    return kError;
  }

  try {
    if (c_run->parsed()) return cmd_run(run);
    if (c_coi->parsed()) return cmd_check_coi(coi);
    if (c_bc->parsed()) return cmd_broadcast(mutation);
    if (c_fix->parsed()) return cmd_fixed_points(fix);
  } catch (const Error& e) {
    std::cerr << code_name(e.code()) << ": " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "InternalError: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
