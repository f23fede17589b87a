#include "qcc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcc/bits.hpp"
#include "qcc/comm_matrix.hpp"
#include "qcc/errors.hpp"
#include "qcc/intersection.hpp"
#include "qcc/ndet.hpp"
#include "qcc/polynomial.hpp"
#include "qcc/serialize.hpp"
#include "qcc/zoo.hpp"

namespace qcc {
namespace {

// Low-rank witnesses (NEQ, INT) give short messages, so 2^16 simulated pairs stay
// cheap; full-rank ones (EQ, DISJ) grow a 2^n-dimensional message register.
constexpr unsigned kMaxNdetBits = 8;

unsigned ndet_bit_limit(FunctionName f) {
    return f == FunctionName::NEQ || f == FunctionName::INT ? kMaxNdetBits : kDefaultMaxAcceptanceBits;
}

struct UsageError : Error {
    using Error::Error;
};

// exit code 1 with the message as failure detail
struct AssertionFailure : Error {
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::string function_name;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> seed;
    double tol = kDefaultRankTol;
    std::size_t trials = 1;
    std::string format;
    std::string output_path;
    bool cost_only = false;
    std::string x, y;
    std::string protocol = "trivial";
    std::string audit;
    std::uint64_t threshold = 64;
    double kappa = 2.0;
};

unsigned small_n(const RunConfig& c, unsigned max) {
    if (c.n < 1 || c.n > max) throw UsageError("--n must lie in 1.." + std::to_string(max) + " for " + c.command);
    return static_cast<unsigned>(c.n);
}

std::uint64_t require_seed(const RunConfig& c) {
    if (!c.seed) throw UsageError(c.command + " is randomized and requires --seed");
    return *c.seed;
}

std::string format_or(const RunConfig& c, const std::string& fallback) {
    return c.format.empty() ? fallback : c.format;
}

std::uint64_t input_bits_arg(const std::string& s, unsigned n, const char* flag) {
    if (s.size() != n) throw UsageError(std::string(flag) + " must have exactly n characters");
    return parse_bits(s);
}

std::string cmd_matrix(const RunConfig& c) {
    const CommMatrix m = build_comm_matrix(parse_function_name(c.function_name), small_n(c, CommMatrix::kMaxBits));
    return format_or(c, "csv") == "json" ? m.to_json() + "\n" : m.to_csv();
}

std::string cmd_ndet(const RunConfig& c) {
    const FunctionName f = parse_function_name(c.function_name);
    if (f == FunctionName::Custom) throw UsageError("ndet needs one of EQ, NEQ, DISJ, INT");
    const unsigned n = small_n(c, ndet_bit_limit(f));
    const CommMatrix table = build_comm_matrix(f, n);
    const auto bundle = ndet_svd_protocol(canonical_witness(f, n), c.tol);
    const auto mismatches = pattern_mismatches(acceptance_matrix(bundle.protocol, kMaxNdetBits).as_matrix(), table, c.tol);
    const unsigned predicted = bundle.rank == 0 ? 0 : ceil_log2(bundle.rank) + 1;
    const unsigned cost = bundle.protocol.declared_cost();
    const bool agree = predicted == cost && mismatches.empty();

    std::ostringstream s;
    if (format_or(c, "text") == "json") {
        nlohmann::ordered_json j;
        j["function"] = to_string(f);
        j["n"] = n;
        j["rank"] = bundle.rank;
        j["cost"] = cost;
        j["log2_rank_plus_1"] = predicted;
        j["pattern_ok"] = mismatches.empty();
        j["agree"] = agree;
        s << j.dump() << "\n";
    } else {
        s << "function " << to_string(f) << "\nn " << n << "\nrank " << bundle.rank << "\ncost " << cost
          << "\nlog2(rank)+1 " << predicted << "\npattern " << (mismatches.empty() ? "ok" : "mismatch")
          << "\nagree " << (agree ? "yes" : "no") << "\n";
    }
    if (!agree) {
        std::ostringstream d;
        d << s.str() << "diff: cost " << cost << " vs log2(rank)+1 " << predicted << ", " << mismatches.size()
          << " pattern mismatches";
        throw AssertionFailure(d.str());
    }
    return s.str();
}

std::string cmd_intersect(const RunConfig& c) {
    if (c.n < 1) throw UsageError("--n must be at least 1");
    RecursionConfig rcfg;
    rcfg.base_threshold = c.threshold;
    rcfg.kappa = c.kappa;
    rcfg.validate();
    const CostConstants k = fitted_cost_constants(rcfg);
    const double model = cost_model(static_cast<double>(c.n), rcfg, k.K, k.K_prime);
    if (c.cost_only) return format_sig12(model) + "\n";

    if (c.n > 64) throw UsageError("simulation supports n <= 64; use --cost-only beyond");
    const unsigned n = static_cast<unsigned>(c.n);
    // n = 1 involves no randomness
    const std::uint64_t seed = n == 1 ? c.seed.value_or(0) : require_seed(c);
    Bits x, y;
    if (!c.x.empty() || !c.y.empty()) {
        if (c.x.size() != n || c.y.size() != n) throw UsageError("--x and --y must both have exactly n characters");
        x = bits_from_string(c.x);
        y = bits_from_string(c.y);
    } else {
        std::mt19937_64 rng(split_seed(seed, ~std::uint64_t{0}));
        for (unsigned i = 0; i < n; ++i) {
            x.push_back(static_cast<std::uint8_t>(rng() & 1u));
            y.push_back(static_cast<std::uint8_t>(rng() & 1u));
        }
    }

    std::size_t found = 0, false_positives = 0;
    std::uint64_t max_cost = 0, total_cost = 0;
    for (std::size_t t = 0; t < c.trials; ++t) {
        const auto o = recursive_intersection(x, y, rcfg, default_qsearch_config(n, split_seed(seed, t)));
        if (o.index) {
            ++found;
            if (!(x[*o.index] && y[*o.index])) ++false_positives;
        }
        max_cost = std::max(max_cost, o.cost);
        total_cost += o.cost;
    }
    const double rate = static_cast<double>(found) / static_cast<double>(c.trials);
    const double mean = static_cast<double>(total_cost) / static_cast<double>(c.trials);

    std::ostringstream s;
    if (format_or(c, "text") == "json") {
        nlohmann::ordered_json j;
        j["x"] = bits_to_string(x);
        j["y"] = bits_to_string(y);
        j["intersecting"] = intersects(x, y);
        j["trials"] = c.trials;
        j["success_rate"] = rate;
        j["false_positives"] = false_positives;
        j["max_cost"] = max_cost;
        j["mean_cost"] = mean;
        j["cost_model"] = model;
        s << j.dump() << "\n";
    } else {
        s << "x " << bits_to_string(x) << "\ny " << bits_to_string(y) << "\nintersecting "
          << (intersects(x, y) ? "yes" : "no") << "\ntrials " << c.trials << "\nsuccess_rate " << format_sig12(rate)
          << "\nfalse_positives " << false_positives << "\nmax_cost " << max_cost << "\nmean_cost "
          << format_sig12(mean) << "\ncost_model " << format_sig12(model) << "\n";
    }
    if (false_positives > 0) throw AssertionFailure(s.str() + "returned an index outside x AND y");
    return s.str();
}

std::string audit_rank_bound(const RunConfig& c) {
    const unsigned n = small_n(c, 4);
    nlohmann::ordered_json results = nlohmann::json::array();
    bool ok = true;
    for (const auto& e : protocol_corpus(n)) {
        const auto r = rank_bound_audit(e.protocol, c.tol);
        const bool exact_ok = !r.exact_rank || *r.exact_rank <= r.bound;
        ok = ok && r.ok && exact_ok;
        nlohmann::ordered_json j;
        j["protocol"] = e.protocol.name();
        j["cost"] = e.protocol.declared_cost();
        j["rank"] = r.rank;
        j["bound"] = r.bound;
        j["exact_rank"] = r.exact_rank ? nlohmann::json(*r.exact_rank) : nlohmann::json(nullptr);
        j["ok"] = r.ok && exact_ok;
        results.push_back(std::move(j));
    }
    nlohmann::ordered_json j;
    j["audit"] = "rank-bound";
    j["n"] = n;
    j["protocols"] = results.size();
    j["ok"] = ok;
    j["results"] = std::move(results);
    if (!ok) throw AssertionFailure(j.dump());
    return j.dump() + "\n";
}

std::string audit_monomial_rank(const RunConfig& c) {
    const unsigned n = small_n(c, kMaxAndDependentBits);
    const std::uint64_t seed = require_seed(c);
    const std::size_t N = std::size_t{1} << n;
    std::size_t passed = 0;
    std::vector<std::string> failures;
    for (std::size_t t = 0; t < c.trials; ++t) {
        // random g with values k/16, lifted to P(x, y) = g(x AND y)
        std::mt19937_64 rng(split_seed(seed, t));
        std::vector<double> g(N);
        for (auto& v : g) v = static_cast<double>(std::uniform_int_distribution<int>(0, 16)(rng)) / 16.0;
        const auto r = monomial_rank_audit(lift_and_dependent(n, g), c.tol);
        if (r.ok) ++passed;
        else
            failures.push_back("trial " + std::to_string(t) + ": " + std::to_string(r.monomials) + " monomials, rank " +
                               std::to_string(r.rank));
    }
    nlohmann::ordered_json j;
    j["audit"] = "monomial-rank";
    j["n"] = n;
    j["trials"] = c.trials;
    j["passed"] = passed;
    j["ok"] = failures.empty();
    j["failures"] = failures;
    if (!failures.empty()) throw AssertionFailure(j.dump());
    return j.dump() + "\n";
}

std::string cmd_audit(const RunConfig& c) {
    if (c.audit == "rank-bound") return audit_rank_bound(c);
    if (c.audit == "monomial-rank") return audit_monomial_rank(c);
    const unsigned n = small_n(c, 8);
    const std::uint64_t seed = require_seed(c);
    const AuditReport r =
        c.audit == "eq-fullrank" ? eq_fullrank_audit(n, c.trials, seed) : disj_triangular_audit(n, c.trials, seed);
    if (!r.ok()) throw AssertionFailure(r.to_json());
    return r.to_json() + "\n";
}

Protocol protocol_for(const RunConfig& c, unsigned n) {
    const FunctionName f = parse_function_name(c.function_name);
    if (c.protocol == "trivial") return trivial_exact_protocol(build_comm_matrix(f, n));
    if (c.protocol == "svd") return ndet_svd_protocol(canonical_witness(f, n), c.tol).protocol;
    if (f != FunctionName::INT && f != FunctionName::DISJ) throw UsageError("grover protocol computes INT or DISJ");
    if (n != 1 && n != 2 && n != 4) throw UsageError("grover protocol is simulated for n in {1, 2, 4}");
    return grover_sampling_protocol(n, ceil_log2(n), f == FunctionName::INT ? SearchOutput::Intersect
                                                                           : SearchOutput::Disjoint);
}

std::string cmd_simulate(const RunConfig& c) {
    const unsigned n = small_n(c, kDefaultMaxAcceptanceBits);
    const Protocol p = protocol_for(c, n);
    if (c.x.empty() && c.y.empty()) {
        const auto P = acceptance_matrix(p);
        return format_or(c, "csv") == "json" ? P.to_json() + "\n" : P.to_csv();
    }
    const auto r = simulate(p, input_bits_arg(c.x, n, "--x"), input_bits_arg(c.y, n, "--y"));
    std::ostringstream s;
    if (format_or(c, "text") == "json") {
        nlohmann::ordered_json j;
        j["protocol"] = p.name();
        j["accept_prob"] = r.accept_prob;
        j["cost"] = r.cost;
        j["touched_channel_qubits"] = r.touched_channel_qubits;
        s << j.dump() << "\n";
    } else {
        s << "protocol " << p.name() << "\naccept_prob " << format_sig12(r.accept_prob) << "\ncost " << r.cost
          << "\ntouched_channel_qubits";
        for (auto t : r.touched_channel_qubits) s << ' ' << t;
        s << "\n";
    }
    return s.str();
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output_path, std::ios::binary);
    if (!f) throw UsageError("cannot open " + c.output_path + " for writing");
    f << text;
    if (!f) throw UsageError("failed writing " + c.output_path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qcclab: two-party quantum communication protocol laboratory", "qcclab"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&](CLI::App* s) {
        s->add_option("--n", c.n, "input bits")->required();
        s->add_option("--tol", c.tol, "relative rank tolerance")->check(CLI::PositiveNumber);
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
        s->add_option("--out", c.output_path, "write output to this file");
    };
    auto randomized = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "master seed");
        s->add_option("--trials", c.trials, "number of trials")->check(CLI::PositiveNumber);
    };

    auto* matrix = app.add_subcommand("matrix", "communication matrix of a named function");
    common(matrix);
    matrix->add_option("--fn", c.function_name, "EQ, NEQ, DISJ or INT")->required();

    auto* ndet = app.add_subcommand("ndet", "SVD non-deterministic protocol from the canonical witness");
    common(ndet);
    ndet->add_option("--fn", c.function_name, "EQ, NEQ, DISJ or INT")->required();

    auto* intersect = app.add_subcommand("intersect", "recursive intersection search");
    common(intersect);
    randomized(intersect);
    intersect->add_option("--x", c.x, "Alice's input bits");
    intersect->add_option("--y", c.y, "Bob's input bits");
    intersect->add_flag("--cost-only", c.cost_only, "print the cost model value only");
    intersect->add_option("--threshold", c.threshold, "largest n searched directly");
    intersect->add_option("--kappa", c.kappa, "amplification round constant");

    auto* audit = app.add_subcommand("audit", "rank audits");
    common(audit);
    randomized(audit);
    audit->add_option("name", c.audit, "rank-bound, eq-fullrank, disj-triangular or monomial-rank")
        ->required()
        ->check(CLI::IsMember({"rank-bound", "eq-fullrank", "disj-triangular", "monomial-rank"}));

    auto* sim = app.add_subcommand("simulate", "acceptance probabilities of a zoo protocol");
    common(sim);
    sim->add_option("--fn", c.function_name, "EQ, NEQ, DISJ or INT")->required();
    sim->add_option("--protocol", c.protocol, "trivial, svd or grover")
        ->check(CLI::IsMember({"trivial", "svd", "grover"}));
    sim->add_option("--x", c.x, "Alice's input bits");
    sim->add_option("--y", c.y, "Bob's input bits");

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend());  // CLI11 consumes from the back
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        std::string text;
        if (c.command == "matrix") text = cmd_matrix(c);
        else if (c.command == "ndet") text = cmd_ndet(c);
        else if (c.command == "intersect") text = cmd_intersect(c);
        else if (c.command == "audit") text = cmd_audit(c);
        else text = cmd_simulate(c);
        emit(c, text, out);
        return 0;
    } catch (const AssertionFailure& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "failure: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qcc
