#include "cli.hpp"

#include "ggism/gale_shapley.hpp"
#include "ggism/instance.hpp"
#include "ggism/lp_rounding.hpp"
#include "ggism/matching.hpp"
#include "ggism/reduction.hpp"
#include "ggism/rotations.hpp"
#include "ggism/two_sat.hpp"
#include "ggism/xp.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace ggism::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::vector<Rational> read_rationals(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<Rational> values;
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        values.push_back(parse_rational(tok));
    }
    return values;
}

DisutilityFunction make_dfun(const std::string& spec, int n) {
    if (spec == "identity") return DisutilityFunction::identity();
    if (spec == "squared") return DisutilityFunction::squared();
    if (spec.rfind("file:", 0) == 0) {
        std::vector<Rational> values = read_rationals(spec.substr(5));
        if (static_cast<int>(values.size()) < n)
            throw std::runtime_error("disutility table has " + std::to_string(values.size()) +
                                     " values; at least " + std::to_string(n) + " required");
        return DisutilityFunction::table(std::move(values));
    }
    throw std::runtime_error("unknown disutility '" + spec +
                             "' (expected identity, squared, or file:<path>)");
}

GgiWeights make_weights(const std::string& spec, int n) {
    const int N = 2 * n;
    if (spec == "gini") return gini_weights(N);
    if (spec.rfind("head:", 0) == 0) return head_weights(N, std::stoi(spec.substr(5)));
    if (spec.rfind("file:", 0) == 0) {
        std::vector<Rational> values = read_rationals(spec.substr(5));
        if (static_cast<int>(values.size()) != N)
            throw std::runtime_error("weight file has " + std::to_string(values.size()) +
                                     " values; exactly " + std::to_string(N) + " required");
        return GgiWeights(std::move(values));
    }
    throw std::runtime_error("unknown weights '" + spec +
                             "' (expected gini, head:<K>, or file:<path>)");
}

Criterion parse_criterion(const std::string& name) {
    if (name == "utilitarian") return Criterion::utilitarian;
    if (name == "egalitarian") return Criterion::egalitarian;
    if (name == "sex-equal") return Criterion::sex_equal;
    if (name == "balanced") return Criterion::balanced;
    if (name == "ggi") return Criterion::ggi;
    throw std::runtime_error("unknown criterion '" + name + "'");
}

json pairs_json(const Matching& m) {
    json pairs = json::array();
    for (auto [man, woman] : m.pairs()) pairs.push_back({man, woman});
    return pairs;
}

json value_json(const Rational& v) {
    return json{{"exact", format_rational(v)}, {"value", to_double(v)}};
}

void emit(std::ostream& out, const json& doc, const std::string& format,
          const std::function<void(std::ostream&)>& table) {
    if (format == "json")
        out << doc.dump(2) << '\n';
    else
        table(out);
}

int cmd_solve(const std::string& path, const std::string& method, const std::string& criterion,
              const std::string& weights_spec, const std::string& dfun_spec,
              const std::string& format, int threads, bool exact, std::ostream& out) {
    Instance inst = load_instance(path);
    DisutilityFunction dfun = make_dfun(dfun_spec, inst.n());
    Criterion crit = parse_criterion(criterion);
    std::optional<GgiWeights> weights;
    if (crit == Criterion::ggi) weights = make_weights(weights_spec, inst.n());

    std::optional<Matching> result;
    json extra = json::object();
    if (method == "gs-man") {
        result = man_optimal(inst).first;
    } else if (method == "gs-woman") {
        result = woman_optimal(inst);
    } else if (method == "brute") {
        RotationPoset poset = build_poset(inst);
        std::optional<Rational> best;
        for (const auto& [closed, m] : enumerate_stable(poset, inst)) {
            Rational v = evaluate(crit, inst, dfun, m, weights ? &*weights : nullptr);
            if (!best || v < *best) {
                best = v;
                result = m;
            }
        }
    } else if (method == "xp") {
        if (crit != Criterion::ggi) throw std::runtime_error("--method xp requires --criterion ggi");
        XpResult r = xp_solve(inst, dfun, *weights, threads);
        result = std::move(r.matching);
    } else if (method == "approx") {
        if (crit != Criterion::ggi)
            throw std::runtime_error("--method approx requires --criterion ggi");
        ApproxResult r = approx_solve(inst, dfun, *weights, exact);
        result = std::move(r.matching);
        extra["lp_bound"] = value_json(r.lp_bound);
        extra["closed_set"] = r.closed_set;
        json y = json::array();
        for (const auto& v : r.fractional.y_hat) y.push_back(to_double(v));
        extra["y_hat"] = y;
    } else {
        throw std::runtime_error("unknown method '" + method +
                                 "' (expected gs-man, gs-woman, brute, approx, or xp)");
    }

    Rational value = evaluate(crit, inst, dfun, *result, weights ? &*weights : nullptr);
    json doc{{"method", method},
             {"criterion", criterion},
             {"n", inst.n()},
             {"pairs", pairs_json(*result)},
             {"value", value_json(value)}};
    doc.update(extra);
    emit(out, doc, format, [&](std::ostream& o) {
        for (auto [m, w] : result->pairs()) o << m << ' ' << w << '\n';
        o << "value " << format_rational(value) << " (" << to_double(value) << ")\n";
        if (extra.contains("lp_bound"))
            o << "lp_bound " << extra["lp_bound"]["exact"].get<std::string>() << " ("
              << extra["lp_bound"]["value"].get<double>() << ")\n";
    });
    return 0;
}

int cmd_enumerate(const std::string& path, const std::string& dfun_spec,
                  const std::string& weights_spec, const std::string& format, std::ostream& out) {
    Instance inst = load_instance(path);
    DisutilityFunction dfun = make_dfun(dfun_spec, inst.n());
    std::optional<GgiWeights> weights;
    if (!weights_spec.empty()) weights = make_weights(weights_spec, inst.n());
    RotationPoset poset = build_poset(inst);
    json rows = json::array();
    int index = 0;
    for (const auto& [closed, m] : enumerate_stable(poset, inst)) {
        DisutilityVector d = disutility_vector(inst, dfun, m);
        Rational sum = std::accumulate(d.begin(), d.end(), Rational(0));
        Rational max = *std::max_element(d.begin(), d.end());
        json row{{"index", ++index},
                 {"closed_set", closed},
                 {"pairs", pairs_json(m)},
                 {"sum", value_json(sum)},
                 {"max", value_json(max)}};
        if (weights) row["ggi"] = value_json(ggi(*weights, d));
        rows.push_back(std::move(row));
    }
    json doc{{"count", index}, {"matchings", rows}};
    emit(out, doc, format, [&](std::ostream& o) {
        for (const auto& row : rows) {
            o << 'x' << row["index"].get<int>() << " closed={";
            bool first = true;
            for (int id : row["closed_set"].get<std::vector<int>>()) {
                o << (first ? "" : ",") << id;
                first = false;
            }
            o << "} sum=" << row["sum"]["exact"].get<std::string>()
              << " max=" << row["max"]["exact"].get<std::string>();
            if (row.contains("ggi")) o << " ggi=" << row["ggi"]["exact"].get<std::string>();
            o << '\n';
        }
    });
    return 0;
}

int cmd_rotations(const std::string& path, bool dot, const std::string& format,
                  std::ostream& out) {
    Instance inst = load_instance(path);
    RotationPoset poset = build_poset(inst);
    if (dot) {
        out << poset.to_dot();
        return 0;
    }
    if (format == "json") {
        out << poset.to_json() << '\n';
        return 0;
    }
    for (const auto& rho : poset.rotations()) {
        out << "rho" << rho.id << ':';
        for (auto [m, w] : rho.pairs) out << " (" << m << ',' << w << ')';
        out << '\n';
    }
    for (auto [a, b] : poset.immediate_edges()) out << "edge rho" << a << " -> rho" << b << '\n';
    return 0;
}

int cmd_check(const std::string& path, const std::string& matching_path,
              const std::string& criterion, const std::string& weights_spec,
              const std::string& dfun_spec, const std::string& format, std::ostream& out) {
    Instance inst = load_instance(path);
    Matching m = matching_from_json(read_file(matching_path), inst.n());
    DisutilityFunction dfun = make_dfun(dfun_spec, inst.n());
    Criterion crit = parse_criterion(criterion);
    std::optional<GgiWeights> weights;
    if (crit == Criterion::ggi) weights = make_weights(weights_spec, inst.n());
    auto blocking = find_blocking_pair(inst, m);
    json doc{{"stable", !blocking.has_value()}};
    if (blocking) doc["blocking_pair"] = {blocking->first, blocking->second};
    Rational value = evaluate(crit, inst, dfun, m, weights ? &*weights : nullptr);
    doc["criterion"] = criterion;
    doc["value"] = value_json(value);
    emit(out, doc, format, [&](std::ostream& o) {
        if (blocking)
            o << "unstable: blocking pair (" << blocking->first << ',' << blocking->second << ")\n";
        else
            o << "stable\n";
        o << "value " << format_rational(value) << " (" << to_double(value) << ")\n";
    });
    return blocking ? 1 : 0;
}

int cmd_reduce(const std::string& cnf_path, const std::string& out_path,
               const std::string& sidecar_path, const std::string& format, std::ostream& out) {
    TwoSatInstance raw = parse_two_sat(read_file(cnf_path));
    std::optional<TwoSatInstance> ts = preprocess_2sat(raw);
    if (!ts) throw std::runtime_error("2-SAT instance reduces to zero clauses after preprocessing");
    ReductionOutput red = reduce(*ts);
    std::string instance_text = format_instance(red.instance);

    json sidecar;
    sidecar["n"] = red.instance.n();
    sidecar["n_v"] = red.n_v;
    sidecar["n_c"] = red.n_c;
    json dtable = json::array();
    for (const auto& v : red.dfun.table_values()) dtable.push_back(format_rational(v));
    sidecar["disutility"] = dtable;
    json wvals = json::array();
    for (int i = 1; i <= red.weights.size(); ++i) wvals.push_back(format_rational(red.weights[i]));
    sidecar["weights"] = wvals;
    sidecar["delta_u"] = format_rational(red.delta_u);
    sidecar["delta_l"] = format_rational(red.delta_l);
    json decisive = json::array();
    for (auto [a, b] : red.decisive_agents) decisive.push_back({a, b});
    sidecar["decisive_agents"] = decisive;
    sidecar["variable_rotations"] =
        std::vector<int>(red.variable_rotation_map.begin() + 1, red.variable_rotation_map.end());

    if (!out_path.empty()) write_file(out_path, instance_text);
    if (!sidecar_path.empty()) write_file(sidecar_path, sidecar.dump(2) + "\n");
    if (format == "json") {
        out << json{{"instance", instance_text}, {"sidecar", sidecar}}.dump(2) << '\n';
    } else if (out_path.empty()) {
        out << instance_text;
    }
    return 0;
}

int cmd_gen(int n, unsigned seed, const std::string& out_path, const std::string& format,
            std::ostream& out) {
    if (n < 1) throw std::runtime_error("--n must be positive");
    std::mt19937 rng(seed);
    auto side = [&] {
        std::vector<std::vector<int>> prefs(n + 1);
        for (int i = 1; i <= n; ++i) {
            prefs[i].resize(n);
            std::iota(prefs[i].begin(), prefs[i].end(), 1);
            std::shuffle(prefs[i].begin(), prefs[i].end(), rng);
        }
        return prefs;
    };
    auto men = side();
    auto women = side();
    Instance inst(std::move(men), std::move(women));
    std::string text = format_instance(inst);
    if (!out_path.empty()) {
        write_file(out_path, text);
        return 0;
    }
    if (format == "json") {
        json doc{{"n", n}};
        json m = json::array(), w = json::array();
        for (int i = 1; i <= n; ++i) {
            const auto& ml = inst.man_list(i);
            const auto& wl = inst.woman_list(i);
            m.push_back(std::vector<int>(ml.begin() + 1, ml.end()));
            w.push_back(std::vector<int>(wl.begin() + 1, wl.end()));
        }
        doc["men"] = m;
        doc["women"] = w;
        out << doc.dump(2) << '\n';
    } else {
        out << text;
    }
    return 0;
}

int default_threads() {
    if (const char* env = std::getenv("GGISM_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fair stable marriages under generalized Gini indices"};
    app.require_subcommand(1);

    std::string instance_path, matching_path, cnf_path, out_path, sidecar_path;
    std::string method = "xp", criterion = "ggi", weights_spec = "gini",
                dfun_spec = "identity", format = "table", enum_weights;
    int threads = default_threads();
    int gen_n = 0;
    unsigned gen_seed = 1;
    bool exact = false, dot = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--disutility", dfun_spec,
                        "Disutility of rank: identity, squared, or file:<path>");
        cmd->add_option("--format", format, "Output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "Find a stable matching optimizing a criterion");
    solve->add_option("instance", instance_path, "Instance file")->required();
    solve->add_option("--method", method, "gs-man, gs-woman, brute, approx, or xp");
    solve->add_option("--criterion", criterion,
                      "utilitarian, egalitarian, sex-equal, balanced, or ggi");
    solve->add_option("--weights", weights_spec, "GGI weights: gini, head:<K>, or file:<path>");
    solve->add_option("--threads", threads, "Worker threads for xp (default $GGISM_THREADS or 1)");
    solve->add_flag("--rational,!--float", exact,
                    "Solve the approx LP in exact rational arithmetic");
    add_common(solve);

    CLI::App* enumerate = app.add_subcommand("enumerate", "List all stable matchings");
    enumerate->add_option("instance", instance_path, "Instance file")->required();
    enumerate->add_option("--weights", enum_weights, "Optional GGI weights column");
    add_common(enumerate);

    CLI::App* rotations = app.add_subcommand("rotations", "Rotations and their partial order");
    rotations->add_option("instance", instance_path, "Instance file")->required();
    rotations->add_flag("--dot", dot, "Emit Graphviz DOT");
    add_common(rotations);

    CLI::App* check = app.add_subcommand("check", "Verify stability and evaluate a matching");
    check->add_option("instance", instance_path, "Instance file")->required();
    check->add_option("--matching", matching_path, "Matching JSON file")->required();
    check->add_option("--criterion", criterion,
                      "utilitarian, egalitarian, sex-equal, balanced, or ggi");
    check->add_option("--weights", weights_spec, "GGI weights: gini, head:<K>, or file:<path>");
    add_common(check);

    CLI::App* reduce = app.add_subcommand("reduce-2sat", "Build the marriage instance of a 2-SAT input");
    reduce->add_option("cnf", cnf_path, "DIMACS file with 1- or 2-literal clauses")->required();
    reduce->add_option("--out", out_path, "Write the instance to this file");
    reduce->add_option("--sidecar", sidecar_path, "Write the JSON sidecar to this file");
    reduce->add_option("--format", format, "Output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));

    CLI::App* gen = app.add_subcommand("gen", "Generate a uniformly random instance");
    gen->add_option("--n", gen_n, "Agents per side")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", out_path, "Write the instance to this file");
    gen->add_option("--format", format, "Output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    static char name[] = "ggism";
    argv.push_back(name);
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*solve)
            return cmd_solve(instance_path, method, criterion, weights_spec, dfun_spec, format,
                             threads, exact, out);
        if (*enumerate) return cmd_enumerate(instance_path, dfun_spec, enum_weights, format, out);
        if (*rotations) return cmd_rotations(instance_path, dot, format, out);
        if (*check)
            return cmd_check(instance_path, matching_path, criterion, weights_spec, dfun_spec,
                             format, out);
        if (*reduce) return cmd_reduce(cnf_path, out_path, sidecar_path, format, out);
        if (*gen) return cmd_gen(gen_n, gen_seed, out_path, format, out);
        throw std::runtime_error("no subcommand given");
    } catch (const std::exception& e) {
        err << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
}

}  // namespace ggism::cli
