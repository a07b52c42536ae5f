#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "plumbcalc/cache.hpp"
#include "plumbcalc/io.hpp"
#include "plumbcalc/plumbcalc.hpp"

using namespace plumbcalc;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kClauseFailure = 1, kInvalidInput = 2, kRankGuard = 3 };

struct Outcome {
    std::string out;
    int exit = kOk;
    std::optional<std::string> report;

    json to_json() const {
        json j{{"stdout", out}, {"exit", exit}};
        j["report"] = report ? json(*report) : json(nullptr);
        return j;
    }

    static Outcome from_json(const json& j) {
        Outcome o{j.at("stdout").get<std::string>(), j.at("exit").get<int>(), std::nullopt};
        if (!j.at("report").is_null()) {
            o.report = j.at("report").get<std::string>();
        }
        return o;
    }
};

Outcome printed(std::string text) { return Outcome{std::move(text), kOk, std::nullopt}; }

struct Input {
    std::vector<std::int64_t> triple;
    std::string graph_path;
    std::string seifert_path;
    std::size_t rank_guard = kDefaultRankGuard;
    bool as_json = false;

    /// Canonical description of the input for cache keys.
    json describe() const {
        if (!graph_path.empty()) {
            return {{"graph", io::to_json(io::graph_from_json(io::read_json_file(graph_path)))}};
        }
        if (!seifert_path.empty()) {
            return {{"seifert", io::to_json(io::seifert_from_json(io::read_json_file(seifert_path)))}};
        }
        const auto t = sorted_triple();
        return {{"triple", t.values()}};
    }

    BrieskornTriple sorted_triple() const {
        if (triple.size() != 3) {
            throw Error(ErrorCode::InvalidArgument, "expected a triple p q r, --graph or --seifert");
        }
        return BrieskornTriple(triple[0], triple[1], triple[2]).sorted();
    }

    PlumbingGraph graph() const {
        if (!graph_path.empty()) {
            return io::graph_from_json(io::read_json_file(graph_path));
        }
        if (!seifert_path.empty()) {
            return seifert_to_plumbing(io::seifert_from_json(io::read_json_file(seifert_path)));
        }
        return negdef_plumbing(sorted_triple());
    }
};

void add_input_options(CLI::App* cmd, Input& in) {
    cmd->add_option("triple", in.triple, "Brieskorn exponents p q r")->expected(0, 3);
    cmd->add_option("--graph", in.graph_path, "plumbing graph JSON file");
    cmd->add_option("--seifert", in.seifert_path, "Seifert data JSON file");
    cmd->add_flag("--json", in.as_json, "JSON output");
}

Outcome cmd_d(const Input& in) {
    const PlumbingD pd = d_plumbing(in.graph(), in.rank_guard);
    if (!in.as_json) {
        return printed(to_string(pd.d) + "\n");
    }
    json j = in.describe();
    j["d"] = to_string(pd.d);
    j["max_square"] = to_string(pd.max_square);
    j["rank"] = pd.rank;
    j["certificate"] = pd.certificate;
    return printed(j.dump() + "\n");
}

Outcome cmd_mubar(const Input& in) {
    const Rational m = mubar(in.graph());
    if (!in.as_json) {
        return printed(to_string(m) + "\n");
    }
    json j = in.describe();
    j["mubar"] = to_string(m);
    return printed(j.dump() + "\n");
}

struct LensArgs {
    std::int64_t p = 1;
    std::int64_t q = 1;
    std::optional<std::int64_t> i;
    bool all = false;
    bool oracle = false;
    bool as_json = false;
};

Outcome cmd_lens_d(const LensArgs& a) {
    if (a.p < 1) {
        throw Error(ErrorCode::InvalidArgument, "p must be positive");
    }
    const LensSpace lens(a.p, a.q);
    std::vector<Rational> values;
    if (a.oracle) {
        values = lens_d_oracle(lens);
    } else if (a.all) {
        values = lens_d_all(lens);
    } else {
        values = {lens_d(lens, a.i.value_or(0))};
    }
    if (a.oracle && !a.all) {
        values = {values.at(static_cast<std::size_t>(mod_floor(a.i.value_or(0), a.p)))};
    }
    std::string out;
    if (a.as_json) {
        json arr = json::array();
        for (const auto& v : values) {
            arr.push_back(to_string(v));
        }
        json j{{"p", lens.p}, {"q", lens.q}, {"method", a.oracle ? "oracle" : "recursion"}};
        if (a.all) {
            j["values"] = arr;
        } else {
            j["i"] = mod_floor(a.i.value_or(0), a.p);
            j["value"] = arr[0];
        }
        return printed(j.dump() + "\n");
    }
    for (const auto& v : values) {
        out += to_string(v) + "\n";
    }
    return printed(out);
}

struct VerifyArgs {
    std::string theorem;
    std::string families;
    std::string n_range;
    std::int64_t bound = 60;
    std::string report_path;
    bool nonpositive = false;
    bool as_json = false;
    std::size_t rank_guard = kDefaultRankGuard;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) {
            throw Error(ErrorCode::InvalidArgument, "bad range '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto v = parse_int(text);
        return {v, v};
    }
    const auto lo = parse_int(text.substr(0, dots));
    const auto hi = parse_int(text.substr(dots + 2));
    if (lo > hi) {
        throw Error(ErrorCode::InvalidArgument, "empty range '" + text + "'");
    }
    return {lo, hi};
}

const std::map<std::string, std::pair<std::string, std::string>>& verify_defaults() {
    static const std::map<std::string, std::pair<std::string, std::string>> defaults{
        {"thm1.2", {"i..xii", "1..4"}},
        {"thm1.3", {"i..iv", "1..6"}},
        {"cor1.6", {"i", "1..4"}},
        {"rmk1.4", {"i..xii", "1..2"}},
        {"classify-e8", {"", ""}},
    };
    return defaults;
}

std::string summary_line(const VerificationReport& r) {
    std::string line = r.check;
    if (r.family) {
        line += " " + std::string(to_string(*r.family));
    }
    if (r.check != "classify-e8") {
        line += " n=" + std::to_string(r.n);
    }
    if (r.triple) {
        line += " " + to_string(*r.triple);
    }
    if (r.d_value) {
        line += " d=" + to_string(*r.d_value);
    }
    if (r.predicted_value) {
        line += " predicted=" + to_string(*r.predicted_value);
    }
    if (r.check == "classify-e8") {
        for (const auto& t : r.extra["triples"]) {
            line += " " + t.get<std::string>();
        }
    }
    const auto failed = r.failed_clauses();
    if (failed.empty()) {
        line += ": PASS";
    } else {
        line += ": FAIL";
        for (const auto& f : failed) {
            line += " " + f;
        }
    }
    for (const auto& c : r.clauses) {
        if (c.conjecture) {
            line += std::string(" [conjecture ") + (c.passed ? "agrees" : "differs") + "]";
        }
    }
    return line;
}

Outcome cmd_verify(const VerifyArgs& a) {
    const auto& defaults = verify_defaults();
    const auto it = defaults.find(a.theorem);
    if (it == defaults.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "unknown theorem id '" + a.theorem + "' (thm1.2, thm1.3, cor1.6, rmk1.4, classify-e8)");
    }
    std::vector<std::function<VerificationReport()>> tasks;
    std::vector<std::string> skipped;
    if (a.theorem == "classify-e8") {
        tasks.push_back([bound = a.bound] {
            VerificationReport r;
            r.check = "classify-e8";
            r.n = bound;
            const auto found = classify_E8_brieskorn(bound);
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const auto& t : found) {
                list.push_back(to_string(t));
            }
            r.extra["bound"] = bound;
            r.extra["triples"] = list;
            std::vector<BrieskornTriple> known;
            for (const auto& t : {BrieskornTriple(2, 3, 5), BrieskornTriple(3, 4, 7)}) {
                if (t.r() <= bound) {
                    known.push_back(t);
                }
            }
            r.add("known_classification", found == known, std::to_string(found.size()) + " triples");
            return r;
        });
    } else {
        const auto families = parse_family_list(a.families.empty() ? it->second.first : a.families);
        const auto [lo, hi] = parse_range(a.n_range.empty() ? it->second.second : a.n_range);
        if (lo < 1 && !(a.theorem == "rmk1.4" && a.nonpositive)) {
            throw Error(ErrorCode::InvalidArgument, "n must be positive (rmk1.4 accepts --nonpositive)");
        }
        if (a.theorem == "thm1.3" || a.theorem == "cor1.6") {
            for (const FamilyId id : families) {
                if (!has_surgery_table(id)) {
                    throw Error(ErrorCode::InvalidArgument,
                                a.theorem + " covers families i..iv, got " + std::string(to_string(id)));
                }
            }
        }
        for (const FamilyId id : families) {
            for (std::int64_t n = lo; n <= hi; ++n) {
                if (a.theorem == "thm1.2") {
                    tasks.push_back([id, n] { return verify_theorem_main(id, n); });
                } else if (a.theorem == "thm1.3") {
                    tasks.push_back([id, n] { return verify_correction_bound(id, n); });
                } else if (a.theorem == "cor1.6") {
                    tasks.push_back([id, n, guard = a.rank_guard] { return verify_unbounded_gap(id, n, guard); });
                } else {
                    const ScanOptions options{a.rank_guard, a.nonpositive};
                    tasks.push_back([id, n, options] { return conjecture_scan(id, n, options); });
                }
            }
        }
        if (a.theorem == "thm1.2") {
            for (std::int64_t n = lo; n <= hi; ++n) {
                tasks.push_back([n] { return negative_control(n); });
            }
        }
    }

    // rank-guard failures become skipped rows rather than aborting the batch
    std::vector<std::function<VerificationReport()>> wrapped;
    for (auto& task : tasks) {
        wrapped.push_back([task] {
            try {
                return task();
            } catch (const Error& e) {
                if (e.code() != ErrorCode::RankGuardExceeded) {
                    throw;
                }
                VerificationReport r;
                r.check = "skipped";
                r.extra["reason"] = e.what();
                return r;
            }
        });
    }
    const auto reports = run_batch(wrapped);

    Outcome o;
    std::string jsonl;
    std::size_t failing = 0;
    std::size_t guard_skips = 0;
    for (const auto& r : reports) {
        if (r.check == "skipped") {
            ++guard_skips;
            o.out += "skipped: " + r.extra["reason"].get<std::string>() + "\n";
            continue;
        }
        jsonl += to_json(r).dump() + "\n";
        if (!r.passed()) {
            ++failing;
        }
        if (!a.as_json) {
            o.out += summary_line(r) + "\n";
        }
    }
    if (a.as_json) {
        o.out = jsonl + o.out;
    }
    const std::size_t done = reports.size() - guard_skips;
    o.out += "summary: " + std::to_string(done) + " reports, " + std::to_string(failing) + " failing";
    if (guard_skips > 0) {
        o.out += ", " + std::to_string(guard_skips) + " skipped by the rank guard";
    }
    o.out += "\n";
    o.exit = failing > 0 ? kClauseFailure : guard_skips > 0 ? kRankGuard : kOk;
    o.report = jsonl;
    return o;
}

int exit_code_for(const Error& e) {
    return e.code() == ErrorCode::RankGuardExceeded ? kRankGuard : kInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants of plumbed 3-manifolds and integral lattices"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    bool no_cache = false;
    app.add_flag("--no-cache", no_cache, "neither read nor write the result cache");
    std::size_t rank_guard = kDefaultRankGuard;
    app.add_option("--rank-guard", rank_guard, "largest plumbing rank for d computations");

    Input d_in;
    auto* d_cmd = app.add_subcommand("d", "correction term of a negative-definite plumbing");
    add_input_options(d_cmd, d_in);

    Input mubar_in;
    auto* mubar_cmd = app.add_subcommand("mubar", "Neumann-Siebenmann invariant of a plumbing");
    add_input_options(mubar_cmd, mubar_in);

    LensArgs lens;
    auto* lens_cmd = app.add_subcommand("lens-d", "correction terms of L(p,q)");
    lens_cmd->add_option("p", lens.p)->required();
    lens_cmd->add_option("q", lens.q)->required();
    lens_cmd->add_option("i", lens.i, "spin^c label");
    lens_cmd->add_flag("--all", lens.all, "all p labels");
    lens_cmd->add_flag("--oracle", lens.oracle, "compute from the lattice of the plumbing");
    lens_cmd->add_flag("--json", lens.as_json, "JSON output");

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification procedure");
    verify_cmd->add_option("theorem", verify.theorem, "thm1.2 | thm1.3 | cor1.6 | rmk1.4 | classify-e8")
        ->required();
    verify_cmd->add_option("--families", verify.families, "e.g. i..xii or i,iii");
    verify_cmd->add_option("--n", verify.n_range, "A..B");
    verify_cmd->add_option("--bound", verify.bound, "classification bound (<= 100)");
    verify_cmd->add_option("--report", verify.report_path, "write JSON-lines reports here");
    verify_cmd->add_flag("--nonpositive", verify.nonpositive, "allow n <= 0 in rmk1.4");
    verify_cmd->add_flag("--json", verify.as_json, "print JSON-lines reports");

    CLI11_PARSE(app, argc, argv);

    d_in.rank_guard = mubar_in.rank_guard = verify.rank_guard = rank_guard;

    try {
        json key;
        std::function<Outcome()> run;
        if (*d_cmd) {
            key = {{"cmd", "d"}, {"input", d_in.describe()}, {"json", d_in.as_json}, {"rank_guard", rank_guard}};
            run = [&] { return cmd_d(d_in); };
        } else if (*mubar_cmd) {
            key = {{"cmd", "mubar"}, {"input", mubar_in.describe()}, {"json", mubar_in.as_json}};
            run = [&] { return cmd_mubar(mubar_in); };
        } else if (*lens_cmd) {
            const LensSpace l(lens.p < 1 ? 1 : lens.p, lens.q);
            key = {{"cmd", "lens-d"}, {"p", lens.p}, {"q", l.q}, {"all", lens.all}, {"oracle", lens.oracle},
                   {"json", lens.as_json}};
            key["i"] = lens.all ? json(nullptr) : json(mod_floor(lens.i.value_or(0), l.p));
            run = [&] { return cmd_lens_d(lens); };
        } else {
            key = {{"cmd", "verify"},         {"theorem", verify.theorem},   {"families", verify.families},
                   {"n", verify.n_range},     {"bound", verify.bound},       {"nonpositive", verify.nonpositive},
                   {"json", verify.as_json},  {"rank_guard", rank_guard}};
            run = [&] { return cmd_verify(verify); };
        }

        ResultCache cache(ResultCache::default_path());
        const std::string key_text = key.dump();
        std::optional<Outcome> outcome;
        if (!no_cache) {
            if (auto hit = cache.lookup(key_text)) {
                try {
                    outcome = Outcome::from_json(hit->value);
                } catch (const json::exception&) {
                    std::cerr << "warning: ignoring unreadable cache entry\n";
                }
            }
        }
        if (!outcome) {
            outcome = run();
            if (!no_cache) {
                cache.store(key_text, outcome->to_json());
            }
        }
        std::cout << outcome->out;
        if (*verify_cmd && !verify.report_path.empty()) {
            std::ofstream report(verify.report_path);
            if (!report) {
                std::cerr << "error: cannot write " << verify.report_path << "\n";
                return kInvalidInput;
            }
            report << outcome->report.value_or("");
        }
        return outcome->exit;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
