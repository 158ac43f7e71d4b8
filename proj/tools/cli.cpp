#include "cli.hpp"

#include "betadyn/cantor.hpp"
#include "betadyn/cylinders.hpp"
#include "betadyn/error.hpp"
#include "betadyn/orbit.hpp"
#include "betadyn/runs.hpp"
#include "betadyn/symbolic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <sstream>

namespace betadyn::cli {

using json = nlohmann::ordered_json;

namespace {

std::string frac(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

mpq_class parse_frac(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return parse_rational(s);
    mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    q.canonicalize();
    return q;
}

struct Options {
    std::string beta = "golden";
    std::string x = "0";
    std::string word;
    std::string psi, psi1, psi2;
    std::string q;
    std::string witness;
    std::string format = "json";
    std::string v, vhat, delta = "0", v2lo, v2hi;
    std::uint64_t n = 8, N = 8, K = 4, horizon = 1000, depth = 0, from = 1, to = 0;
    std::uint64_t samples = 10, seed = 1, cap = kCantorWordCap;
    int digits = -1;
    bool numeric = false, count_only = false;
};

json scalar_json(const RealScalar& s, int digits) {
    json exact;
    if (auto q = s.as_rational()) {
        exact = frac(*q);
    } else {
        json coeffs = json::array();
        for (const auto& c : s.coefficients()) coeffs.push_back(frac(c));
        exact = json{{"coeffs", coeffs}};
    }
    if (digits < 0) return exact;
    return json{{"exact", exact}, {"decimal", s.to_decimal(digits)}};
}

RealScalar parse_point(const std::string& text, const BetaValue& beta) {
    constexpr std::string_view tag = "digits:";
    if (text.rfind(tag, 0) == 0) {
        DigitWord w = DigitWord::parse(std::string_view(text).substr(tag.size()));
        return RealScalar::from_digits(beta, w.view());
    }
    return RealScalar(parse_frac(text));
}

json ext_json(const ExtendedReal& e) {
    if (e.infinite) return "inf";
    return e.value;
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Objects print as key/value lines; a "rows" array prints as an aligned table.
void emit(const json& j, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << j.dump(2) << '\n';
        return;
    }
    const json* rows = j.contains("rows") ? &j["rows"] : nullptr;
    if (!rows || rows->empty()) {
        for (const auto& [k, v] : j.items()) {
            if (format == "csv")
                out << k << ',' << cell(v) << '\n';
            else
                out << std::left << std::setw(16) << k << ' ' << cell(v) << '\n';
        }
        return;
    }
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows->front().items()) keys.push_back(k);
    if (format == "csv") {
        for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
        out << '\n';
        for (const auto& r : *rows) {
            for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << cell(r[keys[i]]);
            out << '\n';
        }
        return;
    }
    std::vector<std::size_t> width(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        width[i] = keys[i].size();
        for (const auto& r : *rows) width[i] = std::max(width[i], cell(r[keys[i]]).size());
    }
    for (std::size_t i = 0; i < keys.size(); ++i) out << (i ? "  " : "") << std::left << std::setw(int(width[i])) << keys[i];
    out << '\n';
    for (const auto& r : *rows) {
        for (std::size_t i = 0; i < keys.size(); ++i)
            out << (i ? "  " : "") << std::left << std::setw(int(width[i])) << cell(r[keys[i]]);
        out << '\n';
    }
}

CantorSchedule schedule_from(const Options& o) {
    if (o.v.empty() || o.vhat.empty()) raise(ErrorKind::InvalidParams, "--v and --vhat are required");
    return build_schedule(parse_frac(o.v), parse_frac(o.vhat), parse_frac(o.delta), o.N, o.K);
}

json schedule_json(const CantorSchedule& s) {
    json j;
    j["v"] = frac(s.v);
    j["vhat"] = frac(s.v_hat);
    j["delta"] = frac(s.delta);
    j["N"] = s.N;
    j["K"] = s.K;
    j["tower"] = s.tower;
    j["repairs"] = s.repairs;
    j["n_next"] = s.n_next;
    j["nu_ratio"] = s.nu_ratio();
    j["nu_hat_ratio"] = s.nu_hat_ratio();
    json rows = json::array();
    for (std::size_t k = 0; k < s.K; ++k)
        rows.push_back(json{{"k", k + 1}, {"n", s.n[k]}, {"m", s.m[k]}, {"t", s.t[k]}, {"l", s.l[k]},
                            {"h", s.h[k]}, {"p", s.p[k]}, {"q", s.q[k]}});
    j["rows"] = rows;
    return j;
}

json cylinder_json(const Cylinder& c, const BetaValue& beta, int digits) {
    return json{{"word", c.word.to_string()},
                {"left", scalar_json(c.left, digits)},
                {"right", scalar_json(c.right, digits)},
                {"length", scalar_json(c.length(), digits)},
                {"is_full", is_full(c, beta)}};
}

using Handler = std::function<void(const Options&, std::ostream&)>;

struct Command {
    const char* name;
    const char* help;
    std::vector<const char*> flags;
    Handler handler;
};

std::vector<Command> commands() {
    return {
        {"expand", "Greedy digits of x.", {"beta", "x", "n"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             DigitWord w = greedy_expand(parse_point(o.x, b), b, o.n);
             emit(json{{"beta", b.spec()}, {"x", o.x}, {"n", o.n}, {"digits", w.to_string()}}, o.format, out);
         }},
        {"eps-star", "Quasi-greedy expansion of 1.", {"beta", "n"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             EpsStar e = eps_star_prefix(b, o.n);
             json j{{"beta", b.spec()}, {"prefix", e.prefix.to_string()}, {"simple_parry", e.simple_parry}};
             if (e.period) j["period"] = json{{"start", e.period->first}, {"length", e.period->second}};
             emit(j, o.format, out);
         }},
        {"admissible", "Parry admissibility of a word.", {"beta", "word"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             DigitWord w = DigitWord::parse(o.word);
             emit(json{{"beta", b.spec()}, {"word", w.to_string()}, {"admissible", is_admissible(w, b)}}, o.format, out);
         }},
        {"enumerate", "Admissible words of length n. CSV columns: word.", {"beta", "n", "count-only"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             json j{{"beta", b.spec()}, {"n", o.n}, {"count", count_admissible(b, o.n).get_str()}};
             if (!o.count_only) {
                 json rows = json::array();
                 for (const auto& w : enumerate_admissible(b, o.n)) rows.push_back(json{{"word", w.to_string()}});
                 j["rows"] = rows;
             }
             emit(j, o.format, out);
         }},
        {"beta-n", "Auxiliary base beta_N.", {"beta", "N", "digits"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             BetaValue bn = solve_beta_n(b, o.N);
             auto [lo, hi] = bn.isolating_interval();
             json j{{"beta", b.spec()}, {"N", o.N}, {"polynomial", bn.polynomial().to_string()},
                    {"interval", json::array({frac(lo), frac(hi)})}};
             if (o.digits >= 0) j["decimal"] = decimal_string(bn.enclosure(o.digits * 4 + 64).lo, o.digits);
             emit(j, o.format, out);
         }},
        {"cylinder", "Basic interval of a word.", {"beta", "word", "digits"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             emit(cylinder_json(cylinder_interval(DigitWord::parse(o.word), b), b, o.digits), o.format, out);
         }},
        {"partition", "Cylinders of order n. CSV columns: word,left,right,length,is_full.", {"beta", "n", "digits"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             auto cyls = partition_level(b, o.n);
             if (o.format == "csv") {
                 out << cylinders_csv(cyls, b, o.digits < 0 ? 30 : o.digits);
                 return;
             }
             json rows = json::array();
             RealScalar total;
             for (const auto& c : cyls) {
                 rows.push_back(cylinder_json(c, b, o.digits));
                 total = total + c.length();
             }
             emit(json{{"beta", b.spec()}, {"n", o.n}, {"count", cyls.size()},
                       {"total_length", scalar_json(total, o.digits)}, {"rows", rows}},
                  o.format, out);
         }},
        {"orbit", "Exact orbit x, Tx, ..., T^{n-1}x. CSV columns: i,point.", {"beta", "x", "n", "digits"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             Orbit orb = orbit(parse_point(o.x, b), b, o.n);
             json rows = json::array();
             for (std::size_t i = 0; i < orb.points.size(); ++i)
                 rows.push_back(json{{"i", i}, {"point", scalar_json(orb.points[i], o.digits)}});
             json j{{"beta", b.spec()}, {"x", o.x}};
             j["first_zero"] = orb.first_zero ? json(*orb.first_zero) : json(nullptr);
             j["rows"] = rows;
             emit(j, o.format, out);
         }},
        {"hits", "Times n <= horizon with T^n x < psi(n).", {"beta", "x", "psi", "horizon"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             auto hits = hitting_times(parse_point(o.x, b), b, SpeedFn::parse(o.psi), o.horizon);
             emit(json{{"beta", b.spec()}, {"psi", SpeedFn::parse(o.psi).to_string()}, {"hits", hits}}, o.format, out);
         }},
        {"uniform", "Uniform hitting check for N in [from, to]. CSV columns: N,ok.", {"beta", "x", "psi", "from", "to"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             auto res = uniform_check(parse_point(o.x, b), b, SpeedFn::parse(o.psi), o.from, std::max(o.to, o.from));
             json rows = json::array();
             bool all = true;
             for (const auto& [N, ok] : res) {
                 rows.push_back(json{{"N", N}, {"ok", ok}});
                 all = all && ok;
             }
             emit(json{{"beta", b.spec()}, {"all", all}, {"rows", rows}}, o.format, out);
         }},
        {"exponents", "Run-based estimates of nu and nu_hat for a witness or an expansion.",
         {"beta", "x", "witness", "horizon"},
         [](const Options& o, std::ostream& out) {
             BetaValue b = BetaValue::parse(o.beta);
             DigitStream d = o.witness.empty() ? DigitStream::expansion(parse_point(o.x, b), b)
                                               : witness_stream(parse_witness(o.witness));
             ExponentEstimate e = estimate_exponents(d, o.horizon);
             emit(json{{"source", o.witness.empty() ? o.x : o.witness},
                       {"horizon", e.horizon},
                       {"window", e.window},
                       {"nu", ext_json(e.nu)},
                       {"nu_hat", ext_json(e.nu_hat)},
                       {"nu_ratios", e.nu_ratios},
                       {"nu_hat_ratios", e.nu_hat_ratios}},
                  o.format, out);
         }},
        {"psi-exp", "Liminf/limsup exponents of a speed function.", {"psi", "horizon", "numeric", "beta"},
         [](const Options& o, std::ostream& out) {
             SpeedFn f = SpeedFn::parse(o.psi);
             PsiExponents p = psi_exponents(f, o.horizon, o.numeric, BetaValue::parse(o.beta).approx());
             json j{{"psi", f.to_string()}, {"exact", p.exact}};
             if (p.exact) {
                 j["lo"] = frac(p.lo);
                 j["hi"] = frac(p.hi);
             } else {
                 j["lo"] = p.lo_approx;
                 j["hi"] = p.hi_approx;
             }
             emit(j, o.format, out);
         }},
        {"classify", "Dimension bounds for an exponent quadruple v1_lo,v1_hi,v2_lo,v2_hi.", {"q"},
         [](const Options& o, std::ostream& out) {
             ExponentQuadruple q = ExponentQuadruple::parse(o.q);
             json j = verdict_json(classify_bounds(q));
             j["q"] = q.to_string();
             j["inclusion"] = inclusion_verdict(q);
             emit(j, o.format, out);
         }},
        {"classify-uniform", "Dimension bounds for the uniform set alone.", {"v2-lo", "v2-hi"},
         [](const Options& o, std::ostream& out) {
             emit(verdict_json(classify_uniform(ExtRational::parse(o.v2lo), ExtRational::parse(o.v2hi))), o.format, out);
         }},
        {"bl", "(v - w - vw)/((1+v)(v - w)), or empty.", {"v", "vhat"},
         [](const Options& o, std::ostream& out) {
             auto d = bl_dimension(parse_frac(o.v), parse_frac(o.vhat));
             json j{{"v", o.v}, {"vhat", o.vhat}, {"empty", !d.has_value()}};
             j["value"] = d ? json(frac(*d)) : json(nullptr);
             emit(j, o.format, out);
         }},
        {"sw", "1/(1+v).", {"v"},
         [](const Options& o, std::ostream& out) {
             emit(json{{"v", o.v}, {"value", frac(sw_dimension(ExtRational::parse(o.v)))}}, o.format, out);
         }},
        {"s0", "Critical exponent of the covering series.", {"v", "v2-lo"},
         [](const Options& o, std::ostream& out) {
             emit(json{{"v", o.v}, {"v2_lo", o.v2lo},
                       {"value", frac(covering_critical_exponent(parse_frac(o.v), parse_frac(o.v2lo)))}},
                  o.format, out);
         }},
        {"cantor-schedule", "Run schedule n_k, m_k, t_k and padded positions.", {"v", "vhat", "delta", "N", "K"},
         [](const Options& o, std::ostream& out) { emit(schedule_json(schedule_from(o)), o.format, out); }},
        {"cantor-gen", "Template words up to a depth. CSV columns: level,word,left,length,mass.",
         {"v", "vhat", "delta", "N", "K", "beta", "depth", "digits", "cap"},
         [](const Options& o, std::ostream& out) {
             CantorConstruction c(schedule_from(o), BetaValue::parse(o.beta));
             if (o.format == "csv") {
                 out << cover_csv(measured_cover(c, o.depth, o.cap), o.digits < 0 ? 30 : o.digits);
                 return;
             }
             json rows = json::array();
             for (const auto& w : generate_level_words(c, o.depth, o.cap))
                 rows.push_back(json{{"word", w.to_string()}, {"mass", frac(c.mass(w))}});
             emit(json{{"depth", o.depth}, {"count", rows.size()}, {"rows", rows}}, o.format, out);
         }},
        {"cantor-measure", "Mass of a template word.", {"v", "vhat", "delta", "N", "K", "beta", "word"},
         [](const Options& o, std::ostream& out) {
             CantorConstruction c(schedule_from(o), BetaValue::parse(o.beta));
             DigitWord w = DigitWord::parse(o.word);
             emit(json{{"word", w.to_string()}, {"level", w.size()}, {"mass", frac(bernoulli_measure(c, w))}}, o.format,
                  out);
         }},
        {"localdim", "Local-dimension ratios at the milestones h_k. CSV columns: k,level,neg_log_mass,neg_log_length,full,ratio.",
         {"v", "vhat", "delta", "N", "K", "beta"},
         [](const Options& o, std::ostream& out) {
             CantorConstruction c(schedule_from(o), BetaValue::parse(o.beta));
             json rows = json::array();
             for (const auto& p : local_dimension_series(c, c.schedule().K))
                 rows.push_back(json{{"k", p.k}, {"level", p.level}, {"neg_log_mass", p.neg_log_mass},
                                     {"neg_log_length", p.neg_log_length}, {"full", p.full}, {"ratio", p.ratio}});
             emit(json{{"target", local_dimension_target(c)}, {"beta_N", c.beta_n().approx()}, {"rows", rows}},
                  o.format, out);
         }},
        {"boxcount", "Box-counting slope over milestones h_from..h_to (to defaults to K).",
         {"v", "vhat", "delta", "N", "K", "beta", "from", "to"},
         [](const Options& o, std::ostream& out) {
             CantorConstruction c(schedule_from(o), BetaValue::parse(o.beta));
             std::size_t to = o.to ? o.to : c.schedule().K;
             auto r = boxcount_estimate(milestone_cover(c, o.from, to));
             emit(json{{"from", o.from}, {"to", to}, {"slope", r.slope}, {"intercept", r.intercept},
                       {"residual", r.residual}, {"target", local_dimension_target(c)}},
                  o.format, out);
         }},
        {"verify-membership", "Orbit checks on sampled left endpoints of deep template cylinders.",
         {"v", "vhat", "delta", "N", "K", "beta", "psi1", "psi2", "samples", "seed"},
         [](const Options& o, std::ostream& out) {
             CantorConstruction c(schedule_from(o), BetaValue::parse(o.beta));
             auto ws = sample_words(c, c.schedule().h.back(), o.samples, o.seed);
             auto r = verify_membership(c, ws, SpeedFn::parse(o.psi1), SpeedFn::parse(o.psi2));
             json viol = json::array();
             for (const auto& v : r.violations)
                 viol.push_back(json{{"sample", v.sample}, {"check", v.check}, {"index", v.index}});
             emit(json{{"passed", r.passed()},
                       {"samples", r.samples},
                       {"milestones", r.milestones},
                       {"asymptotic_checks", r.asymptotic_checks},
                       {"asymptotic_violations", r.asymptotic_violations},
                       {"uniform_checks", r.uniform_checks},
                       {"uniform_violations", r.uniform_violations},
                       {"uniform_window", json::array({r.uniform_from, r.uniform_to})},
                       {"first_violations", viol}},
                  o.format, out);
         }},
        {"examples", "Worked examples: exponents, generic bounds and sharp dimension.", {},
         [](const Options& o, std::ostream& out) {
             json rows = json::array();
             for (const auto& r : run_examples()) {
                 rows.push_back(json{{"example", r.entry->id},
                                     {"exponents", r.computed.to_string()},
                                     {"case", r.verdict.active_case},
                                     {"lower", frac(r.verdict.lower)},
                                     {"upper", frac(r.verdict.upper)},
                                     {"sharp_side", r.entry->sharp_is_upper ? "upper" : "lower"},
                                     {"generic_sharp", r.generic_is_sharp},
                                     {"consistent", r.exponents_match && r.sharp_in_bounds},
                                     {"dimension", frac(r.dimension)}});
             }
             emit(json{{"rows", rows}}, o.format, out);
         }},
    };
}

void add_flag(CLI::App* sub, const std::string& flag, Options& o) {
    if (flag == "beta") sub->add_option("--beta", o.beta, "dec:<d> | poly:c0,..,cn@[lo,hi] | golden | tribonacci | rational");
    else if (flag == "x") sub->add_option("--x", o.x, "rational p/q, decimal, or digits:<word>");
    else if (flag == "n") sub->add_option("--n", o.n, "length / number of steps");
    else if (flag == "N") sub->add_option("--N", o.N, "truncation / padding length");
    else if (flag == "K") sub->add_option("--K", o.K, "schedule levels");
    else if (flag == "word") sub->add_option("--word", o.word, "digit word, e.g. 10100 or 10,11,3")->required();
    else if (flag == "psi") sub->add_option("--psi", o.psi, "speed function rule(index=..., rate=...);...")->required();
    else if (flag == "psi1") sub->add_option("--psi1", o.psi1, "asymptotic speed function")->required();
    else if (flag == "psi2") sub->add_option("--psi2", o.psi2, "uniform speed function")->required();
    else if (flag == "q") sub->add_option("--q", o.q, "v1_lo,v1_hi,v2_lo,v2_hi (inf allowed)")->required();
    else if (flag == "witness") sub->add_option("--witness", o.witness, "periodic:w | scheduled:R,c | chained:R[,s] | psi_a:a[,b]");
    else if (flag == "horizon") sub->add_option("--horizon", o.horizon, "number of digits or indices");
    else if (flag == "depth") sub->add_option("--depth", o.depth, "word length")->required();
    else if (flag == "digits") sub->add_option("--digits", o.digits, "also print decimals with this many digits");
    else if (flag == "from") sub->add_option("--from", o.from, "first index");
    else if (flag == "to") sub->add_option("--to", o.to, "last index");
    else if (flag == "v") sub->add_option("--v", o.v, "rational exponent")->required();
    else if (flag == "vhat") sub->add_option("--vhat", o.vhat, "rational exponent")->required();
    else if (flag == "delta") sub->add_option("--delta", o.delta, "rational slack (default 0)");
    else if (flag == "v2-lo") sub->add_option("--v2-lo", o.v2lo, "liminf exponent of psi2")->required();
    else if (flag == "v2-hi") sub->add_option("--v2-hi", o.v2hi, "limsup exponent of psi2")->required();
    else if (flag == "samples") sub->add_option("--samples", o.samples, "number of sampled points");
    else if (flag == "seed") sub->add_option("--seed", o.seed, "sampling seed");
    else if (flag == "cap") sub->add_option("--cap", o.cap, "word cap");
    else if (flag == "numeric") sub->add_flag("--numeric", o.numeric, "sample instead of reading rates");
    else if (flag == "count-only") sub->add_flag("--count-only", o.count_only, "skip the word list");
}

void error_object(std::ostream& out, std::string_view kind, const std::string& message) {
    out << json{{"error", json{{"kind", kind}, {"message", message}}}}.dump(2) << '\n';
}

}  // namespace

json verdict_json(const DimensionVerdict& v) {
    return json{{"kind", to_string(v.kind)},
                {"lower", frac(v.lower)},
                {"upper", frac(v.upper)},
                {"active_case", v.active_case}};
}

DimensionVerdict verdict_from_json(const json& j) {
    DimensionVerdict v;
    std::string kind = j.at("kind").get<std::string>();
    bool known = false;
    for (auto k : {DimensionVerdict::Kind::Countable, DimensionVerdict::Kind::Empty,
                   DimensionVerdict::Kind::FullDimension, DimensionVerdict::Kind::Interval})
        if (to_string(k) == kind) {
            v.kind = k;
            known = true;
        }
    if (!known) raise(ErrorKind::ParseError, "unknown verdict kind " + kind);
    v.lower = parse_frac(j.at("lower").get<std::string>());
    v.upper = parse_frac(j.at("upper").get<std::string>());
    v.active_case = j.at("active_case").get<std::string>();
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Diophantine approximation under beta-transformations"};
    app.require_subcommand(1);
    Options o;
    auto table = commands();
    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : table) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        for (const char* f : c.flags) add_flag(sub, f, o);
        sub->add_option("--format", o.format, "json | csv | table")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        subs.emplace_back(sub, &c);
    }
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed() && dynamic_cast<const CLI::CallForHelp*>(&e)) out << sub->help();
        error_object(out, "UsageError", e.what());
        return 1;
    }
    try {
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed()) cmd->handler(o, out);
        return 0;
    } catch (const Error& e) {
        error_object(out, to_string(e.kind()), e.what());
        err << e.what() << '\n';
        return e.kind() == ErrorKind::PrecisionExhausted ? 2 : 1;
    } catch (const std::exception& e) {
        error_object(out, "InvalidInput", e.what());
        return 1;
    }
}

}  // namespace betadyn::cli
