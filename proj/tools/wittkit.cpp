// wittkit command-line front end. Output formats are described in docs/formats.md.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <wittkit/json_io.hpp>
#include <wittkit/wittkit.hpp>

#ifndef WITTKIT_VERSION
#define WITTKIT_VERSION "unknown"
#endif

namespace
{

using namespace wittkit;
using json = nlohmann::json;

enum exit_code { ok = 0, usage = 1, precondition = 2, budget = 3, internal = 4 };

struct Document {
    json body;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const Document &doc, const std::string &format)
{
    if (format == "json") {
        return doc.body.dump(2) + "\n";
    }
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "\t" : "") + cells[i];
        }
        out += "\n";
    };
    line(doc.header);
    for (const auto &r : doc.rows) {
        line(r);
    }
    return out;
}

std::string fnv1a64(const std::string &bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    return out;
}

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// ---- logarithm sources ----

const std::vector<std::string> &law_names()
{
    static const std::vector<std::string> v{"hesse-cubic", "hesse",  "quartic-k3",     "quartic",
                                            "quintic-cy3", "quintic", "multiplicative", "additive"};
    return v;
}

std::string canonical_law(const std::string &id)
{
    if (id == "multiplicative" || id == "additive") {
        return id;
    }
    return resolve_family_id(id);
}

Logarithm load_logarithm(const std::string &id, std::size_t M, const std::string &method)
{
    const auto cid = canonical_law(id);
    if (cid == "multiplicative") {
        return Logarithm::multiplicative(M);
    }
    if (cid == "additive") {
        return Logarithm::additive(M);
    }
    if (method == "closed") {
        return closed_form_logarithm(cid, M);
    }
    return am_logarithm(builtin_family(cid).family, M);
}

// ---- witt ----

struct WittArgs {
    std::string op;
    std::string a, b;
    std::size_t k = 1;
    std::size_t n = 0;
    std::size_t len = 0;
};

WittVector<IntPolynomial> parse_witt(const std::string &text, const std::string &what)
{
    if (trim(text).empty()) {
        throw malformed_input("--" + what + " is required for this operation");
    }
    std::vector<IntPolynomial> c;
    for (const auto &s : split(text, ',')) {
        c.push_back(parse_polynomial<Integer>(trim(s)));
    }
    return WittVector<IntPolynomial>(std::move(c));
}

Document run_witt(const WittArgs &w)
{
    const auto out_len = w.len ? std::optional<std::size_t>(w.len) : std::nullopt;
    const auto r = [&] {
        if (w.op == "teichmueller") {
            if (w.n == 0) {
                throw malformed_input("teichmueller needs --n");
            }
            return teichmueller(parse_polynomial<Integer>(trim(w.a)), w.n);
        }
        const auto a = parse_witt(w.a, "a");
        if (w.op == "from-ghost") {
            return from_ghost(GhostVector<IntPolynomial>(a.coords()));
        }
        if (w.op == "add") {
            return witt_add(a, parse_witt(w.b, "b"));
        }
        if (w.op == "sub") {
            return witt_sub(a, parse_witt(w.b, "b"));
        }
        if (w.op == "mul") {
            return witt_mul(a, parse_witt(w.b, "b"));
        }
        if (w.op == "neg") {
            return witt_neg(a);
        }
        if (w.op == "frobenius") {
            return witt_frobenius(w.k, a, out_len);
        }
        if (w.op == "verschiebung") {
            return witt_verschiebung(w.k, a, out_len);
        }
        if (w.op == "truncate") {
            if (!w.len) {
                throw malformed_input("truncate needs --len");
            }
            return witt_truncate(a, w.len);
        }
        return a; // ghost
    }();
    const auto g = to_ghost(r);
    Document d;
    json coords = json::array(), ghost = json::array();
    d.header = {"i", "coord", "ghost"};
    for (std::size_t i = 1; i <= r.length(); ++i) {
        coords.push_back(poly_to_json(r.coord(i)));
        ghost.push_back(poly_to_json(g.entry(i)));
        d.rows.push_back({std::to_string(i), to_text(r.coord(i)), to_text(g.entry(i))});
    }
    d.body = {{"command", "witt"},
              {"op", w.op},
              {"result", {{"length", r.length()}, {"coords", coords}}},
              {"ghost", ghost}};
    return d;
}

// ---- am-log ----

Document run_am_log(const std::string &family, std::size_t mmax, std::optional<std::uint64_t> mod,
                    const std::string &method)
{
    if (mmax == 0) {
        throw domain_error("--mmax must be at least 1");
    }
    if (mod && *mod == 0) {
        throw domain_error("--mod must be positive");
    }
    const auto id = resolve_family_id(family);
    const auto log = load_logarithm(id, mmax, method);
    Document d;
    d.header = {"m", "a_m"};
    json rows = json::array();
    for (std::size_t m = 1; m <= mmax; ++m) {
        auto a = log.coeff(m);
        if (mod) {
            a = poly_reduce_mod(a, Integer(static_cast<unsigned long>(*mod)));
        }
        rows.push_back({{"m", m}, {"a_m", poly_to_json(a)}});
        d.rows.push_back({std::to_string(m), to_text(a)});
    }
    d.body = {{"command", "am-log"},
              {"family", id},
              {"mmax", mmax},
              {"method", method},
              {"mod", mod ? json(*mod) : json(nullptr)},
              {"ring", log.ring()},
              {"rows", rows}};
    return d;
}

// ---- fgl ----

Document run_fgl(const std::string &family, std::size_t deg, std::optional<long> at_x, const std::string &method)
{
    if (deg == 0) {
        throw domain_error("--deg must be at least 1");
    }
    const auto id = canonical_law(family);
    auto log = load_logarithm(id, deg, method);
    if (at_x) {
        log = log.evaluated_at("x", Integer(*at_x));
    }
    const auto g = group_law_from_logarithm(log, deg);
    const auto rep = integrality_report(g);
    Document d;
    d.header = {"i", "j", "coeff"};
    json coeffs = json::array();
    for (const auto &[e, c] : g.series().terms()) {
        coeffs.push_back({{"i", e[0]}, {"j", e[1]}, {"coeff", poly_to_json(c)}});
        d.rows.push_back({std::to_string(e[0]), std::to_string(e[1]), to_text(c)});
    }
    json off = json::array();
    for (const auto &[i, j] : rep.offending) {
        off.push_back({{"i", i}, {"j", j}});
    }
    d.body = {{"command", "fgl"},
              {"family", id},
              {"deg", deg},
              {"at_x", at_x ? json(*at_x) : json(nullptr)},
              {"method", method},
              {"ring", log.ring()},
              {"coefficients", coeffs},
              {"integrality", {{"pass", rep.pass}, {"offending", off}}}};
    return d;
}

// ---- scan-ordinary ----

Document run_scan(const std::string &family, std::uint64_t pmax, bool oracle, bool locus_only, ScanOptions opts)
{
    const auto rep = ordinarity_scan(family, pmax, oracle, opts);
    Document d;
    json primes = json::array();
    if (locus_only) {
        d.header = {"p", "lambda"};
    } else {
        d.header = {"p", "lambda", "a_p_value", "verdict", "oracle_verdict", "agree"};
    }
    for (const auto &pr : rep.primes) {
        json pj = {{"p", pr.p},
                   {"hasse_witt", poly_to_json(pr.hasse_witt)},
                   {"nonordinary", pr.nonordinary},
                   {"oracle_match", pr.oracle_match ? json(*pr.oracle_match) : json(nullptr)}};
        if (locus_only) {
            for (auto l : pr.nonordinary) {
                d.rows.push_back({std::to_string(pr.p), std::to_string(l)});
            }
        } else {
            json rows = json::array();
            for (const auto &r : pr.rows) {
                rows.push_back({{"lambda", r.lambda},
                                {"a_p_value", r.a_p_value},
                                {"verdict", r.verdict},
                                {"oracle_verdict", r.oracle_verdict ? json(*r.oracle_verdict) : json(nullptr)},
                                {"agree", r.agree ? json(*r.agree) : json(nullptr)}});
                d.rows.push_back({std::to_string(pr.p), std::to_string(r.lambda), std::to_string(r.a_p_value),
                                  r.verdict, r.oracle_verdict.value_or(""),
                                  r.agree ? bool_text(*r.agree) : std::string()});
            }
            pj["rows"] = rows;
        }
        primes.push_back(std::move(pj));
    }
    d.body = {{"command", "scan-ordinary"},
              {"family", rep.family},
              {"pmax", pmax},
              {"oracle", oracle},
              {"locus_only", locus_only},
              {"primes", primes}};
    return d;
}

// ---- pf-check ----

Document run_pf(const std::string &family, const std::string &op_text, std::size_t kmax,
                std::optional<std::size_t> series_order, const std::string &method)
{
    if (kmax == 0) {
        throw domain_error("--kmax must be at least 1");
    }
    const auto id = resolve_family_id(family);
    ThetaOperator L;
    if (!op_text.empty()) {
        L = parse_operator(op_text);
    } else if (id == "quintic-cy3") {
        L = quintic_picard_fuchs();
    } else {
        throw domain_error("no bundled Picard-Fuchs operator for '" + id + "'; pass --operator");
    }
    const auto log = load_logarithm(id, kmax, method);
    const auto rows = pf_congruence_check(L, log, kmax);
    Document d;
    d.header = {"k", "pass", "residual"};
    json jr = json::array();
    bool all = true;
    for (const auto &r : rows) {
        all = all && r.pass;
        jr.push_back({{"k", r.k}, {"pass", r.pass}, {"residual", poly_to_json(r.residual)}});
        d.rows.push_back({std::to_string(r.k), bool_text(r.pass), r.pass ? std::string() : to_text(r.residual)});
    }
    json sc = nullptr;
    if (series_order) {
        if (id != "quintic-cy3") {
            throw domain_error("the series check uses the quintic period series; --family must be quintic-cy3");
        }
        const auto res = series_solution_check(L, quintic_period_series(*series_order), *series_order);
        sc = {{"order", *series_order},
              {"pass", res.pass},
              {"first_failure", res.first_failure ? json(*res.first_failure) : json(nullptr)}};
    }
    d.body = {{"command", "pf-check"}, {"family", id},  {"operator", to_text(L)},   {"kmax", kmax},
              {"method", method},      {"rows", jr},    {"all_pass", all},          {"series_check", sc}};
    return d;
}

// ---- congruence ----

Document run_congruence(const std::string &family, const std::vector<std::uint64_t> &primes, unsigned nu,
                        std::size_t mmax, const std::string &method)
{
    if (primes.empty()) {
        throw malformed_input("--p is required");
    }
    std::set<std::uint64_t> ps(primes.begin(), primes.end());
    std::size_t need = mmax;
    for (auto p : ps) {
        if (p == 2) {
            throw domain_error("p = 2 is excluded (2 is inverted in the base ring)");
        }
        std::uint64_t q = 1;
        for (unsigned i = 0; i < nu && q <= 1000000; ++i) {
            q *= p;
        }
        if (!mmax) {
            need = std::max<std::size_t>(need, q);
        }
    }
    if (need > 100000) {
        throw domain_error("p^nu too large");
    }
    const auto id = canonical_law(family);
    const auto log = load_logarithm(id, need, method);
    Document d;
    d.header = {"p", "nu", "pass", "lhs", "rhs", "difference"};
    json rows = json::array();
    bool all = true;
    for (auto p : ps) {
        const auto r = frobenius_power_congruence(log, p, nu);
        all = all && r.pass;
        rows.push_back({{"p", p},
                        {"nu", nu},
                        {"pass", r.pass},
                        {"lhs", poly_to_json(r.lhs)},
                        {"rhs", poly_to_json(r.rhs)},
                        {"difference", poly_to_json(r.difference)}});
        d.rows.push_back({std::to_string(p), std::to_string(nu), bool_text(r.pass), to_text(r.lhs), to_text(r.rhs),
                          to_text(r.difference)});
    }
    d.body = {{"command", "congruence"}, {"family", id}, {"mmax", need},    {"method", method},
              {"rows", rows},            {"all_pass", all}};
    return d;
}

// ---- families ----

Document run_families()
{
    Document d;
    d.header = {"id", "dimension", "ambient_dimension", "equation", "singular_locus"};
    json arr = json::array();
    for (const auto &id : builtin_family_ids()) {
        const auto e = builtin_family(id);
        const auto eq = to_text(e.family.equations().front());
        arr.push_back({{"id", id},
                       {"dimension", e.dimension()},
                       {"ambient_dimension", e.family.ambient_dimension()},
                       {"coordinates", e.family.coordinates()},
                       {"equation", eq},
                       {"singular_locus", to_text(e.singular_locus)}});
        d.rows.push_back({id, std::to_string(e.dimension()), std::to_string(e.family.ambient_dimension()), eq,
                          to_text(e.singular_locus)});
    }
    d.body = {{"command", "families"}, {"families", arr}};
    return d;
}

// ---- config ----

// key = value lines; '#' starts a comment; keys are long option names
// without the leading dashes.
std::vector<std::pair<std::string, std::string>> read_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw CLI::FileError("cannot read config file '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CLI::ParseError("config line " + std::to_string(lineno) + ": expected key = value",
                                  CLI::ExitCodes::ConfigError);
        }
        auto key = trim(line.substr(0, eq));
        auto val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') {
            val = val.substr(1, val.size() - 2);
        }
        out.emplace_back(key, val);
    }
    return out;
}

unsigned default_threads()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("WITTKIT_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) {
                n = std::min<unsigned>(n, static_cast<unsigned>(cap));
            }
        } catch (const std::exception &) {
            // ignore junk
        }
    }
    return n;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"wittkit: big Witt vectors, formal group laws, Artin-Mazur logarithms"};
    app.set_version_flag("--version", WITTKIT_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json", out_path, manifest_path, config_path;
    app.add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--out", out_path, "write the result here instead of stdout");
    app.add_option("--manifest", manifest_path, "write a run manifest (JSON) here");
    app.add_option("--config", config_path, "key = value file presetting options");

    const auto method_check = CLI::IsMember({"extract", "closed"});

    WittArgs wa;
    auto *witt = app.add_subcommand("witt", "Witt vector arithmetic");
    witt->add_option("--op", wa.op, "operation")
        ->required()
        ->check(CLI::IsMember({"add", "sub", "mul", "neg", "frobenius", "verschiebung", "truncate", "teichmueller",
                               "ghost", "from-ghost"}));
    witt->add_option("--a", wa.a, "first vector, comma-separated coordinates (or a ring element)");
    witt->add_option("--b", wa.b, "second vector");
    witt->add_option("--k", wa.k, "operator index for frobenius/verschiebung")->check(CLI::PositiveNumber);
    witt->add_option("--n", wa.n, "length for teichmueller");
    witt->add_option("--len", wa.len, "output length");

    std::string family;
    std::string method = "extract";
    std::size_t mmax = 0;
    std::optional<std::uint64_t> mod;
    auto *amlog = app.add_subcommand("am-log", "Artin-Mazur logarithm coefficients");
    amlog->add_option("--family", family)->required();
    amlog->add_option("--mmax", mmax)->required();
    amlog->add_option("--mod", mod, "reduce coefficients mod N");
    amlog->add_option("--method", method)->check(method_check);

    std::size_t deg = 0;
    std::optional<long> at_x;
    auto *fgl = app.add_subcommand("fgl", "formal group law from a logarithm");
    fgl->add_option("--family", family, "catalog family, multiplicative or additive")
        ->required()
        ->check(CLI::IsMember(law_names()));
    fgl->add_option("--deg", deg, "total degree")->required();
    fgl->add_option("--at-x", at_x, "specialize the parameter x");
    fgl->add_option("--method", method)->check(method_check);

    std::uint64_t pmax = 0, budget_pts = default_point_budget;
    bool oracle = false, locus_only = false;
    unsigned threads = 0;
    auto *scan = app.add_subcommand("scan-ordinary", "Hasse-Witt loci over odd primes");
    scan->add_option("--family", family)->required();
    scan->add_option("--pmax", pmax)->required();
    scan->add_flag("--oracle", oracle, "cross-check against point counts (elliptic families)");
    scan->add_flag("--locus-only", locus_only, "emit only the non-ordinary (p, lambda) pairs");
    scan->add_option("--budget", budget_pts, "max projective points per fibre count");
    scan->add_option("--threads", threads, "worker threads (capped by WITTKIT_THREADS)");

    std::string op_text;
    std::size_t kmax = 0;
    std::optional<std::size_t> series_order;
    std::string pf_method = "closed";
    auto *pf = app.add_subcommand("pf-check", "Picard-Fuchs congruences");
    pf->add_option("--family", family)->required();
    pf->add_option("--operator", op_text, "theta operator, e.g. 'theta^2 - x*(theta+1)^2'");
    pf->add_option("--kmax", kmax)->required();
    pf->add_option("--series-order", series_order, "also check L f = 0 through x^T (quintic)");
    pf->add_option("--method", pf_method)->check(method_check);

    std::vector<std::uint64_t> primes;
    unsigned nu = 2;
    std::size_t cg_mmax = 0;
    std::string cg_method = "closed";
    auto *cong = app.add_subcommand("congruence", "a_{p^nu} = a_p a_{p^(nu-1)}^p mod p");
    cong->add_option("--family", family)->required()->check(CLI::IsMember(law_names()));
    cong->add_option("--p", primes, "odd prime(s), comma-separated")->required()->delimiter(',');
    cong->add_option("--nu", nu)->check(CLI::Range(2u, 64u));
    cong->add_option("--mmax", cg_mmax, "logarithm truncation (default p^nu)");
    cong->add_option("--method", cg_method)->check(method_check);

    auto *fams = app.add_subcommand("families", "list the built-in families");

    // config keys are spliced in as options of the chosen subcommand unless
    // already given on the command line
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                config_path = args[i + 1];
            } else if (args[i].rfind("--config=", 0) == 0) {
                config_path = args[i].substr(9);
            }
        }
        if (!config_path.empty()) {
            CLI::App *sub = nullptr;
            for (const auto &a : args) {
                for (auto *s : app.get_subcommands({})) {
                    if (s->get_name() == a) {
                        sub = s;
                    }
                }
                if (sub) {
                    break;
                }
            }
            std::vector<std::string> extra;
            for (const auto &[key, val] : read_config(config_path)) {
                const std::string flag = "--" + key;
                bool known = app.get_option_no_throw(flag) != nullptr;
                for (auto *s : app.get_subcommands({})) {
                    known = known || s->get_option_no_throw(flag) != nullptr;
                }
                if (!known) {
                    throw CLI::ParseError("unknown config key '" + key + "'", CLI::ExitCodes::ConfigError);
                }
                if (std::find(args.begin(), args.end(), flag) != args.end()) {
                    continue;
                }
                const CLI::Option *opt = app.get_option_no_throw(flag);
                if (!opt && sub) {
                    opt = sub->get_option_no_throw(flag);
                }
                if (!opt) {
                    continue;
                }
                if (opt->get_type_size() == 0) {
                    if (val == "true" || val == "1") {
                        extra.push_back(flag);
                    }
                } else {
                    extra.push_back(flag);
                    extra.push_back(val);
                }
            }
            args.insert(args.end(), extra.begin(), extra.end());
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Document doc;
    try {
        if (*witt) {
            doc = run_witt(wa);
        } else if (*amlog) {
            doc = run_am_log(family, mmax, mod, method);
        } else if (*fgl) {
            doc = run_fgl(family, deg, at_x, method);
        } else if (*scan) {
            ScanOptions opts;
            opts.threads = threads ? std::min(threads, default_threads()) : default_threads();
            opts.budget = budget_pts;
            doc = run_scan(family, pmax, oracle, locus_only, opts);
        } else if (*pf) {
            doc = run_pf(family, op_text, kmax, series_order, pf_method);
        } else if (*cong) {
            doc = run_congruence(family, primes, nu, cg_mmax, cg_method);
        } else if (*fams) {
            doc = run_families();
        }
    } catch (const budget_exceeded &e) {
        std::cerr << "wittkit: budget exceeded: " << e.what() << "\n";
        return exit_code::budget;
    } catch (const unknown_family &e) {
        std::cerr << "wittkit: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const malformed_input &e) {
        std::cerr << "wittkit: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const wittkit::domain_error &e) {
        std::cerr << "wittkit: " << e.what() << "\n";
        return exit_code::precondition;
    } catch (const std::exception &e) {
        std::cerr << "wittkit: internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
    const auto bytes = render(doc, format);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (out_path.empty()) {
        std::cout << bytes << std::flush;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!(out << bytes)) {
            std::cerr << "wittkit: cannot write '" << out_path << "'\n";
            return exit_code::usage;
        }
    }
    if (!manifest_path.empty()) {
        json m = {{"tool", "wittkit"},
                  {"version", WITTKIT_VERSION},
                  {"request", std::vector<std::string>(argv + 1, argv + argc)},
                  {"format", format},
                  {"wall_time_ms", ms},
                  {"bytes", bytes.size()},
                  {"content_hash", "fnv1a64:" + fnv1a64(bytes)}};
        std::ofstream mo(manifest_path, std::ios::binary);
        if (!(mo << m.dump(2) << "\n")) {
            std::cerr << "wittkit: cannot write manifest '" << manifest_path << "'\n";
            return exit_code::usage;
        }
    }
    return exit_code::ok;
}
